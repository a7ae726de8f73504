//! Scenario generation, file formats, and persistence.
//!
//! Three artifact families: scenario bundles (JSON, or an availability CSV
//! plus a preferences CSV), trained models (versioned JSON), and schedule
//! reports (CSV, one row per worker).

use std::fs;
use std::path::Path;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::FisPair;
use crate::ga::{GaConfig, GenerationStats};
use crate::schedule::{
    calendar, Scenario, Schedule, WorkerSpec, DEFAULT_COVERAGE, DEFAULT_WEEKLY_LIMIT, SLOT_COUNT,
};

pub const SCENARIO_FORMAT_VERSION: u32 = 1;
pub const MODEL_FORMAT_VERSION: u32 = 1;
pub const POOL_FORMAT_VERSION: u32 = 1;

/// Density range used for synthetic availability when none is given,
/// calibrated to observed per-worker availability between roughly 60% and 90%.
pub const DEFAULT_DENSITY_RANGE: (f64, f64) = (0.55, 0.95);

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
    #[error("{path}, row {row}: expected {expected} columns, found {found}")]
    RowLength {
        path: String,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{path}, row {row}, column {col}: `{value}` is not a binary availability value")]
    NonBinaryCell {
        path: String,
        row: usize,
        col: usize,
        value: String,
    },
    #[error("{path}, row {row}, column {col}: `{value}` is not a valid number")]
    BadNumber {
        path: String,
        row: usize,
        col: usize,
        value: String,
    },
    #[error("{path}: expected {expected} availability rows, found {found}")]
    SlotCount {
        path: String,
        expected: usize,
        found: usize,
    },
    #[error("{path}: format version {found} is not supported (expected {expected})")]
    Version {
        path: String,
        found: u32,
        expected: u32,
    },
    #[error("{path}: {source}")]
    Scenario {
        path: String,
        #[source]
        source: crate::schedule::ScheduleError,
    },
    #[error("{path}: {source}")]
    Model {
        path: String,
        #[source]
        source: crate::fuzzy::FuzzyError,
    },
    #[error("invalid density range ({lo}, {hi}); need 0 <= lo <= hi <= 1")]
    BadDensityRange { lo: f64, hi: f64 },
    #[error("requested {requested} workers from a pool of {pool}")]
    PoolExhausted { requested: usize, pool: usize },
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), IoError> {
    fs::write(path, contents).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

fn json_err(path: &Path, source: serde_json::Error) -> IoError {
    IoError::Json {
        path: path.display().to_string(),
        source,
    }
}

// ---------------------------------------------------------------------------
// scenario bundles

/// On-disk scenario bundle (`scenario.json`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub format_version: u32,
    #[serde(flatten)]
    pub scenario: Scenario,
    /// Resolved generation parameters and seed, recorded for reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

pub fn save_scenario(path: &Path, file: &ScenarioFile) -> Result<(), IoError> {
    let mut body = serde_json::to_string_pretty(file).map_err(|e| json_err(path, e))?;
    body.push('\n');
    write(path, &body)
}

pub fn load_scenario(path: &Path) -> Result<Scenario, IoError> {
    let file: ScenarioFile =
        serde_json::from_str(&read(path)?).map_err(|e| json_err(path, e))?;
    if file.format_version != SCENARIO_FORMAT_VERSION {
        return Err(IoError::Version {
            path: path.display().to_string(),
            found: file.format_version,
            expected: SCENARIO_FORMAT_VERSION,
        });
    }
    file.scenario
        .validate()
        .map_err(|source| IoError::Scenario {
            path: path.display().to_string(),
            source,
        })?;
    Ok(file.scenario)
}

/// Writes the availability matrix as CSV: `day,hour` prefix columns, then one
/// column per worker, one row per slot.
pub fn save_availability_csv(path: &Path, scenario: &Scenario) -> Result<(), IoError> {
    let mut out = String::from("day,hour");
    for w in &scenario.workers {
        out.push(',');
        out.push_str(&w.id);
    }
    out.push('\n');
    for (t, slot) in calendar().iter().enumerate() {
        out.push_str(&format!("{},{}", slot.day + 1, slot.hour + 1));
        for row in &scenario.availability {
            out.push_str(&format!(",{}", row[t]));
        }
        out.push('\n');
    }
    write(path, &out)
}

/// Writes worker preferences as CSV.
pub fn save_prefs_csv(path: &Path, scenario: &Scenario) -> Result<(), IoError> {
    let mut out =
        String::from("worker,preferred_weekly_hours,preferred_shift_length,weekly_limit\n");
    for w in &scenario.workers {
        out.push_str(&format!(
            "{},{},{},{}\n",
            w.id, w.preferred_weekly_hours, w.preferred_shift_length, w.weekly_limit
        ));
    }
    write(path, &out)
}

/// Loads a scenario from an availability CSV and a preferences CSV.
pub fn load_scenario_csv(
    availability_path: &Path,
    prefs_path: &Path,
) -> Result<Scenario, IoError> {
    let avail_text = read(availability_path)?;
    let apath = availability_path.display().to_string();
    let mut lines = avail_text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| IoError::SlotCount {
        path: apath.clone(),
        expected: SLOT_COUNT + 1,
        found: 0,
    })?;
    let ids: Vec<String> = header.split(',').skip(2).map(|s| s.to_string()).collect();
    let expected_cols = ids.len() + 2;
    let mut availability = vec![Vec::with_capacity(SLOT_COUNT); ids.len()];
    let mut rows = 0usize;
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expected_cols {
            return Err(IoError::RowLength {
                path: apath.clone(),
                row: lineno + 1,
                expected: expected_cols,
                found: fields.len(),
            });
        }
        for (w, cell) in fields[2..].iter().enumerate() {
            let v: u8 = cell.trim().parse().map_err(|_| IoError::NonBinaryCell {
                path: apath.clone(),
                row: lineno + 1,
                col: w + 3,
                value: cell.to_string(),
            })?;
            if v > 1 {
                return Err(IoError::NonBinaryCell {
                    path: apath.clone(),
                    row: lineno + 1,
                    col: w + 3,
                    value: cell.to_string(),
                });
            }
            availability[w].push(v);
        }
        rows += 1;
    }
    if rows != SLOT_COUNT {
        return Err(IoError::SlotCount {
            path: apath,
            expected: SLOT_COUNT,
            found: rows,
        });
    }

    let prefs_text = read(prefs_path)?;
    let ppath = prefs_path.display().to_string();
    let mut workers = Vec::new();
    for (lineno, line) in prefs_text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(IoError::RowLength {
                path: ppath.clone(),
                row: lineno + 1,
                expected: 4,
                found: fields.len(),
            });
        }
        let num = |col: usize| -> Result<u32, IoError> {
            fields[col].trim().parse().map_err(|_| IoError::BadNumber {
                path: ppath.clone(),
                row: lineno + 1,
                col: col + 1,
                value: fields[col].to_string(),
            })
        };
        workers.push(WorkerSpec {
            id: fields[0].trim().to_string(),
            preferred_weekly_hours: num(1)?,
            preferred_shift_length: num(2)?,
            weekly_limit: num(3)?,
        });
    }

    let scenario = Scenario {
        workers,
        availability,
        coverage_required: DEFAULT_COVERAGE,
    };
    scenario.validate().map_err(|source| IoError::Scenario {
        path: availability_path.display().to_string(),
        source,
    })?;
    Ok(scenario)
}

// ---------------------------------------------------------------------------
// availability pools and synthetic generation

/// A pool of candidate workers' weekly availability rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AvailabilityPool {
    pub format_version: u32,
    pub availability: Vec<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

impl AvailabilityPool {
    pub fn len(&self) -> usize {
        self.availability.len()
    }

    pub fn is_empty(&self) -> bool {
        self.availability.is_empty()
    }
}

/// Synthesizes a pool: each worker draws a density uniformly from the range,
/// then each of the 51 slots is available independently with that probability.
pub fn generate_pool<R: Rng>(
    size: usize,
    density_range: (f64, f64),
    rng: &mut R,
) -> Result<AvailabilityPool, IoError> {
    let (lo, hi) = density_range;
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
        return Err(IoError::BadDensityRange { lo, hi });
    }
    let availability = (0..size)
        .map(|_| {
            let d = if lo == hi { lo } else { rng.gen_range(lo..=hi) };
            (0..SLOT_COUNT).map(|_| u8::from(rng.gen_bool(d))).collect()
        })
        .collect();
    Ok(AvailabilityPool {
        format_version: POOL_FORMAT_VERSION,
        availability,
        metadata: None,
    })
}

pub fn save_pool(path: &Path, pool: &AvailabilityPool) -> Result<(), IoError> {
    let mut body = serde_json::to_string_pretty(pool).map_err(|e| json_err(path, e))?;
    body.push('\n');
    write(path, &body)
}

pub fn load_pool(path: &Path) -> Result<AvailabilityPool, IoError> {
    let pool: AvailabilityPool =
        serde_json::from_str(&read(path)?).map_err(|e| json_err(path, e))?;
    if pool.format_version != POOL_FORMAT_VERSION {
        return Err(IoError::Version {
            path: path.display().to_string(),
            found: pool.format_version,
            expected: POOL_FORMAT_VERSION,
        });
    }
    Ok(pool)
}

/// Samples `worker_count` workers without replacement from the pool and draws
/// preferences uniformly: weekly hours from 5..=15, shift length from 3..=8.
pub fn generate_scenario<R: Rng>(
    pool: &AvailabilityPool,
    worker_count: usize,
    rng: &mut R,
) -> Result<Scenario, IoError> {
    if worker_count > pool.len() {
        return Err(IoError::PoolExhausted {
            requested: worker_count,
            pool: pool.len(),
        });
    }
    let mut chosen = sample(rng, pool.len(), worker_count).into_vec();
    chosen.sort_unstable();
    let workers = chosen
        .iter()
        .map(|&p| WorkerSpec {
            id: format!("w{p:02}"),
            preferred_weekly_hours: rng.gen_range(5..=15),
            preferred_shift_length: rng.gen_range(3..=8),
            weekly_limit: DEFAULT_WEEKLY_LIMIT,
        })
        .collect();
    let availability = chosen
        .iter()
        .map(|&p| pool.availability[p].clone())
        .collect();
    let scenario = Scenario {
        workers,
        availability,
        coverage_required: DEFAULT_COVERAGE,
    };
    debug_assert!(scenario.validate().is_ok());
    Ok(scenario)
}

// ---------------------------------------------------------------------------
// trained models

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMetadata {
    pub seed: u64,
    pub config: GaConfig,
    pub final_fitness: f64,
    pub history: Vec<GenerationStats>,
    /// Unix timestamp of the training run; the only field excluded from
    /// byte-identity comparisons.
    pub created_unix: u64,
}

/// Persisted trained model (`model.json`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    pub gamma: f64,
    pub fis_pair: FisPair<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<TrainingMetadata>,
}

pub fn save_model(path: &Path, model: &ModelFile) -> Result<(), IoError> {
    let mut body = serde_json::to_string_pretty(model).map_err(|e| json_err(path, e))?;
    body.push('\n');
    write(path, &body)
}

pub fn load_model(path: &Path) -> Result<ModelFile, IoError> {
    let model: ModelFile = serde_json::from_str(&read(path)?).map_err(|e| json_err(path, e))?;
    if model.format_version != MODEL_FORMAT_VERSION {
        return Err(IoError::Version {
            path: path.display().to_string(),
            found: model.format_version,
            expected: MODEL_FORMAT_VERSION,
        });
    }
    model.fis_pair.validate().map_err(|source| IoError::Model {
        path: path.display().to_string(),
        source,
    })?;
    Ok(model)
}

// ---------------------------------------------------------------------------
// schedule reports

/// One worker's line of the schedule report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleRow {
    pub worker: String,
    pub availability_pct: f64,
    pub requested_weekly_hours: u32,
    pub assigned_weekly_hours: u32,
    pub difference: i64,
    pub abs_difference: u64,
    pub requested_shift_length: u32,
    pub day1_hours: u32,
    pub day2_hours: u32,
    pub day3_hours: u32,
    pub day4_hours: u32,
    pub day5_hours: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub rows: Vec<ScheduleRow>,
}

impl ScheduleReport {
    pub fn from_schedule(schedule: &Schedule, scenario: &Scenario) -> Self {
        let rows = scenario
            .workers
            .iter()
            .enumerate()
            .map(|(w, spec)| {
                let avail: u32 = scenario.availability[w].iter().map(|&v| v as u32).sum();
                // one decimal place, like the report layout
                let pct = (avail as f64 / SLOT_COUNT as f64 * 1000.0).round() / 10.0;
                let assigned = schedule.weekly_hours[w];
                let diff = assigned as i64 - spec.preferred_weekly_hours as i64;
                let d = &schedule.daily_hours[w];
                debug_assert_eq!(d.iter().sum::<u32>(), assigned);
                ScheduleRow {
                    worker: spec.id.clone(),
                    availability_pct: pct,
                    requested_weekly_hours: spec.preferred_weekly_hours,
                    assigned_weekly_hours: assigned,
                    difference: diff,
                    abs_difference: diff.unsigned_abs(),
                    requested_shift_length: spec.preferred_shift_length,
                    day1_hours: d[0],
                    day2_hours: d[1],
                    day3_hours: d[2],
                    day4_hours: d[3],
                    day5_hours: d[4],
                }
            })
            .collect();
        Self { rows }
    }
}

pub fn save_schedule(path: &Path, report: &ScheduleReport) -> Result<(), IoError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &report.rows {
        writer.serialize(row).map_err(|source| IoError::Csv {
            path: path.display().to_string(),
            source,
        })?;
    }
    let bytes = writer.into_inner().expect("in-memory writer");
    write(path, std::str::from_utf8(&bytes).expect("csv output is utf-8"))
}

pub fn load_schedule(path: &Path) -> Result<ScheduleReport, IoError> {
    let mut reader = csv::Reader::from_path(path).map_err(|source| IoError::Csv {
        path: path.display().to_string(),
        source,
    })?;
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        let row: ScheduleRow = record.map_err(|source| IoError::Csv {
            path: path.display().to_string(),
            source,
        })?;
        rows.push(row);
    }
    Ok(ScheduleReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::Chromosome;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use tempfile::tempdir;

    fn sample_scenario() -> Scenario {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let pool = generate_pool(40, DEFAULT_DENSITY_RANGE, &mut rng).unwrap();
        generate_scenario(&pool, 20, &mut rng).unwrap()
    }

    #[test]
    fn scenario_json_round_trip() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("scenario.json");
        let file = ScenarioFile {
            format_version: SCENARIO_FORMAT_VERSION,
            scenario: sample_scenario(),
            metadata: None,
        };
        save_scenario(&path, &file).unwrap();
        let loaded = load_scenario(&path).unwrap();
        assert_eq!(loaded, file.scenario);
        let first = fs::read(&path).unwrap();
        save_scenario(
            &path,
            &ScenarioFile {
                format_version: SCENARIO_FORMAT_VERSION,
                scenario: loaded,
                metadata: None,
            },
        )
        .unwrap();
        assert_eq!(first, fs::read(&path).unwrap());
    }

    #[test]
    fn scenario_csv_round_trip() {
        let dir = tempdir().unwrap();
        let avail = dir.path().join("scenario.csv");
        let prefs = dir.path().join("prefs.csv");
        let scenario = sample_scenario();
        save_availability_csv(&avail, &scenario).unwrap();
        save_prefs_csv(&prefs, &scenario).unwrap();
        let loaded = load_scenario_csv(&avail, &prefs).unwrap();
        assert_eq!(loaded, scenario);
    }

    #[test]
    fn csv_errors_name_positions() {
        let dir = tempdir().unwrap();
        let avail = dir.path().join("scenario.csv");
        let prefs = dir.path().join("prefs.csv");
        let scenario = sample_scenario();
        save_prefs_csv(&prefs, &scenario).unwrap();

        // short row
        save_availability_csv(&avail, &scenario).unwrap();
        let text = fs::read_to_string(&avail).unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        let shortened = lines[5].rsplit_once(',').unwrap().0.to_string();
        lines[5] = &shortened;
        fs::write(&avail, lines.join("\n")).unwrap();
        match load_scenario_csv(&avail, &prefs) {
            Err(IoError::RowLength { row: 6, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }

        // non-binary cell
        save_availability_csv(&avail, &scenario).unwrap();
        let text = fs::read_to_string(&avail).unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let mut fields: Vec<String> = lines[3].split(',').map(String::from).collect();
        fields[4] = "2".to_string();
        lines[3] = fields.join(",");
        fs::write(&avail, lines.join("\n")).unwrap();
        match load_scenario_csv(&avail, &prefs) {
            Err(IoError::NonBinaryCell { row: 4, col: 5, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn pool_density_extremes_and_default_range() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let full = generate_pool(4, (1.0, 1.0), &mut rng).unwrap();
        assert!(full.availability.iter().flatten().all(|&v| v == 1));
        let empty = generate_pool(4, (0.0, 0.0), &mut rng).unwrap();
        assert!(empty.availability.iter().flatten().all(|&v| v == 0));
        assert!(generate_pool(4, (0.9, 0.1), &mut rng).is_err());

        let pool = generate_pool(40, DEFAULT_DENSITY_RANGE, &mut rng).unwrap();
        for row in &pool.availability {
            let mean = row.iter().map(|&v| v as f64).sum::<f64>() / SLOT_COUNT as f64;
            // sampling noise over 51 slots: allow ~3 sigma beyond the range
            assert!((0.30..=1.0).contains(&mean), "density {mean} out of range");
        }
    }

    #[test]
    fn generate_scenario_bounds_and_errors() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let pool = generate_pool(40, DEFAULT_DENSITY_RANGE, &mut rng).unwrap();
        let sc = generate_scenario(&pool, 20, &mut rng).unwrap();
        assert_eq!(sc.workers.len(), 20);
        for w in &sc.workers {
            assert!((5..=15).contains(&w.preferred_weekly_hours));
            assert!((3..=8).contains(&w.preferred_shift_length));
            assert_eq!(w.weekly_limit, 25);
        }
        let sixteen = generate_scenario(&pool, 16, &mut rng).unwrap();
        assert_eq!(sixteen.workers.len(), 16);
        assert!(matches!(
            generate_scenario(&pool, 41, &mut rng),
            Err(IoError::PoolExhausted {
                requested: 41,
                pool: 40
            })
        ));
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let make = || {
            let mut rng = ChaCha12Rng::seed_from_u64(123);
            let pool = generate_pool(40, DEFAULT_DENSITY_RANGE, &mut rng).unwrap();
            generate_scenario(&pool, 20, &mut rng).unwrap()
        };
        assert_eq!(make(), make());
    }

    fn sample_model() -> ModelFile {
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let chrom = Chromosome::random(&mut rng);
        ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            gamma: 3.0,
            fis_pair: chrom.decode(),
            metadata: Some(TrainingMetadata {
                seed: 42,
                config: GaConfig::default(),
                final_fitness: 3.25,
                history: vec![GenerationStats {
                    generation: 0,
                    best: 3.25,
                    mean: 5.5,
                }],
                created_unix: 1_700_000_000,
            }),
        }
    }

    #[test]
    fn model_round_trip_is_byte_identical() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("model.json");
        let model = sample_model();
        save_model(&path, &model).unwrap();
        let first = fs::read(&path).unwrap();
        let loaded = load_model(&path).unwrap();
        assert_eq!(loaded, model);
        save_model(&path, &loaded).unwrap();
        assert_eq!(first, fs::read(&path).unwrap());
    }

    #[test]
    fn model_version_and_schema_errors() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("model.json");
        let mut model = sample_model();
        model.format_version = 99;
        save_model(&path, &model).unwrap();
        assert!(matches!(
            load_model(&path),
            Err(IoError::Version { found: 99, .. })
        ));

        // missing rule cell
        let mut model = sample_model();
        model.fis_pair.fis1.rules.consequents.pop();
        let body = serde_json::to_string_pretty(&model).unwrap();
        fs::write(&path, body).unwrap();
        assert!(matches!(load_model(&path), Err(IoError::Model { .. })));
    }

    #[test]
    fn schedule_report_consistency_and_round_trip() {
        use crate::schedule::tests_support::build_random_schedule;
        let dir = tempdir().unwrap();
        let path = dir.path().join("schedule.csv");
        let scenario = sample_scenario();
        let schedule = build_random_schedule(&scenario, 31);
        let report = ScheduleReport::from_schedule(&schedule, &scenario);
        for row in &report.rows {
            let daily_sum =
                row.day1_hours + row.day2_hours + row.day3_hours + row.day4_hours + row.day5_hours;
            assert_eq!(daily_sum, row.assigned_weekly_hours);
        }
        save_schedule(&path, &report).unwrap();
        let first = fs::read(&path).unwrap();
        let loaded = load_schedule(&path).unwrap();
        assert_eq!(loaded, report);
        save_schedule(&path, &loaded).unwrap();
        assert_eq!(first, fs::read(&path).unwrap());
    }

    #[test]
    fn empty_schedule_report_is_all_zero() {
        let scenario = Scenario {
            workers: vec![WorkerSpec {
                id: "a".into(),
                preferred_weekly_hours: 6,
                preferred_shift_length: 3,
                weekly_limit: 25,
            }],
            availability: vec![vec![0u8; SLOT_COUNT]],
            coverage_required: 4,
        };
        let schedule = Schedule::from_assignment(&scenario, vec![vec![0u8; SLOT_COUNT]]).unwrap();
        let report = ScheduleReport::from_schedule(&schedule, &scenario);
        assert_eq!(report.rows[0].assigned_weekly_hours, 0);
        assert_eq!(report.rows[0].difference, -6);
        assert_eq!(report.rows[0].day5_hours, 0);
    }
}
