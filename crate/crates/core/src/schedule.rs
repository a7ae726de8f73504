//! Sequential slot-by-slot shift assignment.
//!
//! Each hourly slot ranks all workers by availability x min(FIS1, FIS2) x
//! adjacency and hands the slot to the top `coverage_required` of them.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::FisPair;

pub const DAY_COUNT: usize = 5;
/// Opening hours per day: 11 on days 1-4, 7 on the last day.
pub const DAY_SLOTS: [usize; DAY_COUNT] = [11, 11, 11, 11, 7];
pub const SLOT_COUNT: usize = 51;
pub const DEFAULT_COVERAGE: usize = 4;
pub const DEFAULT_WEEKLY_LIMIT: u32 = 25;

const _: () = assert!(DAY_SLOTS[0] + DAY_SLOTS[1] + DAY_SLOTS[2] + DAY_SLOTS[3] + DAY_SLOTS[4] == SLOT_COUNT);

/// Floor applied to the min-FIS likelihood of an available worker so that
/// availability always yields a rankable positive score.
const MIN_LIKELIHOOD: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ScheduleError {
    #[error("worker count {workers} does not match availability row count {rows}")]
    AvailabilityRowCount { workers: usize, rows: usize },
    #[error("availability row {row} has {found} slots, expected {expected}")]
    AvailabilityRowLength {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("availability value {value} at (worker {row}, slot {col}) is not binary")]
    NonBinaryAvailability { row: usize, col: usize, value: u8 },
    #[error("coverage_required must be at least 1")]
    InvalidCoverage,
    #[error("worker `{id}`: preferred shift length must be at least 1")]
    ShiftLengthTooShort { id: String },
    #[error("worker `{id}`: preferred weekly hours {hours} exceed weekly limit {limit}")]
    PreferenceOverLimit { id: String, hours: u32, limit: u32 },
    #[error("assignment row {row} violates availability at slot {col}")]
    AssignmentUnavailable { row: usize, col: usize },
}

/// Position of a slot within the week.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotTag {
    pub day: usize,
    pub hour: usize,
}

/// All 51 slots in calendar order.
pub fn calendar() -> Vec<SlotTag> {
    let mut slots = Vec::with_capacity(SLOT_COUNT);
    for (day, &hours) in DAY_SLOTS.iter().enumerate() {
        for hour in 0..hours {
            slots.push(SlotTag { day, hour });
        }
    }
    slots
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkerSpec {
    pub id: String,
    pub preferred_weekly_hours: u32,
    pub preferred_shift_length: u32,
    #[serde(default = "default_weekly_limit")]
    pub weekly_limit: u32,
}

fn default_weekly_limit() -> u32 {
    DEFAULT_WEEKLY_LIMIT
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub workers: Vec<WorkerSpec>,
    /// One row per worker, 51 binary entries each.
    pub availability: Vec<Vec<u8>>,
    #[serde(default = "default_coverage")]
    pub coverage_required: usize,
}

fn default_coverage() -> usize {
    DEFAULT_COVERAGE
}

impl Scenario {
    pub fn validate(&self) -> Result<(), ScheduleError> {
        if self.coverage_required < 1 {
            return Err(ScheduleError::InvalidCoverage);
        }
        if self.availability.len() != self.workers.len() {
            return Err(ScheduleError::AvailabilityRowCount {
                workers: self.workers.len(),
                rows: self.availability.len(),
            });
        }
        for (row, avail) in self.availability.iter().enumerate() {
            if avail.len() != SLOT_COUNT {
                return Err(ScheduleError::AvailabilityRowLength {
                    row,
                    found: avail.len(),
                    expected: SLOT_COUNT,
                });
            }
            for (col, &v) in avail.iter().enumerate() {
                if v > 1 {
                    return Err(ScheduleError::NonBinaryAvailability { row, col, value: v });
                }
            }
        }
        for w in &self.workers {
            if w.preferred_shift_length < 1 {
                return Err(ScheduleError::ShiftLengthTooShort { id: w.id.clone() });
            }
            if w.preferred_weekly_hours > w.weekly_limit {
                return Err(ScheduleError::PreferenceOverLimit {
                    id: w.id.clone(),
                    hours: w.preferred_weekly_hours,
                    limit: w.weekly_limit,
                });
            }
        }
        Ok(())
    }

    pub fn is_available(&self, worker: usize, slot: usize) -> bool {
        self.availability[worker][slot] == 1
    }

    /// Total requested weekly hours across all workers.
    pub fn total_requested_hours(&self) -> u32 {
        self.workers.iter().map(|w| w.preferred_weekly_hours).sum()
    }
}

/// A slot where fewer workers could be assigned than the coverage requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageShortfall {
    pub slot_index: usize,
    pub slot: SlotTag,
    pub missing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub assigned: Vec<Vec<u8>>,
    pub weekly_hours: Vec<u32>,
    pub daily_hours: Vec<[u32; DAY_COUNT]>,
    pub coverage_shortfalls: Vec<CoverageShortfall>,
}

impl Schedule {
    /// Builds a schedule from a raw assignment matrix, recomputing tallies
    /// and shortfalls. Rejects assignments that violate availability.
    pub fn from_assignment(
        scenario: &Scenario,
        assigned: Vec<Vec<u8>>,
    ) -> Result<Self, ScheduleError> {
        let n = scenario.workers.len();
        if assigned.len() != n {
            return Err(ScheduleError::AvailabilityRowCount {
                workers: n,
                rows: assigned.len(),
            });
        }
        let slots = calendar();
        let mut weekly = vec![0u32; n];
        let mut daily = vec![[0u32; DAY_COUNT]; n];
        for (w, row) in assigned.iter().enumerate() {
            if row.len() != SLOT_COUNT {
                return Err(ScheduleError::AvailabilityRowLength {
                    row: w,
                    found: row.len(),
                    expected: SLOT_COUNT,
                });
            }
            for (t, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(ScheduleError::NonBinaryAvailability {
                        row: w,
                        col: t,
                        value: v,
                    });
                }
                if v == 1 {
                    if !scenario.is_available(w, t) {
                        return Err(ScheduleError::AssignmentUnavailable { row: w, col: t });
                    }
                    weekly[w] += 1;
                    daily[w][slots[t].day] += 1;
                }
            }
        }
        let mut shortfalls = Vec::new();
        for (t, &slot) in slots.iter().enumerate() {
            let on_duty: usize = assigned.iter().map(|row| row[t] as usize).sum();
            if on_duty < scenario.coverage_required {
                shortfalls.push(CoverageShortfall {
                    slot_index: t,
                    slot,
                    missing: scenario.coverage_required - on_duty,
                });
            }
        }
        Ok(Self {
            assigned,
            weekly_hours: weekly,
            daily_hours: daily,
            coverage_shortfalls: shortfalls,
        })
    }

    /// Workers whose weekly hours exceed their limit.
    pub fn weekly_limit_violations(&self, scenario: &Scenario) -> Vec<usize> {
        self.weekly_hours
            .iter()
            .enumerate()
            .filter(|&(w, &h)| h > scenario.workers[w].weekly_limit)
            .map(|(w, _)| w)
            .collect()
    }
}

/// Knobs of the assignment pipeline that are not learned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Adjacency scaling factor applied when the worker held the previous
    /// slot of the same day. Must be >= 1.
    pub gamma: f64,
    /// When set, workers at or over their weekly limit score 0 instead of
    /// being penalized only through the fitness.
    pub hard_weekly_mask: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            gamma: 3.0,
            hard_weekly_mask: false,
        }
    }
}

/// Running tallies consulted while the week is being filled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentState {
    pub weekly_hours: Vec<u32>,
    pub daily_hours: Vec<u32>,
    pub assigned_previous_slot: Vec<bool>,
}

impl AssignmentState {
    pub fn new(workers: usize) -> Self {
        Self {
            weekly_hours: vec![0; workers],
            daily_hours: vec![0; workers],
            assigned_previous_slot: vec![false; workers],
        }
    }

    /// Resets the per-day tallies and adjacency flags; called at each day
    /// boundary before scoring the day's first slot.
    pub fn start_day(&mut self) {
        self.daily_hours.iter_mut().for_each(|h| *h = 0);
        self.assigned_previous_slot.iter_mut().for_each(|f| *f = false);
    }
}

/// Books the selected workers into the state after a slot is decided.
pub fn advance_state(state: &mut AssignmentState, selected: &[usize]) {
    state.assigned_previous_slot.iter_mut().for_each(|f| *f = false);
    for &w in selected {
        state.weekly_hours[w] += 1;
        state.daily_hours[w] += 1;
        state.assigned_previous_slot[w] = true;
    }
}

fn combine(available: bool, l1: f64, l2: f64, adjacent: bool, gamma: f64) -> f64 {
    if !available {
        return 0.0;
    }
    let likelihood = l1.min(l2).max(MIN_LIKELIHOOD);
    likelihood * if adjacent { gamma } else { 1.0 }
}

/// Score of one worker for the next slot: availability x min(FIS1, FIS2) x
/// adjacency. Scores are ranking keys, not probabilities; with the adjacency
/// factor applied they may exceed 1.
pub fn assignment_score(
    worker: &WorkerSpec,
    weekly_hours: u32,
    daily_hours: u32,
    assigned_previous_slot: bool,
    available: bool,
    pair: &FisPair<f64>,
    cfg: &EngineConfig,
) -> f64 {
    if !available {
        return 0.0;
    }
    if cfg.hard_weekly_mask && weekly_hours >= worker.weekly_limit {
        return 0.0;
    }
    let l1 = pair
        .fis1
        .infer(worker.preferred_weekly_hours as f64, weekly_hours as f64);
    let l2 = pair
        .fis2
        .infer(worker.preferred_shift_length as f64, daily_hours as f64);
    combine(true, l1, l2, assigned_previous_slot, cfg.gamma)
}

/// Outcome of one slot's selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    /// Selected worker indices, ascending.
    pub selected: Vec<usize>,
    /// How many seats stayed empty for lack of positive-score workers.
    pub shortfall: usize,
}

/// Picks the k highest positive scores; ties at the cut are broken uniformly
/// at random with the supplied generator.
pub fn select_top_k<R: Rng>(scores: &[f64], k: usize, rng: &mut R) -> Selection {
    let mut positive: Vec<usize> = (0..scores.len()).filter(|&i| scores[i] > 0.0).collect();
    if positive.len() <= k {
        return Selection {
            shortfall: k - positive.len(),
            selected: positive,
        };
    }
    positive.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    let cut = scores[positive[k - 1]];
    let mut selected: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&i| scores[i] > cut)
        .collect();
    let mut tied: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&i| scores[i] == cut)
        .collect();
    let need = k - selected.len();
    // partial Fisher-Yates over the tied block
    for pick in 0..need {
        let j = rng.gen_range(pick..tied.len());
        tied.swap(pick, j);
    }
    selected.extend_from_slice(&tied[..need]);
    selected.sort_unstable();
    Selection {
        selected,
        shortfall: 0,
    }
}

/// Runs the assignment pipeline over all 51 slots in calendar order.
///
/// FIS inputs are the state *before* the slot; adjacency does not carry
/// across day boundaries. Understaffed slots are recorded, never fatal.
pub fn build_schedule<R: Rng>(
    scenario: &Scenario,
    pair: &FisPair<f64>,
    cfg: &EngineConfig,
    rng: &mut R,
) -> Schedule {
    let n = scenario.workers.len();
    let mut state = AssignmentState::new(n);
    let mut assigned = vec![vec![0u8; SLOT_COUNT]; n];
    let mut daily = vec![[0u32; DAY_COUNT]; n];
    let mut shortfalls = Vec::new();
    // FIS inputs are small integers during construction; memoize per build.
    let mut cache1: HashMap<(u32, u32), f64> = HashMap::new();
    let mut cache2: HashMap<(u32, u32), f64> = HashMap::new();

    for (t, slot) in calendar().into_iter().enumerate() {
        if slot.hour == 0 {
            state.start_day();
        }
        let scores: Vec<f64> = scenario
            .workers
            .iter()
            .enumerate()
            .map(|(w, spec)| {
                if !scenario.is_available(w, t) {
                    return 0.0;
                }
                if cfg.hard_weekly_mask && state.weekly_hours[w] >= spec.weekly_limit {
                    return 0.0;
                }
                let l1 = *cache1
                    .entry((spec.preferred_weekly_hours, state.weekly_hours[w]))
                    .or_insert_with(|| {
                        pair.fis1
                            .infer(spec.preferred_weekly_hours as f64, state.weekly_hours[w] as f64)
                    });
                let l2 = *cache2
                    .entry((spec.preferred_shift_length, state.daily_hours[w]))
                    .or_insert_with(|| {
                        pair.fis2
                            .infer(spec.preferred_shift_length as f64, state.daily_hours[w] as f64)
                    });
                combine(true, l1, l2, state.assigned_previous_slot[w], cfg.gamma)
            })
            .collect();
        let selection = select_top_k(&scores, scenario.coverage_required, rng);
        if selection.shortfall > 0 {
            shortfalls.push(CoverageShortfall {
                slot_index: t,
                slot,
                missing: selection.shortfall,
            });
        }
        for &w in &selection.selected {
            assigned[w][t] = 1;
            daily[w][slot.day] += 1;
        }
        advance_state(&mut state, &selection.selected);
    }

    Schedule {
        assigned,
        weekly_hours: state.weekly_hours,
        daily_hours: daily,
        coverage_shortfalls: shortfalls,
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{
        fis1_assigned_weekly, fis1_preferred_weekly, fis2_assigned_daily, fis2_preferred_shift,
        Fis, OutputPartition, RuleTable,
    };
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    /// A FIS pair whose two systems defuzzify to the given constants
    /// everywhere (all rules agree on a symmetric consequent).
    pub(crate) fn constant_pair(c1: f64, c2: f64) -> FisPair<f64> {
        let out = |c: f64| {
            let w = c.min(1.0 - c).clamp(0.01, 0.2);
            OutputPartition::from_peaks_and_widths([c; 5], [w; 5]).unwrap()
        };
        let fis1 = Fis::new(
            fis1_preferred_weekly(),
            fis1_assigned_weekly(),
            out(c1),
            RuleTable::new(4, 4, vec![1; 16]).unwrap(),
        )
        .unwrap();
        let fis2 = Fis::new(
            fis2_preferred_shift(),
            fis2_assigned_daily(),
            out(c2),
            RuleTable::new(3, 3, vec![1; 9]).unwrap(),
        )
        .unwrap();
        FisPair { fis1, fis2 }
    }

    pub(crate) fn scenario_with(availability: Vec<Vec<u8>>) -> Scenario {
        let workers = (0..availability.len())
            .map(|i| WorkerSpec {
                id: format!("w{i:02}"),
                preferred_weekly_hours: 10,
                preferred_shift_length: 4,
                weekly_limit: DEFAULT_WEEKLY_LIMIT,
            })
            .collect();
        let sc = Scenario {
            workers,
            availability,
            coverage_required: DEFAULT_COVERAGE,
        };
        sc.validate().unwrap();
        sc
    }

    fn worker() -> WorkerSpec {
        WorkerSpec {
            id: "w".into(),
            preferred_weekly_hours: 10,
            preferred_shift_length: 4,
            weekly_limit: 25,
        }
    }

    #[test]
    fn calendar_shape() {
        let slots = calendar();
        assert_eq!(slots.len(), SLOT_COUNT);
        assert_eq!(slots[0], SlotTag { day: 0, hour: 0 });
        assert_eq!(slots[10], SlotTag { day: 0, hour: 10 });
        assert_eq!(slots[11], SlotTag { day: 1, hour: 0 });
        assert_eq!(slots[50], SlotTag { day: 4, hour: 6 });
    }

    #[test]
    fn score_zero_when_unavailable() {
        let pair = constant_pair(0.6, 0.4);
        let cfg = EngineConfig::default();
        let s = assignment_score(&worker(), 0, 0, true, false, &pair, &cfg);
        assert_eq!(s, 0.0);
    }

    #[test]
    fn score_is_min_of_likelihoods() {
        let pair = constant_pair(0.6, 0.4);
        let cfg = EngineConfig::default();
        let s = assignment_score(&worker(), 5, 2, false, true, &pair, &cfg);
        assert_abs_diff_eq!(s, 0.4, epsilon = 1e-9);
    }

    #[test]
    fn adjacency_scales_score() {
        let pair = constant_pair(0.6, 0.4);
        let cfg = EngineConfig {
            gamma: 3.0,
            ..Default::default()
        };
        let s = assignment_score(&worker(), 5, 2, true, true, &pair, &cfg);
        assert_abs_diff_eq!(s, 1.2, epsilon = 1e-9);
        let unscaled = assignment_score(&worker(), 5, 2, false, true, &pair, &cfg);
        assert!(s >= unscaled);
    }

    #[test]
    fn hard_mask_zeroes_at_limit() {
        let pair = constant_pair(0.6, 0.4);
        let cfg = EngineConfig {
            hard_weekly_mask: true,
            ..Default::default()
        };
        assert_eq!(assignment_score(&worker(), 25, 2, false, true, &pair, &cfg), 0.0);
        assert!(assignment_score(&worker(), 24, 2, false, true, &pair, &cfg) > 0.0);
    }

    #[test]
    fn select_top_k_no_tie() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let sel = select_top_k(&[0.9, 0.5, 0.5, 0.2, 0.0], 4, &mut rng);
        assert_eq!(sel.selected, vec![0, 1, 2, 3]);
        assert_eq!(sel.shortfall, 0);
    }

    #[test]
    fn select_top_k_all_tied_is_seed_deterministic() {
        let scores = [0.5, 0.5, 0.5, 0.5, 0.5];
        let a = select_top_k(&scores, 4, &mut ChaCha12Rng::seed_from_u64(7));
        let b = select_top_k(&scores, 4, &mut ChaCha12Rng::seed_from_u64(7));
        assert_eq!(a, b);
        assert_eq!(a.selected.len(), 4);
    }

    #[test]
    fn select_top_k_positive_filter_and_shortfall() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let sel = select_top_k(&[0.7, 0.0, 0.0, 0.0, 0.0], 4, &mut rng);
        assert_eq!(sel.selected, vec![0]);
        assert_eq!(sel.shortfall, 3);
    }

    #[test]
    fn advance_state_counts_and_resets() {
        let mut state = AssignmentState::new(3);
        advance_state(&mut state, &[]);
        assert!(state.assigned_previous_slot.iter().all(|&f| !f));
        for _ in 0..3 {
            advance_state(&mut state, &[1]);
        }
        assert_eq!(state.weekly_hours, vec![0, 3, 0]);
        assert_eq!(state.daily_hours, vec![0, 3, 0]);
        assert_eq!(state.assigned_previous_slot, vec![false, true, false]);
        state.start_day();
        assert_eq!(state.daily_hours, vec![0, 0, 0]);
        assert!(state.assigned_previous_slot.iter().all(|&f| !f));
        assert_eq!(state.weekly_hours, vec![0, 3, 0]);
    }

    #[test]
    fn forced_assignment_when_exactly_four_available() {
        // workers 0..4 always available, 4..6 never
        let mut avail = vec![vec![1u8; SLOT_COUNT]; 4];
        avail.extend(vec![vec![0u8; SLOT_COUNT]; 2]);
        let sc = scenario_with(avail);
        let pair = constant_pair(0.6, 0.4);
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let s = build_schedule(&sc, &pair, &EngineConfig::default(), &mut rng);
        for w in 0..4 {
            assert_eq!(s.weekly_hours[w], SLOT_COUNT as u32);
        }
        assert_eq!(s.weekly_hours[4], 0);
        assert_eq!(s.weekly_hours[5], 0);
        assert!(s.coverage_shortfalls.is_empty());
    }

    #[test]
    fn all_zero_availability_yields_51_shortfalls() {
        let sc = scenario_with(vec![vec![0u8; SLOT_COUNT]; 5]);
        let pair = constant_pair(0.6, 0.4);
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let s = build_schedule(&sc, &pair, &EngineConfig::default(), &mut rng);
        assert!(s.weekly_hours.iter().all(|&h| h == 0));
        assert_eq!(s.coverage_shortfalls.len(), SLOT_COUNT);
        assert!(s.coverage_shortfalls.iter().all(|sf| sf.missing == 4));
    }

    #[test]
    fn build_is_deterministic_under_fixed_seed() {
        let sc = scenario_with(vec![vec![1u8; SLOT_COUNT]; 8]);
        let pair = constant_pair(0.6, 0.4);
        let cfg = EngineConfig::default();
        let a = build_schedule(&sc, &pair, &cfg, &mut ChaCha12Rng::seed_from_u64(42));
        let b = build_schedule(&sc, &pair, &cfg, &mut ChaCha12Rng::seed_from_u64(42));
        assert_eq!(a, b);
    }

    #[test]
    fn from_assignment_checks_availability() {
        let sc = scenario_with(vec![vec![0u8; SLOT_COUNT]; 1]);
        let mut assigned = vec![vec![0u8; SLOT_COUNT]];
        assigned[0][3] = 1;
        match Schedule::from_assignment(&sc, assigned) {
            Err(ScheduleError::AssignmentUnavailable { row: 0, col: 3 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn scenario_validation_errors() {
        let mut sc = scenario_with(vec![vec![1u8; SLOT_COUNT]; 2]);
        sc.availability[1][7] = 2;
        assert!(matches!(
            sc.validate(),
            Err(ScheduleError::NonBinaryAvailability {
                row: 1,
                col: 7,
                value: 2
            })
        ));
        let mut sc = scenario_with(vec![vec![1u8; SLOT_COUNT]; 2]);
        sc.availability[0].pop();
        assert!(matches!(
            sc.validate(),
            Err(ScheduleError::AvailabilityRowLength { row: 0, .. })
        ));
        let mut sc = scenario_with(vec![vec![1u8; SLOT_COUNT]; 2]);
        sc.workers[0].preferred_weekly_hours = 30;
        assert!(sc.validate().is_err());
    }
}
