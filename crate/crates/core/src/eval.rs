//! Batch evaluation: cost distributions per workforce size, median-schedule
//! extraction, and staffing comparisons.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derive_seed;
use crate::fuzzy::FisPair;
use crate::ga::{delta_cost, deltas};
use crate::io::{generate_scenario, AvailabilityPool, IoError};
use crate::schedule::{build_schedule, EngineConfig, Scenario, Schedule, SLOT_COUNT};

/// Cost of a single schedule: RMS(d1) + RMS(d2) + RMS(d3).
pub fn schedule_cost(schedule: &Schedule, scenario: &Scenario) -> f64 {
    delta_cost(&deltas(schedule, scenario))
}

/// A scenario is understaffed when the coverage requirement demands more
/// worker-hours than the workforce requested in total.
pub fn is_understaffed(scenario: &Scenario) -> bool {
    (scenario.total_requested_hours() as usize) < SLOT_COUNT * scenario.coverage_required
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiveNumberSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostDistribution {
    pub worker_count: usize,
    pub costs: Vec<f64>,
    pub summary: FiveNumberSummary,
    pub variance: f64,
    pub understaffed: Vec<bool>,
    /// Index into `costs` of the schedule achieving the reported median
    /// (lower median for even batch sizes).
    pub median_index: usize,
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    // linear interpolation between order statistics
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
    }
}

fn summarize(costs: &[f64], worker_count: usize, understaffed: Vec<bool>) -> CostDistribution {
    let mut order: Vec<usize> = (0..costs.len()).collect();
    order.sort_by(|&a, &b| costs[a].partial_cmp(&costs[b]).unwrap().then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&i| costs[i]).collect();
    // lower median: an actual schedule exists at the reported cost
    let median_index = order[(costs.len() - 1) / 2];
    let mean = costs.iter().sum::<f64>() / costs.len() as f64;
    let variance = if costs.len() > 1 {
        costs.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>() / (costs.len() - 1) as f64
    } else {
        0.0
    };
    CostDistribution {
        worker_count,
        summary: FiveNumberSummary {
            min: sorted[0],
            q1: quantile(&sorted, 0.25),
            median: costs[median_index],
            q3: quantile(&sorted, 0.75),
            max: *sorted.last().unwrap(),
        },
        costs: costs.to_vec(),
        variance,
        understaffed,
        median_index,
    }
}

/// One batch of scenarios at a fixed workforce size, with the scenario and
/// schedule that realized the median cost.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    pub distribution: CostDistribution,
    pub median_scenario: Scenario,
    pub median_schedule: Schedule,
}

/// Generates `batch_size` scenarios of `worker_count` workers from the pool,
/// builds each schedule, and summarizes the cost distribution.
pub fn run_batch(
    pair: &FisPair<f64>,
    pool: &AvailabilityPool,
    worker_count: usize,
    batch_size: usize,
    engine: &EngineConfig,
    seed: u64,
) -> Result<BatchResult, IoError> {
    assert!(batch_size >= 1, "batch_size must be at least 1");
    let mut gen_rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, &[worker_count as u64]));
    let scenarios: Vec<Scenario> = (0..batch_size)
        .map(|_| generate_scenario(pool, worker_count, &mut gen_rng))
        .collect::<Result<_, _>>()?;

    let built: Vec<(Schedule, f64)> = scenarios
        .par_iter()
        .enumerate()
        .map(|(i, sc)| {
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(
                seed,
                &[worker_count as u64, i as u64],
            ));
            let schedule = build_schedule(sc, pair, engine, &mut rng);
            let cost = schedule_cost(&schedule, sc);
            (schedule, cost)
        })
        .collect();

    let costs: Vec<f64> = built.iter().map(|(_, c)| *c).collect();
    let understaffed = scenarios.iter().map(is_understaffed).collect();
    let distribution = summarize(&costs, worker_count, understaffed);
    let m = distribution.median_index;
    Ok(BatchResult {
        median_scenario: scenarios[m].clone(),
        median_schedule: built[m].0.clone(),
        distribution,
    })
}

/// Pairwise median/variance ordering between two workforce sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StaffingComparison {
    pub count_a: usize,
    pub count_b: usize,
    pub median_a: f64,
    pub median_b: f64,
    pub variance_a: f64,
    pub variance_b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaffingReport {
    pub batches: Vec<BatchResult>,
    pub comparisons: Vec<StaffingComparison>,
}

/// Runs one batch per workforce size and compares each pair of sizes.
pub fn compare_staffing(
    pair: &FisPair<f64>,
    pool: &AvailabilityPool,
    counts: &[usize],
    batch_size: usize,
    engine: &EngineConfig,
    seed: u64,
) -> Result<StaffingReport, IoError> {
    assert!(!counts.is_empty(), "counts must be non-empty");
    let batches: Vec<BatchResult> = counts
        .iter()
        .map(|&count| run_batch(pair, pool, count, batch_size, engine, seed))
        .collect::<Result<_, _>>()?;
    let mut comparisons = Vec::new();
    for i in 0..batches.len() {
        for j in i + 1..batches.len() {
            let a = &batches[i].distribution;
            let b = &batches[j].distribution;
            comparisons.push(StaffingComparison {
                count_a: a.worker_count,
                count_b: b.worker_count,
                median_a: a.summary.median,
                median_b: b.summary.median,
                variance_a: a.variance,
                variance_b: b.variance,
            });
        }
    }
    Ok(StaffingReport {
        batches,
        comparisons,
    })
}
