//! Genetic learning of the rule tables and shared output membership
//! functions: 34-gene chromosomes evolved against an RMS preference-deviation
//! cost averaged over a fixed batch of training scenarios.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derive_seed;
use crate::fuzzy::{
    fis1_assigned_weekly, fis1_preferred_weekly, fis2_assigned_daily, fis2_preferred_shift, Fis,
    FisPair, OutputPartition, RuleTable, OUTPUT_MF_COUNT,
};
use crate::schedule::{build_schedule, EngineConfig, Scenario, Schedule, DAY_COUNT};

pub const FIS1_RULE_COUNT: usize = 16;
pub const FIS2_RULE_COUNT: usize = 9;
pub const RULE_GENE_COUNT: usize = FIS1_RULE_COUNT + FIS2_RULE_COUNT;
pub const MF_GENE_COUNT: usize = 9;
pub const CHROMOSOME_LEN: usize = RULE_GENE_COUNT + MF_GENE_COUNT;

const _: () = assert!(CHROMOSOME_LEN == 34);
const _: () = assert!(MF_GENE_COUNT == 4 + OUTPUT_MF_COUNT);

#[derive(Debug, Error)]
pub enum GaError {
    #[error("population_size must be greater than elite_count ({elite} >= {pop})")]
    EliteTooLarge { elite: usize, pop: usize },
    #[error("population_size must be at least 2")]
    PopulationTooSmall,
    #[error("crossover_fraction {0} outside [0, 1]")]
    BadCrossoverFraction(f64),
    #[error("rule_mutation_rate {0} outside [0, 1]")]
    BadMutationRate(f64),
    #[error("max_generations must be at least 1")]
    NoGenerations,
    #[error("training requires at least one scenario")]
    NoScenarios,
}

/// 25 rule-consequent genes followed by 9 output-MF genes.
///
/// Rule genes 0..16 fill FIS1's 4x4 table row-major, 16..25 fill FIS2's 3x3
/// table. MF genes are 4 free peaks (the "very low" peak is pinned at 0)
/// plus 5 half-widths; triangle i is (peak - width, peak, peak + width)
/// with corners clamped to [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chromosome {
    pub rule_genes: [u8; RULE_GENE_COUNT],
    pub mf_genes: [f64; MF_GENE_COUNT],
}

impl Chromosome {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let mut rule_genes = [0u8; RULE_GENE_COUNT];
        for g in rule_genes.iter_mut() {
            *g = rng.gen_range(1..=OUTPUT_MF_COUNT as u8);
        }
        let mut mf_genes = [0.0; MF_GENE_COUNT];
        for g in mf_genes.iter_mut() {
            *g = rng.gen_range(0.0..=1.0);
        }
        let mut c = Self {
            rule_genes,
            mf_genes,
        };
        c.repair();
        c
    }

    /// Normalizes genes in place: rule genes clamped into 1..=5, MF genes
    /// clamped into [0, 1], free peaks sorted ascending. Idempotent.
    pub fn repair(&mut self) {
        for g in self.rule_genes.iter_mut() {
            *g = (*g).clamp(1, OUTPUT_MF_COUNT as u8);
        }
        for g in self.mf_genes.iter_mut() {
            if !g.is_finite() {
                *g = 0.0;
            }
            *g = g.clamp(0.0, 1.0);
        }
        self.mf_genes[..4].sort_by(|a, b| a.partial_cmp(b).unwrap());
    }

    pub fn repaired(mut self) -> Self {
        self.repair();
        self
    }

    /// Builds the FIS pair: fixed input partitions, learned rule tables and
    /// learned shared output partition.
    pub fn decode(&self) -> FisPair<f64> {
        let repaired = self.clone().repaired();
        let mut peaks = [0.0; OUTPUT_MF_COUNT];
        peaks[1..].copy_from_slice(&repaired.mf_genes[..4]);
        let mut widths = [0.0; OUTPUT_MF_COUNT];
        widths.copy_from_slice(&repaired.mf_genes[4..]);
        let output = OutputPartition::from_peaks_and_widths(peaks, widths)
            .expect("repaired genes always decode");
        let fis1_rules = RuleTable::new(4, 4, repaired.rule_genes[..FIS1_RULE_COUNT].to_vec())
            .expect("repaired genes always decode");
        let fis2_rules = RuleTable::new(3, 3, repaired.rule_genes[FIS1_RULE_COUNT..].to_vec())
            .expect("repaired genes always decode");
        let fis1 = Fis {
            input1: fis1_preferred_weekly(),
            input2: fis1_assigned_weekly(),
            output: output.clone(),
            rules: fis1_rules,
        };
        let fis2 = Fis {
            input1: fis2_preferred_shift(),
            input2: fis2_assigned_daily(),
            output,
            rules: fis2_rules,
        };
        FisPair { fis1, fis2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    #[serde(default = "d_pop")]
    pub population_size: usize,
    #[serde(default = "d_max_gen")]
    pub max_generations: usize,
    #[serde(default = "d_stall")]
    pub stall_generations: usize,
    #[serde(default = "d_elite")]
    pub elite_count: usize,
    #[serde(default = "d_cross")]
    pub crossover_fraction: f64,
    #[serde(default = "d_n")]
    pub n_scenarios: usize,
    #[serde(default = "d_rule_mut")]
    pub rule_mutation_rate: f64,
    #[serde(default = "d_sigma")]
    pub mf_mutation_sigma: f64,
    #[serde(default)]
    pub seed: u64,
}

fn d_pop() -> usize {
    200
}
fn d_max_gen() -> usize {
    50
}
fn d_stall() -> usize {
    10
}
fn d_elite() -> usize {
    10
}
fn d_cross() -> f64 {
    0.8
}
fn d_n() -> usize {
    30
}
fn d_rule_mut() -> f64 {
    0.1
}
fn d_sigma() -> f64 {
    0.1
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: d_pop(),
            max_generations: d_max_gen(),
            stall_generations: d_stall(),
            elite_count: d_elite(),
            crossover_fraction: d_cross(),
            n_scenarios: d_n(),
            rule_mutation_rate: d_rule_mut(),
            mf_mutation_sigma: d_sigma(),
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), GaError> {
        if self.population_size < 2 {
            return Err(GaError::PopulationTooSmall);
        }
        if self.elite_count >= self.population_size {
            return Err(GaError::EliteTooLarge {
                elite: self.elite_count,
                pop: self.population_size,
            });
        }
        if !(0.0..=1.0).contains(&self.crossover_fraction) {
            return Err(GaError::BadCrossoverFraction(self.crossover_fraction));
        }
        if !(0.0..=1.0).contains(&self.rule_mutation_rate) {
            return Err(GaError::BadMutationRate(self.rule_mutation_rate));
        }
        if self.max_generations < 1 {
            return Err(GaError::NoGenerations);
        }
        Ok(())
    }
}

/// Per-worker deviation lists behind Eq.-style scoring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deltas {
    /// daily hours minus preferred shift length, one entry per worker-day
    /// that received any hours
    pub daily: Vec<f64>,
    /// weekly hours minus preferred weekly hours, one entry per worker
    pub weekly: Vec<f64>,
    /// hours over the weekly limit, one entry per worker
    pub excess: Vec<f64>,
}

pub fn deltas(schedule: &Schedule, scenario: &Scenario) -> Deltas {
    let mut daily = Vec::new();
    let mut weekly = Vec::with_capacity(scenario.workers.len());
    let mut excess = Vec::with_capacity(scenario.workers.len());
    for (w, spec) in scenario.workers.iter().enumerate() {
        for d in 0..DAY_COUNT {
            let h = schedule.daily_hours[w][d];
            if h > 0 {
                daily.push(h as f64 - spec.preferred_shift_length as f64);
            }
        }
        let wh = schedule.weekly_hours[w] as f64;
        weekly.push(wh - spec.preferred_weekly_hours as f64);
        excess.push((wh - spec.weekly_limit as f64).max(0.0));
    }
    Deltas {
        daily,
        weekly,
        excess,
    }
}

/// Root mean square; empty input is 0 by convention (no qualifying entries).
pub fn rms(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt()
}

pub fn delta_cost(d: &Deltas) -> f64 {
    rms(&d.daily) + rms(&d.weekly) + rms(&d.excess)
}

/// Mean over scenarios of RMS(d1) + RMS(d2) + RMS(d3). Tie-break randomness
/// is drawn from a per-scenario stream derived from `seed`, so the result is
/// a pure function of (chromosome, scenarios, engine, seed).
pub fn fitness(
    chromosome: &Chromosome,
    scenarios: &[Scenario],
    engine: &EngineConfig,
    seed: u64,
) -> f64 {
    assert!(!scenarios.is_empty(), "fitness needs at least one scenario");
    let pair = chromosome.decode();
    let total: f64 = scenarios
        .iter()
        .enumerate()
        .map(|(i, sc)| {
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, &[i as u64]));
            let schedule = build_schedule(sc, &pair, engine, &mut rng);
            delta_cost(&deltas(&schedule, sc))
        })
        .sum();
    total / scenarios.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub best: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainResult {
    pub best: Chromosome,
    pub best_fitness: f64,
    pub history: Vec<GenerationStats>,
}

#[derive(Clone)]
struct Individual {
    chrom: Chromosome,
    cost: f64,
}

/// Selection weights: rank-based, weight proportional to 1/sqrt(rank).
fn rank_weights(n: usize) -> Vec<f64> {
    (1..=n).map(|r| 1.0 / (r as f64).sqrt()).collect()
}

fn roulette<R: Rng>(cumulative: &[f64], rng: &mut R) -> usize {
    let total = *cumulative.last().unwrap();
    let u = rng.gen_range(0.0..total);
    cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1)
}

fn crossover<R: Rng>(a: &Chromosome, b: &Chromosome, rng: &mut R) -> Chromosome {
    let mut child = a.clone();
    for (g, &other) in child.rule_genes.iter_mut().zip(b.rule_genes.iter()) {
        if rng.gen_bool(0.5) {
            *g = other;
        }
    }
    for (g, &other) in child.mf_genes.iter_mut().zip(b.mf_genes.iter()) {
        if rng.gen_bool(0.5) {
            *g = other;
        }
    }
    child.repair();
    child
}

fn mutate<R: Rng>(parent: &Chromosome, config: &GaConfig, rng: &mut R) -> Chromosome {
    let mut child = parent.clone();
    for g in child.rule_genes.iter_mut() {
        if rng.gen::<f64>() < config.rule_mutation_rate {
            *g = rng.gen_range(1..=OUTPUT_MF_COUNT as u8);
        }
    }
    let noise = Normal::new(0.0, config.mf_mutation_sigma).expect("sigma is finite");
    for g in child.mf_genes.iter_mut() {
        *g += noise.sample(rng);
    }
    child.repair();
    child
}

/// Generational GA with elitism, rank-scaled roulette selection, uniform
/// crossover, and per-gene mutation. Individuals are evaluated once, when
/// created, with an rng stream derived from (seed, birth generation, index);
/// elites carry their cost forward unchanged, so the per-generation best is
/// non-increasing.
pub fn evolve(
    config: &GaConfig,
    scenarios: &[Scenario],
    engine: &EngineConfig,
) -> Result<TrainResult, GaError> {
    config.validate()?;
    if scenarios.is_empty() {
        return Err(GaError::NoScenarios);
    }

    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let evaluate = |chroms: Vec<Chromosome>, gen: usize| -> Vec<Individual> {
        chroms
            .into_par_iter()
            .enumerate()
            .map(|(i, chrom)| {
                let seed = derive_seed(config.seed, &[gen as u64, i as u64]);
                let cost = fitness(&chrom, scenarios, engine, seed);
                Individual { chrom, cost }
            })
            .collect()
    };

    let initial: Vec<Chromosome> = (0..config.population_size)
        .map(|_| Chromosome::random(&mut rng))
        .collect();
    let mut population = evaluate(initial, 0);

    let stats_of = |generation: usize, pop: &[Individual]| -> GenerationStats {
        let best = pop.iter().map(|ind| ind.cost).fold(f64::INFINITY, f64::min);
        let mean = pop.iter().map(|ind| ind.cost).sum::<f64>() / pop.len() as f64;
        GenerationStats {
            generation,
            best,
            mean,
        }
    };

    let mut history = vec![stats_of(0, &population)];
    let mut best = population
        .iter()
        .min_by(|a, b| a.cost.partial_cmp(&b.cost).unwrap())
        .unwrap()
        .clone();
    let mut stall = 0usize;

    for gen in 1..config.max_generations {
        if stall >= config.stall_generations {
            break;
        }
        population.sort_by(|a, b| a.cost.partial_cmp(&b.cost).unwrap());
        let elites: Vec<Individual> = population[..config.elite_count].to_vec();
        let remaining = config.population_size - config.elite_count;
        let n_cross = (config.crossover_fraction * remaining as f64).round() as usize;
        let n_mut = remaining - n_cross;

        let weights = rank_weights(population.len());
        let mut cumulative = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for w in weights {
            acc += w;
            cumulative.push(acc);
        }

        let mut children = Vec::with_capacity(remaining);
        for _ in 0..n_cross {
            let p1 = roulette(&cumulative, &mut rng);
            let p2 = roulette(&cumulative, &mut rng);
            children.push(crossover(
                &population[p1].chrom,
                &population[p2].chrom,
                &mut rng,
            ));
        }
        for _ in 0..n_mut {
            let p = roulette(&cumulative, &mut rng);
            children.push(mutate(&population[p].chrom, config, &mut rng));
        }

        let mut next = elites;
        next.extend(evaluate(children, gen));
        population = next;

        let stats = stats_of(history.len(), &population);
        history.push(stats);
        let gen_best = population
            .iter()
            .min_by(|a, b| a.cost.partial_cmp(&b.cost).unwrap())
            .unwrap();
        if gen_best.cost < best.cost {
            best = gen_best.clone();
            stall = 0;
        } else {
            stall += 1;
        }
    }

    Ok(TrainResult {
        best_fitness: best.cost,
        best: best.chrom,
        history,
    })
}
