//! Mamdani fuzzy inference over triangular membership functions.
//!
//! Both inference systems use min-conjunction for rule firing, min-implication
//! (clipping) on the consequents, pointwise-max aggregation, and centroid
//! defuzzification over a uniform grid on [0, 1].

use num_traits::{Float, FromPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Grid resolution used by [`Fis::infer`].
pub const DEFAULT_GRID_POINTS: usize = 1001;

/// Number of shared output membership functions.
pub const OUTPUT_MF_COUNT: usize = 5;

pub const OUTPUT_LABELS: [&str; OUTPUT_MF_COUNT] =
    ["very low", "low", "medium", "high", "very high"];

/// Neutral defuzzification result when the aggregate has no mass.
pub const EMPTY_AGGREGATE_FALLBACK: f64 = 0.5;

#[derive(Debug, Error)]
pub enum FuzzyError {
    #[error("triangle corners out of order: left={left} peak={peak} right={right}")]
    CornersOutOfOrder { left: f64, peak: f64, right: f64 },
    #[error("partition `{name}`: expected {expected} membership functions, found {found}")]
    WrongMfCount {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("partition `{name}`: label count {labels} does not match mf count {mfs}")]
    LabelMismatch {
        name: String,
        labels: usize,
        mfs: usize,
    },
    #[error("partition `{name}`: peaks out of order at position {index}")]
    UnorderedPeaks { name: String, index: usize },
    #[error("partition `{name}`: no membership function covers x={x}")]
    CoverageGap { name: String, x: f64 },
    #[error("output membership corner {value} lies outside [0, 1]")]
    OutputCornerOutOfRange { value: f64 },
    #[error("rule table holds {cells} cells, expected {rows}x{cols}")]
    RuleCellCount {
        cells: usize,
        rows: usize,
        cols: usize,
    },
    #[error("rule consequent {value} at cell ({row}, {col}) outside 1..={max}")]
    BadConsequent {
        value: u8,
        row: usize,
        col: usize,
        max: u8,
    },
    #[error("rule table is {rows}x{cols} but input partitions give {want_rows}x{want_cols}")]
    RuleDimensionMismatch {
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
}

/// Triangular membership function. Degenerate spikes (left = peak = right)
/// are allowed and evaluate to 1 at the peak, 0 elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangularMf<F> {
    pub left: F,
    pub peak: F,
    pub right: F,
}

impl<F: Float> TriangularMf<F> {
    pub fn new(left: F, peak: F, right: F) -> Result<Self, FuzzyError> {
        if !(left <= peak && peak <= right) {
            return Err(FuzzyError::CornersOutOfOrder {
                left: left.to_f64().unwrap_or(f64::NAN),
                peak: peak.to_f64().unwrap_or(f64::NAN),
                right: right.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { left, peak, right })
    }

    /// Piecewise-linear membership degree in [0, 1].
    pub fn membership(&self, x: F) -> F {
        if x < self.left || x > self.right {
            F::zero()
        } else if x == self.peak {
            F::one()
        } else if x < self.peak {
            // left < x < peak, so the slope is well defined
            (x - self.left) / (self.peak - self.left)
        } else {
            (self.right - x) / (self.right - self.peak)
        }
    }
}

/// Fixed input partition: ordered, labeled triangles covering a crisp domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputPartition<F> {
    pub name: String,
    pub domain_min: F,
    pub domain_max: F,
    pub labels: Vec<String>,
    pub mfs: Vec<TriangularMf<F>>,
}

impl<F: Float + FromPrimitive> InputPartition<F> {
    /// Builds an evenly overlapping partition from peak positions: triangle i
    /// spans from the previous peak to the next one, shouldered at the ends.
    pub fn from_peaks(
        name: &str,
        labels: &[&str],
        domain_min: F,
        domain_max: F,
        peaks: &[F],
    ) -> Result<Self, FuzzyError> {
        let n = peaks.len();
        let mut mfs = Vec::with_capacity(n);
        for i in 0..n {
            let left = if i == 0 { domain_min } else { peaks[i - 1] };
            let right = if i == n - 1 { domain_max } else { peaks[i + 1] };
            mfs.push(TriangularMf::new(left, peaks[i], right)?);
        }
        let p = Self {
            name: name.to_string(),
            domain_min,
            domain_max,
            labels: labels.iter().map(|s| s.to_string()).collect(),
            mfs,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.mfs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mfs.is_empty()
    }

    pub fn validate(&self) -> Result<(), FuzzyError> {
        if self.labels.len() != self.mfs.len() {
            return Err(FuzzyError::LabelMismatch {
                name: self.name.clone(),
                labels: self.labels.len(),
                mfs: self.mfs.len(),
            });
        }
        for (i, w) in self.mfs.windows(2).enumerate() {
            if w[0].peak > w[1].peak {
                return Err(FuzzyError::UnorderedPeaks {
                    name: self.name.clone(),
                    index: i + 1,
                });
            }
        }
        // coverage spot-check on a fixed grid
        let steps = 101;
        for k in 0..steps {
            let t = F::from_usize(k).unwrap() / F::from_usize(steps - 1).unwrap();
            let x = self.domain_min + (self.domain_max - self.domain_min) * t;
            if !self.mfs.iter().any(|mf| mf.membership(x) > F::zero()) {
                return Err(FuzzyError::CoverageGap {
                    name: self.name.clone(),
                    x: x.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }

    pub fn clamp(&self, x: F) -> F {
        x.max(self.domain_min).min(self.domain_max)
    }

    /// Degree of each membership function at `x` (clamped into the domain).
    pub fn fuzzify(&self, x: F) -> Vec<F> {
        let x = self.clamp(x);
        self.mfs.iter().map(|mf| mf.membership(x)).collect()
    }
}

/// The five shared output membership functions over [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputPartition<F> {
    pub mfs: [TriangularMf<F>; OUTPUT_MF_COUNT],
}

impl<F: Float + FromPrimitive> OutputPartition<F> {
    /// Builds triangles (peak - width, peak, peak + width) with all corners
    /// clamped to [0, 1]. Peaks must already be sorted ascending.
    pub fn from_peaks_and_widths(
        peaks: [F; OUTPUT_MF_COUNT],
        widths: [F; OUTPUT_MF_COUNT],
    ) -> Result<Self, FuzzyError> {
        let zero = F::zero();
        let one = F::one();
        let mut mfs = [TriangularMf {
            left: zero,
            peak: zero,
            right: zero,
        }; OUTPUT_MF_COUNT];
        for i in 0..OUTPUT_MF_COUNT {
            let p = peaks[i].max(zero).min(one);
            let w = widths[i].abs();
            mfs[i] = TriangularMf::new((p - w).max(zero), p, (p + w).min(one))?;
        }
        let out = Self { mfs };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), FuzzyError> {
        for mf in &self.mfs {
            for v in [mf.left, mf.peak, mf.right] {
                if v < F::zero() || v > F::one() {
                    return Err(FuzzyError::OutputCornerOutOfRange {
                        value: v.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        for w in self.mfs.windows(2) {
            if w[0].peak > w[1].peak {
                return Err(FuzzyError::UnorderedPeaks {
                    name: "output".to_string(),
                    index: 0,
                });
            }
        }
        Ok(())
    }
}

/// Complete rule table: a consequent index in 1..=5 per antecedent cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTable {
    pub rows: usize,
    pub cols: usize,
    pub consequents: Vec<u8>,
}

impl RuleTable {
    pub fn new(rows: usize, cols: usize, consequents: Vec<u8>) -> Result<Self, FuzzyError> {
        let t = Self {
            rows,
            cols,
            consequents,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), FuzzyError> {
        if self.consequents.len() != self.rows * self.cols {
            return Err(FuzzyError::RuleCellCount {
                cells: self.consequents.len(),
                rows: self.rows,
                cols: self.cols,
            });
        }
        for (k, &c) in self.consequents.iter().enumerate() {
            if c < 1 || c as usize > OUTPUT_MF_COUNT {
                return Err(FuzzyError::BadConsequent {
                    value: c,
                    row: k / self.cols,
                    col: k % self.cols,
                    max: OUTPUT_MF_COUNT as u8,
                });
            }
        }
        Ok(())
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.consequents[row * self.cols + col]
    }
}

/// A two-input, one-output Mamdani fuzzy inference system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fis<F> {
    pub input1: InputPartition<F>,
    pub input2: InputPartition<F>,
    pub output: OutputPartition<F>,
    pub rules: RuleTable,
}

impl<F: Float + FromPrimitive> Fis<F> {
    pub fn new(
        input1: InputPartition<F>,
        input2: InputPartition<F>,
        output: OutputPartition<F>,
        rules: RuleTable,
    ) -> Result<Self, FuzzyError> {
        let fis = Self {
            input1,
            input2,
            output,
            rules,
        };
        fis.validate()?;
        Ok(fis)
    }

    pub fn validate(&self) -> Result<(), FuzzyError> {
        self.input1.validate()?;
        self.input2.validate()?;
        self.output.validate()?;
        self.rules.validate()?;
        if self.rules.rows != self.input1.len() || self.rules.cols != self.input2.len() {
            return Err(FuzzyError::RuleDimensionMismatch {
                rows: self.rules.rows,
                cols: self.rules.cols,
                want_rows: self.input1.len(),
                want_cols: self.input2.len(),
            });
        }
        Ok(())
    }

    /// Per-consequent clipping level: for each output MF, the max firing
    /// strength among rules pointing at it. Equivalent to firing every rule
    /// individually and max-aggregating afterwards.
    pub fn consequent_caps(&self, x1: F, x2: F) -> [F; OUTPUT_MF_COUNT] {
        let d1 = self.input1.fuzzify(x1);
        let d2 = self.input2.fuzzify(x2);
        let mut caps = [F::zero(); OUTPUT_MF_COUNT];
        for (i, &a) in d1.iter().enumerate() {
            for (j, &b) in d2.iter().enumerate() {
                let strength = a.min(b);
                let c = (self.rules.get(i, j) - 1) as usize;
                if strength > caps[c] {
                    caps[c] = strength;
                }
            }
        }
        caps
    }

    /// Full Mamdani pipeline at the default grid resolution.
    pub fn infer(&self, x1: F, x2: F) -> F {
        self.infer_with_grid(x1, x2, DEFAULT_GRID_POINTS)
    }

    pub fn infer_with_grid(&self, x1: F, x2: F, points: usize) -> F {
        let caps = self.consequent_caps(x1, x2);
        aggregate_centroid(&self.output, &caps, points)
    }
}

/// Centroid of the max-aggregated, clipped output set, sampled on a uniform
/// grid over [0, 1].
pub fn aggregate_centroid<F: Float + FromPrimitive>(
    output: &OutputPartition<F>,
    caps: &[F; OUTPUT_MF_COUNT],
    points: usize,
) -> F {
    let step = F::one() / F::from_usize(points - 1).unwrap();
    let mut sum_mu = F::zero();
    let mut sum_xmu = F::zero();
    for k in 0..points {
        let x = step * F::from_usize(k).unwrap();
        let mut mu = F::zero();
        for (mf, &cap) in output.mfs.iter().zip(caps.iter()) {
            let m = mf.membership(x).min(cap);
            if m > mu {
                mu = m;
            }
        }
        sum_mu = sum_mu + mu;
        sum_xmu = sum_xmu + x * mu;
    }
    if sum_mu == F::zero() {
        F::from_f64(EMPTY_AGGREGATE_FALLBACK).unwrap()
    } else {
        sum_xmu / sum_mu
    }
}

/// Centroid of a membership curve sampled uniformly over [0, 1].
pub fn centroid_uniform<F: Float + FromPrimitive>(degrees: &[F]) -> F {
    let step = F::one() / F::from_usize(degrees.len() - 1).unwrap();
    let mut sum_mu = F::zero();
    let mut sum_xmu = F::zero();
    for (k, &mu) in degrees.iter().enumerate() {
        let x = step * F::from_usize(k).unwrap();
        sum_mu = sum_mu + mu;
        sum_xmu = sum_xmu + x * mu;
    }
    if sum_mu == F::zero() {
        F::from_f64(EMPTY_AGGREGATE_FALLBACK).unwrap()
    } else {
        sum_xmu / sum_mu
    }
}

/// The two inference systems driving shift assignment. Both share the same
/// learned output partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FisPair<F> {
    pub fis1: Fis<F>,
    pub fis2: Fis<F>,
}

impl<F: Float + FromPrimitive> FisPair<F> {
    pub fn validate(&self) -> Result<(), FuzzyError> {
        self.fis1.validate()?;
        self.fis2.validate()?;
        if self.fis1.rules.rows != 4 || self.fis1.rules.cols != 4 {
            return Err(FuzzyError::RuleDimensionMismatch {
                rows: self.fis1.rules.rows,
                cols: self.fis1.rules.cols,
                want_rows: 4,
                want_cols: 4,
            });
        }
        if self.fis2.rules.rows != 3 || self.fis2.rules.cols != 3 {
            return Err(FuzzyError::RuleDimensionMismatch {
                rows: self.fis2.rules.rows,
                cols: self.fis2.rules.cols,
                want_rows: 3,
                want_cols: 3,
            });
        }
        Ok(())
    }
}

const FIS1_LABELS: [&str; 4] = ["very low", "low", "high", "very high"];
const FIS2_LABELS: [&str; 3] = ["low", "medium", "high"];

/// FIS1 input 1: preferred hours per week over [0, 25].
pub fn fis1_preferred_weekly<F: Float + FromPrimitive>() -> InputPartition<F> {
    let third = F::from_f64(25.0 / 3.0).unwrap();
    let peaks = [
        F::zero(),
        third,
        third + third,
        F::from_f64(25.0).unwrap(),
    ];
    InputPartition::from_peaks(
        "preferred hours per week",
        &FIS1_LABELS,
        F::zero(),
        F::from_f64(25.0).unwrap(),
        &peaks,
    )
    .expect("default partition is valid")
}

/// FIS1 input 2: currently assigned hours per week over [0, 25].
pub fn fis1_assigned_weekly<F: Float + FromPrimitive>() -> InputPartition<F> {
    let mut p = fis1_preferred_weekly::<F>();
    p.name = "assigned hours per week".to_string();
    p
}

/// FIS2 input 1: preferred shift length over [1, 8].
pub fn fis2_preferred_shift<F: Float + FromPrimitive>() -> InputPartition<F> {
    InputPartition::from_peaks(
        "preferred shift length",
        &FIS2_LABELS,
        F::one(),
        F::from_f64(8.0).unwrap(),
        &[F::one(), F::from_f64(4.5).unwrap(), F::from_f64(8.0).unwrap()],
    )
    .expect("default partition is valid")
}

/// FIS2 input 2: currently assigned hours this day over [0, 11].
pub fn fis2_assigned_daily<F: Float + FromPrimitive>() -> InputPartition<F> {
    InputPartition::from_peaks(
        "assigned hours per day",
        &FIS2_LABELS,
        F::zero(),
        F::from_f64(11.0).unwrap(),
        &[
            F::zero(),
            F::from_f64(5.5).unwrap(),
            F::from_f64(11.0).unwrap(),
        ],
    )
    .expect("default partition is valid")
}
