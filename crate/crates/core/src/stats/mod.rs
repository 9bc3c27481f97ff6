//! Statistical kernel: rank correlation, least squares with inference,
//! one-way ANOVA, distribution tails and power analysis.
//!
//! Every p-value is computed from closed-form special functions; nothing
//! here draws random numbers.

mod anova;
mod ols;
mod power;
mod rank;
pub mod special;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use anova::{one_way_anova, AnovaDegeneracy, AnovaResult};
pub use ols::{ols, RegressionResult, RANK_TOLERANCE};
pub use power::{min_sample_size, two_sample_t_power};
pub use rank::{average_ranks, pearson, spearman, CorrelationResult};
pub use special::{f_tail, regularized_incomplete_beta, t_tail};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least {needed} observations, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("non-finite input value")]
    NonFinite,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("design matrix is rank deficient; dependent predictor columns {columns:?}")]
    RankDeficient { columns: Vec<usize> },
    #[error("response has zero variance")]
    ZeroVariance,
    #[error("need at least 2 groups, got {0}")]
    TooFewGroups(usize),
    #[error("group {0} is empty")]
    EmptyGroup(usize),
    #[error("{0} did not converge")]
    NonConvergence(&'static str),
}

/// Why a statistic has no value. Undefinedness is data, not failure: it is
/// carried through feature vectors and reports as an explicit empty cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Undefined {
    NoObservations,
    TooFewPoints,
    ZeroVariance,
    /// Read back from a file where the cell was empty; the reason was not kept.
    Missing,
}

impl fmt::Display for Undefined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Undefined::NoObservations => "no observations",
            Undefined::TooFewPoints => "needs >=2 points",
            Undefined::ZeroVariance => "zero variance",
            Undefined::Missing => "missing",
        })
    }
}

/// Strength label for a correlation coefficient, on `|rho|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationBand {
    Negligible,
    Weak,
    Moderate,
    Strong,
    VeryStrong,
}

impl CorrelationBand {
    pub fn as_str(self) -> &'static str {
        match self {
            CorrelationBand::Negligible => "negligible",
            CorrelationBand::Weak => "weak",
            CorrelationBand::Moderate => "moderate",
            CorrelationBand::Strong => "strong",
            CorrelationBand::VeryStrong => "very strong",
        }
    }
}

impl fmt::Display for CorrelationBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Bands on `|rho|`: below 0.1 negligible, then weak up to 0.4, moderate up
/// to 0.7, strong up to 0.9, very strong from 0.9.
pub fn correlation_band(rho: f64) -> CorrelationBand {
    let r = rho.abs();
    if r < 0.1 {
        CorrelationBand::Negligible
    } else if r < 0.4 {
        CorrelationBand::Weak
    } else if r < 0.7 {
        CorrelationBand::Moderate
    } else if r < 0.9 {
        CorrelationBand::Strong
    } else {
        CorrelationBand::VeryStrong
    }
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator); 0 for a single value.
pub fn sample_sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}
