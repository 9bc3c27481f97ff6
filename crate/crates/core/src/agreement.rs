//! Inter-annotator reliability with Krippendorff's alpha.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::corpus::{AnnotationSet, Feature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Nominal,
    Ordinal,
    Interval,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum AlphaError {
    #[error("no unit has two or more values")]
    NoPairableValues,
    #[error("need at least 2 raters, got {0}")]
    TooFewRaters(usize),
    #[error("unit {unit} has {found} cells, expected {expected}")]
    RaggedUnit { unit: usize, found: usize, expected: usize },
    #[error("non-finite value")]
    NonFinite,
}

/// Units × raters; `None` is a missing rating.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityMatrix {
    pub raters: Vec<u8>,
    pub cells: Vec<Vec<Option<f64>>>,
    pub level: Level,
}

impl ReliabilityMatrix {
    /// One unit per sonnet, one rater per set, values of `feature`.
    pub fn from_sets(sets: &[&AnnotationSet], feature: Feature, level: Level) -> Self {
        let n = sets.first().map_or(0, |s| s.len());
        let cells = (0..n).map(|row| sets.iter().map(|s| s.get(row, feature).map(f64::from)).collect()).collect();
        ReliabilityMatrix { raters: sets.iter().map(|s| s.annotator_id).collect(), cells, level }
    }
}

/// Landis–Koch style labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AgreementBand {
    VeryLow,
    Light,
    Acceptable,
    Moderate,
    Substantial,
    Perfect,
}

impl AgreementBand {
    pub fn as_str(self) -> &'static str {
        match self {
            AgreementBand::VeryLow => "Very low",
            AgreementBand::Light => "Light",
            AgreementBand::Acceptable => "Acceptable",
            AgreementBand::Moderate => "Moderate",
            AgreementBand::Substantial => "Substantial",
            AgreementBand::Perfect => "Perfect",
        }
    }
}

impl fmt::Display for AgreementBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for AgreementBand {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Lowest alpha regarded as acceptable agreement.
pub const ACCEPTABLE_ALPHA: f64 = 0.21;

/// Bands are half-open upward, so a boundary value takes the higher band.
pub fn agreement_band(alpha: f64) -> AgreementBand {
    if alpha < 0.0 {
        AgreementBand::VeryLow
    } else if alpha < ACCEPTABLE_ALPHA {
        AgreementBand::Light
    } else if alpha < 0.41 {
        AgreementBand::Acceptable
    } else if alpha < 0.61 {
        AgreementBand::Moderate
    } else if alpha < 0.81 {
        AgreementBand::Substantial
    } else {
        AgreementBand::Perfect
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaResult {
    pub alpha: f64,
    /// Values in units with at least two ratings.
    pub n_pairable: usize,
    pub band: AgreementBand,
    pub observed_disagreement: f64,
    pub expected_disagreement: f64,
    /// Only one category observed: expected disagreement is 0 and alpha
    /// is reported as 1 by convention.
    pub degenerate: bool,
}

/// Krippendorff's alpha through the coincidence matrix.
pub fn krippendorff_alpha(m: &ReliabilityMatrix) -> Result<AlphaResult, AlphaError> {
    if m.raters.len() < 2 {
        return Err(AlphaError::TooFewRaters(m.raters.len()));
    }
    let mut categories: Vec<f64> = Vec::new();
    for (unit, row) in m.cells.iter().enumerate() {
        if row.len() != m.raters.len() {
            return Err(AlphaError::RaggedUnit { unit, found: row.len(), expected: m.raters.len() });
        }
        for v in row.iter().flatten() {
            if !v.is_finite() {
                return Err(AlphaError::NonFinite);
            }
            categories.push(*v);
        }
    }
    categories.sort_by(f64::total_cmp);
    categories.dedup();
    let q = categories.len();
    let index = |v: f64| categories.binary_search_by(|c| c.total_cmp(&v)).expect("collected above");

    let mut o = vec![vec![0.0; q]; q];
    let mut counts = vec![0usize; q];
    for row in &m.cells {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut mu = 0usize;
        for v in row.iter().flatten() {
            counts[index(*v)] += 1;
            mu += 1;
        }
        if mu < 2 {
            continue;
        }
        let w = 1.0 / (mu - 1) as f64;
        for c in 0..q {
            if counts[c] == 0 {
                continue;
            }
            for k in 0..q {
                let pairs = if c == k { counts[c] * (counts[c] - 1) } else { counts[c] * counts[k] };
                o[c][k] += pairs as f64 * w;
            }
        }
    }
    let n_c: Vec<f64> = o.iter().map(|r| r.iter().sum()).collect();
    let n: f64 = n_c.iter().sum();
    if n < 2.0 {
        return Err(AlphaError::NoPairableValues);
    }

    let delta2 = |c: usize, k: usize| -> f64 {
        if c == k {
            return 0.0;
        }
        match m.level {
            Level::Nominal => 1.0,
            Level::Ordinal => {
                let (lo, hi) = (c.min(k), c.max(k));
                let cum: f64 = n_c[lo..=hi].iter().sum();
                let d = cum - (n_c[c] + n_c[k]) / 2.0;
                d * d
            }
            Level::Interval => {
                let d = categories[c] - categories[k];
                d * d
            }
        }
    };

    let (mut d_o, mut d_e) = (0.0, 0.0);
    for c in 0..q {
        for k in 0..q {
            let d = delta2(c, k);
            d_o += o[c][k] * d;
            d_e += n_c[c] * n_c[k] * d;
        }
    }
    d_o /= n;
    d_e /= n * (n - 1.0);

    let n_pairable = n.round() as usize;
    if d_e == 0.0 {
        return Ok(AlphaResult {
            alpha: 1.0,
            n_pairable,
            band: agreement_band(1.0),
            observed_disagreement: d_o,
            expected_disagreement: 0.0,
            degenerate: true,
        });
    }
    let alpha = 1.0 - d_o / d_e;
    Ok(AlphaResult {
        alpha,
        n_pairable,
        band: agreement_band(alpha),
        observed_disagreement: d_o,
        expected_disagreement: d_e,
        degenerate: false,
    })
}

pub fn level_for(feature: Feature) -> Level {
    if feature.is_ordinal() {
        Level::Ordinal
    } else {
        Level::Nominal
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseAlpha {
    pub joint: Result<AlphaResult, AlphaError>,
    /// Unordered annotator pairs in input order: (0,1), (0,2), (1,2), ...
    pub pairs: Vec<((u8, u8), Result<AlphaResult, AlphaError>)>,
}

/// Alpha for every pair of sets and for all sets jointly.
pub fn pairwise_alpha(sets: &[&AnnotationSet], feature: Feature, level: Level) -> PairwiseAlpha {
    let joint = krippendorff_alpha(&ReliabilityMatrix::from_sets(sets, feature, level));
    let mut pairs = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let m = ReliabilityMatrix::from_sets(&[sets[i], sets[j]], feature, level);
            pairs.push(((sets[i].annotator_id, sets[j].annotator_id), krippendorff_alpha(&m)));
        }
    }
    PairwiseAlpha { joint, pairs }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementCell {
    pub column: String,
    pub result: Result<AlphaResult, AlphaError>,
}

impl AgreementCell {
    pub fn alpha(&self) -> Option<f64> {
        self.result.as_ref().ok().map(|r| r.alpha)
    }

    /// Below the acceptable threshold.
    pub fn flagged(&self) -> bool {
        self.alpha().is_some_and(|a| a < ACCEPTABLE_ALPHA)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementRow {
    pub feature: Feature,
    pub level: Level,
    pub cells: Vec<AgreementCell>,
}

impl AgreementRow {
    pub fn cell(&self, column: &str) -> Option<&AgreementCell> {
        self.cells.iter().find(|c| c.column == column)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub columns: Vec<String>,
    pub rows: Vec<AgreementRow>,
}

impl AgreementReport {
    /// Share of features whose joint alpha reaches `threshold`.
    pub fn fraction_at_least(&self, threshold: f64) -> f64 {
        let joint: Vec<f64> = self.rows.iter().filter_map(|r| r.cell("k_all").and_then(AgreementCell::alpha)).collect();
        if joint.is_empty() {
            return 0.0;
        }
        joint.iter().filter(|a| **a >= threshold).count() as f64 / joint.len() as f64
    }
}

/// One row per catalog feature: joint alpha (`k_all`), every annotator
/// pair (`k_12`, ...), and each annotator against the median set (`k_1m`,
/// ...). Ordinal level for 1–4 features, nominal for tags. Median columns
/// are omitted when no median set is given.
pub fn agreement_report(sets: &[AnnotationSet], median: Option<&AnnotationSet>) -> AgreementReport {
    let refs: Vec<&AnnotationSet> = sets.iter().collect();
    let mut columns = vec!["k_all".to_string()];
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            columns.push(format!("k_{}{}", sets[i].annotator_id, sets[j].annotator_id));
        }
    }
    if median.is_some() {
        columns.extend(sets.iter().map(|s| format!("k_{}m", s.annotator_id)));
    }

    let rows = Feature::all()
        .map(|feature| {
            let level = level_for(feature);
            let pw = pairwise_alpha(&refs, feature, level);
            let mut results = vec![pw.joint];
            results.extend(pw.pairs.into_iter().map(|(_, r)| r));
            if let Some(m) = median {
                for s in sets {
                    let matrix = ReliabilityMatrix::from_sets(&[s, m], feature, level);
                    results.push(krippendorff_alpha(&matrix));
                }
            }
            let cells =
                columns.iter().zip(results).map(|(c, result)| AgreementCell { column: c.clone(), result }).collect();
            AgreementRow { feature, level, cells }
        })
        .collect();
    AgreementReport { columns, rows }
}
