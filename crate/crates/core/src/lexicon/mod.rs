//! Affective-norm lexicons: ingestion, scale harmonization, median fusion
//! into one normalized-key lexicon, and corpus coverage.

mod coverage;
mod merge;
mod source;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coverage::{coverage, distinct_key_counts, missing_words, CoverageReport, CoverageRow, MissingWord};
pub use merge::{lookup, merge, MergedLexicon};
pub use source::{DimensionColumns, LexiconDescriptor, SourceLexicon};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {detail}")]
    Malformed { line: usize, detail: String },
    #[error("line {line}, column {column}: value {value} outside declared scale [{min}, {max}]")]
    ScaleViolation { line: usize, column: String, value: f64, min: f64, max: f64 },
    #[error("line {line}, column {column}: negative standard deviation {value}")]
    NegativeSd { line: usize, column: String, value: f64 },
    #[error("line {line}: scale for {dimension} differs from the one declared earlier")]
    InconsistentScale { line: usize, dimension: Dimension },
    #[error("missing column {0:?}")]
    MissingColumn(String),
    #[error("unknown dimension {0:?}")]
    UnknownDimension(String),
    #[error("canonical lexicon file mixes source ids {0:?} and {1:?}")]
    MixedSources(String, String),
    #[error("degenerate scale [{min}, {max}]")]
    DegenerateScale { min: f64, max: f64 },
    #[error("descriptor: {0}")]
    Descriptor(String),
    #[error("merge needs at least one source lexicon")]
    NoSources,
}

/// The ten word-level norms aggregated into sonnet features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Valence,
    Arousal,
    Happiness,
    Anger,
    Sadness,
    Fear,
    Disgust,
    Concreteness,
    Imageability,
    ContextAvailability,
}

impl Dimension {
    pub const COUNT: usize = 10;
    pub const ALL: [Dimension; Self::COUNT] = [
        Dimension::Valence,
        Dimension::Arousal,
        Dimension::Happiness,
        Dimension::Anger,
        Dimension::Sadness,
        Dimension::Fear,
        Dimension::Disgust,
        Dimension::Concreteness,
        Dimension::Imageability,
        Dimension::ContextAvailability,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Dimension::Valence => "valence",
            Dimension::Arousal => "arousal",
            Dimension::Happiness => "happiness",
            Dimension::Anger => "anger",
            Dimension::Sadness => "sadness",
            Dimension::Fear => "fear",
            Dimension::Disgust => "disgust",
            Dimension::Concreteness => "concreteness",
            Dimension::Imageability => "imageability",
            Dimension::ContextAvailability => "context_availability",
        }
    }

    /// Target scale for harmonized values: valence/arousal on 1–9, the
    /// discrete emotions on 1–5, the lexico-semantic norms on 1–7.
    pub fn canonical_scale(self) -> Scale {
        match self {
            Dimension::Valence | Dimension::Arousal => Scale { min: 1.0, max: 9.0 },
            Dimension::Happiness | Dimension::Anger | Dimension::Sadness | Dimension::Fear | Dimension::Disgust => {
                Scale { min: 1.0, max: 5.0 }
            }
            Dimension::Concreteness | Dimension::Imageability | Dimension::ContextAvailability => {
                Scale { min: 1.0, max: 7.0 }
            }
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dimension {
    type Err = LexiconError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_lowercase().replace([' ', '-'], "_");
        Dimension::ALL
            .into_iter()
            .find(|d| d.name() == norm || (norm == "cont_ava" && *d == Dimension::ContextAvailability))
            .ok_or_else(|| LexiconError::UnknownDimension(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scale {
    pub min: f64,
    pub max: f64,
}

impl Scale {
    pub fn new(min: f64, max: f64) -> Result<Self, LexiconError> {
        if !(min < max) || !min.is_finite() || !max.is_finite() {
            return Err(LexiconError::DegenerateScale { min, max });
        }
        Ok(Scale { min, max })
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.min && v <= self.max
    }

    /// Slope of the affine map from `self` onto `to`.
    pub fn slope_to(&self, to: &Scale) -> f64 {
        (to.max - to.min) / (self.max - self.min)
    }
}

/// Affine map of `value` from one scale onto another.
pub fn rescale(value: f64, from: Scale, to: Scale) -> Result<f64, LexiconError> {
    if !(from.min < from.max) {
        return Err(LexiconError::DegenerateScale { min: from.min, max: from.max });
    }
    if !(to.min < to.max) {
        return Err(LexiconError::DegenerateScale { min: to.min, max: to.max });
    }
    Ok(to.min + (value - from.min) * from.slope_to(&to))
}

/// Target scale for every dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalScales([Scale; Dimension::COUNT]);

impl Default for CanonicalScales {
    fn default() -> Self {
        CanonicalScales(Dimension::ALL.map(Dimension::canonical_scale))
    }
}

impl CanonicalScales {
    pub fn get(&self, d: Dimension) -> Scale {
        self.0[d.index()]
    }

    pub fn set(&mut self, d: Dimension, scale: Scale) {
        self.0[d.index()] = scale;
    }
}

/// Mean rating of a word on one dimension, with its standard deviation when
/// the source reports one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Norm {
    pub mean: f64,
    pub sd: Option<f64>,
}

/// Per-dimension norms for one word or key.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LexEntry([Option<Norm>; Dimension::COUNT]);

impl LexEntry {
    pub fn get(&self, d: Dimension) -> Option<Norm> {
        self.0[d.index()]
    }

    pub fn set(&mut self, d: Dimension, norm: Option<Norm>) {
        self.0[d.index()] = norm;
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }

    pub fn dimensions(&self) -> impl Iterator<Item = (Dimension, Norm)> + '_ {
        Dimension::ALL.into_iter().filter_map(|d| self.get(d).map(|n| (d, n)))
    }
}

pub(crate) fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 { values[n / 2] } else { 0.5 * (values[n / 2 - 1] + values[n / 2]) })
}
