//! The 32 inferred General Affective Meaning features of a sonnet, built
//! from the lexicon norms of its words and their positions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::corpus::{Corpus, SonnetId};
use crate::lexicon::{lookup, Dimension, LexEntry, MergedLexicon};
use crate::stats::{spearman, StatsError, Undefined};
use crate::textproc::{normalize, NormalizationConfig, TextError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GamFeature {
    Mean(Dimension),
    Sd(Dimension),
    MaxArousal,
    MinArousal,
    MaxValence,
    MinValence,
    ArousalSpan,
    ValenceSpan,
    CorAro,
    CorVal,
    AbsCorAro,
    AbsCorVal,
    SigmaAro,
    SigmaVal,
}

const TAIL: [GamFeature; 12] = [
    GamFeature::MaxArousal,
    GamFeature::MinArousal,
    GamFeature::MaxValence,
    GamFeature::MinValence,
    GamFeature::ArousalSpan,
    GamFeature::ValenceSpan,
    GamFeature::CorAro,
    GamFeature::CorVal,
    GamFeature::AbsCorAro,
    GamFeature::AbsCorVal,
    GamFeature::SigmaAro,
    GamFeature::SigmaVal,
];

fn prefix(d: Dimension) -> &'static str {
    match d {
        Dimension::ContextAvailability => "cont_ava",
        other => other.name(),
    }
}

impl GamFeature {
    pub const COUNT: usize = 32;

    /// Column order: mean and sd per dimension, then extrema, spans,
    /// correlations and sigmas.
    pub fn all() -> impl Iterator<Item = GamFeature> + Clone {
        Dimension::ALL.into_iter().flat_map(|d| [GamFeature::Mean(d), GamFeature::Sd(d)]).chain(TAIL)
    }

    pub fn index(self) -> usize {
        match self {
            GamFeature::Mean(d) => 2 * d.index(),
            GamFeature::Sd(d) => 2 * d.index() + 1,
            other => 2 * Dimension::COUNT + TAIL.iter().position(|t| *t == other).unwrap_or(0),
        }
    }

    pub fn name(self) -> String {
        match self {
            GamFeature::Mean(d) => format!("{}_mean", prefix(d)),
            GamFeature::Sd(d) => format!("{}_sd", prefix(d)),
            GamFeature::MaxArousal => "max_arousal".into(),
            GamFeature::MinArousal => "min_arousal".into(),
            GamFeature::MaxValence => "max_valence".into(),
            GamFeature::MinValence => "min_valence".into(),
            GamFeature::ArousalSpan => "arousal_span".into(),
            GamFeature::ValenceSpan => "valence_span".into(),
            GamFeature::CorAro => "CorAro".into(),
            GamFeature::CorVal => "CorVal".into(),
            GamFeature::AbsCorAro => "AbsCorAro".into(),
            GamFeature::AbsCorVal => "AbsCorVal".into(),
            GamFeature::SigmaAro => "sigma_aro".into(),
            GamFeature::SigmaVal => "sigma_val".into(),
        }
    }

    /// The ten per-dimension mean features.
    pub fn means() -> impl Iterator<Item = GamFeature> {
        Dimension::ALL.into_iter().map(GamFeature::Mean)
    }

    /// The twenty per-dimension mean and sd features.
    pub fn lexical() -> impl Iterator<Item = GamFeature> {
        GamFeature::all().take(2 * Dimension::COUNT)
    }
}

impl fmt::Display for GamFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("unknown GAM feature {0:?}")]
pub struct UnknownGamFeature(pub String);

impl FromStr for GamFeature {
    type Err = UnknownGamFeature;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GamFeature::all().find(|f| f.name() == s.trim()).ok_or_else(|| UnknownGamFeature(s.to_string()))
    }
}

impl Serialize for GamFeature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// One matched token: its post-stopword position and lexicon norms.
#[derive(Debug, Clone, PartialEq)]
pub struct WordObservation {
    pub position: usize,
    pub key: String,
    pub values: LexEntry,
}

/// Normalizes `text` and keeps the tokens the lexicon knows.
pub fn observe_words(
    text: &str,
    merged: &MergedLexicon,
    norm: &NormalizationConfig,
) -> Result<Vec<WordObservation>, TextError> {
    Ok(normalize(text, norm)?
        .into_iter()
        .filter_map(|t| {
            let values = *lookup(merged, &t.normalized)?;
            (!values.is_empty()).then_some(WordObservation { position: t.position, key: t.normalized, values })
        })
        .collect())
}

pub type FeatureValue = Result<f64, Undefined>;

#[derive(Debug, Clone, PartialEq)]
pub struct GamFeatureVector([FeatureValue; GamFeature::COUNT]);

impl GamFeatureVector {
    pub fn undefined(reason: Undefined) -> Self {
        GamFeatureVector([Err(reason); GamFeature::COUNT])
    }

    pub fn get(&self, f: GamFeature) -> FeatureValue {
        self.0[f.index()]
    }

    pub fn set(&mut self, f: GamFeature, v: FeatureValue) {
        self.0[f.index()] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (GamFeature, FeatureValue)> + '_ {
        GamFeature::all().map(|f| (f, self.get(f)))
    }
}

impl Serialize for GamFeatureVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(GamFeature::COUNT))?;
        for (f, v) in self.iter() {
            map.serialize_entry(&f.name(), &v.ok())?;
        }
        map.end()
    }
}

// Order-free sum: sorting first makes the result independent of word order.
// Rounding can push the quotient an ulp past the extremes, so it is clamped.
fn sorted_mean(mut xs: Vec<f64>) -> FeatureValue {
    if xs.is_empty() {
        return Err(Undefined::NoObservations);
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.iter().sum::<f64>() / xs.len() as f64;
    Ok(m.clamp(xs[0], xs[xs.len() - 1]))
}

fn position_correlation(obs: &[WordObservation], d: Dimension) -> FeatureValue {
    let (values, positions): (Vec<f64>, Vec<f64>) =
        obs.iter().filter_map(|o| o.values.get(d).map(|n| (n.mean, o.position as f64))).unzip();
    match spearman(&values, &positions) {
        Ok(r) => r.rho,
        Err(StatsError::TooFewPoints { got: 0, .. }) => Err(Undefined::NoObservations),
        Err(_) => Err(Undefined::TooFewPoints),
    }
}

/// Aggregates per-word norms into the 32 features. Statistics over an
/// empty set, or correlations over fewer than two points or a constant
/// series, are undefined with the reason attached.
pub fn compute_features(obs: &[WordObservation]) -> GamFeatureVector {
    let mut v = GamFeatureVector::undefined(Undefined::NoObservations);
    for d in Dimension::ALL {
        let present = obs.iter().filter_map(|o| o.values.get(d));
        v.set(GamFeature::Mean(d), sorted_mean(present.clone().map(|n| n.mean).collect()));
        v.set(GamFeature::Sd(d), sorted_mean(present.filter_map(|n| n.sd).collect()));
    }

    for (d, max, min, span, cor, abs, sigma) in [
        (
            Dimension::Arousal,
            GamFeature::MaxArousal,
            GamFeature::MinArousal,
            GamFeature::ArousalSpan,
            GamFeature::CorAro,
            GamFeature::AbsCorAro,
            GamFeature::SigmaAro,
        ),
        (
            Dimension::Valence,
            GamFeature::MaxValence,
            GamFeature::MinValence,
            GamFeature::ValenceSpan,
            GamFeature::CorVal,
            GamFeature::AbsCorVal,
            GamFeature::SigmaVal,
        ),
    ] {
        let means: Vec<f64> = obs.iter().filter_map(|o| o.values.get(d)).map(|n| n.mean).collect();
        if let (Some(hi), Some(lo)) = (means.iter().copied().reduce(f64::max), means.iter().copied().reduce(f64::min)) {
            v.set(max, Ok(hi));
            v.set(min, Ok(lo));
            v.set(span, Ok(hi - lo));
        }
        let rho = position_correlation(obs, d);
        v.set(cor, rho);
        v.set(abs, rho.map(f64::abs));
        v.set(sigma, v.get(GamFeature::Mean(d)).map(|m| m * (means.len() as f64).sqrt()));
    }
    v
}

/// Feature vectors for a whole corpus, in corpus order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureMatrix {
    pub rows: Vec<(SonnetId, GamFeatureVector)>,
}

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("line {line}: {detail}")]
    Malformed { line: usize, detail: String },
    #[error(transparent)]
    UnknownFeature(#[from] UnknownGamFeature),
    #[error("feature {0:?} appears twice")]
    DuplicateFeature(String),
    #[error("duplicate sonnet id {0:?}")]
    DuplicateSonnet(String),
}

impl FeatureMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, id: &SonnetId) -> Option<&GamFeatureVector> {
        self.rows.iter().find(|(s, _)| s == id).map(|(_, v)| v)
    }

    pub fn column(&self, f: GamFeature) -> Vec<FeatureValue> {
        self.rows.iter().map(|(_, v)| v.get(f)).collect()
    }

    /// Undefined cells per feature, in column order.
    pub fn undefined_counts(&self) -> Vec<(GamFeature, usize)> {
        GamFeature::all().map(|f| (f, self.rows.iter().filter(|(_, v)| v.get(f).is_err()).count())).collect()
    }

    /// `sonnet_id` plus the 32 feature columns; undefined cells are empty.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("sonnet_id".to_string()).chain(GamFeature::all().map(|f| f.name()));
        w.write_record(header).expect("in-memory write");
        for (id, v) in &self.rows {
            let cells = std::iter::once(id.0.clone())
                .chain(v.iter().map(|(_, x)| x.map(|x| x.to_string()).unwrap_or_default()));
            w.write_record(cells).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    /// Reads a matrix written by [`FeatureMatrix::to_csv`]. Columns may come
    /// in any order; absent or empty cells read back as undefined.
    pub fn parse_csv(text: &str) -> Result<Self, MatrixError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
        let mut records = rdr.records();
        let header = match records.next() {
            Some(r) => r.map_err(|e| MatrixError::Malformed { line: 1, detail: e.to_string() })?,
            None => return Ok(FeatureMatrix::default()),
        };
        if header.get(0).map(str::trim) != Some("sonnet_id") {
            return Err(MatrixError::Malformed { line: 1, detail: "first column must be sonnet_id".into() });
        }
        let mut columns = Vec::new();
        for name in header.iter().skip(1) {
            let f: GamFeature = name.parse()?;
            if columns.contains(&f) {
                return Err(MatrixError::DuplicateFeature(f.name()));
            }
            columns.push(f);
        }
        let mut rows: Vec<(SonnetId, GamFeatureVector)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for rec in records {
            let rec = rec.map_err(|e| MatrixError::Malformed { line: 0, detail: e.to_string() })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            if rec.len() != columns.len() + 1 {
                return Err(MatrixError::Malformed {
                    line,
                    detail: format!("expected {} cells, found {}", columns.len() + 1, rec.len()),
                });
            }
            let id = SonnetId(rec[0].trim().to_string());
            if !seen.insert(id.clone()) {
                return Err(MatrixError::DuplicateSonnet(id.0));
            }
            let mut v = GamFeatureVector::undefined(Undefined::Missing);
            for (cell, &f) in rec.iter().skip(1).zip(&columns) {
                let cell = cell.trim();
                if cell.is_empty() {
                    continue;
                }
                let x: f64 = cell
                    .parse()
                    .map_err(|_| MatrixError::Malformed { line, detail: format!("{f}: not a number: {cell:?}") })?;
                if !x.is_finite() {
                    return Err(MatrixError::Malformed { line, detail: format!("{f}: non-finite") });
                }
                v.set(f, Ok(x));
            }
            rows.push((id, v));
        }
        Ok(FeatureMatrix { rows })
    }
}

/// Features for every sonnet; sonnets are processed in parallel and the
/// result keeps corpus order.
pub fn compute_corpus_matrix(
    corpus: &Corpus,
    merged: &MergedLexicon,
    norm: &NormalizationConfig,
) -> Result<FeatureMatrix, TextError> {
    norm.validate()?;
    let rows = corpus
        .sonnets()
        .par_iter()
        .map(|s| Ok((s.id().clone(), compute_features(&observe_words(&s.text, merged, norm)?))))
        .collect::<Result<Vec<_>, TextError>>()?;
    Ok(FeatureMatrix { rows })
}
