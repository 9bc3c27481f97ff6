//! The annotated sonnet corpus: metadata and texts, annotator files,
//! valence repair, median fusion, tag subsets and descriptive statistics.

mod annotation;
mod catalog;
mod fusion;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stats::sample_sd;
use crate::textproc::{normalize, NormalizationConfig, TextError};

pub use annotation::AnnotationSet;
pub use catalog::{Feature, FeatureCatalog, OrdinalFeature, PsychTag};
pub use fusion::{
    build_median_annotator, fill_missing_psych, reverse_ordinal_scale, subset_by_tag, CellRef, FillReport, MedianReport,
};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("no rows")]
    NoRows,
    #[error("line {line}: {detail}")]
    Malformed { line: usize, detail: String },
    #[error("column {column}: unknown feature {name:?}")]
    UnknownFeature { column: usize, name: String },
    #[error("header lacks feature {0:?}")]
    MissingFeature(&'static str),
    #[error("column {column}: feature {name:?} appears twice")]
    DuplicateFeature { column: usize, name: String },
    #[error("line {line}, column {column:?}: value {value} outside [{min}, {max}]")]
    OutOfRange { line: usize, column: &'static str, value: i64, min: u8, max: u8 },
    #[error("line {line}, column {column:?}: not an integer: {raw:?}")]
    NotInteger { line: usize, column: &'static str, raw: String },
    #[error("line {line}, column {column:?}: ordinal features must not be missing")]
    MissingOrdinal { line: usize, column: &'static str },
    #[error("{what}: expected {expected} rows, found {found}")]
    RowCountMismatch { what: String, expected: usize, found: usize },
    #[error("feature {0:?} is not ordinal")]
    NotOrdinal(&'static str),
    #[error("unknown psychological tag {0:?}")]
    UnknownTag(String),
    #[error("annotation sets cover different sonnets")]
    SetMismatch,
    #[error("expected {expected} annotation sets, got {got}")]
    SetCount { expected: usize, got: usize },
    #[error("metadata line {line}: missing column {column:?}")]
    MissingMetadataColumn { line: usize, column: &'static str },
    #[error("duplicate sonnet id {0:?}")]
    DuplicateSonnet(String),
    #[error("sonnet {0:?} has empty text")]
    EmptyText(String),
    #[error(transparent)]
    Text(#[from] TextError),
}

/// Opaque sonnet identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SonnetId(pub String);

impl fmt::Display for SonnetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SonnetId {
    fn from(s: &str) -> Self {
        SonnetId(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SonnetMetadata {
    pub author: String,
    pub year: String,
    pub title: String,
    #[serde(rename = "id_sonnet")]
    pub sonnet_id: SonnetId,
    pub file_path: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sonnet {
    pub metadata: SonnetMetadata,
    pub text: String,
}

impl Sonnet {
    pub fn id(&self) -> &SonnetId {
        &self.metadata.sonnet_id
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    sonnets: Vec<Sonnet>,
}

const METADATA_COLUMNS: [&str; 5] = ["author", "year", "title", "id_sonnet", "file_path"];

/// Parses the metadata table (`author, year, title, id_sonnet, file_path`).
pub fn parse_metadata(text: &str, delimiter: u8) -> Result<Vec<SonnetMetadata>, CorpusError> {
    let mut rdr = csv::ReaderBuilder::new().delimiter(delimiter).flexible(true).from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| CorpusError::Malformed { line: 1, detail: e.to_string() })?.clone();
    let mut idx = [0usize; 5];
    for (slot, name) in idx.iter_mut().zip(METADATA_COLUMNS) {
        *slot = header
            .iter()
            .position(|h| h.trim().trim_start_matches('\u{feff}') == name)
            .ok_or(CorpusError::MissingMetadataColumn { line: 1, column: name })?;
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| CorpusError::Malformed { line, detail: e.to_string() })?;
        let field = |k: usize| -> Result<String, CorpusError> {
            rec.get(idx[k])
                .map(|s| s.trim().to_string())
                .ok_or(CorpusError::MissingMetadataColumn { line, column: METADATA_COLUMNS[k] })
        };
        let meta = SonnetMetadata {
            author: field(0)?,
            year: field(1)?,
            title: field(2)?,
            sonnet_id: SonnetId(field(3)?),
            file_path: field(4)?,
        };
        if meta.sonnet_id.0.is_empty() {
            return Err(CorpusError::Malformed { line, detail: "empty id_sonnet".into() });
        }
        if meta.file_path.is_empty() {
            return Err(CorpusError::Malformed { line, detail: "empty file_path".into() });
        }
        if !seen.insert(meta.sonnet_id.clone()) {
            return Err(CorpusError::DuplicateSonnet(meta.sonnet_id.0));
        }
        out.push(meta);
    }
    if out.is_empty() {
        return Err(CorpusError::NoRows);
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.display().to_string(), source })
}

impl Corpus {
    pub fn new(sonnets: Vec<Sonnet>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for s in &sonnets {
            if !seen.insert(s.id()) {
                return Err(CorpusError::DuplicateSonnet(s.id().0.clone()));
            }
            if s.text.trim().is_empty() {
                return Err(CorpusError::EmptyText(s.id().0.clone()));
            }
        }
        Ok(Corpus { sonnets })
    }

    /// Reads the metadata table and every sonnet text it points to, with
    /// `file_path` resolved against `sonnet_root`.
    pub fn load(metadata: &Path, sonnet_root: &Path) -> Result<Self, CorpusError> {
        let metas = parse_metadata(&read(metadata)?, b',')?;
        let sonnets = metas
            .into_iter()
            .map(|m| {
                let path: PathBuf = sonnet_root.join(&m.file_path);
                Ok(Sonnet { text: read(&path)?, metadata: m })
            })
            .collect::<Result<Vec<_>, CorpusError>>()?;
        Corpus::new(sonnets)
    }

    pub fn sonnets(&self) -> &[Sonnet] {
        &self.sonnets
    }

    pub fn len(&self) -> usize {
        self.sonnets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sonnets.is_empty()
    }

    pub fn ids(&self) -> Vec<SonnetId> {
        self.sonnets.iter().map(|s| s.id().clone()).collect()
    }

    pub fn get(&self, id: &SonnetId) -> Option<&Sonnet> {
        self.sonnets.iter().find(|s| s.id() == id)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub bin_width: usize,
    /// Lower edge of each bin; bin `i` covers `[edges[i], edges[i] + bin_width)`.
    pub edges: Vec<usize>,
    pub counts: Vec<usize>,
}

pub const HISTOGRAM_BIN_WIDTH: usize = 5;

impl Histogram {
    pub fn of(values: &[usize], bin_width: usize) -> Self {
        let (Some(&lo), Some(&hi)) = (values.iter().min(), values.iter().max()) else {
            return Histogram { bin_width, edges: Vec::new(), counts: Vec::new() };
        };
        let first = lo / bin_width * bin_width;
        let bins = (hi - first) / bin_width + 1;
        let mut counts = vec![0; bins];
        for v in values {
            counts[(v - first) / bin_width] += 1;
        }
        let edges = (0..bins).map(|i| first + i * bin_width).collect();
        Histogram { bin_width, edges, counts }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub n_sonnets: usize,
    pub words_mean: f64,
    pub words_sd: f64,
    pub word_counts: Vec<usize>,
    pub histogram: Histogram,
    /// Sonnets per tag in the median set, in catalog order; empty without one.
    pub tag_counts: Vec<(PsychTag, usize)>,
}

/// Word counts are tokens surviving stopword removal under `norm` (repeats
/// counted). Tag counts come from `median` when supplied.
pub fn corpus_statistics(
    corpus: &Corpus,
    median: Option<&AnnotationSet>,
    norm: &NormalizationConfig,
) -> Result<CorpusStats, CorpusError> {
    let word_counts =
        corpus.sonnets().iter().map(|s| normalize(&s.text, norm).map(|t| t.len())).collect::<Result<Vec<_>, _>>()?;
    let as_f: Vec<f64> = word_counts.iter().map(|&c| c as f64).collect();
    let words_mean = if as_f.is_empty() { 0.0 } else { as_f.iter().sum::<f64>() / as_f.len() as f64 };
    let tag_counts = match median {
        Some(m) => PsychTag::ALL
            .into_iter()
            .map(|t| (t, m.column(Feature::Tag(t)).filter(|v| *v == Some(1)).count()))
            .collect(),
        None => Vec::new(),
    };
    Ok(CorpusStats {
        n_sonnets: corpus.len(),
        words_mean,
        words_sd: sample_sd(&as_f),
        histogram: Histogram::of(&word_counts, HISTOGRAM_BIN_WIDTH),
        word_counts,
        tag_counts,
    })
}

/// Rows per tag as an ordered map, convenient for report lookups.
pub fn tag_count_map(stats: &CorpusStats) -> BTreeMap<&'static str, usize> {
    stats.tag_counts.iter().map(|(t, c)| (t.name(), *c)).collect()
}
