use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use sonnet_gam::lexicon::{CanonicalScales, Dimension, LexiconError, Scale};
use sonnet_gam::textproc::NormalizationMode;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config: {0}")]
    Parse(String),
    #[error("config: {0}")]
    Invalid(String),
    #[error("{what} not found: {path}")]
    MissingPath { what: &'static str, path: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
    #[default]
    Both,
}

impl ReportFormat {
    pub fn csv(self) -> bool {
        matches!(self, ReportFormat::Csv | ReportFormat::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, ReportFormat::Json | ReportFormat::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconInput {
    pub path: PathBuf,
    /// Column mapping for a lexicon in its published layout; without one
    /// the file is read in the canonical long format.
    #[serde(default)]
    pub descriptor: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    metadata: Option<PathBuf>,
    sonnet_root: Option<PathBuf>,
    #[serde(default)]
    annotations: Vec<PathBuf>,
    #[serde(default = "comma")]
    annotation_delimiter: char,
    #[serde(default)]
    reverse_valence: Vec<u8>,
    stopwords: Option<PathBuf>,
    lemma_table: Option<PathBuf>,
    #[serde(default = "tab")]
    lemma_delimiter: char,
    #[serde(default)]
    mode: NormalizationMode,
    #[serde(default = "default_out")]
    out: PathBuf,
    #[serde(default)]
    format: ReportFormat,
    #[serde(default)]
    lexicon: Vec<LexiconInput>,
    #[serde(default)]
    scales: BTreeMap<String, [f64; 2]>,
}

fn comma() -> char {
    ','
}

fn tab() -> char {
    '\t'
}

fn default_out() -> PathBuf {
    PathBuf::from("reports")
}

/// A parsed run configuration with every path resolved against the
/// directory of the config file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub metadata: Option<PathBuf>,
    pub sonnet_root: Option<PathBuf>,
    pub annotations: Vec<PathBuf>,
    pub annotation_delimiter: u8,
    /// Annotator ids (1-based file positions) whose valence scale runs the
    /// other way and is reversed on load.
    pub reverse_valence: Vec<u8>,
    pub stopwords: Option<PathBuf>,
    pub lemma_table: Option<PathBuf>,
    pub lemma_delimiter: char,
    pub mode: NormalizationMode,
    pub out: PathBuf,
    pub format: ReportFormat,
    pub lexicons: Vec<LexiconInput>,
    pub scales: CanonicalScales,
}

fn ascii_delimiter(c: char, what: &str) -> Result<u8, ConfigError> {
    if c.is_ascii() && c != '\n' && c != '"' {
        Ok(c as u8)
    } else {
        Err(ConfigError::Invalid(format!("{what} must be a single ASCII character")))
    }
}

impl RunConfig {
    pub fn parse(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        let resolve = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };

        let mut scales = CanonicalScales::default();
        for (name, [min, max]) in raw.scales {
            let d: Dimension = name.parse().map_err(|e: LexiconError| ConfigError::Invalid(e.to_string()))?;
            let s = Scale::new(min, max).map_err(|e| ConfigError::Invalid(format!("scale {name}: {e}")))?;
            scales.set(d, s);
        }
        let n_sets = raw.annotations.len();
        if let Some(bad) = raw.reverse_valence.iter().find(|&&id| id == 0 || id as usize > n_sets) {
            return Err(ConfigError::Invalid(format!(
                "reverse_valence names annotator {bad}, but {n_sets} annotation files are configured"
            )));
        }
        if n_sets > u8::MAX as usize {
            return Err(ConfigError::Invalid("too many annotation files".into()));
        }
        Ok(RunConfig {
            metadata: raw.metadata.map(resolve),
            sonnet_root: raw.sonnet_root.map(resolve),
            annotations: raw.annotations.into_iter().map(resolve).collect(),
            annotation_delimiter: ascii_delimiter(raw.annotation_delimiter, "annotation_delimiter")?,
            reverse_valence: raw.reverse_valence,
            stopwords: raw.stopwords.map(resolve),
            lemma_table: raw.lemma_table.map(resolve),
            lemma_delimiter: raw.lemma_delimiter,
            mode: raw.mode,
            out: resolve(raw.out),
            format: raw.format,
            lexicons: raw
                .lexicon
                .into_iter()
                .map(|l| LexiconInput { path: resolve(l.path), descriptor: l.descriptor.map(resolve) })
                .collect(),
            scales,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    /// Checks that every configured input path exists.
    pub fn check_paths(&self) -> Result<(), ConfigError> {
        let mut paths: Vec<(&'static str, &Path)> = Vec::new();
        if let Some(p) = &self.metadata {
            paths.push(("metadata file", p));
        }
        if let Some(p) = &self.sonnet_root {
            paths.push(("sonnet directory", p));
        }
        paths.extend(self.annotations.iter().map(|p| ("annotation file", p.as_path())));
        if let Some(p) = &self.stopwords {
            paths.push(("stopword file", p));
        }
        if let Some(p) = &self.lemma_table {
            paths.push(("lemma table", p));
        }
        for l in &self.lexicons {
            paths.push(("lexicon file", &l.path));
            if let Some(d) = &l.descriptor {
                paths.push(("lexicon descriptor", d));
            }
        }
        match paths.into_iter().find(|(_, p)| !p.exists()) {
            Some((what, p)) => Err(ConfigError::MissingPath { what, path: p.display().to_string() }),
            None => Ok(()),
        }
    }
}
