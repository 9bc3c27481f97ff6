//! Spanish text normalization: tokenization, stopword removal, Snowball
//! stemming and table-driven lemmatization.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use rust_stemmers::{Algorithm, Stemmer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

const BUNDLED_STOPWORDS: &str = include_str!("../data/stopwords_es.txt");

#[derive(Debug, Error)]
pub enum TextError {
    #[error("lemma mode requires a non-empty lemma table")]
    EmptyLemmaTable,
    #[error("stopword {0:?} is not lowercase")]
    UppercaseStopword(String),
    #[error("lemma table line {line}: expected 2 fields, found {found}")]
    LemmaLine { line: usize, found: usize },
    #[error("unknown normalization mode {0:?} (expected raw, stem or lemma)")]
    UnknownMode(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationMode {
    Raw,
    #[default]
    Stem,
    Lemma,
}

impl NormalizationMode {
    pub const ALL: [NormalizationMode; 3] = [NormalizationMode::Raw, NormalizationMode::Stem, NormalizationMode::Lemma];

    pub fn as_str(self) -> &'static str {
        match self {
            NormalizationMode::Raw => "raw",
            NormalizationMode::Stem => "stem",
            NormalizationMode::Lemma => "lemma",
        }
    }
}

impl fmt::Display for NormalizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormalizationMode {
    type Err = TextError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "raw" => Ok(NormalizationMode::Raw),
            "stem" => Ok(NormalizationMode::Stem),
            "lemma" => Ok(NormalizationMode::Lemma),
            other => Err(TextError::UnknownMode(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordList(BTreeSet<String>);

impl StopwordList {
    /// Snowball's Spanish stop list.
    pub fn bundled_spanish() -> Self {
        Self::parse(BUNDLED_STOPWORDS)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// One word per line; blank lines are skipped and entries lowercased.
    pub fn parse(text: &str) -> Self {
        StopwordList(text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_lowercase).collect())
    }

    pub fn load(path: &Path) -> Result<Self, TextError> {
        Ok(Self::parse(&read(path)?))
    }

    pub fn from_words<I, S>(words: I) -> Result<Self, TextError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = BTreeSet::new();
        for w in words {
            let w = w.into();
            if w.to_lowercase() != w {
                return Err(TextError::UppercaseStopword(w));
            }
            set.insert(w);
        }
        Ok(StopwordList(set))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaTable(HashMap<String, String>);

impl LemmaTable {
    /// Two delimited columns per line: surface form, lemma.
    pub fn parse(text: &str, delimiter: char) -> Result<Self, TextError> {
        let mut map = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(delimiter).map(str::trim).collect();
            if fields.len() != 2 || fields[0].is_empty() || fields[1].is_empty() {
                return Err(TextError::LemmaLine { line: i + 1, found: fields.len() });
            }
            map.insert(fields[0].to_lowercase(), fields[1].to_lowercase());
        }
        Ok(LemmaTable(map))
    }

    pub fn load(path: &Path, delimiter: char) -> Result<Self, TextError> {
        Self::parse(&read(path)?, delimiter)
    }

    pub fn insert(&mut self, surface: impl Into<String>, lemma: impl Into<String>) {
        self.0.insert(surface.into(), lemma.into());
    }

    pub fn get(&self, surface: &str) -> Option<&str> {
        self.0.get(surface).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn read(path: &Path) -> Result<String, TextError> {
    std::fs::read_to_string(path).map_err(|source| TextError::Io { path: path.display().to_string(), source })
}

#[derive(Debug, Clone)]
pub struct NormalizationConfig {
    pub mode: NormalizationMode,
    pub stopwords: StopwordList,
    pub lemma_table: LemmaTable,
    pub lowercase: bool,
    pub strip_punctuation: bool,
}

impl NormalizationConfig {
    /// `mode` with the bundled stop list, an empty lemma table, lowercasing
    /// and edge-punctuation stripping.
    pub fn new(mode: NormalizationMode) -> Self {
        NormalizationConfig {
            mode,
            stopwords: StopwordList::bundled_spanish(),
            lemma_table: LemmaTable::default(),
            lowercase: true,
            strip_punctuation: true,
        }
    }

    pub fn with_stopwords(mut self, stopwords: StopwordList) -> Self {
        self.stopwords = stopwords;
        self
    }

    pub fn with_lemma_table(mut self, table: LemmaTable) -> Self {
        self.lemma_table = table;
        self
    }

    pub fn validate(&self) -> Result<(), TextError> {
        if self.mode == NormalizationMode::Lemma && self.lemma_table.is_empty() {
            return Err(TextError::EmptyLemmaTable);
        }
        Ok(())
    }

    /// Key for a single word under this configuration (no stopword filter).
    /// `None` when nothing survives punctuation stripping.
    pub fn key(&self, word: &str) -> Option<String> {
        let mut w = if self.strip_punctuation { strip_edges(word) } else { word.trim() }.to_string();
        if self.lowercase {
            w = w.to_lowercase();
        }
        if w.is_empty() {
            return None;
        }
        let key = match self.mode {
            NormalizationMode::Raw => w,
            NormalizationMode::Stem => stem(&w),
            NormalizationMode::Lemma => lemmatize(&w, &self.lemma_table),
        };
        (!key.is_empty()).then_some(key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    /// 1-based position among the tokens that survived stopword removal.
    pub position: usize,
    pub normalized: String,
}

fn strip_edges(word: &str) -> &str {
    word.trim_matches(|c: char| !c.is_alphanumeric())
}

/// Whitespace tokenization with lowercasing and edge-punctuation stripping.
pub fn tokenize(text: &str) -> Vec<String> {
    tokenize_with(text, true, true)
}

pub fn tokenize_with(text: &str, lowercase: bool, strip_punctuation: bool) -> Vec<String> {
    text.split_whitespace()
        .map(|t| if strip_punctuation { strip_edges(t) } else { t })
        .filter(|t| !t.is_empty())
        .map(|t| if lowercase { t.to_lowercase() } else { t.to_string() })
        .collect()
}

/// Drops stopwords and numbers the survivors 1..n.
pub fn remove_stopwords(tokens: &[String], stopwords: &StopwordList) -> Vec<Token> {
    tokens
        .iter()
        .filter(|t| !stopwords.contains(&t.to_lowercase()))
        .enumerate()
        .map(|(i, t)| Token { surface: t.clone(), position: i + 1, normalized: t.clone() })
        .collect()
}

fn spanish_stemmer() -> &'static Stemmer {
    static STEMMER: OnceLock<Stemmer> = OnceLock::new();
    STEMMER.get_or_init(|| Stemmer::create(Algorithm::Spanish))
}

/// Spanish Snowball stem.
pub fn stem(word: &str) -> String {
    spanish_stemmer().stem(word).into_owned()
}

/// Table lemma, falling back to the word itself.
pub fn lemmatize(word: &str, table: &LemmaTable) -> String {
    table.get(word).unwrap_or(word).to_string()
}

/// tokenize → remove stopwords → apply the mode transform.
pub fn normalize(text: &str, config: &NormalizationConfig) -> Result<Vec<Token>, TextError> {
    config.validate()?;
    let surfaces = tokenize_with(text, config.lowercase, config.strip_punctuation);
    let mut tokens = remove_stopwords(&surfaces, &config.stopwords);
    tokens.retain_mut(|t| {
        let key = match config.mode {
            NormalizationMode::Raw => t.surface.clone(),
            NormalizationMode::Stem => stem(&t.surface),
            NormalizationMode::Lemma => lemmatize(&t.surface, &config.lemma_table),
        };
        t.normalized = key;
        !t.normalized.is_empty()
    });
    // stemming never empties a non-empty word, but renumber if it ever did
    for (i, t) in tokens.iter_mut().enumerate() {
        t.position = i + 1;
    }
    Ok(tokens)
}
