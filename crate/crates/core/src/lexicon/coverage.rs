use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::corpus::{subset_by_tag, AnnotationSet, Corpus, PsychTag, SonnetId};
use crate::textproc::{normalize, NormalizationConfig, NormalizationMode, TextError};

use super::{MergedLexicon, SourceLexicon};

/// Share of a category's distinct corpus keys found in the lexicons.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageRow {
    pub category: String,
    pub n_keys: usize,
    /// Merged lexicon. 0 when the category has no keys.
    pub fraction: f64,
    pub per_source_fractions: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissingWord {
    pub key: String,
    pub occurrences: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub mode: NormalizationMode,
    pub rows: Vec<CoverageRow>,
}

fn sonnet_keys(corpus: &Corpus, norm: &NormalizationConfig) -> Result<BTreeMap<SonnetId, Vec<String>>, TextError> {
    corpus
        .sonnets()
        .iter()
        .map(|s| Ok((s.id().clone(), normalize(&s.text, norm)?.into_iter().map(|t| t.normalized).collect())))
        .collect()
}

/// "all" first, then each tag's in-group, in catalog order.
fn categories(corpus: &Corpus, median: Option<&AnnotationSet>) -> Vec<(String, Vec<SonnetId>)> {
    let mut out = vec![("all".to_string(), corpus.ids())];
    if let Some(m) = median {
        for tag in PsychTag::ALL {
            out.push((tag.name().to_string(), subset_by_tag(m, tag).0));
        }
    }
    out
}

fn distinct<'a>(keys: &'a BTreeMap<SonnetId, Vec<String>>, ids: &[SonnetId]) -> BTreeSet<&'a str> {
    ids.iter().filter_map(|id| keys.get(id)).flat_map(|ks| ks.iter().map(String::as_str)).collect()
}

fn fraction(found: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        found as f64 / total as f64
    }
}

/// Coverage of distinct corpus keys by the merged lexicon and by each
/// source on its own, for the whole corpus and each tag subset.
pub fn coverage(
    corpus: &Corpus,
    sources: &[SourceLexicon],
    merged: &MergedLexicon,
    norm: &NormalizationConfig,
    median: Option<&AnnotationSet>,
) -> Result<CoverageReport, TextError> {
    let keys = sonnet_keys(corpus, norm)?;
    let source_keys: Vec<(&str, HashSet<String>)> = sources
        .iter()
        .map(|s| (s.source_id.as_str(), s.entries.keys().filter_map(|w| norm.key(w)).collect()))
        .collect();
    let rows = categories(corpus, median)
        .into_iter()
        .map(|(category, ids)| {
            let set = distinct(&keys, &ids);
            let hits = set.iter().filter(|k| merged.entries.contains_key(**k)).count();
            let per_source_fractions = source_keys
                .iter()
                .map(|(id, ks)| (id.to_string(), fraction(set.iter().filter(|k| ks.contains(**k)).count(), set.len())))
                .collect();
            CoverageRow { category, n_keys: set.len(), fraction: fraction(hits, set.len()), per_source_fractions }
        })
        .collect();
    Ok(CoverageReport { mode: norm.mode, rows })
}

/// Distinct keys per category under `norm`.
pub fn distinct_key_counts(
    corpus: &Corpus,
    median: Option<&AnnotationSet>,
    norm: &NormalizationConfig,
) -> Result<Vec<(String, usize)>, TextError> {
    let keys = sonnet_keys(corpus, norm)?;
    Ok(categories(corpus, median).into_iter().map(|(category, ids)| (category, distinct(&keys, &ids).len())).collect())
}

/// Corpus keys absent from the merged lexicon, most frequent first.
pub fn missing_words(
    corpus: &Corpus,
    merged: &MergedLexicon,
    norm: &NormalizationConfig,
) -> Result<Vec<MissingWord>, TextError> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for s in corpus.sonnets() {
        for t in normalize(&s.text, norm)? {
            if !merged.entries.contains_key(&t.normalized) {
                *counts.entry(t.normalized).or_default() += 1;
            }
        }
    }
    let mut out: Vec<MissingWord> =
        counts.into_iter().map(|(key, occurrences)| MissingWord { key, occurrences }).collect();
    // stable sort keeps ties in key order
    out.sort_by(|a, b| b.occurrences.cmp(&a.occurrences));
    Ok(out)
}
