use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::textproc::{NormalizationConfig, NormalizationMode};

use super::{median, rescale, CanonicalScales, Dimension, LexEntry, LexiconError, Norm, Scale, SourceLexicon};

/// All sources fused on canonical scales and keyed by normalized form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergedLexicon {
    pub mode: NormalizationMode,
    pub scales: CanonicalScales,
    pub entries: BTreeMap<String, LexEntry>,
    /// Source ids that contributed at least one value to each key.
    pub provenance: BTreeMap<String, BTreeSet<String>>,
}

impl MergedLexicon {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Treats the merged lexicon as one source on the canonical scales.
    pub fn as_source(&self, source_id: &str) -> SourceLexicon {
        SourceLexicon {
            source_id: source_id.to_string(),
            entries: self.entries.clone(),
            scales: Dimension::ALL.map(|d| Some(self.scales.get(d))),
            duplicates: Vec::new(),
        }
    }
}

pub fn lookup<'a>(merged: &'a MergedLexicon, key: &str) -> Option<&'a LexEntry> {
    merged.entries.get(key)
}

#[derive(Default)]
struct Pooled {
    means: [Vec<f64>; Dimension::COUNT],
    sds: [Vec<f64>; Dimension::COUNT],
    sources: BTreeSet<String>,
}

fn to_canonical(v: f64, from: Scale, to: Scale) -> Result<f64, LexiconError> {
    if from == to {
        return Ok(v);
    }
    Ok(rescale(v, from, to)?.clamp(to.min, to.max))
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Rescales every source onto `scales`, takes the per-word median across
/// sources, then averages the words that share a normalized key.
pub fn merge(
    lexicons: &[SourceLexicon],
    norm: &NormalizationConfig,
    scales: &CanonicalScales,
) -> Result<MergedLexicon, LexiconError> {
    if lexicons.is_empty() {
        return Err(LexiconError::NoSources);
    }

    let mut by_word: BTreeMap<&str, Pooled> = BTreeMap::new();
    for lex in lexicons {
        for (word, entry) in &lex.entries {
            let pooled = by_word.entry(word.as_str()).or_default();
            for (d, n) in entry.dimensions() {
                let from = lex.scales[d.index()].ok_or_else(|| LexiconError::Malformed {
                    line: 0,
                    detail: format!("source {} has {d} values but no scale", lex.source_id),
                })?;
                let to = scales.get(d);
                pooled.means[d.index()].push(to_canonical(n.mean, from, to)?);
                if let Some(sd) = n.sd {
                    let sd = if from == to { sd } else { sd * from.slope_to(&to) };
                    pooled.sds[d.index()].push(sd);
                }
                pooled.sources.insert(lex.source_id.clone());
            }
        }
    }

    let mut by_key: BTreeMap<String, Pooled> = BTreeMap::new();
    for (word, mut pooled) in by_word {
        let Some(key) = norm.key(word) else { continue };
        let slot = by_key.entry(key).or_default();
        for d in Dimension::ALL {
            let i = d.index();
            if let Some(m) = median(&mut pooled.means[i]) {
                slot.means[i].push(m);
            }
            if let Some(s) = median(&mut pooled.sds[i]) {
                slot.sds[i].push(s);
            }
        }
        slot.sources.append(&mut pooled.sources);
    }

    let mut entries = BTreeMap::new();
    let mut provenance = BTreeMap::new();
    for (key, pooled) in by_key {
        let mut entry = LexEntry::default();
        for d in Dimension::ALL {
            if let Some(m) = mean(&pooled.means[d.index()]) {
                let sd = mean(&pooled.sds[d.index()]);
                entry.set(d, Some(Norm { mean: m, sd }));
            }
        }
        if !entry.is_empty() {
            provenance.insert(key.clone(), pooled.sources);
            entries.insert(key, entry);
        }
    }
    Ok(MergedLexicon { mode: norm.mode, scales: *scales, entries, provenance })
}
