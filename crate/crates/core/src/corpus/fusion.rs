use serde::Serialize;

use super::{AnnotationSet, CorpusError, Feature, PsychTag, SonnetId};

/// A (sonnet, feature) cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellRef {
    pub sonnet_id: SonnetId,
    pub feature: Feature,
}

/// Maps every value `x` of an ordinal feature to `5 - x`.
pub fn reverse_ordinal_scale(set: &AnnotationSet, feature: Feature) -> Result<AnnotationSet, CorpusError> {
    if !feature.is_ordinal() {
        return Err(CorpusError::NotOrdinal(feature.name()));
    }
    let mut out = set.clone();
    for row in 0..out.len() {
        let v = out.get(row, feature).map(|x| 5 - x);
        out.set(row, feature, v);
    }
    Ok(out)
}

fn same_sonnets(sets: &[AnnotationSet]) -> Result<(), CorpusError> {
    match sets.split_first() {
        Some((first, rest)) if rest.iter().any(|s| s.sonnet_ids() != first.sonnet_ids()) => {
            Err(CorpusError::SetMismatch)
        }
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct FillReport {
    /// (annotator id, cell) set to 0.
    pub filled: Vec<(u8, CellRef)>,
    /// Cells missing for two or more annotators, left missing.
    pub unfillable: Vec<CellRef>,
}

/// Sets a psychological-tag cell to 0 when exactly one of the three
/// annotators left it empty.
pub fn fill_missing_psych(sets: &[AnnotationSet]) -> Result<(Vec<AnnotationSet>, FillReport), CorpusError> {
    if sets.len() != 3 {
        return Err(CorpusError::SetCount { expected: 3, got: sets.len() });
    }
    same_sonnets(sets)?;
    let mut out = sets.to_vec();
    let mut report = FillReport::default();
    for row in 0..sets[0].len() {
        for tag in PsychTag::ALL {
            let f = Feature::Tag(tag);
            let missing: Vec<usize> = (0..3).filter(|&a| sets[a].get(row, f).is_none()).collect();
            let cell = || CellRef { sonnet_id: sets[0].sonnet_ids()[row].clone(), feature: f };
            match missing.as_slice() {
                [] => {}
                [a] => {
                    out[*a].set(row, f, Some(0));
                    report.filled.push((sets[*a].annotator_id, cell()));
                }
                _ => report.unfillable.push(cell()),
            }
        }
    }
    Ok((out, report))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MedianReport {
    /// Cells with an even number of available values split down the middle,
    /// resolved to the lower of the two central values.
    pub split_ties: Vec<CellRef>,
    /// Cells with fewer than two available values, left missing.
    pub unresolved: Vec<CellRef>,
}

/// Per-cell median of the available values across annotators. With an odd
/// count the median is the middle value; with an even count the lower of
/// the two central values is taken, so a 0/1 split on a tag yields 0.
pub fn build_median_annotator(sets: &[AnnotationSet]) -> Result<(AnnotationSet, MedianReport), CorpusError> {
    if sets.len() < 2 {
        return Err(CorpusError::SetCount { expected: 3, got: sets.len() });
    }
    same_sonnets(sets)?;
    let mut report = MedianReport::default();
    let mut rows = Vec::with_capacity(sets[0].len());
    for row in 0..sets[0].len() {
        let mut out = [None; Feature::COUNT];
        for f in Feature::all() {
            let mut vals: Vec<u8> = sets.iter().filter_map(|s| s.get(row, f)).collect();
            let cell = || CellRef { sonnet_id: sets[0].sonnet_ids()[row].clone(), feature: f };
            if vals.len() < 2 {
                report.unresolved.push(cell());
                continue;
            }
            vals.sort_unstable();
            let n = vals.len();
            if n % 2 == 0 && vals[n / 2 - 1] != vals[n / 2] {
                log::info!("median split at sonnet {} / {}: taking lower value", cell().sonnet_id, f);
                report.split_ties.push(cell());
            }
            out[f.index()] = Some(vals[(n - 1) / 2]);
        }
        rows.push(out);
    }
    // may hold missing ordinal cells (unresolved), so skip the file-level checks
    let median = AnnotationSet::from_parts_unchecked(0, sets[0].sonnet_ids().to_vec(), rows);
    Ok((median, report))
}

/// Splits sonnets by the median value of `tag`: 1 goes in, 0 or missing
/// goes out.
pub fn subset_by_tag(median: &AnnotationSet, tag: PsychTag) -> (Vec<SonnetId>, Vec<SonnetId>) {
    let f = Feature::Tag(tag);
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for (row, id) in median.sonnet_ids().iter().enumerate() {
        if median.get(row, f) == Some(1) {
            inside.push(id.clone());
        } else {
            outside.push(id.clone());
        }
    }
    (inside, outside)
}
