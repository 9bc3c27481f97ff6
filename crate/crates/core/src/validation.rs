//! Validation of the inferred features against the median annotations:
//! rank correlations, per-category regressions and per-tag ANOVA.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{subset_by_tag, AnnotationSet, Feature, OrdinalFeature, PsychTag, SonnetId};
use crate::gam::{FeatureMatrix, GamFeature, GamFeatureVector};
use crate::lexicon::Dimension;
use crate::stats::{
    correlation_band, ols, one_way_anova, spearman, t_tail, AnovaDegeneracy, CorrelationBand, StatsError, Undefined,
};

pub const SIGNIFICANCE: f64 = 0.05;

/// An annotated feature and its inferred counterpart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FeaturePairing {
    pub annotated: Feature,
    pub gam: GamFeature,
}

/// The ten fixed pairings, each annotated ordinal feature with the mean of
/// the matching lexicon dimension.
pub fn pairings() -> Vec<FeaturePairing> {
    let annotated = |d: Dimension| {
        OrdinalFeature::ALL.into_iter().find(|o| o.dimension() == d).expect("every dimension is annotated")
    };
    Dimension::ALL
        .into_iter()
        .map(|d| FeaturePairing { annotated: Feature::Ordinal(annotated(d)), gam: GamFeature::Mean(d) })
        .collect()
}

// Median rows joined to feature vectors by sonnet id, in median order.
fn joined<'a>(gam: &'a FeatureMatrix, median: &AnnotationSet) -> Vec<(usize, &'a SonnetId, &'a GamFeatureVector)> {
    let by_id: HashMap<&SonnetId, usize> = median.sonnet_ids().iter().enumerate().map(|(i, id)| (id, i)).collect();
    gam.rows.iter().filter_map(|(id, v)| by_id.get(id).map(|&row| (row, id, v))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BivariateCell {
    pub annotated: Feature,
    pub gam: GamFeature,
    /// Sonnets where both values are defined.
    pub n: usize,
    pub rho: Result<f64, Undefined>,
    pub band: Option<CorrelationBand>,
    /// Two-sided, from the t approximation on n - 2 df.
    pub p_value: Option<f64>,
}

fn spearman_p(rho: f64, n: usize) -> Option<f64> {
    if n < 3 {
        return None;
    }
    let df = (n - 2) as f64;
    if rho.abs() >= 1.0 {
        return Some(0.0);
    }
    Some(t_tail(rho * (df / (1.0 - rho * rho)).sqrt(), df))
}

/// Spearman rho for every annotated feature against every inferred
/// feature, with pairwise deletion of undefined or missing values.
pub fn bivariate_report(gam: &FeatureMatrix, median: &AnnotationSet) -> Vec<BivariateCell> {
    let rows = joined(gam, median);
    let cells: Vec<(Feature, GamFeature)> =
        Feature::all().flat_map(|a| GamFeature::all().map(move |g| (a, g))).collect();
    cells
        .par_iter()
        .map(|&(annotated, g)| {
            let (x, y): (Vec<f64>, Vec<f64>) = rows
                .iter()
                .filter_map(|(row, _, v)| Some((f64::from(median.get(*row, annotated)?), v.get(g).ok()?)))
                .unzip();
            let n = x.len();
            let rho = match spearman(&x, &y) {
                Ok(r) => r.rho,
                Err(StatsError::TooFewPoints { got: 0, .. }) => Err(Undefined::NoObservations),
                Err(_) => Err(Undefined::TooFewPoints),
            };
            BivariateCell {
                annotated,
                gam: g,
                n,
                band: rho.ok().map(correlation_band),
                p_value: rho.ok().and_then(|r| spearman_p(r, n)),
                rho,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionFit {
    pub r_squared: f64,
    pub adjusted_r_squared: f64,
    pub coefficient: f64,
    pub p_value: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialDependenceRow {
    pub category: String,
    pub annotated: Feature,
    pub gam: GamFeature,
    /// Rows used after listwise deletion.
    pub n: usize,
    /// Predictors retained in the final model.
    pub k: usize,
    pub dropped_rows: usize,
    /// Predictor set cut to the per-dimension mean/sd features because the
    /// category was too small for the full set.
    pub pruned: bool,
    /// Predictors undefined for every sonnet in the category, left out.
    pub unavailable: Vec<GamFeature>,
    /// Predictors removed as linearly dependent on the others.
    pub collinear: Vec<GamFeature>,
    pub fit: Result<RegressionFit, String>,
}

impl PartialDependenceRow {
    pub fn significant(&self) -> bool {
        self.fit.as_ref().is_ok_and(|f| f.significant)
    }
}

fn significant(p: f64, coefficient: f64) -> bool {
    p < SIGNIFICANCE && coefficient > 0.0
}

struct Design {
    x: Vec<Vec<f64>>,
    y: Vec<f64>,
    dropped: usize,
}

fn design(
    rows: &[(usize, &SonnetId, &GamFeatureVector)],
    median: &AnnotationSet,
    annotated: Feature,
    predictors: &[GamFeature],
) -> Design {
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (row, _, v) in rows {
        let Some(target) = median.get(*row, annotated) else { continue };
        let values: Option<Vec<f64>> = predictors.iter().map(|&f| v.get(f).ok()).collect();
        if let Some(values) = values {
            x.push(values);
            y.push(f64::from(target));
        }
    }
    Design { dropped: rows.len() - y.len(), x, y }
}

fn regress(
    category: &str,
    rows: &[(usize, &SonnetId, &GamFeatureVector)],
    median: &AnnotationSet,
    pairing: FeaturePairing,
) -> PartialDependenceRow {
    let defined_somewhere = |f: &GamFeature| rows.iter().any(|(_, _, v)| v.get(*f).is_ok());
    let unavailable: Vec<GamFeature> = GamFeature::all().filter(|f| !defined_somewhere(f)).collect();
    let ordered = |set: Vec<GamFeature>| -> Vec<GamFeature> {
        std::iter::once(pairing.gam)
            .chain(set.into_iter().filter(|f| *f != pairing.gam && !unavailable.contains(f)))
            .collect()
    };
    let mut predictors = ordered(GamFeature::all().collect());
    let mut d = design(rows, median, pairing.annotated, &predictors);
    let mut pruned = false;
    if d.y.len() <= predictors.len() + 1 {
        predictors = ordered(GamFeature::lexical().collect());
        d = design(rows, median, pairing.annotated, &predictors);
        pruned = true;
        log::info!(
            "{category} / {}: pruned predictors to the {} mean/sd features",
            pairing.annotated,
            predictors.len()
        );
    }

    let mut collinear = Vec::new();
    let row = |n, k, collinear, fit| PartialDependenceRow {
        category: category.to_string(),
        annotated: pairing.annotated,
        gam: pairing.gam,
        n,
        k,
        dropped_rows: d.dropped,
        pruned,
        unavailable: unavailable.clone(),
        collinear,
        fit,
    };
    let mut keep: Vec<usize> = (0..predictors.len()).collect();
    loop {
        let x: Vec<Vec<f64>> = d.x.iter().map(|r| keep.iter().map(|&j| r[j]).collect()).collect();
        match ols(&x, &d.y) {
            Ok(r) => {
                let fit = RegressionFit {
                    r_squared: r.r_squared,
                    adjusted_r_squared: r.adjusted_r_squared,
                    coefficient: r.coefficients[0],
                    p_value: r.p_values[0],
                    significant: significant(r.p_values[0], r.coefficients[0]),
                };
                return row(d.y.len(), keep.len(), collinear, Ok(fit));
            }
            Err(StatsError::RankDeficient { columns }) if !columns.contains(&0) => {
                for &c in columns.iter().rev() {
                    let f = predictors[keep[c]];
                    log::info!("{category} / {}: dropping collinear predictor {f}", pairing.annotated);
                    collinear.push(f);
                    keep.remove(c);
                }
            }
            Err(e) => {
                let reason = match e {
                    StatsError::RankDeficient { .. } => {
                        format!("{} is collinear with other predictors", pairing.gam)
                    }
                    other => other.to_string(),
                };
                return row(d.y.len(), keep.len(), collinear, Err(reason));
            }
        }
    }
}

/// Categories for the regression and ANOVA reports: "all", then each tag.
pub fn categories() -> Vec<Option<PsychTag>> {
    std::iter::once(None).chain(PsychTag::ALL.into_iter().map(Some)).collect()
}

pub fn category_name(c: Option<PsychTag>) -> &'static str {
    c.map_or("all", PsychTag::name)
}

/// For each category and pairing, regresses the annotated feature on all
/// inferred features and reports the paired feature's coefficient.
pub fn partial_dependence_report(
    gam: &FeatureMatrix,
    median: &AnnotationSet,
    categories: &[Option<PsychTag>],
) -> Vec<PartialDependenceRow> {
    let all = joined(gam, median);
    let jobs: Vec<(Option<PsychTag>, FeaturePairing)> =
        categories.iter().flat_map(|&c| pairings().into_iter().map(move |p| (c, p))).collect();
    jobs.par_iter()
        .map(|&(c, pairing)| {
            let rows: Vec<_> = match c {
                None => all.clone(),
                Some(tag) => {
                    let (inside, _) = subset_by_tag(median, tag);
                    all.iter().filter(|(_, id, _)| inside.contains(id)).copied().collect()
                }
            };
            regress(category_name(c), &rows, median, pairing)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaRow {
    pub category: PsychTag,
    pub gam: GamFeature,
    pub mean_in: f64,
    pub mean_out: f64,
    pub n_in: usize,
    pub n_out: usize,
    pub f_statistic: f64,
    pub p_value: f64,
    pub degenerate: Option<AnovaDegeneracy>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaReport {
    /// Combinations tested (tags × mean features).
    pub tested: usize,
    /// Combinations with p below the threshold, in tag then feature order.
    pub rows: Vec<AnovaRow>,
    /// Combinations that could not be tested, with the reason.
    pub failures: Vec<(PsychTag, GamFeature, String)>,
}

/// One-way ANOVA of each mean feature between a tag's in-group and
/// out-group; keeps the combinations with p < 0.05.
pub fn anova_report(gam: &FeatureMatrix, median: &AnnotationSet) -> AnovaReport {
    let rows = joined(gam, median);
    let jobs: Vec<(PsychTag, GamFeature)> =
        PsychTag::ALL.into_iter().flat_map(|t| GamFeature::means().map(move |g| (t, g))).collect();
    let results: Vec<Result<AnovaRow, (PsychTag, GamFeature, String)>> = jobs
        .par_iter()
        .map(|&(tag, g)| {
            let (mut inside, mut outside) = (Vec::new(), Vec::new());
            for (row, _, v) in &rows {
                let Ok(x) = v.get(g) else { continue };
                if median.get(*row, Feature::Tag(tag)) == Some(1) {
                    inside.push(x);
                } else {
                    outside.push(x);
                }
            }
            let r = one_way_anova(&[&inside[..], &outside[..]]).map_err(|e| (tag, g, e.to_string()))?;
            Ok(AnovaRow {
                category: tag,
                gam: g,
                mean_in: r.group_means[0],
                mean_out: r.group_means[1],
                n_in: inside.len(),
                n_out: outside.len(),
                f_statistic: r.f_statistic,
                p_value: r.p_value,
                degenerate: r.degenerate,
            })
        })
        .collect();
    let mut report = AnovaReport { tested: jobs.len(), rows: Vec::new(), failures: Vec::new() };
    for r in results {
        match r {
            Ok(row) if row.p_value < SIGNIFICANCE => report.rows.push(row),
            Ok(_) => {}
            Err(f) => report.failures.push(f),
        }
    }
    report
}
