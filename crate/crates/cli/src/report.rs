//! Report tables. Column names follow the published table layouts where
//! one exists.

use sonnet_gam::agreement::AgreementReport;
use sonnet_gam::corpus::CorpusStats;
use sonnet_gam::gam::{FeatureMatrix, GamFeature};
use sonnet_gam::lexicon::{CoverageReport, MissingWord};
use sonnet_gam::textproc::NormalizationMode;
use sonnet_gam::validation::{AnovaReport, BivariateCell, PartialDependenceRow};

use crate::table::{Cell, Table};

pub fn corpus_stats(stats: &CorpusStats) -> Table {
    let mut t = Table::new(["section", "name", "value"]);
    t.push(vec!["summary".into(), "n_sonnets".into(), stats.n_sonnets.into()]);
    t.push(vec!["summary".into(), "words_mean".into(), stats.words_mean.into()]);
    t.push(vec!["summary".into(), "words_sd".into(), stats.words_sd.into()]);
    let h = &stats.histogram;
    for (edge, count) in h.edges.iter().zip(&h.counts) {
        let label = format!("{}-{}", edge, edge + h.bin_width - 1);
        t.push(vec!["histogram".into(), label.into(), (*count).into()]);
    }
    if !stats.tag_counts.is_empty() {
        t.push(vec!["tag_count".into(), "all".into(), stats.n_sonnets.into()]);
        for (tag, count) in &stats.tag_counts {
            t.push(vec!["tag_count".into(), tag.name().into(), (*count).into()]);
        }
    }
    t
}

/// Distinct keys per category under each mode, plus coverage fractions for
/// the active mode.
pub fn coverage(report: &CoverageReport, key_counts: &[(NormalizationMode, Vec<(String, usize)>)]) -> Table {
    let sources: Vec<String> = report
        .rows
        .first()
        .map(|r| r.per_source_fractions.iter().map(|(s, _)| s.clone()).collect())
        .unwrap_or_default();
    let mut columns = vec!["category".to_string()];
    columns.extend(NormalizationMode::ALL.iter().map(|m| format!("keys_{m}")));
    columns.push("mode".into());
    columns.push("coverage".into());
    columns.extend(sources.iter().map(|s| format!("coverage_{s}")));
    let mut t = Table::new(columns);
    for row in &report.rows {
        let mut cells: Vec<Cell> = vec![row.category.clone().into()];
        for m in NormalizationMode::ALL {
            let count = key_counts
                .iter()
                .find(|(mode, _)| *mode == m)
                .and_then(|(_, counts)| counts.iter().find(|(c, _)| *c == row.category))
                .map(|(_, n)| *n);
            cells.push(count.into());
        }
        cells.push(report.mode.as_str().into());
        cells.push(row.fraction.into());
        cells.extend(row.per_source_fractions.iter().map(|(_, f)| Cell::from(*f)));
        t.push(cells);
    }
    t
}

pub fn missing_words(words: &[MissingWord]) -> Table {
    let mut t = Table::new(["key", "occurrences"]);
    for w in words {
        t.push(vec![w.key.clone().into(), w.occurrences.into()]);
    }
    t
}

pub fn agreement(report: &AgreementReport) -> Table {
    let mut columns = vec!["feature".to_string(), "level".to_string()];
    columns.extend(report.columns.iter().cloned());
    columns.push("below_threshold".into());
    let mut t = Table::new(columns);
    for row in &report.rows {
        let mut cells: Vec<Cell> = vec![row.feature.name().into(), format!("{:?}", row.level).to_lowercase().into()];
        cells.extend(row.cells.iter().map(|c| Cell::from(c.alpha())));
        let flagged: Vec<&str> = row.cells.iter().filter(|c| c.flagged()).map(|c| c.column.as_str()).collect();
        cells.push(flagged.join(" ").into());
        t.push(cells);
    }
    t
}

pub fn features(matrix: &FeatureMatrix) -> Table {
    let mut t = Table::new(std::iter::once("sonnet_id".to_string()).chain(GamFeature::all().map(|f| f.name())));
    for (id, v) in &matrix.rows {
        let mut cells: Vec<Cell> = vec![id.0.clone().into()];
        cells.extend(v.iter().map(|(_, x)| Cell::from(x.ok())));
        t.push(cells);
    }
    t
}

pub fn bivariate(cells: &[BivariateCell]) -> Table {
    let mut t = Table::new(["feature", "feature_gam", "n", "rho", "band", "p", "undefined"]);
    for c in cells {
        t.push(vec![
            c.annotated.name().into(),
            c.gam.name().into(),
            c.n.into(),
            c.rho.ok().into(),
            c.band.map(|b| b.as_str()).into(),
            c.p_value.into(),
            c.rho.err().map(|u| u.to_string()).into(),
        ]);
    }
    t
}

pub fn partial_dependence(rows: &[PartialDependenceRow]) -> Table {
    let mut t =
        Table::new(["category", "feature", "feature_gam", "n", "k", "r2", "adj_r2", "coeff", "p", "sign", "note"]);
    for r in rows {
        let mut notes = Vec::new();
        if r.pruned {
            notes.push("predictors pruned to mean/sd features".to_string());
        }
        if r.dropped_rows > 0 {
            notes.push(format!("{} rows dropped", r.dropped_rows));
        }
        if !r.unavailable.is_empty() {
            notes.push(format!("unavailable: {}", names(&r.unavailable)));
        }
        if !r.collinear.is_empty() {
            notes.push(format!("collinear: {}", names(&r.collinear)));
        }
        let fit = r.fit.as_ref().ok();
        if let Err(e) = &r.fit {
            notes.push(format!("not computable: {e}"));
        }
        t.push(vec![
            r.category.clone().into(),
            r.annotated.name().into(),
            r.gam.name().into(),
            r.n.into(),
            r.k.into(),
            fit.map(|f| f.r_squared).into(),
            fit.map(|f| f.adjusted_r_squared).into(),
            fit.map(|f| f.coefficient).into(),
            fit.map(|f| f.p_value).into(),
            fit.map(|f| f.significant).into(),
            notes.join("; ").into(),
        ]);
    }
    t
}

fn names(fs: &[GamFeature]) -> String {
    fs.iter().map(|f| f.name()).collect::<Vec<_>>().join(" ")
}

pub fn anova(report: &AnovaReport) -> Table {
    let mut t = Table::new(["category", "feature_gam", "M1", "M0", "n1", "n0", "F", "p"]);
    for r in &report.rows {
        t.push(vec![
            r.category.name().into(),
            r.gam.name().into(),
            r.mean_in.into(),
            r.mean_out.into(),
            r.n_in.into(),
            r.n_out.into(),
            r.f_statistic.into(),
            r.p_value.into(),
        ]);
    }
    t
}
