//! Property checks shared by the proptest suites and the acceptance
//! runner. Each `check_*` takes a generated case and fails with a
//! `TestCaseError`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sonnet_gam::agreement::{krippendorff_alpha, Level, ReliabilityMatrix};
use sonnet_gam::corpus::{
    build_median_annotator, reverse_ordinal_scale, subset_by_tag, AnnotationSet, Corpus, Feature, PsychTag, Sonnet,
    SonnetId, SonnetMetadata,
};
use sonnet_gam::gam::{compute_features, GamFeature, WordObservation};
use sonnet_gam::lexicon::{coverage, merge, rescale, CanonicalScales, Dimension, LexEntry, Norm, Scale, SourceLexicon};
use sonnet_gam::stats::{
    f_tail, min_sample_size, ols, one_way_anova, spearman, t_tail, two_sample_t_power, StatsError,
};
use sonnet_gam::textproc::{normalize, LemmaTable, NormalizationConfig, NormalizationMode};

pub type Check = Result<(), TestCaseError>;

// ---- affective features -------------------------------------------------

fn norm_strategy(d: Dimension) -> impl Strategy<Value = Option<Norm>> {
    let s = d.canonical_scale();
    // a coarse grid makes repeated values (ties) common
    let mean = prop_oneof![(0u32..=16).prop_map(move |k| s.min + (s.max - s.min) * k as f64 / 16.0), s.min..=s.max];
    proptest::option::weighted(0.8, (mean, proptest::option::of(0.0..3.0f64)).prop_map(|(mean, sd)| Norm { mean, sd }))
}

fn entry_strategy() -> impl Strategy<Value = LexEntry> {
    Dimension::ALL.map(norm_strategy).prop_map(|norms| {
        let mut e = LexEntry::default();
        for (d, n) in Dimension::ALL.into_iter().zip(norms) {
            e.set(d, n);
        }
        e
    })
}

/// Observations at positions 1..=n (gaps allowed: stopwords occupy no
/// position, unmatched words do).
pub fn observations() -> impl Strategy<Value = Vec<WordObservation>> {
    proptest::collection::vec((entry_strategy(), 1usize..4), 0..30).prop_map(|words| {
        let mut pos = 0;
        words
            .into_iter()
            .enumerate()
            .map(|(i, (values, gap))| {
                pos += gap;
                WordObservation { position: pos, key: format!("w{i}"), values }
            })
            .collect()
    })
}

fn is_correlation(f: GamFeature) -> bool {
    matches!(f, GamFeature::CorAro | GamFeature::CorVal | GamFeature::AbsCorAro | GamFeature::AbsCorVal)
}

pub fn check_order_invariance(obs: &[WordObservation], seed: u64) -> Check {
    let mut shuffled = obs.to_vec();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (a, b) = (compute_features(obs), compute_features(&shuffled));
    for f in GamFeature::all().filter(|f| !is_correlation(*f)) {
        prop_assert_eq!(a.get(f), b.get(f), "{}", f);
    }
    Ok(())
}

pub fn check_reversal_negation(obs: &[WordObservation]) -> Check {
    let last = obs.last().map_or(0, |o| o.position);
    let reversed: Vec<WordObservation> =
        obs.iter().rev().map(|o| WordObservation { position: last + 1 - o.position, ..o.clone() }).collect();
    let (a, b) = (compute_features(obs), compute_features(&reversed));
    for f in GamFeature::all() {
        match f {
            GamFeature::CorAro | GamFeature::CorVal => {
                prop_assert_eq!(a.get(f).map(|x| -x), b.get(f), "{}", f)
            }
            _ => prop_assert_eq!(a.get(f), b.get(f), "{}", f),
        }
    }
    Ok(())
}

pub fn check_extrema_sandwich(obs: &[WordObservation]) -> Check {
    let v = compute_features(obs);
    for (mean, min, max, span) in [
        (GamFeature::Mean(Dimension::Arousal), GamFeature::MinArousal, GamFeature::MaxArousal, GamFeature::ArousalSpan),
        (GamFeature::Mean(Dimension::Valence), GamFeature::MinValence, GamFeature::MaxValence, GamFeature::ValenceSpan),
    ] {
        match (v.get(mean), v.get(min), v.get(max), v.get(span)) {
            (Ok(m), Ok(lo), Ok(hi), Ok(s)) => {
                prop_assert!(lo <= m && m <= hi, "{lo} <= {m} <= {hi}");
                prop_assert_eq!(s, hi - lo);
                prop_assert!(s >= 0.0);
            }
            (Err(_), Err(_), Err(_), Err(_)) => {}
            other => prop_assert!(false, "partially defined: {other:?}"),
        }
    }
    Ok(())
}

pub fn check_sigma(obs: &[WordObservation]) -> Check {
    let v = compute_features(obs);
    for (d, sigma) in [(Dimension::Arousal, GamFeature::SigmaAro), (Dimension::Valence, GamFeature::SigmaVal)] {
        let n = obs.iter().filter(|o| o.values.get(d).is_some()).count();
        match (v.get(GamFeature::Mean(d)), v.get(sigma)) {
            (Ok(m), Ok(s)) => {
                let root = (n as f64).sqrt();
                prop_assert_eq!(s, m * root);
                prop_assert!((s / m - root).abs() <= 1e-12 * root, "{} / {} vs sqrt({})", s, m, n);
            }
            (Err(_), Err(_)) => prop_assert_eq!(n, 0),
            other => prop_assert!(false, "{other:?}"),
        }
    }
    Ok(())
}

pub fn check_duplication(obs: &[WordObservation]) -> Check {
    let shift = obs.last().map_or(0, |o| o.position);
    let doubled: Vec<WordObservation> = obs
        .iter()
        .cloned()
        .chain(obs.iter().map(|o| WordObservation { position: o.position + shift, ..o.clone() }))
        .collect();
    let (a, b) = (compute_features(obs), compute_features(&doubled));
    let exact = [
        GamFeature::MaxArousal,
        GamFeature::MinArousal,
        GamFeature::MaxValence,
        GamFeature::MinValence,
        GamFeature::ArousalSpan,
        GamFeature::ValenceSpan,
    ];
    for f in exact {
        prop_assert_eq!(a.get(f), b.get(f), "{}", f);
    }
    for f in GamFeature::means() {
        match (a.get(f), b.get(f)) {
            (Ok(x), Ok(y)) => prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "{f}: {x} vs {y}"),
            (x, y) => prop_assert_eq!(x, y),
        }
    }
    Ok(())
}

// ---- agreement ------------------------------------------------------------

/// Units × raters with categories 0..q and some missing cells.
pub fn reliability_cells() -> impl Strategy<Value = Vec<Vec<Option<u8>>>> {
    (2usize..5, 1usize..14, 2u8..6).prop_flat_map(|(raters, units, q)| {
        proptest::collection::vec(proptest::collection::vec(proptest::option::weighted(0.85, 0..q), raters), units)
    })
}

fn matrix(cells: &[Vec<Option<u8>>], map: impl Fn(u8) -> f64, level: Level) -> ReliabilityMatrix {
    let raters = cells.first().map_or(2, Vec::len);
    ReliabilityMatrix {
        raters: (1..=raters as u8).collect(),
        cells: cells.iter().map(|r| r.iter().map(|v| v.map(&map)).collect()).collect(),
        level,
    }
}

fn same_alpha(a: &ReliabilityMatrix, b: &ReliabilityMatrix, tol: f64) -> Check {
    match (krippendorff_alpha(a), krippendorff_alpha(b)) {
        (Ok(x), Ok(y)) => {
            prop_assert_eq!(x.degenerate, y.degenerate);
            prop_assert!((x.alpha - y.alpha).abs() <= tol, "{} vs {}", x.alpha, y.alpha);
        }
        (Err(x), Err(y)) => prop_assert_eq!(x, y),
        other => prop_assert!(false, "{other:?}"),
    }
    Ok(())
}

pub fn check_alpha_relabeling(cells: &[Vec<Option<u8>>], seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // nominal: any injective relabelling
    let mut labels: Vec<f64> = (0..8).map(|i| i as f64 * 3.5 - 7.0).collect();
    labels.shuffle(&mut rng);
    same_alpha(
        &matrix(cells, |v| v as f64, Level::Nominal),
        &matrix(cells, |v| labels[v as usize], Level::Nominal),
        1e-12,
    )?;
    // ordinal: strictly increasing relabelling
    let steps: Vec<f64> = (0..8).map(|_| rand::Rng::gen_range(&mut rng, 0.1..5.0)).collect();
    let increasing = |v: u8| steps[..=v as usize].iter().sum::<f64>();
    same_alpha(&matrix(cells, |v| v as f64, Level::Ordinal), &matrix(cells, increasing, Level::Ordinal), 1e-12)
}

pub fn check_alpha_permutation(cells: &[Vec<Option<u8>>], seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raters = cells.first().map_or(0, Vec::len);
    let mut rater_order: Vec<usize> = (0..raters).collect();
    rater_order.shuffle(&mut rng);
    let mut permuted: Vec<Vec<Option<u8>>> =
        cells.iter().map(|r| rater_order.iter().map(|&j| r[j]).collect()).collect();
    permuted.shuffle(&mut rng);
    for level in [Level::Nominal, Level::Ordinal, Level::Interval] {
        same_alpha(&matrix(cells, |v| v as f64, level), &matrix(&permuted, |v| v as f64, level), 1e-12)?;
    }
    Ok(())
}

pub fn check_alpha_perfect(units: &[u8], raters: usize) -> Check {
    let cells: Vec<Vec<Option<u8>>> = units.iter().map(|&v| vec![Some(v); raters]).collect();
    for level in [Level::Nominal, Level::Ordinal, Level::Interval] {
        let r = krippendorff_alpha(&matrix(&cells, |v| v as f64, level)).unwrap();
        prop_assert_eq!(r.alpha, 1.0);
        let distinct: BTreeSet<u8> = units.iter().copied().collect();
        prop_assert_eq!(r.degenerate, distinct.len() < 2);
    }
    Ok(())
}

/// Two raters, complete data, interval level: coincidence-matrix alpha
/// equals the pair-enumeration oracle to 1e-12.
pub fn check_alpha_oracle(pairs: &[(u8, u8)]) -> Check {
    let cells: Vec<Vec<Option<u8>>> = pairs.iter().map(|&(a, b)| vec![Some(a), Some(b)]).collect();
    let m = matrix(&cells, |v| v as f64, Level::Interval);
    let oracle = super::oracles::alpha(&m.cells, Level::Interval);
    let got = krippendorff_alpha(&m).unwrap();
    match oracle {
        Some(want) => prop_assert!((got.alpha - want).abs() <= 1e-12, "{} vs {}", got.alpha, want),
        None => prop_assert!(got.degenerate),
    }
    Ok(())
}

/// Nominal level: a unit on which every rater agrees, in a category that
/// already occurs, never lowers alpha.
pub fn check_alpha_agreeing_unit(cells: &[Vec<Option<u8>>], pick: usize) -> Check {
    let present: Vec<u8> = cells.iter().flatten().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if present.is_empty() {
        return Ok(());
    }
    let before = krippendorff_alpha(&matrix(cells, |v| v as f64, Level::Nominal));
    let Ok(before) = before else { return Ok(()) };
    if before.degenerate {
        return Ok(());
    }
    let raters = cells[0].len();
    let mut extended = cells.to_vec();
    extended.push(vec![Some(present[pick % present.len()]); raters]);
    let after = krippendorff_alpha(&matrix(&extended, |v| v as f64, Level::Nominal)).unwrap();
    prop_assert!(after.alpha >= before.alpha - 1e-12, "{} -> {}", before.alpha, after.alpha);
    Ok(())
}

// ---- annotation fusion ----------------------------------------------------

pub fn annotation_rows(n: usize) -> impl Strategy<Value = Vec<[Option<u8>; Feature::COUNT]>> {
    proptest::collection::vec(
        proptest::collection::vec((1u8..=4, proptest::option::weighted(0.9, 0u8..=1)), Feature::COUNT).prop_map(
            |cells| {
                let mut row = [None; Feature::COUNT];
                for (f, (ord, tag)) in Feature::all().zip(cells) {
                    row[f.index()] = if f.is_ordinal() { Some(ord) } else { tag };
                }
                row
            },
        ),
        n,
    )
}

pub fn three_sets() -> impl Strategy<Value = Vec<AnnotationSet>> {
    (1usize..12).prop_flat_map(|n| {
        [annotation_rows(n), annotation_rows(n), annotation_rows(n)].prop_map(move |sets| {
            let ids: Vec<SonnetId> = (1..=n).map(|i| SonnetId(format!("s{i}"))).collect();
            sets.into_iter()
                .enumerate()
                .map(|(a, rows)| AnnotationSet::from_rows(a as u8 + 1, ids.clone(), rows).unwrap())
                .collect()
        })
    })
}

pub fn check_median_membership(sets: &[AnnotationSet]) -> Check {
    let (median, _) = build_median_annotator(sets).unwrap();
    for row in 0..median.len() {
        for f in Feature::all() {
            let mut vals: Vec<u8> = sets.iter().filter_map(|s| s.get(row, f)).collect();
            let m = median.get(row, f);
            if vals.len() == 3 {
                vals.sort_unstable();
                prop_assert_eq!(m, Some(vals[1]));
            }
            if let Some(m) = m {
                prop_assert!(vals.contains(&m), "{} not among {:?}", m, vals);
            }
        }
    }
    Ok(())
}

pub fn check_reversal_involution(set: &AnnotationSet) -> Check {
    for f in Feature::all().filter(|f| f.is_ordinal()) {
        let once = reverse_ordinal_scale(set, f).unwrap();
        prop_assert_eq!(&reverse_ordinal_scale(&once, f).unwrap(), set);
        // reflected order statistics: sorted(5 - x) = 5 - reverse(sorted(x))
        let mut orig: Vec<u8> = set.column(f).flatten().collect();
        let mut rev: Vec<u8> = once.column(f).flatten().collect();
        orig.sort_unstable();
        rev.sort_unstable();
        let reflected: Vec<u8> = orig.iter().rev().map(|x| 5 - x).collect();
        prop_assert_eq!(rev, reflected);
    }
    Ok(())
}

pub fn check_subset_partition(set: &AnnotationSet) -> Check {
    let all: BTreeSet<&SonnetId> = set.sonnet_ids().iter().collect();
    for tag in PsychTag::ALL {
        let (inside, outside) = subset_by_tag(set, tag);
        let i: BTreeSet<&SonnetId> = inside.iter().collect();
        let o: BTreeSet<&SonnetId> = outside.iter().collect();
        prop_assert!(i.is_disjoint(&o));
        prop_assert_eq!(i.union(&o).copied().collect::<BTreeSet<_>>(), all.clone());
    }
    Ok(())
}

// ---- statistics -----------------------------------------------------------

/// Paired integer grids, so ties and exact ranks are common.
pub fn paired_grid() -> impl Strategy<Value = Vec<(i32, i32)>> {
    proptest::collection::vec((-40i32..40, -40i32..40), 2..40)
}

pub fn check_spearman_transforms(pairs: &[(i32, i32)]) -> Check {
    let x: Vec<f64> = pairs.iter().map(|p| p.0 as f64 / 8.0).collect();
    let y: Vec<f64> = pairs.iter().map(|p| p.1 as f64 / 8.0).collect();
    let base = spearman(&x, &y).unwrap().rho;
    let cubic: Vec<f64> = x.iter().map(|v| v * v * v + v).collect();
    let exp: Vec<f64> = y.iter().map(|v| v.exp()).collect();
    prop_assert_eq!(spearman(&cubic, &y).unwrap().rho, base);
    prop_assert_eq!(spearman(&x, &exp).unwrap().rho, base);
    let neg: Vec<f64> = y.iter().map(|v| -v).collect();
    prop_assert_eq!(spearman(&x, &neg).unwrap().rho, base.map(|r| -r));
    Ok(())
}

pub fn regression_case() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
    (1usize..6).prop_flat_map(|k| {
        (k + 2..40).prop_flat_map(move |n| {
            (
                proptest::collection::vec(proptest::collection::vec(-1.0..1.0f64, k), n),
                proptest::collection::vec(-1.0..1.0f64, n),
            )
        })
    })
}

pub fn check_ols_orthogonality(rows: &[Vec<f64>], y: &[f64]) -> Check {
    let r = match ols(rows, y) {
        Ok(r) => r,
        Err(StatsError::RankDeficient { .. } | StatsError::ZeroVariance) => return Ok(()),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    let k = rows[0].len();
    prop_assert!(r.residuals.iter().sum::<f64>().abs() < 1e-8);
    for j in 0..k {
        let dot: f64 = rows.iter().zip(&r.residuals).map(|(row, e)| row[j] * e).sum();
        prop_assert!(dot.abs() < 1e-8, "column {j}: {dot}");
    }
    prop_assert!(r.adjusted_r_squared <= r.r_squared + 1e-15);
    if r.r_squared < 1.0 - 1e-12 {
        prop_assert!(r.adjusted_r_squared < r.r_squared);
    }
    Ok(())
}

pub fn check_tails(t1: f64, t2: f64, df: f64, f: f64, d1: f64, d2: f64) -> Check {
    let (lo, hi) = if t1.abs() <= t2.abs() { (t1, t2) } else { (t2, t1) };
    prop_assert!(t_tail(lo, df) >= t_tail(hi, df), "t_tail not monotone at {lo}, {hi}, df {df}");
    let p = f_tail(f, d1, d2);
    prop_assert!((0.0..=1.0).contains(&p), "{p}");
    Ok(())
}

pub fn check_anova_matches_t(a: &[f64], b: &[f64]) -> Check {
    let r = one_way_anova(&[a, b]).unwrap();
    if r.degenerate.is_some() {
        return Ok(());
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ma, mb) = (a.iter().sum::<f64>() / na, b.iter().sum::<f64>() / nb);
    let ss: f64 = a.iter().map(|x| (x - ma).powi(2)).sum::<f64>() + b.iter().map(|x| (x - mb).powi(2)).sum::<f64>();
    let df = na + nb - 2.0;
    let t = (ma - mb) / (ss / df * (1.0 / na + 1.0 / nb)).sqrt();
    let p = t_tail(t, df);
    prop_assert!((r.p_value - p).abs() <= 1e-9, "anova {} vs t {}", r.p_value, p);
    Ok(())
}

pub fn check_min_sample_size(d1: f64, d2: f64) -> Check {
    let (small, large) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
    let n_small = min_sample_size(0.05, 0.8, small).unwrap();
    let n_large = min_sample_size(0.05, 0.8, large).unwrap();
    prop_assert!(n_large <= n_small, "d {small} -> {n_small}, d {large} -> {n_large}");
    prop_assert!(two_sample_t_power(n_small, small, 0.05) >= 0.8);
    if n_small > 2 {
        prop_assert!(two_sample_t_power(n_small - 1, small, 0.05) < 0.8);
    }
    Ok(())
}

// ---- lexicons -------------------------------------------------------------

fn single_scale_source(id: usize, word: &str, scale: Scale, value: f64) -> SourceLexicon {
    let mut entry = LexEntry::default();
    entry.set(Dimension::Valence, Some(Norm { mean: value, sd: None }));
    let mut scales = [None; Dimension::COUNT];
    scales[Dimension::Valence.index()] = Some(scale);
    SourceLexicon {
        source_id: format!("s{id}"),
        entries: BTreeMap::from([(word.to_string(), entry)]),
        scales,
        duplicates: Vec::new(),
    }
}

/// Sources sharing one native scale: median-then-rescale equals the merged
/// (rescale-then-median) value.
pub fn check_rescale_median(lo: f64, width: f64, fractions: &[f64]) -> Check {
    let scale = Scale::new(lo, lo + width).unwrap();
    let raw: Vec<f64> = fractions.iter().map(|f| lo + f * width).collect();
    let sources: Vec<SourceLexicon> =
        raw.iter().enumerate().map(|(i, v)| single_scale_source(i, "palabra", scale, *v)).collect();
    let canonical = CanonicalScales::default();
    let merged = merge(&sources, &NormalizationConfig::new(NormalizationMode::Raw), &canonical).unwrap();
    let got = merged.entries["palabra"].get(Dimension::Valence).unwrap().mean;

    let mut sorted = raw.clone();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 { sorted[n / 2] } else { (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0 };
    let want = rescale(median, scale, canonical.get(Dimension::Valence)).unwrap();
    prop_assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
    Ok(())
}

const VOCAB: [&str; 14] = [
    "amor", "amores", "amado", "fuego", "fuegos", "llanto", "llorar", "lloraba", "sombra", "sombras", "ceniza",
    "cenizas", "el", "de",
];

fn lexicon_from(words: &[usize], values: &[f64], id: usize) -> SourceLexicon {
    let mut entries = BTreeMap::new();
    for (&w, &v) in words.iter().zip(values) {
        let mut e = LexEntry::default();
        e.set(Dimension::Arousal, Some(Norm { mean: v, sd: Some(1.0) }));
        entries.insert(VOCAB[w % VOCAB.len()].to_string(), e);
    }
    let mut scales = [None; Dimension::COUNT];
    scales[Dimension::Arousal.index()] = Some(Dimension::Arousal.canonical_scale());
    SourceLexicon { source_id: format!("src{id}"), entries, scales, duplicates: Vec::new() }
}

pub fn lexicon_sources() -> impl Strategy<Value = Vec<(Vec<usize>, Vec<f64>)>> {
    proptest::collection::vec(
        (proptest::collection::vec(0usize..14, 1..10), proptest::collection::vec(1.0..9.0f64, 10)),
        1..4,
    )
}

pub fn sonnet_texts() -> impl Strategy<Value = Vec<Vec<usize>>> {
    proptest::collection::vec(proptest::collection::vec(0usize..14, 1..20), 1..6)
}

fn corpus_of(texts: &[Vec<usize>]) -> Corpus {
    Corpus::new(
        texts
            .iter()
            .enumerate()
            .map(|(i, words)| Sonnet {
                metadata: SonnetMetadata {
                    author: "a".into(),
                    year: "XVI".into(),
                    title: format!("t{i}"),
                    sonnet_id: SonnetId(format!("s{i}")),
                    file_path: format!("s{i}.txt"),
                },
                text: words.iter().map(|w| VOCAB[*w]).collect::<Vec<_>>().join(" "),
            })
            .collect(),
    )
    .unwrap()
}

pub fn check_merge_idempotent(specs: &[(Vec<usize>, Vec<f64>)]) -> Check {
    let sources: Vec<SourceLexicon> = specs.iter().enumerate().map(|(i, (w, v))| lexicon_from(w, v, i)).collect();
    let norm = NormalizationConfig::new(NormalizationMode::Raw);
    let scales = CanonicalScales::default();
    let merged = merge(&sources, &norm, &scales).unwrap();
    let again = merge(&[merged.as_source("merged")], &norm, &scales).unwrap();
    prop_assert_eq!(again.entries, merged.entries);
    Ok(())
}

pub fn check_coverage_union(specs: &[(Vec<usize>, Vec<f64>)], texts: &[Vec<usize>], mode: NormalizationMode) -> Check {
    let sources: Vec<SourceLexicon> = specs.iter().enumerate().map(|(i, (w, v))| lexicon_from(w, v, i)).collect();
    let norm = NormalizationConfig::new(mode).with_lemma_table(lemma_table());
    let merged = merge(&sources, &norm, &CanonicalScales::default()).unwrap();
    let corpus = corpus_of(texts);
    let report = coverage(&corpus, &sources, &merged, &norm, None).unwrap();
    for row in &report.rows {
        for (id, f) in &row.per_source_fractions {
            prop_assert!(row.fraction >= *f, "{}: combined {} < {} {}", row.category, row.fraction, id, f);
        }
    }
    Ok(())
}

// ---- text normalization ---------------------------------------------------

fn lemma_table() -> LemmaTable {
    let mut t = LemmaTable::default();
    for (s, l) in [
        ("amores", "amor"),
        ("amado", "amar"),
        ("fuegos", "fuego"),
        ("lloraba", "llorar"),
        ("sombras", "sombra"),
        ("cenizas", "ceniza"),
    ] {
        t.insert(s, l);
    }
    t
}

fn distinct_keys(texts: &[Vec<usize>], mode: NormalizationMode) -> usize {
    let norm = NormalizationConfig::new(mode).with_lemma_table(lemma_table());
    let mut keys = HashSet::new();
    for words in texts {
        let text = words.iter().map(|w| VOCAB[*w]).collect::<Vec<_>>().join(" ");
        keys.extend(normalize(&text, &norm).unwrap().into_iter().map(|t| t.normalized));
    }
    keys.len()
}

pub fn check_key_reduction(texts: &[Vec<usize>]) -> Check {
    let raw = distinct_keys(texts, NormalizationMode::Raw);
    prop_assert!(distinct_keys(texts, NormalizationMode::Stem) <= raw);
    prop_assert!(distinct_keys(texts, NormalizationMode::Lemma) <= raw);
    Ok(())
}

pub fn check_positions(text: &str, mode: NormalizationMode) -> Check {
    let norm = NormalizationConfig::new(mode).with_lemma_table(lemma_table());
    let a = normalize(text, &norm).unwrap();
    let positions: Vec<usize> = a.iter().map(|t| t.position).collect();
    prop_assert_eq!(positions, (1..=a.len()).collect::<Vec<_>>());
    prop_assert_eq!(a, normalize(text, &norm).unwrap());
    Ok(())
}
