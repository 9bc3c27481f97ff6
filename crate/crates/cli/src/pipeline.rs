use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use sonnet_gam::agreement::{agreement_report, AgreementReport};
use sonnet_gam::corpus::{
    build_median_annotator, corpus_statistics, fill_missing_psych, reverse_ordinal_scale, AnnotationSet, Corpus,
    CorpusError, Feature, OrdinalFeature,
};
use sonnet_gam::gam::compute_corpus_matrix;
use sonnet_gam::lexicon::{
    coverage, distinct_key_counts, merge, missing_words, LexiconDescriptor, LexiconError, MergedLexicon, SourceLexicon,
};
use sonnet_gam::textproc::{LemmaTable, NormalizationConfig, NormalizationMode, StopwordList, TextError};
use sonnet_gam::validation::{anova_report, bivariate_report, categories, partial_dependence_report};

use crate::config::{ConfigError, RunConfig};
use crate::report;
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Corpus word counts, histogram and tag counts.
    Stats,
    /// Distinct keys per normalization mode and lexicon coverage.
    Coverage,
    /// Krippendorff alpha per feature, joint and pairwise.
    Agree,
    /// The 32 affective features for every sonnet.
    Features,
    /// Correlations, regressions and per-tag ANOVA against the median annotator.
    Validate,
    /// Every report, in a fixed order.
    All,
}

impl Command {
    fn includes(self, other: Command) -> bool {
        self == other || self == Command::All
    }

    fn needs_corpus(self) -> bool {
        self != Command::Agree
    }

    fn needs_lexicons(self) -> bool {
        matches!(self, Command::Coverage | Command::Features | Command::Validate | Command::All)
    }

    /// Minimum number of annotation files.
    fn needs_annotations(self) -> usize {
        match self {
            Command::Agree => 2,
            Command::Validate | Command::All => 3,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub missing_words: bool,
    pub log_decisions: bool,
    pub strict: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Corpus { path: String, source: CorpusError },
    #[error(transparent)]
    CorpusData(#[from] CorpusError),
    #[error("{path}: {source}")]
    Lexicon { path: String, source: LexiconError },
    #[error(transparent)]
    LexiconData(#[from] LexiconError),
    #[error(transparent)]
    Text(#[from] TextError),
    #[error("{command:?} needs {what}")]
    MissingInput { command: Command, what: String },
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    /// Report file names, relative to the output directory, in write order.
    pub written: Vec<String>,
    /// Every fallback or degraded computation, one line each.
    pub decisions: Vec<String>,
    /// Some quantity could not be computed as specified.
    pub degenerate: bool,
}

impl Outcome {
    fn note(&mut self, line: String) {
        log::warn!("{line}");
        self.decisions.push(line);
    }

    fn degraded(&mut self, line: String) {
        self.degenerate = true;
        self.note(line);
    }
}

struct Inputs {
    norm: NormalizationConfig,
    lemma_table: Option<LemmaTable>,
    stopwords: StopwordList,
    corpus: Option<Corpus>,
    sets: Vec<AnnotationSet>,
    sources: Vec<SourceLexicon>,
}

fn require(command: Command, ok: bool, what: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::MissingInput { command, what: what.to_string() })
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn lexicon_error(p: &Path, source: LexiconError) -> CliError {
    CliError::Lexicon { path: path_str(p), source }
}

/// Reads and checks every input the command uses before anything is
/// computed.
fn load(command: Command, cfg: &RunConfig, out: &mut Outcome) -> Result<Inputs, CliError> {
    cfg.check_paths()?;
    if command.needs_corpus() {
        require(command, cfg.metadata.is_some() && cfg.sonnet_root.is_some(), "metadata and sonnet_root")?;
    }
    if command.needs_lexicons() {
        require(command, !cfg.lexicons.is_empty(), "at least one [[lexicon]]")?;
    }
    let need = command.needs_annotations();
    if need > 0 {
        require(command, cfg.annotations.len() >= need, &format!("{need} annotation files"))?;
    }
    if cfg.annotations.len() > 3 && command != Command::Agree {
        require(command, false, "exactly three annotation files")?;
    }
    if cfg.mode == NormalizationMode::Lemma {
        require(command, cfg.lemma_table.is_some(), "a lemma_table for lemma mode")?;
    }

    let stopwords = match &cfg.stopwords {
        Some(p) => StopwordList::load(p)?,
        None => StopwordList::bundled_spanish(),
    };
    let lemma_table = cfg.lemma_table.as_deref().map(|p| LemmaTable::load(p, cfg.lemma_delimiter)).transpose()?;
    let mut norm = NormalizationConfig::new(cfg.mode).with_stopwords(stopwords.clone());
    if let Some(t) = &lemma_table {
        norm = norm.with_lemma_table(t.clone());
    }
    norm.validate()?;

    let corpus = if command.needs_corpus() {
        let (meta, root) = (cfg.metadata.as_deref().unwrap(), cfg.sonnet_root.as_deref().unwrap());
        Some(Corpus::load(meta, root).map_err(|source| CliError::Corpus { path: path_str(meta), source })?)
    } else {
        None
    };

    let mut sets = Vec::with_capacity(cfg.annotations.len());
    for (i, p) in cfg.annotations.iter().enumerate() {
        let id = (i + 1) as u8;
        let wrap = |source| CliError::Corpus { path: path_str(p), source };
        let mut set = AnnotationSet::load(p, id, cfg.annotation_delimiter).map_err(wrap)?;
        if let Some(c) = &corpus {
            set = set.with_sonnet_ids(c.ids()).map_err(wrap)?;
        }
        if cfg.reverse_valence.contains(&id) {
            set = reverse_ordinal_scale(&set, Feature::Ordinal(OrdinalFeature::Valence))?;
            out.note(format!("annotator {id}: valence scale reversed (x -> 5 - x)"));
        }
        sets.push(set);
    }

    let mut sources = Vec::new();
    if command.needs_lexicons() {
        for l in &cfg.lexicons {
            let descriptor = match &l.descriptor {
                Some(d) => Some(LexiconDescriptor::load(d).map_err(|e| lexicon_error(d, e))?),
                None => None,
            };
            let src = SourceLexicon::load(&l.path, descriptor.as_ref()).map_err(|e| lexicon_error(&l.path, e))?;
            for (word, dim) in &src.duplicates {
                out.note(format!("lexicon {}: duplicate entry {word:?} / {dim} averaged", src.source_id));
            }
            sources.push(src);
        }
    }

    Ok(Inputs { norm, lemma_table, stopwords, corpus, sets, sources })
}

/// Applies the fill and median rules to the three annotation sets.
fn fuse(sets: &[AnnotationSet], out: &mut Outcome) -> Result<AnnotationSet, CliError> {
    let (filled, fill) = fill_missing_psych(sets)?;
    for (annotator, cell) in &fill.filled {
        out.note(format!("annotator {annotator}: missing {} / {} filled with 0", cell.sonnet_id, cell.feature));
    }
    for cell in &fill.unfillable {
        out.note(format!("{} / {}: missing for several annotators, left missing", cell.sonnet_id, cell.feature));
    }
    let (median, report) = build_median_annotator(&filled)?;
    for cell in &report.split_ties {
        out.note(format!("median {} / {}: even split, lower value taken", cell.sonnet_id, cell.feature));
    }
    for cell in &report.unresolved {
        out.note(format!("median {} / {}: fewer than two values, left missing", cell.sonnet_id, cell.feature));
    }
    Ok(median)
}

struct Writer<'a> {
    dir: &'a Path,
    cfg: &'a RunConfig,
}

impl Writer<'_> {
    fn write(&self, table: &Table, stem: &str, out: &mut Outcome) -> Result<(), CliError> {
        let files = table
            .write(self.dir, stem, self.cfg.format.csv(), self.cfg.format.json())
            .map_err(|source| CliError::Write { path: path_str(&self.dir.join(stem)), source })?;
        out.written.extend(files);
        Ok(())
    }
}

fn note_agreement(report: &AgreementReport, out: &mut Outcome) {
    for row in &report.rows {
        for cell in &row.cells {
            match &cell.result {
                Err(e) => out.degraded(format!("alpha {} / {}: not computable ({e})", row.feature, cell.column)),
                Ok(r) if r.degenerate => out.degraded(format!(
                    "alpha {} / {}: no expected disagreement, reported as 1",
                    row.feature, cell.column
                )),
                Ok(_) => {}
            }
        }
    }
}

/// Runs `command`, writing its reports into `cfg.out`.
pub fn run(command: Command, cfg: &RunConfig, opts: Options) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    let inputs = load(command, cfg, &mut out)?;
    fs::create_dir_all(&cfg.out).map_err(|source| CliError::Write { path: path_str(&cfg.out), source })?;
    let w = Writer { dir: &cfg.out, cfg };

    let median = if inputs.sets.len() == 3 {
        Some(fuse(&inputs.sets, &mut out)?)
    } else {
        if !inputs.sets.is_empty() && command.includes(Command::Agree) {
            out.note(format!(
                "{} annotation files: pairwise agreement only, the median column requires three",
                inputs.sets.len()
            ));
        }
        None
    };

    if command.includes(Command::Stats) {
        let corpus = inputs.corpus.as_ref().expect("loaded");
        if median.is_none() {
            out.note("no annotation files: tag counts omitted from corpus_stats".into());
        }
        let stats = corpus_statistics(corpus, median.as_ref(), &inputs.norm)?;
        w.write(&report::corpus_stats(&stats), "corpus_stats", &mut out)?;
    }

    let merged: Option<MergedLexicon> =
        if command.needs_lexicons() { Some(merge(&inputs.sources, &inputs.norm, &cfg.scales)?) } else { None };

    if command.includes(Command::Coverage) {
        let corpus = inputs.corpus.as_ref().expect("loaded");
        let merged = merged.as_ref().expect("merged");
        let rep = coverage(corpus, &inputs.sources, merged, &inputs.norm, median.as_ref())?;
        let mut counts = Vec::new();
        for mode in NormalizationMode::ALL {
            if mode == NormalizationMode::Lemma && inputs.lemma_table.is_none() {
                out.note("no lemma table: lemma key counts left empty".into());
                continue;
            }
            let mut n = NormalizationConfig::new(mode).with_stopwords(inputs.stopwords.clone());
            if let Some(t) = &inputs.lemma_table {
                n = n.with_lemma_table(t.clone());
            }
            counts.push((mode, distinct_key_counts(corpus, median.as_ref(), &n)?));
        }
        w.write(&report::coverage(&rep, &counts), "coverage", &mut out)?;
        if opts.missing_words {
            let words = missing_words(corpus, merged, &inputs.norm)?;
            w.write(&report::missing_words(&words), "missing_words", &mut out)?;
        }
    }

    if command.includes(Command::Agree) && !inputs.sets.is_empty() {
        // agreement is measured on the files as given (after reversal), not on
        // the zero-filled sets
        let rep = agreement_report(&inputs.sets, median.as_ref());
        note_agreement(&rep, &mut out);
        w.write(&report::agreement(&rep), "agreement", &mut out)?;
    }

    let needs_matrix = command.includes(Command::Features) || command.includes(Command::Validate);
    if needs_matrix {
        let corpus = inputs.corpus.as_ref().expect("loaded");
        let merged = merged.as_ref().expect("merged");
        let matrix = compute_corpus_matrix(corpus, merged, &inputs.norm)?;
        for (f, n) in matrix.undefined_counts() {
            if n > 0 {
                out.note(format!("{f}: undefined for {n} sonnets"));
            }
        }
        if command.includes(Command::Features) {
            w.write(&report::features(&matrix), "gam_features", &mut out)?;
        }
        if command.includes(Command::Validate) {
            let median = median.as_ref().expect("three annotation sets");
            let cells = bivariate_report(&matrix, median);
            w.write(&report::bivariate(&cells), "bivariate", &mut out)?;

            let rows = partial_dependence_report(&matrix, median, &categories());
            for r in &rows {
                let at = format!("{} / {}", r.category, r.annotated);
                if r.pruned {
                    out.note(format!("regression {at}: n = {} too small, predictors pruned", r.n));
                }
                if !r.unavailable.is_empty() {
                    out.note(format!(
                        "regression {at}: {} predictors undefined throughout, excluded",
                        r.unavailable.len()
                    ));
                }
                if !r.collinear.is_empty() {
                    out.note(format!("regression {at}: {} collinear predictors dropped", r.collinear.len()));
                }
                if let Err(e) = &r.fit {
                    out.degraded(format!("regression {at}: not computable ({e})"));
                }
            }
            w.write(&report::partial_dependence(&rows), "partial_dependence", &mut out)?;

            let anova = anova_report(&matrix, median);
            for r in &anova.rows {
                if let Some(d) = &r.degenerate {
                    out.degraded(format!("anova {} / {}: {d:?}", r.category, r.gam));
                }
            }
            for (tag, g, e) in &anova.failures {
                out.degraded(format!("anova {tag} / {g}: not computable ({e})"));
            }
            w.write(&report::anova(&anova), "anova", &mut out)?;
        }
    }

    if opts.log_decisions {
        let path: PathBuf = cfg.out.join("decisions.log");
        let mut text = out.decisions.join("\n");
        if !text.is_empty() {
            text.push('\n');
        }
        fs::write(&path, text).map_err(|source| CliError::Write { path: path_str(&path), source })?;
        out.written.push("decisions.log".into());
    }
    Ok(out)
}
