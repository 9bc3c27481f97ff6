use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::Deserialize;

use super::{Dimension, LexEntry, LexiconError, Norm, Scale};

/// One published norms database, on its own native scales.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceLexicon {
    pub source_id: String,
    pub entries: BTreeMap<String, LexEntry>,
    pub scales: [Option<Scale>; Dimension::COUNT],
    /// (word, dimension) pairs that appeared more than once and were averaged.
    pub duplicates: Vec<(String, Dimension)>,
}

/// Column mapping from a lexicon's native header onto the canonical schema.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconDescriptor {
    pub source_id: String,
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
    #[serde(default)]
    pub decimal_comma: bool,
    pub word_column: String,
    pub dimensions: BTreeMap<String, DimensionColumns>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionColumns {
    pub mean: String,
    #[serde(default)]
    pub sd: Option<String>,
    pub scale: [f64; 2],
}

fn default_delimiter() -> char {
    ','
}

impl LexiconDescriptor {
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let d: LexiconDescriptor = toml::from_str(text).map_err(|e| LexiconError::Descriptor(e.to_string()))?;
        if !d.delimiter.is_ascii() {
            return Err(LexiconError::Descriptor("delimiter must be an ASCII character".into()));
        }
        if d.dimensions.is_empty() {
            return Err(LexiconError::Descriptor("no dimensions mapped".into()));
        }
        for (name, cols) in &d.dimensions {
            name.parse::<Dimension>()?;
            Scale::new(cols.scale[0], cols.scale[1])?;
        }
        Ok(d)
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        Self::parse(&read(path)?)
    }
}

fn read(path: &Path) -> Result<String, LexiconError> {
    std::fs::read_to_string(path).map_err(|source| LexiconError::Io { path: path.display().to_string(), source })
}

fn reader(text: &str, delimiter: u8) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new().delimiter(delimiter).has_headers(false).flexible(true).from_reader(text.as_bytes())
}

fn parse_number(raw: &str, decimal_comma: bool) -> Option<f64> {
    let raw = raw.trim();
    let v = if decimal_comma { raw.replace(',', ".").parse().ok()? } else { raw.parse().ok()? };
    f64::is_finite(v).then_some(v)
}

#[derive(Default)]
struct Accumulator {
    // (word, dim) -> observed (mean, sd) rows, in file order
    cells: BTreeMap<String, [Vec<(f64, Option<f64>)>; Dimension::COUNT]>,
}

impl Accumulator {
    fn push(&mut self, word: String, d: Dimension, mean: f64, sd: Option<f64>) {
        self.cells.entry(word).or_default()[d.index()].push((mean, sd));
    }

    fn finish(self, source_id: String, scales: [Option<Scale>; Dimension::COUNT]) -> SourceLexicon {
        let mut entries = BTreeMap::new();
        let mut duplicates = Vec::new();
        for (word, per_dim) in self.cells {
            let mut entry = LexEntry::default();
            for d in Dimension::ALL {
                let obs = &per_dim[d.index()];
                if obs.is_empty() {
                    continue;
                }
                if obs.len() > 1 {
                    log::warn!("{source_id}: {word:?} listed {} times for {d}; averaging", obs.len());
                    duplicates.push((word.clone(), d));
                }
                let mean = obs.iter().map(|o| o.0).sum::<f64>() / obs.len() as f64;
                let sds: Vec<f64> = obs.iter().filter_map(|o| o.1).collect();
                let sd = (!sds.is_empty()).then(|| sds.iter().sum::<f64>() / sds.len() as f64);
                entry.set(d, Some(Norm { mean, sd }));
            }
            if !entry.is_empty() {
                entries.insert(word, entry);
            }
        }
        SourceLexicon { source_id, entries, scales, duplicates }
    }
}

fn check_value(line: usize, column: &str, mean: f64, sd: Option<f64>, scale: Scale) -> Result<(), LexiconError> {
    if !scale.contains(mean) {
        return Err(LexiconError::ScaleViolation {
            line,
            column: column.to_string(),
            value: mean,
            min: scale.min,
            max: scale.max,
        });
    }
    if let Some(sd) = sd.filter(|s| *s < 0.0) {
        return Err(LexiconError::NegativeSd { line, column: column.to_string(), value: sd });
    }
    Ok(())
}

const CANONICAL_COLUMNS: [&str; 7] = ["word", "dimension", "mean", "sd", "scale_min", "scale_max", "source_id"];

impl SourceLexicon {
    /// Canonical long format: one row per (word, dimension) with columns
    /// `word, dimension, mean, sd, scale_min, scale_max, source_id`.
    pub fn parse_canonical(text: &str, delimiter: u8) -> Result<Self, LexiconError> {
        let mut rdr = reader(text, delimiter);
        let mut records = rdr.records();
        let header = match records.next() {
            Some(r) => r.map_err(|e| malformed(1, e))?,
            None => return Err(LexiconError::Malformed { line: 1, detail: "empty file".into() }),
        };
        let mut idx = [0usize; 7];
        for (slot, name) in idx.iter_mut().zip(CANONICAL_COLUMNS) {
            *slot = header
                .iter()
                .position(|h| h.trim().eq_ignore_ascii_case(name))
                .ok_or_else(|| LexiconError::MissingColumn(name.to_string()))?;
        }
        let [c_word, c_dim, c_mean, c_sd, c_min, c_max, c_src] = idx;

        let mut source_id: Option<String> = None;
        let mut scales: [Option<Scale>; Dimension::COUNT] = [None; Dimension::COUNT];
        let mut acc = Accumulator::default();
        for (i, rec) in records.enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| malformed(line, e))?;
            if rec.iter().all(|f| f.trim().is_empty()) {
                continue;
            }
            let field = |c: usize| rec.get(c).unwrap_or("").trim();
            let src = field(c_src).to_string();
            match &source_id {
                None => source_id = Some(src),
                Some(s) if *s != src => return Err(LexiconError::MixedSources(s.clone(), src)),
                _ => {}
            }
            let word = field(c_word).to_lowercase();
            if word.is_empty() {
                return Err(LexiconError::Malformed { line, detail: "empty word".into() });
            }
            let d: Dimension = field(c_dim).parse()?;
            let number = |c: usize, name: &str| {
                parse_number(field(c), false).ok_or_else(|| LexiconError::Malformed {
                    line,
                    detail: format!("column {name}: not a number: {:?}", field(c)),
                })
            };
            let scale = Scale::new(number(c_min, "scale_min")?, number(c_max, "scale_max")?)?;
            match scales[d.index()] {
                None => scales[d.index()] = Some(scale),
                Some(s) if s != scale => return Err(LexiconError::InconsistentScale { line, dimension: d }),
                _ => {}
            }
            let mean = number(c_mean, "mean")?;
            let sd = if field(c_sd).is_empty() { None } else { Some(number(c_sd, "sd")?) };
            check_value(line, "mean", mean, sd, scale)?;
            acc.push(word, d, mean, sd);
        }
        let source_id = source_id.ok_or_else(|| LexiconError::Malformed { line: 2, detail: "no rows".into() })?;
        Ok(acc.finish(source_id, scales))
    }

    /// A lexicon in its published wide layout, mapped through `descriptor`.
    pub fn parse_native(text: &str, descriptor: &LexiconDescriptor) -> Result<Self, LexiconError> {
        let mut rdr = reader(text, descriptor.delimiter as u8);
        let mut records = rdr.records();
        let header = match records.next() {
            Some(r) => r.map_err(|e| malformed(1, e))?,
            None => return Err(LexiconError::Malformed { line: 1, detail: "empty file".into() }),
        };
        let columns: HashMap<&str, usize> = header.iter().enumerate().map(|(i, h)| (h.trim(), i)).collect();
        let col =
            |name: &str| columns.get(name.trim()).copied().ok_or_else(|| LexiconError::MissingColumn(name.to_string()));
        let c_word = col(&descriptor.word_column)?;
        let mut mapped = Vec::new();
        let mut scales: [Option<Scale>; Dimension::COUNT] = [None; Dimension::COUNT];
        for (name, cols) in &descriptor.dimensions {
            let d: Dimension = name.parse()?;
            let scale = Scale::new(cols.scale[0], cols.scale[1])?;
            scales[d.index()] = Some(scale);
            let sd = cols.sd.as_deref().map(col).transpose()?;
            mapped.push((d, col(&cols.mean)?, cols.mean.as_str(), sd, scale));
        }

        let mut acc = Accumulator::default();
        for (i, rec) in records.enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| malformed(line, e))?;
            let field = |c: usize| rec.get(c).unwrap_or("").trim();
            let word = field(c_word).to_lowercase();
            if word.is_empty() {
                continue;
            }
            for &(d, c_mean, mean_name, c_sd, scale) in &mapped {
                if field(c_mean).is_empty() {
                    continue;
                }
                let number = |c: usize| {
                    parse_number(field(c), descriptor.decimal_comma).ok_or_else(|| LexiconError::Malformed {
                        line,
                        detail: format!("not a number: {:?}", field(c)),
                    })
                };
                let mean = number(c_mean)?;
                let sd = match c_sd {
                    Some(c) if !field(c).is_empty() => Some(number(c)?),
                    _ => None,
                };
                check_value(line, mean_name, mean, sd, scale)?;
                acc.push(word.clone(), d, mean, sd);
            }
        }
        Ok(acc.finish(descriptor.source_id.clone(), scales))
    }

    /// Loads `path`, through `descriptor` when given, else as canonical.
    pub fn load(path: &Path, descriptor: Option<&LexiconDescriptor>) -> Result<Self, LexiconError> {
        let text = read(path)?;
        match descriptor {
            Some(d) => Self::parse_native(&text, d),
            None => Self::parse_canonical(&text, b','),
        }
    }

    pub fn populated_dimensions(&self) -> Vec<Dimension> {
        Dimension::ALL.into_iter().filter(|d| self.entries.values().any(|e| e.get(*d).is_some())).collect()
    }
}

fn malformed(line: usize, e: csv::Error) -> LexiconError {
    LexiconError::Malformed { line, detail: e.to_string() }
}
