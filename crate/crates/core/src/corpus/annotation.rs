use std::path::Path;

use super::{CorpusError, Feature, SonnetId};

/// One annotator's values for every sonnet over the 31 catalog features.
/// Rows follow file order; `None` marks a missing cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationSet {
    pub annotator_id: u8,
    sonnet_ids: Vec<SonnetId>,
    rows: Vec<[Option<u8>; Feature::COUNT]>,
}

impl AnnotationSet {
    /// Builds a set from rows already in catalog column order. Values are
    /// range-checked; ordinal cells must be present.
    pub fn from_rows(
        annotator_id: u8,
        sonnet_ids: Vec<SonnetId>,
        rows: Vec<[Option<u8>; Feature::COUNT]>,
    ) -> Result<Self, CorpusError> {
        if sonnet_ids.len() != rows.len() {
            return Err(CorpusError::RowCountMismatch {
                what: "sonnet ids".into(),
                expected: rows.len(),
                found: sonnet_ids.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            for f in Feature::all() {
                let (min, max) = f.range();
                match row[f.index()] {
                    None if f.is_ordinal() => {
                        return Err(CorpusError::MissingOrdinal { line: i + 1, column: f.name() })
                    }
                    Some(v) if v < min || v > max => {
                        return Err(CorpusError::OutOfRange {
                            line: i + 1,
                            column: f.name(),
                            value: v as i64,
                            min,
                            max,
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(AnnotationSet { annotator_id, sonnet_ids, rows })
    }

    pub(crate) fn from_parts_unchecked(
        annotator_id: u8,
        sonnet_ids: Vec<SonnetId>,
        rows: Vec<[Option<u8>; Feature::COUNT]>,
    ) -> Self {
        debug_assert_eq!(sonnet_ids.len(), rows.len());
        AnnotationSet { annotator_id, sonnet_ids, rows }
    }

    /// Parses a delimited annotation file: a header of feature names in
    /// any order, one row per sonnet. Sonnets are numbered "1".."n" until
    /// joined to metadata with [`AnnotationSet::with_sonnet_ids`].
    pub fn parse(text: &str, annotator_id: u8, delimiter: u8) -> Result<Self, CorpusError> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .has_headers(false)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut records = rdr.records();
        let header = match records.next() {
            None => return Err(CorpusError::NoRows),
            Some(r) => r.map_err(|e| CorpusError::Malformed { line: 1, detail: e.to_string() })?,
        };

        let mut columns: Vec<Feature> = Vec::with_capacity(header.len());
        for (col, raw) in header.iter().enumerate() {
            let name = raw.trim().trim_start_matches('\u{feff}');
            let f = Feature::from_name(name)
                .ok_or_else(|| CorpusError::UnknownFeature { column: col + 1, name: name.to_string() })?;
            if columns.contains(&f) {
                return Err(CorpusError::DuplicateFeature { column: col + 1, name: name.into() });
            }
            columns.push(f);
        }
        if let Some(missing) = Feature::all().find(|f| !columns.contains(f)) {
            return Err(CorpusError::MissingFeature(missing.name()));
        }

        let mut rows = Vec::new();
        for rec in records {
            let rec = rec.map_err(|e| CorpusError::Malformed { line: 0, detail: e.to_string() })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            if rec.iter().all(|c| c.trim().is_empty()) {
                continue;
            }
            if rec.len() != columns.len() {
                return Err(CorpusError::Malformed {
                    line,
                    detail: format!("expected {} cells, found {}", columns.len(), rec.len()),
                });
            }
            let mut row = [None; Feature::COUNT];
            for (cell, &f) in rec.iter().zip(&columns) {
                row[f.index()] = parse_cell(cell, f, line)?;
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(CorpusError::NoRows);
        }
        let sonnet_ids = (1..=rows.len()).map(|i| SonnetId(i.to_string())).collect();
        Ok(AnnotationSet { annotator_id, sonnet_ids, rows })
    }

    pub fn load(path: &Path, annotator_id: u8, delimiter: u8) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CorpusError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text, annotator_id, delimiter)
    }

    /// Joins rows to sonnet ids by position.
    pub fn with_sonnet_ids(mut self, ids: Vec<SonnetId>) -> Result<Self, CorpusError> {
        if ids.len() != self.rows.len() {
            return Err(CorpusError::RowCountMismatch {
                what: format!("annotator {}", self.annotator_id),
                expected: ids.len(),
                found: self.rows.len(),
            });
        }
        self.sonnet_ids = ids;
        Ok(self)
    }

    pub fn sonnet_ids(&self) -> &[SonnetId] {
        &self.sonnet_ids
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[[Option<u8>; Feature::COUNT]] {
        &self.rows
    }

    pub fn get(&self, row: usize, f: Feature) -> Option<u8> {
        self.rows[row][f.index()]
    }

    pub(crate) fn set(&mut self, row: usize, f: Feature, v: Option<u8>) {
        self.rows[row][f.index()] = v;
    }

    pub fn value(&self, id: &SonnetId, f: Feature) -> Option<u8> {
        let row = self.sonnet_ids.iter().position(|s| s == id)?;
        self.get(row, f)
    }

    pub fn column(&self, f: Feature) -> impl Iterator<Item = Option<u8>> + '_ {
        self.rows.iter().map(move |r| r[f.index()])
    }

    /// Writes the set back in catalog column order.
    pub fn to_csv(&self, delimiter: u8) -> String {
        let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_writer(Vec::new());
        w.write_record(Feature::all().map(Feature::name)).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.map(|x| x.to_string()).unwrap_or_default())).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

fn parse_cell(cell: &str, f: Feature, line: usize) -> Result<Option<u8>, CorpusError> {
    let cell = cell.trim();
    if cell.is_empty() {
        return if f.is_ordinal() { Err(CorpusError::MissingOrdinal { line, column: f.name() }) } else { Ok(None) };
    }
    let value: i64 =
        cell.parse().map_err(|_| CorpusError::NotInteger { line, column: f.name(), raw: cell.to_string() })?;
    let (min, max) = f.range();
    if value < min as i64 || value > max as i64 {
        return Err(CorpusError::OutOfRange { line, column: f.name(), value, min, max });
    }
    Ok(Some(value as u8))
}
