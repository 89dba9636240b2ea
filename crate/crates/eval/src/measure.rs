//! Per-text size accounting under UTF-8, UTF-16 and Duncode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use duncode::{encode_str, TableSet};
use thiserror::Error;

use crate::corpus::{extract, CorpusError, CorpusSpec};

/// Character and byte counts for one text. Symbol lengths and the size
/// ratio are derived on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub label: String,
    pub n_chars: u64,
    pub n_bytes_utf8: u64,
    pub n_bytes_utf16: u64,
    pub n_bytes_duncode: u64,
}

fn per_char(bytes: u64, chars: u64) -> Option<f64> {
    (chars > 0).then(|| bytes as f64 / chars as f64)
}

impl BenchRow {
    pub fn sym_len_utf8(&self) -> Option<f64> {
        per_char(self.n_bytes_utf8, self.n_chars)
    }

    pub fn sym_len_utf16(&self) -> Option<f64> {
        per_char(self.n_bytes_utf16, self.n_chars)
    }

    pub fn sym_len_duncode(&self) -> Option<f64> {
        per_char(self.n_bytes_duncode, self.n_chars)
    }

    /// UTF-8 size over Duncode size, as a percentage.
    pub fn ratio_utf8_over_duncode(&self) -> Option<f64> {
        (self.n_bytes_duncode > 0).then(|| 100.0 * self.n_bytes_utf8 as f64 / self.n_bytes_duncode as f64)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("input is not valid UTF-8 at byte offset {offset}")]
pub struct MeasureError {
    pub offset: usize,
}

pub fn measure(label: impl Into<String>, text: &str, tables: &TableSet) -> BenchRow {
    let (n_chars, n_units16) = text.chars().fold((0u64, 0u64), |(c, u), ch| (c + 1, u + ch.len_utf16() as u64));
    BenchRow {
        label: label.into(),
        n_chars,
        n_bytes_utf8: text.len() as u64,
        n_bytes_utf16: 2 * n_units16,
        n_bytes_duncode: encode_str(text, tables).len() as u64,
    }
}

pub fn measure_bytes(label: impl Into<String>, bytes: &[u8], tables: &TableSet) -> Result<BenchRow, MeasureError> {
    let text = std::str::from_utf8(bytes).map_err(|e| MeasureError { offset: e.valid_up_to() })?;
    Ok(measure(label, text, tables))
}

/// Measures every `(label, text)` pair, in input order.
pub fn measure_all<S: AsRef<str> + Sync>(texts: &[(S, S)], tables: &TableSet) -> Vec<BenchRow> {
    let one = |(label, text): &(S, S)| measure(label.as_ref(), text.as_ref(), tables);
    #[cfg(feature = "parallel")]
    {
        texts.par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        texts.iter().map(one).collect()
    }
}

/// Same as [`measure_all`], always on the calling thread.
pub fn measure_all_sequential<S: AsRef<str>>(texts: &[(S, S)], tables: &TableSet) -> Vec<BenchRow> {
    texts.iter().map(|(label, text)| measure(label.as_ref(), text.as_ref(), tables)).collect()
}

/// Extracts and measures each corpus; sources are independent.
pub fn measure_corpora(specs: &[CorpusSpec], tables: &TableSet) -> Vec<Result<BenchRow, CorpusError>> {
    let one = |spec: &CorpusSpec| extract(spec).map(|text| measure(spec.label.clone(), &text, tables));
    #[cfg(feature = "parallel")]
    {
        specs.par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        specs.iter().map(one).collect()
    }
}
