//! CSV and Markdown renderings of benchmark rows.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::measure::BenchRow;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown report format {0:?} (expected csv or markdown)")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(UnknownFormat(s.to_owned())),
        }
    }
}

const CSV_HEADER: [&str; 7] =
    ["label", "n_chars", "n_bytes_utf8", "n_bytes_duncode", "sym_len_utf8", "sym_len_duncode", "utf8_over_duncode"];
const MD_HEADER: [&str; 7] = [
    "label",
    "n_chars",
    "n_bytes (utf8)",
    "n_bytes (duncode)",
    "sym_len (utf8)",
    "sym_len (duncode)",
    "utf8/duncode (size)",
];

fn fixed2(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_owned(), |v| format!("{v:.2}"))
}

fn cells(row: &BenchRow) -> [String; 7] {
    [
        row.label.clone(),
        row.n_chars.to_string(),
        row.n_bytes_utf8.to_string(),
        row.n_bytes_duncode.to_string(),
        fixed2(row.sym_len_utf8()),
        fixed2(row.sym_len_duncode()),
        row.ratio_utf8_over_duncode().map_or_else(|| "-".to_owned(), |r| format!("{r:.2}%")),
    ]
}

fn md_cell(s: &str) -> String {
    s.replace('\\', "\\\\").replace('|', "\\|").replace(['\n', '\r'], " ")
}

/// Renders rows in input order.
pub fn report(rows: &[BenchRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            // Writing into memory cannot fail.
            w.write_record(CSV_HEADER).expect("in-memory write");
            for row in rows {
                w.write_record(cells(row)).expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory flush");
            out = String::from_utf8(bytes).expect("fields are UTF-8");
        }
        Format::Markdown => {
            let _ = writeln!(out, "| {} |", MD_HEADER.join(" | "));
            let _ = writeln!(out, "|---|{}", "---:|".repeat(MD_HEADER.len() - 1));
            for row in rows {
                let line: Vec<String> = cells(row).iter().map(|c| md_cell(c)).collect();
                let _ = writeln!(out, "| {} |", line.join(" | "));
            }
        }
    }
    out
}
