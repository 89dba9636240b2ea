//! Benchmark text sources: plain UTF-8 files and MediaWiki XML dumps.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use quick_xml::events::Event;
use quick_xml::Reader;
use thiserror::Error;

use crate::markup::strip_markup;

pub const DEFAULT_MAX_BYTES: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusKind {
    Plain,
    WikiDump,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub source: PathBuf,
    pub label: String,
    pub max_bytes: usize,
    pub kind: CorpusKind,
}

impl CorpusSpec {
    /// Labels the source with its file stem. `.xml` files are read as dumps.
    pub fn from_path(path: impl Into<PathBuf>) -> Self {
        let source = path.into();
        let label =
            source.file_stem().map_or_else(|| source.display().to_string(), |s| s.to_string_lossy().into_owned());
        let kind = match source.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("xml") => CorpusKind::WikiDump,
            _ => CorpusKind::Plain,
        };
        CorpusSpec { source, label, max_bytes: DEFAULT_MAX_BYTES, kind }
    }

    pub fn with_kind(mut self, kind: CorpusKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_max_bytes(mut self, max_bytes: usize) -> Self {
        self.max_bytes = max_bytes;
        self
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("size cap must be positive")]
    ZeroCap,
    #[error("invalid UTF-8 at byte offset {offset}")]
    Utf8 { offset: usize },
    #[error("malformed XML at byte offset {offset}: {message}")]
    Xml { offset: usize, message: String },
}

/// Reads and caps one source.
pub fn extract(spec: &CorpusSpec) -> Result<String, CorpusError> {
    if spec.max_bytes == 0 {
        return Err(CorpusError::ZeroCap);
    }
    let io = |source| CorpusError::Io { path: spec.source.clone(), source };
    let file = File::open(&spec.source).map_err(io)?;
    match spec.kind {
        CorpusKind::Plain => {
            // Three extra bytes tell a character cut by the cap from a
            // genuinely broken one.
            let mut bytes = Vec::new();
            file.take(spec.max_bytes as u64 + 3).read_to_end(&mut bytes).map_err(io)?;
            extract_plain(&bytes, spec.max_bytes)
        }
        CorpusKind::WikiDump => extract_wikidump(BufReader::new(file), spec.max_bytes),
    }
}

/// Validates `bytes` as UTF-8 and keeps at most `max_bytes` of it.
pub fn extract_plain(bytes: &[u8], max_bytes: usize) -> Result<String, CorpusError> {
    let text = match std::str::from_utf8(bytes) {
        Ok(text) => text,
        Err(e) if e.valid_up_to() >= max_bytes => {
            std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("validated prefix")
        }
        Err(e) if e.error_len().is_none() && bytes.len() <= max_bytes => {
            return Err(CorpusError::Utf8 { offset: e.valid_up_to() });
        }
        Err(e) if e.error_len().is_none() => std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("validated prefix"),
        Err(e) => return Err(CorpusError::Utf8 { offset: e.valid_up_to() }),
    };
    let mut text = text.to_owned();
    truncate_at_boundary(&mut text, max_bytes);
    Ok(text)
}

/// Cuts `text` to at most `max_bytes` without splitting a character.
pub fn truncate_at_boundary(text: &mut String, max_bytes: usize) {
    if text.len() > max_bytes {
        let mut cut = max_bytes;
        while !text.is_char_boundary(cut) {
            cut -= 1;
        }
        text.truncate(cut);
    }
}

#[derive(Default)]
struct Page {
    ns: String,
    text: String,
    redirect: bool,
}

/// Plain text of the main-namespace, non-redirect pages of a dump, one
/// article after another, capped at `max_bytes`.
pub fn extract_wikidump<R: BufRead>(reader: R, max_bytes: usize) -> Result<String, CorpusError> {
    if max_bytes == 0 {
        return Err(CorpusError::ZeroCap);
    }
    let mut xml = Reader::from_reader(reader);
    let mut buf = Vec::new();
    let mut out = String::new();
    let mut page: Option<Page> = None;
    let mut field: Option<&'static str> = None;
    let mut depth = 0usize;

    let xml_err = |offset: usize, e: &dyn std::fmt::Display| CorpusError::Xml { offset, message: e.to_string() };

    loop {
        let offset = xml.buffer_position();
        let event = xml.read_event_into(&mut buf).map_err(|e| xml_err(xml.buffer_position(), &e))?;
        match event {
            Event::Start(e) => {
                depth += 1;
                match e.local_name().as_ref() {
                    b"page" => page = Some(Page::default()),
                    b"ns" if page.is_some() => field = Some("ns"),
                    b"text" if page.is_some() => field = Some("text"),
                    b"redirect" => {
                        if let Some(p) = page.as_mut() {
                            p.redirect = true;
                        }
                    }
                    _ => field = None,
                }
            }
            Event::Empty(e) => {
                if e.local_name().as_ref() == b"redirect" {
                    if let Some(p) = page.as_mut() {
                        p.redirect = true;
                    }
                }
            }
            Event::Text(e) => {
                if let (Some(p), Some(f)) = (page.as_mut(), field) {
                    let s = e.unescape().map_err(|err| xml_err(offset, &err))?;
                    match f {
                        "ns" => p.ns.push_str(&s),
                        _ => p.text.push_str(&s),
                    }
                }
            }
            Event::CData(e) => {
                if let (Some(p), Some("text")) = (page.as_mut(), field) {
                    let s = std::str::from_utf8(&e).map_err(|err| xml_err(offset, &err))?;
                    p.text.push_str(s);
                }
            }
            Event::End(e) => {
                depth = depth.saturating_sub(1);
                field = None;
                if e.local_name().as_ref() == b"page" {
                    if let Some(p) = page.take() {
                        let ns = p.ns.trim();
                        if (ns.is_empty() || ns == "0") && !p.redirect {
                            let article = strip_markup(&p.text);
                            if !article.is_empty() {
                                if !out.is_empty() {
                                    out.push('\n');
                                }
                                out.push_str(&article);
                            }
                        }
                    }
                    if out.len() >= max_bytes {
                        break;
                    }
                }
            }
            Event::Eof => {
                if depth > 0 {
                    return Err(CorpusError::Xml {
                        offset: xml.buffer_position(),
                        message: "unexpected end of document".into(),
                    });
                }
                break;
            }
            _ => {}
        }
        buf.clear();
    }
    truncate_at_boundary(&mut out, max_bytes);
    Ok(out)
}

/// Convenience wrapper for dump files on disk.
pub fn extract_wikidump_file(path: &Path, max_bytes: usize) -> Result<String, CorpusError> {
    let file = File::open(path).map_err(|source| CorpusError::Io { path: path.to_owned(), source })?;
    extract_wikidump(BufReader::new(file), max_bytes)
}
