//! Line-oriented table file format.
//!
//! ```text
//! version <string>
//! block <id> <began-hex> <end-hex> <zone> [alphabet=<id>] [mother=<id>] [offset=<n>] # <name>
//! byte2 <index-hex> <codepoint-hex>
//! ```
//!
//! Lines starting with `#` are comments. On block lines the text after `#`
//! is the block name.

use std::fmt::Write as _;

use super::{Block, Source, TableError, TableSet, Violation};
use crate::zone::Zone;

pub fn serialize_tables(tables: &TableSet) -> Vec<u8> {
    let mut out = String::new();
    out.push_str("# Duncode tables\n");
    let _ = writeln!(out, "version {}", tables.version());
    for b in tables.blocks() {
        let _ = write!(out, "block {} {:04X} {:04X} {}", b.id, b.began, b.end, b.zone);
        if let Some(a) = b.alphabet {
            let _ = write!(out, " alphabet={a}");
        }
        if let Some(m) = b.mother {
            let _ = write!(out, " mother={m} offset={}", b.offset);
        }
        let _ = writeln!(out, " # {}", b.name);
    }
    for (index, cp) in tables.byte2_entries() {
        let _ = writeln!(out, "byte2 {index:04X} {cp:04X}");
    }
    out.into_bytes()
}

pub fn parse_tables(bytes: &[u8]) -> Result<TableSet, TableError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        TableError::Parse { line, violation: Violation::Syntax("invalid UTF-8".into()) }
    })?;

    let mut version: Option<(String, usize)> = None;
    let mut blocks = Vec::new();
    let mut block_lines = Vec::new();
    let mut byte2 = Vec::new();
    let mut byte2_lines = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let syntax = |msg: String| TableError::Parse { line: line_no, violation: Violation::Syntax(msg) };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (content, comment) = match line.split_once('#') {
            Some((c, rest)) => (c, Some(rest.trim())),
            None => (line, None),
        };
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("version") => {
                if version.is_some() {
                    return Err(TableError::Parse { line: line_no, violation: Violation::DuplicateVersion });
                }
                let v = content.trim_start()["version".len()..].trim();
                if v.is_empty() {
                    return Err(syntax("empty version".into()));
                }
                version = Some((v.to_owned(), line_no));
            }
            Some("block") => {
                let mut field = |what: &str| tokens.next().ok_or_else(|| syntax(format!("block line missing {what}")));
                let id = field("id")?;
                let id = id.parse().map_err(|_| syntax(format!("bad block id {id:?}")))?;
                let began = parse_hex(field("start")?).ok_or_else(|| syntax("bad start".into()))?;
                let end = parse_hex(field("end")?).ok_or_else(|| syntax("bad end".into()))?;
                let zone: Zone = field("zone")?.parse().map_err(|e| syntax(format!("{e}")))?;
                let mut block = Block {
                    id,
                    began,
                    end,
                    name: comment.unwrap_or_default().to_owned(),
                    zone,
                    alphabet: None,
                    mother: None,
                    offset: 0,
                };
                for opt in tokens {
                    let (key, value) = opt.split_once('=').ok_or_else(|| syntax(format!("bad option {opt:?}")))?;
                    let bad = || syntax(format!("bad value in {opt:?}"));
                    match key {
                        "alphabet" => block.alphabet = Some(value.parse().map_err(|_| bad())?),
                        "mother" => block.mother = Some(value.parse().map_err(|_| bad())?),
                        "offset" => block.offset = value.parse().map_err(|_| bad())?,
                        _ => return Err(syntax(format!("unknown option {key:?}"))),
                    }
                }
                blocks.push(block);
                block_lines.push(line_no);
            }
            Some("byte2") => {
                let (Some(index), Some(cp), None) = (tokens.next(), tokens.next(), tokens.next()) else {
                    return Err(syntax("byte2 line needs an index and a code point".into()));
                };
                let index = parse_hex(index).ok_or_else(|| syntax(format!("bad index {index:?}")))?;
                let cp = parse_hex(cp).ok_or_else(|| syntax(format!("bad code point {cp:?}")))?;
                let index = u16::try_from(index).map_err(|_| TableError::Parse {
                    line: line_no,
                    violation: Violation::Byte2IndexOutOfRange(index),
                })?;
                byte2.push((index, cp));
                byte2_lines.push(line_no);
            }
            Some(other) => return Err(syntax(format!("unknown line type {other:?}"))),
            None => return Err(syntax("missing line type".into())),
        }
    }

    let Some((version, _)) = version else {
        return Err(TableError::Parse { line: 1, violation: Violation::MissingVersion });
    };
    TableSet::assemble(version, blocks, byte2).map_err(|(violation, source)| {
        let line = match source {
            Source::Block(i) => block_lines[i],
            Source::Byte2(i) => byte2_lines[i],
        };
        TableError::Parse { line, violation }
    })
}

fn parse_hex(s: &str) -> Option<u32> {
    let s = s.strip_prefix("0x").unwrap_or(s);
    if s.is_empty() || s.len() > 8 {
        return None;
    }
    u32::from_str_radix(s, 16).ok()
}
