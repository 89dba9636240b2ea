//! Decoding: split on tail bytes, unpack each unit, map letters back to
//! characters.
//!
//! Units are delimited by their tail byte alone, so a reader can start at
//! any offset with [`resync`] and damage never spreads past the unit it hit
//! (plus the next one, when the damaged bit was a tail flag).

use std::fmt;

use crate::encoder::encode_str;
use crate::tables::TableSet;
use crate::unit::{unpack_unit, Unit, UnitError, MAX_UNIT_LEN};
use crate::zone::Zone;

pub const REPLACEMENT: char = '\u{FFFD}';

/// What to do with a malformed unit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ErrorPolicy {
    /// Stop and report the byte offset.
    Strict,
    /// Emit one U+FFFD per malformed unit and carry on.
    #[default]
    Replace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DecodeErrorKind {
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error("stream ends inside a unit")]
    Truncated(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at offset {offset}")]
pub struct DecodeError {
    /// Offset of the first byte of the offending unit.
    pub offset: usize,
    pub kind: DecodeErrorKind,
}

/// Up to three characters decoded from one unit.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct UnitChars {
    chars: [char; 3],
    len: u8,
}

impl UnitChars {
    fn one(c: char) -> Self {
        UnitChars { chars: [c, '\0', '\0'], len: 1 }
    }

    pub fn as_slice(&self) -> &[char] {
        &self.chars[..self.len as usize]
    }
}

impl fmt::Debug for UnitChars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl fmt::Display for UnitChars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_slice().iter().try_for_each(|c| fmt::Write::write_char(f, *c))
    }
}

/// Splits `bytes` after every tail byte. Returns the complete units and the
/// unterminated remainder. Slices longer than four bytes are returned as-is;
/// they fail in [`decode_unit`].
pub fn segment(bytes: &[u8]) -> (Vec<&[u8]>, &[u8]) {
    let mut units = Vec::new();
    let mut rest = bytes;
    while let Some(pos) = rest.iter().position(|&b| b < 0x80) {
        let (unit, tail) = rest.split_at(pos + 1);
        units.push(unit);
        rest = tail;
    }
    (units, rest)
}

/// Index one past the first tail byte at or after `start`, or the end of
/// the stream.
pub fn resync(bytes: &[u8], start: usize) -> usize {
    let start = start.min(bytes.len());
    match bytes[start..].iter().position(|&b| b < 0x80) {
        Some(pos) => start + pos + 1,
        None => bytes.len(),
    }
}

/// Maps an unpacked unit to its characters.
pub fn unit_chars(unit: &Unit, tables: &TableSet) -> Result<UnitChars, UnitError> {
    match *unit {
        Unit::Ascii(b) => Ok(UnitChars::one(b as char)),
        Unit::Byte2(index) => {
            let cp = tables.byte2_char(index).ok_or(UnitError::UnmappedByte2(index))?;
            Ok(UnitChars::one(char::from_u32(cp).expect("byte2 map holds scalar values")))
        }
        Unit::Isolate(cp) => char::from_u32(cp).map(UnitChars::one).ok_or(UnitError::InvalidScalar(cp)),
        Unit::Bit8 { alphabet, .. } | Unit::Bit7 { alphabet, .. } => {
            let zone = unit.zone();
            let letters = unit.letters();
            let mut chars = ['\0'; 3];
            for (slot, &letter) in chars.iter_mut().zip(letters) {
                *slot = tables.lookup_letter(zone, alphabet, letter as u32)?;
            }
            Ok(UnitChars { chars, len: letters.len() as u8 })
        }
    }
}

/// Decodes one complete unit. Under [`ErrorPolicy::Replace`] a malformed
/// unit yields a single U+FFFD instead of an error.
pub fn decode_unit(bytes: &[u8], tables: &TableSet, policy: ErrorPolicy) -> Result<UnitChars, UnitError> {
    let result = unpack_unit(bytes).and_then(|u| unit_chars(&u, tables));
    match (result, policy) {
        (Err(_), ErrorPolicy::Replace) => Ok(UnitChars::one(REPLACEMENT)),
        (r, _) => r,
    }
}

/// Incremental decoder. Feed bytes in any chunking; the output is the same
/// as decoding the concatenation in one call.
#[derive(Clone, Debug)]
pub struct Decoder<'t> {
    tables: &'t TableSet,
    policy: ErrorPolicy,
    /// Non-tail bytes of the unit in progress (at most three are kept).
    carry: [u8; MAX_UNIT_LEN],
    /// Bytes of the unit in progress, including any beyond `carry`.
    carry_len: usize,
    /// Stream offset of the unit in progress.
    unit_start: usize,
    consumed: usize,
}

impl<'t> Decoder<'t> {
    pub fn new(tables: &'t TableSet, policy: ErrorPolicy) -> Self {
        Self::with_offset(tables, policy, 0)
    }

    /// A decoder whose error offsets start at `base`.
    pub fn with_offset(tables: &'t TableSet, policy: ErrorPolicy, base: usize) -> Self {
        Decoder { tables, policy, carry: [0; MAX_UNIT_LEN], carry_len: 0, unit_start: base, consumed: base }
    }

    pub fn policy(&self) -> ErrorPolicy {
        self.policy
    }

    /// Bytes consumed so far, including the base offset.
    pub fn position(&self) -> usize {
        self.consumed
    }

    /// Decodes as much of `bytes` as forms complete units. In strict mode
    /// the first malformed unit stops decoding: everything before it is in
    /// `out` and [`position`](Self::position) points just past it.
    pub fn feed(&mut self, bytes: &[u8], out: &mut String) -> Result<(), DecodeError> {
        let mut i = 0;
        while i < bytes.len() {
            if self.carry_len == 0 {
                // Fast path over whole units inside this chunk.
                match bytes[i..].iter().position(|&b| b < 0x80) {
                    Some(pos) => {
                        let unit = &bytes[i..i + pos + 1];
                        self.unit_start = self.consumed;
                        self.consumed += unit.len();
                        i += unit.len();
                        if let [b] = unit {
                            out.push(*b as char);
                        } else {
                            self.emit(unit, unit.len(), out)?;
                        }
                    }
                    None => {
                        self.unit_start = self.consumed;
                        for &b in &bytes[i..] {
                            self.stash(b);
                        }
                        self.consumed += bytes.len() - i;
                        i = bytes.len();
                    }
                }
            } else {
                let b = bytes[i];
                i += 1;
                self.consumed += 1;
                if b >= 0x80 {
                    self.stash(b);
                    continue;
                }
                let total = self.carry_len + 1;
                let kept = self.carry_len.min(MAX_UNIT_LEN - 1);
                let mut buf = [0u8; MAX_UNIT_LEN];
                buf[..kept].copy_from_slice(&self.carry[..kept]);
                buf[kept] = b;
                self.carry_len = 0;
                self.emit(&buf[..kept + 1], total, out)?;
            }
        }
        Ok(())
    }

    /// Ends the stream. A dangling partial unit is malformed.
    pub fn finish(&mut self, out: &mut String) -> Result<(), DecodeError> {
        if self.carry_len == 0 {
            return Ok(());
        }
        let len = self.carry_len;
        self.carry_len = 0;
        match self.policy {
            ErrorPolicy::Replace => {
                out.push(REPLACEMENT);
                Ok(())
            }
            ErrorPolicy::Strict => Err(DecodeError { offset: self.unit_start, kind: DecodeErrorKind::Truncated(len) }),
        }
    }

    fn stash(&mut self, b: u8) {
        if self.carry_len < MAX_UNIT_LEN - 1 {
            self.carry[self.carry_len] = b;
        }
        self.carry_len += 1;
    }

    /// `unit` holds the unit bytes when `total <= 4`; longer units are
    /// reported by length alone.
    fn emit(&mut self, unit: &[u8], total: usize, out: &mut String) -> Result<(), DecodeError> {
        let result = if total > MAX_UNIT_LEN {
            Err(UnitError::TooLong(total))
        } else {
            unpack_unit(unit).and_then(|u| unit_chars(&u, self.tables))
        };
        match result {
            Ok(chars) => {
                out.extend(chars.as_slice());
                Ok(())
            }
            Err(_) if self.policy == ErrorPolicy::Replace => {
                out.push(REPLACEMENT);
                Ok(())
            }
            Err(e) => Err(DecodeError { offset: self.unit_start, kind: e.into() }),
        }
    }
}

/// One-shot decode.
pub fn decode_bytes(bytes: &[u8], tables: &TableSet, policy: ErrorPolicy) -> Result<String, DecodeError> {
    let mut out = String::with_capacity(bytes.len());
    let mut dec = Decoder::new(tables, policy);
    dec.feed(bytes, &mut out)?;
    dec.finish(&mut out)?;
    Ok(out)
}

/// Decodes with [`ErrorPolicy::Replace`], which cannot fail.
pub fn decode_lossy(bytes: &[u8], tables: &TableSet) -> String {
    decode_bytes(bytes, tables, ErrorPolicy::Replace).expect("replace policy never fails")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CanonicalError {
    #[error(transparent)]
    Malformed(#[from] DecodeError),
    #[error("non-canonical unit at offset {offset}")]
    NonCanonical { offset: usize },
}

/// Checks that `bytes` is exactly what the encoder would produce for its
/// own decoding. Well-formed but non-canonical streams decode fine; this is
/// the stricter validation.
pub fn check_canonical(bytes: &[u8], tables: &TableSet) -> Result<(), CanonicalError> {
    let text = decode_bytes(bytes, tables, ErrorPolicy::Strict)?;
    let canonical = encode_str(&text, tables);
    if canonical == bytes {
        return Ok(());
    }
    let diff = bytes.iter().zip(&canonical).position(|(a, b)| a != b).unwrap_or(bytes.len().min(canonical.len()));
    let offset = bytes[..diff.min(bytes.len())].iter().rposition(|&b| b < 0x80).map_or(0, |p| p + 1);
    Err(CanonicalError::NonCanonical { offset })
}

/// A unit located in a stream, for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitReport {
    pub offset: usize,
    pub len: usize,
    pub unit: Result<Unit, DecodeErrorKind>,
    pub chars: Option<UnitChars>,
}

impl UnitReport {
    pub fn zone(&self) -> Option<Zone> {
        self.unit.as_ref().ok().map(Unit::zone)
    }
}

/// Walks every unit of a stream, malformed ones included.
pub fn inspect(bytes: &[u8], tables: &TableSet) -> Vec<UnitReport> {
    let (units, carry) = segment(bytes);
    let mut offset = 0;
    let mut reports = Vec::with_capacity(units.len() + 1);
    for unit_bytes in units {
        let unit = unpack_unit(unit_bytes).map_err(DecodeErrorKind::Unit);
        let (unit, chars) = match unit {
            Ok(u) => match unit_chars(&u, tables) {
                Ok(c) => (Ok(u), Some(c)),
                Err(e) => (Err(DecodeErrorKind::Unit(e)), None),
            },
            Err(e) => (Err(e), None),
        };
        reports.push(UnitReport { offset, len: unit_bytes.len(), unit, chars });
        offset += unit_bytes.len();
    }
    if !carry.is_empty() {
        reports.push(UnitReport {
            offset,
            len: carry.len(),
            unit: Err(DecodeErrorKind::Truncated(carry.len())),
            chars: None,
        });
    }
    reports
}
