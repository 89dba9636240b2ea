//! Streaming encoder.
//!
//! Each character is classified, then either joins the current run of its
//! alphabet or is written as a single-character unit. A run emits one 4-byte
//! unit per three letters. When a run ends early its leftovers go out as
//! byte2 or isolate units, except that two leftovers costing more than four
//! bytes apart share one padded unit.

use crate::tables::{Classification, InvalidScalar, TableSet};
use crate::unit::Unit;
use crate::zone::Zone;

#[derive(Clone, Copy, Debug)]
struct Pending {
    zone: Zone,
    alphabet: u8,
    letter: u8,
    cp: u32,
    byte2: Option<u16>,
}

impl Pending {
    fn single_cost(&self) -> usize {
        if self.byte2.is_some() {
            2
        } else {
            3
        }
    }
}

/// Incremental encoder over a shared [`TableSet`].
///
/// Output depends only on the sequence of characters pushed, never on how
/// the input was split between calls.
#[derive(Clone, Debug)]
pub struct Encoder<'t> {
    tables: &'t TableSet,
    pending: [Option<Pending>; 2],
}

impl<'t> Encoder<'t> {
    pub fn new(tables: &'t TableSet) -> Self {
        Encoder { tables, pending: [None, None] }
    }

    pub fn tables(&self) -> &'t TableSet {
        self.tables
    }

    /// Characters held back waiting for the rest of their run.
    pub fn pending_len(&self) -> usize {
        self.pending.iter().flatten().count()
    }

    pub fn push_scalar(&mut self, cp: u32, out: &mut Vec<u8>) -> Result<(), InvalidScalar> {
        let class = self.tables.classify(cp)?;
        self.push_classified(cp, class, out);
        Ok(())
    }

    pub fn push_char(&mut self, ch: char, out: &mut Vec<u8>) {
        if ch.is_ascii() {
            self.flush(out);
            out.push(ch as u8);
            return;
        }
        let class = self.tables.classify_char(ch);
        self.push_classified(ch as u32, class, out);
    }

    pub fn push_str(&mut self, text: &str, out: &mut Vec<u8>) {
        for ch in text.chars() {
            self.push_char(ch, out);
        }
    }

    fn push_classified(&mut self, cp: u32, class: Classification, out: &mut Vec<u8>) {
        if !class.is_compressible() {
            self.flush(out);
            write_single(cp, class.byte2_index, out);
            return;
        }
        let next = Pending {
            zone: class.zone,
            alphabet: class.alphabet.expect("alphabetic zones carry an alphabet id"),
            letter: class.letter_index as u8,
            cp,
            byte2: class.byte2_index,
        };
        match self.pending {
            [Some(first), _] if (first.zone, first.alphabet) != (next.zone, next.alphabet) => {
                self.flush(out);
                self.pending[0] = Some(next);
            }
            [Some(first), Some(second)] => {
                let letters = [first.letter, second.letter, next.letter];
                write_unit(next.zone, next.alphabet, letters, out);
                self.pending = [None, None];
            }
            [Some(_), None] => self.pending[1] = Some(next),
            [None, _] => self.pending[0] = Some(next),
        }
    }

    /// Drains any held-back letters.
    pub fn flush(&mut self, out: &mut Vec<u8>) {
        match std::mem::take(&mut self.pending) {
            [None, _] => {}
            [Some(only), None] => write_single(only.cp, only.byte2, out),
            [Some(a), Some(b)] => {
                if a.single_cost() + b.single_cost() > 4 {
                    let pad = a.zone.pad().expect("alphabetic zone");
                    write_unit(a.zone, a.alphabet, [a.letter, b.letter, pad], out);
                } else {
                    write_single(a.cp, a.byte2, out);
                    write_single(b.cp, b.byte2, out);
                }
            }
        }
    }
}

fn write_single(cp: u32, byte2: Option<u16>, out: &mut Vec<u8>) {
    let unit = if cp < 0x80 {
        Unit::Ascii(cp as u8)
    } else if let Some(index) = byte2 {
        Unit::Byte2(index)
    } else {
        Unit::Isolate(cp)
    };
    out.extend_from_slice(&unit.pack_unchecked());
}

fn write_unit(zone: Zone, alphabet: u8, slots: [u8; 3], out: &mut Vec<u8>) {
    let unit = match zone {
        Zone::Bit8 => Unit::Bit8 { alphabet, slots },
        _ => Unit::Bit7 { alphabet, slots },
    };
    out.extend_from_slice(&unit.pack_unchecked());
}

/// Encodes a whole string.
pub fn encode_str(text: &str, tables: &TableSet) -> Vec<u8> {
    let mut out = Vec::with_capacity(text.len());
    encode_into(text, tables, &mut out);
    out
}

/// Appends the encoding of `text` to `out`.
pub fn encode_into(text: &str, tables: &TableSet, out: &mut Vec<u8>) {
    let mut enc = Encoder::new(tables);
    enc.push_str(text, out);
    enc.flush(out);
}

/// Encodes raw scalar values, rejecting surrogates and values above
/// U+10FFFF.
pub fn encode_scalars(scalars: &[u32], tables: &TableSet) -> Result<Vec<u8>, InvalidScalar> {
    let mut out = Vec::with_capacity(scalars.len() * 2);
    let mut enc = Encoder::new(tables);
    for &cp in scalars {
        enc.push_scalar(cp, &mut out)?;
    }
    enc.flush(&mut out);
    Ok(out)
}
