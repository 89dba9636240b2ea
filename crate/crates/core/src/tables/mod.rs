//! Block registry, alphabet ids and the byte2 map.
//!
//! A [`TableSet`] answers two questions: which zone and alphabet a code
//! point belongs to ([`TableSet::classify`]), and which code point a letter
//! of an alphabet stands for ([`TableSet::lookup_letter`]). It is immutable
//! once built and can be shared freely between threads.

mod default;
mod format;

use std::collections::HashMap;
use std::fmt;

pub use default::{build_default_tables, build_tables, default_tables, DEFAULT_VERSION};
pub use format::{parse_tables, serialize_tables};

use crate::unit::UnitError;
use crate::zone::{is_scalar, Zone, BYTE2_CAPACITY, MAX_SCALAR};

pub type BlockId = u16;

/// Marker for an empty slot of the reverse byte2 map.
pub const UNASSIGNED: u32 = u32::MAX;

const NO_BYTE2: u16 = u16::MAX;

/// A contiguous code point range with its zone and, for alphabetic zones,
/// the alphabet it contributes letters to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub id: BlockId,
    pub began: u32,
    pub end: u32,
    pub name: String,
    pub zone: Zone,
    pub alphabet: Option<u8>,
    /// Set on child blocks that extend another block's alphabet.
    pub mother: Option<BlockId>,
    /// First letter index of this block within its alphabet. Zero for
    /// mother blocks.
    pub offset: u32,
}

impl Block {
    pub fn size(&self) -> u32 {
        self.end - self.began + 1
    }

    pub fn contains(&self, cp: u32) -> bool {
        (self.began..=self.end).contains(&cp)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub zone: Zone,
    pub block: Option<BlockId>,
    pub alphabet: Option<u8>,
    /// Position within the alphabet for bit7/bit8 (and block-relative for
    /// byte2 blocks); the code point itself for ascii and isolate.
    pub letter_index: u32,
    pub byte2_index: Option<u16>,
}

impl Classification {
    /// Whether the character may join a multi-letter unit. Letters that
    /// collide with the zone's pad sentinel never do.
    pub fn is_compressible(&self) -> bool {
        match self.zone.pad() {
            Some(pad) => self.letter_index < pad as u32,
            None => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("{0:#X} is not a Unicode scalar value")]
pub struct InvalidScalar(pub u32);

/// A broken table invariant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("{0}")]
    Syntax(String),
    #[error("missing version line")]
    MissingVersion,
    #[error("duplicate version line")]
    DuplicateVersion,
    #[error("invalid range {began:04X}..{end:04X}")]
    BadRange { began: u32, end: u32 },
    #[error("overlapping ranges: block {first} and block {second}")]
    OverlappingRanges { first: BlockId, second: BlockId },
    #[error("duplicate block id {0}")]
    DuplicateBlockId(BlockId),
    #[error("{zone} block {block} needs an alphabet id")]
    MissingAlphabet { zone: Zone, block: BlockId },
    #[error("{zone} block {block} cannot carry an alphabet id")]
    UnexpectedAlphabet { zone: Zone, block: BlockId },
    #[error("{zone} alphabet id {alphabet} out of range (zone holds {count})")]
    AlphabetOutOfRange { zone: Zone, alphabet: u8, count: usize },
    #[error("{zone} alphabet {alphabet} has two mother blocks")]
    DuplicateAlphabet { zone: Zone, alphabet: u8 },
    #[error("block {block} names unknown mother {mother}")]
    UnknownMother { block: BlockId, mother: BlockId },
    #[error("block {block} does not share zone and alphabet with mother {mother}")]
    MotherMismatch { block: BlockId, mother: BlockId },
    #[error("mother block {0} must have offset 0")]
    MotherOffset(BlockId),
    #[error("capacity overflow: {zone} alphabet {alphabet} needs {needed} letters, zone allows {allowed}")]
    CapacityOverflow { zone: Zone, alphabet: u8, needed: u32, allowed: u32 },
    #[error("letter indexes of block {0} overlap another block of the same alphabet")]
    LetterOverlap(BlockId),
    #[error("byte2 index {0:#06X} out of range")]
    Byte2IndexOutOfRange(u32),
    #[error("byte2 index {0:#06X} assigned twice")]
    Byte2DuplicateIndex(u16),
    #[error("code point {0:04X} mapped to two byte2 indexes")]
    Byte2DuplicateCodePoint(u32),
    #[error("code point {0:04X} cannot be byte2-mapped")]
    Byte2InvalidCodePoint(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("line {line}: {violation}")]
    Parse { line: usize, violation: Violation },
    #[error(transparent)]
    Invalid(#[from] Violation),
    #[error("resource {name}: {reason}")]
    Resource { name: &'static str, reason: String },
}

/// Which input item a violation was found on.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Source {
    Block(usize),
    Byte2(usize),
}

#[derive(Clone, Debug)]
struct Segment {
    offset: u32,
    began: u32,
    len: u32,
}

#[derive(Clone, Debug)]
struct Alphabet {
    /// Sorted by offset.
    segments: Vec<Segment>,
}

/// Immutable registry of blocks, alphabets and the byte2 map.
#[derive(Clone)]
pub struct TableSet {
    version: String,
    blocks: Vec<Block>,
    byte2_forward: HashMap<u32, u16>,
    byte2_reverse: Vec<u32>,
    bmp_byte2: Box<[u16]>,
    bit8: Vec<Option<Alphabet>>,
    bit7: Vec<Option<Alphabet>>,
}

impl PartialEq for TableSet {
    fn eq(&self, other: &Self) -> bool {
        self.version == other.version && self.blocks == other.blocks && self.byte2_reverse == other.byte2_reverse
    }
}

impl Eq for TableSet {}

impl fmt::Debug for TableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TableSet")
            .field("version", &self.version)
            .field("blocks", &self.blocks.len())
            .field("byte2", &self.byte2_forward.len())
            .finish()
    }
}

impl TableSet {
    /// Validates and assembles a table set. `byte2` pairs are
    /// `(index, code point)`.
    pub fn new(version: impl Into<String>, blocks: Vec<Block>, byte2: Vec<(u16, u32)>) -> Result<TableSet, TableError> {
        Self::assemble(version.into(), blocks, byte2).map_err(|(v, _)| TableError::Invalid(v))
    }

    pub(crate) fn assemble(
        version: String,
        blocks: Vec<Block>,
        byte2: Vec<(u16, u32)>,
    ) -> Result<TableSet, (Violation, Source)> {
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by_key(|&i| (blocks[i].began, blocks[i].end));

        let mut seen_ids = HashMap::new();
        for &i in &order {
            let b = &blocks[i];
            if b.began > b.end || b.end > MAX_SCALAR {
                return Err((Violation::BadRange { began: b.began, end: b.end }, Source::Block(i)));
            }
            if seen_ids.insert(b.id, i).is_some() {
                return Err((Violation::DuplicateBlockId(b.id), Source::Block(i)));
            }
            match (b.zone.is_alphabetic(), b.alphabet) {
                (true, None) => {
                    return Err((Violation::MissingAlphabet { zone: b.zone, block: b.id }, Source::Block(i)))
                }
                (false, Some(_)) => {
                    return Err((Violation::UnexpectedAlphabet { zone: b.zone, block: b.id }, Source::Block(i)))
                }
                (true, Some(a)) if a as usize >= b.zone.alphabet_count() => {
                    let v = Violation::AlphabetOutOfRange { zone: b.zone, alphabet: a, count: b.zone.alphabet_count() };
                    return Err((v, Source::Block(i)));
                }
                _ => {}
            }
        }
        for pair in order.windows(2) {
            let (a, b) = (&blocks[pair[0]], &blocks[pair[1]]);
            if b.began <= a.end {
                let v = Violation::OverlappingRanges { first: a.id, second: b.id };
                return Err((v, Source::Block(pair[1])));
            }
        }

        let mut bit8: Vec<Option<Alphabet>> = vec![None; Zone::Bit8.alphabet_count()];
        let mut bit7: Vec<Option<Alphabet>> = vec![None; Zone::Bit7.alphabet_count()];
        // Mothers first, so children can attach in any order.
        for &i in &order {
            let b = &blocks[i];
            let Some(alphabet) = b.alphabet else {
                if b.mother.is_some() {
                    let v = Violation::UnexpectedAlphabet { zone: b.zone, block: b.id };
                    return Err((v, Source::Block(i)));
                }
                continue;
            };
            if b.mother.is_some() {
                continue;
            }
            if b.offset != 0 {
                return Err((Violation::MotherOffset(b.id), Source::Block(i)));
            }
            let slot = match b.zone {
                Zone::Bit8 => &mut bit8[alphabet as usize],
                _ => &mut bit7[alphabet as usize],
            };
            if slot.is_some() {
                return Err((Violation::DuplicateAlphabet { zone: b.zone, alphabet }, Source::Block(i)));
            }
            *slot = Some(Alphabet { segments: vec![Segment { offset: 0, began: b.began, len: b.size() }] });
        }
        for &i in &order {
            let b = &blocks[i];
            let (Some(mother_id), Some(alphabet)) = (b.mother, b.alphabet) else {
                continue;
            };
            let Some(&m) = seen_ids.get(&mother_id) else {
                return Err((Violation::UnknownMother { block: b.id, mother: mother_id }, Source::Block(i)));
            };
            let mother = &blocks[m];
            if mother.mother.is_some() || mother.zone != b.zone || mother.alphabet != b.alphabet {
                return Err((Violation::MotherMismatch { block: b.id, mother: mother_id }, Source::Block(i)));
            }
            let table = match b.zone {
                Zone::Bit8 => &mut bit8,
                _ => &mut bit7,
            };
            let alpha = table[alphabet as usize].as_mut().expect("mother registered above");
            alpha.segments.push(Segment { offset: b.offset, began: b.began, len: b.size() });
        }
        for (zone, table) in [(Zone::Bit8, &mut bit8), (Zone::Bit7, &mut bit7)] {
            for (alphabet, slot) in table.iter_mut().enumerate() {
                let Some(alpha) = slot else { continue };
                alpha.segments.sort_by_key(|s| s.offset);
                let mut next_free = 0;
                for seg in &alpha.segments {
                    let block = order
                        .iter()
                        .copied()
                        .find(|&i| blocks[i].began == seg.began)
                        .expect("segment comes from a block");
                    if seg.offset < next_free {
                        return Err((Violation::LetterOverlap(blocks[block].id), Source::Block(block)));
                    }
                    next_free = seg.offset + seg.len;
                    if next_free > zone.letter_slots() {
                        let v = Violation::CapacityOverflow {
                            zone,
                            alphabet: alphabet as u8,
                            needed: next_free,
                            allowed: zone.letter_slots(),
                        };
                        return Err((v, Source::Block(block)));
                    }
                }
            }
        }

        let mut byte2_reverse = vec![UNASSIGNED; BYTE2_CAPACITY];
        let mut byte2_forward = HashMap::with_capacity(byte2.len());
        let mut bmp_byte2 = vec![NO_BYTE2; 0x10000].into_boxed_slice();
        for (i, &(index, cp)) in byte2.iter().enumerate() {
            if index as usize >= BYTE2_CAPACITY {
                return Err((Violation::Byte2IndexOutOfRange(index as u32), Source::Byte2(i)));
            }
            if cp < 0x80 || !is_scalar(cp) {
                return Err((Violation::Byte2InvalidCodePoint(cp), Source::Byte2(i)));
            }
            if byte2_reverse[index as usize] != UNASSIGNED {
                return Err((Violation::Byte2DuplicateIndex(index), Source::Byte2(i)));
            }
            if byte2_forward.insert(cp, index).is_some() {
                return Err((Violation::Byte2DuplicateCodePoint(cp), Source::Byte2(i)));
            }
            byte2_reverse[index as usize] = cp;
            if cp < 0x10000 {
                bmp_byte2[cp as usize] = index;
            }
        }

        let blocks = order.into_iter().map(|i| blocks[i].clone()).collect();
        Ok(TableSet { version, blocks, byte2_forward, byte2_reverse, bmp_byte2, bit8, bit7 })
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    /// Blocks in ascending code point order.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, id: BlockId) -> Option<&Block> {
        self.blocks.iter().find(|b| b.id == id)
    }

    pub fn block_by_name(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn block_containing(&self, cp: u32) -> Option<&Block> {
        let idx = self.blocks.partition_point(|b| b.began <= cp);
        let b = self.blocks.get(idx.checked_sub(1)?)?;
        b.contains(cp).then_some(b)
    }

    pub fn byte2_len(&self) -> usize {
        self.byte2_forward.len()
    }

    pub fn byte2_index(&self, cp: u32) -> Option<u16> {
        if cp < 0x10000 {
            let idx = self.bmp_byte2[cp as usize];
            (idx != NO_BYTE2).then_some(idx)
        } else {
            self.byte2_forward.get(&cp).copied()
        }
    }

    pub fn byte2_char(&self, index: u16) -> Option<u32> {
        match self.byte2_reverse.get(index as usize) {
            Some(&cp) if cp != UNASSIGNED => Some(cp),
            _ => None,
        }
    }

    /// `(index, code point)` pairs in index order.
    pub fn byte2_entries(&self) -> impl Iterator<Item = (u16, u32)> + '_ {
        self.byte2_reverse.iter().enumerate().filter(|(_, &cp)| cp != UNASSIGNED).map(|(i, &cp)| (i as u16, cp))
    }

    /// Number of letter slots in use by an alphabet, gaps included.
    pub fn alphabet_len(&self, zone: Zone, alphabet: u8) -> Option<u32> {
        let alpha = self.alphabet(zone, alphabet)?;
        alpha.segments.last().map(|s| s.offset + s.len)
    }

    fn alphabet(&self, zone: Zone, alphabet: u8) -> Option<&Alphabet> {
        let table = match zone {
            Zone::Bit8 => &self.bit8,
            Zone::Bit7 => &self.bit7,
            _ => return None,
        };
        table.get(alphabet as usize)?.as_ref()
    }

    pub fn classify(&self, cp: u32) -> Result<Classification, InvalidScalar> {
        if !is_scalar(cp) {
            return Err(InvalidScalar(cp));
        }
        Ok(self.classify_scalar(cp))
    }

    pub fn classify_char(&self, ch: char) -> Classification {
        self.classify_scalar(ch as u32)
    }

    fn classify_scalar(&self, cp: u32) -> Classification {
        if cp < 0x80 {
            return Classification {
                zone: Zone::Ascii,
                block: self.block_containing(cp).map(|b| b.id),
                alphabet: None,
                letter_index: cp,
                byte2_index: None,
            };
        }
        let byte2_index = self.byte2_index(cp);
        match self.block_containing(cp) {
            Some(b) => {
                let letter_index = match b.zone {
                    Zone::Ascii | Zone::Isolate => cp,
                    _ => cp - b.began + b.offset,
                };
                Classification { zone: b.zone, block: Some(b.id), alphabet: b.alphabet, letter_index, byte2_index }
            }
            None => Classification { zone: Zone::Isolate, block: None, alphabet: None, letter_index: cp, byte2_index },
        }
    }

    /// Inverse of [`classify`](Self::classify) for alphabetic zones.
    pub fn lookup_letter(&self, zone: Zone, alphabet: u8, letter_index: u32) -> Result<char, UnitError> {
        let Some(pad) = zone.pad() else {
            return Err(UnitError::UnknownAlphabet { zone, alphabet });
        };
        let alpha = self.alphabet(zone, alphabet).ok_or(UnitError::UnknownAlphabet { zone, alphabet })?;
        let out_of_range = UnitError::LetterOutOfRange { zone, alphabet, index: letter_index };
        if letter_index >= pad as u32 {
            return Err(out_of_range);
        }
        let i = alpha.segments.partition_point(|s| s.offset <= letter_index);
        let seg = &alpha.segments[i.checked_sub(1).ok_or(out_of_range)?];
        if letter_index >= seg.offset + seg.len {
            return Err(out_of_range);
        }
        char::from_u32(seg.began + (letter_index - seg.offset)).ok_or(out_of_range)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(id: BlockId, began: u32, end: u32, zone: Zone, alphabet: Option<u8>) -> Block {
        Block { id, began, end, name: format!("b{id}"), zone, alphabet, mother: None, offset: 0 }
    }

    fn child(id: BlockId, began: u32, end: u32, zone: Zone, alphabet: u8, mother: BlockId, offset: u32) -> Block {
        Block { id, began, end, name: format!("c{id}"), zone, alphabet: Some(alphabet), mother: Some(mother), offset }
    }

    fn small() -> TableSet {
        TableSet::new(
            "test",
            vec![
                block(0, 0x00, 0x7F, Zone::Ascii, None),
                block(1, 0x100, 0x16F, Zone::Bit7, Some(3)),
                block(2, 0x200, 0x2FF, Zone::Bit8, Some(1)),
                child(3, 0x1000, 0x100F, Zone::Bit7, 3, 1, 0x80 - 0x10),
                block(4, 0x3000, 0x3FFF, Zone::Isolate, None),
            ],
            vec![(0, 0x80), (1, 0x101)],
        )
        .unwrap()
    }

    #[test]
    fn classify_zones() {
        let t = small();
        let c = t.classify(0x41).unwrap();
        assert_eq!((c.zone, c.letter_index, c.byte2_index), (Zone::Ascii, 0x41, None));

        let c = t.classify(0x101).unwrap();
        assert_eq!(c.zone, Zone::Bit7);
        assert_eq!((c.alphabet, c.letter_index, c.byte2_index), (Some(3), 1, Some(1)));
        assert!(c.is_compressible());

        let c = t.classify(0x1005).unwrap();
        assert_eq!((c.zone, c.alphabet, c.letter_index), (Zone::Bit7, Some(3), 0x75));

        // The last child letter lands on the pad sentinel.
        let c = t.classify(0x100F).unwrap();
        assert_eq!(c.letter_index, 0x7F);
        assert!(!c.is_compressible());

        let c = t.classify(0x2FF).unwrap();
        assert_eq!((c.zone, c.letter_index), (Zone::Bit8, 0xFF));
        assert!(!c.is_compressible());

        let c = t.classify(0x3005).unwrap();
        assert_eq!((c.zone, c.block, c.letter_index), (Zone::Isolate, Some(4), 0x3005));

        let c = t.classify(0x5000).unwrap();
        assert_eq!((c.zone, c.block, c.letter_index), (Zone::Isolate, None, 0x5000));

        assert_eq!(t.classify(0xD800), Err(InvalidScalar(0xD800)));
        assert_eq!(t.classify(0x110000), Err(InvalidScalar(0x110000)));
    }

    #[test]
    fn lookup_inverts_classify() {
        let t = small();
        assert_eq!(t.lookup_letter(Zone::Bit7, 3, 1).unwrap(), '\u{101}');
        assert_eq!(t.lookup_letter(Zone::Bit7, 3, 0x75).unwrap(), '\u{1005}');
        assert_eq!(t.lookup_letter(Zone::Bit8, 1, 0).unwrap(), '\u{200}');
        assert!(matches!(t.lookup_letter(Zone::Bit7, 3, 0x7F), Err(UnitError::LetterOutOfRange { .. })));
        assert!(matches!(t.lookup_letter(Zone::Bit8, 1, 0xFF), Err(UnitError::LetterOutOfRange { .. })));
        assert!(matches!(t.lookup_letter(Zone::Bit7, 4, 0), Err(UnitError::UnknownAlphabet { .. })));
        assert!(matches!(t.lookup_letter(Zone::Isolate, 0, 0), Err(UnitError::UnknownAlphabet { .. })));
    }

    #[test]
    fn byte2_is_bijective() {
        let t = small();
        for (idx, cp) in t.byte2_entries() {
            assert_eq!(t.byte2_index(cp), Some(idx));
            assert_eq!(t.byte2_char(idx), Some(cp));
        }
        assert_eq!(t.byte2_char(2), None);
        assert_eq!(t.byte2_len(), 2);
    }

    #[test]
    fn rejects_overlap() {
        let err = TableSet::new(
            "t",
            vec![block(0, 0x100, 0x17F, Zone::Isolate, None), block(1, 0x170, 0x1FF, Zone::Isolate, None)],
            vec![],
        )
        .unwrap_err();
        assert!(err.to_string().contains("overlapping ranges"), "{err}");
    }

    #[test]
    fn rejects_capacity_and_alphabet_errors() {
        let err = TableSet::new("t", vec![block(0, 0x100, 0x180, Zone::Bit7, Some(0))], vec![]).unwrap_err();
        assert!(matches!(err, TableError::Invalid(Violation::CapacityOverflow { needed: 129, allowed: 128, .. })));

        let err = TableSet::new("t", vec![block(0, 0x100, 0x17F, Zone::Bit8, Some(4))], vec![]).unwrap_err();
        assert!(matches!(err, TableError::Invalid(Violation::AlphabetOutOfRange { alphabet: 4, .. })));

        let err = TableSet::new("t", vec![block(0, 0x100, 0x17F, Zone::Bit7, None)], vec![]).unwrap_err();
        assert!(matches!(err, TableError::Invalid(Violation::MissingAlphabet { .. })));

        let err = TableSet::new("t", vec![block(0, 0x100, 0x17F, Zone::Byte2, Some(0))], vec![]).unwrap_err();
        assert!(matches!(err, TableError::Invalid(Violation::UnexpectedAlphabet { .. })));

        let err = TableSet::new(
            "t",
            vec![block(0, 0x100, 0x13F, Zone::Bit7, Some(0)), block(1, 0x200, 0x23F, Zone::Bit7, Some(0))],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, TableError::Invalid(Violation::DuplicateAlphabet { .. })));

        let err = TableSet::new(
            "t",
            vec![block(0, 0x100, 0x13F, Zone::Bit7, Some(0)), child(1, 0x200, 0x23F, Zone::Bit7, 0, 0, 0x20)],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, TableError::Invalid(Violation::LetterOverlap(1))));

        let err = TableSet::new(
            "t",
            vec![block(0, 0x100, 0x13F, Zone::Bit7, Some(0)), child(1, 0x200, 0x23F, Zone::Bit7, 1, 0, 0x40)],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, TableError::Invalid(Violation::MotherMismatch { .. })));
    }

    #[test]
    fn rejects_bad_byte2() {
        let err = TableSet::new("t", vec![], vec![(0, 0x80), (0, 0x81)]).unwrap_err();
        assert_eq!(err, TableError::Invalid(Violation::Byte2DuplicateIndex(0)));
        let err = TableSet::new("t", vec![], vec![(0, 0x80), (1, 0x80)]).unwrap_err();
        assert_eq!(err, TableError::Invalid(Violation::Byte2DuplicateCodePoint(0x80)));
        let err = TableSet::new("t", vec![], vec![(0, 0x41)]).unwrap_err();
        assert_eq!(err, TableError::Invalid(Violation::Byte2InvalidCodePoint(0x41)));
        let err = TableSet::new("t", vec![], vec![(0x4000, 0x80)]).unwrap_err();
        assert_eq!(err, TableError::Invalid(Violation::Byte2IndexOutOfRange(0x4000)));
    }
}
