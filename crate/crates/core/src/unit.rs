//! Bit-exact packing of single Duncode units.
//!
//! Every unit ends in a tail byte (`0xxxxxxx`); all bytes before it have the
//! high bit set. The zone is recovered from the unit length, and for 4-byte
//! units from the `111` prefix that marks bit8:
//!
//! ```text
//! ascii    0xxxxxxx
//! byte2    1xxxxxxx 0xxxxxxx
//! isolate  1xxxxxxx 1xxxxxxx 0xxxxxxx
//! bit8     111nnxxx 1xxxxxyy 1yyyyyyz 0zzzzzzz
//! bit7     1nnnnnnn 1xxxxxxx 1yyyyyyy 0zzzzzzz
//! ```
//!
//! Nothing in this module consults the tables: a unit is just bits.

use std::fmt;
use std::ops::Deref;

use crate::zone::{is_scalar, Zone, BIT7_ALPHABETS, BIT7_PAD, BIT8_ALPHABETS, BIT8_PAD, BYTE2_CAPACITY};

/// Longest unit in bytes.
pub const MAX_UNIT_LEN: usize = 4;

/// The logical content of one unit.
///
/// Alphabetic units always carry three slots. A unit holding two letters
/// stores the zone's pad sentinel in the last slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    Ascii(u8),
    Byte2(u16),
    Isolate(u32),
    Bit8 { alphabet: u8, slots: [u8; 3] },
    Bit7 { alphabet: u8, slots: [u8; 3] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum UnitError {
    #[error("empty unit")]
    Empty,
    #[error("unit exceeds 4 bytes")]
    TooLong(usize),
    #[error("unit does not end in a tail byte")]
    MissingTail,
    #[error("tail byte inside unit at position {0}")]
    EarlyTail(usize),
    #[error("ascii payload {0:#04X} exceeds 7 bits")]
    AsciiOutOfRange(u8),
    #[error("byte2 index {0:#06X} exceeds 14 bits")]
    Byte2OutOfRange(u16),
    #[error("isolate payload {0:#X} is not a scalar value")]
    InvalidScalar(u32),
    #[error("{zone} alphabet id {alphabet} out of range")]
    AlphabetOutOfRange { zone: Zone, alphabet: u8 },
    #[error("pad sentinel in slot {slot}")]
    PadInSlot { slot: usize },
    #[error("{zone} letter {letter:#04X} exceeds the zone's letter width")]
    LetterTooWide { zone: Zone, letter: u8 },
    #[error("{0} units hold two or three letters")]
    LetterCount(Zone),
    #[error("no {zone} alphabet with id {alphabet}")]
    UnknownAlphabet { zone: Zone, alphabet: u8 },
    #[error("letter {index:#X} is outside {zone} alphabet {alphabet}")]
    LetterOutOfRange { zone: Zone, alphabet: u8, index: u32 },
    #[error("byte2 index {0:#06X} is unassigned")]
    UnmappedByte2(u16),
}

impl Unit {
    pub fn zone(&self) -> Zone {
        match self {
            Unit::Ascii(_) => Zone::Ascii,
            Unit::Byte2(_) => Zone::Byte2,
            Unit::Isolate(_) => Zone::Isolate,
            Unit::Bit8 { .. } => Zone::Bit8,
            Unit::Bit7 { .. } => Zone::Bit7,
        }
    }

    /// Builds a bit8 unit from two or three letters.
    pub fn bit8(alphabet: u8, letters: &[u8]) -> Result<Unit, UnitError> {
        let slots = fill_slots(Zone::Bit8, letters)?;
        let unit = Unit::Bit8 { alphabet, slots };
        unit.validate()?;
        Ok(unit)
    }

    /// Builds a bit7 unit from two or three letters.
    pub fn bit7(alphabet: u8, letters: &[u8]) -> Result<Unit, UnitError> {
        let slots = fill_slots(Zone::Bit7, letters)?;
        let unit = Unit::Bit7 { alphabet, slots };
        unit.validate()?;
        Ok(unit)
    }

    /// Letters carried by an alphabetic unit, without the pad. Empty for
    /// single-character zones.
    pub fn letters(&self) -> &[u8] {
        match self {
            Unit::Bit8 { slots, .. } => trim_pad(slots, BIT8_PAD),
            Unit::Bit7 { slots, .. } => trim_pad(slots, BIT7_PAD),
            _ => &[],
        }
    }

    pub fn alphabet(&self) -> Option<u8> {
        match *self {
            Unit::Bit8 { alphabet, .. } | Unit::Bit7 { alphabet, .. } => Some(alphabet),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), UnitError> {
        match *self {
            Unit::Ascii(b) if b >= 0x80 => Err(UnitError::AsciiOutOfRange(b)),
            Unit::Byte2(p) if p as usize >= BYTE2_CAPACITY => Err(UnitError::Byte2OutOfRange(p)),
            Unit::Isolate(cp) if !is_scalar(cp) => Err(UnitError::InvalidScalar(cp)),
            Unit::Bit8 { alphabet, slots } => {
                if alphabet as usize >= BIT8_ALPHABETS {
                    return Err(UnitError::AlphabetOutOfRange { zone: Zone::Bit8, alphabet });
                }
                check_slots(Zone::Bit8, &slots)
            }
            Unit::Bit7 { alphabet, slots } => {
                if alphabet as usize >= BIT7_ALPHABETS {
                    return Err(UnitError::AlphabetOutOfRange { zone: Zone::Bit7, alphabet });
                }
                check_slots(Zone::Bit7, &slots)
            }
            _ => Ok(()),
        }
    }

    pub fn pack(&self) -> Result<PackedUnit, UnitError> {
        self.validate()?;
        Ok(self.pack_unchecked())
    }

    /// Packs without validation. Callers guarantee the invariants.
    pub(crate) fn pack_unchecked(&self) -> PackedUnit {
        debug_assert_eq!(self.validate(), Ok(()));
        match *self {
            Unit::Ascii(b) => PackedUnit::new([b, 0, 0, 0], 1),
            Unit::Byte2(p) => PackedUnit::new([0x80 | (p >> 7) as u8, (p & 0x7F) as u8, 0, 0], 2),
            Unit::Isolate(cp) => {
                PackedUnit::new([0x80 | (cp >> 14) as u8, 0x80 | ((cp >> 7) & 0x7F) as u8, (cp & 0x7F) as u8, 0], 3)
            }
            Unit::Bit8 { alphabet, slots: [x, y, z] } => PackedUnit::new(
                [
                    0xE0 | (alphabet << 3) | (x >> 5),
                    0x80 | ((x & 0x1F) << 2) | (y >> 6),
                    0x80 | ((y & 0x3F) << 1) | (z >> 7),
                    z & 0x7F,
                ],
                4,
            ),
            Unit::Bit7 { alphabet, slots: [x, y, z] } => PackedUnit::new([0x80 | alphabet, 0x80 | x, 0x80 | y, z], 4),
        }
    }
}

fn trim_pad(slots: &[u8; 3], pad: u8) -> &[u8] {
    if slots[2] == pad {
        &slots[..2]
    } else {
        &slots[..]
    }
}

fn fill_slots(zone: Zone, letters: &[u8]) -> Result<[u8; 3], UnitError> {
    let pad = zone.pad().expect("alphabetic zone");
    match *letters {
        [x, y] => Ok([x, y, pad]),
        [x, y, z] => Ok([x, y, z]),
        _ => Err(UnitError::LetterCount(zone)),
    }
}

fn check_slots(zone: Zone, slots: &[u8; 3]) -> Result<(), UnitError> {
    let pad = zone.pad().expect("alphabetic zone");
    for (slot, &letter) in slots.iter().enumerate() {
        if letter > pad {
            return Err(UnitError::LetterTooWide { zone, letter });
        }
        if letter == pad && slot < 2 {
            return Err(UnitError::PadInSlot { slot });
        }
    }
    Ok(())
}

/// A packed unit of 1 to 4 bytes.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PackedUnit {
    buf: [u8; MAX_UNIT_LEN],
    len: u8,
}

impl PackedUnit {
    fn new(buf: [u8; MAX_UNIT_LEN], len: u8) -> Self {
        PackedUnit { buf, len }
    }
}

impl Deref for PackedUnit {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.buf[..self.len as usize]
    }
}

impl fmt::Debug for PackedUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PackedUnit({:02X?})", &**self)
    }
}

pub fn pack_unit(unit: &Unit) -> Result<PackedUnit, UnitError> {
    unit.pack()
}

/// Parses exactly one unit. The tail byte must be last and only last.
///
/// Non-canonical but well-formed units are accepted.
pub fn unpack_unit(bytes: &[u8]) -> Result<Unit, UnitError> {
    let len = bytes.len();
    if len == 0 {
        return Err(UnitError::Empty);
    }
    if let Some(pos) = bytes[..len - 1].iter().position(|&b| b < 0x80) {
        return Err(UnitError::EarlyTail(pos));
    }
    if bytes[len - 1] >= 0x80 {
        return Err(UnitError::MissingTail);
    }
    if len > MAX_UNIT_LEN {
        return Err(UnitError::TooLong(len));
    }
    let unit = match *bytes {
        [b] => Unit::Ascii(b),
        [b0, b1] => Unit::Byte2(((b0 as u16 & 0x7F) << 7) | b1 as u16),
        [b0, b1, b2] => {
            let cp = ((b0 as u32 & 0x7F) << 14) | ((b1 as u32 & 0x7F) << 7) | b2 as u32;
            Unit::Isolate(cp)
        }
        [b0, b1, b2, b3] if b0 >= 0xE0 => {
            let alphabet = (b0 >> 3) & 0x03;
            let x = ((b0 & 0x07) << 5) | ((b1 >> 2) & 0x1F);
            let y = ((b1 & 0x03) << 6) | ((b2 >> 1) & 0x3F);
            let z = ((b2 & 0x01) << 7) | b3;
            Unit::Bit8 { alphabet, slots: [x, y, z] }
        }
        [b0, b1, b2, b3] => Unit::Bit7 { alphabet: b0 & 0x7F, slots: [b1 & 0x7F, b2 & 0x7F, b3] },
        _ => unreachable!(),
    };
    unit.validate()?;
    Ok(unit)
}
