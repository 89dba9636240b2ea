use std::fmt;
use std::str::FromStr;

/// Letter index reserved as the empty-slot marker of a two-letter bit7 unit.
pub const BIT7_PAD: u8 = 0x7F;
/// Letter index reserved as the empty-slot marker of a two-letter bit8 unit.
pub const BIT8_PAD: u8 = 0xFF;

/// Number of alphabets addressable in the bit7 zone.
///
/// A bit7 lead byte is `1nnnnnnn`; ids of 96 and above would start with
/// `111` and read back as bit8 units.
pub const BIT7_ALPHABETS: usize = 96;
/// Number of alphabets addressable in the bit8 zone (two id bits).
pub const BIT8_ALPHABETS: usize = 4;

/// Entries addressable by a two-byte unit.
pub const BYTE2_CAPACITY: usize = 1 << 14;

/// Largest Unicode scalar value.
pub const MAX_SCALAR: u32 = 0x10_FFFF;

/// Encoding layout of a unit. Discriminants are the zone ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Zone {
    Ascii = 0,
    Byte2 = 1,
    Isolate = 2,
    Bit8 = 3,
    Bit7 = 4,
}

impl Zone {
    pub const ALL: [Zone; 5] = [Zone::Ascii, Zone::Byte2, Zone::Isolate, Zone::Bit8, Zone::Bit7];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Zone::Ascii => "ascii",
            Zone::Byte2 => "byte2",
            Zone::Isolate => "isolate",
            Zone::Bit8 => "bit8",
            Zone::Bit7 => "bit7",
        }
    }

    /// Bytes in a packed unit of this zone.
    pub fn unit_len(self) -> usize {
        match self {
            Zone::Ascii => 1,
            Zone::Byte2 => 2,
            Zone::Isolate => 3,
            Zone::Bit8 | Zone::Bit7 => 4,
        }
    }

    /// Whether characters of this zone can share a unit.
    pub fn is_alphabetic(self) -> bool {
        matches!(self, Zone::Bit8 | Zone::Bit7)
    }

    /// Pad sentinel for alphabetic zones.
    pub fn pad(self) -> Option<u8> {
        match self {
            Zone::Bit8 => Some(BIT8_PAD),
            Zone::Bit7 => Some(BIT7_PAD),
            _ => None,
        }
    }

    /// Number of alphabet ids available in an alphabetic zone.
    pub fn alphabet_count(self) -> usize {
        match self {
            Zone::Bit8 => BIT8_ALPHABETS,
            Zone::Bit7 => BIT7_ALPHABETS,
            _ => 0,
        }
    }

    /// Total letter slots of one alphabet, the pad sentinel included.
    pub fn letter_slots(self) -> u32 {
        match self {
            Zone::Bit8 => 256,
            Zone::Bit7 => 128,
            _ => 0,
        }
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown zone name {0:?}")]
pub struct UnknownZone(pub String);

impl FromStr for Zone {
    type Err = UnknownZone;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Zone::ALL.into_iter().find(|z| z.name() == s).ok_or_else(|| UnknownZone(s.to_owned()))
    }
}

/// True for Unicode scalar values: at most U+10FFFF and not a surrogate.
pub fn is_scalar(cp: u32) -> bool {
    cp <= MAX_SCALAR && !(0xD800..=0xDFFF).contains(&cp)
}
