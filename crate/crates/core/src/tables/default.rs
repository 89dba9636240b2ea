//! The bundled default tables.
//!
//! Zones are assigned by block name. byte2 indexes are filled in a fixed
//! order: U+0080..U+07FF shifted down by 0x80, then whole punctuation, kana,
//! Tibetan and Mongolian ranges, then Hanzi by descending frequency until
//! the map holds 2^14 entries.

use std::sync::OnceLock;

use super::{Block, BlockId, TableError, TableSet};
use crate::zone::{Zone, BYTE2_CAPACITY};

const BLOCKS_TXT: &str = include_str!("../../data/blocks.txt");
const HANZI_TXT: &str = include_str!("../../data/hanzi_freq.txt");

pub const DEFAULT_VERSION: &str = "duncode-default-1 unicode-13.0.0";

const BYTE2_BLOCKS: &[&str] = &[
    "Latin-1 Supplement",
    "Latin Extended-A",
    "Latin Extended-B",
    "IPA Extensions",
    "Spacing Modifier Letters",
    "Combining Diacritical Marks",
    "General Punctuation",
    "CJK Symbols and Punctuation",
    "Hiragana",
    "Katakana",
    "Tibetan",
    "Mongolian",
    "CJK Unified Ideographs",
];

/// bit8 alphabets in id order, each with its child blocks.
const BIT8_ALPHABETS: &[(&str, &[&str])] = &[
    ("Greek and Coptic", &["Ancient Greek Numbers"]),
    ("Cyrillic", &[]),
    ("Arabic", &[]),
    ("Myanmar", &["Myanmar Extended-A", "Myanmar Extended-B"]),
];

/// Blocks of at most 128 code points whose assigned characters are mostly
/// letters and marks, lowest first, cut at 96.
const BIT7_ALPHABETS: &[&str] = &[
    "Cyrillic Supplement",
    "Armenian",
    "Hebrew",
    "Syriac",
    "Arabic Supplement",
    "Thaana",
    "NKo",
    "Samaritan",
    "Mandaic",
    "Arabic Extended-A",
    "Devanagari",
    "Bengali",
    "Gurmukhi",
    "Gujarati",
    "Oriya",
    "Tamil",
    "Telugu",
    "Kannada",
    "Malayalam",
    "Sinhala",
    "Thai",
    "Lao",
    "Georgian",
    "Ethiopic Supplement",
    "Cherokee",
    "Ogham",
    "Runic",
    "Tagalog",
    "Hanunoo",
    "Buhid",
    "Tagbanwa",
    "Khmer",
    "Unified Canadian Aboriginal Syllabics Extended",
    "Limbu",
    "Tai Le",
    "New Tai Lue",
    "Buginese",
    "Balinese",
    "Sundanese",
    "Batak",
    "Lepcha",
    "Ol Chiki",
    "Georgian Extended",
    "Vedic Extensions",
    "Phonetic Extensions",
    "Phonetic Extensions Supplement",
    "Glagolitic",
    "Latin Extended-C",
    "Coptic",
    "Georgian Supplement",
    "Tifinagh",
    "Ethiopic Extended",
    "Cyrillic Extended-A",
    "Bopomofo",
    "Hangul Compatibility Jamo",
    "Bopomofo Extended",
    "Katakana Phonetic Extensions",
    "Lisu",
    "Cyrillic Extended-B",
    "Bamum",
    "Syloti Nagri",
    "Phags-pa",
    "Saurashtra",
    "Devanagari Extended",
    "Kayah Li",
    "Rejang",
    "Hangul Jamo Extended-A",
    "Javanese",
    "Cham",
    "Tai Viet",
    "Meetei Mayek Extensions",
    "Ethiopic Extended-A",
    "Latin Extended-E",
    "Cherokee Supplement",
    "Meetei Mayek",
    "Hangul Jamo Extended-B",
    "Alphabetic Presentation Forms",
    "Linear B Syllabary",
    "Linear B Ideograms",
    "Lycian",
    "Carian",
    "Old Italic",
    "Gothic",
    "Old Permic",
    "Ugaritic",
    "Old Persian",
    "Deseret",
    "Shavian",
    "Osmanya",
    "Osage",
    "Elbasan",
    "Caucasian Albanian",
    "Cypriot Syllabary",
    "Imperial Aramaic",
    "Palmyrene",
    "Nabataean",
];

/// Whole ranges granted byte2 slots after U+0080..U+07FF, in fill order.
const BYTE2_RANGES: &[(u32, u32)] = &[
    (0x3000, 0x303F), // CJK Symbols and Punctuation
    (0x3040, 0x309F), // Hiragana
    (0x30A0, 0x30FF), // Katakana
    (0x2000, 0x206F), // General Punctuation
    (0x0F00, 0x0FFF), // Tibetan
    (0x1800, 0x18AF), // Mongolian
];

/// Builds the default tables from the bundled block list and Hanzi
/// frequency list.
pub fn build_default_tables() -> Result<TableSet, TableError> {
    build_tables(BLOCKS_TXT, HANZI_TXT)
}

/// Shared, lazily built copy of the default tables.
pub fn default_tables() -> &'static TableSet {
    static TABLES: OnceLock<TableSet> = OnceLock::new();
    TABLES.get_or_init(|| build_default_tables().expect("bundled tables are valid"))
}

/// Builds tables from a `start..end; name` block list and a Hanzi list
/// (one character per line, most frequent first).
pub fn build_tables(blocks_txt: &str, hanzi_txt: &str) -> Result<TableSet, TableError> {
    let ranges = parse_block_list(blocks_txt)?;
    let mut blocks: Vec<Block> = ranges
        .into_iter()
        .enumerate()
        .map(|(i, (began, end, name))| Block {
            id: i as BlockId,
            began,
            end,
            name,
            zone: Zone::Isolate,
            alphabet: None,
            mother: None,
            offset: 0,
        })
        .collect();

    let find = |blocks: &[Block], name: &str| -> Result<usize, TableError> {
        blocks
            .iter()
            .position(|b| b.name == name)
            .ok_or_else(|| TableError::Resource { name: "blocks.txt", reason: format!("block {name:?} not found") })
    };

    let ascii = find(&blocks, "Basic Latin")?;
    blocks[ascii].zone = Zone::Ascii;
    for name in BYTE2_BLOCKS {
        let i = find(&blocks, name)?;
        blocks[i].zone = Zone::Byte2;
    }
    for (alphabet, (mother, children)) in BIT8_ALPHABETS.iter().enumerate() {
        let m = find(&blocks, mother)?;
        blocks[m].zone = Zone::Bit8;
        blocks[m].alphabet = Some(alphabet as u8);
        let mother_id = blocks[m].id;
        let mut next = blocks[m].size();
        for child in *children {
            let c = find(&blocks, child)?;
            let b = &mut blocks[c];
            b.zone = Zone::Bit8;
            b.alphabet = Some(alphabet as u8);
            b.mother = Some(mother_id);
            b.offset = next;
            next += b.size();
        }
    }
    let mut bit7: Vec<usize> = BIT7_ALPHABETS.iter().map(|name| find(&blocks, name)).collect::<Result<_, _>>()?;
    bit7.sort_by_key(|&i| blocks[i].began);
    for (alphabet, i) in bit7.into_iter().enumerate() {
        blocks[i].zone = Zone::Bit7;
        blocks[i].alphabet = Some(alphabet as u8);
    }

    let byte2 = fill_byte2(hanzi_txt)?;
    TableSet::new(DEFAULT_VERSION, blocks, byte2)
}

fn fill_byte2(hanzi_txt: &str) -> Result<Vec<(u16, u32)>, TableError> {
    let mut assigned = vec![false; 0x11_0000];
    let mut entries: Vec<(u16, u32)> = Vec::with_capacity(BYTE2_CAPACITY);
    let mut push = |cp: u32, entries: &mut Vec<(u16, u32)>| {
        if !assigned[cp as usize] && entries.len() < BYTE2_CAPACITY {
            assigned[cp as usize] = true;
            entries.push((entries.len() as u16, cp));
        }
    };
    for cp in 0x80..=0x7FF {
        push(cp, &mut entries);
    }
    for &(lo, hi) in BYTE2_RANGES {
        for cp in lo..=hi {
            push(cp, &mut entries);
        }
    }
    let fixed = entries.len();
    let mut lines = 0usize;
    for (n, line) in hanzi_txt.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut chars = line.chars();
        let (Some(ch), None) = (chars.next(), chars.next()) else {
            return Err(TableError::Resource {
                name: "hanzi_freq.txt",
                reason: format!("line {}: expected one character, got {line:?}", n + 1),
            });
        };
        lines += 1;
        if (ch as u32) < 0x80 {
            continue;
        }
        push(ch as u32, &mut entries);
        if entries.len() == BYTE2_CAPACITY {
            return Ok(entries);
        }
    }
    let reason = if lines == 0 {
        "Hanzi frequency list is missing or empty".to_owned()
    } else {
        format!(
            "Hanzi frequency list too short: {} usable entries, {} needed",
            entries.len() - fixed,
            BYTE2_CAPACITY - fixed
        )
    };
    Err(TableError::Resource { name: "hanzi_freq.txt", reason })
}

fn parse_block_list(src: &str) -> Result<Vec<(u32, u32, String)>, TableError> {
    let err =
        |n: usize, what: &str| TableError::Resource { name: "blocks.txt", reason: format!("line {}: {what}", n + 1) };
    let mut out = Vec::new();
    for (n, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (range, name) = line.split_once(';').ok_or_else(|| err(n, "missing ';'"))?;
        let (lo, hi) = range.trim().split_once("..").ok_or_else(|| err(n, "missing '..'"))?;
        let lo = u32::from_str_radix(lo, 16).map_err(|_| err(n, "bad start"))?;
        let hi = u32::from_str_radix(hi, 16).map_err(|_| err(n, "bad end"))?;
        out.push((lo, hi, name.trim().to_owned()));
    }
    if out.is_empty() {
        return Err(TableError::Resource { name: "blocks.txt", reason: "no blocks".into() });
    }
    Ok(out)
}
