#![allow(dead_code)]

use proptest::prelude::*;

/// Script pools as inclusive code point ranges.
pub const POOLS: &[(u32, u32)] = &[
    (0x20, 0x7E),        // ASCII
    (0xC0, 0x17F),       // Latin
    (0x391, 0x3C9),      // Greek
    (0x410, 0x44F),      // Cyrillic
    (0x621, 0x64A),      // Arabic
    (0x915, 0x939),      // Devanagari
    (0x4E00, 0x9FFF),    // Hanzi
    (0xAC00, 0xD7A3),    // Hangul
    (0x10000, 0x10FFFF), // astral
];

fn pool_char(pool: usize) -> BoxedStrategy<char> {
    let (lo, hi) = POOLS[pool];
    (lo..=hi).prop_filter_map("scalar", char::from_u32).boxed()
}

/// Runs of characters drawn from one pool at a time, so same-alphabet runs
/// of every length show up often.
pub fn mixed_text(max_runs: usize) -> impl Strategy<Value = String> {
    let run = (0..POOLS.len() + 1, 1usize..9).prop_flat_map(|(pool, len)| {
        let ch = if pool == POOLS.len() { any::<char>().boxed() } else { pool_char(pool) };
        proptest::collection::vec(ch, len)
    });
    proptest::collection::vec(run, 0..max_runs).prop_map(|runs| runs.into_iter().flatten().collect())
}

/// Cut positions for splitting a slice of length `len` into pieces.
pub fn cuts(len: usize, raw: &[usize]) -> Vec<usize> {
    let mut cuts: Vec<usize> = raw.iter().map(|&c| if len == 0 { 0 } else { c % (len + 1) }).collect();
    cuts.sort_unstable();
    cuts
}
