//! Seeded language-like text for size benchmarks when real corpora are not
//! at hand. Each profile mimics the script mix and word shape of a language;
//! none tries to be readable.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const DEFAULT_SEED: u64 = 0x00D0_C0DE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    English,
    Russian,
    Arabic,
    Chinese,
    Greek,
    Hindi,
    Korean,
    Japanese,
}

impl Profile {
    pub const ALL: [Profile; 8] = [
        Profile::English,
        Profile::Russian,
        Profile::Arabic,
        Profile::Chinese,
        Profile::Greek,
        Profile::Hindi,
        Profile::Korean,
        Profile::Japanese,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::English => "english",
            Profile::Russian => "russian",
            Profile::Arabic => "arabic",
            Profile::Chinese => "chinese",
            Profile::Greek => "greek",
            Profile::Hindi => "hindi",
            Profile::Korean => "korean",
            Profile::Japanese => "japanese",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown profile {0:?}")]
pub struct UnknownProfile(pub String);

impl FromStr for Profile {
    type Err = UnknownProfile;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Profile::ALL.into_iter().find(|p| p.name().eq_ignore_ascii_case(s)).ok_or_else(|| UnknownProfile(s.to_owned()))
    }
}

const ENGLISH_WORDS: &[&str] = &[
    "the",
    "of",
    "and",
    "to",
    "in",
    "a",
    "is",
    "that",
    "for",
    "it",
    "as",
    "was",
    "with",
    "be",
    "by",
    "on",
    "not",
    "he",
    "this",
    "are",
    "or",
    "his",
    "from",
    "at",
    "which",
    "but",
    "have",
    "an",
    "had",
    "they",
    "you",
    "were",
    "their",
    "one",
    "all",
    "we",
    "can",
    "her",
    "has",
    "there",
    "been",
    "if",
    "more",
    "when",
    "will",
    "would",
    "who",
    "so",
    "no",
    "city",
    "river",
    "history",
    "language",
    "people",
    "during",
    "world",
    "century",
    "known",
    "called",
    "between",
    "first",
    "after",
    "state",
    "music",
    "film",
    "early",
    "government",
    "north",
    "south",
    "written",
    "several",
    "population",
    "through",
    "became",
    "later",
    "under",
    "region",
    "system",
    "small",
];
const ENGLISH_LOANS: &[&str] = &["café", "naïve", "résumé", "façade", "Zürich", "São", "élite", "coöperate"];

const RUSSIAN_LOWER: &str = "абвгдежзийклмнопрстуфхцчшщъыьэюя";
const RUSSIAN_UPPER: &str = "АБВГДЕЖЗИЙКЛМНОПРСТУФХЦЧШЩЪЫЬЭЮЯ";
const GREEK_LOWER: &str = "αβγδεζηθικλμνξοπρστυφχψω";
const GREEK_UPPER: &str = "ΑΒΓΔΕΖΗΘΙΚΛΜΝΞΟΠΡΣΤΥΦΧΨΩ";
const ARABIC_LETTERS: &str = "ابتثجحخدذرزسشصضطظعغفقكلمنهويةءأإى";
const HINDI_CONSONANTS: (u32, u32) = (0x915, 0x939);
const HINDI_SIGNS: &str = "ािीुूेैोौंः्";

fn top_hanzi() -> &'static [char] {
    static HANZI: OnceLock<Vec<char>> = OnceLock::new();
    HANZI.get_or_init(|| {
        let t = duncode::default_tables();
        let first = t.byte2_index('一' as u32).expect("Hanzi are byte2-mapped");
        (first..).map_while(|i| t.byte2_char(i)).filter_map(char::from_u32).take(3000).collect()
    })
}

fn zipf(n: usize) -> WeightedIndex<f64> {
    WeightedIndex::new((1..=n).map(|k| 1.0 / k as f64)).expect("positive weights")
}

fn range_char(rng: &mut ChaCha8Rng, lo: u32, hi: u32) -> char {
    char::from_u32(rng.gen_range(lo..=hi)).expect("ranges hold scalars")
}

fn pick(rng: &mut ChaCha8Rng, s: &str) -> char {
    let n = s.chars().count();
    s.chars().nth(rng.gen_range(0..n)).expect("non-empty")
}

struct Gen {
    rng: ChaCha8Rng,
    hanzi: WeightedIndex<f64>,
}

impl Gen {
    /// One word, capitalised where the script has case.
    fn word(&mut self, profile: Profile, capital: bool, out: &mut String) {
        let rng = &mut self.rng;
        match profile {
            Profile::English => {
                let w = if rng.gen_bool(0.01) {
                    ENGLISH_LOANS[rng.gen_range(0..ENGLISH_LOANS.len())]
                } else {
                    ENGLISH_WORDS[rng.gen_range(0..ENGLISH_WORDS.len())]
                };
                let quoted = rng.gen_bool(0.01);
                if quoted {
                    out.push('“');
                }
                let mut chars = w.chars();
                if let (true, Some(c)) = (capital, chars.next()) {
                    out.extend(c.to_uppercase());
                }
                out.extend(chars);
                if quoted {
                    out.push('”');
                }
            }
            Profile::Russian | Profile::Greek => {
                let (lower, upper) = match profile {
                    Profile::Russian => (RUSSIAN_LOWER, RUSSIAN_UPPER),
                    _ => (GREEK_LOWER, GREEK_UPPER),
                };
                let len = rng.gen_range(2..=9);
                for i in 0..len {
                    let k = rng.gen_range(0..lower.chars().count());
                    let set = if i == 0 && capital { upper } else { lower };
                    let c = set.chars().nth(k).expect("index in range");
                    out.push(if c == 'σ' && i + 1 == len { 'ς' } else { c });
                }
                if profile == Profile::Greek && rng.gen_bool(0.3) {
                    out.push(pick(rng, "άέήίόύώ"));
                }
            }
            Profile::Arabic => {
                for _ in 0..rng.gen_range(2..=9) {
                    out.push(pick(rng, ARABIC_LETTERS));
                }
            }
            Profile::Hindi => {
                for _ in 0..rng.gen_range(1..=4) {
                    out.push(range_char(rng, HINDI_CONSONANTS.0, HINDI_CONSONANTS.1));
                    if rng.gen_bool(0.6) {
                        out.push(pick(rng, HINDI_SIGNS));
                    }
                }
            }
            Profile::Korean => {
                for _ in 0..rng.gen_range(1..=4) {
                    out.push(range_char(rng, 0xAC00, 0xD7A3));
                }
            }
            Profile::Chinese => {
                let hanzi = top_hanzi();
                for _ in 0..rng.gen_range(1..=4) {
                    out.push(hanzi[self.hanzi.sample(rng)]);
                }
            }
            Profile::Japanese => {
                let hanzi = top_hanzi();
                for _ in 0..rng.gen_range(0..=2) {
                    out.push(hanzi[self.hanzi.sample(rng)]);
                }
                let (lo, hi) = if rng.gen_bool(0.2) { (0x30A1, 0x30F3) } else { (0x3041, 0x3093) };
                for _ in 0..rng.gen_range(1..=4) {
                    out.push(range_char(rng, lo, hi));
                }
            }
        }
    }

    fn sentence(&mut self, profile: Profile, out: &mut String) {
        let words = self.rng.gen_range(4..=14);
        let spaced = !matches!(profile, Profile::Chinese | Profile::Japanese);
        for i in 0..words {
            if i > 0 {
                let comma = self.rng.gen_bool(0.08);
                match (profile, comma) {
                    (Profile::Chinese, true) => out.push('，'),
                    (Profile::Japanese, true) => out.push('、'),
                    (Profile::Arabic, true) => out.push_str("، "),
                    (_, true) => out.push_str(", "),
                    (_, false) if spaced => out.push(' '),
                    _ => {}
                }
            }
            self.word(profile, i == 0, out);
        }
        match profile {
            Profile::Chinese | Profile::Japanese => out.push('。'),
            Profile::Hindi => out.push_str("। "),
            _ => out.push_str(". "),
        }
    }
}

/// Roughly `target_bytes` of UTF-8 text for `profile`; never more.
pub fn generate(profile: Profile, target_bytes: usize, seed: u64) -> String {
    let stream = Profile::ALL.iter().position(|&p| p == profile).unwrap_or(0) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut gen = Gen { rng, hanzi: zipf(top_hanzi().len()) };
    let mut out = String::with_capacity(target_bytes + 256);
    let mut sentence = String::new();
    loop {
        sentence.clear();
        gen.sentence(profile, &mut sentence);
        if gen.rng.gen_bool(0.1) {
            sentence.push('\n');
        }
        if out.len() + sentence.len() > target_bytes {
            break;
        }
        out.push_str(&sentence);
    }
    out
}

/// One `(label, text)` pair per profile.
pub fn synthetic_corpus(target_bytes: usize, seed: u64) -> Vec<(String, String)> {
    Profile::ALL.iter().map(|&p| (p.name().to_owned(), generate(p, target_bytes, seed))).collect()
}
