//! Size benchmarks for the Duncode codec: corpus extraction, per-text
//! accounting against UTF-8 and UTF-16, synthetic language profiles and
//! report rendering.

pub mod corpus;
pub mod markup;
pub mod measure;
pub mod report;
pub mod synthetic;

pub use corpus::{extract, CorpusError, CorpusKind, CorpusSpec, DEFAULT_MAX_BYTES};
pub use markup::strip_markup;
pub use measure::{
    measure, measure_all, measure_all_sequential, measure_bytes, measure_corpora, BenchRow, MeasureError,
};
pub use report::{report, Format, UnknownFormat};
pub use synthetic::{generate, synthetic_corpus, Profile, DEFAULT_SEED};
