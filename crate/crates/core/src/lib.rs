//! Duncode: a self-synchronizing Unicode encoding that packs runs of
//! same-alphabet characters into shared-prefix units.
//!
//! ```
//! use duncode::{decode_bytes, default_tables, encode_str, ErrorPolicy};
//!
//! let tables = default_tables();
//! let bytes = encode_str("αβγ", tables);
//! assert_eq!(bytes, [0xE2, 0x85, 0x84, 0x43]);
//! assert_eq!(decode_bytes(&bytes, tables, ErrorPolicy::Strict).unwrap(), "αβγ");
//! ```
//!
//! ASCII text encodes to itself. Characters in the byte2 map take two
//! bytes, everything else at most three, and three consecutive letters of
//! one alphabet share a single four-byte unit.

pub mod chunked;
pub mod decoder;
pub mod encoder;
pub mod tables;
pub mod unit;
pub mod zone;

pub use chunked::{
    decode_batch, decode_chunked, decode_parallel, decode_pieces, encode_batch, encode_chunked, encode_parallel,
    encode_pieces, DEFAULT_PIECE,
};
pub use decoder::{
    check_canonical, decode_bytes, decode_lossy, decode_unit, inspect, resync, segment, CanonicalError, DecodeError,
    DecodeErrorKind, Decoder, ErrorPolicy, UnitChars, UnitReport, REPLACEMENT,
};
pub use encoder::{encode_into, encode_scalars, encode_str, Encoder};
pub use tables::{
    build_default_tables, default_tables, parse_tables, serialize_tables, Block, BlockId, Classification,
    InvalidScalar, TableError, TableSet,
};
pub use unit::{pack_unit, unpack_unit, PackedUnit, Unit, UnitError};
pub use zone::Zone;
