//! Piecewise encoding and decoding, run on rayon when the `parallel`
//! feature is enabled and sequentially otherwise.
//!
//! Encoding can restart wherever the encoder holds nothing back, which is
//! right after any character that cannot join a run. Decoding can restart
//! after any tail byte. Cutting at such points gives pieces whose outputs
//! concatenate to exactly the one-shot result.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::decoder::{DecodeError, Decoder, ErrorPolicy};
use crate::encoder::encode_into;
use crate::tables::TableSet;

/// Target piece size in bytes.
pub const DEFAULT_PIECE: usize = 64 * 1024;

/// Cuts `text` into pieces of roughly `target` bytes that encode
/// independently.
pub fn encode_pieces<'a>(text: &'a str, tables: &TableSet, target: usize) -> Vec<&'a str> {
    let target = target.max(1);
    let mut pieces = Vec::with_capacity(text.len() / target + 1);
    let mut rest = text;
    while rest.len() > target {
        let mut cut = target;
        while !rest.is_char_boundary(cut) {
            cut += 1;
        }
        let found = rest[cut..].char_indices().find_map(|(i, ch)| {
            let independent = ch.is_ascii() || !tables.classify_char(ch).is_compressible();
            independent.then(|| cut + i + ch.len_utf8())
        });
        let Some(cut) = found else { break };
        let (head, tail) = rest.split_at(cut);
        pieces.push(head);
        rest = tail;
    }
    if !rest.is_empty() || pieces.is_empty() {
        pieces.push(rest);
    }
    pieces
}

/// Cuts an encoded stream after tail bytes into pieces of roughly `target`
/// bytes. Each piece comes with its stream offset.
pub fn decode_pieces(bytes: &[u8], target: usize) -> Vec<(usize, &[u8])> {
    let target = target.max(1);
    let mut pieces = Vec::with_capacity(bytes.len() / target + 1);
    let mut start = 0;
    while bytes.len() - start > target {
        let from = start + target - 1;
        let Some(pos) = bytes[from..].iter().position(|&b| b < 0x80) else { break };
        let end = from + pos + 1;
        pieces.push((start, &bytes[start..end]));
        start = end;
    }
    if start < bytes.len() || pieces.is_empty() {
        pieces.push((start, &bytes[start..]));
    }
    pieces
}

fn map_all<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

fn encode_pieces_with(pieces: Vec<&str>, tables: &TableSet, parallel: bool) -> Vec<u8> {
    let encode = |piece: &&str| {
        let mut out = Vec::with_capacity(piece.len());
        encode_into(piece, tables, &mut out);
        out
    };
    let parts: Vec<Vec<u8>> = if parallel { map_all(&pieces, encode) } else { pieces.iter().map(encode).collect() };
    parts.concat()
}

fn decode_pieces_with(
    pieces: Vec<(usize, &[u8])>,
    tables: &TableSet,
    policy: ErrorPolicy,
    parallel: bool,
) -> Result<String, DecodeError> {
    let decode = |&(offset, piece): &(usize, &[u8])| {
        let mut out = String::with_capacity(piece.len());
        let mut dec = Decoder::with_offset(tables, policy, offset);
        dec.feed(piece, &mut out)?;
        dec.finish(&mut out)?;
        Ok(out)
    };
    let parts: Vec<Result<String, DecodeError>> =
        if parallel { map_all(&pieces, decode) } else { pieces.iter().map(decode).collect() };
    let mut text = String::new();
    for part in parts {
        text.push_str(&part?);
    }
    Ok(text)
}

/// Encodes piece by piece on the current thread. Same output as
/// [`encode_str`](crate::encode_str).
pub fn encode_chunked(text: &str, tables: &TableSet, target: usize) -> Vec<u8> {
    encode_pieces_with(encode_pieces(text, tables, target), tables, false)
}

/// Encodes pieces concurrently. Same output as
/// [`encode_str`](crate::encode_str).
pub fn encode_parallel(text: &str, tables: &TableSet) -> Vec<u8> {
    encode_pieces_with(encode_pieces(text, tables, DEFAULT_PIECE), tables, true)
}

/// Decodes piece by piece on the current thread.
pub fn decode_chunked(
    bytes: &[u8],
    tables: &TableSet,
    policy: ErrorPolicy,
    target: usize,
) -> Result<String, DecodeError> {
    decode_pieces_with(decode_pieces(bytes, target), tables, policy, false)
}

/// Decodes pieces concurrently. Strict mode reports the earliest error in
/// the stream, as a sequential decode would.
pub fn decode_parallel(bytes: &[u8], tables: &TableSet, policy: ErrorPolicy) -> Result<String, DecodeError> {
    decode_pieces_with(decode_pieces(bytes, DEFAULT_PIECE), tables, policy, true)
}

/// Encodes independent documents concurrently.
pub fn encode_batch<S: AsRef<str> + Sync>(texts: &[S], tables: &TableSet) -> Vec<Vec<u8>> {
    map_all(texts, |t| crate::encode_str(t.as_ref(), tables))
}

/// Decodes independent streams concurrently.
pub fn decode_batch<B: AsRef<[u8]> + Sync>(
    streams: &[B],
    tables: &TableSet,
    policy: ErrorPolicy,
) -> Vec<Result<String, DecodeError>> {
    map_all(streams, |b| crate::decode_bytes(b.as_ref(), tables, policy))
}
