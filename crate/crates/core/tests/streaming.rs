mod common;

use common::{cuts, mixed_text};
use duncode::*;
use proptest::prelude::*;

fn feed_in_pieces(bytes: &[u8], split: &[usize], policy: ErrorPolicy) -> Result<String, DecodeError> {
    let t = default_tables();
    let mut dec = Decoder::new(t, policy);
    let mut out = String::new();
    let mut prev = 0;
    for &cut in split.iter().chain([&bytes.len()]) {
        dec.feed(&bytes[prev..cut], &mut out)?;
        prev = cut;
    }
    dec.finish(&mut out)?;
    assert_eq!(dec.position(), bytes.len());
    Ok(out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn streaming_decode_matches_one_shot(text in mixed_text(24), raw in proptest::collection::vec(any::<usize>(), 0..8)) {
        let t = default_tables();
        let bytes = encode_str(&text, t);
        let split = cuts(bytes.len(), &raw);
        prop_assert_eq!(feed_in_pieces(&bytes, &split, ErrorPolicy::Strict).unwrap(), text);
    }

    #[test]
    fn streaming_garbage_matches_one_shot(bytes in proptest::collection::vec(any::<u8>(), 0..64), raw in proptest::collection::vec(any::<usize>(), 0..8)) {
        let t = default_tables();
        let split = cuts(bytes.len(), &raw);
        for policy in [ErrorPolicy::Strict, ErrorPolicy::Replace] {
            prop_assert_eq!(feed_in_pieces(&bytes, &split, policy), decode_bytes(&bytes, t, policy));
        }
    }

    #[test]
    fn byte_at_a_time(text in mixed_text(12)) {
        let t = default_tables();
        let bytes = encode_str(&text, t);
        let split: Vec<usize> = (1..bytes.len()).collect();
        prop_assert_eq!(feed_in_pieces(&bytes, &split, ErrorPolicy::Strict).unwrap(), text);
    }
}

#[test]
fn overlong_run_is_one_replacement() {
    // 0x42 is the tail that closes the overlong unit; 0x43 stands alone.
    let bytes = [0x41, 0x86, 0x86, 0x86, 0x86, 0x86, 0x86, 0x42, 0x43];
    for split in [vec![], vec![2], vec![3, 5, 6]] {
        assert_eq!(feed_in_pieces(&bytes, &split, ErrorPolicy::Replace).unwrap(), "A\u{FFFD}C");
        let err = feed_in_pieces(&bytes, &split, ErrorPolicy::Strict).unwrap_err();
        assert_eq!(err.offset, 1);
    }
}
