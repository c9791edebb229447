mod common;

use chc_core::bitio::BitCursor;
use chc_core::codec::{build_code, DecodeStats};
use chc_core::pred_set::PredSet;
use chc_core::{
    compute_lengths, decode_stream, encode_stream, validate, Decoder, Encoder, FileHeader,
    FrequencyTable, PartitionedCodebook, Strategy,
};
use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn huffman_lengths_are_optimal_on_small_alphabets() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..400 {
        let sigma = rng.gen_range(1..=8);
        let freqs: Vec<u64> = (0..sigma).map(|_| rng.gen_range(1..=50)).collect();
        let table = FrequencyTable::from_counts(freqs.iter().enumerate().map(|(s, &f)| (s as u32, f)));
        let lengths = compute_lengths(&table).unwrap();
        let cost: u64 = lengths
            .entries()
            .iter()
            .map(|&(s, l)| freqs[s as usize] * l as u64)
            .sum();
        assert_eq!(cost, brute_force_cost(&freqs), "{freqs:?}");
        assert_eq!(cost, heap_huffman_cost(&freqs).max(if sigma == 1 { freqs[0] } else { 0 }));
    }
}

#[test]
fn fibonacci_weights_reach_the_depth_bound() {
    let mut fib = vec![1u64, 1];
    while fib.len() < 20 {
        let k = fib.len();
        fib.push(fib[k - 1] + fib[k - 2]);
    }
    let table = FrequencyTable::from_counts(fib.iter().enumerate().map(|(s, &f)| (s as u32, f)));
    let code = chc_core::canonicalize(&compute_lengths(&table).unwrap()).unwrap();
    assert_eq!(code.max_len(), 19);
    let report = validate(&code, table.total());
    assert!(report.is_ok(), "{:?}", report.violations);
}

#[test]
fn canonical_assignment_matches_independent_oracle() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..500 {
        let code = random_code_mix(&mut rng, 200);
        let mut expected = oracle_codewords(&code);
        expected.sort_by_key(|&(_, v, l)| (l, v));
        let got: Vec<(u32, u64, u32)> = code
            .codewords()
            .into_iter()
            .map(|(s, c)| (s, c.bits, c.len))
            .collect();
        assert_eq!(got, expected);
        for (s, v, l) in expected {
            let c = code.codeword_of(s).unwrap();
            assert_eq!((c.bits, c.len), (v, l));
        }
    }
}

fn check_codebook(code: &chc_core::CanonicalCode, rng: &mut StdRng, extensions: usize) {
    let book = PartitionedCodebook::new(code).unwrap();
    let first = oracle_first(code);
    let max_len = code.max_len();
    let k = book.trees().map(|t| t.len()).max().unwrap_or(0);
    let check = |x: u64| {
        let mut stats = chc_core::codebook::LookupStats::default();
        let got = book.lookup_depth_probed(x, &mut stats);
        assert_eq!((got.depth, got.first), oracle_lookup(&first, max_len, x), "x={x:#b}");
        assert!(stats.consults <= 4);
        assert!(stats.node_probes <= 4 * probe_bound(k));
    };
    for (_, value, len) in oracle_codewords(code) {
        let free = max_len - len;
        check(value << free);
        check((value << free) | ((1u64 << free) - 1));
        for _ in 0..extensions {
            let ext = if free == 0 { 0 } else { rng.gen::<u64>() >> (64 - free) };
            check((value << free) | ext);
        }
    }
}

#[test]
fn codebook_agrees_with_monolithic_predecessor() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..1500 {
        let code = random_code_mix(&mut rng, 64);
        check_codebook(&code, &mut rng, 4);
    }
}

#[test]
fn codebook_agrees_on_large_and_deep_codes() {
    let mut rng = StdRng::seed_from_u64(14);
    let mut saw_long = false;
    for round in 0..60 {
        let sigma = [300, 1000, 5000][round % 3];
        let skew = [0.0, 0.5, 0.98][(round / 3) % 3];
        let code = random_code(&mut rng, sigma, skew);
        let book = PartitionedCodebook::new(&code).unwrap();
        saw_long |= book
            .trees()
            .any(|t| t.kind() == chc_core::codebook::TailKind::Long);
        check_codebook(&code, &mut rng, 2);
    }
    assert!(saw_long, "no generated code exercised a long-tailed class");
}

#[test]
fn class_keys_keep_codeword_order_and_depth_ranges() {
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..800 {
        let code = random_code_mix(&mut rng, 300);
        let book = PartitionedCodebook::new(&code).unwrap();
        let first = oracle_first(&code);
        let mut stored = Vec::new();
        for tree in book.trees() {
            let (lo, hi) = tree.depth_range();
            let width = hi.max(1) - lo;
            let class_width = match tree.kind() {
                chc_core::codebook::TailKind::Long => book.long_width(),
                chc_core::codebook::TailKind::Short => book.short_width(),
            };
            assert!(width <= class_width);
            assert!(tree.tail_width() < 2 * class_width);
            tree.pred_set().check_structure().unwrap();
            let words: Vec<_> = tree.codewords().collect();
            for w in words.windows(2) {
                assert!(w[0].padded(64) < w[1].padded(64), "key order breaks codeword order");
            }
            for c in &words {
                assert!(lo < c.len && c.len <= hi);
                assert_eq!(first[c.len as usize], Some(c.bits));
                assert!(oracle_tail_len(c.bits, c.len) <= c.len - tree.shared_ones());
                let long = oracle_tail_len(c.bits, c.len) >= book.short_width();
                assert_eq!(long, tree.kind() == chc_core::codebook::TailKind::Long);
                stored.push(c.len);
            }
        }
        stored.sort();
        let occupied: Vec<u32> = (1..=code.max_len()).filter(|&l| first[l as usize].is_some()).collect();
        assert_eq!(stored, occupied, "each occupied depth is stored exactly once");
    }
}

#[test]
fn first_of_depth_matches_plain_table_and_swapped_pairs() {
    let mut rng = StdRng::seed_from_u64(16);
    for _ in 0..1000 {
        let code = random_code_mix(&mut rng, 128);
        let book = PartitionedCodebook::new(&code).unwrap();
        let first = oracle_first(&code);
        let max_len = code.max_len();
        // (length, padded First) pairs: a predecessor on length alone
        // recovers First[ℓ] when ℓ is occupied.
        let shift = max_len;
        let len_bits = ceil_log2(max_len as u64 + 1);
        let pairs: Vec<u64> = (1..=max_len)
            .filter_map(|l| first[l as usize].map(|f| (l as u64) << shift | (f << (max_len - l))))
            .collect();
        let swapped = PredSet::new(pairs, shift + len_bits).unwrap();
        for l in 1..=max_len {
            assert_eq!(book.first_of_depth(l).unwrap(), first[l as usize], "depth {l}");
            let q = (l as u64) << shift | ((1u64 << shift) - 1);
            let via_pairs = swapped
                .pred(q)
                .filter(|&(key, _)| key >> shift == l as u64)
                .map(|(key, _)| (key & ((1u64 << shift) - 1)) >> (max_len - l));
            assert_eq!(via_pairs, first[l as usize]);
        }
        assert!(book.first_of_depth(0).is_err());
        assert!(book.first_of_depth(max_len + 1).is_err());
    }
}

#[test]
fn every_generated_code_is_structurally_exact() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..500 {
        let sigma = rng.gen_range(1..400);
        let table = FrequencyTable::from_counts(
            (0..sigma).map(|s| (s as u32, rng.gen_range(1..1000u64).pow(rng.gen_range(1..3)))),
        );
        let code = chc_core::canonicalize(&compute_lengths(&table).unwrap()).unwrap();
        let report = validate(&code, table.total());
        assert!(report.is_ok(), "{:?}", report.violations);
        let census = oracle_census(&code);
        assert!((report.census_constant() - census).abs() < 1e-9);
        assert!(census <= 8.0);
    }
}

#[test]
fn strategies_agree_and_encoder_inverts_decoder() {
    let mut rng = StdRng::seed_from_u64(18);
    for _ in 0..40 {
        let code = random_code_mix(&mut rng, 500);
        let encoder = Encoder::new(&code).unwrap();
        for (s, v, l) in oracle_codewords(&code) {
            let c = encoder.encode_symbol(s).unwrap();
            assert_eq!((c.bits, c.len), (v, l));
        }
        let text: Vec<u32> = (0..5000)
            .map(|_| code.alphabet()[rng.gen_range(0..code.sigma())])
            .collect();
        let bytes = encode_stream(Some(&code), &text).unwrap();
        let (_, offset) = FileHeader::parse(&bytes).unwrap();
        for strategy in Strategy::ALL {
            let decoder = Decoder::new(&code, strategy).unwrap();
            let mut stats = DecodeStats::default();
            let mut cursor = BitCursor::new(&bytes[offset..]);
            let out = decoder.decode_n(&mut cursor, text.len() as u64, &mut stats).unwrap();
            assert_eq!(out, text, "{strategy}");
            if strategy == Strategy::Partitioned {
                assert_eq!(stats.peeks, stats.symbols);
                assert_eq!(stats.reads, stats.symbols);
                assert!(stats.max_consults <= 4);
            }
        }
    }
}

#[test]
fn search_routes_agree_with_oracle() {
    let mut rng = StdRng::seed_from_u64(19);
    for _ in 0..500 {
        let code = random_code_mix(&mut rng, 64);
        let first = oracle_first(&code);
        let max_len = code.max_len();
        let bin = Decoder::new(&code, Strategy::BinarySearch).unwrap();
        let levels = first.iter().filter(|f| f.is_some()).count() as u64;
        for _ in 0..50 {
            let x = rng.gen::<u64>() >> (64 - max_len);
            let b = bin.binsearch_depth(x).unwrap();
            let e = bin.expsearch_depth(x).unwrap();
            assert_eq!((b.depth, b.first), oracle_lookup(&first, max_len, x));
            assert_eq!((e.depth, e.first), (b.depth, b.first));
            assert!(e.steps <= 2 * ceil_log2(levels) + 2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn round_trip_any_text(text in prop::collection::vec(0u32..40, 0..600)) {
        let bytes = chc_core::encode_text(&text).unwrap();
        for strategy in Strategy::ALL {
            prop_assert_eq!(&decode_stream(&bytes, strategy).unwrap(), &text);
        }
    }

    #[test]
    fn round_trip_skewed_text(seed in any::<u64>(), n in 1usize..3000, sigma in 2u32..5000) {
        let text = chc_core::harness::zipf_generate(
            &chc_core::harness::ZipfSpec { sigma, alpha: 1.3, n, seed },
        ).unwrap();
        let code = build_code(&text).unwrap().unwrap();
        let bytes = encode_stream(Some(&code), &text).unwrap();
        prop_assert_eq!(decode_stream(&bytes, Strategy::Partitioned).unwrap(), text);
    }

    #[test]
    fn generated_codes_pass_validation(freqs in prop::collection::vec(1u64..1_000_000, 1..300)) {
        let table = FrequencyTable::from_counts(freqs.iter().enumerate().map(|(s, &f)| (s as u32, f)));
        let code = chc_core::canonicalize(&compute_lengths(&table).unwrap()).unwrap();
        let report = validate(&code, table.total());
        prop_assert!(report.is_ok(), "{:?}", report.violations);
    }

    #[test]
    fn lookup_matches_oracle_on_random_windows(seed in any::<u64>(), sigma in 2usize..200) {
        let mut rng = StdRng::seed_from_u64(seed);
        let code = random_code(&mut rng, sigma, 0.5);
        let book = PartitionedCodebook::new(&code).unwrap();
        let first = oracle_first(&code);
        for _ in 0..64 {
            let x = rng.gen::<u64>() >> (64 - code.max_len());
            let got = book.lookup_depth(x);
            prop_assert_eq!((got.depth, got.first), oracle_lookup(&first, code.max_len(), x));
        }
    }
}
