use proptest::prelude::*;

use propus::arrays::{circulant, goethals_seidel, propus, is_hadamard, is_skew_type, is_symmetric_matrix, SquareMatrix};
use propus::catalog::load_catalog;
use propus::format::{parse_family, read_matrix_pbm, read_matrix_text, write_family, write_matrix_pbm, write_matrix_text};
use propus::params::{enumerate_propus_sets, triangular};
use propus::search::{
    golay_round, hash_label, propus_search, CandidateSource, Crown, SearchConfig, SearchStats, SignMode, Tape,
    Variant,
};
use propus::sequence::{block_to_sequence, is_difference_family, paf_deficit, sequence_to_block};
use propus::{BinarySequence, Block, DifferenceFamily, PropusParameterSet};

fn sequence(max_v: usize) -> impl Strategy<Value = BinarySequence> {
    prop::collection::vec(prop::bool::ANY, 1..=max_v)
        .prop_map(|bits| BinarySequence::new(bits.into_iter().map(|b| if b { -1 } else { 1 }).collect()).unwrap())
}

fn block_of(v: usize, mask: &[bool]) -> Block {
    Block::new(v, (0..v).filter(|&i| mask[i]).collect()).unwrap()
}

fn blocks(max_v: usize) -> impl Strategy<Value = (usize, [Block; 4])> {
    (2..=max_v).prop_flat_map(|v| {
        prop::array::uniform4(prop::collection::vec(prop::bool::ANY, v))
            .prop_map(move |masks| (v, masks.map(|m| block_of(v, &m))))
    })
}

/// Equal-length quadruples of sequences.
fn quadruple(max_v: usize) -> impl Strategy<Value = [BinarySequence; 4]> {
    (1..=max_v).prop_flat_map(|v| {
        prop::array::uniform4(prop::collection::vec(prop::bool::ANY, v)).prop_map(|masks| {
            masks.map(|m| BinarySequence::new(m.into_iter().map(|b| if b { -1 } else { 1 }).collect()).unwrap())
        })
    })
}

/// `propus` from `goethals_seidel`: negate the first block column, then
/// swap block rows 2 and 3.
fn transform_gs(gs: &SquareMatrix) -> SquareMatrix {
    let n = gs.order();
    let v = n / 4;
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        let src = match i / v {
            1 => i + v,
            2 => i - v,
            _ => i,
        };
        for j in 0..n {
            let x = gs.get(src, j);
            out.set(i, j, if j < v { -x } else { x });
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn paf_symmetry_and_sum(seq in sequence(24)) {
        let v = seq.len();
        let paf = seq.paf();
        prop_assert_eq!(paf[0], v as i64);
        for s in 1..v {
            prop_assert_eq!(paf[s], paf[v - s]);
        }
        prop_assert_eq!(paf.values().iter().sum::<i64>(), seq.sum().pow(2));
    }

    #[test]
    fn block_sequence_round_trip((_, bs) in blocks(20)) {
        for b in &bs {
            prop_assert_eq!(&sequence_to_block(&block_to_sequence(b)), b);
        }
    }

    #[test]
    fn counting_agrees_with_autocorrelation((v, bs) in blocks(15)) {
        let seqs = bs.each_ref().map(block_to_sequence);
        let deficit = paf_deficit(&seqs.each_ref(), &[1, 1, 1, 1]).unwrap();
        let k: i64 = bs.iter().map(|b| b.len() as i64).sum();
        let by_counting = is_difference_family(&bs, v).map(|l| l as i64) == Some(k - v as i64);
        prop_assert_eq!(by_counting, deficit.iter().all(|&d| d == 0));
    }

    #[test]
    fn symmetric_and_skew_via_circulant(seq in sequence(20)) {
        let c = circulant(&seq);
        prop_assert_eq!(seq.is_symmetric(), c == c.transpose());
        let expected = SquareMatrix::identity(seq.len()).scale(2 * i32::from(seq.at(0)));
        prop_assert_eq!(seq.is_skew(), c.add(&c.transpose()).unwrap() == expected);
    }

    #[test]
    fn exchange_identities(seq in sequence(20)) {
        let c = circulant(&seq);
        let cr = c.times_r();
        prop_assert_eq!(&cr, &cr.transpose());
        prop_assert_eq!(c.r_times().times_r(), c.transpose());
    }

    #[test]
    fn propus_is_transformed_goethals_seidel(q in quadruple(12)) {
        let c = q.each_ref().map(circulant);
        let gs = goethals_seidel(&c[0], &c[1], &c[2], &c[3]).unwrap();
        let pr = propus(&c[0], &c[1], &c[2], &c[3]).unwrap();
        prop_assert_eq!(transform_gs(&gs), pr);
    }

    #[test]
    fn equal_keys_give_equal_labels(key in prop::collection::vec(-40i64..=40, 1..24), m in 1u32..=16) {
        for mode in [SignMode::Binary, SignMode::Ternary] {
            let copy = key.clone();
            let label = hash_label(&key, m, mode);
            prop_assert_eq!(label, hash_label(&copy, m, mode));
            prop_assert!(label < 1 << m);
        }
    }

    #[test]
    fn matrix_files_round_trip(q in quadruple(6)) {
        let c = q.each_ref().map(circulant);
        let h = goethals_seidel(&c[0], &c[1], &c[2], &c[3]).unwrap();
        let text = write_matrix_text(&h).unwrap();
        prop_assert_eq!(write_matrix_text(&read_matrix_text(&text).unwrap()).unwrap(), text);
        let pbm = write_matrix_pbm(&h).unwrap();
        prop_assert_eq!(write_matrix_pbm(&read_matrix_pbm(&pbm).unwrap()).unwrap(), pbm);
    }
}

#[test]
fn catalog_families_give_hadamard_arrays() {
    for entry in load_catalog().unwrap() {
        let seqs = entry.family.sequences();
        assert!(paf_deficit(&seqs.each_ref(), &[1, 1, 1, 1]).unwrap().iter().all(|&d| d == 0));
        let c = seqs.each_ref().map(circulant);
        let gs = goethals_seidel(&c[0], &c[1], &c[2], &c[3]).unwrap();
        assert!(is_hadamard(&gs).unwrap(), "{}", entry.source);
        let (first, last) = if entry.family.a().is_symmetric() { (0, 3) } else { (3, 0) };
        let pr = propus(&c[first], &c[1], &c[2], &c[last]).unwrap();
        assert!(is_hadamard(&pr).unwrap() && is_symmetric_matrix(&pr), "{}", entry.source);
    }
}

#[test]
fn skew_first_block_gives_skew_type() {
    // v = 3: A = {2} is skew, and the quadruple has zero autocorrelation sum.
    let seqs = ["++-", "-++", "-++", "+++"].map(|s| BinarySequence::from_signs(s).unwrap());
    assert!(seqs[0].is_skew());
    let c = seqs.each_ref().map(circulant);
    let gs = goethals_seidel(&c[0], &c[1], &c[2], &c[3]).unwrap();
    assert!(is_hadamard(&gs).unwrap());
    assert!(is_skew_type(&gs));
}

#[test]
fn emitted_sets_solve_the_triangular_equation() {
    for v in (3..200).step_by(2) {
        for s in enumerate_propus_sets(v).unwrap() {
            assert!(s.check_square_identity(), "{s}");
            let t = s.triangular().unwrap();
            assert_eq!(triangular(t.p) + 2 * triangular(t.q) + triangular(t.r), (v - 1) / 2, "{s}");
            assert!(s.x() >= s.z() && s.x() <= v / 2 && s.y() <= v / 2);
            assert_eq!(s.lambda() as i64, (s.x() + 2 * s.y() + s.z()) as i64 - v as i64);
        }
    }
}

#[test]
fn family_file_round_trip_is_byte_identical() {
    for entry in load_catalog().unwrap() {
        let text = write_family(&entry.family);
        let again = write_family(&parse_family(&text).unwrap());
        assert_eq!(again, text);
    }
}

/// A complementary pair at v = 10 planted among random fillers.
fn planted_tape() -> (Tape, BinarySequence, BinarySequence) {
    let a = BinarySequence::from_signs("-+--++++-+").unwrap();
    let b = BinarySequence::from_signs("+++--++-++").unwrap();
    assert!(propus::search::GolayPair { a: a.clone(), b: b.clone() }.is_complementary());
    let mut rng = propus::search::worker_rng(99, 0);
    let mut fill = |k| propus::search::random_fixed_weight_sequence(10, k, &mut rng).unwrap();
    let mut la: Vec<_> = (0..63).map(|_| fill(4)).collect();
    let mut lb: Vec<_> = (0..63).map(|_| fill(3)).collect();
    la.insert(17, a.clone());
    lb.insert(41, b.clone());
    (Tape::new(la, lb).unwrap(), a, b)
}

#[test]
fn planted_pair_is_found_by_every_variant() {
    let (tape, a, b) = planted_tape();
    for variant in [Variant::Brute, Variant::TwoTable, Variant::HashTree] {
        for m in [1, 4, 8, 16] {
            for mode in [SignMode::Binary, SignMode::Ternary] {
                let crown = Crown::new(m, 64, mode);
                let mut stats = SearchStats::default();
                let mut t = tape.clone();
                let found = golay_round(&mut t, 64, variant, Some(&crown), &mut stats).unwrap();
                assert!(found.iter().any(|p| p.a == a && p.b == b), "{variant:?} m={m} {mode:?}");
                assert!(found.iter().all(|p| p.is_complementary()));
            }
        }
    }
}

#[test]
fn variants_agree_on_a_tape() {
    let mut source = propus::search::RandomSource::new(10, 4, 3, 7).unwrap();
    for w in [16, 64, 128] {
        let tape = Tape::record(&mut source as &mut dyn CandidateSource, w).unwrap();
        let mut outputs = Vec::new();
        for variant in [Variant::Brute, Variant::TwoTable, Variant::HashTree] {
            let crown = Crown::new(4, w, SignMode::Ternary);
            let mut t = tape.clone();
            let mut found =
                golay_round(&mut t, w, variant, Some(&crown), &mut SearchStats::default()).unwrap();
            found.sort();
            outputs.push(found);
        }
        assert!(!outputs[0].is_empty(), "w = {w}");
        assert_eq!(outputs[0], outputs[1]);
        assert_eq!(outputs[1], outputs[2]);
    }
}

#[test]
fn single_worker_runs_are_deterministic() {
    let params: PropusParameterSet = "(13;6,6,6,3;8)".parse().unwrap();
    let cfg = SearchConfig {
        seed: 42,
        crown_exponent: 6,
        batch_size: 128,
        max_solutions: Some(5),
        max_candidates: Some(400_000),
        ..SearchConfig::default()
    };
    let first = propus_search(&params, &cfg, None).unwrap();
    let second = propus_search(&params, &cfg, None).unwrap();
    assert!(!first.families.is_empty());
    assert_eq!(first.families, second.families);
    let mut a = first.stats.clone();
    let mut b = second.stats.clone();
    a.elapsed_ms = 0;
    b.elapsed_ms = 0;
    assert_eq!(a, b);
}

#[test]
fn search_emissions_are_sound() {
    for (p, seed) in [("(9;3,3,3,3;3)", 3), ("(11;5,4,4,3;5)", 4), ("(13;6,6,6,3;8)", 5), ("(15;7,5,5,6;8)", 6)] {
        let params: PropusParameterSet = p.parse().unwrap();
        for slot in [propus::SymmetricSlot::A, propus::SymmetricSlot::D] {
            let cfg = SearchConfig {
                seed,
                crown_exponent: 8,
                max_solutions: Some(3),
                max_candidates: Some(2_000_000),
                symmetric_slot: slot,
                ..SearchConfig::default()
            };
            let out = propus_search(&params, &cfg, None).unwrap();
            for f in &out.families {
                check_sound(f, slot);
            }
        }
    }
}

fn check_sound(f: &DifferenceFamily, slot: propus::SymmetricSlot) {
    let v = f.v();
    let k: usize = f.blocks().iter().map(Block::len).sum();
    assert_eq!(is_difference_family(f.blocks(), v), Some(k - v));
    assert_eq!(f.b(), f.c());
    let sym = if slot == propus::SymmetricSlot::A { f.a() } else { f.d() };
    assert!(sym.is_symmetric());
    let h = propus::arrays::propus_matrix(f);
    assert!(is_hadamard(&h).unwrap() && is_symmetric_matrix(&h));
}
