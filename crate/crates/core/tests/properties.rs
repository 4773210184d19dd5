use itertools::Itertools;
use proptest::prelude::*;

use lrc::code::LrcCode;
use lrc::codespec::{AnyCode, CodeSpecFile};
use lrc::generate::{generate, GenRequest};
use lrc::gf::{Field, FieldElement};
use lrc::goodpoly::{from_additive_subgroup, from_multiplicative_subgroup, verify_good, Goodness, Partition};
use lrc::multiset::intersect_spaces;
use lrc::oracle::{erasure_decode_global, min_distance_exhaustive, LinearCode};
use lrc::poly::{annihilator, crt_combine, interpolate, Polynomial};

const FIELDS: [(u32, u32); 7] = [(2, 1), (3, 1), (13, 1), (2, 4), (7, 2), (3, 3), (2, 8)];

fn field(i: usize) -> Field {
    let (p, l) = FIELDS[i % FIELDS.len()];
    Field::standard(p, l).unwrap()
}

fn el(f: &Field, v: u64) -> FieldElement {
    f.element(v % f.order() as u64).unwrap()
}

fn poly(f: &Field, coeffs: &[u64]) -> Polynomial {
    Polynomial::new(coeffs.iter().map(|&c| el(f, c)).collect())
}

fn corpus_codes() -> Vec<(String, AnyCode)> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .sorted()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let code = CodeSpecFile::from_json(&text).unwrap().load().unwrap();
            (p.file_name().unwrap().to_string_lossy().into_owned(), code)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn field_axioms(fi in 0usize..7, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field(fi);
        let (a, b, c) = (el(&f, a), el(&f, b), el(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != f.zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.element(a.value() as u64).unwrap(), a);
    }

    #[test]
    fn interpolate_inverts_evaluate(fi in 2usize..7, coeffs in prop::collection::vec(any::<u64>(), 0..8), extra in 0usize..4) {
        let f = field(fi);
        let p = poly(&f, &coeffs);
        let count = (coeffs.len() + extra).clamp(1, f.order() as usize);
        let points: Vec<(FieldElement, FieldElement)> = f
            .elements()
            .take(count)
            .map(|x| (x, p.evaluate(&f, x)))
            .collect();
        if coeffs.len() <= count {
            prop_assert_eq!(interpolate(&f, &points).unwrap(), p);
        }
    }

    #[test]
    fn divmod_reconstructs(fi in 0usize..7, a in prop::collection::vec(any::<u64>(), 0..10), b in prop::collection::vec(any::<u64>(), 1..5)) {
        let f = field(fi);
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&f, &b).unwrap();
        prop_assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn crt_matches_residues(r1 in prop::collection::vec(any::<u64>(), 0..3), r2 in prop::collection::vec(any::<u64>(), 0..2)) {
        let f = Field::prime(13).unwrap();
        let m1 = annihilator(&f, &[el(&f, 1), el(&f, 5), el(&f, 7)]);
        let m2 = annihilator(&f, &[el(&f, 2), el(&f, 9)]);
        let (a, b) = (poly(&f, &r1), poly(&f, &r2));
        let combined = crt_combine(&f, &[a.clone(), b.clone()], &[m1.clone(), m2.clone()]).unwrap();
        prop_assert_eq!(combined.rem(&f, &m1).unwrap(), a);
        prop_assert_eq!(combined.rem(&f, &m2).unwrap(), b);
    }

    #[test]
    fn shipped_codes_repair_every_position(seed in any::<u64>()) {
        for (name, code) in corpus_codes() {
            let f = code.field().clone();
            let msg: Vec<FieldElement> = (0..code.dimension() as u64)
                .map(|i| el(&f, seed.wrapping_mul(i + 1).rotate_left(i as u32 * 7)))
                .collect();
            let word = code.encode(&msg).unwrap();
            prop_assert_eq!(erasure_decode_global(&code, &word.iter().copied().map(Some).collect::<Vec<_>>()).unwrap(), msg.clone());
            for pos in 0..code.length() {
                let mut received: Vec<Option<FieldElement>> = word.iter().copied().map(Some).collect();
                received[pos] = None;
                for via in 1..=code.routes() {
                    prop_assert_eq!(code.repair(&received, pos, via).unwrap(), word[pos], "{} {} {}", name, pos, via);
                }
            }
        }
    }

    #[test]
    fn generated_specs_round_trip(k in 1usize..7, r in 1usize..4, blocks in 1usize..4) {
        let n = blocks * (r + 1);
        prop_assume!(k <= n * r / (r + 1));
        let mut req = GenRequest::new(n, k, r);
        req.q = Some(13);
        if let Ok(code) = generate(&req) {
            let spec = code.to_spec();
            let again = CodeSpecFile::from_json(&spec.to_json()).unwrap().load().unwrap();
            prop_assert_eq!(again.generator_matrix(), code.generator_matrix());
            prop_assert_eq!(again.to_spec(), spec);
        }
    }
}

#[test]
fn fermat_and_orders_exhaustively() {
    for (p, l) in [(2, 1), (13, 1), (2, 4), (7, 2), (3, 5), (2, 12), (61, 2)] {
        let f = Field::standard(p, l).unwrap();
        let q1 = f.order() as u64 - 1;
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, q1), f.one());
            assert_eq!(q1 % f.multiplicative_order(a).unwrap(), 0);
        }
    }
}

#[test]
fn annihilators_vanish_exactly_on_their_set() {
    let f = Field::standard(2, 6).unwrap();
    for step in [1u64, 3, 7, 11] {
        let set: Vec<FieldElement> = (0..20).map(|i| el(&f, i * step)).unique().collect();
        let a = annihilator(&f, &set);
        assert_eq!(a.degree(), Some(set.len()));
        assert_eq!(a.leading(), Some(f.one()));
        for x in f.elements() {
            assert_eq!(a.evaluate(&f, x) == f.zero(), set.contains(&x));
        }
    }
}

#[test]
fn subgroup_good_polynomials_are_good() {
    for (p, l) in [(13, 1), (2, 4), (7, 2), (31, 1), (3, 4)] {
        let f = Field::standard(p, l).unwrap();
        let q1 = f.order() as u64 - 1;
        for d in (2..=q1).filter(|d| q1.is_multiple_of(*d)) {
            let gen = f.element_of_order(d).unwrap();
            let gp = from_multiplicative_subgroup(&f, gen, (q1 / d) as usize).unwrap();
            let Goodness::Constant(values) = verify_good(&f, gp.polynomial(), gp.partition()) else {
                panic!("F_{} order {d}", f.order());
            };
            // x^|H| at each coset representative, all distinct
            for (block, v) in gp.partition().blocks().iter().zip(&values) {
                assert_eq!(f.pow(block[0], d), *v);
            }
            assert_eq!(values.iter().unique().count(), values.len());
        }
        for j in 1..l {
            let gens: Vec<FieldElement> = (0..j).map(|i| el(&f, (p as u64).pow(i))).collect();
            let count = (f.order() / p.pow(j)) as usize;
            let gp = from_additive_subgroup(&f, &gens, count).unwrap();
            assert!(matches!(verify_good(&f, gp.polynomial(), gp.partition()), Goodness::Constant(_)));
        }
    }
}

#[test]
fn shipped_codes_have_full_rank_and_declared_locality() {
    for (name, code) in corpus_codes() {
        let f = code.field().clone();
        assert_eq!(code.generator_matrix().rank(&f), code.dimension(), "{name}");
        let sets: Vec<(usize, Vec<usize>)> = (0..code.length())
            .flat_map(|p| code.recovering_sets(p).unwrap().into_iter().map(move |s| (p, s)))
            .collect();
        let report = lrc::oracle::verify_locality(&code, &sets, 1 << 16).unwrap();
        assert!(report.iter().all(|e| e.holds), "{name}");
    }
}

#[test]
fn decoding_polynomial_is_shared_within_each_block() {
    let code = corpus_codes().into_iter().find(|(n, _)| n == "lrc-12-6-3-f13.json").unwrap().1;
    let lrc: &LrcCode = code.as_lrc().unwrap();
    let f = code.field().clone();
    let word = code.encode(&(1..=6).map(|v| el(&f, v * v)).collect::<Vec<_>>()).unwrap();
    for block in lrc.blocks() {
        let deltas: Vec<Polynomial> = block
            .positions
            .iter()
            .map(|&p| {
                let mut received: Vec<Option<FieldElement>> = word.iter().copied().map(Some).collect();
                received[p] = None;
                lrc.decoding_polynomial(&received, p).unwrap()
            })
            .collect();
        assert!(deltas.iter().all_equal());
    }
}

#[test]
fn reed_solomon_specialization_is_vandermonde() {
    let f = Field::prime(13).unwrap();
    let points: Vec<FieldElement> = (1..10).map(|v| el(&f, v)).collect();
    let rs = LrcCode::reed_solomon(&f, points.clone(), 4).unwrap();
    let g = rs.generator_matrix();
    for i in 0..4 {
        let row: Vec<FieldElement> = points.iter().map(|&x| f.pow(x, i as u64)).collect();
        assert_eq!(g.row(i), row.as_slice());
    }
}

#[test]
fn global_erasure_decoding_up_to_distance() {
    let code = corpus_codes().into_iter().find(|(n, _)| n == "lrc-9-4-2-f13.json").unwrap().1;
    let f = code.field().clone();
    let d = min_distance_exhaustive(&code, 1 << 20).unwrap().distance;
    let msg: Vec<FieldElement> = [3, 1, 4, 1].iter().map(|&v| el(&f, v)).collect();
    let word = code.encode(&msg).unwrap();
    let mut failures = 0;
    for e in 0..=d {
        for pattern in (0..9).combinations(e) {
            let received: Vec<Option<FieldElement>> = (0..9)
                .map(|p| (!pattern.contains(&p)).then_some(word[p]))
                .collect();
            match erasure_decode_global(&code, &received) {
                Ok(got) => assert_eq!(got, msg),
                Err(_) => {
                    assert_eq!(e, d, "pattern {pattern:?} failed below d");
                    failures += 1;
                }
            }
        }
    }
    assert!(failures > 0);
}

#[test]
fn intersection_ignores_block_order() {
    let f = Field::prime(13).unwrap();
    let a = Partition::from_values(&f, &[vec![1, 5, 12, 8], vec![2, 10, 11, 3], vec![4, 7, 9, 6]]).unwrap();
    let b = Partition::from_values(&f, &[vec![1, 3, 9], vec![2, 6, 5], vec![4, 12, 10], vec![7, 8, 11]]).unwrap();
    let a2 = Partition::from_values(&f, &[vec![6, 9, 7, 4], vec![8, 12, 5, 1], vec![3, 11, 10, 2]]).unwrap();
    let b2 = Partition::from_values(&f, &[vec![11, 8, 7], vec![10, 12, 4], vec![9, 3, 1], vec![5, 6, 2]]).unwrap();
    for m in [7, 12] {
        assert_eq!(intersect_spaces(&f, &a, &b, m).unwrap(), intersect_spaces(&f, &a2, &b2, m).unwrap());
    }
}
