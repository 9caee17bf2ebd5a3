use matnum::lattice::{digits_for_similar, Lattice};
use matnum::linalg::{hnf_decompose, jordan_block, Int, IntMatrix, IntVector};
use matnum::numeration::{Certificate, NumberSystem, Representer, Word};
use matnum::obstructions::{residue_obstruction, residue_reachability};
use matnum::threedigit::{morphism_e, pmz_system, three_digit_certificate, word_w, word_z, M, P, Z};
use matnum::zero_lang::{is_zero_word, zero_oracle};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn j2_pm() -> NumberSystem {
    NumberSystem::jordan(2, vec![IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[0, -1])]).unwrap()
}

fn binom(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    (0..k).fold(Int::one(), |acc, i| acc * Int::from(n - i) / Int::from(i + 1))
}

fn digit_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, n)
}

fn system_and_words() -> impl Strategy<Value = (NumberSystem, Word, Word)> {
    (1usize..=4, 2usize..=4).prop_flat_map(|(n, k)| {
        (prop::collection::vec(digit_vec(n), k), prop::collection::vec(0..k, 0..=6), prop::collection::vec(0..k, 1..=6))
            .prop_filter_map("distinct digits", move |(ds, u, v)| {
                let digits = ds.iter().map(|d| IntVector::from_i64(d)).collect();
                let ns = NumberSystem::jordan(n, digits).ok()?;
                Some((ns, Word::new(u), Word::new(v)))
            })
    })
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_filter_map("unimodular", move |xs| {
        let rows = xs.chunks(n).map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        let m = IntMatrix::from_rows(rows).ok()?;
        m.det().ok()?.abs().is_one().then_some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn concatenation_identity((ns, u, v) in system_and_words()) {
        let uv = u.concat(&v);
        let lhs = ns.evaluate(&uv).unwrap();
        let mu = if u.is_empty() { IntVector::zeros(ns.dim()) } else { ns.evaluate(&u).unwrap() };
        let shifted = ns.base().pow(v.len() as u64).unwrap().mat_vec(&mu).unwrap();
        prop_assert_eq!(lhs, shifted.add(&ns.evaluate(&v).unwrap()).unwrap());
    }

    #[test]
    fn matrix_power_additivity(a in 0u64..12, b in 0u64..12, n in 1usize..=5) {
        let j = jordan_block(n).unwrap();
        prop_assert_eq!(j.pow(a + b).unwrap(), j.pow(a).unwrap().mul(&j.pow(b).unwrap()).unwrap());
        let p = j.pow(a).unwrap();
        for r in 0..n {
            for c in r..n {
                prop_assert_eq!(p.get(r, c), &binom(a, (c - r) as u64));
            }
        }
    }

    #[test]
    fn hnf_invariants(xs in prop::collection::vec(-6i64..=6, 9)) {
        let rows = xs.chunks(3).map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        let p = IntMatrix::from_rows(rows).unwrap();
        prop_assume!(!p.det().unwrap().is_zero());
        let (b, u) = hnf_decompose(&p).unwrap();
        prop_assert_eq!(b.mul(&u).unwrap(), p.clone());
        prop_assert!(b.is_upper_triangular());
        prop_assert!((0..3).all(|i| b.get(i, i).is_positive()));
        prop_assert!(u.det().unwrap().abs().is_one());
        prop_assert_eq!(b.det().unwrap().abs(), p.det().unwrap().abs());
        for i in 0..3 {
            for k in i + 1..3 {
                prop_assert!(!b.get(i, k).is_negative() && b.get(i, k) < b.get(i, i));
            }
        }
        let (b2, _) = hnf_decompose(&p).unwrap();
        prop_assert_eq!(b, b2);
    }

    #[test]
    fn e_negation(letters in prop::collection::vec(prop::sample::select(vec![P, M, Z]), 1..=8), n in 1usize..=5) {
        let ns = pmz_system(n).unwrap();
        let w = Word::new(letters);
        prop_assert_eq!(ns.evaluate(&morphism_e(&w)).unwrap(), ns.evaluate(&w).unwrap().neg());
    }

    #[test]
    fn represent_j2(x in -50i64..=50, y in -50i64..=50) {
        let ns = j2_pm();
        let w = |s: &str| Word::parse(s, 2).unwrap();
        let cert = Certificate::from_words(&ns, vec![[w("01"), w("10"), w("01"), w("10")], [w("0"), w("1"), w("0"), w("1")]]).unwrap();
        let t = IntVector::from_i64(&[x, y]);
        let word = Representer::new(&ns, &cert).unwrap().represent(&t).unwrap();
        prop_assert_eq!(ns.evaluate(&word).unwrap(), t);
    }

    #[test]
    fn represent_three_digit(xs in prop::collection::vec(-50i64..=50, 3)) {
        let ns = pmz_system(3).unwrap();
        let cert = three_digit_certificate(3).unwrap();
        let t = IntVector::from_i64(&xs);
        let word = Representer::new(&ns, &cert).unwrap().represent(&t).unwrap();
        prop_assert_eq!(ns.evaluate(&word).unwrap(), t);
    }

    #[test]
    fn zero_words_pump(letters in prop::collection::vec(0usize..2, 1..=16)) {
        let ns = j2_pm();
        let w = Word::new(letters);
        if ns.evaluate(&w).unwrap().is_zero() {
            for r in 1..=4 {
                prop_assert!(ns.evaluate(&w.repeat(r)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn oracle_agrees(letters in prop::collection::vec(0usize..2, 1..=200)) {
        let w = Word::new(letters);
        prop_assert_eq!(is_zero_word(&w).unwrap().member, zero_oracle(&w).unwrap());
    }

    #[test]
    fn residue_obstructions_are_sound(ds in prop::collection::vec(digit_vec(2), 2..=3)) {
        let digits: Vec<IntVector> = ds.iter().map(|d| IntVector::from_i64(d)).collect();
        let Ok(ns) = NumberSystem::jordan(2, digits) else { return Ok(()) };
        if let Some(o) = residue_obstruction(&ns, 6).unwrap() {
            o.verify(&ns).unwrap();
        }
    }

    #[test]
    fn transport_soundness(v in unimodular(3), letters in prop::collection::vec(0usize..3, 1..=12)) {
        let j = jordan_block(3).unwrap();
        let m = v.inverse().unwrap().unwrap().mul(&j).unwrap().mul(&v).unwrap();
        let out = digits_for_similar(&m).unwrap();
        let lattice: &Lattice = &out.lattice;
        prop_assert!(lattice.is_jordan_stable() && lattice.has_divisibility_chain());
        let w = Word::new(letters);
        let on_m = out.system(&m).unwrap().evaluate(&w).unwrap();
        let on_j = NumberSystem::jordan(3, out.lattice_digits.clone()).unwrap().evaluate(&w).unwrap();
        prop_assert_eq!(out.conjugator.mat_vec(&on_m).unwrap(), on_j);
    }
}

#[test]
fn thue_morse_generating_identities() {
    fn poly(factors: impl Iterator<Item = usize>) -> Vec<i64> {
        let mut c = vec![1i64];
        for e in factors {
            let mut next = vec![0i64; c.len() + e];
            for (i, x) in c.iter().enumerate() {
                next[i] += x;
                next[i + e] -= x;
            }
            c = next;
        }
        c
    }
    let coeffs = |w: &Word| -> Vec<i64> { w.letters().iter().map(|&l| [1, -1, 0][l]).collect() };
    for k in 1..=6 {
        assert_eq!(coeffs(&word_w(k).unwrap()), poly((0..k).map(|l| 1 << l)));
        assert_eq!(coeffs(&word_z(k).unwrap()), poly((0..k).map(|l| (1 << (l + 1)) - 1)));
    }
}

#[test]
fn zero_language_closed_under_e() {
    for len in 1..=12usize {
        for bits in 0u32..(1 << len) {
            let w = Word::new((0..len).map(|i| ((bits >> i) & 1) as usize).collect());
            if is_zero_word(&w).unwrap().member {
                let e = Word::new(w.letters().iter().map(|&c| 1 - c).collect());
                assert!(is_zero_word(&e).unwrap().member);
            }
        }
    }
}

#[test]
fn full_systems_have_complete_residues() {
    let ns = NumberSystem::jordan(3, vec![IntVector::from_i64(&[0, 0, 1]), IntVector::from_i64(&[0, 1, -2])]).unwrap();
    for m in 2..=6 {
        assert!(residue_reachability(&ns, m).unwrap().is_complete(), "m = {m}");
    }
}

#[test]
fn certificate_json_round_trip() {
    let ns = pmz_system(4).unwrap();
    let cert = three_digit_certificate(4).unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    let back: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    back.verify(&ns).unwrap();
}
