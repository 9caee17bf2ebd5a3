//! Lattice number systems over `J_n` and digit sets for matrices similar to
//! a Jordan block.
//!
//! For `M = P⁻¹ J_n P` with `P` integral, `(M, D)` is full exactly when
//! `(J_n, P·D)` is full for the lattice `P·Zⁿ = B·Zⁿ`, where `P = B·U` is the
//! Hermite decomposition.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hnf_decompose, jordan_block, Int, IntMatrix, IntVector};
use crate::numeration::{Certificate, NumberSystem, Representer, Word};
use crate::search::search_certificate;

/// `B·Zⁿ` for an upper triangular `B` with positive diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "IntMatrix", try_from = "IntMatrix")]
pub struct Lattice {
    b: IntMatrix,
}

impl TryFrom<IntMatrix> for Lattice {
    type Error = Error;

    fn try_from(b: IntMatrix) -> Result<Self> {
        Lattice::new(b)
    }
}

impl From<Lattice> for IntMatrix {
    fn from(l: Lattice) -> Self {
        l.b
    }
}

impl Lattice {
    pub fn new(b: IntMatrix) -> Result<Self> {
        let n = b.require_square()?;
        if !b.is_upper_triangular() {
            return Err(Error::input("lattice basis must be upper triangular"));
        }
        if (0..n).any(|i| !b.get(i, i).is_positive()) {
            return Err(Error::input("lattice basis must have a positive diagonal"));
        }
        Ok(Lattice { b })
    }

    pub fn identity(n: usize) -> Self {
        Lattice { b: IntMatrix::identity(n) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.dim()).map(|i| self.b.get(i, i).clone()).collect()
    }

    /// `B⁻¹·v` by back substitution, or `None` when `v` is not in the lattice.
    pub fn coords(&self, v: &IntVector) -> Result<Option<IntVector>> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::dim(format!("vector length {} for lattice dimension {n}", v.len())));
        }
        let mut x = vec![Int::zero(); n];
        for i in (0..n).rev() {
            let mut rhs = v[i].clone();
            for (k, xk) in x.iter().enumerate().skip(i + 1) {
                rhs -= self.b.get(i, k) * xk;
            }
            let (q, r) = rhs.div_rem(self.b.get(i, i));
            if !r.is_zero() {
                return Ok(None);
            }
            x[i] = q;
        }
        Ok(Some(IntVector::new(x)?))
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        matches!(self.coords(v), Ok(Some(_)))
    }

    /// `B·x`.
    pub fn point(&self, x: &IntVector) -> Result<IntVector> {
        self.b.mat_vec(x)
    }

    /// `J_n·B·e_j ∈ B·Zⁿ` for every `j`.
    pub fn is_jordan_stable(&self) -> bool {
        let j = jordan_block(self.dim()).expect("positive dimension");
        (0..self.dim()).all(|c| j.mat_vec(&self.b.column(c)).map(|v| self.contains(&v)).unwrap_or(false))
    }

    /// `b_{j,j} | b_{j+1,j+1}` along the diagonal.
    pub fn has_divisibility_chain(&self) -> bool {
        self.diagonal().windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    /// Lower-right block with the first `k` rows and columns removed.
    pub fn trailing(&self, k: usize) -> Lattice {
        Lattice { b: self.b.trailing_block(k) }
    }

    fn require_invariants(&self) -> Result<()> {
        if !self.is_jordan_stable() {
            return Err(Error::input("lattice is not mapped into itself by the Jordan block"));
        }
        if !self.has_divisibility_chain() {
            return Err(Error::input("lattice diagonal violates the divisibility chain"));
        }
        Ok(())
    }
}

/// A digit set inside a Jordan-stable lattice, with base `J_n`.
#[derive(Debug, Clone)]
pub struct LatticeSystem {
    ns: NumberSystem,
    lattice: Lattice,
}

impl LatticeSystem {
    pub fn new(lattice: Lattice, digits: Vec<IntVector>) -> Result<Self> {
        lattice.require_invariants()?;
        for (i, d) in digits.iter().enumerate() {
            if !lattice.contains(d) {
                return Err(Error::input(format!("digit {i} = {d} is outside the lattice")));
            }
        }
        let ns = NumberSystem::jordan(lattice.dim(), digits)?;
        Ok(LatticeSystem { ns, lattice })
    }

    pub fn system(&self) -> &NumberSystem {
        &self.ns
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Checks a certificate with the lattice gcd condition.
    pub fn verify(&self, cert: &Certificate) -> Result<()> {
        cert.verify_with_gcds(&self.ns, &self.lattice.diagonal())
    }
}

/// Searches pivot witnesses with `gcd(C_j, D_j) = b_{j,j}`.
pub fn lattice_certificate(ls: &LatticeSystem, length_bound: usize, k_max: usize) -> Result<Option<Certificate>> {
    search_certificate(&ls.ns, &ls.lattice.diagonal(), length_bound, k_max)
}

/// `(M - I)ⁿ = 0` and `(M - I)ⁿ⁻¹ ≠ 0`.
pub fn is_similar_to_jordan(m: &IntMatrix) -> bool {
    let Ok(n) = m.require_square() else { return false };
    let Ok(nil) = m.sub(&IntMatrix::identity(n)) else { return false };
    let Ok(top) = nil.pow(n as u64 - 1) else { return false };
    !top.is_zero() && top.mul(&nil).map(|x| x.is_zero()).unwrap_or(false)
}

/// Integral `P` with `P·M = J_n·P`, rows `w, w·N, …, w·N^{n-1}` for
/// `N = M - I` and the first standard row `w` with `w·N^{n-1} ≠ 0`.
pub fn conjugator(m: &IntMatrix) -> Result<IntMatrix> {
    if !is_similar_to_jordan(m) {
        return Err(Error::input("matrix is not similar to a Jordan block"));
    }
    let n = m.rows();
    let nil = m.sub(&IntMatrix::identity(n))?;
    let top = nil.pow(n as u64 - 1)?;
    let i = (0..n)
        .find(|&i| !top.row(i).is_zero())
        .ok_or_else(|| Error::internal("nilpotent of full index has a non-zero row"))?;
    let nt = transpose(&nil);
    let mut rows = Vec::with_capacity(n);
    let mut w = IntVector::unit(n, i);
    for _ in 0..n {
        rows.push(w.entries().to_vec());
        w = nt.mat_vec(&w)?;
    }
    IntMatrix::from_rows(rows)
}

fn transpose(m: &IntMatrix) -> IntMatrix {
    let rows = (0..m.cols()).map(|j| m.column(j).into_entries()).collect();
    IntMatrix::from_rows(rows).expect("non-empty")
}

fn words(texts: [&str; 4], k: usize) -> Result<[Word; 4]> {
    let mut out: [Word; 4] = Default::default();
    for (slot, t) in out.iter_mut().zip(texts) {
        *slot = Word::parse(t, k)?;
    }
    Ok(out)
}

/// Two digits and a certificate for the 2×2 lattice `((a, b), (0, c))`.
///
/// `c/a` even: digits `B(0,1)`, `B(1,-1)`. Otherwise `B(1,1)`, `B(1,-1)`.
/// Pivot 1 uses `[v₁v₂]`, `[v₂v₁]` unless `c = ±a`, where it uses `[v₂v₁]`
/// or `[v₁v₂]` against the cubed versions `[v₂³v₁³]` or `[v₁³v₂³]`.
pub fn construct_digits_dim2(b: &IntMatrix) -> Result<(Vec<IntVector>, Certificate)> {
    if b.rows() != 2 || b.cols() != 2 || !b.get(1, 0).is_zero() {
        return Err(Error::input("expected an upper triangular 2x2 matrix"));
    }
    let (a, c) = (b.get(0, 0).clone(), b.get(1, 1).clone());
    if a.is_zero() || c.is_zero() || !c.is_multiple_of(&a) {
        return Err(Error::input("need a, c non-zero with a | c"));
    }
    let k = &c / &a;
    let coords: [[i64; 2]; 2] = if k.is_even() { [[0, 1], [1, -1]] } else { [[1, 1], [1, -1]] };
    let digits = coords
        .iter()
        .map(|x| b.mat_vec(&IntVector::from_i64(x)))
        .collect::<Result<Vec<_>>>()?;
    let ns = NumberSystem::jordan(2, digits.clone())?;
    let value = |t: &str| -> Result<Int> { Ok(ns.evaluate(&Word::parse(t, 2)?)?[0].clone()) };
    let (x, y) = if k.abs() == Int::from(1) {
        // One short and one long word with opposite signs.
        let mut pick = None;
        for (s, l) in [("10", "111000"), ("01", "000111")] {
            if (value(s)? * value(l)?).is_negative() {
                pick = Some((s, l));
                break;
            }
        }
        pick.ok_or_else(|| Error::internal("no opposite-sign pair for c = ±a"))?
    } else {
        ("01", "10")
    };
    let (pos, neg) = if value(x)?.is_positive() { (x, y) } else { (y, x) };
    let (p2, n2) = if ns.digit(0)[1].is_positive() { ("0", "1") } else { ("1", "0") };
    let cert = Certificate::from_words(&ns, vec![words([pos, neg, pos, neg], 2)?, words([p2, n2, p2, n2], 2)?])?;
    cert.verify_with_gcds(&ns, &[a.abs(), c.abs()])?;
    Ok((digits, cert))
}

/// `n` digits in `B·Zⁿ` and a certificate with the lattice gcd condition.
///
/// The digit set for the trailing `(n-1)`-block is lifted by prepending a
/// zero coordinate to its lattice coordinates. A zero word of the smaller
/// system, balanced from its pivot-1 witnesses, lifts to `(A, 0, …, 0)`;
/// the new first digit is `B(∓1, 0, …, 0)` with sign opposite to `A`. New
/// digits come first, so the order `v₁, …, v_n` matches the lattice pivots.
pub fn construct_digits(lattice: &Lattice) -> Result<(Vec<IntVector>, Certificate)> {
    lattice.require_invariants()?;
    let n = lattice.dim();
    let b = lattice.matrix();
    if n == 1 {
        let digits = vec![b.column(0), b.column(0).neg()];
        let ns = NumberSystem::jordan(1, digits.clone())?;
        let cert = Certificate::from_words(&ns, vec![words(["0", "1", "0", "1"], 2)?])?;
        cert.verify_with_gcds(&ns, &lattice.diagonal())?;
        return Ok((digits, cert));
    }
    if n == 2 {
        return construct_digits_dim2(b);
    }
    let sub = lattice.trailing(1);
    let (sub_digits, sub_cert) = construct_digits(&sub)?;
    let sub_coords = sub_digits
        .iter()
        .map(|d| sub.coords(d)?.ok_or_else(|| Error::internal("sub-digit outside its lattice")))
        .collect::<Result<Vec<_>>>()?;
    let lift = |x: &IntVector, top: i64| -> Result<IntVector> {
        let mut c = vec![Int::from(top)];
        c.extend_from_slice(x.entries());
        b.mat_vec(&IntVector::new(c)?)
    };
    let mut lifted = sub_coords.iter().map(|x| lift(x, 0)).collect::<Result<Vec<_>>>()?;

    let p1 = sub_cert.pivot(1);
    let g = p1.a().gcd(p1.b());
    let reps_a = (p1.b().abs() / &g).to_usize().ok_or_else(|| Error::internal("witness too large"))?;
    let reps_b = (p1.a() / &g).to_usize().ok_or_else(|| Error::internal("witness too large"))?;
    let zero_sub = p1.words[0].repeat(reps_a).concat(&p1.words[1].repeat(reps_b));

    let mut top = NumberSystem::jordan(n, lifted.clone())?.evaluate(&zero_sub)?;
    if top[0].is_zero() {
        let used = zero_sub.letters()[0];
        lifted[used] = lift(&sub_coords[used], 1)?;
        top = NumberSystem::jordan(n, lifted.clone())?.evaluate(&zero_sub)?;
        if top[0].is_zero() {
            return Err(Error::internal("perturbed zero word still vanishes"));
        }
    }
    if top.entries()[1..].iter().any(|x| !x.is_zero()) {
        return Err(Error::internal("lifted zero word leaves lower coordinates"));
    }
    let sign = if top[0].is_positive() { -1 } else { 1 };
    let mut unit = vec![0i64; n];
    unit[0] = sign;
    let new_digit = b.mat_vec(&IntVector::from_i64(&unit))?;

    let mut digits = vec![new_digit];
    digits.extend(lifted);
    let ns = NumberSystem::jordan(n, digits.clone())?;
    let shift = |w: &Word| Word::new(w.letters().iter().map(|c| c + 1).collect());
    let zero_word = shift(&zero_sub);
    let single = Word::new(vec![0]);
    let (pos, neg) = if top[0].is_positive() { (zero_word, single.clone()) } else { (single.clone(), zero_word) };
    let mut all = vec![[pos, neg, single.clone(), single]];
    for p in sub_cert.pivots() {
        all.push([shift(&p.words[0]), shift(&p.words[1]), shift(&p.words[2]), shift(&p.words[3])]);
    }
    let cert = Certificate::from_words(&ns, all)?;
    cert.verify_with_gcds(&ns, &lattice.diagonal())?;
    Ok((digits, cert))
}

/// Digits for `M`, with the data needed to check and use them through the
/// conjugation to `J_n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimilarConstruction {
    pub digits: Vec<IntVector>,
    pub conjugator: IntMatrix,
    pub lattice: Lattice,
    pub unimodular: IntMatrix,
    pub lattice_digits: Vec<IntVector>,
    pub certificate: Certificate,
}

impl SimilarConstruction {
    pub fn system(&self, m: &IntMatrix) -> Result<NumberSystem> {
        NumberSystem::new(m.clone(), self.digits.clone())
    }
}

/// Runs conjugation, Hermite decomposition and the lattice construction, and
/// maps the lattice digits back through `P⁻¹`.
pub fn digits_for_similar(m: &IntMatrix) -> Result<SimilarConstruction> {
    let p = conjugator(m)?;
    let (b, u) = hnf_decompose(&p)?;
    let lattice = Lattice::new(b)?;
    let (lattice_digits, certificate) = construct_digits(&lattice)?;
    let digits = lattice_digits
        .iter()
        .map(|v| p.solve(v)?.ok_or_else(|| Error::internal("lattice digit has no integral preimage")))
        .collect::<Result<Vec<_>>>()?;
    let out = SimilarConstruction { digits, conjugator: p, lattice, unimodular: u, lattice_digits, certificate };
    verify_transported(m, &out.digits, &out.conjugator, &out.lattice, &out.certificate)?;
    Ok(out)
}

/// Independent check that `(M, digits)` is full: `P·M = J_n·P`,
/// `P·Zⁿ = B·Zⁿ`, and the certificate holds for `(J_n, P·digits)` with the
/// lattice gcd condition.
pub fn verify_transported(m: &IntMatrix, digits: &[IntVector], p: &IntMatrix, lattice: &Lattice, cert: &Certificate) -> Result<()> {
    let n = m.require_square()?;
    let j = jordan_block(n)?;
    if p.mul(m)? != j.mul(p)? {
        return Err(Error::cert("conjugator does not satisfy P·M = J·P"));
    }
    let u = lattice_transform(lattice, p)?;
    if u.det()?.abs() != Int::from(1) {
        return Err(Error::cert("conjugator and lattice span different lattices"));
    }
    let mapped = digits.iter().map(|w| p.mat_vec(w)).collect::<Result<Vec<_>>>()?;
    let ls = LatticeSystem::new(lattice.clone(), mapped)?;
    ls.verify(cert)
}

/// `B⁻¹·P`, which must be integral.
fn lattice_transform(lattice: &Lattice, p: &IntMatrix) -> Result<IntMatrix> {
    let n = lattice.dim();
    let mut cols = Vec::with_capacity(n);
    for c in 0..n {
        cols.push(
            lattice
                .coords(&p.column(c))?
                .ok_or_else(|| Error::cert("conjugator column outside the lattice"))?,
        );
    }
    let rows = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    IntMatrix::from_rows(rows)
}

/// Representation for a base similar to `J_n`, computed in Jordan
/// coordinates and valid for `M` unchanged.
pub fn represent_similar(m: &IntMatrix, construction: &SimilarConstruction, target: &IntVector) -> Result<Word> {
    let n = m.require_square()?;
    let jn = NumberSystem::jordan(n, construction.lattice_digits.clone())?;
    let mut rep = Representer::new(&jn, &construction.certificate)?;
    let word = rep.represent(&construction.conjugator.mat_vec(target)?)?;
    let ns = construction.system(m)?;
    if &ns.evaluate(&word)? != target {
        return Err(Error::internal("transported representation does not reproduce the target"));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstructions::{residue_span_bound, superdiagonal_two};

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64(x)
    }

    fn eval(ns: &NumberSystem, w: &str) -> IntVector {
        ns.evaluate(&Word::parse(w, ns.digit_count()).unwrap()).unwrap()
    }

    #[test]
    fn similarity() {
        assert!(is_similar_to_jordan(&jordan_block(4).unwrap()));
        assert!(is_similar_to_jordan(&superdiagonal_two(4).unwrap()));
        assert!(!is_similar_to_jordan(&IntMatrix::identity(3)));
        assert!(is_similar_to_jordan(&IntMatrix::identity(1)));
        assert!(conjugator(&IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn conjugator_relation() {
        for m in [jordan_block(3).unwrap(), superdiagonal_two(3).unwrap(), superdiagonal_two(5).unwrap()] {
            let p = conjugator(&m).unwrap();
            let j = jordan_block(m.rows()).unwrap();
            assert_eq!(p.mul(&m).unwrap(), j.mul(&p).unwrap());
            assert!(!p.det().unwrap().is_zero());
        }
    }

    #[test]
    fn dim2_even_case() {
        let (digits, cert) = construct_digits_dim2(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]])).unwrap();
        assert_eq!(digits, vec![v(&[0, 4]), v(&[2, -4])]);
        let ns = NumberSystem::jordan(2, digits).unwrap();
        assert_eq!(eval(&ns, "01"), v(&[6, 0]));
        assert_eq!(eval(&ns, "10"), v(&[-2, 0]));
        assert_eq!(cert.pivot(1).gcd(), Int::from(2));
    }

    #[test]
    fn dim2_odd_case() {
        let (digits, _) = construct_digits_dim2(&IntMatrix::from_i64(&[&[1, 0], &[0, 3]])).unwrap();
        assert_eq!(digits, vec![v(&[1, 3]), v(&[1, -3])]);
        let ns = NumberSystem::jordan(2, digits).unwrap();
        assert_eq!(eval(&ns, "01"), v(&[5, 0]));
        assert_eq!(eval(&ns, "10"), v(&[-1, 0]));
    }

    #[test]
    fn dim2_equal_case() {
        let (digits, cert) = construct_digits_dim2(&IntMatrix::identity(2)).unwrap();
        assert_eq!(digits, vec![v(&[1, 1]), v(&[1, -1])]);
        let ns = NumberSystem::jordan(2, digits).unwrap();
        assert_eq!(eval(&ns, "10"), v(&[1, 0]));
        assert_eq!(eval(&ns, "111000"), v(&[-3, 0]));
        cert.verify(&ns).unwrap();
        let (digits, cert) = construct_digits_dim2(&IntMatrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap();
        let ns = NumberSystem::jordan(2, digits).unwrap();
        cert.verify(&ns).unwrap();
        assert!(construct_digits_dim2(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])).is_err());
    }

    #[test]
    fn recursive_construction() {
        for diag in [vec![1, 1], vec![1, 2, 4], vec![2, 2, 6], vec![1, 1, 1, 1]] {
            let n = diag.len();
            let mut b = IntMatrix::identity(n);
            for (i, d) in diag.iter().enumerate() {
                b.set(i, i, Int::from(*d));
            }
            let lattice = Lattice::new(b).unwrap();
            let (digits, cert) = construct_digits(&lattice).unwrap();
            assert_eq!(digits.len(), n);
            let ls = LatticeSystem::new(lattice, digits).unwrap();
            ls.verify(&cert).unwrap();
        }
    }

    #[test]
    fn lattice_checks() {
        let l = Lattice::new(IntMatrix::from_i64(&[&[2, 1, 1], &[0, 2, 0], &[0, 0, 4]])).unwrap();
        assert!(l.is_jordan_stable());
        assert!(l.contains(&v(&[1, 0, 4])));
        assert!(!l.contains(&v(&[1, 0, 0])));
        assert!(Lattice::new(IntMatrix::from_i64(&[&[1, 0], &[1, 1]])).is_err());
        assert!(Lattice::new(IntMatrix::from_i64(&[&[-1, 0], &[0, 1]])).is_err());
        let unstable = Lattice::new(IntMatrix::from_i64(&[&[2, 0], &[0, 1]])).unwrap();
        assert!(!unstable.is_jordan_stable());
        assert!(LatticeSystem::new(unstable, vec![v(&[0, 1])]).is_err());
    }

    #[test]
    fn doubled_digits_have_no_lattice_certificate() {
        let lattice = Lattice::new(IntMatrix::from_i64(&[&[2, 0], &[0, 4]])).unwrap();
        let ls = LatticeSystem::new(lattice, vec![v(&[0, 8]), v(&[4, -8])]).unwrap();
        assert!(lattice_certificate(&ls, 30, 10).unwrap().is_none());
    }

    #[test]
    fn superdiagonal_three_digits() {
        let m = superdiagonal_two(3).unwrap();
        let out = digits_for_similar(&m).unwrap();
        assert_eq!(out.digits.len(), 3);
        assert!(!residue_span_bound(&m, 2, 2).unwrap().1);
        let ns = out.system(&m).unwrap();
        for t in [[0, 0, 0], [1, 2, 3], [-5, 4, -1]] {
            let t = v(&t);
            let w = represent_similar(&m, &out, &t).unwrap();
            assert_eq!(ns.evaluate(&w).unwrap(), t);
        }
    }
}
