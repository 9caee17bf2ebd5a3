//! Constructive representation from a certificate.
//!
//! The target is reached pivot by pivot from the last coordinate upward. At
//! pivot `j` a block with pivot value equal to the current residual is
//! prepended. Blocks are assembled as ropes with cached values so that long
//! repetitions are never expanded until the final word is emitted.
//!
//! A block made only of certificate words needs a number of letters linear
//! in the residual, and residuals grow polynomially with the length of the
//! blocks already placed. To keep words short, large residuals are first cut
//! down with balanced pairs `u^t v^t` where `u` and `v` are blocks for pivot
//! `j + 1` with opposite values `Y` and `-Y`. Such a pair cancels at `j + 1`
//! and contributes a value quadratic in `t` at pivot `j`. The small remainder
//! is then finished with certificate words.

use std::collections::HashMap;
use std::rc::Rc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Certificate, NumberSystem, Word};
use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix, IntVector};

/// Non-negative multiplicities `[z, w, x, y]` with
/// `z·A + w·B + x·C + y·D = a`.
pub fn solve_nonneg_combination(a_val: &Int, b_val: &Int, c_val: &Int, d_val: &Int, a: &Int) -> Result<[Int; 4]> {
    if !a_val.is_positive() || !b_val.is_negative() {
        return Err(Error::input(format!("need A > 0 > B, got A={a_val} B={b_val}")));
    }
    let zero = Int::zero;
    if a.is_zero() {
        return Ok([zero(), zero(), zero(), zero()]);
    }
    if a.is_positive() && a.is_multiple_of(a_val) {
        return Ok([a / a_val, zero(), zero(), zero()]);
    }
    if a.is_negative() && a.is_multiple_of(b_val) {
        return Ok([zero(), a / b_val, zero(), zero()]);
    }
    let g = c_val.gcd(d_val);
    if g.is_zero() || !a.is_multiple_of(&g) {
        return Err(Error::input(format!("gcd({c_val}, {d_val}) does not divide {a}")));
    }
    if c_val.is_positive() && d_val.is_negative() {
        let (x, y) = opposite_signs(c_val, d_val, a, &g);
        return Ok([zero(), zero(), x, y]);
    }
    if d_val.is_positive() && c_val.is_negative() {
        let (y, x) = opposite_signs(d_val, c_val, a, &g);
        return Ok([zero(), zero(), x, y]);
    }
    if !c_val.is_negative() && !d_val.is_negative() {
        return Ok(same_signs(b_val, c_val, d_val, a, &g));
    }
    let [z, w, x, y] = solve_nonneg_combination(&-b_val, &-a_val, &-c_val, &-d_val, &-a)?;
    Ok([w, z, x, y])
}

/// `x·p + y·q = a` with `p > 0 > q`, `x, y >= 0`.
fn opposite_signs(p: &Int, q: &Int, a: &Int, g: &Int) -> (Int, Int) {
    let cp = p / g;
    let dq = -(q / g);
    let ap = a / g;
    let e = cp.extended_gcd(&dq);
    // e.x·cp + e.y·dq = 1, so x0·cp - y0·dq = ap.
    let x0 = &e.x * &ap;
    let y0 = -(&e.y * &ap);
    let k = ceil_div(&-&x0, &dq).max(ceil_div(&-&y0, &cp));
    (x0 + &k * &dq, y0 + &k * &cp)
}

/// `C, D >= 0`: lift the target with copies of `B` past the Frobenius
/// bound `C·D`, then solve the coprime equation directly.
fn same_signs(b_val: &Int, c_val: &Int, d_val: &Int, a: &Int, g: &Int) -> [Int; 4] {
    let bound = (c_val * d_val).abs();
    let step = g * b_val.abs();
    let w = if a < &bound { ceil_div(&(&bound - a), &step) * g } else { Int::zero() };
    let lifted = a + &w * b_val.abs();
    if c_val.is_zero() {
        return [Int::zero(), w, Int::zero(), lifted / d_val];
    }
    if d_val.is_zero() {
        return [Int::zero(), w, lifted / c_val, Int::zero()];
    }
    let cp = c_val / g;
    let dp = d_val / g;
    let ap = &lifted / g;
    let x = if dp.is_one() {
        Int::zero()
    } else {
        let inv = cp.extended_gcd(&dp).x.mod_floor(&dp);
        (&ap * inv).mod_floor(&dp)
    };
    let y = (&ap - &x * &cp) / &dp;
    [Int::zero(), w, x, y]
}

fn ceil_div(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Builds `[a_k … a_0 d]` evaluating to zero, with `[a_k … a_0]` produced by
/// `rep` for the vector `-M⁻¹d`.
pub fn find_zero_word(ns: &NumberSystem, mut rep: impl FnMut(&IntVector) -> Result<Word>) -> Result<Word> {
    let inv = ns
        .base()
        .inverse()?
        .ok_or_else(|| Error::input("base inverse is not integral"))?;
    let (i, d) = ns
        .digits()
        .iter()
        .enumerate()
        .find(|(_, d)| !d.is_zero())
        .ok_or_else(|| Error::input("no non-zero digit"))?;
    let t = inv.mat_vec(d)?.neg();
    let mut w = rep(&t)?;
    let mut letters = std::mem::take(&mut w).into_letters();
    letters.push(i);
    Ok(Word::new(letters))
}

/// One-shot representation; see [`Representer`].
pub fn represent(ns: &NumberSystem, cert: &Certificate, target: &IntVector) -> Result<Word> {
    Representer::new(ns, cert)?.represent(target)
}

#[derive(Debug)]
enum Shape {
    Leaf(usize),
    Cat(Vec<Rc<Node>>),
    Pow(Rc<Node>, u64),
}

#[derive(Debug)]
struct Node {
    value: Vec<Int>,
    len: u64,
    shape: Shape,
}

/// Reusable representer for one system and certificate. Pivot blocks are
/// memoized across calls.
pub struct Representer<'a> {
    ns: &'a NumberSystem,
    nil: IntMatrix,
    cert_nodes: Vec<[Rc<Node>; 4]>,
    cert_vals: Vec<[Int; 4]>,
    gcds: Vec<Int>,
    memo: HashMap<(usize, Int), Rc<Node>>,
}

impl<'a> Representer<'a> {
    /// Validates the certificate against `ns` by evaluation. The base must
    /// be upper unitriangular so that pivot shapes survive multiplication.
    pub fn new(ns: &'a NumberSystem, cert: &Certificate) -> Result<Self> {
        if !ns.is_unitriangular() {
            return Err(Error::input("representation needs an upper unitriangular base; conjugate to Jordan form first"));
        }
        let gcds = cert.check(ns)?;
        let n = ns.dim();
        let nil = ns.base().sub(&IntMatrix::identity(n))?;
        let mut rep = Representer {
            ns,
            nil,
            cert_nodes: Vec::with_capacity(n),
            cert_vals: Vec::with_capacity(n),
            gcds,
            memo: HashMap::new(),
        };
        for p in cert.pivots() {
            let nodes = [0, 1, 2, 3].map(|i| rep.word_node(&p.words[i]));
            rep.cert_nodes.push(nodes);
            rep.cert_vals.push(p.values.clone());
        }
        Ok(rep)
    }

    /// Pivot gcds `gcd(C_j, D_j)`; the represented module is the lattice with
    /// this upper-triangular diagonal.
    pub fn pivot_gcds(&self) -> &[Int] {
        &self.gcds
    }

    pub fn represent(&mut self, target: &IntVector) -> Result<Word> {
        let n = self.ns.dim();
        if target.len() != n {
            return Err(Error::dim(format!("target length {} for dimension {n}", target.len())));
        }
        let mut acc: Option<Rc<Node>> = None;
        for j in (0..n).rev() {
            let current = acc.as_ref().map_or_else(Int::zero, |w| w.value[j].clone());
            let a = &target[j] - current;
            if a.is_zero() {
                continue;
            }
            if !a.is_multiple_of(&self.gcds[j]) {
                return Err(Error::input(format!(
                    "target {target} is outside the represented lattice (coordinate {} needs a multiple of {})",
                    j + 1,
                    self.gcds[j]
                )));
            }
            let block = self.pivot_block(j, &a)?;
            acc = Some(match acc {
                Some(rest) => self.cat(vec![block, rest]),
                None => block,
            });
        }
        let node = match acc {
            Some(node) => node,
            None => self.zero_node(),
        };
        if node.value != target.entries() {
            return Err(Error::internal("representation does not reproduce the target"));
        }
        Ok(flatten(&node))
    }

    /// A non-empty word evaluating to zero, balanced from the pivot-1
    /// witnesses `A` and `B`.
    pub fn zero_word(&mut self) -> Word {
        flatten(&self.zero_node())
    }

    fn zero_node(&mut self) -> Rc<Node> {
        let [a, b, _, _] = &self.cert_vals[0];
        let g = a.gcd(b);
        let ka = (b.abs() / &g).to_u64().expect("small pivot witness");
        let kb = (a / &g).to_u64().expect("small pivot witness");
        let na = self.cert_nodes[0][0].clone();
        let nb = self.cert_nodes[0][1].clone();
        let pa = self.pow(&na, ka);
        let pb = self.pow(&nb, kb);
        self.cat(vec![pa, pb])
    }

    fn word_node(&self, w: &Word) -> Rc<Node> {
        let leaves = w
            .letters()
            .iter()
            .map(|&c| Rc::new(Node { value: self.ns.digit(c).entries().to_vec(), len: 1, shape: Shape::Leaf(c) }))
            .collect();
        self.cat(leaves)
    }

    /// `M^s · v` through the binomial expansion of `(I + N)^s`.
    fn shift(&self, v: &[Int], s: u64) -> Vec<Int> {
        let mut acc = v.to_vec();
        let mut term = IntVector::new(v.to_vec()).expect("non-empty");
        let mut binom = Int::one();
        for r in 1..v.len() as u64 {
            if r > s {
                break;
            }
            term = self.nil.mat_vec(&term).expect("square");
            if term.is_zero() {
                break;
            }
            binom = binom * Int::from(s - r + 1) / Int::from(r);
            for (x, t) in acc.iter_mut().zip(term.entries()) {
                *x += &binom * t;
            }
        }
        acc
    }

    fn cat_val(&self, a: (&[Int], u64), b: (&[Int], u64)) -> (Vec<Int>, u64) {
        let mut v = self.shift(a.0, b.1);
        for (x, y) in v.iter_mut().zip(b.0) {
            *x += y;
        }
        (v, a.1 + b.1)
    }

    fn pow_val(&self, v: &[Int], len: u64, k: u64) -> (Vec<Int>, u64) {
        let mut result: Option<(Vec<Int>, u64)> = None;
        let mut base = (v.to_vec(), len);
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => self.cat_val((&r.0, r.1), (&base.0, base.1)),
                });
            }
            e >>= 1;
            if e > 0 {
                base = self.cat_val((&base.0, base.1), (&base.0, base.1));
            }
        }
        result.unwrap_or_else(|| (vec![Int::zero(); v.len()], 0))
    }

    fn cat(&self, parts: Vec<Rc<Node>>) -> Rc<Node> {
        let parts: Vec<Rc<Node>> = parts.into_iter().filter(|p| p.len > 0).collect();
        if parts.len() == 1 {
            return parts.into_iter().next().expect("one part");
        }
        let mut value = vec![Int::zero(); self.ns.dim()];
        let mut len = 0;
        for p in &parts {
            let (v, l) = self.cat_val((&value, len), (&p.value, p.len));
            value = v;
            len = l;
        }
        Rc::new(Node { value, len, shape: Shape::Cat(parts) })
    }

    fn pow(&self, node: &Rc<Node>, k: u64) -> Rc<Node> {
        let (value, len) = self.pow_val(&node.value, node.len, k);
        Rc::new(Node { value, len, shape: Shape::Pow(node.clone(), k) })
    }

    fn cert_block(&self, j: usize, a: &Int) -> Result<Rc<Node>> {
        let [va, vb, vc, vd] = &self.cert_vals[j];
        let counts = solve_nonneg_combination(va, vb, vc, vd, a)?;
        let mut parts = Vec::with_capacity(4);
        for (node, count) in self.cert_nodes[j].iter().zip(&counts) {
            let k = count.to_u64().ok_or_else(|| Error::internal("multiplicity exceeds 64 bits"))?;
            parts.push(self.pow(node, k));
        }
        Ok(self.cat(parts))
    }

    fn pair(&self, u: &Rc<Node>, v: &Rc<Node>, t: u64, positive: bool) -> Rc<Node> {
        let (first, second) = if positive { (u, v) } else { (v, u) };
        let a = self.pow(first, t);
        let b = self.pow(second, t);
        self.cat(vec![a, b])
    }

    fn pair_value(&self, u: &Node, v: &Node, t: u64, positive: bool, j: usize) -> Int {
        let (first, second) = if positive { (u, v) } else { (v, u) };
        let a = self.pow_val(&first.value, first.len, t);
        let b = self.pow_val(&second.value, second.len, t);
        self.cat_val((&a.0, a.1), (&b.0, b.1)).0[j].clone()
    }

    /// A block whose value has shape `(*, …, *, value, 0, …, 0)` with the
    /// value at 0-based position `j`.
    fn pivot_block(&mut self, j: usize, value: &Int) -> Result<Rc<Node>> {
        if let Some(node) = self.memo.get(&(j, value.clone())) {
            return Ok(node.clone());
        }
        let n = self.ns.dim();
        let mut r = value.clone();
        let mut blocks = Vec::new();
        let thresh = self.cert_vals[j].iter().map(Signed::abs).max().expect("four values") * 8;
        while r.abs() > thresh && j + 1 < n {
            let mag = r.abs();
            let mut y = self.gcds[j + 1].clone();
            let mut cands = Vec::new();
            loop {
                let u = self.pivot_block(j + 1, &y)?;
                let v = self.pivot_block(j + 1, &-&y)?;
                let spread = &y * Int::from(u.len + v.len);
                if spread > &mag * 2 && !cands.is_empty() {
                    break;
                }
                cands.push((u, v));
                if spread > mag {
                    break;
                }
                y *= 2;
            }
            let positive = r.is_positive();
            let mut best: Option<(Int, u64, usize, Int)> = None;
            let start = cands.len().saturating_sub(2);
            for (ci, (u, v)) in cands.iter().enumerate().skip(start) {
                let q = |t: u64| self.pair_value(u, v, t, positive, j);
                let mut hi = 1u64;
                loop {
                    let qh = q(hi);
                    let same_sign = qh.is_positive() == positive && !qh.is_zero();
                    if qh.abs() > mag || (!same_sign && hi >= 64) {
                        break;
                    }
                    hi *= 2;
                }
                for t in (hi / 2).saturating_sub(2).max(1)..=hi {
                    let qq = q(t);
                    let dist = (&r - &qq).abs();
                    if dist < mag && best.as_ref().is_none_or(|b| dist < b.0) {
                        best = Some((dist, t, ci, qq));
                    }
                }
            }
            let Some((dist, t, ci, qq)) = best else { break };
            if dist * 10 > &mag * 9 {
                break;
            }
            let (u, v) = &cands[ci];
            blocks.push(self.pair(u, v, t, positive));
            r -= qq;
        }
        blocks.push(self.cert_block(j, &r)?);
        let node = self.cat(blocks);
        if &node.value[j] != value || node.value[j + 1..].iter().any(|x| !x.is_zero()) {
            return Err(Error::internal(format!("pivot block for {value} at {} has the wrong shape", j + 1)));
        }
        self.memo.insert((j, value.clone()), node.clone());
        Ok(node)
    }
}

fn flatten(node: &Node) -> Word {
    let mut out = Vec::with_capacity(node.len as usize);
    flatten_into(node, &mut out);
    Word::new(out)
}

fn flatten_into(node: &Node, out: &mut Vec<usize>) {
    match &node.shape {
        Shape::Leaf(c) => out.push(*c),
        Shape::Cat(parts) => parts.iter().for_each(|p| flatten_into(p, out)),
        Shape::Pow(inner, k) => {
            let start = out.len();
            flatten_into(inner, out);
            let end = out.len();
            for _ in 1..*k {
                out.extend_from_within(start..end);
            }
        }
    }
}
