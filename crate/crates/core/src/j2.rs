//! Decision procedure for two-digit systems over the 2×2 Jordan block.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Int, IntVector};
use crate::numeration::{Certificate, NumberSystem, Verdict, Word};
use crate::obstructions::{cone_obstruction_jordan, residue_obstruction_at, Obstruction};

/// The digits `(a, b)` and `(c, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct J2DigitPair {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
}

impl J2DigitPair {
    pub fn new(a: Int, b: Int, c: Int, d: Int) -> Result<Self> {
        if a == c && b == d {
            return Err(Error::input("the two digits must differ"));
        }
        Ok(J2DigitPair { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Parses `"a,b;c,d"`.
    pub fn parse(text: &str) -> Result<Self> {
        let nums: Vec<Int> = text
            .split([';', ','])
            .map(crate::linalg::parse_int)
            .collect::<Result<_>>()?;
        match <[Int; 4]>::try_from(nums) {
            Ok([a, b, c, d]) => Self::new(a, b, c, d),
            Err(_) => Err(Error::input(format!("expected \"a,b;c,d\", got {text:?}"))),
        }
    }

    pub fn system(&self) -> NumberSystem {
        NumberSystem::jordan(
            2,
            vec![
                IntVector::new(vec![self.a.clone(), self.b.clone()]).expect("two entries"),
                IntVector::new(vec![self.c.clone(), self.d.clone()]).expect("two entries"),
            ],
        )
        .expect("distinct digits")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleResult {
    pub rule: &'static str,
    pub fired: bool,
    pub condition: &'static str,
}

/// Evaluates the refutation rules R1–R7 in their fixed order.
pub fn rule_trace(pair: &J2DigitPair) -> Vec<RuleResult> {
    let J2DigitPair { a, b, c, d } = pair;
    let two = Int::from(2);
    let four = Int::from(4);
    let bd = b * d;
    let odd = |x: &Int| x.is_odd();
    let a_c_differ = (a - c).is_odd();
    let r4 = bd < -Int::one() && (a * d - b * c).gcd(&(b.abs() + d.abs())) >= Int::from(3);
    let both_odd = odd(b) && odd(d);
    let b_eq_d_mod4 = (b - d).mod_floor(&four).is_zero();
    vec![
        RuleResult { rule: "R1", fired: !b.gcd(d).is_one(), condition: "gcd(b,d) != 1" },
        RuleResult { rule: "R2", fired: !bd.is_negative(), condition: "b*d >= 0" },
        RuleResult { rule: "R3", fired: bd == -Int::one() && a_c_differ, condition: "b*d = -1 and a != c mod 2" },
        RuleResult { rule: "R4", fired: r4, condition: "b*d < -1 and gcd(ad-bc, |b|+|d|) >= 3" },
        RuleResult { rule: "R5", fired: b.is_multiple_of(&two) && d.is_multiple_of(&two), condition: "b = d = 0 mod 2" },
        RuleResult {
            rule: "R6",
            fired: both_odd && b_eq_d_mod4 && !a_c_differ,
            condition: "b, d odd, b = d mod 4, a = c mod 2",
        },
        RuleResult {
            rule: "R7",
            fired: both_odd && !b_eq_d_mod4 && a_c_differ,
            condition: "b, d odd, b != d mod 4, a != c mod 2",
        },
    ]
}

/// Witness words for pivot 1 and their evaluated values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessWords {
    pub k: usize,
    /// `A`, `B`, `C_k`, `D_k` in that order.
    pub words: [Word; 4],
    pub values: [Int; 4],
}

/// Index of the digit with positive second coordinate, then the other.
fn orient(pair: &J2DigitPair) -> Result<(usize, usize, u64, u64)> {
    if !(&pair.b * &pair.d).is_negative() || !pair.b.gcd(&pair.d).is_one() {
        return Err(Error::input("witness words need b*d < 0 and gcd(b, d) = 1"));
    }
    let (v1, v2, pos, neg) = if pair.b.is_positive() { (0, 1, &pair.b, &pair.d) } else { (1, 0, &pair.d, &pair.b) };
    let pos = pos.to_u64().ok_or_else(|| Error::input("digit coordinate too large"))?;
    let neg = neg.abs().to_u64().ok_or_else(|| Error::input("digit coordinate too large"))?;
    Ok((v1, v2, pos, neg))
}

fn run(c: usize, n: u64) -> Vec<usize> {
    vec![c; n as usize]
}

/// `A = v₁^{|d|} v₂^{|b|}`, `B = v₁^{|d|-1} v₂ v₁ v₂^{|b|-1}`,
/// `C_k = v₁^{k|d|} v₂^{k|b|}`, `D_k = v₂^{k|b|} v₁^{k|d|}`, with `v₁` the
/// digit whose second coordinate is positive.
pub fn witness_words(pair: &J2DigitPair, k: usize) -> Result<WitnessWords> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let (v1, v2, pb, nd) = orient(pair)?;
    let kk = k as u64;
    let wa = [run(v1, nd), run(v2, pb)].concat();
    let wb = [run(v1, nd - 1), vec![v2, v1], run(v2, pb - 1)].concat();
    let wc = [run(v1, kk * nd), run(v2, kk * pb)].concat();
    let wd = [run(v2, kk * pb), run(v1, kk * nd)].concat();
    let ns = pair.system();
    let words = [wa, wb, wc, wd].map(Word::new);
    let mut values: [Int; 4] = Default::default();
    for (slot, w) in values.iter_mut().zip(&words) {
        let v = ns.evaluate(w)?;
        if !v[1].is_zero() {
            return Err(Error::internal(format!("witness {w} does not cancel the second coordinate")));
        }
        *slot = v[0].clone();
    }
    Ok(WitnessWords { k, words, values })
}

/// Closed forms for the witness values with `b > 0 > d` orientation:
/// `C_k = k(bc - ad) + k²·bd(d - b)/2`, `D_k = k(bc - ad) + k²·bd(b - d)/2`,
/// `A = C_1`, `B = A - (b - d)`.
pub fn witness_closed_forms(pair: &J2DigitPair, k: usize) -> Result<[Int; 4]> {
    orient(pair)?;
    let (a, b, c, d) = if pair.b.is_positive() {
        (&pair.a, &pair.b, &pair.c, &pair.d)
    } else {
        (&pair.c, &pair.d, &pair.a, &pair.b)
    };
    let k = Int::from(k);
    let lin = b * c - a * d;
    let quad = b * d * (d - b) / 2;
    let a_val = &lin + &quad;
    let b_val = &a_val - (b - d);
    let c_k = &k * &lin + &k * &k * &quad;
    let d_k = &k * &lin - &k * &k * &quad;
    Ok([a_val, b_val, c_k, d_k])
}

/// Full with a certificate, or NotFull naming the first rule that fires.
pub fn classify(pair: &J2DigitPair, k_max: usize) -> Result<Verdict> {
    if k_max == 0 {
        return Err(Error::input("k_max must be at least 1"));
    }
    let ns = pair.system();
    if let Some(r) = rule_trace(pair).into_iter().find(|r| r.fired) {
        let obstruction = refutation(pair, &ns, r.rule)?;
        return Ok(Verdict::NotFull { rule: r.rule.to_string(), obstruction });
    }
    let (v1, v2, _, _) = orient(pair)?;
    let base = witness_words(pair, 1)?;
    let coprime = [base.words[0].clone(), base.words[1].clone()];
    for k in 1..=k_max {
        let ww = witness_words(pair, k)?;
        let (c, d) = (&ww.values[2], &ww.values[3]);
        if c.is_zero() || d.is_zero() || c.is_positive() == d.is_positive() {
            continue;
        }
        let (pos, neg) = if c.is_positive() { (2, 3) } else { (3, 2) };
        let single = |i: usize| Word::new(vec![i]);
        let cert = Certificate::from_words(
            &ns,
            vec![
                [ww.words[pos].clone(), ww.words[neg].clone(), coprime[0].clone(), coprime[1].clone()],
                [single(v1), single(v2), single(v1), single(v2)],
            ],
        )?;
        if cert.verify(&ns).is_ok() {
            return Ok(Verdict::Full { rule: "witness".to_string(), certificate: cert });
        }
        break;
    }
    let longest = witness_words(pair, k_max)?.words[2].len();
    Ok(Verdict::Unknown { max_len: longest, max_mod: 0 })
}

fn refutation(pair: &J2DigitPair, ns: &NumberSystem, rule: &str) -> Result<Obstruction> {
    let rule_only = || Obstruction::Rule { rule: rule.to_string() };
    let small = |x: &Int| x.to_u64().filter(|&m| m >= 2);
    let found = match rule {
        "R2" => cone_obstruction_jordan(ns)?,
        "R1" | "R5" | "R6" | "R7" => {
            let mut moduli = vec![2, 4];
            moduli.extend(small(&pair.b.gcd(&pair.d)));
            moduli.sort_unstable();
            moduli.dedup();
            residue_obstruction_at(ns, moduli)?
        }
        _ => {
            let mut moduli: Vec<u64> = small(&(pair.b.abs() + pair.d.abs())).into_iter().collect();
            moduli.extend(2..=12);
            residue_obstruction_at(ns, moduli)?
        }
    };
    Ok(found.unwrap_or_else(rule_only))
}
