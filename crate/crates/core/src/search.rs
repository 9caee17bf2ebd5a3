//! Bounded search for completeness certificates and the `check-full`
//! semi-decision.
//!
//! Candidate pivot witnesses come from two sources: every word up to a short
//! exhaustive length, and balanced words `u^{αt} v^{βt}` / `v^{βt} u^{αt}`
//! built from a positive and a negative witness `u`, `v` one pivot higher,
//! with `α·[u] + β·[v] = 0` at that pivot.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Int, IntVector};
use crate::numeration::{Certificate, NumberSystem, Verdict, Word};
use crate::obstructions::{cone_obstruction_jordan, residue_obstruction};

/// Budget for the exhaustive phase, in words.
const EXHAUSTIVE_WORDS: usize = 1 << 16;
/// Shortest positive and negative witnesses combined per pivot.
const BALANCE_FANOUT: usize = 6;
/// Candidates kept per pivot value sign when looking for a gcd pair.
const GCD_POOL: usize = 300;

#[derive(Debug, Clone)]
struct Candidate {
    word: Word,
    value: Int,
}

/// Searches for a certificate with `gcd(C_j, D_j) = required[j - 1]` and
/// all words of length at most `max_len`.
pub fn search_certificate(ns: &NumberSystem, required: &[Int], max_len: usize, k_max: usize) -> Result<Option<Certificate>> {
    let n = ns.dim();
    if required.len() != n {
        return Err(Error::dim(format!("{} required gcds for dimension {n}", required.len())));
    }
    if !ns.is_unitriangular() {
        return Err(Error::input("certificate search needs an upper unitriangular base"));
    }
    let mut pools: Vec<BTreeMap<Int, Word>> = vec![BTreeMap::new(); n];
    exhaustive(ns, max_len, &mut pools);
    let mut chosen: Vec<[Word; 4]> = vec![Default::default(); n];
    for j in (0..n).rev() {
        if j + 1 < n {
            balance(ns, j + 1, &chosen_pool(&pools[j + 1]), max_len, k_max, &mut pools)?;
        }
        let cands = chosen_pool(&pools[j]);
        let pos = cands.iter().filter(|c| c.value.is_positive()).min_by_key(|c| c.word.len());
        let neg = cands.iter().filter(|c| c.value.is_negative()).min_by_key(|c| c.word.len());
        let (Some(pos), Some(neg)) = (pos, neg) else { return Ok(None) };
        let Some((c, d)) = gcd_pair(&cands, &required[j]) else { return Ok(None) };
        chosen[j] = [pos.word.clone(), neg.word.clone(), c, d];
    }
    let cert = Certificate::from_words(ns, chosen)?;
    cert.verify_with_gcds(ns, required)?;
    Ok(Some(cert))
}

fn chosen_pool(pool: &BTreeMap<Int, Word>) -> Vec<Candidate> {
    let mut v: Vec<Candidate> = pool.iter().map(|(value, word)| Candidate { word: word.clone(), value: value.clone() }).collect();
    v.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
    v
}

fn insert(pools: &mut [BTreeMap<Int, Word>], v: &IntVector, word: &Word) {
    if let Some((pos, value)) = v.pivot() {
        let slot = pools[pos - 1].entry(value).or_insert_with(|| word.clone());
        if word.len() < slot.len() {
            *slot = word.clone();
        }
    }
}

fn exhaustive(ns: &NumberSystem, max_len: usize, pools: &mut [BTreeMap<Int, Word>]) {
    let k = ns.digit_count();
    let mut depth = 0;
    let mut count = 0usize;
    while depth < max_len {
        let next = count.saturating_add(k.saturating_pow(depth as u32 + 1));
        if next > EXHAUSTIVE_WORDS {
            break;
        }
        count = next;
        depth += 1;
    }
    let mut prefix = Vec::new();
    let state = vec![Int::zero(); ns.dim()];
    walk(ns, depth, &mut prefix, &state, pools);
}

fn walk(ns: &NumberSystem, depth: usize, prefix: &mut Vec<usize>, state: &[Int], pools: &mut [BTreeMap<Int, Word>]) {
    if prefix.len() == depth {
        return;
    }
    for c in 0..ns.digit_count() {
        let mut x = state.to_vec();
        ns.step(&mut x, c);
        prefix.push(c);
        let v = IntVector::new(x.clone()).expect("non-empty");
        insert(pools, &v, &Word::new(prefix.clone()));
        walk(ns, depth, prefix, &x, pools);
        prefix.pop();
    }
}

fn balance(
    ns: &NumberSystem,
    j: usize,
    cands: &[Candidate],
    max_len: usize,
    k_max: usize,
    pools: &mut [BTreeMap<Int, Word>],
) -> Result<()> {
    let pos: Vec<&Candidate> = cands.iter().filter(|c| c.value.is_positive()).take(BALANCE_FANOUT).collect();
    let neg: Vec<&Candidate> = cands.iter().filter(|c| c.value.is_negative()).take(BALANCE_FANOUT).collect();
    let mut seen = HashSet::new();
    for u in &pos {
        for v in &neg {
            let g = u.value.gcd(&v.value);
            let (Some(alpha), Some(beta)) = ((v.value.abs() / &g).to_usize(), (&u.value / &g).to_usize()) else {
                continue;
            };
            for t in 1..=k_max {
                let len = t * (alpha * u.word.len() + beta * v.word.len());
                if len > max_len {
                    break;
                }
                let a = u.word.repeat(alpha * t);
                let b = v.word.repeat(beta * t);
                for w in [a.concat(&b), b.concat(&a)] {
                    if seen.insert(w.clone()) {
                        let value = ns.evaluate(&w)?;
                        if value.pivot().is_some_and(|(p, _)| p <= j) {
                            insert(pools, &value, &w);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Two candidates whose values have gcd `required`, preferring short words.
fn gcd_pair(cands: &[Candidate], required: &Int) -> Option<(Word, Word)> {
    let usable: Vec<&Candidate> = cands.iter().filter(|c| c.value.is_multiple_of(required)).take(GCD_POOL).collect();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..usable.len() {
        for k in i..usable.len() {
            if &usable[i].value.gcd(&usable[k].value) != required {
                continue;
            }
            let cost = usable[i].word.len().max(usable[k].word.len());
            if best.is_none_or(|b| cost < b.0) {
                best = Some((cost, i, k));
            }
        }
    }
    best.map(|(_, i, k)| (usable[i].word.clone(), usable[k].word.clone()))
}

/// Semi-decision for completeness over the full integer lattice.
///
/// Order: cone test (Jordan bases), certificate search (unitriangular
/// bases), residue obstructions for `m <= max_mod`, else Unknown.
pub fn check_full(ns: &NumberSystem, max_len: usize, max_mod: u64) -> Result<Verdict> {
    if ns.is_jordan() {
        if let Some(obstruction) = cone_obstruction_jordan(ns)? {
            return Ok(Verdict::NotFull { rule: "cone".to_string(), obstruction });
        }
    }
    if ns.is_unitriangular() {
        let ones = vec![Int::from(1); ns.dim()];
        if let Some(certificate) = search_certificate(ns, &ones, max_len, max_len)? {
            return Ok(Verdict::Full { rule: "certificate".to_string(), certificate });
        }
    }
    if max_mod >= 2 {
        if let Some(obstruction) = residue_obstruction(ns, max_mod)? {
            return Ok(Verdict::NotFull { rule: "residue".to_string(), obstruction });
        }
    }
    Ok(Verdict::Unknown { max_len, max_mod })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, digits: &[&[i64]]) -> NumberSystem {
        NumberSystem::jordan(n, digits.iter().map(|d| IntVector::from_i64(d)).collect()).unwrap()
    }

    #[test]
    fn finds_two_dim_certificate() {
        let ns = sys(2, &[&[0, 1], &[0, -1]]);
        let cert = search_certificate(&ns, &[Int::from(1), Int::from(1)], 10, 10).unwrap().unwrap();
        cert.verify(&ns).unwrap();
    }

    #[test]
    fn finds_three_dim_two_digit_certificate() {
        let ns = sys(3, &[&[0, 0, 1], &[0, 1, -2]]);
        let cert = search_certificate(&ns, &vec![Int::from(1); 3], 40, 40).unwrap().unwrap();
        cert.verify(&ns).unwrap();
    }

    #[test]
    fn verdicts() {
        assert_eq!(check_full(&sys(2, &[&[0, 1], &[0, -1]]), 40, 16).unwrap().label(), "full");
        assert_eq!(check_full(&sys(3, &[&[0, 0, 1], &[0, 0, -1]]), 40, 16).unwrap().label(), "not_full");
        assert_eq!(check_full(&sys(2, &[&[0, 1], &[1, 1]]), 40, 16).unwrap().label(), "not_full");
    }
}
