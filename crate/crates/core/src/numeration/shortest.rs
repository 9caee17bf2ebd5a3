use num_traits::{Signed, Zero};

use super::{NumberSystem, Word};
use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix, IntVector};

/// Minimal-length word evaluating to `target`, lexicographically smallest
/// among minimal words, or `None` when nothing of length `<= max_len` works.
///
/// Iterative deepening over the length. A prefix with value `x` and `r`
/// letters still to place is pruned unless every coordinate of
/// `target - M^r·x` is within the largest magnitude a length-`r` suffix can
/// reach.
pub fn shortest_representation(ns: &NumberSystem, target: &IntVector, max_len: usize) -> Result<Option<Word>> {
    let n = ns.dim();
    if target.len() != n {
        return Err(Error::dim(format!("target length {} for dimension {n}", target.len())));
    }
    if max_len == 0 {
        return Err(Error::input("max_len must be at least 1"));
    }
    let mut powers = vec![IntMatrix::identity(n)];
    for r in 1..=max_len {
        powers.push(powers[r - 1].mul(ns.base())?);
    }
    // reach[r][i] bounds |coordinate i| over all words of length r.
    let mut reach = vec![vec![Int::zero(); n]];
    for r in 1..=max_len {
        let mut next = reach[r - 1].clone();
        for (i, slot) in next.iter_mut().enumerate() {
            let worst = ns
                .digits()
                .iter()
                .map(|d| powers[r - 1].mat_vec(d).map(|v| v[i].abs()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .unwrap_or_default();
            *slot += worst;
        }
        reach.push(next);
    }
    let search = Search { ns, target, powers: &powers, reach: &reach };
    for len in 1..=max_len {
        let mut prefix = Vec::with_capacity(len);
        if search.dfs(&IntVector::zeros(n), len, &mut prefix)? {
            return Ok(Some(Word::new(prefix)));
        }
    }
    Ok(None)
}

struct Search<'a> {
    ns: &'a NumberSystem,
    target: &'a IntVector,
    powers: &'a [IntMatrix],
    reach: &'a [Vec<Int>],
}

impl Search<'_> {
    fn dfs(&self, x: &IntVector, remaining: usize, prefix: &mut Vec<usize>) -> Result<bool> {
        if remaining == 0 {
            return Ok(x == self.target);
        }
        let gap = self.target.sub(&self.powers[remaining].mat_vec(x)?)?;
        if gap.entries().iter().zip(&self.reach[remaining]).any(|(g, b)| &g.abs() > b) {
            return Ok(false);
        }
        let mx = self.ns.base().mat_vec(x)?;
        for (c, d) in self.ns.digits().iter().enumerate() {
            prefix.push(c);
            if self.dfs(&mx.add(d)?, remaining - 1, prefix)? {
                return Ok(true);
            }
            prefix.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j2() -> NumberSystem {
        NumberSystem::jordan(2, vec![IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[0, -1])]).unwrap()
    }

    #[test]
    fn single_digit_target() {
        let ns = j2();
        let w = shortest_representation(&ns, ns.digit(0), 5).unwrap().unwrap();
        assert_eq!(w.letters(), &[0]);
    }

    #[test]
    fn far_target_is_absent() {
        let t = IntVector::new(vec![Int::from(1_000_000), Int::from(1_000_000)]).unwrap();
        assert_eq!(shortest_representation(&j2(), &t, 3).unwrap(), None);
    }

    #[test]
    fn agrees_with_exhaustive_enumeration() {
        let ns = j2();
        let mut best: std::collections::BTreeMap<Vec<Int>, Vec<usize>> = Default::default();
        for len in 1..=8usize {
            for bits in 0..(1u32 << len) {
                let letters: Vec<usize> = (0..len).map(|i| ((bits >> (len - 1 - i)) & 1) as usize).collect();
                let v = ns.evaluate(&Word::new(letters.clone())).unwrap();
                best.entry(v.into_entries()).or_insert(letters);
            }
        }
        for (v, w) in &best {
            let t = IntVector::new(v.clone()).unwrap();
            let got = shortest_representation(&ns, &t, 8).unwrap().unwrap();
            assert_eq!(got.letters(), w.as_slice(), "target {t}");
        }
    }

    #[test]
    fn non_unique_minimal_words() {
        let ns = j2();
        let w = |t: &str| Word::parse(t, 2).unwrap();
        // Read left to right as written, both words collapse to a single digit.
        assert_eq!(ns.evaluate(&w("01101")).unwrap(), IntVector::from_i64(&[0, -1]));
        assert_eq!(ns.evaluate(&w("10011")).unwrap(), IntVector::from_i64(&[0, -1]));
        // Read right to left, they share a value whose minimal length is 5.
        let t = ns.evaluate(&w("10110")).unwrap();
        assert_eq!(t, IntVector::from_i64(&[-4, -1]));
        assert_eq!(ns.evaluate(&w("11001")).unwrap(), t);
        assert_eq!(shortest_representation(&ns, &t, 4).unwrap(), None);
        assert_eq!(shortest_representation(&ns, &t, 5).unwrap().unwrap(), w("10110"));
    }
}
