//! The three-digit alphabet `p = e_n`, `m = -e_n`, `z = 0` over `J_n`, the
//! Thue–Morse words `W_k` and the padded words `Z_k`.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{Int, IntVector};
use crate::numeration::{Certificate, NumberSystem, Word};

pub const P: usize = 0;
pub const M: usize = 1;
pub const Z: usize = 2;

/// `(J_n, {p, m, z})` with digit indices 0, 1, 2.
pub fn pmz_system(n: usize) -> Result<NumberSystem> {
    if n == 0 {
        return Err(Error::input("dimension must be at least 1"));
    }
    let mut p = vec![0i64; n];
    p[n - 1] = 1;
    let m: Vec<i64> = p.iter().map(|x| -x).collect();
    NumberSystem::jordan(n, vec![IntVector::from_i64(&p), IntVector::from_i64(&m), IntVector::zeros(n)])
}

pub fn parse_pmz(text: &str) -> Result<Word> {
    Word::parse(text, 3)
}

pub fn render_pmz(w: &Word) -> String {
    w.letters().iter().map(|&c| ['p', 'm', 'z'][c]).collect()
}

/// Swaps `p` and `m`, fixes `z`.
pub fn morphism_e(w: &Word) -> Word {
    Word::new(
        w.letters()
            .iter()
            .map(|&c| match c {
                P => M,
                M => P,
                other => other,
            })
            .collect(),
    )
}

pub fn reverse(w: &Word) -> Word {
    w.reversed()
}

/// `W_1 = pm`, `W_k = W_{k-1} E(W_{k-1})`.
pub fn word_w(k: usize) -> Result<Word> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let mut w = Word::new(vec![P, M]);
    for _ in 1..k {
        w = w.concat(&morphism_e(&w));
    }
    Ok(w)
}

/// `Z_1 = pm`, `Z_k = Z_{k-1} z^{k-1} E(Z_{k-1})`.
pub fn word_z(k: usize) -> Result<Word> {
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let mut w = Word::new(vec![P, M]);
    for i in 2..=k {
        let pad = Word::new(vec![Z; i - 1]);
        w = w.concat(&pad).concat(&morphism_e(&w));
    }
    Ok(w)
}

/// 1-based pivot position and value of `w` evaluated in `(J_n, {p,m,z})`,
/// or `None` when it evaluates to zero.
pub fn pivot_value(w: &Word, n: usize) -> Result<Option<(usize, Int)>> {
    Ok(pmz_system(n)?.evaluate(w)?.pivot())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Forward,
    Reversed,
}

/// The orientation of `w` (forward preferred) whose value has its pivot at
/// position `j`, with the word and pivot value.
pub fn realize_pivot(w: &Word, n: usize, j: usize) -> Result<Option<(Orientation, Word, Int)>> {
    for (o, cand) in [(Orientation::Forward, w.clone()), (Orientation::Reversed, reverse(w))] {
        if let Some((pos, val)) = pivot_value(&cand, n)? {
            if pos == j {
                return Ok(Some((o, cand, val)));
            }
        }
    }
    Ok(None)
}

/// Certificate for `(J_n, {p, m, z})`. Pivot `n` uses the single letters;
/// pivot `j < n` uses `W_k` and `Z_k` with `k = n - j`, with `E` flipping
/// signs where needed.
pub fn three_digit_certificate(n: usize) -> Result<Certificate> {
    let ns = pmz_system(n)?;
    let mut words = Vec::with_capacity(n);
    for j in 1..=n {
        let k = n - j;
        if k == 0 {
            let (p, m) = (Word::new(vec![P]), Word::new(vec![M]));
            words.push([p.clone(), m.clone(), p, m]);
            continue;
        }
        let (_, w, wv) = realize_pivot(&word_w(k)?, n, j)?
            .ok_or_else(|| Error::internal(format!("W_{k} has no pivot at {j} in dimension {n}")))?;
        let (_, z, _) = realize_pivot(&word_z(k)?, n, j)?
            .ok_or_else(|| Error::internal(format!("Z_{k} has no pivot at {j} in dimension {n}")))?;
        let (pos, neg) = if wv.is_positive() { (w.clone(), morphism_e(&w)) } else { (morphism_e(&w), w.clone()) };
        words.push([pos, neg, w, z]);
    }
    let cert = Certificate::from_words(&ns, words)?;
    cert.verify(&ns)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::One;

    fn s(w: &Word) -> String {
        render_pmz(w)
    }

    #[test]
    fn morphisms() {
        assert_eq!(s(&morphism_e(&parse_pmz("pm").unwrap())), "mp");
        assert_eq!(s(&morphism_e(&parse_pmz("pmzmp").unwrap())), "mpzpm");
        assert_eq!(s(&reverse(&parse_pmz("pmmp").unwrap())), "pmmp");
    }

    #[test]
    fn words() {
        assert_eq!(s(&word_w(1).unwrap()), "pm");
        assert_eq!(s(&word_w(2).unwrap()), "pmmp");
        assert_eq!(s(&word_w(3).unwrap()), "pmmpmppm");
        assert_eq!(s(&word_z(1).unwrap()), "pm");
        assert_eq!(s(&word_z(2).unwrap()), "pmzmp");
        assert_eq!(s(&word_z(3).unwrap()), "pmzmpzzmpzpm");
        assert!(word_w(0).is_err() && word_z(0).is_err());
        for k in 2..=8 {
            assert_eq!(word_w(k).unwrap().len(), 1 << k);
            assert_eq!(word_z(k).unwrap().len(), 2 * word_z(k - 1).unwrap().len() + k - 1);
        }
    }

    #[test]
    fn pivot_examples() {
        assert_eq!(pivot_value(&word_w(2).unwrap(), 3).unwrap(), Some((1, Int::from(2))));
        assert_eq!(pivot_value(&word_z(2).unwrap(), 3).unwrap(), Some((1, Int::from(3))));
        assert_eq!(pivot_value(&word_w(1).unwrap(), 2).unwrap(), Some((1, Int::from(1))));
        assert_eq!(pivot_value(&parse_pmz("z").unwrap(), 2).unwrap(), None);
    }

    #[test]
    fn reversal_sign() {
        for k in 1..=6 {
            for n in k + 1..=8 {
                let w = word_w(k).unwrap();
                let f = pmz_system(n).unwrap().evaluate(&w).unwrap();
                let r = pmz_system(n).unwrap().evaluate(&reverse(&w)).unwrap();
                let sign = if k % 2 == 0 { Int::one() } else { -Int::one() };
                assert_eq!(r, f.scale(&sign));
            }
        }
    }

    #[test]
    fn certificates_small() {
        for n in 1..=5 {
            let cert = three_digit_certificate(n).unwrap();
            cert.verify(&pmz_system(n).unwrap()).unwrap();
        }
        let c3 = three_digit_certificate(3).unwrap();
        assert_eq!(c3.pivot(1).values[2], Int::from(2));
        assert_eq!(c3.pivot(1).values[3], Int::from(3));
        assert!(c3.pivot(1).values[2].gcd(&c3.pivot(1).values[3]).is_one());
    }
}
