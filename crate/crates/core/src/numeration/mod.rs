//! Number systems, digit words and their evaluation.

mod certificate;
mod represent;
mod shortest;

pub use certificate::{Certificate, PivotWitness};
pub use represent::{find_zero_word, represent, solve_nonneg_combination, Representer};
pub use shortest::shortest_representation;

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{is_jordan_block, Int, IntMatrix, IntVector};

/// A base matrix together with an ordered digit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberSystem {
    base: IntMatrix,
    digits: Vec<IntVector>,
    jordan: bool,
}

impl NumberSystem {
    pub fn new(base: IntMatrix, digits: Vec<IntVector>) -> Result<Self> {
        let n = base.require_square()?;
        if digits.is_empty() {
            return Err(Error::input("digit list is empty"));
        }
        let mut seen = HashSet::new();
        for (i, d) in digits.iter().enumerate() {
            if d.len() != n {
                return Err(Error::dim(format!("digit {i} has length {}, base is {n}x{n}", d.len())));
            }
            if !seen.insert(d.clone()) {
                return Err(Error::input(format!("digit {i} repeats an earlier digit")));
            }
        }
        let jordan = is_jordan_block(&base);
        Ok(NumberSystem { base, digits, jordan })
    }

    pub fn jordan(n: usize, digits: Vec<IntVector>) -> Result<Self> {
        Self::new(crate::linalg::jordan_block(n)?, digits)
    }

    pub fn base(&self) -> &IntMatrix {
        &self.base
    }

    pub fn digits(&self) -> &[IntVector] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> &IntVector {
        &self.digits[i]
    }

    pub fn dim(&self) -> usize {
        self.base.rows()
    }

    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    pub fn is_jordan(&self) -> bool {
        self.jordan
    }

    /// Upper triangular with ones on the diagonal.
    pub fn is_unitriangular(&self) -> bool {
        self.base.is_upper_triangular() && (0..self.dim()).all(|i| self.base.get(i, i).is_one())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&c| c >= self.digits.len()) {
            Some(c) => Err(Error::input(format!("digit index {c} out of range for {} digits", self.digits.len()))),
            None => Ok(()),
        }
    }

    /// Horner evaluation; the leftmost letter carries the highest power.
    pub fn evaluate(&self, w: &Word) -> Result<IntVector> {
        if w.is_empty() {
            return Err(Error::input("cannot evaluate the empty word"));
        }
        self.check_word(w)?;
        let n = self.dim();
        let mut x = vec![Int::zero(); n];
        for &c in w.letters() {
            self.step(&mut x, c);
        }
        IntVector::new(x)
    }

    /// One Horner step `x <- M·x + d_c`.
    pub(crate) fn step(&self, x: &mut Vec<Int>, c: usize) {
        let n = x.len();
        if self.jordan {
            for i in 0..n - 1 {
                let next = x[i + 1].clone();
                x[i] += next;
            }
        } else {
            let v = IntVector::new(std::mem::take(x)).expect("non-empty state");
            *x = self.base.mat_vec(&v).expect("square base").into_entries();
        }
        for (xi, di) in x.iter_mut().zip(self.digits[c].entries()) {
            *xi += di;
        }
    }
}

/// A digit-index string; index 0 of the vector is the leftmost letter.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Parses the text form. Single characters `0`-`9` are indices; a text
    /// containing commas is a comma-separated index list. Over a 3-letter
    /// alphabet `p`, `m`, `z` stand for 0, 1, 2.
    pub fn parse(text: &str, alphabet: usize) -> Result<Word> {
        let text = text.trim();
        let letters: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::input(format!("bad letter {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|ch| match ch {
                    '0'..='9' => Ok(ch as usize - '0' as usize),
                    'p' if alphabet == 3 => Ok(0),
                    'm' if alphabet == 3 => Ok(1),
                    'z' if alphabet == 3 => Ok(2),
                    _ => Err(Error::input(format!("bad letter {ch:?}"))),
                })
                .collect::<Result<_>>()?
        };
        if let Some(c) = letters.iter().find(|&&c| c >= alphabet) {
            return Err(Error::input(format!("letter {c} out of range for {alphabet} digits")));
        }
        Ok(Word(letters))
    }

    /// Text form for an alphabet of the given size.
    pub fn render(&self, alphabet: usize) -> String {
        if alphabet <= 10 {
            self.0.iter().map(|&c| char::from(b'0' + c as u8)).collect()
        } else {
            self.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        }
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.0.iter().max().map_or(0, |&m| m + 1);
        f.write_str(&self.render(alphabet))
    }
}

/// Outcome of a completeness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Full { rule: String, certificate: Certificate },
    NotFull { rule: String, obstruction: crate::obstructions::Obstruction },
    Unknown { max_len: usize, max_mod: u64 },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Full { .. } => "full",
            Verdict::NotFull { .. } => "not_full",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn j2_pm() -> NumberSystem {
        NumberSystem::jordan(2, vec![IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[0, -1])]).unwrap()
    }

    fn ex26() -> NumberSystem {
        NumberSystem::jordan(3, vec![IntVector::from_i64(&[0, 0, 1]), IntVector::from_i64(&[0, 1, -2])]).unwrap()
    }

    fn eval(ns: &NumberSystem, w: &str) -> IntVector {
        ns.evaluate(&Word::parse(w, ns.digit_count()).unwrap()).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval(&j2_pm(), "01"), IntVector::from_i64(&[1, 0]));
        assert_eq!(eval(&ex26(), "010"), IntVector::from_i64(&[2, 1, 0]));
        assert_eq!(eval(&ex26(), "100001100"), IntVector::from_i64(&[1, 0, 0]));
    }

    #[test]
    fn evaluation_errors() {
        let ns = j2_pm();
        assert!(ns.evaluate(&Word::empty()).is_err());
        assert!(ns.evaluate(&Word::new(vec![0, 2])).is_err());
        assert!(Word::parse("012", 2).is_err());
        assert!(Word::parse("0x", 2).is_err());
    }

    #[test]
    fn generic_base_matches_jordan_fast_path() {
        let digits = vec![IntVector::from_i64(&[1, 2, -1]), IntVector::from_i64(&[0, -3, 2])];
        let fast = NumberSystem::jordan(3, digits.clone()).unwrap();
        assert!(fast.is_jordan());
        let slow = NumberSystem { base: crate::linalg::jordan_block(3).unwrap(), digits, jordan: false };
        let w = Word::new(vec![0, 1, 1, 0, 1, 0, 0]);
        assert_eq!(fast.evaluate(&w).unwrap(), slow.evaluate(&w).unwrap());
    }

    #[test]
    fn word_text_forms() {
        assert_eq!(Word::parse("pmz", 3).unwrap(), Word::new(vec![0, 1, 2]));
        assert!(Word::parse("pm", 2).is_err());
        let w = Word::parse("10,2,0", 11).unwrap();
        assert_eq!(w.letters(), &[10, 2, 0]);
        assert_eq!(w.render(11), "10,2,0");
        assert_eq!(Word::new(vec![0, 1, 1, 0]).render(2), "0110");
    }

    #[test]
    fn system_validation() {
        assert!(NumberSystem::jordan(2, vec![]).is_err());
        assert!(NumberSystem::jordan(2, vec![IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[0, 1])]).is_err());
        assert!(NumberSystem::jordan(2, vec![IntVector::from_i64(&[0, 1, 0])]).is_err());
    }
}
