use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{NumberSystem, Word};
use crate::error::{Error, Result};
use crate::linalg::{parse_int, Int};

/// Four witness words for one pivot position, in the order A, B, C, D,
/// with their pivot values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotWitness {
    pub words: [Word; 4],
    pub values: [Int; 4],
}

impl PivotWitness {
    pub fn a(&self) -> &Int {
        &self.values[0]
    }

    pub fn b(&self) -> &Int {
        &self.values[1]
    }

    pub fn c(&self) -> &Int {
        &self.values[2]
    }

    pub fn d(&self) -> &Int {
        &self.values[3]
    }

    pub fn gcd(&self) -> Int {
        self.values[2].gcd(&self.values[3])
    }
}

/// Per-pivot witnesses: `pivots[j - 1]` covers pivot position `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    digit_count: usize,
    pivots: Vec<PivotWitness>,
}

impl Certificate {
    pub fn new(digit_count: usize, pivots: Vec<PivotWitness>) -> Self {
        Certificate { digit_count, pivots }
    }

    /// Builds a certificate from words alone, filling in values by
    /// evaluation. Shapes are checked; sign and gcd conditions are not.
    pub fn from_words(ns: &NumberSystem, words: Vec<[Word; 4]>) -> Result<Self> {
        let mut pivots = Vec::with_capacity(words.len());
        for (j, ws) in words.into_iter().enumerate() {
            let mut values: [Int; 4] = Default::default();
            for (slot, w) in values.iter_mut().zip(&ws) {
                *slot = pivot_value_at(ns, w, j + 1)?;
            }
            pivots.push(PivotWitness { words: ws, values });
        }
        Ok(Certificate { digit_count: ns.digit_count(), pivots })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn digit_count(&self) -> usize {
        self.digit_count
    }

    pub fn pivots(&self) -> &[PivotWitness] {
        &self.pivots
    }

    /// Witness for 1-based pivot `j`.
    pub fn pivot(&self, j: usize) -> &PivotWitness {
        &self.pivots[j - 1]
    }

    pub fn max_word_len(&self) -> usize {
        self.pivots.iter().flat_map(|p| p.words.iter().map(Word::len)).max().unwrap_or(0)
    }

    /// Re-evaluates every word and checks shapes, recorded values and
    /// `A > 0 > B`. Returns `gcd(C_j, D_j)` for each pivot.
    pub fn check(&self, ns: &NumberSystem) -> Result<Vec<Int>> {
        if self.digit_count != ns.digit_count() {
            return Err(Error::cert(format!(
                "certificate is for {} digits, system has {}",
                self.digit_count,
                ns.digit_count()
            )));
        }
        if self.pivots.len() != ns.dim() {
            return Err(Error::cert(format!("{} pivots for dimension {}", self.pivots.len(), ns.dim())));
        }
        let mut gcds = Vec::with_capacity(self.pivots.len());
        for (i, p) in self.pivots.iter().enumerate() {
            let j = i + 1;
            for (w, v) in p.words.iter().zip(&p.values) {
                let got = pivot_value_at(ns, w, j)?;
                if &got != v {
                    return Err(Error::cert(format!("pivot {j}: recorded value {v}, evaluation gives {got}")));
                }
            }
            if !p.a().is_positive() || !p.b().is_negative() {
                return Err(Error::cert(format!("pivot {j}: need A > 0 > B, have A={} B={}", p.a(), p.b())));
            }
            let g = p.gcd();
            if g.is_zero() {
                return Err(Error::cert(format!("pivot {j}: C and D are both zero")));
            }
            gcds.push(g);
        }
        Ok(gcds)
    }

    /// Full check over the whole integer lattice: every pivot gcd is 1.
    pub fn verify(&self, ns: &NumberSystem) -> Result<()> {
        let ones = vec![Int::from(1); ns.dim()];
        self.verify_with_gcds(ns, &ones)
    }

    /// Full check with prescribed pivot gcds (the lattice diagonal).
    pub fn verify_with_gcds(&self, ns: &NumberSystem, required: &[Int]) -> Result<()> {
        let gcds = self.check(ns)?;
        for (j, (g, r)) in gcds.iter().zip(required).enumerate() {
            if g != r {
                return Err(Error::cert(format!("pivot {}: gcd(C, D) = {g}, required {r}", j + 1)));
            }
        }
        Ok(())
    }
}

/// Evaluates `w` and returns its entry at 1-based position `j`, failing
/// unless every later entry is zero.
pub(crate) fn pivot_value_at(ns: &NumberSystem, w: &Word, j: usize) -> Result<Int> {
    let v = ns.evaluate(w)?;
    if v.entries()[j..].iter().any(|x| !x.is_zero()) {
        return Err(Error::cert(format!("word {} evaluates to {v}, not a pivot-{j} shape", w.render(ns.digit_count()))));
    }
    Ok(v[j - 1].clone())
}

const SLOTS: [&str; 4] = ["A", "B", "C", "D"];

#[derive(Serialize, Deserialize)]
struct SlotRepr {
    word: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct PivotRepr {
    pivot: usize,
    #[serde(rename = "A")]
    a: SlotRepr,
    #[serde(rename = "B")]
    b: SlotRepr,
    #[serde(rename = "C")]
    c: SlotRepr,
    #[serde(rename = "D")]
    d: SlotRepr,
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    dimension: usize,
    digit_count: usize,
    pivots: Vec<PivotRepr>,
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let k = self.digit_count;
        let slot = |p: &PivotWitness, i: usize| SlotRepr { word: p.words[i].render(k), value: p.values[i].to_string() };
        let pivots = self
            .pivots
            .iter()
            .enumerate()
            .map(|(j, p)| PivotRepr { pivot: j + 1, a: slot(p, 0), b: slot(p, 1), c: slot(p, 2), d: slot(p, 3) })
            .collect();
        CertificateRepr { dimension: self.pivots.len(), digit_count: k, pivots }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CertificateRepr::deserialize(d)?;
        if repr.pivots.len() != repr.dimension {
            return Err(D::Error::custom("pivot count does not match dimension"));
        }
        let mut pivots = Vec::with_capacity(repr.pivots.len());
        for (i, p) in repr.pivots.into_iter().enumerate() {
            if p.pivot != i + 1 {
                return Err(D::Error::custom(format!("pivots out of order at {}", p.pivot)));
            }
            let mut words: [Word; 4] = Default::default();
            let mut values: [Int; 4] = Default::default();
            for (idx, slot) in [p.a, p.b, p.c, p.d].into_iter().enumerate() {
                words[idx] = Word::parse(&slot.word, repr.digit_count)
                    .map_err(|e| D::Error::custom(format!("slot {}: {e}", SLOTS[idx])))?;
                values[idx] = parse_int(&slot.value).map_err(D::Error::custom)?;
            }
            pivots.push(PivotWitness { words, values });
        }
        Ok(Certificate { digit_count: repr.digit_count, pivots })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntVector;

    fn j2() -> NumberSystem {
        NumberSystem::jordan(2, vec![IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[0, -1])]).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn example_cert() -> Certificate {
        let ns = j2();
        Certificate::from_words(&ns, vec![[w("01"), w("10"), w("01"), w("10")], [w("0"), w("1"), w("0"), w("1")]])
            .unwrap()
    }

    #[test]
    fn verifies_the_two_digit_example() {
        let c = example_cert();
        c.verify(&j2()).unwrap();
        assert_eq!(c.pivot(1).values, [1, -1, 1, -1].map(Int::from));
    }

    #[test]
    fn rejects_tampering() {
        let ns = j2();
        let mut c = example_cert();
        c.pivots[0].values[0] = Int::from(2);
        assert!(c.verify(&ns).is_err());

        let swapped = Certificate::from_words(&ns, vec![[w("10"), w("01"), w("01"), w("10")], [w("0"), w("1"), w("0"), w("1")]])
            .unwrap();
        assert!(swapped.verify(&ns).is_err());

        assert!(Certificate::from_words(&ns, vec![[w("0"), w("1"), w("0"), w("1")]]).is_err());
        assert!(example_cert().verify_with_gcds(&ns, &[Int::from(2), Int::from(1)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = example_cert();
        let s = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        back.verify(&j2()).unwrap();
    }
}
