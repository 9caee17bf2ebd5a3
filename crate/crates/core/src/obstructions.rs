//! Refutations of completeness: residue reachability modulo `m`, the
//! last-coordinate cone test for Jordan bases, and the digit-count bound for
//! bases that are idempotent modulo `m`.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix};
use crate::numeration::{NumberSystem, Word};

/// Largest residue space `m^n` the reachability search will explore.
pub const MAX_RESIDUE_STATES: u64 = 1 << 24;

const UNSEEN: u32 = u32::MAX;
const SEED: u32 = u32::MAX - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeSign {
    Nonneg,
    Nonpos,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Obstruction {
    Residue {
        #[serde(with = "decimal")]
        modulus: u64,
        #[serde(with = "decimal_vec")]
        witness: Vec<u64>,
        trace_lengths: Vec<usize>,
    },
    Cone {
        sign: ConeSign,
    },
    Rule {
        rule: String,
    },
}

impl Obstruction {
    /// Independent re-check of a residue or cone obstruction against `ns`.
    /// Rule obstructions carry no data to check here.
    pub fn verify(&self, ns: &NumberSystem) -> Result<()> {
        match self {
            Obstruction::Residue { modulus, witness, .. } => {
                let reach = residue_reachability(ns, *modulus)?;
                if witness.len() != ns.dim() || witness.iter().any(|x| x >= modulus) {
                    return Err(Error::input("witness is not a residue vector"));
                }
                if reach.contains(witness) {
                    return Err(Error::input(format!("residue {witness:?} is reachable mod {modulus}")));
                }
                Ok(())
            }
            Obstruction::Cone { sign } => match cone_obstruction_jordan(ns)? {
                Some(Obstruction::Cone { sign: s }) if s == *sign || shared_sign_both(ns) => Ok(()),
                _ => Err(Error::input("digits' last coordinates do not share the cited sign")),
            },
            Obstruction::Rule { .. } => Ok(()),
        }
    }
}

fn shared_sign_both(ns: &NumberSystem) -> bool {
    let n = ns.dim();
    ns.digits().iter().all(|d| d[n - 1].is_zero())
}

/// Reachability fixpoint of residues of non-empty words modulo `m`.
#[derive(Debug, Clone)]
pub struct Reachability {
    modulus: u64,
    dim: usize,
    parent: Vec<u32>,
    levels: Vec<Vec<u32>>,
    base: Vec<Vec<u64>>,
    digits: Vec<Vec<u64>>,
}

impl Reachability {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Index `k` of the first `R_k` equal to `R_{k+1}`.
    pub fn reached_at(&self) -> usize {
        self.levels.len()
    }

    /// Sizes of `R_1, …, R_k`.
    pub fn trace_lengths(&self) -> Vec<usize> {
        let mut total = 0;
        self.levels
            .iter()
            .map(|l| {
                total += l.len();
                total
            })
            .collect()
    }

    /// Residues of `R_k` for 1-based `k`, capped at the fixpoint.
    pub fn level_set(&self, k: usize) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> =
            self.levels.iter().take(k).flatten().map(|&s| self.decode(s)).collect();
        out.sort();
        out
    }

    pub fn fixpoint(&self) -> Vec<Vec<u64>> {
        self.level_set(self.levels.len())
    }

    pub fn size(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn total(&self) -> u64 {
        self.modulus.pow(self.dim as u32)
    }

    pub fn is_complete(&self) -> bool {
        self.size() as u64 == self.total()
    }

    pub fn contains(&self, residue: &[u64]) -> bool {
        residue.len() == self.dim && residue.iter().all(|&x| x < self.modulus) && self.parent[self.encode(residue) as usize] != UNSEEN
    }

    /// Missing residue minimizing (entry sum, lexicographic order).
    pub fn smallest_missing(&self) -> Option<Vec<u64>> {
        (0..self.total())
            .filter(|&s| self.parent[s as usize] == UNSEEN)
            .map(|s| self.decode(s as u32))
            .min_by(|a, b| (a.iter().sum::<u64>(), a).cmp(&(b.iter().sum::<u64>(), b)))
    }

    /// A word whose value reduces to `residue`, of length equal to the level
    /// at which the residue first appeared.
    pub fn witness_word(&self, residue: &[u64]) -> Option<Word> {
        if !self.contains(residue) {
            return None;
        }
        let mut chain = vec![self.encode(residue)];
        loop {
            let p = self.parent[*chain.last().expect("non-empty") as usize];
            if p == SEED {
                break;
            }
            chain.push(p);
        }
        chain.reverse();
        let mut letters = Vec::with_capacity(chain.len());
        let first = self.decode(chain[0]);
        letters.push(self.digits.iter().position(|d| d == &first).expect("seed residue is a digit"));
        for pair in chain.windows(2) {
            let image = self.apply(&self.decode(pair[0]));
            let target = self.decode(pair[1]);
            let c = self
                .digits
                .iter()
                .position(|d| image.iter().zip(d).map(|(x, y)| (x + y) % self.modulus).eq(target.iter().copied()))
                .expect("parent link realized by a digit");
            letters.push(c);
        }
        Some(Word::new(letters))
    }

    fn encode(&self, r: &[u64]) -> u32 {
        r.iter().rev().fold(0u64, |acc, &x| acc * self.modulus + x) as u32
    }

    fn decode(&self, mut s: u32) -> Vec<u64> {
        let m = self.modulus as u32;
        (0..self.dim)
            .map(|_| {
                let x = s % m;
                s /= m;
                u64::from(x)
            })
            .collect()
    }

    fn apply(&self, v: &[u64]) -> Vec<u64> {
        let m = u128::from(self.modulus);
        self.base
            .iter()
            .map(|row| (row.iter().zip(v).map(|(&a, &b)| u128::from(a) * u128::from(b) % m).sum::<u128>() % m) as u64)
            .collect()
    }
}

fn reduce(x: &Int, m: u64) -> u64 {
    x.mod_floor(&Int::from(m)).to_u64().expect("residue below modulus")
}

/// Least fixpoint of `R_1 = D mod m`, `R_{k+1} = R_1 ∪ {M·v + d : v ∈ R_k}`.
pub fn residue_reachability(ns: &NumberSystem, m: u64) -> Result<Reachability> {
    if m < 2 {
        return Err(Error::input("modulus must be at least 2"));
    }
    let n = ns.dim();
    let total = m.checked_pow(n as u32).filter(|&t| t <= MAX_RESIDUE_STATES).ok_or_else(|| {
        Error::input(format!("residue space {m}^{n} exceeds the search limit of {MAX_RESIDUE_STATES}"))
    })?;
    let base: Vec<Vec<u64>> = ns.base().to_rows().iter().map(|r| r.iter().map(|x| reduce(x, m)).collect()).collect();
    let digits: Vec<Vec<u64>> = ns.digits().iter().map(|d| d.entries().iter().map(|x| reduce(x, m)).collect()).collect();
    let mut reach = Reachability { modulus: m, dim: n, parent: vec![UNSEEN; total as usize], levels: Vec::new(), base, digits };
    let mut frontier = Vec::new();
    for d in &reach.digits {
        let s = reach.encode(d);
        if reach.parent[s as usize] == UNSEEN {
            reach.parent[s as usize] = SEED;
            frontier.push(s);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &s in &frontier {
            let image = reach.apply(&reach.decode(s));
            for d in &reach.digits {
                let r: Vec<u64> = image.iter().zip(d).map(|(x, y)| (x + y) % m).collect();
                let t = reach.encode(&r);
                if reach.parent[t as usize] == UNSEEN {
                    reach.parent[t as usize] = s;
                    next.push(t);
                }
            }
        }
        reach.levels.push(frontier);
        frontier = next;
    }
    Ok(reach)
}

/// Scans `m = 2 ..= m_max` and reports the first modulus whose fixpoint
/// misses a residue.
pub fn residue_obstruction(ns: &NumberSystem, m_max: u64) -> Result<Option<Obstruction>> {
    if m_max < 2 {
        return Err(Error::input("m_max must be at least 2"));
    }
    residue_obstruction_at(ns, 2..=m_max)
}

/// Like [`residue_obstruction`] over an explicit list of moduli. Moduli whose
/// residue space exceeds [`MAX_RESIDUE_STATES`] are skipped.
pub fn residue_obstruction_at(ns: &NumberSystem, moduli: impl IntoIterator<Item = u64>) -> Result<Option<Obstruction>> {
    let n = ns.dim() as u32;
    for m in moduli {
        if m < 2 || m.checked_pow(n).is_none_or(|t| t > MAX_RESIDUE_STATES) {
            continue;
        }
        let reach = residue_reachability(ns, m)?;
        if let Some(witness) = reach.smallest_missing() {
            return Ok(Some(Obstruction::Residue { modulus: m, witness, trace_lengths: reach.trace_lengths() }));
        }
    }
    Ok(None)
}

/// For a Jordan base: all digits' last coordinates weakly of one sign traps
/// every representation in a half-space.
pub fn cone_obstruction_jordan(ns: &NumberSystem) -> Result<Option<Obstruction>> {
    if !ns.is_jordan() {
        return Err(Error::input("the cone test applies only to a Jordan block base"));
    }
    let n = ns.dim();
    let last = ns.digits().iter().map(|d| &d[n - 1]);
    if last.clone().all(|x| !x.is_negative()) {
        return Ok(Some(Obstruction::Cone { sign: ConeSign::Nonneg }));
    }
    if last.clone().all(|x| !x.is_positive()) {
        return Ok(Some(Obstruction::Cone { sign: ConeSign::Nonpos }));
    }
    Ok(None)
}

/// Bound on residues mod `m` reachable with `k` digits when `M^r ≡ M`
/// (mod `m`) for every `r >= 1`. Returns the bound and whether it reaches
/// `m^n`.
///
/// When `M ≡ I` the reachable set lies in `{Σ a_j v_j}` with `a_j ∈ Z_m`,
/// giving `m^k`. Otherwise a value is `M·s + d` for such a sum `s` and a
/// final digit `d`, giving at most `k·m^k`.
pub fn residue_span_bound(base: &IntMatrix, m: u64, k: usize) -> Result<(Int, bool)> {
    let n = base.require_square()?;
    if m < 2 {
        return Err(Error::input("modulus must be at least 2"));
    }
    let mi = Int::from(m);
    let reduced = base.modulo(&mi);
    let mut power = reduced.clone();
    let mut seen = vec![power.clone()];
    loop {
        power = power.mul(&reduced)?.modulo(&mi);
        if power != reduced {
            return Err(Error::input(format!("base powers are not stable modulo {m}")));
        }
        if seen.contains(&power) {
            break;
        }
        seen.push(power.clone());
    }
    let span = Int::from(m).pow(k as u32);
    let bound = if reduced == IntMatrix::identity(n) { span } else { span * Int::from(k as u64) };
    let saturating = bound >= Int::from(m).pow(n as u32);
    Ok((bound, saturating))
}

/// The superdiagonal-2 matrix: ones on the diagonal, twos above it.
pub fn superdiagonal_two(n: usize) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::input("dimension must be at least 1"));
    }
    let mut m = IntMatrix::identity(n);
    for i in 0..n - 1 {
        m.set(i, i + 1, Int::from(2));
    }
    Ok(m)
}

/// Entries of `v` reduced into `[0, m)`.
pub fn residue_of(v: &crate::linalg::IntVector, m: u64) -> Vec<u64> {
    v.entries().iter().map(|x| reduce(x, m)).collect()
}

mod decimal {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        use serde::de::Error;
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

mod decimal_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[u64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u64>, D::Error> {
        use serde::de::Error;
        Vec::<String>::deserialize(d)?.iter().map(|x| x.parse().map_err(D::Error::custom)).collect()
    }
}
