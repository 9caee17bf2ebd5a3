//! Words over `{v₁, v₂} = {(0,1), (0,-1)}` that evaluate to zero in base
//! `J₂`: a streaming recognizer with space accounting, a closed-form oracle,
//! and exhaustive pumping-down evidence at a fixed pumping length.
//!
//! The pumping check is finite evidence at each `p`, not a proof.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeration::Word;

pub const V1: usize = 0;
pub const V2: usize = 1;

fn sign(c: usize) -> Result<i128> {
    match c {
        V1 => Ok(1),
        V2 => Ok(-1),
        _ => Err(Error::input(format!("letter {c} is not v1 or v2"))),
    }
}

fn bits(x: i128) -> u32 {
    128 - x.unsigned_abs().leading_zeros()
}

/// Result of a streaming run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroRun {
    pub member: bool,
    /// Largest bit length of `|x₁|` or `|x₂|` at any step, sign not counted.
    pub peak_bits: u32,
    /// Largest `|x₁|` at any step.
    pub peak_first: u128,
}

/// Streams `x ← J₂·x + d` letter by letter keeping only the two coordinates.
pub fn is_zero_word(w: &Word) -> Result<ZeroRun> {
    if w.is_empty() {
        return Err(Error::input("zero-language words are non-empty"));
    }
    let (mut x1, mut x2) = (0i128, 0i128);
    let (mut peak_bits, mut peak_first) = (0u32, 0u128);
    for &c in w.letters() {
        let s = sign(c)?;
        x1 += x2;
        x2 += s;
        peak_bits = peak_bits.max(bits(x1)).max(bits(x2));
        peak_first = peak_first.max(x1.unsigned_abs());
    }
    Ok(ZeroRun { member: x1 == 0 && x2 == 0, peak_bits, peak_first })
}

/// `Σ εᵢ = 0` and `Σ i·εᵢ = 0`, with position 0 at the rightmost letter.
pub fn zero_oracle(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::input("zero-language words are non-empty"));
    }
    let (mut s0, mut s1) = (0i128, 0i128);
    for (i, &c) in w.letters().iter().rev().enumerate() {
        let e = sign(c)?;
        s0 += e;
        s1 += e * i as i128;
    }
    Ok(s0 == 0 && s1 == 0)
}

/// `v₁^p v₂^{2p} v₁^p`.
pub fn pumping_word(p: usize) -> Word {
    Word::new([vec![V1; p], vec![V2; 2 * p], vec![V1; p]].concat())
}

/// Where the window `vwx` sits in `v₁^p v₂^{2p} v₁^p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PumpCase {
    /// Inside the first `v₁` block.
    FirstOnes,
    /// Across the first `v₁`/`v₂` border.
    FirstBorder,
    /// Inside the `v₂` block.
    Middle,
    /// Across the `v₂`/`v₁` border.
    SecondBorder,
    /// Inside the last `v₁` block.
    LastOnes,
}

impl PumpCase {
    pub const ALL: [PumpCase; 5] =
        [PumpCase::FirstOnes, PumpCase::FirstBorder, PumpCase::Middle, PumpCase::SecondBorder, PumpCase::LastOnes];

    fn of(p: usize, start: usize, end: usize) -> PumpCase {
        let block = |i: usize| if i < p { 0 } else if i < 3 * p { 1 } else { 2 };
        match (block(start), block(end - 1)) {
            (0, 0) => PumpCase::FirstOnes,
            (0, _) => PumpCase::FirstBorder,
            (1, 1) => PumpCase::Middle,
            (1, _) => PumpCase::SecondBorder,
            _ => PumpCase::LastOnes,
        }
    }
}

/// `s = u·v·w·x·y` by lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub x: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseCount {
    pub case: PumpCase,
    pub decompositions: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PumpingReport {
    pub p: usize,
    pub word_length: usize,
    pub decompositions: u64,
    pub cases: Vec<CaseCount>,
    /// Decompositions whose pumped-down word stays in the language.
    pub counterexamples: Vec<Decomposition>,
    pub holds: bool,
}

/// Enumerates every `s = uvwxy` with `|vwx| <= p`, `|vx| >= 1` and checks
/// that `uwy` is not a zero word. Order: start of `v`, then `|v|`, `|w|`,
/// `|x|`.
pub fn pumping_witness_check(p: usize) -> Result<PumpingReport> {
    if p == 0 {
        return Err(Error::input("pumping length must be at least 1"));
    }
    let s = pumping_word(p);
    let letters = s.letters();
    let n = letters.len();
    let mut counts = [0u64; 5];
    let mut total = 0u64;
    let mut counterexamples = Vec::new();
    for u in 0..n {
        for v in 0..=p {
            for w in 0..=p - v {
                for x in 0..=p - v - w {
                    if v + x == 0 || u + v + w + x > n {
                        continue;
                    }
                    total += 1;
                    let case = PumpCase::of(p, u, u + v + w + x);
                    counts[PumpCase::ALL.iter().position(|c| *c == case).expect("listed")] += 1;
                    let mut down = Vec::with_capacity(n - v - x);
                    down.extend_from_slice(&letters[..u]);
                    down.extend_from_slice(&letters[u + v..u + v + w]);
                    down.extend_from_slice(&letters[u + v + w + x..]);
                    // Pumping down to the empty word leaves the language by definition.
                    if !down.is_empty() && is_zero_word(&Word::new(down))?.member {
                        counterexamples.push(Decomposition { u, v, w, x });
                    }
                }
            }
        }
    }
    let cases = PumpCase::ALL.iter().zip(counts).map(|(&case, decompositions)| CaseCount { case, decompositions }).collect();
    Ok(PumpingReport { p, word_length: n, decompositions: total, holds: counterexamples.is_empty(), cases, counterexamples })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceRow {
    pub length: usize,
    pub peak_bits: u32,
    pub peak_first: u128,
    /// `2⌈log₂ L⌉ + 2`.
    pub bound: u32,
}

/// Streams `v₁^L` for each length and records the peaks.
pub fn space_profile(lengths: &[usize]) -> Result<Vec<SpaceRow>> {
    lengths
        .iter()
        .map(|&length| {
            if length == 0 {
                return Err(Error::input("lengths must be at least 1"));
            }
            let run = is_zero_word(&Word::new(vec![V1; length]))?;
            let log = usize::BITS - (length - 1).leading_zeros();
            Ok(SpaceRow { length, peak_bits: run.peak_bits, peak_first: run.peak_first, bound: 2 * log + 2 })
        })
        .collect()
}
