//! Exact integer vectors and matrices over arbitrary-precision integers.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<Int>);

impl IntVector {
    pub fn new(entries: Vec<Int>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::input("vector must have at least one entry"));
        }
        Ok(IntVector(entries))
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        assert!(!entries.is_empty(), "vector must have at least one entry");
        IntVector(entries.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        IntVector(vec![Int::zero(); n])
    }

    /// Standard basis vector with a one at 0-based index `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Int::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Int> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &IntVector) -> Result<IntVector> {
        self.check_len(other)?;
        Ok(IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &IntVector) -> Result<IntVector> {
        self.check_len(other)?;
        Ok(IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> IntVector {
        IntVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Entries reduced into `[0, m)`.
    pub fn modulo(&self, m: &Int) -> IntVector {
        IntVector(self.0.iter().map(|a| a.mod_floor(m)).collect())
    }

    /// 1-based position of the last non-zero entry and its value, or `None`
    /// for the zero vector.
    pub fn pivot(&self) -> Option<(usize, Int)> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i + 1, x.clone()))
    }

    fn check_len(&self, other: &IntVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::dim(format!("vector lengths {} and {}", self.len(), other.len())));
        }
        Ok(())
    }
}

impl Index<usize> for IntVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::input("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dim("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Self::from_rows(data).expect("well-formed literal matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        self.data.chunks(self.cols).map(<[Int]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::input(format!("matrix must be square, got {}x{}", self.rows, self.cols)));
        }
        Ok(self.rows)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &IntVector) -> Result<IntVector> {
        if self.cols != v.len() {
            return Err(Error::dim(format!("cannot apply {}x{} to length {}", self.rows, self.cols, v.len())));
        }
        let out = (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for (a, b) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(&v.0) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect();
        Ok(IntVector(out))
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, k: &Int) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn modulo(&self, m: &Int) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mod_floor(m)).collect() }
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, k: u64) -> Result<IntMatrix> {
        let n = self.require_square()?;
        let mut result = Self::identity(n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Fraction-free (Bareiss) determinant with row pivoting.
    pub fn det(&self) -> Result<Int> {
        let n = self.require_square()?;
        let mut a = self.to_rows();
        let mut sign = false;
        let mut prev = Int::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = Int::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { -d } else { d })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    /// Lower-right block obtained by dropping the first `k` rows and columns.
    pub fn trailing_block(&self, k: usize) -> IntMatrix {
        let n = self.rows - k;
        let m = self.cols - k;
        let mut out = Self::zeros(n, m);
        for i in 0..n {
            for j in 0..m {
                out.set(i, j, self.get(i + k, j + k).clone());
            }
        }
        out
    }

    /// Solves `self · x = v` over the integers. Returns `None` when the
    /// unique rational solution is not integral. Uses Cramer's rule with
    /// fraction-free determinants.
    pub fn solve(&self, v: &IntVector) -> Result<Option<IntVector>> {
        let n = self.require_square()?;
        if v.len() != n {
            return Err(Error::dim(format!("right-hand side length {} for {n}x{n} system", v.len())));
        }
        let d = self.det()?;
        if d.is_zero() {
            return Err(Error::input("singular matrix"));
        }
        let mut x = Vec::with_capacity(n);
        for j in 0..n {
            let mut m = self.clone();
            for i in 0..n {
                m.set(i, j, v[i].clone());
            }
            let (q, r) = m.det()?.div_rem(&d);
            if !r.is_zero() {
                return Ok(None);
            }
            x.push(q);
        }
        Ok(Some(IntVector(x)))
    }

    /// Exact integer inverse, or `None` when the inverse is not integral.
    pub fn inverse(&self) -> Result<Option<IntMatrix>> {
        let n = self.require_square()?;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            match self.solve(&IntVector::unit(n, j))? {
                Some(c) => cols.push(c),
                None => return Ok(None),
            }
        }
        let mut out = Self::zeros(n, n);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                out.set(i, j, c[i].clone());
            }
        }
        Ok(Some(out))
    }

    fn check_same_shape(&self, other: &IntMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// col_a += q * col_b
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for i in 0..self.rows {
            let t = self.get(i, b) * q;
            self.data[i * self.cols + a] += t;
        }
    }

    /// row_a += q * row_b
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for j in 0..self.cols {
            let t = self.get(b, j) * q;
            self.data[a * self.cols + j] += t;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + a;
            self.data[idx] = -&self.data[idx];
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let idx = a * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Identity plus a superdiagonal of ones.
pub fn jordan_block(n: usize) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::input("Jordan block size must be at least 1"));
    }
    let mut m = IntMatrix::identity(n);
    for i in 0..n - 1 {
        m.set(i, i + 1, Int::one());
    }
    Ok(m)
}

pub fn is_jordan_block(m: &IntMatrix) -> bool {
    m.is_square() && jordan_block(m.rows()).map(|j| &j == m).unwrap_or(false)
}

/// Column-style Hermite decomposition `P = B·U`.
///
/// `B` is upper triangular with positive diagonal, and every entry right of a
/// diagonal entry lies in `[0, b_ii)`. `U` is unimodular.
pub fn hnf_decompose(p: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let n = p.require_square()?;
    if p.det()?.is_zero() {
        return Err(Error::input("Hermite decomposition needs a non-singular matrix"));
    }
    // Invariant: b · u == p. Column operations on b are mirrored by inverse
    // row operations on u.
    let mut b = p.clone();
    let mut u = IntMatrix::identity(n);
    for r in (0..n).rev() {
        // Collect the gcd of row r (columns 0..=r) into column r.
        loop {
            let nonzero: Vec<usize> = (0..=r).filter(|&j| !b.get(r, j).is_zero()).collect();
            if nonzero.len() <= 1 && nonzero.first().is_none_or(|&j| j == r) {
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&j| b.get(r, j).abs()).expect("non-empty row");
            if piv != r {
                b.swap_cols(piv, r);
                u.swap_rows(piv, r);
            }
            for j in 0..r {
                if b.get(r, j).is_zero() {
                    continue;
                }
                let q = b.get(r, j).div_floor(b.get(r, r));
                b.add_col_multiple(j, r, &-&q);
                u.add_row_multiple(r, j, &q);
            }
        }
        if b.get(r, r).is_negative() {
            b.negate_col(r);
            u.negate_row(r);
        }
    }
    for i in (0..n).rev() {
        let d = b.get(i, i).clone();
        for k in i + 1..n {
            let q = b.get(i, k).div_floor(&d);
            if !q.is_zero() {
                b.add_col_multiple(k, i, &-&q);
                u.add_row_multiple(i, k, &q);
            }
        }
    }
    Ok((b, u))
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    data: Vec<String>,
}

pub fn parse_int(s: &str) -> Result<Int> {
    s.trim().parse::<Int>().map_err(|_| Error::input(format!("not a decimal integer: {s:?}")))
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let data = self.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        MatrixRepr { rows: self.rows, cols: self.cols, data }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(d)?;
        if repr.data.len() != repr.rows {
            return Err(D::Error::custom(format!("expected {} rows, got {}", repr.rows, repr.data.len())));
        }
        let mut data = Vec::with_capacity(repr.rows * repr.cols);
        for row in &repr.data {
            if row.len() != repr.cols {
                return Err(D::Error::custom(format!("expected {} columns, got {}", repr.cols, row.len())));
            }
            for x in row {
                data.push(parse_int(x).map_err(D::Error::custom)?);
            }
        }
        IntMatrix::new(repr.rows, repr.cols, data).map_err(D::Error::custom)
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorRepr { data: self.0.iter().map(ToString::to_string).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = VectorRepr::deserialize(d)?;
        let entries = repr.data.iter().map(|x| parse_int(x)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        IntVector::new(entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> Int {
        if k > n {
            return Int::zero();
        }
        let mut r = Int::one();
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn jordan_blocks() {
        assert_eq!(jordan_block(1).unwrap(), IntMatrix::from_i64(&[&[1]]));
        assert_eq!(jordan_block(2).unwrap(), IntMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        assert_eq!(jordan_block(3).unwrap(), IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]));
        assert!(jordan_block(0).is_err());
    }

    #[test]
    fn nilpotency_index() {
        for n in 1..=8 {
            let nm = jordan_block(n).unwrap().sub(&IntMatrix::identity(n)).unwrap();
            assert!(nm.pow(n as u64).unwrap().is_zero());
            assert!(!nm.pow(n as u64 - 1).unwrap().is_zero());
        }
    }

    #[test]
    fn products() {
        let v = IntVector::from_i64(&[3, -4, 5]);
        assert_eq!(IntMatrix::identity(3).mat_vec(&v).unwrap(), v);
        let j2 = jordan_block(2).unwrap();
        assert_eq!(j2.mat_vec(&IntVector::from_i64(&[0, 1])).unwrap(), IntVector::from_i64(&[1, 1]));
        let j3 = jordan_block(3).unwrap();
        assert_eq!(j3.mat_vec(&IntVector::from_i64(&[0, 0, 1])).unwrap(), IntVector::from_i64(&[0, 1, 1]));
        assert!(j3.mat_vec(&v.clone()).is_ok());
        assert!(j2.mat_vec(&v).is_err());
        assert!(j2.mul(&j3).is_err());
    }

    #[test]
    fn powers_of_jordan_blocks_are_binomial() {
        let j5 = jordan_block(5).unwrap();
        let col = j5.pow(6).unwrap().mat_vec(&IntVector::from_i64(&[0, 0, 0, 0, 1])).unwrap();
        let expect = IntVector::new(vec![binom(6, 4), binom(6, 3), binom(6, 2), binom(6, 1), binom(6, 0)]).unwrap();
        assert_eq!(col, expect);
        for n in 1..=6usize {
            for k in 0..10u64 {
                let p = jordan_block(n).unwrap().pow(k).unwrap();
                for i in 0..n {
                    for j in 0..n {
                        let want = if j >= i { binom(k, (j - i) as u64) } else { Int::zero() };
                        assert_eq!(p.get(i, j), &want);
                    }
                }
            }
        }
        let j2 = jordan_block(2).unwrap();
        let mut v = IntVector::from_i64(&[0, 1]);
        for _ in 0..7 {
            v = j2.mat_vec(&v).unwrap();
        }
        assert_eq!(j2.pow(7).unwrap().mat_vec(&IntVector::from_i64(&[0, 1])).unwrap(), v);
        assert_eq!(v, IntVector::from_i64(&[7, 1]));
        assert_eq!(j5.pow(0).unwrap(), IntMatrix::identity(5));
    }

    #[test]
    fn determinants() {
        for n in 1..=6 {
            assert_eq!(jordan_block(n).unwrap().det().unwrap(), Int::one());
        }
        assert_eq!(IntMatrix::from_i64(&[&[2, 0], &[0, 4]]).det().unwrap(), Int::from(8));
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det().unwrap(), Int::from(-1));
        assert!(IntMatrix::from_i64(&[&[1, 2, 3]]).det().is_err());
        let p = IntMatrix::from_i64(&[&[2, -1, 0, -1], &[1, 0, 2, -2], &[0, -2, 0, 0], &[4, -4, 0, 0]]);
        assert_eq!(p.det().unwrap().abs(), Int::from(2 * 2 * 4));
    }

    fn check_hnf(p: &IntMatrix) -> (IntMatrix, IntMatrix) {
        let (b, u) = hnf_decompose(p).unwrap();
        assert_eq!(&b.mul(&u).unwrap(), p);
        assert!(b.is_upper_triangular());
        let n = p.rows();
        for i in 0..n {
            assert!(b.get(i, i).is_positive());
            for k in i + 1..n {
                assert!(!b.get(i, k).is_negative() && b.get(i, k) < b.get(i, i));
            }
        }
        assert_eq!(u.det().unwrap().abs(), Int::one());
        assert_eq!(b.det().unwrap().abs(), p.det().unwrap().abs());
        (b, u)
    }

    #[test]
    fn hermite_examples() {
        let (b, u) = check_hnf(&IntMatrix::identity(3));
        assert_eq!(b, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
        check_hnf(&IntMatrix::from_i64(&[&[2, 1], &[0, 3]]));
        let p = IntMatrix::from_i64(&[&[2, -1, 0, -1], &[1, 0, 2, -2], &[0, -2, 0, 0], &[4, -4, 0, 0]]);
        let (b, _) = check_hnf(&p);
        let diag: Vec<Int> = (0..4).map(|i| b.get(i, i).clone()).collect();
        assert_eq!(diag, [1, 2, 2, 4].map(Int::from).to_vec());
        assert!(hnf_decompose(&IntMatrix::from_i64(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn hermite_is_deterministic_and_unique_for_the_lattice() {
        let p = IntMatrix::from_i64(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let (b1, _) = hnf_decompose(&p).unwrap();
        // Same column lattice, different basis.
        let v = IntMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[3, -1, 1]]);
        let (b2, _) = hnf_decompose(&p.mul(&v).unwrap()).unwrap();
        assert_eq!(b1, b2);
    }

    #[test]
    fn exact_solve() {
        let p = IntMatrix::from_i64(&[&[2, 1], &[0, 3]]);
        assert_eq!(p.solve(&IntVector::from_i64(&[3, 3])).unwrap(), Some(IntVector::from_i64(&[1, 1])));
        assert_eq!(p.solve(&IntVector::from_i64(&[1, 0])).unwrap(), None);
        let j = jordan_block(4).unwrap();
        let inv = j.inverse().unwrap().unwrap();
        assert_eq!(j.mul(&inv).unwrap(), IntMatrix::identity(4));
    }

    #[test]
    fn json_round_trip() {
        let m = IntMatrix::from_i64(&[&[1, -2], &[3, 4]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"data":[["1","-2"],["3","4"]]}"#);
        assert_eq!(serde_json::from_str::<IntMatrix>(&s).unwrap(), m);
        let v = IntVector::from_i64(&[5, -6]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"data":["5","-6"]}"#);
        assert_eq!(serde_json::from_str::<IntVector>(&s).unwrap(), v);
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows":2,"cols":2,"data":[["1"],["3","4"]]}"#).is_err());
        assert!(serde_json::from_str::<IntVector>(r#"{"data":["x"]}"#).is_err());
    }
}
