//! Exact dense linear algebra over big integers and big rationals.
//!
//! Everything downstream (cyclotomic integrality checks, level structures,
//! lattice saturation) reduces to the normal forms and polynomial invariants
//! in this module. Dimensions stay tiny (rank 2d <= 16), so dense matrices
//! with exact arithmetic are the right tool; there is no floating point
//! anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Dense matrix over `BigInt`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    /// Row-major construction from machine integers; panics on ragged input.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged row lengths");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn neg(&self) -> IntMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn scalar_mul(&self, s: &BigInt) -> IntMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * s)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Entrywise reduction into `[0, n)`.
    pub fn reduce_mod(&self, n: &BigInt) -> IntMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mod_floor(n))
    }

    pub fn is_zero_mod(&self, n: &BigInt) -> bool {
        self.entries.iter().all(|e| e.mod_floor(n).is_zero())
    }

    /// True iff every entry is divisible by `n`.
    pub fn divisible_by(&self, n: &BigInt) -> bool {
        self.is_zero_mod(n)
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| {
            BigRational::from_integer(self.get(i, j).clone())
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Stack `other` below `self` (same column count).
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Stack `other` to the right of `self` (same row count).
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Dense matrix over `BigRational`, row-major. `BigRational` keeps entries in
/// lowest terms with positive denominators, so canonicity is automatic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigRational::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    pub fn scalar_mul(&self, s: &BigRational) -> RatMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * s)
    }

    pub fn pow(&self, mut e: u64) -> RatMatrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = RatMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True iff every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).to_integer()
        }))
    }

    /// LCM of entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// Exact inverse by Gauss-Jordan; `Err(Singular)` if not invertible.
    pub fn inverse(&self) -> Result<RatMatrix, Error> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for j in 0..2 * n {
                a[col][j] = &a[col][j] * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for j in 0..2 * n {
                        let delta = &factor * &a[col][j];
                        a[r][j] = &a[r][j] - delta;
                    }
                }
            }
        }
        Ok(RatMatrix::from_fn(n, n, |i, j| a[i][j + n].clone()))
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let scale = self.denominator_lcm();
        let scaled = IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) * BigRational::from_integer(scale.clone())).to_integer()
        });
        let d = scaled.det();
        let mut denom = BigInt::one();
        for _ in 0..self.rows {
            denom *= &scale;
        }
        BigRational::new(d, denom)
    }
}

/// Polynomial over `BigInt`, coefficients ascending by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division by a monic polynomial; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(divisor.is_monic(), "div_exact requires a monic divisor");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if self.degree() < dd {
            return if self.is_zero() { Some(IntPoly::zero()) } else { None };
        }
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + k] -= &c * dc;
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Substitute x -> x^2.
    pub fn compose_x_squared(&self) -> IntPoly {
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        IntPoly::new(out)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_matrix(&self, m: &IntMatrix) -> IntMatrix {
        assert!(m.is_square());
        let mut acc = IntMatrix::zero(m.rows, m.rows);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&IntMatrix::identity(m.rows).scalar_mul(c));
        }
        acc
    }

    /// Companion matrix of a monic polynomial of degree >= 1.
    pub fn companion(&self) -> IntMatrix {
        assert!(self.is_monic() && self.degree() >= 1);
        let n = self.degree();
        IntMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 {
                -self.coeff(i).clone()
            } else if i == j + 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.degree() > 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Polynomial over `BigRational`, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_int(&self) -> Option<IntPoly> {
        if !self.is_integral() {
            return None;
        }
        Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
    }
}

/// Row Hermite normal form with transform: returns `(H, U)` with `H = U * M`,
/// `U` unimodular, `H` upper echelon with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivot_row = 0usize;
    for col in 0..m.cols {
        if pivot_row >= m.rows {
            break;
        }
        // Euclid on the rows below pivot_row until one nonzero entry remains.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.rows {
                if !h.get(r, col).is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) => {
                            if h.get(r, col).abs() < h.get(b, col).abs() {
                                Some(r)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            swap_rows(&mut h, &mut u, pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..m.rows {
                if !h.get(r, col).is_zero() {
                    let q = h.get(r, col).div_floor(h.get(pivot_row, col));
                    row_axpy(&mut h, &mut u, r, pivot_row, &-q);
                    if !h.get(r, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            negate_row(&mut h, &mut u, pivot_row);
        }
        let pivot = h.get(pivot_row, col).clone();
        for r in 0..pivot_row {
            let q = h.get(r, col).div_floor(&pivot);
            if !q.is_zero() {
                row_axpy(&mut h, &mut u, r, pivot_row, &-q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

fn swap_rows(h: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..h.cols {
        let x = h.get(a, j).clone();
        let y = h.get(b, j).clone();
        h.set(a, j, y);
        h.set(b, j, x);
    }
    for j in 0..u.cols {
        let x = u.get(a, j).clone();
        let y = u.get(b, j).clone();
        u.set(a, j, y);
        u.set(b, j, x);
    }
}

fn negate_row(h: &mut IntMatrix, u: &mut IntMatrix, r: usize) {
    for j in 0..h.cols {
        let v = -h.get(r, j).clone();
        h.set(r, j, v);
    }
    for j in 0..u.cols {
        let v = -u.get(r, j).clone();
        u.set(r, j, v);
    }
}

/// row[dst] += q * row[src], applied to both `h` and `u`.
fn row_axpy(h: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for j in 0..h.cols {
        let v = h.get(dst, j) + q * h.get(src, j);
        h.set(dst, j, v);
    }
    for j in 0..u.cols {
        let v = u.get(dst, j) + q * u.get(src, j);
        u.set(dst, j, v);
    }
}

/// Elementary divisors d1 | d2 | ... | dr of `m` (positive, nonzero only).
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    let (_, d, _) = snf_with_transforms(m);
    (0..m.rows.min(m.cols))
        .map(|i| d.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect()
}

/// Smith normal form with transforms: returns `(U, D, V)` with
/// `U * M * V = D`, `U` and `V` unimodular, `D` diagonal with positive
/// entries satisfying the divisibility chain.
///
/// Diagonalization alternates row and column Hermite reductions; each pass
/// reduces every entry against its pivot, which keeps coefficient growth
/// polynomial (single-pivot gcd elimination can blow up trailing entries
/// exponentially). The divisibility chain is then enforced by local 2x2
/// gcd/lcm fixes on the diagonal.
pub fn snf_with_transforms(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let is_diagonal = |a: &IntMatrix| {
        for i in 0..a.rows {
            for j in 0..a.cols {
                if i != j && !a.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    };

    while !is_diagonal(&a) {
        let (h, u1) = hnf(&a);
        u = u1.mul(&u);
        a = h;
        if is_diagonal(&a) {
            break;
        }
        let (h2, u2) = hnf(&a.transpose());
        v = v.mul(&u2.transpose());
        a = h2.transpose();
    }

    // Column ops mirrored into `v`: col[dst] and col[src] are replaced by the
    // unimodular combination given by `w = [[w00, w01], [w10, w11]]`, acting
    // on columns (dst, src) from the right.
    let col_transform = |a: &mut IntMatrix,
                         v: &mut IntMatrix,
                         ci: usize,
                         cj: usize,
                         w: &[[BigInt; 2]; 2]| {
        for i in 0..a.rows {
            let x = a.get(i, ci).clone();
            let y = a.get(i, cj).clone();
            a.set(i, ci, &x * &w[0][0] + &y * &w[1][0]);
            a.set(i, cj, &x * &w[0][1] + &y * &w[1][1]);
        }
        for i in 0..v.rows {
            let x = v.get(i, ci).clone();
            let y = v.get(i, cj).clone();
            v.set(i, ci, &x * &w[0][0] + &y * &w[1][0]);
            v.set(i, cj, &x * &w[0][1] + &y * &w[1][1]);
        }
    };
    let swap_cols = |a: &mut IntMatrix, v: &mut IntMatrix, x: usize, y: usize| {
        for i in 0..a.rows {
            let t1 = a.get(i, x).clone();
            let t2 = a.get(i, y).clone();
            a.set(i, x, t2);
            a.set(i, y, t1);
        }
        for i in 0..v.rows {
            let t1 = v.get(i, x).clone();
            let t2 = v.get(i, y).clone();
            v.set(i, x, t2);
            v.set(i, y, t1);
        }
    };

    let k = rows.min(cols);
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..k.saturating_sub(1) {
            let j = i + 1;
            let di = a.get(i, i).clone();
            let dj = a.get(j, j).clone();
            if dj.is_zero() {
                continue;
            }
            if di.is_zero() {
                swap_rows(&mut a, &mut u, i, j);
                swap_cols(&mut a, &mut v, i, j);
                changed = true;
                continue;
            }
            if (&dj % &di).is_zero() {
                continue;
            }
            // diag(di, dj) -> diag(gcd, lcm) by a row fold followed by a
            // unimodular column combination and a row clear.
            row_axpy(&mut a, &mut u, i, j, &BigInt::one());
            let eg = di.extended_gcd(&dj);
            let g = eg.gcd.clone();
            let w = [
                [eg.x.clone(), -(&dj / &g)],
                [eg.y.clone(), &di / &g],
            ];
            col_transform(&mut a, &mut v, i, j, &w);
            let q = -(a.get(j, i) / &g);
            row_axpy(&mut a, &mut u, j, i, &q);
            changed = true;
        }
    }

    for i in 0..k {
        if a.get(i, i).is_negative() {
            negate_row(&mut a, &mut u, i);
        }
    }

    (u, a, v)
}

/// Basis of the integer kernel `{x : M x = 0}`; rows of the result are the
/// kernel vectors (a saturated lattice basis, possibly empty).
pub fn int_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(&m.transpose());
    let mut kernel_rows: Vec<Vec<BigInt>> = Vec::new();
    for r in 0..h.rows {
        if (0..h.cols).all(|j| h.get(r, j).is_zero()) {
            kernel_rows.push(u.row(r));
        }
    }
    let k = kernel_rows.len();
    IntMatrix::from_fn(k, m.cols, |i, j| kernel_rows[i][j].clone())
}

/// Monic characteristic polynomial, exact, by Faddeev-LeVerrier over Q.
pub fn charpoly_rat(m: &RatMatrix) -> RatPoly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = m.clone();
    let mut c = BigRational::zero();
    for k in 1..=n {
        if k > 1 {
            let adj = RatMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    mk.get(i, j) + &c
                } else {
                    mk.get(i, j).clone()
                }
            });
            mk = m.mul(&adj);
        }
        let trace: BigRational = (0..n).map(|i| mk.get(i, i).clone()).sum();
        c = -trace / BigRational::from_integer(BigInt::from(k as i64));
        coeffs[n - k] = c.clone();
    }
    RatPoly::new(coeffs)
}

/// Characteristic polynomial of an integer matrix; always integral.
pub fn charpoly(m: &IntMatrix) -> IntPoly {
    charpoly_rat(&m.to_rat())
        .to_int()
        .expect("charpoly of an integer matrix has integer coefficients")
}

/// Monic minimal polynomial over Q: the least k with M^k dependent on lower
/// powers, solved exactly.
pub fn minpoly_rat(m: &RatMatrix) -> RatPoly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let dim = n * n;
    // rows of `basis` are reduced vectorized powers; `combos[i]` expresses
    // basis row i in terms of the original powers
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut combos: Vec<Vec<BigRational>> = Vec::new();
    let mut power = RatMatrix::identity(n);
    for k in 0..=n {
        let mut vec: Vec<BigRational> = power.entries().to_vec();
        let mut combo = vec![BigRational::zero(); n + 1];
        combo[k] = BigRational::one();
        // reduce against current echelon
        for (row, rc) in echelon.iter().zip(combos.iter()) {
            let lead = row.iter().position(|e| !e.is_zero()).unwrap();
            if !vec[lead].is_zero() {
                let f = &vec[lead] / &row[lead];
                for j in 0..dim {
                    let delta = &f * &row[j];
                    vec[j] = &vec[j] - delta;
                }
                for j in 0..=n {
                    let delta = &f * &rc[j];
                    combo[j] = &combo[j] - delta;
                }
            }
        }
        if vec.iter().all(|e| e.is_zero()) {
            // combo gives the dependency; normalize to monic of degree k
            let lead = combo[k].clone();
            let coeffs: Vec<BigRational> = combo[..=k].iter().map(|c| c / &lead).collect();
            return RatPoly::new(coeffs);
        }
        echelon.push(vec);
        combos.push(combo);
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton guarantees a dependency by degree n")
}

/// Minimal polynomial of an integer matrix (integral by Gauss's lemma).
pub fn minpoly(m: &IntMatrix) -> IntPoly {
    minpoly_rat(&m.to_rat())
        .to_int()
        .expect("minimal polynomial of an integer matrix is integral")
}

/// Exact l-adic valuation of a rational; `None` encodes +infinity (input 0).
pub fn ell_valuation(q: &BigRational, ell: &BigInt) -> Option<i64> {
    assert!(ell > &BigInt::one(), "valuation base must exceed 1");
    if q.is_zero() {
        return None;
    }
    let vp = |mut x: BigInt| -> i64 {
        let mut v = 0;
        loop {
            let (d, r) = x.div_rem(ell);
            if r.is_zero() {
                v += 1;
                x = d;
            } else {
                return v;
            }
        }
    };
    Some(vp(q.numer().abs()) - vp(q.denom().abs()))
}
