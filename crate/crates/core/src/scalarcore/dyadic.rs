use super::C64;
use crate::error::{domain, Result};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact element of `2^{-k} Z[i]`, stored as `(re + i·im) / 2^k`.
///
/// Canonical: `k = 0` or at least one of `re`, `im` is odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicGaussian {
    re: BigInt,
    im: BigInt,
    k: u32,
}

fn is_even(x: &BigInt) -> bool {
    (x % 2u8).is_zero()
}

impl DyadicGaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>, k: u32) -> Self {
        let mut x = DyadicGaussian { re: re.into(), im: im.into(), k };
        x.normalize();
        x
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::new(n, 0, 0)
    }

    /// `(re + i·im) / 2^k` from small integers.
    pub fn frac(re: i64, im: i64, k: u32) -> Self {
        Self::new(re, im, k)
    }

    fn normalize(&mut self) {
        if self.re.is_zero() && self.im.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 && is_even(&self.re) && is_even(&self.im) {
            self.re >>= 1;
            self.im >>= 1;
            self.k -= 1;
        }
    }

    pub fn numerator(&self) -> (&BigInt, &BigInt) {
        (&self.re, &self.im)
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Rational integer (no denominator, no imaginary part).
    pub fn is_integer(&self) -> bool {
        self.k == 0 && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        DyadicGaussian { re: self.re.clone(), im: -&self.im, k: self.k }
    }

    pub fn re_part(&self) -> Self {
        Self::new(self.re.clone(), 0, self.k)
    }

    pub fn im_part(&self) -> Self {
        Self::new(self.im.clone(), 0, self.k)
    }

    fn scaled_to(&self, k: u32) -> (BigInt, BigInt) {
        let s = k - self.k;
        (&self.re << s, &self.im << s)
    }

    /// Exact quotient, or `None` when it leaves `2^{-k} Z[i]` or `rhs = 0`.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        // x / y = x·conj(y_num)·2^{k_y} / (N(y_num)·2^{k_x})
        let nr = &self.re * &rhs.re + &self.im * &rhs.im;
        let ni = &self.im * &rhs.re - &self.re * &rhs.im;
        let mut norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let mut twos: i64 = 0;
        while is_even(&norm) {
            norm >>= 1;
            twos += 1;
        }
        if !(&nr % &norm).is_zero() || !(&ni % &norm).is_zero() {
            return None;
        }
        let (mut qr, mut qi) = (nr / &norm, ni / &norm);
        let exp = self.k as i64 + twos - rhs.k as i64;
        if exp < 0 {
            qr <<= (-exp) as u32;
            qi <<= (-exp) as u32;
            Some(Self::new(qr, qi, 0))
        } else {
            Some(Self::new(qr, qi, exp as u32))
        }
    }

    pub fn to_c64(&self) -> C64 {
        let scale = 2f64.powi(-(self.k as i32));
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN) * scale,
            self.im.to_f64().unwrap_or(f64::NAN) * scale,
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.to_c64().re
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.re.to_i64()
        } else {
            None
        }
    }
}

impl From<i64> for DyadicGaussian {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl Add for &DyadicGaussian {
    type Output = DyadicGaussian;
    fn add(self, rhs: &DyadicGaussian) -> DyadicGaussian {
        let k = self.k.max(rhs.k);
        let (ar, ai) = self.scaled_to(k);
        let (br, bi) = rhs.scaled_to(k);
        DyadicGaussian::new(ar + br, ai + bi, k)
    }
}

impl Sub for &DyadicGaussian {
    type Output = DyadicGaussian;
    fn sub(self, rhs: &DyadicGaussian) -> DyadicGaussian {
        self + &(-rhs)
    }
}

impl Mul for &DyadicGaussian {
    type Output = DyadicGaussian;
    fn mul(self, rhs: &DyadicGaussian) -> DyadicGaussian {
        DyadicGaussian::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
            self.k + rhs.k,
        )
    }
}

impl Neg for &DyadicGaussian {
    type Output = DyadicGaussian;
    fn neg(self) -> DyadicGaussian {
        DyadicGaussian { re: -&self.re, im: -&self.im, k: self.k }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DyadicGaussian {
            type Output = DyadicGaussian;
            fn $m(self, rhs: DyadicGaussian) -> DyadicGaussian {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DyadicGaussian {
    type Output = DyadicGaussian;
    fn neg(self) -> DyadicGaussian {
        -&self
    }
}

impl fmt::Display for DyadicGaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => self.re.to_string(),
            (true, false) => format!("{}i", self.im),
            _ => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                format!("({}{}{}i)", self.re, sign, self.im.abs())
            }
        };
        if self.k == 0 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{}", BigInt::one() << self.k)
        }
    }
}

/// Dense matrix over `DyadicGaussian`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DMat {
    rows: usize,
    cols: usize,
    data: Vec<DyadicGaussian>,
}

impl DMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DMat { rows, cols, data: vec![DyadicGaussian::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = DyadicGaussian::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> DyadicGaussian) -> Self {
        let data = (0..rows * cols).map(|idx| f(idx / cols, idx % cols)).collect();
        DMat { rows, cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| DyadicGaussian::int(rows[i][j]))
    }

    pub fn diag(entries: &[DyadicGaussian]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
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

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn map(&self, f: impl Fn(&DyadicGaussian) -> DyadicGaussian) -> Self {
        DMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn re_part(&self) -> Self {
        self.map(|x| x.re_part())
    }

    pub fn im_part(&self) -> Self {
        self.map(|x| x.im_part())
    }

    pub fn scale(&self, s: &DyadicGaussian) -> Self {
        self.map(|x| x * s)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|x| x.is_real())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = &DyadicGaussian> {
        self.data.iter()
    }

    /// Sub-block `[r0, r0+nr) × [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        Self::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - n)].clone(),
            (false, true) => c[(i - n, j)].clone(),
            (false, false) => d[(i - n, j - n)].clone(),
        })
    }

    /// Square blocks `(A, B, C, D)` of an even-sized square matrix.
    pub fn quarters(&self) -> (Self, Self, Self, Self) {
        let n = self.rows / 2;
        (self.block(0, 0, n, n), self.block(0, n, n, n), self.block(n, 0, n, n), self.block(n, n, n, n))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                DyadicGaussian::zero()
            }
        })
    }

    pub fn mul_vec(&self, v: &[DyadicGaussian]) -> Vec<DyadicGaussian> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(DyadicGaussian::zero(), |acc, j| &acc + &(&self[(i, j)] * &v[j]))
            })
            .collect()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(domain("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or_else(|| domain("singular matrix"))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)]
                    .checked_div(&p)
                    .ok_or_else(|| domain("inverse leaves the dyadic Gaussian ring"))?;
                inv[(col, j)] = inv[(col, j)]
                    .checked_div(&p)
                    .ok_or_else(|| domain("inverse leaves the dyadic Gaussian ring"))?;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    a[(r, j)] = &a[(r, j)] - &(&f * &a[(col, j)]);
                    inv[(r, j)] = &inv[(r, j)] - &(&f * &inv[(col, j)]);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn determinant(&self) -> DyadicGaussian {
        // Laplace expansion; only used on matrices of size ≤ 8 with many zeros.
        let n = self.rows;
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut det = DyadicGaussian::zero();
        for j in 0..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let minor = Self::from_fn(n - 1, n - 1, |r, c| {
                self[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let term = &self[(0, j)] * &minor.determinant();
            det = if j % 2 == 0 { &det + &term } else { &det - &term };
        }
        det
    }

    pub fn to_c64(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_c64())
    }
}

impl std::ops::Index<(usize, usize)> for DMat {
    type Output = DyadicGaussian;
    fn index(&self, (i, j): (usize, usize)) -> &DyadicGaussian {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut DyadicGaussian {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &DMat {
    type Output = DMat;
    fn mul(self, rhs: &DMat) -> DMat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        DMat::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(DyadicGaussian::zero(), |acc, k| {
                let (a, b) = (&self[(i, k)], &rhs[(k, j)]);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
    }
}

impl Add for &DMat {
    type Output = DMat;
    fn add(self, rhs: &DMat) -> DMat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        DMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl Sub for &DMat {
    type Output = DMat;
    fn sub(self, rhs: &DMat) -> DMat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        DMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl Neg for &DMat {
    type Output = DMat;
    fn neg(self) -> DMat {
        self.map(|x| -x)
    }
}

impl fmt::Display for DMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
