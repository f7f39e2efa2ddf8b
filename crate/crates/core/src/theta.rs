//! Riemann theta functions with half-integer characteristics on Siegel
//! space of degree `n ≤ 4`, and the genus-one Jacobi theta constants.

use crate::error::{domain, Error, Result};
use crate::scalarcore::C64;
use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Integer characteristic `(a, b)`; the series uses `a/2` and `b/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Characteristic {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl Characteristic {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(domain("characteristic halves must have equal positive length"));
        }
        Ok(Characteristic { a, b })
    }

    pub fn zero(n: usize) -> Self {
        Characteristic { a: vec![0; n], b: vec![0; n] }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// `a·bᵀ`, whose parity decides whether the constant is odd.
    pub fn dot(&self) -> i64 {
        self.a.iter().zip(&self.b).map(|(x, y)| x * y).sum()
    }

    pub fn to_real(&self) -> RealCharacteristic {
        RealCharacteristic {
            a: self.a.iter().map(|&x| x as f64).collect(),
            b: self.b.iter().map(|&x| x as f64).collect(),
        }
    }

    pub fn shifted(&self, da: &[i64], db: &[i64]) -> Self {
        Characteristic {
            a: self.a.iter().zip(da).map(|(x, y)| x + y).collect(),
            b: self.b.iter().zip(db).map(|(x, y)| x + y).collect(),
        }
    }
}

fn parse_half(s: &str) -> Result<Vec<i64>> {
    let bad = || domain(format!("cannot parse characteristic half '{s}'"));
    if s.contains(',') || s.contains(' ') || s.starts_with('-') {
        s.split([',', ' ']).filter(|t| !t.is_empty()).map(|t| t.trim().parse().map_err(|_| bad())).collect()
    } else {
        s.chars().map(|c| c.to_digit(10).map(i64::from).ok_or_else(bad)).collect()
    }
}

impl FromStr for Characteristic {
    type Err = Error;

    /// `"1000,0100"` (digit strings) or `"1 0 -1 0;0 1 0 0"`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = if let Some((a, b)) = s.split_once(';') {
            (a, b)
        } else {
            s.split_once(',').ok_or_else(|| domain(format!("characteristic '{s}' needs two halves")))?
        };
        Characteristic::new(parse_half(a.trim())?, parse_half(b.trim())?)
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let simple = self.a.iter().chain(&self.b).all(|x| (0..=9).contains(x));
        let half = |v: &[i64]| {
            if simple {
                v.iter().map(|x| x.to_string()).collect::<String>()
            } else {
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            }
        };
        let sep = if simple { "," } else { ";" };
        write!(f, "{}{sep}{}", half(&self.a), half(&self.b))
    }
}

/// Characteristic with rational entries, as produced by non-integral
/// symplectic actions. Same `/2` convention as [`Characteristic`].
#[derive(Clone, Debug, PartialEq)]
pub struct RealCharacteristic {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl RealCharacteristic {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(domain("characteristic halves must have equal positive length"));
        }
        Ok(RealCharacteristic { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn shifted(&self, da: &[f64], db: &[f64]) -> Self {
        RealCharacteristic {
            a: self.a.iter().zip(da).map(|(x, y)| x + y).collect(),
            b: self.b.iter().zip(db).map(|(x, y)| x + y).collect(),
        }
    }
}

/// Point of the Siegel upper half-space.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint {
    tau: DMatrix<C64>,
    lambda_min: f64,
}

const SYMMETRY_TOL: f64 = 1e-12;

impl SiegelPoint {
    /// Symmetrizes after checking symmetry and positivity of `Im τ`.
    pub fn new(tau: DMatrix<C64>) -> Result<Self> {
        let n = tau.nrows();
        if n == 0 || n != tau.ncols() {
            return Err(domain("τ must be a non-empty square matrix"));
        }
        let scale = tau.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let asym = (&tau - tau.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(asym <= SYMMETRY_TOL * scale) {
            return Err(domain(format!("τ is not symmetric (asymmetry {asym:e})")));
        }
        let tau = (&tau + tau.transpose()).map(|z| z * 0.5);
        let y = tau.map(|z| z.im);
        let lambda_min = SymmetricEigen::new(y).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if !(lambda_min > 0.0) {
            return Err(domain(format!("Im τ is not positive definite (λ_min = {lambda_min:e})")));
        }
        Ok(SiegelPoint { tau, lambda_min })
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let n = rows.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn scalar(t: C64) -> Result<Self> {
        Self::new(DMatrix::from_element(1, 1, t))
    }

    /// `i·I_n`.
    pub fn i_identity(n: usize) -> Self {
        SiegelPoint { tau: DMatrix::identity(n, n).map(|x: C64| x * C64::new(0.0, 1.0)), lambda_min: 1.0 }
    }

    pub fn dim(&self) -> usize {
        self.tau.nrows()
    }

    pub fn tau(&self) -> &DMatrix<C64> {
        &self.tau
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.tau[(i, j)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaAccuracy {
    /// Tail bound relative to the largest term.
    pub target_eps: f64,
    /// Largest admissible half-width of the lattice box, per coordinate.
    pub max_radius: i64,
}

impl Default for ThetaAccuracy {
    fn default() -> Self {
        ThetaAccuracy { target_eps: 1e-16, max_radius: 48 }
    }
}

impl ThetaAccuracy {
    pub fn new(target_eps: f64, max_radius: i64) -> Result<Self> {
        if !(target_eps > 0.0) {
            return Err(domain("target_eps must be positive"));
        }
        if max_radius < 4 {
            return Err(domain("max_radius must be at least 4"));
        }
        Ok(ThetaAccuracy { target_eps, max_radius })
    }
}

const MARGIN_START: f64 = 6.0;
const MARGIN_STEP: f64 = 4.0;
const MARGIN_ROUNDS: usize = 8;

struct Ellipsoid<'a> {
    tau: &'a DMatrix<C64>,
    // upper Cholesky factor of Im τ
    r: DMatrix<f64>,
    center: Vec<f64>,
    offset: Vec<f64>,
    phase: Vec<C64>,
    r2_small: f64,
    r2_big: f64,
    small: C64,
    big: C64,
    point: Vec<f64>,
    terms: usize,
}

impl Ellipsoid<'_> {
    fn level(&mut self, i: usize, used: f64) {
        let n = self.center.len();
        // contribution of coordinates above i, normalized by r_ii
        let mut shift = 0.0;
        for j in i + 1..n {
            shift += self.r[(i, j)] * (self.point[j] - self.center[j]);
        }
        let rii = self.r[(i, i)];
        let mid = self.center[i] - shift / rii;
        let rem = self.r2_big - used;
        if rem < 0.0 {
            return;
        }
        let w = rem.sqrt() / rii;
        let off = self.offset[i];
        let lo = (mid - w - off).ceil() as i64;
        let hi = (mid + w - off).floor() as i64;
        for k in lo..=hi {
            let m = k as f64 + off;
            self.point[i] = m;
            let d = rii * (m - self.center[i]) + shift;
            let q = used + d * d;
            if q > self.r2_big {
                continue;
            }
            if i == 0 {
                self.add(q);
            } else {
                self.level(i - 1, q);
            }
        }
    }

    fn add(&mut self, q: f64) {
        let m = &self.point;
        let n = m.len();
        let mut quad = C64::new(0.0, 0.0);
        for i in 0..n {
            let mut row = C64::new(0.0, 0.0);
            for j in 0..n {
                row += self.tau[(i, j)] * m[j];
            }
            quad += row * m[i];
        }
        let lin: C64 = (0..n).map(|i| self.phase[i] * m[i]).sum();
        let t = (C64::new(0.0, PI) * quad + C64::new(0.0, 2.0 * PI) * lin).exp();
        self.big += t;
        if q <= self.r2_small {
            self.small += t;
        }
        self.terms += 1;
    }
}

/// `Σ_k e(½(k+a/2)τ(k+a/2)ᵀ + (k+a/2)(ζ+b/2)ᵀ)` for rational `a, b`.
///
/// Terms are enumerated over an ellipsoid in the `Im τ` norm around the
/// stationary point of `|term|`; the radius grows until two nested
/// ellipsoids agree to `target_eps` relative to the largest term.
pub fn riemann_theta_real(
    ch: &RealCharacteristic,
    zeta: &[C64],
    tp: &SiegelPoint,
    acc: &ThetaAccuracy,
) -> Result<C64> {
    let n = tp.dim();
    if ch.dim() != n || zeta.len() != n {
        return Err(domain(format!(
            "dimension mismatch: τ is {n}×{n}, characteristic {}, ζ {}",
            ch.dim(),
            zeta.len()
        )));
    }
    let tau = tp.tau();
    let y = tau.map(|z| z.im);
    let chol = Cholesky::new(y.clone()).ok_or_else(|| domain("Im τ is not positive definite"))?;
    let r = chol.l().transpose();
    let yinv = chol.inverse();
    let imz = DVector::from_iterator(n, zeta.iter().map(|z| z.im));
    let center: Vec<f64> = (-(&yinv * &imz)).iter().copied().collect();
    let cyc: f64 = {
        let c = DVector::from_column_slice(&center);
        (c.transpose() * &y * &c)[(0, 0)]
    };
    // largest term modulus is exp(π cᵀYc)
    let log_scale = PI * cyc;
    let phase: Vec<C64> = zeta.iter().zip(&ch.b).map(|(z, b)| z + b / 2.0).collect();
    let offset: Vec<f64> = ch.a.iter().map(|a| a / 2.0).collect();
    let base = -acc.target_eps.ln();
    let mut margin = MARGIN_START;
    for _ in 0..MARGIN_ROUNDS {
        let r2_small = (base + margin) / PI;
        let r2_big = (base + margin + MARGIN_STEP) / PI;
        let widest = (0..n).map(|i| (r2_big * yinv[(i, i)]).sqrt()).fold(0.0, f64::max);
        if widest > acc.max_radius as f64 {
            return Err(Error::Truncation(format!(
                "lattice box half-width {widest:.1} exceeds max_radius {}",
                acc.max_radius
            )));
        }
        let mut e = Ellipsoid {
            tau,
            r: r.clone(),
            center: center.clone(),
            offset: offset.clone(),
            phase: phase.clone(),
            r2_small,
            r2_big,
            small: C64::new(0.0, 0.0),
            big: C64::new(0.0, 0.0),
            point: vec![0.0; n],
            terms: 0,
        };
        e.level(n - 1, 0.0);
        if (e.big - e.small).norm() <= acc.target_eps * log_scale.exp() {
            return Ok(e.big);
        }
        margin += MARGIN_STEP;
    }
    Err(Error::Truncation("nested truncations did not agree".into()))
}

/// Theta function with integer characteristic.
pub fn riemann_theta(ch: &Characteristic, zeta: &[C64], tp: &SiegelPoint, acc: &ThetaAccuracy) -> Result<C64> {
    riemann_theta_real(&ch.to_real(), zeta, tp, acc)
}

/// Value at `ζ = 0`.
pub fn theta_constant(ch: &Characteristic, tp: &SiegelPoint, acc: &ThetaAccuracy) -> Result<C64> {
    riemann_theta(ch, &vec![C64::new(0.0, 0.0); tp.dim()], tp, acc)
}

pub fn theta_constant_real(ch: &RealCharacteristic, tp: &SiegelPoint, acc: &ThetaAccuracy) -> Result<C64> {
    riemann_theta_real(ch, &vec![C64::new(0.0, 0.0); tp.dim()], tp, acc)
}

/// `ϑ_{jk}(τ)` for `j, k ∈ {0, 1}`.
pub fn jacobi_theta(j: u8, k: u8, tau1: C64) -> Result<C64> {
    if j > 1 || k > 1 {
        return Err(domain("Jacobi theta indices are 0 or 1"));
    }
    if !(tau1.im > 0.0) {
        return Err(domain(format!("Im τ = {} is not positive", tau1.im)));
    }
    let ch = Characteristic { a: vec![j as i64], b: vec![k as i64] };
    theta_constant(&ch, &SiegelPoint::scalar(tau1)?, &ThetaAccuracy::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let ch: Characteristic = "1000,0100".parse().unwrap();
        assert_eq!(ch.a, vec![1, 0, 0, 0]);
        assert_eq!(ch.b, vec![0, 1, 0, 0]);
        assert_eq!(ch.to_string(), "1000,0100");
        let ch: Characteristic = "2 -1;0 3".parse().unwrap();
        assert_eq!(ch.a, vec![2, -1]);
        assert_eq!(ch.to_string(), "2 -1;0 3");
        assert!("10,0".parse::<Characteristic>().is_err());
    }

    #[test]
    fn siegel_validation() {
        let i = C64::new(0.0, 1.0);
        assert!(SiegelPoint::from_rows(&[&[i, C64::new(0.1, 0.0)], &[C64::new(0.2, 0.0), i]]).is_err());
        assert!(SiegelPoint::from_rows(&[&[i, 2.0 * i], &[2.0 * i, i]]).is_err());
        let p = SiegelPoint::from_rows(&[&[i, 0.5 * i], &[0.5 * i, i]]).unwrap();
        assert!((p.lambda_min() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn odd_genus_one_vanishes() {
        let v = jacobi_theta(1, 1, C64::new(0.2, 0.8)).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn truncation_limit() {
        let acc = ThetaAccuracy::new(1e-16, 4).unwrap();
        let tp = SiegelPoint::scalar(C64::new(0.0, 0.01)).unwrap();
        assert!(matches!(theta_constant(&Characteristic::zero(1), &tp, &acc), Err(Error::Truncation(_))));
    }
}
