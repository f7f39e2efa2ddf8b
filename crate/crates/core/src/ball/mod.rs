//! The complex 3-ball `v*Uv < 0`, its embedding `τ(v)` into Siegel space
//! of degree four, the homomorphism `ȷ` into `Sp(8)`, automorphy factors
//! and actions on characteristics.

mod named;

pub use named::{builtin, half_turn, natural_lift, NamedElem};

use crate::error::{domain, Error, Result};
use crate::scalarcore::{DMat, DyadicGaussian, C64};
use crate::theta::{theta_constant, Characteristic, RealCharacteristic, SiegelPoint, ThetaAccuracy};
use nalgebra::DMatrix;
use rand::Rng;
use std::fmt;

/// The Hermitian form matrix `U`.
pub fn u_matrix() -> DMat {
    DMat::from_ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
}

/// `J_{2n} = [[O, -I], [I, O]]`.
pub fn j_matrix(n: usize) -> DMat {
    let z = DMat::zeros(n, n);
    let i = DMat::identity(n);
    DMat::from_blocks(&z, &(-&i), &i, &z)
}

/// `vᵀUv`.
pub fn quadratic(v: &[C64; 4]) -> C64 {
    2.0 * v[0] * v[1] + v[2] * v[2] + v[3] * v[3]
}

/// `v*Uv`.
pub fn hermitian(v: &[C64; 4]) -> f64 {
    2.0 * (v[0].conj() * v[1]).re + v[2].norm_sqr() + v[3].norm_sqr()
}

/// Representative of a point of the 3-ball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallPoint([C64; 4]);

impl BallPoint {
    pub fn new(v: [C64; 4]) -> Result<Self> {
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("ball point has non-finite entries"));
        }
        let h = hermitian(&v);
        if !(h < 0.0) {
            return Err(domain(format!("v*Uv = {h:e} is not negative")));
        }
        Ok(BallPoint(v))
    }

    /// Real and imaginary parts interleaved: `re₁ im₁ … re₄ im₄`.
    pub fn from_pairs(x: &[f64]) -> Result<Self> {
        if x.len() != 8 {
            return Err(domain(format!("a ball point needs 8 reals, got {}", x.len())));
        }
        Self::new(std::array::from_fn(|i| C64::new(x[2 * i], x[2 * i + 1])))
    }

    pub fn coords(&self) -> &[C64; 4] {
        &self.0
    }

    pub fn quadratic(&self) -> C64 {
        quadratic(&self.0)
    }

    pub fn hermitian(&self) -> f64 {
        hermitian(&self.0)
    }

    /// `g·v`; stays in the ball for unitary `g`.
    pub fn apply(&self, g: &UnitaryElem) -> BallPoint {
        let m = g.as_dmat().to_c64();
        BallPoint(std::array::from_fn(|i| (0..4).map(|j| m[(i, j)] * self.0[j]).sum()))
    }

    /// Same projective point scaled so the largest entry has modulus one.
    pub fn normalized(&self) -> BallPoint {
        let s = self.0.iter().map(|z| z.norm()).fold(0.0, f64::max);
        BallPoint(self.0.map(|z| z / s))
    }

    pub fn scaled(&self, lambda: C64) -> BallPoint {
        BallPoint(self.0.map(|z| z * lambda))
    }
}

impl fmt::Display for BallPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|z| format!("{:.15e}{:+.15e}i", z.re, z.im)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Smallest accepted `−v*Uv / |v|²` for random points; keeps `Im τ(v)`
/// away from singular so theta sums stay short.
pub const RANDOM_DEPTH: f64 = 0.1;

/// A random ball point with entries uniform in the unit square, rejecting
/// draws with `−v*Uv/|v|² < RANDOM_DEPTH`.
pub fn random_ball_point<R: Rng + ?Sized>(rng: &mut R) -> BallPoint {
    loop {
        let v: [C64; 4] =
            std::array::from_fn(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if -hermitian(&v) >= RANDOM_DEPTH * norm {
            return BallPoint(v);
        }
    }
}

/// The anchor `(1, -1, 0, 0)` with `τ = i·I₄`.
pub fn anchor_point() -> BallPoint {
    BallPoint([C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)])
}

const EMBED_TOL: f64 = 1e-10;

/// `τ(v) = iU(I₄ − 2/(vᵀUv)·v vᵀ U)` for any vector with `vᵀUv ≠ 0`;
/// fails when `Im τ` is not positive definite, i.e. `v` is off the ball.
pub fn tau_of_vector(v: &[C64; 4]) -> Result<SiegelPoint> {
    let q = quadratic(v);
    let scale = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if q.norm() <= 1e-300 || q.norm() < 1e-15 * scale {
        return Err(Error::Degenerate(format!("vᵀUv = {q} vanishes")));
    }
    let u = u_matrix().to_c64();
    let vv = DMatrix::from_fn(4, 4, |i, j| v[i] * v[j]);
    let inner = DMatrix::<C64>::identity(4, 4) - vv * &u * (2.0 / q);
    let tau = &u * inner * C64::new(0.0, 1.0);
    let tp = SiegelPoint::new(tau)?;
    let t = tp.tau();
    let size = t.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let ut = &u * t;
    let sq = &ut * &ut + DMatrix::<C64>::identity(4, 4);
    let res = sq.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if res > EMBED_TOL * size * size {
        return Err(Error::Consistency(format!("(Uτ)² + I has residual {res:e}")));
    }
    let det = t.determinant();
    if (det - 1.0).norm() > EMBED_TOL * size.powi(4) {
        return Err(Error::Consistency(format!("det τ = {det} is not 1")));
    }
    Ok(tp)
}

pub fn tau_of_v(v: &BallPoint) -> Result<SiegelPoint> {
    tau_of_vector(v.coords())
}

/// Exact unitary for `U`: `g*Ug = U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryElem(DMat);

impl UnitaryElem {
    pub fn new(g: DMat) -> Result<Self> {
        if g.shape() != (4, 4) {
            return Err(domain("unitary elements are 4×4"));
        }
        let u = u_matrix();
        if &(&g.adjoint() * &u) * &g != u {
            return Err(domain("g*Ug ≠ U"));
        }
        Ok(UnitaryElem(g))
    }

    pub fn identity() -> Self {
        UnitaryElem(DMat::identity(4))
    }

    pub fn as_dmat(&self) -> &DMat {
        &self.0
    }

    /// `g⁻¹ = U g* U`.
    pub fn inverse(&self) -> Self {
        let u = u_matrix();
        UnitaryElem(&(&u * &self.0.adjoint()) * &u)
    }

    pub fn compose(&self, other: &Self) -> Self {
        UnitaryElem(&self.0 * &other.0)
    }

    pub fn pow(&self, n: u32) -> Self {
        UnitaryElem(self.0.pow(n))
    }
}

/// Exact real symplectic `2n×2n` matrix, `MJMᵀ = J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticElem(DMat);

impl SymplecticElem {
    pub fn new(m: DMat) -> Result<Self> {
        let (r, c) = m.shape();
        if r != c || r % 2 != 0 || r == 0 {
            return Err(domain("symplectic elements are square of even size"));
        }
        if !m.is_real() {
            return Err(domain("symplectic elements are real"));
        }
        let j = j_matrix(r / 2);
        if &(&m * &j) * &m.transpose() != j {
            return Err(domain("MJMᵀ ≠ J"));
        }
        Ok(SymplecticElem(m))
    }

    pub fn identity(n: usize) -> Self {
        SymplecticElem(DMat::identity(2 * n))
    }

    pub fn as_dmat(&self) -> &DMat {
        &self.0
    }

    pub fn genus(&self) -> usize {
        self.0.rows() / 2
    }

    /// `M⁻¹ = −J Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = j_matrix(self.genus());
        SymplecticElem(-&(&(&j * &self.0.transpose()) * &j))
    }

    pub fn compose(&self, other: &Self) -> Self {
        SymplecticElem(&self.0 * &other.0)
    }

    pub fn is_integral(&self) -> bool {
        self.0.is_integral()
    }

    pub fn blocks(&self) -> (DMat, DMat, DMat, DMat) {
        self.0.quarters()
    }

    pub fn blocks_c64(&self) -> (DMatrix<C64>, DMatrix<C64>, DMatrix<C64>, DMatrix<C64>) {
        let (a, b, c, d) = self.0.quarters();
        (a.to_c64(), b.to_c64(), c.to_c64(), d.to_c64())
    }
}

/// `ȷ(g) = [[U Re g U, U Im g], [−Im g U, Re g]]`.
pub fn jmath(g: &UnitaryElem) -> SymplecticElem {
    let u = u_matrix();
    let re = g.0.re_part();
    let im = g.0.im_part();
    SymplecticElem(DMat::from_blocks(&(&(&u * &re) * &u), &(&u * &im), &(-&(&im * &u)), &re))
}

fn act_raw(m: &SymplecticElem, tau: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let (a, b, c, d) = m.blocks_c64();
    let num = &a * tau + b;
    let den = &c * tau + d;
    let inv = den.try_inverse().ok_or_else(|| Error::Boundary("Cτ + D is singular".into()))?;
    Ok(num * inv)
}

/// `(Aτ + B)(Cτ + D)⁻¹`.
pub fn sp_act(m: &SymplecticElem, tp: &SiegelPoint) -> Result<SiegelPoint> {
    if m.genus() != tp.dim() {
        return Err(domain("genus of M and τ differ"));
    }
    SiegelPoint::new(act_raw(m, tp.tau())?)
}

/// `χ(M, τ) = det(Cτ + D)` on an arbitrary square matrix.
pub fn chi_matrix(m: &SymplecticElem, tau: &DMatrix<C64>) -> C64 {
    let (_, _, c, d) = m.blocks_c64();
    (c * tau + d).determinant()
}

pub fn chi(m: &SymplecticElem, tp: &SiegelPoint) -> C64 {
    chi_matrix(m, tp.tau())
}

fn diag0(m: &DMat) -> Vec<DyadicGaussian> {
    (0..m.rows()).map(|i| m[(i, i)].clone()).collect()
}

fn row_times(v: &[DyadicGaussian], m: &DMat) -> Vec<DyadicGaussian> {
    (0..m.cols())
        .map(|j| v.iter().enumerate().fold(DyadicGaussian::zero(), |acc, (i, x)| &acc + &(x * &m[(i, j)])))
        .collect()
}

fn char_act_exact(m: &SymplecticElem, ab: Vec<DyadicGaussian>) -> Vec<DyadicGaussian> {
    let n = m.genus();
    let (a, b, c, d) = m.blocks();
    let shift: Vec<DyadicGaussian> =
        diag0(&(&c * &d.transpose())).into_iter().chain(diag0(&(&a * &b.transpose()))).collect();
    let moved = row_times(&ab, m.inverse().as_dmat());
    debug_assert_eq!(moved.len(), 2 * n);
    moved.iter().zip(&shift).map(|(x, s)| x + s).collect()
}

/// `M·(a, b) = (a, b)M⁻¹ + ((CDᵀ)₀, (ABᵀ)₀)` for integral `M`.
pub fn char_act(m: &SymplecticElem, ch: &Characteristic) -> Result<Characteristic> {
    if !m.is_integral() {
        return Err(domain("characteristic action needs an integral symplectic matrix"));
    }
    let n = m.genus();
    if ch.dim() != n {
        return Err(domain("characteristic and matrix sizes differ"));
    }
    let ab: Vec<DyadicGaussian> = ch.a.iter().chain(&ch.b).map(|&x| DyadicGaussian::int(x)).collect();
    let out: Vec<i64> = char_act_exact(m, ab)
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Consistency("non-integral image characteristic".into())))
        .collect::<Result<_>>()?;
    Characteristic::new(out[..n].to_vec(), out[n..].to_vec())
}

/// Same affine action for dyadic `M`, on rational characteristics.
pub fn char_act_rational(m: &SymplecticElem, ch: &RealCharacteristic) -> Result<RealCharacteristic> {
    let n = m.genus();
    if ch.dim() != n {
        return Err(domain("characteristic and matrix sizes differ"));
    }
    let (a, b, c, d) = m.blocks_c64();
    let minv = m.inverse().as_dmat().to_c64();
    let ab: Vec<f64> = ch.a.iter().chain(&ch.b).copied().collect();
    let moved: Vec<f64> = (0..2 * n).map(|j| (0..2 * n).map(|i| ab[i] * minv[(i, j)].re).sum()).collect();
    let cd = c * d.transpose();
    let abt = a * b.transpose();
    RealCharacteristic::new(
        (0..n).map(|i| moved[i] + cd[(i, i)].re).collect(),
        (0..n).map(|i| moved[n + i] + abt[(i, i)].re).collect(),
    )
}

fn quad_form(x: &[DyadicGaussian], m: &DMat, y: &[DyadicGaussian]) -> DyadicGaussian {
    let mx = row_times(x, m);
    mx.iter().zip(y).fold(DyadicGaussian::zero(), |acc, (p, q)| &acc + &(p * q))
}

/// `φ_{a,b}(M) = −⅛(aDᵀBaᵀ − 2aBᵀCbᵀ + bCᵀAbᵀ) + ¼(aDᵀ − bCᵀ)·(ABᵀ)₀ᵀ`.
pub fn phi_ab(m: &SymplecticElem, ch: &Characteristic) -> Result<DyadicGaussian> {
    if ch.dim() != m.genus() {
        return Err(domain("characteristic and matrix sizes differ"));
    }
    let (a, b, c, d) = m.blocks();
    let av: Vec<DyadicGaussian> = ch.a.iter().map(|&x| DyadicGaussian::int(x)).collect();
    let bv: Vec<DyadicGaussian> = ch.b.iter().map(|&x| DyadicGaussian::int(x)).collect();
    let t1 = quad_form(&av, &(&d.transpose() * &b), &av);
    let t2 = quad_form(&av, &(&b.transpose() * &c), &bv);
    let t3 = quad_form(&bv, &(&c.transpose() * &a), &bv);
    let two = DyadicGaussian::int(2);
    let first = &(&(&t1 - &(&two * &t2)) + &t3) * &DyadicGaussian::frac(-1, 0, 3);
    let lin: Vec<DyadicGaussian> =
        row_times(&av, &d.transpose()).iter().zip(row_times(&bv, &c.transpose())).map(|(x, y)| x - &y).collect();
    let second = lin.iter().zip(diag0(&(&a * &b.transpose()))).fold(DyadicGaussian::zero(), |acc, (x, y)| &acc + &(x * &y));
    Ok(&first + &(&second * &DyadicGaussian::frac(1, 0, 2)))
}

const NU: [&str; 12] = [
    "0000,0000",
    "1000,0100",
    "0100,1000",
    "1111,1111",
    "0010,0001",
    "1010,0101",
    "0110,1001",
    "1101,1110",
    "0011,0000",
    "1011,0100",
    "0111,1000",
    "1100,1111",
];

/// The characteristics `ν₀ … ν₁₁`.
pub fn nu_char(j: usize) -> Result<Characteristic> {
    NU.get(j)
        .ok_or_else(|| domain(format!("ν index {j} outside 0..=11")))?
        .parse()
}

/// `ϑ_{a,b}(τ(v))`.
pub fn theta_ball(ch: &Characteristic, v: &BallPoint, acc: &ThetaAccuracy) -> Result<C64> {
    theta_constant(ch, &tau_of_v(v)?, acc)
}

/// All twelve `ϑ_j(v) = ϑ_{ν_j}(τ(v))`.
pub fn theta_nu(tp: &SiegelPoint, acc: &ThetaAccuracy) -> Result<[C64; 12]> {
    let mut out = [C64::new(0.0, 0.0); 12];
    for (j, o) in out.iter_mut().enumerate() {
        *o = theta_constant(&nu_char(j)?, tp, acc)?;
    }
    Ok(out)
}

/// Continues `√f` along the segment `i·I → τ` starting from `anchor`
/// (a square root of `f(i·I)`), choosing at each step the root nearest the
/// previous value. Steps are halved when consecutive values differ by more
/// than a quarter of their size.
pub fn sqrt_along_path<F: Fn(&DMatrix<C64>) -> C64>(f: F, tau: &DMatrix<C64>, anchor: C64) -> Result<C64> {
    let n = tau.nrows();
    let start = DMatrix::<C64>::identity(n, n) * C64::new(0.0, 1.0);
    let f0 = f(&start);
    if (anchor * anchor - f0).norm() > 1e-12 * f0.norm().max(1.0) {
        return Err(Error::Consistency(format!("anchor {anchor} is not a root of {f0}")));
    }
    let point = |t: f64| &start * C64::new(1.0 - t, 0.0) + tau * C64::new(t, 0.0);
    let mut root = anchor;
    let mut t: f64 = 0.0;
    let mut h: f64 = 1.0 / 64.0;
    while t < 1.0 {
        let step = h.min(1.0 - t);
        let r = f(&point(t + step)).sqrt();
        let cand = if (r - root).norm() <= (r + root).norm() { r } else { -r };
        if (cand - root).norm() > 0.25 * cand.norm().max(root.norm()) && step > 1e-9 {
            h = step / 2.0;
            continue;
        }
        if cand.norm() == 0.0 {
            return Err(Error::Boundary("square-root path passes through a zero".into()));
        }
        root = cand;
        t += step;
        h = (2.0 * step).min(1.0 / 64.0);
    }
    Ok(root)
}

/// Continued `χ(M, τ)^{1/2}` with value `anchor` at `i·I`.
pub fn chi_sqrt(m: &SymplecticElem, tp: &SiegelPoint, anchor: C64) -> Result<C64> {
    sqrt_along_path(|t| chi_matrix(m, t), tp.tau(), anchor)
}
