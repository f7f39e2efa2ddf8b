//! Theta-constant identities on the ball: the inverse period map, the
//! Thomae-type formulas, the Jacobi-type formula, the mean-generating
//! transformation and the identity `a₀/M = F_D²`, each as a residual report.

mod kernel;
mod report;
mod transform;

pub use kernel::{kernel_suite, quasi_periodicity, two_tau, vanishing_characteristics, vanishing_criterion, TOL_2TAU, TOL_QUASI};

pub use report::{ResidualCheck, ResidualReport};
pub use transform::{
    g12_suite, g13_suite, g_actions_suite, monodromy_suite, r1_suite, random_characteristics, random_siegel2,
    s1_suite, transformation_suite,
};

use crate::agm::{mean_limit, AgmState, MeanKind, DEFAULT_TOL};
use crate::ball::{
    chi, chi_sqrt, hermitian, jmath, natural_lift, nu_char, sp_act, tau_of_v, BallPoint, NamedElem, UnitaryElem,
};
use crate::error::{domain, Error, Result};
use crate::hypergeom::{fd_quarter, gauss_2f1};
use crate::periods::{period_vector, tau_sharp, BranchPoints};
use crate::scalarcore::{agm_limit_constant, gamma34, DyadicGaussian, QuadratureSpec, C64};
use crate::theta::{jacobi_theta, theta_constant, Characteristic, SiegelPoint, ThetaAccuracy};
use rand::Rng;
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

pub const TOL_SERIES: f64 = 1e-10;
pub const TOL_PERIOD: f64 = 1e-8;
pub const TOL_TABLE2: f64 = 1e-7;
pub const TOL_TRANSFORM: f64 = 1e-9;

/// `κ = 1/((4π)² Γ(3/4)⁸)`.
pub fn kappa() -> f64 {
    1.0 / ((4.0 * PI).powi(2) * gamma34().powi(8))
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn theta_str(s: &str, tp: &SiegelPoint, acc: &ThetaAccuracy) -> Result<C64> {
    theta_constant(&s.parse::<Characteristic>()?, tp, acc)
}

/// `ϑ_j(v)²` for the twelve characteristics `ν₀ … ν₁₁`.
pub fn theta_squares(v: &BallPoint, acc: &ThetaAccuracy) -> Result<[C64; 12]> {
    let tp = tau_of_v(v)?;
    let mut out = [C64::new(0.0, 0.0); 12];
    for (j, o) in out.iter_mut().enumerate() {
        let t = theta_constant(&nu_char(j)?, &tp, acc)?;
        *o = t * t;
    }
    Ok(out)
}

fn pair_ratio(s: &[C64; 12], i: usize, j: usize) -> Result<C64> {
    let den = s[i] + s[j];
    if den.norm() <= 1e-10 * (s[i].norm() + s[j].norm()) || den.norm() < 1e-250 {
        return Err(Error::CuspProximity(format!("ϑ_{i}² + ϑ_{j}² vanishes")));
    }
    Ok(4.0 * s[i] * s[j] / (den * den))
}

fn x_from_squares(s: &[C64; 12]) -> Result<[C64; 3]> {
    Ok([pair_ratio(s, 0, 1)?, pair_ratio(s, 4, 5)?, pair_ratio(s, 8, 9)?])
}

/// `x_j(v) = 4ϑ²ϑ²/(ϑ²+ϑ²)²` over the pairs `(0,1)`, `(4,5)`, `(8,9)`.
/// Complex in general; real on the image of the chamber.
pub fn x_of_v(v: &BallPoint, acc: &ThetaAccuracy) -> Result<[C64; 3]> {
    let tp = tau_of_v(v)?;
    let mut s = [C64::new(0.0, 0.0); 12];
    for j in [0, 1, 4, 5, 8, 9] {
        let t = theta_constant(&nu_char(j)?, &tp, acc)?;
        s[j] = t * t;
    }
    x_from_squares(&s)
}

/// Round trip `x → v → x` together with the three secondary relations.
pub fn verify_inverse(x: &BranchPoints, v: &BallPoint, acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let s = theta_squares(v, acc)?;
    let got = x_from_squares(&s)?;
    let [x1, x2, x3] = x.x();
    let mut r = ResidualReport::new("inverse");
    for (j, (g, want)) in got.iter().zip(x.x()).enumerate() {
        r.push(format!("x{}", j + 1), *g, c(want), TOL_PERIOD);
    }
    r.push("pair23", pair_ratio(&s, 2, 3)?, c((x2 - x3) / (1.0 - x3)), TOL_PERIOD);
    r.push("pair67", pair_ratio(&s, 6, 7)?, c((x3 - x1) / (1.0 - x1)), TOL_PERIOD);
    r.push("pair1011", pair_ratio(&s, 10, 11)?, c((x2 - x1) / (1.0 - x1)), TOL_PERIOD);
    Ok(r)
}

/// The six displayed Thomae equalities, each relative.
pub fn verify_thomae(x: &BranchPoints, v: &BallPoint, acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let s = theta_squares(v, acc)?;
    let q = v.quadratic();
    let k = kappa();
    let [x1, _, x3] = x.x();
    let kq = k * q * q;
    let sq = |i: usize, j: usize| (s[i] + s[j]) * (s[i] + s[j]);
    let mut r = ResidualReport::new("thomae");
    r.push_relative("pair01", sq(0, 1), kq, TOL_PERIOD);
    r.push_relative("pair23", sq(2, 3), kq * (1.0 - x3), TOL_PERIOD);
    r.push_relative("pair45", sq(4, 5), kq / 4.0, TOL_PERIOD);
    r.push_relative("pair67", sq(6, 7), kq * (1.0 - x1) / 4.0, TOL_PERIOD);
    r.push_relative("pair89", sq(8, 9), kq / 4.0, TOL_PERIOD);
    r.push_relative("pair1011", sq(10, 11), kq * (1.0 - x1) / 4.0, TOL_PERIOD);
    Ok(r)
}

#[derive(Clone, Copy)]
enum Shape {
    Product,
    SumFirst,
    SumSecond,
    DiffFirst,
    DiffSecond,
}

// (coefficient, shape, first index of the quadruple, sign of P, P indices)
const TABLE2: [(f64, Shape, usize, f64, [usize; 4]); 15] = [
    (-16.0, Shape::Product, 0, 1.0, [0, 1, 2, 3]),
    (-4.0, Shape::SumFirst, 0, 1.0, [0, 4, 2, 3]),
    (-4.0, Shape::SumSecond, 0, -1.0, [0, 1, 3, 4]),
    (4.0, Shape::DiffFirst, 0, -1.0, [1, 4, 2, 3]),
    (4.0, Shape::DiffSecond, 0, 1.0, [0, 1, 2, 4]),
    (256.0, Shape::Product, 4, 1.0, [0, 2, 1, 3]),
    (64.0, Shape::SumFirst, 4, 1.0, [0, 4, 1, 3]),
    (64.0, Shape::SumSecond, 4, 1.0, [0, 2, 1, 4]),
    (64.0, Shape::DiffFirst, 4, 1.0, [2, 4, 1, 3]),
    (64.0, Shape::DiffSecond, 4, 1.0, [0, 2, 3, 4]),
    (256.0, Shape::Product, 8, 1.0, [0, 3, 1, 2]),
    (64.0, Shape::SumFirst, 8, 1.0, [0, 4, 1, 2]),
    (64.0, Shape::SumSecond, 8, 1.0, [0, 3, 1, 4]),
    (64.0, Shape::DiffFirst, 8, 1.0, [3, 4, 1, 2]),
    (64.0, Shape::DiffSecond, 8, 1.0, [0, 3, 2, 4]),
];

/// `P_{n₁,n₂;n₃,n₄}(x̃) = (x̃_{n₂} − x̃_{n₁})(x̃_{n₄} − x̃_{n₃})`.
pub fn p_poly(x: &BranchPoints, n: [usize; 4]) -> f64 {
    let e = x.extended();
    (e[n[1]] - e[n[0]]) * (e[n[3]] - e[n[2]])
}

/// The fifteen theta products against `P(x̃)·Ξ`, compared after dividing
/// by `Ξ = κ²(vᵀUv)⁴`.
pub fn verify_table2(x: &BranchPoints, v: &BallPoint, acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let s = theta_squares(v, acc)?;
    let q = v.quadratic();
    let xi = kappa().powi(2) * q.powi(4);
    let mut r = ResidualReport::new("table2");
    for (row, (coef, shape, k, sign, n)) in TABLE2.iter().enumerate() {
        let (a, b, cc, d) = (s[*k], s[k + 1], s[k + 2], s[k + 3]);
        let lhs = *coef
            * match shape {
                Shape::Product => a * b * cc * d,
                Shape::SumFirst => (a + b) * (a + b) * cc * d,
                Shape::SumSecond => a * b * (cc + d) * (cc + d),
                Shape::DiffFirst => (a - b) * (a - b) * cc * d,
                Shape::DiffSecond => a * b * (cc - d) * (cc - d),
            };
        let id = format!("row{:02}_P{}{};{}{}", row + 1, n[0], n[1], n[2], n[3]);
        r.push(id, lhs / xi, c(sign * p_poly(x, *n)), TOL_TABLE2);
    }
    Ok(r)
}

/// The four chains of equal theta-square sums and the squared form of the
/// first chain against `κ(vᵀUv)²/4`.
pub fn verify_thomae3(v: &BallPoint, acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let s = theta_squares(v, acc)?;
    let q = v.quadratic();
    let chains: [(&str, C64, C64, C64); 4] = [
        ("chain01", (s[0] + s[1]) / 2.0, s[4] + s[5], s[8] + s[9]),
        ("chain02", (s[0] + s[2]) / 2.0, s[4] + s[6], s[8] + s[10]),
        ("chain03", (s[0] + s[3]) / 2.0, s[5] + s[6], s[8] + s[11]),
        ("chain12", (s[1] + s[2]) / 2.0, s[4] - s[7], s[8] - s[11]),
    ];
    let mut r = ResidualReport::new("thomae3");
    for (id, a, b, d) in chains {
        r.push(format!("{id}_mid"), b, a, TOL_PERIOD);
        r.push(format!("{id}_last"), d, a, TOL_PERIOD);
    }
    let first = (s[0] + s[1]) / 2.0;
    r.push_relative("squared", first * first, kappa() * q * q / 4.0, TOL_PERIOD);
    Ok(r)
}

/// `a, b₁, b₂, b₃` at `τ(v)^♯`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AbcdValues {
    pub a: C64,
    pub b1: C64,
    pub b2: C64,
    pub b3: C64,
}

impl AbcdValues {
    pub fn as_array(&self) -> [C64; 4] {
        [self.a, self.b1, self.b2, self.b3]
    }

    pub fn is_real_positive(&self, tol: f64) -> bool {
        self.as_array().iter().all(|z| z.re > 0.0 && z.im.abs() <= tol * z.re)
    }
}

pub fn abcd(v: &BallPoint, acc: &ThetaAccuracy) -> Result<AbcdValues> {
    let ts = tau_sharp(v)?;
    let sq = |s: &str| theta_str(s, &ts, acc).map(|t| t * t);
    let (a2, b2, c2, d2) = (sq("0000,0000")?, sq("1100,0000")?, sq("0000,1100")?, sq("1111,1111")?);
    Ok(AbcdValues { a: a2 + b2, b1: a2 - b2, b2: c2 + d2, b3: c2 - d2 })
}

/// `(b_j/a)² = 1 − x_j` and, on the chamber, `b_j/a = +√(1 − x_j)`.
pub fn verify_abcd(x: &BranchPoints, v: &BallPoint, acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let q = abcd(v, acc)?;
    let mut r = ResidualReport::new("abcd");
    for (j, (b, xj)) in [q.b1, q.b2, q.b3].iter().zip(x.x()).enumerate() {
        let y = b / q.a;
        r.push(format!("square{}", j + 1), y * y, c(1.0 - xj), TOL_PERIOD);
        r.push(format!("root{}", j + 1), y, c((1.0 - xj).sqrt()), TOL_PERIOD);
    }
    Ok(r)
}

/// `ϑ₀² + ϑ₁² = −κ^{1/2}vᵀUv` and `a(v) = (π/Γ(3/4)⁴) F_D(x)²`; on the
/// diagonal also the genus-one reduction to Borwein's theta formula.
pub fn verify_jacobi(x: &BranchPoints, v: &BallPoint, acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let tp = tau_of_v(v)?;
    let t0 = theta_constant(&nu_char(0)?, &tp, acc)?;
    let t1 = theta_constant(&nu_char(1)?, &tp, acc)?;
    let q = v.quadratic();
    let mut r = ResidualReport::new("jacobi");
    r.push_relative("jacobi1", t0 * t0 + t1 * t1, -kappa().sqrt() * q, TOL_PERIOD);
    let vals = abcd(v, acc)?;
    let fd = fd_quarter(x.x())?;
    r.push("jacobi3", vals.a, c(agm_limit_constant() * fd * fd), TOL_PERIOD);
    if !x.is_strict() && x.x()[0] == x.x()[2] {
        let [v1, v2, _, _] = *v.coords();
        let tau1 = -C64::new(0.0, 1.0) * v2 / v1;
        let th00 = jacobi_theta(0, 0, tau1)?.powi(4);
        let th10 = jacobi_theta(1, 0, tau1)?.powi(4);
        let (alpha, beta) = (th00 + th10, th00 - th10);
        let z = 1.0 - beta * beta / (alpha * alpha);
        let f = gauss_2f1(c(0.25), c(0.75), c(1.0), z)?;
        r.push("borwein_theta", f * f, alpha, TOL_SERIES);
        let th4 = agm_limit_constant();
        r.push("diagonal_a", vals.a, th4 * alpha, TOL_SERIES);
        for (j, b) in [vals.b1, vals.b2, vals.b3].iter().enumerate() {
            r.push(format!("diagonal_b{}", j + 1), *b, th4 * beta, TOL_SERIES);
        }
    }
    Ok(r)
}

/// `E_R(v) = (1−i)/2 · √τ(v)₁₁ · √τ⁽¹⁾₁₁ · χ(ȷ(g₁₃), τ(R₁v))^{1/2}`
/// with `τ⁽¹⁾ = (B₂M₁B₁)^♮·τ(v)`.
pub fn e_r(v: &BallPoint) -> Result<C64> {
    let tau = tau_of_v(v)?;
    let l = NamedElem::B2
        .symplectic()?
        .compose(&NamedElem::M1.symplectic()?)
        .compose(&NamedElem::B1.symplectic()?);
    let t1 = sp_act(&natural_lift(&l)?, &tau)?;
    let r1v = v.apply(&NamedElem::R1.unitary()?);
    let s13 = chi_sqrt(&jmath(&NamedElem::G13.unitary()?), &tau_of_v(&r1v)?, C64::new(1.0, -1.0) / SQRT_2)?;
    Ok(C64::new(0.5, -0.5) * tau.entry(0, 0).sqrt() * t1.entry(0, 0).sqrt() * s13)
}

/// Squared mean-transformation identities, root forms on the chamber, the
/// automorphy-factor relation for `E_R` and the six `ϑ_j(Rv)` relations.
pub fn mean_transform_check(v: &BallPoint, chamber: bool, acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let rmat = NamedElem::R.unitary()?;
    let rv = v.apply(&rmat).normalized();
    let now = abcd(v, acc)?;
    let next = abcd(&rv, acc)?;
    let AbcdValues { a, b1, b2, b3 } = now;
    let m = (a + b1 + b2 + b3) / 4.0;
    let p1 = (a + b3) * (b1 + b2) / 4.0;
    let p2 = (a + b2) * (b1 + b3) / 4.0;
    let p3 = (a + b1) * (b2 + b3) / 4.0;
    let mut r = ResidualReport::new("mean");
    r.push("square_a", next.a * next.a, m * m, TOL_PERIOD);
    r.push("square_b1", next.b1 * next.b1, p1, TOL_PERIOD);
    r.push("square_b2", next.b2 * next.b2, p2, TOL_PERIOD);
    r.push("square_b3", next.b3 * next.b3, p3, TOL_PERIOD);
    if chamber {
        r.push("root_a", next.a, m, TOL_PERIOD);
        r.push("root_b1", next.b1, p1.sqrt(), TOL_PERIOD);
        r.push("root_b2", next.b2, p2.sqrt(), TOL_PERIOD);
        r.push("root_b3", next.b3, p3.sqrt(), TOL_PERIOD);
    }
    let er = e_r(v)?;
    let n = NamedElem::N.symplectic()?;
    r.push("er_factor", 8.0 * er * er * chi(&n, &tau_of_v(&rv)?), chi(&n, &tau_of_v(v)?), TOL_PERIOD);
    let th = theta_values(v, acc)?;
    let tr = theta_values(&rv, acc)?;
    let s2 = C64::new(SQRT_2, 0.0);
    let rel: [(&str, C64, C64); 6] = [
        ("c_action0", tr[0], 2.0 * er * (th[8] + th[10])),
        ("c_action1", tr[1], 2.0 * er * (th[8] - th[10])),
        ("c_action4", tr[4], s2 * er * (th[4] + th[6])),
        ("c_action5", tr[5], s2 * er * (th[4] - th[6])),
        ("c_action8", tr[8], er * (th[0] + th[2])),
        ("c_action9", tr[9], er * (th[0] - th[2])),
    ];
    for (id, l, rr) in rel {
        r.push(id, l, rr, TOL_PERIOD);
    }
    Ok(r)
}

fn theta_values(v: &BallPoint, acc: &ThetaAccuracy) -> Result<[C64; 12]> {
    let tp = tau_of_v(v)?;
    let mut out = [C64::new(0.0, 0.0); 12];
    for (j, o) in out.iter_mut().enumerate() {
        *o = theta_constant(&nu_char(j)?, &tp, acc)?;
    }
    Ok(out)
}

fn check_ordered(t: &[f64]) -> Result<()> {
    if t.iter().any(|x| !(x.is_finite() && *x > 0.0)) || t.windows(2).any(|w| w[0] < w[1]) {
        return Err(domain(format!("inputs {t:?} must satisfy a ≥ b ≥ … > 0")));
    }
    Ok(())
}

/// `a₀/M(a₀,b₀,c₀,d₀) = F_D(x)²` and `= (Γ(3/4)⁴/π)·a(v)` with
/// `x = (1 − b₀²/a₀², 1 − c₀²/a₀², 1 − d₀²/a₀²)` and `v` its period vector.
/// The theta side needs `b₀ < a₀` (otherwise `x₁ = 0` is a cusp).
pub fn km_main(
    a0: f64,
    b0: f64,
    c0: f64,
    d0: f64,
    acc: &ThetaAccuracy,
    spec: &QuadratureSpec,
) -> Result<ResidualReport> {
    check_ordered(&[a0, b0, c0, d0])?;
    let m = mean_limit(MeanKind::KatoMatsumoto4, &AgmState::new(MeanKind::KatoMatsumoto4, &[a0, b0, c0, d0])?, DEFAULT_TOL)?
        .limit;
    let x = [b0, c0, d0].map(|t| 1.0 - (t / a0) * (t / a0));
    let fd = fd_quarter(x)?;
    let mut r = ResidualReport::new("km");
    r.push("fd", c(a0 / m), c(fd * fd), TOL_SERIES);
    if x[0] > 0.0 {
        let bp = BranchPoints::new(x[0], x[1], x[2])?;
        let v = period_vector(&bp, spec)?.ball_point()?;
        let vals = abcd(&v, acc)?;
        r.push("theta", c(a0 / m), vals.a / agm_limit_constant(), TOL_PERIOD);
    }
    Ok(r)
}

fn f2(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    Ok(gauss_2f1(c(alpha), c(beta), c(1.0), c(z))?.re)
}

/// `a₀/M_Bor = ϑ₀₀(τ₁)⁴ + ϑ₁₀(τ₁)⁴ = F(1/4,3/4,1;1−b₀²/a₀²)²` with
/// `τ₁ = √2 i F(1/4,3/4,1;b₀²/a₀²)/F(1/4,3/4,1;1−b₀²/a₀²)`.
pub fn borwein_main(a0: f64, b0: f64) -> Result<ResidualReport> {
    if !(b0 > 0.0 && b0 < a0 && a0.is_finite()) {
        return Err(domain(format!("Borwein mean needs 0 < b₀ < a₀, got ({a0}, {b0})")));
    }
    let m = mean_limit(MeanKind::BorweinQuartic2, &AgmState::new(MeanKind::BorweinQuartic2, &[a0, b0])?, DEFAULT_TOL)?
        .limit;
    let y = (b0 / a0).powi(2);
    let fy = f2(0.25, 0.75, y)?;
    let f1y = f2(0.25, 0.75, 1.0 - y)?;
    let tau1 = C64::new(0.0, SQRT_2 * fy / f1y);
    let th = jacobi_theta(0, 0, tau1)?.powi(4) + jacobi_theta(1, 0, tau1)?.powi(4);
    let mut r = ResidualReport::new("borwein");
    r.push("theta", c(a0 / m), th, TOL_SERIES);
    r.push("hypergeometric", c(a0 / m), c(f1y * f1y), TOL_SERIES);
    Ok(r)
}

/// `a₀/M_G(a₀,b₀) = F(1/2,1/2,1;1−b₀²/a₀²)`.
pub fn gauss_main(a0: f64, b0: f64) -> Result<ResidualReport> {
    if !(b0 > 0.0 && b0 <= a0 && a0.is_finite()) {
        return Err(domain(format!("Gauss mean needs 0 < b₀ ≤ a₀, got ({a0}, {b0})")));
    }
    let m = mean_limit(MeanKind::Gauss2, &AgmState::new(MeanKind::Gauss2, &[a0, b0])?, DEFAULT_TOL)?.limit;
    let mut r = ResidualReport::new("gauss");
    r.push("hypergeometric", c(a0 / m), c(f2(0.5, 0.5, 1.0 - (b0 / a0).powi(2))?), TOL_SERIES);
    Ok(r)
}

/// `(0.2, 0.5, 0.8)` followed by `count − 1` random chamber points with
/// gaps of at least `0.03` between consecutive branch points.
pub fn chamber_corpus<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<BranchPoints> {
    let mut out = vec![BranchPoints::new(0.2, 0.5, 0.8).expect("reference point")];
    while out.len() < count {
        let mut x = [0.0; 3].map(|_| rng.random_range(0.03..0.97));
        x.sort_by(f64::total_cmp);
        if x[1] - x[0] >= 0.03 && x[2] - x[1] >= 0.03 {
            out.push(BranchPoints::new(x[0], x[1], x[2]).expect("sorted chamber point"));
        }
    }
    out
}

/// Strictly decreasing quadruples in `[lo, 1]`.
pub fn ordered_quadruples<R: Rng + ?Sized>(rng: &mut R, count: usize, lo: f64) -> Vec<[f64; 4]> {
    (0..count)
        .map(|_| {
            let mut q = [0.0; 4].map(|_| rng.random_range(lo..=1.0));
            q.sort_by(|a, b| b.total_cmp(a));
            q
        })
        .filter(|q| q.windows(2).all(|w| w[0] > w[1]))
        .collect()
}

/// Exact boundary point of the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspPoint(pub [DyadicGaussian; 4]);

impl CuspPoint {
    fn from_ints(v: [(i64, i64); 4]) -> Self {
        CuspPoint(v.map(|(re, im)| DyadicGaussian::frac(re, im, 0)))
    }

    /// `v*Uv`, exact.
    pub fn hermitian(&self) -> DyadicGaussian {
        let v = &self.0;
        let p = &v[0].conj() * &v[1];
        let two = DyadicGaussian::int(2);
        &(&(&two * &p.re_part()) + &(&v[2].conj() * &v[2])) + &(&v[3].conj() * &v[3])
    }

    pub fn apply(&self, g: &UnitaryElem) -> CuspPoint {
        CuspPoint(g.as_dmat().mul_vec(&self.0).try_into().expect("four entries"))
    }

    pub fn to_c64(&self) -> [C64; 4] {
        std::array::from_fn(|i| self.0[i].to_c64())
    }
}

/// `v₁₆, v₂₆, v₃₆, v₄₆, v₅₆`.
pub fn cusp_points() -> [CuspPoint; 5] {
    [
        CuspPoint::from_ints([(1, 0), (0, 0), (0, 0), (0, 0)]),
        CuspPoint::from_ints([(1, 0), (-1, -1), (-1, 1), (0, 0)]),
        CuspPoint::from_ints([(1, 0), (-1, -1), (0, 1), (0, 1)]),
        CuspPoint::from_ints([(1, 0), (-1, -1), (0, 1), (1, 0)]),
        CuspPoint::from_ints([(0, 0), (1, 0), (0, 0), (0, 0)]),
    ]
}

/// Whether `v₂₆ = g₀₁⁻¹v₁₆`, `v₃₆ = g₁₂⁻¹v₂₆`, `v₄₆ = g₂₃⁻¹v₃₆` hold exactly.
pub fn cusp_chain_holds() -> Result<bool> {
    let p = cusp_points();
    let gs = [NamedElem::G01, NamedElem::G12, NamedElem::G23];
    for (k, g) in gs.iter().enumerate() {
        if p[k].apply(&g.unitary()?.inverse()) != p[k + 1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Consistency of a period vector: `v*Uv < 0`.
pub fn in_ball(v: &[C64; 4]) -> bool {
    hermitian(v) < 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_frozen() {
        assert!((kappa() - 0.0012454030015882094565).abs() < 1e-17);
    }

    #[test]
    fn cusps_on_boundary() {
        for p in cusp_points() {
            assert!(p.hermitian().is_zero());
        }
        assert!(cusp_chain_holds().unwrap());
    }

    #[test]
    fn ordering_enforced() {
        let acc = ThetaAccuracy::default();
        let spec = QuadratureSpec::default();
        assert!(km_main(0.5, 0.8, 0.6, 0.4, &acc, &spec).is_err());
        assert!(borwein_main(1.0, 1.2).is_err());
    }

    #[test]
    fn km_trivial_quadruple() {
        let r = km_main(1.0, 1.0, 1.0, 1.0, &ThetaAccuracy::default(), &QuadratureSpec::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.checks.len(), 1);
    }
}
