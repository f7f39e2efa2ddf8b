//! Properties of the theta kernel itself: quasi-periodicity, the vanishing
//! of `ϑ_{bU,b}` on the ball, the genus-one `2τ` formulas and `ϑ₀₀(i)`.

use super::{random_characteristics, ResidualReport, TOL_SERIES};
use crate::ball::{random_ball_point, tau_of_v, u_matrix, BallPoint};
use crate::error::Result;
use crate::scalarcore::{gamma34, C64};
use crate::theta::{jacobi_theta, riemann_theta, theta_constant, Characteristic, ThetaAccuracy};
use rand::Rng;
use std::f64::consts::PI;

pub const TOL_QUASI: f64 = 1e-9;
pub const TOL_2TAU: f64 = 1e-12;

/// `ϑ_{a,b}(ζ + n₁τ + n₂, τ) = e(½an₂ᵀ − ½n₁bᵀ − ½n₁τn₁ᵀ − n₁ζᵀ)ϑ_{a,b}(ζ, τ)`
/// at `count` random data with `τ = τ(v)`.
pub fn quasi_periodicity<R: Rng + ?Sized>(rng: &mut R, count: usize, acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let mut r = ResidualReport::new("quasi_period");
    for k in 0..count {
        let tp = tau_of_v(&random_ball_point(rng))?;
        let tau = tp.tau();
        let ch = random_characteristics(rng, 4, 1, 0, 1).remove(0);
        let n1: Vec<i64> = (0..4).map(|_| rng.random_range(-1..=1)).collect();
        let n2: Vec<i64> = (0..4).map(|_| rng.random_range(-2..=2)).collect();
        let zeta: Vec<C64> = (0..4).map(|_| C64::new(rng.random_range(-0.5..0.5), rng.random_range(-0.3..0.3))).collect();
        let shifted: Vec<C64> = (0..4)
            .map(|i| zeta[i] + n2[i] as f64 + (0..4).map(|j| n1[j] as f64 * tau[(j, i)]).sum::<C64>())
            .collect();
        let ntn: C64 = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| n1[i] as f64 * tau[(i, j)] * n1[j] as f64).sum();
        let nz: C64 = (0..4).map(|i| n1[i] as f64 * zeta[i]).sum();
        let an2: i64 = ch.a.iter().zip(&n2).map(|(a, n)| a * n).sum();
        let n1b: i64 = n1.iter().zip(&ch.b).map(|(n, b)| n * b).sum();
        let arg = C64::new((an2 - n1b) as f64 / 2.0, 0.0) - ntn / 2.0 - nz;
        let factor = (C64::new(0.0, 2.0 * PI) * arg).exp();
        let lhs = riemann_theta(&ch, &shifted, &tp, acc)?;
        let rhs = factor * riemann_theta(&ch, &zeta, &tp, acc)?;
        r.push_relative(format!("q{k}"), lhs, rhs, TOL_QUASI);
    }
    Ok(r)
}

/// `b ∈ {0,1}⁴` with `bUbᵀ ≢ 0 (mod 4)`.
pub fn vanishing_characteristics() -> Vec<Characteristic> {
    let u = u_matrix();
    (0..16)
        .map(|m| (0..4).map(|i| (m >> i) & 1).collect::<Vec<i64>>())
        .filter_map(|b| {
            let a: Vec<i64> = (0..4)
                .map(|j| (0..4).map(|i| b[i] * u[(i, j)].to_i64().expect("integral U")).sum())
                .collect();
            let bub: i64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
            (bub.rem_euclid(4) != 0).then(|| Characteristic { a, b })
        })
        .collect()
}

/// `ϑ_{bU,b}(τ(v)) = 0` for every vanishing characteristic, measured
/// against `ϑ₀(τ(v))` so the check is scale free.
pub fn vanishing_criterion(points: &[BallPoint], acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let mut r = ResidualReport::new("vanishing");
    let zero = C64::new(0.0, 0.0);
    for (pi, v) in points.iter().enumerate() {
        let tp = tau_of_v(v)?;
        let scale = theta_constant(&Characteristic::zero(4), &tp, acc)?.norm().max(1.0);
        for ch in vanishing_characteristics() {
            let t = theta_constant(&ch, &tp, acc)? / scale;
            r.push(format!("p{pi}_{ch}"), t, zero, TOL_SERIES);
        }
    }
    Ok(r)
}

/// `ϑ₀₀(2τ)² = (ϑ₀₀² + ϑ₀₁²)/2` and `ϑ₀₁(2τ)² = ϑ₀₀ϑ₀₁`.
pub fn two_tau(taus: &[C64]) -> Result<ResidualReport> {
    let mut r = ResidualReport::new("two_tau");
    for (k, &t) in taus.iter().enumerate() {
        let (a, b) = (jacobi_theta(0, 0, t)?, jacobi_theta(0, 1, t)?);
        let (a2, b2) = (jacobi_theta(0, 0, 2.0 * t)?, jacobi_theta(0, 1, 2.0 * t)?);
        r.push(format!("arith{k}"), a2 * a2, (a * a + b * b) / 2.0, TOL_2TAU);
        r.push(format!("geom{k}"), b2 * b2, a * b, TOL_2TAU);
    }
    Ok(r)
}

/// The whole kernel suite, with `count` quasi-periodicity samples.
pub fn kernel_suite<R: Rng + ?Sized>(rng: &mut R, count: usize, acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let mut r = ResidualReport::new("kernel");
    r.absorb(quasi_periodicity(rng, count, acc)?);
    let pts: Vec<BallPoint> = (0..3).map(|_| random_ball_point(rng)).collect();
    r.absorb(vanishing_criterion(&pts, acc)?);
    let taus: Vec<C64> = (0..5).map(|_| C64::new(rng.random_range(-0.5..0.5), rng.random_range(0.4..2.0))).collect();
    r.absorb(two_tau(&taus)?);
    let th = jacobi_theta(0, 0, C64::new(0.0, 1.0))?;
    r.push("theta00_i", th, C64::new(PI.powf(0.25) / gamma34(), 0.0), TOL_2TAU);
    Ok(r)
}
