//! Gauss `₂F₁` and Lauricella `F_D` by series, with an Euler-integral
//! evaluation of `F_D` for real arguments.

use crate::error::{domain, Error, Result};
use crate::scalarcore::{gamma, quad_graded, QuadratureSpec, C64};

const REL_STOP: f64 = 1e-17;
const QUIET_RUN: usize = 3;
pub const MAX_TERMS: usize = 1_000_000;
pub const MAX_BLOCKS: usize = 100_000;

/// Parameters `(α; β₁..β_m; γ)` of `F_D` in `m ≤ 3` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct FDParams {
    pub alpha: C64,
    pub betas: Vec<C64>,
    pub gamma: C64,
}

impl FDParams {
    pub fn new(alpha: C64, betas: Vec<C64>, gamma: C64) -> Result<Self> {
        if betas.is_empty() || betas.len() > 3 {
            return Err(domain(format!("F_D takes 1 to 3 variables, got {}", betas.len())));
        }
        check_gamma(gamma)?;
        Ok(FDParams { alpha, betas, gamma })
    }

    /// `F_D(1/4; 1/4, 1/4, 1/4; 1)`, the case tied to the quaternary mean.
    pub fn quarter() -> Self {
        let q = C64::new(0.25, 0.0);
        FDParams { alpha: q, betas: vec![q; 3], gamma: C64::new(1.0, 0.0) }
    }

    pub fn m(&self) -> usize {
        self.betas.len()
    }
}

fn check_gamma(g: C64) -> Result<()> {
    if g.im == 0.0 && g.re <= 0.0 && g.re.fract() == 0.0 {
        Err(domain(format!("γ = {} is a non-positive integer", g.re)))
    } else {
        Ok(())
    }
}

/// `F(α, β, γ; z)` for `|z| < 1`.
pub fn gauss_2f1(alpha: C64, beta: C64, gamma: C64, z: C64) -> Result<C64> {
    check_gamma(gamma)?;
    if !(z.norm() < 1.0) {
        return Err(domain(format!("|z| = {} is not below 1", z.norm())));
    }
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (alpha + nf) * (beta + nf) / ((gamma + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.norm() < REL_STOP * sum.norm() {
            quiet += 1;
            if quiet == QUIET_RUN {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { what: "2F1 series", iterations: MAX_TERMS })
}

fn check_fd_args(p: &FDParams, z: &[C64]) -> Result<()> {
    if z.len() != p.m() {
        return Err(domain(format!("F_D has {} variables, got {} arguments", p.m(), z.len())));
    }
    check_gamma(p.gamma)?;
    if let Some(bad) = z.iter().find(|x| !(x.norm() < 1.0)) {
        return Err(domain(format!("argument {bad} outside the unit polydisk")));
    }
    Ok(())
}

// Degree blocks c_N = Σ_{|n|=N} Π (β_j)_{n_j} z_j^{n_j} / n_j!, i.e. the t^N
// coefficient of Π (1 - z_j t)^{-β_j}, by incremental convolution.
struct DegreeBlocks<'a> {
    betas: &'a [C64],
    z: &'a [C64],
    // one-variable series s_j[n] = (β_j)_n z_j^n / n!
    series: Vec<Vec<C64>>,
    // partial convolutions of s_1 .. s_{m-1}; conv[k] = s_0 * .. * s_k
    conv: Vec<Vec<C64>>,
}

impl<'a> DegreeBlocks<'a> {
    fn new(betas: &'a [C64], z: &'a [C64]) -> Self {
        let m = betas.len();
        DegreeBlocks { betas, z, series: vec![Vec::new(); m], conv: vec![Vec::new(); m] }
    }

    fn next(&mut self) -> C64 {
        let n = self.series[0].len();
        for j in 0..self.betas.len() {
            let s = if n == 0 {
                C64::new(1.0, 0.0)
            } else {
                self.series[j][n - 1] * (self.betas[j] + (n - 1) as f64) / n as f64 * self.z[j]
            };
            self.series[j].push(s);
        }
        self.conv[0].push(self.series[0][n]);
        for k in 1..self.betas.len() {
            let c = (0..=n).fold(C64::new(0.0, 0.0), |acc, i| acc + self.conv[k - 1][i] * self.series[k][n - i]);
            self.conv[k].push(c);
        }
        self.conv[self.betas.len() - 1][n]
    }
}

/// The first `count` terms `(α)_N/(γ)_N · c_N` of the degree-ordered series.
pub fn fd_degree_blocks(p: &FDParams, z: &[C64], count: usize) -> Result<Vec<C64>> {
    check_fd_args(p, z)?;
    let mut blocks = DegreeBlocks::new(&p.betas, z);
    let mut ratio = C64::new(1.0, 0.0);
    Ok((0..count)
        .map(|n| {
            if n > 0 {
                ratio *= (p.alpha + (n - 1) as f64) / (p.gamma + (n - 1) as f64);
            }
            ratio * blocks.next()
        })
        .collect())
}

/// `F_D(α, β, γ; z)` summed by total degree until three consecutive
/// blocks fall below `1e-17` relative.
pub fn lauricella_fd(p: &FDParams, z: &[C64]) -> Result<C64> {
    check_fd_args(p, z)?;
    let mut blocks = DegreeBlocks::new(&p.betas, z);
    let mut ratio = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..MAX_BLOCKS {
        if n > 0 {
            ratio *= (p.alpha + (n - 1) as f64) / (p.gamma + (n - 1) as f64);
        }
        let block = ratio * blocks.next();
        sum += block;
        if n > 0 && block.norm() < REL_STOP * sum.norm() {
            quiet += 1;
            if quiet == QUIET_RUN {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { what: "F_D series", iterations: MAX_BLOCKS })
}

/// Real-argument convenience form of `F_D(1/4; 1/4,1/4,1/4; 1; x)`.
pub fn fd_quarter(x: [f64; 3]) -> Result<f64> {
    let z: Vec<C64> = x.iter().map(|&t| C64::new(t, 0.0)).collect();
    Ok(lauricella_fd(&FDParams::quarter(), &z)?.re)
}

// Split a complex exponent into a weight part in (-1, 0] and a remainder.
fn split_exponent(e: C64) -> (f64, C64) {
    if e.re > -1.0 && e.re <= 0.0 {
        (e.re, C64::new(0.0, e.im))
    } else {
        (0.0, e)
    }
}

/// `F_D` from its Euler integral, mapped to `(0,1)` by `t = 1/s`:
/// `Γ(γ)/(Γ(α)Γ(γ-α)) ∫₀¹ s^{α-1}(1-s)^{γ-α-1} Π(1-z_j s)^{-β_j} ds`.
pub fn lauricella_fd_euler(p: &FDParams, z: &[f64], spec: &QuadratureSpec) -> Result<C64> {
    if z.len() != p.m() {
        return Err(domain(format!("F_D has {} variables, got {} arguments", p.m(), z.len())));
    }
    if !(p.alpha.re > 0.0 && p.alpha.re < p.gamma.re) {
        return Err(domain("Euler integral needs 0 < Re α < Re γ"));
    }
    if let Some(bad) = z.iter().find(|&&x| !(x < 1.0)) {
        return Err(domain(format!("Euler integral needs real z < 1, got {bad}")));
    }
    let (lw, lrest) = split_exponent(p.alpha - 1.0);
    let (rw, rrest) = split_exponent(p.gamma - p.alpha - 1.0);
    let external: Vec<f64> = z.iter().filter(|&&x| x != 0.0).map(|x| 1.0 / x).collect();
    let integrand = |s: f64| {
        let mut g = C64::new(1.0, 0.0);
        if lrest != C64::new(0.0, 0.0) {
            g *= C64::new(s, 0.0).powc(lrest);
        }
        if rrest != C64::new(0.0, 0.0) {
            g *= C64::new(1.0 - s, 0.0).powc(rrest);
        }
        for (b, x) in p.betas.iter().zip(z) {
            g *= C64::new(1.0 - x * s, 0.0).powc(-b);
        }
        g
    };
    let est = quad_graded(integrand, &external, &spec.with_exponents(lw, rw))?;
    let norm = gamma(p.gamma) / (gamma(p.alpha) * gamma(p.gamma - p.alpha));
    Ok(norm * est.value)
}
