//! Scalars, constants, Pochhammer symbols and quadrature for integrands
//! with algebraic endpoint singularities.

mod dyadic;
mod gamma;
mod quad;

pub use dyadic::{DMat, DyadicGaussian};
pub use gamma::{gamma, gamma34, ln_gamma};
pub use quad::{
    gauss_jacobi_rule, quad_graded, quad_segment, GaussRule, QuadEstimate, QuadratureSpec, Scheme,
};

use num_complex::Complex64;
use std::f64::consts::PI;

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

/// `e(t) = exp(2πi t)`.
#[inline]
pub fn e(t: f64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * t)
}

/// `(α, n) = α(α+1)⋯(α+n−1)`.
pub fn pochhammer(alpha: C64, n: u32) -> C64 {
    (0..n).fold(C64::new(1.0, 0.0), |acc, k| acc * (alpha + k as f64))
}

/// `π / Γ(3/4)⁴`, the common limit of the normalized mean iteration.
pub fn agm_limit_constant() -> f64 {
    PI / gamma34().powi(4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_small_cases() {
        assert_eq!(pochhammer(C64::new(0.3, 0.2), 0), C64::new(1.0, 0.0));
        assert_eq!(pochhammer(C64::new(1.0, 0.0), 5), C64::new(120.0, 0.0));
        let p = pochhammer(C64::new(0.25, 0.0), 2);
        assert!((p.re - 5.0 / 16.0).abs() < 1e-16 && p.im == 0.0);
    }

    #[test]
    fn pochhammer_matches_gamma_ratio() {
        let a = C64::new(0.7, -0.4);
        let lhs = pochhammer(a, 7);
        let rhs = gamma(a + 7.0) / gamma(a);
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }

    #[test]
    fn unit_character() {
        assert!((e(0.25) - I).norm() < 1e-16);
        assert!((e(1.0) - 1.0).norm() < 1e-15);
    }
}
