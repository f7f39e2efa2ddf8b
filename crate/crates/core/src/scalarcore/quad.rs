use super::{gamma, C64};
use crate::error::{domain, Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Gauss–Jacobi with weight `t^left (1-t)^right`.
    GaussJacobi,
    /// Tanh-sinh on the logistic form of the map.
    TanhSinh,
}

/// Rule for `∫₀¹ t^left (1-t)^right f(t) dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub node_count: usize,
    pub left_exponent: f64,
    pub right_exponent: f64,
    pub scheme: Scheme,
    /// Accepted relative size of the error indicator.
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            node_count: 64,
            left_exponent: -0.25,
            right_exponent: -0.25,
            scheme: Scheme::GaussJacobi,
            tol: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn new(node_count: usize, left_exponent: f64, right_exponent: f64, scheme: Scheme) -> Result<Self> {
        let spec = QuadratureSpec { node_count, left_exponent, right_exponent, scheme, ..Self::default() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_exponents(self, left_exponent: f64, right_exponent: f64) -> Self {
        QuadratureSpec { left_exponent, right_exponent, ..self }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        QuadratureSpec { tol, ..self }
    }

    pub fn with_nodes(self, node_count: usize) -> Self {
        QuadratureSpec { node_count, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_count < 4 {
            return Err(domain(format!("node_count {} < 4", self.node_count)));
        }
        for (side, x) in [("left", self.left_exponent), ("right", self.right_exponent)] {
            if !(x > -1.0 && x <= 0.0) {
                return Err(domain(format!("{side} exponent {x} outside (-1, 0]")));
            }
        }
        if !(self.tol > 0.0) {
            return Err(domain("quadrature tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadEstimate {
    pub value: C64,
    /// `|Q_n - Q_2n|` plus a rounding floor.
    pub error: f64,
}

impl std::ops::Add for QuadEstimate {
    type Output = QuadEstimate;
    fn add(self, rhs: QuadEstimate) -> QuadEstimate {
        QuadEstimate { value: self.value + rhs.value, error: self.error + rhs.error }
    }
}

/// Nodes and weights on (0,1) for the weight `t^left (1-t)^right`.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

type RuleKey = (usize, u64, u64);

fn rule_cache() -> &'static Mutex<HashMap<RuleKey, Arc<GaussRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Jacobi rule by Golub–Welsch, memoized per `(n, left, right)`.
pub fn gauss_jacobi_rule(n: usize, left: f64, right: f64) -> Arc<GaussRule> {
    let key = (n, left.to_bits(), right.to_bits());
    if let Some(rule) = rule_cache().lock().unwrap().get(&key) {
        return rule.clone();
    }
    let rule = Arc::new(golub_welsch(n, left, right));
    rule_cache().lock().unwrap().insert(key, rule.clone());
    rule
}

fn golub_welsch(n: usize, left: f64, right: f64) -> GaussRule {
    // on [-1,1] with weight (1-x)^a (1+x)^b
    let (a, b) = (right, left);
    let ab = a + b;
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        jac[(k, k)] = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        if k + 1 < n {
            let m = kf + 1.0;
            let beta = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * m * (m + a) * (m + b) * (m + ab)
                    / ((2.0 * m + ab).powi(2) * (2.0 * m + ab + 1.0) * (2.0 * m + ab - 1.0))
            };
            jac[(k, k + 1)] = beta.sqrt();
            jac[(k + 1, k)] = beta.sqrt();
        }
    }
    // total mass of t^b (1-t)^a on (0,1) is B(b+1, a+1)
    let mu0 = (gamma(C64::new(a + 1.0, 0.0)) * gamma(C64::new(b + 1.0, 0.0)) / gamma(C64::new(ab + 2.0, 0.0))).re;
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            ((1.0 + eig.eigenvalues[i]) / 2.0, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    GaussRule { nodes, weights }
}

fn apply_rule<F: Fn(f64) -> C64>(rule: &GaussRule, f: &F) -> (C64, f64) {
    rule.nodes.iter().zip(&rule.weights).fold((C64::new(0.0, 0.0), 0.0), |(s, abs), (&t, &w)| {
        let y = f(t) * w;
        (s + y, abs + y.norm())
    })
}

const TS_EDGE: f64 = 6.0;

// Trapezoid sum in u for t = 1/(1+exp(-π sinh u)); the weight is applied
// through t and 1-t computed separately so neither loses precision.
fn tanh_sinh_sum<F: Fn(f64) -> C64>(n: usize, left: f64, right: f64, f: &F) -> (C64, f64) {
    let h = 2.0 * TS_EDGE / n as f64;
    let mut sum = C64::new(0.0, 0.0);
    let mut abs = 0.0;
    for k in 0..=n {
        let u = -TS_EDGE + k as f64 * h;
        let s = PI * u.sinh();
        let t = 1.0 / (1.0 + (-s).exp());
        let omt = 1.0 / (1.0 + s.exp());
        if t == 0.0 || omt == 0.0 {
            continue;
        }
        let jac = PI * u.cosh() * t * omt;
        let w = h * jac * t.powf(left) * omt.powf(right);
        if !w.is_finite() || w == 0.0 {
            continue;
        }
        let y = f(t) * w;
        sum += y;
        abs += y.norm();
    }
    (sum, abs)
}

/// `∫₀¹ t^left (1-t)^right f(t) dt` with the exponents taken from `spec`.
///
/// The estimate uses `2·node_count` points; the indicator is the gap to the
/// `node_count` estimate. Fails when the indicator exceeds `spec.tol`
/// relative to the integrand mass `Σ|w f|`.
pub fn quad_segment<F: Fn(f64) -> C64>(f: F, spec: &QuadratureSpec) -> Result<QuadEstimate> {
    spec.validate()?;
    let n = spec.node_count;
    let (coarse, fine, abs) = match spec.scheme {
        Scheme::GaussJacobi => {
            let (c, _) = apply_rule(&gauss_jacobi_rule(n, spec.left_exponent, spec.right_exponent), &f);
            let (q, abs) = apply_rule(&gauss_jacobi_rule(2 * n, spec.left_exponent, spec.right_exponent), &f);
            (c, q, abs)
        }
        Scheme::TanhSinh => {
            let (c, _) = tanh_sinh_sum(n, spec.left_exponent, spec.right_exponent, &f);
            let (q, abs) = tanh_sinh_sum(2 * n, spec.left_exponent, spec.right_exponent, &f);
            (c, q, abs)
        }
    };
    if !fine.re.is_finite() || !fine.im.is_finite() {
        return Err(domain("integrand produced a non-finite value"));
    }
    let error = (coarse - fine).norm() + 32.0 * f64::EPSILON * abs;
    // relative to Σ|w f| so that cancelling integrals are not rejected
    if error > spec.tol * abs.max(f64::MIN_POSITIVE) {
        return Err(Error::Quadrature { indicator: error, tol: spec.tol });
    }
    Ok(QuadEstimate { value: fine, error })
}

const GRADE_BELOW: f64 = 0.25;

/// `∫₀¹ t^left (1-t)^right f(t) dt` where `f` may have singularities at the
/// real points `external` outside `[0,1]`. Panels are refined geometrically
/// towards an endpoint whenever such a point lies close to it.
pub fn quad_graded<F: Fn(f64) -> C64>(f: F, external: &[f64], spec: &QuadratureSpec) -> Result<QuadEstimate> {
    spec.validate()?;
    let dl = external.iter().filter(|&&s| s <= 0.0).map(|s| -s).fold(f64::INFINITY, f64::min);
    let dr = external.iter().filter(|&&s| s >= 1.0).map(|s| s - 1.0).fold(f64::INFINITY, f64::min);
    if dl == 0.0 || dr == 0.0 {
        return Err(domain("singularity on the integration endpoint"));
    }
    let mut cuts = vec![0.0, 1.0];
    if dl < GRADE_BELOW || dr < GRADE_BELOW {
        cuts.push(0.5);
    }
    let mut p = dl;
    while p < 0.5 {
        cuts.push(p);
        p *= 2.0;
    }
    let mut p = dr;
    while p < 0.5 {
        cuts.push(1.0 - p);
        p *= 2.0;
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let (lo, ro) = (spec.left_exponent, spec.right_exponent);
    let last = cuts.len() - 2;
    let mut total = QuadEstimate { value: C64::new(0.0, 0.0), error: 0.0 };
    for (i, w) in cuts.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let len = b - a;
        let (le, re) = (if i == 0 { lo } else { 0.0 }, if i == last { ro } else { 0.0 });
        let panel = spec.with_exponents(le, re);
        let est = quad_segment(
            |u| {
                let t = a + len * u;
                // weight factors that are not absorbed by the panel rule
                let mut g = len * f(t);
                if le == 0.0 && lo != 0.0 {
                    g *= t.powf(lo);
                } else if le != 0.0 {
                    g *= len.powf(lo);
                }
                if re == 0.0 && ro != 0.0 {
                    g *= (1.0 - t).powf(ro);
                } else if re != 0.0 {
                    g *= len.powf(ro);
                }
                g
            },
            &panel,
        )?;
        total = total + est;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(a: f64, b: f64) -> f64 {
        (gamma(C64::new(a, 0.0)) * gamma(C64::new(b, 0.0)) / gamma(C64::new(a + b, 0.0))).re
    }

    #[test]
    fn rule_integrates_polynomials() {
        let rule = gauss_jacobi_rule(8, -0.25, -0.5);
        for k in 0..15 {
            let q: f64 = rule.nodes.iter().zip(&rule.weights).map(|(t, w)| w * t.powi(k)).sum();
            let exact = beta(k as f64 + 0.75, 0.5);
            assert!((q - exact).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn tanh_sinh_matches_beta() {
        let spec = QuadratureSpec { scheme: Scheme::TanhSinh, ..Default::default() }.with_exponents(-0.75, -0.25);
        let q = quad_segment(|_| C64::new(1.0, 0.0), &spec).unwrap();
        assert!((q.value.re - beta(0.25, 0.75)).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_spec() {
        assert!(QuadratureSpec::new(3, -0.25, -0.25, Scheme::GaussJacobi).is_err());
        assert!(QuadratureSpec::new(16, -1.0, 0.0, Scheme::GaussJacobi).is_err());
        assert!(QuadratureSpec::new(16, -0.5, 0.1, Scheme::GaussJacobi).is_err());
    }

    #[test]
    fn reports_non_convergence() {
        let spec = QuadratureSpec::default().with_exponents(0.0, 0.0).with_nodes(4);
        let r = quad_segment(|t| C64::new((50.0 * t).sin(), 0.0), &spec);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn graded_near_singularity() {
        // ∫₀¹ t^{-1/4} (t + d)^{-1/4} dt for small d against the analytic value at d → 0 plus correction
        let d = 1e-6;
        let spec = QuadratureSpec::default().with_exponents(-0.25, 0.0);
        let q = quad_graded(|t| C64::new((t + d).powf(-0.25), 0.0), &[-d], &spec).unwrap();
        // substitution t = s⁴ and a fine composite Simpson rule as reference
        let n = 200_000;
        let h = 1.0 / n as f64;
        let g = |s: f64| 4.0 * s * s * (s.powi(4) + d).powf(-0.25);
        let mut r = g(0.0) + g(1.0);
        for i in 1..n {
            r += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
        }
        r *= h / 3.0;
        assert!((q.value.re - r).abs() < 1e-11, "{} vs {}", q.value.re, r);
    }
}
