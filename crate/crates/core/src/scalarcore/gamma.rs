use super::C64;
use std::f64::consts::PI;
use std::sync::OnceLock;

// B_{2k} / (2k(2k-1)) for k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const SHIFT_TO: f64 = 10.0;

/// Log-gamma by upward shift and the Stirling series. Branch of the
/// imaginary part is not normalized.
pub fn ln_gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        return C64::new(PI.ln(), 0.0) - (C64::new(PI, 0.0) * z).sin().ln() - ln_gamma(1.0 - z);
    }
    let mut w = z;
    let mut prod = C64::new(1.0, 0.0);
    while w.re < SHIFT_TO {
        prod *= w;
        w += 1.0;
    }
    let winv = w.inv();
    let w2 = winv * winv;
    let mut series = C64::new(0.0, 0.0);
    let mut pow = winv;
    for c in STIRLING {
        series += pow * c;
        pow *= w2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - prod.ln()
}

pub fn gamma(z: C64) -> C64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return C64::new(f64::NAN, f64::NAN);
    }
    ln_gamma(z).exp()
}

/// Γ(3/4) from `Γ(3/4)² = M(1, √2)·√(π/2)` with `M` the Gauss AGM,
/// checked once against the reflection `Γ(1/4)Γ(3/4) = √2·π` where
/// Γ(1/4) comes from the Stirling path.
pub fn gamma34() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| {
        let (mut a, mut b) = (1.0f64, std::f64::consts::SQRT_2);
        while (a - b).abs() > 4.0 * f64::EPSILON * a {
            (a, b) = ((a + b) / 2.0, (a * b).sqrt());
        }
        let m = (a + b) / 2.0;
        let g34 = (m * (PI / 2.0).sqrt()).sqrt();
        let g14 = gamma(C64::new(0.25, 0.0)).re;
        let target = std::f64::consts::SQRT_2 * PI;
        let rel = (g14 * g34 - target).abs() / target;
        assert!(rel < 1e-14, "Γ reflection self-check failed: {rel:e}");
        g34
    })
}
