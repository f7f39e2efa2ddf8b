//! Periods of `dz/w` on the curve `w⁴ = z(z−x₁)(z−x₂)(z−x₃)(z−1)` for
//! real branch points `0 < x₁ < x₂ < x₃ < 1`.

use crate::ball::{sp_act, tau_of_v, BallPoint, NamedElem};
use crate::error::{domain, Error, Result};
use crate::hypergeom::gauss_2f1;
use crate::scalarcore::{quad_graded, QuadratureSpec, C64, I};
use crate::theta::SiegelPoint;
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::sync::OnceLock;

/// Branch points in the real chamber. Coincident points are accepted so
/// that the diagonal `x₁ = x₂ = x₃` can be reached directly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchPoints([f64; 3]);

impl BranchPoints {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        if !(0.0 < x1 && x1 <= x2 && x2 <= x3 && x3 < 1.0) {
            return Err(domain(format!("branch points ({x1}, {x2}, {x3}) are not in 0 < x₁ ≤ x₂ ≤ x₃ < 1")));
        }
        Ok(BranchPoints([x1, x2, x3]))
    }

    pub fn from_slice(x: &[f64]) -> Result<Self> {
        match x {
            [a, b, c] => Self::new(*a, *b, *c),
            _ => Err(domain(format!("three branch points expected, got {}", x.len()))),
        }
    }

    pub fn diagonal(x: f64) -> Result<Self> {
        Self::new(x, x, x)
    }

    pub fn x(&self) -> [f64; 3] {
        self.0
    }

    pub fn is_strict(&self) -> bool {
        self.0[0] < self.0[1] && self.0[1] < self.0[2]
    }

    /// `(0, x₁, x₂, x₃, 1)`.
    pub fn extended(&self) -> [f64; 5] {
        [0.0, self.0[0], self.0[1], self.0[2], 1.0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SegmentId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
}

impl SegmentId {
    pub const ALL: [SegmentId; 6] = [SegmentId::L1, SegmentId::L2, SegmentId::L3, SegmentId::L4, SegmentId::L5, SegmentId::L6];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `arg w` on the open segment.
    pub fn arg(self) -> f64 {
        match self {
            SegmentId::L1 => 5.0 * PI / 4.0,
            SegmentId::L2 => PI,
            SegmentId::L3 => 3.0 * PI / 4.0,
            SegmentId::L4 => PI / 2.0,
            SegmentId::L5 => PI / 4.0,
            SegmentId::L6 => 0.0,
        }
    }

    /// The projected interval, with infinite ends for `L1` and `L6`.
    pub fn interval(self, x: &BranchPoints) -> (f64, f64) {
        let e = x.extended();
        match self {
            SegmentId::L1 => (f64::NEG_INFINITY, 0.0),
            SegmentId::L6 => (1.0, f64::INFINITY),
            s => (e[s.index() - 1], e[s.index()]),
        }
    }
}

impl fmt::Display for SegmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

// ∫₀¹ C s^{-ml/4} (1-s)^{-mr/4} Π|1 - k s|^{-1/4} ds style kernels: `left`
// and `right` count coincident branch points, `outer` lists the remaining
// singular abscissae σ (outside [0,1]) with their scale in |s − σ| form.
fn unit_kernel(scale: f64, left: usize, right: usize, outer: &[f64], spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let (le, re) = (-(left as f64) / 4.0, -(right as f64) / 4.0);
    if le <= -1.0 || re <= -1.0 {
        return Err(domain("too many coincident branch points for an integrable segment"));
    }
    let est = quad_graded(
        |s| C64::new(outer.iter().map(|&sig| (s - sig).abs().powf(-0.25)).product::<f64>(), 0.0),
        outer,
        &spec.with_exponents(le, re),
    )?;
    Ok((scale * est.value.re, scale * est.error))
}

/// `|∫_{L_j} dz/|w||` and its quadrature error indicator.
pub fn segment_modulus(seg: SegmentId, x: &BranchPoints, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let pts = x.extended();
    match seg {
        SegmentId::L6 => {
            // z = 1/s; |1 − p s| vanishes at σ = 1/p
            let right = pts.iter().filter(|&&p| p == 1.0).count();
            let outer: Vec<f64> = pts.iter().filter(|&&p| p != 0.0 && p != 1.0).map(|p| 1.0 / p).collect();
            let scale = pts.iter().filter(|&&p| p != 0.0 && p != 1.0).map(|p| p.powf(-0.25)).product();
            unit_kernel(scale, 3, right, &outer, spec)
        }
        SegmentId::L1 => {
            // z = 1 − 1/s; |1 − (1 − p)s| vanishes at σ = 1/(1 − p)
            let right = pts.iter().filter(|&&p| p == 0.0).count();
            let inner: Vec<f64> = pts.iter().filter(|&&p| p != 0.0 && p != 1.0).map(|p| 1.0 - p).collect();
            let outer: Vec<f64> = inner.iter().map(|k| 1.0 / k).collect();
            let scale = inner.iter().map(|k| k.powf(-0.25)).product();
            unit_kernel(scale, 3, right, &outer, spec)
        }
        _ => {
            let (l, r) = seg.interval(x);
            if r == l {
                return Ok((0.0, 0.0));
            }
            let len = r - l;
            let left = pts.iter().filter(|&&p| p == l).count();
            let right = pts.iter().filter(|&&p| p == r).count();
            let outer: Vec<f64> = pts.iter().filter(|&&p| p != l && p != r).map(|p| (p - l) / len).collect();
            unit_kernel(len.powf(-0.25), left, right, &outer, spec)
        }
    }
}

/// `∫_{L_j} dz/w` with `w = e^{i·arg}|w|` on the segment.
pub fn segment_integral(seg: SegmentId, x: &BranchPoints, spec: &QuadratureSpec) -> Result<C64> {
    let (m, _) = segment_modulus(seg, x, spec)?;
    Ok(C64::from_polar(m, -seg.arg()))
}

fn rho(z: C64) -> C64 {
    -I * z
}

/// `∫_{c_j} dz/w = 2∫_{L_j} dz/w` for `j = 1..6`.
pub fn cycle_integrals(x: &BranchPoints, spec: &QuadratureSpec) -> Result<([C64; 6], f64)> {
    let mut c = [C64::new(0.0, 0.0); 6];
    let mut err = 0.0;
    for seg in SegmentId::ALL {
        let (m, e) = segment_modulus(seg, x, spec)?;
        c[seg.index()] = C64::from_polar(2.0 * m, -seg.arg());
        err += 2.0 * e;
    }
    Ok((c, err))
}

fn raw_vector(c: &[C64; 6]) -> [C64; 4] {
    [c[5], c[0] - rho(c[0]), -(c[2] - rho(c[2])) - c[3], -rho(c[3])]
}

pub const CALIBRATION_REFERENCE: f64 = 0.5;

/// The ratio between the raw B₁-integral and `√2π·F(1/4,3/4,1;x)` at the
/// diagonal reference point, measured once.
pub fn calibration() -> Result<f64> {
    static C: OnceLock<f64> = OnceLock::new();
    if let Some(c) = C.get() {
        return Ok(*c);
    }
    let x0 = CALIBRATION_REFERENCE;
    let (c, _) = cycle_integrals(&BranchPoints::diagonal(x0)?, &QuadratureSpec::default())?;
    let target = SQRT_2 * PI * gauss_2f1(C64::new(0.25, 0.0), C64::new(0.75, 0.0), C64::new(1.0, 0.0), C64::new(x0, 0.0))?.re;
    let measured = raw_vector(&c)[0].re / target;
    Ok(*C.get_or_init(|| measured))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodVector {
    pub x: BranchPoints,
    pub v: [C64; 4],
    /// `∫_{c_j} dz/w`, j = 1..6, before calibration.
    pub cycles: [C64; 6],
    pub calibration: f64,
    pub error: f64,
}

impl PeriodVector {
    pub fn ball_point(&self) -> Result<BallPoint> {
        BallPoint::new(self.v).map_err(|_| Error::Consistency("period vector is not in the ball".into()))
    }

    pub fn hermitian(&self) -> f64 {
        crate::ball::hermitian(&self.v)
    }

    pub fn quadratic(&self) -> C64 {
        crate::ball::quadratic(&self.v)
    }
}

/// `v = (∫_{B₁}, …, ∫_{B₄}) dz/w` divided by the calibration constant.
pub fn period_vector(x: &BranchPoints, spec: &QuadratureSpec) -> Result<PeriodVector> {
    let (cycles, err) = cycle_integrals(x, spec)?;
    let cal = calibration()?;
    let v = raw_vector(&cycles).map(|z| z / cal);
    let out = PeriodVector { x: *x, v, cycles, calibration: cal, error: err / cal };
    if !(out.hermitian() < 0.0) {
        return Err(Error::Consistency(format!("v*Uv = {} is not negative", out.hermitian())));
    }
    Ok(out)
}

/// Residuals of the two homology relations expressing `c₁` and `c₆`
/// through the other cycles.
pub fn homology_residual(x: &BranchPoints, spec: &QuadratureSpec) -> Result<f64> {
    let (c, _) = cycle_integrals(x, spec)?;
    let r1 = c[0] - (-c[3] - c[4] + rho(c[2]) + rho(c[3]));
    let r6 = c[5] - (-c[1] - c[2] - rho(c[2]) - rho(c[3]));
    Ok(r1.norm().max(r6.norm()))
}

/// `τ^♯ = N·τ(v)`.
pub fn tau_sharp(v: &BallPoint) -> Result<SiegelPoint> {
    sp_act(&NamedElem::N.symplectic()?, &tau_of_v(v)?)
}
