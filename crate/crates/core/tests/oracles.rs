//! Fixed reference values. Numbers marked mpmath were produced by an
//! independent 30-digit mpmath computation (plain mean iteration, the
//! degree-ordered F_D series, brute-force lattice sums over |k|∞ ≤ 5 and
//! tanh-sinh segment integrals) and are frozen here.

use nalgebra::DMatrix;
use std::f64::consts::{PI, SQRT_2};
use theta_agm::agm::{agm, MeanKind};
use theta_agm::ball::{char_act, chi, j_matrix, jmath, tau_of_v, NamedElem, SymplecticElem};
use theta_agm::hypergeom::{fd_quarter, lauricella_fd, FDParams};
use theta_agm::identities::*;
use theta_agm::periods::{period_vector, segment_modulus, BranchPoints, SegmentId};
use theta_agm::scalarcore::{agm_limit_constant, gamma34, DMat, DyadicGaussian, QuadratureSpec, C64};
use theta_agm::theta::{jacobi_theta, theta_constant, Characteristic, SiegelPoint, ThetaAccuracy};

const THETA00_I: f64 = 1.0864348112133080145753;
const GAMMA_3_4: f64 = 1.2254167024651776451291;
const KAPPA: f64 = 0.0012454030015882094565;
const PI_OVER_GAMMA4: f64 = 1.3932039296856768591842;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn acc() -> ThetaAccuracy {
    ThetaAccuracy::default()
}

fn reference() -> BranchPoints {
    BranchPoints::new(0.2, 0.5, 0.8).unwrap()
}

fn ch(s: &str) -> Characteristic {
    s.parse().unwrap()
}

#[test]
fn classical_constants() {
    assert!((gamma34() - GAMMA_3_4).abs() < 1e-15);
    assert!((kappa() - KAPPA).abs() < 1e-18);
    assert!((agm_limit_constant() - PI_OVER_GAMMA4).abs() < 1e-14);
    let t = jacobi_theta(0, 0, C64::new(0.0, 1.0)).unwrap();
    assert!((t - c(THETA00_I)).norm() < 1e-15);
    assert!((t.powi(4).re - PI_OVER_GAMMA4).abs() < 1e-14);
    assert!((PI.powf(0.25) / GAMMA_3_4 - THETA00_I).abs() < 1e-15);
}

#[test]
fn mean_limits_mpmath() {
    let km = agm(MeanKind::KatoMatsumoto4, &[1.0, 0.8, 0.6, 0.4]).unwrap();
    assert!((km - 0.690884283978409378493567332551).abs() < 1e-15);
    let q = agm(MeanKind::BorweinQuartic2, &[1.0, 0.5]).unwrap();
    assert!((q - 0.615523255149545154729236006167).abs() < 1e-15);
    let cu = agm(MeanKind::BorweinCubic2, &[1.0, 0.5]).unwrap();
    assert!((cu - 0.664339688973229004301522565479).abs() < 1e-15);
}

#[test]
fn fd_reference_value_mpmath() {
    let want = 1.15098132311012747497;
    assert!((fd_quarter([0.2, 0.5, 0.8]).unwrap() - want).abs() < 1e-14);
    let z = [c(0.8), c(0.2), c(0.5)];
    assert!((lauricella_fd(&FDParams::quarter(), &z).unwrap() - c(want)).norm() < 1e-14);
}

#[test]
fn period_vector_mpmath() {
    let pv = period_vector(&reference(), &QuadratureSpec::default()).unwrap();
    let want = [
        c(5.1136752825849270447),
        c(-7.2318289382036730538),
        C64::new(0.0, 4.0354734436045566723),
        c(1.6715478309374648239),
    ];
    for (got, w) in pv.v.iter().zip(want) {
        assert!((got - w).norm() < 1e-12, "{got} vs {w}");
    }
}

#[test]
fn theta_constants_mpmath() {
    let v = period_vector(&reference(), &QuadratureSpec::default()).unwrap().ball_point().unwrap();
    let tp = tau_of_v(&v).unwrap();
    let t0 = theta_constant(&ch("0000,0000"), &tp, &acc()).unwrap();
    let t1 = theta_constant(&ch("1100,0000"), &tp, &acc()).unwrap();
    let odd = theta_constant(&ch("1010,0110"), &tp, &acc()).unwrap();
    assert!((t0 - c(1.7097784786625206845)).norm() < 1e-12);
    assert!((t1 - c(1.0998339209407031558)).norm() < 1e-12);
    assert!(odd.norm() < 1e-13);
}

// Independent segment integral: z = l + u⁴ on the left half and z = r − u⁴ on the
// right half make the integrand smooth; composite Simpson on each half.
fn segment_brute(x: &BranchPoints) -> f64 {
    let e = x.extended();
    let (l, r) = (e[3], e[4]);
    let h = ((r - l) / 2.0).powf(0.25);
    let w = |z: f64| e.iter().map(|p| (z - p).abs()).product::<f64>().powf(-0.25);
    let simpson = |f: &dyn Fn(f64) -> f64| {
        let n = 4000;
        let dx = h / n as f64;
        (0..=n)
            .map(|k| {
                let wt = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
                wt * f(k as f64 * dx)
            })
            .sum::<f64>()
            * dx
            / 3.0
    };
    let left = |u: f64| if u == 0.0 { 0.0 } else { 4.0 * u.powi(3) * w(l + u.powi(4)) };
    let right = |u: f64| if u == 0.0 { 0.0 } else { 4.0 * u.powi(3) * w(r - u.powi(4)) };
    simpson(&left) + simpson(&right)
}

#[test]
fn segment_brute_force() {
    let x = reference();
    let (m, _) = segment_modulus(SegmentId::L5, &x, &QuadratureSpec::default()).unwrap();
    let (m4, _) = segment_modulus(SegmentId::L4, &x, &QuadratureSpec::default()).unwrap();
    // L5 is (x₃, 1); the brute force integrates (e[3], e[4]) = (x₃, 1)
    assert!((m - segment_brute(&x)).abs() < 1e-9 * m, "{m} vs {}", segment_brute(&x));
    assert!(m4 > 0.0);
}

#[test]
fn period_entries_are_fd_values() {
    for x in [reference(), BranchPoints::new(0.1, 0.3, 0.95).unwrap()] {
        let pv = period_vector(&x, &QuadratureSpec::default()).unwrap();
        let fd = fd_quarter(x.x()).unwrap();
        let fd1 = fd_quarter(x.x().map(|t| 1.0 - t)).unwrap();
        assert!((pv.v[0] - c(SQRT_2 * PI * fd)).norm() < 1e-10);
        assert!((pv.v[1] - c(-2.0 * PI * fd1)).norm() < 1e-10);
        // a(v) = (π/Γ(3/4)⁴)·F_D(x)² through the theta side
        let a = abcd(&pv.ball_point().unwrap(), &acc()).unwrap().a;
        assert!((a - c(PI_OVER_GAMMA4 * fd * fd)).norm() < 1e-10);
    }
}

#[test]
fn theta_at_i_identity() {
    let t = theta_constant(&Characteristic::zero(4), &SiegelPoint::i_identity(4), &acc()).unwrap();
    assert!((t - c(THETA00_I.powi(4))).norm() < 1e-14);
}

#[test]
fn genus_two_block_diagonal_factorizes() {
    let (t1, t2) = (C64::new(0.3, 1.1), C64::new(-0.2, 0.8));
    let z = C64::new(0.0, 0.0);
    let tp = SiegelPoint::from_rows(&[&[t1, z], &[z, t2]]).unwrap();
    for a1 in 0..2u8 {
        for b1 in 0..2u8 {
            for a2 in 0..2u8 {
                for b2 in 0..2u8 {
                    let chr = Characteristic::new(vec![a1 as i64, a2 as i64], vec![b1 as i64, b2 as i64]).unwrap();
                    let lhs = theta_constant(&chr, &tp, &acc()).unwrap();
                    let rhs = jacobi_theta(a1, b1, t1).unwrap() * jacobi_theta(a2, b2, t2).unwrap();
                    assert!((lhs - rhs).norm() < 1e-14, "{chr}");
                }
            }
        }
    }
}

#[test]
fn odd_jacobi_theta_vanishes() {
    assert!(jacobi_theta(1, 1, C64::new(0.1, 0.7)).unwrap().norm() < 1e-16);
}

#[test]
fn j_of_i_is_minus_m_rho() {
    let i = DyadicGaussian::i();
    let i4 = DMat::diag(&[i.clone(), i.clone(), i.clone(), i]);
    let m = jmath(&theta_agm::ball::UnitaryElem::new(i4).unwrap());
    assert_eq!(m.as_dmat(), &(-NamedElem::Mrho.symplectic().unwrap().as_dmat()));
}

#[test]
fn r_factorizations() {
    let r = NamedElem::R.unitary().unwrap();
    let g13 = NamedElem::G13.unitary().unwrap();
    let r1 = NamedElem::R1.unitary().unwrap();
    assert_eq!(r, g13.compose(&r1));
    assert_eq!(r, r1.compose(&g13));
    let r4 = r.pow(4);
    let m = r4.as_dmat();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                assert!(m[(i, j)].is_zero(), "R⁴ is not diagonal");
            }
        }
    }
}

#[test]
fn chi_of_n_is_tau22() {
    let v = period_vector(&reference(), &QuadratureSpec::default()).unwrap().ball_point().unwrap();
    let tp = tau_of_v(&v).unwrap();
    let n = NamedElem::N.symplectic().unwrap();
    assert!((chi(&n, &tp) - tp.entry(1, 1)).norm() < 1e-14);
}

#[test]
fn j8_swaps_characteristic_halves() {
    let j8 = SymplecticElem::new(j_matrix(4)).unwrap();
    let x = Characteristic::new(vec![1, 0, 1, 1], vec![0, 1, 1, 0]).unwrap();
    let y = char_act(&j8, &x).unwrap();
    assert_eq!(y.a, vec![0, -1, -1, 0]);
    assert_eq!(y.b, vec![1, 0, 1, 1]);
}

#[test]
fn diagonal_period_matrix_factorizes() {
    let x = BranchPoints::diagonal(0.4).unwrap();
    let v = period_vector(&x, &QuadratureSpec::default()).unwrap().ball_point().unwrap();
    let tau = tau_of_v(&v).unwrap();
    let [v1, v2, _, _] = *v.coords();
    let t1 = -C64::new(0.0, 1.0) * v2 / v1;
    let i = C64::new(0.0, 1.0);
    let want = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![t1, -1.0 / t1, i, i]));
    assert!((tau.tau() - want).norm() < 1e-10);
}

#[test]
fn reference_point_suites_pass() {
    let x = reference();
    let v = period_vector(&x, &QuadratureSpec::default()).unwrap().ball_point().unwrap();
    for r in [
        verify_inverse(&x, &v, &acc()).unwrap(),
        verify_thomae(&x, &v, &acc()).unwrap(),
        verify_table2(&x, &v, &acc()).unwrap(),
        verify_thomae3(&v, &acc()).unwrap(),
        verify_abcd(&x, &v, &acc()).unwrap(),
        verify_jacobi(&x, &v, &acc()).unwrap(),
    ] {
        assert!(r.pass, "{r}");
    }
}

#[test]
fn table2_first_row_is_positive_on_chamber() {
    let x = reference();
    let v = period_vector(&x, &QuadratureSpec::default()).unwrap().ball_point().unwrap();
    let r = verify_table2(&x, &v, &acc()).unwrap();
    let first = &r.checks[0];
    assert!(first.lhs().re > 0.0);
    assert!((first.rhs().re - 0.2 * (0.8 - 0.5)).abs() < 1e-15);
}

#[test]
fn mean_orbit_converges_to_limit_constant() {
    let x = BranchPoints::new(0.3, 0.6, 0.9).unwrap();
    let mut v = period_vector(&x, &QuadratureSpec::default()).unwrap().ball_point().unwrap();
    let r = NamedElem::R.unitary().unwrap();
    let mut prev = abcd(&v, &acc()).unwrap();
    for n in 0..5 {
        let check = mean_transform_check(&v, true, &acc()).unwrap();
        assert!(check.pass, "step {n}: {check}");
        v = v.apply(&r).normalized();
        let next = abcd(&v, &acc()).unwrap();
        // the largest term is a and can only shrink; the smallest can only grow
        let min = |q: &AbcdValues| q.as_array().iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        assert!(next.a.re <= prev.a.re + 1e-12);
        assert!(min(&next) >= min(&prev) - 1e-12);
        prev = next;
    }
    for z in prev.as_array() {
        assert!((z - c(PI_OVER_GAMMA4)).norm() < 1e-12, "{z}");
    }
}

#[test]
fn km_main_reference_quadruple() {
    let r = km_main(1.0, 0.8, 0.6, 0.4, &acc(), &QuadratureSpec::default()).unwrap();
    assert!(r.pass, "{r}");
    assert!((r.get("fd").unwrap().lhs().re - 1.0 / 0.690884283978409378493567332551).abs() < 1e-14);
}
