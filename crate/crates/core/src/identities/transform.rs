//! Theta transformation formulas under the ball generators, checked at
//! concrete points with the stated square-root normalizations.

use super::{ResidualReport, TOL_TRANSFORM};
use crate::ball::{
    char_act, char_act_rational, chi, chi_sqrt, jmath, natural_lift, nu_char, phi_ab, sp_act, tau_of_v, u_matrix,
    BallPoint, NamedElem, SymplecticElem,
};
use crate::error::Result;
use crate::scalarcore::{e, DMat, C64};
use crate::theta::{theta_constant, theta_constant_real, Characteristic, RealCharacteristic, SiegelPoint, ThetaAccuracy};
use nalgebra::DMatrix;
use rand::Rng;
use std::f64::consts::SQRT_2;

fn cx(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `count` characteristics with entries drawn from `lo..=hi`.
pub fn random_characteristics<R: Rng + ?Sized>(rng: &mut R, n: usize, count: usize, lo: i64, hi: i64) -> Vec<Characteristic> {
    (0..count)
        .map(|_| {
            let mut draw = || (0..n).map(|_| rng.random_range(lo..=hi)).collect::<Vec<i64>>();
            let a = draw();
            let b = draw();
            Characteristic { a, b }
        })
        .collect()
}

/// A random genus-2 point `X + iY`, `Y = BBᵀ + I/2`.
pub fn random_siegel2<R: Rng + ?Sized>(rng: &mut R) -> SiegelPoint {
    let mut u = || rng.random_range(-1.0..1.0);
    let x01 = u();
    let x = [[u(), x01], [x01, u()]];
    let b = [[u(), u()], [u(), u()]];
    let tau = DMatrix::from_fn(2, 2, |i, j| {
        let y = b[i][0] * b[j][0] + b[i][1] * b[j][1] + if i == j { 0.5 } else { 0.0 };
        cx(x[i][j], y)
    });
    SiegelPoint::new(tau).expect("positive definite by construction")
}

fn upper_unipotent(b: &DMat) -> Result<SymplecticElem> {
    let n = b.rows();
    SymplecticElem::new(DMat::from_blocks(&DMat::identity(n), b, &DMat::zeros(n, n), &DMat::identity(n)))
}

fn real(ch: &Characteristic) -> RealCharacteristic {
    ch.to_real()
}

// Any factor f with θ[M·(a,b)](Mτ) = f·θ[a,b](τ) equals κ(M)·e(φ)·√χ with
// κ(M)⁸ = 1; this records κ⁸ against 1 whenever θ[a,b](τ) is not small.
fn push_kappa8(r: &mut ResidualReport, id: String, lhs: C64, base: C64, m: &SymplecticElem, ch: &Characteristic, tp: &SiegelPoint) -> Result<()> {
    if base.norm() < 1e-3 {
        return Ok(());
    }
    let phi = phi_ab(m, ch)?.to_f64();
    let k = lhs / (base * e(phi) * chi(m, tp).sqrt());
    r.push(id, k.powi(8), cx(1.0, 0.0), TOL_TRANSFORM);
    Ok(())
}

/// The six monodromy transformation items and the `N` action.
pub fn monodromy_suite(points: &[BallPoint], chars: &[Characteristic], acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let j23 = jmath(&NamedElem::G23.unitary()?);
    let j01 = jmath(&NamedElem::G01.unitary()?);
    let items: Vec<(&str, SymplecticElem)> = vec![
        ("item1", j23.clone()),
        ("item2", j23.inverse()),
        ("item3", NamedElem::Jswap.symplectic()?),
        ("item4", j01.clone()),
        ("item5", j01.inverse()),
        ("item6a", upper_unipotent(&DMat::identity(4))?),
        ("item6b", upper_unipotent(&u_matrix())?),
        ("n_action", NamedElem::N.symplectic()?),
    ];
    let iw = SiegelPoint::i_identity(4);
    let mut r = ResidualReport::new("monodromy");
    for (name, m) in &items {
        let anchor = chi(m, &iw).sqrt();
        for (pi, v) in points.iter().enumerate() {
            let tp = tau_of_v(v)?;
            let t = tp.tau();
            let mt = sp_act(m, &tp)?;
            let root = match *name {
                "item1" => cx(1.0, 1.0) / SQRT_2 * (-t[(3, 3)]).sqrt(),
                "item2" => cx(1.0, -1.0) / SQRT_2 * t[(3, 3)].sqrt(),
                "item3" => t.determinant().sqrt(),
                "item4" => cx(1.0, 1.0) / SQRT_2 * chi_sqrt(m, &tp, anchor)?,
                "item5" => cx(1.0, -1.0) / SQRT_2 * chi_sqrt(m, &tp, anchor)?,
                "n_action" => cx(1.0, -1.0) / SQRT_2 * t[(1, 1)].sqrt(),
                _ => cx(1.0, 0.0),
            };
            for (ci, ch) in chars.iter().enumerate() {
                let phase = match *name {
                    "item1" | "item2" => e(-(ch.a[3] * ch.b[3]) as f64 / 4.0),
                    "item3" => e(ch.dot() as f64 / 4.0),
                    _ => e(phi_ab(m, ch)?.to_f64()),
                };
                let moved = char_act(m, ch)?;
                let lhs = theta_constant(&moved, &mt, acc)?;
                let base = theta_constant(ch, &tp, acc)?;
                r.push(format!("{name}_p{pi}_c{ci}"), lhs, root * phase * base, TOL_TRANSFORM);
                push_kappa8(&mut r, format!("{name}_kappa8_p{pi}_c{ci}"), lhs, base, m, ch, &tp)?;
            }
        }
    }
    Ok(r)
}

const E34: [f64; 4] = [0.0, 0.0, 1.0, 1.0];
const Z4: [f64; 4] = [0.0; 4];

/// The 2×2 system for `g₁₃`.
pub fn g13_suite(points: &[BallPoint], chars: &[Characteristic], acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let m = jmath(&NamedElem::G13.unitary()?);
    let minv = m.inverse();
    let anchor = cx(1.0, -1.0) / SQRT_2;
    let mut r = ResidualReport::new("g13");
    for (pi, v) in points.iter().enumerate() {
        let tp = tau_of_v(v)?;
        let mt = sp_act(&m, &tp)?;
        let s13 = chi_sqrt(&m, &tp, anchor)?;
        for (ci, ch) in chars.iter().enumerate() {
            let (a3, a4, b3, b4) = (ch.a[2] as f64, ch.a[3] as f64, ch.b[2] as f64, ch.b[3] as f64);
            let cd = char_act_rational(&minv, &real(ch))?;
            let t1 = theta_constant_real(&cd.shifted(&Z4, &E34), &tp, acc)?;
            let t2 = theta_constant_real(&cd.shifted(&E34, &Z4), &tp, acc)?;
            let k = s13 * e((a4 - a3) * (b4 - b3) / 8.0) * cx(0.5, 0.5);
            let l1 = theta_constant(ch, &mt, acc)?;
            let l2 = theta_constant_real(&real(ch).shifted(&E34, &E34), &mt, acc)?;
            r.push(format!("first_p{pi}_c{ci}"), l1, k * (e(-(a3 + a4) / 4.0) * t1 + t2), TOL_TRANSFORM);
            r.push(format!("second_p{pi}_c{ci}"), l2, k * (t1 - e((a3 + a4) / 4.0) * t2), TOL_TRANSFORM);
        }
    }
    Ok(r)
}

fn g12_coefficient(ch: &Characteristic) -> C64 {
    let (a3, a4, b3, b4) = (ch.a[2] as f64, ch.a[3] as f64, ch.b[2] as f64, ch.b[3] as f64);
    cx(0.5, 0.5)
        * e((-a3 + b3) / 8.0)
        * e((a3 - b4) * (a4 + b3) / 8.0)
        * e(a4 * b4 / 4.0)
        * e(-(a3 + a4 - b3 - b4) * (a3 + a4 + b3 + b4) / 16.0)
}

/// The `g₁₂` expansion into two theta constants.
pub fn g12_suite(points: &[BallPoint], chars: &[Characteristic], acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let m = jmath(&NamedElem::G12.unitary()?);
    let mf = m.as_dmat().to_c64();
    let anchor = cx(1.0, -1.0) / SQRT_2;
    let e3 = [0.0, 0.0, 1.0, 0.0];
    let e4 = [0.0, 0.0, 0.0, 1.0];
    let mut r = ResidualReport::new("g12");
    for (pi, v) in points.iter().enumerate() {
        let tp = tau_of_v(v)?;
        let mt = sp_act(&m, &tp)?;
        let s12 = chi_sqrt(&m, &tp, anchor)?;
        for (ci, ch) in chars.iter().enumerate() {
            let ab: Vec<f64> = ch.a.iter().chain(&ch.b).map(|&x| x as f64).collect();
            let row: Vec<f64> = (0..8).map(|j| (0..8).map(|i| ab[i] * mf[(i, j)].re).sum()).collect();
            let cd = RealCharacteristic::new(row[..4].to_vec(), row[4..].to_vec())?;
            let w = e((ch.a[3] - ch.b[3]) as f64 / 8.0);
            let t1 = theta_constant_real(&cd.shifted(&e4, &e3), &tp, acc)?;
            let t2 = theta_constant_real(&cd.shifted(&e3, &e4), &tp, acc)?;
            let rhs = s12 * g12_coefficient(ch) * (w * t1 + t2 / w);
            r.push(format!("p{pi}_c{ci}"), theta_constant(ch, &mt, acc)?, rhs, TOL_TRANSFORM);
        }
    }
    Ok(r)
}

/// `ϑ_j(g₁₂v)` and `ϑ_j(g₁₃v)` for `j = 0..3` as single theta constants.
pub fn g_actions_suite(points: &[BallPoint], acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let m12 = jmath(&NamedElem::G12.unitary()?);
    let m13 = jmath(&NamedElem::G13.unitary()?);
    let anchor = cx(1.0, -1.0) / SQRT_2;
    let mut r = ResidualReport::new("g_actions");
    for (pi, v) in points.iter().enumerate() {
        let tp = tau_of_v(v)?;
        let s12 = chi_sqrt(&m12, &tp, anchor)?;
        let s13 = chi_sqrt(&m13, &tp, anchor)?;
        let t12 = sp_act(&m12, &tp)?;
        let t13 = sp_act(&m13, &tp)?;
        for j in 0..4 {
            let nu = nu_char(j)?;
            let (target, ep) = if j == 3 {
                ("1101,1110".parse::<Characteristic>()?, cx(0.0, -1.0))
            } else {
                (nu.shifted(&[0, 0, 1, 0], &[0, 0, 0, 1]), cx(1.0, 0.0))
            };
            let rhs12 = s12 * cx(1.0, 1.0) * ep * theta_constant(&target, &tp, acc)?;
            r.push(format!("g12_nu{j}_p{pi}"), theta_constant(&nu, &t12, acc)?, rhs12, TOL_TRANSFORM);
            let rhs13 = s13 * cx(1.0, 1.0) * theta_constant(&nu.shifted(&[0, 0, 1, 1], &[0, 0, 0, 0]), &tp, acc)?;
            r.push(format!("g13_nu{j}_p{pi}"), theta_constant(&nu, &t13, acc)?, rhs13, TOL_TRANSFORM);
        }
    }
    Ok(r)
}

/// `B₂M₁B₁` in `Sp(4)`.
pub fn b2m1b1() -> Result<SymplecticElem> {
    Ok(NamedElem::B2
        .symplectic()?
        .compose(&NamedElem::M1.symplectic()?)
        .compose(&NamedElem::B1.symplectic()?))
}

/// Genus-2 action of `S₁` with half-integer image characteristics.
pub fn s1_suite(taus: &[SiegelPoint], chars: &[Characteristic], acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let s1 = NamedElem::S1.symplectic()?;
    let l = b2m1b1()?;
    let mut r = ResidualReport::new("s1");
    for (pi, tp) in taus.iter().enumerate() {
        let st = sp_act(&s1, tp)?;
        let t1 = sp_act(&l, tp)?;
        let root = tp.entry(0, 0).sqrt() * t1.entry(0, 0).sqrt();
        for (ci, ch) in chars.iter().enumerate() {
            let (a1, a2, b1, b2) = (ch.a[0] as f64, ch.a[1] as f64, ch.b[0] as f64, ch.b[1] as f64);
            let cd = RealCharacteristic::new(vec![a1 - b2, (a2 - b1) / 2.0], vec![(a2 + b1) / 2.0, a1 + b2])?;
            let en = cx(0.0, -1.0) * e((a2 + b1) * (b2 - a1) / 8.0 + a1 * b1 / 4.0);
            let rhs = en
                * root
                * (theta_constant_real(&cd, tp, acc)?
                    + e((b2 - a1) / 4.0) * theta_constant_real(&cd.shifted(&[0.0, 1.0], &[1.0, 0.0]), tp, acc)?);
            r.push(format!("p{pi}_c{ci}"), theta_constant(ch, &st, acc)?, rhs, TOL_TRANSFORM);
        }
    }
    Ok(r)
}

/// `ϑ_{a,b}(R₁v)` through the lifted `S₁` action.
pub fn r1_suite(points: &[BallPoint], chars: &[Characteristic], acc: &ThetaAccuracy) -> Result<ResidualReport> {
    let r1 = NamedElem::R1.unitary()?;
    let minv = jmath(&r1).inverse();
    let lift = natural_lift(&b2m1b1()?)?;
    let e1 = [1.0, 0.0, 0.0, 0.0];
    let e2 = [0.0, 1.0, 0.0, 0.0];
    let mut r = ResidualReport::new("r1");
    for (pi, v) in points.iter().enumerate() {
        let tp = tau_of_v(v)?;
        let t1 = sp_act(&lift, &tp)?;
        let moved = tau_of_v(&v.apply(&r1))?;
        let root = tp.entry(0, 0).sqrt() * t1.entry(0, 0).sqrt();
        for (ci, ch) in chars.iter().enumerate() {
            let (a1, a2, b1, b2) = (ch.a[0] as f64, ch.a[1] as f64, ch.b[0] as f64, ch.b[1] as f64);
            let cd = char_act_rational(&minv, &real(ch))?;
            let en = cx(0.0, -1.0) * e(-(a1 - b2) * (a2 + b1) / 8.0 + a1 * b1 / 4.0);
            let rhs = en
                * root
                * (theta_constant_real(&cd, &tp, acc)?
                    + e((b2 - a1) / 4.0) * theta_constant_real(&cd.shifted(&e2, &e1), &tp, acc)?);
            r.push(format!("p{pi}_c{ci}"), theta_constant(ch, &moved, acc)?, rhs, TOL_TRANSFORM);
        }
    }
    Ok(r)
}

/// Every transformation suite on the same points; characteristics are
/// drawn from `{0,1}` (monodromy, `R₁`) or `{−1,…,2}` (`g₁₂`, `g₁₃`, `S₁`).
pub fn transformation_suite<R: Rng + ?Sized>(
    points: &[BallPoint],
    rng: &mut R,
    chars_per_point: usize,
    acc: &ThetaAccuracy,
) -> Result<ResidualReport> {
    let binary = random_characteristics(rng, 4, chars_per_point, 0, 1);
    let wide = random_characteristics(rng, 4, chars_per_point, -1, 2);
    let genus2 = random_characteristics(rng, 2, chars_per_point, -1, 2);
    let taus2: Vec<SiegelPoint> = (0..points.len()).map(|_| random_siegel2(rng)).collect();
    let mut r = ResidualReport::new("transform");
    r.absorb(monodromy_suite(points, &binary, acc)?);
    r.absorb(g13_suite(points, &wide, acc)?);
    r.absorb(g12_suite(points, &wide, acc)?);
    r.absorb(g_actions_suite(points, acc)?);
    r.absorb(s1_suite(&taus2, &genus2, acc)?);
    r.absorb(r1_suite(points, &binary, acc)?);
    Ok(r)
}
