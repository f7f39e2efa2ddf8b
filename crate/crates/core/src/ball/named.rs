use super::{j_matrix, u_matrix, SymplecticElem, UnitaryElem};
use crate::error::{domain, Error, Result};
use crate::scalarcore::{DMat, DyadicGaussian};
use std::fmt;
use std::str::FromStr;

/// Built-in matrices. The first six are unitary `4×4`, `N`, `Mrho` and
/// `Jswap` are `8×8` symplectic, `B1`, `B2`, `M1`, `S1` are `4×4`
/// symplectic and `T` is the `2×2` block of `M1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedElem {
    G01,
    G12,
    G13,
    G23,
    R,
    R1,
    N,
    Mrho,
    Jswap,
    B1,
    B2,
    M1,
    S1,
    T,
}

impl NamedElem {
    pub const ALL: [NamedElem; 14] = [
        NamedElem::G01,
        NamedElem::G12,
        NamedElem::G13,
        NamedElem::G23,
        NamedElem::R,
        NamedElem::R1,
        NamedElem::N,
        NamedElem::Mrho,
        NamedElem::Jswap,
        NamedElem::B1,
        NamedElem::B2,
        NamedElem::M1,
        NamedElem::S1,
        NamedElem::T,
    ];

    pub fn is_unitary(self) -> bool {
        matches!(self, NamedElem::G01 | NamedElem::G12 | NamedElem::G13 | NamedElem::G23 | NamedElem::R | NamedElem::R1)
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedElem::G01 => "g01",
            NamedElem::G12 => "g12",
            NamedElem::G13 => "g13",
            NamedElem::G23 => "g23",
            NamedElem::R => "R",
            NamedElem::R1 => "R1",
            NamedElem::N => "N",
            NamedElem::Mrho => "Mrho",
            NamedElem::Jswap => "J",
            NamedElem::B1 => "B1",
            NamedElem::B2 => "B2",
            NamedElem::M1 => "M1",
            NamedElem::S1 => "S1",
            NamedElem::T => "T",
        }
    }

    pub fn unitary(self) -> Result<UnitaryElem> {
        if !self.is_unitary() {
            return Err(domain(format!("{self} is not a unitary element")));
        }
        UnitaryElem::new(builtin(self))
    }

    pub fn symplectic(self) -> Result<SymplecticElem> {
        if self.is_unitary() || self == NamedElem::T {
            return Err(domain(format!("{self} is not a symplectic element")));
        }
        SymplecticElem::new(builtin(self))
    }
}

impl fmt::Display for NamedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NamedElem::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(format!("matrix name '{s}'")))
    }
}

fn q(re: i64, im: i64, k: u32) -> DyadicGaussian {
    DyadicGaussian::frac(re, im, k)
}

fn z() -> DyadicGaussian {
    DyadicGaussian::zero()
}

fn o() -> DyadicGaussian {
    DyadicGaussian::one()
}

fn rows(r: [[DyadicGaussian; 4]; 4]) -> DMat {
    DMat::from_fn(4, 4, |i, j| r[i][j].clone())
}

/// The exact entries of a built-in matrix.
pub fn builtin(which: NamedElem) -> DMat {
    let h = q(1, 1, 1);
    let hb = q(1, -1, 1);
    let i2 = DMat::identity(2);
    match which {
        NamedElem::G01 => rows([
            [o(), z(), z(), z()],
            [q(-1, 1, 0), o(), q(-1, -1, 0), z()],
            [q(1, 1, 0), z(), q(0, 1, 0), z()],
            [z(), z(), z(), o()],
        ]),
        NamedElem::G12 => i2.direct_sum(&DMat::from_fn(2, 2, |r, c| if r == 1 && c == 0 { -h.clone() } else { h.clone() })),
        NamedElem::G13 => i2.direct_sum(&DMat::from_fn(2, 2, |r, c| if r == c { h.clone() } else { hb.clone() })),
        NamedElem::G23 => DMat::diag(&[o(), o(), o(), q(0, 1, 0)]),
        NamedElem::R => rows([
            [o(), z(), z(), z()],
            [z(), q(2, 0, 0), z(), z()],
            [z(), z(), o(), q(0, -1, 0)],
            [z(), z(), q(0, -1, 0), o()],
        ])
        .scale(&h),
        NamedElem::R1 => DMat::diag(&[h.clone(), q(1, 1, 0), o(), o()]),
        NamedElem::N => {
            let d = DMat::diag(&[o(), z(), o(), o()]);
            let e = DMat::diag(&[z(), o(), z(), z()]);
            DMat::from_blocks(&d, &(-&e), &e, &d)
        }
        NamedElem::Mrho => {
            let u = u_matrix();
            DMat::from_blocks(&DMat::zeros(4, 4), &(-&u), &u, &DMat::zeros(4, 4))
        }
        NamedElem::Jswap => j_matrix(4),
        NamedElem::B1 => DMat::from_ints(&[&[0, 0, 1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1]]),
        NamedElem::B2 => DMat::from_ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]),
        NamedElem::T => DMat::from_ints(&[&[1, 1], &[1, -1]]).scale(&q(1, 0, 1)),
        NamedElem::M1 => {
            let t = builtin(NamedElem::T);
            t.direct_sum(&DMat::from_ints(&[&[1, 1], &[1, -1]]))
        }
        NamedElem::S1 => {
            let half = q(1, 0, 1);
            rows([
                [o(), z(), z(), o()],
                [z(), half.clone(), half.clone(), z()],
                [z(), -half.clone(), half, z()],
                [-o(), z(), z(), o()],
            ])
        }
    }
}

/// Lifts `[[A, B], [C, D]] ∈ Sp(4)` to `Sp(8)` acting on coordinates 1, 2
/// and as the identity on 3, 4.
pub fn natural_lift(m: &SymplecticElem) -> Result<SymplecticElem> {
    if m.genus() != 2 {
        return Err(domain("the lift takes a genus-2 matrix"));
    }
    let (a, b, c, d) = m.blocks();
    let i2 = DMat::identity(2);
    let o2 = DMat::zeros(2, 2);
    SymplecticElem::new(DMat::from_blocks(&a.direct_sum(&i2), &b.direct_sum(&o2), &c.direct_sum(&o2), &d.direct_sum(&i2)))
}

/// `g_{j,k} = (g_{k−1}⋯g_{j+1}) g_j (g_{k−1}⋯g_{j+1})⁻¹` built from
/// `g01, g12, g23`, for `0 ≤ j < k ≤ 3`.
pub fn half_turn(j: usize, k: usize) -> Result<UnitaryElem> {
    if !(j < k && k <= 3) {
        return Err(domain(format!("half-turn indices ({j}, {k}) need 0 ≤ j < k ≤ 3")));
    }
    let base = [NamedElem::G01, NamedElem::G12, NamedElem::G23];
    let g: Vec<UnitaryElem> = base.iter().map(|n| n.unitary()).collect::<Result<_>>()?;
    let conj = (j + 1..k).rev().fold(UnitaryElem::identity(), |acc, m| acc.compose(&g[m]));
    Ok(conj.compose(&g[j]).compose(&conj.inverse()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitaries_preserve_form() {
        for n in NamedElem::ALL.into_iter().filter(|n| n.is_unitary()) {
            assert!(n.unitary().is_ok(), "{n}");
        }
    }

    #[test]
    fn symplectics_preserve_form() {
        for n in NamedElem::ALL.into_iter().filter(|n| !n.is_unitary() && *n != NamedElem::T) {
            assert!(n.symplectic().is_ok(), "{n}");
        }
    }

    #[test]
    fn conjugated_half_turn_is_g13() {
        assert_eq!(half_turn(1, 3).unwrap(), NamedElem::G13.unitary().unwrap());
        assert_eq!(half_turn(0, 1).unwrap(), NamedElem::G01.unitary().unwrap());
        assert!(half_turn(2, 2).is_err());
        assert!(half_turn(1, 4).is_err());
    }

    #[test]
    fn half_turn_orders() {
        // g23 = diag(1,1,1,i) has order 4, the transvection-like ones order 4 too
        let g = NamedElem::G23.unitary().unwrap();
        assert_eq!(g.pow(4), UnitaryElem::identity());
        assert_ne!(g.pow(2), UnitaryElem::identity());
    }

    #[test]
    fn lift_shape() {
        let l = natural_lift(&NamedElem::B1.symplectic().unwrap()).unwrap();
        assert_eq!(l.genus(), 4);
        assert!(natural_lift(&NamedElem::N.symplectic().unwrap()).is_err());
    }

    #[test]
    fn names_round_trip() {
        for n in NamedElem::ALL {
            assert_eq!(n.name().parse::<NamedElem>().unwrap(), n);
        }
        assert!("g99".parse::<NamedElem>().is_err());
    }
}
