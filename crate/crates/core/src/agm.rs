//! Mean iterations (Gauss, Borchardt, the two Borwein means and the
//! quaternary Kato–Matsumoto mean) and their common limits.

use crate::error::{domain, Error, Result};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_TOL: f64 = 1e-15;
pub const MAX_ITERATIONS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MeanKind {
    Gauss2,
    Borchardt4,
    BorweinCubic2,
    BorweinQuartic2,
    KatoMatsumoto4,
}

impl MeanKind {
    pub const ALL: [MeanKind; 5] = [
        MeanKind::Gauss2,
        MeanKind::Borchardt4,
        MeanKind::BorweinCubic2,
        MeanKind::BorweinQuartic2,
        MeanKind::KatoMatsumoto4,
    ];

    pub fn arity(self) -> usize {
        match self {
            MeanKind::Gauss2 | MeanKind::BorweinCubic2 | MeanKind::BorweinQuartic2 => 2,
            MeanKind::Borchardt4 | MeanKind::KatoMatsumoto4 => 4,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            MeanKind::Gauss2 => "gauss",
            MeanKind::Borchardt4 => "borchardt",
            MeanKind::BorweinCubic2 => "cubic",
            MeanKind::BorweinQuartic2 => "quartic",
            MeanKind::KatoMatsumoto4 => "km",
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for MeanKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MeanKind::ALL
            .into_iter()
            .find(|k| k.short_name().eq_ignore_ascii_case(s) || format!("{k:?}").eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(format!("mean kind '{s}'")))
    }
}

/// Current terms `(a_n, b_n[, c_n, d_n])`, all strictly positive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgmState {
    terms: Vec<f64>,
}

impl AgmState {
    pub fn new(kind: MeanKind, terms: &[f64]) -> Result<Self> {
        if terms.len() != kind.arity() {
            return Err(domain(format!("{kind} takes {} terms, got {}", kind.arity(), terms.len())));
        }
        if let Some(t) = terms.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
            return Err(domain(format!("mean terms must be positive and finite, got {t}")));
        }
        let mut terms = terms.to_vec();
        if kind == MeanKind::KatoMatsumoto4 {
            terms.sort_by(|x, y| y.total_cmp(x));
        }
        Ok(AgmState { terms })
    }

    pub fn terms(&self) -> &[f64] {
        &self.terms
    }

    pub fn max(&self) -> f64 {
        self.terms.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.terms.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn gap(&self) -> f64 {
        self.max() - self.min()
    }

    pub fn scaled(&self, lambda: f64) -> AgmState {
        AgmState { terms: self.terms.iter().map(|t| t * lambda).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgmTrace {
    pub kind: MeanKind,
    pub states: Vec<AgmState>,
    pub limit: f64,
    pub iterations: usize,
}

impl AgmTrace {
    /// Rows `n, a, b[, c, d]` with a header line.
    pub fn to_csv(&self) -> String {
        let cols = ["a", "b", "c", "d"];
        let mut out = String::from("n");
        for c in &cols[..self.kind.arity()] {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (n, s) in self.states.iter().enumerate() {
            out.push_str(&n.to_string());
            for t in s.terms() {
                out.push_str(&format!(",{t:.17e}"));
            }
            out.push('\n');
        }
        out
    }
}

fn root(x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        Err(domain(format!("negative radicand {x}")))
    } else {
        Ok(x.sqrt())
    }
}

/// One step of the displayed recurrence for `kind`.
pub fn iterate_mean(kind: MeanKind, s: &AgmState) -> Result<AgmState> {
    let t = s.terms();
    if t.len() != kind.arity() {
        return Err(domain("state arity does not match the mean kind"));
    }
    let next = match kind {
        MeanKind::Gauss2 => vec![(t[0] + t[1]) / 2.0, root(t[0] * t[1])?],
        MeanKind::Borchardt4 => {
            let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
            vec![
                (a + b + c + d) / 4.0,
                (root(a * b)? + root(c * d)?) / 2.0,
                (root(a * c)? + root(b * d)?) / 2.0,
                (root(a * d)? + root(b * c)?) / 2.0,
            ]
        }
        MeanKind::BorweinCubic2 => {
            let (a, b) = (t[0], t[1]);
            vec![(a + 2.0 * b) / 3.0, (b * (a * a + a * b + b * b) / 3.0).cbrt()]
        }
        MeanKind::BorweinQuartic2 => {
            let (a, b) = (t[0], t[1]);
            vec![(a + 3.0 * b) / 4.0, root((a + b) / 2.0 * b)?]
        }
        MeanKind::KatoMatsumoto4 => {
            let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
            vec![
                (a + b + c + d) / 4.0,
                root((a + d) * (b + c))? / 2.0,
                root((a + c) * (b + d))? / 2.0,
                root((a + b) * (c + d))? / 2.0,
            ]
        }
    };
    Ok(AgmState { terms: next })
}

/// Iterates until the relative spread drops below `tol`.
pub fn mean_limit(kind: MeanKind, init: &AgmState, tol: f64) -> Result<AgmTrace> {
    if !(tol > 0.0) {
        return Err(domain("tolerance must be positive"));
    }
    let mut state = AgmState::new(kind, init.terms())?;
    let mut states = vec![state.clone()];
    while state.gap() >= tol * state.max() {
        if states.len() > MAX_ITERATIONS {
            return Err(Error::NonConvergence { what: "mean iteration", iterations: MAX_ITERATIONS });
        }
        state = iterate_mean(kind, &state)?;
        states.push(state.clone());
    }
    let limit = state.terms()[0];
    Ok(AgmTrace { kind, iterations: states.len() - 1, states, limit })
}

/// Convenience wrapper over [`mean_limit`] with the default tolerance.
pub fn agm(kind: MeanKind, terms: &[f64]) -> Result<f64> {
    Ok(mean_limit(kind, &AgmState::new(kind, terms)?, DEFAULT_TOL)?.limit)
}
