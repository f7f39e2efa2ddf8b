use crate::scalarcore::C64;
use serde::Serialize;
use std::fmt;

/// One `lhs = rhs` comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualCheck {
    pub id: String,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ResidualCheck {
    pub fn lhs(&self) -> C64 {
        C64::new(self.lhs_re, self.lhs_im)
    }

    pub fn rhs(&self) -> C64 {
        C64::new(self.rhs_re, self.rhs_im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub suite: String,
    pub checks: Vec<ResidualCheck>,
    pub pass: bool,
}

impl ResidualReport {
    pub fn new(suite: impl Into<String>) -> Self {
        ResidualReport { suite: suite.into(), checks: Vec::new(), pass: true }
    }

    fn record(&mut self, id: String, lhs: C64, rhs: C64, residual: f64, tol: f64) {
        let pass = residual <= tol;
        self.pass &= pass;
        self.checks.push(ResidualCheck {
            id,
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            residual,
            tol,
            pass,
        });
    }

    /// Absolute residual, relative once `|rhs| > 1`.
    pub fn push(&mut self, id: impl Into<String>, lhs: C64, rhs: C64, tol: f64) {
        let r = (lhs - rhs).norm() / rhs.norm().max(1.0);
        self.record(id.into(), lhs, rhs, r, tol);
    }

    /// Residual relative to `|rhs|` regardless of size.
    pub fn push_relative(&mut self, id: impl Into<String>, lhs: C64, rhs: C64, tol: f64) {
        let r = (lhs - rhs).norm() / rhs.norm();
        self.record(id.into(), lhs, rhs, if r.is_nan() { f64::INFINITY } else { r }, tol);
    }

    /// Appends another report's checks with ids prefixed by its suite.
    pub fn absorb(&mut self, other: ResidualReport) {
        for mut c in other.checks {
            c.id = format!("{}/{}", other.suite, c.id);
            self.pass &= c.pass;
            self.checks.push(c);
        }
    }

    /// Re-judges every check against a single tolerance.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        for c in &mut self.checks {
            c.tol = tol;
            c.pass = c.residual <= tol;
        }
        self.pass = self.checks.iter().all(|c| c.pass);
        self
    }

    /// `id,lhs_re,lhs_im,rhs_re,rhs_im,residual,tol,pass` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,lhs_re,lhs_im,rhs_re,rhs_im,residual,tol,pass\n");
        for c in &self.checks {
            out += &format!(
                "{},{:e},{:e},{:e},{:e},{:e},{:e},{}\n",
                c.id, c.lhs_re, c.lhs_im, c.rhs_re, c.rhs_im, c.residual, c.tol, c.pass
            );
        }
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ResidualCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&ResidualCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.checks.iter().filter(|c| c.pass).count();
        writeln!(
            f,
            "{}: {}/{} pass, max residual {:.3e}",
            self.suite,
            ok,
            self.checks.len(),
            self.max_residual()
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<4} {:<28} residual {:.3e} (tol {:.0e})",
                if c.pass { "ok" } else { "FAIL" },
                c.id,
                c.residual,
                c.tol
            )?;
        }
        Ok(())
    }
}
