//! Command-line front end. `run` parses `argv`, prints the requested
//! computation and maps the outcome to an exit code:
//! 0 success, 1 failed verification, 2 usage error, 3 domain error.

use crate::agm::{mean_limit, AgmState, MeanKind, DEFAULT_TOL};
use crate::ball::{random_ball_point, tau_of_v, BallPoint};
use crate::error::{domain, Error, Result};
use crate::hypergeom::{fd_quarter, gauss_2f1, lauricella_fd, FDParams};
use crate::identities::{self as ids, ResidualReport};
use crate::periods::{homology_residual, period_vector, BranchPoints};
use crate::scalarcore::{agm_limit_constant, gamma34, QuadratureSpec, C64};
use crate::theta::{riemann_theta, Characteristic, SiegelPoint, ThetaAccuracy};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, clap::Args)]
pub struct CliConfig {
    /// Override the pass tolerance of every verification check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Relative truncation target for theta sums.
    #[arg(long, global = true, default_value_t = 1e-16)]
    pub theta_eps: f64,
    /// Gauss–Jacobi node count for period integrals.
    #[arg(long, global = true, default_value_t = 64)]
    pub nodes: usize,
    /// Seed for randomly generated test points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

impl CliConfig {
    fn validate(&self) -> Result<()> {
        if self.tol.is_some_and(|t| !(t > 0.0)) || !(self.theta_eps > 0.0) || self.nodes == 0 {
            return Err(domain("numeric overrides must be positive"));
        }
        Ok(())
    }

    fn accuracy(&self) -> Result<ThetaAccuracy> {
        ThetaAccuracy::new(self.theta_eps, ThetaAccuracy::default().max_radius)
    }

    fn quadrature(&self) -> Result<QuadratureSpec> {
        let spec = QuadratureSpec::default().with_nodes(self.nodes);
        spec.validate()?;
        Ok(spec)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Parser)]
#[command(name = "theta-agm", version, about = "Quaternary AGM, Lauricella F_D and theta constants on the 3-ball")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Iterate a mean to its limit: gauss, borchardt, cubic, quartic or km.
    Agm {
        kind: String,
        #[arg(required = true, allow_negative_numbers = true)]
        terms: Vec<f64>,
    },
    /// Lauricella F_D: `fd <alpha> <betas…> <gamma> -- <z…>`.
    Fd {
        #[arg(required = true, num_args = 3.., allow_negative_numbers = true)]
        params: Vec<f64>,
        /// Arguments, each `re` or `re,im`.
        #[arg(last = true, required = true)]
        z: Vec<String>,
    },
    /// Gauss hypergeometric 2F1(α, β; γ; z), z as `re` or `re,im`.
    F21 {
        #[arg(allow_hyphen_values = true)]
        alpha: f64,
        #[arg(allow_hyphen_values = true)]
        beta: f64,
        #[arg(allow_hyphen_values = true)]
        gamma: f64,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Theta constant with characteristic halves `a`, `b` (e.g. `1000 0100`).
    Theta {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Rows of τ as whitespace separated `re im` pairs.
        #[arg(long, conflicts_with = "ball")]
        tau_file: Option<PathBuf>,
        /// Ball point as 8 reals `re₁ im₁ … re₄ im₄`; τ = τ(v).
        #[arg(long, num_args = 8, allow_hyphen_values = true)]
        ball: Option<Vec<f64>>,
    },
    /// Period vector of the curve with branch points 0 < x₁ < x₂ < x₃ < 1.
    Period { x1: f64, x2: f64, x3: f64 },
    /// Branch points recovered from a ball point by theta quotients.
    Invert {
        #[arg(long, num_args = 8, required = true, allow_hyphen_values = true)]
        ball: Vec<f64>,
    },
    /// Run a verification suite (or `all`) and report residuals.
    Verify {
        suite: String,
        #[arg(long, num_args = 3)]
        x: Option<Vec<f64>>,
        #[arg(long, num_args = 4)]
        quad: Option<Vec<f64>>,
        /// Use this ball point instead of the period vector of `--x`.
        #[arg(long, num_args = 8, allow_hyphen_values = true)]
        ball: Option<Vec<f64>>,
    },
    /// κ, Γ(3/4), π/Γ(3/4)⁴ and ϑ₀₀(i).
    Constants,
}

pub const SUITES: [&str; 13] = [
    "inverse", "thomae", "table2", "thomae3", "abcd", "jacobi", "mean", "transform", "kernel", "periods", "main",
    "means", "cusps",
];

struct Rendered {
    text: String,
    json: Value,
    csv: String,
    pass: bool,
}

impl Rendered {
    fn ok(text: String, json: Value, csv: String) -> Self {
        Rendered { text, json, csv, pass: true }
    }

    fn report(r: &ResidualReport) -> Self {
        Rendered {
            text: r.to_string(),
            json: serde_json::to_value(r).expect("report serialization"),
            csv: r.to_csv(),
            pass: r.pass,
        }
    }
}

fn cjson(z: C64) -> Value {
    json!([z.re, z.im])
}

fn ctext(z: C64) -> String {
    format!("{:.16e} {:+.16e}i", z.re, z.im)
}

fn parse_c64(s: &str) -> Result<C64> {
    let bad = || domain(format!("cannot parse complex number '{s}'"));
    match s.split_once(',') {
        Some((re, im)) => Ok(C64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?)),
        None => Ok(C64::new(s.trim().parse().map_err(|_| bad())?, 0.0)),
    }
}

fn parse_tau_file(path: &PathBuf) -> Result<SiegelPoint> {
    let text = std::fs::read_to_string(path).map_err(|e| domain(format!("cannot read {}: {e}", path.display())))?;
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|t| t.parse().map_err(|_| domain(format!("bad number '{t}' in τ file")))).collect())
        .collect::<Result<_>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != 2 * n) {
        return Err(domain(format!("τ file must have n rows of 2n reals, got {n} rows")));
    }
    SiegelPoint::new(nalgebra::DMatrix::from_fn(n, n, |i, j| C64::new(rows[i][2 * j], rows[i][2 * j + 1])))
}

fn cmd_agm(kind: &str, terms: &[f64]) -> Result<Rendered> {
    let kind: MeanKind = kind.parse().map_err(|_| domain(format!("unknown mean kind '{kind}'")))?;
    let trace = mean_limit(kind, &AgmState::new(kind, terms)?, DEFAULT_TOL)?;
    let mut text = format!("{kind} limit {:.17e} after {} iterations\n", trace.limit, trace.iterations);
    let mut json = json!({ "kind": kind.short_name(), "limit": trace.limit, "iterations": trace.iterations,
        "states": trace.states.iter().map(|s| s.terms().to_vec()).collect::<Vec<_>>() });
    if kind == MeanKind::KatoMatsumoto4 {
        let s = trace.states[0].terms();
        let fd = fd_quarter([s[1], s[2], s[3]].map(|t| 1.0 - (t / s[0]).powi(2)))?;
        let _ = writeln!(text, "a0/M {:.17e}  F_D^2 {:.17e}", s[0] / trace.limit, fd * fd);
        json["a0_over_limit"] = json!(s[0] / trace.limit);
        json["fd_squared"] = json!(fd * fd);
    }
    text += &trace.to_csv();
    Ok(Rendered::ok(text, json, trace.to_csv()))
}

fn cmd_fd(params: &[f64], z: &[String]) -> Result<Rendered> {
    let (alpha, gamma) = (params[0], params[params.len() - 1]);
    let betas: Vec<C64> = params[1..params.len() - 1].iter().map(|b| C64::new(*b, 0.0)).collect();
    let z: Vec<C64> = z.iter().map(|s| parse_c64(s)).collect::<Result<_>>()?;
    if z.len() != betas.len() {
        return Err(domain(format!("{} betas but {} arguments", betas.len(), z.len())));
    }
    let p = FDParams::new(C64::new(alpha, 0.0), betas, C64::new(gamma, 0.0))?;
    let val = lauricella_fd(&p, &z)?;
    Ok(Rendered::ok(format!("F_D = {}\n", ctext(val)), json!({ "value": cjson(val) }), format!("re,im\n{:e},{:e}\n", val.re, val.im)))
}

fn cmd_f21(alpha: f64, beta: f64, gamma: f64, z: &str) -> Result<Rendered> {
    let c = |x: f64| C64::new(x, 0.0);
    let val = gauss_2f1(c(alpha), c(beta), c(gamma), parse_c64(z)?)?;
    Ok(Rendered::ok(format!("2F1 = {}\n", ctext(val)), json!({ "value": cjson(val) }), format!("re,im\n{:e},{:e}\n", val.re, val.im)))
}

fn cmd_theta(a: &str, b: &str, tau_file: Option<&PathBuf>, ball: Option<&[f64]>, cfg: &CliConfig) -> Result<Rendered> {
    let ch: Characteristic = format!("{a};{b}").parse()?;
    let tp = match (tau_file, ball) {
        (Some(path), _) => parse_tau_file(path)?,
        (None, Some(v)) => tau_of_v(&BallPoint::from_pairs(v)?)?,
        (None, None) => SiegelPoint::i_identity(ch.dim()),
    };
    let val = riemann_theta(&ch, &vec![C64::new(0.0, 0.0); tp.dim()], &tp, &cfg.accuracy()?)?;
    Ok(Rendered::ok(
        format!("theta[{ch}] = {}\n", ctext(val)),
        json!({ "characteristic": ch.to_string(), "value": cjson(val) }),
        format!("re,im\n{:e},{:e}\n", val.re, val.im),
    ))
}

fn cmd_period(x: [f64; 3], cfg: &CliConfig) -> Result<Rendered> {
    let bp = BranchPoints::new(x[0], x[1], x[2])?;
    let pv = period_vector(&bp, &cfg.quadrature()?)?;
    let mut text = String::new();
    let mut csv = String::from("j,re,im\n");
    for (j, z) in pv.v.iter().enumerate() {
        let _ = writeln!(text, "v{} = {}", j + 1, ctext(*z));
        let _ = writeln!(csv, "{},{:e},{:e}", j + 1, z.re, z.im);
    }
    let _ = writeln!(text, "v*Uv = {:.16e}\nvTUv = {}", pv.hermitian(), ctext(pv.quadratic()));
    let _ = writeln!(text, "calibration = {:.15}\nerror indicator = {:.3e}", pv.calibration, pv.error);
    let json = json!({
        "x": x, "v": pv.v.iter().map(|z| cjson(*z)).collect::<Vec<_>>(),
        "cycles": pv.cycles.iter().map(|z| cjson(*z)).collect::<Vec<_>>(),
        "hermitian": pv.hermitian(), "quadratic": cjson(pv.quadratic()),
        "calibration": pv.calibration, "error": pv.error,
    });
    Ok(Rendered::ok(text, json, csv))
}

fn cmd_invert(ball: &[f64], cfg: &CliConfig) -> Result<Rendered> {
    let v = BallPoint::from_pairs(ball)?;
    let x = ids::x_of_v(&v, &cfg.accuracy()?)?;
    let text = x.iter().enumerate().map(|(j, z)| format!("x{} = {}\n", j + 1, ctext(*z))).collect();
    let csv = std::iter::once("j,re,im\n".to_string())
        .chain(x.iter().enumerate().map(|(j, z)| format!("{},{:e},{:e}\n", j + 1, z.re, z.im)))
        .collect();
    Ok(Rendered::ok(text, json!({ "x": x.iter().map(|z| cjson(*z)).collect::<Vec<_>>() }), csv))
}

fn cmd_constants() -> Result<Rendered> {
    let k = ids::kappa();
    let g = gamma34();
    let p = agm_limit_constant();
    let th = crate::theta::jacobi_theta(0, 0, C64::new(0.0, 1.0))?.re;
    let text = format!("kappa = {k:.17e}\nGamma(3/4) = {g:.17e}\npi/Gamma(3/4)^4 = {p:.17e}\ntheta00(i) = {th:.17e}\n");
    let json = json!({ "kappa": k, "gamma_3_4": g, "pi_over_gamma_3_4_pow4": p, "theta00_i": th });
    let csv = format!("name,value\nkappa,{k:e}\ngamma_3_4,{g:e}\npi_over_gamma_3_4_pow4,{p:e}\ntheta00_i,{th:e}\n");
    Ok(Rendered::ok(text, json, csv))
}

fn run_suite(name: &str, x: &BranchPoints, quad: [f64; 4], ball: Option<&BallPoint>, cfg: &CliConfig) -> Result<ResidualReport> {
    let acc = cfg.accuracy()?;
    let spec = cfg.quadrature()?;
    let v = match ball {
        Some(v) => *v,
        None => period_vector(x, &spec)?.ball_point()?,
    };
    let mut rng = cfg.rng();
    Ok(match name {
        "inverse" => ids::verify_inverse(x, &v, &acc)?,
        "thomae" => ids::verify_thomae(x, &v, &acc)?,
        "table2" => ids::verify_table2(x, &v, &acc)?,
        "thomae3" => ids::verify_thomae3(&v, &acc)?,
        "abcd" => ids::verify_abcd(x, &v, &acc)?,
        "jacobi" => ids::verify_jacobi(x, &v, &acc)?,
        "mean" => {
            let mut r = ResidualReport::new("mean");
            let mut own = ids::mean_transform_check(&v, ball.is_none(), &acc)?;
            own.suite = "point".into();
            r.absorb(own);
            let mut random = ids::mean_transform_check(&random_ball_point(&mut rng), false, &acc)?;
            random.suite = "random".into();
            r.absorb(random);
            r
        }
        "transform" => {
            let pts: Vec<BallPoint> = (0..3).map(|_| random_ball_point(&mut rng)).collect();
            ids::transformation_suite(&pts, &mut rng, 3, &acc)?
        }
        "kernel" => ids::kernel_suite(&mut rng, 20, &acc)?,
        "periods" => {
            let mut r = ResidualReport::new("periods");
            let h = homology_residual(x, &spec)?;
            r.push("homology", C64::new(h, 0.0), C64::new(0.0, 0.0), 1e-7);
            let pi = std::f64::consts::PI;
            let [v1, v2, _, _] = *v.coords();
            r.push("v1_fd", v1, C64::new(2f64.sqrt() * pi * fd_quarter(x.x())?, 0.0), ids::TOL_PERIOD);
            r.push("v2_fd", v2, C64::new(-2.0 * pi * fd_quarter(x.x().map(|t| 1.0 - t))?, 0.0), ids::TOL_PERIOD);
            r
        }
        "main" => ids::km_main(quad[0], quad[1], quad[2], quad[3], &acc, &spec)?,
        "means" => {
            let mut r = ResidualReport::new("means");
            r.absorb(ids::gauss_main(quad[0], quad[1])?);
            r.absorb(ids::borwein_main(quad[0], quad[1])?);
            r
        }
        "cusps" => {
            let mut r = ResidualReport::new("cusps");
            let ok = ids::cusp_chain_holds()?;
            let f = |b: bool| C64::new(if b { 1.0 } else { 0.0 }, 0.0);
            r.push("chain", f(ok), f(true), 0.0);
            r
        }
        other => return Err(Error::Unknown(format!("suite '{other}'; expected one of {} or all", SUITES.join(", ")))),
    })
}

fn cmd_verify(suite: &str, x: Option<&[f64]>, quad: Option<&[f64]>, ball: Option<&[f64]>, cfg: &CliConfig) -> Result<Rendered> {
    let x = match x {
        Some(x) => BranchPoints::from_slice(x)?,
        None => BranchPoints::new(0.2, 0.5, 0.8)?,
    };
    let quad: [f64; 4] = match quad {
        Some(q) => [q[0], q[1], q[2], q[3]],
        None => [1.0, 0.8, 0.6, 0.4],
    };
    let ball = ball.map(BallPoint::from_pairs).transpose()?;
    let mut report = if suite == "all" {
        let mut all = ResidualReport::new("all");
        for s in SUITES {
            all.absorb(run_suite(s, &x, quad, ball.as_ref(), cfg)?);
        }
        all
    } else {
        run_suite(suite, &x, quad, ball.as_ref(), cfg)?
    };
    if let Some(t) = cfg.tol {
        report = report.with_tolerance(t);
    }
    Ok(Rendered::report(&report))
}

fn dispatch(cli: &Cli) -> Result<Rendered> {
    let cfg = &cli.config;
    cfg.validate()?;
    match &cli.command {
        Command::Agm { kind, terms } => cmd_agm(kind, terms),
        Command::Fd { params, z } => cmd_fd(params, z),
        Command::F21 { alpha, beta, gamma, z } => cmd_f21(*alpha, *beta, *gamma, z),
        Command::Theta { a, b, tau_file, ball } => cmd_theta(a, b, tau_file.as_ref(), ball.as_deref(), cfg),
        Command::Period { x1, x2, x3 } => cmd_period([*x1, *x2, *x3], cfg),
        Command::Invert { ball } => cmd_invert(ball, cfg),
        Command::Verify { suite, x, quad, ball } => cmd_verify(suite, x.as_deref(), quad.as_deref(), ball.as_deref(), cfg),
        Command::Constants => cmd_constants(),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    let body = match cli.config.format {
        Format::Text => out.text,
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
        Format::Csv => out.csv,
    };
    match &cli.config.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 3;
            }
        }
        None => print!("{body}"),
    }
    if out.pass {
        0
    } else {
        1
    }
}
