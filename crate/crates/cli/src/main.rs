use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fqlab::cone::{Direction, ProperCone};
use fqlab::crystal::{find_real_roots, real_rootedness_audit, restrict_to_line};
use fqlab::harness::{
    change_of_variables_check, gaussian_tail_bound, gaussian_tail_integral_check,
    lighthouse_check, orbit_closure_check, verify_summation, GaussianTest,
};
use fqlab::intmat::{IntMatrix, MatrixJson};
use fqlab::laurent::LaurentPoly;
use fqlab::lycheck::{essentially_ly_verify, ly_falsify, regularity_check};
use fqlab::surface::{cone_support_scan, spectrum_table, trace_curve};
use serde::Serialize;
use serde_json::{json, Value};

mod output;
mod plot;

use output::Emitter;

/// Exit status for malformed input.
const INPUT_ERROR: u8 = 2;

#[derive(Parser, Debug, Serialize)]
#[command(name = "fqlab", version, about = "Fourier quasicrystals from Lee–Yang polynomials")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Tolerance; each command has its own default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Quadrature and tracing resolution, a power of two ≥ 64.
    #[arg(long, global = true, default_value_t = 256, value_parser = parse_resolution)]
    resolution: usize,
    /// Window `a,b` on the line.
    #[arg(long, global = true, value_parser = parse_window)]
    window: Option<(f64, f64)>,
    /// Direction, comma separated.
    #[arg(long, global = true, value_parser = parse_ell)]
    ell: Option<Floats>,
    /// Lattice radius ‖k‖∞ for spectrum tables.
    #[arg(long, global = true, default_value_t = 6)]
    k_radius: i64,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Search random fibers for a Lee–Yang violation.
    CheckLy {
        poly: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        fibers: usize,
        /// Check `p(z^A)` for this matrix instead of `p`.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Smallest gradient norm on the torus zero set.
    Regularity { poly: PathBuf },
    /// Smith normal form `A = S·D·T`.
    Snf { matrix: PathBuf },
    /// Integer `B` with `A·B = (d·I | 0)`.
    Pullback { matrix: PathBuf },
    /// Lattice points of `C ∪ −C` with `|⟨ℓ,k⟩| ≤ R`, as CSV.
    ConeEnum {
        cone: PathBuf,
        #[arg(long)]
        radius: f64,
    },
    /// Real zeros of `t ↦ p(e^{2πitℓ})`, as CSV.
    Roots { poly: PathBuf },
    /// Compare real root count with the argument principle.
    Audit {
        poly: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        height: f64,
    },
    /// Torus curve as CSV.
    Trace { poly: PathBuf },
    /// Spectrum table as CSV.
    Fourier { poly: PathBuf },
    /// Check that the spectrum is supported in a cone.
    ScanCone {
        poly: PathBuf,
        #[arg(long)]
        cone: PathBuf,
    },
    /// Summation formula with a Gaussian test function.
    VerifySummation {
        poly: PathBuf,
        #[command(flatten)]
        gauss: GaussArgs,
        /// Defaults to the positive orthant.
        #[arg(long)]
        cone: Option<PathBuf>,
        #[arg(long, default_value_t = 8.0)]
        t_max: f64,
        #[arg(long, default_value_t = 16.0)]
        r_max: f64,
    },
    /// Cone support plus summation check.
    VerifyLighthouse {
        poly: PathBuf,
        #[arg(long)]
        cone: PathBuf,
    },
    /// Compare spectra before and after a monomial substitution.
    VerifyCov {
        poly: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Pulled-back polynomial; required when `det A ≠ ±1`.
        #[arg(long)]
        pulled: Option<PathBuf>,
    },
    /// Lattice Gaussian tail bound and tail integral bound.
    VerifyGauss {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 4.0)]
        big_n: f64,
        #[arg(long, default_value_t = 1.5)]
        radius: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Center of the lattice sum, defaults to the origin.
        #[arg(long, value_parser = parse_ell)]
        shift: Option<Floats>,
    },
    /// Closure of the orbit `{tℓ mod 1 : t ∈ Λ}` in the torus curve.
    VerifyOrbit {
        poly: PathBuf,
        #[arg(long, default_value_t = 0.02)]
        delta: f64,
        #[arg(long, default_value_t = 2000.0)]
        t_max: f64,
    },
    /// SVG of the torus curve in the fundamental domain.
    Plot { poly: PathBuf },
}

#[derive(Args, Debug, Serialize)]
struct GaussArgs {
    #[arg(long, default_value_t = 0.0)]
    center: f64,
    #[arg(long, default_value_t = 1.0)]
    width: f64,
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| {
            let x: f64 = v.trim().parse().map_err(|e| format!("{v:?}: {e}"))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("{v:?} is not finite"))
            }
        })
        .collect()
}

/// Comma-separated reals, kept as one value so clap does not split it.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
struct Floats(Vec<f64>);

fn parse_ell(s: &str) -> Result<Floats, String> {
    let v = parse_list(s)?;
    if v.iter().all(|&x| x == 0.0) {
        return Err("vector must be nonzero".into());
    }
    Ok(Floats(v))
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    match parse_list(s)?.as_slice() {
        [a, b] if a < b => Ok((*a, *b)),
        [_, _] => Err("window needs a < b".into()),
        _ => Err("window is two numbers a,b".into()),
    }
}

fn parse_resolution(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 64 || !n.is_power_of_two() || n > 65_536 {
        return Err("resolution must be a power of two in [64, 65536]".into());
    }
    Ok(n)
}

/// Failure before any verdict, mapped to an exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Runtime(String),
}

impl From<fqlab::Error> for Failure {
    fn from(e: fqlab::Error) -> Self {
        use fqlab::Error as E;
        match e {
            E::Invalid(_)
            | E::DimensionMismatch { .. }
            | E::Domain(_)
            | E::Singular
            | E::RankDeficient { .. }
            | E::ZeroPolynomial
            | E::NotInDualInterior => Failure::Input(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn with_path(path: &Path) -> impl Fn(fqlab::Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_poly(path: &Path) -> Result<LaurentPoly, Failure> {
    LaurentPoly::from_json(&read(path)?).map_err(with_path(path))
}

fn load_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    IntMatrix::from_json(&read(path)?).map_err(with_path(path))
}

fn load_cone(path: &Path) -> Result<ProperCone, Failure> {
    ProperCone::new(load_matrix(path)?).map_err(with_path(path))
}

impl Cli {
    fn inputs(&self) -> Vec<&Path> {
        use Command::*;
        let mut v: Vec<&Path> = Vec::new();
        match &self.command {
            CheckLy { poly, matrix, .. } => {
                v.push(poly);
                v.extend(matrix.as_deref());
            }
            Regularity { poly } | Roots { poly } | Audit { poly, .. } | Trace { poly }
            | Fourier { poly } | VerifyOrbit { poly, .. } | Plot { poly } => v.push(poly),
            Snf { matrix } | Pullback { matrix } => v.push(matrix),
            ConeEnum { cone, .. } => v.push(cone),
            ScanCone { poly, cone } | VerifyLighthouse { poly, cone } => {
                v.push(poly);
                v.push(cone);
            }
            VerifySummation { poly, cone, .. } => {
                v.push(poly);
                v.extend(cone.as_deref());
            }
            VerifyCov { poly, matrix, pulled } => {
                v.push(poly);
                v.push(matrix);
                v.extend(pulled.as_deref());
            }
            VerifyGauss { .. } => {}
        }
        v
    }

    fn ell(&self, n: usize) -> Result<Direction, Failure> {
        let entries = match &self.ell {
            Some(e) => e.0.clone(),
            None if n == 2 => vec![1.0, std::f64::consts::SQRT_2],
            None => return Err(Failure::Input(format!("--ell is required for arity {n}"))),
        };
        if entries.len() != n {
            return Err(Failure::Input(format!(
                "--ell has {} entries, the polynomial has arity {n}",
                entries.len()
            )));
        }
        let d = Direction::new(entries)?;
        d.lint_independence();
        Ok(d.asserted())
    }

    fn window(&self) -> (f64, f64) {
        self.window.unwrap_or((0.0, 100.0))
    }

    fn tol(&self, default: f64) -> Result<f64, Failure> {
        match self.tol {
            Some(t) if !(t > 0.0 && t.is_finite()) => {
                Err(Failure::Input("--tol must be positive".into()))
            }
            Some(t) => Ok(t),
            None => Ok(default),
        }
    }
}

/// JSON report with verdict, or raw text artifact.
enum Outcome {
    Report { pass: bool, tolerances: Value, body: Value },
    Text { content: String, pass: bool },
}

fn report<T: Serialize>(pass: bool, tolerances: Value, body: &T) -> Outcome {
    Outcome::Report {
        pass,
        tolerances,
        body: serde_json::to_value(body).expect("reports serialize"),
    }
}

fn matrix_value(m: &IntMatrix) -> Value {
    serde_json::to_value(MatrixJson::from(m)).expect("matrix serializes")
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    use Command::*;
    let res = cli.resolution;
    Ok(match &cli.command {
        CheckLy { poly, fibers, matrix } => {
            let p = load_poly(poly)?;
            let r = match matrix {
                Some(m) => essentially_ly_verify(&p, &load_matrix(m)?, *fibers, cli.seed)?,
                None => ly_falsify(&p, *fibers, cli.seed)?,
            };
            report(
                r.pass(),
                json!({"boundary": fqlab::lycheck::BOUNDARY_TOL, "verify": fqlab::lycheck::VERIFY_TOL}),
                &r,
            )
        }
        Regularity { poly } => {
            let r = regularity_check(&load_poly(poly)?, res)?;
            report(r.pass, json!({"threshold": r.threshold}), &r)
        }
        Snf { matrix } => {
            let a = load_matrix(matrix)?;
            let snf = a.smith_normal_form()?;
            let verified = snf.verify(&a)?;
            if !verified {
                return Err(Failure::Runtime("S·D·T does not reproduce the input".into()));
            }
            let body = json!({
                "s": matrix_value(&snf.s),
                "d": matrix_value(&snf.d),
                "t": matrix_value(&snf.t),
                "invariant_factors": snf.invariant_factors(),
                "verified": verified,
            });
            report(true, json!({}), &body)
        }
        Pullback { matrix } => {
            let a = load_matrix(matrix)?;
            let cert = a.pullback_certificate()?;
            let verified = cert.verify(&a)?;
            let body = json!({"b": matrix_value(&cert.b), "d": cert.d, "verified": verified});
            report(verified, json!({}), &body)
        }
        ConeEnum { cone, radius } => {
            let c = load_cone(cone)?;
            let ell = cli.ell(c.dim())?;
            let pts = c.enumerate_truncated(&ell, *radius)?;
            Outcome::Text { content: output::cone_csv(&ell, &pts), pass: true }
        }
        Roots { poly } => {
            let p = load_poly(poly)?;
            let f = restrict_to_line(&p, &cli.ell(p.arity())?)?;
            let roots = find_real_roots(&f, cli.window(), cli.tol(1e-10)?)?;
            Outcome::Text { content: output::roots_csv(&roots), pass: true }
        }
        Audit { poly, height } => {
            let p = load_poly(poly)?;
            let f = restrict_to_line(&p, &cli.ell(p.arity())?)?;
            let r = real_rootedness_audit(&f, cli.window(), *height)?;
            report(r.pass, json!({"residue": 0.01}), &r)
        }
        Trace { poly } => {
            let curve = trace_curve(&load_poly(poly)?, res)?;
            Outcome::Text { content: curve.to_csv(), pass: true }
        }
        Fourier { poly } => {
            let p = load_poly(poly)?;
            let t = spectrum_table(&p, &cli.ell(p.arity())?, cli.k_radius, res)?;
            Outcome::Text { content: t.to_csv(), pass: t.check_invariants() }
        }
        ScanCone { poly, cone } => {
            let p = load_poly(poly)?;
            let r = cone_support_scan(
                &p,
                &cli.ell(p.arity())?,
                &load_cone(cone)?,
                cli.k_radius,
                res,
                cli.tol(1e-8)?,
            )?;
            report(r.pass, json!({"support": r.tol}), &r)
        }
        VerifySummation { poly, gauss, cone, t_max, r_max } => {
            let p = load_poly(poly)?;
            let c = match cone {
                Some(path) => load_cone(path)?,
                None => ProperCone::orthant(p.arity()),
            };
            let test = GaussianTest::new(gauss.center, gauss.width)?;
            let r = verify_summation(&p, &cli.ell(p.arity())?, &c, &test, *t_max, *r_max, res)?;
            report(
                r.pass,
                json!({"residual_relative": 1e-6, "truncation": fqlab::harness::TRUNCATION_TOL}),
                &r,
            )
        }
        VerifyLighthouse { poly, cone } => {
            let p = load_poly(poly)?;
            let tol = cli.tol(1e-8)?;
            let r = lighthouse_check(
                &p,
                &cli.ell(p.arity())?,
                &load_cone(cone)?,
                cli.k_radius,
                tol,
                res,
            )?;
            report(r.pass, json!({"support": tol}), &r)
        }
        VerifyCov { poly, matrix, pulled } => {
            let q = load_poly(poly)?;
            let a = load_matrix(matrix)?;
            let p = pulled.as_deref().map(load_poly).transpose()?;
            let ell = cli.ell(q.arity())?;
            let r = change_of_variables_check(&q, &a, &ell, cli.k_radius, p.as_ref(), res)?;
            report(r.pass, json!({"deviation": cli.tol(1e-6)?}), &r)
        }
        VerifyGauss { n, big_n, radius, eps, shift } => {
            let v = shift.as_ref().map_or_else(|| vec![0.0; *n], |s| s.0.clone());
            let tail = gaussian_tail_bound(*n, *big_n, *radius, *eps, &v)?;
            let integral = gaussian_tail_integral_check(*n, *big_n, *radius)?;
            let pass = tail.pass && integral.pass;
            report(pass, json!({}), &json!({"lattice": tail, "integral": integral}))
        }
        VerifyOrbit { poly, delta, t_max } => {
            let p = load_poly(poly)?;
            let r = orbit_closure_check(&p, &cli.ell(p.arity())?, *delta, *t_max, res)?;
            report(r.pass, json!({"delta": delta}), &r)
        }
        Plot { poly } => {
            let curve = trace_curve(&load_poly(poly)?, res)?;
            Outcome::Text { content: plot::svg(&curve), pass: true }
        }
    })
}

fn subcommand_name(cli: &Cli) -> String {
    serde_json::to_value(&cli.command)
        .ok()
        .and_then(|v| v.get("command").and_then(Value::as_str).map(str::to_owned))
        .unwrap_or_default()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let name = subcommand_name(&cli);
    let emitter = Emitter::new(&cli);
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(INPUT_ERROR);
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("FAIL {name}: {msg}");
            return ExitCode::FAILURE;
        }
    };
    let pass = match outcome {
        Outcome::Report { pass, tolerances, body } => {
            let doc = json!({
                "command": name,
                "config_hash": emitter.config_hash(),
                "seed": cli.seed,
                "resolution": cli.resolution,
                "tolerances": tolerances,
                "pass": pass,
                "report": body,
            });
            if let Err(e) = emitter.write(&output::to_json(&doc)) {
                eprintln!("error: {e}");
                return ExitCode::from(INPUT_ERROR);
            }
            pass
        }
        Outcome::Text { content, pass } => {
            if let Err(e) = emitter.write(&content) {
                eprintln!("error: {e}");
                return ExitCode::from(INPUT_ERROR);
            }
            pass
        }
    };
    eprintln!("{} {name} [{}]", if pass { "PASS" } else { "FAIL" }, &emitter.config_hash()[..12]);
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
