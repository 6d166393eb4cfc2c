//! Command-line front end. Every subcommand is a thin shell over one library
//! operation and emits a JSON report (or CSV for `plot`): config echo,
//! payload, timing, version, and certification flags. Exit codes: 0 success,
//! 1 domain/input error (machine-readable JSON on stderr), 2 inequality
//! violation in a check harness.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use valentkit::cartan::{
    cartan_measure, covering_curve, covering_number, omega_cd, omega_d, paired_example_report,
    rho_d, OmegaVariant, SolveMode,
};
use valentkit::error::{Error, Result};
use valentkit::io;
use valentkit::polyops::max_modulus_circle;
use valentkit::remez;
use valentkit::taylor;
use valentkit::valency;

const DEFAULT_SEED: u64 = 42;

#[derive(Parser, Serialize)]
#[command(name = "valentkit", version, about = "Covering invariants and Remez-type bounds")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
enum Command {
    /// (d, alpha)-Cartan measure of a point set.
    Cartan(CartanArgs),
    /// Covering number M(eps, Z), or the whole step curve.
    Covnum(CovnumArgs),
    /// The invariants omega_d, omega_cd, rho_d.
    Omega(OmegaArgs),
    /// The paired-couples example and its closed forms.
    Paired(PairedArgs),
    /// Certified maximum modulus of a polynomial on a circle.
    Maxmod(MaxmodArgs),
    /// Taylor-domination profile and sequence checks.
    Dominate(DominateArgs),
    /// Coefficient recurrences: extraction and regeneration.
    Recur(RecurArgs),
    /// Argument-principle zero count inside a circle.
    Count(CountArgs),
    /// Empirical valency probing.
    Valency(ValencyArgs),
    /// The x^p + x^N example report.
    Exa(ExaArgs),
    /// Distortion-theorem bounds for f against its zero polynomial.
    Distortion(DistortionArgs),
    /// Remez-type inequalities.
    Remez(RemezArgs),
    /// Re-emit a stored report as plot-ready CSV.
    Plot(PlotArgs),
}

#[derive(Args, Serialize)]
struct CartanArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value = "bnb")]
    mode: String,
}

#[derive(Args, Serialize)]
struct CovnumArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    eps: Option<f64>,
    /// Emit the full step curve instead of one value.
    #[arg(long)]
    curve: bool,
}

#[derive(Args, Serialize)]
struct OmegaArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    d: usize,
    /// d | cd | rho
    #[arg(long)]
    variant: String,
}

#[derive(Args, Serialize)]
struct PairedArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    h: f64,
    #[arg(long)]
    eta: f64,
    /// Target enclosing radius D of the construction.
    #[arg(long = "D", default_value_t = 0.4)]
    d_target: f64,
    /// Comma-separated h values: emit the bound-comparison sweep instead.
    #[arg(long)]
    sweep_h: Option<String>,
}

#[derive(Args, Serialize)]
struct MaxmodArgs {
    #[arg(long)]
    poly: PathBuf,
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Serialize)]
struct DominateArgs {
    #[arg(long)]
    series: PathBuf,
    #[arg(long = "N")]
    n: usize,
    #[arg(long = "R")]
    r: f64,
    /// Candidate sequence, e.g. "biernacki:m=2,A=1.5".
    #[arg(long = "S")]
    s_expr: Option<String>,
    /// Base-range lower index (1 for the lacunary convention).
    #[arg(long, default_value_t = 0)]
    i_lo: usize,
    /// Also fit the minimal Biernacki constant for this m.
    #[arg(long)]
    fit_m: Option<usize>,
}

#[derive(Args, Serialize)]
struct RecurArgs {
    #[command(subcommand)]
    action: RecurAction,
}

#[derive(Subcommand, Serialize)]
enum RecurAction {
    /// Extract the canonical single-support recurrence from a series.
    Extract {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        rho: f64,
    },
    /// Regenerate coefficients from a stored recurrence.
    Generate {
        /// Recurrence JSON produced by `recur extract`.
        #[arg(long)]
        recur: PathBuf,
        /// Comma-separated real initial coefficients a_0..a_{m-1}.
        #[arg(long)]
        initial: String,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Serialize)]
struct CountArgs {
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long)]
    r: f64,
}

#[derive(Args, Serialize)]
struct ValencyArgs {
    #[arg(long = "fn")]
    function: PathBuf,
    #[arg(long)]
    s: usize,
    #[arg(long = "R")]
    r: f64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1.0)]
    coeff_bound: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct ExaArgs {
    #[arg(long)]
    p: usize,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct DistortionArgs {
    #[arg(long = "fn", required_unless_present = "counterexample")]
    function: Option<PathBuf>,
    #[arg(long, required_unless_present = "counterexample")]
    zeros: Option<PathBuf>,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value = "radial:24x12")]
    grid: String,
    /// Run the non-p-valent counterexample g = 1 + x^(N-p) instead.
    #[arg(long)]
    counterexample: bool,
    #[arg(long = "N", required_if_eq("counterexample", "true"))]
    n: Option<usize>,
}

#[derive(Args, Serialize)]
struct RemezArgs {
    #[command(subcommand)]
    action: RemezAction,
}

#[derive(Subcommand, Serialize)]
enum RemezAction {
    /// Fixed-alpha polynomial inequality check.
    Poly {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        alpha: f64,
    },
    /// Alpha-optimized constant K_d(Z).
    Kd {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Analytic harness for a function with s zeros and claimed valency p.
    Analytic {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        points: PathBuf,
        #[arg(long = "R")]
        r: f64,
    },
    /// The distortion factor sigma_p(R, rho).
    Sigma {
        #[arg(long = "R")]
        r: f64,
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        p: usize,
    },
}

#[derive(Args, Serialize)]
struct PlotArgs {
    /// A report JSON previously written by this binary.
    #[arg(long)]
    report: PathBuf,
    /// curve (covering curve / domination profile) or scatter (paired sweep).
    #[arg(long)]
    kind: String,
}

#[derive(Serialize)]
struct Report {
    command: String,
    config: serde_json::Value,
    payload: serde_json::Value,
    timing_ms: u128,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified: Option<bool>,
}

struct Outcome {
    payload: serde_json::Value,
    certified: Option<bool>,
    violation: bool,
    /// Raw CSV instead of a JSON report (plot subcommand).
    csv: Option<String>,
}

impl Outcome {
    fn json(payload: serde_json::Value) -> Outcome {
        Outcome {
            payload,
            certified: None,
            violation: false,
            csv: None,
        }
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn check_threads_env() -> Result<()> {
    match std::env::var("VALENTKIT_THREADS") {
        Err(_) => Ok(()),
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(()),
            _ => Err(Error::InvalidParameter {
                name: "VALENTKIT_THREADS",
                reason: format!("must be a positive integer, got `{v}`"),
            }),
        },
    }
}

fn parse_initial(s: &str) -> Result<Vec<Complex64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map(|x| Complex64::new(x, 0.0))
                .map_err(|e| Error::InvalidParameter {
                    name: "initial",
                    reason: format!("`{t}`: {e}"),
                })
        })
        .collect()
}

fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Cartan(a) => {
            let z = io::read_point_set(&a.points)?;
            let mode: SolveMode = a.mode.parse()?;
            let res = cartan_measure(&z, a.d, a.alpha, mode)?;
            let exact = res.exact;
            let mut out = Outcome::json(serde_json::to_value(res)?);
            out.certified = Some(exact);
            Ok(out)
        }
        Command::Covnum(a) => {
            let z = io::read_point_set(&a.points)?;
            if a.curve {
                let curve = covering_curve(&z)?;
                Ok(Outcome::json(serde_json::to_value(curve)?))
            } else {
                let eps = a.eps.ok_or(Error::InvalidParameter {
                    name: "eps",
                    reason: "required unless --curve is given".into(),
                })?;
                let m = covering_number(&z, eps)?;
                Ok(Outcome::json(json!({ "eps": eps, "m": m })))
            }
        }
        Command::Omega(a) => {
            let z = io::read_point_set(&a.points)?;
            let variant: OmegaVariant = a.variant.parse()?;
            let value = match variant {
                OmegaVariant::D => omega_d(&z, a.d)?,
                OmegaVariant::Cd => omega_cd(&z, a.d)?,
                OmegaVariant::Rho => rho_d(&z, a.d)?,
            };
            Ok(Outcome::json(json!({ "variant": a.variant, "d": a.d, "value": value })))
        }
        Command::Paired(a) => {
            if let Some(spec) = &a.sweep_h {
                let hs: Vec<f64> = spec
                    .split(',')
                    .map(|t| {
                        t.trim().parse::<f64>().map_err(|e| Error::InvalidParameter {
                            name: "sweep_h",
                            reason: format!("`{t}`: {e}"),
                        })
                    })
                    .collect::<Result<_>>()?;
                let e = std::f64::consts::E;
                let df = a.d as f64;
                let rows: Vec<serde_json::Value> = hs
                    .iter()
                    .map(|&h| {
                        let kappa = 1.0 / (a.d_target / h).log(df);
                        let b1 = (6.0 * e / (df * h)).powi(a.d as i32);
                        let bk = (6.0 * e.powf(1.0 / kappa) / a.eta).powi(a.d as i32);
                        json!({ "h": h, "bound_alpha1": b1, "bound_kappa": bk })
                    })
                    .collect();
                Ok(Outcome::json(json!({ "sweep": rows, "d": a.d, "eta": a.eta,
                    "d_target": a.d_target })))
            } else {
                let rep = paired_example_report(a.d, a.h, a.eta, a.d_target)?;
                Ok(Outcome::json(serde_json::to_value(rep)?))
            }
        }
        Command::Maxmod(a) => {
            let p = io::read_polynomial(&a.poly)?;
            let (value, certified) = max_modulus_circle(&p, a.r, a.tol)?;
            let mut out = Outcome::json(json!({ "r": a.r, "value": value, "certified": certified }));
            out.certified = Some(certified);
            Ok(out)
        }
        Command::Dominate(a) => {
            let f = io::read_series(&a.series)?;
            let profile = taylor::domination_profile_with_range(&f, a.n, a.r, a.i_lo)?;
            let mut payload = serde_json::to_value(&profile)?;
            let obj = payload.as_object_mut().expect("profile serializes to an object");
            let mut holds_all = true;
            if let Some(expr) = &a.s_expr {
                let s = taylor::SequenceExpr::parse(expr)?;
                let (holds, first_violation) = taylor::check_domination(&profile, &s);
                holds_all = holds;
                obj.insert("holds".into(), json!(holds));
                obj.insert("first_violation_k".into(), json!(first_violation));
            }
            if let Some(m) = a.fit_m {
                let fitted = taylor::fit_biernacki_constant(&f, m, a.r)?;
                obj.insert("fitted_biernacki_a".into(), json!(fitted));
            }
            let mut out = Outcome::json(payload);
            out.certified = a.s_expr.as_ref().map(|_| holds_all);
            Ok(out)
        }
        Command::Recur(a) => match &a.action {
            RecurAction::Extract { series, m, rho } => {
                let f = io::read_series(series)?;
                let rec = taylor::extract_recurrence(&f, *m, *rho)?;
                let radius = taylor::valency_radius(rec.m, rec.k_bound, rec.rho);
                let mut payload = serde_json::to_value(&rec)?;
                payload
                    .as_object_mut()
                    .expect("recurrence serializes to an object")
                    .insert("valency_radius".into(), json!(radius));
                Ok(Outcome::json(payload))
            }
            RecurAction::Generate { recur, initial, k } => {
                let text = std::fs::read_to_string(recur).map_err(|_| Error::InputNotFound {
                    path: recur.display().to_string(),
                })?;
                let rec: taylor::Recurrence = serde_json::from_str(&text)?;
                let init = parse_initial(initial)?;
                let series = taylor::generate_from_recurrence(&rec, &init, *k)?;
                Ok(Outcome::json(json!({
                    "coeffs": series.coeffs().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
                    "working_radius": series.working_radius(),
                })))
            }
        },
        Command::Count(a) => {
            let f = io::read_analytic_fn(&a.function)?;
            let zc = valency::count_zeros(&f, a.r)?;
            let certified = zc.certified;
            let mut out = Outcome::json(serde_json::to_value(zc)?);
            out.certified = Some(certified);
            Ok(out)
        }
        Command::Valency(a) => {
            let f = io::read_analytic_fn(&a.function)?;
            let probe = valency::valency_probe(&f, a.s, a.r, a.trials, a.coeff_bound, a.seed)?;
            Ok(Outcome::json(serde_json::to_value(probe)?))
        }
        Command::Exa(a) => {
            let rep = valency::example_exa_report(a.p, a.n, a.trials, a.seed)?;
            let all_pass = rep.all_pass;
            let mut out = Outcome::json(serde_json::to_value(rep)?);
            out.certified = Some(all_pass);
            Ok(out)
        }
        Command::Distortion(a) => {
            if a.counterexample {
                let n = a.n.expect("clap enforces --N with --counterexample");
                let rep = valency::counterexample_report(a.p, n)?;
                Ok(Outcome::json(serde_json::to_value(rep)?))
            } else {
                let f = io::read_analytic_fn(a.function.as_ref().expect("clap enforces --fn"))?;
                let zeros = io::read_zeros(a.zeros.as_ref().expect("clap enforces --zeros"))?;
                let grid = valency::GridSpec::parse(&a.grid)?;
                let rep = valency::distortion_check(&f, &zeros, a.p, &grid)?;
                let holds = rep.holds;
                let mut out = Outcome::json(serde_json::to_value(rep)?);
                out.certified = Some(holds);
                out.violation = !holds;
                Ok(out)
            }
        }
        Command::Remez(a) => match &a.action {
            RemezAction::Poly { poly, points, alpha } => {
                let p = io::read_polynomial(poly)?;
                let z = io::read_point_set(points)?;
                let rep = remez::remez_check_polynomial(&p, &z, *alpha)?;
                let holds = rep.holds;
                let mut out = Outcome::json(serde_json::to_value(rep)?);
                out.certified = Some(holds);
                out.violation = !holds;
                Ok(out)
            }
            RemezAction::Kd { points, d } => {
                let z = io::read_point_set(points)?;
                let res = remez::k_d(&z, *d)?;
                Ok(Outcome::json(serde_json::to_value(res)?))
            }
            RemezAction::Analytic {
                function,
                s,
                p,
                points,
                r,
            } => {
                let f = io::read_analytic_fn(function)?;
                let z = io::read_point_set(points)?;
                let rep = remez::remez_analytic_check(&f, *s, *p, &z, *r)?;
                let holds = rep.report.holds;
                let mut out = Outcome::json(serde_json::to_value(rep)?);
                out.certified = Some(holds);
                out.violation = !holds;
                Ok(out)
            }
            RemezAction::Sigma { r, rho, p } => {
                let value = remez::sigma_p(*r, *rho, *p)?;
                Ok(Outcome::json(json!({ "r": r, "rho": rho, "p": p, "value": value })))
            }
        },
        Command::Plot(a) => {
            let text = std::fs::read_to_string(&a.report).map_err(|_| Error::InputNotFound {
                path: a.report.display().to_string(),
            })?;
            let report: serde_json::Value = serde_json::from_str(&text)?;
            let payload = report.get("payload").unwrap_or(&report);
            let csv = emit_plot_data(payload, &a.kind)?;
            let mut out = Outcome::json(serde_json::Value::Null);
            out.csv = Some(csv);
            Ok(out)
        }
    }
}

/// Convert a stored payload into two- or three-column CSV.
fn emit_plot_data(payload: &serde_json::Value, kind: &str) -> Result<String> {
    let incompatible = |why: &str| Error::InvalidParameter {
        name: "report",
        reason: format!("incompatible report for plot: {why}"),
    };
    match kind {
        "curve" => {
            if let Some(bps) = payload.get("breakpoints").and_then(|b| b.as_array()) {
                let mut csv = String::from("eps,m\n");
                if let Some(init) = payload.get("initial").and_then(|v| v.as_u64()) {
                    csv.push_str(&format!("{},{init}\n", fmt17(0.0)));
                }
                for bp in bps {
                    let eps = bp[0].as_f64().ok_or_else(|| incompatible("bad breakpoint"))?;
                    let m = bp[1].as_u64().ok_or_else(|| incompatible("bad breakpoint"))?;
                    csv.push_str(&format!("{},{m}\n", fmt17(eps)));
                }
                return Ok(csv);
            }
            if let Some(req) = payload.get("required").and_then(|r| r.as_array()) {
                let n = payload
                    .get("n")
                    .and_then(|v| v.as_u64())
                    .ok_or_else(|| incompatible("profile without n"))? as usize;
                let mut csv = String::from("k,s_req\n");
                for (i, v) in req.iter().enumerate() {
                    let s = v.as_f64().ok_or_else(|| incompatible("bad profile entry"))?;
                    csv.push_str(&format!("{},{}\n", n + 1 + i, fmt17(s)));
                }
                return Ok(csv);
            }
            Err(incompatible("expected a covering curve or domination profile"))
        }
        "scatter" => {
            let rows = payload
                .get("sweep")
                .and_then(|s| s.as_array())
                .ok_or_else(|| incompatible("expected a paired sweep"))?;
            let mut csv = String::from("h,bound_alpha1,bound_kappa\n");
            for row in rows {
                let get = |key: &str| {
                    row.get(key)
                        .and_then(|v| v.as_f64())
                        .ok_or_else(|| incompatible("bad sweep row"))
                };
                csv.push_str(&format!(
                    "{},{},{}\n",
                    fmt17(get("h")?),
                    fmt17(get("bound_alpha1")?),
                    fmt17(get("bound_kappa")?)
                ));
            }
            Ok(csv)
        }
        other => Err(Error::InvalidParameter {
            name: "kind",
            reason: format!("expected curve|scatter, got `{other}`"),
        }),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Cartan(_) => "cartan",
        Command::Covnum(_) => "covnum",
        Command::Omega(_) => "omega",
        Command::Paired(_) => "paired",
        Command::Maxmod(_) => "maxmod",
        Command::Dominate(_) => "dominate",
        Command::Recur(_) => "recur",
        Command::Count(_) => "count",
        Command::Valency(_) => "valency",
        Command::Exa(_) => "exa",
        Command::Distortion(_) => "distortion",
        Command::Remez(_) => "remez",
        Command::Plot(_) => "plot",
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = check_threads_env() {
        eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
        std::process::exit(1);
    }

    let start = Instant::now();
    match run(&cli.command) {
        Ok(outcome) => {
            let text = if let Some(csv) = outcome.csv {
                csv
            } else {
                let report = Report {
                    command: command_name(&cli.command).to_string(),
                    config: serde_json::to_value(&cli.command).unwrap_or_default(),
                    payload: outcome.payload,
                    timing_ms: start.elapsed().as_millis(),
                    version: valentkit::VERSION,
                    certified: outcome.certified,
                };
                match serde_json::to_string_pretty(&report) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("{}", json!({ "error": "json", "message": e.to_string() }));
                        std::process::exit(1);
                    }
                }
            };
            let write_result = match &cli.out {
                Some(path) => std::fs::write(path, text + "\n"),
                None => {
                    use std::io::Write;
                    let mut stdout = std::io::stdout();
                    stdout
                        .write_all(text.as_bytes())
                        .and_then(|()| stdout.write_all(b"\n"))
                }
            };
            if let Err(e) = write_result {
                // A closed pipe (e.g. `| head`) is not an error worth noise.
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    std::process::exit(0);
                }
                eprintln!("{}", json!({ "error": "io", "message": e.to_string() }));
                std::process::exit(1);
            }
            if outcome.violation {
                std::process::exit(2);
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            std::process::exit(1);
        }
    }
}
