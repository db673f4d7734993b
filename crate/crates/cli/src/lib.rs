//! Command-line interface for the stochastic-order toolkit.
//!
//! Subcommands: `dist` (per-distribution transforms), `order` (dominance
//! checks and least bounds), `metric` (Wasserstein/Prohorov), `family`
//! (diagnostics), `diagram` (implication verification). Distribution and
//! family arguments are JSON, given inline or as a file path. Exit codes:
//! 0 success, 2 malformed input, 3 internal invariant breach.

pub mod spec_json;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spec_json::{DistArg, DistSpecJson, FamilySpecJson};
use std::path::PathBuf;
use stochord::diagram::{render_report, verify_counterexamples, verify_implications, ReportFormat, VerifyConfig};
use stochord::dist::{DiscreteDist, MomentValue};
use stochord::families::{diagnose, DiagnoseParams};
use stochord::metrics::{prohorov_tol, wasserstein, wasserstein_pow_int, MetricError};
use stochord::orders::{
    comonotone_coupling, icx_le, least_icx_upper_bound, least_st_upper_bound, st_le, Dominance,
};
use stochord::rational::{format_ratio, parse_ratio, q_one, q_zero, to_f64, to_u32, Q};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        match e {
            MetricError::SupportTooLarge { .. } => CliError::Input(e.to_string()),
            MetricError::Internal(_) => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the document to a file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn rat(s: &str) -> Result<Q, String> {
    parse_ratio(s).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "stochord",
    version,
    about = "Stochastic orders on the positive half-line: dominance tests, least bounds, \
             the Hardy-Littlewood maximal transform, Wasserstein/Prohorov metrics, and \
             mechanical verification of the boundedness implication diagram",
    color = clap::ColorChoice::Never
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Per-distribution transforms.
    Dist {
        #[command(subcommand)]
        op: DistOp,
    },
    /// Order checks, least upper bounds, couplings.
    Order {
        #[command(subcommand)]
        op: OrderOp,
    },
    /// Distances between distributions.
    Metric {
        #[command(subcommand)]
        op: MetricOp,
    },
    /// Family-level diagnostics.
    Family {
        #[command(subcommand)]
        op: FamilyOp,
    },
    /// Implication-diagram verification.
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
}

#[derive(Subcommand)]
enum DistOp {
    /// Integrated survival function as an exact piecewise-linear function.
    Isf {
        /// Distribution (inline JSON or a file path).
        #[arg(long)]
        lhs: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Hardy-Littlewood maximal quantile curve.
    HlMax {
        #[arg(long)]
        lhs: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// p-th moment (exact for integer p; "diverges" for infinite moments).
    Moment {
        #[arg(long)]
        lhs: String,
        /// Moment order, e.g. 2 or 3/2.
        #[arg(long, value_parser = rat)]
        p: Q,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Deterministic inverse-transform samples.
    Sample {
        #[arg(long)]
        lhs: String,
        /// Number of samples.
        #[arg(long = "N", default_value_t = 10)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum OrderOp {
    /// Strong order check: survival dominance with witness.
    St {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Increasing convex order check: ISF dominance with witness.
    Icx {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Least upper bound of a family in the strong order.
    StBound {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Least upper bound of a family in the increasing convex order.
    IcxBound {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Comonotone coupling on the merged quantile partition.
    Coupling {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum MetricOp {
    /// p-Wasserstein distance (quantile identity; exact p-th power for integer p).
    Wasserstein {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, value_parser = rat, default_value = "1")]
        p: Q,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Prohorov distance by Strassen-feasibility bisection.
    Prohorov {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Absolute bisection tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum FamilyOp {
    /// One verdict per diagram node for the family.
    Diagnose {
        /// Family (inline JSON or a file path).
        #[arg(long)]
        family: String,
        #[arg(long, value_parser = rat, default_value = "1/2")]
        p: Q,
        #[arg(long, value_parser = rat, default_value = "2")]
        q: Q,
        /// Default truncation for builtin families without an explicit N.
        #[arg(long = "N", default_value_t = 10_000)]
        n: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum DiagramOp {
    /// Run the implication property checks and the counterexample battery.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: u32,
        #[arg(long, value_parser = rat, default_value = "1/2")]
        p: Q,
        #[arg(long, value_parser = rat, default_value = "2")]
        q: Q,
        /// Truncation for the counterexample scans.
        #[arg(long = "N", default_value_t = 10_000)]
        n: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Executes an argv vector and returns the stdout document.
pub fn run<I, S>(argv: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Ok(e.to_string());
            }
            return Err(CliError::Usage(e.to_string()));
        }
    };
    let (doc, out_path) = execute(cli)?;
    if let Some(path) = out_path {
        std::fs::write(&path, &doc)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(doc)
}

fn execute(cli: Cli) -> Result<(String, Option<PathBuf>), CliError> {
    match cli.cmd {
        Cmd::Dist { op } => dist_cmd(op),
        Cmd::Order { op } => order_cmd(op),
        Cmd::Metric { op } => metric_cmd(op),
        Cmd::Family { op } => family_cmd(op),
        Cmd::Diagram { op } => diagram_cmd(op),
    }
}

/// Inline JSON (starts with `{`) or a file path.
fn load_text(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))
    }
}

fn load_dist(arg: &str) -> Result<DistArg, CliError> {
    DistSpecJson::parse_str(&load_text(arg)?)?.to_arg()
}

fn load_discrete(arg: &str) -> Result<DiscreteDist, CliError> {
    DistSpecJson::parse_str(&load_text(arg)?)?.to_discrete()
}

/// 17 significant digits, the CSV contract.
fn sig17(v: f64) -> String {
    format!("{:.16e}", v)
}

fn check_orders(p: &Q, q: &Q) -> Result<(), CliError> {
    if !(*p > q_zero() && *p < q_one()) {
        return Err(CliError::Input(format!(
            "p must satisfy 0 < p < 1, got {}",
            format_ratio(p)
        )));
    }
    if *q <= q_one() {
        return Err(CliError::Input(format!(
            "q must satisfy q > 1, got {}",
            format_ratio(q)
        )));
    }
    Ok(())
}

fn dominance_doc(result: &Dominance, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(match result {
            Dominance::Holds => "holds\n".to_string(),
            Dominance::FailsAt(t) => format!("fails at t = {}\n", format_ratio(t)),
        }),
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Out {
                holds: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<String>,
            }
            let out = Out {
                holds: result.holds(),
                witness: result.witness().map(format_ratio),
            };
            Ok(serde_json::to_string(&out).unwrap() + "\n")
        }
        Format::Csv => Err(CliError::Input(
            "csv is not a valid format for order verdicts".into(),
        )),
    }
}

fn dist_doc(d: &DiscreteDist, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => {
            let mut s = String::new();
            for (x, p) in d.atoms() {
                s.push_str(&format!("x = {:<10} p = {}\n", format_ratio(x), format_ratio(p)));
            }
            Ok(s)
        }
        Format::Json => {
            Ok(serde_json::to_string(&DistSpecJson::from_discrete(d)).unwrap() + "\n")
        }
        Format::Csv => {
            let mut s = String::from("x,p\n");
            for (x, p) in d.atoms() {
                s.push_str(&format!("{},{}\n", sig17(to_f64(x)), sig17(to_f64(p))));
            }
            Ok(s)
        }
    }
}

fn dist_cmd(op: DistOp) -> Result<(String, Option<PathBuf>), CliError> {
    match op {
        DistOp::Isf { lhs, out } => {
            let d = load_discrete(&lhs)?;
            let h = d.isf();
            let doc = match out.format {
                Format::Text => {
                    let mut s = String::from("integrated survival function\n");
                    for (t, v) in h.knots() {
                        s.push_str(&format!(
                            "t = {:<10} H(t) = {}\n",
                            format_ratio(t),
                            format_ratio(v)
                        ));
                    }
                    s.push_str(&format!(
                        "terminal slope = {}\n",
                        format_ratio(h.terminal_slope())
                    ));
                    s
                }
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Knot {
                        t: String,
                        value: String,
                    }
                    #[derive(serde::Serialize)]
                    struct Out {
                        knots: Vec<Knot>,
                        terminal_slope: String,
                    }
                    let o = Out {
                        knots: h
                            .knots()
                            .iter()
                            .map(|(t, v)| Knot {
                                t: format_ratio(t),
                                value: format_ratio(v),
                            })
                            .collect(),
                        terminal_slope: format_ratio(h.terminal_slope()),
                    };
                    serde_json::to_string(&o).unwrap() + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("t,value\n");
                    for (t, v) in h.knots() {
                        s.push_str(&format!("{},{}\n", sig17(to_f64(t)), sig17(to_f64(v))));
                    }
                    s
                }
            };
            Ok((doc, out.out))
        }
        DistOp::HlMax { lhs, out } => {
            let d = load_discrete(&lhs)?;
            let curve = d.hl_maximal();
            let doc = match out.format {
                Format::Text => {
                    let mut s = String::from("Hardy-Littlewood maximal quantile curve\n");
                    for (lo, hi, a, b) in curve.cells() {
                        s.push_str(&format!(
                            "u in ({}, {}]: ({} + {} u) / (1 - u)\n",
                            format_ratio(&lo),
                            format_ratio(&hi),
                            format_ratio(&a),
                            format_ratio(&b)
                        ));
                    }
                    s.push_str(&format!("sup = {}\n", format_ratio(&curve.sup())));
                    s
                }
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Seg {
                        a: String,
                        b: String,
                    }
                    #[derive(serde::Serialize)]
                    struct Out {
                        breakpoints: Vec<String>,
                        segments: Vec<Seg>,
                        sup: String,
                    }
                    let o = Out {
                        breakpoints: curve.breakpoints().iter().map(format_ratio).collect(),
                        segments: curve
                            .segments()
                            .iter()
                            .map(|(a, b)| Seg {
                                a: format_ratio(a),
                                b: format_ratio(b),
                            })
                            .collect(),
                        sup: format_ratio(&curve.sup()),
                    };
                    serde_json::to_string(&o).unwrap() + "\n"
                }
                Format::Csv => {
                    // plotting surface: dense grid merged with breakpoints
                    let mut us: Vec<Q> = (1..256).map(|k| Q::new(k.into(), 256.into())).collect();
                    us.extend(curve.breakpoints().iter().cloned());
                    us.sort();
                    us.dedup();
                    let mut s = String::from("u,value\n");
                    for u in us {
                        s.push_str(&format!(
                            "{},{}\n",
                            sig17(to_f64(&u)),
                            sig17(to_f64(&curve.eval(&u)))
                        ));
                    }
                    s
                }
            };
            Ok((doc, out.out))
        }
        DistOp::Moment { lhs, p, out } => {
            if p <= q_zero() {
                return Err(CliError::Input("moment order must be positive".into()));
            }
            let (value, exact): (Option<f64>, Option<String>) = match load_dist(&lhs)? {
                DistArg::Discrete(d) => {
                    if let Some(k) = to_u32(&p) {
                        let m = d.moment_int(k);
                        (Some(to_f64(&m)), Some(format_ratio(&m)))
                    } else {
                        (Some(d.moment(&p)), None)
                    }
                }
                DistArg::ClosedForm(c) => match c.moment(&p) {
                    MomentValue::Finite(v) => (Some(to_f64(&v)), Some(format_ratio(&v))),
                    MomentValue::Diverges => (None, None),
                },
            };
            let doc = match out.format {
                Format::Text => match value {
                    Some(v) => format!("{:?}\n", v),
                    None => "diverges\n".to_string(),
                },
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Out {
                        value: Option<f64>,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        exact: Option<String>,
                        diverges: bool,
                    }
                    serde_json::to_string(&Out {
                        value,
                        exact,
                        diverges: value.is_none(),
                    })
                    .unwrap()
                        + "\n"
                }
                Format::Csv => Err(CliError::Input(
                    "csv is not a valid format for scalar results".to_string(),
                ))?,
            };
            Ok((doc, out.out))
        }
        DistOp::Sample { lhs, n, seed, out } => {
            if n == 0 {
                return Err(CliError::Input("sample count must be at least 1".into()));
            }
            let d = load_discrete(&lhs)?;
            let samples = d.sample(n as usize, seed);
            let doc = match out.format {
                Format::Text => samples
                    .iter()
                    .map(|v| format!("{:?}\n", to_f64(v)))
                    .collect::<String>(),
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Out {
                        seed: u64,
                        samples: Vec<f64>,
                    }
                    serde_json::to_string(&Out {
                        seed,
                        samples: samples.iter().map(to_f64).collect(),
                    })
                    .unwrap()
                        + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("sample\n");
                    for v in &samples {
                        s.push_str(&sig17(to_f64(v)));
                        s.push('\n');
                    }
                    s
                }
            };
            Ok((doc, out.out))
        }
    }
}

fn order_cmd(op: OrderOp) -> Result<(String, Option<PathBuf>), CliError> {
    match op {
        OrderOp::St { lhs, rhs, out } => {
            let (a, b) = (load_discrete(&lhs)?, load_discrete(&rhs)?);
            Ok((dominance_doc(&st_le(&a, &b), out.format)?, out.out))
        }
        OrderOp::Icx { lhs, rhs, out } => {
            let (a, b) = (load_discrete(&lhs)?, load_discrete(&rhs)?);
            Ok((dominance_doc(&icx_le(&a, &b), out.format)?, out.out))
        }
        OrderOp::StBound { family, out } => {
            let fam = load_finite_family(&family)?;
            let bound = least_st_upper_bound(&fam)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok((dist_doc(&bound, out.format)?, out.out))
        }
        OrderOp::IcxBound { family, out } => {
            let fam = load_finite_family(&family)?;
            let bound = least_icx_upper_bound(&fam)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok((dist_doc(&bound, out.format)?, out.out))
        }
        OrderOp::Coupling { lhs, rhs, out } => {
            let (a, b) = (load_discrete(&lhs)?, load_discrete(&rhs)?);
            let cells = comonotone_coupling(&a, &b);
            let doc = match out.format {
                Format::Text => {
                    let mut s = String::from("comonotone coupling\n");
                    for c in &cells {
                        s.push_str(&format!(
                            "u in ({}, {}]: x = {}, y = {}\n",
                            format_ratio(&c.u_lo),
                            format_ratio(&c.u_hi),
                            format_ratio(&c.x),
                            format_ratio(&c.y)
                        ));
                    }
                    s
                }
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Cell {
                        u_lo: String,
                        u_hi: String,
                        x: String,
                        y: String,
                    }
                    let rows: Vec<Cell> = cells
                        .iter()
                        .map(|c| Cell {
                            u_lo: format_ratio(&c.u_lo),
                            u_hi: format_ratio(&c.u_hi),
                            x: format_ratio(&c.x),
                            y: format_ratio(&c.y),
                        })
                        .collect();
                    serde_json::to_string(&rows).unwrap() + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("u_lo,u_hi,x,y\n");
                    for c in &cells {
                        s.push_str(&format!(
                            "{},{},{},{}\n",
                            sig17(to_f64(&c.u_lo)),
                            sig17(to_f64(&c.u_hi)),
                            sig17(to_f64(&c.x)),
                            sig17(to_f64(&c.y))
                        ));
                    }
                    s
                }
            };
            Ok((doc, out.out))
        }
    }
}

fn load_finite_family(arg: &str) -> Result<Vec<DiscreteDist>, CliError> {
    let spec = FamilySpecJson::parse_str(&load_text(arg)?)?;
    match spec {
        FamilySpecJson::Finite { members } => {
            if members.is_empty() {
                return Err(CliError::Input("finite family needs members".into()));
            }
            members.iter().map(|m| m.to_discrete()).collect()
        }
        FamilySpecJson::Builtin { name, r, n } => {
            // bound construction materializes the truncated members
            if let Some(n) = n {
                if n > 4096 {
                    return Err(CliError::Input(
                        "least bounds materialize the family; use N ≤ 4096".into(),
                    ));
                }
            }
            let fam = FamilySpecJson::Builtin { name, r, n }.to_family(64)?;
            match fam {
                stochord::families::FamilySpec::Builtin(b) => b.members().ok_or_else(|| {
                    CliError::Input(
                        "least bounds need a finite or indexed family, not a closed-form singleton"
                            .into(),
                    )
                }),
                stochord::families::FamilySpec::Finite(ms) => Ok(ms),
            }
        }
    }
}

fn metric_cmd(op: MetricOp) -> Result<(String, Option<PathBuf>), CliError> {
    match op {
        MetricOp::Wasserstein { lhs, rhs, p, out } => {
            if p < q_one() {
                return Err(CliError::Input(format!(
                    "wasserstein needs p ≥ 1, got {}",
                    format_ratio(&p)
                )));
            }
            let (a, b) = (load_discrete(&lhs)?, load_discrete(&rhs)?);
            let value = wasserstein(&a, &b, &p);
            let exact_pow = to_u32(&p).map(|k| format_ratio(&wasserstein_pow_int(&a, &b, k)));
            let doc = match out.format {
                Format::Text => format!("{:?}\n", value),
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Out {
                        value: f64,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        exact_pow: Option<String>,
                    }
                    serde_json::to_string(&Out { value, exact_pow }).unwrap() + "\n"
                }
                Format::Csv => Err(CliError::Input(
                    "csv is not a valid format for scalar results".to_string(),
                ))?,
            };
            Ok((doc, out.out))
        }
        MetricOp::Prohorov { lhs, rhs, tol, out } => {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(CliError::Input("tolerance must lie in (0,1)".into()));
            }
            let (a, b) = (load_discrete(&lhs)?, load_discrete(&rhs)?);
            let value = prohorov_tol(&a, &b, tol)?;
            let doc = match out.format {
                Format::Text => format!("{:?}\n", value),
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Out {
                        value: f64,
                        tol: f64,
                    }
                    serde_json::to_string(&Out { value, tol }).unwrap() + "\n"
                }
                Format::Csv => Err(CliError::Input(
                    "csv is not a valid format for scalar results".to_string(),
                ))?,
            };
            Ok((doc, out.out))
        }
    }
}

fn family_cmd(op: FamilyOp) -> Result<(String, Option<PathBuf>), CliError> {
    match op {
        FamilyOp::Diagnose {
            family,
            p,
            q,
            n,
            out,
        } => {
            check_orders(&p, &q)?;
            let fam = FamilySpecJson::parse_str(&load_text(&family)?)?.to_family(n)?;
            let params = DiagnoseParams::with_orders(p, q);
            let report = diagnose(&fam, &params);
            let doc = match out.format {
                Format::Text => report.render_text(),
                Format::Json => report.to_json() + "\n",
                Format::Csv => Err(CliError::Input(
                    "csv is not a valid format for reports".to_string(),
                ))?,
            };
            Ok((doc, out.out))
        }
    }
}

fn diagram_cmd(op: DiagramOp) -> Result<(String, Option<PathBuf>), CliError> {
    match op {
        DiagramOp::Verify {
            seed,
            trials,
            p,
            q,
            n,
            out,
        } => {
            check_orders(&p, &q)?;
            if trials == 0 {
                return Err(CliError::Input("trials must be at least 1".into()));
            }
            if n < 1000 {
                return Err(CliError::Input("counterexample scans need N ≥ 1000".into()));
            }
            let cfg = VerifyConfig::new(seed, trials, p.clone(), q.clone());
            let report = verify_implications(&cfg)
                .merged(verify_counterexamples(&p, &q, n, n.max(1_000_000)));
            let fmt = match out.format {
                Format::Text => ReportFormat::Text,
                Format::Json => ReportFormat::Json,
                Format::Csv => {
                    return Err(CliError::Input(
                        "csv is not a valid format for reports".into(),
                    ))
                }
            };
            Ok((render_report(&report, fmt), out.out))
        }
    }
}
