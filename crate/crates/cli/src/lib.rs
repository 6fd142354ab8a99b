//! Command-line front end. [`run`] returns the process exit status: 0 on success,
//! 1 on any error, 2 when every minor vanished for the chosen specializations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use resolvent_core::elimination::{auto_orders, eliminate_resolvent, Elimination};
use resolvent_core::io::{
    parse_problem, parse_resolvent, parse_specs, parse_template, CoeffDesc, ResolventFile, Status,
};
use resolvent_core::log_bell::{bell_b, log_resolvent};
use resolvent_core::numeric::{parse_rational, parse_substitutions, residual_in, RealContext};
use resolvent_core::powersum::{powersum_resolvent, Outcome};
use resolvent_core::symmetric::PowersumTable;
use resolvent_core::tower::apply_lodo;
use resolvent_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_IDENTICALLY_ZERO: i32 = 2;

/// Overrides `--precision` for `eval`.
pub const PRECISION_ENV: &str = "RESOLVENT_PRECISION";

#[derive(Parser, Debug)]
#[command(
    name = "resolvent",
    version,
    about = "Exact joint linear differential resolvents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Powersum,
    Eliminate,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the powersums p_0..p_N of every polynomial.
    Powersums {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        max: usize,
    },
    /// Compute a resolvent and write it as JSON.
    Resolve {
        #[arg(long)]
        problem: PathBuf,
        /// Required for the powersum method.
        #[arg(long)]
        template: Option<PathBuf>,
        /// Required for the powersum method: "grid" or a list of symbol maps.
        #[arg(long)]
        specs: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "powersum")]
        method: Method,
        /// Derivative orders for elimination; found automatically when omitted.
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<usize>>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check symbolically that a resolvent annihilates the problem's pseudopolynomial.
    Verify {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        resolvent: PathBuf,
    },
    /// Relative residual of a resolvent at real exponent values.
    Eval {
        #[arg(long)]
        resolvent: PathBuf,
        #[arg(long)]
        problem: PathBuf,
        /// `symbol=value`; values may be decimals, p/q, pi, e or sqrt(..).
        #[arg(long, num_args = 1..)]
        subst: Vec<String>,
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
        x0: Vec<String>,
        /// Decimal digits.
        #[arg(long, default_value_t = 30)]
        precision: usize,
    },
    /// The signed Stirling number B_{m,k}(1, -1, 2, ...).
    Bell {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Resolvent of e^{A x} + (ln x)^A for integer A.
    Logres {
        #[arg(long)]
        alpha: usize,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
    NotAnnihilated(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            Failure::Core(e) => (e.kind(), e.to_string()),
            Failure::Usage(m) => ("UsageError", m.clone()),
            Failure::Io(m) => ("IoError", m.clone()),
            Failure::NotAnnihilated(m) => ("NotAnnihilated", m.clone()),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Io(e.to_string()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Runs the tool on `argv` (program name first), writing results to `out` and error
/// objects to `err`.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let f = Failure::Usage(e.kind().to_string());
            let _ = err.write_all(pretty(&f.to_json()).as_bytes());
            let _ = write!(err, "{e}");
            return EXIT_ERROR;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = err.write_all(pretty(&f.to_json()).as_bytes());
            EXIT_ERROR
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Powersums { problem, max } => {
            let p = parse_problem(&read(&problem)?)?;
            let table = PowersumTable::new(&p, max);
            let mut obj = serde_json::Map::new();
            for poly in p.polynomials() {
                let sums = table.get(poly.id()).expect("every polynomial is tabulated");
                let v: Vec<Value> = sums
                    .iter()
                    .map(|s| serde_json::to_value(CoeffDesc::write(s)).expect("serializes"))
                    .collect();
                obj.insert(poly.id().to_string(), Value::Array(v));
            }
            emit(
                out,
                &pretty(&json!({ "field": p.field().to_string(), "powersums": obj })),
            )?;
            Ok(EXIT_OK)
        }
        Command::Resolve {
            problem,
            template,
            specs,
            method,
            orders,
            out: target,
        } => {
            let p = parse_problem(&read(&problem)?)?;
            let (file, code) = match method {
                Method::Powersum => {
                    let (Some(t), Some(s)) = (template, specs) else {
                        return Err(Failure::Usage(
                            "the powersum method needs --template and --specs".into(),
                        ));
                    };
                    let tpl = parse_template(&read(&t)?)?;
                    let specs = parse_specs(&read(&s)?, &p, &tpl)?;
                    match powersum_resolvent(&p, &tpl, &specs)? {
                        Outcome::Resolvent(r) => (ResolventFile::powersum(&r, &specs), EXIT_OK),
                        Outcome::IdenticallyZero => (
                            ResolventFile::identically_zero(p.field(), &tpl, &specs),
                            EXIT_IDENTICALLY_ZERO,
                        ),
                    }
                }
                Method::Eliminate => {
                    let orders = match orders {
                        Some(o) => o,
                        None => auto_orders(&p)?,
                    };
                    match eliminate_resolvent(&p, &orders)? {
                        Elimination::Resolvent(r) => {
                            (ResolventFile::elimination(&r, &orders)?, EXIT_OK)
                        }
                        Elimination::Degenerate => {
                            return Err(Failure::NotAnnihilated(
                                "every cofactor vanished for these orders".into(),
                            ))
                        }
                    }
                }
            };
            let text = file.to_json();
            match target {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => emit(out, &text)?,
            }
            Ok(code)
        }
        Command::Verify { problem, resolvent } => {
            let p = parse_problem(&read(&problem)?)?;
            let file = parse_resolvent(&read(&resolvent)?)?;
            if file.status == Status::IdenticallyZero {
                emit(out, &pretty(&json!({ "status": "identically_zero" })))?;
                return Ok(EXIT_IDENTICALLY_ZERO);
            }
            let r = file.to_lodo()?;
            let v = apply_lodo(&r, &p)?;
            if v.is_zero() {
                emit(out, &pretty(&json!({ "annihilates": true })))?;
                Ok(EXIT_OK)
            } else {
                Err(Failure::NotAnnihilated(format!(
                    "{} basis coordinates of R y are nonzero",
                    v.support().count()
                )))
            }
        }
        Command::Eval {
            resolvent,
            problem,
            subst,
            x0,
            precision,
        } => {
            let digits = match std::env::var(PRECISION_ENV) {
                Ok(s) => s.trim().parse().map_err(|_| {
                    Failure::Usage(format!(
                        "{PRECISION_ENV} must be a positive integer, got {s:?}"
                    ))
                })?,
                Err(_) => precision,
            };
            let p = parse_problem(&read(&problem)?)?;
            let file = parse_resolvent(&read(&resolvent)?)?;
            if file.status == Status::IdenticallyZero {
                return Err(Failure::Usage("the resolvent file has no operator".into()));
            }
            let r = file.to_lodo()?;
            let mut ctx = RealContext::new(digits)?;
            let subs = parse_substitutions(&mut ctx, &subst)?;
            let mut rows = Vec::new();
            for s in &x0 {
                let at = parse_rational(s)?;
                let res = residual_in(&mut ctx, &r, &subs, &p, &at)?;
                rows.push(json!({ "x0": at.to_string(), "residual": ctx.to_string(&res) }));
            }
            emit(
                out,
                &pretty(&json!({ "precision": digits, "residuals": rows })),
            )?;
            Ok(EXIT_OK)
        }
        Command::Bell { m, k } => {
            emit(
                out,
                &pretty(&json!({ "m": m, "k": k, "value": bell_b(m, k).to_string() })),
            )?;
            Ok(EXIT_OK)
        }
        Command::Logres { alpha } => {
            let r = log_resolvent(alpha);
            let coeffs: Vec<Value> = (0..=r.order().unwrap_or(0))
                .map(|m| {
                    let c = r.coeff(m).coeff(&resolvent_core::alpha::Monomial::one());
                    serde_json::to_value(CoeffDesc::write(&c)).expect("serializes")
                })
                .collect();
            emit(
                out,
                &pretty(
                    &json!({ "alpha": alpha, "operator": r.to_string(), "coefficients": coeffs }),
                ),
            )?;
            Ok(EXIT_OK)
        }
    }
}
