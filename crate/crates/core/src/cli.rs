//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches, and returns the exit code together
//! with the rendered output, so it can be driven in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blowup::{monomial_factor, run_chain};
use crate::branch::BranchPoint;
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, Rational};
use crate::pbcheck::{
    assemble_supinf, build_witnesses, chain_transfer, connectedness_witness, pw_pair_check, PiecewiseFunction,
    SamplingConfig,
};
use crate::polyring::{parse_polynomial, Poly2};
use crate::sepideal::{h_witness, member, separating_ideal, signchanger_oracle, IdealKind, OracleCaps};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "halfbranch", version, about = "Exact computations with half-branch points of the real plane")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Maximum number of blow-ups before giving up.
    #[arg(long, global = true, default_value_t = 64, visible_alias = "max-steps")]
    pub max_blowups: usize,
    #[arg(long, global = true, default_value_t = 3)]
    pub oracle_degree: u32,
    #[arg(long, global = true, default_value_t = 2)]
    pub oracle_coeff: i64,
    #[arg(long, global = true, default_value_t = 3)]
    pub oracle_support: usize,
    /// Grid size for sampled region checks.
    #[arg(long, global = true, default_value_t = 49)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Extra seeded random sample points.
    #[arg(long, global = true, default_value_t = 0)]
    pub densify: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Rational point `a,b` moved to the origin before computing.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub center: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// Branch point file, or `-` for stdin.
    #[arg(long)]
    pub alpha: PathBuf,
    #[arg(long)]
    pub beta: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Value of `f` at a branch point.
    Val {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Sign of `f` at a branch point.
    Sign {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Implicit equation of the branch curve.
    CurveEq {
        #[arg(long)]
        alpha: PathBuf,
    },
    /// Blow-up chain separating two branch points.
    Blowup(PairArgs),
    /// Separating ideal of two branch points.
    Sepideal(PairArgs),
    /// Membership of `g` in the separating ideal.
    Member {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Monomial factorization of `g` in the last chart.
    Factor {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Witness `h` for a member `a` of the separating ideal.
    Witness {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Connected set containing both points and avoiding every `{g = 0}`.
    Connect {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true, required = true)]
        g: Vec<String>,
    },
    /// Pairwise criterion for a piecewise polynomial.
    Pwcheck {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        t: PathBuf,
    },
    /// Chain of adjacent pieces linking the pieces at both points.
    Chain {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        t: PathBuf,
        /// Adjacent pieces `j-k`; repeatable or comma separated.
        #[arg(long, value_delimiter = ',')]
        adjacency: Vec<String>,
    },
    /// Sup-inf expression of a piecewise polynomial at given points.
    Assemble {
        #[arg(long)]
        t: PathBuf,
        #[arg(long, required = true)]
        point: Vec<PathBuf>,
        /// Witness matrix `[[h_00, h_01, ...], ...]`; built when omitted.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Brute-force search for the least sign changer value.
    Oracle(PairArgs),
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    shift: Option<(Rational, Rational)>,
}

impl Inputs<'_> {
    fn text(&mut self, path: &PathBuf) -> Result<String> {
        if path.as_os_str() == "-" {
            if self.stdin_used {
                return Err(Error::Input("stdin can be read only once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Input(format!("reading stdin: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("reading {}: {e}", path.display())))
    }

    fn json<T: DeserializeOwned>(&mut self, path: &PathBuf) -> Result<T> {
        let text = self.text(path)?;
        serde_json::from_str(&text).map_err(|e| {
            let message = format!("{}: {}", path.display(), strip_position(&e.to_string()));
            // custom errors from validation carry no position
            if e.line() == 0 {
                Error::Input(message)
            } else {
                Error::Parse {
                    line: e.line(),
                    column: e.column(),
                    message,
                }
            }
        })
    }

    fn branch(&mut self, path: &PathBuf) -> Result<BranchPoint> {
        let b: BranchPoint = self.json(path)?;
        Ok(match &self.shift {
            Some((a, c)) => b.translated(a, c),
            None => b,
        })
    }

    fn pair(&mut self, p: &PairArgs) -> Result<(BranchPoint, BranchPoint)> {
        Ok((self.branch(&p.alpha)?, self.branch(&p.beta)?))
    }

    fn shift_poly(&self, f: Poly2) -> Poly2 {
        match &self.shift {
            Some((a, c)) => f.translate(a, c),
            None => f,
        }
    }

    fn poly(&self, text: &str) -> Result<Poly2> {
        Ok(self.shift_poly(parse_polynomial(text)?))
    }

    fn piecewise(&mut self, path: &PathBuf) -> Result<PiecewiseFunction> {
        let mut t: PiecewiseFunction = self.json(path)?;
        if t.pieces.is_empty() {
            return Err(Error::Input("a piecewise function needs at least one piece".into()));
        }
        for piece in &mut t.pieces {
            piece.value = self.shift_poly(piece.value.clone());
            for c in &mut piece.region {
                c.poly = self.shift_poly(c.poly.clone());
            }
        }
        Ok(t)
    }
}

fn strip_position(msg: &str) -> &str {
    msg.find(" at line ").map_or(msg, |i| &msg[..i])
}

fn parse_center(text: &str) -> Result<(Rational, Rational)> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Error::Input(format!("--center expects \"a,b\", got {text:?}")))?;
    Ok((parse_rational(a.trim())?, parse_rational(b.trim())?))
}

fn parse_adjacency(items: &[String]) -> Result<Vec<(usize, usize)>> {
    items
        .iter()
        .map(|s| {
            let bad = || Error::Input(format!("adjacency expects \"j-k\", got {s:?}"));
            let (j, k) = s.trim().split_once('-').ok_or_else(bad)?;
            Ok((j.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::internal(format!("serialization failed: {e}")))
}

fn dispatch(cli: &Cli, inputs: &mut Inputs<'_>) -> Result<Value> {
    let g = &cli.global;
    let caps = OracleCaps {
        degree: g.oracle_degree,
        coeff: g.oracle_coeff,
        support: g.oracle_support,
    };
    let sampling = SamplingConfig {
        samples: g.samples,
        seed: g.seed,
        densify: g.densify,
    };
    let steps = g.max_blowups;
    match &cli.command {
        Command::Val { alpha, f } => {
            let a = inputs.branch(alpha)?;
            let f = inputs.poly(f)?;
            Ok(json!({ "value": to_value(&a.value(&f))? }))
        }
        Command::Sign { alpha, f } => {
            let a = inputs.branch(alpha)?;
            let f = inputs.poly(f)?;
            to_value(&a.eval_poly(&f))
        }
        Command::CurveEq { alpha } => {
            let a = inputs.branch(alpha)?;
            Ok(json!({ "curve": to_value(&a.curve())? }))
        }
        Command::Blowup(p) => {
            let (a, b) = inputs.pair(p)?;
            to_value(&run_chain(&a, &b, steps)?)
        }
        Command::Sepideal(p) => {
            let (a, b) = inputs.pair(p)?;
            to_value(&separating_ideal(&a, &b, steps)?)
        }
        Command::Member { pair, g } => {
            let (a, b) = inputs.pair(pair)?;
            let g = inputs.poly(g)?;
            let s = separating_ideal(&a, &b, steps)?;
            Ok(json!({
                "member": member(&g, &s),
                "value": to_value(&a.value(&g))?,
                "threshold": to_value(&s.threshold)?,
            }))
        }
        Command::Factor { pair, g } => {
            let (a, b) = inputs.pair(pair)?;
            let g = inputs.poly(g)?;
            let s = separating_ideal(&a, &b, steps)?;
            let chain = match (s.kind, &s.chain) {
                (IdealKind::HeightTwo, Some(chain)) => chain,
                _ => return Err(Error::domain("factorization needs a height-two separating ideal")),
            };
            let f = monomial_factor(&g, chain)?;
            Ok(json!({ "r": chain.r(), "e": f.e, "f": f.f, "w": to_value(&f.w)? }))
        }
        Command::Witness { pair, a: text } => {
            let (a, b) = inputs.pair(pair)?;
            let p = inputs.poly(text)?;
            let s = separating_ideal(&a, &b, steps)?;
            let h = h_witness(&p, &s)?;
            Ok(json!({ "a": to_value(&p)?, "h": to_value(&h)? }))
        }
        Command::Connect { pair, g: texts } => {
            let (a, b) = inputs.pair(pair)?;
            let gs = texts.iter().map(|t| inputs.poly(t)).collect::<Result<Vec<_>>>()?;
            to_value(&connectedness_witness(&a, &b, &gs, sampling, steps)?)
        }
        Command::Pwcheck { pair, t } => {
            let (a, b) = inputs.pair(pair)?;
            let t = inputs.piecewise(t)?;
            to_value(&pw_pair_check(&t, &a, &b, steps)?)
        }
        Command::Chain { pair, t, adjacency } => {
            let (a, b) = inputs.pair(pair)?;
            let t = inputs.piecewise(t)?;
            let adj = parse_adjacency(adjacency)?;
            to_value(&chain_transfer(&t, &a, &b, &adj, steps)?)
        }
        Command::Assemble { t, point, witnesses } => {
            let t = inputs.piecewise(t)?;
            let points = point.iter().map(|p| inputs.branch(p)).collect::<Result<Vec<_>>>()?;
            let w = match witnesses {
                Some(path) => {
                    let raw: Vec<Vec<Poly2>> = inputs.json(path)?;
                    raw.into_iter()
                        .map(|row| row.into_iter().map(|h| inputs.shift_poly(h)).collect())
                        .collect()
                }
                None => build_witnesses(&t, &points, steps)?,
            };
            to_value(&assemble_supinf(&t, &points, &w, sampling)?)
        }
        Command::Oracle(p) => {
            let (a, b) = inputs.pair(p)?;
            let res = signchanger_oracle(&a, &b, caps)?;
            Ok(json!({
                "min_value": to_value(&res.min_value)?,
                "witness": to_value(&res.witness)?,
                "caps": { "degree": caps.degree, "coeff": caps.coeff, "support": caps.support },
            }))
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Input(_) => "input",
        Error::IterationLimit { .. } => "iteration_limit",
        Error::Exhausted(_) => "exhausted",
        Error::Domain(_) => "domain",
        Error::Internal(_) => "internal",
    }
}

fn error_document(e: &Error) -> Value {
    let mut doc = json!({ "error": error_kind(e), "message": e.to_string() });
    match e {
        Error::Parse { line, column, .. } => {
            doc["line"] = json!(line);
            doc["column"] = json!(column);
        }
        Error::IterationLimit { partial, .. } => {
            doc["partial_chain"] = serde_json::to_value(partial.as_ref()).unwrap_or(Value::Null);
        }
        _ => {}
    }
    doc
}

/// Human-readable rendering of an output document.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.len() == 2 && m.contains_key("omega") && m.contains_key("finite") => {
            let k = m["omega"].as_i64().unwrap_or(0);
            let f = m["finite"].as_str().unwrap_or("?");
            Some(match k {
                0 => f.to_string(),
                1 => format!("Ω + {f}"),
                _ => format!("{k}Ω + {f}"),
            })
        }
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::String(_) | Value::Number(_))) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn text_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, item) in m {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text_into(out, item, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        text_into(out, item, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(v),
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let format = cli.global.format;
    let shift = match cli.global.center.as_deref().map(parse_center).transpose() {
        Ok(s) => s,
        Err(e) => return failure(&e, format),
    };
    let mut inputs = Inputs {
        stdin,
        stdin_used: false,
        shift,
    };
    match dispatch(&cli, &mut inputs) {
        Ok(v) => Outcome {
            code: 0,
            stdout: render(&v, format),
            stderr: String::new(),
        },
        Err(e) => failure(&e, format),
    }
}

fn failure(e: &Error, format: Format) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: render(&error_document(e), format),
        stderr: format!("error: {e}\n"),
    }
}
