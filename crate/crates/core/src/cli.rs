//! Command-line front end: argument parsing, instance generators, run
//! configuration and persisted JSON reports.
//!
//! Exit codes: 0 completed (witness found, suite pass), 1 suite failure or
//! internal error, 2 input error, 3 inconclusive.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::operator::{
    norm_attainment_set, op_bj_orthogonal_numeric, op_bj_orthogonal_via_mt, operator_norm, LinearOperator,
    NormEvaluator,
};
use crate::orthogonality::{
    bj_orthogonal, in_cone, mutually_orthogonal, mutually_orthogonal_pair, point_left_symmetric,
    point_right_symmetric, search_radius, ConeSign, Method,
};
use crate::rng;
use crate::space::{axpy, Space};
use crate::symmetry::{
    classify_left_symmetric_direct_sum, classify_left_symmetric_from_l1, falsify_left_symmetric_op,
    falsify_right_symmetric_op, verify_theorem, Outcome, SuiteConfig, DEFAULT_BUDGET,
};
use crate::tolerance::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Environment variable that overrides `--out`.
pub const REPORT_DIR_ENV: &str = "BJ_REPORT_DIR";

/// Number of rows in a `--profile` CSV.
pub const PROFILE_ROWS: usize = 1001;

#[derive(Parser, Debug)]
#[command(name = "bj", version, about = "Birkhoff-James orthogonality and symmetry toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Space as JSON, e.g. '{"kind":"lp","p":3,"dim":2}', or a selector like lp:3:2.
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Vector-pair file written by `generate vector-pair`.
    #[arg(long)]
    pub pair: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// B-J orthogonality of x and y (or a cone test with --eps/--cone).
    Orth {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, value_enum)]
        cone: Option<ConeArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Approximate-orthogonality cone membership of y in x^{±ε}.
    Cone {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum, default_value_t = ConeArg::Plus)]
        cone: ConeArg,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Operator norm, maximisers and (with --attainment) the set M_T.
    Opnorm {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        attainment: bool,
        #[command(flatten)]
        common: Common,
    },
    /// B-J orthogonality T ⊥_B A of two operators.
    Oporth {
        #[arg(long)]
        t: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long, value_enum, default_value_t = OpMethodArg::Both)]
        method: OpMethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Left and right symmetry search at a point.
    ClassifyPoint {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Left-symmetry classifier for operators from l1^n or X ⊕₁ R.
    ClassifyOp {
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a symmetry witness; persists the report.
    Falsify {
        #[arg(value_enum)]
        direction: DirectionArg,
        #[arg(long)]
        op: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value = "reports")]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a theorem suite; persists the report.
    Verify {
        theorem: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Comma-separated selectors, e.g. lp:3:2,l2:3.
        #[arg(long)]
        spaces: Option<String>,
        #[arg(long, default_value = "reports")]
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Deterministic instance generators.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
}

#[derive(Subcommand, Debug)]
pub enum Generate {
    /// Random operator between two spaces.
    Operator {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        codomain: String,
        /// Rank of the generated matrix (default: full).
        #[arg(long)]
        rank: Option<usize>,
        /// Write the instance here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the profile λ ↦ ||T + λA|| as CSV.
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Operator file for A in the profile (default: a random operator).
        #[arg(long)]
        against: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Random vector pair, optionally mutually B-J orthogonal.
    VectorPair {
        #[arg(long)]
        space: String,
        #[arg(long)]
        mutual: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the profile λ ↦ ||x + λy|| as CSV.
        #[arg(long)]
        profile: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum MethodArg {
    Analytic,
    Numeric,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum OpMethodArg {
    Numeric,
    Mt,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum ConeArg {
    Plus,
    Minus,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionArg {
    Left,
    Right,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Analytic => Method::Analytic,
            MethodArg::Numeric => Method::Numeric,
            MethodArg::Both => Method::Both,
        }
    }
}

impl From<ConeArg> for ConeSign {
    fn from(c: ConeArg) -> Self {
        match c {
            ConeArg::Plus => ConeSign::Plus,
            ConeArg::Minus => ConeSign::Minus,
        }
    }
}

/// Everything a persisted report needs to be reproduced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub budget: usize,
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub spaces: Vec<String>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn validate(&self) -> Result<Tolerances> {
        if self.trials == 0 || self.budget == 0 {
            return Err(Error::input("trials and budget must be positive"));
        }
        Tolerances::with_overrides(&self.tolerance_overrides)
    }

    /// Output directory after applying the environment override.
    pub fn report_dir(&self) -> PathBuf {
        match std::env::var_os(REPORT_DIR_ENV) {
            Some(d) if !d.is_empty() => PathBuf::from(d),
            _ => self.out.clone(),
        }
    }
}

/// Vector-pair instance file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorPair {
    pub space: Space,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Parse `l1:N`, `l2:N`, `linf:N`, `lP:N` or `lp:P:N`; JSON objects are also accepted.
pub fn parse_selector(s: &str) -> Result<Space> {
    let s = s.trim();
    if s.starts_with('{') {
        return Ok(serde_json::from_str(s)?);
    }
    let bad = || Error::input(format!("bad space selector `{s}`"));
    let parts: Vec<&str> = s.split(':').collect();
    let (p, n) = match parts.as_slice() {
        ["lp", p, n] => (*p, *n),
        [head, n] if head.starts_with('l') && head.len() > 1 => (&head[1..], *n),
        _ => return Err(bad()),
    };
    let p = if p.eq_ignore_ascii_case("inf") {
        f64::INFINITY
    } else {
        p.parse::<f64>().map_err(|_| bad())?
    };
    let n = n.parse::<usize>().map_err(|_| bad())?;
    Space::lp(p, n)
}

pub fn parse_csv(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::input(format!("bad number `{}`", v.trim())))
        })
        .collect()
}

fn parse_overrides(items: &[String]) -> Result<BTreeMap<String, f64>> {
    let mut map = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::input(format!("expected NAME=VALUE, got `{item}`")))?;
        let v = v
            .parse::<f64>()
            .map_err(|_| Error::input(format!("bad tolerance value `{v}`")))?;
        map.insert(k.trim().to_string(), v);
    }
    Ok(map)
}

fn tolerances(common: &Common) -> Result<Tolerances> {
    Tolerances::with_overrides(&parse_overrides(&common.tol)?)
}

/// Pretty JSON with every float printed to 17 significant digits.
struct SignificantDigits<'a>(PrettyFormatter<'a>);

impl Formatter for SignificantDigits<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serialise with 17 significant digits per float.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SignificantDigits(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn load_pair(pair: &PairArgs, need_y: bool) -> Result<VectorPair> {
    if let Some(path) = &pair.pair {
        return read_json(path);
    }
    let space = parse_selector(pair.space.as_deref().ok_or_else(|| Error::input("--space is required"))?)?;
    let x = parse_csv(pair.x.as_deref().ok_or_else(|| Error::input("--x is required"))?)?;
    let y = match (&pair.y, need_y) {
        (Some(y), _) => parse_csv(y)?,
        (None, false) => vec![0.0; space.dim()],
        (None, true) => return Err(Error::input("--y is required")),
    };
    space.check(&x)?;
    space.check(&y)?;
    Ok(VectorPair { space, x, y })
}

fn is_input_error(e: &Error) -> bool {
    !matches!(
        e,
        Error::NumericFailure(_) | Error::Inconsistent(_) | Error::Internal(_) | Error::NotFound(_)
    )
}

fn write_report(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, body)?;
    Ok(path)
}

/// Profile samples of `λ ↦ f(λ)` over `[-r, r]`.
fn profile_csv(r: f64, mut f: impl FnMut(f64) -> f64) -> String {
    let mut out = String::from("lambda,norm\n");
    for i in 0..PROFILE_ROWS {
        let l = -r + 2.0 * r * i as f64 / (PROFILE_ROWS - 1) as f64;
        out.push_str(&format!("{l:.16e},{:.16e}\n", f(l)));
    }
    out
}

struct CommandOutput {
    code: i32,
    stdout: String,
    stderr: String,
}

impl CommandOutput {
    fn json<T: Serialize>(code: i32, v: &T) -> Result<Self> {
        Ok(Self {
            code,
            stdout: to_json(v)? + "\n",
            stderr: String::new(),
        })
    }
}

/// Parse `args` (including the program name) and run; output goes to the
/// given writers. Returns the exit code.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            let _ = err.write_all(o.stderr.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_input_error(&e) {
                EXIT_INPUT
            } else {
                EXIT_FAIL
            }
        }
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(command: Command) -> Result<CommandOutput> {
    match command {
        Command::Orth { pair, method, eps, cone, common } => {
            let tol = tolerances(&common)?;
            let p = load_pair(&pair, true)?;
            if eps.is_some() || cone.is_some() {
                let sign = cone.unwrap_or(ConeArg::Plus).into();
                let v = in_cone(&p.space, &p.x, &p.y, sign, eps.unwrap_or(0.0), &tol)?;
                return CommandOutput::json(EXIT_OK, &v);
            }
            let v = bj_orthogonal(&p.space, &p.x, &p.y, method.into(), &tol)?;
            CommandOutput::json(EXIT_OK, &v)
        }
        Command::Cone { pair, cone, eps, common } => {
            let tol = tolerances(&common)?;
            let p = load_pair(&pair, true)?;
            CommandOutput::json(EXIT_OK, &in_cone(&p.space, &p.x, &p.y, cone.into(), eps, &tol)?)
        }
        Command::Opnorm { op, attainment, common } => {
            let tol = tolerances(&common)?;
            let t: LinearOperator = read_json(&op)?;
            if attainment {
                CommandOutput::json(EXIT_OK, &norm_attainment_set(&t, &tol, common.seed)?)
            } else {
                CommandOutput::json(EXIT_OK, &operator_norm(&t))
            }
        }
        Command::Oporth { t, a, method, common } => {
            let tol = tolerances(&common)?;
            let t: LinearOperator = read_json(&t)?;
            let a: LinearOperator = read_json(&a)?;
            t.same_spaces(&a)?;
            let value = match method {
                OpMethodArg::Numeric => json!({ "definition": op_bj_orthogonal_numeric(&t, &a, &tol, common.seed)? }),
                OpMethodArg::Mt => json!({ "attainment_set": op_bj_orthogonal_via_mt(&t, &a, &tol, common.seed)? }),
                OpMethodArg::Both => {
                    let d = op_bj_orthogonal_numeric(&t, &a, &tol, common.seed)?;
                    let m = op_bj_orthogonal_via_mt(&t, &a, &tol, common.seed)?;
                    json!({ "agree": d.orthogonal == m.orthogonal, "definition": d, "attainment_set": m })
                }
            };
            CommandOutput::json(EXIT_OK, &value)
        }
        Command::ClassifyPoint { pair, budget, common } => {
            let tol = tolerances(&common)?;
            let p = load_pair(&pair, false)?;
            let left = point_left_symmetric(&p.space, &p.x, budget, common.seed, &tol)?;
            let right = point_right_symmetric(&p.space, &p.x, budget, common.seed, &tol)?;
            CommandOutput::json(EXIT_OK, &json!({ "left": left, "right": right }))
        }
        Command::ClassifyOp { op, budget, common } => {
            let tol = tolerances(&common)?;
            let t: LinearOperator = read_json(&op)?;
            let v = if t.domain().is_l1() {
                classify_left_symmetric_from_l1(&t, budget, common.seed, &tol)?
            } else {
                classify_left_symmetric_direct_sum(&t, budget, common.seed, &tol)?
            };
            CommandOutput::json(EXIT_OK, &v)
        }
        Command::Falsify { direction, op, budget, out, common } => {
            let cfg = RunConfig {
                seed: common.seed,
                trials: 1,
                budget,
                tolerance_overrides: parse_overrides(&common.tol)?,
                spaces: Vec::new(),
                out,
            };
            let tol = cfg.validate()?;
            let t: LinearOperator = read_json(&op)?;
            let report = match direction {
                DirectionArg::Left => falsify_left_symmetric_op(&t, budget, cfg.seed, &tol)?,
                DirectionArg::Right => falsify_right_symmetric_op(&t, budget, cfg.seed, &tol)?,
            };
            let kind = match direction {
                DirectionArg::Left => "left",
                DirectionArg::Right => "right",
            };
            let instance = to_json(&json!({ "direction": kind, "operator": t, "config": cfg }))?;
            let hash = sha256_hex(instance.as_bytes());
            let body = to_json(&json!({
                "command": "falsify",
                "instance_hash": hash,
                "config": cfg,
                "tolerances": tol,
                "report": report,
            }))? + "\n";
            let path = write_report(&cfg.report_dir(), &format!("falsify-{hash}.json"), &body)?;
            let code = if report.is_symmetric_within_budget() { EXIT_INCONCLUSIVE } else { EXIT_OK };
            Ok(CommandOutput {
                code,
                stdout: body,
                stderr: format!("report written to {}\n", path.display()),
            })
        }
        Command::Verify { theorem, trials, budget, spaces, out, common } => {
            let selectors: Vec<String> = spaces
                .as_deref()
                .map(|s| s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect())
                .unwrap_or_default();
            let cfg = RunConfig {
                seed: common.seed,
                trials,
                budget,
                tolerance_overrides: parse_overrides(&common.tol)?,
                spaces: selectors,
                out,
            };
            let tol = cfg.validate()?;
            let spaces = cfg.spaces.iter().map(|s| parse_selector(s)).collect::<Result<Vec<_>>>()?;
            let suite = SuiteConfig {
                trials,
                seed: cfg.seed,
                budget,
                spaces,
                tolerances: tol,
            };
            let report = verify_theorem(&theorem, &suite)?;
            let hash = sha256_hex(to_json(&json!({ "theorem": theorem, "config": cfg }))?.as_bytes());
            let body = to_json(&json!({
                "command": "verify",
                "instance_hash": hash,
                "config": cfg,
                "tolerances": tol,
                "report": report,
            }))? + "\n";
            let path = write_report(&cfg.report_dir(), &format!("verify-{theorem}-{hash}.json"), &body)?;
            let code = match report.status {
                Outcome::Pass => EXIT_OK,
                Outcome::Fail => EXIT_FAIL,
                Outcome::Inconclusive => EXIT_INCONCLUSIVE,
            };
            Ok(CommandOutput {
                code,
                stdout: format!(
                    "{theorem}: {} ({} pass, {} fail, {} inconclusive)\n",
                    serde_json::to_value(report.status)?.as_str().unwrap_or("?"),
                    report.count(Outcome::Pass),
                    report.count(Outcome::Fail),
                    report.count(Outcome::Inconclusive),
                ),
                stderr: format!("report written to {}\n", path.display()),
            })
        }
        Command::Generate { what } => generate(what),
    }
}

/// Random operator of the given rank (full rank when `None`).
pub fn generate_operator(domain: &Space, codomain: &Space, rank: Option<usize>, seed: u64) -> Result<LinearOperator> {
    let (m, n) = (codomain.dim(), domain.dim());
    let full = m.min(n);
    let k = rank.unwrap_or(full);
    if k == 0 || k > full {
        return Err(Error::input(format!("rank must lie in 1..={full}")));
    }
    let mut r = rng::rng(seed);
    let left: Vec<Vec<f64>> = (0..m).map(|_| rng::normal_vec(&mut r, k)).collect();
    let right: Vec<Vec<f64>> = (0..k).map(|_| rng::normal_vec(&mut r, n)).collect();
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|i| (0..n).map(|j| (0..k).map(|l| left[i][l] * right[l][j]).sum()).collect())
        .collect();
    LinearOperator::from_rows(&rows, domain.clone(), codomain.clone())
}

/// Random vector pair; with `mutual`, both `x ⊥_B y` and `y ⊥_B x` hold.
pub fn generate_vector_pair(space: &Space, mutual: bool, seed: u64, tol: &Tolerances) -> Result<VectorPair> {
    if mutual {
        let (x, y) = mutually_orthogonal_pair(space, seed, tol)?;
        if !mutually_orthogonal(space, &x, &y, tol)? {
            return Err(Error::NumericFailure("generated pair failed the mutual check".into()));
        }
        return Ok(VectorPair { space: space.clone(), x, y });
    }
    let mut r = rng::rng(seed);
    Ok(VectorPair {
        space: space.clone(),
        x: rng::normal_vec(&mut r, space.dim()),
        y: rng::normal_vec(&mut r, space.dim()),
    })
}

fn emit(value: &impl Serialize, output: Option<&Path>, stderr: &mut String) -> Result<String> {
    let body = to_json(value)? + "\n";
    match output {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, &body)?;
            stderr.push_str(&format!("instance written to {}\n", path.display()));
            Ok(String::new())
        }
        None => Ok(body),
    }
}

fn generate(what: Generate) -> Result<CommandOutput> {
    let mut stderr = String::new();
    let stdout = match what {
        Generate::Operator { domain, codomain, rank, output, profile, against, common } => {
            tolerances(&common)?;
            let d = parse_selector(&domain)?;
            let c = parse_selector(&codomain)?;
            let t = generate_operator(&d, &c, rank, common.seed)?;
            if let Some(path) = profile {
                let a = match against {
                    Some(p) => read_json::<LinearOperator>(&p)?,
                    None => generate_operator(&d, &c, None, rng::sub_seed(common.seed, 1))?,
                };
                t.same_spaces(&a)?;
                let r = search_radius(operator_norm(&t).value, operator_norm(&a).value);
                let mut ev = NormEvaluator::new(common.seed);
                std::fs::write(&path, profile_csv(r, |l| ev.norm(&t.add_scaled(l, &a))))?;
                stderr.push_str(&format!("profile written to {}\n", path.display()));
            }
            emit(&t, output.as_deref(), &mut stderr)?
        }
        Generate::VectorPair { space, mutual, output, profile, common } => {
            let tol = tolerances(&common)?;
            let s = parse_selector(&space)?;
            let pair = generate_vector_pair(&s, mutual, common.seed, &tol)?;
            if let Some(path) = profile {
                let r = search_radius(s.norm(&pair.x), s.norm(&pair.y));
                std::fs::write(&path, profile_csv(r, |l| s.norm(&axpy(&pair.x, l, &pair.y))))?;
                stderr.push_str(&format!("profile written to {}\n", path.display()));
            }
            emit(&pair, output.as_deref(), &mut stderr)?
        }
    };
    Ok(CommandOutput { code: EXIT_OK, stdout, stderr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn selectors() {
        assert_eq!(parse_selector("l1:3").unwrap(), Space::l1(3));
        assert_eq!(parse_selector("lp:2:2").unwrap(), Space::l2(2));
        assert_eq!(parse_selector("linf:4").unwrap(), Space::linf(4));
        assert_eq!(parse_selector("l1.5:2").unwrap(), Space::lp(1.5, 2).unwrap());
        assert_eq!(
            parse_selector(r#"{"kind":"lp","p":1,"dim":2}"#).unwrap(),
            Space::l1(2)
        );
        assert!(parse_selector("lq:3").is_err());
        assert!(parse_selector("lp:0.5:2").is_err());
    }

    #[test]
    fn floats_use_seventeen_digits() {
        let s = to_json(&json!({ "v": 0.1 })).unwrap();
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["v"].as_f64(), Some(0.1));
    }

    #[test]
    fn profile_has_header_and_rows() {
        let csv = profile_csv(1.0, |l| l.abs());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "lambda,norm");
        assert_eq!(lines.len(), PROFILE_ROWS + 1);
    }

    #[test]
    fn run_config_rejects_bad_values() {
        let mut cfg = RunConfig {
            seed: 1,
            trials: 0,
            budget: 1,
            tolerance_overrides: BTreeMap::new(),
            spaces: vec![],
            out: "r".into(),
        };
        assert!(cfg.validate().is_err());
        cfg.trials = 1;
        cfg.tolerance_overrides.insert("nope".into(), 1.0);
        assert!(matches!(cfg.validate(), Err(Error::UnknownTolerance(_))));
    }
}
