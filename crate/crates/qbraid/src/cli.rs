//! Command-line front end: argument parsing, report assembly and exit codes.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 usage or input error,
//! 4 when a generated matrix exceeds `QBRAID_MAX_DEGREE`.

use crate::error::Error;
use crate::irred::{self, Verdict};
use crate::linalg::{format_latex, format_pretty, ExactMatrix};
use crate::qcomb::{triangle_row, verify_identity, Identity, QContext};
use crate::rep::{build_representation, verify_braid, RepSpec};
use crate::scalar::Scalar;
use crate::structure::{self, CheckReport, Generator, TWParams};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

/// Environment variable capping the q-degree span of generated matrices.
pub const MAX_DEGREE_ENV: &str = "QBRAID_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(
    name = "qbraid",
    version,
    about = "Exact B3 representations from the q-Pascal triangle"
)]
pub struct Cli {
    /// Emit one JSON report per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Matrix rendering in text mode.
    #[arg(long, global = true, value_enum, default_value_t = MatrixFormat::Pretty)]
    pub format: MatrixFormat,
    #[command(subcommand)]
    pub command: Command,
}

/// Rendering of a matrix in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Json,
    Pretty,
    Latex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rows of the q-Pascal triangle, checked against both recursions.
    Triangle(QSweep),
    /// Binomial and q-binomial identities.
    Identities(IdentityArgs),
    /// Build or verify a representation.
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
    /// Irreducibility analysis.
    Irr {
        #[command(subcommand)]
        action: IrrAction,
    },
    /// q-exponential realization of the triangle.
    Exp {
        #[command(subcommand)]
        action: SweepCheck,
    },
    /// Symmetric powers of the SL(2,Z) generators.
    Sym {
        #[command(subcommand)]
        action: PlainCheck,
    },
    /// Braid-like relation of the operators Phi and Psi.
    Ferrand {
        #[command(subcommand)]
        action: SweepCheck,
    },
    /// Equivalence with the Tuba-Wenzl normal forms.
    Tw {
        #[command(subcommand)]
        action: TwAction,
    },
    /// Image of a braid word in SL(2,Z).
    Sl2(Sl2Args),
}

/// A single n or a sweep 0..=max-n (starting at `min` where required).
#[derive(Args, Debug, Clone)]
pub struct Sweep {
    /// Size parameter (matrices are (n+1)x(n+1)).
    #[arg(long, conflicts_with = "max_n")]
    pub n: Option<usize>,
    /// Run every n up to this bound, one report per n.
    #[arg(long)]
    pub max_n: Option<usize>,
}

impl Sweep {
    fn values(&self, min: usize) -> Result<Vec<usize>, CliError> {
        match (self.n, self.max_n) {
            (Some(n), _) if n < min => Err(CliError::Usage(format!("--n must be at least {min}"))),
            (Some(n), _) => Ok(vec![n]),
            (None, Some(m)) => Ok((min..=m).collect()),
            (None, None) => Err(CliError::Usage("one of --n or --max-n is required".into())),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct QSweep {
    #[command(flatten)]
    pub sweep: Sweep,
    /// Value of q: `q` (symbolic), a rational, or an expression in zeta(m).
    #[arg(long, default_value = "q")]
    pub q: String,
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    #[command(flatten)]
    pub sweep: QSweep,
    /// One of bin1q, bin2q, qsymmetry, bin1, bin2 (default: all).
    #[arg(long)]
    pub id: Option<String>,
}

/// Parameters of one representation.
#[derive(Args, Debug, Clone)]
pub struct RepArgs {
    #[command(flatten)]
    pub sweep: QSweep,
    /// Raw diagonal Λ as comma-separated scalars (checked against cond_q).
    #[arg(long, conflicts_with = "lambda_prime")]
    pub lambda: Option<String>,
    /// Factored diagonal Λ′ with Λ′Λ′^♯ = cI (default: identity).
    #[arg(long)]
    pub lambda_prime: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum RepAction {
    /// Print σ₁, σ₂ and the structure matrices.
    Build(RepArgs),
    /// Check the braid relation and its equivalent forms.
    Verify(RepArgs),
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[command(flatten)]
    pub sweep: Sweep,
}

#[derive(Args, Debug)]
pub struct EquivArgs {
    #[command(flatten)]
    pub first: RepArgs,
    /// q of the second representation.
    #[arg(long)]
    pub q2: String,
    /// Raw Λ of the second representation.
    #[arg(long, conflicts_with = "lambda_prime2")]
    pub lambda2: Option<String>,
    /// Factored Λ′ of the second representation (default: identity).
    #[arg(long)]
    pub lambda_prime2: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum IrrAction {
    /// Minor search for every r, with both oracles.
    Minors(RepArgs),
    /// Commutant dimension and basis.
    Commutant(RepArgs),
    /// Dimension of the generated algebra.
    Burnside(RepArgs),
    /// Analysis of every suspected root-of-unity point at q = 1.
    Catalog(CatalogArgs),
    /// Intertwiners between two representations.
    Equiv(EquivArgs),
}

#[derive(Subcommand, Debug)]
pub enum SweepCheck {
    /// Run the check.
    Check(QSweep),
}

#[derive(Subcommand, Debug)]
pub enum PlainCheck {
    /// Run the check.
    Check(Sweep),
}

#[derive(Args, Debug)]
pub struct TwArgs {
    /// Module dimension, 2..5.
    #[arg(long)]
    pub n: usize,
    /// Eigenvalues λ₁..λₙ (for n = 5 defaults to 1,q^-1,q^-2,q^-2,1).
    #[arg(long)]
    pub lambda: Option<String>,
    /// D for n = 4, with D² = λ₂λ₃/(λ₁λ₄).
    #[arg(long)]
    pub d: Option<String>,
    /// γ for n = 5, with γ⁵ = λ₁λ₂λ₃λ₄λ₅.
    #[arg(long)]
    pub gamma: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum TwAction {
    /// Build both sides and check the conjugation.
    Check(TwArgs),
}

#[derive(Args, Debug)]
pub struct Sl2Args {
    /// Word such as "s1 s2 s1^-1".
    #[arg(long, default_value = "")]
    pub word: String,
}

/// Errors surfaced by the command runner.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] Error),
    #[error("degree span {found} exceeds {MAX_DEGREE_ENV}={cap}")]
    DegreeCap { cap: u64, found: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 3,
            CliError::DegreeCap { .. } => 4,
        }
    }
}

/// Overall outcome of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    fn from_bool(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::OperatorIrreducible => Status::Pass,
            Verdict::OperatorReducible | Verdict::SubspaceReducibleWitnessed => Status::Fail,
            Verdict::Inconclusive => Status::Inconclusive,
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    fn worst(self, other: Self) -> Self {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        }
    }
}

/// One emitted report.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Map<String, Value>,
    pub elapsed_ms: u64,
}

/// Renders a matrix in the requested mode.
pub fn emit_matrix(m: &ExactMatrix, mode: MatrixFormat) -> String {
    emit_cells(&m.to_strings(), mode)
}

fn emit_cells(cells: &[Vec<String>], mode: MatrixFormat) -> String {
    match mode {
        MatrixFormat::Json => serde_json::to_string(cells).expect("strings serialize"),
        MatrixFormat::Pretty => format_pretty(cells),
        MatrixFormat::Latex => format_latex(cells),
    }
}

/// Parses a scalar in the smallest field containing its atoms.
pub fn parse_scalar_spec(text: &str) -> Result<Scalar, Error> {
    Scalar::parse(text)
}

/// Parses a q-spec, rejecting zero.
pub fn parse_q(text: &str) -> Result<QContext, Error> {
    QContext::new(parse_scalar_spec(text)?)
}

fn parse_list(text: &str) -> Result<Vec<Scalar>, Error> {
    text.split(',').map(|t| parse_scalar_spec(t.trim())).collect()
}

fn rep_spec(n: usize, q: &str, lambda: Option<&str>, lambda_prime: Option<&str>) -> Result<RepSpec, Error> {
    let ctx = parse_q(q)?;
    match (lambda, lambda_prime) {
        (Some(l), _) => RepSpec::raw(n, &ctx, &parse_list(l)?),
        (None, Some(l)) => RepSpec::factored(n, &ctx, &parse_list(l)?),
        (None, None) => Ok(RepSpec::unit(n, &ctx)),
    }
}

/// Checks generated matrices against the degree cap.
struct DegreeGuard {
    cap: Option<u64>,
}

impl DegreeGuard {
    fn from_env() -> Result<Self, CliError> {
        match std::env::var(MAX_DEGREE_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|c| DegreeGuard { cap: Some(c) })
                .map_err(|_| CliError::Usage(format!("{MAX_DEGREE_ENV} must be a nonnegative integer"))),
            Err(_) => Ok(DegreeGuard { cap: None }),
        }
    }

    fn check(&self, m: &ExactMatrix) -> Result<Value, CliError> {
        if let Some(cap) = self.cap {
            let found = m.degree_span();
            if found > cap {
                return Err(CliError::DegreeCap { cap, found });
            }
        }
        Ok(json!(m.to_strings()))
    }
}

fn to_map(v: impl Serialize) -> Map<String, Value> {
    match serde_json::to_value(v).expect("report serializes") {
        Value::Object(m) => m,
        other => Map::from_iter([("value".to_string(), other)]),
    }
}

struct Runner {
    guard: DegreeGuard,
    command: String,
    reports: Vec<Report>,
}

impl Runner {
    fn push(&mut self, status: Status, payload: Map<String, Value>, start: Instant) {
        self.reports.push(Report {
            command: self.command.clone(),
            status,
            payload,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }

    fn rep(&mut self, a: &RepArgs, verify: bool) -> Result<(), CliError> {
        let many = a.sweep.sweep.n.is_none();
        if many && (a.lambda.is_some() || a.lambda_prime.is_some()) {
            return Err(CliError::Usage(
                "--max-n sweeps use the identity Λ′; drop --lambda".into(),
            ));
        }
        for n in a.sweep.sweep.values(if many { 1 } else { 0 })? {
            let start = Instant::now();
            let spec = rep_spec(n, &a.sweep.q, a.lambda.as_deref(), a.lambda_prime.as_deref())?;
            let rep = build_representation(&spec)?;
            let mut p = Map::new();
            p.insert("n".into(), json!(n));
            p.insert("q".into(), json!(spec.ctx.q().to_string()));
            p.insert(
                "lambda".into(),
                json!(spec
                    .effective_lambda()
                    .iter()
                    .map(Scalar::to_string)
                    .collect::<Vec<_>>()),
            );
            p.insert("sigma1".into(), self.guard.check(&rep.sigma1)?);
            p.insert("sigma2".into(), self.guard.check(&rep.sigma2)?);
            let status = if verify {
                let report = verify_braid(&rep)?;
                p.insert("product".into(), self.guard.check(&report.product)?);
                p.insert("expected".into(), self.guard.check(&report.expected)?);
                p.insert("first_failure".into(), json!(report.first_failure));
                Status::from_bool(report.pass)
            } else {
                p.insert("s_matrix".into(), self.guard.check(&rep.s_matrix)?);
                p.insert("lambda_canonical".into(), self.guard.check(&rep.lambda_canonical)?);
                p.insert("d_matrix".into(), self.guard.check(&rep.d_matrix)?);
                Status::Pass
            };
            self.push(status, p, start);
        }
        Ok(())
    }

    fn irr(&mut self, a: &RepArgs, with_basis: bool) -> Result<(), CliError> {
        let n = a
            .sweep
            .sweep
            .n
            .ok_or_else(|| CliError::Usage("--n is required".into()))?;
        let start = Instant::now();
        let spec = rep_spec(n, &a.sweep.q, a.lambda.as_deref(), a.lambda_prime.as_deref())?;
        let rep = build_representation(&spec)?;
        self.guard.check(&rep.sigma1)?;
        self.guard.check(&rep.sigma2)?;
        let report = irred::analyze(&rep)?;
        let status = Status::from_verdict(report.verdict);
        let mut p = to_map(&report);
        if with_basis {
            let c = irred::commutant(&rep)?;
            let basis = c
                .basis
                .iter()
                .map(|b| self.guard.check(b))
                .collect::<Result<Vec<_>, _>>()?;
            p.insert("commutant_basis".into(), json!(basis));
        }
        self.push(status, p, start);
        Ok(())
    }

    fn catalog(&mut self, a: &CatalogArgs) -> Result<(), CliError> {
        for n in a.sweep.values(2)? {
            let start = Instant::now();
            let mut entries = Vec::new();
            let mut status = Status::Pass;
            for e in irred::suspected_catalog(n)? {
                let report = irred::analyze(&build_representation(&e.spec()?)?)?;
                if report.verdict == Verdict::OperatorIrreducible {
                    status = status.worst(Status::Inconclusive);
                }
                let mut m = to_map(&report);
                m.insert("s".into(), json!(e.s));
                m.insert("sign".into(), json!(e.sign));
                entries.push(Value::Object(m));
            }
            let mut p = Map::new();
            p.insert("n".into(), json!(n));
            p.insert("entries".into(), json!(entries));
            self.push(status, p, start);
        }
        Ok(())
    }

    fn equiv(&mut self, a: &EquivArgs) -> Result<(), CliError> {
        let n = a
            .first
            .sweep
            .sweep
            .n
            .ok_or_else(|| CliError::Usage("--n is required".into()))?;
        let start = Instant::now();
        let f = &a.first;
        let ra = build_representation(&rep_spec(
            n,
            &f.sweep.q,
            f.lambda.as_deref(),
            f.lambda_prime.as_deref(),
        )?)?;
        let rb = build_representation(&rep_spec(n, &a.q2, a.lambda2.as_deref(), a.lambda_prime2.as_deref())?)?;
        let space = irred::intertwiner_space(&ra, &rb)?;
        let status = match (&space.invertible, space.dimension) {
            (Some(_), _) => Status::Pass,
            (None, 0) => Status::Fail,
            (None, _) => Status::Inconclusive,
        };
        let basis = space
            .basis
            .iter()
            .map(|b| self.guard.check(b))
            .collect::<Result<Vec<_>, _>>()?;
        let mut p = Map::new();
        p.insert("n".into(), json!(n));
        p.insert("dimension".into(), json!(space.dimension));
        p.insert("basis".into(), json!(basis));
        let inv = space.invertible.as_ref().map(|m| self.guard.check(m)).transpose()?;
        p.insert("invertible".into(), json!(inv));
        self.push(status, p, start);
        Ok(())
    }

    fn check_sweep(
        &mut self,
        sweep: &Sweep,
        min: usize,
        f: impl Fn(usize) -> Result<CheckReport, Error>,
    ) -> Result<(), CliError> {
        for n in sweep.values(min)? {
            let start = Instant::now();
            let r = f(n)?;
            self.push(Status::from_bool(r.pass), to_map(&r), start);
        }
        Ok(())
    }

    fn tw(&mut self, a: &TwArgs) -> Result<(), CliError> {
        let start = Instant::now();
        let params = match (a.n, &a.lambda) {
            (5, None) => TWParams::default_n5(&QContext::symbolic())?,
            (_, None) => return Err(CliError::Usage("--lambda is required for n < 5".into())),
            (n, Some(l)) => {
                let l = parse_list(l)?;
                if l.len() != n {
                    return Err(Error::LambdaLength {
                        expected: n,
                        got: l.len(),
                    }
                    .into());
                }
                match n {
                    4 => {
                        let d =
                            a.d.as_deref()
                                .ok_or_else(|| CliError::Usage("--d is required for n = 4".into()))?;
                        TWParams::with_d(&l, parse_scalar_spec(d)?)?
                    }
                    5 => {
                        let g = a
                            .gamma
                            .as_deref()
                            .ok_or_else(|| CliError::Usage("--gamma is required".into()))?;
                        TWParams::with_gamma(&l, parse_scalar_spec(g)?)?
                    }
                    _ => TWParams::new(&l)?,
                }
            }
        };
        let report = structure::tw_equivalence_check(&params)?;
        let (tw1, _) = structure::tw_matrices(&params)?;
        let mut p = Map::new();
        p.insert("n".into(), json!(a.n));
        p.insert("q".into(), json!(report.q.to_string()));
        p.insert("conjugator".into(), self.guard.check(&report.conjugator)?);
        p.insert("sigma1_tw".into(), self.guard.check(&tw1)?);
        p.insert("sigma1".into(), json!(report.sigma1));
        p.insert("sigma2".into(), json!(report.sigma2));
        self.push(Status::from_bool(report.pass), p, start);
        Ok(())
    }

    fn execute(&mut self, command: &Command) -> Result<(), CliError> {
        match command {
            Command::Triangle(a) => {
                let ctx = parse_q(&a.q)?;
                for n in a.sweep.values(0)? {
                    let start = Instant::now();
                    let row = triangle_row(n, &ctx)?;
                    let m = ExactMatrix::from_rows(ctx.ctx(), vec![row.entries.clone()])?;
                    let mut p = Map::new();
                    p.insert("n".into(), json!(n));
                    p.insert("row".into(), self.guard.check(&m)?);
                    self.push(Status::Pass, p, start);
                }
            }
            Command::Identities(a) => {
                let ids = match &a.id {
                    Some(name) => vec![Identity::from_name(name)
                        .ok_or_else(|| CliError::Usage(format!("unknown identity '{name}'")))?],
                    None => Identity::ALL.to_vec(),
                };
                let ctx = parse_q(&a.sweep.q)?;
                for n in a.sweep.sweep.values(0)? {
                    let start = Instant::now();
                    let reports = ids
                        .iter()
                        .map(|&id| verify_identity(id, n, &ctx))
                        .collect::<Result<Vec<_>, _>>()?;
                    let pass = reports.iter().all(|r| r.pass);
                    let mut p = Map::new();
                    p.insert("n".into(), json!(n));
                    p.insert("identities".into(), json!(reports));
                    self.push(Status::from_bool(pass), p, start);
                }
            }
            Command::Rep { action } => match action {
                RepAction::Build(a) => self.rep(a, false)?,
                RepAction::Verify(a) => self.rep(a, true)?,
            },
            Command::Irr { action } => match action {
                IrrAction::Minors(a) | IrrAction::Burnside(a) => self.irr(a, false)?,
                IrrAction::Commutant(a) => self.irr(a, true)?,
                IrrAction::Catalog(a) => self.catalog(a)?,
                IrrAction::Equiv(a) => self.equiv(a)?,
            },
            Command::Exp {
                action: SweepCheck::Check(a),
            } => {
                let ctx = parse_q(&a.q)?;
                self.check_sweep(&a.sweep, 0, |n| structure::exp_check(n, &ctx))?
            }
            Command::Sym {
                action: PlainCheck::Check(a),
            } => self.check_sweep(a, 0, structure::sym_check)?,
            Command::Ferrand {
                action: SweepCheck::Check(a),
            } => {
                let ctx = parse_q(&a.q)?;
                self.check_sweep(&a.sweep, 0, |n| structure::ferrand_check(n, &ctx))?
            }
            Command::Tw {
                action: TwAction::Check(a),
            } => self.tw(a)?,
            Command::Sl2(a) => {
                let start = Instant::now();
                let word = Generator::parse_word(&a.word)?;
                let m = structure::sl2_projection(&word);
                let det = structure::det2(&m);
                let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
                let mut p = Map::new();
                p.insert("matrix".into(), json!(cells));
                p.insert("determinant".into(), json!(det.to_string()));
                self.push(Status::from_bool(det == 1.into()), p, start);
            }
        }
        Ok(())
    }
}

fn write_text(out: &mut dyn Write, r: &Report, mode: MatrixFormat) -> std::io::Result<()> {
    writeln!(
        out,
        "[{}] {}",
        serde_json::to_value(r.status).unwrap().as_str().unwrap_or(""),
        r.command
    )?;
    for (k, v) in &r.payload {
        match as_cells(v) {
            Some(cells) => writeln!(out, "{k}:\n{}", emit_cells(&cells, mode))?,
            None => writeln!(out, "{k}: {v}")?,
        }
    }
    Ok(())
}

/// A JSON array of equal-length string arrays, read back as matrix cells.
fn as_cells(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    let cells = rows
        .iter()
        .map(|r| {
            r.as_array()?
                .iter()
                .map(|c| c.as_str().map(str::to_string))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    let width = cells.first()?.len();
    (width > 0 && cells.iter().all(|r| r.len() == width)).then_some(cells)
}

/// Parses `args` (program name first), runs the command and writes reports
/// to `out`; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };
    let command = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy())
        .collect::<Vec<_>>()
        .join(" ");
    let guard = match DegreeGuard::from_env() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let mut runner = Runner {
        guard,
        command,
        reports: Vec::new(),
    };
    let result = runner.execute(&cli.command);
    let mut status = Status::Pass;
    for r in &runner.reports {
        status = status.worst(r.status);
        let written = if cli.json {
            writeln!(out, "{}", serde_json::to_string(r).expect("report serializes"))
        } else {
            write_text(out, r, cli.format)
        };
        if written.is_err() {
            return 3;
        }
    }
    match result {
        Ok(()) => status.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
