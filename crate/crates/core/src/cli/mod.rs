//! Command-line surface. Every command reads `kronrep/1` documents from files
//! or standard input and writes documents or one JSON result line.

mod doc;

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use doc::{canonicalize, parse_matrix, RepDocument, FORMAT};

use crate::bundles::{
    chi_hom, classify_small_rank, exceptional_table, line_splitting, steiner_invariants, SplittingType,
};
use crate::constructions::{
    coker_plane, elementary_search, hyperplane_rep, random_rep, schwarzenberger, test_module, FunctionalTuple,
};
use crate::error::Error;
use crate::exactmat::{Field, FieldSpec, Matrix, PrimeField, Rationals, DEFAULT_GUARD};
use crate::functors::{preprojective, sigma, sigma_inv, tau, tau_inv};
use crate::homalg::{ext1_dim, hom_dim};
use crate::kronrep::{coxeter_apply, euler_form, tits_form, AnyRep, DimVec, FpRep};
use crate::restrict::{
    generic_splitting, k2_decompose, membership, pullback, uniformity_probe, K2Decomposition, MembershipStatus,
    MembershipVerdict, PlaneBasis, RestrictionInvariant, SamplerOpts, UniformityProbe,
};
use crate::stability::{
    dim_slope, generic_reduction, hn_oracle, semistable_oracle, stability_certify, HnFiltration, OracleOpts,
    StabilityStatus, StabilityVerdict, Strategy,
};
use crate::with_rep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "kronrep", version, about = "Representations of the generalized Kronecker quiver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random planes drawn per membership or splitting verdict.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Entries of random integers lie in [-bound, bound].
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Also enumerate all F_p-rational planes for this prime.
    #[arg(long, global = true)]
    fp: Option<u32>,
    /// Limit on the number of enumerated subspaces, planes or subsets.
    #[arg(long, global = true)]
    guard: Option<u128>,
    /// Exit with status 2 on a negative verdict.
    #[arg(long, global = true)]
    strict: bool,
    /// Dimension of the arrow subspaces.
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Number of arrows.
    #[arg(long, global = true)]
    r: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
struct Inputs {
    /// Document files; standard input when empty or `-`.
    files: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(subcommand)]
    Gen(Gen),
    #[command(subcommand)]
    Op(Op),
    /// dim Hom(M, N) for two documents.
    Hom(Inputs),
    /// dim Ext^1(M, N) for two documents.
    Ext(Inputs),
    #[command(subcommand)]
    Form(Form),
    #[command(subcommand)]
    Split(Split),
    /// Membership in repp(K_r, d).
    Member(Inputs),
    #[command(subcommand)]
    Stable(Stable),
    #[command(subcommand)]
    Bundle(Bundle),
    #[command(subcommand)]
    Probe(Probe),
}

#[derive(Args, Debug, Clone)]
struct FieldArg {
    /// `Q` or `F<p>`.
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Subcommand, Debug)]
enum Gen {
    Preproj {
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        field: FieldArg,
    },
    Schwarzenberger {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        field: FieldArg,
    },
    Hyperplane {
        /// `m x r` matrix literal, one functional per row.
        #[arg(long)]
        functionals: String,
        #[command(flatten)]
        field: FieldArg,
    },
    Cokerplane {
        /// `d x r` matrix literal.
        #[arg(long)]
        plane: String,
        #[command(flatten)]
        field: FieldArg,
    },
    Testmodule {
        #[arg(long)]
        plane: String,
        #[command(flatten)]
        field: FieldArg,
    },
    Random {
        #[arg(long, num_args = 2)]
        dim: Vec<usize>,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Certified elementary representation of K_3 over F_p.
    Elementary {
        #[arg(long, num_args = 2)]
        dim: Vec<usize>,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 10_000)]
        draws: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Op {
    Dual(Inputs),
    Sigma(Inputs),
    SigmaInv(Inputs),
    Tau(Inputs),
    TauInv(Inputs),
    Dsum(Inputs),
    /// Recombine the arrows by an invertible `r x r` matrix.
    Twist {
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Extend by zero maps to K_r for the given `--r`.
    Inflate(Inputs),
    /// Pull back along a `d x r` plane.
    Restrict {
        #[arg(long)]
        plane: String,
        #[command(flatten)]
        inputs: Inputs,
    },
}

#[derive(Args, Debug, Clone)]
struct DimArgs {
    /// Dimension vector; read from a document when absent.
    #[arg(long, num_args = 2)]
    dim: Option<Vec<usize>>,
    #[command(flatten)]
    inputs: Inputs,
}

#[derive(Subcommand, Debug)]
enum Form {
    Q(DimArgs),
    Euler {
        #[arg(long, num_args = 2)]
        x: Option<Vec<usize>>,
        #[arg(long, num_args = 2)]
        y: Option<Vec<usize>>,
        #[command(flatten)]
        inputs: Inputs,
    },
    Coxeter {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        dims: DimArgs,
    },
    Delta(DimArgs),
    Slope(DimArgs),
}

#[derive(Subcommand, Debug)]
enum Split {
    /// Decomposition of the restriction to a 2-plane.
    At {
        #[arg(long)]
        plane: String,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Generic splitting type over random 2-planes.
    Generic(Inputs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Auto,
    Enumerate,
    Certified,
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    /// Reduce representations over Q mod the first rank-preserving prime from here.
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: StrategyArg,
    #[command(flatten)]
    inputs: Inputs,
}

#[derive(Subcommand, Debug)]
enum Stable {
    /// Provenance and membership rules.
    Certify(Inputs),
    /// Exhaustive search over F_p.
    Oracle(OracleArgs),
    /// Harder-Narasimhan filtration over F_p.
    Hn(OracleArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Bundle {
    Invariants(Inputs),
    Exceptional {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
    Classify {
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        c1: u64,
    },
    /// Euler characteristic of the sheaf-Hom between two bundles.
    Chi(Inputs),
    LineSplit {
        /// `2 x r` plane; a random line when absent.
        #[arg(long)]
        plane: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
    },
}

#[derive(Subcommand, Debug)]
enum Probe {
    /// Look for two planes with non-isomorphic restrictions.
    Uniform {
        #[arg(long)]
        e: usize,
        #[command(flatten)]
        inputs: Inputs,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Ctx<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
}

enum Output {
    Doc(AnyRep),
    Record(Value),
    Text(String),
    Negative(Value),
}

/// Parses `args` (without the program name) and runs the command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("kronrep".into()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut ctx = Ctx { cli: &cli, stdin };
    match execute(&mut ctx) {
        Ok(Output::Doc(m)) => ok(RepDocument::from_any(&m).to_json() + "\n"),
        Ok(Output::Record(v)) => ok(format!("{v}\n")),
        Ok(Output::Text(s)) => ok(s),
        Ok(Output::Negative(v)) => {
            let code = if cli.strict { EXIT_NEGATIVE } else { EXIT_OK };
            Outcome { code, stdout: format!("{v}\n"), stderr: String::new() }
        }
        Err(f) => failure(f),
    }
}

fn ok(stdout: String) -> Outcome {
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}

fn failure(f: Failure) -> Outcome {
    let (code, record, msg) = match f {
        Failure::Usage(m) => (EXIT_USAGE, json!({"error": "usage", "message": m}), m),
        Failure::Io(m) => (EXIT_ERROR, json!({"error": "io", "message": m}), m),
        Failure::Lib(Error::GuardExceeded { what, needed, limit }) => {
            let msg = format!("guard exceeded: {what} needs {needed}, limit {limit}");
            let rec = json!({"error": "guard-exceeded", "what": what, "needed": needed.to_string(), "limit": limit.to_string()});
            (EXIT_GUARD, rec, msg)
        }
        Failure::Lib(e) => (EXIT_ERROR, json!({"error": error_kind(&e), "message": e.to_string()}), e.to_string()),
    };
    Outcome { code, stdout: format!("{record}\n"), stderr: format!("error: {msg}\n") }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ShapeMismatch(_) => "shape-mismatch",
        Error::FieldMismatch(_) => "field-mismatch",
        Error::Mismatch(_) => "mismatch",
        Error::BadD { .. } => "bad-d",
        Error::BadM { .. } => "bad-m",
        Error::BadRange(_) => "bad-range",
        Error::GuardExceeded { .. } => "guard-exceeded",
        Error::Singular => "singular",
        Error::NotGeneralPosition => "not-general-position",
        Error::NotAMember(_) => "not-a-member",
        Error::NotEkp(_) => "not-ekp",
        Error::NotEkpEvidence(_) => "not-ekp-evidence",
        Error::NotBrick(_) => "not-brick",
        Error::ExtDimUnexpected(_) => "ext-dim-unexpected",
        Error::InconsistentRestriction(_) => "inconsistent-restriction",
        Error::SearchExhausted(_) => "search-exhausted",
        Error::Impossible(_) => "impossible",
        Error::ZeroDenominator(_) => "zero-denominator",
        Error::Uncertified(_) => "uncertified",
        Error::Invalid(_) => "invalid",
        Error::Parse(_) => "parse",
    }
}

impl Ctx<'_> {
    fn r(&self) -> CliResult<usize> {
        self.cli.r.ok_or_else(|| Failure::Usage("--r is required".into()))
    }

    fn d(&self) -> CliResult<usize> {
        self.cli.d.ok_or_else(|| Failure::Usage("--d is required".into()))
    }

    fn seed(&self) -> CliResult<u64> {
        self.cli.seed.ok_or_else(|| Failure::Usage("randomized commands require --seed".into()))
    }

    fn guard(&self) -> u128 {
        self.cli.guard.unwrap_or(DEFAULT_GUARD)
    }

    fn sampler(&self) -> CliResult<SamplerOpts> {
        let def = SamplerOpts::default();
        Ok(SamplerOpts {
            samples: self.cli.samples.unwrap_or(def.samples),
            seed: self.seed()?,
            bound: self.cli.bound.unwrap_or(def.bound),
            fp: self.cli.fp,
            guard: self.guard(),
        })
    }

    fn read_docs(&mut self, inputs: &Inputs) -> CliResult<Vec<AnyRep>> {
        let mut text = String::new();
        let stdin_only = inputs.files.is_empty();
        for path in &inputs.files {
            if path.as_os_str() == "-" {
                self.stdin.read_to_string(&mut text).map_err(|e| Failure::Io(e.to_string()))?;
            } else {
                let s = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                text.push_str(&s);
            }
            text.push('\n');
        }
        if stdin_only {
            self.stdin.read_to_string(&mut text).map_err(|e| Failure::Io(e.to_string()))?;
        }
        let docs = RepDocument::parse_stream(&text)?;
        Ok(docs.iter().map(RepDocument::to_rep).collect::<crate::error::Result<_>>()?)
    }

    fn one(&mut self, inputs: &Inputs) -> CliResult<AnyRep> {
        let mut docs = self.read_docs(inputs)?;
        match docs.len() {
            1 => Ok(docs.pop().expect("one document")),
            n => Err(Failure::Usage(format!("expected one document, found {n}"))),
        }
    }

    fn two(&mut self, inputs: &Inputs) -> CliResult<(AnyRep, AnyRep)> {
        let docs = self.read_docs(inputs)?;
        match <[AnyRep; 2]>::try_from(docs) {
            Ok([a, b]) => Ok((a, b)),
            Err(v) => Err(Failure::Usage(format!("expected two documents, found {}", v.len()))),
        }
    }
}

fn parse_field(s: &str) -> CliResult<FieldSpec> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Q);
    }
    let digits = s.strip_prefix("Fp").or_else(|| s.strip_prefix('F')).unwrap_or(s);
    let p: u32 = digits.parse().map_err(|_| Failure::Usage(format!("unknown field {s:?}; use Q or F<p>")))?;
    PrimeField::new(p)?;
    Ok(FieldSpec::Fp { p })
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Q => {
                let $f = &Rationals;
                AnyRep::from($body)
            }
            FieldSpec::Fp { p } => {
                let $f = &PrimeField::new(p)?;
                AnyRep::from($body)
            }
        }
    };
}

/// Runs a body on two representations over the same field.
macro_rules! with_pair {
    ($a:expr, $b:expr, ($x:ident, $y:ident) => $body:expr) => {
        match ($a, $b) {
            (AnyRep::Q($x), AnyRep::Q($y)) => $body,
            (AnyRep::Fp($x), AnyRep::Fp($y)) => $body,
            _ => return Err(Failure::Lib(Error::FieldMismatch("documents are over different fields".into()))),
        }
    };
}

fn dim_pair(v: &[usize]) -> DimVec {
    DimVec::new(v[0], v[1])
}

fn plane<F: Field>(f: &F, s: &str) -> CliResult<PlaneBasis<F>> {
    Ok(PlaneBasis::new(parse_matrix(f, s)?)?)
}

fn matrix_rows<F: Field>(m: &Matrix<F>) -> Value {
    let f = m.field();
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| f.format(x)).collect::<Vec<_>>()).collect()
}

fn dim_json(x: DimVec) -> Value {
    json!([x.d1, x.d2])
}

fn k2_json(k: &K2Decomposition) -> Value {
    json!({"multiplicities": k.multiplicities, "hom_dims": k.hom_dims, "consistent": k.consistent})
}

fn splitting_json(s: &SplittingType) -> Value {
    let parts: serde_json::Map<String, Value> = s.parts.iter().map(|(i, n)| (i.to_string(), json!(n))).collect();
    Value::Object(parts)
}

fn membership_json<F: Field>(v: &MembershipVerdict<F>) -> Value {
    match &v.status {
        MembershipStatus::CertifiedMember { rule } => json!({"d": v.d, "status": "certified-member", "rule": rule}),
        MembershipStatus::ProbableMember { samples, fp_exhaustive } => json!({
            "d": v.d,
            "status": "probable-member",
            "samples": samples,
            "fp_exhaustive": fp_exhaustive.map(|(p, n)| json!({"p": p, "planes": n.to_string()})),
        }),
        MembershipStatus::CertifiedNonMember { witness, reason } => json!({
            "d": v.d,
            "status": "certified-non-member",
            "reason": reason,
            "witness": witness.as_ref().map(|w| matrix_rows(w.basis())),
        }),
    }
}

fn verdict_json(v: &StabilityVerdict) -> Value {
    let mut out = json!({"status": v.status.name(), "method": v.method, "caveat": v.caveat});
    if let StabilityStatus::Unstable(s) = &v.status {
        out["witness"] = json!({"dim": dim_json(s.dims), "slope": s.slope.to_string()});
    }
    out
}

fn hn_json(h: &HnFiltration) -> Value {
    let layers: Vec<Value> = h
        .layers
        .iter()
        .zip(h.quotient_dims())
        .map(|(l, q)| json!({"dim": dim_json(l.dims), "quotient": dim_json(q), "slope": l.slope.to_string()}))
        .collect();
    json!({"layers": layers, "method": h.method})
}

fn invariant_json(i: &RestrictionInvariant) -> Value {
    match i {
        RestrictionInvariant::K2(k) => json!({"k2": k2_json(k)}),
        RestrictionInvariant::Fingerprint(v) => json!({"fingerprint": v}),
    }
}

fn to_fp(m: AnyRep, p: Option<u32>) -> CliResult<FpRep> {
    match (m, p) {
        (AnyRep::Fp(x), None) => Ok(x),
        (AnyRep::Fp(x), Some(p)) if x.field().p() == p => Ok(x),
        (AnyRep::Fp(x), Some(p)) => {
            Err(Failure::Lib(Error::FieldMismatch(format!("document is over F{}, not F{p}", x.field().p()))))
        }
        (AnyRep::Q(x), Some(p)) => Ok(generic_reduction(&x, p, 20)?),
        (AnyRep::Q(_), None) => Err(Failure::Usage("the oracle works over F_p; pass --p".into())),
    }
}

fn oracle_opts(ctx: &Ctx, a: &OracleArgs) -> CliResult<OracleOpts> {
    let strategy = match a.strategy {
        StrategyArg::Auto => Strategy::Auto,
        StrategyArg::Enumerate => Strategy::Enumerate,
        StrategyArg::Certified => Strategy::Certified,
    };
    Ok(OracleOpts { guard: ctx.guard(), seed: ctx.seed()?, strategy })
}

fn form_dims(ctx: &mut Ctx, a: &DimArgs) -> CliResult<(usize, DimVec)> {
    match &a.dim {
        Some(v) => Ok((ctx.r()?, dim_pair(v))),
        None => {
            let m = ctx.one(&a.inputs)?;
            Ok((m.r(), m.dim_vec()))
        }
    }
}

/// Dimension vector alone, for forms that do not depend on `r`.
fn plain_dims(ctx: &mut Ctx, a: &DimArgs) -> CliResult<DimVec> {
    match &a.dim {
        Some(v) => Ok(dim_pair(v)),
        None => Ok(ctx.one(&a.inputs)?.dim_vec()),
    }
}

fn execute(ctx: &mut Ctx) -> CliResult<Output> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Gen(g) => gen(ctx, g),
        Command::Op(o) => op(ctx, o),
        Command::Hom(inputs) => {
            let (a, b) = ctx.two(inputs)?;
            let n = with_pair!(a, b, (x, y) => hom_dim(&x, &y)?);
            Ok(Output::Record(json!({"hom": n})))
        }
        Command::Ext(inputs) => {
            let (a, b) = ctx.two(inputs)?;
            let n = with_pair!(a, b, (x, y) => ext1_dim(&x, &y)?);
            Ok(Output::Record(json!({"ext1": n})))
        }
        Command::Form(f) => form(ctx, f),
        Command::Split(Split::At { plane: s, inputs }) => {
            let m = ctx.one(inputs)?;
            let k = with_rep!(m, x => k2_decompose(&pullback(&x, &plane(x.field(), s)?)?)?);
            Ok(Output::Record(k2_json(&k)))
        }
        Command::Split(Split::Generic(inputs)) => {
            let opts = ctx.sampler()?;
            let m = ctx.one(inputs)?;
            let k = with_rep!(m, x => generic_splitting(&x, opts.samples, opts.seed, opts.bound)?);
            Ok(Output::Record(k2_json(&k)))
        }
        Command::Member(inputs) => {
            let (d, opts) = (ctx.d()?, ctx.sampler()?);
            let m = ctx.one(inputs)?;
            let (rec, is_member) = with_rep!(m, x => {
                let v = membership(&x, d, &opts)?;
                (membership_json(&v), v.is_member())
            });
            Ok(if is_member { Output::Record(rec) } else { Output::Negative(rec) })
        }
        Command::Stable(s) => stable(ctx, s),
        Command::Bundle(b) => bundle(ctx, b),
        Command::Probe(Probe::Uniform { e, inputs }) => {
            let opts = ctx.sampler()?;
            let m = ctx.one(inputs)?;
            let rec = with_rep!(m, x => match uniformity_probe(&x, *e, opts.samples, opts.seed, opts.bound, &[])? {
                UniformityProbe::NoWitness { samples } => json!({"uniform": "no-witness", "samples": samples}),
                UniformityProbe::Witness { planes, invariants } => json!({
                    "uniform": "witness",
                    "planes": [matrix_rows(planes.0.basis()), matrix_rows(planes.1.basis())],
                    "invariants": [invariant_json(&invariants.0), invariant_json(&invariants.1)],
                }),
            });
            Ok(Output::Record(rec))
        }
    }
}

fn gen(ctx: &mut Ctx, g: &Gen) -> CliResult<Output> {
    let m = match g {
        Gen::Preproj { i, field } => {
            let r = ctx.r()?;
            with_field!(parse_field(&field.field)?, f => preprojective(f, r, *i)?)
        }
        Gen::Schwarzenberger { m, field } => {
            let r = ctx.r()?;
            with_field!(parse_field(&field.field)?, f => schwarzenberger(f, r, *m)?)
        }
        Gen::Hyperplane { functionals, field } => {
            let guard = ctx.guard();
            with_field!(parse_field(&field.field)?, f => {
                hyperplane_rep(&FunctionalTuple::new(parse_matrix(f, functionals)?)?, guard)?
            })
        }
        Gen::Cokerplane { plane: s, field } => {
            with_field!(parse_field(&field.field)?, f => coker_plane(&plane(f, s)?)?)
        }
        Gen::Testmodule { plane: s, field } => {
            with_field!(parse_field(&field.field)?, f => test_module(&plane(f, s)?)?)
        }
        Gen::Random { dim, field } => {
            let (r, seed) = (ctx.r()?, ctx.seed()?);
            let bound = ctx.cli.bound.unwrap_or(SamplerOpts::default().bound);
            with_field!(parse_field(&field.field)?, f => random_rep(f, r, dim_pair(dim), seed, bound))
        }
        Gen::Elementary { dim, p, draws } => {
            if ctx.cli.r.is_some_and(|r| r != 3) {
                return Err(Failure::Usage("elementary search is implemented for r = 3".into()));
            }
            AnyRep::Fp(elementary_search(dim_pair(dim), *p, ctx.seed()?, *draws)?)
        }
    };
    Ok(Output::Doc(m))
}

fn op(ctx: &mut Ctx, o: &Op) -> CliResult<Output> {
    let out = match o {
        Op::Dual(i) => with_rep!(ctx.one(i)?, x => AnyRep::from(x.dual())),
        Op::Sigma(i) => with_rep!(ctx.one(i)?, x => AnyRep::from(sigma(&x))),
        Op::SigmaInv(i) => with_rep!(ctx.one(i)?, x => AnyRep::from(sigma_inv(&x))),
        Op::Tau(i) => with_rep!(ctx.one(i)?, x => AnyRep::from(tau(&x))),
        Op::TauInv(i) => with_rep!(ctx.one(i)?, x => AnyRep::from(tau_inv(&x))),
        Op::Dsum(i) => {
            let (a, b) = ctx.two(i)?;
            with_pair!(a, b, (x, y) => AnyRep::from(x.direct_sum(&y)?))
        }
        Op::Twist { matrix, inputs } => {
            with_rep!(ctx.one(inputs)?, x => AnyRep::from(x.twist(&parse_matrix(x.field(), matrix)?)?))
        }
        Op::Inflate(i) => {
            let r = ctx.r()?;
            with_rep!(ctx.one(i)?, x => AnyRep::from(x.inflate(r)?))
        }
        Op::Restrict { plane: s, inputs } => {
            with_rep!(ctx.one(inputs)?, x => AnyRep::from(pullback(&x, &plane(x.field(), s)?)?))
        }
    };
    Ok(Output::Doc(out))
}

fn form(ctx: &mut Ctx, f: &Form) -> CliResult<Output> {
    let rec = match f {
        Form::Q(a) => {
            let (r, x) = form_dims(ctx, a)?;
            json!({"q": tits_form(r, x)})
        }
        Form::Euler { x, y, inputs } => {
            let (r, x, y) = match (x, y) {
                (Some(x), Some(y)) => (ctx.r()?, dim_pair(x), dim_pair(y)),
                (None, None) => {
                    let (a, b) = ctx.two(inputs)?;
                    if a.r() != b.r() {
                        return Err(Failure::Lib(Error::Mismatch(format!("r = {} and r = {}", a.r(), b.r()))));
                    }
                    (a.r(), a.dim_vec(), b.dim_vec())
                }
                _ => return Err(Failure::Usage("pass both --x and --y, or two documents".into())),
            };
            json!({"euler": euler_form(r, x, y)})
        }
        Form::Coxeter { n, dims } => {
            let (r, x) = form_dims(ctx, dims)?;
            let (a, b) = coxeter_apply(r, (x.d1 as i128, x.d2 as i128), *n);
            json!({"coxeter": [a.to_string(), b.to_string()]})
        }
        Form::Delta(a) => {
            let d = ctx.d()?;
            let x = plain_dims(ctx, a)?;
            json!({"delta": x.delta(d)})
        }
        Form::Slope(a) => {
            let x = plain_dims(ctx, a)?;
            json!({"slope": dim_slope(x)?.to_string()})
        }
    };
    Ok(Output::Record(rec))
}

fn stable(ctx: &mut Ctx, s: &Stable) -> CliResult<Output> {
    let v = match s {
        Stable::Certify(inputs) => {
            let opts = ctx.sampler()?;
            let m = ctx.one(inputs)?;
            with_rep!(m, x => stability_certify(&x, None, &opts))
        }
        Stable::Oracle(a) => {
            let opts = oracle_opts(ctx, a)?;
            let m = to_fp(ctx.one(&a.inputs)?, a.p)?;
            semistable_oracle(&m, &opts)?
        }
        Stable::Hn(a) => {
            let opts = oracle_opts(ctx, a)?;
            let m = to_fp(ctx.one(&a.inputs)?, a.p)?;
            return Ok(Output::Record(hn_json(&hn_oracle(&m, &opts)?)));
        }
    };
    let rec = verdict_json(&v);
    Ok(if v.status.is_unstable() { Output::Negative(rec) } else { Output::Record(rec) })
}

fn exceptional_text(rows: &[(usize, String, String)], csv: bool) -> String {
    let mut out = String::new();
    if csv {
        out.push_str("n,rank,c1\n");
        for (n, rank, c1) in rows {
            out.push_str(&format!("{n},{rank},{c1}\n"));
        }
        return out;
    }
    let w = rows.iter().map(|(_, a, b)| a.len().max(b.len())).max().unwrap_or(0).max(4);
    let wn = rows.iter().map(|(n, _, _)| n.to_string().len()).max().unwrap_or(1).max(1);
    out.push_str(&format!("{:>wn$}  {:>w$}  {:>w$}\n", "n", "rank", "c1"));
    for (n, rank, c1) in rows {
        out.push_str(&format!("{n:>wn$}  {rank:>w$}  {c1:>w$}\n"));
    }
    out
}

fn bundle(ctx: &mut Ctx, b: &Bundle) -> CliResult<Output> {
    let rec = match b {
        Bundle::Invariants(inputs) => {
            let (d, opts) = (ctx.d()?, ctx.sampler()?);
            let m = ctx.one(inputs)?;
            let inv = with_rep!(m, x => steiner_invariants(&x, d, &membership(&x, d, &opts)?)?);
            serde_json::to_value(&inv).expect("invariants serialize")
        }
        Bundle::Exceptional { n_max, format } => {
            let (r, d) = (ctx.r()?, ctx.d()?);
            let table = exceptional_table(r, d, *n_max)?;
            let rows: Vec<(usize, String, String)> =
                table.iter().map(|e| (e.n, e.rank.to_string(), e.c1.to_string())).collect();
            match format {
                TableFormat::Json => {
                    let entries: Vec<Value> =
                        rows.iter().map(|(n, rank, c1)| json!({"n": n, "rank": rank, "c1": c1})).collect();
                    json!({"r": r, "d": d, "entries": entries})
                }
                TableFormat::Text => return Ok(Output::Text(exceptional_text(&rows, false))),
                TableFormat::Csv => return Ok(Output::Text(exceptional_text(&rows, true))),
            }
        }
        Bundle::Classify { rank, c1 } => {
            let (r, d) = (ctx.r()?, ctx.d()?);
            let c = classify_small_rank(r, d, *rank, *c1)?;
            let mut v = serde_json::to_value(c).expect("classification serializes");
            v["summary"] = json!(c.to_string());
            v
        }
        Bundle::Chi(inputs) => {
            let (a, b) = ctx.two(inputs)?;
            let chi = with_pair!(a, b, (x, y) => chi_hom(&x, &y)?);
            json!({"chi": chi, "via": "euler form of the dimension vectors"})
        }
        Bundle::LineSplit { plane: s, inputs } => {
            let m = ctx.one(inputs)?;
            let split = match s {
                Some(s) => with_rep!(m, x => line_splitting(&x, &plane(x.field(), s)?)?),
                None => {
                    let opts = ctx.sampler()?;
                    let k = with_rep!(m, x => generic_splitting(&x, opts.samples, opts.seed, opts.bound)?);
                    if !k.consistent {
                        return Err(Failure::Lib(Error::InconsistentRestriction("generic restriction".into())));
                    }
                    SplittingType::from_multiplicities(&k.multiplicities)
                }
            };
            json!({"splitting": splitting_json(&split), "rank": split.rank(), "degree": split.degree()})
        }
    };
    Ok(Output::Record(rec))
}
