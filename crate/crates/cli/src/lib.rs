//! The `cohomcat` command line.
//!
//! Exit codes: 0 on success, 2 when a verification fails or a
//! categorification cannot be built or matched, 1 on bad input.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cohomcat::cochain::{row_cohomology, total_cohomology};
use cohomcat::double::{
    beta_example, build_double_biunital, classify_double, classify_double_algebra, double_birig, equivalent_biunital,
    equivalent_double, normalize_triple, verify_double, verify_triple,
};
use cohomcat::json::{self, to_pretty};
use cohomcat::ng::{classify_ng, equivalent_ng, verify_ng};
use cohomcat::rig::verify_birig;
use cohomcat::{BiCochain, Error, FiniteGroup, ParityMap, Report};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "cohomcat", version, about = "Categorifications of N[G] and D(N[G]) and their classifying cohomology")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// `builtin:NAME` (c1..c8, s3, c2xc2) or a group JSON file
    #[arg(long, global = true)]
    group: Option<String>,
    /// coefficients Z/N; defaults to the group order
    #[arg(long, global = true)]
    modulus: Option<u64>,
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// write the JSON result here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, env = "COHOMCAT_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show or validate a group
    Group {
        #[arg(value_enum, default_value_t = GroupAction::Show)]
        action: GroupAction,
    },
    /// Cohomology of a row complex or of the total complex
    Cohomology {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, conflicts_with = "total")]
        row: Option<usize>,
        #[arg(long)]
        total: bool,
    },
    /// Check every coherence equation of the input
    Verify {
        #[arg(long, value_enum)]
        kind: VerifyKind,
    },
    /// Equivalence classes as a cohomology group
    Classify {
        #[arg(long, value_enum)]
        kind: ClassifyKind,
    },
    /// Decide whether `--input` and `--other` are equivalent
    Equiv {
        #[arg(long, value_enum)]
        kind: EquivKind,
        #[arg(long)]
        other: PathBuf,
    },
    /// Extend a triple to a biunital categorification
    Extend {
        /// residues `[..]`, a single constant, or a cochain JSON file
        #[arg(long)]
        rho0: String,
        #[arg(long)]
        r0: String,
    },
    /// An equivalent triple with phi(e,e;-,-) = 0, plus the witness
    Normalize,
    /// The parity example (0, 0, beta)
    ExampleBeta {
        /// `auto`, `identity`, `sign`, `trivial`, residues `[..]` or a parity JSON file
        #[arg(long, default_value = "auto")]
        parity: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GroupAction {
    Show,
    Validate,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyKind {
    Ng,
    Double,
    Triple,
    Birig,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ClassifyKind {
    Ng,
    Double,
    DoubleAlgebra,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EquivKind {
    Ng,
    Double,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidTriple { .. } | Error::ConstraintViolated { .. } => Failure::Verification(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

struct Context {
    common: Common,
    input: Option<Value>,
}

impl Context {
    fn input(&self) -> std::result::Result<&Value, Failure> {
        self.input.as_ref().ok_or_else(|| input_err("--input is required"))
    }

    /// `--group`, else a `"group"` entry of the input.
    fn group(&self) -> std::result::Result<Arc<FiniteGroup>, Failure> {
        let g = match (&self.common.group, self.input.as_ref().and_then(|v| v.get("group"))) {
            (Some(arg), _) => match arg.strip_prefix("builtin:") {
                Some(name) => FiniteGroup::builtin(name)?,
                None => json::group_from_json(&read_json(Path::new(arg))?)?,
            },
            (None, Some(v)) => json::group_from_json(v)?,
            (None, None) => return Err(input_err("--group is required")),
        };
        Ok(Arc::new(g))
    }

    fn modulus(&self, group: &FiniteGroup) -> std::result::Result<u64, Failure> {
        let n = self.common.modulus.unwrap_or(group.order().max(2) as u64);
        if n < 2 {
            return Err(Error::BadModulus(n).into());
        }
        Ok(n)
    }
}

fn expect_modulus(found: u64, wanted: u64) -> std::result::Result<(), Failure> {
    if found != wanted {
        return Err(Error::ModulusMismatch(wanted, found).into());
    }
    Ok(())
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

/// Residues `[..]`, a bare constant, or a path to a cochain file.
fn cochain_arg(
    arg: &str,
    group: &Arc<FiniteGroup>,
    modulus: u64,
    bidegree: (usize, usize),
) -> std::result::Result<BiCochain, Failure> {
    let trimmed = arg.trim();
    let (n, m) = bidegree;
    let c = if let Ok(x) = trimmed.parse::<u64>() {
        if x >= modulus {
            return Err(Error::ResidueOutOfRange { index: 0, value: x, modulus }.into());
        }
        BiCochain::constant(group.clone(), modulus, n, m, x)
    } else if trimmed.starts_with('[') {
        let values: Vec<u64> = serde_json::from_str(trimmed).map_err(|e| input_err(format!("`{arg}`: {e}")))?;
        BiCochain::from_values(group.clone(), modulus, n, m, values)?
    } else {
        json::cochain_from_json(&read_json(Path::new(trimmed))?, group)?
    };
    if c.bidegree() != bidegree {
        let (cn, cm) = c.bidegree();
        return Err(Error::BidegreeMismatch(n, m, cn, cm).into());
    }
    expect_modulus(c.modulus(), modulus)?;
    Ok(c)
}

fn parity_arg(arg: &str, group: &FiniteGroup) -> std::result::Result<ParityMap, Failure> {
    Ok(match arg.trim() {
        "auto" if group.order() == 2 => ParityMap::identity_c2(group)?,
        "auto" | "sign" => ParityMap::sign(group)?,
        "identity" => ParityMap::identity_c2(group)?,
        "trivial" => ParityMap::trivial(group),
        s if s.starts_with('[') => {
            let bits: Vec<u8> = serde_json::from_str(s).map_err(|e| input_err(format!("`{arg}`: {e}")))?;
            ParityMap::new(group, bits)?
        }
        path => json::parity_from_json(&read_json(Path::new(path))?, group)?,
    })
}

fn execute(command: &Command, ctx: &Context) -> Outcome {
    match command {
        Command::Group { action } => {
            let g = ctx.group()?;
            let out = match action {
                GroupAction::Show => {
                    let mut v = json::group_to_json(&g);
                    v["abelian"] = json!(g.is_abelian());
                    v["inverses"] = json!(g.inverses());
                    v
                }
                GroupAction::Validate => json!({ "valid": true, "order": g.order() }),
            };
            Ok((out, true))
        }
        Command::Cohomology { degree, row, total } => {
            let g = ctx.group()?;
            let n = ctx.modulus(&g)?;
            let h = match (row, total) {
                (_, true) => total_cohomology(&g, n, *degree)?,
                (Some(m), false) => row_cohomology(&g, n, *m, *degree)?,
                (None, false) => return Err(input_err("choose --row M or --total")),
            };
            Ok((serde_json::to_value(&h).expect("serializes"), true))
        }
        Command::Verify { kind } => verify(*kind, ctx),
        Command::Classify { kind } => {
            let g = ctx.group()?;
            let n = ctx.modulus(&g)?;
            let h = match kind {
                ClassifyKind::Ng => classify_ng(&g, n)?,
                ClassifyKind::Double => classify_double(&g, n)?,
                ClassifyKind::DoubleAlgebra => classify_double_algebra(&g, n)?,
            };
            Ok((serde_json::to_value(&h).expect("serializes"), true))
        }
        Command::Equiv { kind, other } => {
            let g = ctx.group()?;
            let n = ctx.modulus(&g)?;
            let a = ctx.input()?;
            let b = read_json(other)?;
            let witness = match kind {
                EquivKind::Ng => {
                    let a = json::ng_from_json(a, &g, n)?;
                    let b = json::ng_from_json(&b, &g, n)?;
                    expect_modulus(a.modulus, n)?;
                    equivalent_ng(&a, &b)?.map(|w| json::ng_witness_to_json(&w))
                }
                EquivKind::Double if a.get("rho0").is_some() => {
                    let a = json::double_from_json(a, &g)?;
                    let b = json::double_from_json(&b, &g)?;
                    expect_modulus(a.triple.modulus(), n)?;
                    equivalent_biunital(&a, &b)?.map(|w| json::double_witness_to_json(&w))
                }
                EquivKind::Double => {
                    let a = json::triple_from_json(a, &g)?;
                    let b = json::triple_from_json(&b, &g)?;
                    expect_modulus(a.modulus(), n)?;
                    equivalent_double(&a, &b)?.map(|w| json::double_witness_to_json(&w))
                }
            };
            let ok = witness.is_some();
            Ok((json!({ "equivalent": ok, "witness": witness }), ok))
        }
        Command::Extend { rho0, r0 } => {
            let g = ctx.group()?;
            let n = ctx.modulus(&g)?;
            let t = json::triple_from_json(ctx.input()?, &g)?;
            expect_modulus(t.modulus(), n)?;
            let rho0 = cochain_arg(rho0, &g, n, (0, 1))?;
            let r0 = cochain_arg(r0, &g, n, (1, 0))?;
            let dc = build_double_biunital(&t, &rho0, &r0)?;
            let report = verify_double(&dc);
            let mut out = json::double_to_json(&dc);
            out["report"] = report_json(&report);
            Ok((out, report.valid))
        }
        Command::Normalize => {
            let g = ctx.group()?;
            let n = ctx.modulus(&g)?;
            let t = json::triple_from_json(ctx.input()?, &g)?;
            expect_modulus(t.modulus(), n)?;
            let (t2, w) = normalize_triple(&t)?;
            Ok((json!({ "triple": json::triple_to_json(&t2), "witness": json::double_witness_to_json(&w) }), true))
        }
        Command::ExampleBeta { parity } => {
            let g = ctx.group()?;
            let n = ctx.modulus(&g)?;
            let p = parity_arg(parity, &g)?;
            let t = beta_example(g, &p, n)?;
            Ok((json::triple_to_json(&t), true))
        }
    }
}

fn verify(kind: VerifyKind, ctx: &Context) -> Outcome {
    let report = match kind {
        VerifyKind::Birig => {
            let b = match &ctx.input {
                Some(v) => json::birig_from_json(v)?,
                None => double_birig(&*ctx.group()?),
            };
            verify_birig(&b)
        }
        VerifyKind::Ng => {
            let v = ctx.input()?;
            let g = ctx.group()?;
            let n = ctx.modulus(&g)?;
            let c = json::ng_from_json(v, &g, n)?;
            expect_modulus(c.modulus, n)?;
            verify_ng(&c)?
        }
        VerifyKind::Double | VerifyKind::Triple => {
            let v = ctx.input()?;
            let g = ctx.group()?;
            let n = ctx.modulus(&g)?;
            if matches!(kind, VerifyKind::Double) && v.get("rho0").is_some() {
                let dc = json::double_from_json(v, &g)?;
                expect_modulus(dc.triple.modulus(), n)?;
                verify_double(&dc)
            } else {
                let t = json::triple_from_json(v, &g)?;
                expect_modulus(t.modulus(), n)?;
                verify_triple(&t)
            }
        }
    };
    let valid = report.valid;
    Ok((report_json(&report), valid))
}

fn emit(out: &Value, path: Option<&Path>) -> std::result::Result<(), Failure> {
    let text = to_pretty(out);
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input_err(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = (|| {
        let input = cli.common.input.as_deref().map(read_json).transpose()?;
        let ctx = Context { common: cli.common, input };
        let (out, ok) = match ctx.common.threads {
            Some(0) => return Err(input_err("--threads must be at least 1")),
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| input_err(e.to_string()))?
                .install(|| execute(&cli.command, &ctx))?,
            None => execute(&cli.command, &ctx)?,
        };
        emit(&out, ctx.common.output.as_deref())?;
        Ok(ok)
    })();
    match result {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            2
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
