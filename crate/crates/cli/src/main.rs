use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use taut_core::kernels::{eta, principal_scaling, s_func, t_func};
use taut_core::locgraph::{
    classify_principal, contribution, enumerate_graphs, hurwitz_condition, vdim_parameterized, vdim_unparameterized,
    PrincipalLayout, RelativeShape,
};
use taut_core::partitions::{enumerate_pop, enumerate_pop_multi};
use taut_core::relmatrix::{
    build_a, build_a_connected, build_b, build_b_multi, build_c, build_m, build_m_connected, verify_c, verify_c_multi,
    verify_kronecker, verify_m_invertible, verify_m_transpose_scaling,
};
use taut_core::report::VerificationReport;
use taut_core::verify::{closed_sums_suite, dimensions_suite, verify_all, SumSuite, VerifyOptions};
use taut_core::{Error, LengthBound, MultiShape, Partition, Pop};

mod output;

use output::{Format, Rendered};

#[derive(Parser)]
#[command(name = "taut", version, about = "Exact checks for principal-term matrices and localization graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    out: Format,
    /// Worker threads; results never depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for the randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Write per-suite wall times as JSON to this file.
    #[arg(long, global = true)]
    timings: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or count partitions with ordered parts.
    Pop(PopArgs),
    /// Build or verify A, B, C or M.
    Matrix(MatrixArgs),
    /// Check the closed sums and binomial identities.
    Sums(SumsArgs),
    /// Enumerate localization graphs.
    Graphs(GraphArgs),
    /// Evaluate a single kernel.
    Kernels(KernelArgs),
    /// Virtual dimensions and dimension checks.
    Dim(DimArgs),
    /// Run every acceptance sweep.
    VerifyAll(VerifyAllArgs),
}

/// Degrees and ordered-marking counts, comma separated per component.
#[derive(Args)]
struct PopShapeArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    /// Length bound: a nonnegative integer or `inf`.
    #[arg(long, default_value = "inf")]
    k: String,
}

impl PopShapeArgs {
    fn bound(&self) -> Result<LengthBound, Error> {
        self.k.parse()
    }

    fn shape(&self) -> Result<MultiShape, Error> {
        if self.d.len() != self.n.len() {
            return Err(Error::InvalidShape(format!("{} degrees but {} marking counts", self.d.len(), self.n.len())));
        }
        MultiShape::with_sizes(self.d.clone(), &self.n)
    }

    fn connected(&self) -> Option<(u32, u32)> {
        (self.d.len() == 1 && self.n.len() == 1).then(|| (self.d[0], self.n[0]))
    }
}

#[derive(Args)]
struct PopArgs {
    #[command(flatten)]
    shape: PopShapeArgs,
    #[arg(long)]
    count_only: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    A,
    B,
    C,
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Triangular,
    Invertible,
    Kronecker,
    TransposeScaling,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Triangular => "triangular",
            Check::Invertible => "invertible",
            Check::Kronecker => "kronecker",
            Check::TransposeScaling => "transpose-scaling",
        }
    }
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, value_enum, ignore_case = true, default_value = "M")]
    which: Which,
    #[command(flatten)]
    shape: PopShapeArgs,
    /// Verify a structural property instead of printing the matrix.
    #[arg(long, value_enum)]
    verify: Option<Check>,
    /// Allow B and C for several components.
    #[arg(long)]
    experimental_multi: bool,
}

#[derive(Args)]
struct SumsArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SumChoice,
    #[arg(long, default_value_t = 12)]
    max: u32,
    /// Bound on n for the binomial identities.
    #[arg(long, default_value_t = 15)]
    binom_max: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum SumChoice {
    Alpha,
    Beta,
    Betaprime,
    Gamma,
    Binom,
    All,
}

impl From<SumChoice> for SumSuite {
    fn from(c: SumChoice) -> Self {
        match c {
            SumChoice::Alpha => SumSuite::Alpha,
            SumChoice::Beta => SumSuite::Beta,
            SumChoice::Betaprime => SumSuite::Betaprime,
            SumChoice::Gamma => SumSuite::Gamma,
            SumChoice::Binom => SumSuite::Binom,
            SumChoice::All => SumSuite::All,
        }
    }
}

/// A relative shape. Lists are per component; each `--profiles` value is
/// one relative condition written as part lists per component, e.g.
/// `2,1;3`.
#[derive(Args)]
struct RelativeArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    g: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<u32>,
    /// Ordered markings per component.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    /// Number of relative conditions; defaults to the number of `--profiles`.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, required = true)]
    profiles: Vec<String>,
    /// Rubber target instead of a rigid one.
    #[arg(long)]
    unparameterized: bool,
}

fn parse_profile(text: &str, components: usize) -> Result<Vec<Partition>, Error> {
    let blocks: Vec<&str> = text.split(';').collect();
    if blocks.len() != components {
        return Err(Error::InvalidShape(format!(
            "profile {text:?} has {} blocks for {components} components",
            blocks.len()
        )));
    }
    blocks
        .iter()
        .map(|b| {
            let parts = b
                .split(',')
                .map(|s| {
                    s.trim().parse::<i64>().map_err(|_| Error::InvalidShape(format!("bad part {s:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Partition::canonicalize(&parts)
        })
        .collect()
}

impl RelativeArgs {
    fn profiles(&self) -> Result<Vec<Vec<Partition>>, Error> {
        if let Some(m) = self.m {
            if m != self.profiles.len() {
                return Err(Error::InvalidShape(format!("--m {m} but {} profiles given", self.profiles.len())));
            }
        }
        self.profiles.iter().map(|p| parse_profile(p, self.d.len())).collect()
    }
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    rel: RelativeArgs,
    /// Attach multiplicity, automorphisms, case and Euler class.
    #[arg(long)]
    contributions: bool,
    /// Keep only principal graphs.
    #[arg(long)]
    principal_only: bool,
    /// Markings matching the unordered parts of α″, per component.
    #[arg(long, value_delimiter = ',')]
    middle: Vec<u32>,
    /// Markings carried by the central vertex, per component.
    #[arg(long, value_delimiter = ',')]
    free: Vec<u32>,
}

#[derive(Args)]
struct KernelArgs {
    #[command(subcommand)]
    kernel: Kernel,
}

#[derive(Subcommand)]
enum Kernel {
    /// `S[α″](β′)`.
    S {
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        beta: Vec<i64>,
    },
    /// `T[q″](p″)`.
    T {
        #[arg(long, value_delimiter = ',')]
        q: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        p: Vec<i64>,
    },
    /// `η(β)` and the principal scaling of a POP.
    Eta {
        #[arg(long)]
        d: u32,
        #[arg(long, value_delimiter = ',')]
        ordered: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        unordered: Vec<u32>,
    },
}

#[derive(Args)]
struct DimArgs {
    #[command(flatten)]
    rel: RelativeArgs,
    /// Markings that enter only the dimension count.
    #[arg(long, default_value_t = 0)]
    extra: u32,
    /// Also run this many seeded random dimension checks.
    #[arg(long, default_value_t = 0)]
    omega_trials: usize,
}

#[derive(Args)]
struct VerifyAllArgs {
    #[arg(long, env = "TAUT_MAX_D", default_value_t = 6)]
    max_d: u32,
    #[arg(long, default_value_t = 5)]
    max_multi_degree: u32,
    #[arg(long, default_value_t = 1000)]
    relabel_trials: usize,
    #[arg(long, default_value_t = 1000)]
    omega_trials: usize,
    /// Corrupt one entry of B to exercise the failure path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

/// Failures that end the process with a nonzero code.
enum Failure {
    Invalid(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn run(cli: &Cli) -> Result<Rendered, Failure> {
    match &cli.command {
        Command::Pop(a) => cmd_pop(a),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Sums(a) => {
            let start = Instant::now();
            let r = closed_sums_suite(a.suite.into(), a.max, a.binom_max)?;
            Ok(Rendered::Report(r.with_wall_time(start.elapsed().as_secs_f64())))
        }
        Command::Graphs(a) => cmd_graphs(a),
        Command::Kernels(a) => cmd_kernels(a),
        Command::Dim(a) => cmd_dim(a, cli.seed),
        Command::VerifyAll(a) => {
            let opts = VerifyOptions {
                max_d: a.max_d,
                max_multi_degree: a.max_multi_degree,
                seed: cli.seed,
                inject_fault: a.inject_fault,
                relabel_trials: a.relabel_trials,
                omega_trials: a.omega_trials,
            };
            Ok(Rendered::Report(verify_all(&opts)))
        }
    }
}

fn cmd_pop(a: &PopArgs) -> Result<Rendered, Failure> {
    let k = a.shape.bound()?;
    let list: Vec<Value> = match a.shape.connected() {
        Some((d, n)) => enumerate_pop(d, n, k)?.iter().map(|p| json!(p)).collect(),
        None => enumerate_pop_multi(&a.shape.shape()?, k)?.iter().map(|p| json!(p)).collect(),
    };
    Ok(if a.count_only { Rendered::Value(json!(list.len())) } else { Rendered::List(list) })
}

fn check_report(check: Check, params: Value, pass: bool, detail: Value) -> Rendered {
    let witnesses = if pass { vec![] } else { vec![detail.clone()] };
    let mut r = VerificationReport::leaf(check.name(), params, 1, witnesses);
    if pass {
        r.parameters["result"] = detail;
    }
    Rendered::Report(r)
}

fn cmd_matrix(a: &MatrixArgs) -> Result<Rendered, Failure> {
    let k = a.shape.bound()?;
    let shape = a.shape.shape()?;
    let connected = a.shape.connected();
    let needs_multi = matches!((a.which, a.verify), (Which::B | Which::C, None) | (_, Some(Check::Triangular)));
    if connected.is_none() && needs_multi && !a.experimental_multi {
        return Err(Failure::Invalid("B and C for several components need --experimental-multi".into()));
    }
    let mut params = json!({ "shape": shape, "k": k });
    if connected.is_none() && needs_multi {
        params["experimental"] = json!(true);
    }
    if let Some(check) = a.verify {
        return Ok(match check {
            Check::Triangular => match connected {
                Some((d, n)) => {
                    let r = verify_c(d, n, k)?;
                    check_report(check, params, r.is_unit_upper_triangular, json!(r))
                }
                None => {
                    let r = verify_c_multi(&shape, k)?;
                    check_report(check, params, r.is_unit_upper_triangular, json!(r))
                }
            },
            Check::Invertible => {
                let r = verify_m_invertible(&shape, k)?;
                check_report(check, params, r.invertible, json!(r))
            }
            Check::Kronecker => {
                let r = verify_kronecker(&shape, k)?;
                check_report(check, params, r.pass, json!(r))
            }
            Check::TransposeScaling => {
                let r = verify_m_transpose_scaling(&shape, k)?;
                check_report(check, params, r.pass, json!(r))
            }
        });
    }
    Ok(match connected {
        Some((d, n)) => Rendered::Matrix(
            json!(match a.which {
                Which::A => build_a_connected(d, n, k)?,
                Which::B => build_b(d, n, k)?,
                Which::C => build_c(d, n, k)?,
                Which::M => build_m_connected(d, n, k)?,
            }),
            match a.which {
                Which::A => build_a_connected(d, n, k)?.to_csv(),
                Which::B => build_b(d, n, k)?.to_csv(),
                Which::C => build_c(d, n, k)?.to_csv(),
                Which::M => build_m_connected(d, n, k)?.to_csv(),
            },
        ),
        None => {
            let m = match a.which {
                Which::A => build_a(&shape, k)?,
                Which::B => build_b_multi(&shape, k)?,
                Which::C => build_b_multi(&shape, k)?.multiply(&build_a(&shape, k)?)?,
                Which::M => build_m(&shape, k)?,
            };
            Rendered::Matrix(json!(m), m.to_csv())
        }
    })
}

fn cmd_graphs(a: &GraphArgs) -> Result<Rendered, Failure> {
    let rel = &a.rel;
    let c = rel.d.len();
    let ordered_counts = rel.counts_of(&rel.n)?;
    let middle = rel.counts_of(&a.middle)?;
    let free = rel.counts_of(&a.free)?;
    let mut next = 1;
    let mut take = |count: u32| {
        let block: Vec<u32> = (next..next + count).collect();
        next += count;
        block
    };
    let ordered: Vec<Vec<u32>> = ordered_counts.iter().map(|&n| take(n)).collect();
    let middle: Vec<Vec<u32>> = middle.iter().map(|&n| take(n)).collect();
    let extra: Vec<Vec<u32>> = free.iter().map(|&n| take(n)).collect();
    let layout = PrincipalLayout { ordered, middle, extra };
    if rel.g.len() != c {
        return Err(Failure::Invalid(format!("{} genera for {c} components", rel.g.len())));
    }
    let shape = layout
        .relation_shape(rel.g.clone(), rel.d.clone(), rel.profiles()?)?
        .with_parameterized(!rel.unparameterized)?;
    let mut out = Vec::new();
    for g in enumerate_graphs(&shape)? {
        let principal = classify_principal(&g, &layout, &shape);
        if a.principal_only && principal.is_none() {
            continue;
        }
        let mut entry = json!({ "graph": g });
        if let Some(beta) = principal {
            entry["principalType"] = json!(beta);
        }
        if a.contributions {
            entry["contribution"] = json!(contribution(&g, &shape)?);
        }
        out.push(entry);
    }
    Ok(Rendered::List(out))
}

impl RelativeArgs {
    fn counts_of(&self, v: &[u32]) -> Result<Vec<u32>, Error> {
        let c = self.d.len();
        match v.len() {
            0 => Ok(vec![0; c]),
            l if l == c => Ok(v.to_vec()),
            l => Err(Error::InvalidShape(format!("{l} marking counts for {c} components"))),
        }
    }

    fn shape(&self, extra: u32) -> Result<RelativeShape, Error> {
        let mut next = 1;
        let sets = self
            .counts_of(&self.n)?
            .iter()
            .map(|&n| {
                let block: Vec<u32> = (next..next + n).collect();
                next += n;
                block
            })
            .collect();
        RelativeShape::new(self.g.clone(), sets, self.d.clone(), self.profiles()?, !self.unparameterized, extra)
    }
}

fn cmd_kernels(a: &KernelArgs) -> Result<Rendered, Failure> {
    let value = match &a.kernel {
        Kernel::S { alpha, beta } => {
            json!({ "s": s_func(&Partition::canonicalize(alpha)?, &Partition::canonicalize(beta)?).to_string() })
        }
        Kernel::T { q, p } => {
            json!({ "t": t_func(&Partition::canonicalize(q)?, &Partition::canonicalize(p)?)?.to_string() })
        }
        Kernel::Eta { d, ordered, unordered } => {
            let pop = Pop::from_parts(*d, ordered, unordered)?;
            json!({ "pop": pop, "eta": eta(&pop).to_string(), "principalScaling": principal_scaling(&pop).to_string() })
        }
    };
    Ok(Rendered::Value(value))
}

fn cmd_dim(a: &DimArgs, seed: u64) -> Result<Rendered, Failure> {
    let shape = a.rel.shape(a.extra)?;
    let mut value = json!({
        "shape": shape,
        "vdimParameterized": vdim_parameterized(&shape),
        "vdimUnparameterized": vdim_unparameterized(&shape),
    });
    if shape.components() == 1 {
        let profiles: Vec<Partition> = shape.profiles().iter().map(|p| p[0].clone()).collect();
        value["hurwitz"] = json!(hurwitz_condition(shape.genera()[0], &profiles)?);
    }
    if a.omega_trials > 0 {
        let report = dimensions_suite(seed, a.omega_trials);
        let pass = report.pass;
        value["omegaCheck"] = json!(report);
        return Ok(if pass { Rendered::Value(value) } else { Rendered::Failed(value) });
    }
    Ok(Rendered::Value(value))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| run(&cli)).and_then(|r| output::emit(&r, &cli));
    match result {
        Ok(code) => code,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
