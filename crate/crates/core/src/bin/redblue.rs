//! Command-line front end: counts, searches, formula evaluation, relaxation
//! experiments, constructions, density sweeps, and the acceptance battery.
//!
//! Exit codes: 0 success, 2 configuration error, 3 verification failure,
//! 4 cap exceeded (including count overflow).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use num::BigInt;
use serde::Serialize;

use redblue::counting;
use redblue::formulas::{self, FormulaParams};
use redblue::graph::{self, Colour, ColouredCompleteGraph};
use redblue::pattern::{self, PatternGraph};
use redblue::relaxation;
use redblue::search;
use redblue::Error;

#[derive(Parser)]
#[command(
    name = "redblue",
    version,
    about = "Pattern counting and maximisation in red-blue complete graphs"
)]
struct Cli {
    /// Cap the rayon worker pool (default: REDBLUE_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count copies of a pattern, alternating cycles, or alternating walks
    /// in a graph.
    Count(CountArgs),
    /// Maximise a pattern count over all hosts of a given order.
    Max(MaxArgs),
    /// Evaluate a named closed-form formula.
    Formula(FormulaArgs),
    /// Run the acceptance battery; exits nonzero on any failure.
    Verify(VerifyArgs),
    /// Emit a constructed graph file.
    Construct(ConstructArgs),
    /// Degree-codegree relaxation runs: vector dumps, equalisation traces,
    /// tradeoff-gap grids.
    Relax(RelaxArgs),
    /// Density sweep: counts on seeded quasirandom hosts against the
    /// closed-form profiles, as plottable CSV.
    Profile(ProfileArgs),
}

#[derive(Args)]
struct GraphSource {
    /// Read the host graph from a text file (`n` on line 1, `R`/`B` pair
    /// string on line 2).
    #[arg(long, conflicts_with = "construct")]
    input: Option<PathBuf>,
    /// Construct the host: `partitioned:n=6,a=3,colour=R`,
    /// `turan:n=7,parts=3`, or `quasirandom:n=50,sigma=0.75,seed=1`.
    #[arg(long)]
    construct: Option<String>,
}

impl GraphSource {
    fn load(&self) -> Result<ColouredCompleteGraph, Error> {
        match (&self.input, &self.construct) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                text.parse()
            }
            (None, Some(spec)) => parse_construct_spec(spec),
            _ => Err(Error::InvalidArgument(
                "exactly one of --input and --construct is required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct PatternSource {
    /// Named pattern: rbr_path, rbrb_c4, rrbb_c4, rrrb_c4, ccext,
    /// rrbbext_a, rrbbext_b, ccextt, alt_cycle_<len>.
    #[arg(long)]
    pattern: Option<String>,
    /// Literal edge list, 1-based: `1-2:R,2-3:B`.
    #[arg(long, conflicts_with = "pattern")]
    edges: Option<String>,
}

impl PatternSource {
    fn load(&self) -> Result<PatternGraph, Error> {
        match (&self.pattern, &self.edges) {
            (Some(name), None) => pattern::named_pattern(name),
            (None, Some(spec)) => pattern::parse_edge_list(spec),
            _ => Err(Error::InvalidArgument(
                "exactly one of --pattern and --edges is required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    pattern: PatternSource,
    /// Count unlabelled alternating cycles of this length instead of a
    /// pattern.
    #[arg(long, conflicts_with_all = ["pattern", "edges", "walk_t"])]
    cycle_len: Option<usize>,
    /// Count alternating walks of this length instead of a pattern.
    #[arg(long, conflicts_with_all = ["pattern", "edges"])]
    walk_t: Option<usize>,
    /// Use the generic embedding counter even when a specialised counter
    /// applies.
    #[arg(long)]
    generic: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MaxArgs {
    #[command(flatten)]
    pattern: PatternSource,
    #[arg(long)]
    n: usize,
    /// Edge-flip local search instead of exhaustive generation (required
    /// beyond the exhaustive cap).
    #[arg(long)]
    local: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    restarts: u32,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FormulaArgs {
    /// One of the names printed by `formula --list`.
    #[arg(long, required_unless_present = "list")]
    name: Option<String>,
    #[arg(long)]
    list: bool,
    #[arg(long)]
    n: Option<u128>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    a: Option<u128>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Row name for table1_density.
    #[arg(long)]
    row: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Criteria suite to run.
    #[arg(long, default_value = "primary")]
    suite: String,
    /// Run a single criterion by id.
    #[arg(long)]
    criterion: Option<u32>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
enum ColourArg {
    R,
    B,
}

#[derive(Args)]
struct ConstructArgs {
    /// Construction kind.
    #[arg(long, value_parser = ["partitioned", "turan", "quasirandom"])]
    kind: String,
    #[arg(long)]
    n: usize,
    /// First part size (partitioned).
    #[arg(long)]
    a: Option<usize>,
    /// Colour of the bipartite class (partitioned).
    #[arg(long, value_enum, default_value = "r")]
    colour: ColourArg,
    /// Part count (turan).
    #[arg(long)]
    parts: Option<usize>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Swap the two colours of the result.
    #[arg(long)]
    swap: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RelaxCmd {
    /// Dump the degree-codegree vector of a graph as JSON `{d: [...],
    /// z: [...]}`.
    Vector {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the equalisation iteration on a graph-derived vector (exact
    /// rational arithmetic) and emit the `step,Sigma,f` trace as CSV.
    Equalize {
        #[command(flatten)]
        source: GraphSource,
        /// Step threshold γ as a rational like `1/10` or a decimal.
        #[arg(long, default_value = "1/10")]
        gamma: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sweep the pair-function tradeoff gap over a graphical grid; CSV
    /// columns `p,q,r,b,t,gap`.
    Gapgrid {
        #[arg(long, default_value_t = 40)]
        steps: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RelaxArgs {
    #[command(subcommand)]
    cmd: RelaxCmd,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0.05)]
    sigma_min: f64,
    #[arg(long, default_value_t = 0.95)]
    sigma_max: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("REDBLUE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(k) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded(_) | Error::Overflow(_) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Count(args) => count_cmd(args),
        Cmd::Max(args) => max_cmd(args),
        Cmd::Formula(args) => formula_cmd(args),
        Cmd::Verify(args) => verify_cmd(args),
        Cmd::Construct(args) => construct_cmd(args),
        Cmd::Relax(args) => relax_cmd(args.cmd),
        Cmd::Profile(args) => profile_cmd(args),
    }
}

#[derive(Serialize)]
struct CountReport {
    n: usize,
    what: String,
    count: String,
    counter: &'static str,
}

fn count_cmd(args: CountArgs) -> Result<ExitCode, Error> {
    let g = args.source.load()?;
    let (what, count, counter): (String, u128, &'static str) = if let Some(len) = args.cycle_len {
        (
            format!("alternating_cycles_{len}"),
            counting::count_alternating_cycles(&g, len)?,
            "cycle_dfs",
        )
    } else if let Some(t) = args.walk_t {
        (
            format!("alternating_walks_{t}"),
            counting::walk_profile(&g, t)?.totals[t],
            "walk_dp",
        )
    } else {
        let h = args.pattern.load()?;
        if args.generic {
            (h.to_string(), counting::count_copies(&h, &g), "generic")
        } else {
            match counting::SpecialisedCounter::recognise(&h) {
                Some((c, false)) => (h.to_string(), c.count(&g), "codegree"),
                Some((c, true)) => (h.to_string(), c.count(&g.swap_colours()), "codegree"),
                None => (h.to_string(), counting::count_copies(&h, &g), "generic"),
            }
        }
    };
    let report = CountReport {
        n: g.n(),
        what,
        count: count.to_string(),
        counter,
    };
    emit(&args.output, &to_json(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

fn max_cmd(args: MaxArgs) -> Result<ExitCode, Error> {
    let h = args.pattern.load()?;
    let result = if args.local {
        search::local_search_max(&h, args.n, args.seed, args.restarts)?
    } else {
        search::brute_force_max(&h, args.n)?
    };
    emit(&args.output, &to_json(&result)?)?;
    Ok(ExitCode::SUCCESS)
}

fn formula_cmd(args: FormulaArgs) -> Result<ExitCode, Error> {
    if args.list {
        let mut out = String::new();
        for name in formulas::formula_names() {
            let _ = writeln!(out, "{name}");
        }
        emit(&args.output, &out)?;
        return Ok(ExitCode::SUCCESS);
    }
    let params = FormulaParams {
        n: args.n,
        t: args.t,
        a: args.a,
        sigma: args.sigma,
        epsilon: args.epsilon,
        row: args.row,
    };
    let value = formulas::evaluate(args.name.as_deref().unwrap(), &params)?;
    emit(&args.output, &to_json(&value)?)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode, Error> {
    if args.suite != "primary" {
        return Err(Error::InvalidArgument(format!(
            "unknown suite {:?}; only \"primary\" exists",
            args.suite
        )));
    }
    let results = match args.criterion {
        Some(id) => vec![redblue::acceptance::run_criterion(id)
            .ok_or_else(|| Error::InvalidArgument(format!("no criterion {id}")))?],
        None => redblue::acceptance::run_all(),
    };
    let mut all_ok = true;
    let mut table = String::new();
    for r in &results {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(table, "[{verdict}] {:>2} {:<24} {}", r.id, r.name, r.detail);
        all_ok &= r.passed;
    }
    print!("{table}");
    if let Some(path) = &args.output {
        write_file(path, &to_json(&results)?)?;
    }
    if all_ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn construct_cmd(args: ConstructArgs) -> Result<ExitCode, Error> {
    let g = match args.kind.as_str() {
        "partitioned" => {
            let a = args
                .a
                .ok_or_else(|| Error::InvalidArgument("partitioned needs --a".into()))?;
            let colour = match args.colour {
                ColourArg::R => Colour::Red,
                ColourArg::B => Colour::Blue,
            };
            graph::construct_partitioned(args.n, a, colour)?
        }
        "turan" => {
            let parts = args
                .parts
                .ok_or_else(|| Error::InvalidArgument("turan needs --parts".into()))?;
            graph::construct_turan_red(args.n, parts)?
        }
        "quasirandom" => {
            let sigma = args
                .sigma
                .ok_or_else(|| Error::InvalidArgument("quasirandom needs --sigma".into()))?;
            graph::construct_quasirandom(args.n, sigma, args.seed)?
        }
        _ => unreachable!("clap validates"),
    };
    let g = if args.swap { g.swap_colours() } else { g };
    emit(&args.output, &format!("{g}\n"))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct EqualizeSummary {
    n: usize,
    gamma: String,
    steps: usize,
    initial_spread: f64,
    final_spread: f64,
    initial_f: f64,
    final_f: f64,
}

fn relax_cmd(cmd: RelaxCmd) -> Result<ExitCode, Error> {
    match cmd {
        RelaxCmd::Vector { source, output } => {
            let g = source.load()?;
            let v = relaxation::vector_from_graph(&g);
            emit(&output, &to_json(&v)?)?;
        }
        RelaxCmd::Equalize {
            source,
            gamma,
            output,
        } => {
            let g = source.load()?;
            let gamma = parse_rational(&gamma)?;
            if gamma <= BigRational::from_integer(BigInt::from(0)) {
                return Err(Error::InvalidArgument("gamma must be positive".into()));
            }
            let v = relaxation::vector_from_graph_rational(&g);
            let (trace, _) = relaxation::equalize(&v, &gamma)?;
            let first = trace.steps.first().unwrap();
            let last = trace.steps.last().unwrap();
            use num::ToPrimitive;
            let summary = EqualizeSummary {
                n: g.n(),
                gamma: gamma.to_string(),
                steps: trace.steps.len() - 1,
                initial_spread: first.0.to_f64().unwrap_or(f64::NAN),
                final_spread: last.0.to_f64().unwrap_or(f64::NAN),
                initial_f: first.1.to_f64().unwrap_or(f64::NAN),
                final_f: last.1.to_f64().unwrap_or(f64::NAN),
            };
            println!("{}", to_json(&summary)?.trim_end());
            if let Some(path) = &output {
                write_file(path, &trace.to_csv())?;
            }
        }
        RelaxCmd::Gapgrid { steps, output } => {
            if steps == 0 {
                return Err(Error::InvalidArgument(
                    "gapgrid needs at least one step".into(),
                ));
            }
            let mut csv = String::from("p,q,r,b,t,gap\n");
            for pi in 0..=steps {
                let p = 0.05 + 0.9 * pi as f64 / steps as f64;
                for qi in 0..=steps {
                    let q = 0.05 + 0.9 * qi as f64 / steps as f64;
                    let lo = (p + q - 1.0f64).max(0.0);
                    let hi = p.min(q);
                    for ri in 0..=steps {
                        let r = lo + (hi - lo) * ri as f64 / steps as f64;
                        let f = relaxation::rrbb_pair_functions(p, q, r);
                        let _ = writeln!(
                            csv,
                            "{p:.6},{q:.6},{r:.6},{:.9},{:.9},{:.9e}",
                            f.b,
                            f.t,
                            f.gap.unwrap_or(f64::NAN)
                        );
                    }
                }
            }
            emit(&output, &csv)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn profile_cmd(args: ProfileArgs) -> Result<ExitCode, Error> {
    if args.step <= 0.0 || args.sigma_min > args.sigma_max {
        return Err(Error::InvalidArgument("bad sigma range".into()));
    }
    let n4 = (args.n as f64).powi(4);
    let mut csv =
        String::from("sigma,actual_sigma,rrrb_count,profile_bound,rand_q,count_over_bound\n");
    let mut sigma = args.sigma_min;
    while sigma <= args.sigma_max + 1e-12 {
        let g = graph::construct_quasirandom(args.n, sigma, args.seed)?;
        let count = counting::count_rrrb_codegree(&g) as f64;
        let bound = 0.5 * sigma.powi(3) * (1.0 - sigma) * n4;
        let randq = formulas::rand_q(sigma)?.float;
        let ratio = if bound > 0.0 { count / bound } else { f64::NAN };
        let _ = writeln!(
            csv,
            "{sigma:.6},{:.6},{count},{bound:.3},{randq:.9},{ratio:.6}",
            g.red_density()
        );
        sigma += args.step;
    }
    emit(&args.output, &csv)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

fn parse_construct_spec(spec: &str) -> Result<ColouredCompleteGraph, Error> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("construct spec {spec:?} missing kind")))?;
    let mut kv = std::collections::BTreeMap::new();
    for part in rest.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad construct field {part:?}")))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let get_usize =
        |kv: &std::collections::BTreeMap<String, String>, key: &str| -> Result<usize, Error> {
            kv.get(key)
                .ok_or_else(|| Error::Parse(format!("construct spec missing {key}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad {key} value")))
        };
    match kind {
        "partitioned" => {
            let n = get_usize(&kv, "n")?;
            let a = get_usize(&kv, "a")?;
            let colour = match kv.get("colour").map(|s| s.as_str()).unwrap_or("R") {
                "R" | "r" => Colour::Red,
                "B" | "b" => Colour::Blue,
                other => return Err(Error::Parse(format!("bad colour {other:?}"))),
            };
            graph::construct_partitioned(n, a, colour)
        }
        "turan" => {
            let n = get_usize(&kv, "n")?;
            let parts = get_usize(&kv, "parts")?;
            graph::construct_turan_red(n, parts)
        }
        "quasirandom" => {
            let n = get_usize(&kv, "n")?;
            let sigma: f64 = kv
                .get("sigma")
                .ok_or_else(|| Error::Parse("construct spec missing sigma".into()))?
                .parse()
                .map_err(|_| Error::Parse("bad sigma value".into()))?;
            let seed: u64 = kv
                .get("seed")
                .map(|s| s.parse())
                .transpose()
                .map_err(|_| Error::Parse("bad seed value".into()))?
                .unwrap_or(0);
            graph::construct_quasirandom(n, sigma, seed)
        }
        other => Err(Error::Parse(format!("unknown construction {other:?}"))),
    }
}

/// Parses `p/q` or a plain decimal into an exact rational.
fn parse_rational(s: &str) -> Result<BigRational, Error> {
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if d == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(BigRational::new(BigInt::from(n), BigInt::from(d)));
    }
    if let Some((int_part, frac)) = s.trim().split_once('.') {
        let bad = || Error::Parse(format!("bad rational {s:?}"));
        let neg = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        let whole: i64 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let frac_v: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let den = 10i64.pow(frac.len() as u32);
        let num = whole * den + frac_v;
        return Ok(BigRational::new(
            BigInt::from(if neg { -num } else { num }),
            BigInt::from(den),
        ));
    }
    let v: i64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(BigRational::from_integer(BigInt::from(v)))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::InvalidArgument(format!("serialisation failed: {e}")))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Error> {
    fs::write(path, text)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}
