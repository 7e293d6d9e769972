use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use portexplore::advice::{BitString, OracleKind, SizeAdviceParams};
use portexplore::adversary::{build_ghat, hamiltonian_path_tree, lower_bound_witness, GadgetRoles};
use portexplore::explore::{CapPolicy, UxsStore, DEFAULT_FEASIBILITY_CAP};
use portexplore::graph::{self, gen_complete_bipartite, NodeId, Port, PortGraph};
use portexplore::harness::{
    build_instance, make_advice, pigeonhole_demo, report_to_string, run_experiment,
    resolve_starts, run_with_advice, Algo, ExperimentSpec, Family, HarnessError, Instance, ReportRow,
    StartSelection,
};

#[derive(Parser)]
#[command(name = "portexplore", version)]
#[command(about = "Explore anonymous port-numbered graphs with advice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from one of the families
    Gen(GenArgs),
    /// Produce advice for a graph
    Advise(AdviseArgs),
    /// Run an advice-driven explorer on a graph
    Explore(ExploreArgs),
    /// Find a start and gadget vectors on which a port sequence fails on Ĝ
    Adversary(AdversaryArgs),
    /// Pigeonhole demonstration with the k-bit ring-ladder oracle
    Collide(CollideArgs),
    /// Build a family instance, advise, explore, and report
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Ring,
    Bipartite,
    Ghat,
    Ghatz,
    Gx,
    Gxprime,
    Gtilde,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Tree,
    Ham,
    Poly,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Instance,
    Map,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Node count (ring, random, gx, gxprime)
    #[arg(long)]
    n: Option<usize>,
    /// Side size (bipartite)
    #[arg(long)]
    k: Option<usize>,
    /// Nodes of H (ghat, ghatz, gtilde)
    #[arg(long)]
    m: Option<usize>,
    /// Main cycle length (ghatz)
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Seed for random graphs and secret ports
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct UxsArgs {
    /// Largest size bound for which a UXS is certified
    #[arg(long, default_value_t = DEFAULT_FEASIBILITY_CAP)]
    cap: usize,
    /// Replay the certificate for the cap when the decoded bound exceeds it
    #[arg(long)]
    clamp: bool,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the role sidecar of gadget families here
    #[arg(long)]
    roles: Option<PathBuf>,
    /// Write a known hamiltonian cycle here
    #[arg(long)]
    cycle_out: Option<PathBuf>,
}

#[derive(Args)]
struct AdviseArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value = "instance")]
    oracle: OracleArg,
    #[arg(long, default_value_t = 0)]
    start: NodeId,
    #[arg(long, default_value_t = 0)]
    c: u32,
    /// Hamiltonian cycle file (node ids separated by whitespace)
    #[arg(long)]
    cycle: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExploreArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    advice: PathBuf,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value = "instance")]
    oracle: OracleArg,
    /// N, a comma-separated list, `all`, or `cycle` (needs --roles)
    #[arg(long, default_value = "0")]
    start: String,
    #[arg(long)]
    roles: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    c: u32,
    #[arg(long)]
    budget: Option<usize>,
    #[command(flatten)]
    uxs: UxsArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AdversaryArgs {
    /// Nodes of H = K_{m/2,m/2}
    #[arg(long, default_value_t = 4)]
    m: usize,
    /// Port sequence, comma separated
    #[arg(long, conflicts_with = "sequence_file")]
    sequence: Option<String>,
    #[arg(long)]
    sequence_file: Option<PathBuf>,
    /// Write the failing Ĝ here
    #[arg(long)]
    graph_out: Option<PathBuf>,
    #[arg(long)]
    roles: Option<PathBuf>,
}

#[derive(Args)]
struct CollideArgs {
    #[arg(long, default_value_t = 2)]
    bits: u32,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value = "instance")]
    oracle: OracleArg,
    #[arg(long, value_enum, default_value = "tree")]
    algo: AlgoArg,
    #[arg(long, default_value = "all")]
    start: String,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 0)]
    c: u32,
    #[command(flatten)]
    uxs: UxsArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Check(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        if e.is_config() {
            Failure::Config(e.to_string())
        } else {
            Failure::Check(e.to_string())
        }
    }
}

fn config<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Config(e.to_string())
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Tree => Algo::Tree,
            AlgoArg::Ham => Algo::Ham,
            AlgoArg::Poly => Algo::Poly,
        }
    }
}

impl From<OracleArg> for OracleKind {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Instance => OracleKind::Instance,
            OracleArg::Map => OracleKind::Map,
        }
    }
}

impl UxsArgs {
    fn store(&self) -> UxsStore {
        let store = UxsStore::new(self.cap);
        match &self.cache_dir {
            Some(dir) => store.with_cache_dir(dir),
            None => store,
        }
    }

    fn policy(&self) -> CapPolicy {
        if self.clamp {
            CapPolicy::ClampToCap
        } else {
            CapPolicy::Strict
        }
    }
}

fn family(args: &FamilyArgs) -> Result<Family, Failure> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::Config(format!("this family needs --{flag}")))
    };
    Ok(match args.family {
        FamilyName::Ring => Family::Ring { n: need(args.n, "n")? },
        FamilyName::Bipartite => Family::Bipartite { k: need(args.k, "k")? },
        FamilyName::Ghat => Family::Ghat { m: need(args.m, "m")? },
        FamilyName::Ghatz => Family::GhatZ {
            m: need(args.m, "m")?,
            p: need(args.p, "p")?,
        },
        FamilyName::Gx => Family::Gx {
            n: need(args.n, "n")?,
            x_seed: args.seed,
        },
        FamilyName::Gxprime => Family::GxPrime {
            n: need(args.n, "n")?,
            x_seed: args.seed,
        },
        FamilyName::Gtilde => Family::Gtilde { m: need(args.m, "m")? },
        FamilyName::Random => Family::Random {
            n: need(args.n, "n")?,
            density: args.density,
            seed: args.seed,
        },
    })
}

fn parse_starts(text: &str) -> Result<StartSelection, Failure> {
    match text {
        "all" => Ok(StartSelection::All),
        "cycle" => Ok(StartSelection::Cycle),
        _ => text
            .split(',')
            .map(|s| s.trim().parse::<NodeId>())
            .collect::<Result<Vec<_>, _>>()
            .map(StartSelection::Nodes)
            .map_err(|e| Failure::Config(format!("bad --start `{text}`: {e}"))),
    }
}

fn parse_numbers(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|e| config(format!("bad number `{s}`: {e}"))))
        .collect()
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| config(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> Result<PortGraph, Failure> {
    graph::deserialize(&read_text(path)?).map_err(|e| config(format!("{}: {e}", path.display())))
}

fn finish_rows(rows: &[ReportRow], out: Option<&Path>) -> Result<(), Failure> {
    write_or_print(out, &report_to_string(rows)?)?;
    let failed = rows
        .iter()
        .filter(|r| !r.completed || !r.bound_checked)
        .count();
    if failed > 0 {
        return Err(Failure::Check(format!(
            "{failed} of {} runs did not complete within their bound",
            rows.len()
        )));
    }
    Ok(())
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let instance = build_instance(&family(&args.family)?)?;
    write_or_print(args.out.as_deref(), &graph::serialize(&instance.graph))?;
    if let Some(path) = &args.roles {
        let roles = instance
            .roles
            .as_ref()
            .ok_or_else(|| config(format!("{} has no gadget roles", instance.family)))?;
        write_or_print(Some(path), &roles.to_sidecar())?;
    }
    if let Some(path) = &args.cycle_out {
        let cycle = instance
            .hamiltonian_cycle
            .as_ref()
            .ok_or_else(|| config(format!("no hamiltonian cycle known for {}", instance.family)))?;
        let text: Vec<String> = cycle.iter().map(usize::to_string).collect();
        write_or_print(Some(path), &(text.join(" ") + "\n"))?;
    }
    Ok(())
}

fn advise(args: AdviseArgs) -> Result<(), Failure> {
    let mut instance = Instance::plain("file", read_graph(&args.graph)?);
    if let Some(path) = &args.cycle {
        instance.hamiltonian_cycle = Some(parse_numbers(&read_text(path)?)?);
    }
    let bits = make_advice(
        &instance,
        args.algo.into(),
        args.oracle.into(),
        args.start,
        SizeAdviceParams { c: args.c },
    )?;
    write_or_print(args.out.as_deref(), &format!("{bits}\n"))
}

fn explore(args: ExploreArgs) -> Result<(), Failure> {
    let g = read_graph(&args.graph)?;
    let advice: BitString = read_text(&args.advice)?
        .parse()
        .map_err(|e| config(format!("{}: {e}", args.advice.display())))?;
    let mut instance = Instance::plain("file", g);
    if let Some(path) = &args.roles {
        let roles = GadgetRoles::parse_sidecar(&read_text(path)?).map_err(config)?;
        instance.main_cycle = roles.main_cycle.clone();
        instance.roles = Some(roles);
    }
    let mut spec = ExperimentSpec::new(Family::Ring { n: 0 }, args.oracle.into(), args.algo.into());
    spec.starts = parse_starts(&args.start)?;
    spec.budget = args.budget;
    spec.size_params = SizeAdviceParams { c: args.c };
    spec.uxs = args.uxs.store();
    spec.cap_policy = args.uxs.policy();
    let rows = resolve_starts(&instance, &spec.starts)?
        .into_iter()
        .map(|start| run_with_advice(&instance, &spec, start, &advice))
        .collect::<Result<Vec<_>, _>>()?;
    finish_rows(&rows, args.out.as_deref())
}

fn adversary(args: AdversaryArgs) -> Result<(), Failure> {
    let text = match (&args.sequence, &args.sequence_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => read_text(path)?,
        (None, None) => return Err(config("give --sequence or --sequence-file")),
    };
    let u: Vec<Port> = parse_numbers(&text)?;
    if args.m < 4 || !args.m.is_multiple_of(2) {
        return Err(config(format!("m must be even and at least 4, got {}", args.m)));
    }
    let h = gen_complete_bipartite(args.m / 2).map_err(config)?;
    let t = hamiltonian_path_tree(args.m);
    let witness = lower_bound_witness(&u, args.m, &h, &t).map_err(|e| match e {
        portexplore::adversary::AdversaryError::Accounting(_) => Failure::Check(e.to_string()),
        _ => config(e),
    })?;
    let Some(w) = witness else {
        println!("witness none");
        println!("length {}", u.len());
        return Ok(());
    };
    println!("witness found");
    println!("start {}", w.start);
    println!("unvisited {}", w.unvisited);
    if let Some(b) = w.block {
        println!("block {b}");
    }
    if let Some(s) = w.stuck_at {
        println!("stuck_at {s}");
    }
    for (i, x) in w.xmap.iter().enumerate() {
        println!("x {i} {x}");
    }
    if args.graph_out.is_some() || args.roles.is_some() {
        let ghat = build_ghat(&h, &t, &w.xmap).map_err(config)?;
        if let Some(path) = &args.graph_out {
            write_or_print(Some(path), &graph::serialize(&ghat.graph))?;
        }
        if let Some(path) = &args.roles {
            write_or_print(Some(path), &ghat.roles().to_sidecar())?;
        }
    }
    Ok(())
}

fn collide(args: CollideArgs) -> Result<(), Failure> {
    if !(1..=5).contains(&args.bits) {
        return Err(config("--bits must lie in 1..=5"));
    }
    let report = pigeonhole_demo(args.bits)?;
    let sizes: Vec<String> = report.sizes.iter().map(usize::to_string).collect();
    println!("sizes {}", sizes.join(" "));
    let Some((i, j)) = report.pair else {
        return Err(Failure::Check("no advice collision found".into()));
    };
    println!("pair {i} {j}");
    if let Some(a) = &report.advice {
        println!("advice {a}");
    }
    for (label, outcome) in [("smaller", &report.smaller), ("larger", &report.larger)] {
        if let Some(o) = outcome {
            println!(
                "{label} steps {} visited {} completed {}",
                o.steps_used, o.visited_count, o.completed
            );
        }
    }
    if !report.demonstrates_failure() {
        return Err(Failure::Check(
            "walker did not fail on the larger ring".into(),
        ));
    }
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<(), Failure> {
    let spec = ExperimentSpec {
        family: family(&args.family)?,
        oracle: args.oracle.into(),
        algo: args.algo.into(),
        starts: parse_starts(&args.start)?,
        budget: args.budget,
        size_params: SizeAdviceParams { c: args.c },
        uxs: args.uxs.store(),
        cap_policy: args.uxs.policy(),
    };
    let rows = run_experiment(&spec)?;
    finish_rows(&rows, args.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Advise(a) => advise(a),
        Command::Explore(a) => explore(a),
        Command::Adversary(a) => adversary(a),
        Command::Collide(a) => collide(a),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(3)
        }
    }
}
