use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sfchoice::certify::verify_gadget_parallel;
use sfchoice::formats::{
    read_json, to_json_string, write_json, CertificateJson, ColouringJson, GadgetJson, GraphJson, ListsJson,
    TraceStepJson,
};
use sfchoice::suite::{run_criterion, Corruption, Profile, SuiteOptions, CRITERIA};
use sfchoice::{CliError, CliResult};
use sfchoice_core::adversary::{build_gadget, GadgetBundle};
use sfchoice_core::bound::bound_for_girth;
use sfchoice_core::colour::{check_colouring, ColourSet, ListAssignment};
use sfchoice_core::constructive::{colour_sp, required_list_size};
use sfchoice_core::oracle::GadgetDefect;
use sfchoice_core::sp::{girth, parse_sp_expression, random_sp_graph, realize, GirthValue, Graph};

/// Series-parallel graphs of given girth: realisation, list multicolouring,
/// lower-bound gadgets and their certificates.
#[derive(Parser)]
#[command(name = "sfchoice", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from an expression, a graph file or a seeded generator.
    Realize(RealizeArgs),
    /// Colour a graph from its lists with m colours per vertex.
    Colour(ColourArgs),
    /// Build the lower-bound gadget for girth k.
    Gadget(GadgetArgs),
    /// Certify that a gadget file has no m-fold colouring.
    VerifyGadget(VerifyArgs),
    /// Print 2 + 1/q for girth k (or for k = 3..=14).
    Bound(BoundArgs),
    /// Run the acceptance suite.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct RealizeArgs {
    /// Expression such as `P(e^2,e^3)`.
    expr: Option<String>,
    #[arg(long, conflicts_with_all = ["expr", "random"])]
    graph: Option<PathBuf>,
    /// Generate a random graph with this many edges before stretching.
    #[arg(long, conflicts_with = "expr")]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replace every edge by a path of this length.
    #[arg(long)]
    stretch: Option<u64>,
    /// Stretch until the girth is at least k.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ColourArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, required_unless_present = "random_lists")]
    lists: Option<PathBuf>,
    /// Draw lists of the required size from 6m colours, seeded by --seed.
    #[arg(long, conflicts_with = "lists")]
    random_lists: bool,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the reduction sequence as JSON on stderr.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    e: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    gadget: PathBuf,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
    profile: ProfileArg,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Node budget of the backtracking solver.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Inject a corrupted gadget to check that the suite notices.
    #[arg(long)]
    corrupt: bool,
}

/// Human-readable lines go to stderr whenever stdout carries JSON.
fn note(json_on_stdout: bool, line: &str) {
    if json_on_stdout {
        eprintln!("{line}");
    } else {
        println!("{line}");
    }
}

fn girth_text(g: GirthValue) -> String {
    match g {
        GirthValue::Finite(v) => v.to_string(),
        GirthValue::Acyclic => "inf".into(),
    }
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    Graph::try_from(&read_json::<GraphJson>(path)?)
}

fn realize_cmd(a: RealizeArgs) -> CliResult<()> {
    let (term, g) = match (&a.expr, &a.graph, a.random) {
        (Some(expr), _, _) => {
            let mut t = parse_sp_expression(expr)?;
            if let Some(s) = a.stretch {
                t = t.stretch(s)?;
            }
            if let (Some(k), GirthValue::Finite(g)) = (a.k, girth(&realize(&t)?)) {
                if g < k {
                    t = t.stretch(u64::from(k.div_ceil(g)))?;
                }
            }
            let g = realize(&t)?;
            (Some(t), g)
        }
        (None, Some(path), _) => (None, load_graph(path)?),
        (None, None, Some(leaves)) => {
            let (mut t, _) = random_sp_graph(leaves, a.seed, a.k.unwrap_or(3).max(3))?;
            if let Some(s) = a.stretch {
                t = t.stretch(s)?;
            }
            let g = realize(&t)?;
            (Some(t), g)
        }
        (None, None, None) => return Err(CliError::Input("give an expression, --graph or --random".into())),
    };
    write_json(a.out.as_deref(), &GraphJson::from(&g))?;
    let stdout_json = a.out.is_none();
    if let Some(t) = term {
        note(stdout_json, &format!("term: {t}"));
    }
    note(
        stdout_json,
        &format!("vertices={} edges={} girth={}", g.vertex_count(), g.edge_count(), girth_text(girth(&g))),
    );
    Ok(())
}

fn colour_cmd(a: ColourArgs) -> CliResult<()> {
    let g = load_graph(&a.graph)?;
    let lists = match &a.lists {
        Some(path) => ListAssignment::try_from(&read_json::<ListsJson>(path)?)?,
        None => {
            let size = required_list_size(a.m, a.k)?;
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let universe = 6 * a.m;
            g.vertices()
                .iter()
                .map(|&v| (v, sample(&mut rng, universe, size).into_iter().map(|c| c as u32).collect::<ColourSet>()))
                .collect()
        }
    };
    let out = colour_sp(&g, &lists, a.m, a.k)?;
    let report = check_colouring(&g, &lists, &out.colouring);
    if !report.is_valid() {
        return Err(CliError::Defect(format!("colouring failed validation: {:?}", report.violations)));
    }
    if a.trace {
        let steps: Vec<TraceStepJson> = out.trace.iter().map(TraceStepJson::from).collect();
        eprint!("{}", to_json_string(&steps));
    }
    write_json(a.out.as_deref(), &ColouringJson::from(&out.colouring))?;
    note(a.out.is_none(), &format!("coloured {} vertices with m={}", out.colouring.len(), a.m));
    Ok(())
}

fn gadget_cmd(a: GadgetArgs) -> CliResult<()> {
    let b = build_gadget(a.k, a.m, a.e)?;
    write_json(a.out.as_deref(), &GadgetJson::from(&b))?;
    let p = b.params;
    note(
        a.out.is_none(),
        &format!("k={} m={} e={} q={} l={} p={} vertices={}", p.k, p.m, p.e, p.q, p.l, p.p, b.graph.vertex_count()),
    );
    Ok(())
}

fn verify_cmd(a: VerifyArgs) -> CliResult<()> {
    let bundle = GadgetBundle::try_from(&read_json::<GadgetJson>(&a.gadget)?)?;
    let cert = verify_gadget_parallel(&bundle, a.workers);
    write_json(a.out.as_deref(), &CertificateJson::new(&cert))?;
    let witnesses = cert.defects.iter().filter(|d| matches!(d, GadgetDefect::Witness { .. })).count();
    let line = format!("{}/{} uncolourable", cert.pairs_checked - witnesses, bundle.params.p);
    note(a.out.is_none(), &line);
    if cert.all_uncolourable {
        Ok(())
    } else {
        Err(CliError::Defect(format!("{line}; {} defect(s)", cert.defects.len())))
    }
}

fn bound_cmd(a: BoundArgs) -> CliResult<()> {
    let ks: Vec<u32> = match a.k {
        Some(k) => vec![k],
        None => (3..=14).collect(),
    };
    for k in ks {
        println!("{}", bound_for_girth(k)?);
    }
    Ok(())
}

fn suite_cmd(a: SuiteArgs) -> CliResult<()> {
    let opts = SuiteOptions {
        profile: match a.profile {
            ProfileArg::Quick => Profile::Quick,
            ProfileArg::Full => Profile::Full,
        },
        workers: a.workers,
        budget: a.budget,
        corrupt: a.corrupt.then_some(Corruption::GadgetZBlock),
    };
    let mut failed = Vec::new();
    for id in CRITERIA {
        let out = run_criterion(id, &opts);
        println!("{out}");
        if !out.passed {
            failed.push(id.to_string());
        }
    }
    if failed.is_empty() {
        println!("all {} criteria passed", CRITERIA.len());
        Ok(())
    } else {
        Err(CliError::Defect(format!("failed criteria: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    // clap's own usage errors would exit with 2, which is reserved for defects
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Realize(a) => realize_cmd(a),
        Command::Colour(a) => colour_cmd(a),
        Command::Gadget(a) => gadget_cmd(a),
        Command::VerifyGadget(a) => verify_cmd(a),
        Command::Bound(a) => bound_cmd(a),
        Command::Suite(a) => suite_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
