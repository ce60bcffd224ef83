//! `dla`: dynamical Lie algebras of QAOA MaxCut instances.
//!
//! Machine-first output: JSON (and CSV for sweeps) on stdout; `--pretty`
//! renders human tables from the same records. Exit codes: 2 parse error,
//! 3 precondition violation, 4 budget exhausted (lower bound printed).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dla_core::closure::{close, Budget, ClosureReport, DlaBasis};
use dla_core::error::GraphError;
use dla_core::extension::{extend, verify_extension, VerifyBudget};
use dla_core::families::{self, PathVariant};
use dla_core::generators::{generators_for, reduced_generators_compact, DlaVariant};
use dla_core::graph::Graph;
use dla_core::parity::{separation_check, tree_check};
use dla_core::repdecomp::commutant_dimension;
use dla_core::vector::Element;
use dla_sim::{leaf_attachment_experiment, records_to_csv, variance_sweep, Hamiltonian};

mod exit_code {
    pub const PARSE: u8 = 2;
    pub const PRECONDITION: u8 = 3;
    pub const BUDGET: u8 = 4;
}

#[derive(Parser)]
#[command(name = "dla", version, about = "Dynamical Lie algebras of QAOA MaxCut instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Std,
    Free,
    Grover,
    GroverSearch,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a DLA dimension by Lie closure.
    Dim(DimArgs),
    /// Standard plus per-vertex reduced dimensions for a directory of graphs.
    Table(TableArgs),
    /// Parity-profile separation report or the acyclic-graph criterion.
    Parity(ParityArgs),
    /// Construct (and optionally verify) the two-step graph extension.
    Extend(ExtendArgs),
    /// Gradient-variance sweeps over reductions and depths.
    Variance(VarianceArgs),
    /// Closed-form family dimensions, cross-checked by closure when feasible.
    Families(FamiliesArgs),
    /// Exact MaxCut by exhaustive enumeration.
    Maxcut(MaxcutArgs),
    /// Commutant dimension of a variant's generator set.
    Commutant(CommutantArgs),
    /// Membership of an element in a computed DLA basis.
    Membership(MembershipArgs),
}

#[derive(Args)]
struct DimArgs {
    /// Graph file (canonical JSON or `u v` lines).
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// Reduce at this vertex (std/free become their reduced flavors;
    /// grover-search fixes the bit).
    #[arg(long)]
    fix_vertex: Option<usize>,
    /// Marked bit string for grover-search, e.g. `010` (qubit 0 first).
    #[arg(long)]
    marked: Option<String>,
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long)]
    max_dim: Option<usize>,
    /// Also export the echelon basis as JSON to this path.
    #[arg(long)]
    export_basis: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Directory of graph JSON files (sorted by file name).
    #[arg(long)]
    graphs: PathBuf,
    /// Time budget per standard closure on graphs with 7+ vertices.
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    format: String,
    #[arg(long)]
    pretty: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParityArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    vertex: usize,
    /// Run the acyclic-graph leaf-profile criterion instead.
    #[arg(long)]
    tree: bool,
    /// Add the optional re-rooted extension pass to the separation check.
    #[arg(long)]
    rerooted: bool,
}

#[derive(Args)]
struct ExtendArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    vertex: usize,
    /// Output path for the extended graph (a provenance side file is
    /// written next to it).
    #[arg(long)]
    out: PathBuf,
    /// Also verify the extension's properties and print the report.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct VarianceArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated depth list, e.g. `1,5,10,20,50`.
    #[arg(long)]
    depths: String,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    /// `all`, `none`, or a comma-separated vertex list; `none` may be mixed
    /// into the list.
    #[arg(long, default_value = "none")]
    reduce: String,
    /// Use the normalized objective Hamiltonian (variance-bound checks).
    #[arg(long)]
    normalized: bool,
    /// Attach a fresh leaf at this vertex and compare the reduced extended
    /// problem against the unreduced original.
    #[arg(long)]
    attach_leaf: Option<usize>,
    /// Include per-parameter variance columns.
    #[arg(long)]
    per_parameter: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Additional depth-series file: one line per depth with all reductions.
    #[arg(long)]
    depth_series: Option<PathBuf>,
}

#[derive(Args)]
struct FamiliesArgs {
    #[command(subcommand)]
    family: FamilyCommand,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Path graph dimensions (standard n^2, free 2n^2 - n).
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = ["std", "free"], default_value = "std")]
        variant: String,
    },
    /// Cycle standard dimension 3n - 1.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Star reduced at the center: constant 3.
    StarReduced,
    /// Spider reduced at the center: sum of 2m^2 + m over distinct arms.
    Spider {
        /// Comma-separated arm lengths, e.g. `1,2`.
        #[arg(long)]
        arms: String,
    },
    /// Grover-mixer dimension r^2 + 1 for a graph's distinct value count.
    Grover {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Grover-search dimensions (n+1)^2 + 1 and n^2 + 1 reduced.
    GroverSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        reduced: bool,
    },
    /// Full special-unitary dimension 4^n - 1.
    FullSu {
        #[arg(long)]
        qubits: usize,
    },
}

#[derive(Args)]
struct MaxcutArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Print only the value and the optimum count.
    #[arg(long)]
    count_only: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CommutantVariant {
    Free,
    FreeReduced,
    Std,
    StdReduced,
}

#[derive(Args)]
struct CommutantArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    variant: CommutantVariant,
    #[arg(long)]
    fix_vertex: Option<usize>,
}

#[derive(Args)]
struct MembershipArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    fix_vertex: Option<usize>,
    #[arg(long)]
    marked: Option<String>,
    /// Element in the textual syntax, e.g. `X3 + 2*Z0Z1 - Y2Y4`.
    #[arg(long)]
    element: String,
    #[arg(long)]
    budget_seconds: Option<f64>,
}

struct CmdError {
    code: u8,
    message: String,
}

impl CmdError {
    fn parse(message: impl Into<String>) -> CmdError {
        CmdError { code: exit_code::PARSE, message: message.into() }
    }

    fn precondition(message: impl Into<String>) -> CmdError {
        CmdError { code: exit_code::PRECONDITION, message: message.into() }
    }
}

impl From<GraphError> for CmdError {
    fn from(e: GraphError) -> CmdError {
        match e {
            GraphError::Parse(_) => CmdError::parse(e.to_string()),
            _ => CmdError::precondition(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("DLA_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dim(args) => cmd_dim(args),
        Command::Table(args) => cmd_table(args),
        Command::Parity(args) => cmd_parity(args),
        Command::Extend(args) => cmd_extend(args),
        Command::Variance(args) => cmd_variance(args),
        Command::Families(args) => cmd_families(args),
        Command::Maxcut(args) => cmd_maxcut(args),
        Command::Commutant(args) => cmd_commutant(args),
        Command::Membership(args) => cmd_membership(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::parse(format!("{}: {e}", path.display())))?;
    Ok(Graph::parse(&text)?)
}

/// Write atomically: temp file in the destination directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CmdError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    std::fs::write(&tmp, contents)
        .and_then(|()| std::fs::rename(&tmp, path))
        .map_err(|e| CmdError::precondition(format!("writing {}: {e}", path.display())))
}

fn parse_marked(marked: Option<&str>, n: usize) -> Result<u64, CmdError> {
    match marked {
        None => Ok(0),
        Some(bits) => {
            if bits.len() != n || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(CmdError::parse(format!(
                    "--marked must be {n} binary digits (qubit 0 first)"
                )));
            }
            Ok(bits
                .chars()
                .enumerate()
                .filter(|&(_, c)| c == '1')
                .fold(0u64, |acc, (q, _)| acc | 1 << q))
        }
    }
}

fn variant_of(args_variant: VariantArg, fix_vertex: Option<usize>, marked: u64) -> DlaVariant {
    match (args_variant, fix_vertex) {
        (VariantArg::Std, None) => DlaVariant::Standard,
        (VariantArg::Std, Some(v)) => DlaVariant::StandardReduced { v },
        (VariantArg::Free, None) => DlaVariant::Free,
        (VariantArg::Free, Some(v)) => DlaVariant::FreeReduced { v },
        (VariantArg::Grover, _) => DlaVariant::GroverMixer,
        (VariantArg::GroverSearch, None) => DlaVariant::GroverSearch { marked },
        (VariantArg::GroverSearch, Some(v)) => DlaVariant::GroverSearchReduced { marked, v },
    }
}

fn close_variant(
    g: &Graph,
    variant: &DlaVariant,
    budget: Option<Budget>,
) -> Result<(DlaBasis, ClosureReport), CmdError> {
    let (gens, dropped) = generators_for(g, variant)?;
    if dropped {
        eprintln!("warning: zero generators were filtered before closure");
    }
    close(&gens, budget).map_err(|e| CmdError::precondition(e.to_string()))
}

fn report_json(report: &ClosureReport) -> serde_json::Value {
    serde_json::json!({
        "dimension": report.dimension,
        "exact": report.exact,
        "brackets_evaluated": report.brackets_evaluated,
        "wall_time_seconds": report.wall_time_seconds,
    })
}

fn cmd_dim(args: DimArgs) -> Result<ExitCode, CmdError> {
    let g = load_graph(&args.graph)?;
    let marked = parse_marked(args.marked.as_deref(), g.n())?;
    let variant = variant_of(args.variant, args.fix_vertex, marked);
    let budget = if args.budget_seconds.is_some() || args.max_dim.is_some() {
        Some(Budget {
            max_seconds: args.budget_seconds,
            max_dim: args.max_dim,
            max_brackets: None,
        })
    } else {
        None
    };
    let (basis, report) = close_variant(&g, &variant, budget)?;
    println!("{}", serde_json::to_string_pretty(&report_json(&report)).unwrap());
    if let Some(path) = args.export_basis {
        write_atomic(&path, &serde_json::to_string(&basis.to_json()).unwrap())?;
    }
    if report.exact {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("budget exhausted: dimension is a lower bound");
        Ok(ExitCode::from(exit_code::BUDGET))
    }
}

#[derive(serde::Serialize)]
struct TableRow {
    graph_id: String,
    n: usize,
    std_dim: usize,
    std_exact: bool,
    reduced_dims: Vec<usize>,
    reduced_exact: Vec<bool>,
    min_reduced: usize,
    /// Strictly-smaller-reduction verdict; only stated when the standard
    /// dimension is exact.
    conjecture_holds: Option<bool>,
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, CmdError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&args.graphs)
        .map_err(|e| CmdError::parse(format!("{}: {e}", args.graphs.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CmdError::parse("no .json graphs in directory"));
    }
    let mut rows = vec![];
    let mut any_budget_hit = false;
    for path in &paths {
        let g = load_graph(path)?;
        let id = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph").to_string();
        let std_budget = if g.n() >= 7 {
            args.budget_seconds.map(|s| Budget { max_seconds: Some(s), ..Default::default() })
        } else {
            None
        };
        let (_, std_report) = close_variant(&g, &DlaVariant::Standard, std_budget)?;
        let mut reduced_dims = vec![];
        let mut reduced_exact = vec![];
        for v in 0..g.n() {
            let (_, r) = close_variant(&g, &DlaVariant::StandardReduced { v }, None)?;
            reduced_dims.push(r.dimension);
            reduced_exact.push(r.exact);
        }
        any_budget_hit |= !std_report.exact;
        let min_reduced = reduced_dims.iter().copied().min().unwrap_or(0);
        let conjecture_holds = if std_report.exact {
            Some(min_reduced < std_report.dimension)
        } else {
            None
        };
        rows.push(TableRow {
            graph_id: id,
            n: g.n(),
            std_dim: std_report.dimension,
            std_exact: std_report.exact,
            reduced_dims,
            reduced_exact,
            min_reduced,
            conjecture_holds,
        });
    }
    let rendered = if args.format == "json" {
        serde_json::to_string_pretty(&rows).unwrap()
    } else {
        let mut out = String::from("graph_id,n,std_dim,std_exact,reduced_dims,min_reduced,conjecture_holds\n");
        for r in &rows {
            let dims: Vec<String> = r
                .reduced_dims
                .iter()
                .zip(&r.reduced_exact)
                .map(|(d, e)| if *e { d.to_string() } else { format!(">{d}") })
                .collect();
            out.push_str(&format!(
                "{},{},{}{},{},{},{}\n",
                r.graph_id,
                r.n,
                if r.std_exact { "" } else { ">" },
                r.std_dim,
                dims.join(";"),
                r.min_reduced,
                r.conjecture_holds.map_or("unknown".into(), |b| b.to_string()),
            ));
        }
        out
    };
    if args.pretty {
        for r in &rows {
            println!(
                "{:>10}  std {}{:<6} reduced {:?} min {} conjecture {}",
                r.graph_id,
                if r.std_exact { "" } else { ">" },
                r.std_dim,
                r.reduced_dims,
                r.min_reduced,
                r.conjecture_holds.map_or("unknown".into(), |b| b.to_string()),
            );
        }
    }
    match &args.out {
        Some(path) => write_atomic(path, &rendered)?,
        None if !args.pretty => print!("{rendered}"),
        None => {}
    }
    Ok(if any_budget_hit { ExitCode::from(exit_code::BUDGET) } else { ExitCode::SUCCESS })
}

fn cmd_parity(args: ParityArgs) -> Result<ExitCode, CmdError> {
    let g = load_graph(&args.graph)?;
    if args.tree {
        let report = tree_check(&g, args.vertex)?;
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        let report = separation_check(&g, args.vertex, args.rerooted)?;
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_extend(args: ExtendArgs) -> Result<ExitCode, CmdError> {
    let g = load_graph(&args.graph)?;
    let result = extend(&g, args.vertex)?;
    let id = args.out.file_stem().and_then(|s| s.to_str()).map(str::to_string);
    write_atomic(
        &args.out,
        &result.extended.to_json_string_with_meta(id.as_deref(), Some("extension")),
    )?;
    let provenance = serde_json::json!({
        "source_vertices": result.original.n(),
        "fixed_vertex": result.v,
        "step1_paths": result
            .step1_paths
            .iter()
            .map(|(anchor, path)| serde_json::json!({"anchor": anchor, "vertices": path}))
            .collect::<Vec<_>>(),
        "step2_paths": result
            .step2_paths
            .iter()
            .map(|(index, path)| serde_json::json!({"layer_index": index, "vertices": path}))
            .collect::<Vec<_>>(),
        "bounds": result.bounds,
    });
    let side = args.out.with_extension("provenance.json");
    write_atomic(&side, &serde_json::to_string_pretty(&provenance).unwrap())?;
    if args.verify {
        let report = verify_extension(&result, &VerifyBudget::default());
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
        if !report.all_ran_passed() {
            return Err(CmdError::precondition("extension verification failed"));
        }
    } else {
        println!(
            "{}",
            serde_json::json!({
                "vertices": result.extended.n(),
                "edges": result.extended.edge_count(),
                "out": args.out.display().to_string(),
            })
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_variance(args: VarianceArgs) -> Result<ExitCode, CmdError> {
    let g = load_graph(&args.graph)?;
    let graph_id = args
        .graph
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("graph")
        .to_string();
    let depths: Vec<usize> = args
        .depths
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| CmdError::parse("bad --depths list")))
        .collect::<Result<_, _>>()?;
    let hamiltonian = if args.normalized {
        Hamiltonian::NormalizedObjective
    } else {
        Hamiltonian::Raw
    };
    let records = if let Some(anchor) = args.attach_leaf {
        let cmp = leaf_attachment_experiment(&g, &graph_id, anchor, &depths, args.samples, args.seed)
            .map_err(|e| CmdError::precondition(e.to_string()))?;
        let mut records = cmp.original_unreduced;
        records.extend(cmp.extended_reduced_at_anchor);
        records
    } else {
        let reductions: Vec<Option<usize>> = match args.reduce.as_str() {
            "all" => {
                let mut r: Vec<Option<usize>> = vec![None];
                r.extend((0..g.n()).map(Some));
                r
            }
            list => list
                .split(',')
                .map(|t| {
                    let t = t.trim();
                    if t == "none" {
                        Ok(None)
                    } else {
                        t.parse().map(Some).map_err(|_| CmdError::parse("bad --reduce list"))
                    }
                })
                .collect::<Result<_, _>>()?,
        };
        variance_sweep(&g, &graph_id, &reductions, &depths, args.samples, args.seed, hamiltonian)
            .map_err(|e| CmdError::precondition(e.to_string()))?
    };
    let csv = records_to_csv(&records, args.per_parameter);
    match &args.out {
        Some(path) => write_atomic(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = &args.depth_series {
        // one line per depth: depth, then mean_variance per reduction in
        // record order
        let mut series = String::from("depth");
        let mut reductions: Vec<Option<usize>> = vec![];
        for r in &records {
            if !reductions.contains(&r.reduction) {
                reductions.push(r.reduction);
            }
        }
        for r in &reductions {
            series.push_str(&format!(",{}", r.map_or("none".into(), |v| v.to_string())));
        }
        series.push('\n');
        for &depth in &depths {
            series.push_str(&depth.to_string());
            for red in &reductions {
                let rec = records
                    .iter()
                    .find(|r| r.depth == depth && r.reduction == *red)
                    .expect("record exists");
                series.push_str(&format!(",{}", rec.mean_variance));
            }
            series.push('\n');
        }
        write_atomic(path, &series)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_families(args: FamiliesArgs) -> Result<ExitCode, CmdError> {
    let cross_check_limit_qubits = 6;
    let (label, formula, closure_dim): (String, usize, Option<usize>) = match args.family {
        FamilyCommand::Path { n, variant } => {
            let pv = if variant == "free" { PathVariant::Free } else { PathVariant::Standard };
            let formula =
                families::dim_path(n, pv).map_err(|e| CmdError::precondition(e.to_string()))?;
            let closure_dim = if n <= cross_check_limit_qubits {
                let g = Graph::path(n);
                let variant =
                    if pv == PathVariant::Free { DlaVariant::Free } else { DlaVariant::Standard };
                Some(close_variant(&g, &variant, None)?.1.dimension)
            } else {
                None
            };
            (format!("path n={n} {variant}"), formula, closure_dim)
        }
        FamilyCommand::Cycle { n } => {
            let formula =
                families::dim_cycle_std(n).map_err(|e| CmdError::precondition(e.to_string()))?;
            let closure_dim = if n <= cross_check_limit_qubits {
                Some(close_variant(&Graph::cycle(n), &DlaVariant::Standard, None)?.1.dimension)
            } else {
                None
            };
            (format!("cycle n={n} std"), formula, closure_dim)
        }
        FamilyCommand::StarReduced => ("star reduced at center".into(), 3, None),
        FamilyCommand::Spider { arms } => {
            let arms: Vec<usize> = arms
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| CmdError::parse("bad --arms list")))
                .collect::<Result<_, _>>()?;
            let (formula, bound) = families::dim_spider_reduced(&arms)
                .map_err(|e| CmdError::precondition(e.to_string()))?;
            let total: usize = arms.iter().sum();
            let closure_dim = if total + 1 <= cross_check_limit_qubits + 1 {
                let g = Graph::spider(&arms);
                Some(close_variant(&g, &DlaVariant::StandardReduced { v: 0 }, None)?.1.dimension)
            } else {
                None
            };
            println!("{}", serde_json::json!({"quadratic_bound": bound}));
            (format!("spider arms {arms:?} reduced at center"), formula, closure_dim)
        }
        FamilyCommand::Grover { graph } => {
            let g = load_graph(&graph)?;
            let r = g.distinct_value_count()?;
            let formula = families::dim_grover(r);
            let closure_dim = if g.n() <= 4 {
                Some(close_variant(&g, &DlaVariant::GroverMixer, None)?.1.dimension)
            } else {
                None
            };
            (format!("grover mixer r={r}"), formula, closure_dim)
        }
        FamilyCommand::GroverSearch { n, reduced } => {
            let formula = families::dim_grover_search(n, reduced);
            (format!("grover search n={n} reduced={reduced}"), formula, None)
        }
        FamilyCommand::FullSu { qubits } => {
            ("full su".into(), families::dim_full_su(qubits), None)
        }
    };
    println!(
        "{}",
        serde_json::json!({
            "family": label,
            "formula_dimension": formula,
            "closure_dimension": closure_dim,
        })
    );
    if let Some(found) = closure_dim {
        if found != formula {
            return Err(CmdError::precondition(format!(
                "closure dimension {found} disagrees with the formula {formula}"
            )));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_maxcut(args: MaxcutArgs) -> Result<ExitCode, CmdError> {
    let g = load_graph(&args.graph)?;
    let (value, optima) = g.maxcut_bruteforce()?;
    let out = if args.count_only {
        serde_json::json!({"value": value, "optima_count": optima.len()})
    } else {
        serde_json::json!({
            "value": value,
            "optima_count": optima.len(),
            "optima": optima
                .iter()
                .map(|o| (0..g.n()).map(|v| if o.bits >> v & 1 == 1 { '1' } else { '0' }).collect::<String>())
                .collect::<Vec<_>>(),
        })
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(ExitCode::SUCCESS)
}

fn cmd_commutant(args: CommutantArgs) -> Result<ExitCode, CmdError> {
    let g = load_graph(&args.graph)?;
    let gens = match (args.variant, args.fix_vertex) {
        (CommutantVariant::Free, None) => dla_core::generators::free_generators(&g),
        (CommutantVariant::Std, None) => dla_core::generators::standard_generators(&g).to_vec(),
        (CommutantVariant::FreeReduced, Some(v)) => reduced_generators_compact(&g, v, true)?.0,
        (CommutantVariant::StdReduced, Some(v)) => reduced_generators_compact(&g, v, false)?.0,
        (CommutantVariant::FreeReduced | CommutantVariant::StdReduced, None) => {
            return Err(CmdError::parse("reduced variants need --fix-vertex"))
        }
        (_, Some(_)) => {
            return Err(CmdError::parse("--fix-vertex needs a reduced variant"))
        }
    };
    let gens: Vec<Element> = gens.into_iter().filter(|e| !e.is_zero()).collect();
    let dim = commutant_dimension(&gens)?;
    println!("{}", serde_json::json!({"commutant_dimension": dim}));
    Ok(ExitCode::SUCCESS)
}

fn cmd_membership(args: MembershipArgs) -> Result<ExitCode, CmdError> {
    let g = load_graph(&args.graph)?;
    let marked = parse_marked(args.marked.as_deref(), g.n())?;
    let variant = variant_of(args.variant, args.fix_vertex, marked);
    let element = Element::parse(&args.element, g.n())
        .map_err(|e| CmdError::parse(e.to_string()))?;
    let budget = args
        .budget_seconds
        .map(|s| Budget { max_seconds: Some(s), ..Default::default() });
    let (basis, report) = close_variant(&g, &variant, budget)?;
    let (member, residual) = basis
        .membership(&element)
        .map_err(|e| CmdError::precondition(e.to_string()))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&serde_json::json!({
            "member": member,
            "residual": residual.to_text(),
            "basis": report_json(&report),
        }))
        .unwrap()
    );
    Ok(ExitCode::SUCCESS)
}
