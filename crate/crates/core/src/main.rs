use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use walkimmune::bench::{self, BenchRecord, Method, RunConfig};
use walkimmune::graph::{Graph, LoadOptions, NodeSet};
use walkimmune::immunize::{GammaMode, GreedyConfig};
use walkimmune::sketch::{default_alpha, estimate_walks, DEFAULT_BETA};
use walkimmune::spectral::{eigendrop, PowerIterConfig};
use walkimmune::walks::{exact_cw6_all_capped, EXACT_NODE_CAP};

#[derive(Parser)]
#[command(
    name = "walkimmune",
    version,
    about = "Pick nodes whose removal shrinks a graph's spectral radius"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select k nodes with each method and report the eigendrop.
    Immunize(ImmunizeArgs),
    /// Eigendrop for every (method, k) pair; writes CSV and an SVG chart.
    Sweep(SweepArgs),
    /// Per-node closed 6-walk estimates (or exact counts with --exact).
    DumpWalks(DumpArgs),
    /// Eigendrop of a user-supplied node list.
    Eigendrop(EigendropArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Edge list: two integer node ids per line.
    #[arg(long)]
    input: PathBuf,
    /// Node ids in the file start at 1.
    #[arg(long)]
    one_indexed: bool,
    /// Treat `#` and `%` lines as errors instead of comments.
    #[arg(long)]
    no_comments: bool,
}

impl GraphArgs {
    fn load(&self) -> anyhow::Result<Graph> {
        let file = File::open(&self.input)
            .with_context(|| format!("cannot open {}", self.input.display()))?;
        let opts = LoadOptions {
            one_indexed: self.one_indexed,
            allow_comments: !self.no_comments,
        };
        let loaded = Graph::load_edge_list(BufReader::new(file), opts)
            .with_context(|| format!("{}", self.input.display()))?;
        if !loaded.report.is_clean() {
            eprintln!(
                "warning: dropped {} self-loop(s) and {} duplicate edge(s)",
                loaded.report.self_loops, loaded.report.duplicates
            );
        }
        if loaded.graph.m() == 0 {
            eprintln!("warning: graph has no edges; every eigendrop is 0");
        }
        Ok(loaded.graph)
    }

    fn name(&self) -> String {
        self.input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "graph".into())
    }
}

#[derive(Args)]
struct SketchArgs {
    /// Buckets per hash function [default: max(16, ceil(sqrt(n)))].
    #[arg(long)]
    alpha: Option<usize>,
    /// Number of hash functions.
    #[arg(long, default_value_t = DEFAULT_BETA)]
    beta: usize,
    /// Base seed for hashing and random baselines.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SelectArgs {
    #[command(flatten)]
    sketch: SketchArgs,
    /// Comma-separated: greedy-walk6, greedy1, degree, random, exhaustive.
    #[arg(long, value_delimiter = ',', default_value = "greedy-walk6")]
    methods: Vec<Method>,
    /// k-times-max, max, or a positive number.
    #[arg(long, default_value = "k-times-max")]
    gamma_mode: GammaMode,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

impl SelectArgs {
    fn run_config(&self, graph: &GraphArgs, ks: Vec<usize>) -> RunConfig {
        RunConfig {
            graph_name: graph.name(),
            ks,
            methods: self.methods.clone(),
            greedy: GreedyConfig {
                alpha: self.sketch.alpha,
                beta: self.sketch.beta,
                base_seed: self.sketch.seed,
                gamma_mode: self.gamma_mode,
            },
            power: PowerIterConfig::default(),
        }
    }
}

#[derive(Args)]
struct ImmunizeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Number of nodes to immunize.
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    select: SelectArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Budgets, e.g. `1,2,5` or `1-10`.
    #[arg(long, value_parser = parse_k_list)]
    k_list: KList,
    #[command(flatten)]
    select: SelectArgs,
    /// SVG chart output path.
    #[arg(long)]
    out_svg: Option<PathBuf>,
}

#[derive(Args)]
struct DumpArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    sketch: SketchArgs,
    /// Exact counts (`node_label,cw6`) instead of estimates; limited to 20000 nodes.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct EigendropArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Comma-separated node labels as they appear in the input file.
    #[arg(long, value_delimiter = ',', required = true)]
    nodes: Vec<i64>,
}

#[derive(Clone)]
struct KList(Vec<usize>);

fn parse_k_list(s: &str) -> Result<KList, String> {
    let mut ks = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once('-') {
            let lo: usize = lo.parse().map_err(|_| format!("bad range {part:?}"))?;
            let hi: usize = hi.parse().map_err(|_| format!("bad range {part:?}"))?;
            if lo > hi {
                return Err(format!("empty range {part:?}"));
            }
            ks.extend(lo..=hi);
        } else {
            ks.push(part.parse().map_err(|_| format!("bad k {part:?}"))?);
        }
    }
    if ks.is_empty() || ks.contains(&0) {
        return Err("k values must be positive".into());
    }
    ks.sort_unstable();
    ks.dedup();
    Ok(KList(ks))
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn write_records(
    cfg: &RunConfig,
    g: &Graph,
    path: Option<&Path>,
    records: &[BenchRecord],
) -> anyhow::Result<()> {
    let mut out = output(path)?;
    bench::write_csv(&mut out, &cfg.provenance(g), records)?;
    out.flush()?;
    Ok(())
}

fn immunize(args: ImmunizeArgs) -> anyhow::Result<()> {
    let g = args.graph.load()?;
    let cfg = args.select.run_config(&args.graph, vec![args.k]);
    let records = bench::sweep(&g, &cfg)?;
    for r in &records {
        let labels: Vec<String> = r.selected.iter().map(i64::to_string).collect();
        eprintln!(
            "{}: [{}] eigendrop {:.4}%  ({})",
            r.method,
            labels.join(", "),
            r.eigendrop_pct,
            r.status
        );
    }
    write_records(&cfg, &g, args.select.out_csv.as_deref(), &records)?;
    if records.iter().any(|r| r.status.starts_with("error")) {
        bail!("some methods failed; see the status column");
    }
    Ok(())
}

fn sweep(args: SweepArgs) -> anyhow::Result<()> {
    let g = args.graph.load()?;
    let cfg = args.select.run_config(&args.graph, args.k_list.0.clone());
    let records = bench::sweep(&g, &cfg)?;
    write_records(&cfg, &g, args.select.out_csv.as_deref(), &records)?;
    if let Some(path) = &args.out_svg {
        let title = format!("Eigendrop of {} (n={}, m={})", cfg.graph_name, g.n(), g.m());
        std::fs::write(path, bench::render_svg(&title, &records))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn dump_walks(args: DumpArgs) -> anyhow::Result<()> {
    let g = args.graph.load()?;
    let mut out = output(args.out_csv.as_deref())?;
    if args.exact {
        let table = exact_cw6_all_capped(&g, EXACT_NODE_CAP)
            .context("exact counts unavailable; rerun without --exact for estimates")?;
        table.write_csv(&g, &mut out)?;
    } else {
        let alpha = args.sketch.alpha.unwrap_or_else(|| default_alpha(g.n()));
        writeln!(
            out,
            "# alpha={alpha} beta={} base_seed={}",
            args.sketch.beta, args.sketch.seed
        )?;
        estimate_walks(&g, alpha, args.sketch.beta, args.sketch.seed)?.write_csv(&g, &mut out)?;
    }
    out.flush()?;
    Ok(())
}

fn eigendrop_cmd(args: EigendropArgs) -> anyhow::Result<()> {
    let g = args.graph.load()?;
    let nodes = args
        .nodes
        .iter()
        .map(|&l| g.node_by_label(l).ok_or(walkimmune::Error::UnknownLabel(l)))
        .collect::<Result<Vec<_>, _>>()?;
    let set = NodeSet::new(g.n(), nodes)?;
    let d = eigendrop(&g, &set, &PowerIterConfig::default())?;
    println!("lambda_before,lambda_after,eigendrop,eigendrop_pct,converged");
    println!(
        "{:.12},{:.12},{:.12},{:.9},{}",
        d.before, d.after, d.drop, d.drop_pct, d.converged
    );
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Immunize(a) => immunize(a),
        Command::Sweep(a) => sweep(a),
        Command::DumpWalks(a) => dump_walks(a),
        Command::Eigendrop(a) => eigendrop_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
