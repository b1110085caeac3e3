//! `localclust` command line: argument parsing, file handling and output
//! formatting around the `localclust` library.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use localclust::generate::{planted_partition, random_geometric, ring_of_cliques};
use localclust::graph::load_edge_list;
use localclust::pipelines::{
    compute_ncp, evaluate_recovery, predict_labels, write_ncp_csv, NcpConfig, NcpSpec, SizeBins,
};
use localclust::{
    crd_diffuse, flow_improve, mqi, pagerank_nibble, read_vertex_list, simple_local, Cluster,
    CrdParams, DiffusionParams, Error, Graph, LoadOptions, SeedMass, SeedSet, SpectralMethod,
};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "localclust", version, about = "Local graph clustering")]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find a cluster around seed vertices.
    Cluster(ClusterArgs),
    /// Improve an existing cluster with a flow method.
    Improve(ImproveArgs),
    /// Approximate network community profile as CSV.
    Ncp(NcpArgs),
    /// Predict vertex classes from labelled seeds.
    Predict(PredictArgs),
    /// Precision and recall of a found cluster against a target.
    Eval(EvalArgs),
    /// Write a synthetic graph as an edge list.
    Gen(GenArgs),
    /// Vertex, edge and degree summary.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge list: `u v [w]` per line, `#` comments.
    #[arg(long, value_name = "PATH")]
    graph: PathBuf,

    /// Read the third column as an edge weight.
    #[arg(long, default_value_t = false)]
    weighted: bool,
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Write results here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct DiffusionArgs {
    /// Teleport probability.
    #[arg(long, default_value_t = 0.15)]
    alpha: f64,

    /// Push tolerance (acl).
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,

    /// Sparsity penalty (l1reg).
    #[arg(long, default_value_t = 1e-4)]
    rho: f64,

    /// Iteration cap (l1reg).
    #[arg(long, default_value_t = 100_000)]
    max_iters: usize,

    /// Optimality tolerance (l1reg).
    #[arg(long, default_value_t = 1e-6)]
    kkt_tol: f64,

    /// How the initial mass is split over several seeds.
    #[arg(long, value_enum, default_value_t = SeedMassArg::Uniform)]
    seed_mass: SeedMassArg,
}

impl DiffusionArgs {
    fn params(&self) -> DiffusionParams {
        DiffusionParams {
            alpha: self.alpha,
            eps: self.eps,
            rho: self.rho,
            max_iters: self.max_iters,
            kkt_tol: self.kkt_tol,
            seed_mass: match self.seed_mass {
                SeedMassArg::Uniform => SeedMass::Uniform,
                SeedMassArg::Degree => SeedMass::Degree,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeedMassArg {
    Uniform,
    Degree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClusterMethod {
    Acl,
    L1reg,
    Nibble,
    Crd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Spectral {
    Acl,
    L1reg,
}

impl From<Spectral> for SpectralMethod {
    fn from(m: Spectral) -> Self {
        match m {
            Spectral::Acl => SpectralMethod::Acl,
            Spectral::L1reg => SpectralMethod::L1Reg,
        }
    }
}

#[derive(Debug, Args)]
struct SeedArgs {
    /// Seed vertex; repeat for several.
    #[arg(long = "seed", value_name = "ID")]
    seed: Vec<u64>,

    /// Comma-separated seed vertices.
    #[arg(long, value_name = "IDS", value_delimiter = ',')]
    seeds: Vec<u64>,

    /// File of seed vertices, whitespace or comma separated.
    #[arg(long, value_name = "PATH")]
    seed_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Clustering method.
    #[arg(long, value_enum, default_value_t = ClusterMethod::Acl)]
    method: ClusterMethod,

    #[command(flatten)]
    seeds: SeedArgs,

    #[command(flatten)]
    diffusion: DiffusionArgs,

    /// Volume the nibble schedule aims for (nibble).
    #[arg(long, value_name = "VOL")]
    target_volume: Option<u64>,

    /// Per-round edge capacity U (crd).
    #[arg(long, default_value_t = 3)]
    capacity: u64,

    /// Label limit h (crd).
    #[arg(long, default_value_t = 10)]
    height: u32,

    /// Mass multiplier w between rounds (crd).
    #[arg(long, default_value_t = 2)]
    growth: u64,

    /// Initial seed mass as a multiple of its degree (crd).
    #[arg(long, default_value_t = 2)]
    mass_multiplier: u64,

    /// Outer round cap (crd).
    #[arg(long, default_value_t = 20)]
    max_rounds: usize,

    /// Also write the embedding as `vertex,value` CSV.
    #[arg(long, value_name = "PATH")]
    embedding: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = ClusterFormat::Json)]
    format: ClusterFormat,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClusterFormat {
    /// `{members, cut, volume, conductance}`.
    Json,
    /// One vertex id per line.
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ImproveMethod {
    Mqi,
    Flowimprove,
    Simplelocal,
}

#[derive(Debug, Args)]
struct ImproveArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Cluster to improve: one id per line, or a JSON cluster.
    #[arg(long, value_name = "PATH")]
    cluster: PathBuf,

    /// Improvement method.
    #[arg(long, value_enum, default_value_t = ImproveMethod::Mqi)]
    method: ImproveMethod,

    /// Locality penalty (simplelocal).
    #[arg(long, default_value_t = 0.5)]
    delta: f64,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct NcpArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Diffusion method.
    #[arg(long, value_enum, default_value_t = Spectral::Acl)]
    method: Spectral,

    /// Number of log-spaced size bins.
    #[arg(long, default_value_t = 8)]
    bins: usize,

    /// Largest cluster size binned [default: half the vertex count].
    #[arg(long)]
    max_size: Option<usize>,

    /// Seeds sampled per bin.
    #[arg(long, default_value_t = 5)]
    seeds_per_bin: usize,

    /// Seed of the sampling generator.
    #[arg(long, default_value_t = 42)]
    rng: u64,

    /// Worker threads; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,

    /// Emit every run's best cluster per bin, not only the minimum.
    #[arg(long, default_value_t = false)]
    all: bool,

    /// Sample seeds proportionally to degree.
    #[arg(long, default_value_t = false)]
    degree_biased: bool,

    /// Teleport probabilities of the grid [default: 0.01,0.1].
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<f64>,

    /// Push tolerances of the acl grid [default: 1e-3,1e-5,1e-7].
    #[arg(long, value_delimiter = ',')]
    epss: Vec<f64>,

    /// Penalties of the l1reg grid [default: 1e-3,1e-4,1e-5].
    #[arg(long, value_delimiter = ',')]
    rhos: Vec<f64>,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Seed labels: `vertex,class` per line.
    #[arg(long, value_name = "PATH")]
    labels: PathBuf,

    /// Diffusion method.
    #[arg(long, value_enum, default_value_t = Spectral::Acl)]
    method: Spectral,

    #[command(flatten)]
    diffusion: DiffusionArgs,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Found cluster: one id per line, or a JSON cluster.
    #[arg(long, value_name = "PATH")]
    found: PathBuf,

    /// Target cluster, same formats.
    #[arg(long, value_name = "PATH")]
    target: PathBuf,

    #[command(flatten)]
    out: OutArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Cliques joined in a ring by single edges.
    RingOfCliques {
        /// Number of cliques.
        #[arg(long, default_value_t = 20)]
        cliques: usize,
        /// Vertices per clique.
        #[arg(long, default_value_t = 10)]
        size: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Stochastic block model.
    Planted {
        /// Comma-separated block sizes.
        #[arg(long, value_delimiter = ',', default_value = "50,50,50,50")]
        sizes: Vec<usize>,
        /// Edge probability inside a block.
        #[arg(long, default_value_t = 0.5)]
        p_in: f64,
        /// Edge probability between blocks.
        #[arg(long, default_value_t = 0.01)]
        p_out: f64,
        /// Generator seed.
        #[arg(long, default_value_t = 42)]
        rng: u64,
        /// Also write `vertex,block` CSV.
        #[arg(long, value_name = "PATH")]
        blocks: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Random geometric graph on the unit square.
    Geometric {
        /// Number of points.
        #[arg(long, default_value_t = 2000)]
        n: usize,
        /// Connection distance.
        #[arg(long, default_value_t = 0.05)]
        radius: f64,
        /// Generator seed.
        #[arg(long, default_value_t = 42)]
        rng: u64,
        /// Also write `vertex,x,y` CSV.
        #[arg(long, value_name = "PATH")]
        points: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    graph: GraphArgs,

    #[command(flatten)]
    out: OutArgs,
}

/// A failure and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    /// Library error, optionally naming the file it came from.
    fn from_lib(e: Error, file: Option<&Path>) -> Self {
        let code = match e {
            Error::InvalidParameter(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        let message = match file {
            Some(p) => format!("{}: {e}", p.display()),
            None => e.to_string(),
        };
        Failure { code, message }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn lib<T>(r: localclust::Result<T>) -> CliResult<T> {
    r.map_err(|e| Failure::from_lib(e, None))
}

fn require_file(path: &Path) -> CliResult<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::usage(format!("{}: no such file", path.display())))
    }
}

fn load_graph(args: &GraphArgs) -> CliResult<Graph> {
    require_file(&args.graph)?;
    let options = LoadOptions {
        weighted: args.weighted,
        ..LoadOptions::default()
    };
    let g = load_edge_list(&args.graph, &options).map_err(|e| Failure::from_lib(e, Some(&args.graph)))?;
    log::info!("loaded {}: n = {}, m = {}", args.graph.display(), g.n(), g.m());
    Ok(g)
}

fn open_out(out: &OutArgs) -> CliResult<Box<dyn Write>> {
    match &out.out {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::data(format!("{}: {e}", p.display()))),
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(value: &T, out: &OutArgs) -> CliResult<()> {
    let mut w = open_out(out)?;
    serde_json::to_writer(&mut w, value).map_err(|e| Failure::data(e.to_string()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(io_failure)
}

fn io_failure(e: io::Error) -> Failure {
    Failure::data(format!("write failed: {e}"))
}

/// Reads a vertex set written either one id per line or as a JSON cluster.
fn read_vertex_set(path: &Path) -> CliResult<Vec<u64>> {
    require_file(path)?;
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        #[derive(serde::Deserialize)]
        struct Members {
            members: Vec<u64>,
        }
        let parsed: Members = serde_json::from_str(&text)
            .map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
        return Ok(parsed.members);
    }
    read_vertex_list(text.as_bytes()).map_err(|e| Failure::from_lib(e, Some(path)))
}

fn cluster_from_ids(g: &Graph, ids: &[u64], path: &Path) -> CliResult<Cluster> {
    ids.iter()
        .map(|&v| g.check_vertex(v))
        .collect::<localclust::Result<Vec<u32>>>()
        .and_then(|m| Cluster::from_set(g, &m))
        .map_err(|e| Failure::from_lib(e, Some(path)))
}

fn seed_ids(args: &SeedArgs) -> CliResult<Vec<u64>> {
    let mut ids: Vec<u64> = args.seed.iter().chain(&args.seeds).copied().collect();
    if let Some(path) = &args.seed_file {
        require_file(path)?;
        let file = File::open(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
        ids.extend(read_vertex_list(BufReader::new(file)).map_err(|e| Failure::from_lib(e, Some(path)))?);
    }
    if ids.is_empty() {
        return Err(Failure::usage("give at least one seed with --seed, --seeds or --seed-file"));
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn run_cluster(args: &ClusterArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let ids = seed_ids(&args.seeds)?;
    let seeds = lib(SeedSet::new(&g, &ids))?;
    let params = args.diffusion.params();
    let (cluster, embedding) = match args.method {
        ClusterMethod::Acl | ClusterMethod::L1reg => {
            let method = if args.method == ClusterMethod::Acl {
                SpectralMethod::Acl
            } else {
                SpectralMethod::L1Reg
            };
            let x = lib(localclust::diffusion::diffuse(&g, &seeds, &params, method))?;
            if x.is_empty() {
                return Err(Failure::data(
                    "the diffusion produced no mass; lower --eps or --rho",
                ));
            }
            (lib(localclust::sweep_cut(&g, &x))?, Some(x))
        }
        ClusterMethod::Nibble => {
            if seeds.len() != 1 {
                return Err(Failure::usage("nibble takes exactly one seed"));
            }
            let target = args
                .target_volume
                .ok_or_else(|| Failure::usage("nibble needs --target-volume"))?;
            (lib(pagerank_nibble(&g, seeds.as_slice()[0], target))?, None)
        }
        ClusterMethod::Crd => {
            let crd = CrdParams {
                capacity: args.capacity,
                height: args.height,
                growth: args.growth,
                initial_mass_multiplier: args.mass_multiplier,
                max_rounds: args.max_rounds,
                ..CrdParams::default()
            };
            let r = lib(crd_diffuse(&g, &seeds, &crd))?;
            log::info!("crd ran {} rounds", r.rounds.len());
            (r.cluster, Some(r.absorbed))
        }
    };
    if let Some(path) = &args.embedding {
        let x = embedding.ok_or_else(|| Failure::usage("nibble has no single embedding to write"))?;
        let mut w = create(path)?;
        lib(x.write_csv(&mut w))?;
        w.flush().map_err(io_failure)?;
    }
    log::info!(
        "cluster of {} vertices, conductance {}",
        cluster.len(),
        cluster.conductance()
    );
    match args.format {
        ClusterFormat::Json => write_json(&cluster, &args.out),
        ClusterFormat::Text => {
            let mut w = open_out(&args.out)?;
            lib(cluster.write_text(&mut w))?;
            w.flush().map_err(io_failure)
        }
    }
}

fn run_improve(args: &ImproveArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let ids = read_vertex_set(&args.cluster)?;
    let a = cluster_from_ids(&g, &ids, &args.cluster)?;
    let result = lib(match args.method {
        ImproveMethod::Mqi => mqi(&g, &a),
        ImproveMethod::Flowimprove => flow_improve(&g, &a),
        ImproveMethod::Simplelocal => simple_local(&g, &a, args.delta),
    })?;
    write_json(&result, &args.out)
}

fn run_ncp(args: &NcpArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let method: SpectralMethod = args.method.into();
    let mut spec = match method {
        SpectralMethod::Acl => NcpSpec::acl(),
        SpectralMethod::L1Reg => NcpSpec::l1reg(),
    };
    if !args.alphas.is_empty() {
        spec.alphas = args.alphas.clone();
    }
    if !args.epss.is_empty() {
        spec.epss = args.epss.clone();
    }
    if !args.rhos.is_empty() {
        spec.rhos = args.rhos.clone();
    }
    let max_size = args.max_size.unwrap_or((g.n() / 2).max(1));
    let config = NcpConfig {
        spec,
        bins: lib(SizeBins::log_spaced(max_size, args.bins))?,
        seeds_per_bin: args.seeds_per_bin,
        rng_seed: args.rng,
        threads: args.threads,
        degree_biased: args.degree_biased,
        all: args.all,
    };
    let records = lib(compute_ncp(&g, &config))?;
    let mut w = open_out(&args.out)?;
    lib(write_ncp_csv(&records, &mut w))?;
    w.flush().map_err(io_failure)
}

/// `vertex,class` lines (comma or whitespace separated), `#` comments.
fn read_labels(path: &Path) -> CliResult<BTreeMap<u32, Vec<u64>>> {
    require_file(path)?;
    let file = File::open(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
    let mut classes: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let bad = || Failure::data(format!("{}: line {}: expected `vertex,class`", path.display(), i + 1));
        if fields.len() != 2 {
            return Err(bad());
        }
        let vertex: u64 = fields[0].parse().map_err(|_| bad())?;
        let class: u32 = fields[1].parse().map_err(|_| bad())?;
        classes.entry(class).or_default().push(vertex);
    }
    Ok(classes)
}

fn run_predict(args: &PredictArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let raw = read_labels(&args.labels)?;
    let mut classes = BTreeMap::new();
    for (class, ids) in raw {
        let seeds = SeedSet::new(&g, &ids).map_err(|e| Failure::from_lib(e, Some(&args.labels)))?;
        classes.insert(class, seeds);
    }
    let assignment = lib(predict_labels(&g, &classes, &args.diffusion.params(), args.method.into()))?;
    log::info!("{} vertices unlabeled", assignment.unlabeled());
    let mut w = open_out(&args.out)?;
    lib(assignment.write_csv(&mut w))?;
    w.flush().map_err(io_failure)
}

fn run_eval(args: &EvalArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let found = cluster_from_ids(&g, &read_vertex_set(&args.found)?, &args.found)?;
    let target = cluster_from_ids(&g, &read_vertex_set(&args.target)?, &args.target)?;
    write_json(&evaluate_recovery(&g, &found, &target), &args.out)
}

fn write_graph(g: &Graph, out: &OutArgs) -> CliResult<()> {
    let w = open_out(out)?;
    lib(g.write_edge_list(w))
}

fn run_gen(args: &GenArgs) -> CliResult<()> {
    match &args.kind {
        GenKind::RingOfCliques { cliques, size, out } => {
            write_graph(&lib(ring_of_cliques(*cliques, *size))?, out)
        }
        GenKind::Planted {
            sizes,
            p_in,
            p_out,
            rng,
            blocks,
            out,
        } => {
            let pp = lib(planted_partition(sizes, *p_in, *p_out, *rng))?;
            if let Some(path) = blocks {
                let mut w = create(path)?;
                writeln!(w, "vertex,block").map_err(io_failure)?;
                for (v, b) in pp.blocks.iter().enumerate() {
                    writeln!(w, "{v},{b}").map_err(io_failure)?;
                }
                w.flush().map_err(io_failure)?;
            }
            write_graph(&pp.graph, out)
        }
        GenKind::Geometric {
            n,
            radius,
            rng,
            points,
            out,
        } => {
            let geo = lib(random_geometric(*n, *radius, *rng))?;
            if let Some(path) = points {
                let mut w = create(path)?;
                writeln!(w, "vertex,x,y").map_err(io_failure)?;
                for (v, (x, y)) in geo.points.iter().enumerate() {
                    writeln!(w, "{v},{x},{y}").map_err(io_failure)?;
                }
                w.flush().map_err(io_failure)?;
            }
            write_graph(&geo.graph, out)
        }
    }
}

#[derive(Debug, Serialize)]
struct Stats {
    n: usize,
    m: usize,
    weighted: bool,
    total_volume: f64,
    isolated: usize,
    min_degree: f64,
    max_degree: f64,
    mean_degree: f64,
    median_degree: f64,
}

fn run_stats(args: &StatsArgs) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let mut degrees = g.degrees().to_vec();
    degrees.sort_by(f64::total_cmp);
    let n = degrees.len();
    let median = if n % 2 == 1 {
        degrees[n / 2]
    } else {
        (degrees[n / 2 - 1] + degrees[n / 2]) / 2.0
    };
    let stats = Stats {
        n,
        m: g.m(),
        weighted: g.is_weighted(),
        total_volume: g.total_volume(),
        isolated: degrees.iter().filter(|&&d| d == 0.0).count(),
        min_degree: degrees[0],
        max_degree: degrees[n - 1],
        mean_degree: g.total_volume() / n as f64,
        median_degree: median,
    };
    write_json(&stats, &args.out)
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .try_init();
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code: 0 on success, 1 on usage errors, 2 on data errors.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    init_logging(cli.verbose);
    let result = match &cli.command {
        Command::Cluster(a) => run_cluster(a),
        Command::Improve(a) => run_improve(a),
        Command::Ncp(a) => run_ncp(a),
        Command::Predict(a) => run_predict(a),
        Command::Eval(a) => run_eval(a),
        Command::Gen(a) => run_gen(a),
        Command::Stats(a) => run_stats(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
