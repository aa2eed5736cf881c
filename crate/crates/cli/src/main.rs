use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};
use spatialgen::perturb::DeletionStrategy;
use spatialgen::{Grid, PointSet, RngStream, SpatialNetwork};
use spatialgen_cli::measures;
use spatialgen_cli::{
    run_experiment, worker_count, Artifact, ArtifactKind, CliError, CliResult, ExperimentConfig, GeneratorSpec,
    PerturbationSpec,
};

#[derive(Parser)]
#[command(name = "spatialgen", version, about = "Synthetic spatial data generation and sensitivity experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a grid, network or point set.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        args: GenArgs,
    },
    /// Perturb a grid or network file.
    Perturb {
        #[arg(value_enum)]
        kind: PerturbKind,
        #[command(flatten)]
        args: PerturbArgs,
    },
    /// Compute indicators for a file and write them as one wide CSV row.
    Measure {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        args: MeasureArgs,
    },
    /// Run a replicated factorial experiment from a JSON config.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Grid,
    Network,
    Points,
}

impl Kind {
    fn artifact(self) -> ArtifactKind {
        match self {
            Kind::Grid => ArtifactKind::Grid,
            Kind::Network => ArtifactKind::Network,
            Kind::Points => ArtifactKind::Points,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PerturbKind {
    Grid,
    Network,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Random,
    Targeted,
}

impl From<Strategy> for DeletionStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Random => DeletionStrategy::RandomUniform,
            Strategy::Targeted => DeletionStrategy::TargetedBetweennessDescending,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// Generator in kebab case, e.g. kernel-mixture, reaction-diffusion, random-planar.
    #[arg(long)]
    method: Option<String>,
    /// JSON generator spec; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    size: Option<usize>,
    /// Kernel centers.
    #[arg(long)]
    centers: Option<usize>,
    #[arg(long)]
    nodes: Option<usize>,
    /// Extra generator field as key=value; the value is parsed as JSON when possible.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PerturbArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: u64,
    /// Gaussian noise standard deviation (grid).
    #[arg(long)]
    noise: Option<f64>,
    /// Poisson intensity per cell (grid); requires --poisson-delta.
    #[arg(long, requires = "poisson_delta")]
    poisson_lambda: Option<f64>,
    #[arg(long, requires = "poisson_lambda")]
    poisson_delta: Option<f64>,
    /// Nodes to delete (network).
    #[arg(long)]
    delete_nodes: Option<usize>,
    /// Links to delete (network).
    #[arg(long)]
    delete_links: Option<usize>,
    #[arg(long, value_enum, default_value = "random")]
    strategy: Strategy,
    /// Node coordinate jitter standard deviation (network).
    #[arg(long)]
    jitter: Option<f64>,
}

#[derive(Args)]
struct MeasureArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Ripley K radii (points).
    #[arg(long, value_delimiter = ',')]
    radii: Vec<f64>,
    /// Add gravity-demand equilibrium indicators (network).
    #[arg(long)]
    congestion: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    replications: Option<u64>,
    #[arg(long, visible_alias = "seed")]
    base_seed: Option<u64>,
    /// Worker threads; defaults to SPATIALGEN_JOBS or the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Runtime(e.into()))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Runtime(e.into()))
}

fn camel_case(kebab: &str) -> String {
    let mut out = String::new();
    let mut upper = false;
    for c in kebab.chars() {
        if c == '-' || c == '_' {
            upper = true;
        } else if upper {
            out.extend(c.to_uppercase());
            upper = false;
        } else {
            out.push(c);
        }
    }
    out
}

fn generator_spec(kind: Kind, args: &GenArgs) -> CliResult<GeneratorSpec> {
    let mut doc = match &args.config {
        Some(path) => match serde_json::from_str::<Value>(&read_text(path)?) {
            Ok(Value::Object(m)) => m,
            Ok(_) => return Err(CliError::config("generator config must be a JSON object")),
            Err(e) => return Err(CliError::config(format!("invalid generator config: {e}"))),
        },
        None => Map::new(),
    };
    match &args.method {
        Some(m) => {
            doc.insert("type".into(), Value::String(camel_case(m)));
        }
        None if !doc.contains_key("type") => return Err(CliError::config("--method or a config with a type is required")),
        None => {}
    }
    let mut set = |key: &str, v: Option<usize>| {
        if let Some(v) = v {
            doc.insert(key.into(), Value::from(v));
        }
    };
    set("size", args.size);
    set("nCenters", args.centers);
    set("nodes", args.nodes);
    for p in &args.params {
        let (key, raw) = p.split_once('=').ok_or_else(|| CliError::config(format!("--param {p}: expected KEY=VALUE")))?;
        let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
        doc.insert(camel_case(key), value);
    }
    let spec: GeneratorSpec =
        serde_json::from_value(Value::Object(doc)).map_err(|e| CliError::config(format!("generator spec: {e}")))?;
    if spec.kind() != kind.artifact() {
        return Err(CliError::config(format!("this method makes a {}, not a {}", spec.kind().name(), kind.artifact().name())));
    }
    Ok(spec)
}

fn write_artifact(artifact: &Artifact, out: &Path) -> CliResult<()> {
    match artifact {
        Artifact::Grid(g) => g.write_csv(out)?,
        Artifact::Network(n) => write_text(out, &n.to_json_string()?)?,
        Artifact::Points(p) => p.write_csv(out)?,
    }
    Ok(())
}

fn gen(kind: Kind, args: GenArgs) -> CliResult<()> {
    let spec = generator_spec(kind, &args)?;
    let artifact = spec.generate(&mut RngStream::new(args.seed).substream(0))?;
    write_artifact(&artifact, &args.out)
}

fn perturb(kind: PerturbKind, args: PerturbArgs) -> CliResult<()> {
    let mut steps = Vec::new();
    let (artifact, expected) = match kind {
        PerturbKind::Grid => {
            if args.delete_nodes.is_some() || args.delete_links.is_some() || args.jitter.is_some() {
                return Err(CliError::config("node, link and jitter perturbations apply to networks"));
            }
            if let Some(sigma) = args.noise {
                steps.push(PerturbationSpec::GridNoise { sigma });
            }
            if let (Some(lambda), Some(delta)) = (args.poisson_lambda, args.poisson_delta) {
                steps.push(PerturbationSpec::GridPoisson { lambda, delta });
            }
            (Artifact::Grid(Grid::read_csv(&args.input)?), ArtifactKind::Grid)
        }
        PerturbKind::Network => {
            if args.noise.is_some() || args.poisson_lambda.is_some() {
                return Err(CliError::config("noise and Poisson perturbations apply to grids"));
            }
            let strategy = args.strategy.into();
            if let Some(count) = args.delete_nodes {
                steps.push(PerturbationSpec::DeleteNodes { count, strategy });
            }
            if let Some(count) = args.delete_links {
                steps.push(PerturbationSpec::DeleteLinks { count, strategy });
            }
            if let Some(sigma) = args.jitter {
                steps.push(PerturbationSpec::Jitter { sigma });
            }
            (Artifact::Network(SpatialNetwork::read_json(&args.input)?), ArtifactKind::Network)
        }
    };
    if steps.is_empty() {
        return Err(CliError::config(format!("no perturbation requested for the {}", expected.name())));
    }
    let root = RngStream::new(args.seed);
    let mut artifact = artifact;
    for (i, step) in steps.iter().enumerate() {
        artifact = step.apply(artifact, &mut root.substream(1 + i as u64))?;
    }
    write_artifact(&artifact, &args.out)
}

fn measure(kind: Kind, args: MeasureArgs) -> CliResult<()> {
    let record = match kind {
        Kind::Grid => measures::grid_record(&Grid::read_csv(&args.input)?),
        Kind::Network => measures::network_record(&SpatialNetwork::read_json(&args.input)?, args.congestion)?,
        Kind::Points => measures::point_record(&PointSet::read_csv(&args.input)?, &args.radii)?,
    };
    write_text(&args.out, &record.to_wide_csv())
}

fn experiment(args: ExperimentArgs) -> CliResult<()> {
    let mut config = ExperimentConfig::from_json(&read_text(&args.config)?)?;
    if let Some(r) = args.replications {
        config.replications = r;
    }
    if let Some(s) = args.base_seed {
        config.base_seed = s;
    }
    let workers = args.jobs.unwrap_or_else(worker_count);
    let table = run_experiment(&config, workers)?;
    write_text(&args.out, &table.to_csv())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Gen { kind, args } => gen(kind, args),
        Command::Perturb { kind, args } => perturb(kind, args),
        Command::Measure { kind, args } => measure(kind, args),
        Command::Experiment(args) => experiment(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
