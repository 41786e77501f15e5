use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use layerconn::analysis::{
    classify_removal, enumerate_removals, parse_subset_list, AnalysisError, EnumerateOptions,
    RemovalReport,
};
use layerconn::consensus::{simulate, SimConfig, SimError, SimParams};
use layerconn::graph::{GraphError, LayeredGraph};
use layerconn::spectral::{lambda2_layered, SpectralError};
use layerconn::verify::{run_all, VerifyConfig};

/// Algebraic connectivity and node-removal analysis for layered
/// leader-follower graphs.
#[derive(Parser)]
#[command(name = "layerconn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a graph and print its path decomposition and overlap status.
    Check { file: PathBuf },
    /// Print λ₂ with the per-component contributions as JSON.
    Lambda2 { file: PathBuf },
    /// Classify the removal of a set of nodes.
    Classify {
        file: PathBuf,
        /// Comma-separated node ids; empty for no removal.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        remove: Vec<String>,
    },
    /// Classify every removal set up to a size, or those listed in a file.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        /// One removal set per line instead of all sets up to --max-k.
        #[arg(long)]
        subsets: Option<PathBuf>,
        /// Write the CSV table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Allow more than 2^20 subsets.
        #[arg(long)]
        allow_large: bool,
    },
    /// Run the formation consensus simulation.
    Simulate {
        file: PathBuf,
        /// Simulation parameters as JSON; defaults apply to omitted fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for trace.csv and summary.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the property suites.
    Verify {
        #[arg(long, default_value_t = 500)]
        seeds: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// An error with its exit code: 1 for bad input, 2 for numerical or
/// internal failures.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn invalid(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 1,
        error: error.into(),
    }
}

fn internal(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        invalid(e)
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Graph(g) => invalid(g),
            other => internal(other),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Graph(g) => invalid(g),
            AnalysisError::Spectral(s) => s.into(),
            e @ (AnalysisError::RemovalSizeTooLarge { .. }
            | AnalysisError::TooManySubsets(_)
            | AnalysisError::InvalidAlpha(_)) => invalid(e),
            e => internal(e),
        }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Config { .. } => invalid(e),
            SimError::Blowup { .. } => internal(e),
        }
    }
}

fn read(path: &Path, what: &str) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {what} `{}`", path.display()))
        .map_err(invalid)
}

fn load_graph(path: &Path) -> Result<LayeredGraph, Failure> {
    let text = read(path, "graph file")?;
    LayeredGraph::from_json(&text)
        .with_context(|| format!("invalid graph file `{}`", path.display()))
        .map_err(invalid)
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .with_context(|| format!("cannot write `{}`", path.display()))
        .map_err(internal)
}

fn check(file: &Path) -> Result<(), Failure> {
    let g = load_graph(file)?;
    let decomposition = g.validate_layered_path()?;
    println!(
        "layered path graph: {} nodes, {} layers",
        g.node_count(),
        g.layer_count()
    );
    for (i, paths) in decomposition.layers.iter().enumerate() {
        let shown: Vec<String> = paths.iter().map(|p| g.labels_of(p).join(" - ")).collect();
        println!("layer {}: {}", i + 1, shown.join(" | "));
    }
    let overlap = g.check_overlap_condition();
    if overlap.holds {
        println!("overlap condition: holds");
    } else {
        println!(
            "overlap condition: fails on {} edges",
            overlap.violations.len()
        );
        for v in &overlap.violations {
            println!(
                "  ({}, {}): only first {:?}, only second {:?}",
                v.edge.0, v.edge.1, v.first_minus_second, v.second_minus_first
            );
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file } => check(&file)?,
        Command::Lambda2 { file } => {
            let g = load_graph(&file)?;
            println!("{}", lambda2_layered(&g)?.to_json());
        }
        Command::Classify { file, remove } => {
            let g = load_graph(&file)?;
            let removed = g.ids(&remove)?;
            let report = classify_removal(&g, &removed)?;
            println!("{}", RemovalReport::CSV_HEADER);
            println!("{}", report.csv_row());
        }
        Command::Enumerate {
            file,
            max_k,
            subsets,
            out,
            jobs,
            allow_large,
        } => {
            let g = load_graph(&file)?;
            let list = match &subsets {
                Some(path) => Some(parse_subset_list(&g, &read(path, "subset file")?)?),
                None => None,
            };
            let opts = EnumerateOptions { allow_large, jobs };
            let table = enumerate_removals(&g, max_k, list.as_deref(), &opts)?;
            match out {
                Some(path) => write(&path, &table.to_csv())?,
                None => print!("{}", table.to_csv()),
            }
        }
        Command::Simulate { file, config, out } => {
            let g = load_graph(&file)?;
            let params = match &config {
                Some(path) => SimParams::from_json(&read(path, "config file")?)?,
                None => SimParams::default(),
            };
            let lambda2 = lambda2_layered(&g)?.lambda2;
            let trace = simulate(&SimConfig::new(g, params))?;
            fs::create_dir_all(&out)
                .with_context(|| format!("cannot create `{}`", out.display()))
                .map_err(internal)?;
            write(&out.join("trace.csv"), &trace.to_csv())?;
            let summary = trace.summary(lambda2).to_json();
            write(&out.join("summary.json"), &format!("{summary}\n"))?;
            println!("{summary}");
        }
        Command::Verify { seeds, jobs } => {
            let results = run_all(&VerifyConfig { seeds, jobs })?;
            let mut failed = 0;
            for r in &results {
                println!("{r}");
                for v in r.violations.iter().take(5) {
                    println!("  {v}");
                }
                failed += usize::from(!r.passed());
            }
            if failed > 0 {
                return Err(internal(anyhow!(
                    "{failed} of {} suites failed",
                    results.len()
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
