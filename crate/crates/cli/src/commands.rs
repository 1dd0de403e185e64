//! `pcsample` subcommands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pcsample_core::metrics::compare_on;
use pcsample_core::sampler::{sample_with, Execution};
use pcsample_core::synth::{gen_scanning_lidar, gen_sparse_dense, gen_stepper_lidar, RangeProfile};
use pcsample_core::{Axis, Method, PointCloud, SamplerSpec, SeedPolicy};
use serde::Serialize;

use crate::bench::{parse_usize_list, run_bench, write_csv, BenchConfig, Generator, InputOrder, Sweep};
use crate::io::{read_cloud, write_cloud, Format};
use crate::report::{write_report_csv, write_report_json};

#[derive(Debug, Parser)]
#[command(name = "pcsample", version, about = "Point cloud subsampling toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a cloud file and write the selected indices.
    Sample(SampleArgs),
    /// Generate a synthetic cloud.
    Gen(GenArgs),
    /// Run a parameter sweep and write one CSV row per trial.
    Bench(BenchArgs),
    /// Compare several samplers on one cloud.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FirstPoint {
    Random,
    Fixed,
}

impl From<FirstPoint> for SeedPolicy {
    fn from(f: FirstPoint) -> Self {
        match f {
            FirstPoint::Random => SeedPolicy::RandomFirstPoint,
            FirstPoint::Fixed => SeedPolicy::FixedFirstPoint,
        }
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// xyz or bin; inferred from the extension when omitted.
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub method: Method,
    #[arg(long)]
    pub c: usize,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    #[arg(long, default_value_t = 40)]
    pub g: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FirstPoint::Random)]
    pub first: FirstPoint,
    /// Index list, one per line, in sampling order.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the stats line to this file.
    #[arg(long)]
    pub stats_json: Option<PathBuf>,
    #[arg(long, env = "PCSAMPLE_THREADS", default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Reordering applied after generation: raw, exact, bin:<size> or shuffle.
    #[arg(long, global = true, default_value = "raw")]
    pub sort: InputOrder,
    #[arg(long, global = true, default_value = "x")]
    pub axis: Axis,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Spinning multi-beam LiDAR sweep.
    Scan {
        #[arg(long, default_value_t = 2048)]
        n: usize,
        #[arg(long, default_value_t = 360.0)]
        fov: f64,
        #[arg(long, default_value_t = 0.01)]
        jitter: f64,
    },
    /// Vertically stepped 2D LiDAR.
    Stepper {
        #[arg(long, default_value_t = 64)]
        layers: usize,
        #[arg(long, default_value_t = 32)]
        ppl: usize,
        #[arg(long, default_value_t = 0.05)]
        z_step: f64,
    },
    /// Tight clusters plus a sparse uniform background.
    SparseDense {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        clusters: usize,
        #[arg(long, default_value_t = 0.05)]
        sparse: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    Scan,
    Stepper,
    SparseDense,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub sweep: Sweep,
    #[arg(long, value_delimiter = ',', default_value = "fps,npdu-afps")]
    pub method: Vec<Method>,
    /// Point counts: `a,b,c` or doubling range `lo..hi`.
    #[arg(long, default_value = "2048")]
    pub n: String,
    #[arg(long, default_value_t = 512)]
    pub c: usize,
    #[arg(long, default_value = "32")]
    pub m: String,
    #[arg(long, default_value = "16")]
    pub k: String,
    #[arg(long, default_value_t = 40)]
    pub g: usize,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, env = "PCSAMPLE_THREADS", default_value_t = 1)]
    pub threads: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FirstPoint::Random)]
    pub first: FirstPoint,
    #[arg(long, value_enum, default_value_t = GeneratorKind::Scan)]
    pub generator: GeneratorKind,
    #[arg(long, default_value_t = 360.0)]
    pub fov: f64,
    #[arg(long, default_value_t = 0.01)]
    pub jitter: f64,
    #[arg(long, default_value_t = 0.05)]
    pub z_step: f64,
    #[arg(long, default_value_t = 5)]
    pub clusters: usize,
    #[arg(long, default_value_t = 0.05)]
    pub sparse: f64,
    /// Orderings applied to every generated input.
    #[arg(long, value_delimiter = ',', default_value = "raw")]
    pub inputs: Vec<InputOrder>,
    #[arg(long, default_value = "x")]
    pub axis: Axis,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long, value_delimiter = ',', default_value = "rps,fps,grid,npdu-afps")]
    pub methods: Vec<Method>,
    #[arg(long)]
    pub c: usize,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    #[arg(long, default_value_t = 40)]
    pub g: usize,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FirstPoint::Random)]
    pub first: FirstPoint,
    #[arg(long, default_value = "x")]
    pub axis: Axis,
    #[arg(long, env = "PCSAMPLE_THREADS", default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    #[arg(long)]
    pub out_json: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Runtime(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

/// Stats line printed by `sample`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct StatsLine {
    pub dist_evals: u64,
    pub dist_writes: u64,
    pub argmax_scans: u64,
    pub iterations: u64,
    pub wall_seconds: f64,
}

fn format_for(path: &Path, explicit: Option<Format>) -> Format {
    explicit.unwrap_or_else(|| Format::from_path(path))
}

fn pool(threads: usize) -> anyhow::Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .context("building thread pool")
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Sample(args) => cmd_sample(args, stdout),
        Command::Gen(args) => cmd_gen(args, stdout),
        Command::Bench(args) => cmd_bench(args, stdout),
        Command::Compare(args) => cmd_compare(args, stdout),
    }
}

pub fn cmd_sample(args: SampleArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cloud = read_cloud(&args.input, format_for(&args.input, args.format)).map_err(anyhow::Error::from)?;
    let spec = SamplerSpec {
        method: args.method,
        c: args.c,
        m: args.m,
        k: args.k,
        g: args.g,
        seed: args.seed,
        seed_policy: args.first.into(),
    };
    let exec = if args.threads > 1 {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    let pool = pool(args.threads)?;
    let (result, wall) = pool.install(|| {
        let start = Instant::now();
        let r = sample_with(&cloud, &spec, exec);
        (r, start.elapsed().as_secs_f64())
    });
    let result = result.map_err(|e| anyhow!("{} sampling failed: {e}", args.method))?;

    if let Some(out) = &args.out {
        let mut text = String::with_capacity(result.indices.len() * 6);
        for i in &result.indices {
            text.push_str(&i.to_string());
            text.push('\n');
        }
        fs::write(out, text).with_context(|| format!("writing {}", out.display()))?;
    }
    let line = serde_json::to_string(&StatsLine {
        dist_evals: result.stats.dist_evals,
        dist_writes: result.stats.dist_writes,
        argmax_scans: result.stats.argmax_scans,
        iterations: result.stats.iterations,
        wall_seconds: wall,
    })
    .map_err(anyhow::Error::from)?;
    writeln!(stdout, "{line}").map_err(anyhow::Error::from)?;
    if let Some(path) = &args.stats_json {
        fs::write(path, format!("{line}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

pub fn cmd_gen(args: GenArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let seed = args.seed;
    let cloud: PointCloud = match args.kind {
        GenKind::Scan { n, fov, jitter } => {
            gen_scanning_lidar(n, fov, &RangeProfile::outdoor(seed), jitter, seed)
        }
        GenKind::Stepper {
            layers,
            ppl,
            z_step,
        } => gen_stepper_lidar(layers, ppl, z_step, seed),
        GenKind::SparseDense {
            n,
            clusters,
            sparse,
        } => gen_sparse_dense(n, clusters, sparse, seed),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let cloud = args
        .sort
        .apply(cloud, args.axis, pcsample_core::rng::derive_seed(seed, 1))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    match &args.out {
        Some(path) => {
            write_cloud(&cloud, path, format_for(path, args.format)).map_err(anyhow::Error::from)?
        }
        None => {
            if args.format == Some(Format::F32Bin) {
                return Err(CliError::Usage("binary output needs --out".into()));
            }
            for p in cloud.points() {
                writeln!(stdout, "{} {} {}", p[0], p[1], p[2]).map_err(anyhow::Error::from)?;
            }
        }
    }
    Ok(())
}

pub fn bench_config(args: &BenchArgs) -> Result<BenchConfig, CliError> {
    let generator = match args.generator {
        GeneratorKind::Scan => Generator::Scan {
            fov_deg: args.fov,
            jitter: args.jitter,
        },
        GeneratorKind::Stepper => Generator::Stepper {
            z_step: args.z_step,
        },
        GeneratorKind::SparseDense => Generator::SparseDense {
            clusters: args.clusters,
            sparse_fraction: args.sparse,
        },
    };
    let cfg = BenchConfig {
        sweep: args.sweep,
        methods: args.method.clone(),
        ns: parse_usize_list(&args.n).map_err(CliError::Usage)?,
        c: args.c,
        ms: parse_usize_list(&args.m).map_err(CliError::Usage)?,
        ks: parse_usize_list(&args.k).map_err(CliError::Usage)?,
        g: args.g,
        trials: args.trials,
        threads: args.threads,
        seed: args.seed,
        first: args.first.into(),
        generator,
        inputs: args.inputs.clone(),
        axis: args.axis,
    };
    cfg.check().map_err(CliError::Usage)?;
    Ok(cfg)
}

pub fn cmd_bench(args: BenchArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = bench_config(&args)?;
    let rows = run_bench(&cfg).map_err(|e| anyhow!(e))?;
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&rows, file).map_err(anyhow::Error::from)?;
        }
        None => write_csv(&rows, stdout).map_err(anyhow::Error::from)?,
    }
    Ok(())
}

pub fn cmd_compare(args: CompareArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cloud = read_cloud(&args.input, format_for(&args.input, args.format)).map_err(anyhow::Error::from)?;
    let specs: Vec<SamplerSpec> = args
        .methods
        .iter()
        .map(|&method| SamplerSpec {
            method,
            c: args.c,
            m: args.m,
            k: args.k,
            g: args.g,
            seed: args.seed,
            seed_policy: args.first.into(),
        })
        .collect();
    let parallel = args.threads > 1;
    let report = pool(args.threads)?
        .install(|| compare_on(&cloud, &specs, args.trials, args.seed, args.axis, parallel))
        .map_err(anyhow::Error::from)?;

    if let Some(path) = &args.out_json {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_report_json(&report, file).map_err(anyhow::Error::from)?;
    }
    match &args.out_csv {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_report_csv(&report, file).map_err(anyhow::Error::from)?;
        }
        None if args.out_json.is_none() => {
            write_report_csv(&report, stdout).map_err(anyhow::Error::from)?
        }
        None => {}
    }
    Ok(())
}
