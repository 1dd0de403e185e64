//! Parameter-sweep benchmark harness.
//!
//! A run expands into jobs keyed by `(configuration, trial)`. Jobs may execute
//! on any number of threads; rows are always emitted in key order, and every
//! column except `wall_seconds` and `threads` depends only on the
//! configuration and seeds.
//!
//! Trial `t` generates its input from `derive_seed(seed, t)`, so all methods
//! and parameter values in a trial see the same cloud, and hands the sampler
//! the seed `derive_seed(seed ^ SAMPLER_STREAM, t)`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use pcsample_core::rng::derive_seed;
use pcsample_core::synth::{gen_scanning_lidar, gen_sparse_dense, gen_stepper_lidar, RangeProfile};
use pcsample_core::{
    bin_approx_sort, coverage_radius, exact_sort, locality_score, sample, separation, shuffle,
    Axis, CloudError, Method, PointCloud, SamplerSpec, SeedPolicy,
};
use rayon::prelude::*;
use serde::Serialize;

const SAMPLER_STREAM: u64 = 0x5A4D_504C_4552;
const ORDER_STREAM: u64 = 0x4F52_4445_5200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    M,
    K,
    N,
    Mk,
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "m" => Ok(Sweep::M),
            "k" => Ok(Sweep::K),
            "n" => Ok(Sweep::N),
            "mk" | "km" => Ok(Sweep::Mk),
            other => Err(format!("unknown sweep `{other}` (expected m, k, n or mk)")),
        }
    }
}

/// Storage order applied to each generated input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputOrder {
    /// As produced by the generator.
    Raw,
    Exact,
    Bin(usize),
    Shuffle,
}

impl FromStr for InputOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "raw" | "none" => Ok(InputOrder::Raw),
            "exact" => Ok(InputOrder::Exact),
            "shuffle" => Ok(InputOrder::Shuffle),
            _ => match s.strip_prefix("bin:").map(str::parse) {
                Some(Ok(b)) if b >= 1 => Ok(InputOrder::Bin(b)),
                _ => Err(format!(
                    "unknown ordering `{s}` (expected raw, exact, bin:<size> or shuffle)"
                )),
            },
        }
    }
}

impl fmt::Display for InputOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputOrder::Raw => f.write_str("raw"),
            InputOrder::Exact => f.write_str("exact"),
            InputOrder::Bin(b) => write!(f, "bin:{b}"),
            InputOrder::Shuffle => f.write_str("shuffle"),
        }
    }
}

impl InputOrder {
    pub fn apply(self, cloud: PointCloud, axis: Axis, seed: u64) -> Result<PointCloud, CloudError> {
        match self {
            InputOrder::Raw => Ok(cloud),
            InputOrder::Exact => Ok(exact_sort(&cloud, axis)),
            InputOrder::Bin(b) => bin_approx_sort(&cloud, axis, b.min(cloud.len()), seed),
            InputOrder::Shuffle => Ok(shuffle(&cloud, seed)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Scan { fov_deg: f64, jitter: f64 },
    /// Layers of 32 points; the cloud is truncated to `n`.
    Stepper { z_step: f64 },
    SparseDense { clusters: usize, sparse_fraction: f64 },
}

pub const STEPPER_LAYER_POINTS: usize = 32;

impl Generator {
    pub fn generate(&self, n: usize, seed: u64) -> Result<PointCloud, CloudError> {
        match *self {
            Generator::Scan { fov_deg, jitter } => {
                gen_scanning_lidar(n, fov_deg, &RangeProfile::outdoor(seed), jitter, seed)
            }
            Generator::Stepper { z_step } => {
                let layers = n.div_ceil(STEPPER_LAYER_POINTS).max(1);
                let cloud = gen_stepper_lidar(layers, STEPPER_LAYER_POINTS, z_step, seed)?;
                let order = cloud.order();
                let mut pts = cloud.into_points();
                pts.truncate(n);
                PointCloud::new(pts, order)
            }
            Generator::SparseDense {
                clusters,
                sparse_fraction,
            } => gen_sparse_dense(n, clusters, sparse_fraction, seed),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sweep: Sweep,
    pub methods: Vec<Method>,
    pub ns: Vec<usize>,
    pub c: usize,
    pub ms: Vec<usize>,
    pub ks: Vec<usize>,
    pub g: usize,
    pub trials: usize,
    pub threads: usize,
    pub seed: u64,
    pub first: SeedPolicy,
    pub generator: Generator,
    pub inputs: Vec<InputOrder>,
    pub axis: Axis,
}

impl BenchConfig {
    /// Only swept parameters may take more than one value.
    pub fn check(&self) -> Result<(), String> {
        let swept = |name: &str, len: usize, allowed: bool| -> Result<(), String> {
            if len == 0 {
                return Err(format!("--{name} needs at least one value"));
            }
            if len > 1 && !allowed {
                return Err(format!("--{name} has several values but is not swept"));
            }
            Ok(())
        };
        swept("n", self.ns.len(), self.sweep == Sweep::N)?;
        swept("m", self.ms.len(), matches!(self.sweep, Sweep::M | Sweep::Mk))?;
        swept("k", self.ks.len(), matches!(self.sweep, Sweep::K | Sweep::Mk))?;
        if self.methods.is_empty() {
            return Err("--method needs at least one value".into());
        }
        if self.inputs.is_empty() {
            return Err("--inputs needs at least one value".into());
        }
        if self.trials == 0 {
            return Err("--trials must be at least 1".into());
        }
        Ok(())
    }
}

/// One CSV row. Parameters a method does not use are left empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub method: Method,
    pub input: String,
    pub n: usize,
    pub c: usize,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub g: Option<usize>,
    pub seed: u64,
    pub trial: usize,
    pub threads: usize,
    pub wall_seconds: Option<f64>,
    pub dist_evals: Option<u64>,
    pub coverage_radius: Option<f64>,
    pub separation: Option<f64>,
    pub locality_score: Option<f64>,
    pub error: Option<String>,
}

pub const TIMING_COLUMNS: [&str; 2] = ["wall_seconds", "threads"];

#[derive(Debug, Clone)]
struct Job {
    method: Method,
    input: InputOrder,
    n: usize,
    m: Option<usize>,
    k: Option<usize>,
    trial: usize,
}

fn jobs(cfg: &BenchConfig) -> Vec<Job> {
    let mut out = Vec::new();
    for &n in &cfg.ns {
        for &input in &cfg.inputs {
            for &method in &cfg.methods {
                let ms: Vec<Option<usize>> = if method.uses_sectors() {
                    cfg.ms.iter().copied().map(Some).collect()
                } else {
                    vec![None]
                };
                let ks: Vec<Option<usize>> = if method.uses_window() {
                    cfg.ks.iter().copied().map(Some).collect()
                } else {
                    vec![None]
                };
                for &m in &ms {
                    for &k in &ks {
                        for trial in 0..cfg.trials {
                            out.push(Job {
                                method,
                                input,
                                n,
                                m,
                                k,
                                trial,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn run_job(cfg: &BenchConfig, job: &Job) -> BenchRow {
    let t = job.trial as u64;
    let sampler_seed = derive_seed(cfg.seed ^ SAMPLER_STREAM, t);
    let mut row = BenchRow {
        method: job.method,
        input: job.input.to_string(),
        n: job.n,
        c: cfg.c,
        m: job.m,
        k: job.k,
        g: (job.method == Method::GridVoxel).then_some(cfg.g),
        seed: sampler_seed,
        trial: job.trial,
        threads: cfg.threads,
        wall_seconds: None,
        dist_evals: None,
        coverage_radius: None,
        separation: None,
        locality_score: None,
        error: None,
    };
    let cloud = match cfg
        .generator
        .generate(job.n, derive_seed(cfg.seed, t))
        .and_then(|c| job.input.apply(c, cfg.axis, derive_seed(cfg.seed ^ ORDER_STREAM, t)))
    {
        Ok(c) => c,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.locality_score = locality_score(&cloud, cfg.axis).ok();

    let spec = SamplerSpec {
        method: job.method,
        c: cfg.c,
        m: job.m.unwrap_or(1),
        k: job.k.unwrap_or(1),
        g: cfg.g,
        seed: sampler_seed,
        seed_policy: cfg.first,
    };
    let start = Instant::now();
    let result = sample(&cloud, &spec);
    let wall = start.elapsed().as_secs_f64();
    match result {
        Ok(res) => {
            row.wall_seconds = Some(wall);
            row.dist_evals = Some(res.stats.dist_evals);
            row.coverage_radius = coverage_radius(&cloud, &res.indices).ok();
            row.separation = separation(&cloud, &res.indices).ok();
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Runs every job on a pool of `cfg.threads` workers and returns rows in
/// `(n, input, method, m, k, trial)` order.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, String> {
    cfg.check()?;
    let jobs = jobs(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    Ok(pool.install(|| jobs.par_iter().map(|j| run_job(cfg, j)).collect()))
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(BENCH_HEADER)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub const BENCH_HEADER: [&str; 16] = [
    "method",
    "input",
    "n",
    "c",
    "m",
    "k",
    "g",
    "seed",
    "trial",
    "threads",
    "wall_seconds",
    "dist_evals",
    "coverage_radius",
    "separation",
    "locality_score",
    "error",
];

/// Parses `a,b,c` or a doubling range `lo..hi` (`2048..32768` gives
/// 2048, 4096, ..., 32768).
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("invalid list `{s}` (expected `a,b,c` or `lo..hi`)");
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo == 0 || hi < lo {
            return Err(bad());
        }
        let mut v = Vec::new();
        let mut x = lo;
        while x <= hi {
            v.push(x);
            x *= 2;
        }
        return Ok(v);
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
        .collect()
}
