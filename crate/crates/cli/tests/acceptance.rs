//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p pcsample-cli --test acceptance`.

use std::ops::Range;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use pcsample_cli::bench::TIMING_COLUMNS;
use pcsample_core::rng::{derive_seed, rng_from_seed, Rng};
use pcsample_core::sampler::oracle::oracle_fps;
use pcsample_core::sampler::{run_probed, TrackProbe};
use pcsample_core::synth::{gen_scanning_lidar, gen_sparse_dense, RangeProfile};
use pcsample_core::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::Rng as _;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("reduction identities", reduction_identities),
        ("op-count formulas", op_counts),
        ("wall-clock scaling", wall_clock_scaling),
        ("sorted-input quality trend", sorted_quality_trend),
        ("sparse-region ordering", sparse_region_ordering),
        ("parallel determinism", parallel_determinism),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&e))));
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{}] {name} ({secs:.1} s): {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_cloud(rng: &mut Rng, n: usize) -> PointCloud {
    let pts = (0..n)
        .map(|_| {
            [
                rng.random_range(-50.0..50.0),
                rng.random_range(-50.0..50.0),
                rng.random_range(-50.0..50.0),
            ]
        })
        .collect();
    PointCloud::unsorted(pts).unwrap()
}

/// Small integer lattice, so many points share coordinates and distances tie.
fn lattice_cloud(rng: &mut Rng, n: usize) -> PointCloud {
    let pts = (0..n)
        .map(|_| {
            [
                f64::from(rng.random_range(0..4u8)),
                f64::from(rng.random_range(0..4u8)),
                f64::from(rng.random_range(0..4u8)),
            ]
        })
        .collect();
    PointCloud::unsorted(pts).unwrap()
}

fn scan_2048(seed: u64) -> PointCloud {
    gen_scanning_lidar(2048, 360.0, &RangeProfile::outdoor(seed), 0.01, seed).unwrap()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn cov(cloud: &PointCloud, res: &SampleResult) -> f64 {
    coverage_radius(cloud, &res.indices).unwrap()
}

const ORACLE_CLOUDS: usize = 100;
const ORACLE_BUDGET: Duration = Duration::from_secs(30);

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(0x0AC1E);
    let mut runs = 0;
    let mut mismatches = Vec::new();
    for no in 0..ORACLE_CLOUDS {
        // the first fifth are small enough to try every first index
        let n = if no < ORACLE_CLOUDS / 5 {
            rng.random_range(4..=16)
        } else {
            rng.random_range(17..=512)
        };
        let cloud = random_cloud(&mut rng, n);
        let c = rng.random_range(1..=n.min(128));
        let mut seeds = Vec::new();
        if n <= 16 {
            // find a seed whose random first point is each index in turn
            for first in 0..n {
                let seed = (0u64..)
                    .find(|&s| {
                        fps(&cloud, 1, SeedPolicy::RandomFirstPoint, s).unwrap().indices[0] == first
                    })
                    .unwrap();
                seeds.push(seed);
            }
        } else {
            seeds.push(rng.random());
        }
        for seed in seeds {
            let got = fps(&cloud, c, SeedPolicy::RandomFirstPoint, seed).unwrap().indices;
            if Some(&got) != oracle_fps(cloud.points(), c, got[0]).as_ref() {
                mismatches.push(format!("cloud {no} (n={n}, c={c}, first={})", got[0]));
            }
            runs += 1;
        }
        let fixed = fps(&cloud, c, SeedPolicy::FixedFirstPoint, 0).unwrap().indices;
        if Some(&fixed) != oracle_fps(cloud.points(), c, 0).as_ref() {
            mismatches.push(format!("cloud {no} (n={n}, c={c}, fixed first point)"));
        }
        runs += 1;
    }
    let elapsed = start.elapsed();
    verdict(
        mismatches.is_empty() && elapsed < ORACLE_BUDGET,
        format!(
            "{runs} runs on {ORACLE_CLOUDS} clouds, {} mismatches{}, {:.1} s of {} s budget",
            mismatches.len(),
            mismatches.first().map(|m| format!(" (first: {m})")).unwrap_or_default(),
            elapsed.as_secs_f64(),
            ORACLE_BUDGET.as_secs()
        ),
    )
}

/// Random feasible (n, c, m) with a cloud; some clouds are tie-heavy lattices.
fn random_config(rng: &mut Rng) -> (PointCloud, usize, usize) {
    loop {
        let n = rng.random_range(8..=400);
        let c = rng.random_range(1..=n);
        let m = rng.random_range(1..=c);
        if SectorPlan::new(n, m, c).is_ok() {
            let cloud = if rng.random_bool(0.3) {
                lattice_cloud(rng, n)
            } else {
                random_cloud(rng, n)
            };
            return (cloud, c, m);
        }
    }
}

const IDENTITY_CONFIGS: usize = 60;

fn reduction_identities() -> Outcome {
    let mut rng = rng_from_seed(0x1DE47);
    let mut failures = Vec::new();
    for no in 0..IDENTITY_CONFIGS {
        let (cloud, c, m) = random_config(&mut rng);
        let n = cloud.len();
        let k = rng.random_range(1..=32);
        let seed: u64 = rng.random();
        let policy = if rng.random_bool(0.5) {
            SeedPolicy::RandomFirstPoint
        } else {
            SeedPolicy::FixedFirstPoint
        };
        let idx = |r: Result<SampleResult, SampleError>| r.unwrap().indices;

        let fps_idx = idx(fps(&cloud, c, policy, seed));
        if idx(afps(&cloud, c, 1, policy, seed)) != fps_idx {
            failures.push(format!("#{no} afps(m=1) != fps"));
        }
        if idx(npdu_afps(&cloud, c, 1, k, policy, seed)) != idx(npdu_fps(&cloud, c, k, policy, seed)) {
            failures.push(format!("#{no} npdu_afps(m=1) != npdu_fps"));
        }
        let wide = 2 * n + rng.random_range(0..4);
        if idx(npdu_fps(&cloud, c, wide, policy, seed)) != fps_idx {
            failures.push(format!("#{no} npdu_fps(k={wide}) != fps"));
        }
        let max_sector = SectorPlan::new(n, m, c).unwrap().max_sector_len();
        let wide = 2 * max_sector + rng.random_range(0..4);
        if idx(npdu_afps(&cloud, c, m, wide, policy, seed)) != idx(afps(&cloud, c, m, policy, seed)) {
            failures.push(format!("#{no} npdu_afps(m={m}, k={wide}) != afps"));
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "{IDENTITY_CONFIGS} configurations x 4 identities, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(" ({f})")).unwrap_or_default()
        ),
    )
}

/// Sector `s` of `n` points split `m` ways.
fn sector(n: usize, m: usize, s: usize) -> Range<usize> {
    let (base, extra) = (n / m, n % m);
    let start = s * base + s.min(extra);
    start..start + base + usize::from(s < extra)
}

fn quota(c: usize, m: usize, s: usize) -> usize {
    c / m + usize::from(s < c % m)
}

fn clamped_window(r: &Range<usize>, i: usize, k: usize) -> Range<usize> {
    i.saturating_sub(k / 2).max(r.start)..(i + k.div_ceil(2)).min(r.end)
}

/// Expected NPDU evaluation count from the picks, plus whether any window was
/// clamped.
fn npdu_expected(res: &SampleResult, n: usize, m: usize, k: usize) -> (u64, bool) {
    let mut evals = 0u64;
    let mut clamped = false;
    for s in 0..m {
        let r = sector(n, m, s);
        let picks: Vec<usize> = res
            .indices
            .iter()
            .zip(&res.sector_of)
            .filter(|&(_, &sec)| sec == s)
            .map(|(&i, _)| i)
            .collect();
        for &i in &picks[..picks.len().saturating_sub(1)] {
            let w = clamped_window(&r, i, k);
            clamped |= w.len() != k;
            evals += w.len() as u64;
        }
    }
    (evals, clamped)
}

const OP_COUNT_CONFIGS: usize = 60;

fn op_counts() -> Outcome {
    let mut problems = Vec::new();

    let cloud = bin_approx_sort(&scan_2048(7), Axis::X, 128, 7).unwrap();
    let policy = SeedPolicy::RandomFirstPoint;
    let f = fps(&cloud, 512, policy, 1).unwrap().stats.dist_evals;
    let a = afps(&cloud, 512, 32, policy, 1).unwrap().stats.dist_evals;
    let np = npdu_afps(&cloud, 512, 32, 16, policy, 1).unwrap().stats.dist_evals;
    let afps_factor = f as f64 / a as f64;
    let npdu_factor = f as f64 / np as f64;
    if f != 1_046_528 {
        problems.push(format!("fps evals {f} != 1046528"));
    }
    if a != 30_720 {
        problems.push(format!("afps evals {a} != 30720"));
    }
    if np > 7_680 {
        problems.push(format!("npdu-afps evals {np} > 7680"));
    }
    if (afps_factor * 10.0).round() != 341.0 {
        problems.push(format!("afps reduction {afps_factor:.2}x is not 34.1x"));
    }
    if npdu_factor < 136.0 {
        problems.push(format!("npdu reduction {npdu_factor:.1}x < 136x"));
    }

    let mut rng = rng_from_seed(0x0C0);
    let mut unclamped_runs = 0;
    for no in 0..OP_COUNT_CONFIGS {
        let (cloud, c, m) = random_config(&mut rng);
        let n = cloud.len();
        let k = rng.random_range(1..=24);
        let seed: u64 = rng.random();
        let fe = fps(&cloud, c, policy, seed).unwrap().stats.dist_evals;
        if fe != ((c - 1) * n) as u64 {
            problems.push(format!("#{no} fps evals {fe} != (c-1)N"));
        }
        let ae = afps(&cloud, c, m, policy, seed).unwrap().stats.dist_evals;
        let want: u64 = (0..m).map(|s| ((quota(c, m, s) - 1) * sector(n, m, s).len()) as u64).sum();
        if ae != want {
            problems.push(format!("#{no} afps evals {ae} != {want}"));
        }
        for (mm, res) in [
            (1, npdu_fps(&cloud, c, k, policy, seed).unwrap()),
            (m, npdu_afps(&cloud, c, m, k, policy, seed).unwrap()),
        ] {
            let bound: u64 = (0..mm).map(|s| ((quota(c, mm, s) - 1) * k) as u64).sum();
            let (expected, clamped) = npdu_expected(&res, n, mm, k);
            let got = res.stats.dist_evals;
            if got > bound || got != expected || (!clamped && got != bound) {
                problems.push(format!(
                    "#{no} npdu m={mm} k={k}: evals {got}, windows {expected}, bound {bound}"
                ));
            }
            unclamped_runs += usize::from(!clamped);
        }
    }
    verdict(
        problems.is_empty(),
        format!(
            "N=2048 c=512: fps {f}, afps(m=32) {a} ({afps_factor:.1}x), npdu-afps(m=32,k=16) {np} \
             ({npdu_factor:.0}x); {OP_COUNT_CONFIGS} random configs ({unclamped_runs} unclamped npdu runs); \
             {} problems{}",
            problems.len(),
            problems.first().map(|p| format!(" ({p})")).unwrap_or_default()
        ),
    )
}

const SCALING_NS: [usize; 5] = [2048, 4096, 8192, 16384, 32768];
const SCALING_REPS: usize = 31;
const SCALING_BUDGET: Duration = Duration::from_secs(300);
/// Minimum length of one timed batch.
const BATCH_SECONDS: f64 = 5e-3;

/// Calls per batch so that one batch of `f` lasts at least `BATCH_SECONDS`.
fn batch_size<F: FnMut()>(f: &mut F) -> usize {
    f();
    let t = Instant::now();
    f();
    let once = t.elapsed().as_secs_f64();
    ((BATCH_SECONDS / once.max(1e-9)).ceil() as usize).clamp(1, 100_000)
}

fn time_batch<F: FnMut()>(f: &mut F, batch: usize) -> f64 {
    let t = Instant::now();
    for _ in 0..batch {
        f();
    }
    t.elapsed().as_secs_f64() / batch as f64
}

/// Median over repetitions of `time(slow) / time(fast)`, with the two timed
/// back to back in each repetition so both see the same machine state.
fn median_ratio<F: FnMut(), G: FnMut()>(mut slow: F, mut fast: G) -> f64 {
    let (bs, bf) = (batch_size(&mut slow), batch_size(&mut fast));
    let ratios = (0..SCALING_REPS)
        .map(|_| time_batch(&mut slow, bs) / time_batch(&mut fast, bf))
        .collect();
    median(ratios)
}

fn wall_clock_scaling() -> Outcome {
    let start = Instant::now();
    let mut ratios = Vec::new();
    let mut cells = Vec::new();
    for &n in &SCALING_NS {
        let base = gen_scanning_lidar(n, 360.0, &RangeProfile::outdoor(n as u64), 0.01, n as u64).unwrap();
        let cloud = bin_approx_sort(&base, Axis::X, 128, 3).unwrap();
        let policy = SeedPolicy::RandomFirstPoint;
        let r = median_ratio(
            || {
                std::hint::black_box(fps(&cloud, 512, policy, 5).unwrap());
            },
            || {
                std::hint::black_box(npdu_afps(&cloud, 512, 32, 16, policy, 5).unwrap());
            },
        );
        ratios.push(r);
        cells.push(format!("{}K {:.0}x", n / 1024, r));
    }
    let elapsed = start.elapsed();
    let monotone = ratios.windows(2).all(|w| w[1] > w[0]);
    let ok = ratios[0] >= 20.0 && monotone && *ratios.last().unwrap() >= 100.0 && elapsed < SCALING_BUDGET;
    verdict(
        ok,
        format!(
            "fps / npdu-afps(m=32,k=16) at c=512, single thread: {}; monotone {monotone}; \
             need >=20x at 2K and >=100x at 32K",
            cells.join(", ")
        ),
    )
}

const QUALITY_SEEDS: u64 = 30;

fn sorted_quality_trend() -> Outcome {
    let ms = [2usize, 8, 32];
    let mut sorted = vec![Vec::new(); ms.len()];
    let mut shuffled = vec![Vec::new(); ms.len()];
    let mut full = Vec::new();
    let policy = SeedPolicy::RandomFirstPoint;
    for t in 0..QUALITY_SEEDS {
        let seed = derive_seed(0x5027, t);
        let cloud = scan_2048(seed);
        let order_seed = derive_seed(seed, 1);
        let sample_seed = derive_seed(seed, 2);
        let s = bin_approx_sort(&cloud, Axis::X, 128, order_seed).unwrap();
        let u = shuffle(&cloud, order_seed);
        for (j, &m) in ms.iter().enumerate() {
            sorted[j].push(cov(&s, &afps(&s, 512, m, policy, sample_seed).unwrap()));
            shuffled[j].push(cov(&u, &afps(&u, 512, m, policy, sample_seed).unwrap()));
        }
        full.push(cov(&s, &fps(&s, 512, policy, sample_seed).unwrap()));
    }
    let sorted: Vec<f64> = sorted.iter().map(|v| mean(v)).collect();
    let shuffled: Vec<f64> = shuffled.iter().map(|v| mean(v)).collect();
    let fps_mean = mean(&full);
    let gap: Vec<f64> = sorted.iter().zip(&shuffled).map(|(a, b)| b - a).collect();
    let ok = sorted[1] < shuffled[1] && gap[0] < gap[2] && sorted[1] <= 1.25 * fps_mean;
    verdict(
        ok,
        format!(
            "{QUALITY_SEEDS} seeds, mean coverage sorted/shuffled: m=2 {:.3}/{:.3}, m=8 {:.3}/{:.3}, \
             m=32 {:.3}/{:.3}; gap m=2 {:.3} vs m=32 {:.3}; fps {fps_mean:.3} (x1.25 = {:.3})",
            sorted[0],
            shuffled[0],
            sorted[1],
            shuffled[1],
            sorted[2],
            shuffled[2],
            gap[0],
            gap[2],
            1.25 * fps_mean
        ),
    )
}

const SPARSE_SEEDS: u64 = 30;

fn sparse_region_ordering() -> Outcome {
    let (mut f, mut np, mut r, mut g) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let policy = SeedPolicy::RandomFirstPoint;
    for t in 0..SPARSE_SEEDS {
        let seed = derive_seed(0x5DA5, t);
        let cloud = gen_sparse_dense(1000, 5, 0.05, seed).unwrap();
        let s = derive_seed(seed, 1);
        f.push(cov(&cloud, &fps(&cloud, 64, policy, s).unwrap()));
        np.push(cov(&cloud, &npdu_afps(&cloud, 64, 8, 8, policy, s).unwrap()));
        r.push(cov(&cloud, &rps(&cloud, 64, s).unwrap()));
        g.push(cov(&cloud, &grid_voxel_sample(&cloud, 64, 40, s).unwrap()));
    }
    let (f, np, r, g) = (mean(&f), mean(&np), mean(&r), mean(&g));
    let npdu_ok = f < np && np < r;
    let grid_ok = f < g && g < r;
    verdict(
        npdu_ok && grid_ok,
        format!(
            "{SPARSE_SEEDS} seeds, mean coverage: fps {f:.3}, npdu-afps(m=8,k=8) {np:.3}, grid(40) {g:.3}, \
             rps {r:.3}; fps < npdu-afps < rps {npdu_ok}; fps < grid < rps {grid_ok}"
        ),
    )
}

fn bench_csv(threads: usize) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pcsample"))
        .args([
            "bench", "--sweep", "m", "--method", "rps,fps,afps,npdu-fps,npdu-afps,grid", "--n", "2048",
            "--c", "256", "--m", "1,8,32", "--k", "16", "--trials", "3", "--seed", "11",
            "--inputs", "raw,bin:128,shuffle", "--threads",
        ])
        .arg(threads.to_string())
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    Ok(out.stdout)
}

/// The CSV with every timing column removed, fields kept byte for byte.
fn non_timing(csv_bytes: &[u8]) -> Vec<Vec<Vec<u8>>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(csv_bytes);
    let records: Vec<csv::ByteRecord> = reader.byte_records().map(|r| r.unwrap()).collect();
    let keep: Vec<usize> = records[0]
        .iter()
        .enumerate()
        .filter(|(_, h)| !TIMING_COLUMNS.iter().any(|t| t.as_bytes() == *h))
        .map(|(i, _)| i)
        .collect();
    records
        .iter()
        .map(|r| keep.iter().map(|&i| r[i].to_vec()).collect())
        .collect()
}

fn parallel_determinism() -> Outcome {
    let reference = non_timing(&bench_csv(1)?);
    let mut differing = Vec::new();
    for threads in [2, 8] {
        if non_timing(&bench_csv(threads)?) != reference {
            differing.push(threads);
        }
    }
    verdict(
        differing.is_empty(),
        format!(
            "{} rows x {} non-timing columns; thread counts differing from --threads 1: {differing:?}",
            reference.len() - 1,
            reference[0].len()
        ),
    )
}

const PROPERTY_CASES: u32 = 128;

fn cloud_strategy(max_n: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(prop::array::uniform3(-50.0f64..50.0), 2..max_n)
        .prop_map(|pts| PointCloud::unsorted(pts).unwrap())
}

fn fps_family() -> impl Strategy<Value = Method> {
    prop::sample::select(vec![Method::Fps, Method::Afps, Method::NpduFps, Method::NpduAfps])
}

/// Cloud plus a feasible (c, m, k, seed).
fn config_strategy(max_n: usize) -> impl Strategy<Value = (PointCloud, usize, usize, usize, u64)> {
    (cloud_strategy(max_n), any::<usize>(), any::<usize>(), 1usize..20, any::<u64>()).prop_filter_map(
        "infeasible sector plan",
        |(cloud, cs, ms, k, seed)| {
            let n = cloud.len();
            let c = 1 + cs % n;
            let m = 1 + ms % c;
            SectorPlan::new(n, m, c).ok().map(|_| (cloud, c, m, k, seed))
        },
    )
}

#[derive(Default)]
struct Monotone {
    last: Vec<Vec<f64>>,
    violations: usize,
}

impl TrackProbe for Monotone {
    fn after_update(&mut self, sector: usize, _iteration: usize, track: &[f64], _: &[usize]) {
        if self.last.len() <= sector {
            self.last.resize(sector + 1, Vec::new());
        }
        let prev = &mut self.last[sector];
        if !prev.is_empty() {
            self.violations += prev.iter().zip(track).filter(|(a, b)| b > a).count();
        }
        prev.clear();
        prev.extend_from_slice(track);
    }
}

fn property_suites() -> Outcome {
    let runner = || {
        TestRunner::new(Config {
            cases: PROPERTY_CASES,
            failure_persistence: None,
            ..Config::default()
        })
    };
    let mut failures = Vec::new();
    let mut record = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };

    record(
        "distance track monotonicity",
        runner()
            .run(&(config_strategy(200), fps_family()), |((cloud, c, m, k, seed), method)| {
                let spec = SamplerSpec::new(method, c).sectors(m).window(k).seed(seed);
                let mut probe = Monotone::default();
                run_probed(&cloud, &spec, &mut probe).unwrap().unwrap();
                prop_assert_eq!(probe.violations, 0);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    record(
        "sample distinctness",
        runner()
            .run(
                &(config_strategy(200), prop::sample::select(Method::ALL.to_vec())),
                |((cloud, c, m, k, seed), method)| {
                    let spec = SamplerSpec::new(method, c).sectors(m).window(k).grid(1 + k % 5).seed(seed);
                    let res = sample(&cloud, &spec).unwrap();
                    let mut sorted = res.indices.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    prop_assert_eq!(sorted.len(), c);
                    prop_assert!(sorted.last().is_some_and(|&i| i < cloud.len()));
                    Ok(())
                },
            )
            .map_err(|e| e.to_string()),
    );

    record(
        "sector confinement",
        runner()
            .run(&(config_strategy(300), any::<bool>()), |((cloud, c, m, k, seed), windowed)| {
                let n = cloud.len();
                let policy = SeedPolicy::RandomFirstPoint;
                let res = if windowed {
                    npdu_afps(&cloud, c, m, k, policy, seed).unwrap()
                } else {
                    afps(&cloud, c, m, policy, seed).unwrap()
                };
                let mut counts = vec![0usize; m];
                for (&i, &s) in res.indices.iter().zip(&res.sector_of) {
                    prop_assert!(sector(n, m, s).contains(&i));
                    counts[s] += 1;
                }
                for (s, &count) in counts.iter().enumerate() {
                    prop_assert_eq!(count, quota(c, m, s));
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    record(
        "coverage monotone under union",
        runner()
            .run(
                &(
                    cloud_strategy(200),
                    prop::collection::vec(any::<prop::sample::Index>(), 1..20),
                    prop::collection::vec(any::<prop::sample::Index>(), 1..20),
                ),
                |(cloud, a, b)| {
                    let n = cloud.len();
                    let first: Vec<usize> = a.iter().map(|i| i.index(n)).collect();
                    let mut union = first.clone();
                    union.extend(b.iter().map(|i| i.index(n)));
                    prop_assert!(
                        coverage_radius(&cloud, &union).unwrap() <= coverage_radius(&cloud, &first).unwrap()
                    );
                    Ok(())
                },
            )
            .map_err(|e| e.to_string()),
    );

    record(
        "separation >= coverage along fps prefixes",
        runner()
            .run(&(cloud_strategy(256), any::<u64>()), |(cloud, seed)| {
                let res = fps(&cloud, cloud.len().min(64), SeedPolicy::RandomFirstPoint, seed).unwrap();
                for p in 2..=res.indices.len() {
                    let prefix = &res.indices[..p];
                    prop_assert!(separation(&cloud, prefix).unwrap() >= coverage_radius(&cloud, prefix).unwrap());
                }
                Ok(())
            })
            .map_err(|e| e.to_string()),
    );

    verdict(
        failures.is_empty(),
        format!(
            "5 suites x {PROPERTY_CASES} cases, {} failing{}",
            failures.len(),
            failures.first().map(|f| format!(" ({f})")).unwrap_or_default()
        ),
    )
}
