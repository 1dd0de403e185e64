//! QualityReport serialization.
//!
//! CSV: one row per sampler spec, with the report-level fields repeated on
//! every row so each line is self-contained. JSON: the report object as is.

use std::io::Write;

use pcsample_core::{Axis, Method, QualityReport};
use serde::Serialize;

#[derive(Serialize)]
struct CsvRow<'a> {
    cloud_digest: &'a str,
    n: usize,
    locality_axis: Axis,
    locality_score: Option<f64>,
    seed: u64,
    method: Method,
    c: usize,
    m: Option<usize>,
    k: Option<usize>,
    g: Option<usize>,
    trials: usize,
    coverage_radius_mean: f64,
    coverage_radius_std: f64,
    separation_mean: Option<f64>,
    separation_std: Option<f64>,
    dist_evals_mean: f64,
    dist_writes_mean: f64,
    wall_seconds_mean: f64,
    wall_seconds_std: f64,
}

pub fn write_report_csv<W: Write>(report: &QualityReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in &report.rows {
        w.serialize(CsvRow {
            cloud_digest: &report.cloud_digest,
            n: report.n,
            locality_axis: report.locality_axis,
            locality_score: report.locality_score,
            seed: report.seed,
            method: r.method,
            c: r.c,
            m: r.m,
            k: r.k,
            g: r.g,
            trials: r.trials,
            coverage_radius_mean: r.coverage_radius_mean,
            coverage_radius_std: r.coverage_radius_std,
            separation_mean: r.separation_mean,
            separation_std: r.separation_std,
            dist_evals_mean: r.dist_evals_mean,
            dist_writes_mean: r.dist_writes_mean,
            wall_seconds_mean: r.wall_seconds_mean,
            wall_seconds_std: r.wall_seconds_std,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_report_json<W: Write>(report: &QualityReport, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)
}
