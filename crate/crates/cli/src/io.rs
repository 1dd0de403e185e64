//! Cloud file formats.
//!
//! * `xyz`: UTF-8 text, one point per line as three whitespace-separated
//!   reals. `#` starts a comment that runs to the end of the line; blank lines
//!   are skipped.
//! * `bin`: packed little-endian `f32` triples, 12 bytes per point, no
//!   header.
//!
//! Both readers preserve the file's point order. Binary coordinates are
//! widened to `f64` on read and narrowed to `f32` on write; text is written
//! with the shortest representation that reads back to the same `f64`.

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use pcsample_core::{CloudError, OrderTag, Point, PointCloud};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    XyzText,
    F32Bin,
}

impl Format {
    /// `.bin` / `.f32` files are binary, everything else text.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("bin") | Some("f32") => Format::F32Bin,
            _ => Format::XyzText,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xyz" | "xyz_text" | "text" => Ok(Format::XyzText),
            "bin" | "f32_bin" | "f32" => Ok(Format::F32Bin),
            other => Err(format!("unknown format `{other}` (expected xyz or bin)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::XyzText => "xyz",
            Format::F32Bin => "bin",
        })
    }
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{path}: binary length {len} is not a multiple of 12 bytes")]
    Truncated { path: PathBuf, len: usize },
    #[error("{path}: file contains no points")]
    Empty { path: PathBuf },
    #[error("{path}: {source}")]
    Invalid {
        path: PathBuf,
        #[source]
        source: CloudError,
    },
}

pub fn read_cloud(path: &Path, format: Format) -> Result<PointCloud, IoError> {
    let bytes = fs::read(path).map_err(|source| IoError::Io {
        path: path.to_owned(),
        source,
    })?;
    let points = match format {
        Format::XyzText => parse_text(path, &bytes)?,
        Format::F32Bin => parse_bin(path, &bytes)?,
    };
    if points.is_empty() {
        return Err(IoError::Empty {
            path: path.to_owned(),
        });
    }
    PointCloud::new(points, OrderTag::Unsorted).map_err(|source| IoError::Invalid {
        path: path.to_owned(),
        source,
    })
}

fn parse_text(path: &Path, bytes: &[u8]) -> Result<Vec<Point>, IoError> {
    let parse_err = |line: usize, msg: String| IoError::Parse {
        path: path.to_owned(),
        line,
        msg,
    };
    let text = std::str::from_utf8(bytes).map_err(|e| parse_err(0, format!("not UTF-8: {e}")))?;
    let mut points = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut p = [0.0; 3];
        for slot in &mut p {
            let tok = fields
                .next()
                .ok_or_else(|| parse_err(no + 1, format!("expected 3 values, got `{line}`")))?;
            *slot = tok
                .parse()
                .map_err(|_| parse_err(no + 1, format!("invalid number `{tok}`")))?;
        }
        if fields.next().is_some() {
            return Err(parse_err(no + 1, format!("expected 3 values, got `{line}`")));
        }
        points.push(p);
    }
    Ok(points)
}

fn parse_bin(path: &Path, bytes: &[u8]) -> Result<Vec<Point>, IoError> {
    if bytes.len() % 12 != 0 {
        return Err(IoError::Truncated {
            path: path.to_owned(),
            len: bytes.len(),
        });
    }
    Ok(bytes
        .chunks_exact(12)
        .map(|rec| {
            let f = |i: usize| {
                f64::from(f32::from_le_bytes([
                    rec[4 * i],
                    rec[4 * i + 1],
                    rec[4 * i + 2],
                    rec[4 * i + 3],
                ]))
            };
            [f(0), f(1), f(2)]
        })
        .collect())
}

pub fn write_cloud(cloud: &PointCloud, path: &Path, format: Format) -> Result<(), IoError> {
    let io_err = |source| IoError::Io {
        path: path.to_owned(),
        source,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    match format {
        Format::XyzText => {
            for p in cloud.points() {
                writeln!(out, "{} {} {}", p[0], p[1], p[2]).map_err(io_err)?;
            }
        }
        Format::F32Bin => {
            for p in cloud.points() {
                for &c in p {
                    out.write_all(&(c as f32).to_le_bytes()).map_err(io_err)?;
                }
            }
        }
    }
    out.flush().map_err(io_err)
}
