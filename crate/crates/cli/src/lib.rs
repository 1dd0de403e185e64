//! File formats, the sweep harness and the `pcsample` command set.

pub mod bench;
pub mod commands;
pub mod io;
pub mod report;

pub use bench::{run_bench, BenchConfig, BenchRow, Generator, InputOrder, Sweep};
pub use commands::{run, Cli, CliError, StatsLine};
pub use io::{read_cloud, write_cloud, Format, IoError};
