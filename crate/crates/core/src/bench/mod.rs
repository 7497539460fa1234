//! Flop accounting and wall-clock comparison against de Casteljau.

mod counter;
mod flops;
mod harness;

pub use counter::{measure, Counted, FlopTally};
pub use flops::{count_batch_flops, count_flops, expected_batch_flops, expected_flops, Algorithm, FlopReport};
pub use harness::{run_benchmark, BenchConfig, BenchReport, BenchRow, CellFailure, CurveKind, Precision, CSV_HEADER};
