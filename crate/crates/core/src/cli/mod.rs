//! Configuration, sweeps, calculators and the lemma verification runner
//! behind the `uav-aadr` binary.

pub mod config;
pub mod report;
pub mod sweep;
pub mod verify;

pub use config::{EstimatorSettings, RunConfig};
pub use report::{packet_size, report_dmax, DmaxReport, PacketSize};
pub use sweep::{sweep_blocklength, sweep_epsilon, SweepRow, SweepTable};
pub use verify::{verify_lemmas, LemmaReport, LemmaSuite};

/// Environment variable that redirects output files into another directory.
pub const OUT_DIR_ENV: &str = "UAV_AADR_OUT_DIR";
