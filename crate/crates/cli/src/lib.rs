//! Command-line front end for `pipedegen`: sweep configuration, certificate
//! emission and aggregated reports. The binary in `main.rs` is a thin layer
//! over these modules.

pub mod certificate;
pub mod config;
pub mod report;
pub mod sweep;

pub use certificate::{Certificate, CheckResult, Status};
pub use config::{ConfigError, PartitionSelector, SemiInfConfig, SweepConfig};

/// Exit codes of the binary.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const PARTIAL: i32 = 3;
}

/// Environment variable read for the default worker count.
pub const WORKERS_ENV: &str = "PIPEDEGEN_WORKERS";
