//! Scenarios, time-stepped runs, file output, and the check/bench drivers.

pub mod bench;
pub mod check;
pub mod config;
pub mod csv;
pub mod plot;
pub mod run;
pub mod scenario;

pub use bench::{bench, BenchReport};
pub use check::{run_checks, CheckReport};
pub use config::SimConfig;
pub use run::{run_sim, simulate, Sample, TimeSeries};
pub use scenario::{scenario_eval, Law, Scenario};
