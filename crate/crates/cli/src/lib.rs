//! Declarative experiments for quantum walk search: JSON configs in, CSV
//! traces and JSON reports out.

pub mod config;
pub mod run;
pub mod sweep;

pub use config::{Experiment, ExperimentConfig, Overrides};
pub use run::{execute, run, Report};
pub use sweep::{collect_configs, sweep};

/// Sizes the global rayon pool from `QWALK_THREADS`, if set.
pub fn configure_threads() -> anyhow::Result<()> {
    if let Ok(value) = std::env::var("QWALK_THREADS") {
        let n: usize = value
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("QWALK_THREADS must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}
