//! Batches of experiments, run concurrently.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;

use crate::config::{Experiment, Overrides};
use crate::run::{error_exit_code, run, Report};

/// Expands the `sweep` arguments into config paths: a directory contributes
/// its `*.json` files in name order, a `.json` file is itself a config, and
/// any other file lists one config path per line (relative to the list).
pub fn collect_configs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(input)
                .with_context(|| format!("listing {}", input.display()))?
                .map(|e| e.map(|e| e.path()))
                .collect::<std::io::Result<_>>()?;
            found.retain(|p| p.extension().is_some_and(|e| e == "json"));
            found.sort();
            out.extend(found);
        } else if input.extension().is_some_and(|e| e == "json") {
            out.push(input.clone());
        } else {
            let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let base = input.parent().unwrap_or(Path::new(""));
            out.extend(
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(|l| base.join(l)),
            );
        }
    }
    Ok(out)
}

pub struct SweepEntry {
    pub path: PathBuf,
    pub result: Result<Report>,
}

impl SweepEntry {
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Ok(report) => report.exit_code(),
            Err(e) => error_exit_code(e),
        }
    }
}

/// Runs every config; results keep the input order.
pub fn sweep(configs: &[PathBuf], overrides: &Overrides) -> Vec<SweepEntry> {
    configs
        .par_iter()
        .map(|path| SweepEntry {
            path: path.clone(),
            result: Experiment::load(path, overrides).and_then(|exp| run(&exp)),
        })
        .collect()
}

pub fn write_summary<W: Write>(entries: &[SweepEntry], mut w: W) -> std::io::Result<()> {
    writeln!(w, "name,n,m,marked,bound,observed_max,margin,dominance")?;
    for entry in entries {
        if let Ok(r) = &entry.result {
            writeln!(
                w,
                "{},{},{},{},{:.16e},{:.16e},{:.16e},{}",
                r.name,
                r.graph.n,
                r.graph.m,
                r.marked.len(),
                r.total_bound,
                r.observed_max,
                r.margin,
                r.dominance
            )?;
        }
    }
    w.flush()
}

/// Input errors first, then infeasible requests, then failed checks.
pub fn combined_exit_code(entries: &[SweepEntry]) -> i32 {
    let codes: Vec<i32> = entries.iter().map(SweepEntry::exit_code).collect();
    [1, 2, 3].into_iter().find(|c| codes.contains(c)).unwrap_or(0)
}
