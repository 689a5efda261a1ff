//! Experiment definitions, one JSON document each.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use qwalk::{generate, Family, Graph, MarkedSet};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Stem for the output files. Defaults to the config file's stem.
    #[serde(default)]
    pub name: Option<String>,
    pub graph: GraphSpec,
    pub marked: MarkedSpec,
    /// Defaults to `10 * diameter^2`, capped at 10^4.
    #[serde(default)]
    pub t_max: Option<usize>,
    #[serde(default)]
    pub assignment: AssignmentSpec,
    #[serde(default)]
    pub outputs: Outputs,
}

/// Either a generator (`{"family": "torus2d", "rows": 16, "cols": 16}`) or an
/// edge-list file (`{"edge_list": "host.txt"}`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Generated(Family),
    File(EdgeListSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListSpec {
    pub edge_list: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MarkedSpec {
    Vertices(Vec<usize>),
    /// `rows x cols` block with top-left corner at `(row, col)` on a torus,
    /// wrapping around the edges.
    Block { rows: usize, cols: usize, row: usize, col: usize },
    /// `k` adjacent pairs, pairwise non-adjacent, picked with `seed`.
    Pairs { k: usize, seed: u64 },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AssignmentSpec {
    #[default]
    MinNorm,
    File(PathBuf),
}

/// Output locations; relative paths and defaults resolve against the output
/// directory.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub report: Option<PathBuf>,
}

/// Command-line settings applied on top of a config.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub t_max: Option<usize>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub assignment: Option<PathBuf>,
}

/// A config ready to run: overrides applied and input paths made relative to
/// the config file's directory.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub name: String,
    pub config: ExperimentConfig,
    pub base_dir: PathBuf,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<ExperimentConfig> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        Ok(config)
    }

    pub fn apply(&mut self, overrides: &Overrides) {
        if let Some(t) = overrides.t_max {
            self.t_max = Some(t);
        }
        if let Some(seed) = overrides.seed {
            if let GraphSpec::Generated(Family::RandomRegular { seed: s, .. }) = &mut self.graph {
                *s = seed;
            }
            if let MarkedSpec::Pairs { seed: s, .. } = &mut self.marked {
                *s = seed;
            }
        }
        if let Some(path) = &overrides.assignment {
            self.assignment = AssignmentSpec::File(path.clone());
        }
    }
}

impl Experiment {
    pub fn load(path: &Path, overrides: &Overrides) -> Result<Experiment> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut config =
            ExperimentConfig::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
        config.apply(overrides);
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("experiment");
        let name = config.name.clone().unwrap_or_else(|| stem.to_string());
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let out_dir = overrides.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
        Ok(Experiment { name, config, base_dir, out_dir })
    }

    pub fn input_path(&self, p: &Path) -> PathBuf {
        self.base_dir.join(p)
    }

    pub fn csv_path(&self) -> PathBuf {
        let file = self.config.outputs.csv.clone().unwrap_or_else(|| format!("{}.csv", self.name).into());
        self.out_dir.join(file)
    }

    pub fn report_path(&self) -> PathBuf {
        let file = self.config.outputs.report.clone().unwrap_or_else(|| format!("{}.json", self.name).into());
        self.out_dir.join(file)
    }

    pub fn build_graph(&self) -> Result<Graph> {
        match &self.config.graph {
            GraphSpec::Generated(family) => Ok(family.generate()?),
            GraphSpec::File(spec) => read_graph(&self.input_path(&spec.edge_list)),
        }
    }

    pub fn build_marked(&self, g: &Graph) -> Result<MarkedSet> {
        let vertices = match &self.config.marked {
            MarkedSpec::Vertices(vs) => vs.clone(),
            MarkedSpec::Block { rows, cols, row, col } => {
                let GraphSpec::Generated(Family::Torus2d { rows: tr, cols: tc }) = self.config.graph else {
                    bail!("a block marked set needs a torus2d graph");
                };
                if *rows > tr || *cols > tc {
                    bail!("block {rows}x{cols} does not fit a {tr}x{tc} torus");
                }
                (0..*rows)
                    .flat_map(|dr| (0..*cols).map(move |dc| ((row + dr) % tr) * tc + (col + dc) % tc))
                    .collect()
            }
            MarkedSpec::Pairs { k, seed } => generate::separated_pairs(g, *k, *seed)?,
        };
        Ok(MarkedSet::new(g, vertices)?)
    }
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    qwalk::graph::read_edge_list(std::io::BufReader::new(file))
        .with_context(|| format!("reading edge list {}", path.display()))
}
