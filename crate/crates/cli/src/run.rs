//! The single-experiment pipeline: graph, marked set, stationary assignment,
//! bound, simulation, outputs.

use std::fmt;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use qwalk::stationary::global_scale;
use qwalk::{
    build_state, exists_stationary, marked_components, marked_probability, solve_min_norm, total_bound,
    verify_stationary, AssignmentSource, BoundReport64, Error, MarkedComponent, StationaryAssignment64,
    WalkState64,
};
use serde::Serialize;

use crate::config::{AssignmentSpec, Experiment};

/// Largest `|U' psi - psi|_inf` accepted for the assembled stationary state.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Slack allowed when comparing the observed maximum against the bound.
pub const DOMINANCE_SLACK: f64 = 1e-12;

/// The stationary state the config asks for does not exist.
#[derive(Debug)]
pub struct Infeasible(pub String);

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Infeasible {}

/// 2 for infeasible requests, 1 for everything else.
pub fn error_exit_code(err: &anyhow::Error) -> i32 {
    if err.chain().any(|e| e.is::<Infeasible>()) {
        2
    } else {
        1
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Coefficient {
    pub i: usize,
    pub j: usize,
    pub c: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub internal_edges: Vec<(usize, usize)>,
    pub d_out: Vec<usize>,
    pub total_out: usize,
    pub bipartite: bool,
    pub side_sums: Option<(usize, usize)>,
    pub exists: bool,
    pub coefficients: Vec<Coefficient>,
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
}

/// Everything written to the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub name: String,
    pub graph: GraphSummary,
    pub t_max: usize,
    pub marked: Vec<usize>,
    pub components: Vec<ComponentReport>,
    pub assignment_source: AssignmentSource,
    pub a: f64,
    pub stationary_probability: f64,
    pub stationary_residual: f64,
    pub residual_tolerance: f64,
    pub residual_ok: bool,
    pub total_bound: f64,
    pub bounds: BoundReport64,
    pub observed_max: f64,
    pub observed_argmax: usize,
    pub dominance: bool,
    pub margin: f64,
}

impl Report {
    /// 0 when dominance and the residual check both hold, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.dominance && self.residual_ok {
            0
        } else {
            3
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub probabilities: Vec<f64>,
}

fn infeasible_check(comp: &MarkedComponent) -> Result<()> {
    if exists_stationary(comp) {
        return Ok(());
    }
    let (left, right) = comp.side_sums().expect("only bipartite components can be infeasible");
    let msg = Error::NoStationaryState { left, right }.to_string();
    Err(Infeasible(msg).into())
}

fn assignments(exp: &Experiment, comps: &[MarkedComponent]) -> Result<Vec<StationaryAssignment64>> {
    for comp in comps {
        infeasible_check(comp)?;
    }
    match &exp.config.assignment {
        AssignmentSpec::MinNorm => comps.iter().map(|c| Ok(solve_min_norm(c)?)).collect(),
        AssignmentSpec::File(path) => {
            let path = exp.input_path(path);
            let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
            qwalk::stationary::read_assignments(comps, BufReader::new(file))
                .with_context(|| format!("reading assignment {}", path.display()))
        }
    }
}

/// Runs the pipeline without touching the filesystem beyond reading inputs.
pub fn execute(exp: &Experiment) -> Result<Outcome> {
    let g = exp.build_graph()?;
    let marked = exp.build_marked(&g)?;
    let t_max = exp.config.t_max.unwrap_or_else(|| qwalk::default_t_max(&g));
    let comps = marked_components(&g, &marked);
    let asgs = assignments(exp, &comps)?;

    let psi: WalkState64 = match build_state(&g, &asgs) {
        Err(Error::ZeroState) => {
            return Err(Infeasible("no stationary state: the marked set covers a whole host component".into()).into())
        }
        other => other?,
    };
    let residual = verify_stationary(&g, &marked, &psi).residual;
    let parts: Vec<_> = comps.iter().zip(&asgs).collect();
    let bounds = total_bound(&parts, g.edge_count())?;

    let mut probabilities = Vec::with_capacity(t_max + 1);
    qwalk::evolve(&g, WalkState64::initial(&g)?, &marked, t_max, |_, p| probabilities.push(p))?;
    let (observed_argmax, observed_max) = probabilities
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (t, p)| if p > best.1 { (t, p) } else { best });

    let components = comps
        .iter()
        .zip(&asgs)
        .zip(&bounds.per_component)
        .map(|((comp, asg), term)| ComponentReport {
            vertices: comp.vertices().to_vec(),
            internal_edges: comp.internal_edges().to_vec(),
            d_out: comp.d_out().to_vec(),
            total_out: comp.total_out(),
            bipartite: comp.is_bipartite(),
            side_sums: comp.side_sums(),
            exists: exists_stationary(comp),
            coefficients: asg.coefficients().iter().map(|(&(i, j), &c)| Coefficient { i, j, c }).collect(),
            bound: term.term,
        })
        .collect();

    let report = Report {
        name: exp.name.clone(),
        graph: GraphSummary { n: g.vertex_count(), m: g.edge_count(), max_degree: g.max_degree() },
        t_max,
        marked: marked.vertices().to_vec(),
        components,
        assignment_source: bounds.assignment_source,
        a: global_scale(g.edge_count(), &asgs),
        stationary_probability: marked_probability(&g, &psi, &marked),
        stationary_residual: residual,
        residual_tolerance: RESIDUAL_TOL,
        residual_ok: residual <= RESIDUAL_TOL,
        total_bound: bounds.total_bound,
        observed_max,
        observed_argmax,
        dominance: observed_max <= bounds.total_bound + DOMINANCE_SLACK,
        margin: bounds.total_bound - observed_max,
        bounds,
    };
    Ok(Outcome { report, probabilities })
}

pub fn write_csv<W: Write>(probabilities: &[f64], mut w: W) -> std::io::Result<()> {
    writeln!(w, "t,p_marked")?;
    for (t, p) in probabilities.iter().enumerate() {
        writeln!(w, "{t},{p:.16e}")?;
    }
    w.flush()
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

/// Runs the experiment and writes its CSV and JSON report.
pub fn run(exp: &Experiment) -> Result<Report> {
    let Outcome { report, probabilities } = execute(exp)?;
    write_csv(&probabilities, create(&exp.csv_path())?)?;
    let mut w = create(&exp.report_path())?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    writeln!(w)?;
    w.flush()?;
    Ok(report)
}
