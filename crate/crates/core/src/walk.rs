//! Coined walk with Grover coin, flip-flop shift and a sign-flip query.
//!
//! One search step is `S * C * Q`. All three operators are real, so states are
//! real vectors indexed by arc.

use std::io::{BufRead, Write};
use std::ops::Range;

use num_traits::Float;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, MarkedSet};
use crate::scalar::Scalar;

/// Below this many arcs a step runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 15;
const SHIFT_CHUNK: usize = 1 << 14;

/// Amplitudes over the arcs of one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState<T> {
    amplitudes: Vec<T>,
    graph: u64,
}

impl<T: Scalar> WalkState<T> {
    /// Equal superposition over all arcs, `1/sqrt(2m)` each.
    pub fn initial(g: &Graph) -> Result<Self> {
        if g.arc_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        let amp = T::one() / Float::sqrt(T::from_count(g.arc_count()));
        Ok(WalkState { amplitudes: vec![amp; g.arc_count()], graph: g.fingerprint() })
    }

    pub fn zeros(g: &Graph) -> Self {
        WalkState { amplitudes: vec![T::zero(); g.arc_count()], graph: g.fingerprint() }
    }

    /// Unit vector on a single arc.
    pub fn basis(g: &Graph, arc: usize) -> Self {
        let mut s = Self::zeros(g);
        s.amplitudes[arc] = T::one();
        s
    }

    pub fn from_amplitudes(g: &Graph, amplitudes: Vec<T>) -> Result<Self> {
        if amplitudes.len() != g.arc_count() {
            return Err(Error::DimensionMismatch { expected: g.arc_count(), found: amplitudes.len() });
        }
        Ok(WalkState { amplitudes, graph: g.fingerprint() })
    }

    pub fn amplitudes(&self) -> &[T] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [T] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<T> {
        self.amplitudes
    }

    /// Amplitude of port `port` at vertex `v`.
    pub fn get(&self, g: &Graph, v: usize, port: usize) -> T {
        self.amplitudes[g.arc(v, port)]
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn belongs_to(&self, g: &Graph) -> bool {
        self.graph == g.fingerprint() && self.amplitudes.len() == g.arc_count()
    }

    pub fn same_graph(&self, other: &Self) -> bool {
        self.graph == other.graph
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, &x| acc + x * x)
    }

    pub fn norm(&self) -> T {
        Float::sqrt(self.norm_sqr())
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(T::zero(), |acc, (&x, &y)| Float::max(acc, Float::abs(x - y)))
    }
}

fn check_graph<T: Scalar>(g: &Graph, s: &WalkState<T>) {
    assert!(s.belongs_to(g), "walk state does not belong to this graph");
}

/// Negates every amplitude on arcs leaving a marked vertex.
pub fn apply_query<T: Scalar>(g: &Graph, s: &mut WalkState<T>, marked: &MarkedSet) {
    check_graph(g, s);
    for &v in marked.vertices() {
        for x in &mut s.amplitudes[g.arc_range(v)] {
            *x = -*x;
        }
    }
}

/// Grover diffusion at every vertex: `x_c <- (2/d) sum(x) - x_c`.
pub fn apply_coin<T: Scalar>(g: &Graph, s: &mut WalkState<T>) {
    check_graph(g, s);
    for v in 0..g.vertex_count() {
        grover(&mut s.amplitudes[g.arc_range(v)], false);
    }
}

/// Swaps each arc's amplitude with its reverse arc's.
pub fn apply_shift<T: Scalar>(g: &Graph, s: &mut WalkState<T>) {
    check_graph(g, s);
    for (a, &b) in g.reverse_map().iter().enumerate() {
        if a < b {
            s.amplitudes.swap(a, b);
        }
    }
}

/// Grover coin on one vertex's ports, optionally preceded by a sign flip.
#[inline]
fn grover<T: Scalar>(ports: &mut [T], flip: bool) {
    if ports.is_empty() {
        return;
    }
    let sum = ports.iter().fold(T::zero(), |acc, &x| acc + x);
    let mean2 = (sum + sum) / T::from_count(ports.len());
    // C(-x) = -C(x), so the query folds into a final sign
    if flip {
        for x in ports.iter_mut() {
            *x = *x - mean2;
        }
    } else {
        for x in ports.iter_mut() {
            *x = mean2 - *x;
        }
    }
}

/// One step `S * C * Q`.
pub fn step<T: Scalar>(g: &Graph, s: &mut WalkState<T>, marked: &MarkedSet) {
    Walker::new(g, marked).step(s);
}

/// Reusable evolution operator for one graph and marked set.
///
/// Query and coin are fused into one pass over vertex blocks; the shift
/// gathers through the reverse map into a scratch buffer, which is then
/// swapped with the state's buffer.
pub struct Walker<'g, T> {
    graph: &'g Graph,
    marked: &'g MarkedSet,
    blocks: Vec<Range<usize>>,
    scratch: Vec<T>,
}

impl<'g, T: Scalar> Walker<'g, T> {
    pub fn new(graph: &'g Graph, marked: &'g MarkedSet) -> Self {
        let blocks = vertex_blocks(graph);
        Walker { graph, marked, blocks, scratch: Vec::new() }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn marked(&self) -> &MarkedSet {
        self.marked
    }

    pub fn step(&mut self, s: &mut WalkState<T>) {
        let g = self.graph;
        check_graph(g, s);
        let offsets = g.offsets();
        let flip = self.marked.mask();

        let coin_block = |vertices: Range<usize>, amps: &mut [T]| {
            let base = offsets[vertices.start];
            for v in vertices {
                grover(&mut amps[offsets[v] - base..offsets[v + 1] - base], flip[v]);
            }
        };

        self.scratch.resize(s.amplitudes.len(), T::zero());
        let reverse = g.reverse_map();

        if self.blocks.len() <= 1 {
            coin_block(0..g.vertex_count(), &mut s.amplitudes);
            for (dst, &src) in self.scratch.iter_mut().zip(reverse) {
                *dst = s.amplitudes[src];
            }
        } else {
            let mut slices = Vec::with_capacity(self.blocks.len());
            let mut rest: &mut [T] = &mut s.amplitudes;
            for block in &self.blocks {
                let (head, tail) = rest.split_at_mut(offsets[block.end] - offsets[block.start]);
                slices.push((block.clone(), head));
                rest = tail;
            }
            slices.into_par_iter().for_each(|(block, amps)| coin_block(block, amps));

            let amps = &s.amplitudes;
            self.scratch
                .par_chunks_mut(SHIFT_CHUNK)
                .zip(reverse.par_chunks(SHIFT_CHUNK))
                .for_each(|(dst, src)| {
                    for (d, &r) in dst.iter_mut().zip(src) {
                        *d = amps[r];
                    }
                });
        }
        std::mem::swap(&mut s.amplitudes, &mut self.scratch);
    }
}

fn vertex_blocks(g: &Graph) -> Vec<Range<usize>> {
    let n = g.vertex_count();
    if g.arc_count() < PARALLEL_THRESHOLD || rayon::current_num_threads() <= 1 {
        return vec![0..n];
    }
    let target = rayon::current_num_threads() * 4;
    let per_block = g.arc_count().div_ceil(target).max(1);
    let mut blocks = Vec::with_capacity(target);
    let mut start = 0;
    let offsets = g.offsets();
    while start < n {
        let mut end = start + 1;
        while end < n && offsets[end] - offsets[start] < per_block {
            end += 1;
        }
        blocks.push(start..end);
        start = end;
    }
    blocks
}

/// Probability of observing a marked vertex: squared mass on marked arcs.
pub fn marked_probability<T: Scalar>(g: &Graph, s: &WalkState<T>, marked: &MarkedSet) -> T {
    check_graph(g, s);
    marked
        .vertices()
        .iter()
        .flat_map(|&v| &s.amplitudes[g.arc_range(v)])
        .fold(T::zero(), |acc, &x| acc + x * x)
}

/// Runs `t_max` steps. `observer` sees `(0, p_M(0))` first and then
/// `(t, p_M(t))` after each step.
///
/// The state is never renormalized; if its norm leaves `1 +- T::DRIFT_TOL` the
/// evolution stops with [`Error::NormDrift`].
pub fn evolve<T, F>(
    g: &Graph,
    mut s: WalkState<T>,
    marked: &MarkedSet,
    t_max: usize,
    mut observer: F,
) -> Result<WalkState<T>>
where
    T: Scalar,
    F: FnMut(usize, T),
{
    check_graph(g, &s);
    let mut walker = Walker::new(g, marked);
    let drift = T::lit(T::DRIFT_TOL);
    observer(0, marked_probability(g, &s, marked));
    for t in 1..=t_max {
        walker.step(&mut s);
        let norm = s.norm();
        if Float::abs(norm - T::one()) > drift {
            return Err(Error::NormDrift { step: t, norm: norm.to_f64_lossy() });
        }
        observer(t, marked_probability(g, &s, marked));
    }
    Ok(s)
}

/// Writes one `v c amplitude` line per arc, amplitudes in shortest
/// round-trip scientific notation.
pub fn write_snapshot<T: Scalar, W: Write>(g: &Graph, s: &WalkState<T>, mut writer: W) -> Result<()> {
    check_graph(g, s);
    for (arc, x) in s.amplitudes.iter().enumerate() {
        let (v, c) = g.port_of(arc);
        writeln!(writer, "{v} {c} {x:e}")?;
    }
    Ok(())
}

/// Reads a snapshot written by [`write_snapshot`]. Every arc must appear
/// exactly once.
pub fn read_snapshot<T: Scalar, R: BufRead>(g: &Graph, reader: R) -> Result<WalkState<T>> {
    let mut amplitudes: Vec<Option<T>> = vec![None; g.arc_count()];
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let (Some(v), Some(c), Some(x), None) = (it.next(), it.next(), it.next(), it.next()) else {
            return Err(Error::parse(lineno, "expected \"v c amplitude\""));
        };
        let v: usize = v.parse().map_err(|_| Error::parse(lineno, format!("bad vertex {v:?}")))?;
        let c: usize = c.parse().map_err(|_| Error::parse(lineno, format!("bad port {c:?}")))?;
        let x: T = x.parse().map_err(|_| Error::parse(lineno, format!("bad amplitude {x:?}")))?;
        if v >= g.vertex_count() || c >= g.degree(v) {
            return Err(Error::parse(lineno, format!("no arc ({v}, {c}) in graph")));
        }
        let slot = &mut amplitudes[g.arc(v, c)];
        if slot.is_some() {
            return Err(Error::parse(lineno, format!("arc ({v}, {c}) listed twice")));
        }
        *slot = Some(x);
    }
    let amplitudes = amplitudes
        .into_iter()
        .enumerate()
        .map(|(arc, x)| {
            x.ok_or_else(|| {
                let (v, c) = g.port_of(arc);
                Error::parse(0, format!("arc ({v}, {c}) missing"))
            })
        })
        .collect::<Result<Vec<T>>>()?;
    WalkState::from_amplitudes(g, amplitudes)
}
