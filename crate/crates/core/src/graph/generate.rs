//! Graph families used by the experiments.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// A generator together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    Cycle { n: usize },
    Path { n: usize },
    Torus2d { rows: usize, cols: usize },
    Complete { n: usize },
    RandomRegular { n: usize, d: usize, seed: u64 },
}

impl Family {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            Family::Cycle { n } => cycle(n),
            Family::Path { n } => path(n),
            Family::Torus2d { rows, cols } => torus2d(rows, cols),
            Family::Complete { n } => complete(n),
            Family::RandomRegular { n, d, seed } => random_regular(n, d, seed),
        }
    }
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("cycle", format!("n must be at least 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::invalid("path", format!("n must be at least 2, got {n}")));
    }
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

/// Periodic `rows x cols` lattice, vertex `(r, c)` numbered `r * cols + c`.
pub fn torus2d(rows: usize, cols: usize) -> Result<Graph> {
    if rows < 3 || cols < 3 {
        return Err(Error::invalid(
            "torus2d",
            format!("rows and cols must both be at least 3, got {rows}x{cols}"),
        ));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            edges.push((id(r, c), id(r, (c + 1) % cols)));
            edges.push((id(r, c), id((r + 1) % rows, c)));
        }
    }
    Graph::from_edges(rows * cols, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::invalid("complete", format!("n must be at least 2, got {n}")));
    }
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges)
}

/// Uniformly paired `d`-regular graph on `n` vertices, deterministic in `seed`.
///
/// Points are paired one edge at a time, only ever joining two distinct,
/// not-yet-adjacent vertices; a dead end restarts the pairing.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n {
        return Err(Error::invalid("random_regular", format!("d must be below n, got d={d}, n={n}")));
    }
    if (n * d) % 2 != 0 {
        return Err(Error::invalid("random_regular", format!("n*d must be even, got {n}*{d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return Graph::from_edges(n, &edges);
        }
    }
}

/// `k` edges of `g`, no two sharing or neighbouring a vertex, so they form
/// `k` separate marked components. Returns the `2k` endpoints, sorted.
///
/// Edges are tried in a seeded random order and kept greedily.
pub fn separated_pairs(g: &Graph, k: usize, seed: u64) -> Result<Vec<usize>> {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut taken = vec![false; g.vertex_count()];
    let mut out = Vec::with_capacity(2 * k);
    for (u, v) in edges {
        if out.len() == 2 * k {
            break;
        }
        let blocked = |x: usize| taken[x] || g.neighbors(x).iter().any(|&w| taken[w]);
        if !blocked(u) && !blocked(v) {
            taken[u] = true;
            taken[v] = true;
            out.extend([u, v]);
        }
    }
    if out.len() < 2 * k {
        return Err(Error::invalid(
            "pairs",
            format!("found only {} separated pairs, {k} requested", out.len() / 2),
        ));
    }
    out.sort_unstable();
    Ok(out)
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    let mut edges = Vec::with_capacity(n * d / 2);
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(n * d / 2);
    let key = |u: usize, v: usize| (u.min(v), u.max(v));

    while !points.is_empty() {
        let mut chosen = None;
        for _ in 0..64 {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            let (u, v) = (points[i], points[j]);
            if u != v && !seen.contains(&key(u, v)) {
                chosen = Some((i, j));
                break;
            }
        }
        if chosen.is_none() {
            // few points left: pick uniformly among the remaining admissible pairs
            let admissible: Vec<(usize, usize)> = (0..points.len())
                .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| points[i] != points[j] && !seen.contains(&key(points[i], points[j])))
                .collect();
            if admissible.is_empty() {
                return None;
            }
            chosen = Some(admissible[rng.gen_range(0..admissible.len())]);
        }
        let (i, j) = chosen.unwrap();
        let (u, v) = (points[i], points[j]);
        seen.insert(key(u, v));
        edges.push(key(u, v));
        let (hi, lo) = (i.max(j), i.min(j));
        points.swap_remove(hi);
        points.swap_remove(lo);
    }
    Some(edges)
}
