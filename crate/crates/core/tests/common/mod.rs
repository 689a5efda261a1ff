#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use qwalk::{Graph, MarkedSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<f64>>;

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let k = b.len();
    let p = b[0].len();
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] != 0.0 {
                for j in 0..p {
                    out[i][j] += a[i][l] * b[l][j];
                }
            }
        }
    }
    out
}

pub fn matvec(a: &Dense, x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum()).collect()
}

/// Q = I - 2 * sum over marked arcs |w,c><w,c|, built entry by entry.
pub fn dense_query(g: &Graph, marked: &MarkedSet) -> Dense {
    let n = g.arc_count();
    let mut q = vec![vec![0.0; n]; n];
    for v in 0..g.vertex_count() {
        for c in 0..g.degree(v) {
            let arc = g.arc(v, c);
            q[arc][arc] = if marked.contains(v) { -1.0 } else { 1.0 };
        }
    }
    q
}

/// Direct sum of the Grover blocks 2/d J - I.
pub fn dense_coin(g: &Graph) -> Dense {
    let n = g.arc_count();
    let mut c = vec![vec![0.0; n]; n];
    for v in 0..g.vertex_count() {
        let d = g.degree(v) as f64;
        for i in g.arc_range(v) {
            for j in g.arc_range(v) {
                c[i][j] = 2.0 / d - if i == j { 1.0 } else { 0.0 };
            }
        }
    }
    c
}

/// S|v,c> = |v',c'> where v' is the c-th neighbor of v and c' the port of v' back to v.
pub fn dense_shift(g: &Graph) -> Dense {
    let n = g.arc_count();
    let mut s = vec![vec![0.0; n]; n];
    for v in 0..g.vertex_count() {
        for (c, &w) in g.neighbors(v).iter().enumerate() {
            let back = g.neighbors(w).iter().position(|&x| x == v).unwrap();
            s[g.arc(w, back)][g.arc(v, c)] = 1.0;
        }
    }
    s
}

pub fn dense_step(g: &Graph, marked: &MarkedSet) -> Dense {
    matmul(&dense_shift(g), &matmul(&dense_coin(g), &dense_query(g, marked)))
}

/// Erdos-Renyi style host with at least one edge.
pub fn random_host(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::from_edges(n, &edges).unwrap();
        }
    }
}

pub fn random_unit(len: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

/// All vertex sets of size `1..=max_size` that induce a connected subgraph.
pub fn connected_subsets(g: &Graph, max_size: usize) -> Vec<Vec<usize>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut frontier: Vec<BTreeSet<usize>> = (0..g.vertex_count()).map(|v| BTreeSet::from([v])).collect();
    let mut out = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for set in frontier {
            let key: Vec<usize> = set.iter().copied().collect();
            if !seen.insert(key.clone()) {
                continue;
            }
            out.push(key);
            if set.len() == max_size {
                continue;
            }
            for &v in &set {
                for &w in g.neighbors(v) {
                    if !set.contains(&w) {
                        let mut grown = set.clone();
                        grown.insert(w);
                        next.push(grown);
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

/// Tries every 2-coloring of `vertices` against the edges they induce.
pub fn brute_force_bipartite(g: &Graph, vertices: &[usize]) -> bool {
    let k = vertices.len();
    let edges: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| g.has_edge(vertices[i], vertices[j]))
        .collect();
    (0u32..1 << k).any(|mask| edges.iter().all(|&(i, j)| (mask >> i & 1) != (mask >> j & 1)))
}
