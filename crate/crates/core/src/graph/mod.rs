//! Simple undirected graphs with port numbering.
//!
//! Every vertex `v` of degree `d_v` owns the ports `0..d_v`; port `c` points at
//! the `c`-th smallest neighbor. Ports are laid out contiguously so that the
//! arc `(v, c)` has the global index `offset(v) + c`, which is also the index
//! of its amplitude in a walk state.

mod components;
pub mod generate;
mod io;

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};
use std::ops::Range;

pub use components::{marked_components, MarkedComponent, MarkedSet};
pub use generate::Family;
pub use io::{read_edge_list, write_edge_list};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    sources: Vec<usize>,
    reverse: Vec<usize>,
    fingerprint: u64,
}

impl Graph {
    /// Builds a graph on `n` vertices from unordered edges.
    ///
    /// Edges may be given in either orientation and in any order; the port
    /// layout only depends on the edge set.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge { u: u.min(w[0]), v: u.max(w[0]) });
            }
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for list in &adjacency {
            offsets.push(offsets.last().unwrap() + list.len());
        }
        let arcs = *offsets.last().unwrap();
        let mut targets = Vec::with_capacity(arcs);
        let mut sources = Vec::with_capacity(arcs);
        for (v, list) in adjacency.iter().enumerate() {
            targets.extend_from_slice(list);
            sources.extend(std::iter::repeat(v).take(list.len()));
        }
        let mut reverse = vec![0; arcs];
        for (arc, (&u, &v)) in sources.iter().zip(&targets).enumerate() {
            // v's neighbor list is sorted, so the back-pointing port is a binary search away
            let port = adjacency[v].binary_search(&u).expect("adjacency is symmetric");
            reverse[arc] = offsets[v] + port;
        }

        let mut hasher = DefaultHasher::new();
        n.hash(&mut hasher);
        targets.hash(&mut hasher);
        offsets.hash(&mut hasher);
        let fingerprint = hasher.finish();

        Ok(Graph { n, offsets, targets, sources, reverse, fingerprint })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of undirected edges `m`.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Number of arcs, `2m`; also the dimension of a walk state.
    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Neighbors of `v` in port order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.arc_range(v)]
    }

    /// Global indices of the arcs leaving `v`.
    pub fn arc_range(&self, v: usize) -> Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn arc(&self, v: usize, port: usize) -> usize {
        debug_assert!(port < self.degree(v));
        self.offsets[v] + port
    }

    /// Splits a global arc index into `(vertex, port)`.
    pub fn port_of(&self, arc: usize) -> (usize, usize) {
        let v = self.sources[arc];
        (v, arc - self.offsets[v])
    }

    pub fn arc_source(&self, arc: usize) -> usize {
        self.sources[arc]
    }

    pub fn arc_target(&self, arc: usize) -> usize {
        self.targets[arc]
    }

    pub fn reverse(&self, arc: usize) -> usize {
        self.reverse[arc]
    }

    pub fn reverse_map(&self) -> &[usize] {
        &self.reverse
    }

    pub(crate) fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Arc from `u` towards `v`, if the edge exists.
    pub fn find_arc(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n {
            return None;
        }
        self.neighbors(u).binary_search(&v).ok().map(|port| self.offsets[u] + port)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.find_arc(u, v).is_some()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sources.iter().zip(&self.targets).filter(|(u, v)| u < v).map(|(&u, &v)| (u, v))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Identity used to tie walk states to the graph they were built on.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Hop distances from `source`; unreachable vertices are `usize::MAX`.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest eccentricity over all vertices, measured within each vertex's
    /// connected component. `O(n m)`.
    pub fn diameter(&self) -> usize {
        (0..self.n)
            .map(|s| self.bfs_distances(s).into_iter().filter(|&d| d != usize::MAX).max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_cycle() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn five_cycle_layout() {
        let g = five_cycle();
        assert_eq!(g.arc_count(), 10);
        assert_eq!(g.edge_count(), 5);
        for v in 0..5 {
            assert_eq!(g.degree(v), 2);
        }
        assert_eq!(g.neighbors(0), &[1, 4]);
        assert_eq!(g.neighbors(4), &[0, 3]);
        let a = g.find_arc(3, 4).unwrap();
        assert_eq!(g.port_of(a), (3, 1));
        assert_eq!(g.port_of(g.reverse(a)), (4, 1));
    }

    #[test]
    fn single_vertex_has_no_arcs() {
        let g = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(g.arc_count(), 0);
        assert_eq!(g.diameter(), 0);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 1), (0, 1)]),
            Err(Error::DuplicateEdge { u: 0, v: 1 })
        ));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge { u: 0, v: 1 })
        ));
        assert!(matches!(Graph::from_edges(3, &[(2, 2)]), Err(Error::SelfLoop { v: 2 })));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { u: 0, v: 3, n: 3 })
        ));
    }

    #[test]
    fn edge_order_does_not_matter() {
        let a = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 2)]).unwrap();
        let b = Graph::from_edges(4, &[(3, 2), (1, 0), (2, 1)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn diameter_of_cycle() {
        assert_eq!(five_cycle().diameter(), 2);
    }
}
