use std::collections::VecDeque;

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// Set of marked vertices, stored both as a sorted list and as a vertex mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSet {
    vertices: Vec<usize>,
    mask: Vec<bool>,
}

impl MarkedSet {
    pub fn new(g: &Graph, vertices: impl IntoIterator<Item = usize>) -> Result<MarkedSet> {
        let n = g.vertex_count();
        let mut mask = vec![false; n];
        for v in vertices {
            if v >= n {
                return Err(Error::UnknownVertex { v, n });
            }
            mask[v] = true;
        }
        let vertices = (0..n).filter(|&v| mask[v]).collect();
        Ok(MarkedSet { vertices, mask })
    }

    pub fn empty(g: &Graph) -> MarkedSet {
        MarkedSet { vertices: Vec::new(), mask: vec![false; g.vertex_count()] }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub(crate) fn mask(&self) -> &[bool] {
        &self.mask
    }
}

/// One connected component of the subgraph induced by the marked vertices.
///
/// `d_in[k]` and `d_out[k]` belong to `vertices[k]`: the number of edges to
/// marked and to unmarked neighbors respectively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkedComponent {
    vertices: Vec<usize>,
    internal_edges: Vec<(usize, usize)>,
    d_in: Vec<usize>,
    d_out: Vec<usize>,
    total_out: usize,
    bipartition: Option<(Vec<usize>, Vec<usize>)>,
    host_edges: usize,
}

impl MarkedComponent {
    /// Sorted vertex ids.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Marked-marked edges `(i, j)` with `i < j`, sorted.
    pub fn internal_edges(&self) -> &[(usize, usize)] {
        &self.internal_edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.index_of(v).is_some()
    }

    /// Position of `v` in [`vertices`](Self::vertices).
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn d_in(&self) -> &[usize] {
        &self.d_in
    }

    pub fn d_out(&self) -> &[usize] {
        &self.d_out
    }

    pub fn d_out_of(&self, v: usize) -> Option<usize> {
        self.index_of(v).map(|k| self.d_out[k])
    }

    pub fn d_in_of(&self, v: usize) -> Option<usize> {
        self.index_of(v).map(|k| self.d_in[k])
    }

    /// Sum of `d_out` over the component.
    pub fn total_out(&self) -> usize {
        self.total_out
    }

    /// The two color classes when the component is bipartite. The first side
    /// holds the smallest vertex; a lone vertex gives an empty second side.
    pub fn bipartition(&self) -> Option<(&[usize], &[usize])> {
        self.bipartition.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    /// `d_out` summed over each bipartition side.
    pub fn side_sums(&self) -> Option<(usize, usize)> {
        let sum = |side: &[usize]| side.iter().map(|&v| self.d_out_of(v).unwrap()).sum();
        self.bipartition().map(|(a, b)| (sum(a), sum(b)))
    }

    /// Edge count `m` of the host graph.
    pub fn host_edges(&self) -> usize {
        self.host_edges
    }
}

/// Splits the marked set into connected components of the marked-induced
/// subgraph, ordered by smallest vertex.
pub fn marked_components(g: &Graph, marked: &MarkedSet) -> Vec<MarkedComponent> {
    let n = g.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();

    for &root in marked.vertices() {
        if color[root].is_some() {
            continue;
        }
        let mut members = Vec::new();
        let mut bipartite = true;
        color[root] = Some(false);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            members.push(u);
            let side = color[u].unwrap();
            for &w in g.neighbors(u) {
                if !marked.contains(w) {
                    continue;
                }
                match color[w] {
                    None => {
                        color[w] = Some(!side);
                        queue.push_back(w);
                    }
                    Some(c) if c == side => bipartite = false,
                    Some(_) => {}
                }
            }
        }
        members.sort_unstable();

        let mut internal_edges = Vec::new();
        let mut d_in = Vec::with_capacity(members.len());
        let mut d_out = Vec::with_capacity(members.len());
        for &u in &members {
            let inside = g.neighbors(u).iter().filter(|&&w| marked.contains(w)).count();
            d_in.push(inside);
            d_out.push(g.degree(u) - inside);
            internal_edges.extend(
                g.neighbors(u).iter().filter(|&&w| w > u && marked.contains(w)).map(|&w| (u, w)),
            );
        }
        let bipartition = bipartite.then(|| {
            let root_side = color[members[0]].unwrap();
            members.iter().partition(|&&v| color[v] == Some(root_side))
        });

        components.push(MarkedComponent {
            total_out: d_out.iter().sum(),
            vertices: members,
            internal_edges,
            d_in,
            d_out,
            bipartition,
            host_edges: g.edge_count(),
        });
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn five_cycle_pair() {
        let g = generate::cycle(5).unwrap();
        let marked = MarkedSet::new(&g, [3, 4]).unwrap();
        let comps = marked_components(&g, &marked);
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!(c.internal_edges(), &[(3, 4)]);
        assert_eq!(c.d_out(), &[1, 1]);
        assert_eq!(c.d_in(), &[1, 1]);
        assert_eq!(c.total_out(), 2);
        assert_eq!(c.bipartition(), Some((&[3][..], &[4][..])));
        assert_eq!(c.side_sums(), Some((1, 1)));
    }

    #[test]
    fn empty_marked_set() {
        let g = generate::cycle(5).unwrap();
        assert!(marked_components(&g, &MarkedSet::empty(&g)).is_empty());
    }

    #[test]
    fn torus_block() {
        // row-major 4x4 torus; the block {(1,1),(1,2),(2,1),(2,2)} is {5,6,9,10}
        let g = generate::torus2d(4, 4).unwrap();
        let marked = MarkedSet::new(&g, [5, 6, 9, 10]).unwrap();
        let comps = marked_components(&g, &marked);
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!(c.internal_edges(), &[(5, 6), (5, 9), (6, 10), (9, 10)]);
        assert_eq!(c.d_out(), &[2, 2, 2, 2]);
        assert_eq!(c.total_out(), 8);
        assert_eq!(c.bipartition(), Some((&[5, 10][..], &[6, 9][..])));
    }

    #[test]
    fn triangle_is_not_bipartite() {
        let g = generate::complete(5).unwrap();
        let marked = MarkedSet::new(&g, [0, 1, 2]).unwrap();
        let comps = marked_components(&g, &marked);
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].is_bipartite());
        assert_eq!(comps[0].total_out(), 6);
    }

    #[test]
    fn lone_vertex_has_empty_side() {
        let g = generate::torus2d(3, 3).unwrap();
        let marked = MarkedSet::new(&g, [4]).unwrap();
        let comps = marked_components(&g, &marked);
        assert_eq!(comps[0].side_sums(), Some((4, 0)));
    }

    #[test]
    fn unknown_marked_vertex() {
        let g = generate::cycle(5).unwrap();
        assert!(matches!(MarkedSet::new(&g, [5]), Err(Error::UnknownVertex { v: 5, n: 5 })));
    }
}
