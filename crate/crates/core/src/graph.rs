//! Simple undirected graphs on dense labels `0..n`, stored as bitset rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::Bits;
use crate::error::{GraphError, NotRegular};
use crate::matching::Matching;

/// A set of vertices, kept sorted and duplicate free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_bits(&self, n: usize) -> Bits {
        Bits::from_iter(n, self.iter().filter(|&v| v < n))
    }

    pub(crate) fn from_bits(bits: &Bits) -> Self {
        VertexSet(bits.iter().collect())
    }

    /// Whether every member lies in `0..n`.
    pub fn within(&self, n: usize) -> bool {
        self.0.last().is_none_or(|&v| v < n)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

/// Connected components of an induced subgraph, in order of their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPartition {
    pub blocks: Vec<VertexSet>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.blocks[i].len() % 2 == 1
    }

    pub fn odd_blocks(&self) -> impl Iterator<Item = &VertexSet> {
        self.blocks.iter().filter(|b| b.len() % 2 == 1)
    }

    pub fn odd_count(&self) -> usize {
        self.odd_blocks().count()
    }

    /// Union of all block sizes.
    pub fn covered(&self) -> usize {
        self.blocks.iter().map(VertexSet::len).sum()
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<Bits>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![Bits::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    /// Build from an edge list. Repeated pairs (in either orientation) collapse.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    /// Copy of `self` without the listed edges. Absent edges are ignored.
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(u, v) in edges {
            if u < g.order() && v < g.order() && u != v {
                g.remove_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bits::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.rows[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(Bits::count).collect()
    }

    pub fn min_degree(&self) -> Option<(usize, usize)> {
        (0..self.order()).map(|v| (v, self.degree(v))).min_by_key(|&(_, d)| d)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    pub fn row(&self, v: usize) -> &Bits {
        &self.rows[v]
    }

    /// All edges `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            out.extend(self.rows[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Edge `uv` is present iff `u != v` and `uv` is absent here.
    pub fn complement(&self) -> Graph {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut c = row.clone();
                c.complement();
                c.remove(v);
                c
            })
            .collect();
        Graph { rows }
    }

    /// The common degree, or a pair of vertices with unequal degrees.
    pub fn regularity(&self) -> Result<usize, NotRegular> {
        let degs = self.degrees();
        let Some(&d0) = degs.first() else {
            return Ok(0);
        };
        match degs.iter().position(|&d| d != d0) {
            None => Ok(d0),
            Some(v) => Err(NotRegular {
                u: 0,
                deg_u: d0,
                v,
                deg_v: degs[v],
            }),
        }
    }

    /// Components of the subgraph induced on `V \ s`.
    pub fn components_after_deletion(&self, s: &VertexSet) -> ComponentPartition {
        let n = self.order();
        let mut remaining = Bits::full(n);
        for v in s.iter().filter(|&v| v < n) {
            remaining.remove(v);
        }
        self.components_within(remaining)
    }

    pub fn components(&self) -> ComponentPartition {
        self.components_within(Bits::full(self.order()))
    }

    pub(crate) fn components_within(&self, mut remaining: Bits) -> ComponentPartition {
        let n = self.order();
        let mut blocks = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = Bits::new(n);
            let mut frontier = vec![start];
            comp.insert(start);
            remaining.remove(start);
            while let Some(u) = frontier.pop() {
                let next = self.rows[u].intersection(&remaining);
                for w in next.iter() {
                    comp.insert(w);
                    frontier.push(w);
                }
                remaining.difference_with(&next);
            }
            blocks.push(VertexSet::from_bits(&comp));
        }
        ComponentPartition { blocks }
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The graph with the matching's edges added. Every matching edge must be
    /// absent from `self` and no vertex may be covered twice.
    pub fn add_matching(&self, m: &Matching) -> Result<Graph, GraphError> {
        let n = self.order();
        let mut covered = Bits::new(n);
        let mut g = self.clone();
        for &(u, v) in m.edges() {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if self.has_edge(u, v) {
                return Err(GraphError::EdgePresent(u, v));
            }
            for x in [u, v] {
                if covered.contains(x) {
                    return Err(GraphError::OverlappingMatching(x));
                }
                covered.insert(x);
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Whether every edge of `self` is an edge of `other` (same order).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.order() == other.order()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.intersect_count(b) == a.count())
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.order());
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v]);
        }
        g
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.order();
        let mut g = Graph::empty(off + other.order());
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + off, v + off);
        }
        g
    }

    /// Subgraph induced on `s`, relabeled to `0..s.len()` in ascending order.
    pub fn induced(&self, s: &VertexSet) -> Graph {
        let verts = s.as_slice();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.insert_edge(i, j);
                }
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}
