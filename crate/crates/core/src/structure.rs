//! Edge-connectivity structure (bridges, 2-edge-connected blocks, balloons),
//! exact clique search, and the complement-based biclique and bipartiteness
//! tests.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::Bits;
use crate::error::NotRegular;
use crate::graph::{Graph, VertexSet};

pub type Rational = Ratio<i64>;

/// Bridges, the 2-edge-connected blocks they separate, and the balloons:
/// blocks incident to exactly one bridge. A lone vertex counts as a block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalloonReport {
    pub bridges: Vec<(usize, usize)>,
    pub blocks: Vec<VertexSet>,
    pub balloons: Vec<VertexSet>,
    pub b: usize,
}

impl BalloonReport {
    /// Index of the block containing each vertex.
    pub fn block_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, blk) in self.blocks.iter().enumerate() {
            for v in blk.iter() {
                out[v] = i;
            }
        }
        out
    }
}

/// Bridges by lowpoint DFS, as sorted `(u, v)` pairs with `u < v`.
pub fn bridges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut clock = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, remaining neighbors)
        let mut stack: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        stack.push((root, usize::MAX, g.neighbors(root).collect()));
        while let Some((v, parent, pending)) = stack.last_mut() {
            let (v, parent) = (*v, *parent);
            if let Some(w) = pending.pop() {
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, v, g.neighbors(w).collect()));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push((parent.min(v), parent.max(v)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn balloons(g: &Graph) -> BalloonReport {
    let bridges = bridges(g);
    let blocks = g.without_edges(&bridges).components().blocks;
    let mut report = BalloonReport {
        bridges,
        blocks,
        balloons: Vec::new(),
        b: 0,
    };
    let block_of = report.block_of(g.order());
    let mut incident = vec![0usize; report.blocks.len()];
    for &(u, v) in &report.bridges {
        incident[block_of[u]] += 1;
        incident[block_of[v]] += 1;
    }
    report.balloons = report
        .blocks
        .iter()
        .zip(&incident)
        .filter(|(_, &c)| c == 1)
        .map(|(blk, _)| blk.clone())
        .collect();
    report.b = report.balloons.len();
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalloonBoundError {
    #[error(transparent)]
    NotRegular(#[from] NotRegular),
    #[error("the balloon bound needs regularity at least 2, got {0}")]
    DegreeTooSmall(usize),
}

/// Both sides of `odd(G - S) - |S| <= c * b(G)`.
///
/// `rhs` uses the coefficient `r/(r-1)`; `rhs_alt` uses `(r-1)/r`, the
/// coefficient an edge count over the odd components actually yields. They
/// are reported side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalloonBound {
    pub r: usize,
    pub b: usize,
    pub odd_components: usize,
    /// Every odd component of `G - S` sends exactly one or at least `r` edges to `S`.
    pub applicable: bool,
    pub holds: bool,
    pub holds_alt: bool,
    pub lhs: Rational,
    pub rhs: Rational,
    pub rhs_alt: Rational,
}

pub fn check_balloon_bound(g: &Graph, s: &VertexSet) -> Result<BalloonBound, BalloonBoundError> {
    let r = g.regularity()?;
    if r < 2 {
        return Err(BalloonBoundError::DegreeTooSmall(r));
    }
    let n = g.order();
    let s_bits = s.to_bits(n);
    let parts = g.components_after_deletion(s);
    let applicable = parts.odd_blocks().all(|blk| {
        let out: usize = blk.iter().map(|v| g.row(v).intersect_count(&s_bits)).sum();
        out == 1 || out >= r
    });
    let b = balloons(g).b;
    let odd = parts.odd_count();
    let lhs = Rational::from_integer(odd as i64 - s.len() as i64);
    let (ri, bi) = (r as i64, b as i64);
    let rhs = Rational::new(ri * bi, ri - 1);
    let rhs_alt = Rational::new((ri - 1) * bi, ri);
    Ok(BalloonBound {
        r,
        b,
        odd_components: odd,
        applicable,
        holds: lhs <= rhs,
        holds_alt: lhs <= rhs_alt,
        lhs,
        rhs,
        rhs_alt,
    })
}

/// A clique on `k` vertices, if one exists. Exact branch and bound with a
/// greedy-coloring bound; exponential in the worst case, intended for
/// `n <= 40`.
pub fn find_clique(g: &Graph, k: usize) -> Option<VertexSet> {
    let n = g.order();
    if k == 0 {
        return Some(VertexSet::new());
    }
    if k > n {
        return None;
    }
    let mut current = Vec::with_capacity(k);
    if expand(g, k, &mut current, Bits::full(n)) {
        Some(current.into_iter().collect())
    } else {
        None
    }
}

/// Greedy sequential coloring of `p`; returns vertices in nondecreasing color order.
fn color_order(g: &Graph, p: &Bits) -> Vec<(usize, usize)> {
    let mut uncolored = p.clone();
    let mut out = Vec::with_capacity(p.count());
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            uncolored.remove(v);
            q.difference_with(g.row(v));
            out.push((v, color));
        }
    }
    out
}

fn expand(g: &Graph, k: usize, current: &mut Vec<usize>, mut p: Bits) -> bool {
    let order = color_order(g, &p);
    for &(v, color) in order.iter().rev() {
        if current.len() + color < k {
            return false;
        }
        current.push(v);
        if current.len() == k {
            return true;
        }
        let next = p.intersection(g.row(v));
        if expand(g, k, current, next) {
            return true;
        }
        current.pop();
        p.remove(v);
    }
    false
}

/// A bipartition `(part_a, part_b)` of `V` with every cross pair an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueWitness {
    pub part_a: VertexSet,
    pub part_b: VertexSet,
}

impl BicliqueWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.order();
        let covered = self.part_a.len() + self.part_b.len() == n
            && self.part_a.iter().chain(self.part_b.iter()).collect::<VertexSet>().len() == n
            && self.part_a.within(n)
            && self.part_b.within(n);
        covered
            && !self.part_a.is_empty()
            && !self.part_b.is_empty()
            && self
                .part_a
                .iter()
                .all(|a| self.part_b.iter().all(|b| g.has_edge(a, b)))
    }
}

/// A spanning complete bipartite subgraph of `g`. These exist exactly when the
/// complement is disconnected; the parts are unions of complement components.
/// With `require_odd_parts` both parts must have odd size.
pub fn spanning_biclique(g: &Graph, require_odd_parts: bool) -> Option<BicliqueWitness> {
    let n = g.order();
    if n < 2 {
        return None;
    }
    let comps = g.complement().components().blocks;
    if comps.len() < 2 {
        return None;
    }
    let pick = if require_odd_parts {
        if n % 2 == 1 {
            return None;
        }
        comps.iter().position(|c| c.len() % 2 == 1)?
    } else {
        0
    };
    let part_a = comps[pick].clone();
    let part_b = comps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pick)
        .flat_map(|(_, c)| c.iter())
        .collect();
    Some(BicliqueWitness { part_a, part_b })
}

/// Outcome of 2-coloring the complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComplementBipartite {
    Bipartite { part_a: VertexSet, part_b: VertexSet },
    /// A cycle of odd length in the complement, as a vertex sequence.
    OddCycle(Vec<usize>),
}

impl ComplementBipartite {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, ComplementBipartite::Bipartite { .. })
    }
}

/// BFS 2-coloring of `g`. Each component's smallest vertex goes to part A.
pub fn two_coloring(g: &Graph) -> ComplementBipartite {
    let n = g.order();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return ComplementBipartite::OddCycle(odd_cycle(u, w, &parent, &depth));
                }
            }
        }
    }
    let part_a = (0..n).filter(|&v| color[v] == 0).collect();
    let part_b = (0..n).filter(|&v| color[v] == 1).collect();
    ComplementBipartite::Bipartite { part_a, part_b }
}

/// Close the BFS-tree paths from `u` and `w` at their common ancestor.
fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// Whether the complement of `g` is bipartite, with the coloring or an odd cycle.
pub fn complement_bipartite_check(g: &Graph) -> ComplementBipartite {
    two_coloring(&g.complement())
}

/// `(k+2)r - k^2 + 2 > 3r + 7`, evaluated exactly.
pub fn check_ineq_kr(r: impl Into<Rational>, k: impl Into<Rational>) -> bool {
    let (r, k) = (r.into(), k.into());
    let two = Rational::from_integer(2);
    (k + two) * r - k * k + two > Rational::from_integer(3) * r + Rational::from_integer(7)
}

/// `x(r - x + 1) >= r`, evaluated exactly.
pub fn check_ineq_x(r: impl Into<Rational>, x: impl Into<Rational>) -> bool {
    let (r, x) = (r.into(), x.into());
    x * (r - x + Rational::from_integer(1)) >= r
}
