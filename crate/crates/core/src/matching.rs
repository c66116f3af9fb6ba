//! Maximum matchings on general graphs (Edmonds' blossom search), bipartite
//! perfect matchings (Hopcroft–Karp), and the Tutte/Hall certificates that
//! witness when no perfect matching exists.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::Bits;
use crate::error::LimitExceeded;
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_TUTTE_LIMIT: usize = 22;
pub const DEFAULT_COUNT_LIMIT: usize = 16;
/// Width of the subset masks used by the exponential oracles.
const MASK_CAP: usize = 64;

const NONE: usize = usize::MAX;

/// A set of vertex-disjoint edges, stored as sorted `(u, v)` pairs with `u < v`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InvalidMatching {
    #[error("matching edge {0}-{1} is not an edge of the host graph")]
    MissingEdge(usize, usize),
    #[error("vertex {0} is covered by two matching edges")]
    Overlap(usize),
}

impl Matching {
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(edges: I) -> Self {
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    fn from_mates(mate: &[usize]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter(|&(v, &m)| m != NONE && v < m)
            .map(|(v, &m)| (v, m))
            .collect();
        Matching { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Whether the matching covers all of `0..n`.
    pub fn is_perfect_for(&self, n: usize) -> bool {
        2 * self.edges.len() == n && {
            let mut seen = Bits::new(n);
            self.edges.iter().all(|&(u, v)| {
                let fresh = u < n && v < n && !seen.contains(u) && !seen.contains(v);
                if fresh {
                    seen.insert(u);
                    seen.insert(v);
                }
                fresh
            })
        }
    }

    /// Check disjointness and edge membership against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), InvalidMatching> {
        let mut seen = Bits::new(g.order());
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(InvalidMatching::MissingEdge(u, v));
            }
            for x in [u, v] {
                if seen.contains(x) {
                    return Err(InvalidMatching::Overlap(x));
                }
                seen.insert(x);
            }
        }
        Ok(())
    }
}

/// A set `s` whose removal leaves more odd components than `|s|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteViolator {
    pub s: VertexSet,
    pub odd_count: usize,
}

impl TutteViolator {
    /// Recompute `odd(G - s)` and confirm it matches and exceeds `|s|`.
    pub fn verify(&self, g: &Graph) -> bool {
        if !self.s.within(g.order()) {
            return false;
        }
        let odd = g.components_after_deletion(&self.s).odd_count();
        odd == self.odd_count && odd > self.s.len()
    }

    /// `odd(G - s) - |s|`, a lower bound on the number of exposed vertices.
    pub fn deficiency(&self) -> usize {
        self.odd_count - self.s.len()
    }
}

/// Which side of the bipartition a Hall violator was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

/// A subset of one part whose neighborhood is strictly smaller than itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallViolator {
    pub side: Side,
    pub s: VertexSet,
    pub neighborhood: VertexSet,
}

impl HallViolator {
    pub fn verify(&self, g: &Graph) -> bool {
        if !self.s.within(g.order()) {
            return false;
        }
        let nbhd: VertexSet = self.s.iter().flat_map(|v| g.neighbors(v)).collect();
        nbhd == self.neighborhood && nbhd.len() < self.s.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BipartitionError {
    #[error("vertex {0} is in both parts")]
    Overlap(usize),
    #[error("vertex {0} is in neither part")]
    Uncovered(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("edge {0}-{1} lies inside one part")]
    IntraPartEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipartiteMatch {
    Perfect(Matching),
    Violator(HallViolator),
}

/// Edmonds' augmenting-path search with blossom contraction.
struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    even: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            even: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        self.parent.fill(NONE);
        self.even.fill(false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
    }

    fn is_root(&self, v: usize) -> bool {
        self.mate[v] == NONE && self.even[v]
    }

    /// Lowest common base of `a` and `b`, or `None` if they sit in different trees.
    fn lca(&self, mut a: usize, mut b: usize) -> Option<usize> {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return Some(b);
            }
            if self.mate[b] == NONE {
                return None;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn contract(&mut self, v: usize, to: usize, lca: usize) {
        self.in_blossom.fill(false);
        self.mark_path(v, lca, to);
        self.mark_path(to, lca, v);
        for i in 0..self.g.order() {
            if self.in_blossom[self.base[i]] {
                self.base[i] = lca;
                if !self.even[i] {
                    self.even[i] = true;
                    self.queue.push_back(i);
                }
            }
        }
    }

    /// Grow an alternating forest from `roots`. Returns the far end of an
    /// augmenting path when one is found.
    fn grow(&mut self, roots: &[usize]) -> Option<usize> {
        self.reset();
        for &r in roots {
            self.even[r] = true;
            self.queue.push_back(r);
        }
        while let Some(v) = self.queue.pop_front() {
            for to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                let to_even =
                    self.is_root(to) || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE);
                if to_even {
                    let lca = self
                        .lca(v, to)
                        .expect("even-even edge across trees only occurs when the matching is not maximum");
                    self.contract(v, to, lca);
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.even[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn solve(&mut self) {
        for root in 0..self.g.order() {
            if self.mate[root] == NONE {
                if let Some(end) = self.grow(&[root]) {
                    self.augment(end);
                }
            }
        }
    }

    /// After `solve`, the vertices missed by some maximum matching: exactly
    /// those reachable from an exposed vertex by an even alternating path.
    fn exposable(&mut self) -> Bits {
        let roots: Vec<usize> = (0..self.g.order()).filter(|&v| self.mate[v] == NONE).collect();
        let found = self.grow(&roots);
        debug_assert!(found.is_none());
        Bits::from_iter(self.g.order(), (0..self.g.order()).filter(|&v| self.even[v]))
    }
}

/// A maximum-cardinality matching. Roots and neighbors are scanned in
/// ascending label order, so the output is deterministic.
pub fn max_matching(g: &Graph) -> Matching {
    let mut b = Blossom::new(g);
    b.solve();
    Matching::from_mates(&b.mate)
}

/// The Tutte set of the Gallai–Edmonds decomposition for a maximum matching:
/// `A = N(D) \ D` where `D` is the set of vertices some maximum matching misses.
/// `odd(G - A) - |A|` equals the number of exposed vertices.
pub fn gallai_edmonds_barrier(g: &Graph) -> (Matching, VertexSet) {
    let mut b = Blossom::new(g);
    b.solve();
    let d = b.exposable();
    let mut a = Bits::new(g.order());
    for v in d.iter() {
        a.union_with(g.row(v));
    }
    a.difference_with(&d);
    (Matching::from_mates(&b.mate), VertexSet::from_bits(&a))
}

/// A perfect matching, or a Tutte set certifying that none exists.
pub fn perfect_matching(g: &Graph) -> Result<Matching, TutteViolator> {
    let n = g.order();
    if n % 2 == 1 {
        let odd = g.components().odd_count();
        return Err(TutteViolator {
            s: VertexSet::new(),
            odd_count: odd,
        });
    }
    let (m, barrier) = gallai_edmonds_barrier(g);
    if 2 * m.len() == n {
        return Ok(m);
    }
    let odd = g.components_after_deletion(&barrier).odd_count();
    debug_assert_eq!(odd - barrier.len(), n - 2 * m.len());
    Err(TutteViolator {
        s: barrier,
        odd_count: odd,
    })
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.order())
        .map(|v| g.neighbors(v).fold(0u64, |acc, w| acc | 1 << w))
        .collect()
}

fn odd_components_of(adj: &[u64], mut remaining: u64) -> usize {
    let mut odd = 0;
    while remaining != 0 {
        let start = remaining & remaining.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            next &= remaining & !comp;
            comp |= next;
            frontier = next;
        }
        remaining &= !comp;
        odd += (comp.count_ones() & 1) as usize;
    }
    odd
}

fn check_limit(n: usize, limit: usize) -> Result<(), LimitExceeded> {
    let limit = limit.min(MASK_CAP);
    if n > limit {
        Err(LimitExceeded { n, limit })
    } else {
        Ok(())
    }
}

/// Scan every subset by increasing size and return the first `S` with
/// `odd(G - S) > |S|`, so the result has minimum cardinality. Exponential in
/// `n`; refuses graphs above `limit_n`.
pub fn tutte_violator_bruteforce(
    g: &Graph,
    limit_n: usize,
) -> Result<Option<TutteViolator>, LimitExceeded> {
    let n = g.order();
    check_limit(n, limit_n)?;
    let adj = masks(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // odd(G - S) <= n - |S|, so no S with |S| >= n/2 can violate.
    for k in 0..=n.div_ceil(2) {
        if 2 * k >= n && k > 0 {
            break;
        }
        let mut s: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
        loop {
            let odd = odd_components_of(&adj, all & !s);
            if odd > k {
                let members = (0..n).filter(|&v| s >> v & 1 == 1).collect();
                return Ok(Some(TutteViolator {
                    s: members,
                    odd_count: odd,
                }));
            }
            if k == 0 {
                break;
            }
            // next k-subset in increasing numeric order (Gosper)
            let c = s & s.wrapping_neg();
            let r = s.wrapping_add(c);
            if r == 0 || r > all {
                break;
            }
            s = (((r ^ s) >> 2) / c) | r;
            if s > all {
                break;
            }
        }
    }
    Ok(None)
}

/// Exact number of perfect matchings by branching on the lowest uncovered vertex.
pub fn count_perfect_matchings(g: &Graph, limit_n: usize) -> Result<u128, LimitExceeded> {
    let n = g.order();
    check_limit(n, limit_n)?;
    fn go(adj: &[u64], free: u64) -> u128 {
        if free == 0 {
            return 1;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut opts = adj[v] & rest;
        let mut total = 0;
        while opts != 0 {
            let w = opts.trailing_zeros();
            opts &= opts - 1;
            total += go(adj, rest & !(1 << w));
        }
        total
    }
    if n % 2 == 1 {
        return Ok(0);
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(go(&masks(g), all))
}

fn check_bipartition(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<(), BipartitionError> {
    let n = g.order();
    let mut side = vec![None; n];
    for (part, tag) in [(a, Side::A), (b, Side::B)] {
        for v in part.iter() {
            if v >= n {
                return Err(BipartitionError::OutOfRange(v));
            }
            if side[v].is_some() {
                return Err(BipartitionError::Overlap(v));
            }
            side[v] = Some(tag);
        }
    }
    if let Some(v) = side.iter().position(Option::is_none) {
        return Err(BipartitionError::Uncovered(v));
    }
    for (u, v) in g.edges() {
        if side[u] == side[v] {
            return Err(BipartitionError::IntraPartEdge(u, v));
        }
    }
    Ok(())
}

/// Hopcroft–Karp over the given bipartition. On failure the violator is the
/// set of `A` vertices reachable by alternating paths from the first exposed
/// `A` vertex; its neighborhood is one smaller than itself.
pub fn bipartite_perfect_matching(
    g: &Graph,
    part_a: &VertexSet,
    part_b: &VertexSet,
) -> Result<BipartiteMatch, BipartitionError> {
    check_bipartition(g, part_a, part_b)?;
    let neighborhood = |s: &VertexSet| -> VertexSet { s.iter().flat_map(|v| g.neighbors(v)).collect() };
    if part_a.len() != part_b.len() {
        let (side, s) = if part_a.len() > part_b.len() {
            (Side::A, part_a.clone())
        } else {
            (Side::B, part_b.clone())
        };
        let nb = neighborhood(&s);
        return Ok(BipartiteMatch::Violator(HallViolator {
            side,
            s,
            neighborhood: nb,
        }));
    }

    let n = g.order();
    let left: Vec<usize> = part_a.iter().collect();
    let mut mate = vec![NONE; n];
    let mut dist = vec![usize::MAX; n];

    loop {
        // layer the left side by alternating BFS distance from free left vertices
        let mut queue = VecDeque::new();
        for &u in &left {
            if mate[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                match mate[w] {
                    NONE => reachable_free = true,
                    m if dist[m] == usize::MAX => {
                        dist[m] = dist[u] + 1;
                        queue.push_back(m);
                    }
                    _ => {}
                }
            }
        }
        if !reachable_free {
            break;
        }
        fn dfs(g: &Graph, u: usize, mate: &mut [usize], dist: &mut [usize]) -> bool {
            for w in g.neighbors(u) {
                let m = mate[w];
                if m == NONE || (dist[m] == dist[u] + 1 && dfs(g, m, mate, dist)) {
                    mate[u] = w;
                    mate[w] = u;
                    return true;
                }
            }
            dist[u] = usize::MAX;
            false
        }
        let mut grew = false;
        for &u in &left {
            if mate[u] == NONE && dfs(g, u, &mut mate, &mut dist) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }

    let Some(&free) = left.iter().find(|&&u| mate[u] == NONE) else {
        return Ok(BipartiteMatch::Perfect(Matching::from_mates(&mate)));
    };
    let mut in_s = Bits::new(n);
    let mut queue = VecDeque::from([free]);
    in_s.insert(free);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            let m = mate[w];
            debug_assert_ne!(m, NONE, "augmenting path left after Hopcroft-Karp");
            if m != NONE && !in_s.contains(m) {
                in_s.insert(m);
                queue.push_back(m);
            }
        }
    }
    let s = VertexSet::from_bits(&in_s);
    let nb = neighborhood(&s);
    Ok(BipartiteMatch::Violator(HallViolator {
        side: Side::A,
        s,
        neighborhood: nb,
    }))
}
