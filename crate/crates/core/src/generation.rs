//! Random regular graphs and exhaustive small-order enumeration up to
//! isomorphism.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::graph6::format_graph6;

/// Largest order accepted by [`enumerate_regular`].
pub const ENUMERATION_CAP: usize = 10;
/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_CAP: usize = 12;
/// Pairing-model rejection is used up to this (effective) degree.
const PAIRING_MAX_DEGREE: usize = 4;
const PAIRING_ATTEMPTS: usize = 10_000;
/// Attempted switches per edge during burn-in.
const SWITCHES_PER_EDGE: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error("no {r}-regular graph on {n} vertices: n*r is odd")]
    Parity { n: usize, r: usize },
    #[error("degree {r} must be below the order {n}")]
    DegreeTooLarge { n: usize, r: usize },
    #[error("order {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

fn check_params(n: usize, r: usize) -> Result<(), GenerationError> {
    if r >= n.max(1) {
        return Err(GenerationError::DegreeTooLarge { n, r });
    }
    if (n * r) % 2 == 1 {
        return Err(GenerationError::Parity { n, r });
    }
    Ok(())
}

/// Sample a simple `r`-regular graph on `n` vertices, deterministically for a
/// given seed.
///
/// Works on whichever of the graph and its complement has the smaller degree
/// `d`. For `d <= 4` the pairing model is used with whole-sample rejection;
/// otherwise a circulant start is randomized by `100 * m` attempted
/// double-edge switches. Not certified uniform.
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph, GenerationError> {
    check_params(n, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = r.min(n - 1 - r);
    let flip = d != r;
    let g = if d <= PAIRING_MAX_DEGREE {
        (0..PAIRING_ATTEMPTS)
            .find_map(|_| pairing(n, d, &mut rng))
            .unwrap_or_else(|| switched(circulant(n, d), &mut rng))
    } else {
        switched(circulant(n, d), &mut rng)
    };
    Ok(if flip { g.complement() } else { g })
}

/// One pairing-model draw; `None` if it produced a loop or a repeated edge.
fn pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    points.shuffle(rng);
    let mut g = Graph::empty(n);
    for pair in points.chunks_exact(2) {
        let (u, v) = (pair[0], pair[1]);
        if u == v || g.has_edge(u, v) {
            return None;
        }
        g.insert_edge(u, v);
    }
    Some(g)
}

/// `i ~ i +- j` for `j <= d/2`, plus the antipodal chord when `d` is odd.
fn circulant(n: usize, d: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in 1..=d / 2 {
            g.insert_edge(i, (i + j) % n);
        }
        if d % 2 == 1 {
            g.insert_edge(i, (i + n / 2) % n);
        }
    }
    g
}

/// Degree-preserving double-edge switches: `ab, cd -> ac, bd`.
fn switched(mut g: Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = g.edges();
    let m = edges.len();
    if m < 2 {
        return g;
    }
    for _ in 0..SWITCHES_PER_EDGE * m {
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m);
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.random_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if a == c || b == d || g.has_edge(a, c) || g.has_edge(b, d) {
            continue;
        }
        g.remove_edge(a, b);
        g.remove_edge(c, d);
        g.insert_edge(a, c);
        g.insert_edge(b, d);
        edges[i] = (a.min(c), a.max(c));
        edges[j] = (b.min(d), b.max(d));
    }
    g
}

/// A `d`-regular bipartite graph with parts `0..h` and `h..2h`, deterministic
/// for a given seed. Circulant start plus part-preserving switches.
pub fn random_regular_bipartite(h: usize, d: usize, seed: u64) -> Result<Graph, GenerationError> {
    if d > h {
        return Err(GenerationError::DegreeTooLarge { n: h, r: d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(2 * h);
    for a in 0..h {
        for j in 0..d {
            g.insert_edge(a, h + (a + j) % h);
        }
    }
    let mut edges = g.edges();
    let m = edges.len();
    if m >= 2 {
        for _ in 0..SWITCHES_PER_EDGE * m {
            let i = rng.random_range(0..m);
            let j = rng.random_range(0..m);
            // edges are (a, b) with a < h <= b
            let ((a, b), (c, e)) = (edges[i], edges[j]);
            if a == c || b == e || g.has_edge(a, e) || g.has_edge(c, b) {
                continue;
            }
            g.remove_edge(a, b);
            g.remove_edge(c, e);
            g.insert_edge(a, e);
            g.insert_edge(c, b);
            edges[i] = (a, e);
            edges[j] = (c, b);
        }
    }
    Ok(g)
}

/// The cycle `0-1-...-(n-1)-0`.
pub fn cycle_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    if n >= 3 {
        for i in 0..n {
            g.insert_edge(i, (i + 1) % n);
        }
    }
    g
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::complete(a).disjoint_union(&Graph::complete(b)).complement()
}

/// Two copies of `K_h` on `0..h` and `h..2h`, joined by the matching `i ~ i+h`.
pub fn cliques_with_matching(h: usize) -> Graph {
    let mut g = Graph::complete(h).disjoint_union(&Graph::complete(h));
    for i in 0..h {
        g.insert_edge(i, i + h);
    }
    g
}

/// The Petersen graph: outer 5-cycle `0..5`, spokes `i ~ i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.insert_edge(i, (i + 1) % 5);
        g.insert_edge(i, i + 5);
        g.insert_edge(5 + i, 5 + (i + 2) % 5);
    }
    g
}

/// A smallest balloon for odd `r >= 3`: `K_{r+2}` minus two edges at vertex
/// 0 (to 1 and 2) and minus a perfect matching on `3..r+2`. Vertex 0 has
/// degree `r - 1`, every other vertex degree `r`.
pub fn balloon_block(r: usize) -> Graph {
    assert!(r >= 3 && r % 2 == 1, "balloons of this shape need odd r >= 3");
    let mut g = Graph::complete(r + 2);
    g.remove_edge(0, 1);
    g.remove_edge(0, 2);
    for v in (3..r + 2).step_by(2) {
        g.remove_edge(v, v + 1);
    }
    g
}

/// Two smallest balloons joined by a bridge between their deficient
/// vertices: an `r`-regular graph on `2(r+2)` vertices with one bridge and two
/// balloons. For `r = 3` this is two subdivided `K_4`s joined at the
/// subdivision vertices.
pub fn balloon_pair(r: usize) -> Graph {
    let b = balloon_block(r);
    let mut g = b.disjoint_union(&b);
    g.insert_edge(0, r + 2);
    g
}

/// Uniformly random relabeling of `g`, deterministic for a given seed.
pub fn shuffle_labels(g: &Graph, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(&mut rng);
    g.relabel(&perm)
}

/// Isomorphism-invariant encoding: the graph6 string of a canonical relabeling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn graph(&self) -> Graph {
        Graph::from_graph6(&self.0).expect("canonical forms are valid graph6")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GenerationError> {
    canonical_labeling(g).map(|(f, _)| f)
}

/// The canonical form together with a permutation `perm` such that
/// `g.relabel(&perm)` is the canonical graph.
///
/// Search over an individualization-refinement tree: cells are split by
/// neighbor counts into the other cells until stable, then the first smallest
/// non-singleton cell is branched on. A cell of mutual twins (clique or
/// independent set with identical outside neighborhoods) is only branched on
/// its first vertex, since any two of its members are exchanged by an
/// automorphism. The minimal leaf encoding wins.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>), GenerationError> {
    let n = g.order();
    if n > CANONICAL_CAP {
        return Err(GenerationError::CapExceeded {
            n,
            cap: CANONICAL_CAP,
        });
    }
    let mut best: Option<(String, Vec<usize>)> = None;
    let start = vec![(0..n).collect::<Vec<_>>()];
    search(g, start, &mut best);
    let (code, perm) = best.unwrap_or_else(|| (format_graph6(g), Vec::new()));
    Ok((CanonicalForm(code), perm))
}

type Partition = Vec<Vec<usize>>;

fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Partition = Vec::with_capacity(k);
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0usize; k];
                    for w in g.neighbors(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut part: Vec<usize> = keyed[start..i].iter().map(|&(_, v)| v).collect();
                    part.sort_unstable();
                    next.push(part);
                    start = i;
                }
            }
        }
        if next.len() == k {
            return next;
        }
        cells = next;
    }
}

fn is_twin_cell(g: &Graph, cell: &[usize]) -> bool {
    let first = cell[0];
    let inside = |u: usize| cell.iter().filter(|&&w| w != u && g.has_edge(u, w)).count();
    let clique = inside(first) == cell.len() - 1;
    let independent = inside(first) == 0;
    if !(clique || independent) {
        return false;
    }
    let outside = |u: usize| -> Vec<usize> { g.neighbors(u).filter(|w| !cell.contains(w)).collect() };
    let reference = outside(first);
    cell.iter().skip(1).all(|&u| {
        let c = inside(u);
        (if clique { c == cell.len() - 1 } else { c == 0 }) && outside(u) == reference
    })
}

fn search(g: &Graph, cells: Partition, best: &mut Option<(String, Vec<usize>)>) {
    let cells = refine(g, cells);
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    let Some(t) = target else {
        let mut perm = vec![0usize; g.order()];
        for (pos, c) in cells.iter().enumerate() {
            perm[c[0]] = pos;
        }
        let code = format_graph6(&g.relabel(&perm));
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, perm));
        }
        return;
    };
    let cell = &cells[t];
    let branches: &[usize] = if is_twin_cell(g, cell) { &cell[..1] } else { cell };
    for &v in branches {
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..t]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[t + 1..]);
        search(g, next, best);
    }
}

/// Every `r`-regular graph on `n <= 10` vertices up to isomorphism, each once,
/// in canonical labeling and sorted by canonical form.
///
/// Backtracking assigns each vertex its remaining neighbors among the later
/// vertices. Later vertices with identical current neighborhoods are
/// interchangeable, so only how many of each such class to take is branched
/// on. Surviving leaves are deduplicated by canonical form.
pub fn enumerate_regular(
    n: usize,
    r: usize,
    connected_only: bool,
) -> Result<Vec<Graph>, GenerationError> {
    if n > ENUMERATION_CAP {
        return Err(GenerationError::CapExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if n == 0 {
        return Ok(if r == 0 { vec![Graph::empty(0)] } else { vec![] });
    }
    check_params(n, r)?;
    let mut seen = BTreeSet::new();
    let mut g = Graph::empty(n);
    assign(&mut g, r, 0, &mut |leaf| {
        if connected_only && !leaf.is_connected() {
            return;
        }
        let form = canonical_form(leaf).expect("enumeration cap is below the canonical cap");
        seen.insert(form);
    });
    Ok(seen.iter().map(CanonicalForm::graph).collect())
}

fn assign(g: &mut Graph, r: usize, v: usize, emit: &mut dyn FnMut(&Graph)) {
    let n = g.order();
    if v == n {
        emit(g);
        return;
    }
    let need = r - g.degree(v);
    let candidates: Vec<usize> = (v + 1..n).filter(|&u| g.degree(u) < r).collect();
    if candidates.len() < need {
        return;
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &u in &candidates {
        match classes.iter_mut().find(|c| g.row(c[0]) == g.row(u)) {
            Some(c) => c.push(u),
            None => classes.push(vec![u]),
        }
    }
    let mut counts = vec![0usize; classes.len()];
    choose(g, r, v, &classes, &mut counts, 0, need, emit);
}

#[allow(clippy::too_many_arguments)]
fn choose(
    g: &mut Graph,
    r: usize,
    v: usize,
    classes: &[Vec<usize>],
    counts: &mut [usize],
    idx: usize,
    left: usize,
    emit: &mut dyn FnMut(&Graph),
) {
    if left == 0 {
        let picked: Vec<usize> = classes
            .iter()
            .zip(counts.iter())
            .flat_map(|(c, &k)| c[..k].iter().copied())
            .collect();
        for &u in &picked {
            g.insert_edge(v, u);
        }
        assign(g, r, v + 1, emit);
        for &u in &picked {
            g.remove_edge(v, u);
        }
        return;
    }
    if idx == classes.len() {
        return;
    }
    let room: usize = classes[idx..].iter().map(Vec::len).sum();
    if room < left {
        return;
    }
    for k in (0..=classes[idx].len().min(left)).rev() {
        counts[idx] = k;
        choose(g, r, v, classes, counts, idx + 1, left - k, emit);
    }
    counts[idx] = 0;
}
