//! Raising the regularity of a graph by adding perfect matchings of its
//! complement, and classifying which closed-form guarantee applies.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::Bits;
use crate::error::NotRegular;
use crate::graph::{Graph, VertexSet};
use crate::matching::{perfect_matching, Matching, TutteViolator};
use crate::structure::{find_clique, spanning_biclique, BicliqueWitness};

/// A Hamiltonian cycle as a vertex order; the last vertex is adjacent to the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianCycle {
    pub order: Vec<usize>,
}

impl HamiltonianCycle {
    /// Every vertex exactly once and cyclically consecutive vertices adjacent.
    pub fn validate(&self, g: &Graph) -> bool {
        let n = g.order();
        if self.order.len() != n || n < 3 {
            return false;
        }
        let mut seen = Bits::new(n);
        for &v in &self.order {
            if v >= n || seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        (0..n).all(|i| g.has_edge(self.order[i], self.order[(i + 1) % n]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiracError {
    #[error("a Hamiltonian cycle needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("vertex {vertex} has degree {degree}, below n/2 for n = {n}")]
    DegreeTooLow { vertex: usize, degree: usize, n: usize },
}

/// Hamiltonian cycle of a graph with minimum degree at least `n/2`.
///
/// Grows a path until neither end has an outside neighbor, closes it through a
/// crossing pair `v0 ~ v[i+1]`, `vk ~ v[i]` (one exists by pigeonhole on the
/// two end neighborhoods), and, while the cycle misses vertices, opens it at a
/// vertex with an outside neighbor and repeats. Chords and outside vertices
/// are taken in ascending label order.
pub fn dirac_cycle(g: &Graph) -> Result<HamiltonianCycle, DiracError> {
    let n = g.order();
    if n < 3 {
        return Err(DiracError::TooSmall(n));
    }
    if let Some((vertex, degree)) = g.min_degree() {
        if 2 * degree < n {
            return Err(DiracError::DegreeTooLow {
                vertex,
                degree,
                n,
            });
        }
    }

    let mut path: VecDeque<usize> = VecDeque::from([0]);
    let mut on_path = Bits::new(n);
    on_path.insert(0);
    loop {
        loop {
            let back = *path.back().expect("path is never empty");
            if let Some(w) = g.neighbors(back).find(|&w| !on_path.contains(w)) {
                path.push_back(w);
                on_path.insert(w);
                continue;
            }
            let front = path[0];
            if let Some(w) = g.neighbors(front).find(|&w| !on_path.contains(w)) {
                path.push_front(w);
                on_path.insert(w);
                continue;
            }
            break;
        }

        let p: Vec<usize> = path.iter().copied().collect();
        let k = p.len() - 1;
        let cycle = if g.has_edge(p[0], p[k]) {
            p
        } else {
            let i = (0..k)
                .find(|&i| g.has_edge(p[0], p[i + 1]) && g.has_edge(p[k], p[i]))
                .expect("minimum degree n/2 forces a crossing chord on a maximal path");
            let mut c: Vec<usize> = p[..=i].to_vec();
            c.extend(p[i + 1..].iter().rev());
            c
        };

        if cycle.len() == n {
            return Ok(HamiltonianCycle { order: cycle });
        }
        // minimum degree n/2 implies connectivity, so some outside vertex touches the cycle
        let (w, j) = (0..n)
            .filter(|&w| !on_path.contains(w))
            .find_map(|w| {
                g.neighbors(w)
                    .filter(|&c| on_path.contains(c))
                    .min()
                    .map(|c| (w, cycle.iter().position(|&x| x == c).unwrap()))
            })
            .expect("graph with minimum degree n/2 is connected");
        path.clear();
        path.push_back(w);
        path.extend(cycle[j..].iter().chain(&cycle[..j]));
        on_path.insert(w);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cycle of odd length {0} has no perfect matching of alternate edges")]
pub struct OddCycleLength(pub usize);

/// Alternate edges `c0c1, c2c3, ...` of an even cycle.
pub fn cycle_to_matching(c: &HamiltonianCycle) -> Result<Matching, OddCycleLength> {
    if c.order.len() % 2 == 1 {
        return Err(OddCycleLength(c.order.len()));
    }
    Ok(Matching::from_edges(c.order.chunks_exact(2).map(|p| (p[0], p[1]))))
}

/// How `extend_once` finds the perfect matching of the complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Dirac when `r < n/2`, otherwise blossom.
    #[default]
    Auto,
    Blossom,
    /// Hamiltonian cycle of the complement; needs `r < n/2`.
    Dirac,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "blossom" => Ok(Strategy::Blossom),
            "dirac" => Ok(Strategy::Dirac),
            other => Err(format!("unknown strategy `{other}` (auto, blossom, dirac)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::Blossom => "blossom",
            Strategy::Dirac => "dirac",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error(transparent)]
    NotRegular(#[from] NotRegular),
    #[error("order {0} is odd; no perfect matching can exist")]
    OddOrder(usize),
    #[error("{r}-regular graph on {n} vertices cannot gain another degree")]
    Saturated { n: usize, r: usize },
    #[error("dirac strategy needs r < n/2 and n >= 4, got r = {r}, n = {n}")]
    DiracNotApplicable { n: usize, r: usize },
    #[error("complement has no perfect matching")]
    NoMatching(TutteViolator),
}

/// One successful extension step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub graph: Graph,
    pub matching: Matching,
    /// The complement cycle the matching was cut from, for the Dirac route.
    pub cycle: Option<HamiltonianCycle>,
}

fn dirac_applies(n: usize, r: usize) -> bool {
    n >= 4 && 2 * r < n
}

/// Add a perfect matching of the complement, turning an `r`-regular graph
/// into an `(r+1)`-regular supergraph on the same vertices.
pub fn extend_once(g: &Graph, strategy: Strategy) -> Result<Extension, ExtendError> {
    let r = g.regularity()?;
    let n = g.order();
    if n % 2 == 1 {
        return Err(ExtendError::OddOrder(n));
    }
    if r + 2 > n {
        return Err(ExtendError::Saturated { n, r });
    }
    let complement = g.complement();
    let use_dirac = match strategy {
        Strategy::Dirac if !dirac_applies(n, r) => {
            return Err(ExtendError::DiracNotApplicable { n, r })
        }
        Strategy::Dirac => true,
        Strategy::Auto => dirac_applies(n, r),
        Strategy::Blossom => false,
    };
    let (matching, cycle) = if use_dirac {
        let cycle = dirac_cycle(&complement).expect("complement degree n-1-r >= n/2");
        let m = cycle_to_matching(&cycle).expect("n is even");
        (m, Some(cycle))
    } else {
        (perfect_matching(&complement).map_err(ExtendError::NoMatching)?, None)
    };
    let graph = g
        .add_matching(&matching)
        .expect("matching is drawn from the complement");
    Ok(Extension {
        graph,
        matching,
        cycle,
    })
}

/// The matchings added on the way from `start_r` to `target_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionTrace {
    pub start_r: usize,
    pub target_r: usize,
    pub steps: Vec<Matching>,
    pub final_graph: Graph,
}

impl ExtensionTrace {
    /// Replay the steps from `start` and check every intermediate regularity.
    pub fn replay(&self, start: &Graph) -> Option<Vec<Graph>> {
        let mut graphs = vec![start.clone()];
        let mut cur = start.clone();
        for (i, m) in self.steps.iter().enumerate() {
            if !m.is_perfect_for(cur.order()) {
                return None;
            }
            cur = cur.add_matching(m).ok()?;
            if cur.regularity().ok()? != self.start_r + i + 1 {
                return None;
            }
            graphs.push(cur.clone());
        }
        (cur == self.final_graph && cur.regularity().ok()? == self.target_r).then_some(graphs)
    }
}

/// Where the deepest branch of an `extend_to` search got stuck.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFailure {
    pub start_r: usize,
    pub target_r: usize,
    /// Regularity of `stuck_graph`.
    pub reached_r: usize,
    /// Matchings leading from the start graph to `stuck_graph`.
    pub steps: Vec<Matching>,
    pub stuck_graph: Graph,
    /// Certificate that the complement of `stuck_graph` has no perfect matching.
    pub violator: TutteViolator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendToError {
    #[error(transparent)]
    NotRegular(#[from] NotRegular),
    #[error("order {0} is odd; no perfect matching can exist")]
    OddOrder(usize),
    #[error("target regularity {target} must lie in {r}..={max}")]
    TargetOutOfRange { r: usize, target: usize, max: usize },
    #[error("dirac strategy needs every step below n/2, but step {r} -> {} has n = {n}", .r + 1)]
    DiracNotApplicable { n: usize, r: usize },
    #[error("extension stuck at regularity {}", .0.reached_r)]
    Stuck(Box<ExtensionFailure>),
}

/// Repeatedly extend until `target_r`, with the default strategy.
pub fn extend_to(g: &Graph, target_r: usize, backtrack: usize) -> Result<ExtensionTrace, ExtendToError> {
    extend_to_with(g, target_r, backtrack, Strategy::Auto)
}

/// Repeatedly extend until `target_r`. When a level gets stuck, up to
/// `backtrack` alternative matchings are tried at each earlier level; an
/// alternative is found by forbidding one edge of a matching that already
/// failed there and re-solving.
pub fn extend_to_with(
    g: &Graph,
    target_r: usize,
    backtrack: usize,
    strategy: Strategy,
) -> Result<ExtensionTrace, ExtendToError> {
    let r = g.regularity()?;
    let n = g.order();
    if n % 2 == 1 {
        return Err(ExtendToError::OddOrder(n));
    }
    let max = n.saturating_sub(1);
    if target_r < r || target_r > max {
        return Err(ExtendToError::TargetOutOfRange {
            r,
            target: target_r,
            max,
        });
    }
    if strategy == Strategy::Dirac && target_r > r && !dirac_applies(n, target_r - 1) {
        return Err(ExtendToError::DiracNotApplicable { n, r: target_r - 1 });
    }
    let mut search = Search {
        target_r,
        backtrack,
        strategy,
        path: Vec::new(),
        deepest: None,
    };
    match search.level(g, r) {
        Some(final_graph) => Ok(ExtensionTrace {
            start_r: r,
            target_r,
            steps: search.path,
            final_graph,
        }),
        None => {
            let (reached_r, steps, stuck_graph, violator) =
                search.deepest.expect("a failed search records where it got stuck");
            Err(ExtendToError::Stuck(Box::new(ExtensionFailure {
                start_r: r,
                target_r,
                reached_r,
                steps,
                stuck_graph,
                violator,
            })))
        }
    }
}

struct Search {
    target_r: usize,
    backtrack: usize,
    strategy: Strategy,
    path: Vec<Matching>,
    deepest: Option<(usize, Vec<Matching>, Graph, TutteViolator)>,
}

impl Search {
    fn record(&mut self, r: usize, g: &Graph, v: TutteViolator) {
        if self.deepest.as_ref().is_none_or(|d| r > d.0) {
            self.deepest = Some((r, self.path.clone(), g.clone(), v));
        }
    }

    fn descend(&mut self, g: &Graph, r: usize, m: Matching) -> Option<Graph> {
        let next = g.add_matching(&m).expect("matching is drawn from the complement");
        self.path.push(m);
        let out = self.level(&next, r + 1);
        if out.is_none() {
            self.path.pop();
        }
        out
    }

    fn level(&mut self, g: &Graph, r: usize) -> Option<Graph> {
        if r == self.target_r {
            return Some(g.clone());
        }
        let first = match extend_once(g, self.strategy) {
            Ok(ext) => ext.matching,
            Err(ExtendError::NoMatching(v)) => {
                self.record(r, g, v);
                return None;
            }
            Err(e) => unreachable!("preconditions checked by extend_to: {e}"),
        };
        let mut tried = vec![first.clone()];
        if let Some(done) = self.descend(g, r, first.clone()) {
            return Some(done);
        }
        if self.backtrack == 0 {
            return None;
        }
        let complement = g.complement();
        let mut forbidden_done: Vec<(usize, usize)> = Vec::new();
        let mut queue: VecDeque<(usize, usize)> = first.edges().iter().copied().collect();
        let mut alternatives = 0;
        while alternatives < self.backtrack {
            let Some(e) = queue.pop_front() else { break };
            if forbidden_done.contains(&e) {
                continue;
            }
            forbidden_done.push(e);
            let Ok(alt) = perfect_matching(&complement.without_edges(&[e])) else {
                continue;
            };
            if tried.contains(&alt) {
                continue;
            }
            alternatives += 1;
            tried.push(alt.clone());
            if let Some(done) = self.descend(g, r, alt.clone()) {
                return Some(done);
            }
            queue.extend(alt.edges().iter().copied());
        }
        None
    }
}

/// Identifier of a closed-form extension or matching guarantee.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// `n` even and `r < n/2`.
    #[serde(rename = "T1-Dirac")]
    T1Dirac,
    /// `n, r` even; `r < 2(n+2)/3` for `n >= 52`, `r < n-16` for `n < 52`.
    #[serde(rename = "T2-EvenEven")]
    T2EvenEven,
    /// `n, r` even; `r < 3n/4` for `n >= 64`, `r < n-16` for `n < 64`; spanning biclique.
    #[serde(rename = "T3-Biclique")]
    T3Biclique,
    /// `n` even, `r >= n/2`, spanning biclique with both parts odd.
    #[serde(rename = "T4-Impossible")]
    T4Impossible,
    /// `n` even, `r >= n/2`, contains `K_{n/2}`.
    #[serde(rename = "T5-Clique")]
    T5Clique,
    /// `r > 15` odd, `n` even, `n < 3r+7`.
    #[serde(rename = "L-Matching")]
    LMatching,
    /// `r > 15` odd, `n` even, `r >= n/4`, disconnected.
    #[serde(rename = "C-Disconnected")]
    CDisconnected,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::T1Dirac,
        Rule::T2EvenEven,
        Rule::T3Biclique,
        Rule::T4Impossible,
        Rule::T5Clique,
        Rule::LMatching,
        Rule::CDisconnected,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::T1Dirac => "T1",
            Rule::T2EvenEven => "T2",
            Rule::T3Biclique => "T3",
            Rule::T4Impossible => "T4",
            Rule::T5Clique => "T5",
            Rule::LMatching => "L",
            Rule::CDisconnected => "C",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::T1Dirac => "T1-Dirac",
            Rule::T2EvenEven => "T2-EvenEven",
            Rule::T3Biclique => "T3-Biclique",
            Rule::T4Impossible => "T4-Impossible",
            Rule::T5Clique => "T5-Clique",
            Rule::LMatching => "L-Matching",
            Rule::CDisconnected => "C-Disconnected",
        }
    }

    pub fn conclusion(self) -> Conclusion {
        match self {
            Rule::T1Dirac | Rule::T2EvenEven | Rule::T3Biclique => Conclusion::Extendable,
            Rule::T4Impossible => Conclusion::NotExtendable,
            Rule::T5Clique => Conclusion::ExtendableToAny,
            Rule::LMatching | Rule::CDisconnected => Conclusion::HasPerfectMatching,
        }
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.id().eq_ignore_ascii_case(s) || r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Extendable,
    ExtendableToAny,
    NotExtendable,
    HasPerfectMatching,
}

impl Conclusion {
    pub fn is_extendable(self) -> bool {
        matches!(self, Conclusion::Extendable | Conclusion::ExtendableToAny)
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::Extendable => "extendable",
            Conclusion::ExtendableToAny => "extendable-to-any-r'",
            Conclusion::NotExtendable => "not-extendable",
            Conclusion::HasPerfectMatching => "has-perfect-matching",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Evidence {
    Biclique(BicliqueWitness),
    Clique { vertices: VertexSet },
    /// A Tutte set for the complement.
    Violator(TutteViolator),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub rule: Rule,
    pub applies: bool,
    pub conclusion: Conclusion,
    pub evidence: Vec<Evidence>,
}

/// Evaluate every rule on a regular graph. Structural hypotheses are searched
/// for and attached as evidence when they hold.
pub fn classify(g: &Graph) -> Result<Vec<TheoremVerdict>, NotRegular> {
    let r = g.regularity()?;
    let n = g.order();
    let n_even = n.is_multiple_of(2);
    let r_even = r % 2 == 0;
    // r = n-1 is saturated: nothing to extend to, and nothing to forbid
    let at_least_half = 2 * r >= n && r + 2 <= n;
    let big_odd_r = r > 15 && !r_even;

    let verdict = |rule: Rule, applies: bool, evidence: Vec<Evidence>| TheoremVerdict {
        rule,
        applies,
        conclusion: rule.conclusion(),
        evidence: if applies { evidence } else { Vec::new() },
    };

    let mut out = Vec::with_capacity(Rule::ALL.len());
    out.push(verdict(Rule::T1Dirac, n_even && 2 * r < n, vec![]));

    // r < 2(n+2)/3  <=>  3r < 2n + 4
    let t2_bound = if n >= 52 { 3 * r < 2 * n + 4 } else { r + 16 < n };
    out.push(verdict(Rule::T2EvenEven, n_even && r_even && t2_bound, vec![]));

    // r < 3n/4  <=>  4r < 3n
    let t3_bound = if n >= 64 { 4 * r < 3 * n } else { r + 16 < n };
    let t3 = (n_even && r_even && t3_bound)
        .then(|| spanning_biclique(g, false))
        .flatten();
    out.push(match t3 {
        Some(w) => verdict(Rule::T3Biclique, true, vec![Evidence::Biclique(w)]),
        None => verdict(Rule::T3Biclique, false, vec![]),
    });

    let t4 = (n_even && at_least_half)
        .then(|| spanning_biclique(g, true))
        .flatten();
    out.push(match t4 {
        Some(w) => {
            let odd = g.complement().components().odd_count();
            let v = TutteViolator {
                s: VertexSet::new(),
                odd_count: odd,
            };
            verdict(Rule::T4Impossible, true, vec![Evidence::Biclique(w), Evidence::Violator(v)])
        }
        None => verdict(Rule::T4Impossible, false, vec![]),
    });

    let t5 = (n_even && n > 0 && at_least_half)
        .then(|| find_clique(g, n / 2))
        .flatten();
    out.push(match t5 {
        Some(c) => verdict(Rule::T5Clique, true, vec![Evidence::Clique { vertices: c }]),
        None => verdict(Rule::T5Clique, false, vec![]),
    });

    out.push(verdict(Rule::LMatching, big_odd_r && n_even && n < 3 * r + 7, vec![]));
    out.push(verdict(
        Rule::CDisconnected,
        big_odd_r && n_even && 4 * r >= n && !g.is_connected(),
        vec![],
    ));
    Ok(out)
}
