//! Empirical verification of the extension and matching guarantees: generate
//! graphs inside a rule's hypothesis region, then construct the promised
//! object (or the promised obstruction) and validate it.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::extension::{classify, extend_once, extend_to, ExtendError, Rule, Strategy};
use crate::generation::{
    balloon_pair, enumerate_regular, random_regular, random_regular_bipartite, shuffle_labels,
    ENUMERATION_CAP,
};
use crate::graph::{Graph, VertexSet};
use crate::matching::{perfect_matching, TutteViolator};
use crate::structure::{check_balloon_bound, check_ineq_kr, check_ineq_x, complement_bipartite_check, Rational};

/// Samples per `(n, r)` pair when none are requested and enumeration is out of reach.
pub const DEFAULT_SAMPLES: usize = 10;
/// Denominator of the rational grid used for the `x(r-x+1) >= r` check.
const X_GRID: i64 = 64;
/// Largest deletion set scanned by the balloon-bound check.
const BALLOON_MAX_S: usize = 3;

/// What `verify` checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Theorem(Rule),
    /// The balloon bound on odd-regular graphs.
    BalloonBound,
    /// The two arithmetic inequalities on integer and rational grids.
    Inequalities,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "L0-BALLOON" | "L0" => Ok(Target::BalloonBound),
            "INEQ" => Ok(Target::Inequalities),
            _ => s.parse::<Rule>().map(Target::Theorem).map_err(|_| {
                format!("unknown rule `{s}` (T1, T2, T3, T4, T5, L, C, L0-balloon, INEQ)")
            }),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Theorem(r) => f.write_str(r.id()),
            Target::BalloonBound => f.write_str("L0-balloon"),
            Target::Inequalities => f.write_str("INEQ"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub target: Target,
    pub n_range: RangeInclusive<usize>,
    /// Defaults to every degree valid for each order (16..=200 for INEQ).
    pub r_range: Option<RangeInclusive<usize>>,
    /// Samples per `(n, r)` pair. `None` enumerates when `n <= 10`.
    pub samples: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
}

impl VerifyConfig {
    pub fn new(target: Target, n_range: RangeInclusive<usize>) -> Self {
        VerifyConfig {
            target,
            n_range,
            r_range: None,
            samples: None,
            seed: 0,
            jobs: 1,
        }
    }
}

/// A graph on which the promised conclusion could not be constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub r: usize,
    pub graph: Graph,
    pub reason: String,
    pub violator: Option<TutteViolator>,
    pub s: Option<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub target: String,
    /// Graphs (or grid points) inside the hypothesis on which the conclusion was confirmed.
    pub confirmed: usize,
    /// Generated graphs that turned out to lie outside the hypothesis.
    pub not_applicable: usize,
    pub exhaustive_pairs: usize,
    pub sampled_pairs: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Skipped parameter combinations and other remarks.
    pub notices: Vec<String>,
    /// Balloon-bound cases that satisfy `r/(r-1)` but fail the `(r-1)/r` variant.
    pub alt_bound_failures: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

enum Source {
    Enumerated(Graph),
    Seed(u64),
}

struct Case {
    n: usize,
    r: usize,
    index: usize,
    source: Source,
}

enum Outcome {
    Confirmed { alt_failures: usize },
    NotApplicable,
    Failed(Counterexample),
}

/// splitmix64 finalizer
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn case_seed(base: u64, tag: u64, n: usize, r: usize, i: usize) -> u64 {
    [tag, n as u64, r as u64, i as u64]
        .into_iter()
        .fold(mix(base), |acc, x| mix(acc ^ x))
}

fn tag(target: Target) -> u64 {
    match target {
        Target::Theorem(rule) => Rule::ALL.iter().position(|&r| r == rule).unwrap() as u64 + 1,
        Target::BalloonBound => 100,
        Target::Inequalities => 101,
    }
}

/// Numeric part of each hypothesis, or why the pair can never qualify.
fn region(target: Target, n: usize, r: usize) -> Result<(), &'static str> {
    let even = |x: usize| x.is_multiple_of(2);
    if r >= n.max(1) || (n * r) % 2 == 1 {
        return Err("no such regular graph");
    }
    let ok = |c: bool, why| if c { Ok(()) } else { Err(why) };
    match target {
        Target::Theorem(Rule::T1Dirac) => ok(even(n) && 2 * r < n, "outside r < n/2, n even"),
        Target::Theorem(Rule::T2EvenEven) => ok(
            even(n) && even(r) && if n >= 52 { 3 * r < 2 * n + 4 } else { r + 16 < n },
            "outside the even-even bound",
        ),
        Target::Theorem(Rule::T3Biclique) => {
            ok(
                even(n) && even(r) && if n >= 64 { 4 * r < 3 * n } else { r + 16 < n },
                "outside the biclique bound",
            )?;
            ok(2 * (n - r) <= n, "complement components would be too large to split")
        }
        Target::Theorem(Rule::T4Impossible) => {
            ok(even(n) && 2 * r >= n && r + 2 <= n, "outside n/2 <= r <= n-2, n even")?;
            ok(!even(r), "even r gives an odd-regular complement, whose components are all even")?;
            ok(2 * (n - r) <= n, "complement components would be too large to split")
        }
        Target::Theorem(Rule::T5Clique) => {
            ok(even(n) && 2 * r >= n && r + 2 <= n, "outside n/2 <= r <= n-2, n even")
        }
        Target::Theorem(Rule::LMatching) => ok(
            r > 15 && !even(r) && even(n) && n < 3 * r + 7,
            "outside r > 15 odd, n even, n < 3r+7",
        ),
        Target::Theorem(Rule::CDisconnected) => {
            ok(r > 15 && !even(r) && even(n) && 4 * r >= n, "outside r > 15 odd, n even, r >= n/4")?;
            ok(n >= 2 * (r + 1), "too few vertices for two components")
        }
        Target::BalloonBound => ok(r >= 3 && !even(r), "balloon bound is checked on odd r >= 3"),
        Target::Inequalities => Ok(()),
    }
}

/// Split `n` into two part sizes, each at least `lo` and of the given parity.
fn split(n: usize, lo: usize, odd: bool, rng: &mut ChaCha8Rng) -> Option<(usize, usize)> {
    let lo = if (lo % 2 == 1) == odd { lo } else { lo + 1 };
    if n < 2 * lo {
        return None;
    }
    let first = lo + 2 * rng.random_range(0..=(n - 2 * lo) / 2);
    Some((first, n - first))
}

/// A graph in the hypothesis region for sampled mode.
fn construct(target: Target, n: usize, r: usize, seed: u64, index: usize) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sub = |rng: &mut ChaCha8Rng| rng.random::<u64>();
    let g = match target {
        Target::Theorem(Rule::T3Biclique | Rule::T4Impossible) => {
            let rc = n - 1 - r;
            let odd = matches!(target, Target::Theorem(Rule::T4Impossible));
            let (a, b) = split(n, rc + 1, odd, &mut rng)?;
            let h1 = random_regular(a, rc, sub(&mut rng)).ok()?;
            let h2 = random_regular(b, rc, sub(&mut rng)).ok()?;
            h1.disjoint_union(&h2).complement()
        }
        Target::Theorem(Rule::T5Clique) => {
            let half = random_regular_bipartite(n / 2, n - 1 - r, sub(&mut rng)).ok()?;
            half.complement()
        }
        Target::Theorem(Rule::CDisconnected) => {
            let (a, b) = split(n, r + 1, false, &mut rng)?;
            let h1 = random_regular(a, r, sub(&mut rng)).ok()?;
            h1.disjoint_union(&random_regular(b, r, sub(&mut rng)).ok()?)
        }
        Target::BalloonBound if index % 2 == 1 && n >= 2 * (r + 2) => {
            let rest = n - 2 * (r + 2);
            let pair = balloon_pair(r);
            if rest == 0 {
                pair
            } else if rest > r {
                pair.disjoint_union(&random_regular(rest, r, sub(&mut rng)).ok()?)
            } else {
                random_regular(n, r, sub(&mut rng)).ok()?
            }
        }
        _ => random_regular(n, r, sub(&mut rng)).ok()?,
    };
    Some(shuffle_labels(&g, sub(&mut rng)))
}

fn failure(n: usize, r: usize, g: &Graph, reason: impl Into<String>) -> Outcome {
    Outcome::Failed(Counterexample {
        n,
        r,
        graph: g.clone(),
        reason: reason.into(),
        violator: None,
        s: None,
    })
}

fn check_rule(rule: Rule, n: usize, r: usize, g: &Graph) -> Outcome {
    let verdicts = match classify(g) {
        Ok(v) => v,
        Err(e) => return failure(n, r, g, format!("generated graph not regular: {e}")),
    };
    if !verdicts.iter().any(|v| v.rule == rule && v.applies) {
        return Outcome::NotApplicable;
    }
    let confirmed = Outcome::Confirmed { alt_failures: 0 };
    match rule {
        Rule::T1Dirac | Rule::T2EvenEven | Rule::T3Biclique => {
            let strategy = if rule == Rule::T1Dirac && n >= 4 {
                Strategy::Dirac
            } else {
                Strategy::Auto
            };
            match extend_once(g, strategy) {
                Ok(ext) => {
                    let complement = g.complement();
                    let cycle_ok = ext.cycle.as_ref().is_none_or(|c| c.validate(&complement));
                    let ok = cycle_ok
                        && ext.matching.is_perfect_for(n)
                        && ext.matching.validate(&complement).is_ok()
                        && ext.graph.regularity() == Ok(r + 1)
                        && g.is_subgraph_of(&ext.graph);
                    if ok {
                        confirmed
                    } else {
                        failure(n, r, g, "extension output failed validation")
                    }
                }
                Err(ExtendError::NoMatching(v)) => Outcome::Failed(Counterexample {
                    n,
                    r,
                    graph: g.clone(),
                    reason: "complement has no perfect matching".into(),
                    violator: Some(v),
                    s: None,
                }),
                Err(e) => failure(n, r, g, e.to_string()),
            }
        }
        Rule::T4Impossible => match extend_once(g, Strategy::Blossom) {
            Err(ExtendError::NoMatching(v)) if v.verify(&g.complement()) => confirmed,
            Err(e) => failure(n, r, g, format!("unexpected failure mode: {e}")),
            Ok(_) => failure(n, r, g, "extended although an odd spanning biclique exists"),
        },
        Rule::T5Clique => match extend_to(g, n - 1, 0) {
            Ok(trace) => {
                let Some(steps) = trace.replay(g) else {
                    return failure(n, r, g, "trace failed to replay");
                };
                let all_bipartite = steps.iter().all(|h| {
                    let c = h.complement();
                    c.regularity().is_ok() && complement_bipartite_check(h).is_bipartite()
                });
                if all_bipartite {
                    confirmed
                } else {
                    failure(n, r, g, "an intermediate complement is not regular bipartite")
                }
            }
            Err(e) => failure(n, r, g, format!("extension without backtracking failed: {e}")),
        },
        Rule::LMatching | Rule::CDisconnected => match perfect_matching(g) {
            Ok(m) if m.is_perfect_for(n) && m.validate(g).is_ok() => confirmed,
            Ok(_) => failure(n, r, g, "matching failed validation"),
            Err(v) => Outcome::Failed(Counterexample {
                n,
                r,
                graph: g.clone(),
                reason: "no perfect matching".into(),
                violator: Some(v),
                s: None,
            }),
        },
    }
}

/// All subsets of `0..n` with at most `k` members, in size-then-lex order.
pub fn small_subsets(n: usize, k: usize) -> Vec<VertexSet> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        out.push(cur.iter().copied().collect());
        if cur.len() == k {
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out.sort_by_key(VertexSet::len);
    out
}

fn check_balloons(n: usize, r: usize, g: &Graph) -> Outcome {
    let mut applicable = 0;
    let mut alt_failures = 0;
    for s in small_subsets(n, BALLOON_MAX_S) {
        let bound = match check_balloon_bound(g, &s) {
            Ok(b) => b,
            Err(e) => return failure(n, r, g, e.to_string()),
        };
        if !bound.applicable {
            continue;
        }
        applicable += 1;
        if !bound.holds {
            return Outcome::Failed(Counterexample {
                n,
                r,
                graph: g.clone(),
                reason: format!("odd(G-S)-|S| = {} > {}", bound.lhs, bound.rhs),
                violator: None,
                s: Some(s),
            });
        }
        if !bound.holds_alt {
            alt_failures += 1;
        }
    }
    if applicable == 0 {
        Outcome::NotApplicable
    } else {
        Outcome::Confirmed { alt_failures }
    }
}

fn verify_inequalities(cfg: &VerifyConfig) -> VerifyReport {
    let range = cfg.r_range.clone().unwrap_or(16..=200);
    let mut report = VerifyReport {
        target: Target::Inequalities.to_string(),
        exhaustive_pairs: 1,
        ..Default::default()
    };
    let fail = |what: String| Counterexample {
        n: 0,
        r: 0,
        graph: Graph::empty(0),
        reason: what,
        violator: None,
        s: None,
    };
    for r in range {
        if r > 15 {
            for k in 2..=r.saturating_sub(2) {
                if check_ineq_kr(r as i64, k as i64) {
                    report.confirmed += 1;
                } else {
                    report.counterexamples.push(fail(format!("(k+2)r-k^2+2 > 3r+7 fails at r={r}, k={k}")));
                }
            }
        }
        if r >= 1 {
            let ri = r as i64;
            for j in 0..=X_GRID * (ri - 1) {
                let x = Rational::from_integer(1) + Rational::new(j, X_GRID);
                if check_ineq_x(ri, x) {
                    report.confirmed += 1;
                } else {
                    report.counterexamples.push(fail(format!("x(r-x+1) >= r fails at r={r}, x={x}")));
                }
            }
        }
    }
    report
}

/// Run a verification sweep. Results are deterministic for a fixed
/// configuration regardless of `jobs`.
pub fn verify(cfg: &VerifyConfig) -> VerifyReport {
    if cfg.target == Target::Inequalities {
        return verify_inequalities(cfg);
    }
    let mut report = VerifyReport {
        target: cfg.target.to_string(),
        ..Default::default()
    };
    let mut cases = Vec::new();
    for n in cfg.n_range.clone() {
        let rs = cfg.r_range.clone().unwrap_or(0..=n.saturating_sub(1));
        for r in rs {
            if let Err(why) = region(cfg.target, n, r) {
                if r < n && (n * r) % 2 == 0 {
                    report.notices.push(format!("skipped n={n} r={r}: {why}"));
                }
                continue;
            }
            match cfg.samples {
                None if n <= ENUMERATION_CAP => {
                    report.exhaustive_pairs += 1;
                    let graphs = enumerate_regular(n, r, false).expect("within enumeration cap");
                    for (index, g) in graphs.into_iter().enumerate() {
                        cases.push(Case { n, r, index, source: Source::Enumerated(g) });
                    }
                }
                samples => {
                    report.sampled_pairs += 1;
                    for index in 0..samples.unwrap_or(DEFAULT_SAMPLES) {
                        let seed = case_seed(cfg.seed, tag(cfg.target), n, r, index);
                        cases.push(Case { n, r, index, source: Source::Seed(seed) });
                    }
                }
            }
        }
    }

    let target = cfg.target;
    let run = |case: &Case| -> Outcome {
        let g = match &case.source {
            Source::Enumerated(g) => g.clone(),
            Source::Seed(seed) => match construct(target, case.n, case.r, *seed, case.index) {
                Some(g) => g,
                None => return Outcome::NotApplicable,
            },
        };
        match target {
            Target::Theorem(rule) => check_rule(rule, case.n, case.r, &g),
            Target::BalloonBound => check_balloons(case.n, case.r, &g),
            Target::Inequalities => unreachable!(),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .expect("thread pool");
    let outcomes: Vec<Outcome> = pool.install(|| cases.par_iter().map(run).collect());
    for o in outcomes {
        match o {
            Outcome::Confirmed { alt_failures } => {
                report.confirmed += 1;
                report.alt_bound_failures += alt_failures;
            }
            Outcome::NotApplicable => report.not_applicable += 1,
            Outcome::Failed(c) => report.counterexamples.push(c),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_parsing() {
        assert_eq!("T1".parse(), Ok(Target::Theorem(Rule::T1Dirac)));
        assert_eq!("l0-balloon".parse(), Ok(Target::BalloonBound));
        assert_eq!("INEQ".parse(), Ok(Target::Inequalities));
        assert!("T9".parse::<Target>().is_err());
    }

    #[test]
    fn small_subsets_counts() {
        // 1 + 5 + 10 + 10
        assert_eq!(small_subsets(5, 3).len(), 26);
        assert!(small_subsets(5, 3)[0].is_empty());
    }

    #[test]
    fn constructions_land_in_region() {
        for (target, n, r) in [
            (Target::Theorem(Rule::T3Biclique), 40, 22),
            (Target::Theorem(Rule::T4Impossible), 12, 7),
            (Target::Theorem(Rule::T5Clique), 12, 8),
            (Target::Theorem(Rule::CDisconnected), 40, 17),
        ] {
            region(target, n, r).unwrap();
            let g = construct(target, n, r, 5, 0).unwrap();
            assert_eq!(g.regularity(), Ok(r));
            let Target::Theorem(rule) = target else { unreachable!() };
            let v = classify(&g).unwrap();
            assert!(v.iter().any(|v| v.rule == rule && v.applies), "{rule:?}");
        }
    }

    #[test]
    fn verify_is_job_count_independent() {
        let mut cfg = VerifyConfig::new(Target::Theorem(Rule::T1Dirac), 12..=14);
        cfg.samples = Some(3);
        cfg.seed = 7;
        let one = verify(&cfg);
        cfg.jobs = 4;
        let four = verify(&cfg);
        assert_eq!(one, four);
        assert!(one.passed());
        assert!(one.confirmed > 0);
    }
}
