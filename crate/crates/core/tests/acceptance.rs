//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{rngs::StdRng, seq::SliceRandom, Rng, SeedableRng};
use regext_core::generation::{balloon_pair, cliques_with_matching, complete_bipartite, petersen};
use regext_core::matching::DEFAULT_TUTTE_LIMIT;
use regext_core::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_regular_up_to(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for r in 0..n {
            if (n * r) % 2 == 0 {
                out.extend(enumerate_regular(n, r, false).unwrap());
            }
        }
    }
    out
}

fn random_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=max_n);
        if out.len() % 2 == 0 {
            let r = rng.random_range(0..n);
            if let Ok(g) = random_regular(n, r, rng.random()) {
                out.push(g);
            }
        } else {
            let p: f64 = rng.random_range(0.05..0.5);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(p))
                .collect();
            out.push(Graph::build(n, &edges).unwrap());
        }
    }
    out
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    if t < limit {
        Ok(t)
    } else {
        Err(format!("took {t:.1?}, limit {limit:?}"))
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut corpus = all_regular_up_to(10);
    let exhaustive = corpus.len();
    corpus.extend(random_corpus(500, 20, 1));
    for g in &corpus {
        let brute = tutte_violator_bruteforce(g, DEFAULT_TUTTE_LIMIT).map_err(|e| e.to_string())?;
        let fast = perfect_matching(g);
        match (&fast, &brute) {
            (Ok(m), None) if m.is_perfect_for(g.order()) && m.validate(g).is_ok() => {}
            (Err(v), Some(_)) if v.verify(g) => {}
            _ => return Err(format!("disagreement on {}", g.to_graph6())),
        }
    }
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!("{exhaustive} enumerated + 500 random graphs agree in {t:.1?}"))
}

fn dirac_extension() -> Outcome {
    let mut count = 0;
    for n in (4usize..=10).step_by(2) {
        for r in 0..n.div_ceil(2) {
            if 2 * r >= n {
                continue;
            }
            for g in enumerate_regular(n, r, false).unwrap() {
                let ext = extend_once(&g, Strategy::Dirac).map_err(|e| format!("{}: {e}", g.to_graph6()))?;
                let complement = g.complement();
                let cycle = ext.cycle.as_ref().ok_or("no cycle")?;
                let ok = cycle.validate(&complement)
                    && ext.matching.is_perfect_for(n)
                    && ext.matching.validate(&complement).is_ok()
                    && ext.graph.regularity() == Ok(r + 1)
                    && g.is_subgraph_of(&ext.graph);
                if !ok {
                    return Err(format!("invalid certificate for {}", g.to_graph6()));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} graphs extended, cycles and matchings validated"))
}

fn lemma_matching() -> Outcome {
    let start = Instant::now();
    let mut cfg = VerifyConfig::new(Target::Theorem(Rule::LMatching), 18..=56);
    cfg.r_range = Some(17..=17);
    cfg.samples = Some(100);
    cfg.seed = 2024;
    cfg.jobs = 4;
    let report = verify(&cfg);
    let expected = 100 * (18..=56).step_by(2).count();
    if !report.passed() {
        return Err(format!("{} counterexamples", report.counterexamples.len()));
    }
    if report.confirmed != expected {
        return Err(format!("confirmed {} of {expected}", report.confirmed));
    }
    let t = within(Duration::from_secs(300), start)?;
    Ok(format!("{expected} samples matched in {t:.1?}"))
}

fn even_even_theorem() -> Outcome {
    let mut region: Vec<(usize, usize)> = (2..=60)
        .step_by(2)
        .flat_map(|n| (0..n).step_by(2).map(move |r| (n, r)))
        .filter(|&(n, r)| if n >= 52 { 3 * r < 2 * n + 4 } else { r + 16 < n })
        .collect();
    let pairs = region.len();
    let mut rng = StdRng::seed_from_u64(4);
    region.shuffle(&mut rng);
    for &(n, r) in region.iter().take(200) {
        let g = random_regular(n, r, rng.random()).unwrap();
        let verdicts = classify(&g).unwrap();
        if !verdicts.iter().any(|v| v.rule == Rule::T2EvenEven && v.applies) {
            return Err(format!("n={n} r={r} not classified"));
        }
        let ext = extend_once(&g, Strategy::Auto).map_err(|e| format!("n={n} r={r}: {e}"))?;
        if ext.graph.regularity() != Ok(r + 1) || !g.is_subgraph_of(&ext.graph) {
            return Err(format!("bad extension at n={n} r={r}"));
        }
    }
    Ok(format!("200 graphs on distinct pairs of the {pairs}-pair region extend"))
}

fn impossibility() -> Outcome {
    for m in [3, 5, 7] {
        let g = complete_bipartite(m, m);
        let verdicts = classify(&g).unwrap();
        let t4 = verdicts.iter().find(|v| v.rule == Rule::T4Impossible).unwrap();
        if !t4.applies {
            return Err(format!("K_{m},{m} not classified"));
        }
        match extend_once(&g, Strategy::Auto) {
            Err(ExtendError::NoMatching(v))
                if v.s.is_empty() && v.odd_count == 2 && v.verify(&g.complement()) => {}
            other => return Err(format!("K_{m},{m}: {other:?}")),
        }
    }
    Ok("K_3,3, K_5,5, K_7,7 certified non-extendable".into())
}

fn clique_half() -> Outcome {
    let g = cliques_with_matching(4);
    let trace = extend_to(&g, 7, 0).map_err(|e| e.to_string())?;
    let steps = trace.replay(&g).ok_or("trace does not replay")?;
    for h in &steps {
        let c = h.complement();
        if c.regularity().is_err() || !complement_bipartite_check(h).is_bipartite() {
            return Err(format!("complement of {} not regular bipartite", h.to_graph6()));
        }
    }
    if trace.final_graph != Graph::complete(8) || trace.steps.len() != 3 {
        return Err("did not end at K_8 in 3 steps".into());
    }
    Ok("3 matchings to K_8, each complement regular bipartite".into())
}

fn balloons_criterion() -> Outcome {
    let g = balloon_pair(3);
    let report = balloons(&g);
    let sizes: Vec<_> = report.balloons.iter().map(|b| b.len()).collect();
    if report.bridges.len() != 1 || report.b != 2 || sizes != [5, 5] {
        return Err(format!("bridges {:?}, b {}, sizes {sizes:?}", report.bridges, report.b));
    }

    let mut confirmed = 0;
    let mut exhaustive = VerifyConfig::new(Target::BalloonBound, 4..=10);
    exhaustive.jobs = 4;
    let mut sampled = VerifyConfig::new(Target::BalloonBound, 12..=14);
    sampled.samples = Some(20);
    sampled.jobs = 4;
    for cfg in [exhaustive, sampled] {
        let rep = verify(&cfg);
        if !rep.passed() {
            return Err(format!("{} violations", rep.counterexamples.len()));
        }
        confirmed += rep.confirmed;
    }
    for g in [balloon_pair(3), balloon_pair(5)] {
        let n = g.order();
        for s in regext_core::verify::small_subsets(n, 3) {
            let b = check_balloon_bound(&g, &s).map_err(|e| e.to_string())?;
            if b.applicable && !b.holds {
                return Err(format!("violation on balloon pair with S = {:?}", s));
            }
        }
        confirmed += 1;
    }
    Ok(format!("1 bridge, b = 2, balloons 5+5; {confirmed} corpus graphs bound-checked"))
}

fn arithmetic() -> Outcome {
    let start = Instant::now();
    let mut cfg = VerifyConfig::new(Target::Inequalities, 0..=0);
    cfg.r_range = Some(16..=200);
    let report = verify(&cfg);
    if !report.passed() {
        return Err(report.counterexamples[0].reason.clone());
    }
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!("{} grid points in {t:.1?}", report.confirmed))
}

fn enumeration_sanity() -> Outcome {
    for (n, r, frozen) in [(4, 2, 1), (6, 3, 2), (8, 3, 6)] {
        let oracle = common::count_classes(n, r);
        let got = enumerate_regular(n, r, false).unwrap().len();
        if oracle != frozen || got != frozen {
            return Err(format!("({n},{r}): oracle {oracle}, enumeration {got}, frozen {frozen}"));
        }
    }
    Ok("(4,2)=1, (6,3)=2, (8,3)=6 by oracle and enumeration".into())
}

fn format_criterion() -> Outcome {
    let mut corpus = all_regular_up_to(10);
    corpus.extend(random_corpus(500, 20, 1));
    corpus.extend(random_corpus(50, 200, 2));
    for g in &corpus {
        let s = format_graph6(g);
        let back = parse_graph6(&s).map_err(|e| e.to_string())?;
        if &back != g || format_graph6(&back) != s {
            return Err(format!("round trip failed for {s}"));
        }
    }
    // written by an independent graph6 implementation
    let external = [
        ("IheA@GUAo", petersen()),
        ("EFz_", complete_bipartite(3, 3)),
        ("Gr`HOk", Graph::build(8, &[(0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3), (2, 6), (3, 7), (4, 5), (4, 6), (5, 7), (6, 7)]).unwrap()),
        ("MhEGHC@AI?_PC@_G_", Graph::build(14, &[(0, 1), (0, 5), (0, 13), (1, 2), (1, 10), (2, 3), (2, 7), (3, 4), (3, 12), (4, 5), (4, 9), (5, 6), (6, 7), (6, 11), (7, 8), (8, 9), (8, 13), (9, 10), (10, 11), (11, 12), (12, 13)]).unwrap()),
    ];
    for (line, want) in &external {
        let g = parse_graph6(line).map_err(|e| format!("{line}: {e}"))?;
        if &g != want || format_graph6(&g) != *line {
            return Err(format!("{line} parsed to a different graph"));
        }
    }
    Ok(format!("{} graphs round-trip, {} external lines cross-parse", corpus.len(), external.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("extension below half degree", dirac_extension),
        ("odd-degree matching lemma", lemma_matching),
        ("even-even extension theorem", even_even_theorem),
        ("odd biclique impossibility", impossibility),
        ("half clique full extension", clique_half),
        ("balloon machinery", balloons_criterion),
        ("arithmetic lemmas", arithmetic),
        ("enumeration sanity", enumeration_sanity),
        ("graph6 format", format_criterion),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
