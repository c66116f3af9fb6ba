use regext_core::{verify, Rule, Target, VerifyConfig};

fn run(target: Target, n: std::ops::RangeInclusive<usize>, r: Option<std::ops::RangeInclusive<usize>>, samples: Option<usize>) {
    let mut cfg = VerifyConfig::new(target, n);
    cfg.r_range = r;
    cfg.samples = samples;
    cfg.seed = 99;
    cfg.jobs = 2;
    let report = verify(&cfg);
    assert!(report.passed(), "{target}: {:?}", report.counterexamples);
    assert!(report.confirmed > 0, "{target}: nothing confirmed {report:?}");
}

#[test]
fn every_rule_passes_a_small_sweep() {
    use Rule::*;
    for rule in [T1Dirac, T4Impossible, T5Clique] {
        run(Target::Theorem(rule), 4..=10, None, None);
        run(Target::Theorem(rule), 12..=30, None, Some(2));
    }
    run(Target::Theorem(T2EvenEven), 18..=60, None, Some(1));
    run(Target::Theorem(T3Biclique), 34..=64, None, Some(1));
    run(Target::Theorem(LMatching), 18..=60, Some(17..=19), Some(3));
    run(Target::Theorem(CDisconnected), 36..=76, Some(17..=19), Some(3));
    run(Target::BalloonBound, 4..=10, None, None);
    run(Target::Inequalities, 0..=0, Some(16..=40), None);
}

#[test]
fn outside_pairs_are_skipped_with_notice() {
    let cfg = VerifyConfig::new(Target::Theorem(Rule::T4Impossible), 8..=8);
    let report = verify(&cfg);
    assert!(report.notices.iter().any(|n| n.contains("r=4")));
}
