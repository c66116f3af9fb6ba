use std::fmt::Display;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regext_core::generation::GenerationError;
use regext_core::{
    balloons, classify, enumerate_regular, extend_to_with, find_clique, max_matching, parse_graph6,
    perfect_matching, random_regular, spanning_biclique, two_coloring, verify as run_verify,
    Evidence, ExtendToError, Graph, Graph6Error, Matching, Strategy, Target, TutteViolator,
    VerifyConfig,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::Common;

pub enum Status {
    Success,
    Failure,
}

impl Status {
    fn from_failures(failed: usize) -> Self {
        if failed == 0 {
            Status::Success
        } else {
            Status::Failure
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("cannot read standard input: {0}")]
    Stdin(io::Error),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error(transparent)]
    Generation(#[from] GenerationError),
    #[error("{0}")]
    Usage(String),
}

struct Input {
    line: usize,
    text: String,
    graph: Graph,
}

fn read_input(common: &Common) -> Result<Vec<Input>, CliError> {
    let raw = match &common.input {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(CliError::Stdin)?;
            s
        }
    };
    let mut out = Vec::new();
    for (i, text) in raw.lines().enumerate() {
        let text = text.trim_end_matches('\r');
        if text.trim().is_empty() {
            continue;
        }
        let graph = parse_graph6(text).map_err(|source| CliError::Parse { line: i + 1, source })?;
        out.push(Input {
            line: i + 1,
            text: text.to_string(),
            graph,
        });
    }
    log::info!("read {} graphs", out.len());
    Ok(out)
}

/// Writes each record either as one JSON line or as human text.
struct Out {
    json: bool,
    w: BufWriter<io::StdoutLock<'static>>,
}

impl Out {
    fn new(common: &Common) -> Self {
        Out {
            json: common.json,
            w: BufWriter::new(io::stdout().lock()),
        }
    }

    fn emit(&mut self, value: Value, text: impl Display) {
        // a closed pipe is not worth a panic
        let _ = if self.json {
            writeln!(self.w, "{value}")
        } else {
            writeln!(self.w, "{text}")
        };
    }

    fn summary(&mut self, command: &str, total: usize, failed: usize) {
        self.emit(
            json!({"type": "summary", "command": command, "graphs": total, "ok": total - failed, "failed": failed}),
            format!("{command}: {total} graphs, {} ok, {failed} failed", total - failed),
        );
    }
}

fn base(input: &Input) -> Value {
    json!({"type": "result", "line": input.line, "graph6": input.text, "n": input.graph.order()})
}

fn merge(mut v: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
        a.extend(b);
    }
    v
}

fn fmt_matching(m: &Matching) -> String {
    m.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

fn fmt_set(s: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<_> = s.into_iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn fmt_violator(v: &TutteViolator) -> String {
    format!("S={} leaves {} odd components", fmt_set(v.s.iter()), v.odd_count)
}

pub fn extend(common: &Common, target_r: Option<usize>, strategy: Strategy, backtrack: usize) -> Result<Status, CliError> {
    let inputs = read_input(common)?;
    let mut out = Out::new(common);
    let mut failed = 0;
    for input in &inputs {
        let g = &input.graph;
        let head = format!("line {}", input.line);
        let r = match g.regularity() {
            Ok(r) => r,
            Err(e) => {
                failed += 1;
                out.emit(
                    merge(base(input), json!({"status": "error", "error": e.to_string(), "not_regular": e})),
                    format!("{head}: error: {e}"),
                );
                continue;
            }
        };
        let target = target_r.unwrap_or(r + 1);
        log::debug!("line {}: extending r={r} to {target}", input.line);
        match extend_to_with(g, target, backtrack, strategy) {
            Ok(trace) => {
                let output = trace.final_graph.to_graph6();
                let mut v = json!({"status": "extended", "r": r, "target_r": target, "output": output});
                let mut text = format!("{head}: extended r={r} -> {target}: {output}");
                if common.certificates {
                    v = merge(v, json!({"matchings": trace.steps}));
                    for (i, m) in trace.steps.iter().enumerate() {
                        text.push_str(&format!("\n  matching {}: {}", i + 1, fmt_matching(m)));
                    }
                }
                out.emit(merge(base(input), v), text);
            }
            Err(ExtendToError::Stuck(f)) => {
                failed += 1;
                let stuck = f.stuck_graph.to_graph6();
                let mut text = format!(
                    "{head}: stuck at r={} (target {target}): complement of {stuck} minus {}",
                    f.reached_r,
                    fmt_violator(&f.violator)
                );
                for (i, m) in f.steps.iter().enumerate() {
                    text.push_str(&format!("\n  matching {}: {}", i + 1, fmt_matching(m)));
                }
                out.emit(
                    merge(
                        base(input),
                        json!({
                            "status": "stuck", "r": r, "target_r": target, "reached_r": f.reached_r,
                            "matchings": f.steps, "stuck_graph": stuck, "violator": f.violator,
                        }),
                    ),
                    text,
                );
            }
            Err(e) => {
                failed += 1;
                out.emit(
                    merge(base(input), json!({"status": "error", "r": r, "error": e.to_string()})),
                    format!("{head}: error: {e}"),
                );
            }
        }
    }
    out.summary("extend", inputs.len(), failed);
    Ok(Status::from_failures(failed))
}

fn fmt_evidence(e: &Evidence) -> String {
    match e {
        Evidence::Biclique(w) => format!(
            "biclique {}/{} {} {}",
            w.part_a.len(),
            w.part_b.len(),
            fmt_set(w.part_a.iter()),
            fmt_set(w.part_b.iter())
        ),
        Evidence::Clique { vertices } => format!("clique {}", fmt_set(vertices.iter())),
        Evidence::Violator(v) => format!("complement {}", fmt_violator(v)),
    }
}

pub fn check(common: &Common) -> Result<Status, CliError> {
    let inputs = read_input(common)?;
    let mut out = Out::new(common);
    let mut failed = 0;
    for input in &inputs {
        let head = format!("line {}", input.line);
        let verdicts = match classify(&input.graph) {
            Ok(v) => v,
            Err(e) => {
                failed += 1;
                out.emit(
                    merge(base(input), json!({"status": "error", "error": e.to_string(), "not_regular": e})),
                    format!("{head}: error: {e}"),
                );
                continue;
            }
        };
        let r = input.graph.regularity().expect("classified graphs are regular");
        let live: Vec<_> = verdicts.iter().filter(|v| v.applies).collect();
        let text = if live.is_empty() {
            format!("{head}: no guarantee applies (n={}, r={r})", input.graph.order())
        } else {
            let parts: Vec<_> = live
                .iter()
                .map(|v| {
                    let mut s = format!("{}: {}", v.rule.id(), v.conclusion);
                    let ev: Vec<_> = v
                        .evidence
                        .iter()
                        .filter(|e| common.certificates || matches!(e, Evidence::Biclique(_)))
                        .map(|e| {
                            if common.certificates {
                                fmt_evidence(e)
                            } else if let Evidence::Biclique(w) = e {
                                format!("biclique {}/{}", w.part_a.len(), w.part_b.len())
                            } else {
                                unreachable!()
                            }
                        })
                        .collect();
                    if !ev.is_empty() {
                        s.push_str(&format!(" ({})", ev.join("; ")));
                    }
                    s
                })
                .collect();
            format!("{head}: {}", parts.join(", "))
        };
        let rows: Vec<Value> = verdicts
            .iter()
            .map(|v| {
                json!({
                    "rule": v.rule.id(), "name": v.rule.name(), "applies": v.applies,
                    "conclusion": v.conclusion, "evidence": v.evidence,
                })
            })
            .collect();
        let ids: Vec<_> = live.iter().map(|v| v.rule.id()).collect();
        out.emit(
            merge(base(input), json!({"status": "ok", "r": r, "applies": ids, "verdicts": rows})),
            text,
        );
    }
    out.summary("check", inputs.len(), failed);
    Ok(Status::from_failures(failed))
}

pub fn matching(common: &Common) -> Result<Status, CliError> {
    let inputs = read_input(common)?;
    let mut out = Out::new(common);
    let mut failed = 0;
    for input in &inputs {
        let head = format!("line {}", input.line);
        match perfect_matching(&input.graph) {
            Ok(m) => out.emit(
                merge(base(input), json!({"status": "perfect", "size": m.len(), "matching": m})),
                format!("{head}: perfect matching of {} edges: {}", m.len(), fmt_matching(&m)),
            ),
            Err(v) => {
                failed += 1;
                let best = max_matching(&input.graph);
                out.emit(
                    merge(
                        base(input),
                        json!({"status": "no-perfect-matching", "max_matching": best, "size": best.len(), "violator": v}),
                    ),
                    format!(
                        "{head}: no perfect matching (maximum {} edges): {}",
                        best.len(),
                        fmt_violator(&v)
                    ),
                );
            }
        }
    }
    out.summary("match", inputs.len(), failed);
    Ok(Status::from_failures(failed))
}

fn clique_number(g: &Graph) -> (usize, Vec<usize>) {
    let mut best = (0, Vec::new());
    for k in 1..=g.order() {
        match find_clique(g, k) {
            Some(c) => best = (k, c.iter().collect()),
            None => break,
        }
    }
    best
}

pub fn analyze(common: &Common) -> Result<Status, CliError> {
    let inputs = read_input(common)?;
    let mut out = Out::new(common);
    for input in &inputs {
        let g = &input.graph;
        let degrees = g.degrees();
        let (lo, hi) = (
            degrees.iter().copied().min().unwrap_or(0),
            degrees.iter().copied().max().unwrap_or(0),
        );
        let comps = g.components();
        let sizes: Vec<_> = comps.blocks.iter().map(|c| c.len()).collect();
        let report = balloons(g);
        let balloon_sizes: Vec<_> = report.balloons.iter().map(|b| b.len()).collect();
        let (omega, clique) = clique_number(g);
        let complement_bipartite = two_coloring(&g.complement()).is_bipartite();
        let biclique = spanning_biclique(g, false);
        let regular = g.regularity().ok();
        let mut v = json!({
            "status": "ok", "edges": g.edge_count(), "min_degree": lo, "max_degree": hi,
            "regularity": regular, "components": sizes, "connected": g.is_connected(),
            "bridges": report.bridges, "b": report.b, "balloon_sizes": balloon_sizes,
            "clique_number": omega, "complement_bipartite": complement_bipartite,
            "spanning_biclique": biclique.is_some(),
        });
        let degree = match regular {
            Some(r) => format!("r={r}"),
            None => format!("degrees {lo}..{hi}"),
        };
        let bridges: Vec<_> = report.bridges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let mut text = format!(
            "line {}: n={} m={} {degree} components={:?} bridges={} [{}] b={} balloons={:?} clique={omega} complement_bipartite={complement_bipartite}",
            input.line,
            g.order(),
            g.edge_count(),
            sizes,
            report.bridges.len(),
            bridges.join(" "),
            report.b,
            balloon_sizes,
        );
        if common.certificates {
            v = merge(v, json!({"balloons": report.balloons, "clique": clique, "biclique": biclique}));
            let sets: Vec<_> = report.balloons.iter().map(|b| fmt_set(b.iter())).collect();
            text.push_str(&format!("\n  balloons: {}\n  clique: {}", sets.join(" "), fmt_set(clique)));
        }
        out.emit(merge(base(input), v), text);
    }
    out.summary("analyze", inputs.len(), 0);
    Ok(Status::Success)
}

pub fn gen(common: &Common, n: usize, r: usize, count: Option<usize>, connected: bool) -> Result<Status, CliError> {
    let graphs = match count {
        None => enumerate_regular(n, r, connected)?,
        Some(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            (0..k)
                .map(|_| random_regular(n, r, rng.random()))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    log::info!("generated {} graphs with n={n} r={r}", graphs.len());
    let mut out = Out::new(common);
    for (i, g) in graphs.iter().enumerate() {
        let s = g.to_graph6();
        out.emit(json!({"type": "graph", "index": i, "n": n, "r": r, "graph6": s}), &s);
    }
    Ok(Status::Success)
}

fn range_json(r: &Option<RangeInclusive<usize>>) -> Value {
    match r {
        Some(r) => json!([r.start(), r.end()]),
        None => Value::Null,
    }
}

pub fn verify(
    common: &Common,
    target: Target,
    n_range: Option<RangeInclusive<usize>>,
    r_range: Option<RangeInclusive<usize>>,
    samples: Option<usize>,
) -> Result<Status, CliError> {
    let n = match (&n_range, target) {
        (Some(n), _) => n.clone(),
        (None, Target::Inequalities) => 0..=0,
        (None, _) => return Err(CliError::Usage(format!("verify {target} needs --n-range"))),
    };
    let cfg = VerifyConfig {
        target,
        n_range: n,
        r_range: r_range.clone(),
        samples,
        seed: common.seed,
        jobs: common.jobs,
    };
    log::info!("verify {target} with {cfg:?}");
    let report = run_verify(&cfg);
    let mut out = Out::new(common);
    for c in &report.counterexamples {
        let s = c.graph.to_graph6();
        let mut text = format!("counterexample n={} r={} {s}: {}", c.n, c.r, c.reason);
        if let Some(v) = &c.violator {
            text.push_str(&format!(" ({})", fmt_violator(v)));
        }
        if let Some(set) = &c.s {
            text.push_str(&format!(" (S={})", fmt_set(set.iter())));
        }
        out.emit(
            json!({"type": "counterexample", "n": c.n, "r": c.r, "graph6": s, "reason": c.reason,
                   "violator": c.violator, "s": c.s}),
            text,
        );
    }
    for note in &report.notices {
        out.emit(json!({"type": "notice", "message": note}), format!("notice: {note}"));
    }
    let mut summary = json!({
        "type": "summary", "command": "verify", "rule": target.to_string(),
        "n_range": range_json(&n_range), "r_range": range_json(&r_range), "samples": samples,
        "seed": common.seed, "confirmed": report.confirmed, "not_applicable": report.not_applicable,
        "exhaustive_pairs": report.exhaustive_pairs, "sampled_pairs": report.sampled_pairs,
        "counterexamples": report.counterexamples.len(),
    });
    let mut text = format!(
        "verify {target}: {} confirmed, {} counterexamples ({} exhaustive pairs, {} sampled pairs, {} outside hypothesis)",
        report.confirmed,
        report.counterexamples.len(),
        report.exhaustive_pairs,
        report.sampled_pairs,
        report.not_applicable
    );
    if target == Target::BalloonBound {
        summary = merge(summary, json!({"alt_bound_failures": report.alt_bound_failures}));
        text.push_str(&format!(", {} cases fail the (r-1)/r variant", report.alt_bound_failures));
    }
    out.emit(summary, text);
    Ok(Status::from_failures(report.counterexamples.len()))
}
