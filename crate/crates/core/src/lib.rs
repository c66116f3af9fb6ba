//! Extending regular graphs to higher regularity by adding perfect matchings
//! of the complement, together with the structural tests that decide when
//! such an extension must exist or cannot exist.
//!
//! Every negative answer comes with a certificate that can be re-checked
//! independently: a [`TutteViolator`] or [`HallViolator`] for missing
//! matchings, a [`NotRegular`] degree witness, an odd cycle for a failed
//! 2-coloring.

pub mod bitset;
pub mod error;
pub mod extension;
pub mod generation;
pub mod graph;
pub mod graph6;
pub mod matching;
pub mod structure;
pub mod verify;

pub use error::{Graph6Error, GraphError, LimitExceeded, NotRegular};
pub use graph::{ComponentPartition, Graph, VertexSet};
pub use graph6::{format_graph6, parse_graph6};
pub use matching::{
    bipartite_perfect_matching, count_perfect_matchings, max_matching, perfect_matching,
    tutte_violator_bruteforce, BipartiteMatch, HallViolator, Matching, TutteViolator,
};
pub use structure::{
    balloons, bridges, check_balloon_bound, check_ineq_kr, check_ineq_x, complement_bipartite_check,
    find_clique, spanning_biclique, two_coloring, BalloonBound, BalloonReport, BicliqueWitness,
    ComplementBipartite, Rational,
};
pub use extension::{
    classify, cycle_to_matching, dirac_cycle, extend_once, extend_to, extend_to_with, Conclusion,
    Evidence, ExtendError, ExtendToError, Extension, ExtensionFailure, ExtensionTrace,
    HamiltonianCycle, Rule, Strategy, TheoremVerdict,
};
pub use generation::{
    canonical_form, enumerate_regular, random_regular, random_regular_bipartite, CanonicalForm,
    GenerationError,
};
pub use verify::{verify, Target, VerifyConfig, VerifyReport};
