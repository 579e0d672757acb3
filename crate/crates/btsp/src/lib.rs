//! Exact toolkit for the bipartite travelling salesman problem (BTSP)
//! on structured distance matrices.
//!
//! Cities are split into equal blue and red halves and tours must
//! alternate colors. On Van der Veen matrices (and their parity-relaxed
//! class) the even-odd BTSP is pyramidally solvable, which this crate
//! exploits end to end:
//!
//! - [`conditions`]: exhaustive checkers for the Van der Veen
//!   inequalities, their parity-restricted relaxation, and the
//!   equivalent system on the reduced blue-red matrix;
//! - [`solver`]: an exact O(n^2) dynamic program over bipartite
//!   pyramidal tours;
//! - [`improve`]: the valley-elimination transformation turning any
//!   feasible tour into a pyramidal one, never lengthening it on
//!   relaxed Van der Veen instances;
//! - [`recognition`]: an O(k^4) decision procedure for reduced matrices
//!   that enter the class after independent row/column renumberings;
//! - [`reduction`]: Hamiltonian-cycle hardness instances and the
//!   brute-force oracles the rest of the crate is validated against;
//! - [`fixtures`]: the three builtin 12-city instances.
//!
//! All values are immutable after construction and safe to share across
//! threads. City indices are 1-based throughout the public interface.

pub mod conditions;
pub mod error;
pub mod fixtures;
pub mod improve;
pub mod matrix;
pub mod recognition;
pub mod reduction;
pub mod solver;
pub mod tour;

pub use conditions::{
    check_a_system, check_relaxed_van_der_veen, check_van_der_veen, extract_a, ASystemReport,
    ASystemViolation, AnchorFamily, ReducedMatrix, Violation, ViolationReport,
};
pub use error::Error;
pub use fixtures::Fixture;
pub use improve::{improve_step, improve_to_pyramidal, minimal_valley_above_one, ImproveStepRecord};
pub use matrix::{delta, DeltaValue, DistanceMatrix, Entry, Metric, PointSet, ScalarKind};
pub use recognition::{
    apply_permutations, recognize, recognize_full, select_next_column, select_next_row,
    NormalizedMatrix, RecognitionResult, RelabeledInstance,
};
pub use reduction::{
    brute_force_btsp, brute_force_btsp_capped, count_bipartite_tours, generate_line_instance,
    has_hamiltonian_cycle, reduce_graph, BipartiteGraph, DEFAULT_BRUTE_FORCE_CAP,
};
pub use solver::{dp_trace, solve_pyramidal_btsp, DpState};
pub use tour::{is_feasible_bipartite, is_pyramidal, tour_length, valleys, Color, Coloring, Tour};
