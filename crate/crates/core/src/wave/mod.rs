//! The auxiliary-equation method for travelling waves.
//!
//! A PDE is reduced with `ξ = mu (x - c t)`, the ansatz order comes from
//! balancing, `U = Σ g_i z^i` is substituted with `z' = P z + Q z²` used to
//! remove every derivative of `z`, and the coefficients of the powers of `z`
//! form an algebraic system. Solutions of that system are composed back into
//! `u(ξ)` and checked by residual evaluation.

mod balance;
mod compose;
mod mpoly;
mod pde;
mod reduce;
pub mod reproduction;
mod solve;
mod system;

pub use balance::{balance, balance_with, term_degrees, Balance, BalanceError, TermDegree};
pub use compose::{
    assignment_exprs, complex_expr, compose, partial, verify_solution, ComposeError, ComposedSolution, Grid,
    Provenance, Target, PDE_STEP,
};
pub use pde::{OdeMode, OdeTerm, Partial, PdeProblem, PdeTerm, TravellingOde, B_EQUATION, WAVE_NUMBER, WAVE_SPEED};
pub use reduce::{reduce_travelling, ReduceError};
pub use solve::{
    solve_system, Assignment, PointSolutions, PointwiseReport, SolveError, SolveOptions, SolveOutcome, Strategy,
    SystemExport,
};
pub use system::{aux_derivative, derive_system, Ansatz, CoeffSystem, Sidecar, SystemError, Z};
