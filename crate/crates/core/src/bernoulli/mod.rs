//! The Bernoulli auxiliary equation `z' = P(ξ) z + Q(ξ) z^n`.

mod catalog;
mod classical;
pub mod integrate;
mod solve;
mod verify;

use serde::Serialize;

use crate::expr::{Expr, Symbol};

pub use catalog::{catalog, catalog_case, erratum_expr, CatalogCase, CatalogError, Erratum, CATALOG_SIZE};
pub use classical::{classical_solution, sign_condition_sweep, Branch, ClassicalBernoulli, SweepRow};
pub use integrate::{antiderivative, Antiderivative};
pub use solve::{integrating_factor, solve_general};
pub use verify::{find_pole_free_interval, verify_aux, DerivativeMode, VerifyError, VerifyOptions};

/// Name of the integration constant.
pub const C1: &str = "C1";

#[derive(Debug, Clone, PartialEq)]
pub struct AuxEquation {
    pub p: Expr,
    pub q: Expr,
    pub n: u32,
}

impl AuxEquation {
    pub fn new(p: Expr, q: Expr, n: u32) -> Self {
        assert!(n >= 2, "Bernoulli exponent must be at least 2");
        AuxEquation { p, q, n }
    }

    /// `P z + Q z^n` for a given `z`.
    pub fn rhs(&self, z: &Expr) -> Expr {
        &self.p * z + &self.q * &z.powi(self.n as i64)
    }

    /// Free symbols of `P` and `Q` other than ξ.
    pub fn parameters(&self) -> Vec<Symbol> {
        let xi = Symbol::xi();
        let mut s = self.p.free_symbols();
        s.extend(self.q.free_symbols());
        s.remove(&xi);
        s.into_iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionForm {
    Closed,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuxSolution {
    pub z: Expr,
    pub form: SolutionForm,
    pub notes: String,
}

impl AuxSolution {
    pub fn new(z: Expr, notes: impl Into<String>) -> Self {
        let form = if z.contains_integral() {
            SolutionForm::Quadrature
        } else {
            SolutionForm::Closed
        };
        AuxSolution {
            z,
            form,
            notes: notes.into(),
        }
    }

    pub fn constant() -> Symbol {
        Symbol::new(C1)
    }
}
