use std::fmt::Write as _;

use serde::Serialize;

use super::{OdeMode, TravellingOde, WAVE_SPEED};
use crate::bernoulli::AuxEquation;
use crate::expr::{differentiate, expand, poly_collect, Expr, NotPolynomial, Symbol};

/// Name of the collection variable.
pub const Z: &str = "z";

/// `U = Σ_{i=0}^{N} g_i z^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ansatz {
    pub order: u32,
    pub coeffs: Vec<Symbol>,
}

impl Ansatz {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1, "ansatz order must be positive");
        Ansatz {
            order,
            coeffs: (0..=order).map(|i| Symbol::new(&format!("g{i}"))).collect(),
        }
    }

    pub fn expr(&self, z: &Expr) -> Expr {
        Expr::add_all(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, g)| Expr::sym(g) * z.powi(i as i64)),
        )
    }
}

/// Coefficients of `z^0, z^1, …` of the substituted ODE, each set to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSystem {
    pub equations: Vec<Expr>,
    pub unknowns: Vec<Symbol>,
    pub parameters: Vec<Symbol>,
    pub aux: AuxEquation,
    pub aux_case: Option<usize>,
    pub ode_mode: OdeMode,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SystemError {
    #[error("the derivative rewrite needs a quadratic auxiliary equation, got n = {0}")]
    Exponent(u32),
    #[error(transparent)]
    NotPolynomial(#[from] NotPolynomial),
}

/// `d/dξ f(ξ, z)` along solutions of the auxiliary equation.
pub fn aux_derivative(f: &Expr, aux: &AuxEquation, z: &Symbol) -> Expr {
    let zs = Expr::sym(z);
    expand(&(differentiate(f, &Symbol::xi()) + differentiate(f, z) * aux.rhs(&zs)))
}

pub fn derive_system(ode: &TravellingOde, ansatz: &Ansatz, aux: &AuxEquation) -> Result<CoeffSystem, SystemError> {
    if aux.n != 2 {
        return Err(SystemError::Exponent(aux.n));
    }
    let z = Symbol::new(Z);
    let mut ders = vec![ansatz.expr(&Expr::sym(&z))];
    for _ in 0..ode.max_order() {
        let next = aux_derivative(ders.last().expect("nonempty"), aux, &z);
        ders.push(next);
    }
    let lhs = Expr::add_all(ode.terms.iter().map(|t| {
        Expr::mul_all(std::iter::once(t.coeff.clone()).chain(t.orders.iter().map(|&m| ders[m as usize].clone())))
    }));
    let poly = poly_collect(&expand(&lhs), &z)?;
    let mut unknowns = ansatz.coeffs.clone();
    unknowns.push(Symbol::new(WAVE_SPEED));
    let mut parameters = std::collections::BTreeSet::new();
    for e in &poly.coeffs {
        parameters.extend(e.free_symbols());
    }
    parameters.remove(&Symbol::xi());
    for u in &unknowns {
        parameters.remove(u);
    }
    Ok(CoeffSystem {
        equations: poly.coeffs,
        unknowns,
        parameters: parameters.into_iter().collect(),
        aux: aux.clone(),
        aux_case: None,
        ode_mode: ode.mode,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sidecar {
    pub unknowns: Vec<String>,
    pub parameters: Vec<String>,
    pub aux_case: Option<usize>,
    pub ode_mode: OdeMode,
}

impl CoeffSystem {
    pub fn with_case(mut self, case: usize) -> Self {
        self.aux_case = Some(case);
        self
    }

    /// Substitutes the bound parameters and drops them from the parameter list.
    pub fn bind_parameters(&self, params: &crate::numeric::Bindings) -> CoeffSystem {
        let map: std::collections::HashMap<Symbol, Expr> = self
            .parameters
            .iter()
            .filter_map(|p| params.get(p).map(|v| (p.clone(), super::complex_expr(*v))))
            .collect();
        CoeffSystem {
            equations: self.equations.iter().map(|e| crate::expr::substitute_many(e, &map)).collect(),
            parameters: self.parameters.iter().filter(|p| !map.contains_key(*p)).cloned().collect(),
            ..self.clone()
        }
    }

    pub fn depends_on_xi(&self) -> bool {
        let xi = Symbol::xi();
        self.equations.iter().any(|e| e.contains_symbol(&xi))
    }

    /// `Σ eq_i z^i`.
    pub fn reconstruct(&self, z: &Expr) -> Expr {
        Expr::add_all(
            self.equations
                .iter()
                .enumerate()
                .map(|(i, e)| e * &z.powi(i as i64)),
        )
    }

    /// One line per equation: `eq[i] := <expr> = 0;`.
    pub fn export_text(&self) -> String {
        let mut s = String::new();
        for (i, e) in self.equations.iter().enumerate() {
            writeln!(s, "eq[{i}] := {e} = 0;").expect("string write");
        }
        s
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            unknowns: self.unknowns.iter().map(|s| s.name().to_string()).collect(),
            parameters: self.parameters.iter().map(|s| s.name().to_string()).collect(),
            aux_case: self.aux_case,
            ode_mode: self.ode_mode,
        }
    }
}
