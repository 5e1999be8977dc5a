//! Twenty closed and quadrature forms of `z' = P z + Q z²`.
//!
//! Entries are transcriptions, not derivations; [`solve_general`](super::solve_general)
//! is the independent path and the two are compared in tests. Where the
//! original transcription does not satisfy its own equation the corrected
//! form is used and the original is kept as an [`Erratum`].

use serde::Serialize;

use super::{AuxEquation, AuxSolution};
use crate::expr::{parse, Expr};

pub const CATALOG_SIZE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    /// `P`, `Q` or `z`.
    pub field: &'static str,
    pub original: &'static str,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogCase {
    pub index: usize,
    pub eq: AuxEquation,
    pub solution: AuxSolution,
    /// Evaluation is complex for real parameters (imaginary square roots,
    /// or E₁ on its cut).
    pub complex: bool,
    pub errata: Vec<Erratum>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog index {0} out of range 1..=20")]
    OutOfRange(usize),
}

struct Row {
    p: &'static str,
    q: &'static str,
    z: &'static str,
    notes: &'static str,
    complex: bool,
    errata: &'static [Erratum],
}

const ROWS: [Row; CATALOG_SIZE] = [
    Row {
        p: "(A*xi + B)^2",
        q: "A*xi + B",
        z: "exp((1/3)*A^2*xi^3 + A*xi^2*B + xi*B^2)/(int(-exp((1/3)*A^2*xi^3 + A*xi^2*B + xi*B^2)*(A*xi + B), xi) + C1)",
        notes: "quadrature; pole where the integral reaches C1",
        complex: false,
        errata: &[Erratum {
            field: "Q",
            original: "4*xi + B",
            reason: "the solution column integrates Q = A*xi + B",
        }],
    },
    Row {
        p: "A*cos(xi)",
        q: "B*sin(xi)",
        z: "exp(A*sin(xi))/(int(-exp(A*sin(xi))*B*sin(xi), xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "A",
        q: "(C*xi + B)^2",
        z: "A^3/(-A^2*B^2 + 2*A*C*B - 2*C^2 - 2*A^2*C*xi*B + 2*A*C^2*xi - C^2*xi^2*A^2 + exp(-A*xi)*C1*A^3)",
        notes: "closed form; requires A != 0",
        complex: false,
        errata: &[Erratum {
            field: "Q",
            original: "C*xi + B",
            reason: "the solution column solves Q = (C*xi + B)^2",
        }],
    },
    Row {
        p: "A",
        q: "B",
        z: "A/(-B + exp(-A*xi)*C1*A)",
        notes: "closed form; logistic profile for B < 0 < C1",
        complex: false,
        errata: &[],
    },
    Row {
        p: "A",
        q: "exp(C*xi)",
        z: "(A + C)/(-exp(C*xi) + exp(-A*xi)*C1*A + exp(-A*xi)*C1*C)",
        notes: "closed form; requires A + C != 0",
        complex: false,
        errata: &[],
    },
    Row {
        p: "A",
        q: "exp(C*xi) + B",
        z: "(A + C)*A/(-A*exp(C*xi) - A*B - B*C + exp(-A*xi)*C1*A^2 + exp(-A*xi)*C1*A*C)",
        notes: "closed form; requires A != 0 and A + C != 0",
        complex: false,
        errata: &[],
    },
    Row {
        p: "A*sin(xi)",
        q: "C*xi + B",
        z: "exp(-A*cos(xi))/(int(-exp(-A*cos(xi))*(C*xi + B), xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "A*cos(xi)",
        q: "C*xi + B",
        z: "exp(A*sin(xi))/(int(-exp(A*sin(xi))*(C*xi + B), xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "exp(C*xi)",
        q: "A",
        z: "C*exp(exp(C*xi)/C)/(Ei1(-exp(C*xi)/C)*A + C1*C)",
        notes: "closed form in E1; for C > 0 the argument lies on the branch cut (upper-side value)",
        complex: true,
        errata: &[],
    },
    Row {
        p: "exp(C*xi)",
        q: "A*xi + B",
        z: "exp(exp(C*xi)/C)/(int(-exp(exp(C*xi)/C)*(A*xi + B), xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "A*xi + B",
        q: "exp(C*xi)",
        z: "(-2*A)^(1/2)*exp((1/2)*A*xi^2 + B*xi)/(pi^(1/2)*exp(-(B + C)^2/(2*A))*erf((A*xi + B + C)/(-2*A)^(1/2)) + C1*(-2*A)^(1/2))",
        notes: "closed form in erf; sqrt(-2A) is imaginary for A > 0",
        complex: true,
        errata: &[],
    },
    Row {
        p: "A*sin(xi)",
        q: "exp(C*xi)",
        z: "exp(-A*cos(xi))/(int(-exp(-A*cos(xi))*exp(C*xi), xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "exp(C*xi)",
        q: "A*sin(xi)",
        z: "exp(exp(C*xi)/C)/(int(-exp(exp(C*xi)/C)*sin(xi)*A, xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "A*cos(xi)",
        q: "exp(C*xi)",
        z: "exp(A*sin(xi))/(int(-exp(A*sin(xi))*exp(C*xi), xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "exp(C*xi)",
        q: "A*cos(xi)",
        z: "exp(exp(C*xi)/C)/(int(-exp(exp(C*xi)/C)*cos(xi)*A, xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "A*sin(xi)",
        q: "B*cos(xi)",
        z: "exp(-A*cos(xi))/(int(-exp(-A*cos(xi))*B*cos(xi), xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "C*xi + B",
        q: "A",
        z: "(-2*C)^(1/2)*exp((1/2)*C*xi^2 + B*xi)/(A*pi^(1/2)*exp(-B^2/(2*C))*erf((C*xi + B)/(-2*C)^(1/2)) + C1*(-2*C)^(1/2))",
        notes: "closed form in erf; sqrt(-2C) is imaginary for C > 0",
        complex: true,
        errata: &[Erratum {
            field: "P",
            original: "(C*xi + B)^2",
            reason: "the numerator exp((1/2)*C*xi^2 + B*xi) integrates P = C*xi + B",
        }],
    },
    Row {
        p: "exp(C*xi)",
        q: "exp(B*xi)",
        z: "exp(exp(C*xi)/C)/(int(-exp(exp(C*xi)/C)*exp(B*xi), xi) + C1)",
        notes: "quadrature",
        complex: false,
        errata: &[],
    },
    Row {
        p: "C*xi + B",
        q: "A*cos(xi)",
        z: "2*(-2*C)^(1/2)*exp((1/2)*C*xi^2 + B*xi)/(A*pi^(1/2)*exp(-(B + I)^2/(2*C))*erf((C*xi + B + I)/(-2*C)^(1/2)) + A*pi^(1/2)*exp(-(B - I)^2/(2*C))*erf((C*xi + B - I)/(-2*C)^(1/2)) + 2*C1*(-2*C)^(1/2))",
        notes: "closed form in erf with complex shifts; complex for real parameters",
        complex: true,
        errata: &[Erratum {
            field: "z",
            original: "2*(-2*C)^(1/2)*exp((1/2)*C*xi^2 + B*xi)/(A*pi^(1/2)*exp((B + I)^2/(2*C))*erf((C*xi + B + I)/(-2*C)^(1/2)) + A*pi^(1/2)*exp((B - I)^2/(2*C))*erf((C*xi + B - I)/(-2*C)^(1/2)) + 2*C1*(-2*C)^(1/2))",
            reason: "completing the square gives exp(-(B +- I)^2/(2*C)); with the positive sign the residual is O(1)",
        }],
    },
    Row {
        p: "C*xi + B",
        q: "A*sin(xi)",
        z: "2*(-2*C)^(1/2)*exp((1/2)*C*xi^2 + B*xi)/(-I*A*pi^(1/2)*exp(-(B + I)^2/(2*C))*erf((C*xi + B + I)/(-2*C)^(1/2)) + I*A*pi^(1/2)*exp(-(B - I)^2/(2*C))*erf((C*xi + B - I)/(-2*C)^(1/2)) + 2*C1*(-2*C)^(1/2))",
        notes: "closed form in erf with complex shifts; complex for real parameters",
        complex: true,
        errata: &[Erratum {
            field: "z",
            original: "-2*(-2*C)^(1/2)*exp((1/2)*C*xi^2 + B*xi)/(A*pi^(1/2)*exp((B + I)^2/(2*C))*erf((C*xi + B + I)/(-2*C)^(1/2)) - A*pi^(1/2)*exp((B - I)^2/(2*C))*erf((C*xi + B - I)/(-2*C)^(1/2)) + 2*C1*(-2*C)^(1/2))",
            reason: "sin = (e^{i xi} - e^{-i xi})/(2i) puts factors -I and I on the erf terms, and the exponents need the minus sign",
        }],
    },
];

fn build(index: usize) -> CatalogCase {
    let row = &ROWS[index - 1];
    let p = parse(row.p).expect("catalog P parses");
    let q = parse(row.q).expect("catalog Q parses");
    let z = parse(row.z).expect("catalog z parses");
    CatalogCase {
        index,
        eq: AuxEquation::new(p, q, 2),
        solution: AuxSolution::new(z, row.notes),
        complex: row.complex,
        errata: row.errata.to_vec(),
    }
}

/// Entry `index` (1-based).
pub fn catalog_case(index: usize) -> Result<CatalogCase, CatalogError> {
    if (1..=CATALOG_SIZE).contains(&index) {
        Ok(build(index))
    } else {
        Err(CatalogError::OutOfRange(index))
    }
}

pub fn catalog() -> Vec<CatalogCase> {
    (1..=CATALOG_SIZE).map(build).collect()
}

#[derive(Serialize)]
struct ExportRow {
    index: usize,
    #[serde(rename = "P")]
    p: String,
    #[serde(rename = "Q")]
    q: String,
    z: String,
}

impl CatalogCase {
    /// `{index, P, Q, z}` in the expression grammar.
    pub fn export_value(&self) -> serde_json::Value {
        serde_json::to_value(ExportRow {
            index: self.index,
            p: self.eq.p.to_string(),
            q: self.eq.q.to_string(),
            z: self.solution.z.to_string(),
        })
        .expect("plain strings serialize")
    }
}

/// Parsed original expression of an erratum.
pub fn erratum_expr(e: &Erratum) -> Expr {
    parse(e.original).expect("erratum parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_row_parses() {
        let all = catalog();
        assert_eq!(all.len(), 20);
        for c in &all {
            for e in &c.errata {
                erratum_expr(e);
            }
        }
    }

    #[test]
    fn bounds() {
        assert!(catalog_case(0).is_err());
        assert!(catalog_case(21).is_err());
        assert_eq!(catalog_case(4).unwrap().eq.p, Expr::symbol("A"));
    }
}
