use std::fmt;

use serde::Serialize;

use crate::expr::{differentiate, Expr, Symbol};

/// `∂x^x ∂t^t u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partial {
    pub x: u32,
    pub t: u32,
}

impl Partial {
    pub const U: Partial = Partial { x: 0, t: 0 };

    pub const fn new(x: u32, t: u32) -> Self {
        Partial { x, t }
    }

    pub fn order(self) -> u32 {
        self.x + self.t
    }
}

impl fmt::Display for Partial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order() == 0 {
            return f.write_str("u");
        }
        write!(f, "u_{}{}", "x".repeat(self.x as usize), "t".repeat(self.t as usize))
    }
}

/// `coeff * Π factors`.
#[derive(Debug, Clone, PartialEq)]
pub struct PdeTerm {
    pub coeff: Expr,
    pub factors: Vec<Partial>,
}

/// A polynomial PDE in `u(x, t)` and its partial derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct PdeProblem {
    pub name: String,
    pub terms: Vec<PdeTerm>,
    /// Named family parameters with their values, e.g. `b = -2`.
    pub parameters: Vec<(Symbol, Expr)>,
}

pub const B_EQUATION: &str = "b-equation";

impl PdeProblem {
    /// `u_t - u_xxt + (b+1) u u_x - b u_x u_xx - u u_xxx = 0`.
    pub fn b_equation(b: Expr) -> Self {
        let one = Expr::one();
        let terms = vec![
            PdeTerm {
                coeff: one.clone(),
                factors: vec![Partial::new(0, 1)],
            },
            PdeTerm {
                coeff: -one.clone(),
                factors: vec![Partial::new(2, 1)],
            },
            PdeTerm {
                coeff: &b + &one,
                factors: vec![Partial::U, Partial::new(1, 0)],
            },
            PdeTerm {
                coeff: -b.clone(),
                factors: vec![Partial::new(1, 0), Partial::new(2, 0)],
            },
            PdeTerm {
                coeff: -one,
                factors: vec![Partial::U, Partial::new(3, 0)],
            },
        ];
        PdeProblem {
            name: B_EQUATION.into(),
            terms,
            parameters: vec![(Symbol::new("b"), b)],
        }
    }

    /// `u_t + u_x = 0`.
    pub fn advection() -> Self {
        PdeProblem {
            name: "advection".into(),
            terms: vec![
                PdeTerm {
                    coeff: Expr::one(),
                    factors: vec![Partial::new(0, 1)],
                },
                PdeTerm {
                    coeff: Expr::one(),
                    factors: vec![Partial::new(1, 0)],
                },
            ],
            parameters: Vec::new(),
        }
    }

    pub fn parameter(&self, name: &str) -> Option<&Expr> {
        self.parameters.iter().find(|(s, _)| s.name() == name).map(|(_, v)| v)
    }

    /// Whether this is the b-equation with `b` equal to the integer `b`.
    pub fn is_b_equation(&self, b: i64) -> bool {
        self.name == B_EQUATION && self.parameter("b").and_then(Expr::as_integer) == Some(b)
    }

    pub fn partials(&self) -> Vec<Partial> {
        let mut v: Vec<Partial> = self.terms.iter().flat_map(|t| t.factors.iter().copied()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Term values given a lookup for each partial derivative.
    pub fn term_values<E>(
        &self,
        mut partial: impl FnMut(Partial) -> Result<crate::numeric::CNum, E>,
        coeffs: &[crate::numeric::CNum],
    ) -> Result<Vec<crate::numeric::CNum>, E> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (t, c) in self.terms.iter().zip(coeffs) {
            let mut v = *c;
            for p in &t.factors {
                v *= partial(*p)?;
            }
            out.push(v);
        }
        Ok(out)
    }

    /// The left side for a symbolic `u(x, t)`.
    pub fn apply(&self, u: &Expr) -> Expr {
        let (x, t) = (Symbol::new("x"), Symbol::new("t"));
        let d = |p: Partial| {
            let mut e = u.clone();
            for _ in 0..p.x {
                e = differentiate(&e, &x);
            }
            for _ in 0..p.t {
                e = differentiate(&e, &t);
            }
            e
        };
        Expr::add_all(
            self.terms
                .iter()
                .map(|term| Expr::mul_all(std::iter::once(term.coeff.clone()).chain(term.factors.iter().map(|p| d(*p))))),
        )
    }
}

fn write_terms<T>(
    f: &mut fmt::Formatter<'_>,
    terms: &[T],
    coeff: impl Fn(&T) -> &Expr,
    factors: impl Fn(&T) -> Vec<String>,
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0 = 0");
    }
    for (i, t) in terms.iter().enumerate() {
        let mut c = coeff(t).clone();
        let negative = crate::expr::split_coeff(&c).0 < num_rational::BigRational::from_integer(0.into());
        if negative {
            c = -c;
        }
        match (i, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let fs = factors(t);
        let cs = if c.terms().len() > 1 { format!("({c})") } else { c.to_string() };
        if c.is_one() && !fs.is_empty() {
            write!(f, "{}", fs.join("*"))?;
        } else if fs.is_empty() {
            write!(f, "{cs}")?;
        } else {
            write!(f, "{cs}*{}", fs.join("*"))?;
        }
    }
    f.write_str(" = 0")
}

impl fmt::Display for PdeProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |t| &t.coeff, |t| t.factors.iter().map(|p| p.to_string()).collect())
    }
}

/// `coeff * Π U^{(m)}` with the orders sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeTerm {
    pub coeff: Expr,
    pub orders: Vec<u32>,
}

fn prime(m: u32) -> String {
    format!("U{}", "'".repeat(m as usize))
}

/// How the travelling-wave ODE was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OdeMode {
    /// Exact chain rule with `∂t → -cμ d/dξ`, `∂x → μ d/dξ`.
    Mechanical,
    /// The published reduced form of the `b = -2` equation, kept verbatim.
    Reported,
}

impl OdeMode {
    pub fn name(self) -> &'static str {
        match self {
            OdeMode::Mechanical => "mechanical",
            OdeMode::Reported => "reported",
        }
    }
}

/// ODE in `U(ξ)` with wave speed `c` and wave number `mu`.
#[derive(Debug, Clone, PartialEq)]
pub struct TravellingOde {
    pub terms: Vec<OdeTerm>,
    pub mode: OdeMode,
}

pub const WAVE_SPEED: &str = "c";
pub const WAVE_NUMBER: &str = "mu";

impl TravellingOde {
    pub fn max_order(&self) -> u32 {
        self.terms.iter().flat_map(|t| t.orders.iter().copied()).max().unwrap_or(0)
    }

    /// Left side with `U` replaced by `u`, derivatives in `var`.
    pub fn apply(&self, u: &Expr, var: &Symbol) -> Expr {
        let mut ders = vec![u.clone()];
        for _ in 0..self.max_order() {
            let next = differentiate(ders.last().expect("nonempty"), var);
            ders.push(next);
        }
        Expr::add_all(self.terms.iter().map(|t| {
            Expr::mul_all(std::iter::once(t.coeff.clone()).chain(t.orders.iter().map(|&m| ders[m as usize].clone())))
        }))
    }

    /// Term values from numeric `U, U', U'', …` and evaluated coefficients.
    pub fn term_values(&self, ders: &[crate::numeric::CNum], coeffs: &[crate::numeric::CNum]) -> Vec<crate::numeric::CNum> {
        self.terms
            .iter()
            .zip(coeffs)
            .map(|(t, c)| t.orders.iter().fold(*c, |acc, &m| acc * ders[m as usize]))
            .collect()
    }

    pub fn term_names(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|t| {
                let fs: Vec<String> = t.orders.iter().map(|&m| prime(m)).collect();
                format!("{}*{}", t.coeff, fs.join("*"))
            })
            .collect()
    }
}

impl fmt::Display for TravellingOde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |t| &t.coeff, |t| t.orders.iter().map(|&m| prime(m)).collect())
    }
}
