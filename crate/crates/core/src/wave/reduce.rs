use std::collections::BTreeMap;

use super::{OdeMode, OdeTerm, PdeProblem, TravellingOde, WAVE_NUMBER, WAVE_SPEED};
use crate::expr::Expr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("the reported reduced form exists only for the b-equation with b = -2, not for {0}")]
    NoReportedForm(String),
}

/// Travelling-wave reduction with `ξ = mu (x - c t)`.
pub fn reduce_travelling(p: &PdeProblem, mode: OdeMode) -> Result<TravellingOde, ReduceError> {
    match mode {
        OdeMode::Mechanical => Ok(mechanical(p)),
        OdeMode::Reported if p.is_b_equation(-2) => Ok(reported_b_minus_two()),
        OdeMode::Reported => Err(ReduceError::NoReportedForm(p.to_string())),
    }
}

fn mechanical(p: &PdeProblem) -> TravellingOde {
    let mu = Expr::symbol(WAVE_NUMBER);
    let dt = -(Expr::symbol(WAVE_SPEED) * mu.clone());
    let mut collected: BTreeMap<Vec<u32>, Vec<Expr>> = BTreeMap::new();
    for t in &p.terms {
        let mut coeff = vec![t.coeff.clone()];
        let mut orders = Vec::new();
        for f in &t.factors {
            coeff.push(mu.powi(f.x as i64));
            coeff.push(dt.powi(f.t as i64));
            orders.push(f.order());
        }
        orders.sort_unstable();
        collected.entry(orders).or_default().push(Expr::mul_all(coeff));
    }
    let terms = order_terms(
        collected
            .into_iter()
            .map(|(orders, cs)| OdeTerm {
                coeff: Expr::add_all(cs),
                orders,
            })
            .filter(|t| !t.coeff.is_zero())
            .collect(),
    );
    TravellingOde {
        terms,
        mode: OdeMode::Mechanical,
    }
}

/// Linear terms first, then by number of factors and orders.
fn order_terms(mut terms: Vec<OdeTerm>) -> Vec<OdeTerm> {
    terms.sort_by(|a, b| a.orders.len().cmp(&b.orders.len()).then_with(|| a.orders.cmp(&b.orders)));
    terms
}

fn reported_b_minus_two() -> TravellingOde {
    let c = Expr::symbol(WAVE_SPEED);
    let mu = Expr::symbol(WAVE_NUMBER);
    let mu3 = mu.powi(3);
    let term = |coeff: Expr, orders: &[u32]| OdeTerm {
        coeff,
        orders: orders.to_vec(),
    };
    TravellingOde {
        terms: order_terms(vec![
            term(c, &[1]),
            term(-mu3.clone(), &[3]),
            term(-mu, &[0, 1]),
            term(Expr::int(2) * mu3.clone(), &[1, 2]),
            term(-mu3, &[0, 3]),
        ]),
        mode: OdeMode::Reported,
    }
}
