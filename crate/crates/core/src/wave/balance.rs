use serde::Serialize;

use super::TravellingOde;

/// Degree `alpha N + beta` of one ODE term in `z` for an order-`N` ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TermDegree {
    pub alpha: u32,
    pub beta: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Balance {
    pub order: u32,
    /// Every positive integer `N` at which two terms with different `alpha` tie.
    pub candidates: Vec<u32>,
    pub degrees: Vec<TermDegree>,
    pub overridden: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BalanceError {
    #[error("no pair of terms balances at a positive integer order")]
    NoBalance,
    #[error("order override must be positive")]
    ZeroOrder,
}

/// `deg U^{(m)} = N + m`, since each derivative raises the degree in `z` by one.
pub fn term_degrees(ode: &TravellingOde) -> Vec<TermDegree> {
    ode.terms
        .iter()
        .map(|t| TermDegree {
            alpha: t.orders.len() as u32,
            beta: t.orders.iter().sum(),
        })
        .collect()
}

pub fn balance(ode: &TravellingOde) -> Result<Balance, BalanceError> {
    balance_with(ode, None)
}

/// As [`balance`], with `order` replacing the smallest candidate.
pub fn balance_with(ode: &TravellingOde, order: Option<u32>) -> Result<Balance, BalanceError> {
    let degrees = term_degrees(ode);
    let mut candidates = Vec::new();
    for (i, a) in degrees.iter().enumerate() {
        for b in &degrees[i + 1..] {
            if a.alpha == b.alpha {
                continue;
            }
            let num = b.beta as i64 - a.beta as i64;
            let den = a.alpha as i64 - b.alpha as i64;
            if num % den == 0 && num / den > 0 {
                candidates.push((num / den) as u32);
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    let (order, overridden) = match order {
        Some(0) => return Err(BalanceError::ZeroOrder),
        Some(n) => (n, true),
        None => (*candidates.first().ok_or(BalanceError::NoBalance)?, false),
    };
    Ok(Balance {
        order,
        candidates,
        degrees,
        overridden,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::wave::{OdeMode, OdeTerm};

    fn ode(terms: &[&[u32]]) -> TravellingOde {
        TravellingOde {
            terms: terms
                .iter()
                .map(|o| OdeTerm {
                    coeff: Expr::one(),
                    orders: o.to_vec(),
                })
                .collect(),
            mode: OdeMode::Mechanical,
        }
    }

    #[test]
    fn second_order_quadratic() {
        let b = balance(&ode(&[&[2], &[0, 0]])).unwrap();
        assert_eq!((b.order, b.candidates.clone()), (2, vec![2]));
    }

    #[test]
    fn linear_has_no_balance() {
        assert_eq!(balance(&ode(&[&[2], &[0]])), Err(BalanceError::NoBalance));
        assert_eq!(balance_with(&ode(&[&[2], &[0]]), Some(3)).unwrap().order, 3);
    }
}
