//! Central finite differences with Richardson extrapolation.
//!
//! Each stencil has an error expansion in even powers of `h`. One
//! extrapolation step combines `D(h)` and `D(h/2)` and removes the `h²` term,
//! leaving `O(h⁴)`; every further level removes the next even power.

use super::{CNum, EvalError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiffError {
    #[error("derivative order {0} not supported (1..=3)")]
    Order(u32),
    #[error("stencil point {at} failed: {source}")]
    Stencil {
        at: CNum,
        #[source]
        source: EvalError,
    },
}

/// Default step `1e-3 (1 + |x0|)`.
pub fn default_step(x0: CNum) -> f64 {
    1e-3 * (1.0 + x0.norm())
}

fn stencil<F>(f: &mut F, x0: CNum, order: u32, h: f64) -> Result<CNum, DiffError>
where
    F: FnMut(CNum) -> Result<CNum, EvalError>,
{
    let mut at = |k: f64| {
        let x = x0 + k * h;
        f(x).map_err(|source| DiffError::Stencil { at: x, source })
    };
    Ok(match order {
        1 => (at(1.0)? - at(-1.0)?) / (2.0 * h),
        2 => (at(1.0)? - 2.0 * at(0.0)? + at(-1.0)?) / (h * h),
        3 => (at(2.0)? - 2.0 * at(1.0)? + 2.0 * at(-1.0)? - at(-2.0)?) / (2.0 * h * h * h),
        k => return Err(DiffError::Order(k)),
    })
}

/// Derivative of `f` at `x0` with step `h` (default [`default_step`]) and one
/// Richardson level.
pub fn numeric_diff<F>(f: F, x0: CNum, order: u32, h: Option<f64>) -> Result<CNum, DiffError>
where
    F: FnMut(CNum) -> Result<CNum, EvalError>,
{
    numeric_diff_with(f, x0, order, h.unwrap_or_else(|| default_step(x0)), 1)
}

/// As [`numeric_diff`] with `levels` extrapolation steps; the tableau uses
/// steps `h, h/2, …, h/2^levels`.
pub fn numeric_diff_with<F>(mut f: F, x0: CNum, order: u32, h: f64, levels: usize) -> Result<CNum, DiffError>
where
    F: FnMut(CNum) -> Result<CNum, EvalError>,
{
    let mut prev: Vec<CNum> = vec![stencil(&mut f, x0, order, h)?];
    for i in 1..=levels {
        let hi = h / f64::powi(2.0, i as i32);
        let mut row = vec![stencil(&mut f, x0, order, hi)?];
        let mut factor = 1.0;
        for j in 1..=i {
            factor *= 4.0;
            let r = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
            row.push(r);
        }
        prev = row;
    }
    Ok(*prev.last().expect("tableau row"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_first_derivative() {
        let d = numeric_diff(|x| Ok(x.exp()), CNum::new(0.0, 0.0), 1, Some(1e-2)).unwrap();
        assert!((d - 1.0).norm() < 1e-8);
    }

    #[test]
    fn sin_third_derivative() {
        let d = numeric_diff(|x| Ok(x.sin()), CNum::new(0.0, 0.0), 3, None).unwrap();
        assert!((d + 1.0).norm() < 1e-6);
    }

    #[test]
    fn second_derivative_of_cube() {
        let d = numeric_diff(|x| Ok(x * x * x), CNum::new(2.0, 0.0), 2, None).unwrap();
        assert!((d - 12.0).norm() < 1e-8);
    }
}
