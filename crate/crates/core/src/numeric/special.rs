//! Complex error function and exponential integral E₁.

use super::{principal_ln, upper_side, CNum};
use num_traits::Zero;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const TINY: f64 = 1e-300;

/// erf on ℂ.
///
/// Maclaurin series for `Re z < 2` (odd reflection first), otherwise
/// `1 - erfc z` with the Laplace continued fraction for erfc.
pub fn erf(z: CNum) -> CNum {
    if z.re < 0.0 {
        return -erf(-z);
    }
    if z.re < 2.0 {
        erf_series(z)
    } else {
        CNum::new(1.0, 0.0) - erfc_cf(z)
    }
}

fn erf_series(z: CNum) -> CNum {
    let z2 = z * z;
    let mut power = z; // (-1)^n z^(2n+1) / n!
    let mut sum = z;
    let min_terms = z2.norm().ceil() as usize + 2;
    for n in 1..2000 {
        power *= -z2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        sum += term;
        if n > min_terms && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

/// erfc for `Re z > 0` via modified Lentz on
/// `erfc z = e^{-z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + …))))`.
fn erfc_cf(z: CNum) -> CNum {
    let mut f = z;
    let mut c = z;
    let mut d = CNum::zero();
    for k in 1..5000 {
        let a = k as f64 * 0.5;
        d = z + a * d;
        if d.norm() < TINY {
            d = CNum::new(TINY, 0.0);
        }
        c = z + a / c;
        if c.norm() < TINY {
            c = CNum::new(TINY, 0.0);
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() / (f * std::f64::consts::PI.sqrt())
}

/// E₁ on ℂ∖{0}, principal branch with the cut on (−∞, 0]; arguments on the
/// cut take the value from the upper half-plane.
pub fn e1(z: CNum) -> CNum {
    let z = upper_side(z);
    let r = z.norm();
    if r > 2.0 && (z.re >= 0.0 || z.im.abs() >= z.re.abs()) {
        e1_cf(z)
    } else {
        e1_series(z)
    }
}

fn e1_series(z: CNum) -> CNum {
    // E1(z) = -γ - Ln z - Σ_{k≥1} (-z)^k / (k·k!)
    let mut term = CNum::new(1.0, 0.0);
    let mut sum = CNum::zero();
    let min_terms = z.norm().ceil() as usize + 2;
    for k in 1..2000 {
        term *= -z / k as f64;
        let add = term / k as f64;
        sum += add;
        if k > min_terms && add.norm() <= 1e-17 * sum.norm().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - principal_ln(z) - sum
}

fn e1_cf(z: CNum) -> CNum {
    // e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - …)))
    let mut b = z + 1.0;
    let mut c = CNum::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..5000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = (an * d + b).inv();
        c = b + an / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h * (-z).exp()
}
