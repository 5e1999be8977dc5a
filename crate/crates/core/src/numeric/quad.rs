//! Adaptive Gauss–Kronrod (7/15) quadrature along a straight complex path.

use super::{eval_env, CNum, Env, EvalError, EvalOptions};
use crate::expr::{Expr, Symbol};
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub rel: f64,
    pub abs: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            rel: 1e-10,
            abs: 1e-14,
            max_subdivisions: 10_000,
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the Kronrod nodes with odd index.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment {
    a: f64,
    b: f64,
    value: CNum,
    error: f64,
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Segment, EvalError>
where
    F: FnMut(f64) -> Result<CNum, EvalError>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx)? + f(center + dx)?;
        kronrod += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    Ok(Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
    })
}

/// `∫_a^b f(s) ds` over a real interval, adaptively bisecting the segment
/// with the largest error estimate (lowest index on ties).
pub fn integrate_real<F>(mut f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<CNum, EvalError>
where
    F: FnMut(f64) -> Result<CNum, EvalError>,
{
    if a == b {
        return Ok(CNum::zero());
    }
    if a > b {
        return integrate_real(f, b, a, spec).map(|v| -v);
    }
    let mut segs = vec![gk15(&mut f, a, b)?];
    let mut splits = 0usize;
    loop {
        let total: CNum = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.error).sum();
        if err <= spec.abs.max(spec.rel * total.norm()) {
            return Ok(total);
        }
        if splits >= spec.max_subdivisions {
            return Err(EvalError::Quadrature {
                error: err,
                subdivisions: splits,
            });
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .fold((0usize, f64::NEG_INFINITY), |(bi, be), (i, s)| {
                if s.error > be {
                    (i, s.error)
                } else {
                    (bi, be)
                }
            });
        let seg = segs.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            return Err(EvalError::Quadrature {
                error: err,
                subdivisions: splits,
            });
        }
        let left = gk15(&mut f, seg.a, mid)?;
        let right = gk15(&mut f, mid, seg.b)?;
        segs.push(left);
        segs.push(right);
        // swap_remove perturbs order; keep segments sorted for determinism.
        segs.sort_by(|x, y| x.a.total_cmp(&y.a));
        splits += 1;
    }
}

/// `∫_0^upper f(t) dt` along the straight path `t = s·upper`, `s ∈ [0, 1]`.
pub fn integrate_path<F>(mut f: F, upper: CNum, spec: &QuadSpec) -> Result<CNum, EvalError>
where
    F: FnMut(CNum) -> Result<CNum, EvalError>,
{
    if upper.is_zero() {
        return Ok(CNum::zero());
    }
    let inner = integrate_real(|s| f(upper * s), 0.0, 1.0, spec)?;
    Ok(inner * upper)
}

pub(crate) fn integrate_env(
    integrand: &Expr,
    var: &Symbol,
    upper: CNum,
    env: &Env<'_>,
    opts: &EvalOptions,
) -> Result<CNum, EvalError> {
    integrate_path(
        |t| {
            let frame = Env::Frame {
                sym: var,
                val: t,
                parent: env,
            };
            eval_env(integrand, &frame, opts)
        },
        upper,
        &opts.quad,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rule_is_exact_for_polynomials() {
        // K15 integrates degree ≤ 22 exactly; G7 degree ≤ 13.
        for deg in [0, 1, 5, 13, 22] {
            let mut f = |x: f64| Ok(CNum::new(x.powi(deg), 0.0));
            let seg = gk15(&mut f, 0.0, 1.0).unwrap();
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((seg.value.re - exact).abs() < 1e-15, "deg {deg}");
        }
    }

    #[test]
    fn gaussian_integral() {
        let v = integrate_real(|x| Ok(CNum::new((-x * x).exp(), 0.0)), 0.0, 6.0, &QuadSpec::default()).unwrap();
        assert!((v.re - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn complex_path() {
        // ∫_0^i e^t dt = e^i - 1
        let up = CNum::new(0.0, 1.0);
        let v = integrate_path(|t| Ok(t.exp()), up, &QuadSpec::default()).unwrap();
        assert!((v - (up.exp() - 1.0)).norm() < 1e-13);
    }
}
