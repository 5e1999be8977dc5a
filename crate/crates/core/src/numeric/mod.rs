//! Complex evaluation of expressions.
//!
//! All arithmetic is done in `Complex64`. Principal branches are used for
//! `ln`, non-integer powers and `Ei1`; a zero imaginary part is treated as
//! `+0`, so negative reals sit on the upper side of every cut.

mod diff;
mod quad;
mod report;
mod sample;
pub mod special;

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::expr::{Expr, Func, NamedConst, Node, Symbol};

pub use diff::{numeric_diff, numeric_diff_with, DiffError};
pub use quad::{integrate_path, integrate_real, QuadSpec};
pub use report::{AllExcluded, ExcludedPoint, GridPoint, ReportBuilder, ResidualReport, TermMax};
pub use sample::{linspace, sample_curve, write_csv, CurveSample};

pub type CNum = Complex64;

/// Symbol values used by [`eval`].
pub type Bindings = BTreeMap<Symbol, CNum>;

/// Builds bindings from `(name, value)` pairs.
pub fn bind<I, V>(pairs: I) -> Bindings
where
    I: IntoIterator<Item = (&'static str, V)>,
    V: Into<CNum>,
{
    pairs
        .into_iter()
        .map(|(k, v)| (Symbol::new(k), v.into()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound symbol '{0}'")]
    Unbound(String),
    #[error("pole: denominator {denominator:e} is below threshold in {at}")]
    Pole { denominator: f64, at: String },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("quadrature did not converge: estimated error {error:e} after {subdivisions} subdivisions")]
    Quadrature { error: f64, subdivisions: usize },
}

/// Evaluation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub quad: QuadSpec,
    /// A denominator is rejected as a pole when its modulus falls below
    /// `pole_rel` times the summed moduli of its terms (or `pole_rel` for a
    /// single term). Zero only rejects exact zeros.
    pub pole_rel: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            quad: QuadSpec::default(),
            pole_rel: 0.0,
        }
    }
}

impl EvalOptions {
    /// Settings used by residual checks and curve sampling.
    pub fn with_pole_scan() -> Self {
        EvalOptions {
            pole_rel: DEFAULT_POLE_REL,
            ..Default::default()
        }
    }
}

pub const DEFAULT_POLE_REL: f64 = 1e-6;

/// Lookup chain: integration variables shadow outer bindings.
#[derive(Clone, Copy)]
pub(crate) enum Env<'a> {
    Root(&'a Bindings),
    Frame {
        sym: &'a Symbol,
        val: CNum,
        parent: &'a Env<'a>,
    },
}

impl Env<'_> {
    fn lookup(&self, s: &Symbol) -> Option<CNum> {
        match self {
            Env::Root(b) => b.get(s).copied(),
            Env::Frame { sym, val, parent } => {
                if *sym == s {
                    Some(*val)
                } else {
                    parent.lookup(s)
                }
            }
        }
    }
}

/// Evaluates `e` with default options.
pub fn eval(e: &Expr, bindings: &Bindings) -> Result<CNum, EvalError> {
    eval_with(e, bindings, &EvalOptions::default())
}

pub fn eval_with(e: &Expr, bindings: &Bindings, opts: &EvalOptions) -> Result<CNum, EvalError> {
    eval_env(e, &Env::Root(bindings), opts)
}

fn finite(v: CNum, e: &Expr) -> Result<CNum, EvalError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite(short(e)))
    }
}

fn short(e: &Expr) -> String {
    let s = e.to_string();
    if s.len() > 80 {
        format!("{}...", &s[..s.char_indices().nth(77).map_or(s.len(), |(i, _)| i)])
    } else {
        s
    }
}

/// `+0` for a zero imaginary part so negative reals take the upper side.
pub(crate) fn upper_side(z: CNum) -> CNum {
    if z.im == 0.0 {
        CNum::new(z.re, 0.0)
    } else {
        z
    }
}

pub(crate) fn principal_ln(z: CNum) -> CNum {
    upper_side(z).ln()
}

fn negative_rational_exponent(x: &Expr) -> bool {
    x.as_rational().is_some_and(|r| r < &num_rational::BigRational::zero())
}

fn powi(b: CNum, n: i64) -> CNum {
    if n < 0 {
        CNum::new(1.0, 0.0) / powi(b, -n)
    } else {
        let mut acc = CNum::new(1.0, 0.0);
        let mut base = b;
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            base *= base;
            k >>= 1;
        }
        acc
    }
}

fn pow_value(b: CNum, x: &Expr, xv: CNum) -> CNum {
    if let Some(n) = x.as_integer() {
        return powi(b, n);
    }
    if b.is_zero() {
        return if xv.re > 0.0 { CNum::zero() } else { CNum::new(f64::INFINITY, 0.0) };
    }
    if let Some(r) = x.as_rational() {
        // Real rational exponents: keep the real root of a positive base exact.
        let p = r.to_f64().unwrap_or(f64::NAN);
        if b.im == 0.0 && b.re > 0.0 {
            return CNum::new(b.re.powf(p), 0.0);
        }
        if p == 0.5 {
            return upper_side(b).sqrt();
        }
    }
    (xv * principal_ln(b)).exp()
}

/// Value of a denominator and the scale its size is judged against: the sum
/// of the moduli of its terms for a sum, `1` otherwise.
fn eval_scaled(b: &Expr, env: &Env<'_>, opts: &EvalOptions) -> Result<(CNum, f64), EvalError> {
    match b.node() {
        Node::Sum(ts) => {
            let mut acc = CNum::zero();
            let mut scale = 0.0;
            for t in ts {
                let v = eval_env(t, env, opts)?;
                scale += v.norm();
                acc += v;
            }
            Ok((acc, scale))
        }
        _ => Ok((eval_env(b, env, opts)?, 1.0)),
    }
}

pub(crate) fn eval_env(e: &Expr, env: &Env<'_>, opts: &EvalOptions) -> Result<CNum, EvalError> {
    let v = match e.node() {
        Node::Rational(r) => CNum::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
        Node::Const(NamedConst::Pi) => CNum::new(std::f64::consts::PI, 0.0),
        Node::Const(NamedConst::I) => CNum::new(0.0, 1.0),
        Node::Symbol(s) => env
            .lookup(s)
            .ok_or_else(|| EvalError::Unbound(s.name().to_string()))?,
        Node::Sum(ts) => {
            let mut acc = CNum::zero();
            for t in ts {
                acc += eval_env(t, env, opts)?;
            }
            acc
        }
        Node::Product(fs) => {
            let mut acc = CNum::new(1.0, 0.0);
            for f in fs {
                match f.node() {
                    Node::Pow(b, x) if negative_rational_exponent(x) => {
                        let (bv, scale) = eval_scaled(b, env, opts)?;
                        if bv.is_zero() || bv.norm() <= opts.pole_rel * scale {
                            return Err(EvalError::Pole {
                                denominator: bv.norm(),
                                at: short(e),
                            });
                        }
                        let xv = eval_env(x, env, opts)?;
                        acc *= pow_value(bv, x, xv);
                    }
                    _ => acc *= eval_env(f, env, opts)?,
                }
            }
            acc
        }
        Node::Pow(b, x) => {
            let (bv, scale) = if negative_rational_exponent(x) {
                eval_scaled(b, env, opts)?
            } else {
                (eval_env(b, env, opts)?, 0.0)
            };
            let xv = eval_env(x, env, opts)?;
            if negative_rational_exponent(x) && (bv.is_zero() || bv.norm() <= opts.pole_rel * scale) {
                return Err(EvalError::Pole {
                    denominator: bv.norm(),
                    at: short(e),
                });
            }
            pow_value(bv, x, xv)
        }
        Node::Func(f, a) => {
            let av = eval_env(a, env, opts)?;
            match f {
                Func::Exp => av.exp(),
                Func::Ln => {
                    if av.is_zero() {
                        return Err(EvalError::Pole {
                            denominator: 0.0,
                            at: short(e),
                        });
                    }
                    principal_ln(av)
                }
                Func::Sin => av.sin(),
                Func::Cos => av.cos(),
                Func::Erf => special::erf(av),
                Func::Ei1 => {
                    if av.is_zero() {
                        return Err(EvalError::Pole {
                            denominator: 0.0,
                            at: short(e),
                        });
                    }
                    special::e1(av)
                }
            }
        }
        Node::Integral(int) => {
            let upper = eval_env(&int.upper, env, opts)?;
            quad::integrate_env(&int.integrand, &int.var, upper, env, opts)?
        }
    };
    finite(v, e)
}

/// Failure of [`equal_numeric`] at a specific sample.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("evaluation failed at sample {index}: {source}")]
pub struct SampleError {
    pub index: usize,
    pub sample: Bindings,
    #[source]
    pub source: EvalError,
}

/// True iff `|a - b| <= tol * max(1, |a|)` at every sample.
pub fn equal_numeric(a: &Expr, b: &Expr, samples: &[Bindings], tol: f64) -> Result<bool, SampleError> {
    for (index, s) in samples.iter().enumerate() {
        let wrap = |source| SampleError {
            index,
            sample: s.clone(),
            source,
        };
        let va = eval(a, s).map_err(wrap)?;
        let vb = eval(b, s).map_err(wrap)?;
        if (va - vb).norm() > tol * va.norm().max(1.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Realness test used when reporting: `|Im| <= 1e-9 (1 + |Re|)`.
pub fn is_effectively_real(v: CNum) -> bool {
    v.im.abs() <= 1e-9 * (1.0 + v.re.abs())
}
