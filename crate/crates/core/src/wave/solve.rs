use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::mpoly::MPoly;
use super::{CoeffSystem, Sidecar, WAVE_NUMBER};
use crate::expr::{expand, Expr, Node, Symbol};
use crate::numeric::{eval, Bindings, CNum, EvalError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Constant,
    Pointwise,
    Export,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Defaults to the system's own unknown list.
    pub unknowns: Option<Vec<Symbol>>,
    /// Values for every remaining parameter; `mu = 1` by default.
    pub bindings: Bindings,
    /// Value given to unknowns left unconstrained.
    pub free_value: CNum,
    pub tol: f64,
    pub seed: u64,
    pub starts: usize,
    pub pointwise_grid: Vec<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            unknowns: None,
            bindings: [(Symbol::new(WAVE_NUMBER), CNum::new(1.0, 0.0))].into_iter().collect(),
            free_value: CNum::new(1.0, 0.0),
            tol: 1e-10,
            seed: 7,
            starts: 24,
            pointwise_grid: crate::numeric::linspace(-1.0, 1.0, 5),
        }
    }
}

/// `[re, im]` with negative zeros cleared.
pub(crate) fn pair(v: CNum) -> [f64; 2] {
    [v.re + 0.0, v.im + 0.0]
}

fn ser_values<S: Serializer>(v: &BTreeMap<Symbol, CNum>, s: S) -> Result<S::Ok, S::Error> {
    let m: BTreeMap<&str, [f64; 2]> = v.iter().map(|(k, c)| (k.name(), pair(*c))).collect();
    m.serialize(s)
}

fn ser_symbols<S: Serializer>(v: &[Symbol], s: S) -> Result<S::Ok, S::Error> {
    let m: Vec<&str> = v.iter().map(Symbol::name).collect();
    m.serialize(s)
}

/// Values are written as `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assignment {
    #[serde(serialize_with = "ser_values")]
    pub values: BTreeMap<Symbol, CNum>,
    /// Unknowns left unconstrained by the system and set to the free value.
    #[serde(serialize_with = "ser_symbols")]
    pub free: Vec<Symbol>,
    /// Largest `|eq_i|` at the assignment, each relative to `max(1, Σ|terms of eq_i|)`.
    pub residual: f64,
    pub real: bool,
}

impl Assignment {
    pub fn get(&self, name: &str) -> Option<CNum> {
        self.values.get(&Symbol::new(name)).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemExport {
    pub text: String,
    pub sidecar: Sidecar,
}

impl SystemExport {
    pub fn of(sys: &CoeffSystem) -> Self {
        SystemExport {
            text: sys.export_text(),
            sidecar: sys.sidecar(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSolutions {
    pub xi: f64,
    pub assignments: Vec<Assignment>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointwiseReport {
    pub points: Vec<PointSolutions>,
    /// Assignments found at every grid point within `1e-6`.
    pub xi_independent: Vec<Assignment>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum SolveOutcome {
    Solved { assignments: Vec<Assignment> },
    Pointwise { report: PointwiseReport },
    Unsolved { reason: String, export: SystemExport },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("cannot evaluate a coefficient: {0}")]
    Eval(#[from] EvalError),
    #[error("equation is not polynomial in the unknown {0}")]
    NotPolynomial(String),
}

pub fn solve_system(sys: &CoeffSystem, strategy: Strategy, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let unknowns = opts.unknowns.clone().unwrap_or_else(|| sys.unknowns.clone());
    match strategy {
        Strategy::Export => Ok(SolveOutcome::Unsolved {
            reason: "export requested".into(),
            export: SystemExport::of(sys),
        }),
        Strategy::Constant => {
            let xi = Symbol::xi();
            if sys.depends_on_xi() && !opts.bindings.contains_key(&xi) {
                return Ok(SolveOutcome::Unsolved {
                    reason: "equations depend on xi; the constant strategy needs xi-free coefficients".into(),
                    export: SystemExport::of(sys),
                });
            }
            let found = solve_bound(sys, &unknowns, &opts.bindings, opts)?;
            if found.is_empty() {
                Ok(SolveOutcome::Unsolved {
                    reason: format!("no assignment reached residual {:e}", opts.tol),
                    export: SystemExport::of(sys),
                })
            } else {
                Ok(SolveOutcome::Solved { assignments: found })
            }
        }
        Strategy::Pointwise => {
            let mut points = Vec::new();
            for &x in &opts.pointwise_grid {
                let mut b = opts.bindings.clone();
                b.insert(Symbol::xi(), CNum::new(x, 0.0));
                points.push(PointSolutions {
                    xi: x,
                    assignments: solve_bound(sys, &unknowns, &b, opts)?,
                });
            }
            let xi_independent = match points.split_first() {
                Some((first, rest)) => first
                    .assignments
                    .iter()
                    .filter(|a| rest.iter().all(|p| p.assignments.iter().any(|b| same(a, b, 1e-6))))
                    .cloned()
                    .collect(),
                None => Vec::new(),
            };
            Ok(SolveOutcome::Pointwise {
                report: PointwiseReport { points, xi_independent },
            })
        }
    }
}

/// Polynomial form of `e` in `unknowns`, with everything else evaluated.
fn to_mpoly(e: &Expr, unknowns: &[Symbol], bindings: &Bindings) -> Result<MPoly, SolveError> {
    let n = unknowns.len();
    let index = |s: &Symbol| unknowns.iter().position(|u| u == s);
    let mut p = MPoly::zero(n);
    for term in expand(e).terms() {
        let mut mono = vec![0u32; n];
        let mut rest = Vec::new();
        for f in term.factors() {
            match f.node() {
                Node::Symbol(s) if index(s).is_some() => mono[index(s).expect("checked")] += 1,
                Node::Pow(b, k) if b.as_symbol().and_then(|s| index(s)).is_some() => {
                    let i = index(b.as_symbol().expect("checked")).expect("checked");
                    match k.as_integer() {
                        Some(k) if k >= 0 => mono[i] += k as u32,
                        _ => return Err(SolveError::NotPolynomial(unknowns[i].name().into())),
                    }
                }
                _ => {
                    if let Some(u) = unknowns.iter().find(|u| f.contains_symbol(u)) {
                        return Err(SolveError::NotPolynomial(u.name().into()));
                    }
                    rest.push(f);
                }
            }
        }
        let c = eval(&Expr::mul_all(rest), bindings)?;
        p = p.add(&MPoly {
            nvars: n,
            terms: [(mono, c)].into_iter().collect(),
        });
    }
    Ok(p)
}

fn solve_bound(
    sys: &CoeffSystem,
    unknowns: &[Symbol],
    bindings: &Bindings,
    opts: &SolveOptions,
) -> Result<Vec<Assignment>, SolveError> {
    let original: Vec<MPoly> = sys
        .equations
        .iter()
        .map(|e| to_mpoly(e, unknowns, bindings))
        .collect::<Result<_, _>>()?;
    let mut ctx = Ctx {
        n: unknowns.len(),
        opts,
        original: &original,
        found: Vec::new(),
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        nodes: 0,
    };
    let eqs: Vec<MPoly> = original.iter().map(MPoly::normalized).collect();
    ctx.search(eqs, Vec::new(), 0);
    let mut out: Vec<Assignment> = Vec::new();
    for (x, free) in std::mem::take(&mut ctx.found) {
        let residual = max_residual(&original, &x);
        if residual > opts.tol {
            continue;
        }
        let a = Assignment {
            values: unknowns.iter().cloned().zip(x.iter().copied()).collect(),
            free: free.iter().map(|&i| unknowns[i].clone()).collect(),
            residual,
            real: x.iter().all(|v| v.im.abs() <= 1e-12 * (1.0 + v.re.abs())),
        };
        if !out.iter().any(|b| same(&a, b, 1e-8)) {
            out.push(a);
        }
    }
    out.sort_by(|a, b| {
        (!a.real)
            .cmp(&!b.real)
            .then_with(|| b.free.len().cmp(&a.free.len()))
            .then_with(|| {
                let ka: Vec<(f64, f64)> = a.values.values().map(|c| (c.re, c.im)).collect();
                let kb: Vec<(f64, f64)> = b.values.values().map(|c| (c.re, c.im)).collect();
                ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
            })
    });
    Ok(out)
}

fn same(a: &Assignment, b: &Assignment, tol: f64) -> bool {
    a.free == b.free
        && a.values.len() == b.values.len()
        && a
            .values
            .iter()
            .zip(&b.values)
            .all(|((ka, va), (kb, vb))| ka == kb && (va - vb).norm() <= tol * (1.0 + va.norm()))
}

fn max_residual(eqs: &[MPoly], x: &[CNum]) -> f64 {
    eqs.iter()
        .map(|p| {
            let (v, scale) = p.eval_scaled(x);
            v.norm() / scale.max(1.0)
        })
        .fold(0.0, f64::max)
}

enum Sub {
    Value(usize, CNum),
    /// `v = num / den`, valid when `den ≠ 0`.
    Ratio(usize, MPoly, MPoly),
}

const MAX_NODES: usize = 20_000;
const MAX_DEPTH: usize = 40;

struct Ctx<'a> {
    n: usize,
    opts: &'a SolveOptions,
    original: &'a [MPoly],
    found: Vec<(Vec<CNum>, Vec<usize>)>,
    rng: ChaCha8Rng,
    nodes: usize,
}

fn czero() -> CNum {
    CNum::new(0.0, 0.0)
}

impl Ctx<'_> {
    fn search(&mut self, eqs: Vec<MPoly>, subs: Vec<Sub>, depth: usize) {
        self.nodes += 1;
        if self.nodes > MAX_NODES {
            return;
        }
        let mut live = Vec::new();
        for e in eqs {
            if e.is_zero() {
                continue;
            }
            if e.constant_value().is_some() {
                return;
            }
            let e = e.normalized();
            if !live.contains(&e) {
                live.push(e);
            }
        }
        if live.is_empty() {
            self.finalize(&subs);
            return;
        }
        if depth > MAX_DEPTH {
            return self.numeric(live, subs, depth);
        }

        // v^k * r = 0 splits into v = 0 or r = 0.
        if let Some((i, m)) = live
            .iter()
            .enumerate()
            .map(|(i, e)| (i, e.common_monomial()))
            .find(|(_, m)| m.iter().any(|&k| k > 0))
        {
            for v in (0..self.n).filter(|&v| m[v] > 0) {
                let next = live.iter().map(|e| e.subst_value(v, czero())).collect();
                self.search(next, with(&subs, Sub::Value(v, czero())), depth + 1);
            }
            let mut next = live.clone();
            next[i] = live[i].div_monomial(&m);
            return self.search(next, subs, depth + 1);
        }

        // Univariate equation: branch on its roots.
        if let Some((i, v)) = live
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let vs = e.vars();
                (vs.len() == 1).then(|| (i, vs[0]))
            })
            .min_by_key(|(i, v)| live[*i].degree_in(*v))
        {
            let coeffs: Vec<CNum> = live[i]
                .coeffs_in(v)
                .iter()
                .map(|p| p.constant_value().unwrap_or_default())
                .collect();
            for r in poly_roots(&coeffs) {
                let next = live.iter().map(|e| e.subst_value(v, r)).collect();
                self.search(next, with(&subs, Sub::Value(v, r)), depth + 1);
            }
            return;
        }

        // Linear occurrence: a v + b = 0.
        let mut linear: Option<(usize, usize, bool, Vec<MPoly>)> = None;
        for (i, e) in live.iter().enumerate() {
            for v in e.vars() {
                if e.degree_in(v) != 1 {
                    continue;
                }
                let parts = e.coeffs_in(v);
                let constant = parts[1].constant_value().is_some();
                let better = match &linear {
                    None => true,
                    Some((_, _, c, _)) => constant && !*c,
                };
                if better {
                    linear = Some((i, v, constant, parts));
                }
            }
        }
        if let Some((i, v, constant, parts)) = linear {
            let (b, a) = (&parts[0], &parts[1]);
            let num = b.scale(CNum::new(-1.0, 0.0));
            if !constant {
                // a = 0 and b = 0
                let mut next = live.clone();
                next[i] = a.clone();
                next.push(b.clone());
                self.search(next, subs_clone(&subs), depth + 1);
            }
            let next = live
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, e)| e.subst_ratio(v, &num, a))
                .collect();
            return self.search(next, with(&subs, Sub::Ratio(v, num, a.clone())), depth + 1);
        }

        self.numeric(live, subs, depth)
    }

    /// Seeded multistart Levenberg–Marquardt on the remaining equations.
    fn numeric(&mut self, live: Vec<MPoly>, subs: Vec<Sub>, depth: usize) {
        let vars: Vec<usize> = {
            let mut v: Vec<usize> = live.iter().flat_map(|e| e.vars()).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut roots: Vec<Vec<CNum>> = Vec::new();
        for s in 0..self.opts.starts {
            let start: Vec<CNum> = vars
                .iter()
                .map(|_| {
                    let re = self.rng.gen_range(-2.0..2.0);
                    let im = if s % 2 == 0 { 0.0 } else { self.rng.gen_range(-1.0..1.0) };
                    CNum::new(re, im)
                })
                .collect();
            let mut x = vec![czero(); self.n];
            for (k, &v) in vars.iter().enumerate() {
                x[v] = start[k];
            }
            if let Some(x) = levenberg_marquardt(&live, &vars, x, 200) {
                if max_residual(&live, &x) <= 1e-12
                    && !roots.iter().any(|r| vars.iter().all(|&v| (r[v] - x[v]).norm() <= 1e-8 * (1.0 + x[v].norm())))
                {
                    roots.push(x);
                }
            }
        }
        for x in roots {
            let mut next_subs = subs_clone(&subs);
            let mut next = live.clone();
            for &v in &vars {
                next = next.iter().map(|e| e.subst_value(v, x[v])).collect();
                next_subs.push(Sub::Value(v, x[v]));
            }
            self.search(next, next_subs, depth + 1);
        }
    }

    fn finalize(&mut self, subs: &[Sub]) {
        let mut x: Vec<Option<CNum>> = vec![None; self.n];
        let mut free = Vec::new();
        let fill = |p: &MPoly, x: &mut Vec<Option<CNum>>, free: &mut Vec<usize>| {
            for v in p.vars() {
                if x[v].is_none() {
                    x[v] = Some(self.opts.free_value);
                    free.push(v);
                }
            }
        };
        for s in subs.iter().rev() {
            match s {
                Sub::Value(v, val) => x[*v] = Some(*val),
                Sub::Ratio(v, num, den) => {
                    fill(num, &mut x, &mut free);
                    fill(den, &mut x, &mut free);
                    let vals: Vec<CNum> = x.iter().map(|o| o.unwrap_or_default()).collect();
                    let d = den.eval(&vals);
                    if d.norm() <= 1e-10 * den.max_abs() {
                        return;
                    }
                    x[*v] = Some(num.eval(&vals) / d);
                }
            }
        }
        for (v, o) in x.iter_mut().enumerate() {
            if o.is_none() {
                *o = Some(self.opts.free_value);
                free.push(v);
            }
        }
        let mut vals: Vec<CNum> = x.into_iter().map(|o| o.expect("filled")).collect();
        free.sort_unstable();
        let bound: Vec<usize> = (0..self.n).filter(|v| !free.contains(v)).collect();
        if max_residual(self.original, &vals) > self.opts.tol && !bound.is_empty() {
            let eqs: Vec<MPoly> = self.original.iter().map(MPoly::normalized).collect();
            if let Some(p) = levenberg_marquardt(&eqs, &bound, vals.clone(), 50) {
                vals = p;
            }
        }
        self.found.push((vals, free));
    }
}

fn with(subs: &[Sub], s: Sub) -> Vec<Sub> {
    let mut v = subs_clone(subs);
    v.push(s);
    v
}

fn subs_clone(subs: &[Sub]) -> Vec<Sub> {
    subs.iter()
        .map(|s| match s {
            Sub::Value(v, x) => Sub::Value(*v, *x),
            Sub::Ratio(v, a, b) => Sub::Ratio(*v, a.clone(), b.clone()),
        })
        .collect()
}

/// Damped Gauss–Newton over `vars`, the other entries of `x` held fixed.
fn levenberg_marquardt(eqs: &[MPoly], vars: &[usize], mut x: Vec<CNum>, iters: usize) -> Option<Vec<CNum>> {
    let k = vars.len();
    let cost = |x: &[CNum]| eqs.iter().map(|e| e.eval(x).norm_sqr()).sum::<f64>();
    let mut c = cost(&x);
    let mut lambda = 1e-3;
    for _ in 0..iters {
        if c <= 1e-30 {
            break;
        }
        let f = DVector::from_iterator(eqs.len(), eqs.iter().map(|e| e.eval(&x)));
        let mut j = DMatrix::<CNum>::zeros(eqs.len(), k);
        for (r, e) in eqs.iter().enumerate() {
            let g = e.grad(&x);
            for (col, &v) in vars.iter().enumerate() {
                j[(r, col)] = g[v];
            }
        }
        let jh = j.adjoint();
        let jtj = &jh * &j;
        let rhs = -(&jh * &f);
        let mut improved = false;
        for _ in 0..12 {
            let mut m = jtj.clone();
            for d in 0..k {
                m[(d, d)] += CNum::new(lambda * (1.0 + jtj[(d, d)].norm()), 0.0);
            }
            let Some(step) = m.lu().solve(&rhs) else {
                lambda *= 10.0;
                continue;
            };
            let mut trial = x.clone();
            for (col, &v) in vars.iter().enumerate() {
                trial[v] += step[col];
            }
            let ct = cost(&trial);
            if ct.is_finite() && ct < c {
                x = trial;
                c = ct;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    x.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(x)
}

/// Roots of `Σ c_k x^k` via the companion matrix, Newton-polished; close
/// roots are merged.
pub(crate) fn poly_roots(coeffs: &[CNum]) -> Vec<CNum> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().map(|v| v.norm() == 0.0).unwrap_or(false) {
        c.pop();
    }
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![-c[0] / c[1]];
    }
    let lead = c[d];
    let mut m = DMatrix::<CNum>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = CNum::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i] / lead;
    }
    let Some(ev) = m.schur().eigenvalues() else {
        return Vec::new();
    };
    let eval_p = |x: CNum| c.iter().rev().fold(czero(), |acc, k| acc * x + k);
    let eval_dp = |x: CNum| {
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(czero(), |acc, (k, ck)| acc * x + ck * k as f64)
    };
    let mut roots: Vec<CNum> = ev
        .iter()
        .map(|&r| {
            let mut r = r;
            for _ in 0..3 {
                let dp = eval_dp(r);
                if dp.norm() == 0.0 {
                    break;
                }
                let next = r - eval_p(r) / dp;
                if eval_p(next).norm() < eval_p(r).norm() {
                    r = next;
                } else {
                    break;
                }
            }
            r
        })
        .collect();
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap_or(std::cmp::Ordering::Equal));
    let mut merged: Vec<(CNum, usize)> = Vec::new();
    for r in roots {
        match merged.iter_mut().find(|(m, k)| (*m / *k as f64 - r).norm() <= 1e-6 * (1.0 + r.norm())) {
            Some((m, k)) => {
                *m += r;
                *k += 1;
            }
            None => merged.push((r, 1)),
        }
    }
    merged
        .into_iter()
        .map(|(m, k)| {
            let r = m / k as f64;
            if r.im.abs() <= 1e-12 * (1.0 + r.re.abs()) {
                CNum::new(r.re, 0.0)
            } else {
                r
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::AuxEquation;
    use crate::expr::parse;
    use crate::numeric::bind;
    use crate::wave::OdeMode;

    fn system(eqs: &[&str], unknowns: &[&str]) -> CoeffSystem {
        CoeffSystem {
            equations: eqs.iter().map(|s| parse(s).unwrap()).collect(),
            unknowns: unknowns.iter().map(|s| Symbol::new(s)).collect(),
            parameters: vec![],
            aux: AuxEquation::new(Expr::zero(), Expr::one(), 2),
            aux_case: None,
            ode_mode: OdeMode::Mechanical,
        }
    }

    #[test]
    fn triangular() {
        let sys = system(&["g1*A", "g2 - 3"], &["g1", "g2"]);
        let opts = SolveOptions {
            bindings: bind([("A", 2.0)]),
            ..Default::default()
        };
        let SolveOutcome::Solved { assignments } = solve_system(&sys, Strategy::Constant, &opts).unwrap() else {
            panic!("unsolved");
        };
        assert_eq!(assignments.len(), 1);
        assert_eq!(assignments[0].get("g1"), Some(CNum::new(0.0, 0.0)));
        assert!((assignments[0].get("g2").unwrap() - 3.0).norm() < 1e-14);
    }

    #[test]
    fn quadratic_roots_and_family() {
        let sys = system(&["x^2 - 2", "x*y - x"], &["x", "y", "w"]);
        let SolveOutcome::Solved { assignments } =
            solve_system(&sys, Strategy::Constant, &SolveOptions::default()).unwrap()
        else {
            panic!("unsolved");
        };
        assert_eq!(assignments.len(), 2);
        for a in &assignments {
            assert!((a.get("y").unwrap() - 1.0).norm() < 1e-12);
            assert_eq!(a.free, vec![Symbol::new("w")]);
        }
    }

    #[test]
    fn roots_of_cubic() {
        let r = poly_roots(&[CNum::new(-6.0, 0.0), CNum::new(11.0, 0.0), CNum::new(-6.0, 0.0), CNum::new(1.0, 0.0)]);
        let re: Vec<f64> = r.iter().map(|c| c.re).collect();
        assert_eq!(r.len(), 3);
        for (a, b) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(poly_roots(&[CNum::new(0.0, 0.0), CNum::new(0.0, 0.0), CNum::new(1.0, 0.0)]).len(), 1);
    }

    #[test]
    fn xi_dependent_systems_are_exported() {
        let sys = system(&["g1*xi - 1"], &["g1"]);
        let out = solve_system(&sys, Strategy::Constant, &SolveOptions::default()).unwrap();
        assert!(matches!(out, SolveOutcome::Unsolved { .. }));
        let SolveOutcome::Pointwise { report } = solve_system(&sys, Strategy::Pointwise, &SolveOptions {
            pointwise_grid: vec![0.5, 1.0],
            ..Default::default()
        })
        .unwrap() else {
            panic!("pointwise");
        };
        assert!(report.xi_independent.is_empty());
        assert!((report.points[0].assignments[0].get("g1").unwrap() - 2.0).norm() < 1e-12);
    }
}
