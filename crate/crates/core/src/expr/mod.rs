//! Immutable symbolic expressions.
//!
//! Every [`Expr`] produced through the public constructors is already in
//! normal form: sums and products are flattened, numeric constants are folded
//! into exact rationals, like terms and like bases are merged, and operands are
//! sorted by the canonical key described on [`canonical_cmp`]. Simplification
//! is intentionally shallow; there is no trigonometric rewriting and products
//! are only distributed by [`expand`].

mod diff;
mod parse;
mod poly;
mod render;
mod subst;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use diff::differentiate;
pub use parse::{parse, ParseError};
pub use poly::{expand, poly_collect, NotPolynomial, PolyInZ};
pub use subst::{substitute, substitute_many};

/// Name of the travelling-wave variable ξ.
pub const XI: &str = "xi";

/// Largest integer exponent folded into an exact rational power.
const MAX_FOLD_EXPONENT: i64 = 4096;

/// A named symbol. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn xi() -> Self {
        Symbol::new(XI)
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Irrational or non-real constants kept symbolic until evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedConst {
    Pi,
    /// The imaginary unit.
    I,
}

/// Function vocabulary of the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Erf,
    /// Exponential integral E₁ (principal branch).
    Ei1,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Erf => "erf",
            Func::Ei1 => "Ei1",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "erf" => Func::Erf,
            "Ei1" => Func::Ei1,
            _ => return None,
        })
    }
}

/// `∫₀^upper integrand d(var)`. `var` is bound inside `integrand`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Integral {
    pub integrand: Expr,
    pub var: Symbol,
    pub upper: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Rational(BigRational),
    Const(NamedConst),
    Symbol(Symbol),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Expr, Expr),
    Func(Func, Expr),
    Integral(Integral),
}

/// Shared, immutable expression handle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr(Arc<Node>);

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Expr {
    fn from_node(node: Node) -> Self {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn ptr_eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    // ---- raw constructors (no normalization) ----

    /// Builds a node verbatim, bypassing normalization. Intended for tests of
    /// [`normalize`] and for parsers of foreign formats.
    pub fn raw(node: Node) -> Self {
        Expr::from_node(node)
    }

    // ---- atoms ----

    pub fn rational(r: BigRational) -> Self {
        Expr::from_node(Node::Rational(r))
    }

    pub fn int(n: i64) -> Self {
        Expr::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Expr::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Expr::int(0)
    }

    pub fn one() -> Self {
        Expr::int(1)
    }

    /// Exact rational value of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite constant");
        Expr::rational(BigRational::from_float(x).expect("finite"))
    }

    /// Rational with a small denominator when `x` is within `1e-13` of one,
    /// otherwise the exact value of the double.
    pub fn from_f64_approx(x: f64) -> Self {
        match small_rational(x, 1_000_000, 1e-13) {
            Some((p, q)) => Expr::frac(p, q),
            None => Expr::from_f64(x),
        }
    }

    pub fn symbol(name: &str) -> Self {
        Expr::from_node(Node::Symbol(Symbol::new(name)))
    }

    pub fn sym(s: &Symbol) -> Self {
        Expr::from_node(Node::Symbol(s.clone()))
    }

    pub fn xi() -> Self {
        Expr::symbol(XI)
    }

    pub fn pi() -> Self {
        Expr::from_node(Node::Const(NamedConst::Pi))
    }

    pub fn imag_unit() -> Self {
        Expr::from_node(Node::Const(NamedConst::I))
    }

    // ---- queries ----

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self.node() {
            Node::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self.node() {
            Node::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// Top-level additive terms (a single-element slice for non-sums).
    pub fn terms(&self) -> Vec<Expr> {
        match self.node() {
            Node::Sum(ts) => ts.clone(),
            _ if self.is_zero() => Vec::new(),
            _ => vec![self.clone()],
        }
    }

    /// Top-level multiplicative factors.
    pub fn factors(&self) -> Vec<Expr> {
        match self.node() {
            Node::Product(fs) => fs.clone(),
            _ => vec![self.clone()],
        }
    }

    /// True when `s` occurs free (integration variables are bound).
    pub fn contains_symbol(&self, s: &Symbol) -> bool {
        match self.node() {
            Node::Rational(_) | Node::Const(_) => false,
            Node::Symbol(t) => t == s,
            Node::Sum(xs) | Node::Product(xs) => xs.iter().any(|x| x.contains_symbol(s)),
            Node::Pow(b, e) => b.contains_symbol(s) || e.contains_symbol(s),
            Node::Func(_, a) => a.contains_symbol(s),
            Node::Integral(int) => {
                int.upper.contains_symbol(s)
                    || (&int.var != s && int.integrand.contains_symbol(s))
            }
        }
    }

    pub fn free_of(&self, s: &Symbol) -> bool {
        !self.contains_symbol(s)
    }

    /// Free symbols in sorted order.
    pub fn free_symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_symbols(&mut out, &[]);
        out
    }

    fn collect_symbols(&self, out: &mut std::collections::BTreeSet<Symbol>, bound: &[&Symbol]) {
        match self.node() {
            Node::Rational(_) | Node::Const(_) => {}
            Node::Symbol(t) => {
                if !bound.contains(&t) {
                    out.insert(t.clone());
                }
            }
            Node::Sum(xs) | Node::Product(xs) => {
                for x in xs {
                    x.collect_symbols(out, bound);
                }
            }
            Node::Pow(b, e) => {
                b.collect_symbols(out, bound);
                e.collect_symbols(out, bound);
            }
            Node::Func(_, a) => a.collect_symbols(out, bound),
            Node::Integral(int) => {
                int.upper.collect_symbols(out, bound);
                let mut inner = bound.to_vec();
                inner.push(&int.var);
                int.integrand.collect_symbols(out, &inner);
            }
        }
    }

    pub fn contains_integral(&self) -> bool {
        match self.node() {
            Node::Rational(_) | Node::Const(_) | Node::Symbol(_) => false,
            Node::Sum(xs) | Node::Product(xs) => xs.iter().any(Expr::contains_integral),
            Node::Pow(b, e) => b.contains_integral() || e.contains_integral(),
            Node::Func(_, a) => a.contains_integral(),
            Node::Integral(_) => true,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Rational(_) | Node::Const(_) | Node::Symbol(_) => 0,
            Node::Sum(xs) | Node::Product(xs) => xs.iter().map(Expr::size).sum(),
            Node::Pow(b, e) => b.size() + e.size(),
            Node::Func(_, a) => a.size(),
            Node::Integral(int) => int.integrand.size() + int.upper.size(),
        }
    }

    // ---- normalizing constructors ----

    pub fn add_all<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
        add(terms.into_iter().collect())
    }

    pub fn mul_all<I: IntoIterator<Item = Expr>>(factors: I) -> Expr {
        mul(factors.into_iter().collect())
    }

    pub fn pow(&self, exponent: &Expr) -> Expr {
        pow(self.clone(), exponent.clone())
    }

    pub fn powi(&self, n: i64) -> Expr {
        pow(self.clone(), Expr::int(n))
    }

    pub fn sqrt(&self) -> Expr {
        pow(self.clone(), Expr::frac(1, 2))
    }

    pub fn recip(&self) -> Expr {
        self.powi(-1)
    }

    pub fn apply(f: Func, arg: Expr) -> Expr {
        func(f, arg)
    }

    pub fn exp(&self) -> Expr {
        func(Func::Exp, self.clone())
    }

    pub fn ln(&self) -> Expr {
        func(Func::Ln, self.clone())
    }

    pub fn sin(&self) -> Expr {
        func(Func::Sin, self.clone())
    }

    pub fn cos(&self) -> Expr {
        func(Func::Cos, self.clone())
    }

    pub fn erf(&self) -> Expr {
        func(Func::Erf, self.clone())
    }

    pub fn ei1(&self) -> Expr {
        func(Func::Ei1, self.clone())
    }

    /// `∫₀^upper integrand d(var)`.
    pub fn integral(integrand: Expr, var: &Symbol, upper: Expr) -> Expr {
        if integrand.is_zero() {
            return Expr::zero();
        }
        if upper.is_zero() {
            return Expr::zero();
        }
        Expr::from_node(Node::Integral(Integral {
            integrand,
            var: var.clone(),
            upper,
        }))
    }

    /// `∫₀^var integrand d(var)`, the form the grammar spells `int(f, var)`.
    pub fn integral_to_var(integrand: Expr, var: &Symbol) -> Expr {
        Expr::integral(integrand, var, Expr::sym(var))
    }
}

/// Rebuilds `e` bottom-up through the normalizing constructors.
pub fn normalize(e: &Expr) -> Expr {
    match e.node() {
        Node::Rational(_) | Node::Const(_) | Node::Symbol(_) => e.clone(),
        Node::Sum(xs) => add(xs.iter().map(normalize).collect()),
        Node::Product(xs) => mul(xs.iter().map(normalize).collect()),
        Node::Pow(b, x) => pow(normalize(b), normalize(x)),
        Node::Func(f, a) => func(*f, normalize(a)),
        Node::Integral(int) => Expr::integral(normalize(&int.integrand), &int.var, normalize(&int.upper)),
    }
}

// ---------------------------------------------------------------------------
// canonical ordering

fn variant_rank(n: &Node) -> u8 {
    match n {
        Node::Rational(_) => 0,
        Node::Const(_) => 1,
        Node::Symbol(_) => 2,
        Node::Func(..) => 3,
        Node::Integral(_) => 4,
        Node::Product(_) => 5,
        Node::Sum(_) => 6,
        Node::Pow(..) => 7,
    }
}

fn split_pow(e: &Expr) -> Option<(&Expr, &Expr)> {
    match e.node() {
        Node::Pow(b, x) => Some((b, x)),
        _ => None,
    }
}

/// Total order used to sort operands of products, ascending, so the rational
/// coefficient leads. Sum terms are ordered by their coefficient-free monomial
/// under this key, descending (`x^2 + 2*x + 1`, `A*xi + B`).
///
/// Powers are keyed by `(base, exponent)`, and any other expression `e` is
/// keyed as `(e, 1)` when compared against a power, so `A < A^2 < B`. Among
/// non-powers the key is `(variant rank, payload)`, with ranks
/// rational < named constant < symbol < function < integral < product < sum.
/// Payloads compare numerically for rationals, by name for symbols, by
/// `(function id, argument)` for functions, by `(var, upper, integrand)` for
/// integrals, and lexicographically by operand list for sums and products.
pub fn canonical_cmp(a: &Expr, b: &Expr) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    match (split_pow(a), split_pow(b)) {
        (None, None) => cmp_non_pow(a, b),
        (pa, pb) => {
            let one = Expr::one();
            let (ab, ae) = pa.unwrap_or((a, &one));
            let (bb, be) = pb.unwrap_or((b, &one));
            canonical_cmp(ab, bb).then_with(|| canonical_cmp(ae, be))
        }
    }
}

/// Order of terms inside a sum: descending by monomial, then by coefficient.
fn sum_cmp(a: &Expr, b: &Expr) -> Ordering {
    let (ca, ma) = split_coeff(a);
    let (cb, mb) = split_coeff(b);
    canonical_cmp(&mb, &ma).then_with(|| ca.cmp(&cb))
}

fn cmp_lists(a: &[Expr], b: &[Expr]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = canonical_cmp(x, y);
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

fn cmp_non_pow(a: &Expr, b: &Expr) -> Ordering {
    let (na, nb) = (a.node(), b.node());
    let r = variant_rank(na).cmp(&variant_rank(nb));
    if r != Ordering::Equal {
        return r;
    }
    match (na, nb) {
        (Node::Rational(x), Node::Rational(y)) => x.cmp(y),
        (Node::Const(x), Node::Const(y)) => x.cmp(y),
        (Node::Symbol(x), Node::Symbol(y)) => x.name().cmp(y.name()),
        (Node::Func(f, x), Node::Func(g, y)) => f.cmp(g).then_with(|| canonical_cmp(x, y)),
        (Node::Integral(x), Node::Integral(y)) => x
            .var
            .name()
            .cmp(y.var.name())
            .then_with(|| canonical_cmp(&x.upper, &y.upper))
            .then_with(|| canonical_cmp(&x.integrand, &y.integrand)),
        (Node::Product(x), Node::Product(y)) | (Node::Sum(x), Node::Sum(y)) => cmp_lists(x, y),
        _ => unreachable!("ranks equal but variants differ"),
    }
}

// ---------------------------------------------------------------------------
// normalizing constructors

fn rat_zero() -> BigRational {
    BigRational::zero()
}

/// Splits a term into its rational coefficient and remaining monomial.
pub(crate) fn split_coeff(e: &Expr) -> (BigRational, Expr) {
    match e.node() {
        Node::Rational(r) => (r.clone(), Expr::one()),
        Node::Product(fs) => match fs[0].node() {
            Node::Rational(r) => {
                let rest: Vec<Expr> = fs[1..].to_vec();
                let mono = if rest.len() == 1 {
                    rest[0].clone()
                } else {
                    Expr::from_node(Node::Product(rest))
                };
                (r.clone(), mono)
            }
            _ => (BigRational::one(), e.clone()),
        },
        _ => (BigRational::one(), e.clone()),
    }
}

fn scale(c: BigRational, mono: Expr) -> Expr {
    if c.is_zero() {
        return Expr::zero();
    }
    if mono.is_one() {
        return Expr::rational(c);
    }
    if c.is_one() {
        return mono;
    }
    let mut fs = vec![Expr::rational(c)];
    match mono.node() {
        Node::Product(xs) => fs.extend(xs.iter().cloned()),
        _ => fs.push(mono),
    }
    Expr::from_node(Node::Product(fs))
}

pub(crate) fn add(terms: Vec<Expr>) -> Expr {
    let mut flat: Vec<Expr> = Vec::with_capacity(terms.len());
    let mut stack = terms;
    stack.reverse();
    while let Some(t) = stack.pop() {
        match t.node() {
            Node::Sum(xs) => {
                for x in xs.iter().rev() {
                    stack.push(x.clone());
                }
            }
            _ => flat.push(t),
        }
    }
    let mut constant = rat_zero();
    let mut pairs: Vec<(BigRational, Expr)> = Vec::with_capacity(flat.len());
    for t in flat {
        if let Node::Rational(r) = t.node() {
            constant += r;
            continue;
        }
        pairs.push(split_coeff(&t));
    }
    pairs.sort_by(|a, b| canonical_cmp(&a.1, &b.1));
    let mut out: Vec<Expr> = Vec::with_capacity(pairs.len() + 1);
    let mut iter = pairs.into_iter().peekable();
    while let Some((mut c, mono)) = iter.next() {
        while let Some((c2, _)) = iter.next_if(|(_, m)| *m == mono) {
            c += c2;
        }
        if !c.is_zero() {
            out.push(scale(c, mono));
        }
    }
    if !constant.is_zero() {
        out.push(Expr::rational(constant));
    }
    out.sort_by(sum_cmp);
    match out.len() {
        0 => Expr::zero(),
        1 => out.pop().expect("one term"),
        _ => Expr::from_node(Node::Sum(out)),
    }
}

pub(crate) fn mul(factors: Vec<Expr>) -> Expr {
    let mut pending = factors;
    // Folding powers can emit fresh products (I^3 = -I), so iterate.
    for _ in 0..8 {
        let mut flat: Vec<Expr> = Vec::with_capacity(pending.len());
        let mut stack = pending;
        stack.reverse();
        while let Some(f) = stack.pop() {
            match f.node() {
                Node::Product(xs) => {
                    for x in xs.iter().rev() {
                        stack.push(x.clone());
                    }
                }
                _ => flat.push(f),
            }
        }

        let mut coeff = BigRational::one();
        let mut exp_args: Vec<Expr> = Vec::new();
        let mut based: Vec<(Expr, Expr)> = Vec::with_capacity(flat.len());
        for f in flat {
            match f.node() {
                Node::Rational(r) => coeff *= r,
                Node::Func(Func::Exp, a) => exp_args.push(a.clone()),
                Node::Pow(b, x) => based.push((b.clone(), x.clone())),
                _ => based.push((f.clone(), Expr::one())),
            }
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        based.sort_by(|a, b| canonical_cmp(&a.0, &b.0));

        let mut merged: Vec<Expr> = Vec::with_capacity(based.len() + 1);
        let mut again = false;
        let mut iter = based.into_iter().peekable();
        while let Some((base, first)) = iter.next() {
            let mut exps = vec![first];
            while let Some((_, x)) = iter.next_if(|(b, _)| *b == base) {
                exps.push(x);
            }
            let combined = if exps.len() == 1 {
                // Already a normalized factor unless the exponent is 1.
                let x = exps.pop().expect("one exponent");
                if x.is_one() {
                    merged.push(base);
                    continue;
                }
                pow(base, x)
            } else {
                pow(base, add(exps))
            };
            match combined.node() {
                Node::Rational(r) => coeff *= r,
                Node::Product(_) | Node::Func(Func::Exp, _) => {
                    again = true;
                    merged.push(combined);
                }
                _ => merged.push(combined),
            }
        }
        if !exp_args.is_empty() {
            let e = func(Func::Exp, add(exp_args));
            if !e.is_one() {
                merged.push(e);
            }
        }
        if again {
            merged.push(Expr::rational(coeff));
            pending = merged;
            continue;
        }
        if coeff.is_zero() {
            return Expr::zero();
        }
        merged.sort_by(canonical_cmp);
        if merged.is_empty() {
            return Expr::rational(coeff);
        }
        if coeff.is_one() && merged.len() == 1 {
            return merged.pop().expect("one factor");
        }
        let mut fs = Vec::with_capacity(merged.len() + 1);
        if !coeff.is_one() {
            fs.push(Expr::rational(coeff));
        }
        fs.extend(merged);
        return Expr::from_node(Node::Product(fs));
    }
    unreachable!("product normalization did not settle")
}

fn rational_powi(r: &BigRational, n: i64) -> Option<BigRational> {
    if n.abs() > MAX_FOLD_EXPONENT {
        return None;
    }
    if r.is_zero() && n < 0 {
        return None;
    }
    let mut acc = BigRational::one();
    let base = if n < 0 { r.recip() } else { r.clone() };
    let mut k = n.unsigned_abs();
    let mut b = base;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        k >>= 1;
    }
    Some(acc)
}

pub(crate) fn pow(base: Expr, exponent: Expr) -> Expr {
    if exponent.is_zero() || base.is_one() {
        return Expr::one();
    }
    if exponent.is_one() {
        return base;
    }
    let int_exp = exponent.as_integer();
    if base.is_zero() {
        if exponent.as_rational().is_some_and(|r| r.is_positive()) {
            return Expr::zero();
        }
        // every negative power of zero is the same undefined value
        if exponent.as_rational().is_some_and(|r| r.is_negative()) {
            return Expr::from_node(Node::Pow(base, Expr::int(-1)));
        }
        return Expr::from_node(Node::Pow(base, exponent));
    }
    if let Some(n) = int_exp {
        match base.node() {
            Node::Rational(r) => {
                if let Some(v) = rational_powi(r, n) {
                    return Expr::rational(v);
                }
            }
            Node::Const(NamedConst::I) => {
                return match n.rem_euclid(4) {
                    0 => Expr::one(),
                    1 => base,
                    2 => Expr::int(-1),
                    _ => Expr::from_node(Node::Product(vec![Expr::int(-1), base])),
                };
            }
            Node::Pow(b, x) => {
                return pow(b.clone(), mul(vec![x.clone(), exponent]));
            }
            Node::Product(fs) => {
                return mul(fs.iter().map(|f| pow(f.clone(), exponent.clone())).collect());
            }
            Node::Func(Func::Exp, a) => {
                return func(Func::Exp, mul(vec![a.clone(), exponent]));
            }
            _ => {}
        }
    }
    Expr::from_node(Node::Pow(base, exponent))
}

pub(crate) fn func(f: Func, arg: Expr) -> Expr {
    if arg.is_zero() {
        match f {
            Func::Exp | Func::Cos => return Expr::one(),
            Func::Sin | Func::Erf => return Expr::zero(),
            Func::Ln | Func::Ei1 => {}
        }
    }
    if f == Func::Ln && arg.is_one() {
        return Expr::zero();
    }
    Expr::from_node(Node::Func(f, arg))
}

// ---------------------------------------------------------------------------
// operators

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        add(vec![self, rhs])
    }
}

impl std::ops::Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        add(vec![self.clone(), rhs.clone()])
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        add(vec![self, -rhs])
    }
}

impl std::ops::Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        add(vec![self.clone(), -rhs])
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        mul(vec![self, rhs])
    }
}

impl std::ops::Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        mul(vec![self.clone(), rhs.clone()])
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        mul(vec![self, rhs.recip()])
    }
}

impl std::ops::Div for &Expr {
    type Output = Expr;
    fn div(self, rhs: &Expr) -> Expr {
        mul(vec![self.clone(), rhs.recip()])
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        mul(vec![Expr::int(-1), self])
    }
}

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        mul(vec![Expr::int(-1), self.clone()])
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Continued-fraction search for `p/q` with `q <= max_den` and
/// `|x - p/q| <= tol * max(1, |x|)`.
pub(crate) fn small_rational(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let target = tol * x.abs().max(1.0);
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= target {
            return Some((h2, k2));
        }
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            return None;
        }
        r = 1.0 / frac;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Expr {
        Expr::symbol(n)
    }

    #[test]
    fn rationals_are_reduced() {
        let e = Expr::frac(6, -4);
        let r = e.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn like_terms_merge() {
        let x = s("x");
        let e = &(&x + &x) + &(Expr::int(3) * x.clone());
        assert_eq!(e, Expr::int(5) * x);
    }

    #[test]
    fn like_bases_merge() {
        let x = s("x");
        let e = &x * &x.powi(2);
        assert_eq!(e, x.powi(3));
        assert_eq!(&x / &x, Expr::one());
    }

    #[test]
    fn zero_and_one_exponents_vanish() {
        let x = s("x");
        assert_eq!(x.powi(0), Expr::one());
        assert!(matches!(x.powi(1).node(), Node::Symbol(_)));
    }

    #[test]
    fn imaginary_unit_cycles() {
        let i = Expr::imag_unit();
        assert_eq!(&i * &i, Expr::int(-1));
        assert_eq!(i.powi(4), Expr::one());
        assert_eq!(i.powi(3), -i.clone());
    }

    #[test]
    fn exponentials_merge() {
        let x = s("x");
        let e = x.exp() * (-x.clone()).exp();
        assert_eq!(e, Expr::one());
        assert_eq!(x.exp().powi(2), (Expr::int(2) * x).exp());
    }

    #[test]
    fn nested_sums_flatten() {
        let (a, b, c) = (s("a"), s("b"), s("c"));
        let e = Expr::raw(Node::Sum(vec![a.clone(), Expr::raw(Node::Sum(vec![b.clone(), c.clone()]))]));
        let n = normalize(&e);
        match n.node() {
            Node::Sum(ts) => {
                assert_eq!(ts.len(), 3);
                assert!(ts.iter().all(|t| !matches!(t.node(), Node::Sum(_))));
            }
            _ => panic!("expected sum"),
        }
    }

    #[test]
    fn ordering_puts_powers_beside_bases() {
        let a = s("A");
        let e = Expr::mul_all([s("xi").powi(3), a.powi(2)]);
        assert_eq!(e.factors()[0], a.powi(2));
        assert_eq!(canonical_cmp(&a, &a.powi(2)), Ordering::Less);
    }

    #[test]
    fn small_rational_recovery() {
        assert_eq!(small_rational(1.0 / 3.0, 1000, 1e-13), Some((1, 3)));
        assert_eq!(small_rational(-2.5, 1000, 1e-13), Some((-5, 2)));
        assert_eq!(small_rational(std::f64::consts::PI, 1000, 1e-13), None);
    }
}
