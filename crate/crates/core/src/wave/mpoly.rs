//! Sparse multivariate polynomials with complex coefficients.

use std::collections::BTreeMap;

use crate::numeric::CNum;

pub(crate) type Mono = Vec<u32>;

/// Coefficients whose modulus falls below this fraction of the summed
/// contributions are treated as cancelled.
const CANCEL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, CNum>,
}

/// Accumulates coefficients together with the modulus mass that produced them.
struct Acc {
    nvars: usize,
    terms: BTreeMap<Mono, (CNum, f64)>,
}

impl Acc {
    fn new(nvars: usize) -> Self {
        Acc {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    fn push(&mut self, m: Mono, c: CNum) {
        let e = self.terms.entry(m).or_insert((CNum::new(0.0, 0.0), 0.0));
        e.0 += c;
        e.1 += c.norm();
    }

    fn finish(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .into_iter()
                .filter(|(_, (c, mass))| c.norm() > CANCEL * mass && *c != CNum::new(0.0, 0.0))
                .map(|(m, (c, _))| (m, c))
                .collect(),
        }
    }
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CNum) -> Self {
        let mut p = MPoly::zero(nvars);
        if c != CNum::new(0.0, 0.0) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<CNum> {
        match self.terms.len() {
            0 => Some(CNum::new(0.0, 0.0)),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.iter().all(|&e| e == 0).then_some(*c)
            }
            _ => None,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn normalized(&self) -> MPoly {
        let s = self.max_abs();
        if s == 0.0 {
            return self.clone();
        }
        self.scale(CNum::new(1.0 / s, 0.0))
    }

    pub fn scale(&self, k: CNum) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut acc = Acc::new(self.nvars);
        for (m, c) in self.terms.iter().chain(o.terms.iter()) {
            acc.push(m.clone(), *c);
        }
        acc.finish()
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut acc = Acc::new(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                acc.push(m, ca * cb);
            }
        }
        acc.finish()
    }

    pub fn powi(&self, k: u32) -> MPoly {
        let mut r = MPoly::constant(self.nvars, CNum::new(1.0, 0.0));
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|m| m[v] > 0))
            .collect()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    /// `p = Σ_k p_k v^k`, with `v` removed from each `p_k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let k = std::mem::replace(&mut m2[v], 0) as usize;
            out[k].terms.insert(m2, *c);
        }
        out
    }

    pub fn eval(&self, x: &[CNum]) -> CNum {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().enumerate().fold(*c, |acc, (i, &e)| acc * x[i].powu(e)))
            .sum()
    }

    /// Value together with the sum of the absolute term values.
    pub fn eval_scaled(&self, x: &[CNum]) -> (CNum, f64) {
        let mut total = CNum::new(0.0, 0.0);
        let mut scale = 0.0;
        for (m, c) in &self.terms {
            let t = m.iter().enumerate().fold(*c, |acc, (i, &e)| acc * x[i].powu(e));
            total += t;
            scale += t.norm();
        }
        (total, scale)
    }

    pub fn grad(&self, x: &[CNum]) -> Vec<CNum> {
        let mut g = vec![CNum::new(0.0, 0.0); self.nvars];
        for (m, c) in &self.terms {
            for v in 0..self.nvars {
                if m[v] == 0 {
                    continue;
                }
                let mut t = c * m[v] as f64;
                for (i, &e) in m.iter().enumerate() {
                    let e = if i == v { e - 1 } else { e };
                    t *= x[i].powu(e);
                }
                g[v] += t;
            }
        }
        g
    }

    pub fn subst_value(&self, v: usize, val: CNum) -> MPoly {
        let mut acc = Acc::new(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let k = std::mem::replace(&mut m2[v], 0);
            acc.push(m2, c * val.powu(k));
        }
        acc.finish()
    }

    /// `den^d · p(v = num/den)` with `d` the degree of `p` in `v`.
    pub fn subst_ratio(&self, v: usize, num: &MPoly, den: &MPoly) -> MPoly {
        let parts = self.coeffs_in(v);
        let d = parts.len() as u32 - 1;
        let mut acc = Acc::new(self.nvars);
        for (k, pk) in parts.iter().enumerate() {
            if pk.is_zero() {
                continue;
            }
            let t = pk.mul(&num.powi(k as u32)).mul(&den.powi(d - k as u32));
            for (m, c) in t.terms {
                acc.push(m, c);
            }
        }
        acc.finish()
    }

    /// Componentwise minimum exponent over all terms.
    pub fn common_monomial(&self) -> Mono {
        let mut m = vec![u32::MAX; self.nvars];
        for k in self.terms.keys() {
            for (a, b) in m.iter_mut().zip(k) {
                *a = (*a).min(*b);
            }
        }
        if self.terms.is_empty() {
            m.iter_mut().for_each(|e| *e = 0);
        }
        m
    }

    pub fn div_monomial(&self, d: &Mono) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(d).map(|(a, b)| a - b).collect(), *c))
                .collect(),
        }
    }
}
