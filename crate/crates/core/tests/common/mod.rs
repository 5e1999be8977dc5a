//! Taylor-jet oracle for the reconstruction identity: the jet of `z` comes
//! straight from `z' = P z + Q z^2`, never from the derived system.

use auxwave::bernoulli::catalog_case;
use auxwave::expr::{differentiate, Expr, Symbol};
use auxwave::numeric::{eval, Bindings, CNum};
use auxwave::wave::{derive_system, reduce_travelling, Ansatz, OdeMode, PdeProblem, TravellingOde, Z};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const JET: usize = 4;

/// Truncated Taylor coefficients `[f, f', f''/2, f'''/6]`.
type Jet = [CNum; JET];

fn jet_mul(a: &Jet, b: &Jet) -> Jet {
    let mut out = [CNum::new(0.0, 0.0); JET];
    for i in 0..JET {
        for j in 0..JET - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn jet_of(e: &Expr, env: &Bindings) -> Jet {
    let xi = Symbol::xi();
    let mut out = [CNum::new(0.0, 0.0); JET];
    let mut d = e.clone();
    let mut fact = 1.0;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        *slot = eval(&d, env).unwrap() / fact;
        d = differentiate(&d, &xi);
    }
    out
}

/// Jet of `z` at `ξ0` from `z(ξ0) = z0` and `z' = P z + Q z²`, one
/// coefficient at a time.
fn aux_jet(p: &Jet, q: &Jet, z0: CNum) -> Jet {
    let mut z = [CNum::new(0.0, 0.0); JET];
    z[0] = z0;
    for k in 0..JET - 1 {
        let rhs = {
            let pz = jet_mul(p, &z);
            let qzz = jet_mul(q, &jet_mul(&z, &z));
            pz[k] + qzz[k]
        };
        z[k + 1] = rhs / (k + 1) as f64;
    }
    z
}

/// ODE left side from the jet of `U`.
fn ode_from_jet(ode: &TravellingOde, u: &Jet, env: &Bindings) -> (CNum, f64) {
    let ders: Vec<CNum> = (0..JET).map(|k| u[k] * (1..=k).product::<usize>() as f64).collect();
    let mut total = CNum::new(0.0, 0.0);
    let mut scale = 0.0;
    for t in &ode.terms {
        let v = t.orders.iter().fold(eval(&t.coeff, env).unwrap(), |acc, &m| acc * ders[m as usize]);
        total += v;
        scale += v.norm();
    }
    (total, scale)
}

pub fn reconstruction_trials(case: usize, mode: OdeMode, trials: usize, seed: u64) -> Result<(), String> {
    let ode = reduce_travelling(&PdeProblem::b_equation(Expr::int(-2)), mode).unwrap();
    let ansatz = Ansatz::new(2);
    let aux = catalog_case(case).unwrap().eq;
    let sys = derive_system(&ode, &ansatz, &aux).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let mut r = |lo: f64, hi: f64| rng.gen_range(lo..hi);
        let mut env: Bindings = ["g0", "g1", "g2", "c", "mu", "A", "B", "C"]
            .iter()
            .map(|s| (Symbol::new(s), CNum::new(r(-1.5, 1.5), 0.0)))
            .collect();
        env.insert(Symbol::xi(), CNum::new(r(-1.0, 1.0), 0.0));
        let z0 = CNum::new(r(-1.2, 1.2), 0.0);
        env.insert(Symbol::new(Z), z0);

        let (p, q) = (jet_of(&aux.p, &env), jet_of(&aux.q, &env));
        let z = aux_jet(&p, &q, z0);
        let g: Vec<CNum> = ansatz.coeffs.iter().map(|s| env[s]).collect();
        let mut u = [CNum::new(0.0, 0.0); JET];
        let mut zi = [CNum::new(1.0, 0.0), CNum::new(0.0, 0.0), CNum::new(0.0, 0.0), CNum::new(0.0, 0.0)];
        for gi in &g {
            for k in 0..JET {
                u[k] += *gi * zi[k];
            }
            zi = jet_mul(&zi, &z);
        }
        let (oracle, scale) = ode_from_jet(&ode, &u, &env);
        let derived = eval(&sys.reconstruct(&Expr::symbol(Z)), &env).unwrap();
        if (derived - oracle).norm() > 1e-8 * scale.max(1.0) {
            return Err(format!("case {case} {mode:?} trial {trial}: {derived} vs {oracle}"));
        }
    }
    Ok(())
}
