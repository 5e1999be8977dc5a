//! Variable-coefficient Bernoulli auxiliary equations, travelling-wave
//! reductions of the b-equation family, and residual verification.
//!
//! The crate is layered bottom-up:
//!
//! * [`expr`]: immutable symbolic expressions with parsing, rendering,
//!   differentiation, substitution and polynomial collection.
//! * [`numeric`]: complex evaluation, special functions, quadrature,
//!   finite differences, residual reports and curve sampling.
//! * [`bernoulli`]: closed-form solutions of `z' = P z + Q z^n`, the
//!   twenty-case catalog and the classical constant-coefficient formulas.
//! * [`wave`]: travelling-wave reduction, balancing, coefficient systems,
//!   solving and composition of full solutions.
//! * [`cli`]: the `auxwave` command surface.
//!
//! ```
//! use auxwave::expr::{parse, differentiate, Symbol};
//!
//! let e = parse("exp(A*sin(xi))").unwrap();
//! let d = differentiate(&e, &Symbol::xi());
//! assert_eq!(d.to_string(), "A*exp(A*sin(xi))*cos(xi)");
//! ```

pub mod bernoulli;
pub mod cli;
pub mod expr;
pub mod numeric;
pub mod wave;
