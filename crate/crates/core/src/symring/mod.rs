//! Exact arithmetic: multivariate integer polynomials over a fixed list of
//! indeterminates, rational functions over them, and elements of Q[p].

mod factor;
mod gcd;
mod parse;
mod pelement;
mod poly;
mod rational;
mod univariate;

pub use factor::{factor_best_effort, Factorization};
pub use gcd::{content_in, gcd, primitive_in, pseudo_rem};
pub use parse::parse_poly;
pub use pelement::{decompose_pseudo_unit, recompose, PElement, PseudoUnit};
pub use poly::{poly_arith, ArithOp, Monomial, Polynomial, Ring, PRIME_VAR, ROOT_VAR};
pub use rational::{RationalFunction, DEFAULT_GCD_THRESHOLD_DIGITS};
