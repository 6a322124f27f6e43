//! Best-effort factorization of multivariate integer polynomials.
//!
//! Strategy, per primitive piece: split off contents with respect to every
//! indeterminate, split square-free parts, fully factor univariate pieces,
//! and search for factors linear in some indeterminate. Pieces that are
//! linear in an indeterminate are irreducible; pieces of degree two or three
//! in an indeterminate with no linear factor there are irreducible as well.
//! Anything else is returned as a residual and the result is flagged
//! incomplete.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::gcd::{content_in, gcd};
use super::poly::{Monomial, Polynomial};
use super::univariate;
use crate::error::{Error, Result};

/// Cap on candidate divisor pairs tried per indeterminate.
const MAX_LINEAR_CANDIDATES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// `+1` or `-1`.
    pub unit: i8,
    /// Positive integer content.
    pub content: BigInt,
    /// Primitive, non-constant factors with positive leading coefficient and
    /// their multiplicities, in canonical order.
    pub factors: Vec<(Polynomial, u32)>,
    /// False when some returned factor might still be reducible.
    pub complete: bool,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self, template: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::constant(template.ring(), self.content.clone() * BigInt::from(self.unit));
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

/// Factors a nonzero polynomial. The product of the output always equals
/// the input exactly.
pub fn factor_best_effort(a: &Polynomial) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    }
    let content = a.content();
    let unit: i8 = if a.leading_coeff().unwrap().is_negative() { -1 } else { 1 };
    let prim = a.div_exact_int(&(content.clone() * BigInt::from(unit))).unwrap();

    let mut irreducible: Vec<Polynomial> = Vec::new();
    let mut complete = true;

    // monomial part
    let mono = prim.monomial_gcd();
    for (idx, &e) in mono.exps().iter().enumerate() {
        for _ in 0..e {
            irreducible.push(Polynomial::var_at(a.ring(), idx));
        }
    }
    let rest = prim.div_monomial(&mono);

    let mut queue = VecDeque::new();
    if !rest.is_constant() {
        queue.push_back(rest);
    }
    while let Some(g) = queue.pop_front() {
        match split_once(&g) {
            Step::Split(x, y) => {
                for part in [x, y] {
                    if !part.is_constant() {
                        queue.push_back(part.primitive());
                    }
                }
            }
            Step::Irreducible(fs) => irreducible.extend(fs),
            Step::Residual(f) => {
                complete = false;
                irreducible.push(f);
            }
        }
    }

    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    for f in irreducible {
        let f = f.primitive();
        match factors.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += 1,
            None => factors.push((f, 1)),
        }
    }
    factors.sort_by(|(x, _), (y, _)| {
        let kx = x.leading().map(|(m, _)| m.clone());
        let ky = y.leading().map(|(m, _)| m.clone());
        kx.cmp(&ky).then_with(|| x.num_terms().cmp(&y.num_terms())).then_with(|| x.to_string().cmp(&y.to_string()))
    });

    let out = Factorization { unit, content, factors, complete };
    debug_assert_eq!(out.expand(a), *a);
    Ok(out)
}

enum Step {
    Split(Polynomial, Polynomial),
    Irreducible(Vec<Polynomial>),
    Residual(Polynomial),
}

fn split_off(g: &Polynomial, d: &Polynomial) -> Step {
    let q = g.div_exact(d).expect("divisor divides");
    Step::Split(d.clone(), q)
}

/// One refinement step on a primitive, non-constant, monomial-free piece.
fn split_once(g: &Polynomial) -> Step {
    let vars = g.used_vars();

    for &v in &vars {
        let c = content_in(g, v);
        if !c.is_constant() {
            return split_off(g, &c);
        }
    }

    let v0 = vars[0];
    let d = gcd(g, &g.derivative(v0));
    if !d.is_constant() {
        return split_off(g, &d);
    }

    if vars.len() == 1 {
        return Step::Irreducible(univariate_factors(g, v0));
    }

    if vars.iter().any(|&v| g.degree_in(v) == 1) {
        return Step::Irreducible(vec![g.clone()]);
    }

    let mut proven = false;
    let mut order = vars.clone();
    order.sort_by_key(|&v| g.degree_in(v));
    for &v in &order {
        match linear_factor_in(g, v) {
            LinearSearch::Found(f) => return split_off(g, &f),
            LinearSearch::Exhausted => {
                if g.degree_in(v) <= 3 {
                    proven = true;
                }
            }
            LinearSearch::Inconclusive => {}
        }
    }
    if proven {
        Step::Irreducible(vec![g.clone()])
    } else {
        Step::Residual(g.clone())
    }
}

fn univariate_factors(g: &Polynomial, v: usize) -> Vec<Polynomial> {
    let coeffs: Vec<BigInt> = g
        .coefficients_in(v)
        .iter()
        .map(|c| c.as_constant().expect("univariate coefficient"))
        .collect();
    univariate::factor_squarefree(&coeffs)
        .into_iter()
        .map(|f| {
            Polynomial::from_terms(
                g.ring(),
                f.into_iter().enumerate().map(|(k, c)| (Monomial::var(g.ring().len(), v, k as u32).exps().to_vec(), c)),
            )
        })
        .collect()
}

enum LinearSearch {
    Found(Polynomial),
    Exhausted,
    Inconclusive,
}

/// Looks for a factor `a*v + b` with `a | lc_v(g)` and `b | g(v=0)`.
fn linear_factor_in(g: &Polynomial, v: usize) -> LinearSearch {
    let coeffs = g.coefficients_in(v);
    let lead = coeffs.last().unwrap();
    let tail = &coeffs[0];
    let (lead_divs, lead_all) = divisors(lead);
    let (tail_divs, tail_all) = divisors(tail);
    if lead_divs.len().saturating_mul(tail_divs.len()) > MAX_LINEAR_CANDIDATES {
        return LinearSearch::Inconclusive;
    }
    let var = Polynomial::var_at(g.ring(), v);
    for a in &lead_divs {
        for b in &tail_divs {
            for b in [b.clone(), -b] {
                let cand = &(a * &var) + &b;
                if let Some(_q) = g.div_exact(&cand) {
                    return LinearSearch::Found(cand.primitive());
                }
            }
        }
    }
    if lead_all && tail_all {
        LinearSearch::Exhausted
    } else {
        LinearSearch::Inconclusive
    }
}

/// Positive-leading divisors of `f` up to sign, from its factorization.
/// The flag reports whether the list is exhaustive.
fn divisors(f: &Polynomial) -> (Vec<Polynomial>, bool) {
    let fac = match factor_best_effort(f) {
        Ok(x) => x,
        Err(_) => return (vec![Polynomial::one(f.ring())], false),
    };
    let (int_factors, int_complete) = small_int_factors(&fac.content);
    let mut ints = vec![BigInt::one()];
    for (pr, e) in int_factors {
        let mut next = Vec::new();
        for d in &ints {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &pr;
            }
        }
        ints = next;
    }
    let mut out: Vec<Polynomial> = ints.iter().map(|d| Polynomial::constant(f.ring(), d.clone())).collect();
    for (pf, m) in &fac.factors {
        let mut next = Vec::new();
        for d in &out {
            let mut pw = Polynomial::one(f.ring());
            for _ in 0..=*m {
                next.push(d * &pw);
                pw = &pw * pf;
            }
        }
        out = next;
        if out.len() > MAX_LINEAR_CANDIDATES {
            return (out, false);
        }
    }
    (out, fac.complete && int_complete)
}

/// Trial-division factorization of a positive integer. The flag is false
/// when the search limit was hit before the cofactor was proven prime.
fn small_int_factors(n: &BigInt) -> (Vec<(BigInt, u32)>, bool) {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &d * &d <= n && d < limit {
        let mut e = 0;
        while (&n % &d) == BigInt::from(0) {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    let complete = &d * &d > n;
    if n > BigInt::one() {
        out.push((n, 1));
    }
    (out, complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::{parse_poly, Ring};

    fn pp(s: &str) -> Polynomial {
        let r = Ring::for_params(&["x", "y", "z", "t"]).unwrap();
        parse_poly(&r, s).unwrap()
    }

    fn names(f: &Factorization) -> Vec<(String, u32)> {
        f.factors.iter().map(|(p, m)| (p.to_string(), *m)).collect()
    }

    #[test]
    fn pseudo_unit_of_the_first_family() {
        let f = factor_best_effort(&pp("-x^2-x")).unwrap();
        assert_eq!(f.unit, -1);
        assert_eq!(f.content, BigInt::one());
        assert_eq!(names(&f), vec![("x".into(), 1), ("x+1".into(), 1)]);
        assert!(f.complete);
    }

    #[test]
    fn pseudo_unit_of_the_second_family() {
        let f = factor_best_effort(&pp("x*y*z+x*y*t-z^2*t-z*t^2")).unwrap();
        assert_eq!(f.unit, 1);
        let mut got = names(&f);
        got.sort();
        assert_eq!(got, vec![("x*y-z*t".into(), 1), ("z+t".into(), 1)]);
        assert!(f.complete);
        let g = factor_best_effort(&pp("x*y*z+x*y-z^2-z")).unwrap();
        let mut got = names(&g);
        got.sort();
        assert_eq!(got, vec![("x*y-z".into(), 1), ("z+1".into(), 1)]);
    }

    #[test]
    fn single_variable_and_content() {
        let f = factor_best_effort(&pp("x")).unwrap();
        assert_eq!((f.unit, names(&f), f.complete), (1, vec![("x".into(), 1)], true));
        let g = factor_best_effort(&pp("-6*x^3*y+6*x*y")).unwrap();
        assert_eq!(g.unit, -1);
        assert_eq!(g.content, BigInt::from(6));
        let mut got = names(&g);
        got.sort();
        assert_eq!(got, vec![("x".into(), 1), ("x+1".into(), 1), ("x-1".into(), 1), ("y".into(), 1)]);
    }

    #[test]
    fn repeated_and_nonlinear_factors() {
        let f = factor_best_effort(&pp("(x^2+y^2+1)^2*(x*z+1)*(z^2+y)")).unwrap();
        let mut got = names(&f);
        got.sort();
        assert_eq!(got, vec![("x*z+1".into(), 1), ("x^2+y^2+1".into(), 2), ("z^2+y".into(), 1)]);
        assert!(f.complete);
        assert!(factor_best_effort(&pp("0")).is_err());
    }
}
