use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Name of the distinguished prime indeterminate.
pub const PRIME_VAR: &str = "p";
/// Name of the indeterminate bound to a primitive root at evaluation time.
pub const ROOT_VAR: &str = "w";

/// An ordered list of indeterminate names shared by all polynomials of one
/// computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Context(format!("indeterminate `{v}` listed twice")));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// The standard ring for a presentation: `w`, the parameters, then `p`.
    pub fn for_params<S: AsRef<str>>(params: &[S]) -> Result<Arc<Ring>> {
        let mut vars = vec![ROOT_VAR.to_string()];
        for p in params {
            let p = p.as_ref();
            if p == ROOT_VAR || p == PRIME_VAR {
                return Err(Error::Domain(format!("`{p}` is reserved and cannot be a parameter")));
            }
            vars.push(p.to_string());
        }
        vars.push(PRIME_VAR.to_string());
        Ring::new(vars)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn p_index(&self) -> Option<usize> {
        self.index_of(PRIME_VAR)
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with earlier indeterminates weighing more.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = exp;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn with_exp(&self, idx: usize, exp: u32) -> Monomial {
        let mut e = self.0.clone();
        e[idx] = exp;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring arithmetic with a context check.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.len()), c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let idx = ring
            .index_of(name)
            .ok_or_else(|| Error::Context(format!("unknown indeterminate `{name}`")))?;
        Ok(Self::var_at(ring, idx))
    }

    pub fn var_at(ring: &Arc<Ring>, idx: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.len(), idx, 1), BigInt::one());
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from raw terms, dropping zeros and merging duplicates.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut out = Polynomial::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.len(), "exponent vector length mismatch");
            out.add_term(Monomial(e), c);
        }
        out
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The integer value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.leading().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.0[idx] > 0)
    }

    /// Indices of the indeterminates that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.ring.len()).filter(|&i| self.contains_var(i)).collect()
    }

    /// Largest number of decimal digits of any coefficient.
    pub fn max_digits(&self) -> usize {
        self.terms
            .values()
            .map(|c| {
                let bits = c.bits();
                // ceil(bits * log10(2)) is an upper bound on the digit count
                ((bits as f64) * std::f64::consts::LOG10_2).ceil().max(1.0) as usize
            })
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Context(format!(
                "indeterminate lists differ: {:?} vs {:?}",
                self.ring.vars, other.ring.vars
            )))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `var^exp`.
    pub fn shift_var(&self, idx: usize, exp: u32) -> Polynomial {
        let m = Monomial::var(self.ring.len(), idx, exp);
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect(),
        }
    }

    /// Exact division. Returns `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.check_ring(divisor).ok()?;
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return self.div_exact_int(&c);
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let (q, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(&lm);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &q));
            }
            quot.add_term(qm, q);
        }
        Some(quot)
    }

    pub fn div_exact_int(&self, c: &BigInt) -> Option<Polynomial> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, x) in &self.terms {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Non-negative gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the integer content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_int(&c).unwrap()
    }

    /// Sign-normalizes so that the leading coefficient is positive.
    pub fn normalize_sign(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Coefficients with respect to one indeterminate: entry `k` holds the
    /// coefficient of `var^k` (itself free of `var`).
    pub fn coefficients_in(&self, idx: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(idx) as usize;
        let mut out = vec![Polynomial::zero(&self.ring); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            let k = m.0[idx] as usize;
            out[k].add_term(m.with_exp(idx, 0), c.clone());
        }
        out
    }

    /// Leading coefficient with respect to one indeterminate.
    pub fn lc_in(&self, idx: usize) -> Polynomial {
        self.coefficients_in(idx).pop().unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// Formal partial derivative.
    pub fn derivative(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e > 0 {
                out.add_term(m.with_exp(idx, e - 1), c * BigInt::from(e));
            }
        }
        out
    }

    /// Replaces the indeterminate at `idx` by `value`.
    pub fn substitute_at(&self, idx: usize, value: &Polynomial) -> Result<Polynomial> {
        self.check_ring(value)?;
        let coeffs = self.coefficients_in(idx);
        // Horner in `value`
        let mut acc = Polynomial::zero(&self.ring);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        Ok(acc)
    }

    /// Substitutes `value` for the named indeterminate. The prime `p` is never
    /// substituted symbolically.
    pub fn substitute(&self, var: &str, value: &Polynomial) -> Result<Polynomial> {
        if var == PRIME_VAR {
            return Err(Error::Domain("the prime indeterminate `p` cannot be substituted".into()));
        }
        match self.ring.index_of(var) {
            Some(idx) => self.substitute_at(idx, value),
            None => Err(Error::Context(format!("unknown indeterminate `{var}`"))),
        }
    }

    /// Value modulo `prime` under `assignment`. The prime indeterminate, if
    /// present, evaluates to `prime` (hence to zero).
    pub fn evaluate_mod(&self, prime: u64, assignment: &BTreeMap<String, i64>) -> Result<u64> {
        if prime < 2 {
            return Err(Error::Domain(format!("modulus {prime} is not a prime")));
        }
        let pb = BigInt::from(prime);
        let values = self.resolve_values(assignment, |v| v.rem_euclid(prime as i64) as u64, prime)?;
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.mod_floor(&pb);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * BigInt::from(values[i]).modpow(&BigInt::from(e), &pb) % &pb;
                }
            }
            acc = (acc + t) % &pb;
        }
        Ok(acc.mod_floor(&pb).to_u64().unwrap())
    }

    fn resolve_values<T: Clone + Default>(
        &self,
        assignment: &BTreeMap<String, i64>,
        conv: impl Fn(i64) -> T,
        prime_value: impl Into<T>,
    ) -> Result<Vec<T>> {
        let prime_value = prime_value.into();
        let used = self.used_vars();
        let mut values = vec![T::default(); self.ring.len()];
        for i in used {
            let name = &self.ring.vars[i];
            if name == PRIME_VAR {
                values[i] = prime_value.clone();
            } else {
                let v = assignment
                    .get(name)
                    .ok_or_else(|| Error::Context(format!("no value assigned to `{name}`")))?;
                values[i] = conv(*v);
            }
        }
        Ok(values)
    }

    /// Exact integer value with `p` bound to `prime`.
    pub fn evaluate_int(&self, prime: u64, assignment: &BTreeMap<String, i64>) -> Result<BigInt> {
        let values = self.resolve_values(assignment, BigInt::from, BigInt::from(prime))?;
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(values[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial over another indeterminate list, matching
    /// by name. Fails if a used indeterminate is missing from `target`.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if Arc::ptr_eq(&self.ring, target) || *self.ring == **target {
            return Ok(Polynomial { ring: target.clone(), terms: self.terms.clone() });
        }
        let mut map = vec![None; self.ring.len()];
        for i in self.used_vars() {
            let name = &self.ring.vars[i];
            map[i] = Some(
                target
                    .index_of(name)
                    .ok_or_else(|| Error::Context(format!("`{name}` is not available in the target context")))?,
            );
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[map[i].unwrap()] = x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Largest `l` with `p^l` dividing the polynomial; `None` for zero.
    pub fn p_valuation(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        match self.ring.p_index() {
            None => Some(0),
            Some(pi) => self.terms.keys().map(|m| m.0[pi]).min(),
        }
    }

    /// Divides by `p^l`; the caller guarantees divisibility.
    pub fn shift_p_down(&self, l: u32) -> Polynomial {
        if l == 0 {
            return self.clone();
        }
        let pi = self.ring.p_index().expect("ring without p");
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    assert!(m.0[pi] >= l, "shift_p_down beyond the p-valuation");
                    (m.with_exp(pi, m.0[pi] - l), c.clone())
                })
                .collect(),
        }
    }

    /// The part free of `p` (the constant coefficient as an element of `S[p]`).
    pub fn p_constant_part(&self) -> Polynomial {
        match self.ring.p_index() {
            None => self.clone(),
            Some(pi) => Polynomial {
                ring: self.ring.clone(),
                terms: self
                    .terms
                    .iter()
                    .filter(|(m, _)| m.0[pi] == 0)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect(),
            },
        }
    }

    pub fn is_p_free(&self) -> bool {
        self.ring.p_index().is_none_or(|pi| !self.contains_var(pi))
    }

    /// Splits off the largest monomial dividing every term.
    pub fn monomial_gcd(&self) -> Monomial {
        let n = self.ring.len();
        let mut e: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            e = Some(match e {
                None => m.0.clone(),
                Some(prev) => prev.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        Monomial(e.unwrap_or_else(|| vec![0; n]))
    }

    pub fn from_monomial(ring: &Arc<Ring>, m: &Monomial, c: BigInt) -> Polynomial {
        let mut out = Polynomial::zero(ring);
        out.add_term(m.clone(), c);
        out
    }

    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.div(m), c.clone())).collect(),
        }
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.ring.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition across contexts")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction across contexts")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication across contexts")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::parse_poly;

    fn ring() -> Arc<Ring> {
        Ring::for_params(&["x", "y", "z", "t"]).unwrap()
    }

    fn pp(s: &str) -> Polynomial {
        parse_poly(&ring(), s).unwrap()
    }

    #[test]
    fn ring_identities() {
        assert_eq!(&pp("x+1") * &pp("x-1"), pp("x^2-1"));
        assert_eq!(&pp("x^2+3*y") + &Polynomial::zero(&ring()), pp("x^2+3*y"));
        assert_eq!(&pp("x") * &pp("-x-1"), pp("-x^2-x"));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let other = Ring::for_params(&["x"]).unwrap();
        let a = pp("x");
        let b = Polynomial::var(&other, "x").unwrap();
        assert!(matches!(poly_arith(&a, &b, ArithOp::Add), Err(Error::Context(_))));
    }

    #[test]
    fn graded_lex_printing_matches_input_order() {
        assert_eq!(pp("x*y*z+x*y*t-z^2*t-z*t^2").to_string(), "x*y*z+x*y*t-z^2*t-z*t^2");
        assert_eq!(pp("-x-x^2").to_string(), "-x^2-x");
        assert_eq!(pp("3-2*y").to_string(), "-2*y+3");
        assert_eq!(Polynomial::zero(&ring()).to_string(), "0");
    }

    #[test]
    fn substitution() {
        let r = ring();
        let m1 = Polynomial::constant(&r, -1);
        assert!(pp("-x^2-x").substitute("x", &m1).unwrap().is_zero());
        let one = Polynomial::one(&r);
        assert_eq!(
            pp("x*y*z+x*y*t-z^2*t-z*t^2").substitute("t", &one).unwrap(),
            pp("x*y*z+x*y-z^2-z")
        );
        assert_eq!(pp("x").substitute("y", &Polynomial::constant(&r, 7)).unwrap(), pp("x"));
        assert!(matches!(pp("x*p").substitute("p", &one), Err(Error::Domain(_))));
    }

    #[test]
    fn modular_evaluation() {
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), 6);
        assert_eq!(pp("-x^2-x").evaluate_mod(7, &a).unwrap(), 0);
        a.insert("x".to_string(), 4);
        assert_eq!(pp("x+1").evaluate_mod(5, &a).unwrap(), 0);
        let mut b = BTreeMap::new();
        b.insert("w".to_string(), 3);
        assert_eq!(pp("w").evaluate_mod(7, &b).unwrap(), 3);
        assert!(matches!(pp("y").evaluate_mod(7, &b), Err(Error::Context(_))));
    }

    #[test]
    fn exact_division() {
        let f = pp("x*y*z+x*y*t-z^2*t-z*t^2");
        assert_eq!(f.div_exact(&pp("z+t")).unwrap(), pp("x*y-z*t"));
        assert!(f.div_exact(&pp("z+1")).is_none());
        assert!(pp("2*x+1").div_exact(&pp("2")).is_none());
    }

    #[test]
    fn p_valuation_and_shift() {
        let f = pp("p^3*x+p^2");
        assert_eq!(f.p_valuation(), Some(2));
        assert_eq!(f.shift_p_down(2), pp("p*x+1"));
        assert_eq!(pp("x").p_valuation(), Some(0));
        assert_eq!(Polynomial::zero(&ring()).p_valuation(), None);
    }
}
