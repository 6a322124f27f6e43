use std::fmt;
use std::sync::Arc;

use super::poly::{Polynomial, Ring};
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// Element `s_0 + s_1 p + ... + s_n p^n` of Q[p]. Trailing zero
/// coefficients are trimmed, so zero is the empty list.
#[derive(Clone, PartialEq, Eq)]
pub struct PElement {
    ring: Arc<Ring>,
    coeffs: Vec<RationalFunction>,
}

impl PElement {
    pub fn new(ring: &Arc<Ring>, coeffs: Vec<RationalFunction>) -> Result<Self> {
        if coeffs.iter().any(|c| c.ring() != ring) {
            return Err(Error::Context("coefficient over a different context".into()));
        }
        let mut out = PElement { ring: ring.clone(), coeffs };
        out.trim();
        Ok(out)
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        PElement { ring: ring.clone(), coeffs: Vec::new() }
    }

    /// Splits a polynomial in `p` and the parameters by powers of `p`.
    pub fn from_polynomial(f: &Polynomial) -> Self {
        let ring = f.ring().clone();
        let coeffs = match ring.p_index() {
            None => vec![RationalFunction::from_poly(f.clone())],
            Some(pi) => f.coefficients_in(pi).into_iter().map(RationalFunction::from_poly).collect(),
        };
        let mut out = PElement { ring, coeffs };
        out.trim();
        out
    }

    /// Inverse of [`PElement::from_polynomial`] when every denominator is 1.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        let pi = self.ring.p_index()?;
        let mut acc = Polynomial::zero(&self.ring);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.den().is_one() {
                return None;
            }
            acc = &acc + &c.num().shift_var(pi, i as u32);
        }
        Some(acc)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RationalFunction::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the first nonzero coefficient.
    pub fn p_valuation(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| i as u32)
    }

    /// Multiplies by `p^l`.
    pub fn shift_up(&self, l: u32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![RationalFunction::zero(&self.ring); l as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        PElement { ring: self.ring.clone(), coeffs }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = RationalFunction::zero(&self.ring);
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).try_add(o.coeffs.get(i).unwrap_or(&z)))
            .collect::<Result<Vec<_>>>()?;
        PElement::new(&self.ring, coeffs)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            return Ok(PElement::zero(&self.ring));
        }
        let mut coeffs = vec![RationalFunction::zero(&self.ring); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        PElement::new(&self.ring, coeffs)
    }

    pub fn neg(&self) -> Self {
        PElement { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(RationalFunction::neg).collect() }
    }
}

impl fmt::Display for PElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(poly) = self.to_polynomial() {
            return write!(f, "{poly}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*p")?,
                _ => write!(f, "({c})*p^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PElement({self})")
    }
}

/// Element of Q[p] whose constant coefficient is a nonzero rational function.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PseudoUnit {
    value: PElement,
}

impl PseudoUnit {
    pub fn new(value: PElement) -> Result<Self> {
        match value.coeffs.first() {
            Some(s0) if !s0.is_zero() => Ok(PseudoUnit { value }),
            _ => Err(Error::Domain(format!("`{value}` has zero constant coefficient"))),
        }
    }

    /// A `p`-free nonzero polynomial is always a pseudo-unit.
    pub fn from_polynomial(f: &Polynomial) -> Result<Self> {
        Self::new(PElement::from_polynomial(f))
    }

    pub fn value(&self) -> &PElement {
        &self.value
    }

    pub fn constant_term(&self) -> &RationalFunction {
        &self.value.coeffs[0]
    }

    /// The polynomial whose zeros are the places where this pseudo-unit fails
    /// to be a unit: the numerator of the constant coefficient.
    pub fn zero_locus(&self) -> &Polynomial {
        self.constant_term().num()
    }
}

impl fmt::Display for PseudoUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Writes a nonzero `f` as `p^l * u` with `u` a pseudo-unit.
pub fn decompose_pseudo_unit(f: &PElement) -> Result<(u32, PseudoUnit)> {
    let l = f
        .p_valuation()
        .ok_or_else(|| Error::Domain("zero has no pseudo-unit decomposition".into()))?;
    let unit = PElement { ring: f.ring.clone(), coeffs: f.coeffs[l as usize..].to_vec() };
    Ok((l, PseudoUnit::new(unit)?))
}

/// `p^l * u`.
pub fn recompose(l: u32, u: &PseudoUnit) -> PElement {
    u.value.shift_up(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::parse_poly;

    fn ring() -> Arc<Ring> {
        Ring::for_params(&["x"]).unwrap()
    }

    fn pe(s: &str) -> PElement {
        PElement::from_polynomial(&parse_poly(&ring(), s).unwrap())
    }

    #[test]
    fn decomposition_examples() {
        let (l, u) = decompose_pseudo_unit(&pe("p^2*(x+1)")).unwrap();
        assert_eq!((l, u.to_string()), (2, "x+1".to_string()));
        let (l, u) = decompose_pseudo_unit(&pe("x*p+x^2")).unwrap();
        assert_eq!((l, u.to_string()), (0, "x^2+x*p".to_string()));

        // (p^3 + p^2) / x
        let r = ring();
        let over_x = RationalFunction::new(Polynomial::one(&r), parse_poly(&r, "x").unwrap()).unwrap();
        let z = RationalFunction::zero(&r);
        let f = PElement::new(&r, vec![z.clone(), z, over_x.clone(), over_x.clone()]).unwrap();
        let (l, u) = decompose_pseudo_unit(&f).unwrap();
        assert_eq!(l, 2);
        assert_eq!(u.value().coeffs(), &[over_x.clone(), over_x]);
        assert_eq!(recompose(l, &u), f);

        assert!(decompose_pseudo_unit(&PElement::zero(&r)).is_err());
    }

    #[test]
    fn pseudo_unit_guard() {
        assert!(PseudoUnit::new(pe("p*x")).is_err());
        assert!(PseudoUnit::new(pe("p+x")).is_ok());
    }

    #[test]
    fn polynomial_round_trip() {
        let f = parse_poly(&ring(), "p^2*x-3*p+x^2").unwrap();
        assert_eq!(PElement::from_polynomial(&f).to_polynomial().unwrap(), f);
    }
}
