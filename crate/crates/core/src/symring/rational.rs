use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed};

use super::gcd::gcd;
use super::poly::{Polynomial, Ring};
use crate::error::{Error, Result};

/// Coefficient size (decimal digits) above which a full polynomial gcd is
/// used to reduce a fraction; below it only the integer content is removed.
pub const DEFAULT_GCD_THRESHOLD_DIGITS: usize = 64;

/// Element of Q = Quot(S): a quotient of two `p`-free polynomials.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        Self::with_threshold(num, den, DEFAULT_GCD_THRESHOLD_DIGITS)
    }

    pub fn with_threshold(num: Polynomial, den: Polynomial, threshold_digits: usize) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if !num.is_p_free() || !den.is_p_free() {
            return Err(Error::Domain("rational function coefficients must be free of p".into()));
        }
        if num.ring() != den.ring() {
            return Err(Error::Context("numerator and denominator over different contexts".into()));
        }
        Ok(Self::reduce(num, den, threshold_digits))
    }

    pub fn from_poly(num: Polynomial) -> Self {
        let den = Polynomial::one(num.ring());
        RationalFunction { num, den }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::from_poly(Polynomial::zero(ring))
    }

    fn reduce(mut num: Polynomial, mut den: Polynomial, threshold_digits: usize) -> Self {
        if num.is_zero() {
            let ring = num.ring().clone();
            return RationalFunction { num, den: Polynomial::one(&ring) };
        }
        if num.max_digits().max(den.max_digits()) > threshold_digits {
            let g = gcd(&num, &den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides");
                den = den.div_exact(&g).expect("gcd divides");
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_exact_int(&c).unwrap();
            den = den.div_exact_int(&c).unwrap();
        }
        RationalFunction { num, den }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Reduces fully by the polynomial gcd regardless of size.
    pub fn fully_reduced(&self) -> Self {
        Self::reduce(self.num.clone(), self.den.clone(), 0)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.den == o.den {
            return Self::new(self.num.try_add(&o.num)?, self.den.clone());
        }
        let n = self.num.try_mul(&o.den)?.try_add(&o.num.try_mul(&self.den)?)?;
        Self::new(n, self.den.try_mul(&o.den)?)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.try_mul(&o.num)?, self.den.try_mul(&o.den)?)
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        Self::new(self.num.try_mul(&o.den)?, self.den.try_mul(&o.num)?)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &Polynomial| if p.num_terms() > 1 { format!("({p})") } else { p.to_string() };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
