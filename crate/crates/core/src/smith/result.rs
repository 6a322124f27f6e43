use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::symring::Polynomial;

/// Elementary divisors, smallest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorList {
    /// Exponents `e` standing for `p^e`.
    Symbolic(Vec<u32>),
    Concrete(Vec<BigInt>),
}

impl DivisorList {
    pub fn len(&self) -> usize {
        match self {
            DivisorList::Symbolic(v) => v.len(),
            DivisorList::Concrete(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Integer divisors at a concrete prime.
    pub fn at_prime(&self, prime: u64) -> Vec<BigInt> {
        match self {
            DivisorList::Symbolic(v) => v.iter().map(|&e| num_traits::pow(BigInt::from(prime), e as usize)).collect(),
            DivisorList::Concrete(v) => v.clone(),
        }
    }
}

/// Exponents for symbolic lists, integers (strings beyond 64 bits) for
/// concrete ones.
impl Serialize for DivisorList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DivisorList::Symbolic(v) => v.serialize(s),
            DivisorList::Concrete(v) => {
                let vals: Vec<serde_json::Value> = v
                    .iter()
                    .map(|d| match d.to_i64() {
                        Some(x) => serde_json::Value::from(x),
                        None => serde_json::Value::from(d.to_string()),
                    })
                    .collect();
                vals.serialize(s)
            }
        }
    }
}

impl fmt::Display for DivisorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = match self {
            DivisorList::Symbolic(v) => v
                .iter()
                .map(|&e| if e == 1 { "p".to_string() } else { format!("p^{e}") })
                .collect(),
            DivisorList::Concrete(v) => v.iter().map(ToString::to_string).collect(),
        };
        if items.is_empty() {
            f.write_str("[ ]")
        } else {
            write!(f, "[ {} ]", items.join(", "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BudgetCap {
    Steps,
    Degree,
    Digits,
}

impl fmt::Display for BudgetCap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BudgetCap::Steps => "steps",
            BudgetCap::Degree => "degree",
            BudgetCap::Digits => "digits",
        })
    }
}

pub const INCONSISTENT: &str = "presentation is not a consistent Lie p-ring";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurResult {
    pub norm: DivisorList,
    /// Sign- and content-normalized constant parts of the pseudo-units
    /// divided by during elimination.
    #[serde(serialize_with = "crate::render::ser_display_seq")]
    pub pseudo_units: Vec<Polynomial>,
    /// Integer contents stripped from pseudo-units; the result is only
    /// claimed at primes dividing none of them.
    #[serde(serialize_with = "crate::render::ser_display_seq")]
    pub integer_units: Vec<BigInt>,
    pub free_rank: usize,
    pub budget_exceeded: Option<BudgetCap>,
    pub valid: bool,
    pub diagnostic: Option<String>,
}

impl SchurResult {
    pub fn is_budget_exceeded(&self) -> bool {
        self.budget_exceeded.is_some()
    }

    /// Whether the pseudo-unit contents are all invertible modulo `prime`.
    pub fn prime_allowed(&self, prime: u64) -> bool {
        let p = BigInt::from(prime);
        self.integer_units.iter().all(|c| !c.is_multiple_of(&p))
    }
}

/// Drops unit divisors and, in concrete mode, checks that the rest are
/// powers of `prime`.
pub fn schur_from_divisors(divisors: &[BigInt], prime: Option<u64>, free_rank: usize) -> SchurResult {
    let mut kept: Vec<BigInt> = divisors.iter().filter(|d| !d.is_one()).cloned().collect();
    kept.sort();
    let mut valid = true;
    if let Some(p) = prime {
        valid = kept.iter().all(|d| is_power_of(d, p));
    }
    SchurResult {
        norm: DivisorList::Concrete(kept),
        pseudo_units: Vec::new(),
        integer_units: Vec::new(),
        free_rank,
        budget_exceeded: None,
        valid,
        diagnostic: (!valid).then(|| INCONSISTENT.to_string()),
    }
}

fn is_power_of(d: &BigInt, p: u64) -> bool {
    let p = BigInt::from(p);
    let mut d = d.clone();
    if d <= BigInt::zero() {
        return false;
    }
    while d.is_multiple_of(&p) {
        d /= &p;
    }
    d.is_one()
}

/// Exponent list from concrete p-power divisors (`None` if some divisor is
/// not a power of `prime`).
pub fn exponents_of(divisors: &[BigInt], prime: u64) -> Option<Vec<u32>> {
    let p = BigInt::from(prime);
    divisors
        .iter()
        .map(|d| {
            let mut d = d.clone();
            let mut e = 0u32;
            while d.is_multiple_of(&p) && !d.is_zero() {
                d /= &p;
                e += 1;
            }
            d.is_one().then_some(e)
        })
        .collect()
}

pub(crate) fn small_prime_factors(n: &BigInt) -> Vec<u64> {
    let mut out = Vec::new();
    let Some(mut m) = n.magnitude().to_u64() else { return out };
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn from_divisors() {
        let r = schur_from_divisors(&ints(&[1, 5, 5]), Some(5), 0);
        assert_eq!(r.norm.to_string(), "[ 5, 5 ]");
        assert!(r.valid);
        assert_eq!(schur_from_divisors(&ints(&[1]), Some(5), 0).norm.to_string(), "[ ]");
        let bad = schur_from_divisors(&ints(&[1, 6]), Some(5), 0);
        assert!(!bad.valid);
        assert_eq!(bad.diagnostic.as_deref(), Some(INCONSISTENT));
    }

    #[test]
    fn symbolic_rendering() {
        assert_eq!(DivisorList::Symbolic(vec![1, 1, 2]).to_string(), "[ p, p, p^2 ]");
        assert_eq!(DivisorList::Symbolic(vec![1, 2]).at_prime(5), ints(&[5, 25]));
        assert_eq!(exponents_of(&ints(&[5, 125]), 5), Some(vec![1, 3]));
        assert_eq!(exponents_of(&ints(&[10]), 5), None);
        assert_eq!(small_prime_factors(&BigInt::from(-12)), vec![2, 3]);
    }
}
