//! Elementary divisors of the relation matrix and the multiplier read off
//! from them.

mod integer;
mod result;
mod symbolic;

pub use integer::{determinant, identity, mat_mul, snf_integer, IntMatrix, IntegerSnf};
pub use result::{exponents_of, schur_from_divisors, BudgetCap, DivisorList, SchurResult, INCONSISTENT};
pub use symbolic::{excluded_primes, snf_symbolic, Budget, EliminationStats, PivotStrategy, SymbolicSnf};

use crate::error::{Error, Result};
use crate::multmat::build_matrix;
use crate::presentation::{Assignment, Presentation};

/// The multiplier of a concrete presentation via the integer Smith form.
pub fn concrete_mult(pres: &Presentation) -> Result<SchurResult> {
    let prime = pres
        .prime()
        .ok_or_else(|| Error::Domain("concrete_mult expects a concrete presentation".into()))?;
    let m = build_matrix(pres)?;
    let snf = snf_integer(&m.lower(prime, &Assignment::new())?, false);
    Ok(schur_from_divisors(&snf.divisors, Some(prime), m.ncols() - snf.rank))
}

/// Concrete presentations go through the integer path, symbolic ones
/// through elimination over Q[p].
pub fn mult(pres: &Presentation, budget: &Budget, strategy: PivotStrategy) -> Result<SchurResult> {
    if pres.is_concrete() {
        concrete_mult(pres)
    } else {
        Ok(snf_symbolic(&build_matrix(pres)?, budget, strategy)?.result)
    }
}
