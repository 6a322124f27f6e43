//! Smith normal form over Q[p] by fraction-free elimination.
//!
//! Every pivot is `p^l * u` with `l` the smallest p-valuation among the
//! remaining entries, so `u` has a nonzero constant coefficient. A step
//! replaces each other row `r` by `(u * row_r - (a_rc / p^l) * row_k) / u'`
//! where `u'` is the previous pivot quotient. The division is exact (the
//! entries are minors divided by powers of `p`) and all entries stay in
//! `Z[w, params, p]`. Only the pseudo-units `u` are ever divided by, and
//! their constant parts are recorded.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::result::{small_prime_factors, BudgetCap, DivisorList, SchurResult};
use crate::error::{Error, Result};
use crate::multmat::RelationMatrix;
use crate::symring::{factor_best_effort, Polynomial, PseudoUnit, ROOT_VAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Entry updates.
    pub steps: u64,
    /// Total degree of any entry.
    pub degree: u32,
    /// Decimal digits of any coefficient.
    pub digits: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { steps: 2_000_000, degree: 10, digits: 60 }
    }
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { steps: u64::MAX, degree: u32::MAX, digits: usize::MAX };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotStrategy {
    /// Smallest valuation, then fewest terms in the constant part, then
    /// smallest degree, then fewest digits.
    #[default]
    Sparse,
    /// Smallest valuation, first in row-major order.
    FirstFound,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EliminationStats {
    pub pivots: usize,
    pub steps: u64,
    pub guard_checks: u64,
    pub max_degree: u32,
    pub max_digits: usize,
}

#[derive(Debug, Clone)]
pub struct SymbolicSnf {
    pub result: SchurResult,
    pub stats: EliminationStats,
}

type PivotKey = (u32, usize, u32, usize, usize, usize);

fn pivot_key(e: &Polynomial, r: usize, c: usize, strategy: PivotStrategy) -> PivotKey {
    let l = e.p_valuation().expect("nonzero entry");
    match strategy {
        PivotStrategy::FirstFound => (l, 0, 0, 0, r, c),
        PivotStrategy::Sparse => {
            let s0 = e.shift_p_down(l).p_constant_part();
            (l, s0.num_terms(), s0.total_degree(), s0.max_digits(), r, c)
        }
    }
}

/// Above this many terms a ledger entry is kept as is rather than factored.
const LEDGER_FACTOR_TERMS: usize = 64;

/// The square-free part of `s0` without powers of `w` (never zero mod p),
/// sign and content; `None` when nothing nonconstant remains.
fn ledger_entry(s0: &Polynomial) -> Option<Polynomial> {
    if s0.is_constant() {
        return None;
    }
    let w = s0.ring().index_of(ROOT_VAR).map(|i| Polynomial::var_at(s0.ring(), i));
    if s0.num_terms() > LEDGER_FACTOR_TERMS {
        return Some(s0.primitive());
    }
    let f = factor_best_effort(s0).ok()?;
    let mut acc = Polynomial::one(s0.ring());
    for (g, _) in &f.factors {
        if Some(g) != w.as_ref() {
            acc = &acc * g;
        }
    }
    (!acc.is_constant()).then(|| acc.primitive())
}

fn is_unit_constant(c: &BigInt) -> bool {
    c.abs().is_one()
}

/// Runs the elimination. Budget exhaustion is reported in the result, with
/// the divisors and pseudo-units found so far.
pub fn snf_symbolic(m: &RelationMatrix, budget: &Budget, strategy: PivotStrategy) -> Result<SymbolicSnf> {
    let ncols = m.ncols();
    let mut rows: Vec<Vec<Polynomial>> =
        m.rows.iter().filter(|r| r.entries.iter().any(|e| !e.is_zero())).map(|r| r.entries.clone()).collect();
    let mut cols: Vec<usize> = (0..ncols).collect();
    let mut prev = Polynomial::one(&m.ring);
    let mut exps: Vec<u32> = Vec::new();
    let mut ledger: Vec<Polynomial> = Vec::new();
    let mut contents: Vec<BigInt> = Vec::new();
    let mut stats = EliminationStats::default();
    let mut exceeded = None;

    'outer: loop {
        let mut best: Option<(PivotKey, usize, usize)> = None;
        for (ri, row) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                let e = &row[c];
                if e.is_zero() {
                    continue;
                }
                let key = pivot_key(e, ri, ci, strategy);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, ri, ci));
                }
            }
        }
        let Some((key, pr, pc)) = best else { break };
        let l = key.0;
        let prow = rows.swap_remove(pr);
        let pcol = cols.remove(pc);
        let u = prow[pcol].shift_p_down(l);

        stats.guard_checks += 1;
        let unit = PseudoUnit::from_polynomial(&u)
            .map_err(|e| Error::Domain(format!("elimination guard: divisor is not a pseudo-unit ({e})")))?;
        let s0 = unit.zero_locus();
        assert!(!s0.is_zero(), "pivot quotient without constant coefficient");
        let content = s0.content();
        if !is_unit_constant(&content) && !contents.contains(&content.abs()) {
            contents.push(content.abs());
        }
        if let Some(entry) = ledger_entry(s0) {
            if !ledger.contains(&entry) {
                ledger.push(entry);
            }
        }
        exps.push(l);
        stats.pivots += 1;

        for row in rows.iter_mut() {
            let f = row[pcol].shift_p_down(l);
            for &c in &cols {
                let mut e = if u.is_one() { row[c].clone() } else { &u * &row[c] };
                if !f.is_zero() && !prow[c].is_zero() {
                    e = &e - &(&f * &prow[c]);
                }
                if !prev.is_one() && !e.is_zero() {
                    e = match prev.as_constant() {
                        Some(k) => e.div_exact_int(&k),
                        None => e.div_exact(&prev),
                    }
                    .ok_or_else(|| Error::Domain("elimination produced an inexact division".into()))?;
                }
                stats.steps += 1;
                let deg = e.total_degree();
                let dig = e.max_digits();
                stats.max_degree = stats.max_degree.max(deg);
                stats.max_digits = stats.max_digits.max(dig);
                row[c] = e;
                if stats.steps > budget.steps {
                    exceeded = Some(BudgetCap::Steps);
                } else if deg > budget.degree {
                    exceeded = Some(BudgetCap::Degree);
                } else if dig > budget.digits {
                    exceeded = Some(BudgetCap::Digits);
                }
                if exceeded.is_some() {
                    break 'outer;
                }
            }
            row[pcol] = Polynomial::zero(&m.ring);
        }
        rows.retain(|r| cols.iter().any(|&c| !r[c].is_zero()));
        prev = u;
    }

    let rank = exps.len();
    let mut norm: Vec<u32> = exps.into_iter().filter(|&e| e > 0).collect();
    norm.sort_unstable();
    contents.sort();
    let result = SchurResult {
        norm: DivisorList::Symbolic(norm),
        pseudo_units: ledger,
        integer_units: contents,
        free_rank: ncols - rank,
        budget_exceeded: exceeded,
        valid: true,
        diagnostic: exceeded.map(|cap| format!("budget exceeded: {cap}")),
    };
    Ok(SymbolicSnf { result, stats })
}

/// Primes dividing the integer contents of the recorded pseudo-units.
pub fn excluded_primes(result: &SchurResult) -> Vec<u64> {
    let mut out: Vec<u64> = result.integer_units.iter().flat_map(small_prime_factors).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multmat::{build_matrix, BasisIndex, Row, RowLabel};
    use crate::presentation::parse;
    use crate::symring::{parse_poly, Ring};

    fn custom(rows: &[&[&str]], params: &[&str]) -> RelationMatrix {
        let ring = Ring::for_params(params).unwrap();
        let ncols = rows[0].len();
        // the basis only fixes the column count here
        let n = (1..).find(|n| n * (n + 1) / 2 >= ncols).unwrap();
        let basis = BasisIndex::new(n).unwrap();
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut entries: Vec<Polynomial> = r.iter().map(|s| parse_poly(&ring, s).unwrap()).collect();
                entries.resize(basis.len(), Polynomial::zero(&ring));
                Row { label: RowLabel::U(i + 1), entries }
            })
            .collect();
        RelationMatrix { basis, ring, rows }
    }

    fn run(m: &RelationMatrix) -> SchurResult {
        snf_symbolic(m, &Budget::default(), PivotStrategy::Sparse).unwrap().result
    }

    #[test]
    fn two_by_two_example() {
        // rows p*g1 + x*g2, p*g2: cokernel Z/p^2 where x is a unit
        let r = run(&custom(&[&["p", "x", "0"], &["0", "p", "0"]], &["x"]));
        assert_eq!(r.norm.to_string(), "[ p^2 ]");
        assert_eq!(r.pseudo_units.iter().map(ToString::to_string).collect::<Vec<_>>(), ["x"]);
        assert_eq!(r.free_rank, 1);
    }

    #[test]
    fn identity_is_trivial() {
        let r = run(&custom(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]], &[]));
        assert_eq!(r.norm.to_string(), "[ ]");
        assert!(r.pseudo_units.is_empty());
        assert_eq!(r.free_rank, 0);
    }

    #[test]
    fn contents_are_excluded_primes() {
        let r = run(&custom(&[&["2*x", "0", "0"], &["0", "3*p", "0"], &["0", "0", "p^2"]], &["x"]));
        assert_eq!(r.norm.to_string(), "[ p, p^2 ]");
        assert_eq!(r.pseudo_units.iter().map(ToString::to_string).collect::<Vec<_>>(), ["x"]);
        assert_eq!(excluded_primes(&r), vec![2, 3]);
        assert!(!r.prime_allowed(3) && r.prime_allowed(5));
    }

    #[test]
    fn heisenberg_generic() {
        let m = build_matrix(&parse("dim 3\n[b1,b2] = b3").unwrap()).unwrap();
        let r = run(&m);
        assert_eq!(r.norm.to_string(), "[ p, p ]");
        assert!(r.pseudo_units.is_empty());
        // s1, s2 and p*t[1,2] + s[3] leave a free part of rank 3
        assert_eq!(r.free_rank, 3);
    }

    #[test]
    fn budget_is_reported() {
        let m = build_matrix(&parse("dim 3\nparams x\n[b1,b2] = b3\npb1 = x*b3").unwrap()).unwrap();
        let tiny = Budget { steps: 3, ..Budget::default() };
        let r = snf_symbolic(&m, &tiny, PivotStrategy::Sparse).unwrap().result;
        assert_eq!(r.budget_exceeded, Some(BudgetCap::Steps));
        assert_eq!(r.diagnostic.as_deref(), Some("budget exceeded: steps"));
    }
}
