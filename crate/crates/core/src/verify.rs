//! Differential checks of symbolic predictions against the integer Smith
//! form at small primes, and enumeration of pseudo-unit zero sets.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::casesplit::{CaseTree, Outcome};
use crate::error::{Error, Result};
use crate::presentation::{check_consistency, least_primitive_root, Assignment, Presentation, Substitution};
use crate::smith::{concrete_mult, DivisorList};
use crate::symring::{Polynomial, ROOT_VAR};

/// Largest `p^m` enumerated without sampling.
pub const EXHAUSTIVE_LIMIT: u128 = 100_000;
/// Hard cap for explicitly requested enumeration.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_PRIMES: [u64; 3] = [5, 7, 11];

fn space_size(prime: u64, m: usize) -> u128 {
    (0..m).fold(1u128, |acc, _| acc.saturating_mul(prime as u128))
}

/// The `idx`-th point of `Z_p^m` in mixed radix, first parameter fastest.
fn nth_assignment(prime: u64, params: &[String], mut idx: u128) -> Assignment {
    let mut a = Assignment::new();
    for name in params {
        a.insert(name.clone(), (idx % prime as u128) as i64);
        idx /= prime as u128;
    }
    a
}

fn with_root(prime: u64, a: &Assignment) -> Result<Assignment> {
    let mut full = a.clone();
    full.insert(ROOT_VAR.to_string(), least_primitive_root(prime)? as i64);
    Ok(full)
}

/// Admissible points of `Z_p^m` where `u` vanishes, `w` bound to the least
/// primitive root. Refuses when `p^m` exceeds `limit`.
pub fn zero_set(
    u: &Polynomial,
    prime: u64,
    params: &[String],
    constraints: &[Polynomial],
    limit: u128,
) -> Result<Vec<Assignment>> {
    let total = space_size(prime, params.len());
    if total > limit {
        return Err(Error::EnumerationBudget { required: total, limit });
    }
    let mut out = Vec::new();
    for idx in 0..total {
        let a = nth_assignment(prime, params, idx);
        let full = with_root(prime, &a)?;
        let mut admissible = true;
        for c in constraints {
            if c.evaluate_mod(prime, &full)? == 0 {
                admissible = false;
                break;
            }
        }
        if admissible && u.evaluate_mod(prime, &full)? == 0 {
            out.push(a);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coverage {
    /// Exhaustive when `p^m <= EXHAUSTIVE_LIMIT`, otherwise the default sample.
    #[default]
    Auto,
    Exhaustive,
    Sample(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    Uncovered,
    /// The evaluated presentation is not a Lie p-ring.
    Inconsistent,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::Uncovered => "uncovered",
            Status::Inconsistent => "inconsistent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub prime: u64,
    pub assignment: Assignment,
    pub status: Status,
    pub concrete: Option<DivisorList>,
    pub predicted: Option<DivisorList>,
    /// Substitution chain of the first applicable node.
    pub node: Option<Vec<Substitution>>,
    /// Number of applicable nodes found.
    pub paths: usize,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub prime: u64,
    pub exhaustive: bool,
    /// Points of the parameter space looked at.
    pub tested: usize,
    /// Points excluded by `require` constraints.
    pub skipped: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub uncovered: usize,
    pub inconsistent: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub summaries: Vec<Summary>,
    /// Sorted by prime, then assignment.
    pub records: Vec<Record>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    fn total(&self, f: impl Fn(&Summary) -> usize) -> usize {
        self.summaries.iter().map(f).sum()
    }

    pub fn mismatched(&self) -> usize {
        self.total(|s| s.mismatched)
    }

    pub fn uncovered(&self) -> usize {
        self.total(|s| s.uncovered)
    }

    pub fn inconsistent(&self) -> usize {
        self.total(|s| s.inconsistent)
    }

    pub fn matched(&self) -> usize {
        self.total(|s| s.matched)
    }

    /// No mismatches and no uncovered points.
    pub fn ok(&self) -> bool {
        self.mismatched() == 0 && self.uncovered() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status != Status::Match)
    }
}

fn render_assignment(a: &Assignment) -> String {
    let parts: Vec<String> = a.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        for s in &self.summaries {
            writeln!(
                f,
                "{} p={} ({}): {} tested, {} skipped, {} match, {} mismatch, {} uncovered, {} inconsistent",
                self.name,
                s.prime,
                if s.exhaustive { "exhaustive" } else { "sampled" },
                s.tested,
                s.skipped,
                s.matched,
                s.mismatched,
                s.uncovered,
                s.inconsistent
            )?;
        }
        for r in self.failures() {
            write!(f, "{} p={} {}", r.status, r.prime, render_assignment(&r.assignment))?;
            if let Some(c) = &r.concrete {
                write!(f, ": concrete {c}")?;
            }
            if let Some(pr) = &r.predicted {
                write!(f, ", predicted {pr}")?;
            }
            if let Some(d) = &r.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub coverage: Coverage,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { coverage: Coverage::Auto, seed: 0 }
    }
}

fn holds(s: &Substitution, prime: u64, full: &Assignment) -> Result<bool> {
    let v = full.get(&s.var).copied().unwrap_or(0).rem_euclid(prime as i64) as u64;
    Ok(s.value.evaluate_mod(prime, full)? == v)
}

/// Nodes of `tree` applicable at `full`: the substitutions hold and every
/// remaining ledger entry is a unit mod `prime`.
fn applicable<'a>(tree: &'a CaseTree, prime: u64, full: &Assignment, out: &mut Vec<&'a CaseTree>) -> Result<()> {
    let Outcome::Computed(r) = &tree.outcome else { return Ok(()) };
    if r.budget_exceeded.is_none() && r.prime_allowed(prime) {
        let mut generic = true;
        for u in &r.pseudo_units {
            if u.evaluate_mod(prime, full)? == 0 {
                generic = false;
                break;
            }
        }
        if generic {
            out.push(tree);
            return Ok(());
        }
    }
    for c in &tree.children {
        if holds(c.label().expect("child has a label"), prime, full)? {
            applicable(c, prime, full, out)?;
        }
    }
    Ok(())
}

fn check_point(pres: &Presentation, tree: &CaseTree, prime: u64, a: Assignment) -> Result<Record> {
    let mut rec = Record {
        prime,
        assignment: a,
        status: Status::Match,
        concrete: None,
        predicted: None,
        node: None,
        paths: 0,
        detail: None,
    };
    let c = pres.evaluate_concrete(prime, &rec.assignment)?;
    let cons = check_consistency(&c)?;
    if !cons.ok {
        rec.status = Status::Inconsistent;
        rec.detail = cons.violations.first().map(ToString::to_string);
        return Ok(rec);
    }
    let concrete = concrete_mult(&c)?;
    if !concrete.valid {
        rec.status = Status::Inconsistent;
        rec.detail = concrete.diagnostic.clone();
        return Ok(rec);
    }
    let got = concrete.norm.at_prime(prime);
    rec.concrete = Some(concrete.norm);

    let full = with_root(prime, &rec.assignment)?;
    let mut nodes = Vec::new();
    applicable(tree, prime, &full, &mut nodes)?;
    rec.paths = nodes.len();
    let mut first = true;
    for n in nodes {
        let r = n.result().expect("applicable nodes are computed");
        let predicted: Vec<BigInt> = r.norm.at_prime(prime);
        if first {
            rec.predicted = Some(r.norm.clone());
            rec.node = Some(n.chain.clone());
            first = false;
        }
        if predicted != got {
            rec.status = Status::Mismatch;
            rec.predicted = Some(r.norm.clone());
            rec.node = Some(n.chain.clone());
            break;
        }
    }
    if rec.paths == 0 {
        rec.status = Status::Uncovered;
    }
    Ok(rec)
}

/// Compares every (prime, admissible point) against the tree built for
/// `pres`.
pub fn differential_check(
    pres: &Presentation,
    tree: &CaseTree,
    primes: &[u64],
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    if pres.is_concrete() {
        return Err(Error::Domain("differential_check expects a symbolic presentation".into()));
    }
    let params = pres.params().to_vec();
    let mut warnings = Vec::new();
    let mut summaries = Vec::new();
    let mut records = Vec::new();
    for &prime in primes {
        if prime < 5 {
            warnings.push(format!("p={prime} is below 5, where small-order behaviour differs"));
        }
        let total = space_size(prime, params.len());
        let exhaustive = match opts.coverage {
            Coverage::Exhaustive => true,
            Coverage::Auto => total <= EXHAUSTIVE_LIMIT,
            Coverage::Sample(_) => false,
        };
        let points: Vec<Assignment> = if exhaustive {
            if total > ENUMERATION_LIMIT {
                return Err(Error::EnumerationBudget { required: total, limit: ENUMERATION_LIMIT });
            }
            (0..total).map(|i| nth_assignment(prime, &params, i)).collect()
        } else {
            let n = if let Coverage::Sample(n) = opts.coverage { n } else { DEFAULT_SAMPLES };
            sample(prime, &params, n, opts.seed)
        };
        let mut admissible = Vec::with_capacity(points.len());
        for a in points {
            if pres.admits(prime, &a)? {
                admissible.push(a);
            }
        }
        let mut summary = Summary { prime, exhaustive, skipped: 0, ..Summary::default() };
        summary.tested = admissible.len();
        let mut recs: Vec<Record> =
            admissible.into_par_iter().map(|a| check_point(pres, tree, prime, a)).collect::<Result<_>>()?;
        recs.sort_by(|x, y| x.assignment.cmp(&y.assignment));
        for r in &recs {
            match r.status {
                Status::Match => summary.matched += 1,
                Status::Mismatch => summary.mismatched += 1,
                Status::Uncovered => summary.uncovered += 1,
                Status::Inconsistent => summary.inconsistent += 1,
            }
        }
        summary.skipped = if exhaustive { total as usize - summary.tested } else { 0 };
        summaries.push(summary);
        records.extend(recs);
    }
    Ok(VerifyReport { name: pres.name.clone(), summaries, records, warnings })
}

/// `n` points drawn uniformly (with repetition) from a stream seeded by
/// `seed` and `prime`.
fn sample(prime: u64, params: &[String], n: usize, seed: u64) -> Vec<Assignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ prime.rotate_left(32));
    (0..n)
        .map(|_| params.iter().map(|name| (name.clone(), rng.gen_range(0..prime) as i64)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casesplit::{split, SplitOptions};
    use crate::presentation::parse;
    use crate::symring::{parse_poly, Ring};

    fn xs(v: &[Assignment]) -> Vec<i64> {
        v.iter().map(|a| a["x"]).collect()
    }

    #[test]
    fn zero_sets() {
        let params = vec!["x".to_string()];
        let r = Ring::for_params(&params).unwrap();
        let u = parse_poly(&r, "-x^2-x").unwrap();
        assert_eq!(xs(&zero_set(&u, 7, &params, &[], 100).unwrap()), [0, 6]);
        let x = parse_poly(&r, "x").unwrap();
        assert_eq!(xs(&zero_set(&u, 7, &params, &[x], 100).unwrap()), [6]);
        assert!(zero_set(&Polynomial::one(&r), 7, &params, &[], 100).unwrap().is_empty());
        assert_eq!(
            zero_set(&u, 7, &params, &[], 5).unwrap_err(),
            Error::EnumerationBudget { required: 7, limit: 5 }
        );
    }

    #[test]
    fn sym1_matches_everywhere() {
        let p = parse("name sym1\ndim 3\nparams x\n[b1,b2] = b3\np*b1 = x*b3").unwrap();
        let t = split(&p, &SplitOptions::default()).unwrap();
        let rep = differential_check(&p, &t, &[5, 7], &VerifyOptions::default()).unwrap();
        assert!(rep.ok(), "{rep}");
        assert_eq!(rep.matched(), 12);
        let zero = rep.records.iter().find(|r| r.assignment["x"] == 0).unwrap();
        assert_eq!(zero.node.as_ref().unwrap().len(), 1);
        assert_eq!(zero.concrete.as_ref().unwrap().to_string(), "[ 5, 5 ]");
    }

    #[test]
    fn missing_branch_is_uncovered() {
        let p = parse("name sym1\ndim 3\nparams x\n[b1,b2] = b3\np*b1 = x*b3").unwrap();
        let mut t = split(&p, &SplitOptions::default()).unwrap();
        t.children.clear();
        let rep = differential_check(&p, &t, &[5], &VerifyOptions::default()).unwrap();
        assert_eq!((rep.matched(), rep.uncovered()), (4, 1));
        assert!(!rep.ok());
    }

    #[test]
    fn sampling_is_reproducible() {
        let params = vec!["x".to_string(), "y".to_string()];
        assert_eq!(sample(11, &params, 20, 3), sample(11, &params, 20, 3));
        assert_ne!(sample(11, &params, 20, 3), sample(11, &params, 20, 4));
    }
}
