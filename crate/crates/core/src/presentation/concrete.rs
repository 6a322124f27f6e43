//! Arithmetic in a concrete Lie p-ring given by its presentation, and the
//! consistency checks built on it.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Assignment, Presentation};
use crate::error::{Error, Result};

/// Normal-form coordinates: entry `i` is the coefficient of `b_{i+1}`, in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConcreteElement {
    pub coords: Vec<u64>,
}

impl ConcreteElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for ConcreteElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { format!("b{}", i + 1) } else { format!("{c}*b{}", i + 1) })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Structure constants of a concrete presentation as machine integers.
#[derive(Debug, Clone)]
pub struct ConcreteRing {
    prime: u64,
    n: usize,
    /// `pmult[i]` = coordinates of `p b_{i+1}`.
    pmult: Vec<Vec<i128>>,
    /// `bracket[i][j]` = coordinates of `[b_{i+1}, b_{j+1}]`.
    bracket: Vec<Vec<Vec<i128>>>,
}

impl ConcreteRing {
    pub fn new(pres: &Presentation) -> Result<Self> {
        let prime = pres
            .prime()
            .ok_or_else(|| Error::Domain("concrete arithmetic needs a concrete presentation".into()))?;
        let n = pres.dim();
        let residue = |c: &crate::symring::Polynomial| -> Result<i128> {
            let v = c
                .as_constant()
                .ok_or_else(|| Error::Domain(format!("coefficient `{c}` is not a residue")))?;
            i128::try_from(v).map_err(|_| Error::Domain("coefficient too large".into()))
        };
        let mut pmult = vec![vec![0i128; n]; n];
        for (&(i, k), c) in pres.pmults() {
            pmult[i - 1][k - 1] = residue(c)?;
        }
        let mut bracket = vec![vec![vec![0i128; n]; n]; n];
        for (&(i, j, k), c) in pres.brackets() {
            let v = residue(c)?;
            bracket[i - 1][j - 1][k - 1] = v;
            bracket[j - 1][i - 1][k - 1] = -v;
        }
        Ok(ConcreteRing { prime, n, pmult, bracket })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generator(&self, i: usize) -> ConcreteElement {
        let mut coords = vec![0; self.n];
        coords[i - 1] = 1;
        ConcreteElement { coords }
    }

    pub fn zero(&self) -> ConcreteElement {
        ConcreteElement { coords: vec![0; self.n] }
    }

    /// Rewrites `p b_i` by its expansion, lowest index first.
    pub fn normal_form(&self, v: &[i128]) -> ConcreteElement {
        assert_eq!(v.len(), self.n, "vector length does not match the dimension");
        let p = self.prime as i128;
        let mut v = v.to_vec();
        for i in 0..self.n {
            let q = v[i].div_euclid(p);
            v[i] = v[i].rem_euclid(p);
            if q != 0 {
                for (x, c) in v.iter_mut().zip(&self.pmult[i]).skip(i + 1) {
                    *x += q * c;
                }
            }
        }
        ConcreteElement { coords: v.into_iter().map(|c| c as u64).collect() }
    }

    fn raw(a: &ConcreteElement) -> Vec<i128> {
        a.coords.iter().map(|&c| c as i128).collect()
    }

    pub fn add(&self, a: &ConcreteElement, b: &ConcreteElement) -> ConcreteElement {
        let v: Vec<i128> = a.coords.iter().zip(&b.coords).map(|(&x, &y)| x as i128 + y as i128).collect();
        self.normal_form(&v)
    }

    pub fn neg(&self, a: &ConcreteElement) -> ConcreteElement {
        let v: Vec<i128> = a.coords.iter().map(|&x| -(x as i128)).collect();
        self.normal_form(&v)
    }

    pub fn scale(&self, c: i128, a: &ConcreteElement) -> ConcreteElement {
        let v: Vec<i128> = Self::raw(a).into_iter().map(|x| x * c).collect();
        self.normal_form(&v)
    }

    fn bracket_raw(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        let mut out = vec![0i128; self.n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                for (k, &c) in self.bracket[i][j].iter().enumerate() {
                    out[k] += ai * bj * c;
                }
            }
        }
        out
    }

    /// `a`, or `-(-a)` when the negative has smaller coordinates.
    pub fn render(&self, a: &ConcreteElement) -> String {
        let n = self.neg(a);
        let weight = |e: &ConcreteElement| e.coords.iter().sum::<u64>();
        if weight(&n) < weight(a) {
            let t = n.to_string();
            if n.coords.iter().filter(|&&c| c != 0).count() > 1 {
                format!("-({t})")
            } else {
                format!("-{t}")
            }
        } else {
            a.to_string()
        }
    }

    fn violation(&self, kind: RelationKind, indices: Vec<usize>, left: ConcreteElement, right: ConcreteElement) -> Violation {
        let shown = (self.render(&left), self.render(&right));
        Violation { kind, indices, left, right, shown }
    }

    pub fn bracket(&self, a: &ConcreteElement, b: &ConcreteElement) -> ConcreteElement {
        self.normal_form(&self.bracket_raw(&Self::raw(a), &Self::raw(b)))
    }

    /// `p b_i` written out by the defining relation (not via carrying).
    pub fn p_expansion(&self, i: usize) -> ConcreteElement {
        self.normal_form(&self.pmult[i - 1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Alternating,
    PCompat,
    Jacobi,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Alternating => "alternating",
            RelationKind::PCompat => "p-compat",
            RelationKind::Jacobi => "jacobi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: RelationKind,
    pub indices: Vec<usize>,
    pub left: ConcreteElement,
    pub right: ConcreteElement,
    /// `left` and `right` written with the shorter sign, e.g. `-b3` for `4*b3` at p=5.
    pub shown: (String, String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ['i', 'j', 'h'];
        let idx: Vec<String> = self.indices.iter().zip(names).map(|(v, c)| format!("{c}={v}")).collect();
        write!(f, "{} at {}: {} != {}", self.kind, idx.join(", "), self.shown.0, self.shown.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks `[b_i,b_i] = 0`, `[b_i,b_j] = -[b_j,b_i]`, `[p b_i, b_j] = p [b_i, b_j]`
/// for all `i, j` (the case `i = j` is reported with the single index `i`),
/// and the Jacobi identity for `i < j < h`.
pub fn check_consistency(pres: &Presentation) -> Result<ConsistencyReport> {
    let r = ConcreteRing::new(pres)?;
    let n = r.dim();
    let p = r.prime() as i128;
    let gens: Vec<ConcreteElement> = (1..=n).map(|i| r.generator(i)).collect();
    let mut violations = Vec::new();

    for i in 1..=n {
        let left = r.bracket(&gens[i - 1], &gens[i - 1]);
        if !left.is_zero() {
            violations.push(r.violation(RelationKind::Alternating, vec![i], left, r.zero()));
        }
        for j in i + 1..=n {
            let left = r.bracket(&gens[i - 1], &gens[j - 1]);
            let right = r.neg(&r.bracket(&gens[j - 1], &gens[i - 1]));
            if left != right {
                violations.push(r.violation(RelationKind::Alternating, vec![i, j], left, right));
            }
        }
    }

    for i in 1..=n {
        let pb = r.p_expansion(i);
        for j in 1..=n {
            let left = r.bracket(&pb, &gens[j - 1]);
            let right = r.scale(p, &r.bracket(&gens[i - 1], &gens[j - 1]));
            if left != right {
                let indices = if i == j { vec![i] } else { vec![i, j] };
                violations.push(r.violation(RelationKind::PCompat, indices, left, right));
            }
        }
    }

    for i in 1..=n {
        for j in i + 1..=n {
            for h in j + 1..=n {
                let (a, b, c) = (&gens[i - 1], &gens[j - 1], &gens[h - 1]);
                let t1 = r.bracket(&r.bracket(a, b), c);
                let t2 = r.bracket(&r.bracket(b, c), a);
                let t3 = r.bracket(&r.bracket(c, a), b);
                let left = r.add(&r.add(&t1, &t2), &t3);
                if !left.is_zero() {
                    violations.push(r.violation(RelationKind::Jacobi, vec![i, j, h], left, r.zero()));
                }
            }
        }
    }

    Ok(ConsistencyReport { ok: violations.is_empty(), violations })
}

/// Outcome of checking a symbolic presentation at random admissible points.
/// Passing is evidence, not proof.
#[derive(Debug, Clone, Serialize)]
pub struct SampledConsistency {
    pub probabilistic: bool,
    pub tested: usize,
    pub failures: Vec<(u64, Assignment, Violation)>,
}

impl SampledConsistency {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates a symbolic presentation at `samples` random admissible points
/// for each prime and checks each one.
pub fn check_consistency_sampled(
    pres: &Presentation,
    primes: &[u64],
    samples: usize,
    seed: u64,
) -> Result<SampledConsistency> {
    if pres.is_concrete() {
        return Err(Error::Domain("sampled checking expects a symbolic presentation".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    let mut failures = Vec::new();
    for &prime in primes {
        let mut attempts = 0;
        let mut done = 0;
        while done < samples && attempts < samples * 20 {
            attempts += 1;
            let a: Assignment = pres.params().iter().map(|x| (x.clone(), rng.gen_range(0..prime as i64))).collect();
            let c = pres.evaluate_concrete(prime, &a)?;
            if !c.admissibility().is_admissible() {
                continue;
            }
            done += 1;
            tested += 1;
            let report = check_consistency(&c)?;
            if let Some(v) = report.violations.into_iter().next() {
                failures.push((prime, a, v));
            }
        }
    }
    Ok(SampledConsistency { probabilistic: true, tested, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse;

    fn at(src: &str, prime: u64, a: &[(&str, i64)]) -> Presentation {
        let a: Assignment = a.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        parse(src).unwrap().evaluate_concrete(prime, &a).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = ConcreteRing::new(&at("dim 2\npb1 = b2", 5, &[])).unwrap();
        assert_eq!(r.normal_form(&[7, 0]).coords, vec![2, 1]);
        assert_eq!(r.normal_form(&[6, 4]).coords, vec![1, 0]);
        assert_eq!(r.normal_form(&[0, 0]).coords, vec![0, 0]);
        assert_eq!(r.normal_form(&[-1, 0]).coords, vec![4, 4]);
    }

    #[test]
    fn bracket_examples() {
        let r = ConcreteRing::new(&at("dim 3\n[b1,b2] = b3", 5, &[])).unwrap();
        assert_eq!(r.bracket(&r.generator(1), &r.generator(2)).coords, vec![0, 0, 1]);
        let a = ConcreteElement { coords: vec![1, 1, 0] };
        assert_eq!(r.bracket(&a, &r.generator(2)).coords, vec![0, 0, 1]);
        assert!(r.bracket(&a, &a).is_zero());
    }

    #[test]
    fn consistency_examples() {
        assert!(check_consistency(&at("dim 3\n[b1,b2] = b3", 5, &[])).unwrap().ok);
        assert!(check_consistency(&at("dim 3\npb1 = b2\npb2 = b3", 5, &[])).unwrap().ok);
        let bad = check_consistency(&at("dim 3\n[b1,b2] = b3\npb1 = b2", 5, &[])).unwrap();
        assert!(!bad.ok);
        let v = &bad.violations[0];
        assert_eq!((v.kind, v.indices.clone()), (RelationKind::PCompat, vec![1]));
        assert_eq!(v.left.coords, vec![0, 0, 4]);
        assert!(v.right.is_zero());
        assert_eq!(v.to_string(), "p-compat at i=1: -b3 != 0");
    }

    #[test]
    fn symbolic_needs_sampling() {
        let sym = parse("dim 3\nparams x\n[b1,b2] = b3\npb1 = x*b3").unwrap();
        assert!(check_consistency(&sym).is_err());
        let s = check_consistency_sampled(&sym, &[5, 7], 4, 1).unwrap();
        assert!(s.ok() && s.probabilistic);
        assert_eq!(s.tested, 8);
    }
}
