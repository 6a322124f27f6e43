//! Nilpotent Lie p-ring presentations: generators `b1..bn`, relations
//! `[b_i, b_j] = sum_k a_ijk b_k` (k > j) and `p b_i = sum_k a_ik b_k`
//! (k > i), with coefficients that are polynomials in the parameters and
//! the primitive-root symbol `w`.

mod concrete;
mod format;
mod primes;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symring::{parse_poly, Polynomial, Ring, PRIME_VAR, ROOT_VAR};

pub use concrete::{
    check_consistency, check_consistency_sampled, ConcreteElement, ConcreteRing, ConsistencyReport, RelationKind,
    SampledConsistency, Violation,
};
pub use format::parse;
pub use primes::{is_prime, least_primitive_root};

/// Parameter values by name. Negative values are allowed and reduced mod p.
pub type Assignment = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    /// Coefficients are residues modulo `prime`; `w` was bound to `root`.
    Concrete { prime: u64, root: u64, assignment: Assignment },
}

/// Whether the presentation belongs to its family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// A specialization made these `require` polynomials identically zero.
    Infeasible(Vec<Polynomial>),
    /// These `require` polynomials evaluate to zero at the concrete point.
    Violated(Vec<Polynomial>),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// One substitution `var := value` applied during specialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub var: String,
    #[serde(serialize_with = "crate::render::ser_display")]
    pub value: Polynomial,
}

impl std::fmt::Display for Substitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}", self.var, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    dim: usize,
    ring: Arc<Ring>,
    params: Vec<String>,
    brackets: BTreeMap<(usize, usize, usize), Polynomial>,
    pmults: BTreeMap<(usize, usize), Polynomial>,
    constraints: Vec<Polynomial>,
    mode: Mode,
    admissibility: Admissibility,
}

fn is_generator_name(s: &str) -> bool {
    let rest = s.strip_prefix('b').or_else(|| s.strip_prefix('l'));
    rest.is_some_and(|r| !r.is_empty() && r.bytes().all(|c| c.is_ascii_digit()))
}

impl Presentation {
    /// An empty symbolic presentation (all coefficients zero).
    pub fn new(name: impl Into<String>, dim: usize, params: &[impl AsRef<str>]) -> Result<Self> {
        if dim < 1 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        for p in &params {
            if is_generator_name(p) {
                return Err(Error::Domain(format!("parameter `{p}` clashes with generator names")));
            }
        }
        let ring = Ring::for_params(&params)?;
        Ok(Presentation {
            name: name.into(),
            dim,
            ring,
            params,
            brackets: BTreeMap::new(),
            pmults: BTreeMap::new(),
            constraints: Vec::new(),
            mode: Mode::Symbolic,
            admissibility: Admissibility::Admissible,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn constraints(&self) -> &[Polynomial] {
        &self.constraints
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn admissibility(&self) -> &Admissibility {
        &self.admissibility
    }

    pub fn is_concrete(&self) -> bool {
        matches!(self.mode, Mode::Concrete { .. })
    }

    pub fn prime(&self) -> Option<u64> {
        match self.mode {
            Mode::Concrete { prime, .. } => Some(prime),
            Mode::Symbolic => None,
        }
    }

    /// Parses a polynomial over this presentation's indeterminates.
    pub fn poly(&self, s: &str) -> Result<Polynomial> {
        parse_poly(&self.ring, s)
    }

    fn check_coefficient(&self, c: &Polynomial) -> Result<Polynomial> {
        let c = c.embed(&self.ring)?;
        if !c.is_p_free() {
            return Err(Error::Domain("coefficients may not involve p".into()));
        }
        Ok(c)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim {
            return Err(Error::Domain(format!("generator index {i} outside 1..{}", self.dim)));
        }
        Ok(())
    }

    /// Sets `[b_i, b_j]`'s coefficient at `b_k`. Either argument order is
    /// accepted; `k` must exceed both indices.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, c: &Polynomial) -> Result<()> {
        for x in [i, j, k] {
            self.check_index(x)?;
        }
        if i == j {
            return Err(Error::Domain(format!("[b{i},b{i}] is zero by definition")));
        }
        if k <= i.max(j) {
            return Err(Error::Domain(format!("[b{i},b{j}] may only involve b_k with k > {}", i.max(j))));
        }
        let mut c = self.check_coefficient(c)?;
        let key = if i < j {
            (i, j, k)
        } else {
            c = -c;
            (j, i, k)
        };
        if c.is_zero() {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, c);
        }
        Ok(())
    }

    /// Sets the coefficient of `b_k` in `p b_i`; requires `k > i`.
    pub fn set_pmult(&mut self, i: usize, k: usize, c: &Polynomial) -> Result<()> {
        self.check_index(i)?;
        self.check_index(k)?;
        if k <= i {
            return Err(Error::Domain(format!("p*b{i} may only involve b_k with k > {i}")));
        }
        let c = self.check_coefficient(c)?;
        if c.is_zero() {
            self.pmults.remove(&(i, k));
        } else {
            self.pmults.insert((i, k), c);
        }
        Ok(())
    }

    pub fn add_constraint(&mut self, c: &Polynomial) -> Result<()> {
        let c = self.check_coefficient(c)?;
        if !self.constraints.contains(&c) {
            self.constraints.push(c);
        }
        Ok(())
    }

    /// `a_ijk` under the total convention: zero on the diagonal, antisymmetric
    /// in `i, j`, and zero outside the stored triangular range.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Polynomial {
        if i == j {
            return Polynomial::zero(&self.ring);
        }
        let (key, neg) = if i < j { ((i, j, k), false) } else { ((j, i, k), true) };
        match self.brackets.get(&key) {
            Some(c) if neg => -c,
            Some(c) => c.clone(),
            None => Polynomial::zero(&self.ring),
        }
    }

    /// `a_ik`, the coefficient of `b_k` in `p b_i` (zero unless `k > i`).
    pub fn pmult_coefficient(&self, i: usize, k: usize) -> Polynomial {
        self.pmults.get(&(i, k)).cloned().unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Polynomial)> {
        self.brackets.iter()
    }

    pub fn pmults(&self) -> impl Iterator<Item = (&(usize, usize), &Polynomial)> {
        self.pmults.iter()
    }

    fn map_coefficients(&self, ring: &Arc<Ring>, f: impl Fn(&Polynomial) -> Result<Polynomial>) -> Result<Self> {
        let mut out = self.clone();
        out.ring = ring.clone();
        out.brackets = BTreeMap::new();
        out.pmults = BTreeMap::new();
        for (k, c) in &self.brackets {
            let v = f(c)?;
            if !v.is_zero() {
                out.brackets.insert(*k, v);
            }
        }
        for (k, c) in &self.pmults {
            let v = f(c)?;
            if !v.is_zero() {
                out.pmults.insert(*k, v);
            }
        }
        Ok(out)
    }

    /// Substitutes values for parameters. Values may use `w` and the
    /// parameters that are not being substituted. Constraints that become
    /// identically zero mark the result infeasible; constraints that become
    /// `+-1` are discharged.
    pub fn specialise(&self, subs: &[Substitution]) -> Result<Self> {
        if self.is_concrete() {
            return Err(Error::Domain("cannot specialise a concrete presentation".into()));
        }
        if subs.is_empty() {
            return Ok(self.clone());
        }
        let mut values = Vec::with_capacity(subs.len());
        for s in subs {
            if !self.params.contains(&s.var) {
                return Err(Error::Context(format!("`{}` is not a parameter of {}", s.var, self.name)));
            }
            if subs.iter().filter(|t| t.var == s.var).count() > 1 {
                return Err(Error::Context(format!("`{}` substituted twice", s.var)));
            }
            let v = s.value.embed(&self.ring)?;
            for idx in v.used_vars() {
                let name = &self.ring.vars()[idx];
                if name == PRIME_VAR {
                    return Err(Error::Domain("substituted values may not involve p".into()));
                }
                if subs.iter().any(|t| &t.var == name) {
                    return Err(Error::Context(format!("value for `{}` uses substituted `{name}`", s.var)));
                }
            }
            values.push((s.var.clone(), v));
        }
        let remaining: Vec<String> =
            self.params.iter().filter(|p| !subs.iter().any(|s| &s.var == *p)).cloned().collect();
        let new_ring = Ring::for_params(&remaining)?;
        let apply = |c: &Polynomial| -> Result<Polynomial> {
            let mut acc = c.clone();
            for (var, v) in &values {
                acc = acc.substitute(var, v)?;
            }
            acc.embed(&new_ring)
        };
        let mut out = self.map_coefficients(&new_ring, apply)?;
        out.params = remaining;
        out.constraints = Vec::new();
        let mut dead = match &self.admissibility {
            Admissibility::Infeasible(v) => v.clone(),
            _ => Vec::new(),
        };
        for c in &self.constraints {
            let v = apply(c)?;
            if v.is_zero() {
                dead.push(c.clone());
            } else if v.as_constant().is_some_and(|k| k == 1.into() || k == (-1).into()) {
                // discharged
            } else {
                let v = v.normalize_sign();
                if !out.constraints.contains(&v) {
                    out.constraints.push(v);
                }
            }
        }
        out.admissibility = if dead.is_empty() { Admissibility::Admissible } else { Admissibility::Infeasible(dead) };
        Ok(out)
    }

    /// Convenience wrapper taking `var = expression` strings.
    pub fn specialise_str(&self, subs: &[(&str, &str)]) -> Result<Self> {
        let subs = subs
            .iter()
            .map(|(v, e)| Ok(Substitution { var: v.to_string(), value: self.poly(e)? }))
            .collect::<Result<Vec<_>>>()?;
        self.specialise(&subs)
    }

    /// Evaluates every coefficient at a concrete prime and parameter point,
    /// binding `w` to the least primitive root. Constraints that vanish mark
    /// the result as outside the family.
    pub fn evaluate_concrete(&self, prime: u64, assignment: &Assignment) -> Result<Self> {
        if self.is_concrete() {
            return Err(Error::Domain("presentation is already concrete".into()));
        }
        let root = least_primitive_root(prime)?;
        for name in assignment.keys() {
            if !self.params.contains(name) {
                return Err(Error::Context(format!("`{name}` is not a parameter of {}", self.name)));
            }
        }
        let mut full = assignment.clone();
        for p in &self.params {
            if !full.contains_key(p) {
                return Err(Error::Context(format!("no value assigned to parameter `{p}`")));
            }
        }
        full.insert(ROOT_VAR.to_string(), root as i64);
        let new_ring = Ring::for_params::<&str>(&[])?;
        let eval = |c: &Polynomial| -> Result<Polynomial> {
            Ok(Polynomial::constant(&new_ring, c.evaluate_mod(prime, &full)?))
        };
        let mut out = self.map_coefficients(&new_ring, eval)?;
        out.params = Vec::new();
        out.constraints = Vec::new();
        let mut violated = Vec::new();
        for c in &self.constraints {
            if c.evaluate_mod(prime, &full)? == 0 {
                violated.push(c.clone());
            }
        }
        out.mode = Mode::Concrete { prime, root, assignment: assignment.clone() };
        out.admissibility = match &self.admissibility {
            Admissibility::Infeasible(v) => Admissibility::Infeasible(v.clone()),
            _ if !violated.is_empty() => Admissibility::Violated(violated),
            _ => Admissibility::Admissible,
        };
        Ok(out)
    }

    /// Whether `assignment` satisfies every constraint modulo `prime`.
    pub fn admits(&self, prime: u64, assignment: &Assignment) -> Result<bool> {
        let mut full = assignment.clone();
        full.insert(ROOT_VAR.to_string(), least_primitive_root(prime)? as i64);
        for c in &self.constraints {
            if c.evaluate_mod(prime, &full)? == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same relations, ignoring the name (used to merge duplicate branches).
    pub fn same_relations(&self, other: &Presentation) -> bool {
        self.dim == other.dim
            && self.ring == other.ring
            && self.brackets == other.brackets
            && self.pmults == other.pmults
            && self.constraints == other.constraints
            && self.mode == other.mode
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: &str = "name heis3\ndim 3\n[b1,b2] = b3\n";

    #[test]
    fn coefficient_conventions() {
        let h = parse(HEIS).unwrap();
        assert_eq!(h.coefficient(1, 2, 3).to_string(), "1");
        assert_eq!(h.coefficient(2, 1, 3).to_string(), "-1");
        assert!(h.coefficient(1, 1, 3).is_zero());
        assert!(h.coefficient(1, 2, 2).is_zero());
    }

    #[test]
    fn specialisation() {
        let src = "name fam\ndim 4\nparams x y z\nrequire x\np*b1 = x*b3 + y*b4\n[b1,b2] = z*b3\n";
        let p = parse(src).unwrap();
        let s = p.specialise_str(&[("z", "x*y")]).unwrap();
        assert_eq!(s.params(), &["x".to_string(), "y".to_string()]);
        assert_eq!(s.coefficient(1, 2, 3).to_string(), "x*y");
        assert!(s.admissibility().is_admissible());

        let dead = p.specialise_str(&[("x", "0")]).unwrap();
        assert!(matches!(dead.admissibility(), Admissibility::Infeasible(_)));

        let one = p.specialise_str(&[("x", "-1")]).unwrap();
        assert!(one.constraints().is_empty());
        assert_eq!(one.pmult_coefficient(1, 3).to_string(), "-1");

        assert_eq!(p.specialise(&[]).unwrap(), p);
        assert!(p.specialise_str(&[("q", "1")]).is_err());
        assert!(p.specialise_str(&[("x", "y"), ("y", "1")]).is_err());
    }

    #[test]
    fn evaluation() {
        let sym1 = parse("name sym1\ndim 3\nparams x\n[b1,b2] = b3\np*b1 = x*b3\n").unwrap();
        let mut a = Assignment::new();
        a.insert("x".into(), 2);
        let c = sym1.evaluate_concrete(5, &a).unwrap();
        assert_eq!(c.pmult_coefficient(1, 3).as_constant().unwrap(), 2.into());
        assert_eq!(c.prime(), Some(5));

        let fam = parse("dim 2\nparams x\nrequire x\np*b1 = x*b2\n").unwrap();
        a.insert("x".into(), 0);
        assert!(matches!(fam.evaluate_concrete(5, &a).unwrap().admissibility(), Admissibility::Violated(_)));
        a.insert("x".into(), -1);
        assert_eq!(fam.evaluate_concrete(5, &a).unwrap().pmult_coefficient(1, 2).as_constant().unwrap(), 4.into());
        assert!(matches!(fam.evaluate_concrete(6, &a), Err(Error::Domain(_))));
        assert!(matches!(fam.evaluate_concrete(5, &Assignment::new()), Err(Error::Context(_))));
    }

    #[test]
    fn reserved_names() {
        assert!(Presentation::new("x", 2, &["p"]).is_err());
        assert!(Presentation::new("x", 2, &["w"]).is_err());
        assert!(Presentation::new("x", 2, &["b1"]).is_err());
        assert!(Presentation::new("x", 0, &[] as &[&str]).is_err());
    }
}
