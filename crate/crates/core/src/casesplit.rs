//! Case distinctions: factor the recorded pseudo-units, specialise on the
//! factors that can be solved for a parameter, and recurse.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::presentation::{Admissibility, Presentation, Substitution};
use crate::render::{ser_display_seq, RenderResult};
use crate::smith::{mult, Budget, PivotStrategy, SchurResult};
use crate::symring::{factor_best_effort, Polynomial, ROOT_VAR};

pub const DEFAULT_MAX_DEPTH: usize = 5;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Candidates {
    pub branches: Vec<Substitution>,
    pub unresolved: Vec<Polynomial>,
    /// Factors that a constraint already keeps nonzero.
    pub discarded: Vec<Polynomial>,
}

fn same_up_to_sign(a: &Polynomial, b: &Polynomial) -> bool {
    a == b || *a == -b
}

/// Splits the zero locus of a ledger entry into substitutions. A factor
/// that matches a constraint (or a factor of one) up to sign is dropped;
/// a factor of degree one in a parameter with coefficient `+-1` is solved
/// for that parameter (the last such parameter in declaration order);
/// everything else is unresolved.
pub fn branch_candidates(u: &Polynomial, constraints: &[Polynomial], params: &[String]) -> Result<Candidates> {
    let mut out = Candidates::default();
    if u.is_constant() {
        return Ok(out);
    }
    let mut known: Vec<Polynomial> = constraints.to_vec();
    for c in constraints {
        if !c.is_constant() {
            known.extend(factor_best_effort(c)?.factors.into_iter().map(|(f, _)| f));
        }
    }
    let ring = u.ring();
    let root = ring.index_of(ROOT_VAR);
    for (g, _) in factor_best_effort(u)?.factors {
        if root.is_some_and(|w| g == Polynomial::var_at(ring, w)) {
            continue;
        }
        if known.iter().any(|k| same_up_to_sign(k, &g)) {
            out.discarded.push(g);
            continue;
        }
        let solvable = params.iter().rev().find_map(|name| {
            let idx = ring.index_of(name)?;
            if g.degree_in(idx) != 1 {
                return None;
            }
            let lc = g.lc_in(idx).as_constant()?;
            let one = num_bigint::BigInt::from(1);
            if lc != one && lc != -one.clone() {
                return None;
            }
            let v = Polynomial::var_at(ring, idx);
            // g = lc*v + rest  =>  v = -lc*rest
            let rest = &g - &v.scale(&lc);
            Some(Substitution { var: name.clone(), value: rest.scale(&-lc) })
        });
        match solvable {
            Some(s) => {
                if !out.branches.contains(&s) {
                    out.branches.push(s);
                }
            }
            None => out.unresolved.push(g),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Computed(SchurResult),
    /// The substitutions make these constraints identically zero.
    Infeasible(Vec<Polynomial>),
}

#[derive(Debug, Clone)]
pub struct CaseTree {
    /// Substitutions from the root, in order; the last one labels the node.
    pub chain: Vec<Substitution>,
    pub presentation: Presentation,
    pub outcome: Outcome,
    pub unresolved: Vec<Polynomial>,
    /// Branches that were not explored because of the depth limit.
    pub truncated: Vec<Substitution>,
    pub children: Vec<CaseTree>,
}

#[derive(Debug, Clone, Copy)]
pub struct SplitOptions {
    pub budget: Budget,
    pub strategy: PivotStrategy,
    pub max_depth: usize,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions { budget: Budget::default(), strategy: PivotStrategy::default(), max_depth: DEFAULT_MAX_DEPTH }
    }
}

/// Builds the case tree rooted at `pres`.
pub fn split(pres: &Presentation, opts: &SplitOptions) -> Result<CaseTree> {
    build(pres.clone(), Vec::new(), opts)
}

fn build(pres: Presentation, chain: Vec<Substitution>, opts: &SplitOptions) -> Result<CaseTree> {
    if let Admissibility::Infeasible(dead) = pres.admissibility() {
        let dead = dead.clone();
        return Ok(CaseTree {
            chain,
            presentation: pres,
            outcome: Outcome::Infeasible(dead),
            unresolved: Vec::new(),
            truncated: Vec::new(),
            children: Vec::new(),
        });
    }
    let result = mult(&pres, &opts.budget, opts.strategy)?;
    let mut branches: Vec<Substitution> = Vec::new();
    let mut unresolved: Vec<Polynomial> = Vec::new();
    if result.budget_exceeded.is_none() {
        for u in &result.pseudo_units {
            let c = branch_candidates(u, pres.constraints(), pres.params())?;
            for b in c.branches {
                if !branches.contains(&b) {
                    branches.push(b);
                }
            }
            for g in c.unresolved {
                if !unresolved.contains(&g) {
                    unresolved.push(g);
                }
            }
        }
    }
    let (explore, truncated) =
        if chain.len() < opts.max_depth { (branches, Vec::new()) } else { (Vec::new(), branches) };

    let specialised: Vec<(Substitution, Presentation)> = explore
        .into_iter()
        .map(|s| {
            let p = pres.specialise(std::slice::from_ref(&s))?;
            Ok((s, p))
        })
        .collect::<Result<_>>()?;
    let mut kept: Vec<(Substitution, Presentation)> = Vec::new();
    for (s, p) in specialised {
        if !kept.iter().any(|(_, q)| q.same_relations(&p)) {
            kept.push((s, p));
        }
    }
    let children = kept
        .into_par_iter()
        .map(|(s, p)| {
            let mut c = chain.clone();
            c.push(s);
            build(p, c, opts)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CaseTree { chain, presentation: pres, outcome: Outcome::Computed(result), unresolved, truncated, children })
}

impl CaseTree {
    pub fn label(&self) -> Option<&Substitution> {
        self.chain.last()
    }

    pub fn result(&self) -> Option<&SchurResult> {
        match &self.outcome {
            Outcome::Computed(r) => Some(r),
            Outcome::Infeasible(_) => None,
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(CaseTree::node_count).sum::<usize>()
    }

    pub fn nodes(&self) -> Vec<&CaseTree> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let label = self.label().map_or_else(|| "root".to_string(), ToString::to_string);
        match &self.outcome {
            Outcome::Infeasible(_) => writeln!(f, "{pad}{label}: N/A")?,
            Outcome::Computed(r) => writeln!(f, "{pad}{label}: {}", RenderResult(r))?,
        }
        for c in &self.children {
            c.write_indented(f, depth + 1)?;
        }
        for u in &self.unresolved {
            writeln!(f, "{pad}  UNRESOLVED: {u}")?;
        }
        for s in &self.truncated {
            writeln!(f, "{pad}  DEPTH LIMIT: {s}")?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(JsonNode::from(self)).expect("tree serializes")
    }
}

impl fmt::Display for CaseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

#[derive(Serialize)]
struct JsonNode<'a> {
    substitution: Option<&'a Substitution>,
    chain: &'a [Substitution],
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a SchurResult>,
    #[serde(serialize_with = "ser_display_seq")]
    unresolved: &'a [Polynomial],
    truncated: &'a [Substitution],
    children: Vec<JsonNode<'a>>,
}

impl<'a> From<&'a CaseTree> for JsonNode<'a> {
    fn from(t: &'a CaseTree) -> Self {
        JsonNode {
            substitution: t.label(),
            chain: &t.chain,
            status: match t.outcome {
                Outcome::Computed(_) => "computed",
                Outcome::Infeasible(_) => "n/a",
            },
            result: t.result(),
            unresolved: &t.unresolved,
            truncated: &t.truncated,
            children: t.children.iter().map(JsonNode::from).collect(),
        }
    }
}
