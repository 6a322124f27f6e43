//! The basis `t_ij (i<j), s_i` and the relation matrix whose elementary
//! divisors give the Schur multiplier.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{Assignment, Presentation};
use crate::symring::{PElement, Polynomial, Ring, PRIME_VAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisLabel {
    T(usize, usize),
    S(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::T(i, j) => write!(f, "t[{i},{j}]"),
            BasisLabel::S(i) => write!(f, "s[{i}]"),
        }
    }
}

/// Column order: `t_ij` for `i < j` lexicographically, then `s_1..s_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisIndex {
    n: usize,
    order: Vec<BasisLabel>,
}

impl BasisIndex {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("basis needs n >= 1".into()));
        }
        let mut order = Vec::with_capacity(n * (n + 1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                order.push(BasisLabel::T(i, j));
            }
        }
        order.extend((1..=n).map(BasisLabel::S));
        Ok(BasisIndex { n, order })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.order
    }

    /// Column of `t_ij` with its sign; `None` for `t_ii`.
    pub fn t(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        let (a, b, sign) = match i.cmp(&j) {
            std::cmp::Ordering::Equal => return None,
            std::cmp::Ordering::Less => (i, j, 1),
            std::cmp::Ordering::Greater => (j, i, -1),
        };
        // pairs (x, y) with x < a come first: sum_{x<a} (n - x)
        let before: usize = (1..a).map(|x| self.n - x).sum();
        Some((before + (b - a - 1), sign))
    }

    pub fn s(&self, i: usize) -> usize {
        self.n * (self.n - 1) / 2 + i - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowLabel {
    U(usize),
    V(usize, usize),
    W(usize, usize, usize),
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::U(i) => write!(f, "u[{i}]"),
            RowLabel::V(i, j) => write!(f, "v[{i},{j}]"),
            RowLabel::W(i, j, h) => write!(f, "w[{i},{j},{h}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub label: RowLabel,
    pub entries: Vec<Polynomial>,
}

/// Entries are polynomials in `w`, the parameters and `p`; as elements of
/// Q[p] they are recovered with [`RelationMatrix::entry_pelement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    pub basis: BasisIndex,
    pub ring: Arc<Ring>,
    pub rows: Vec<Row>,
}

struct RowBuilder<'a> {
    basis: &'a BasisIndex,
    entries: Vec<Polynomial>,
}

impl RowBuilder<'_> {
    fn add_t(&mut self, i: usize, j: usize, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        if let Some((col, sign)) = self.basis.t(i, j) {
            let e = &mut self.entries[col];
            *e = if sign > 0 { &*e + c } else { &*e - c };
        }
    }

    fn add_s(&mut self, i: usize, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let col = self.basis.s(i);
        self.entries[col] = &self.entries[col] + c;
    }
}

/// Rows `u_i`, then `v_ij` for ordered pairs `i != j`, then `w_ijh` for `i<j<h`.
pub fn build_matrix(pres: &Presentation) -> Result<RelationMatrix> {
    let n = pres.dim();
    let basis = BasisIndex::new(n)?;
    let ring = pres.ring().clone();
    let p = Polynomial::var(&ring, PRIME_VAR)?;
    let zero_row = vec![Polynomial::zero(&ring); basis.len()];
    let mut rows = Vec::with_capacity(n + n * (n - 1) + n * (n - 1) * n.saturating_sub(2) / 6);
    let new_row = || RowBuilder { basis: &basis, entries: zero_row.clone() };

    for i in 1..=n {
        let mut r = new_row();
        for k in 1..=n {
            r.add_t(k, i, &pres.pmult_coefficient(i, k));
        }
        rows.push(Row { label: RowLabel::U(i), entries: r.entries });
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let mut r = new_row();
            r.add_t(i, j, &p);
            for k in 1..=n {
                r.add_s(k, &pres.coefficient(i, j, k));
                r.add_t(k, j, &-&pres.pmult_coefficient(i, k));
            }
            rows.push(Row { label: RowLabel::V(i, j), entries: r.entries });
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for h in j + 1..=n {
                let mut r = new_row();
                for k in 1..=n {
                    r.add_t(i, k, &pres.coefficient(j, h, k));
                    r.add_t(h, k, &pres.coefficient(i, j, k));
                    r.add_t(j, k, &pres.coefficient(h, i, k));
                }
                rows.push(Row { label: RowLabel::W(i, j, h), entries: r.entries });
            }
        }
    }
    Ok(RelationMatrix { basis, ring, rows })
}

impl RelationMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.rows[r].entries[c]
    }

    pub fn entry_pelement(&self, r: usize, c: usize) -> PElement {
        PElement::from_polynomial(self.entry(r, c))
    }

    pub fn row(&self, label: RowLabel) -> Option<&Row> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// The integer matrix obtained by setting `p` to `prime`. Any remaining
    /// indeterminates must be covered by `assignment`.
    pub fn lower(&self, prime: u64, assignment: &Assignment) -> Result<Vec<Vec<BigInt>>> {
        self.rows
            .iter()
            .map(|r| r.entries.iter().map(|e| e.evaluate_int(prime, assignment)).collect())
            .collect()
    }

    /// One line per row: `label : coeff*basis + ...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&format!("{} : {}\n", r.label, render_row(&self.basis, &r.entries)));
        }
        out
    }
}

fn render_row(basis: &BasisIndex, entries: &[Polynomial]) -> String {
    let mut s = String::new();
    for (label, c) in basis.labels().iter().zip(entries) {
        if c.is_zero() {
            continue;
        }
        let neg = c.num_terms() == 1 && c.leading_coeff().is_some_and(BigInt::is_negative);
        let abs = if neg { -c } else { c.clone() };
        let body = if abs.is_one() {
            label.to_string()
        } else if abs.num_terms() == 1 {
            format!("{abs}*{label}")
        } else {
            format!("({abs})*{label}")
        };
        match (s.is_empty(), neg) {
            (true, true) => s.push_str(&format!("-{body}")),
            (true, false) => s.push_str(&body),
            (false, true) => s.push_str(&format!(" - {body}")),
            (false, false) => s.push_str(&format!(" + {body}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse;

    #[test]
    fn basis_order() {
        let b = BasisIndex::new(3).unwrap();
        let names: Vec<String> = b.labels().iter().map(ToString::to_string).collect();
        assert_eq!(names, ["t[1,2]", "t[1,3]", "t[2,3]", "s[1]", "s[2]", "s[3]"]);
        assert_eq!(BasisIndex::new(1).unwrap().len(), 1);
        assert_eq!(BasisIndex::new(6).unwrap().len(), 21);
        assert!(BasisIndex::new(0).is_err());
        assert_eq!(b.t(2, 3), Some((2, 1)));
        assert_eq!(b.t(3, 1), Some((1, -1)));
        assert_eq!(b.t(2, 2), None);
        for n in 1..8 {
            let b = BasisIndex::new(n).unwrap();
            for (col, l) in b.labels().iter().enumerate() {
                match *l {
                    BasisLabel::T(i, j) => assert_eq!(b.t(i, j), Some((col, 1))),
                    BasisLabel::S(i) => assert_eq!(b.s(i), col),
                }
            }
        }
    }

    #[test]
    fn heisenberg_rows() {
        let m = build_matrix(&parse("dim 3\n[b1,b2] = b3").unwrap()).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (3 + 6 + 1, 6));
        let dump = m.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines[0], "u[1] : 0");
        assert_eq!(lines[3], "v[1,2] : p*t[1,2] + s[3]");
        assert_eq!(lines[4], "v[1,3] : p*t[1,3]");
        assert_eq!(lines[5], "v[2,1] : -p*t[1,2] - s[3]");
        assert_eq!(lines[7], "v[3,1] : -p*t[1,3]");
        assert_eq!(lines[9], "w[1,2,3] : 0");
    }

    #[test]
    fn cyclic_rows() {
        let m = build_matrix(&parse("dim 2\npb1 = b2").unwrap()).unwrap();
        let dump = m.dump();
        assert_eq!(dump, "u[1] : -t[1,2]\nu[2] : 0\nv[1,2] : p*t[1,2]\nv[2,1] : -p*t[1,2]\n");
    }

    #[test]
    fn symbolic_rows_and_lowering() {
        let pres = parse("dim 3\nparams x\n[b1,b2] = b3\npb1 = x*b3").unwrap();
        let m = build_matrix(&pres).unwrap();
        assert_eq!(m.row(RowLabel::U(1)).map(|r| render_row(&m.basis, &r.entries)).unwrap(), "-x*t[1,3]");
        assert_eq!(
            render_row(&m.basis, &m.row(RowLabel::V(1, 2)).unwrap().entries),
            "p*t[1,2] + x*t[2,3] + s[3]"
        );
        let a: Assignment = [("x".to_string(), 2), ("w".to_string(), 2)].into_iter().collect();
        let low = m.lower(5, &a).unwrap();
        assert_eq!(low[0][1], BigInt::from(-2));
        assert_eq!(low[3][0], BigInt::from(5));
    }

    #[test]
    fn row_counts() {
        for n in 1..=7usize {
            let m = build_matrix(&Presentation::new("z", n, &[] as &[&str]).unwrap()).unwrap();
            assert_eq!(m.nrows(), n + n * (n - 1) + n * (n - 1) * n.saturating_sub(2) / 6);
            assert_eq!(m.ncols(), n * (n + 1) / 2);
        }
    }
}
