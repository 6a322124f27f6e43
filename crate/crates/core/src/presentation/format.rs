//! Line-oriented presentation files.
//!
//! ```text
//! name <string>
//! dim <n>
//! params <ident> <ident> ...
//! require <poly>
//! p*b<i> = <poly>*b<k> + ...
//! [b<j>,b<i>] = <poly>*b<k> + ...
//! ```
//!
//! `#` starts a comment. Generators may be written `b<i>` or `l<i>`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Mode, Presentation};
use crate::error::{Error, Result};
use crate::symring::{parse_poly, Polynomial, Ring};

fn fmt_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format { line, msg: msg.into() }
}

fn parse_generator(s: &str, dim: usize, line: usize) -> Result<usize> {
    let s = s.trim();
    let digits = s
        .strip_prefix('b')
        .or_else(|| s.strip_prefix('l'))
        .ok_or_else(|| fmt_err(line, format!("expected a generator name, found `{s}`")))?;
    let i: usize = digits.parse().map_err(|_| fmt_err(line, format!("bad generator name `{s}`")))?;
    if i == 0 || i > dim {
        return Err(fmt_err(line, format!("generator `{s}` outside b1..b{dim}")));
    }
    Ok(i)
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum Lhs {
    PMult(usize),
    Bracket(usize, usize),
}

/// Splits a relation right-hand side into `(k, coefficient of b_k)`.
fn parse_rhs(p: &Presentation, rhs: &str, line: usize) -> Result<Vec<(usize, Polynomial)>> {
    let n = p.dim();
    let base = p.ring().vars().to_vec();
    let mut vars = base.clone();
    for prefix in ["b", "l"] {
        for k in 1..=n {
            vars.push(format!("{prefix}{k}"));
        }
    }
    let ext = Ring::new(vars).map_err(|e| fmt_err(line, e.to_string()))?;
    let poly = parse_poly(&ext, rhs).map_err(|e| fmt_err(line, e.to_string()))?;
    let nb = base.len();
    let mut out: Vec<(usize, Polynomial)> = Vec::new();
    for (m, c) in poly.terms() {
        let e = m.exps();
        let gens: Vec<(usize, u32)> =
            (nb..e.len()).filter(|&i| e[i] > 0).map(|i| ((i - nb) % n + 1, e[i])).collect();
        if gens.len() != 1 || gens[0].1 != 1 {
            return Err(fmt_err(line, "each term must contain exactly one generator to the first power"));
        }
        let k = gens[0].0;
        let coeff = Polynomial::from_terms(p.ring(), [(e[..nb].to_vec(), c.clone())]);
        if !coeff.is_p_free() {
            return Err(fmt_err(line, "coefficients may not involve p"));
        }
        match out.iter_mut().find(|(kk, _)| *kk == k) {
            Some((_, acc)) => *acc = &*acc + &coeff,
            None => out.push((k, coeff)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    Ok(out)
}

fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn split_head(content: &str) -> (&str, &str) {
    match content.split_once(char::is_whitespace) {
        Some((h, r)) => (h, r.trim()),
        None => (content, ""),
    }
}

/// Parses a presentation file. Header lines (`name`, `dim`, `params`) may
/// appear in any order; relations and `require` lines may refer to them
/// regardless of position.
pub fn parse(text: &str) -> Result<Presentation> {
    let mut name: Option<String> = None;
    let mut params: Vec<String> = Vec::new();
    let mut dim: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        let (head, rest) = split_head(content);
        match head {
            "name" => {
                if name.is_some() {
                    return Err(fmt_err(line, "duplicate `name`"));
                }
                name = Some(rest.to_string());
            }
            "params" => params.extend(rest.split_whitespace().map(str::to_string)),
            "dim" => {
                if dim.is_some() {
                    return Err(fmt_err(line, "duplicate `dim`"));
                }
                let n: usize = rest.parse().map_err(|_| fmt_err(line, format!("bad dimension `{rest}`")))?;
                dim = Some((n, line));
            }
            _ => {}
        }
    }
    let (n, dim_line) = dim.ok_or_else(|| fmt_err(text.lines().count().max(1), "missing `dim` line"))?;
    let mut pres = Presentation::new(name.unwrap_or_else(|| "unnamed".into()), n, &params)
        .map_err(|e| fmt_err(dim_line, e.to_string()))?;
    let p = &mut pres;
    let mut seen: BTreeSet<Lhs> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let (head, rest) = split_head(content);
        match head {
            "name" | "params" | "dim" => {}
            "require" => {
                let c = parse_poly(p.ring(), rest).map_err(|e| fmt_err(line, e.to_string()))?;
                if c.is_zero() {
                    return Err(fmt_err(line, "`require 0` can never hold"));
                }
                p.add_constraint(&c).map_err(|e| fmt_err(line, e.to_string()))?;
            }
            _ => {
                let (lhs, rhs) =
                    content.split_once('=').ok_or_else(|| fmt_err(line, format!("unrecognised line `{content}`")))?;
                let lhs = lhs.trim();
                let n = p.dim();
                let key = if let Some(inner) = lhs.strip_prefix('[') {
                    let inner = inner
                        .strip_suffix(']')
                        .ok_or_else(|| fmt_err(line, "unterminated bracket"))?;
                    let (a, b) = inner.split_once(',').ok_or_else(|| fmt_err(line, "expected `[b<j>,b<i>]`"))?;
                    let j = parse_generator(a, n, line)?;
                    let i = parse_generator(b, n, line)?;
                    if i == j {
                        return Err(fmt_err(line, "a generator bracketed with itself is zero"));
                    }
                    Lhs::Bracket(j, i)
                } else if let Some(g) = lhs.strip_prefix('p') {
                    let g = g.trim_start().strip_prefix('*').unwrap_or(g);
                    Lhs::PMult(parse_generator(g, n, line)?)
                } else {
                    return Err(fmt_err(line, format!("unrecognised left-hand side `{lhs}`")));
                };
                let canon = match key {
                    Lhs::Bracket(a, b) => Lhs::Bracket(a.min(b), a.max(b)),
                    Lhs::PMult(i) => Lhs::PMult(i),
                };
                if !seen.insert(canon) {
                    return Err(fmt_err(line, format!("duplicate relation for `{lhs}`")));
                }
                let terms = parse_rhs(p, rhs.trim(), line)?;
                for (k, c) in terms {
                    match key {
                        Lhs::Bracket(j, i) => {
                            if k <= i.max(j) {
                                return Err(fmt_err(
                                    line,
                                    format!("b{k} outside the triangular range (k must exceed {})", i.max(j)),
                                ));
                            }
                            p.set_bracket(j, i, k, &c).map_err(|e| fmt_err(line, e.to_string()))?;
                        }
                        Lhs::PMult(i) => {
                            if k <= i {
                                return Err(fmt_err(
                                    line,
                                    format!("b{k} outside the triangular range (k must exceed {i})"),
                                ));
                            }
                            p.set_pmult(i, k, &c).map_err(|e| fmt_err(line, e.to_string()))?;
                        }
                    }
                }
            }
        }
    }
    Ok(pres)
}

fn write_rhs(f: &mut fmt::Formatter<'_>, terms: &[(usize, &Polynomial)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (idx, (k, c)) in terms.iter().enumerate() {
        let (neg, body) = if c.num_terms() == 1 {
            let neg = c.leading_coeff().is_some_and(BigInt::is_negative);
            let abs = if neg { -*c } else { (*c).clone() };
            if abs.is_one() {
                (neg, format!("b{k}"))
            } else {
                (neg, format!("{abs}*b{k}"))
            }
        } else {
            (false, format!("({c})*b{k}"))
        };
        match (idx, neg) {
            (0, true) => write!(f, "-{body}")?,
            (0, false) => f.write_str(&body)?,
            (_, true) => write!(f, " - {body}")?,
            (_, false) => write!(f, " + {body}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name {}", self.name)?;
        if let Mode::Concrete { prime, root, assignment } = &self.mode {
            let a: Vec<String> = assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(f, "# concrete at p={prime} (w={root}) {}", a.join(","))?;
        }
        writeln!(f, "dim {}", self.dim)?;
        if !self.params.is_empty() {
            writeln!(f, "params {}", self.params.join(" "))?;
        }
        for c in &self.constraints {
            writeln!(f, "require {c}")?;
        }
        let n = self.dim;
        for i in 1..=n {
            let terms: Vec<(usize, &Polynomial)> =
                self.pmults.range((i, 0)..(i + 1, 0)).map(|(&(_, k), c)| (k, c)).collect();
            if !terms.is_empty() {
                write!(f, "p*b{i} = ")?;
                write_rhs(f, &terms)?;
                writeln!(f)?;
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let terms: Vec<(usize, &Polynomial)> =
                    self.brackets.range((i, j, 0)..(i, j + 1, 0)).map(|(&(_, _, k), c)| (k, c)).collect();
                if !terms.is_empty() {
                    write!(f, "[b{i},b{j}] = ")?;
                    write_rhs(f, &terms)?;
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_and_cyclic() {
        let h = parse("dim 3 \n[b1,b2] = b3").unwrap();
        assert_eq!(h.brackets().count(), 1);
        assert_eq!(h.coefficient(1, 2, 3).to_string(), "1");
        assert_eq!(h.pmults().count(), 0);
        let c = parse("dim 2\npb1 = b2").unwrap();
        assert_eq!(c.pmult_coefficient(1, 2).to_string(), "1");
    }

    #[test]
    fn reversed_bracket_is_folded() {
        let p = parse("dim 3\n[l2,l1] = l3").unwrap();
        assert_eq!(p.coefficient(1, 2, 3).to_string(), "-1");
    }

    #[test]
    fn format_errors_name_the_line() {
        let e = parse("dim 3\n\n[b1,b3] = b2\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 3, .. }), "{e:?}");
        let e = parse("dim 3\np*b2 = b1\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 2, .. }));
        let e = parse("dim 3\n[b1,b2] = q*b3\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 2, .. }));
        let e = parse("dim 3\n[b1,b2] = b3\n[b2,b1] = b3\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 3, .. }));
        let e = parse("dim 3\n[b1,b2] = b3*b3\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 2, .. }));
        let e = parse("params p\ndim 3\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 2, .. }));
        let e = parse("dim 3\n[b1,b2] = b3\nfoo\n").unwrap_err();
        assert!(matches!(e, Error::Format { line: 3, .. }));
        assert!(parse("# nothing\n").is_err());
    }

    #[test]
    fn printing_round_trips() {
        let src = "name t\ndim 4\nparams x y\nrequire x*y-1\np*b1 = (x+1)*b3 - 2*y*b4\n[b1,b2] = -b3 + w*b4\n";
        let p = parse(src).unwrap();
        let printed = p.to_string();
        assert_eq!(printed, src);
        assert_eq!(parse(&printed).unwrap(), p);
    }
}
