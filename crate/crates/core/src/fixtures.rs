//! Presentations shipped with the crate.

use crate::error::Result;
use crate::presentation::{parse, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// No parameters; one of the rings of order `p`, `p^2` or `p^3`.
    SmallOrder,
    Symbolic,
    /// Deliberately inconsistent.
    Broken,
    /// Parses and evaluates, but the symbolic run is expected to hit the budget.
    Stress,
}

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: Kind,
    pub source: &'static str,
}

impl Fixture {
    pub fn presentation(&self) -> Result<Presentation> {
        parse(self.source)
    }
}

macro_rules! fixture {
    ($name:literal, $kind:expr) => {
        Fixture { name: $name, kind: $kind, source: include_str!(concat!("../fixtures/", $name, ".lp")) }
    };
}

pub const ALL: &[Fixture] = &[
    fixture!("o1_cyclic", Kind::SmallOrder),
    fixture!("o2_cyclic", Kind::SmallOrder),
    fixture!("o2_elementary", Kind::SmallOrder),
    fixture!("o3_cyclic", Kind::SmallOrder),
    fixture!("o3_mixed", Kind::SmallOrder),
    fixture!("o3_elementary", Kind::SmallOrder),
    fixture!("heis3", Kind::SmallOrder),
    fixture!("o3_exp2", Kind::SmallOrder),
    fixture!("sym1", Kind::Symbolic),
    fixture!("sym2", Kind::Symbolic),
    fixture!("symquad", Kind::Symbolic),
    fixture!("symw", Kind::Symbolic),
    fixture!("symroot", Kind::Symbolic),
    fixture!("sym3", Kind::Symbolic),
    fixture!("bad1", Kind::Broken),
    fixture!("dim7stress", Kind::Stress),
];

pub fn by_name(name: &str) -> Option<&'static Fixture> {
    ALL.iter().find(|f| f.name == name)
}

pub fn of_kind(kind: Kind) -> impl Iterator<Item = &'static Fixture> {
    ALL.iter().filter(move |f| f.kind == kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse_with_matching_names() {
        for f in ALL {
            let p = f.presentation().unwrap();
            assert_eq!(p.name, f.name);
            assert_eq!(p.params().is_empty(), matches!(f.kind, Kind::SmallOrder | Kind::Broken), "{}", f.name);
        }
        assert_eq!(of_kind(Kind::SmallOrder).count(), 8);
        assert!(by_name("sym1").is_some());
    }
}
