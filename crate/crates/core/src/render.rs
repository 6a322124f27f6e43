//! Text and JSON rendering shared by the library and the command line.

use std::fmt::{self, Display};

use serde::Serializer;

use crate::smith::{excluded_primes, DivisorList, SchurResult};

/// `serialize_with` helper that writes a value through its `Display` impl.
pub fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Like [`ser_display`] for each element of a slice.
pub fn ser_display_seq<T: Display, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// One-line text form of a result, e.g. `norm := [ p, p ], pseudounits := [ x ]`.
/// Concrete results print only the norm.
pub struct RenderResult<'a>(pub &'a SchurResult);

impl fmt::Display for RenderResult<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.0;
        write!(f, "norm := {}", r.norm)?;
        if let DivisorList::Symbolic(_) = r.norm {
            let units: Vec<String> = r.pseudo_units.iter().map(ToString::to_string).collect();
            if units.is_empty() {
                f.write_str(", pseudounits := [ ]")?;
            } else {
                write!(f, ", pseudounits := [ {} ]", units.join(", "))?;
            }
            let excluded = excluded_primes(r);
            if !excluded.is_empty() {
                let ps: Vec<String> = excluded.iter().map(ToString::to_string).collect();
                write!(f, ", excluded primes := [ {} ]", ps.join(", "))?;
            }
        }
        if let Some(cap) = r.budget_exceeded {
            write!(f, ", budget exceeded := {cap}")?;
        }
        Ok(())
    }
}
