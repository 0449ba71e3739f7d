//! DLR_reg: n-ary roles with selections, binary projections, regular operators over binary
//! relations and number restrictions.
//!
//! ```text
//! role    ::= topN | NAME | '($' i '/' n ':' concept ')' | '~' role | '(' role '&' role ')'
//! binrel  ::= 'eps' | role '|$' i ',$' j | '(' binrel 'o' binrel ')' | '(' binrel 'u' binrel ')'
//!           | binrel '*'
//! concept ::= top1 | NAME | '~' concept | '(' concept '&' concept ')' | 'exists' binrel '.' concept
//!           | 'exists[$' i ']' role | '(<=' k '[$' i ']' role ')'
//! ```
//!
//! A bare role name where a binary relation is expected stands for `NAME|$1,$2`, and a
//! concept may be wrapped in plain parentheses.

mod semantics;
mod syntax;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::Vocabulary;

pub use semantics::{
    dlr_binrel_extension, dlr_concept_extension, dlr_role_extension, with_explicit_tops, Evaluator,
};
pub use syntax::{parse_dlr_binrel, parse_dlr_concept, parse_dlr_role, print_dlr_binrel, print_dlr_concept, print_dlr_role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DlrError {
    #[error("unknown role `{0}`")]
    UnknownRole(String),
    #[error("unknown concept name `{0}`")]
    UnknownConcept(String),
    #[error("`{name}` has arity {arity}; roles need arity at least 2")]
    NotARole { name: String, arity: usize },
    #[error("`{name}` has arity {arity}; concept names must be unary")]
    NotAConcept { name: String, arity: usize },
    #[error("intersection of roles of arity {0} and {1}")]
    ArityMismatch(usize, usize),
    #[error("index ${index} is out of range for a role of arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("top{0} is outside the supported arities 2..={1}")]
    TopArity(usize, usize),
    #[error("tuple {tuple:?} of `{relation}` is not covered by top{arity}")]
    TopCoverage { relation: String, arity: usize, tuple: Vec<String> },
    #[error("role of arity {arity} over {size} elements is too large to enumerate")]
    TooLarge { arity: usize, size: usize },
}

/// How the built-in relations `topN` are interpreted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopMode {
    /// `topN` is all of `Δ^n`.
    #[default]
    Full,
    /// `topN` is read from the structure's relation `topN`, or taken to be the union of
    /// the declared n-ary relations when the structure has none.
    Explicit,
}

impl FromStr for TopMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" => Ok(TopMode::Full),
            "explicit" => Ok(TopMode::Explicit),
            _ => Err(format!("unknown top mode `{s}` (expected full or explicit)")),
        }
    }
}

/// Name of the structure relation holding `topN` in explicit mode.
pub fn top_relation_name(n: usize) -> String {
    format!("top{n}")
}

/// The arity of `name` if it is of the form `topN`.
pub fn top_arity(name: &str) -> Option<usize> {
    let digits = name.strip_prefix("top")?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

/// Largest role arity available over `vocab`.
pub fn max_arity(vocab: &Vocabulary) -> usize {
    vocab.iter().filter(|(n, _)| top_arity(n).is_none()).map(|(_, a)| a).max().unwrap_or(0).max(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DlrRole {
    Top(usize),
    Atomic(String),
    /// `($i/n:C)`, 1-based.
    Sel(usize, usize, Box<DlrConcept>),
    Not(Box<DlrRole>),
    And(Box<DlrRole>, Box<DlrRole>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DlrBinRel {
    Eps,
    /// `R|$i,$j`, 1-based.
    Proj(DlrRole, usize, usize),
    Comp(Box<DlrBinRel>, Box<DlrBinRel>),
    Union(Box<DlrBinRel>, Box<DlrBinRel>),
    Star(Box<DlrBinRel>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DlrConcept {
    Top,
    Atomic(String),
    Not(Box<DlrConcept>),
    And(Box<DlrConcept>, Box<DlrConcept>),
    Exists(DlrBinRel, Box<DlrConcept>),
    /// `∃[$i]R`
    ExistsProj(usize, DlrRole),
    /// `(≤k[$i]R)`
    AtMost(usize, usize, DlrRole),
}

impl DlrRole {
    pub fn atomic(name: &str) -> Self {
        DlrRole::Atomic(name.to_string())
    }

    pub fn sel(i: usize, n: usize, c: DlrConcept) -> Self {
        DlrRole::Sel(i, n, Box::new(c))
    }

    pub fn not(r: DlrRole) -> Self {
        DlrRole::Not(Box::new(r))
    }

    pub fn and(a: DlrRole, b: DlrRole) -> Self {
        DlrRole::And(Box::new(a), Box::new(b))
    }

    /// Arity, checking names, indices and intersections along the way.
    pub fn arity(&self, vocab: &Vocabulary) -> Result<usize, DlrError> {
        match self {
            DlrRole::Top(n) => {
                let max = max_arity(vocab);
                if *n < 2 || *n > max {
                    return Err(DlrError::TopArity(*n, max));
                }
                Ok(*n)
            }
            DlrRole::Atomic(name) => match vocab.arity(name) {
                None => Err(DlrError::UnknownRole(name.clone())),
                Some(a) if a < 2 => Err(DlrError::NotARole { name: name.clone(), arity: a }),
                Some(a) => Ok(a),
            },
            DlrRole::Sel(i, n, c) => {
                DlrRole::Top(*n).arity(vocab)?;
                check_index(*i, *n)?;
                c.validate(vocab)?;
                Ok(*n)
            }
            DlrRole::Not(r) => r.arity(vocab),
            DlrRole::And(a, b) => {
                let (x, y) = (a.arity(vocab)?, b.arity(vocab)?);
                if x != y {
                    return Err(DlrError::ArityMismatch(x, y));
                }
                Ok(x)
            }
        }
    }
}

fn check_index(index: usize, arity: usize) -> Result<(), DlrError> {
    if index == 0 || index > arity {
        return Err(DlrError::IndexOutOfRange { index, arity });
    }
    Ok(())
}

impl DlrBinRel {
    pub fn proj(r: DlrRole, i: usize, j: usize) -> Self {
        DlrBinRel::Proj(r, i, j)
    }

    pub fn comp(a: DlrBinRel, b: DlrBinRel) -> Self {
        DlrBinRel::Comp(Box::new(a), Box::new(b))
    }

    pub fn union(a: DlrBinRel, b: DlrBinRel) -> Self {
        DlrBinRel::Union(Box::new(a), Box::new(b))
    }

    pub fn star(e: DlrBinRel) -> Self {
        DlrBinRel::Star(Box::new(e))
    }

    pub fn validate(&self, vocab: &Vocabulary) -> Result<(), DlrError> {
        match self {
            DlrBinRel::Eps => Ok(()),
            DlrBinRel::Proj(r, i, j) => {
                let a = r.arity(vocab)?;
                check_index(*i, a)?;
                check_index(*j, a)
            }
            DlrBinRel::Comp(a, b) | DlrBinRel::Union(a, b) => {
                a.validate(vocab)?;
                b.validate(vocab)
            }
            DlrBinRel::Star(e) => e.validate(vocab),
        }
    }
}

impl DlrConcept {
    pub fn atomic(name: &str) -> Self {
        DlrConcept::Atomic(name.to_string())
    }

    pub fn not(c: DlrConcept) -> Self {
        DlrConcept::Not(Box::new(c))
    }

    pub fn and(a: DlrConcept, b: DlrConcept) -> Self {
        DlrConcept::And(Box::new(a), Box::new(b))
    }

    /// `a ⊔ b` as `¬(¬a ⊓ ¬b)`.
    pub fn or(a: DlrConcept, b: DlrConcept) -> Self {
        DlrConcept::not(DlrConcept::and(DlrConcept::not(a), DlrConcept::not(b)))
    }

    pub fn exists(e: DlrBinRel, c: DlrConcept) -> Self {
        DlrConcept::Exists(e, Box::new(c))
    }

    pub fn validate(&self, vocab: &Vocabulary) -> Result<(), DlrError> {
        match self {
            DlrConcept::Top => Ok(()),
            DlrConcept::Atomic(name) => match vocab.arity(name) {
                None => Err(DlrError::UnknownConcept(name.clone())),
                Some(1) => Ok(()),
                Some(a) => Err(DlrError::NotAConcept { name: name.clone(), arity: a }),
            },
            DlrConcept::Not(c) => c.validate(vocab),
            DlrConcept::And(a, b) => {
                a.validate(vocab)?;
                b.validate(vocab)
            }
            DlrConcept::Exists(e, c) => {
                e.validate(vocab)?;
                c.validate(vocab)
            }
            DlrConcept::ExistsProj(i, r) | DlrConcept::AtMost(_, i, r) => {
                check_index(*i, r.arity(vocab)?)
            }
        }
    }

    /// True if a Kleene star occurs anywhere, including inside selections.
    pub fn has_star(&self) -> bool {
        self.any(&|c| matches!(c, Node::Rel(DlrBinRel::Star(_))))
    }

    /// True if a number restriction occurs anywhere.
    pub fn has_at_most(&self) -> bool {
        self.any(&|c| matches!(c, Node::Concept(DlrConcept::AtMost(..))))
    }

    /// True if any composition or union occurs.
    pub fn has_comp_or_union(&self) -> bool {
        self.any(&|c| matches!(c, Node::Rel(DlrBinRel::Comp(..) | DlrBinRel::Union(..))))
    }

    /// Membership in DLR_reg without star and number restrictions.
    pub fn is_dlr0(&self) -> bool {
        !self.has_star() && !self.has_at_most()
    }

    fn any(&self, p: &dyn Fn(Node<'_>) -> bool) -> bool {
        fn role(r: &DlrRole, p: &dyn Fn(Node<'_>) -> bool) -> bool {
            match r {
                    DlrRole::Top(_) | DlrRole::Atomic(_) => false,
                    DlrRole::Sel(_, _, c) => concept(c, p),
                    DlrRole::Not(r) => role(r, p),
                    DlrRole::And(a, b) => role(a, p) || role(b, p),
                }
        }
        fn rel(e: &DlrBinRel, p: &dyn Fn(Node<'_>) -> bool) -> bool {
            p(Node::Rel(e))
                || match e {
                    DlrBinRel::Eps => false,
                    DlrBinRel::Proj(r, ..) => role(r, p),
                    DlrBinRel::Comp(a, b) | DlrBinRel::Union(a, b) => rel(a, p) || rel(b, p),
                    DlrBinRel::Star(e) => rel(e, p),
                }
        }
        fn concept(c: &DlrConcept, p: &dyn Fn(Node<'_>) -> bool) -> bool {
            p(Node::Concept(c))
                || match c {
                    DlrConcept::Top | DlrConcept::Atomic(_) => false,
                    DlrConcept::Not(c) => concept(c, p),
                    DlrConcept::And(a, b) => concept(a, p) || concept(b, p),
                    DlrConcept::Exists(e, c) => rel(e, p) || concept(c, p),
                    DlrConcept::ExistsProj(_, r) | DlrConcept::AtMost(_, _, r) => role(r, p),
                }
        }
        concept(self, p)
    }

    pub fn size(&self) -> usize {
        fn role(r: &DlrRole) -> usize {
            match r {
                DlrRole::Top(_) | DlrRole::Atomic(_) => 1,
                DlrRole::Sel(_, _, c) => 1 + c.size(),
                DlrRole::Not(r) => 1 + role(r),
                DlrRole::And(a, b) => 1 + role(a) + role(b),
            }
        }
        fn rel(e: &DlrBinRel) -> usize {
            match e {
                DlrBinRel::Eps => 1,
                DlrBinRel::Proj(r, ..) => 1 + role(r),
                DlrBinRel::Comp(a, b) | DlrBinRel::Union(a, b) => 1 + rel(a) + rel(b),
                DlrBinRel::Star(e) => 1 + rel(e),
            }
        }
        match self {
            DlrConcept::Top | DlrConcept::Atomic(_) => 1,
            DlrConcept::Not(c) => 1 + c.size(),
            DlrConcept::And(a, b) => 1 + a.size() + b.size(),
            DlrConcept::Exists(e, c) => 1 + rel(e) + c.size(),
            DlrConcept::ExistsProj(_, r) | DlrConcept::AtMost(_, _, r) => 1 + role(r),
        }
    }
}

#[derive(Clone, Copy)]
enum Node<'a> {
    Rel(&'a DlrBinRel),
    Concept(&'a DlrConcept),
}

impl fmt::Display for DlrConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_dlr_concept(self))
    }
}

impl fmt::Display for DlrRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_dlr_role(self))
    }
}

impl fmt::Display for DlrBinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_dlr_binrel(self))
    }
}
