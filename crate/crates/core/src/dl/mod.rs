//! DL_FU1: concepts over n-ary roles with role negation, intersection, the identity role
//! and surjective reindexing.
//!
//! ```text
//! concept ::= NAME | top | bottom | '~' concept | '(' concept '&' concept ')'
//!           | 'exists' role '.' '(' concept (',' concept)* ')'
//! role    ::= NAME | 'eps' | '~' role | '(' role '&' role ')' | 'perm[' INT (',' INT)* ']' role
//! ```

mod semantics;
mod syntax;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::Vocabulary;

pub(crate) use semantics::all_tuples;
pub use semantics::{concept_extension, role_extension};
pub use syntax::{parse_concept, parse_role, print_concept, print_role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DlError {
    #[error("unknown role `{0}`")]
    UnknownRole(String),
    #[error("unknown concept name `{0}`")]
    UnknownConcept(String),
    #[error("`{name}` has arity {arity}; roles need arity at least 2")]
    NotARole { name: String, arity: usize },
    #[error("`{name}` has arity {arity}; concept names must be unary")]
    NotAConcept { name: String, arity: usize },
    #[error("role of arity {arity} takes {} concept arguments, found {found}", arity - 1)]
    ArgumentCount { arity: usize, found: usize },
    #[error("invalid surjection: {0}")]
    Surjection(String),
    #[error("complement of an arity-{arity} role over {size} elements is too large to enumerate")]
    TooLarge { arity: usize, size: usize },
}

/// A surjection from `[k]` onto `[m]` with `2 <= m <= k`, stored 1-based as the list
/// `sigma(1), ..., sigma(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Surjection {
    map: Vec<usize>,
}

impl Surjection {
    pub fn new(map: Vec<usize>) -> Result<Self, DlError> {
        let k = map.len();
        let m = map.iter().copied().max().unwrap_or(0);
        if k < 2 {
            return Err(DlError::Surjection(format!("source arity {k} is below 2")));
        }
        if m < 2 {
            return Err(DlError::Surjection(format!("target arity {m} is below 2")));
        }
        if map.contains(&0) {
            return Err(DlError::Surjection("values are 1-based".into()));
        }
        if let Some(missed) = (1..=m).find(|v| !map.contains(v)) {
            return Err(DlError::Surjection(format!("{missed} is not hit")));
        }
        Ok(Surjection { map })
    }

    pub fn source(&self) -> usize {
        self.map.len()
    }

    pub fn target(&self) -> usize {
        self.map.iter().copied().max().unwrap_or(0)
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn get(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    pub fn is_permutation(&self) -> bool {
        self.source() == self.target()
    }

    /// Inverse of a permutation.
    pub fn inverse(&self) -> Option<Surjection> {
        if !self.is_permutation() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Some(Surjection { map: inv })
    }
}

impl TryFrom<Vec<usize>> for Surjection {
    type Error = DlError;

    fn try_from(map: Vec<usize>) -> Result<Self, DlError> {
        Surjection::new(map)
    }
}

impl From<Surjection> for Vec<usize> {
    fn from(s: Surjection) -> Self {
        s.map
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Role {
    Atomic(String),
    Epsilon,
    Not(Box<Role>),
    And(Box<Role>, Box<Role>),
    Apply(Surjection, Box<Role>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Concept {
    Top,
    Bottom,
    Atomic(String),
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Exists(Role, Vec<Concept>),
}

impl Role {
    pub fn atomic(name: &str) -> Role {
        Role::Atomic(name.to_string())
    }

    pub fn not(r: Role) -> Role {
        Role::Not(Box::new(r))
    }

    pub fn and(a: Role, b: Role) -> Role {
        Role::And(Box::new(a), Box::new(b))
    }

    pub fn apply(sigma: Surjection, r: Role) -> Role {
        Role::Apply(sigma, Box::new(r))
    }

    /// `a ∪ b` as `¬(¬a ∩ ¬b)`.
    pub fn union(a: Role, b: Role) -> Role {
        Role::not(Role::and(Role::not(a), Role::not(b)))
    }

    /// The binary universal role `¬(ε ∩ ¬ε)`.
    pub fn universal() -> Role {
        Role::not(Role::and(Role::Epsilon, Role::not(Role::Epsilon)))
    }

    /// Arity under the convention that ill-typed intersections and reindexings denote the
    /// empty binary relation.
    pub fn arity(&self, vocab: &Vocabulary) -> Result<usize, DlError> {
        Ok(match self {
            Role::Atomic(name) => match vocab.arity(name) {
                None => return Err(DlError::UnknownRole(name.clone())),
                Some(a) if a < 2 => return Err(DlError::NotARole { name: name.clone(), arity: a }),
                Some(a) => a,
            },
            Role::Epsilon => 2,
            Role::Not(r) => r.arity(vocab)?,
            Role::And(a, b) => {
                let (x, y) = (a.arity(vocab)?, b.arity(vocab)?);
                if x == y {
                    x
                } else {
                    2
                }
            }
            Role::Apply(sigma, r) => {
                if sigma.source() == r.arity(vocab)? {
                    sigma.target()
                } else {
                    2
                }
            }
        })
    }

    pub fn size(&self) -> usize {
        match self {
            Role::Atomic(_) | Role::Epsilon => 1,
            Role::Not(r) | Role::Apply(_, r) => 1 + r.size(),
            Role::And(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Arity of `r`; see [`Role::arity`].
pub fn role_arity(r: &Role, vocab: &Vocabulary) -> Result<usize, DlError> {
    r.arity(vocab)
}

impl Concept {
    pub fn atomic(name: &str) -> Concept {
        Concept::Atomic(name.to_string())
    }

    pub fn not(c: Concept) -> Concept {
        Concept::Not(Box::new(c))
    }

    pub fn and(a: Concept, b: Concept) -> Concept {
        Concept::And(Box::new(a), Box::new(b))
    }

    /// `a ⊔ b` as `¬(¬a ⊓ ¬b)`.
    pub fn or(a: Concept, b: Concept) -> Concept {
        Concept::not(Concept::and(Concept::not(a), Concept::not(b)))
    }

    pub fn exists(r: Role, args: Vec<Concept>) -> Concept {
        Concept::Exists(r, args)
    }

    /// Conjunction of `parts`, `top` when empty.
    pub fn conj(parts: impl IntoIterator<Item = Concept>) -> Concept {
        parts.into_iter().reduce(Concept::and).unwrap_or(Concept::Top)
    }

    /// Disjunction of `parts`, `bottom` when empty.
    pub fn disj(parts: impl IntoIterator<Item = Concept>) -> Concept {
        parts.into_iter().reduce(Concept::or).unwrap_or(Concept::Bottom)
    }

    /// Checks names and argument counts against `vocab`.
    pub fn validate(&self, vocab: &Vocabulary) -> Result<(), DlError> {
        match self {
            Concept::Top | Concept::Bottom => Ok(()),
            Concept::Atomic(name) => match vocab.arity(name) {
                None => Err(DlError::UnknownConcept(name.clone())),
                Some(1) => Ok(()),
                Some(a) => Err(DlError::NotAConcept { name: name.clone(), arity: a }),
            },
            Concept::Not(c) => c.validate(vocab),
            Concept::And(a, b) => {
                a.validate(vocab)?;
                b.validate(vocab)
            }
            Concept::Exists(r, args) => {
                let arity = r.arity(vocab)?;
                if args.len() + 1 != arity {
                    return Err(DlError::ArgumentCount { arity, found: args.len() });
                }
                args.iter().try_for_each(|c| c.validate(vocab))
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => 1,
            Concept::Not(c) => 1 + c.size(),
            Concept::And(a, b) => 1 + a.size() + b.size(),
            Concept::Exists(r, args) => 1 + r.size() + args.iter().map(Concept::size).sum::<usize>(),
        }
    }

    /// Every concept and role name used, with the arity its position demands where known.
    pub fn names(&self) -> (Vec<String>, Vec<String>) {
        fn role_names(r: &Role, out: &mut Vec<String>) {
            match r {
                Role::Atomic(n) => out.push(n.clone()),
                Role::Epsilon => {}
                Role::Not(r) | Role::Apply(_, r) => role_names(r, out),
                Role::And(a, b) => {
                    role_names(a, out);
                    role_names(b, out);
                }
            }
        }
        fn go(c: &Concept, concepts: &mut Vec<String>, roles: &mut Vec<String>) {
            match c {
                Concept::Top | Concept::Bottom => {}
                Concept::Atomic(n) => concepts.push(n.clone()),
                Concept::Not(c) => go(c, concepts, roles),
                Concept::And(a, b) => {
                    go(a, concepts, roles);
                    go(b, concepts, roles);
                }
                Concept::Exists(r, args) => {
                    role_names(r, roles);
                    args.iter().for_each(|a| go(a, concepts, roles));
                }
            }
        }
        let (mut c, mut r) = (Vec::new(), Vec::new());
        go(self, &mut c, &mut r);
        c.sort();
        c.dedup();
        r.sort();
        r.dedup();
        (c, r)
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_concept(self))
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_role(self))
    }
}
