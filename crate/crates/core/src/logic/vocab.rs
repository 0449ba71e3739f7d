use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("relation `{0}` declared with arity 0; arities must be at least 1")]
    ZeroArity(String),
    #[error("`=` is built in and cannot be declared as a relation")]
    ReservedEquality,
    #[error("empty relation name")]
    EmptyName,
    #[error("relation `{name}` used with arity {found} but declared with arity {declared}")]
    ArityConflict { name: String, declared: usize, found: usize },
}

/// Finite relational vocabulary: relation name to arity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, usize>", into = "BTreeMap<String, usize>")]
pub struct Vocabulary {
    symbols: BTreeMap<String, usize>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, VocabError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut v = Vocabulary::new();
        for (name, arity) in pairs {
            v.declare(name, arity)?;
        }
        Ok(v)
    }

    /// Adds `name` with `arity`; redeclaring with the same arity is a no-op.
    pub fn declare(&mut self, name: impl Into<String>, arity: usize) -> Result<(), VocabError> {
        let name = name.into();
        if name.is_empty() {
            return Err(VocabError::EmptyName);
        }
        if name == "=" {
            return Err(VocabError::ReservedEquality);
        }
        if arity == 0 {
            return Err(VocabError::ZeroArity(name));
        }
        match self.symbols.get(&name) {
            Some(&declared) if declared != arity => {
                Err(VocabError::ArityConflict { name, declared, found: arity })
            }
            _ => {
                self.symbols.insert(name, arity);
                Ok(())
            }
        }
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Largest declared arity, 0 for the empty vocabulary.
    pub fn max_arity(&self) -> usize {
        self.symbols.values().copied().max().unwrap_or(0)
    }

    /// Union of two vocabularies; fails if a shared name disagrees on arity.
    pub fn merge(&self, other: &Vocabulary) -> Result<Vocabulary, VocabError> {
        let mut out = self.clone();
        for (name, arity) in other.iter() {
            out.declare(name, arity)?;
        }
        Ok(out)
    }

    pub fn restrict<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Vocabulary {
        let mut out = Vocabulary::new();
        for n in names {
            if let Some(a) = self.arity(n) {
                out.symbols.insert(n.to_string(), a);
            }
        }
        out
    }
}

impl TryFrom<BTreeMap<String, usize>> for Vocabulary {
    type Error = VocabError;

    fn try_from(map: BTreeMap<String, usize>) -> Result<Self, Self::Error> {
        Vocabulary::from_pairs(map)
    }
}

impl From<Vocabulary> for BTreeMap<String, usize> {
    fn from(v: Vocabulary) -> Self {
        v.symbols
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(n, a)| format!("{n}/{a}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
