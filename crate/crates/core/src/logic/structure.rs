use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::vocab::{VocabError, Vocabulary};

/// Separator used when tagging elements of disjoint copies: `a` becomes `a#1`, `a#2`, ...
pub const TAG_SEPARATOR: char = '#';

/// Element of a structure, as an index into its domain.
pub type Elem = usize;
pub type Tuple = Vec<Elem>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("malformed structure document: {0}")]
    Malformed(String),
    #[error("the domain is empty")]
    EmptyDomain,
    #[error("element `{0}` is listed twice in the domain")]
    DuplicateElement(String),
    #[error("relation `{0}` has tuples but no declared arity")]
    UndeclaredRelation(String),
    #[error("relation `{name}` has arity {arity} but contains a tuple of length {found}")]
    TupleArity { name: String, arity: usize, found: usize },
    #[error("relation `{name}` mentions `{element}`, which is not in the domain")]
    UnknownElement { name: String, element: String },
    #[error("vocabularies differ: {0} vs {1}")]
    VocabularyMismatch(String, String),
    #[error(transparent)]
    Vocab(#[from] VocabError),
}

#[derive(Debug, Clone)]
enum Table {
    /// Bitmap indexed by the tuple read as a base-|domain| numeral.
    Dense(Vec<bool>),
    Sparse(HashSet<Tuple>),
}

const DENSE_LIMIT: usize = 1 << 22;

/// A finite relational structure over a declared vocabulary.
#[derive(Debug, Clone)]
pub struct Structure {
    domain: Vec<String>,
    vocab: Vocabulary,
    relations: BTreeMap<String, BTreeSet<Tuple>>,
    tables: BTreeMap<String, Table>,
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.vocab == other.vocab && self.relations == other.relations
    }
}

impl Eq for Structure {}

impl Structure {
    /// Builds a structure from index tuples. Relations missing from `relations` are empty.
    pub fn new(
        domain: Vec<String>,
        vocab: Vocabulary,
        mut relations: BTreeMap<String, BTreeSet<Tuple>>,
    ) -> Result<Self, StructureError> {
        if domain.is_empty() {
            return Err(StructureError::EmptyDomain);
        }
        let mut seen = HashSet::new();
        for e in &domain {
            if !seen.insert(e.as_str()) {
                return Err(StructureError::DuplicateElement(e.clone()));
            }
        }
        for (name, tuples) in &relations {
            let arity = vocab
                .arity(name)
                .ok_or_else(|| StructureError::UndeclaredRelation(name.clone()))?;
            for t in tuples {
                if t.len() != arity {
                    return Err(StructureError::TupleArity {
                        name: name.clone(),
                        arity,
                        found: t.len(),
                    });
                }
                if let Some(&bad) = t.iter().find(|&&e| e >= domain.len()) {
                    return Err(StructureError::UnknownElement {
                        name: name.clone(),
                        element: format!("#{bad}"),
                    });
                }
            }
        }
        for (name, _) in vocab.iter() {
            relations.entry(name.to_string()).or_default();
        }
        let n = domain.len();
        let tables = relations
            .iter()
            .map(|(name, tuples)| {
                let arity = vocab.arity(name).unwrap_or(0);
                let cells = n.checked_pow(arity as u32).filter(|&c| c <= DENSE_LIMIT);
                let table = match cells {
                    Some(c) => {
                        let mut bits = vec![false; c];
                        for t in tuples {
                            bits[encode(t, n)] = true;
                        }
                        Table::Dense(bits)
                    }
                    None => Table::Sparse(tuples.iter().cloned().collect()),
                };
                (name.clone(), table)
            })
            .collect();
        Ok(Structure { domain, vocab, relations, tables })
    }

    /// Builds a structure from element names, as found in a structure document.
    pub fn from_named(
        domain: Vec<String>,
        vocab: Vocabulary,
        relations: BTreeMap<String, Vec<Vec<String>>>,
    ) -> Result<Self, StructureError> {
        let index: BTreeMap<&str, usize> =
            domain.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let mut rels = BTreeMap::new();
        for (name, tuples) in relations {
            let arity = vocab
                .arity(&name)
                .ok_or_else(|| StructureError::UndeclaredRelation(name.clone()))?;
            let mut set = BTreeSet::new();
            for t in tuples {
                if t.len() != arity {
                    return Err(StructureError::TupleArity { name, arity, found: t.len() });
                }
                let mut idx = Vec::with_capacity(t.len());
                for e in &t {
                    match index.get(e.as_str()) {
                        Some(&i) => idx.push(i),
                        None => {
                            return Err(StructureError::UnknownElement {
                                name,
                                element: e.clone(),
                            })
                        }
                    }
                }
                set.insert(idx);
            }
            rels.insert(name, set);
        }
        Structure::new(domain, vocab, rels)
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.domain.len()
    }

    pub fn element_name(&self, e: Elem) -> &str {
        &self.domain[e]
    }

    pub fn element_index(&self, name: &str) -> Option<Elem> {
        self.domain.iter().position(|d| d == name)
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn relation(&self, name: &str) -> Option<&BTreeSet<Tuple>> {
        self.relations.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &BTreeSet<Tuple>)> {
        self.relations.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Membership test; `false` for undeclared relations.
    pub fn holds(&self, name: &str, tuple: &[Elem]) -> bool {
        match self.tables.get(name) {
            Some(Table::Dense(bits)) => bits[encode(tuple, self.domain.len())],
            Some(Table::Sparse(set)) => set.contains(tuple),
            None => false,
        }
    }

    /// Fast membership handle for one relation.
    pub fn table(&self, name: &str) -> Option<RelationRef<'_>> {
        self.tables.get(name).map(|table| RelationRef { table, n: self.domain.len() })
    }

    pub fn from_json(text: &str) -> Result<Self, StructureError> {
        let doc: StructureDoc =
            serde_json::from_str(text).map_err(|e| StructureError::Malformed(e.to_string()))?;
        doc.into_structure()
    }

    pub fn to_doc(&self) -> StructureDoc {
        StructureDoc {
            domain: self.domain.clone(),
            arities: self.vocab.iter().map(|(n, a)| (n.to_string(), a)).collect(),
            relations: self
                .relations
                .iter()
                .map(|(name, tuples)| {
                    let named = tuples
                        .iter()
                        .map(|t| t.iter().map(|&e| self.domain[e].clone()).collect())
                        .collect();
                    (name.clone(), named)
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("structure documents always serialize")
    }

    /// Applies a bijection `perm` on element indices (new index of old element `i` is `perm[i]`),
    /// keeping names attached to their elements.
    pub fn permuted(&self, perm: &[Elem]) -> Structure {
        let mut domain = vec![String::new(); self.domain.len()];
        for (i, name) in self.domain.iter().enumerate() {
            domain[perm[i]] = name.clone();
        }
        let relations = self
            .relations
            .iter()
            .map(|(n, ts)| (n.clone(), ts.iter().map(|t| t.iter().map(|&e| perm[e]).collect()).collect()))
            .collect();
        Structure::new(domain, self.vocab.clone(), relations).expect("permutation preserves validity")
    }

    /// Same structure with every element renamed by `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<Structure, StructureError> {
        Structure::new(
            self.domain.iter().map(|d| f(d)).collect(),
            self.vocab.clone(),
            self.relations.clone(),
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RelationRef<'a> {
    table: &'a Table,
    n: usize,
}

impl RelationRef<'_> {
    pub fn contains(&self, tuple: &[Elem]) -> bool {
        match self.table {
            Table::Dense(bits) => bits[encode(tuple, self.n)],
            Table::Sparse(set) => set.contains(tuple),
        }
    }
}

fn encode(tuple: &[Elem], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &e| acc * n + e)
}

/// Name of element `name` in the `copy`-th (1-based) tagged copy.
pub fn tagged(name: &str, copy: usize) -> String {
    format!("{name}{TAG_SEPARATOR}{copy}")
}

/// Disjoint union of two structures over the same vocabulary.
/// Elements of `s1` are tagged `#1` and elements of `s2` are tagged `#2`.
pub fn disjoint_union(s1: &Structure, s2: &Structure) -> Result<Structure, StructureError> {
    disjoint_union_all(&[s1, s2])
}

/// Disjoint union of any nonempty list of structures; the i-th input is tagged `#i` (1-based).
pub fn disjoint_union_all(parts: &[&Structure]) -> Result<Structure, StructureError> {
    let first = parts.first().ok_or(StructureError::EmptyDomain)?;
    let vocab = first.vocab.clone();
    let mut domain = Vec::new();
    let mut relations: BTreeMap<String, BTreeSet<Tuple>> = BTreeMap::new();
    for (copy, s) in parts.iter().enumerate() {
        if s.vocab != vocab {
            return Err(StructureError::VocabularyMismatch(vocab.to_string(), s.vocab.to_string()));
        }
        let offset = domain.len();
        domain.extend(s.domain.iter().map(|d| tagged(d, copy + 1)));
        for (name, tuples) in &s.relations {
            relations
                .entry(name.clone())
                .or_default()
                .extend(tuples.iter().map(|t| t.iter().map(|&e| e + offset).collect::<Tuple>()));
        }
    }
    Structure::new(domain, vocab, relations)
}

/// `copies` disjoint copies of `s`.
pub fn disjoint_copies(s: &Structure, copies: usize) -> Result<Structure, StructureError> {
    disjoint_union_all(&vec![s; copies])
}

/// On-disk structure document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub domain: Vec<String>,
    #[serde(default)]
    pub arities: BTreeMap<String, usize>,
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<Vec<String>>>,
}

impl StructureDoc {
    pub fn into_structure(self) -> Result<Structure, StructureError> {
        let vocab = Vocabulary::from_pairs(self.arities)?;
        Structure::from_named(self.domain, vocab, self.relations)
    }
}

pub fn parse_structure(text: &str) -> Result<Structure, StructureError> {
    Structure::from_json(text)
}
