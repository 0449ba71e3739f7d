//! Shared vocabulary: formulae, finite structures, assignments and their text/JSON formats.

mod formula;
mod structure;
mod syntax;
mod vocab;

use std::collections::BTreeMap;

pub use formula::{fresh_var, Comparator, Formula, FormulaError, Var};
pub use structure::{
    disjoint_copies, disjoint_union, disjoint_union_all, parse_structure, tagged, Elem, RelationRef,
    Structure,
    StructureDoc, StructureError, Tuple, TAG_SEPARATOR,
};
pub use syntax::{parse_formula, parse_formula_untyped, print_formula};
pub use vocab::{VocabError, Vocabulary};

/// Partial map from variables to domain elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, Elem>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(v: Var, e: Elem) -> Self {
        let mut a = Self::new();
        a.bind(v, e);
        a
    }

    pub fn bind(&mut self, v: Var, e: Elem) {
        self.0.insert(v, e);
    }

    pub fn get(&self, v: &Var) -> Option<Elem> {
        self.0.get(v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, Elem)> {
        self.0.iter().map(|(v, &e)| (v, e))
    }

    /// Parses `x=a,y=b` against the element names of `s`.
    pub fn parse(text: &str, s: &Structure) -> Result<Self, String> {
        let mut a = Self::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (var, elem) = part
                .split_once('=')
                .ok_or_else(|| format!("assignment `{part}` is not of the form var=element"))?;
            let e = s
                .element_index(elem.trim())
                .ok_or_else(|| format!("`{}` is not in the domain", elem.trim()))?;
            a.bind(Var::new(var.trim()), e);
        }
        Ok(a)
    }
}
