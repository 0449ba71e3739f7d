use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::vocab::{VocabError, Vocabulary};

/// A first-order variable. Distinct names are distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: impl AsRef<str>) -> Self {
        Var(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

/// Comparator of a counting quantifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Comparator {
    AtLeast,
    AtMost,
    Exactly,
}

impl Comparator {
    pub fn holds(self, count: usize, bound: usize) -> bool {
        match self {
            Comparator::AtLeast => count >= bound,
            Comparator::AtMost => count <= bound,
            Comparator::Exactly => count == bound,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::AtLeast => ">=",
            Comparator::AtMost => "<=",
            Comparator::Exactly => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(String, Vec<Var>),
    Equals(Var, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// Existential block; the variable list is nonempty and duplicate-free.
    Exists(Vec<Var>, Box<Formula>),
    Forall(Vec<Var>, Box<Formula>),
    Count(Comparator, usize, Var, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("relation `{name}` has arity {expected} but is applied to {found} arguments")]
    ArityMismatch { name: String, expected: usize, found: usize },
    #[error("empty quantifier block")]
    EmptyBlock,
    #[error("variable `{0}` occurs twice in one quantifier block")]
    DuplicateBlockVariable(String),
    #[error(transparent)]
    Vocab(#[from] VocabError),
}

impl Formula {
    pub fn atom(rel: &str, args: &[&str]) -> Formula {
        Formula::Atom(rel.to_string(), args.iter().map(|a| Var::new(a)).collect())
    }

    pub fn eq(a: &str, b: &str) -> Formula {
        Formula::Equals(Var::new(a), Var::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(vars: &[&str], body: Formula) -> Formula {
        Formula::Exists(vars.iter().map(|v| Var::new(v)).collect(), Box::new(body))
    }

    pub fn forall(vars: &[&str], body: Formula) -> Formula {
        Formula::Forall(vars.iter().map(|v| Var::new(v)).collect(), Box::new(body))
    }

    pub fn count(cmp: Comparator, bound: usize, var: &str, body: Formula) -> Formula {
        Formula::Count(cmp, bound, Var::new(var), Box::new(body))
    }

    /// Left-nested conjunction; `Top` for an empty list.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bottom` for an empty list.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(..) | Formula::Equals(..) => vec![],
            Formula::Not(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => vec![a, b],
            Formula::Exists(_, a) | Formula::Forall(_, a) | Formula::Count(_, _, _, a) => vec![a],
        }
    }

    /// Follows a path of child indices.
    pub fn at_path(&self, path: &[usize]) -> Option<&Formula> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Copy of `self` with the subformula at `path` replaced by `with`.
    pub fn replace_at(&self, path: &[usize], with: Formula) -> Option<Formula> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(with);
        };
        let sub = |f: &Formula| f.replace_at(rest, with.clone()).map(Box::new);
        Some(match (self, i) {
            (Formula::Not(a), 0) => Formula::Not(sub(a)?),
            (Formula::And(a, b), 0) => Formula::And(sub(a)?, b.clone()),
            (Formula::And(a, b), 1) => Formula::And(a.clone(), sub(b)?),
            (Formula::Or(a, b), 0) => Formula::Or(sub(a)?, b.clone()),
            (Formula::Or(a, b), 1) => Formula::Or(a.clone(), sub(b)?),
            (Formula::Implies(a, b), 0) => Formula::Implies(sub(a)?, b.clone()),
            (Formula::Implies(a, b), 1) => Formula::Implies(a.clone(), sub(b)?),
            (Formula::Exists(vs, a), 0) => Formula::Exists(vs.clone(), sub(a)?),
            (Formula::Forall(vs, a), 0) => Formula::Forall(vs.clone(), sub(a)?),
            (Formula::Count(c, k, v, a), 0) => Formula::Count(*c, *k, v.clone(), sub(a)?),
            _ => return None,
        })
    }

    pub fn is_boolean(&self) -> bool {
        matches!(self, Formula::Not(_) | Formula::And(..) | Formula::Or(..) | Formula::Implies(..))
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Exists(..) | Formula::Forall(..) | Formula::Count(..))
    }

    pub fn free_variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a Var>, out: &mut BTreeSet<Var>) {
        let mut note = |v: &Var, bound: &Vec<&Var>| {
            if !bound.contains(&v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(_, args) => args.iter().for_each(|v| note(v, bound)),
            Formula::Equals(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
                let n = bound.len();
                bound.extend(vs.iter());
                body.collect_free(bound, out);
                bound.truncate(n);
            }
            Formula::Count(_, _, v, body) => {
                bound.push(v);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(_, args) => out.extend(args.iter().cloned()),
            Formula::Equals(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::Exists(vs, _) | Formula::Forall(vs, _) => out.extend(vs.iter().cloned()),
            Formula::Count(_, _, v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn depth(&self) -> usize {
        self.children().iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Smallest vocabulary covering every atom; fails on inconsistent arities.
    pub fn infer_vocabulary(&self) -> Result<Vocabulary, VocabError> {
        let mut vocab = Vocabulary::new();
        let mut err = None;
        self.visit(&mut |f| {
            if let Formula::Atom(r, args) = f {
                if err.is_none() {
                    if let Err(e) = vocab.declare(r.clone(), args.len()) {
                        err = Some(e);
                    }
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(vocab),
        }
    }

    /// Checks atom arities against `vocab` and quantifier blocks for emptiness and duplicates.
    pub fn validate(&self, vocab: &Vocabulary) -> Result<(), FormulaError> {
        let mut result = Ok(());
        self.visit(&mut |f| {
            if result.is_err() {
                return;
            }
            result = match f {
                Formula::Atom(r, args) => match vocab.arity(r) {
                    None => Err(FormulaError::UnknownRelation(r.clone())),
                    Some(a) if a != args.len() => Err(FormulaError::ArityMismatch {
                        name: r.clone(),
                        expected: a,
                        found: args.len(),
                    }),
                    _ => Ok(()),
                },
                Formula::Exists(vs, _) | Formula::Forall(vs, _) => check_block(vs),
                _ => Ok(()),
            };
        });
        result
    }

    /// Capture-avoiding renaming of free occurrences of `from` to `to`.
    /// Bound variables that would capture `to` are renamed apart first.
    pub fn rename_free(&self, from: &Var, to: &Var) -> Formula {
        if from == to {
            return self.clone();
        }
        match self {
            Formula::Top | Formula::Bottom => self.clone(),
            Formula::Atom(r, args) => Formula::Atom(
                r.clone(),
                args.iter().map(|v| if v == from { to.clone() } else { v.clone() }).collect(),
            ),
            Formula::Equals(a, b) => {
                let s = |v: &Var| if v == from { to.clone() } else { v.clone() };
                Formula::Equals(s(a), s(b))
            }
            Formula::Not(a) => Formula::not(a.rename_free(from, to)),
            Formula::And(a, b) => Formula::and(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Or(a, b) => Formula::or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_free(from, to), b.rename_free(from, to))
            }
            Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
                let rebuild = |vs: Vec<Var>, body: Formula| match self {
                    Formula::Exists(..) => Formula::Exists(vs, Box::new(body)),
                    _ => Formula::Forall(vs, Box::new(body)),
                };
                if vs.contains(from) {
                    return self.clone();
                }
                if vs.contains(to) && body.free_variables().contains(from) {
                    let avoid = self.variables();
                    let fresh = fresh_var(to.name(), |v| avoid.contains(v) || v == from);
                    let vs2: Vec<Var> =
                        vs.iter().map(|v| if v == to { fresh.clone() } else { v.clone() }).collect();
                    let body2 = body.rename_free(to, &fresh).rename_free(from, to);
                    return rebuild(vs2, body2);
                }
                rebuild(vs.clone(), body.rename_free(from, to))
            }
            Formula::Count(c, k, v, body) => {
                if v == from {
                    return self.clone();
                }
                if v == to && body.free_variables().contains(from) {
                    let avoid = self.variables();
                    let fresh = fresh_var(to.name(), |w| avoid.contains(w) || w == from);
                    let body2 = body.rename_free(to, &fresh).rename_free(from, to);
                    return Formula::Count(*c, *k, fresh, Box::new(body2));
                }
                Formula::Count(*c, *k, v.clone(), Box::new(body.rename_free(from, to)))
            }
        }
    }
}

pub(crate) fn check_block(vs: &[Var]) -> Result<(), FormulaError> {
    if vs.is_empty() {
        return Err(FormulaError::EmptyBlock);
    }
    for (i, v) in vs.iter().enumerate() {
        if vs[..i].contains(v) {
            return Err(FormulaError::DuplicateBlockVariable(v.name().to_string()));
        }
    }
    Ok(())
}

/// `base` followed by the first numeric suffix that `taken` rejects.
pub fn fresh_var(base: &str, taken: impl Fn(&Var) -> bool) -> Var {
    (1..)
        .map(|i| Var::new(format!("{base}{i}")))
        .find(|v| !taken(v))
        .expect("unbounded suffix search")
}
