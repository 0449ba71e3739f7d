use std::collections::{BTreeMap, BTreeSet};

use super::TranslateError;
use crate::logic::{Formula, Var};

const MAX_DISJUNCTS: usize = 1 << 14;

/// A possibly negated leaf of a Boolean combination.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub leaf: Formula,
}

impl Literal {
    pub fn to_formula(&self) -> Formula {
        if self.positive {
            self.leaf.clone()
        } else {
            Formula::not(self.leaf.clone())
        }
    }
}

/// One conjunction of a block in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disjunct {
    /// Variable set shared by the higher-arity literals; empty if there are none.
    pub t_vars: BTreeSet<Var>,
    /// Literals over atoms (or equalities) with two or more distinct variables.
    pub t_literals: Vec<Literal>,
    /// Literals with exactly one free variable, grouped by that variable. Every variable of
    /// `t_vars` has an entry, possibly empty (standing for top).
    pub unary: BTreeMap<Var, Vec<Literal>>,
    /// Literals without free variables.
    pub closed: Vec<Literal>,
}

/// `E vars. (d1 | d2 | ...)` with the quantifier block distributed over the disjuncts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfBlock {
    pub vars: Vec<Var>,
    /// The variable left free by the block, if any.
    pub free: Option<Var>,
    pub disjuncts: Vec<Disjunct>,
}

impl Disjunct {
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.t_literals
            .iter()
            .chain(self.unary.values().flatten())
            .chain(self.closed.iter())
    }
}

impl DnfBlock {
    /// The disjunction of blocks, equivalent to the input of [`to_dnf_block`].
    pub fn to_formula(&self) -> Formula {
        Formula::disj(self.disjuncts.iter().map(|d| {
            let body = Formula::conj(d.literals().map(Literal::to_formula));
            Formula::Exists(self.vars.clone(), Box::new(body))
        }))
    }
}

type Dnf = Vec<Vec<Literal>>;

fn product(a: Dnf, b: Dnf) -> Result<Dnf, TranslateError> {
    if a.len().saturating_mul(b.len()) > MAX_DISJUNCTS {
        return Err(TranslateError::TooLarge(MAX_DISJUNCTS));
    }
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            let mut c = x.clone();
            for l in y {
                if !c.contains(l) {
                    c.push(l.clone());
                }
            }
            out.push(c);
        }
    }
    Ok(out)
}

fn sum(mut a: Dnf, b: Dnf) -> Result<Dnf, TranslateError> {
    a.extend(b);
    if a.len() > MAX_DISJUNCTS {
        return Err(TranslateError::TooLarge(MAX_DISJUNCTS));
    }
    Ok(a)
}

/// Disjunctive normal form of `f` (or of its negation when `positive` is false), with
/// negations pushed down to the leaves and implications unfolded.
fn dnf(f: &Formula, positive: bool) -> Result<Dnf, TranslateError> {
    match f {
        Formula::Top | Formula::Bottom => {
            let truth = matches!(f, Formula::Top) == positive;
            Ok(if truth { vec![Vec::new()] } else { Vec::new() })
        }
        Formula::Not(a) => dnf(a, !positive),
        Formula::And(a, b) if positive => product(dnf(a, true)?, dnf(b, true)?),
        Formula::And(a, b) => sum(dnf(a, false)?, dnf(b, false)?),
        Formula::Or(a, b) if positive => sum(dnf(a, true)?, dnf(b, true)?),
        Formula::Or(a, b) => product(dnf(a, false)?, dnf(b, false)?),
        Formula::Implies(a, b) if positive => sum(dnf(a, false)?, dnf(b, true)?),
        Formula::Implies(a, b) => product(dnf(a, true)?, dnf(b, false)?),
        leaf => Ok(vec![vec![Literal { positive, leaf: leaf.clone() }]]),
    }
}

fn higher_arity_vars(leaf: &Formula) -> Option<BTreeSet<Var>> {
    match leaf {
        Formula::Atom(_, args) => {
            let vars: BTreeSet<Var> = args.iter().cloned().collect();
            (vars.len() > 1).then_some(vars)
        }
        Formula::Equals(a, b) if a != b => Some([a.clone(), b.clone()].into_iter().collect()),
        _ => None,
    }
}

fn split(conj: Vec<Literal>) -> Result<Disjunct, TranslateError> {
    let mut d = Disjunct {
        t_vars: BTreeSet::new(),
        t_literals: Vec::new(),
        unary: BTreeMap::new(),
        closed: Vec::new(),
    };
    for lit in conj {
        if let Some(vars) = higher_arity_vars(&lit.leaf) {
            if d.t_literals.is_empty() {
                d.t_vars = vars;
            } else if d.t_vars != vars {
                let show = |s: &BTreeSet<Var>| {
                    s.iter().map(Var::name).collect::<Vec<_>>().join(", ")
                };
                return Err(TranslateError::NotUniform(format!(
                    "literals over {{{}}} and {{{}}} in one conjunction",
                    show(&d.t_vars),
                    show(&vars)
                )));
            }
            d.t_literals.push(lit);
            continue;
        }
        let free = lit.leaf.free_variables();
        match free.len() {
            0 => d.closed.push(lit),
            1 => d.unary.entry(free.into_iter().next().unwrap()).or_default().push(lit),
            _ => {
                return Err(TranslateError::NotUniform(format!(
                    "`{}` has several free variables but is not an atom",
                    lit.leaf
                )))
            }
        }
    }
    for v in &d.t_vars {
        d.unary.entry(v.clone()).or_default();
    }
    Ok(d)
}

/// Normal form of an existential block: disjunctive normal form of the body with the
/// quantifier prefix distributed over the disjuncts.
pub fn to_dnf_block(f: &Formula) -> Result<DnfBlock, TranslateError> {
    let Formula::Exists(vars, body) = f else {
        return Err(TranslateError::NotABlock);
    };
    let free = f.free_variables();
    if free.len() > 1 {
        return Err(TranslateError::TooManyFreeVariables(free.len()));
    }
    let disjuncts = dnf(body, true)?.into_iter().map(split).collect::<Result<_, _>>()?;
    Ok(DnfBlock { vars: vars.clone(), free: free.into_iter().next(), disjuncts })
}
