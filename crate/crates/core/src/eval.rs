//! Model checking of formulae on finite structures.
//!
//! Two evaluators share one compiled form: [`eval_naive`] enumerates every assignment and
//! evaluates every subformula (the reference semantics), and [`eval`] short-circuits
//! connectives and quantifiers. They must agree on every input.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::logic::{Assignment, Comparator, Elem, Formula, RelationRef, Structure, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("free variable `{0}` is not assigned")]
    UnboundVariable(String),
    #[error("relation `{0}` is not in the structure's vocabulary")]
    UnknownRelation(String),
    #[error("relation `{name}` has arity {expected} in the structure but is applied to {found} arguments")]
    ArityMismatch { name: String, expected: usize, found: usize },
    #[error("variable `{0}` is assigned an element outside the domain")]
    OutOfDomain(String),
    #[error("formula has {0} free variables; at most one is allowed here")]
    TooManyFreeVariables(usize),
}

type Slot = usize;

enum Node<'s> {
    Top,
    Bottom,
    Atom(RelationRef<'s>, Vec<Slot>),
    Eq(Slot, Slot),
    Not(Box<Node<'s>>),
    And(Box<Node<'s>>, Box<Node<'s>>),
    Or(Box<Node<'s>>, Box<Node<'s>>),
    Implies(Box<Node<'s>>, Box<Node<'s>>),
    Exists(Vec<Slot>, Box<Node<'s>>),
    Forall(Vec<Slot>, Box<Node<'s>>),
    Count(Comparator, usize, Slot, Box<Node<'s>>),
}

/// A formula compiled against one structure, ready to be evaluated under many assignments.
pub struct Compiled<'s> {
    root: Node<'s>,
    slots: BTreeMap<Var, Slot>,
    free: BTreeSet<Var>,
    n: usize,
}

impl<'s> Compiled<'s> {
    pub fn new(s: &'s Structure, f: &Formula) -> Result<Self, EvalError> {
        let mut slots = BTreeMap::new();
        let root = compile(s, f, &mut slots)?;
        Ok(Compiled { root, slots, free: f.free_variables(), n: s.size() })
    }

    pub fn free_variables(&self) -> &BTreeSet<Var> {
        &self.free
    }

    fn env(&self, a: &Assignment) -> Result<Vec<Elem>, EvalError> {
        let mut env = vec![usize::MAX; self.slots.len()];
        for v in &self.free {
            let e = a.get(v).ok_or_else(|| EvalError::UnboundVariable(v.name().to_string()))?;
            if e >= self.n {
                return Err(EvalError::OutOfDomain(v.name().to_string()));
            }
            env[self.slots[v]] = e;
        }
        Ok(env)
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, EvalError> {
        let mut env = self.env(a)?;
        Ok(fast(&self.root, &mut env, self.n))
    }

    pub fn eval_naive(&self, a: &Assignment) -> Result<bool, EvalError> {
        let mut env = self.env(a)?;
        Ok(naive(&self.root, &mut env, self.n))
    }
}

fn slot(slots: &mut BTreeMap<Var, Slot>, v: &Var) -> Slot {
    let next = slots.len();
    *slots.entry(v.clone()).or_insert(next)
}

fn compile<'s>(
    s: &'s Structure,
    f: &Formula,
    slots: &mut BTreeMap<Var, Slot>,
) -> Result<Node<'s>, EvalError> {
    let bx = |n: Node<'s>| Box::new(n);
    Ok(match f {
        Formula::Top => Node::Top,
        Formula::Bottom => Node::Bottom,
        Formula::Atom(r, args) => {
            let expected = s
                .vocabulary()
                .arity(r)
                .ok_or_else(|| EvalError::UnknownRelation(r.clone()))?;
            if expected != args.len() {
                return Err(EvalError::ArityMismatch {
                    name: r.clone(),
                    expected,
                    found: args.len(),
                });
            }
            let table = s.table(r).ok_or_else(|| EvalError::UnknownRelation(r.clone()))?;
            Node::Atom(table, args.iter().map(|v| slot(slots, v)).collect())
        }
        Formula::Equals(a, b) => Node::Eq(slot(slots, a), slot(slots, b)),
        Formula::Not(a) => Node::Not(bx(compile(s, a, slots)?)),
        Formula::And(a, b) => Node::And(bx(compile(s, a, slots)?), bx(compile(s, b, slots)?)),
        Formula::Or(a, b) => Node::Or(bx(compile(s, a, slots)?), bx(compile(s, b, slots)?)),
        Formula::Implies(a, b) => {
            Node::Implies(bx(compile(s, a, slots)?), bx(compile(s, b, slots)?))
        }
        Formula::Exists(vs, body) => {
            let vs = vs.iter().map(|v| slot(slots, v)).collect();
            Node::Exists(vs, bx(compile(s, body, slots)?))
        }
        Formula::Forall(vs, body) => {
            let vs = vs.iter().map(|v| slot(slots, v)).collect();
            Node::Forall(vs, bx(compile(s, body, slots)?))
        }
        Formula::Count(c, k, v, body) => {
            let v = slot(slots, v);
            Node::Count(*c, *k, v, bx(compile(s, body, slots)?))
        }
    })
}

fn atom_holds(table: &RelationRef<'_>, args: &[Slot], env: &[Elem]) -> bool {
    let mut buf = [0usize; 8];
    if args.len() <= buf.len() {
        for (b, &a) in buf.iter_mut().zip(args) {
            *b = env[a];
        }
        table.contains(&buf[..args.len()])
    } else {
        let t: Vec<Elem> = args.iter().map(|&a| env[a]).collect();
        table.contains(&t)
    }
}

/// Calls `visit` once per assignment of `vars` over `0..n`, restoring the previous values after.
/// Stops early when `visit` returns `false`.
fn for_each_assignment(
    vars: &[Slot],
    env: &mut Vec<Elem>,
    n: usize,
    visit: &mut dyn FnMut(&mut Vec<Elem>) -> bool,
) {
    let saved: Vec<Elem> = vars.iter().map(|&v| env[v]).collect();
    for &v in vars {
        env[v] = 0;
    }
    'outer: loop {
        if !visit(env) {
            break;
        }
        for &v in vars.iter().rev() {
            env[v] += 1;
            if env[v] < n {
                continue 'outer;
            }
            env[v] = 0;
        }
        break;
    }
    for (&v, old) in vars.iter().zip(saved) {
        env[v] = old;
    }
}

fn naive(node: &Node<'_>, env: &mut Vec<Elem>, n: usize) -> bool {
    match node {
        Node::Top => true,
        Node::Bottom => false,
        Node::Atom(t, args) => atom_holds(t, args, env),
        Node::Eq(a, b) => env[*a] == env[*b],
        Node::Not(a) => !naive(a, env, n),
        Node::And(a, b) => {
            let (x, y) = (naive(a, env, n), naive(b, env, n));
            x && y
        }
        Node::Or(a, b) => {
            let (x, y) = (naive(a, env, n), naive(b, env, n));
            x || y
        }
        Node::Implies(a, b) => {
            let (x, y) = (naive(a, env, n), naive(b, env, n));
            !x || y
        }
        Node::Exists(vs, body) | Node::Forall(vs, body) => {
            let mut values = Vec::new();
            for_each_assignment(vs, env, n, &mut |env| {
                values.push(naive(body, env, n));
                true
            });
            if matches!(node, Node::Exists(..)) {
                values.iter().any(|&b| b)
            } else {
                values.iter().all(|&b| b)
            }
        }
        Node::Count(c, k, v, body) => {
            let mut count = 0;
            for_each_assignment(&[*v], env, n, &mut |env| {
                count += naive(body, env, n) as usize;
                true
            });
            c.holds(count, *k)
        }
    }
}

fn fast(node: &Node<'_>, env: &mut Vec<Elem>, n: usize) -> bool {
    match node {
        Node::Top => true,
        Node::Bottom => false,
        Node::Atom(t, args) => atom_holds(t, args, env),
        Node::Eq(a, b) => env[*a] == env[*b],
        Node::Not(a) => !fast(a, env, n),
        Node::And(a, b) => fast(a, env, n) && fast(b, env, n),
        Node::Or(a, b) => fast(a, env, n) || fast(b, env, n),
        Node::Implies(a, b) => !fast(a, env, n) || fast(b, env, n),
        Node::Exists(vs, body) => {
            let mut found = false;
            for_each_assignment(vs, env, n, &mut |env| {
                found = fast(body, env, n);
                !found
            });
            found
        }
        Node::Forall(vs, body) => {
            let mut all = true;
            for_each_assignment(vs, env, n, &mut |env| {
                all = fast(body, env, n);
                all
            });
            all
        }
        Node::Count(c, k, v, body) => {
            let (c, k) = (*c, *k);
            let mut count = 0;
            let mut seen = 0;
            for_each_assignment(&[*v], env, n, &mut |env| {
                count += fast(body, env, n) as usize;
                seen += 1;
                // stop once the remaining elements cannot change the verdict
                let remaining = n - seen;
                match c {
                    Comparator::AtLeast => count < k && count + remaining >= k,
                    Comparator::AtMost | Comparator::Exactly => count <= k,
                }
            });
            c.holds(count, k)
        }
    }
}

/// Truth of `f` in `s` under `a` (short-circuiting evaluator).
pub fn eval(s: &Structure, a: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    Compiled::new(s, f)?.eval(a)
}

/// Reference evaluator: plain Tarskian recursion with no pruning.
pub fn eval_naive(s: &Structure, a: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    Compiled::new(s, f)?.eval_naive(a)
}

/// Truth of a sentence.
pub fn holds(s: &Structure, f: &Formula) -> Result<bool, EvalError> {
    eval(s, &Assignment::new(), f)
}

/// Set of elements defined by a formula with at most one free variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfactionSet {
    pub formula: Formula,
    pub elements: BTreeSet<Elem>,
}

impl SatisfactionSet {
    pub fn names<'a>(&self, s: &'a Structure) -> Vec<&'a str> {
        self.elements.iter().map(|&e| s.element_name(e)).collect()
    }
}

pub fn satisfaction_set(s: &Structure, f: &Formula) -> Result<SatisfactionSet, EvalError> {
    let compiled = Compiled::new(s, f)?;
    let free: Vec<Var> = compiled.free_variables().iter().cloned().collect();
    let elements = match free.as_slice() {
        [] => {
            if compiled.eval(&Assignment::new())? {
                s.elements().collect()
            } else {
                BTreeSet::new()
            }
        }
        [x] => {
            let mut out = BTreeSet::new();
            for e in s.elements() {
                if compiled.eval(&Assignment::single(x.clone(), e))? {
                    out.insert(e);
                }
            }
            out
        }
        more => return Err(EvalError::TooManyFreeVariables(more.len())),
    };
    Ok(SatisfactionSet { formula: f.clone(), elements })
}
