//! Bounded model finding.
//!
//! For each domain size `1..=max_size` the interpretations of the vocabulary are explored as
//! bit vectors over the cells (ground atoms) ordered by relation name and then by tuple in
//! lexicographic order. Vectors are visited in lexicographic order with `false < true`, so the
//! model returned is the least one of the least size. The search assigns cells depth first and
//! evaluates the sentence in three-valued logic on every partial assignment, abandoning a
//! subtree once the sentence is definitely false and completing with `false` once it is
//! definitely true.
//!
//! Optional symmetry pruning abandons a subtree as soon as swapping two elements yields a
//! lexicographically smaller vector on the decided prefix. The least model of a size is never
//! pruned that way, so the outcome and the model returned are the same with and without it.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::eval::holds;
use crate::gen::{cells, element_names};
use crate::logic::{print_formula, Comparator, Formula, Structure, StructureDoc, Tuple, Var, Vocabulary};

/// Default maximum number of cells of the largest domain searched.
pub const DEFAULT_CELL_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("not a sentence: free variables {0:?}")]
    NotASentence(Vec<String>),
    #[error("the size bound must be at least 1")]
    ZeroBound,
    #[error("size {size} needs {cells} cells, above the limit of {limit}")]
    CellLimit { size: usize, cells: usize, limit: usize },
    #[error("relation `{0}` is used with {1} arguments but is not declared with that arity")]
    Vocabulary(String, usize),
    #[error("internal error: candidate model fails the model checker")]
    Verification,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub max_size: usize,
    pub prune: bool,
    pub cell_limit: usize,
    /// Run the subtrees of each size on the rayon pool.
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(max_size: usize) -> Self {
        SearchConfig { max_size, prune: false, cell_limit: DEFAULT_CELL_LIMIT, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    FoundModel(Structure),
    NoModelUpTo(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Complete interpretations reached.
    pub structures_examined: u64,
    /// Partial assignments visited, complete ones included.
    pub nodes_visited: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchStats {
    fn add(&mut self, other: &SearchStats) {
        self.structures_examined += other.structures_examined;
        self.nodes_visited += other.nodes_visited;
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub sentence: Formula,
    pub bound: usize,
    pub outcome: Outcome,
    pub stats: SearchStats,
}

#[derive(Serialize)]
#[serde(tag = "kind")]
enum OutcomeDoc {
    FoundModel { size: usize, model: StructureDoc },
    NoModelUpTo { bound: usize },
}

#[derive(Serialize)]
struct ReportDoc {
    sentence: String,
    bound: usize,
    outcome: OutcomeDoc,
    statistics: SearchStats,
}

impl SearchReport {
    pub fn found(&self) -> Option<&Structure> {
        match &self.outcome {
            Outcome::FoundModel(s) => Some(s),
            Outcome::NoModelUpTo(_) => None,
        }
    }

    /// JSON document; the elapsed time is left out so that identical searches give identical
    /// documents.
    pub fn to_json(&self) -> serde_json::Value {
        let outcome = match &self.outcome {
            Outcome::FoundModel(s) => OutcomeDoc::FoundModel { size: s.size(), model: s.to_doc() },
            Outcome::NoModelUpTo(n) => OutcomeDoc::NoModelUpTo { bound: *n },
        };
        let doc = ReportDoc {
            sentence: print_formula(&self.sentence),
            bound: self.bound,
            outcome,
            statistics: self.stats.clone(),
        };
        serde_json::to_value(doc).expect("reports serialize")
    }
}

pub fn find_model(f: &Formula, vocab: &Vocabulary, max_size: usize, prune: bool) -> Result<SearchReport, SatError> {
    let mut config = SearchConfig::new(max_size);
    config.prune = prune;
    find_model_with(f, vocab, &config)
}

pub fn find_model_with(f: &Formula, vocab: &Vocabulary, config: &SearchConfig) -> Result<SearchReport, SatError> {
    let started = Instant::now();
    let free = f.free_variables();
    if !free.is_empty() {
        return Err(SatError::NotASentence(free.iter().map(|v| v.name().to_string()).collect()));
    }
    if config.max_size == 0 {
        return Err(SatError::ZeroBound);
    }
    check_vocabulary(f, vocab)?;
    let top_cells = cells(vocab, config.max_size).len();
    if top_cells > config.cell_limit {
        return Err(SatError::CellLimit { size: config.max_size, cells: top_cells, limit: config.cell_limit });
    }
    let mut stats = SearchStats::default();
    let mut outcome = Outcome::NoModelUpTo(config.max_size);
    for n in 1..=config.max_size {
        let search = Search::new(f, vocab, n, config.prune);
        let (found, size_stats) = search.run(config.parallel);
        stats.add(&size_stats);
        if let Some(bits) = found {
            let s = search.structure(&bits);
            if !holds(&s, f).map_err(|_| SatError::Verification)? {
                return Err(SatError::Verification);
            }
            outcome = Outcome::FoundModel(s);
            break;
        }
    }
    stats.elapsed = started.elapsed();
    Ok(SearchReport { sentence: f.clone(), bound: config.max_size, outcome, stats })
}

fn check_vocabulary(f: &Formula, vocab: &Vocabulary) -> Result<(), SatError> {
    match f {
        Formula::Atom(r, args) if vocab.arity(r) != Some(args.len()) => {
            Err(SatError::Vocabulary(r.clone(), args.len()))
        }
        _ => f.children().into_iter().try_for_each(|c| check_vocabulary(c, vocab)),
    }
}

/// Kleene truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tv {
    F,
    T,
    U,
}

impl Tv {
    fn not(self) -> Tv {
        match self {
            Tv::F => Tv::T,
            Tv::T => Tv::F,
            Tv::U => Tv::U,
        }
    }
}

type Slot = usize;

enum Node {
    Const(Tv),
    /// Offset of the relation's first cell and the argument slots.
    Atom(usize, Vec<Slot>),
    Eq(Slot, Slot),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Exists(Vec<Slot>, Box<Node>),
    Forall(Vec<Slot>, Box<Node>),
    Count(Comparator, usize, Slot, Box<Node>),
}

struct Search<'v> {
    vocab: &'v Vocabulary,
    n: usize,
    root: Node,
    slots: usize,
    cells: Vec<(String, Tuple)>,
    /// For each transposition of two elements, the image of every cell.
    swaps: Vec<Vec<usize>>,
}

/// Depth at which the search tree is cut into independent subtrees.
const SPLIT_DEPTH: usize = 8;

impl<'v> Search<'v> {
    fn new(f: &Formula, vocab: &'v Vocabulary, n: usize, prune: bool) -> Self {
        let cells = cells(vocab, n);
        let mut offsets = BTreeMap::new();
        for (i, (name, _)) in cells.iter().enumerate() {
            offsets.entry(name.clone()).or_insert(i);
        }
        let mut slots = BTreeMap::new();
        let root = compile(f, &offsets, &mut slots);
        let index: BTreeMap<(&str, &Tuple), usize> =
            cells.iter().enumerate().map(|(i, (r, t))| ((r.as_str(), t), i)).collect();
        let mut swaps = Vec::new();
        if prune {
            for a in 0..n {
                for b in a + 1..n {
                    let image = cells
                        .iter()
                        .map(|(r, t)| {
                            let moved: Tuple = t
                                .iter()
                                .map(|&e| if e == a { b } else if e == b { a } else { e })
                                .collect();
                            index[&(r.as_str(), &moved)]
                        })
                        .collect();
                    swaps.push(image);
                }
            }
        }
        Search { vocab, n, root, slots: slots.len(), cells, swaps }
    }

    fn structure(&self, bits: &[bool]) -> Structure {
        let mut relations: BTreeMap<String, BTreeSet<Tuple>> = BTreeMap::new();
        for ((name, t), &b) in self.cells.iter().zip(bits) {
            if b {
                relations.entry(name.clone()).or_default().insert(t.clone());
            }
        }
        Structure::new(element_names(self.n), self.vocab.clone(), relations).expect("valid by construction")
    }

    fn value(&self, values: &[Tv]) -> Tv {
        let mut env = vec![0; self.slots];
        kleene(&self.root, values, &mut env, self.n)
    }

    /// Whether some transposition maps the decided prefix to a smaller vector.
    fn dominated(&self, values: &[Tv]) -> bool {
        self.swaps.iter().any(|image| {
            for (c, &v) in values.iter().enumerate() {
                let w = values[image[c]];
                if v == Tv::U || w == Tv::U {
                    return false;
                }
                // the swapped vector holds `w` at position `c`
                match (w, v) {
                    (Tv::F, Tv::T) => return true,
                    (Tv::T, Tv::F) => return false,
                    _ => {}
                }
            }
            false
        })
    }

    /// Explores the subtree under `values[..depth]`; returns the least model below it.
    fn explore(&self, values: &mut Vec<Tv>, depth: usize, stats: &mut SearchStats, stop: &dyn Fn() -> bool) -> Option<Vec<bool>> {
        stats.nodes_visited += 1;
        if stop() || (depth > 0 && self.dominated(values)) {
            return None;
        }
        match self.value(values) {
            Tv::F => {
                if depth == values.len() {
                    stats.structures_examined += 1;
                }
                None
            }
            Tv::T => {
                stats.structures_examined += 1;
                Some(values.iter().map(|&v| v == Tv::T).collect())
            }
            Tv::U => {
                for b in [Tv::F, Tv::T] {
                    values[depth] = b;
                    if let Some(m) = self.explore(values, depth + 1, stats, stop) {
                        return Some(m);
                    }
                }
                values[depth] = Tv::U;
                None
            }
        }
    }

    /// Prefixes of length `SPLIT_DEPTH` (or less where the value is already decided) that
    /// survive pruning, in search order.
    fn frontier(&self, values: &mut Vec<Tv>, depth: usize, limit: usize, stats: &mut SearchStats, out: &mut Vec<(Vec<Tv>, usize)>) {
        if depth == limit {
            out.push((values.clone(), depth));
            return;
        }
        stats.nodes_visited += 1;
        if depth > 0 && self.dominated(values) {
            return;
        }
        match self.value(values) {
            Tv::F => {}
            Tv::T => out.push((values.clone(), depth)),
            Tv::U => {
                for b in [Tv::F, Tv::T] {
                    values[depth] = b;
                    self.frontier(values, depth + 1, limit, stats, out);
                }
                values[depth] = Tv::U;
            }
        }
    }

    fn run(&self, parallel: bool) -> (Option<Vec<bool>>, SearchStats) {
        let mut stats = SearchStats::default();
        let mut values = vec![Tv::U; self.cells.len()];
        let limit = SPLIT_DEPTH.min(self.cells.len());
        let mut items = Vec::new();
        self.frontier(&mut values, 0, limit, &mut stats, &mut items);
        let best = AtomicUsize::new(usize::MAX);
        let work = |(i, (prefix, depth)): (usize, &(Vec<Tv>, usize))| {
            let mut local = SearchStats::default();
            let stop = || best.load(Ordering::Relaxed) < i;
            let mut values = prefix.clone();
            let found = self.explore(&mut values, *depth, &mut local, &stop);
            if found.is_some() {
                best.fetch_min(i, Ordering::Relaxed);
            }
            (found, local)
        };
        let results: Vec<(Option<Vec<bool>>, SearchStats)> = if parallel {
            items.par_iter().enumerate().map(work).collect()
        } else {
            let mut out = Vec::new();
            for item in items.iter().enumerate() {
                let r = work(item);
                let done = r.0.is_some();
                out.push(r);
                if done {
                    break;
                }
            }
            out
        };
        // subtrees after the winner are discarded, so the counts do not depend on scheduling
        for (found, local) in results {
            stats.add(&local);
            if found.is_some() {
                return (found, stats);
            }
        }
        (None, stats)
    }
}

fn compile(f: &Formula, offsets: &BTreeMap<String, usize>, slots: &mut BTreeMap<Var, Slot>) -> Node {
    let mut slot = |v: &Var| {
        let next = slots.len();
        *slots.entry(v.clone()).or_insert(next)
    };
    match f {
        Formula::Top => Node::Const(Tv::T),
        Formula::Bottom => Node::Const(Tv::F),
        Formula::Atom(r, args) => match offsets.get(r) {
            Some(&o) => Node::Atom(o, args.iter().map(&mut slot).collect()),
            // relation with no cells at this size: only possible for arity 0, which is not declared
            None => Node::Const(Tv::F),
        },
        Formula::Equals(a, b) => Node::Eq(slot(a), slot(b)),
        Formula::Exists(vs, body) => {
            let vs = vs.iter().map(&mut slot).collect();
            Node::Exists(vs, Box::new(compile(body, offsets, slots)))
        }
        Formula::Forall(vs, body) => {
            let vs = vs.iter().map(&mut slot).collect();
            Node::Forall(vs, Box::new(compile(body, offsets, slots)))
        }
        Formula::Count(c, k, v, body) => {
            let v = slot(v);
            Node::Count(*c, *k, v, Box::new(compile(body, offsets, slots)))
        }
        Formula::Not(a) => Node::Not(Box::new(compile(a, offsets, slots))),
        Formula::And(a, b) => Node::And(Box::new(compile(a, offsets, slots)), Box::new(compile(b, offsets, slots))),
        Formula::Or(a, b) => Node::Or(Box::new(compile(a, offsets, slots)), Box::new(compile(b, offsets, slots))),
        Formula::Implies(a, b) => {
            Node::Implies(Box::new(compile(a, offsets, slots)), Box::new(compile(b, offsets, slots)))
        }
    }
}

fn and(a: Tv, b: impl FnOnce() -> Tv) -> Tv {
    match a {
        Tv::F => Tv::F,
        Tv::T => b(),
        Tv::U => match b() {
            Tv::F => Tv::F,
            _ => Tv::U,
        },
    }
}

fn or(a: Tv, b: impl FnOnce() -> Tv) -> Tv {
    and(a.not(), || b().not()).not()
}

/// Calls `visit` on every assignment of `vars`; stops when it returns `false`.
fn assignments(vars: &[Slot], env: &mut Vec<usize>, n: usize, visit: &mut dyn FnMut(&mut Vec<usize>) -> bool) {
    let saved: Vec<usize> = vars.iter().map(|&v| env[v]).collect();
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

fn kleene(node: &Node, values: &[Tv], env: &mut Vec<usize>, n: usize) -> Tv {
    match node {
        Node::Const(v) => *v,
        Node::Atom(offset, args) => {
            let cell = args.iter().fold(0, |acc, &a| acc * n + env[a]);
            values[offset + cell]
        }
        Node::Eq(a, b) => {
            if env[*a] == env[*b] {
                Tv::T
            } else {
                Tv::F
            }
        }
        Node::Not(a) => kleene(a, values, env, n).not(),
        Node::And(a, b) => {
            let x = kleene(a, values, env, n);
            and(x, || kleene(b, values, env, n))
        }
        Node::Or(a, b) => {
            let x = kleene(a, values, env, n);
            or(x, || kleene(b, values, env, n))
        }
        Node::Implies(a, b) => {
            let x = kleene(a, values, env, n).not();
            or(x, || kleene(b, values, env, n))
        }
        Node::Exists(vs, body) | Node::Forall(vs, body) => {
            let (absorbing, neutral) = if matches!(node, Node::Exists(..)) { (Tv::T, Tv::F) } else { (Tv::F, Tv::T) };
            let mut result = neutral;
            assignments(vs, env, n, &mut |env| {
                match kleene(body, values, env, n) {
                    v if v == absorbing => {
                        result = absorbing;
                        return false;
                    }
                    Tv::U => result = Tv::U,
                    _ => {}
                }
                true
            });
            result
        }
        Node::Count(cmp, k, v, body) => {
            let (mut yes, mut maybe) = (0, 0);
            assignments(&[*v], env, n, &mut |env| {
                match kleene(body, values, env, n) {
                    Tv::T => yes += 1,
                    Tv::U => maybe += 1,
                    Tv::F => {}
                }
                !(matches!(cmp, Comparator::AtMost | Comparator::Exactly) && yes > *k)
            });
            let (low, high) = (yes, yes + maybe);
            match cmp {
                Comparator::AtLeast if low >= *k => Tv::T,
                Comparator::AtLeast if high < *k => Tv::F,
                Comparator::AtMost if high <= *k => Tv::T,
                Comparator::AtMost if low > *k => Tv::F,
                Comparator::Exactly if low == *k && high == *k => Tv::T,
                Comparator::Exactly if low > *k || high < *k => Tv::F,
                _ => Tv::U,
            }
        }
    }
}
