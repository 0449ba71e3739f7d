//! Symbolic semantics over all interpretations of a vocabulary on a fixed domain size.
//!
//! Every ground atom is a BDD variable, so a formula or concept evaluated at an element is a
//! Boolean function of the whole interpretation. Two sides agree on every structure of that
//! size iff their functions are equal. The evaluators here are written from the definitions,
//! independently of the library's own semantics.

use std::collections::{BTreeMap, BTreeSet};

use biodivine_lib_bdd::{Bdd, BddValuation, BddVariable, BddVariableSet};
use u1kit::dl::{Concept, Role};
use u1kit::dlr::{DlrBinRel, DlrConcept, DlrRole};
use u1kit::logic::{Elem, Formula, Tuple, Var};
use u1kit::{Structure, Vocabulary};

/// All tuples of `arity` elements over `0..n`, lexicographically.
pub fn tuples(n: usize, arity: usize) -> Vec<Tuple> {
    let mut out: Vec<Tuple> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

pub struct Symbolic {
    pub n: usize,
    vocab: Vocabulary,
    vars: BddVariableSet,
    cells: BTreeMap<(String, Tuple), BddVariable>,
}

impl Symbolic {
    pub fn new(vocab: &Vocabulary, n: usize) -> Self {
        let mut cells = BTreeMap::new();
        for (name, arity) in vocab.iter() {
            for t in tuples(n, arity) {
                let index = cells.len();
                cells.insert((name.to_string(), t), BddVariable::from_index(index));
            }
        }
        let count = u16::try_from(cells.len()).expect("cell count fits in u16");
        Symbolic { n, vocab: vocab.clone(), vars: BddVariableSet::new_anonymous(count), cells }
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    fn constant(&self, b: bool) -> Bdd {
        if b {
            self.vars.mk_true()
        } else {
            self.vars.mk_false()
        }
    }

    fn cell(&self, name: &str, t: &[Elem]) -> Bdd {
        let v = self.cells.get(&(name.to_string(), t.to_vec()));
        self.vars.mk_var(*v.unwrap_or_else(|| panic!("no cell {name}{t:?}")))
    }

    fn any(&self, parts: impl IntoIterator<Item = Bdd>) -> Bdd {
        parts.into_iter().fold(self.constant(false), |acc, b| acc.or(&b))
    }

    fn all(&self, parts: impl IntoIterator<Item = Bdd>) -> Bdd {
        parts.into_iter().fold(self.constant(true), |acc, b| acc.and(&b))
    }

    /// The valuation describing `s`, which must have this domain size and vocabulary.
    pub fn valuation(&self, s: &Structure) -> BddValuation {
        assert_eq!(s.size(), self.n);
        let mut val = BddValuation::all_false(self.vars.num_vars());
        for ((name, t), v) in &self.cells {
            if s.holds(name, t) {
                val.set(*v);
            }
        }
        val
    }

    /// The structure described by `val`.
    pub fn structure(&self, val: &BddValuation) -> Structure {
        let mut relations: BTreeMap<String, BTreeSet<Tuple>> = BTreeMap::new();
        for ((name, t), v) in &self.cells {
            if val.value(*v) {
                relations.entry(name.clone()).or_default().insert(t.clone());
            }
        }
        let domain = (0..self.n).map(|i| format!("e{i}")).collect();
        Structure::new(domain, self.vocab.clone(), relations).expect("valid by construction")
    }

    /// First-order formula under `env`. Counting quantifiers are not supported.
    pub fn formula(&self, f: &Formula, env: &mut BTreeMap<Var, Elem>) -> Bdd {
        match f {
            Formula::Top => self.constant(true),
            Formula::Bottom => self.constant(false),
            Formula::Atom(name, args) => {
                let t: Tuple = args.iter().map(|v| env[v]).collect();
                self.cell(name, &t)
            }
            Formula::Equals(a, b) => self.constant(env[a] == env[b]),
            Formula::Not(a) => self.formula(a, env).not(),
            Formula::And(a, b) => self.formula(a, env).and(&self.formula(b, env)),
            Formula::Or(a, b) => self.formula(a, env).or(&self.formula(b, env)),
            Formula::Implies(a, b) => self.formula(a, env).not().or(&self.formula(b, env)),
            Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
                let existential = matches!(f, Formula::Exists(..));
                let saved: Vec<Option<Elem>> = vs.iter().map(|v| env.get(v).copied()).collect();
                let mut parts = Vec::new();
                for t in tuples(self.n, vs.len()) {
                    for (v, &e) in vs.iter().zip(&t) {
                        env.insert(v.clone(), e);
                    }
                    parts.push(self.formula(body, env));
                }
                for (v, old) in vs.iter().zip(saved) {
                    match old {
                        Some(e) => env.insert(v.clone(), e),
                        None => env.remove(v),
                    };
                }
                if existential {
                    self.any(parts)
                } else {
                    self.all(parts)
                }
            }
            Formula::Count(..) => panic!("counting quantifiers have no symbolic evaluator"),
        }
    }

    /// One function per element: the formula with its free variable (if any) set to it.
    pub fn formula_extension(&self, f: &Formula) -> Vec<Bdd> {
        let free: Vec<Var> = f.free_variables().into_iter().collect();
        assert!(free.len() <= 1, "more than one free variable");
        (0..self.n)
            .map(|u| {
                let mut env: BTreeMap<Var, Elem> = free.iter().map(|v| (v.clone(), u)).collect();
                self.formula(f, &mut env)
            })
            .collect()
    }

    fn dl_role(&self, r: &Role) -> (usize, BTreeMap<Tuple, Bdd>) {
        let empty = |arity: usize| -> (usize, BTreeMap<Tuple, Bdd>) {
            (arity, tuples(self.n, arity).into_iter().map(|t| (t, self.constant(false))).collect())
        };
        match r {
            Role::Atomic(name) => {
                let arity = self.vocab.arity(name).expect("declared role");
                (arity, tuples(self.n, arity).into_iter().map(|t| { let b = self.cell(name, &t); (t, b) }).collect())
            }
            Role::Epsilon => (2, tuples(self.n, 2).into_iter().map(|t| { let b = self.constant(t[0] == t[1]); (t, b) }).collect()),
            Role::Not(a) => {
                let (arity, m) = self.dl_role(a);
                (arity, m.into_iter().map(|(t, b)| (t, b.not())).collect())
            }
            Role::And(a, b) => {
                let ((ka, ma), (kb, mb)) = (self.dl_role(a), self.dl_role(b));
                if ka != kb {
                    return empty(2);
                }
                (ka, ma.into_iter().map(|(t, x)| { let y = x.and(&mb[&t]); (t, y) }).collect())
            }
            Role::Apply(sigma, a) => {
                let (k, m) = self.dl_role(a);
                if sigma.source() != k {
                    return empty(2);
                }
                let target = sigma.target();
                let out = tuples(self.n, target)
                    .into_iter()
                    .map(|u| {
                        let pre: Tuple = (1..=k).map(|i| u[sigma.get(i) - 1]).collect();
                        (u, m[&pre].clone())
                    })
                    .collect();
                (target, out)
            }
        }
    }

    pub fn dl_concept(&self, c: &Concept) -> Vec<Bdd> {
        match c {
            Concept::Top => vec![self.constant(true); self.n],
            Concept::Bottom => vec![self.constant(false); self.n],
            Concept::Atomic(name) => (0..self.n).map(|u| self.cell(name, &[u])).collect(),
            Concept::Not(a) => self.dl_concept(a).into_iter().map(|b| b.not()).collect(),
            Concept::And(a, b) => {
                self.dl_concept(a).iter().zip(self.dl_concept(b)).map(|(x, y)| x.and(&y)).collect()
            }
            Concept::Exists(r, args) => {
                let (arity, m) = self.dl_role(r);
                assert_eq!(arity, args.len() + 1, "argument count");
                let fillers: Vec<Vec<Bdd>> = args.iter().map(|a| self.dl_concept(a)).collect();
                (0..self.n)
                    .map(|u| {
                        self.any(m.iter().filter(|(t, _)| t[0] == u).map(|(t, b)| {
                            fillers.iter().zip(&t[1..]).fold(b.clone(), |acc, (f, &v)| acc.and(&f[v]))
                        }))
                    })
                    .collect()
            }
        }
    }

    /// DLR role with `topN` read as all of `Δ^n`.
    fn dlr_role(&self, r: &DlrRole) -> BTreeMap<Tuple, Bdd> {
        match r {
            DlrRole::Top(n) => tuples(self.n, *n).into_iter().map(|t| (t, self.constant(true))).collect(),
            DlrRole::Atomic(name) => {
                let arity = self.vocab.arity(name).expect("declared role");
                tuples(self.n, arity).into_iter().map(|t| { let b = self.cell(name, &t); (t, b) }).collect()
            }
            DlrRole::Sel(i, n, c) => {
                let ext = self.dlr_concept(c);
                tuples(self.n, *n).into_iter().map(|t| { let b = ext[t[i - 1]].clone(); (t, b) }).collect()
            }
            DlrRole::Not(a) => self.dlr_role(a).into_iter().map(|(t, b)| (t, b.not())).collect(),
            DlrRole::And(a, b) => {
                let mb = self.dlr_role(b);
                self.dlr_role(a).into_iter().map(|(t, x)| { let y = x.and(&mb[&t]); (t, y) }).collect()
            }
        }
    }

    /// Binary relation as an `n × n` matrix. Star is not supported.
    fn dlr_binrel(&self, e: &DlrBinRel) -> Vec<Vec<Bdd>> {
        let n = self.n;
        match e {
            DlrBinRel::Eps => (0..n).map(|u| (0..n).map(|v| self.constant(u == v)).collect()).collect(),
            DlrBinRel::Proj(r, i, j) => {
                let m = self.dlr_role(r);
                let mut out = vec![vec![self.constant(false); n]; n];
                for (t, b) in &m {
                    let (u, v) = (t[i - 1], t[j - 1]);
                    out[u][v] = out[u][v].or(b);
                }
                out
            }
            DlrBinRel::Comp(a, b) => {
                let (x, y) = (self.dlr_binrel(a), self.dlr_binrel(b));
                (0..n)
                    .map(|u| (0..n).map(|v| self.any((0..n).map(|z| x[u][z].and(&y[z][v])))).collect())
                    .collect()
            }
            DlrBinRel::Union(a, b) => {
                let (x, y) = (self.dlr_binrel(a), self.dlr_binrel(b));
                x.iter().zip(&y).map(|(p, q)| p.iter().zip(q).map(|(s, t)| s.or(t)).collect()).collect()
            }
            DlrBinRel::Star(_) => panic!("star has no symbolic evaluator"),
        }
    }

    /// DLR concept with `topN` read as all of `Δ^n`. Number restrictions are not supported.
    pub fn dlr_concept(&self, c: &DlrConcept) -> Vec<Bdd> {
        match c {
            DlrConcept::Top => vec![self.constant(true); self.n],
            DlrConcept::Atomic(name) => (0..self.n).map(|u| self.cell(name, &[u])).collect(),
            DlrConcept::Not(a) => self.dlr_concept(a).into_iter().map(|b| b.not()).collect(),
            DlrConcept::And(a, b) => {
                self.dlr_concept(a).iter().zip(self.dlr_concept(b)).map(|(x, y)| x.and(&y)).collect()
            }
            DlrConcept::Exists(e, a) => {
                let (m, ext) = (self.dlr_binrel(e), self.dlr_concept(a));
                (0..self.n).map(|u| self.any((0..self.n).map(|v| m[u][v].and(&ext[v])))).collect()
            }
            DlrConcept::ExistsProj(i, r) => {
                let m = self.dlr_role(r);
                (0..self.n)
                    .map(|u| self.any(m.iter().filter(|(t, _)| t[i - 1] == u).map(|(_, b)| b.clone())))
                    .collect()
            }
            DlrConcept::AtMost(..) => panic!("number restrictions have no symbolic evaluator"),
        }
    }
}

/// A structure on which the two per-element functions differ, if any.
pub fn disagreement(sym: &Symbolic, left: &[Bdd], right: &[Bdd]) -> Option<Structure> {
    left.iter()
        .zip(right)
        .find_map(|(a, b)| a.xor(b).sat_witness())
        .map(|val| sym.structure(&val))
}

/// Elements whose function holds in `val`.
pub fn extension_in(ext: &[Bdd], val: &BddValuation) -> BTreeSet<Elem> {
    ext.iter().enumerate().filter(|(_, b)| b.eval_in(val)).map(|(u, _)| u).collect()
}
