//! Syntactic membership in U1(wo=), FU1, U1, UC1 and FO2.
//!
//! Each quantifier block `E x1..xk. phi` (universal blocks are checked the same way) is
//! inspected by flattening the Boolean skeleton of `phi` into leaves. A leaf is either a
//! member of the fragment in its own right (a unary atom, top/bottom, a nested block, or
//! equality where the fragment allows it freely) or a higher-arity atom whose variable set
//! is its X. All higher-arity atoms of one block must share one X, and at most one variable
//! may stay free once the block is closed.
//!
//! A block with a single X-atom over one variable is routed through the unary-atom case;
//! treating it as the block's X instead would accept the same formulae.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::logic::{Formula, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FragmentId {
    #[serde(rename = "U1_WO_EQ")]
    U1WoEq,
    #[serde(rename = "FU1")]
    Fu1,
    #[serde(rename = "U1")]
    U1,
    #[serde(rename = "UC1")]
    Uc1,
    #[serde(rename = "FO2")]
    Fo2,
}

impl FragmentId {
    pub const ALL: [FragmentId; 5] =
        [FragmentId::U1WoEq, FragmentId::Fu1, FragmentId::U1, FragmentId::Uc1, FragmentId::Fo2];

    /// Short lowercase name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            FragmentId::U1WoEq => "u1woeq",
            FragmentId::Fu1 => "fu1",
            FragmentId::U1 => "u1",
            FragmentId::Uc1 => "uc1",
            FragmentId::Fo2 => "fo2",
        }
    }
}

impl fmt::Display for FragmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FragmentId::U1WoEq => "U1(wo=)",
            FragmentId::Fu1 => "FU1",
            FragmentId::U1 => "U1",
            FragmentId::Uc1 => "UC1",
            FragmentId::Fo2 => "FO2",
        })
    }
}

impl FromStr for FragmentId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        FragmentId::ALL
            .into_iter()
            .find(|f| f.cli_name() == lower || f.to_string().to_ascii_lowercase() == lower)
            .ok_or_else(|| format!("unknown fragment `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    Uniformity,
    OneDimensionality,
    EqualityPlacement,
    CountingQuantifier,
    VariableCount,
    Arity,
}

impl ViolationKind {
    pub fn code(self) -> &'static str {
        match self {
            ViolationKind::Uniformity => "UNIFORMITY",
            ViolationKind::OneDimensionality => "ONE_DIMENSIONALITY",
            ViolationKind::EqualityPlacement => "EQUALITY_PLACEMENT",
            ViolationKind::CountingQuantifier => "COUNTING_QUANTIFIER",
            ViolationKind::VariableCount => "VARIABLE_COUNT",
            ViolationKind::Arity => "ARITY",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Child indices from the root: negation and quantifiers have child 0, binary connectives 0 and 1.
    pub path: Vec<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub fragment: FragmentId,
    pub verdict: bool,
    pub violations: Vec<Violation>,
}

impl Diagnostic {
    fn from_violations(fragment: FragmentId, violations: Vec<Violation>) -> Self {
        Diagnostic { fragment, verdict: violations.is_empty(), violations }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.verdict {
            return write!(f, "in {}", self.fragment);
        }
        write!(f, "not in {}", self.fragment)?;
        for v in &self.violations {
            write!(f, "\n  {} at {:?}: {}", v.kind, v.path, v.message)?;
        }
        Ok(())
    }
}

fn show(vars: &BTreeSet<Var>) -> String {
    let names: Vec<&str> = vars.iter().map(Var::name).collect();
    format!("{{{}}}", names.join(", "))
}

fn distinct(args: &[Var]) -> BTreeSet<Var> {
    args.iter().cloned().collect()
}

fn arity_violations(f: &Formula) -> Vec<Violation> {
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    let mut out = Vec::new();
    walk(f, &mut Vec::new(), &mut |g, path| {
        if let Formula::Atom(r, args) = g {
            let first = *seen.entry(r.as_str()).or_insert(args.len());
            if first != args.len() {
                out.push(Violation {
                    kind: ViolationKind::Arity,
                    path: path.to_vec(),
                    message: format!(
                        "`{r}` is used with {} arguments here and {first} elsewhere",
                        args.len()
                    ),
                });
            }
        }
    });
    out
}

/// Pre-order traversal with paths.
fn walk<'a>(f: &'a Formula, path: &mut Vec<usize>, visit: &mut impl FnMut(&'a Formula, &[usize])) {
    visit(f, path);
    for (i, c) in f.children().into_iter().enumerate() {
        path.push(i);
        walk(c, path, visit);
        path.pop();
    }
}

struct XAtom {
    vars: BTreeSet<Var>,
    path: Vec<usize>,
    equality: bool,
}

struct Checker {
    frag: FragmentId,
    out: Vec<Violation>,
}

impl Checker {
    fn report(&mut self, kind: ViolationKind, path: &[usize], message: String) {
        self.out.push(Violation { kind, path: path.to_vec(), message });
    }

    /// `f` must be a member of the fragment on its own, outside any enclosing block.
    fn member(&mut self, f: &Formula, path: &mut Vec<usize>) {
        match f {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(r, args) => {
                let vars = distinct(args);
                if vars.len() > 1 {
                    self.report(
                        ViolationKind::OneDimensionality,
                        path,
                        format!("atom `{r}` over {} occurs outside any quantifier block", show(&vars)),
                    );
                }
            }
            Formula::Equals(a, b) => match self.frag {
                FragmentId::U1WoEq => self.report(
                    ViolationKind::EqualityPlacement,
                    path,
                    "equality is not allowed in U1(wo=)".into(),
                ),
                FragmentId::Fu1 if a != b => self.report(
                    ViolationKind::EqualityPlacement,
                    path,
                    format!("equality {a} = {b} stands in for a binary atom outside any quantifier block"),
                ),
                _ => {}
            },
            Formula::Not(_) | Formula::And(..) | Formula::Or(..) | Formula::Implies(..) => {
                for (i, c) in f.children().into_iter().enumerate() {
                    path.push(i);
                    self.member(c, path);
                    path.pop();
                }
            }
            Formula::Exists(vs, body) | Formula::Forall(vs, body) => self.block(f, vs, body, path),
            Formula::Count(_, _, v, body) => {
                if self.frag != FragmentId::Uc1 {
                    self.report(
                        ViolationKind::CountingQuantifier,
                        path,
                        format!("counting quantifiers are not allowed in {}", self.frag),
                    );
                }
                self.block(f, std::slice::from_ref(v), body, path);
            }
        }
    }

    fn block(&mut self, whole: &Formula, vs: &[Var], body: &Formula, path: &mut Vec<usize>) {
        let free = whole.free_variables();
        if free.len() > 1 {
            let names: Vec<&str> = vs.iter().map(Var::name).collect();
            self.report(
                ViolationKind::OneDimensionality,
                path,
                format!("block over {} leaves {} free", names.join(" "), show(&free)),
            );
        }
        let mut atoms = Vec::new();
        path.push(0);
        self.leaves(body, path, &mut atoms);
        path.pop();
        self.uniformity(atoms);
    }

    fn leaves(&mut self, f: &Formula, path: &mut Vec<usize>, atoms: &mut Vec<XAtom>) {
        match f {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(_, args) => {
                let vars = distinct(args);
                if vars.len() > 1 {
                    atoms.push(XAtom { vars, path: path.clone(), equality: false });
                }
            }
            Formula::Equals(a, b) => match self.frag {
                FragmentId::U1WoEq => self.report(
                    ViolationKind::EqualityPlacement,
                    path,
                    "equality is not allowed in U1(wo=)".into(),
                ),
                FragmentId::Fu1 if a != b => atoms.push(XAtom {
                    vars: [a.clone(), b.clone()].into_iter().collect(),
                    path: path.clone(),
                    equality: true,
                }),
                _ => {}
            },
            Formula::Not(_) | Formula::And(..) | Formula::Or(..) | Formula::Implies(..) => {
                for (i, c) in f.children().into_iter().enumerate() {
                    path.push(i);
                    self.leaves(c, path, atoms);
                    path.pop();
                }
            }
            Formula::Exists(..) | Formula::Forall(..) | Formula::Count(..) => self.member(f, path),
        }
    }

    fn uniformity(&mut self, atoms: Vec<XAtom>) {
        let (eqs, rels): (Vec<XAtom>, Vec<XAtom>) = atoms.into_iter().partition(|a| a.equality);
        let shared = match self.shared_set(&rels, ViolationKind::Uniformity) {
            Some(x) => Some(x),
            None if rels.is_empty() => self.shared_set(&eqs, ViolationKind::EqualityPlacement),
            None => None,
        };
        let rel_sets: BTreeSet<&BTreeSet<Var>> = rels.iter().map(|a| &a.vars).collect();
        for e in &eqs {
            let fits = match &shared {
                Some(x) => &e.vars == x,
                None => rels.is_empty() || rel_sets.contains(&e.vars),
            };
            // with no relation atoms, disagreeing equalities were reported by shared_set already
            if !fits && !(rels.is_empty() && shared.is_none()) {
                let x = shared.as_ref().map(show).unwrap_or_else(|| "ambiguous".into());
                self.report(
                    ViolationKind::EqualityPlacement,
                    &e.path,
                    format!(
                        "equality over {} stands in for a binary atom but the block's shared variable set is {x}",
                        show(&e.vars)
                    ),
                );
            }
        }
    }

    /// The variable set shared by `atoms`, reporting the atoms that deviate from it. A strict
    /// majority set is taken as the intended one; on a tie every atom is reported.
    fn shared_set(&mut self, atoms: &[XAtom], kind: ViolationKind) -> Option<BTreeSet<Var>> {
        let mut counts: BTreeMap<&BTreeSet<Var>, usize> = BTreeMap::new();
        for a in atoms {
            *counts.entry(&a.vars).or_default() += 1;
        }
        if counts.len() <= 1 {
            return counts.into_keys().next().cloned();
        }
        let top = *counts.values().max().unwrap();
        let leaders: Vec<&BTreeSet<Var>> =
            counts.iter().filter(|(_, &c)| c == top).map(|(s, _)| *s).collect();
        let mode = (leaders.len() == 1).then(|| leaders[0].clone());
        let all_sets: Vec<String> = counts.keys().map(|s| show(s)).collect();
        for a in atoms {
            if mode.as_ref() != Some(&a.vars) {
                let message = match &mode {
                    Some(x) => format!(
                        "atom over {} differs from the block's shared variable set {}",
                        show(&a.vars),
                        show(x)
                    ),
                    None => format!(
                        "atoms in one block use different variable sets: {}",
                        all_sets.join(", ")
                    ),
                };
                self.report(kind, &a.path, message);
            }
        }
        mode
    }
}

/// Decides membership of `f` in `frag`. Never fails: violations are returned as data.
pub fn check_fragment(f: &Formula, frag: FragmentId) -> Diagnostic {
    if frag == FragmentId::Fo2 {
        return check_fo2(f);
    }
    let mut c = Checker { frag, out: arity_violations(f) };
    c.member(f, &mut Vec::new());
    Diagnostic::from_violations(frag, c.out)
}

/// Two-variable logic with equality: at most two variable names, single-variable blocks,
/// no counting.
pub fn check_fo2(f: &Formula) -> Diagnostic {
    let mut out = arity_violations(f);
    let vars = f.variables();
    if vars.len() > 2 {
        out.push(Violation {
            kind: ViolationKind::VariableCount,
            path: Vec::new(),
            message: format!("uses {} variables {}; at most two are allowed", vars.len(), show(&vars)),
        });
    }
    walk(f, &mut Vec::new(), &mut |g, path| match g {
        Formula::Exists(vs, _) | Formula::Forall(vs, _) if vs.len() > 1 => out.push(Violation {
            kind: ViolationKind::VariableCount,
            path: path.to_vec(),
            message: format!("quantifier block binds {} variables at once", vs.len()),
        }),
        Formula::Count(..) => out.push(Violation {
            kind: ViolationKind::CountingQuantifier,
            path: path.to_vec(),
            message: "counting quantifiers are not allowed in FO2".into(),
        }),
        _ => {}
    });
    Diagnostic::from_violations(FragmentId::Fo2, out)
}
