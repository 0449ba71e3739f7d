//! Structures and formulae from the separation arguments, and an experiment runner that
//! recomputes every observation with the semantic modules.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::dl::{concept_extension, parse_concept, print_concept, Concept, DlError};
use crate::dlr::{
    dlr_concept_extension, parse_dlr_concept, print_dlr_concept, with_explicit_tops, DlrConcept, DlrError,
    TopMode,
};
use crate::eval::{holds, EvalError};
use crate::fragments::{check_fragment, FragmentId};
use crate::logic::{
    disjoint_copies, disjoint_union, parse_formula_untyped, print_formula, tagged, Comparator, Elem, Formula,
    Structure, StructureError, Var, Vocabulary,
};

/// Text of the agreement corpus shipped with the crate.
pub const CORPUS_V1: &str = include_str!("../data/u1_corpus_v1.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("{what} needs at least {min} elements, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Dl(#[from] DlError),
    #[error(transparent)]
    Dlr(#[from] DlrError),
}

fn graph(n: usize, edges: impl IntoIterator<Item = (Elem, Elem)>) -> Structure {
    let vocab = Vocabulary::from_pairs([("R", 2)]).expect("valid vocabulary");
    let r = edges.into_iter().map(|(a, b)| vec![a, b]).collect();
    Structure::new(crate::gen::element_names(n), vocab, BTreeMap::from([("R".to_string(), r)]))
        .expect("valid structure")
}

/// `K_k`: `k` elements, `R` holds between any two distinct ones.
pub fn gen_clique(k: usize) -> Result<Structure, LabError> {
    if k < 2 {
        return Err(LabError::TooSmall { what: "a clique", min: 2, got: k });
    }
    Ok(graph(k, (0..k).flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| (a, b)))))
}

/// `C_n`: `R = {(i, i+1 mod n)}`.
pub fn gen_directed_cycle(n: usize) -> Result<Structure, LabError> {
    if n < 1 {
        return Err(LabError::TooSmall { what: "a directed cycle", min: 1, got: n });
    }
    Ok(graph(n, (0..n).map(|i| (i, (i + 1) % n))))
}

fn at_least(p: &str, k: usize) -> Formula {
    if k == 0 {
        return Formula::Top;
    }
    let vars: Vec<Var> = (1..=k).map(|i| Var::new(format!("x{i}"))).collect();
    let mut parts = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            parts.push(Formula::not(Formula::Equals(vars[i].clone(), vars[j].clone())));
        }
    }
    parts.extend(vars.iter().map(|v| Formula::Atom(p.to_string(), vec![v.clone()])));
    Formula::Exists(vars, Box::new(Formula::conj(parts)))
}

/// Sentence without counting quantifiers saying `|P| cmp k`.
pub fn counting_formula(p: &str, cmp: Comparator, k: usize) -> Formula {
    match cmp {
        Comparator::AtLeast => at_least(p, k),
        Comparator::AtMost => Formula::not(at_least(p, k + 1)),
        Comparator::Exactly => Formula::and(at_least(p, k), Formula::not(at_least(p, k + 1))),
    }
}

/// Sentences of the agreement corpus.
pub fn parse_corpus(text: &str) -> Result<Vec<Formula>, LabError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f = parse_formula_untyped(line).map_err(|e| LabError::Corpus { line: i + 1, message: e.to_string() })?;
        let d = check_fragment(&f, FragmentId::U1);
        if !d.verdict || !f.is_sentence() {
            return Err(LabError::Corpus { line: i + 1, message: format!("not a U1 sentence: {d}") });
        }
        out.push(f);
    }
    Ok(out)
}

pub fn corpus() -> Vec<Formula> {
    parse_corpus(CORPUS_V1).expect("the shipped corpus is valid")
}

/// What a probe evaluates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Sentence(Formula),
    Dl(Concept),
    Dlr(DlrConcept, TopMode),
}

impl Subject {
    pub fn text(&self) -> String {
        match self {
            Subject::Sentence(f) => print_formula(f),
            Subject::Dl(c) => print_concept(c),
            Subject::Dlr(c, _) => print_dlr_concept(c),
        }
    }

    fn observe(&self, s: &Structure) -> Result<Observation, LabError> {
        Ok(match self {
            Subject::Sentence(f) => Observation::Truth(holds(s, f)?),
            Subject::Dl(c) => Observation::Extension(names(s, &concept_extension(s, c)?)),
            Subject::Dlr(c, mode) => Observation::Extension(names(s, &dlr_concept_extension(s, c, *mode)?)),
        })
    }
}

fn names(s: &Structure, set: &BTreeSet<Elem>) -> BTreeSet<String> {
    set.iter().map(|&e| s.element_name(e).to_string()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extent {
    Empty,
    Nonempty,
    Full,
}

/// The property a probe's observations must have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// The sentence has these truth values on the experiment's structures.
    Truths(Vec<bool>),
    /// The sentence has the same truth value on every structure.
    Agree,
    /// The extension on each structure has this extent. `Full` also counts as nonempty.
    Extents(Vec<Extent>),
    /// The extension on `s ⊎ s` is the two tagged copies of the extension on `s`, where `s`
    /// is the first structure. DLR concepts are evaluated with the tops of `s` materialised
    /// as relations, so both copies keep their own tops.
    CopyClosed,
    /// The negation of [`Claim::CopyClosed`].
    NotCopyClosed,
}

#[derive(Debug, Clone)]
pub struct Probe {
    pub subject: Subject,
    pub claim: Claim,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub name: String,
    pub description: String,
    pub structures: Vec<(String, Structure)>,
    /// The structures are required to have equal domain sizes.
    pub equal_sizes: bool,
    pub probes: Vec<Probe>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Observation {
    Truth(bool),
    Extension(BTreeSet<String>),
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    pub subject: String,
    pub claim: String,
    /// One observation per structure, or for copy claims the observations on `s` and `s ⊎ s`.
    pub observed: Vec<Observation>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentResult {
    pub name: String,
    pub description: String,
    pub sizes: Vec<usize>,
    pub probes: Vec<ProbeResult>,
    pub passed: bool,
}

fn extent_of(o: &Observation, size: usize) -> Option<Extent> {
    match o {
        Observation::Extension(e) if e.is_empty() => Some(Extent::Empty),
        Observation::Extension(e) if e.len() == size => Some(Extent::Full),
        Observation::Extension(_) => Some(Extent::Nonempty),
        Observation::Truth(_) => None,
    }
}

fn describe(claim: &Claim) -> String {
    match claim {
        Claim::Truths(ts) => format!("truths {ts:?}"),
        Claim::Agree => "agree".into(),
        Claim::Extents(es) => {
            let es: Vec<String> = es.iter().map(|e| format!("{e:?}").to_lowercase()).collect();
            format!("extents [{}]", es.join(", "))
        }
        Claim::CopyClosed => "closed under disjoint copies".into(),
        Claim::NotCopyClosed => "not closed under disjoint copies".into(),
    }
}

fn run_probe(e: &Experiment, p: &Probe) -> Result<ProbeResult, LabError> {
    let (observed, passed) = match &p.claim {
        Claim::CopyClosed | Claim::NotCopyClosed => {
            let s = &e.structures[0].1;
            let s = match p.subject {
                Subject::Dlr(_, TopMode::Explicit) => with_explicit_tops(s)?,
                _ => s.clone(),
            };
            let double = disjoint_union(&s, &s)?;
            let (single, both) = (p.subject.observe(&s)?, p.subject.observe(&double)?);
            let closed = match (&single, &both) {
                (Observation::Extension(a), Observation::Extension(b)) => {
                    let copies: BTreeSet<String> =
                        (1..=2).flat_map(|i| a.iter().map(move |n| tagged(n, i))).collect();
                    &copies == b
                }
                (a, b) => a == b,
            };
            (vec![single, both], closed == (p.claim == Claim::CopyClosed))
        }
        claim => {
            let observed = e
                .structures
                .iter()
                .map(|(_, s)| p.subject.observe(s))
                .collect::<Result<Vec<_>, _>>()?;
            let passed = match claim {
                Claim::Truths(ts) => {
                    observed.iter().map(|o| matches!(o, Observation::Truth(true))).eq(ts.iter().copied())
                        && observed.iter().all(|o| matches!(o, Observation::Truth(_)))
                }
                Claim::Agree => observed.windows(2).all(|w| w[0] == w[1]),
                Claim::Extents(es) => {
                    es.len() == observed.len()
                        && observed.iter().zip(&e.structures).zip(es).all(|((o, (_, s)), want)| {
                            match (extent_of(o, s.size()), want) {
                                (Some(Extent::Full), Extent::Nonempty) => s.size() > 0,
                                (got, want) => got == Some(*want),
                            }
                        })
                }
                _ => unreachable!(),
            };
            (observed, passed)
        }
    };
    Ok(ProbeResult { subject: p.subject.text(), claim: describe(&p.claim), observed, passed })
}

pub fn run_experiment(e: &Experiment) -> Result<ExperimentResult, LabError> {
    let sizes: Vec<usize> = e.structures.iter().map(|(_, s)| s.size()).collect();
    let probes = e.probes.iter().map(|p| run_probe(e, p)).collect::<Result<Vec<_>, _>>()?;
    let parity = !e.equal_sizes || sizes.windows(2).all(|w| w[0] == w[1]);
    let passed = parity && probes.iter().all(|p| p.passed);
    Ok(ExperimentResult { name: e.name.clone(), description: e.description.clone(), sizes, probes, passed })
}

fn sentence(text: &str) -> Formula {
    parse_formula_untyped(text).expect("built-in sentence parses")
}

fn agreement(corpus: &[Formula]) -> impl Iterator<Item = Probe> + '_ {
    corpus.iter().map(|f| Probe { subject: Subject::Sentence(f.clone()), claim: Claim::Agree })
}

fn clique_copies(k: usize, corpus: &[Formula]) -> Experiment {
    let a = disjoint_copies(&gen_clique(k).expect("k >= 2"), k + 1).expect("disjoint copies");
    let b = disjoint_copies(&gen_clique(k + 1).expect("k >= 2"), k).expect("disjoint copies");
    let number = parse_dlr_concept(&format!("(<={}[$2] R)", k - 1)).expect("built-in concept parses");
    let mut probes = vec![Probe {
        subject: Subject::Dlr(number, TopMode::Full),
        claim: Claim::Extents(vec![Extent::Full, Extent::Empty]),
    }];
    probes.extend(agreement(corpus));
    Experiment {
        name: format!("clique-copies-k{k}"),
        description: format!(
            "{} copies of K{k} against {k} copies of K{}: a number restriction separates them, U1 sentences agree",
            k + 1,
            k + 1
        ),
        structures: vec![(format!("{}xK{k}", k + 1), a), (format!("{k}xK{}", k + 1), b)],
        equal_sizes: true,
        probes,
    }
}

/// The fixed catalogue of separation experiments.
pub fn separation_experiments() -> Vec<Experiment> {
    let corpus = corpus();
    let k2 = gen_clique(2).expect("valid size");
    let k3 = gen_clique(3).expect("valid size");
    let cover = sentence("E x. A y z. (R(y,z) -> (x = y | x = z))");

    let c3s = disjoint_copies(&gen_directed_cycle(3).expect("valid size"), 4).expect("disjoint copies");
    let c4s = disjoint_copies(&gen_directed_cycle(4).expect("valid size"), 3).expect("disjoint copies");
    let triangle = sentence("E x y z. (R(x,y) & R(y,z) & R(z,x))");
    let mut cycle_probes = vec![Probe { subject: Subject::Sentence(triangle), claim: Claim::Truths(vec![true, false]) }];
    cycle_probes.extend(agreement(&corpus));

    let vocab = Vocabulary::from_pairs([("R", 2), ("A", 1)]).expect("valid vocabulary");
    let point = Structure::from_named(
        vec!["a".into()],
        vocab,
        BTreeMap::from([
            ("R".to_string(), vec![vec!["a".to_string(), "a".to_string()]]),
            ("A".to_string(), vec![vec!["a".to_string()]]),
        ]),
    )
    .expect("valid structure");
    let double = disjoint_union(&point, &point).expect("disjoint union");
    let witness = parse_concept("~exists ~R.(A)").expect("built-in concept parses");
    let mut copy_probes = vec![
        Probe { subject: Subject::Sentence(sentence("E x y. ~R(x,y)")), claim: Claim::Truths(vec![false, true]) },
        Probe { subject: Subject::Dl(witness.clone()), claim: Claim::Extents(vec![Extent::Nonempty, Extent::Empty]) },
        Probe { subject: Subject::Dl(witness), claim: Claim::NotCopyClosed },
    ];
    for text in [
        "~exists[$1] ~R",
        "exists ~R|$1,$2 . A",
        "exists (R|$1,$2 o ~R|$2,$1) . ~A",
        "exists[$2] (R & ($1/2:~A))",
    ] {
        let c = parse_dlr_concept(text).expect("built-in concept parses");
        copy_probes.push(Probe { subject: Subject::Dlr(c, TopMode::Explicit), claim: Claim::CopyClosed });
    }

    vec![
        Experiment {
            name: "k2-k3-pebble".into(),
            description: "K2 against K3: a sentence with three variables saying some element touches every edge".into(),
            structures: vec![("K2".into(), k2), ("K3".into(), k3)],
            equal_sizes: false,
            probes: vec![Probe { subject: Subject::Sentence(cover), claim: Claim::Truths(vec![true, false]) }],
        },
        Experiment {
            name: "gnfo-cycles".into(),
            description: "four directed 3-cycles against three directed 4-cycles: the triangle sentence separates them, U1 sentences agree".into(),
            structures: vec![("4xC3".into(), c3s), ("3xC4".into(), c4s)],
            equal_sizes: true,
            probes: cycle_probes,
        },
        Experiment {
            name: "prop2-disjoint-copies".into(),
            description: "a one-point loop against its disjoint double: role negation sees across copies, DLR concepts do not".into(),
            structures: vec![("loop".into(), point), ("loop+loop".into(), double)],
            equal_sizes: false,
            probes: copy_probes,
        },
        clique_copies(2, &corpus),
        clique_copies(3, &corpus),
    ]
}

/// Every structure of the catalogue, named `experiment/structure`.
pub fn separation_structures() -> Vec<(String, Structure)> {
    separation_experiments()
        .into_iter()
        .flat_map(|e| {
            let name = e.name;
            e.structures.into_iter().map(move |(s, st)| (format!("{name}/{s}"), st))
        })
        .collect()
}
