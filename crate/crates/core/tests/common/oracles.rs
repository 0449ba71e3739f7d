//! Semantic agreement checks over every interpretation of a small vocabulary.
//!
//! Sizes whose interpretations are few enough are enumerated one by one and compared with
//! the library's semantics on both sides. Larger sizes are compared symbolically, after
//! checking the symbolic evaluators against the library on sampled structures of that size.

use std::collections::BTreeSet;

use biodivine_lib_bdd::Bdd;
use rand::rngs::StdRng;
use rand::Rng;
use u1kit::dl::{concept_extension, parse_concept, Concept};
use u1kit::dlr::{dlr_concept_extension, with_explicit_tops, DlrConcept, DlrRole, TopMode};
use u1kit::eval::satisfaction_set;
use u1kit::fragments::{check_fragment, FragmentId};
use u1kit::gen::{all_structures, cells, random_dlr_concept, random_dlr_role, random_structure, DlrFeatures, FragmentGen};
use u1kit::logic::{disjoint_union, Elem, Formula, Var};
use u1kit::translate::{dlr0_to_fu1, eliminate_comp_union, fu1_to_dl};
use u1kit::{Structure, Vocabulary};

use super::symbolic::{disagreement, extension_in, Symbolic};
use super::{any_structure, rng, vocab};

/// Largest domain size covered.
pub const MAX_SIZE: usize = 3;
/// Sizes with at most this many cells are enumerated structure by structure.
pub const CONCRETE_CELLS: usize = 12;
/// Sampled structures per symbolically checked size.
const CROSS_CHECKS: usize = 16;

/// One binary, one ternary and two unary symbols.
pub fn translation_vocab() -> Vocabulary {
    vocab(&[("R", 2), ("Q", 3), ("P", 1), ("A", 1)])
}

pub const SUB_VOCABULARIES: [[&str; 2]; 6] =
    [["R", "Q"], ["R", "P"], ["R", "A"], ["Q", "P"], ["Q", "A"], ["P", "A"]];

#[derive(Debug, Clone, Default)]
pub struct Coverage {
    /// Structures compared one by one.
    pub enumerated: u64,
    /// Interpretations covered by symbolic comparison.
    pub symbolic: u128,
    /// Sampled structures on which the symbolic evaluators matched the library.
    pub cross_checked: u64,
}

impl Coverage {
    pub fn add(&mut self, other: &Coverage) {
        self.enumerated += other.enumerated;
        self.symbolic += other.symbolic;
        self.cross_checked += other.cross_checked;
    }
}

type Concrete<'a> = &'a dyn Fn(&Structure) -> Result<BTreeSet<Elem>, String>;
type Symbolized<'a> = &'a dyn Fn(&Symbolic) -> Vec<Bdd>;

/// Checks that `left` and `right` define the same set on every structure over `vocab` with
/// at most [`MAX_SIZE`] elements.
pub fn agree_everywhere(
    vocab: &Vocabulary,
    left: (Concrete, Symbolized),
    right: (Concrete, Symbolized),
    rng: &mut StdRng,
) -> Result<Coverage, String> {
    let mut cov = Coverage::default();
    for n in 1..=MAX_SIZE {
        let count = cells(vocab, n).len();
        if count <= CONCRETE_CELLS {
            for s in all_structures(vocab, n) {
                let (l, r) = (left.0(&s)?, right.0(&s)?);
                if l != r {
                    return Err(format!("{l:?} vs {r:?} on {}", s.to_json()));
                }
                cov.enumerated += 1;
            }
            continue;
        }
        let sym = Symbolic::new(vocab, n);
        let (l, r) = (left.1(&sym), right.1(&sym));
        for _ in 0..CROSS_CHECKS {
            let s = random_structure(vocab, n, rng.gen_range(0.1..0.9), rng);
            let val = sym.valuation(&s);
            for (ext, side) in [(&l, &left), (&r, &right)] {
                let (expected, got) = (side.0(&s)?, extension_in(ext, &val));
                if expected != got {
                    return Err(format!(
                        "symbolic evaluator gives {got:?}, library gives {expected:?} on {}",
                        s.to_json()
                    ));
                }
            }
            cov.cross_checked += 1;
        }
        if let Some(s) = disagreement(&sym, &l, &r) {
            return Err(format!("{:?} vs {:?} on {}", left.0(&s)?, right.0(&s)?, s.to_json()));
        }
        cov.symbolic += 1u128 << count;
    }
    Ok(cov)
}

/// The `index`-th generated FU1 formula of a run: grammar depth at most 4, over a fixed
/// two-symbol sub-vocabulary chosen by the index. One case in five is a sentence.
pub fn fu1_case(seed: u64, index: usize) -> (Vocabulary, Formula) {
    let v = translation_vocab().restrict(SUB_VOCABULARIES[index % SUB_VOCABULARIES.len()]);
    let mut rng = rng(seed.wrapping_mul(0x9e37_79b9).wrapping_add(index as u64));
    let x = Var::new("x");
    let free = if rng.gen_ratio(1, 5) { None } else { Some(&x) };
    let f = FragmentGen::new(&v, FragmentId::Fu1).member(4, free, &mut rng);
    (v, f)
}

/// `fu1_to_dl(f)` has the extension of `f` everywhere.
pub fn check_fu1_to_dl(v: &Vocabulary, f: &Formula, rng: &mut StdRng) -> Result<Coverage, String> {
    let d = check_fragment(f, FragmentId::Fu1);
    if !d.verdict {
        return Err(format!("generated formula {f} is not in FU1: {:?}", d.violations));
    }
    let c = fu1_to_dl(f).map_err(|e| format!("{f}: {e}"))?;
    c.validate(v).map_err(|e| format!("{f} gives ill-formed {c}: {e}"))?;
    let sat = |s: &Structure| satisfaction_set(s, f).map(|x| x.elements).map_err(|e| e.to_string());
    let ext = |s: &Structure| concept_extension(s, &c).map_err(|e| e.to_string());
    agree_everywhere(
        v,
        (&sat, &|sym: &Symbolic| sym.formula_extension(f)),
        (&ext, &|sym: &Symbolic| sym.dl_concept(&c)),
        rng,
    )
    .map_err(|e| format!("{f} and {c}: {e}"))
}

/// The `index`-th generated DLR concept without star and number restrictions, depth at most 4.
pub fn dlr0_case(seed: u64, index: usize) -> (Vocabulary, DlrConcept) {
    let v = translation_vocab().restrict(SUB_VOCABULARIES[index % SUB_VOCABULARIES.len()]);
    let mut rng = rng(seed.wrapping_mul(0x85eb_ca6b).wrapping_add(index as u64));
    let c = random_dlr_concept(&v, 4, DlrFeatures::default(), &mut rng);
    (v, c)
}

/// Elimination of composition and union followed by the translation into FU1 yields an FU1
/// formula with the concept's extension everywhere, tops read as `Δ^n`.
pub fn check_dlr0_to_fu1(v: &Vocabulary, c: &DlrConcept, rng: &mut StdRng) -> Result<Coverage, String> {
    let e = eliminate_comp_union(c).map_err(|err| format!("{c}: {err}"))?;
    if e.has_comp_or_union() {
        return Err(format!("{c} eliminates to {e}, which still composes or unites"));
    }
    let f = dlr0_to_fu1(&e, v, TopMode::Full).map_err(|err| format!("{c}: {err}"))?;
    let d = check_fragment(&f, FragmentId::Fu1);
    if !d.verdict {
        return Err(format!("{c} translates to {f}, outside FU1: {:?}", d.violations));
    }
    let source = |s: &Structure| dlr_concept_extension(s, c, TopMode::Full).map_err(|err| err.to_string());
    let eliminated = |s: &Structure| dlr_concept_extension(s, &e, TopMode::Full).map_err(|err| err.to_string());
    let target = |s: &Structure| satisfaction_set(s, &f).map(|x| x.elements).map_err(|err| err.to_string());
    let src_sym = |sym: &Symbolic| sym.dlr_concept(c);
    let mut cov = agree_everywhere(v, (&source, &src_sym), (&eliminated, &|sym: &Symbolic| sym.dlr_concept(&e)), rng)
        .map_err(|err| format!("{c} and its elimination {e}: {err}"))?;
    let more = agree_everywhere(v, (&source, &src_sym), (&target, &|sym: &Symbolic| sym.formula_extension(&f)), rng)
        .map_err(|err| format!("{c} and {f}: {err}"))?;
    cov.add(&more);
    Ok(cov)
}

/// Vocabulary of the number restriction and copy checks.
pub fn dlr_vocab() -> Vocabulary {
    vocab(&[("R", 2), ("Q", 3), ("A", 1)])
}

/// `(<=0[$i]r)` and `~exists[$i]r` on one random structure, for atomic and random roles and
/// every position. Returns the number of comparisons.
pub fn check_at_most_zero(rng: &mut StdRng) -> Result<usize, String> {
    let v = dlr_vocab();
    let s = any_structure(&v, 4, rng);
    let mut roles = vec![DlrRole::atomic("R"), DlrRole::atomic("Q")];
    for n in [2, 3] {
        roles.push(random_dlr_role(&v, n, 3, DlrFeatures { star: true, at_most: true }, rng));
    }
    let mut compared = 0;
    for r in roles {
        let n = r.arity(&v).map_err(|e| e.to_string())?;
        for i in 1..=n {
            let at_most = DlrConcept::AtMost(0, i, r.clone());
            let negated = DlrConcept::not(DlrConcept::ExistsProj(i, r.clone()));
            for mode in [TopMode::Full, TopMode::Explicit] {
                let a = dlr_concept_extension(&s, &at_most, mode).map_err(|e| e.to_string())?;
                let b = dlr_concept_extension(&s, &negated, mode).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("{at_most} gives {a:?}, {negated} gives {b:?} on {}", s.to_json()));
                }
                compared += 1;
            }
        }
    }
    Ok(compared)
}

/// Outcome of one copy-closure check.
pub struct CopyCheck {
    /// The extension on `s ⊎ s` with tops carried over from `s`.
    pub closed: bool,
    /// The same with tops recomputed as `Δ^n` of the union.
    pub closed_recomputed: bool,
}

/// Extension of `c` on `s ⊎ s` against the two tagged copies of its extension on `s`.
pub fn copy_closure(c: &DlrConcept, s: &Structure) -> Result<CopyCheck, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let n = s.size();
    let on_s = dlr_concept_extension(s, c, TopMode::Full).map_err(|e| err(&e))?;
    let copies: BTreeSet<Elem> = on_s.iter().flat_map(|&u| [u, u + n]).collect();
    let tops = with_explicit_tops(s).map_err(|e| err(&e))?;
    if dlr_concept_extension(&tops, c, TopMode::Explicit).map_err(|e| err(&e))? != on_s {
        return Err(format!("explicit tops change the extension of {c} on {}", s.to_json()));
    }
    let doubled = disjoint_union(&tops, &tops).map_err(|e| err(&e))?;
    let closed = dlr_concept_extension(&doubled, c, TopMode::Explicit).map_err(|e| err(&e))? == copies;
    let plain = disjoint_union(s, s).map_err(|e| err(&e))?;
    let closed_recomputed = dlr_concept_extension(&plain, c, TopMode::Full).map_err(|e| err(&e))? == copies;
    Ok(CopyCheck { closed, closed_recomputed })
}

pub fn random_copy_case(rng: &mut StdRng) -> (DlrConcept, Structure) {
    let v = dlr_vocab();
    let c = random_dlr_concept(&v, 4, DlrFeatures::default(), rng);
    let s = any_structure(&v, 3, rng);
    (c, s)
}

/// The DL_FU1 concept `~exists ~R.(A)` on the one-point loop satisfying `A` and on its double:
/// returns the two extensions.
pub fn dl_copy_witness() -> Result<(BTreeSet<Elem>, BTreeSet<Elem>), String> {
    let v = vocab(&[("R", 2), ("A", 1)]);
    let names = vec!["u".to_string()];
    let rels = [("R".to_string(), vec![vec!["u".to_string(), "u".to_string()]]), ("A".to_string(), vec![vec!["u".to_string()]])];
    let s = Structure::from_named(names, v, rels.into_iter().collect()).map_err(|e| e.to_string())?;
    let c: Concept = parse_concept("~exists ~R.(A)").map_err(|e| e.to_string())?;
    let single = concept_extension(&s, &c).map_err(|e| e.to_string())?;
    let doubled = disjoint_union(&s, &s).map_err(|e| e.to_string())?;
    let double = concept_extension(&doubled, &c).map_err(|e| e.to_string())?;
    Ok((single, double))
}
