//! Vocabulary inference for concept inputs given without `--vocab`.

use u1kit::dl::{Concept, Role};
use u1kit::dlr::{DlrBinRel, DlrConcept, DlrRole};
use u1kit::Vocabulary;

fn declare(v: &mut Vocabulary, name: &str, arity: usize) -> Result<(), String> {
    match v.arity(name) {
        Some(a) if a != arity => Err(format!(
            "`{name}` is used with arities {a} and {arity}; pass --vocab to disambiguate"
        )),
        Some(_) => Ok(()),
        None => v.declare(name, arity).map_err(|e| e.to_string()),
    }
}

/// Concept names are unary; a role's arity follows from the number of fillers under
/// `exists` and from surjections.
pub fn dl_vocabulary(c: &Concept) -> Result<Vocabulary, String> {
    fn role(r: &Role, k: usize, v: &mut Vocabulary) -> Result<(), String> {
        match r {
            Role::Atomic(n) => declare(v, n, k),
            Role::Epsilon => Ok(()),
            Role::Not(r) => role(r, k, v),
            Role::And(a, b) => {
                role(a, k, v)?;
                role(b, k, v)
            }
            Role::Apply(sigma, r) => role(r, sigma.source(), v),
        }
    }
    fn concept(c: &Concept, v: &mut Vocabulary) -> Result<(), String> {
        match c {
            Concept::Top | Concept::Bottom => Ok(()),
            Concept::Atomic(n) => declare(v, n, 1),
            Concept::Not(c) => concept(c, v),
            Concept::And(a, b) => {
                concept(a, v)?;
                concept(b, v)
            }
            Concept::Exists(r, args) => {
                role(r, args.len() + 1, v)?;
                args.iter().try_for_each(|a| concept(a, v))
            }
        }
    }
    let mut v = Vocabulary::new();
    concept(c, &mut v)?;
    Ok(v)
}

/// Arity fixed by a `topN` or a selection inside the role, if any.
fn fixed_arity(r: &DlrRole) -> Option<usize> {
    match r {
        DlrRole::Top(n) | DlrRole::Sel(_, n, _) => Some(*n),
        DlrRole::Atomic(_) => None,
        DlrRole::Not(r) => fixed_arity(r),
        DlrRole::And(a, b) => fixed_arity(a).or_else(|| fixed_arity(b)),
    }
}

/// Concept names are unary. A role takes the arity fixed by a top or selection inside it,
/// otherwise the largest place it is projected on, and at least 2.
pub fn dlr_vocabulary(c: &DlrConcept) -> Result<Vocabulary, String> {
    fn role(r: &DlrRole, k: usize, v: &mut Vocabulary) -> Result<(), String> {
        match r {
            DlrRole::Top(_) => Ok(()),
            DlrRole::Atomic(n) => declare(v, n, k),
            DlrRole::Sel(_, _, c) => concept(c, v),
            DlrRole::Not(r) => role(r, k, v),
            DlrRole::And(a, b) => {
                role(a, k, v)?;
                role(b, k, v)
            }
        }
    }
    fn placed(r: &DlrRole, places: &[usize], v: &mut Vocabulary) -> Result<(), String> {
        let widest = places.iter().copied().max().unwrap_or(0).max(2);
        role(r, fixed_arity(r).unwrap_or(widest), v)
    }
    fn rel(e: &DlrBinRel, v: &mut Vocabulary) -> Result<(), String> {
        match e {
            DlrBinRel::Eps => Ok(()),
            DlrBinRel::Proj(r, i, j) => placed(r, &[*i, *j], v),
            DlrBinRel::Comp(a, b) | DlrBinRel::Union(a, b) => {
                rel(a, v)?;
                rel(b, v)
            }
            DlrBinRel::Star(e) => rel(e, v),
        }
    }
    fn concept(c: &DlrConcept, v: &mut Vocabulary) -> Result<(), String> {
        match c {
            DlrConcept::Top => Ok(()),
            DlrConcept::Atomic(n) => declare(v, n, 1),
            DlrConcept::Not(c) => concept(c, v),
            DlrConcept::And(a, b) => {
                concept(a, v)?;
                concept(b, v)
            }
            DlrConcept::Exists(e, c) => {
                rel(e, v)?;
                concept(c, v)
            }
            DlrConcept::ExistsProj(i, r) | DlrConcept::AtMost(_, i, r) => placed(r, &[*i], v),
        }
    }
    let mut v = Vocabulary::new();
    concept(c, &mut v)?;
    Ok(v)
}
