use std::collections::BTreeSet;

use super::{Concept, DlError, Role};
use crate::logic::{Elem, Structure, Tuple};

const COMPLEMENT_LIMIT: usize = 1 << 22;

/// Every tuple of `Δ^arity` in lexicographic order.
pub(crate) fn all_tuples(n: usize, arity: usize) -> impl Iterator<Item = Tuple> {
    let total = n.checked_pow(arity as u32).unwrap_or(usize::MAX);
    (0..if n == 0 { 0 } else { total }).map(move |mut code| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    })
}

pub(crate) fn complement(
    n: usize,
    arity: usize,
    set: &BTreeSet<Tuple>,
) -> Result<BTreeSet<Tuple>, DlError> {
    match n.checked_pow(arity as u32) {
        Some(total) if total <= COMPLEMENT_LIMIT => {}
        _ => return Err(DlError::TooLarge { arity, size: n }),
    }
    Ok(all_tuples(n, arity).filter(|t| !set.contains(t)).collect())
}

fn extension(s: &Structure, r: &Role) -> Result<(usize, BTreeSet<Tuple>), DlError> {
    let vocab = s.vocabulary();
    Ok(match r {
        Role::Atomic(name) => {
            let arity = r.arity(vocab)?;
            (arity, s.relation(name).cloned().unwrap_or_default())
        }
        Role::Epsilon => (2, s.elements().map(|u| vec![u, u]).collect()),
        Role::Not(inner) => {
            let (arity, set) = extension(s, inner)?;
            (arity, complement(s.size(), arity, &set)?)
        }
        Role::And(a, b) => {
            let (x, sa) = extension(s, a)?;
            let (y, sb) = extension(s, b)?;
            if x == y {
                (x, sa.intersection(&sb).cloned().collect())
            } else {
                (2, BTreeSet::new())
            }
        }
        Role::Apply(sigma, inner) => {
            let (k, set) = extension(s, inner)?;
            if sigma.source() != k {
                return Ok((2, BTreeSet::new()));
            }
            let m = sigma.target();
            let mut out = BTreeSet::new();
            'tuples: for t in &set {
                // u_{σ(i)} = t_i for every i; tuples that demand two values for one slot drop out
                let mut u: Vec<Option<Elem>> = vec![None; m];
                for (i, &e) in t.iter().enumerate() {
                    let slot = &mut u[sigma.get(i + 1) - 1];
                    match slot {
                        Some(prev) if *prev != e => continue 'tuples,
                        _ => *slot = Some(e),
                    }
                }
                out.insert(u.into_iter().map(|e| e.expect("surjective")).collect());
            }
            (m, out)
        }
    })
}

/// Extension of a role; ill-typed intersections and reindexings are empty.
pub fn role_extension(s: &Structure, r: &Role) -> Result<BTreeSet<Tuple>, DlError> {
    Ok(extension(s, r)?.1)
}

fn concept_set(s: &Structure, c: &Concept) -> Result<Vec<bool>, DlError> {
    let n = s.size();
    Ok(match c {
        Concept::Top => vec![true; n],
        Concept::Bottom => vec![false; n],
        Concept::Atomic(name) => {
            c.validate(s.vocabulary())?;
            let rel = s.relation(name);
            (0..n).map(|u| rel.is_some_and(|r| r.contains(&vec![u]))).collect()
        }
        Concept::Not(inner) => concept_set(s, inner)?.into_iter().map(|b| !b).collect(),
        Concept::And(a, b) => {
            let (x, y) = (concept_set(s, a)?, concept_set(s, b)?);
            x.into_iter().zip(y).map(|(p, q)| p && q).collect()
        }
        Concept::Exists(r, args) => {
            let (arity, set) = extension(s, r)?;
            if args.len() + 1 != arity {
                return Err(DlError::ArgumentCount { arity, found: args.len() });
            }
            let fillers = args.iter().map(|a| concept_set(s, a)).collect::<Result<Vec<_>, _>>()?;
            let mut out = vec![false; n];
            for t in &set {
                if t[1..].iter().zip(&fillers).all(|(&v, f)| f[v]) {
                    out[t[0]] = true;
                }
            }
            out
        }
    })
}

pub fn concept_extension(s: &Structure, c: &Concept) -> Result<BTreeSet<Elem>, DlError> {
    Ok(concept_set(s, c)?
        .into_iter()
        .enumerate()
        .filter_map(|(u, b)| b.then_some(u))
        .collect())
}
