use std::collections::{BTreeMap, BTreeSet};

use super::{max_arity, top_arity, top_relation_name, DlrBinRel, DlrConcept, DlrError, DlrRole, TopMode};
use crate::dl::all_tuples;
use crate::logic::{Elem, Structure, StructureError, Tuple};

const ENUMERATION_LIMIT: usize = 1 << 22;

/// Square boolean matrix over the domain.
type Matrix = Vec<Vec<bool>>;

/// Evaluates DLR_reg terms on one structure under one interpretation of `topN`.
pub struct Evaluator<'s> {
    s: &'s Structure,
    mode: TopMode,
    /// Explicit-mode `topN` relations, indexed by arity.
    tops: BTreeMap<usize, BTreeSet<Tuple>>,
}

impl<'s> Evaluator<'s> {
    /// In explicit mode the structure's `topN` relations are checked to cover every
    /// declared n-ary relation.
    pub fn new(s: &'s Structure, mode: TopMode) -> Result<Self, DlrError> {
        let mut tops = BTreeMap::new();
        if mode == TopMode::Explicit {
            let vocab = s.vocabulary();
            for n in 2..=max_arity(vocab) {
                let own: Vec<(&str, &BTreeSet<Tuple>)> = s
                    .relations()
                    .filter(|(name, _)| top_arity(name).is_none() && vocab.arity(name) == Some(n))
                    .collect();
                let top: BTreeSet<Tuple> = match s.relation(&top_relation_name(n)) {
                    Some(t) if vocab.arity(&top_relation_name(n)) == Some(n) => t.clone(),
                    _ => own.iter().flat_map(|(_, ts)| ts.iter().cloned()).collect(),
                };
                for (name, ts) in &own {
                    if let Some(t) = ts.iter().find(|t| !top.contains(*t)) {
                        return Err(DlrError::TopCoverage {
                            relation: name.to_string(),
                            arity: n,
                            tuple: t.iter().map(|&e| s.element_name(e).to_string()).collect(),
                        });
                    }
                }
                tops.insert(n, top);
            }
        }
        Ok(Evaluator { s, mode, tops })
    }

    fn n(&self) -> usize {
        self.s.size()
    }

    fn check_enumerable(&self, arity: usize) -> Result<(), DlrError> {
        match self.n().checked_pow(arity as u32) {
            Some(c) if c <= ENUMERATION_LIMIT => Ok(()),
            _ => Err(DlrError::TooLarge { arity, size: self.n() }),
        }
    }

    fn top(&self, n: usize) -> Result<BTreeSet<Tuple>, DlrError> {
        DlrRole::Top(n).arity(self.s.vocabulary())?;
        match self.mode {
            TopMode::Full => {
                self.check_enumerable(n)?;
                Ok(all_tuples(self.n(), n).collect())
            }
            TopMode::Explicit => Ok(self.tops.get(&n).cloned().unwrap_or_default()),
        }
    }

    pub fn role(&self, r: &DlrRole) -> Result<BTreeSet<Tuple>, DlrError> {
        Ok(self.role_with_arity(r)?.1)
    }

    fn role_with_arity(&self, r: &DlrRole) -> Result<(usize, BTreeSet<Tuple>), DlrError> {
        let vocab = self.s.vocabulary();
        Ok(match r {
            DlrRole::Top(n) => (*n, self.top(*n)?),
            DlrRole::Atomic(name) => (r.arity(vocab)?, self.s.relation(name).cloned().unwrap_or_default()),
            DlrRole::Sel(i, n, c) => {
                let arity = r.arity(vocab)?;
                let members = self.concept_vec(c)?;
                let top = self.top(*n)?;
                (arity, top.into_iter().filter(|t| members[t[*i - 1]]).collect())
            }
            DlrRole::Not(inner) => {
                let (n, set) = self.role_with_arity(inner)?;
                let top = self.top(n)?;
                (n, top.difference(&set).cloned().collect())
            }
            DlrRole::And(a, b) => {
                let (x, sa) = self.role_with_arity(a)?;
                let (y, sb) = self.role_with_arity(b)?;
                if x != y {
                    return Err(DlrError::ArityMismatch(x, y));
                }
                (x, sa.intersection(&sb).cloned().collect())
            }
        })
    }

    fn matrix(&self, e: &DlrBinRel) -> Result<Matrix, DlrError> {
        let n = self.n();
        Ok(match e {
            DlrBinRel::Eps => (0..n).map(|u| (0..n).map(|v| u == v).collect()).collect(),
            DlrBinRel::Proj(r, i, j) => {
                e.validate(self.s.vocabulary())?;
                let mut m = vec![vec![false; n]; n];
                for t in self.role(r)? {
                    m[t[*i - 1]][t[*j - 1]] = true;
                }
                m
            }
            DlrBinRel::Comp(a, b) => {
                let (x, y) = (self.matrix(a)?, self.matrix(b)?);
                let mut m = vec![vec![false; n]; n];
                for u in 0..n {
                    for w in 0..n {
                        if x[u][w] {
                            for v in 0..n {
                                m[u][v] |= y[w][v];
                            }
                        }
                    }
                }
                m
            }
            DlrBinRel::Union(a, b) => {
                let (x, y) = (self.matrix(a)?, self.matrix(b)?);
                x.into_iter()
                    .zip(y)
                    .map(|(p, q)| p.into_iter().zip(q).map(|(a, b)| a || b).collect())
                    .collect()
            }
            DlrBinRel::Star(inner) => {
                let mut m = self.matrix(inner)?;
                for (u, row) in m.iter_mut().enumerate() {
                    row[u] = true;
                }
                // Warshall's transitive closure
                for w in 0..n {
                    for u in 0..n {
                        if m[u][w] {
                            for v in 0..n {
                                if m[w][v] {
                                    m[u][v] = true;
                                }
                            }
                        }
                    }
                }
                m
            }
        })
    }

    pub fn binrel(&self, e: &DlrBinRel) -> Result<BTreeSet<(Elem, Elem)>, DlrError> {
        let m = self.matrix(e)?;
        Ok(m.iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().enumerate().filter(|(_, &b)| b).map(move |(v, _)| (u, v)))
            .collect())
    }

    fn concept_vec(&self, c: &DlrConcept) -> Result<Vec<bool>, DlrError> {
        let n = self.n();
        let vocab = self.s.vocabulary();
        Ok(match c {
            DlrConcept::Top => vec![true; n],
            DlrConcept::Atomic(name) => {
                c.validate(vocab)?;
                let rel = self.s.relation(name);
                (0..n).map(|u| rel.is_some_and(|r| r.contains(&vec![u]))).collect()
            }
            DlrConcept::Not(inner) => self.concept_vec(inner)?.into_iter().map(|b| !b).collect(),
            DlrConcept::And(a, b) => {
                let (x, y) = (self.concept_vec(a)?, self.concept_vec(b)?);
                x.into_iter().zip(y).map(|(p, q)| p && q).collect()
            }
            DlrConcept::Exists(e, inner) => {
                let m = self.matrix(e)?;
                let target = self.concept_vec(inner)?;
                m.iter().map(|row| row.iter().zip(&target).any(|(&r, &t)| r && t)).collect()
            }
            DlrConcept::ExistsProj(i, r) | DlrConcept::AtMost(_, i, r) => {
                c.validate(vocab)?;
                let mut counts = vec![0usize; n];
                for t in self.role(r)? {
                    counts[t[*i - 1]] += 1;
                }
                match c {
                    DlrConcept::AtMost(k, ..) => counts.into_iter().map(|x| x <= *k).collect(),
                    _ => counts.into_iter().map(|x| x > 0).collect(),
                }
            }
        })
    }

    pub fn concept(&self, c: &DlrConcept) -> Result<BTreeSet<Elem>, DlrError> {
        Ok(self
            .concept_vec(c)?
            .into_iter()
            .enumerate()
            .filter_map(|(u, b)| b.then_some(u))
            .collect())
    }
}

pub fn dlr_role_extension(
    s: &Structure,
    r: &DlrRole,
    mode: TopMode,
) -> Result<BTreeSet<Tuple>, DlrError> {
    Evaluator::new(s, mode)?.role(r)
}

pub fn dlr_binrel_extension(
    s: &Structure,
    e: &DlrBinRel,
    mode: TopMode,
) -> Result<BTreeSet<(Elem, Elem)>, DlrError> {
    Evaluator::new(s, mode)?.binrel(e)
}

/// Number restrictions count tuples: `(<=k[$i]R)` holds at `u` when at most `k` tuples of
/// `R` have `u` at position `i`.
pub fn dlr_concept_extension(
    s: &Structure,
    c: &DlrConcept,
    mode: TopMode,
) -> Result<BTreeSet<Elem>, DlrError> {
    Evaluator::new(s, mode)?.concept(c)
}

/// `s` extended with relations `topN = Δ^n` for every role arity of its vocabulary, so that
/// explicit mode on the result agrees with full mode on `s` and the tops travel along with
/// disjoint unions.
pub fn with_explicit_tops(s: &Structure) -> Result<Structure, StructureError> {
    let mut vocab = s.vocabulary().clone();
    let mut relations: BTreeMap<String, BTreeSet<Tuple>> =
        s.relations().map(|(n, ts)| (n.to_string(), ts.clone())).collect();
    for n in 2..=max_arity(s.vocabulary()) {
        let name = top_relation_name(n);
        vocab.declare(name.clone(), n)?;
        relations.insert(name, all_tuples(s.size(), n).collect());
    }
    Structure::new(s.domain().to_vec(), vocab, relations)
}
