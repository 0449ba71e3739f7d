use super::{Gate, TranslateError};
use crate::dlr::{top_relation_name, DlrBinRel, DlrConcept, DlrRole, TopMode};
use crate::logic::{Formula, Var, Vocabulary};

fn gate(c: &DlrConcept) -> Result<(), TranslateError> {
    if c.has_star() {
        return Err(TranslateError::Gate(Gate::Star));
    }
    if c.has_at_most() {
        return Err(TranslateError::Gate(Gate::AtMost));
    }
    Ok(())
}

/// A chain `E1 o E2 o ... o En` of binary relations that are each `eps` or a projection.
type Path = Vec<DlrBinRel>;

fn paths(e: &DlrBinRel) -> Result<Vec<Path>, TranslateError> {
    Ok(match e {
        DlrBinRel::Eps => vec![vec![DlrBinRel::Eps]],
        DlrBinRel::Proj(r, i, j) => vec![vec![DlrBinRel::Proj(role(r)?, *i, *j)]],
        DlrBinRel::Union(a, b) => {
            let mut out = paths(a)?;
            out.extend(paths(b)?);
            out
        }
        DlrBinRel::Comp(a, b) => {
            let (left, right) = (paths(a)?, paths(b)?);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for p in &left {
                for q in &right {
                    out.push(p.iter().chain(q).cloned().collect());
                }
            }
            out
        }
        DlrBinRel::Star(_) => return Err(TranslateError::Gate(Gate::Star)),
    })
}

fn role(r: &DlrRole) -> Result<DlrRole, TranslateError> {
    Ok(match r {
        DlrRole::Top(_) | DlrRole::Atomic(_) => r.clone(),
        DlrRole::Sel(i, n, c) => DlrRole::sel(*i, *n, eliminate(c)?),
        DlrRole::Not(r) => DlrRole::not(role(r)?),
        DlrRole::And(a, b) => DlrRole::and(role(a)?, role(b)?),
    })
}

fn eliminate(c: &DlrConcept) -> Result<DlrConcept, TranslateError> {
    Ok(match c {
        DlrConcept::Top | DlrConcept::Atomic(_) => c.clone(),
        DlrConcept::Not(c) => DlrConcept::not(eliminate(c)?),
        DlrConcept::And(a, b) => DlrConcept::and(eliminate(a)?, eliminate(b)?),
        DlrConcept::Exists(e, target) => {
            let target = eliminate(target)?;
            let alternatives = paths(e)?.into_iter().map(|path| {
                path.into_iter()
                    .rev()
                    .fold(target.clone(), |acc, step| DlrConcept::exists(step, acc))
            });
            alternatives.reduce(DlrConcept::or).expect("at least one path")
        }
        DlrConcept::ExistsProj(i, r) => DlrConcept::ExistsProj(*i, role(r)?),
        DlrConcept::AtMost(..) => return Err(TranslateError::Gate(Gate::AtMost)),
    })
}

/// Removes composition and union: `exists (E1 u E2).C` becomes a disjunction and
/// `exists (E1 o E2).C` becomes `exists E1.exists E2.C`, after distributing composition
/// over union.
pub fn eliminate_comp_union(c: &DlrConcept) -> Result<DlrConcept, TranslateError> {
    gate(c)?;
    eliminate(c)
}

/// FU1 formula with free variable `x` equivalent to a DLR_reg concept without star and
/// number restrictions. In [`TopMode::Explicit`] the built-in `topN` become atoms over
/// relations named `topN`; in [`TopMode::Full`] they are simply true.
pub fn dlr0_to_fu1(c: &DlrConcept, vocab: &Vocabulary, mode: TopMode) -> Result<Formula, TranslateError> {
    gate(c)?;
    c.validate(vocab)?;
    let c = eliminate(c)?;
    let mut t = Operators { vocab, mode, next: 0 };
    t.concept(&Var::new("x"), &c)
}

struct Operators<'v> {
    vocab: &'v Vocabulary,
    mode: TopMode,
    next: usize,
}

fn and(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::Top, f) | (f, Formula::Top) => f,
        (a, b) => Formula::and(a, b),
    }
}

impl Operators<'_> {
    fn fresh(&mut self, prefix: &str) -> Var {
        self.next += 1;
        Var::new(format!("{prefix}{}", self.next))
    }

    fn top(&self, places: &[Var]) -> Formula {
        match self.mode {
            TopMode::Full => Formula::Top,
            TopMode::Explicit => Formula::Atom(top_relation_name(places.len()), places.to_vec()),
        }
    }

    /// Argument list of length `n` with `fixed` at the given 1-based places and fresh
    /// variables elsewhere, which are returned separately.
    fn places(&mut self, n: usize, fixed: &[(usize, Var)]) -> (Vec<Var>, Vec<Var>) {
        let mut others = Vec::new();
        let args = (1..=n)
            .map(|p| match fixed.iter().find(|(q, _)| *q == p) {
                Some((_, v)) => v.clone(),
                None => {
                    let z = self.fresh("z");
                    others.push(z.clone());
                    z
                }
            })
            .collect();
        (args, others)
    }

    fn concept(&mut self, u: &Var, c: &DlrConcept) -> Result<Formula, TranslateError> {
        Ok(match c {
            DlrConcept::Top => Formula::Top,
            DlrConcept::Atomic(a) => Formula::Atom(a.clone(), vec![u.clone()]),
            DlrConcept::Not(c) => Formula::not(self.concept(u, c)?),
            DlrConcept::And(a, b) => Formula::and(self.concept(u, a)?, self.concept(u, b)?),
            DlrConcept::Exists(DlrBinRel::Eps, target) => {
                let y = self.fresh("y");
                let body = Formula::and(Formula::Equals(u.clone(), y.clone()), self.concept(&y, target)?);
                Formula::Exists(vec![y], Box::new(body))
            }
            DlrConcept::Exists(DlrBinRel::Proj(r, i, j), target) if i != j => {
                // the projection's hidden places are quantified together with y so the
                // block stays uniform
                let n = r.arity(self.vocab)?;
                let y = self.fresh("y");
                let (args, zs) = self.places(n, &[(*i, u.clone()), (*j, y.clone())]);
                let body = and(self.role(&args, r)?, self.concept(&y, target)?);
                let block: Vec<Var> = std::iter::once(y).chain(zs).collect();
                Formula::Exists(block, Box::new(body))
            }
            DlrConcept::Exists(DlrBinRel::Proj(r, i, _), target) => {
                let n = r.arity(self.vocab)?;
                let y = self.fresh("y");
                let (args, zs) = self.places(n, &[(*i, u.clone())]);
                let tuple = Formula::Exists(zs, Box::new(self.role(&args, r)?));
                let body = Formula::and(
                    Formula::and(Formula::Equals(u.clone(), y.clone()), tuple),
                    self.concept(&y, target)?,
                );
                Formula::Exists(vec![y], Box::new(body))
            }
            DlrConcept::Exists(..) => unreachable!("composition and union are eliminated first"),
            DlrConcept::ExistsProj(i, r) => {
                let n = r.arity(self.vocab)?;
                let (args, zs) = self.places(n, &[(*i, u.clone())]);
                Formula::Exists(zs, Box::new(self.role(&args, r)?))
            }
            DlrConcept::AtMost(..) => return Err(TranslateError::Gate(Gate::AtMost)),
        })
    }

    fn role(&mut self, args: &[Var], r: &DlrRole) -> Result<Formula, TranslateError> {
        Ok(match r {
            DlrRole::Top(_) => self.top(args),
            DlrRole::Atomic(name) => Formula::Atom(name.clone(), args.to_vec()),
            DlrRole::Sel(i, _, c) => and(self.concept(&args[*i - 1], c)?, self.top(args)),
            DlrRole::Not(inner) => {
                let negated = Formula::not(self.role(args, inner)?);
                and(self.top(args), negated)
            }
            DlrRole::And(a, b) => Formula::and(self.role(args, a)?, self.role(args, b)?),
        })
    }
}
