use super::dnf::{to_dnf_block, Disjunct, Literal};
use super::TranslateError;
use crate::dl::{Concept, Role, Surjection};
use crate::fragments::{check_fragment, FragmentId};
use crate::logic::{Formula, Var, Vocabulary};

/// Equivalent DL_FU1 concept of an FU1 formula with at most one free variable.
///
/// Each existential block is put in normal form. In a disjunct, the higher-arity literals
/// over `{y1..yn}` become one role intersection (atoms reindexed by a surjection onto the
/// chosen variable order) and the unary parts become the fillers of `exists`. Parts not
/// attached to the free variable are reached through the universal role.
pub fn fu1_to_dl(f: &Formula) -> Result<Concept, TranslateError> {
    let diagnostic = check_fragment(f, FragmentId::Fu1);
    if !diagnostic.verdict {
        return Err(TranslateError::Fragment(diagnostic));
    }
    let free = f.free_variables();
    if free.len() > 1 {
        return Err(TranslateError::TooManyFreeVariables(free.len()));
    }
    let v = free.into_iter().next().unwrap_or_else(|| Var::new("x"));
    concept(f, &v)
}

fn unsupported(f: &Formula) -> TranslateError {
    TranslateError::NotUniform(format!("`{f}` has more than one free variable outside a block"))
}

fn concept(f: &Formula, v: &Var) -> Result<Concept, TranslateError> {
    Ok(match f {
        Formula::Top => Concept::Top,
        Formula::Bottom => Concept::Bottom,
        Formula::Atom(r, args) => {
            if args.iter().any(|a| a != &args[0]) {
                return Err(unsupported(f));
            }
            match args.len() {
                1 => Concept::atomic(r),
                // R(x,...,x): pairs (u,u) with (u,...,u) in R, then project to the first place
                k => {
                    let diagonal = if k == 2 {
                        Role::atomic(r)
                    } else {
                        let map = std::iter::once(1).chain(std::iter::repeat(2).take(k - 1)).collect();
                        Role::apply(Surjection::new(map)?, Role::atomic(r))
                    };
                    Concept::exists(Role::and(Role::Epsilon, diagonal), vec![Concept::Top])
                }
            }
        }
        Formula::Equals(a, b) if a == b => Concept::Top,
        Formula::Equals(..) => return Err(unsupported(f)),
        Formula::Not(a) => Concept::not(concept(a, v)?),
        Formula::And(a, b) => Concept::and(concept(a, v)?, concept(b, v)?),
        Formula::Or(a, b) => Concept::or(concept(a, v)?, concept(b, v)?),
        Formula::Implies(a, b) => Concept::or(Concept::not(concept(a, v)?), concept(b, v)?),
        Formula::Forall(vs, body) => {
            let dual = Formula::Exists(vs.clone(), Box::new(Formula::not((**body).clone())));
            Concept::not(block(&dual)?)
        }
        Formula::Exists(..) => block(f)?,
        Formula::Count(..) => {
            return Err(TranslateError::NotUniform("counting quantifiers are not in FU1".into()))
        }
    })
}

fn literal(l: &Literal, v: &Var) -> Result<Concept, TranslateError> {
    let c = concept(&l.leaf, v)?;
    Ok(if l.positive { c } else { Concept::not(c) })
}

fn unary_part(d: &Disjunct, v: &Var) -> Result<Concept, TranslateError> {
    let parts = match d.unary.get(v) {
        Some(ls) => ls.iter().map(|l| literal(l, v)).collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    Ok(Concept::conj(parts))
}

/// Role for one higher-arity literal, with argument places following `order`.
fn literal_role(l: &Literal, order: &[Var]) -> Result<Role, TranslateError> {
    let role = match &l.leaf {
        Formula::Equals(..) => Role::Epsilon,
        Formula::Atom(r, args) => {
            let map: Vec<usize> = args
                .iter()
                .map(|a| order.iter().position(|o| o == a).expect("variable in shared set") + 1)
                .collect();
            if map.iter().enumerate().all(|(i, &p)| p == i + 1) && map.len() == order.len() {
                Role::atomic(r)
            } else {
                Role::apply(Surjection::new(map)?, Role::atomic(r))
            }
        }
        other => unreachable!("not a higher-arity literal: {other}"),
    };
    Ok(if l.positive { role } else { Role::not(role) })
}

fn block(f: &Formula) -> Result<Concept, TranslateError> {
    let nf = to_dnf_block(f)?;
    let disjuncts = nf
        .disjuncts
        .iter()
        .map(|d| disjunct(d, &nf.vars, nf.free.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Concept::disj(disjuncts))
}

fn disjunct(d: &Disjunct, bound: &[Var], free: Option<&Var>) -> Result<Concept, TranslateError> {
    let mut parts = Vec::new();
    for l in &d.closed {
        // closed leaves do not depend on the element, any variable will do
        parts.push(literal(l, &Var::new("x"))?);
    }
    if let Some(x) = free {
        let c = unary_part(d, x)?;
        if c != Concept::Top {
            parts.push(c);
        }
    }
    if !d.t_literals.is_empty() {
        let anchor = match free {
            Some(x) if d.t_vars.contains(x) => x.clone(),
            _ => d.t_vars.iter().next().expect("nonempty").clone(),
        };
        let order: Vec<Var> = std::iter::once(anchor.clone())
            .chain(d.t_vars.iter().filter(|w| **w != anchor).cloned())
            .collect();
        let role = d
            .t_literals
            .iter()
            .map(|l| literal_role(l, &order))
            .reduce(|a, b| Ok(Role::and(a?, b?)))
            .expect("nonempty")?;
        let fillers = order[1..].iter().map(|w| unary_part(d, w)).collect::<Result<Vec<_>, _>>()?;
        let mut t_part = Concept::exists(role, fillers);
        if Some(&anchor) != free {
            let own = unary_part(d, &anchor)?;
            if own != Concept::Top {
                t_part = Concept::and(own, t_part);
            }
            t_part = Concept::exists(Role::universal(), vec![t_part]);
        }
        parts.push(t_part);
    }
    for w in bound.iter().filter(|w| !d.t_vars.contains(*w)) {
        let c = unary_part(d, w)?;
        if c != Concept::Top {
            parts.push(Concept::exists(Role::universal(), vec![c]));
        }
    }
    Ok(Concept::conj(parts))
}

/// Standard translation of a concept into an FU1 formula with free variable `x`.
pub fn dl_to_fu1(c: &Concept, vocab: &Vocabulary) -> Result<Formula, TranslateError> {
    c.validate(vocab)?;
    let mut t = Standard { vocab, next: 0 };
    t.concept(c, &Var::new("x"))
}

struct Standard<'v> {
    vocab: &'v Vocabulary,
    next: usize,
}

impl Standard<'_> {
    fn fresh(&mut self) -> Var {
        self.next += 1;
        Var::new(format!("y{}", self.next))
    }

    fn concept(&mut self, c: &Concept, u: &Var) -> Result<Formula, TranslateError> {
        Ok(match c {
            Concept::Top => Formula::Top,
            Concept::Bottom => Formula::Bottom,
            Concept::Atomic(a) => Formula::Atom(a.clone(), vec![u.clone()]),
            Concept::Not(c) => Formula::not(self.concept(c, u)?),
            Concept::And(a, b) => Formula::and(self.concept(a, u)?, self.concept(b, u)?),
            Concept::Exists(r, args) => {
                let ys: Vec<Var> = args.iter().map(|_| self.fresh()).collect();
                let places: Vec<Var> = std::iter::once(u.clone()).chain(ys.iter().cloned()).collect();
                let mut body = self.role(r, &places)?;
                for (y, a) in ys.iter().zip(args) {
                    body = Formula::and(body, self.concept(a, y)?);
                }
                Formula::Exists(ys, Box::new(body))
            }
        })
    }

    /// Formula saying that `places` is a tuple of `r`; `places.len()` is the arity of `r`.
    fn role(&mut self, r: &Role, places: &[Var]) -> Result<Formula, TranslateError> {
        Ok(match r {
            Role::Atomic(name) => Formula::Atom(name.clone(), places.to_vec()),
            Role::Epsilon => Formula::Equals(places[0].clone(), places[1].clone()),
            Role::Not(inner) => Formula::not(self.role(inner, places)?),
            Role::And(a, b) => {
                if a.arity(self.vocab)? != b.arity(self.vocab)? {
                    Formula::Bottom
                } else {
                    Formula::and(self.role(a, places)?, self.role(b, places)?)
                }
            }
            Role::Apply(sigma, inner) => {
                if sigma.source() != inner.arity(self.vocab)? {
                    Formula::Bottom
                } else {
                    let reindexed: Vec<Var> =
                        (1..=sigma.source()).map(|i| places[sigma.get(i) - 1].clone()).collect();
                    self.role(inner, &reindexed)?
                }
            }
        })
    }
}
