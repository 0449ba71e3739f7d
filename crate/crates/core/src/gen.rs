//! Structure enumeration and grammar-directed random generation of formulae, concepts and
//! structures, used by the test suites and the lab.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dl::{Concept, Role, Surjection};
use crate::dlr::{max_arity, DlrBinRel, DlrConcept, DlrRole};
use crate::fragments::FragmentId;
use crate::logic::{Comparator, Formula, Structure, Tuple, Var, Vocabulary};
use crate::dl::all_tuples;

/// Element names used for generated structures.
pub fn element_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// Every ground atom over a domain of size `n`, relations in name order and tuples in
/// lexicographic order.
pub fn cells(vocab: &Vocabulary, n: usize) -> Vec<(String, Tuple)> {
    vocab
        .iter()
        .flat_map(|(name, arity)| all_tuples(n, arity).map(move |t| (name.to_string(), t)))
        .collect()
}

/// Number of interpretations of `vocab` over `n` elements, if it fits in a `u64`.
pub fn structure_count(vocab: &Vocabulary, n: usize) -> Option<u64> {
    let c = cells(vocab, n).len();
    (c < 64).then(|| 1u64 << c)
}

fn structure_from_bits(
    vocab: &Vocabulary,
    n: usize,
    cells: &[(String, Tuple)],
    bit: impl Fn(usize) -> bool,
) -> Structure {
    let mut relations: BTreeMap<String, BTreeSet<Tuple>> = BTreeMap::new();
    for (i, (name, t)) in cells.iter().enumerate() {
        if bit(i) {
            relations.entry(name.clone()).or_default().insert(t.clone());
        }
    }
    Structure::new(element_names(n), vocab.clone(), relations).expect("generated structure is valid")
}

/// All interpretations of `vocab` over `n` elements. The i-th structure sets cell `c` iff
/// bit `c` of `i` is one, with cells ordered as in [`cells`].
///
/// Panics if there are 64 or more cells.
pub fn all_structures(vocab: &Vocabulary, n: usize) -> impl Iterator<Item = Structure> + '_ {
    let cells = cells(vocab, n);
    assert!(cells.len() < 64, "{} cells cannot be enumerated", cells.len());
    (0..1u64 << cells.len()).map(move |code| structure_from_bits(vocab, n, &cells, |i| code >> i & 1 == 1))
}

/// All structures of sizes `1, 2, ...` for as long as a size has at most `max_cells` cells.
pub fn small_structures(vocab: &Vocabulary, max_cells: usize) -> impl Iterator<Item = Structure> + '_ {
    (1..)
        .take_while(move |&n| cells(vocab, n).len() <= max_cells)
        .flat_map(move |n| all_structures(vocab, n))
}

/// Random interpretation where each cell holds with probability `density`.
pub fn random_structure<R: Rng + ?Sized>(
    vocab: &Vocabulary,
    n: usize,
    density: f64,
    rng: &mut R,
) -> Structure {
    let cells = cells(vocab, n);
    let bits: Vec<bool> = cells.iter().map(|_| rng.gen_bool(density)).collect();
    structure_from_bits(vocab, n, &cells, |i| bits[i])
}

const POOL: [&str; 5] = ["x", "y", "z", "u", "w"];

fn names_of_arity(vocab: &Vocabulary, pred: impl Fn(usize) -> bool) -> Vec<(String, usize)> {
    vocab.iter().filter(|(_, a)| pred(*a)).map(|(n, a)| (n.to_string(), a)).collect()
}

/// Grammar-directed generator for the uniform one-dimensional fragments.
///
/// Formulae are built by the membership clauses: unary atoms (including `R(x,...,x)`),
/// Boolean combinations, and quantifier blocks over a Boolean combination of atoms sharing
/// one variable set together with smaller members whose free variables lie in the block's
/// variables plus at most one outer variable.
pub struct FragmentGen<'v> {
    pub vocab: &'v Vocabulary,
    pub fragment: FragmentId,
    /// Maximum number of variables bound by one block.
    pub max_block: usize,
}

impl<'v> FragmentGen<'v> {
    pub fn new(vocab: &'v Vocabulary, fragment: FragmentId) -> Self {
        FragmentGen { vocab, fragment, max_block: 3 }
    }

    /// A member with free variables within `free` (at most one variable).
    pub fn member<R: Rng + ?Sized>(&self, depth: usize, free: Option<&Var>, rng: &mut R) -> Formula {
        let leaf_only = depth == 0;
        let choice = if leaf_only { 0 } else { rng.gen_range(0..10) };
        match choice {
            0..=2 => self.leaf(free, rng),
            3 => Formula::not(self.member(depth - 1, free, rng)),
            4 => Formula::and(self.member(depth - 1, free, rng), self.member(depth - 1, free, rng)),
            5 => Formula::or(self.member(depth - 1, free, rng), self.member(depth - 1, free, rng)),
            6 => Formula::implies(self.member(depth - 1, free, rng), self.member(depth - 1, free, rng)),
            _ => self.block(depth - 1, free, rng),
        }
    }

    fn leaf<R: Rng + ?Sized>(&self, free: Option<&Var>, rng: &mut R) -> Formula {
        let Some(v) = free else {
            return if rng.gen_bool(0.5) { Formula::Top } else { Formula::Bottom };
        };
        let all = names_of_arity(self.vocab, |_| true);
        if all.is_empty() || rng.gen_ratio(1, 12) {
            return if rng.gen_bool(0.5) { Formula::Top } else { Formula::Bottom };
        }
        if self.fragment != FragmentId::U1WoEq && rng.gen_ratio(1, 12) {
            return Formula::Equals(v.clone(), v.clone());
        }
        let (name, arity) = all.choose(rng).unwrap();
        Formula::Atom(name.clone(), vec![v.clone(); *arity])
    }

    /// A quantifier block whose only possible free variable is `free`.
    pub fn block<R: Rng + ?Sized>(&self, depth: usize, free: Option<&Var>, rng: &mut R) -> Formula {
        let pool: Vec<Var> = POOL.iter().map(|n| Var::new(n)).filter(|v| Some(v) != free).collect();
        let counting = self.fragment == FragmentId::Uc1 && rng.gen_ratio(1, 3);
        let k = if counting { 1 } else { rng.gen_range(1..=self.max_block.min(pool.len())) };
        let bound: Vec<Var> = pool.choose_multiple(rng, k).cloned().collect();
        let mut y: Vec<Var> = bound.clone();
        // the outer variable may be used or not; the second clause form closes it off entirely
        if let Some(v) = free {
            if rng.gen_bool(0.8) {
                y.push(v.clone());
            }
        }
        let x = self.shared_set(&y, rng);
        let body = self.body(depth, &y, x.as_deref(), rng);
        if counting {
            let cmp = *[Comparator::AtLeast, Comparator::AtMost, Comparator::Exactly].choose(rng).unwrap();
            return Formula::Count(cmp, rng.gen_range(0..=3), bound[0].clone(), Box::new(body));
        }
        if rng.gen_bool(0.7) {
            Formula::Exists(bound, Box::new(body))
        } else {
            Formula::Forall(bound, Box::new(body))
        }
    }

    fn widest(&self) -> usize {
        let rel = self.vocab.iter().map(|(_, a)| a).max().unwrap_or(0);
        if self.fragment == FragmentId::Fu1 {
            rel.max(2)
        } else {
            rel
        }
    }

    fn shared_set<R: Rng + ?Sized>(&self, y: &[Var], rng: &mut R) -> Option<Vec<Var>> {
        let widest = self.widest().min(y.len());
        if widest < 2 || rng.gen_ratio(1, 6) {
            return None;
        }
        let size = rng.gen_range(2..=widest);
        let mut x: Vec<Var> = y.choose_multiple(rng, size).cloned().collect();
        x.sort();
        Some(x)
    }

    fn body<R: Rng + ?Sized>(&self, depth: usize, y: &[Var], x: Option<&[Var]>, rng: &mut R) -> Formula {
        if depth == 0 || rng.gen_ratio(1, 3) {
            return self.body_leaf(depth, y, x, rng);
        }
        match rng.gen_range(0..4) {
            0 => Formula::not(self.body(depth - 1, y, x, rng)),
            1 => Formula::and(self.body(depth - 1, y, x, rng), self.body(depth - 1, y, x, rng)),
            2 => Formula::or(self.body(depth - 1, y, x, rng), self.body(depth - 1, y, x, rng)),
            _ => Formula::implies(self.body(depth - 1, y, x, rng), self.body(depth - 1, y, x, rng)),
        }
    }

    fn body_leaf<R: Rng + ?Sized>(&self, depth: usize, y: &[Var], x: Option<&[Var]>, rng: &mut R) -> Formula {
        if let Some(x) = x {
            if rng.gen_bool(0.5) {
                if let Some(a) = self.x_atom(x, rng) {
                    return a;
                }
            }
        }
        if matches!(self.fragment, FragmentId::U1 | FragmentId::Uc1) && y.len() >= 2 && rng.gen_ratio(1, 6) {
            let pair: Vec<&Var> = y.choose_multiple(rng, 2).collect();
            return Formula::Equals(pair[0].clone(), pair[1].clone());
        }
        let v = y.choose(rng).cloned();
        self.member(depth.min(2), v.as_ref(), rng)
    }

    /// An atom whose variable set is exactly `x`.
    fn x_atom<R: Rng + ?Sized>(&self, x: &[Var], rng: &mut R) -> Option<Formula> {
        let mut options = names_of_arity(self.vocab, |a| a >= x.len());
        if self.fragment == FragmentId::Fu1 && x.len() == 2 {
            options.push(("=".into(), 2));
        }
        let (name, arity) = options.choose(rng)?.clone();
        let mut args: Vec<Var> = x.to_vec();
        while args.len() < arity {
            args.push(x.choose(rng).unwrap().clone());
        }
        args.shuffle(rng);
        Some(if name == "=" {
            Formula::Equals(args[0].clone(), args[1].clone())
        } else {
            Formula::Atom(name, args)
        })
    }
}

/// Unconstrained random formula over `vocab` using variables from `vars`, with every node
/// kind including counting quantifiers.
pub fn random_formula<R: Rng + ?Sized>(
    vocab: &Vocabulary,
    vars: &[&str],
    depth: usize,
    rng: &mut R,
) -> Formula {
    let var = |rng: &mut R| Var::new(vars.choose(rng).unwrap());
    if depth == 0 || rng.gen_ratio(1, 4) {
        let rels = names_of_arity(vocab, |_| true);
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            2 | 3 => Formula::Equals(var(rng), var(rng)),
            _ if rels.is_empty() => Formula::Top,
            _ => {
                let (name, arity) = rels.choose(rng).unwrap().clone();
                Formula::Atom(name, (0..arity).map(|_| var(rng)).collect())
            }
        };
    }
    let sub = |rng: &mut R| random_formula(vocab, vars, depth - 1, rng);
    match rng.gen_range(0..8) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 | 5 => {
            let k = rng.gen_range(1..=vars.len().min(3));
            let vs: Vec<Var> = vars.choose_multiple(rng, k).map(|n| Var::new(n)).collect();
            if rng.gen_bool(0.5) {
                Formula::Exists(vs, Box::new(sub(rng)))
            } else {
                Formula::Forall(vs, Box::new(sub(rng)))
            }
        }
        _ => {
            let cmp = *[Comparator::AtLeast, Comparator::AtMost, Comparator::Exactly].choose(rng).unwrap();
            Formula::Count(cmp, rng.gen_range(0..=3), var(rng), Box::new(sub(rng)))
        }
    }
}

fn random_surjection<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Surjection {
    let m = rng.gen_range(2..=k);
    let mut map: Vec<usize> = (1..=m).collect();
    while map.len() < k {
        map.push(rng.gen_range(1..=m));
    }
    map.shuffle(rng);
    Surjection::new(map).expect("covers 1..=m")
}

/// Random DL_FU1 role. Ill-typed intersections and reindexings are produced occasionally.
pub fn random_role<R: Rng + ?Sized>(vocab: &Vocabulary, depth: usize, rng: &mut R) -> Role {
    let roles = names_of_arity(vocab, |a| a >= 2);
    if depth == 0 || rng.gen_ratio(1, 3) {
        return match roles.choose(rng) {
            Some((name, _)) if rng.gen_ratio(3, 4) => Role::atomic(name),
            _ => Role::Epsilon,
        };
    }
    match rng.gen_range(0..4) {
        0 => Role::not(random_role(vocab, depth - 1, rng)),
        1 => {
            let a = random_role(vocab, depth - 1, rng);
            let arity = a.arity(vocab).unwrap();
            // mostly well-typed
            let mut b = a.clone();
            for _ in 0..8 {
                let candidate = random_role(vocab, depth - 1, rng);
                if candidate.arity(vocab).unwrap() == arity || rng.gen_ratio(1, 8) {
                    b = candidate;
                    break;
                }
            }
            Role::and(a, b)
        }
        _ => {
            let inner = random_role(vocab, depth - 1, rng);
            let arity = inner.arity(vocab).unwrap();
            let k = if rng.gen_ratio(1, 10) { rng.gen_range(2..=3) } else { arity };
            Role::apply(random_surjection(k, rng), inner)
        }
    }
}

/// Random DL_FU1 concept with the right number of arguments under every `exists`.
pub fn random_concept<R: Rng + ?Sized>(vocab: &Vocabulary, depth: usize, rng: &mut R) -> Concept {
    let concepts = names_of_arity(vocab, |a| a == 1);
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..8) {
            0 => Concept::Top,
            1 => Concept::Bottom,
            _ => match concepts.choose(rng) {
                Some((name, _)) => Concept::atomic(name),
                None => Concept::Top,
            },
        };
    }
    match rng.gen_range(0..5) {
        0 => Concept::not(random_concept(vocab, depth - 1, rng)),
        1 => Concept::and(random_concept(vocab, depth - 1, rng), random_concept(vocab, depth - 1, rng)),
        _ => {
            let r = random_role(vocab, depth.min(3) - 1, rng);
            let arity = r.arity(vocab).unwrap();
            let args = (1..arity).map(|_| random_concept(vocab, depth - 1, rng)).collect();
            Concept::exists(r, args)
        }
    }
}

/// Options for [`random_dlr_concept`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DlrFeatures {
    pub star: bool,
    pub at_most: bool,
}

/// Random DLR_reg concept over `vocab`; star and number restrictions only when enabled.
pub fn random_dlr_concept<R: Rng + ?Sized>(
    vocab: &Vocabulary,
    depth: usize,
    features: DlrFeatures,
    rng: &mut R,
) -> DlrConcept {
    let concepts = names_of_arity(vocab, |a| a == 1);
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match concepts.choose(rng) {
            Some((name, _)) if rng.gen_ratio(4, 5) => DlrConcept::atomic(name),
            _ => DlrConcept::Top,
        };
    }
    let n_max = max_arity(vocab);
    let sub = |rng: &mut R| random_dlr_concept(vocab, depth - 1, features, rng);
    match rng.gen_range(0..8) {
        0 => DlrConcept::not(sub(rng)),
        1 => DlrConcept::and(sub(rng), sub(rng)),
        2..=4 => {
            let e = random_binrel(vocab, depth - 1, features, rng);
            DlrConcept::exists(e, sub(rng))
        }
        5 | 6 => {
            let n = rng.gen_range(2..=n_max);
            let r = random_dlr_role(vocab, n, depth - 1, features, rng);
            let i = rng.gen_range(1..=n);
            if features.at_most && rng.gen_bool(0.5) {
                DlrConcept::AtMost(rng.gen_range(0..=2), i, r)
            } else {
                DlrConcept::ExistsProj(i, r)
            }
        }
        _ => {
            let n = rng.gen_range(2..=n_max);
            let r = random_dlr_role(vocab, n, depth - 1, features, rng);
            if features.at_most {
                DlrConcept::AtMost(rng.gen_range(0..=2), rng.gen_range(1..=n), r)
            } else {
                DlrConcept::ExistsProj(rng.gen_range(1..=n), r)
            }
        }
    }
}

/// Random role of arity `n`.
pub fn random_dlr_role<R: Rng + ?Sized>(
    vocab: &Vocabulary,
    n: usize,
    depth: usize,
    features: DlrFeatures,
    rng: &mut R,
) -> DlrRole {
    let atomic = names_of_arity(vocab, |a| a == n);
    if depth == 0 || rng.gen_ratio(1, 3) {
        return match atomic.choose(rng) {
            Some((name, _)) if rng.gen_ratio(4, 5) => DlrRole::atomic(name),
            _ => DlrRole::Top(n),
        };
    }
    match rng.gen_range(0..4) {
        0 => DlrRole::sel(rng.gen_range(1..=n), n, random_dlr_concept(vocab, depth - 1, features, rng)),
        1 => DlrRole::not(random_dlr_role(vocab, n, depth - 1, features, rng)),
        _ => DlrRole::and(
            random_dlr_role(vocab, n, depth - 1, features, rng),
            random_dlr_role(vocab, n, depth - 1, features, rng),
        ),
    }
}

/// Random binary relation term.
pub fn random_binrel<R: Rng + ?Sized>(
    vocab: &Vocabulary,
    depth: usize,
    features: DlrFeatures,
    rng: &mut R,
) -> DlrBinRel {
    if depth == 0 || rng.gen_ratio(1, 3) {
        if rng.gen_ratio(1, 6) {
            return DlrBinRel::Eps;
        }
        let n = rng.gen_range(2..=max_arity(vocab));
        let r = random_dlr_role(vocab, n, depth.saturating_sub(1), features, rng);
        return DlrBinRel::proj(r, rng.gen_range(1..=n), rng.gen_range(1..=n));
    }
    let sub = |rng: &mut R| random_binrel(vocab, depth - 1, features, rng);
    match rng.gen_range(0..5) {
        0 | 1 => DlrBinRel::comp(sub(rng), sub(rng)),
        2 | 3 => DlrBinRel::union(sub(rng), sub(rng)),
        _ if features.star => DlrBinRel::star(sub(rng)),
        _ => sub(rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragments::check_fragment;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn enumeration_is_exhaustive_and_ordered() {
        let v = Vocabulary::from_pairs([("R", 2), ("P", 1)]).unwrap();
        let all: Vec<Structure> = all_structures(&v, 2).collect();
        assert_eq!(all.len(), 64);
        assert_eq!(structure_count(&v, 2), Some(64));
        assert!(all[0].relations().all(|(_, ts)| ts.is_empty()));
        let distinct: BTreeSet<String> = all.iter().map(|s| s.to_json()).collect();
        assert_eq!(distinct.len(), 64);
    }

    #[test]
    fn generated_members_pass_their_checker() {
        let v = Vocabulary::from_pairs([("R", 2), ("Q", 3), ("P", 1)]).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for frag in [FragmentId::U1WoEq, FragmentId::Fu1, FragmentId::U1, FragmentId::Uc1] {
            let g = FragmentGen::new(&v, frag);
            for _ in 0..200 {
                let x = Var::new("x");
                let f = g.member(4, Some(&x), &mut rng);
                let d = check_fragment(&f, frag);
                assert!(d.verdict, "{f}\n{d}");
                assert!(f.free_variables().len() <= 1);
            }
        }
    }

    #[test]
    fn generated_concepts_are_well_formed() {
        let v = Vocabulary::from_pairs([("R", 2), ("Q", 3), ("A", 1)]).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            random_concept(&v, 4, &mut rng).validate(&v).unwrap();
            let c = random_dlr_concept(&v, 4, DlrFeatures::default(), &mut rng);
            c.validate(&v).unwrap();
            assert!(c.is_dlr0());
        }
    }
}
