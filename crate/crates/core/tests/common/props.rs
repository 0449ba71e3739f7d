//! Randomized properties. Each takes a seeded generator and reports the first violation.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use u1kit::dl::{concept_extension, parse_concept, print_concept, role_extension, Concept, Role};
use u1kit::dlr::{
    dlr_binrel_extension, dlr_concept_extension, dlr_role_extension, parse_dlr_concept, print_dlr_concept,
    DlrBinRel, DlrConcept, TopMode,
};
use u1kit::eval::{eval, eval_naive, holds, satisfaction_set};
use u1kit::fragments::{check_fo2, check_fragment, FragmentId, ViolationKind};
use u1kit::gen::{random_binrel, random_concept, random_dlr_concept, random_dlr_role, random_formula, DlrFeatures, FragmentGen};
use u1kit::logic::{fresh_var, parse_formula, print_formula, Assignment, Comparator, Elem, Formula, Var};
use u1kit::translate::{dl_to_fu1, fu1_to_dl, to_dnf_block};
use u1kit::Vocabulary;

use super::{any_assignment, any_structure, quantifier_paths, vocab};

pub type Property = fn(&mut StdRng) -> Result<(), String>;

const VARS: [&str; 4] = ["x", "y", "z", "u"];

fn formula_vocab() -> Vocabulary {
    vocab(&[("R", 2), ("Q", 3), ("P", 1)])
}

fn check(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Draws until `draw` yields a case the property applies to, so that no case passes vacuously.
fn in_scope<T>(rng: &mut StdRng, mut draw: impl FnMut(&mut StdRng) -> Option<T>) -> Result<T, String> {
    (0..100).find_map(|_| draw(rng)).ok_or_else(|| "no applicable case in 100 draws".to_string())
}

pub fn formula_round_trip(rng: &mut StdRng) -> Result<(), String> {
    let v = formula_vocab();
    let f = random_formula(&v, &VARS, 4, rng);
    let printed = print_formula(&f);
    let back = parse_formula(&printed, &v).map_err(|e| format!("`{printed}` does not reparse: {e}"))?;
    check(back == f, || format!("`{printed}` reparses to {back:?}, not {f:?}"))
}

pub fn concept_round_trip(rng: &mut StdRng) -> Result<(), String> {
    let c = random_concept(&formula_vocab(), 4, rng);
    let printed = print_concept(&c);
    let back = parse_concept(&printed).map_err(|e| format!("`{printed}` does not reparse: {e}"))?;
    check(back == c, || format!("`{printed}` reparses to {back:?}"))
}

pub fn dlr_round_trip(rng: &mut StdRng) -> Result<(), String> {
    let features = DlrFeatures { star: true, at_most: true };
    let c = random_dlr_concept(&formula_vocab(), 4, features, rng);
    let printed = print_dlr_concept(&c);
    let back = parse_dlr_concept(&printed).map_err(|e| format!("`{printed}` does not reparse: {e}"))?;
    check(back == c, || format!("`{printed}` reparses to {back:?}"))
}

/// `~E vs. f` and `A vs. ~f` agree, as do `~A vs. f` and `E vs. ~f`; the short-circuiting
/// evaluator agrees with the naive one throughout.
pub fn eval_duality(rng: &mut StdRng) -> Result<(), String> {
    let v = formula_vocab();
    let body = random_formula(&v, &VARS, 3, rng);
    let k = rng.gen_range(1..=3);
    let vs: Vec<Var> = VARS.choose_multiple(rng, k).map(Var::new).collect();
    let s = any_structure(&v, 4, rng);
    let pairs = [
        (
            Formula::not(Formula::Exists(vs.clone(), Box::new(body.clone()))),
            Formula::Forall(vs.clone(), Box::new(Formula::not(body.clone()))),
        ),
        (
            Formula::not(Formula::Forall(vs.clone(), Box::new(body.clone()))),
            Formula::Exists(vs, Box::new(Formula::not(body))),
        ),
    ];
    for (a, b) in pairs {
        let asg = any_assignment(&a, &s, rng);
        let results = [eval(&s, &asg, &a), eval(&s, &asg, &b), eval_naive(&s, &asg, &a), eval_naive(&s, &asg, &b)];
        let results: Vec<bool> = results.into_iter().collect::<Result<_, _>>().map_err(text)?;
        check(results.iter().all(|&r| r == results[0]), || {
            format!("{a} / {b} give {results:?} on {} under {asg:?}", s.to_json())
        })?;
    }
    Ok(())
}

/// Renaming one bound variable of a random quantifier node to a fresh name.
pub fn eval_alpha(rng: &mut StdRng) -> Result<(), String> {
    let v = formula_vocab();
    let (f, path) = in_scope(rng, |rng| {
        let f = random_formula(&v, &VARS, 4, rng);
        let path = quantifier_paths(&f).choose(rng)?.clone();
        Some((f, path))
    })?;
    let path = &path;
    let taken = f.variables();
    let fresh = fresh_var("v", |x| taken.contains(x));
    let renamed = match f.at_path(path).expect("path exists") {
        Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
            let old = vs.choose(rng).unwrap().clone();
            let vs2: Vec<Var> = vs.iter().map(|x| if *x == old { fresh.clone() } else { x.clone() }).collect();
            let body2 = Box::new(body.rename_free(&old, &fresh));
            match f.at_path(path).unwrap() {
                Formula::Exists(..) => Formula::Exists(vs2, body2),
                _ => Formula::Forall(vs2, body2),
            }
        }
        Formula::Count(c, k, old, body) => Formula::Count(*c, *k, fresh.clone(), Box::new(body.rename_free(old, &fresh))),
        _ => unreachable!("quantifier path"),
    };
    let g = f.replace_at(path, renamed).expect("path exists");
    let s = any_structure(&v, 4, rng);
    let asg = any_assignment(&f, &s, rng);
    let (a, b) = (eval(&s, &asg, &f).map_err(text)?, eval(&s, &asg, &g).map_err(text)?);
    check(a == b, || format!("{f} gives {a}, its variant {g} gives {b} on {}", s.to_json()))
}

/// Truth is preserved by a random permutation of the domain carried through the assignment.
pub fn eval_isomorphism(rng: &mut StdRng) -> Result<(), String> {
    let v = formula_vocab();
    let f = random_formula(&v, &VARS, 4, rng);
    let s = any_structure(&v, 4, rng);
    let mut perm: Vec<Elem> = (0..s.size()).collect();
    perm.shuffle(rng);
    let image = s.permuted(&perm);
    let asg = any_assignment(&f, &s, rng);
    let mut moved = Assignment::new();
    for (x, e) in asg.iter() {
        moved.bind(x.clone(), perm[e]);
    }
    let (a, b) = (eval(&s, &asg, &f).map_err(text)?, eval(&image, &moved, &f).map_err(text)?);
    check(a == b, || format!("{f}: {a} on {}, {b} on the image under {perm:?}", s.to_json()))
}

/// U1(wo=) ⊆ FU1 ⊆ U1 ⊆ UC1 on unconstrained formulae and on members of each fragment.
pub fn fragment_chain(rng: &mut StdRng) -> Result<(), String> {
    let v = formula_vocab();
    let f = if rng.gen_bool(0.5) {
        random_formula(&v, &VARS[..3], 3, rng)
    } else {
        let frag = *[FragmentId::U1WoEq, FragmentId::Fu1, FragmentId::U1, FragmentId::Uc1].choose(rng).unwrap();
        let x = Var::new("x");
        let free = if rng.gen_bool(0.7) { Some(&x) } else { None };
        FragmentGen::new(&v, frag).member(3, free, rng)
    };
    let chain = [FragmentId::U1WoEq, FragmentId::Fu1, FragmentId::U1, FragmentId::Uc1];
    let verdicts: Vec<bool> = chain.iter().map(|&frag| check_fragment(&f, frag).verdict).collect();
    check(verdicts.windows(2).all(|w| !w[0] || w[1]), || format!("{f}: verdicts {verdicts:?} along {chain:?}"))
}

/// Reflexive-transitive closure by repeated relaxation, for comparison.
fn closure(n: usize, pairs: &BTreeSet<(Elem, Elem)>) -> BTreeSet<(Elem, Elem)> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in pairs {
        reach[a][b] = true;
    }
    for (u, row) in reach.iter_mut().enumerate() {
        row[u] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
            }
        }
    }
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| reach[i][j]).collect()
}

/// `e**` = `e*`, and `e*` is the reflexive-transitive closure of `e`.
pub fn star_idempotent(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2), ("Q", 3), ("A", 1)]);
    let e = random_binrel(&v, 3, DlrFeatures { star: true, at_most: true }, rng);
    let s = any_structure(&v, 4, rng);
    let mode = if rng.gen_bool(0.5) { TopMode::Full } else { TopMode::Explicit };
    let ext = |e: &DlrBinRel| dlr_binrel_extension(&s, e, mode).map_err(text);
    let once = ext(&DlrBinRel::star(e.clone()))?;
    let twice = ext(&DlrBinRel::star(DlrBinRel::star(e.clone())))?;
    check(once == twice, || format!("({e})* and its star differ on {}", s.to_json()))?;
    let expected = closure(s.size(), &ext(&e)?);
    check(once == expected, || format!("({e})* is {once:?}, closure is {expected:?} on {}", s.to_json()))
}

/// `(<=k[$i]r)` grows with `k` and matches a direct count of tuples.
pub fn at_most_monotone(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2), ("Q", 3), ("A", 1)]);
    let n = rng.gen_range(2..=3);
    let r = random_dlr_role(&v, n, 3, DlrFeatures { star: true, at_most: true }, rng);
    let i = rng.gen_range(1..=n);
    let s = any_structure(&v, 4, rng);
    let mode = if rng.gen_bool(0.5) { TopMode::Full } else { TopMode::Explicit };
    let tuples = dlr_role_extension(&s, &r, mode).map_err(text)?;
    let mut exts = Vec::new();
    for k in 0..=4 {
        let ext = dlr_concept_extension(&s, &DlrConcept::AtMost(k, i, r.clone()), mode).map_err(text)?;
        let counted: BTreeSet<Elem> =
            s.elements().filter(|&u| tuples.iter().filter(|t| t[i - 1] == u).count() <= k).collect();
        check(ext == counted, || format!("(<={k}[${i}] {r}) is {ext:?}, counting gives {counted:?}"))?;
        exts.push(ext);
    }
    check(exts.windows(2).all(|w| w[0].is_subset(&w[1])), || {
        format!("(<=k[${i}] {r}) is not monotone in k on {}: {exts:?}", s.to_json())
    })
}

/// `E[>=1] y. f` is `E y. f`, and `E[=k]` is `E[>=k] & E[<=k]`.
pub fn counting_consistency(rng: &mut StdRng) -> Result<(), String> {
    let v = formula_vocab();
    let body = random_formula(&v, &VARS, 3, rng);
    let y = Var::new(VARS.choose(rng).unwrap());
    let k = rng.gen_range(0..=3);
    let count = |c, k| Formula::Count(c, k, y.clone(), Box::new(body.clone()));
    let pairs = [
        (count(Comparator::AtLeast, 1), Formula::Exists(vec![y.clone()], Box::new(body.clone()))),
        (count(Comparator::Exactly, k), Formula::and(count(Comparator::AtLeast, k), count(Comparator::AtMost, k))),
    ];
    let s = any_structure(&v, 4, rng);
    for (a, b) in pairs {
        let asg = any_assignment(&Formula::and(a.clone(), b.clone()), &s, rng);
        let (p, q) = (eval(&s, &asg, &a).map_err(text)?, eval(&s, &asg, &b).map_err(text)?);
        check(p == q, || format!("{a} gives {p}, {b} gives {q} on {}", s.to_json()))?;
    }
    Ok(())
}

/// A member of FO2 without equality over an at most binary vocabulary is a member of FU1.
pub fn fo2_in_fu1(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("S", 2), ("P", 1)]);
    let f = in_scope(rng, |rng| {
        let f = random_formula(&v, &["x", "y"], 4, rng);
        let mut has_eq = false;
        f.visit(&mut |g| has_eq |= matches!(g, Formula::Equals(..)));
        (!has_eq && f.free_variables().len() <= 1 && check_fo2(&f).verdict).then_some(f)
    })?;
    let d = check_fragment(&f, FragmentId::Fu1);
    check(d.verdict, || format!("{f} is in FO2 but not FU1: {:?}", d.violations))
}

/// Atoms over two or more distinct variables in the Boolean part of each block, by block path.
fn block_atoms(f: &Formula) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
    fn leaves(f: &Formula, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match f {
            Formula::Atom(_, args) if args.iter().collect::<BTreeSet<_>>().len() > 1 => out.push(path.clone()),
            Formula::Not(_) | Formula::And(..) | Formula::Or(..) | Formula::Implies(..) => {
                for (i, c) in f.children().into_iter().enumerate() {
                    path.push(i);
                    leaves(c, path, out);
                    path.pop();
                }
            }
            _ => {}
        }
    }
    quantifier_paths(f)
        .into_iter()
        .map(|p| {
            let mut atoms = Vec::new();
            let mut path = p.clone();
            path.push(0);
            leaves(f.at_path(&p).unwrap().children()[0], &mut path, &mut atoms);
            (p, atoms)
        })
        .collect()
}

/// Moves one atom of a block with at least two atoms to a different variable set drawn from
/// the block's scope. Returns the atom's path and the mutated formula.
fn move_atom(f: &Formula, rng: &mut StdRng) -> Option<(Vec<usize>, Formula)> {
    let candidates: Vec<_> = block_atoms(f).into_iter().filter(|(_, atoms)| atoms.len() >= 2).collect();
    let (block, atoms) = candidates.choose(rng)?;
    let target = atoms.choose(rng)?.clone();
    let Some(Formula::Atom(name, args)) = f.at_path(&target) else { unreachable!("atom path") };
    let whole = f.at_path(block)?;
    let mut scope: BTreeSet<Var> = whole.free_variables();
    match whole {
        Formula::Exists(vs, _) | Formula::Forall(vs, _) => scope.extend(vs.iter().cloned()),
        Formula::Count(_, _, w, _) => {
            scope.insert(w.clone());
        }
        _ => unreachable!("block path"),
    }
    let current: BTreeSet<Var> = args.iter().cloned().collect();
    let scope: Vec<Var> = scope.into_iter().collect();
    let options: Vec<Vec<Var>> = (1u32..1 << scope.len())
        .map(|mask| scope.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w.clone()).collect::<Vec<_>>())
        .filter(|set| set.len() >= 2 && set.len() <= args.len() && set.iter().cloned().collect::<BTreeSet<_>>() != current)
        .collect();
    let set = options.choose(rng)?;
    let mut new_args = set.clone();
    while new_args.len() < args.len() {
        new_args.push(set.choose(rng)?.clone());
    }
    new_args.shuffle(rng);
    let mutated = f.replace_at(&target, Formula::Atom(name.clone(), new_args))?;
    Some((target, mutated))
}

/// Moving one atom of a block with several atoms to a different variable set breaks
/// uniformity, and the violation points at the moved atom.
pub fn uniformity_mutation(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2), ("Q", 3), ("P", 1)]);
    let x = Var::new("x");
    let (f, target, mutated) = in_scope(rng, |rng| {
        let f = FragmentGen::new(&v, FragmentId::U1).block(2, Some(&x), rng);
        let (target, mutated) = move_atom(&f, rng)?;
        Some((f, target, mutated))
    })?;
    let d = check_fragment(&mutated, FragmentId::U1);
    check(!d.verdict, || format!("{mutated} (mutated from {f}) is still accepted"))?;
    check(
        d.violations.iter().any(|w| w.kind == ViolationKind::Uniformity && w.path == target),
        || format!("{mutated}: no uniformity violation at {target:?}: {:?}", d.violations),
    )
}

/// The triangle sentence holds on a disjoint union iff it holds on one of the parts.
pub fn triangle_locality(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2)]);
    let f = parse_formula("E x y z. ((R(x,y) & R(y,z)) & R(z,x))", &v).map_err(text)?;
    let (a, b) = (any_structure(&v, 4, rng), any_structure(&v, 4, rng));
    let u = u1kit::logic::disjoint_union(&a, &b).map_err(text)?;
    let (p, q, r) = (holds(&a, &f).map_err(text)?, holds(&b, &f).map_err(text)?, holds(&u, &f).map_err(text)?);
    check(r == (p || q), || format!("union {r}, parts {p} {q}"))
}

/// Double negation of roles and concepts, and a permutation undone by its inverse.
pub fn dl_laws(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2), ("Q", 3), ("A", 1)]);
    let s = any_structure(&v, 3, rng);
    let r = u1kit::gen::random_role(&v, 3, rng);
    let c = random_concept(&v, 3, rng);
    let rext = |r: &Role| role_extension(&s, r).map_err(text);
    check(rext(&Role::not(Role::not(r.clone())))? == rext(&r)?, || format!("~~{r} differs from {r}"))?;
    let cext = |c: &Concept| concept_extension(&s, c).map_err(text);
    check(cext(&Concept::not(Concept::not(c.clone())))? == cext(&c)?, || format!("~~{c} differs from {c}"))?;
    let k = r.arity(&v).map_err(text)?;
    let mut map: Vec<usize> = (1..=k).collect();
    map.shuffle(rng);
    let sigma = u1kit::dl::Surjection::new(map).map_err(text)?;
    let back = Role::apply(sigma.inverse().unwrap(), Role::apply(sigma.clone(), r.clone()));
    check(rext(&back)? == rext(&r)?, || format!("{back} differs from {r}"))
}

/// `dl_to_fu1` lands in FU1 with at most one free variable and has the concept's extension;
/// translating back gives the same extension again.
pub fn dl_standard_translation(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2), ("Q", 3), ("A", 1), ("B", 1)]);
    let c = random_concept(&v, 4, rng);
    let f = dl_to_fu1(&c, &v).map_err(text)?;
    let d = check_fragment(&f, FragmentId::Fu1);
    check(d.verdict && f.free_variables().len() <= 1, || format!("{c} gives {f}: {:?}", d.violations))?;
    let back = fu1_to_dl(&f).map_err(|e| format!("{f}: {e}"))?;
    for _ in 0..4 {
        let s = any_structure(&v, 4, rng);
        let ext = concept_extension(&s, &c).map_err(text)?;
        let sat = satisfaction_set(&s, &f).map_err(text)?.elements;
        let again = concept_extension(&s, &back).map_err(text)?;
        check(ext == sat && sat == again, || {
            format!("{c}: {ext:?}, {f}: {sat:?}, {back}: {again:?} on {}", s.to_json())
        })?;
    }
    Ok(())
}

/// Every tuple of a declared n-ary relation lies in `topN`, in both top modes.
pub fn top_coverage(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2), ("S", 2), ("Q", 3), ("A", 1)]);
    let s = any_structure(&v, 4, rng);
    for mode in [TopMode::Full, TopMode::Explicit] {
        for n in [2, 3] {
            let top = dlr_role_extension(&s, &u1kit::dlr::DlrRole::Top(n), mode).map_err(text)?;
            for (name, arity) in v.iter().filter(|(_, a)| *a == n) {
                let rel = s.relation(name).cloned().unwrap_or_default();
                check(rel.is_subset(&top), || format!("{name} is not covered by top{arity} in {mode:?}"))?;
            }
        }
    }
    Ok(())
}

/// `exists[$i] r` is the complement of `(<=0[$i] r)`.
pub fn exists_complements_at_most_zero(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2), ("Q", 3), ("A", 1)]);
    let n = rng.gen_range(2..=3);
    let r = random_dlr_role(&v, n, 3, DlrFeatures { star: true, at_most: true }, rng);
    let i = rng.gen_range(1..=n);
    let s = any_structure(&v, 4, rng);
    let exists = dlr_concept_extension(&s, &DlrConcept::ExistsProj(i, r.clone()), TopMode::Full).map_err(text)?;
    let at_most = dlr_concept_extension(&s, &DlrConcept::AtMost(0, i, r.clone()), TopMode::Full).map_err(text)?;
    let complement: BTreeSet<Elem> = s.elements().filter(|u| !at_most.contains(u)).collect();
    check(exists == complement, || format!("exists[${i}] {r} is {exists:?}, complement is {complement:?}"))
}

/// Number of elements and tuples add up under disjoint union.
pub fn union_cardinality(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2), ("Q", 3), ("A", 1)]);
    let (a, b) = (any_structure(&v, 4, rng), any_structure(&v, 4, rng));
    let u = u1kit::logic::disjoint_union(&a, &b).map_err(text)?;
    check(u.size() == a.size() + b.size(), || "domain sizes do not add up".into())?;
    let count = |s: &u1kit::Structure, r: &str| s.relation(r).map_or(0, |t| t.len());
    for (name, _) in v.iter() {
        check(count(&u, name) == count(&a, name) + count(&b, name), || format!("{name} sizes do not add up"))?;
    }
    Ok(())
}

/// The normal form of an FU1 block is equivalent to it, every disjunct shares one variable
/// set among its higher-arity literals, and that set is covered by the unary groups.
pub fn dnf_normal_form(rng: &mut StdRng) -> Result<(), String> {
    let v = vocab(&[("R", 2), ("Q", 3), ("P", 1)]);
    let x = Var::new("x");
    let f = in_scope(rng, |rng| {
        let f = FragmentGen::new(&v, FragmentId::Fu1).block(3, Some(&x), rng);
        matches!(f, Formula::Exists(..)).then_some(f)
    })?;
    let b = to_dnf_block(&f).map_err(|e| format!("{f}: {e}"))?;
    for d in &b.disjuncts {
        for l in &d.t_literals {
            let vars: BTreeSet<Var> = l.leaf.free_variables();
            check(vars == d.t_vars, || format!("{f}: literal {} outside {:?}", l.leaf, d.t_vars))?;
        }
        check(d.t_vars.iter().all(|w| d.unary.contains_key(w)), || format!("{f}: unsaturated disjunct"))?;
    }
    let g = b.to_formula();
    for _ in 0..4 {
        let s = any_structure(&v, 3, rng);
        let (a, c) = (satisfaction_set(&s, &f).map_err(text)?, satisfaction_set(&s, &g).map_err(text)?);
        check(a.elements == c.elements, || format!("{f} and its normal form {g} differ on {}", s.to_json()))?;
    }
    Ok(())
}

/// Every property with a name, in the order they are reported.
pub fn all() -> Vec<(&'static str, Property)> {
    vec![
        ("formula round trip", formula_round_trip),
        ("concept round trip", concept_round_trip),
        ("dlr concept round trip", dlr_round_trip),
        ("eval duality", eval_duality),
        ("eval alpha renaming", eval_alpha),
        ("eval isomorphism", eval_isomorphism),
        ("fragment chain", fragment_chain),
        ("star idempotence", star_idempotent),
        ("at-most monotonicity", at_most_monotone),
        ("counting consistency", counting_consistency),
        ("fo2 inside fu1", fo2_in_fu1),
        ("uniformity mutation", uniformity_mutation),
        ("triangle locality", triangle_locality),
        ("dl laws", dl_laws),
        ("dl standard translation", dl_standard_translation),
        ("top coverage", top_coverage),
        ("exists complements at-most zero", exists_complements_at_most_zero),
        ("union cardinality", union_cardinality),
        ("dnf normal form", dnf_normal_form),
    ]
}

/// Groups the property suites that must each pass on at least 500 random cases.
pub fn required_suites() -> Vec<(&'static str, Vec<Property>)> {
    vec![
        ("AST round trip", vec![formula_round_trip, concept_round_trip, dlr_round_trip]),
        ("eval duality", vec![eval_duality]),
        ("eval alpha renaming", vec![eval_alpha]),
        ("eval isomorphism", vec![eval_isomorphism]),
        ("fragment chain", vec![fragment_chain]),
        ("star idempotence", vec![star_idempotent]),
        ("at-most monotonicity", vec![at_most_monotone]),
    ]
}
