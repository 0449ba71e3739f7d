//! Support shared by the integration suites and the acceptance runner.
#![allow(dead_code)]

pub mod oracles;
pub mod props;
pub mod symbolic;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use u1kit::gen::random_structure;
use u1kit::logic::{Assignment, Formula};
use u1kit::{Structure, Vocabulary};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn vocab(pairs: &[(&str, usize)]) -> Vocabulary {
    Vocabulary::from_pairs(pairs.iter().copied()).expect("valid vocabulary")
}

/// Random structure with 1 to `max_size` elements and a random density.
pub fn any_structure(vocab: &Vocabulary, max_size: usize, rng: &mut StdRng) -> Structure {
    let n = rng.gen_range(1..=max_size);
    let density = *[0.15, 0.35, 0.5, 0.7].choose(rng).unwrap();
    random_structure(vocab, n, density, rng)
}

/// Binds every free variable of `f` to a random element.
pub fn any_assignment(f: &Formula, s: &Structure, rng: &mut StdRng) -> Assignment {
    let mut a = Assignment::new();
    for v in f.free_variables() {
        a.bind(v, rng.gen_range(0..s.size()));
    }
    a
}

/// Paths of every quantifier node of `f`.
pub fn quantifier_paths(f: &Formula) -> Vec<Vec<usize>> {
    fn walk(f: &Formula, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if f.is_quantifier() {
            out.push(path.clone());
        }
        for (i, c) in f.children().into_iter().enumerate() {
            path.push(i);
            walk(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    walk(f, &mut Vec::new(), &mut out);
    out
}
