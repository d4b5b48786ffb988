#![allow(dead_code)]

use rand::seq::IndexedRandom;
use rand::Rng;
use taquin::jdt::Challenge;
use taquin::{ElementSet, Numbering, Poset};

/// Random poset on `n` elements: each pair `i < j` is related with
/// probability `p`, then reduced to covers.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, p: f64) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    let (poset, _) = Poset::from_relations(n, &pairs).unwrap();
    let mut perm: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
    poset.relabel(&perm)
}

/// Elements of `set` in a uniformly chosen order among minimal elements at
/// each step; always a linear extension of `set`.
pub fn random_order<R: Rng>(rng: &mut R, poset: &Poset, set: ElementSet) -> Vec<usize> {
    let mut left = set;
    let mut out = Vec::with_capacity(set.len());
    while !left.is_empty() {
        let mins: Vec<usize> = poset.minimal_in(left).iter().collect();
        let e = *mins.choose(rng).unwrap();
        out.push(e);
        left.remove(e);
    }
    out
}

pub fn random_subset<R: Rng>(rng: &mut R, set: ElementSet) -> ElementSet {
    set.iter().filter(|_| rng.random_bool(0.5)).collect()
}

/// A random challenge on `poset`, or `None` when the drawn ideal leaves
/// fewer than two minimal elements.
pub fn random_challenge<R: Rng>(rng: &mut R, poset: &Poset) -> Option<Challenge> {
    let ideal = poset.ideal_generated(random_subset(rng, poset.all()));
    let rest = poset.all().difference(ideal);
    let mins: Vec<usize> = poset.minimal_in(rest).iter().collect();
    if mins.len() < 2 {
        return None;
    }
    let pick: Vec<usize> = mins.choose_multiple(rng, 2).copied().collect();
    let rho = Numbering::from_sequence(poset, &random_order(rng, poset, ideal)).unwrap();
    Some(Challenge::new(poset, ideal, rho, pick[0], pick[1]).unwrap())
}

/// A random repair list for `c`: the elements of a random ideal of `P - I`
/// containing `x` and `y`, other than `x` and `y`, in a random compatible
/// order.
pub fn random_repair<R: Rng>(rng: &mut R, poset: &Poset, c: &Challenge) -> Vec<usize> {
    let rest = poset.all().difference(c.ideal);
    let seeds = random_subset(rng, rest).with(c.x).with(c.y);
    let j = poset.ideal_generated(seeds).difference(c.ideal);
    random_order(rng, poset, j.without(c.x).without(c.y))
}

/// Every subset of the poset closed upward.
pub fn all_filters(poset: &Poset) -> Vec<ElementSet> {
    poset.filters().collect()
}
pub mod soundness;
