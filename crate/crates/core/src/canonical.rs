//! Relabeling-invariant canonical forms.
//!
//! Individualization/refinement search: colors are refined by the multisets
//! of neighbor colors along four relations (lower cover, upper cover, strictly
//! below, strictly above) until stable, then the first non-singleton cell is
//! split on each of its members in turn. Every discrete leaf yields a labeling;
//! the lexicographically least strict-order matrix wins. Twin elements (equal
//! strict up- and down-sets) are interchangeable by an automorphism, so only
//! one per twin class is branched on.

use std::fmt;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Default bound on the size accepted by [`canonical_form`].
pub const DEFAULT_CANONICAL_LIMIT: usize = 12;

/// Canonical cover list of an isomorphism class, plus a stable hash of it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    covers: Vec<(usize, usize)>,
    hash: u64,
}

impl CanonicalForm {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// FNV-1a over the canonical cover list; identical across runs and
    /// platforms.
    pub fn hash64(&self) -> u64 {
        self.hash
    }

    /// The canonical representative of the class.
    pub fn to_poset(&self) -> Poset {
        Poset::from_covers(self.n, &self.covers).expect("canonical covers are reduced")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(n={}, {:016x})", self.n, self.hash)
    }
}

fn fnv1a(n: usize, covers: &[(usize, usize)]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    feed(n as u8);
    for &(lo, hi) in covers {
        feed(lo as u8);
        feed(hi as u8);
    }
    h
}

/// Canonical form with the default size bound.
pub fn canonical_form(poset: &Poset) -> Result<CanonicalForm> {
    canonical_form_with_limit(poset, DEFAULT_CANONICAL_LIMIT)
}

pub fn canonical_form_with_limit(poset: &Poset, limit: usize) -> Result<CanonicalForm> {
    canonical_labeling(poset, limit).map(|(form, _)| form)
}

/// Canonical form together with the labeling `perm` (old index → canonical
/// index) that produces it.
pub fn canonical_labeling(poset: &Poset, limit: usize) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = poset.len();
    if n > limit {
        return Err(Error::SizeLimitExceeded { n, limit });
    }
    let mut search = Search { poset, best: None };
    search.descend(vec![0; n]);
    let (_, perm) = search.best.unwrap_or_default();
    let covers = canonical_covers(poset, &perm);
    let hash = fnv1a(n, &covers);
    Ok((CanonicalForm { n, covers, hash }, perm))
}

/// True when the two posets are isomorphic.
pub fn isomorphic(a: &Poset, b: &Poset) -> bool {
    if a.len() != b.len() || a.cover_pairs().len() != b.cover_pairs().len() {
        return false;
    }
    let limit = a.len();
    canonical_form_with_limit(a, limit).ok() == canonical_form_with_limit(b, limit).ok()
}

fn canonical_covers(poset: &Poset, perm: &[usize]) -> Vec<(usize, usize)> {
    let mut covers: Vec<_> = poset.cover_pairs().into_iter().map(|(lo, hi)| (perm[lo], perm[hi])).collect();
    covers.sort_unstable();
    covers
}

struct Search<'p> {
    poset: &'p Poset,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, mut colors: Vec<usize>) {
        let cells = refine(self.poset, &mut colors);
        let n = colors.len();
        if cells == n {
            let code = self.code(&colors);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, colors));
            }
            return;
        }
        // First non-singleton cell.
        let mut sizes = vec![0usize; cells];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("not discrete");
        let mut tried: Vec<(u64, u64)> = Vec::new();
        for v in 0..n {
            if colors[v] != target {
                continue;
            }
            let twin_key = (self.poset.strictly_above(v).bits(), self.poset.strictly_below(v).bits());
            if tried.contains(&twin_key) {
                continue;
            }
            tried.push(twin_key);
            let split: Vec<usize> = (0..n)
                .map(|u| {
                    let c = 2 * colors[u];
                    if colors[u] == target && u != v {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            self.descend(split);
        }
    }

    /// Row `i` holds the canonical indices strictly above canonical element `i`.
    fn code(&self, perm: &[usize]) -> Vec<u64> {
        let mut rows = vec![0u64; perm.len()];
        for (old, &new) in perm.iter().enumerate() {
            rows[new] = self.poset.strictly_above(old).iter().fold(0u64, |acc, b| acc | 1u64 << perm[b]);
        }
        rows
    }
}

/// Refines `colors` to the coarsest stable ordered partition below it and
/// renumbers the colors densely; returns the number of cells.
fn refine(poset: &Poset, colors: &mut [usize]) -> usize {
    let n = colors.len();
    let mut count = densify(colors);
    loop {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut sig = Vec::with_capacity(2 * n);
                sig.push(colors[v]);
                for rel in [
                    poset.lower_covers(v),
                    poset.upper_covers(v),
                    poset.strictly_below(v),
                    poset.strictly_above(v),
                ] {
                    let mut part: Vec<usize> = rel.iter().map(|u| colors[u]).collect();
                    part.sort_unstable();
                    sig.push(usize::MAX);
                    sig.extend(part);
                }
                sig
            })
            .collect();
        let mut distinct: Vec<&Vec<usize>> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        if distinct.len() == count {
            return count;
        }
        for v in 0..n {
            colors[v] = distinct.binary_search(&&sigs[v]).expect("present");
        }
        count = distinct.len();
    }
}

fn densify(colors: &mut [usize]) -> usize {
    let mut values: Vec<usize> = colors.to_vec();
    values.sort_unstable();
    values.dedup();
    for c in colors.iter_mut() {
        *c = values.binary_search(c).expect("present");
    }
    values.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn relabeled_diamond_has_same_form() {
        let d = diamond();
        let r = d.relabel(&[3, 2, 1, 0]);
        assert_ne!(d, r);
        assert_eq!(canonical_form(&d).unwrap(), canonical_form(&r).unwrap());
    }

    #[test]
    fn diamond_and_chain_differ() {
        assert_ne!(canonical_form(&diamond()).unwrap(), canonical_form(&Poset::chain(4)).unwrap());
    }

    #[test]
    fn size_limit() {
        assert_eq!(
            canonical_form(&Poset::chain(13)),
            Err(Error::SizeLimitExceeded { n: 13, limit: 12 })
        );
        assert!(canonical_form_with_limit(&Poset::chain(13), 13).is_ok());
    }

    #[test]
    fn labeling_reproduces_canonical_covers() {
        let d = diamond();
        let (form, perm) = canonical_labeling(&d, 12).unwrap();
        assert_eq!(d.relabel(&perm).cover_pairs(), form.covers());
        assert_eq!(form.to_poset(), d.relabel(&perm));
    }

    #[test]
    fn symmetric_posets_terminate_quickly() {
        let anti = Poset::antichain(12);
        let form = canonical_form(&anti).unwrap();
        assert!(form.covers().is_empty());
        // Four disjoint 3-chains: no twins, but a 4! symmetry.
        let covers: Vec<_> = (0..4).flat_map(|k| [(3 * k, 3 * k + 1), (3 * k + 1, 3 * k + 2)]).collect();
        let p = Poset::from_covers(12, &covers).unwrap();
        let q = p.relabel(&[11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0]);
        assert!(isomorphic(&p, &q));
        let three_fours: Vec<_> = (0..3).flat_map(|k| (0..3).map(move |i| (4 * k + i, 4 * k + i + 1))).collect();
        assert!(!isomorphic(&p, &Poset::from_covers(12, &three_fours).unwrap()));
    }
}
