//! Numberings (order-preserving bijections onto a chain) and linear
//! extension counting / enumeration.

use std::collections::HashMap;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// An order-preserving bijection from a subset `D` of a poset onto `1..=|D|`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Numbering {
    /// `ranks[e]` is the rank of `e`, or 0 when `e` is outside the domain.
    ranks: Vec<u32>,
    domain: ElementSet,
}

impl Numbering {
    /// The empty numbering on a poset with `n` elements.
    pub fn empty(n: usize) -> Numbering {
        Numbering { ranks: vec![0; n], domain: ElementSet::EMPTY }
    }

    /// Builds a numbering from the sequence of elements of ranks 1, 2, ...
    pub fn from_sequence(poset: &Poset, seq: &[usize]) -> Result<Numbering> {
        let mut ranks = vec![0u32; poset.len()];
        let mut domain = ElementSet::EMPTY;
        for (i, &e) in seq.iter().enumerate() {
            poset.check_index(e)?;
            if domain.contains(e) {
                return Err(Error::InvalidNumbering(format!("element {e} numbered twice")));
            }
            domain.insert(e);
            ranks[e] = i as u32 + 1;
        }
        let out = Numbering { ranks, domain };
        out.check_order(poset)?;
        Ok(out)
    }

    /// Builds a numbering from `(element, rank)` pairs with ranks `1..=len`.
    pub fn from_ranks(poset: &Poset, pairs: &[(usize, u32)]) -> Result<Numbering> {
        let mut seq = vec![usize::MAX; pairs.len()];
        for &(e, r) in pairs {
            if r == 0 || r as usize > pairs.len() || seq[r as usize - 1] != usize::MAX {
                return Err(Error::InvalidNumbering(format!(
                    "ranks must be exactly 1..={} without repeats",
                    pairs.len()
                )));
            }
            seq[r as usize - 1] = e;
        }
        Numbering::from_sequence(poset, &seq)
    }

    /// Builds from a per-element rank vector without validation.
    pub(crate) fn from_rank_vec(ranks: Vec<u32>) -> Numbering {
        let domain = ranks.iter().enumerate().filter(|(_, &r)| r > 0).map(|(e, _)| e).collect();
        Numbering { ranks, domain }
    }

    fn check_order(&self, poset: &Poset) -> Result<()> {
        for a in self.domain {
            for b in poset.strictly_above(a).intersection(self.domain) {
                if self.ranks[a] > self.ranks[b] {
                    return Err(Error::InvalidNumbering(format!(
                        "{a} < {b} but rank {} > {}",
                        self.ranks[a], self.ranks[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> ElementSet {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn rank(&self, e: usize) -> Option<u32> {
        match self.ranks.get(e) {
            Some(&r) if r > 0 => Some(r),
            _ => None,
        }
    }

    /// Elements ordered by rank.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.len()];
        for e in self.domain {
            seq[self.ranks[e] as usize - 1] = e;
        }
        seq
    }

    /// `(element, rank)` pairs in element order.
    pub fn pairs(&self) -> Vec<(usize, u32)> {
        self.domain.iter().map(|e| (e, self.ranks[e])).collect()
    }

    /// Per-element ranks, 0 meaning unnumbered.
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }
}

/// Number of linear extensions, by summing over the lattice of ideals.
pub fn linear_extensions_count(poset: &Poset) -> Result<u128> {
    count_within(poset, poset.all())
}

/// Number of numberings of the subset `set` (order induced from `poset`).
pub fn count_within(poset: &Poset, set: ElementSet) -> Result<u128> {
    let mut memo: HashMap<u64, u128> = HashMap::new();
    memo.insert(0, 1);
    count_rec(poset, set, &mut memo)
}

fn count_rec(poset: &Poset, ideal: ElementSet, memo: &mut HashMap<u64, u128>) -> Result<u128> {
    if let Some(&c) = memo.get(&ideal.bits()) {
        return Ok(c);
    }
    let mut total: u128 = 0;
    for top in poset.maximal_in(ideal) {
        let sub = count_rec(poset, ideal.without(top), memo)?;
        total = total.checked_add(sub).ok_or(Error::Overflow)?;
    }
    memo.insert(ideal.bits(), total);
    Ok(total)
}

/// Every linear extension of the poset.
pub fn linear_extensions(poset: &Poset) -> LinearExtensions<'_> {
    LinearExtensions::new(poset, poset.all())
}

/// Every numbering of `set`, under the order induced from `poset`.
pub fn numberings_of(poset: &Poset, set: ElementSet) -> LinearExtensions<'_> {
    LinearExtensions::new(poset, set)
}

/// Enumerates numberings in lexicographic order of the sequence of chosen
/// minimal elements (smallest index first).
pub struct LinearExtensions<'p> {
    poset: &'p Poset,
    set: ElementSet,
    seq: Vec<usize>,
    placed: ElementSet,
    started: bool,
    done: bool,
}

impl<'p> LinearExtensions<'p> {
    fn new(poset: &'p Poset, set: ElementSet) -> Self {
        LinearExtensions {
            poset,
            set,
            seq: Vec::with_capacity(set.len()),
            placed: ElementSet::EMPTY,
            started: false,
            done: false,
        }
    }

    #[inline]
    fn available(&self, e: usize) -> bool {
        self.set.contains(e)
            && !self.placed.contains(e)
            && self.poset.strictly_below(e).intersection(self.set).is_subset(self.placed)
    }

    fn next_available(&self, after: Option<usize>) -> Option<usize> {
        let start = after.map_or(0, |a| a + 1);
        self.set.iter().filter(|&e| e >= start).find(|&e| self.available(e))
    }

    fn fill(&mut self) {
        while self.seq.len() < self.set.len() {
            let e = self.next_available(None).expect("a finite poset always has a minimal element");
            self.seq.push(e);
            self.placed.insert(e);
        }
    }

    /// Advances `seq` to the next sequence; false when exhausted.
    fn advance(&mut self) -> bool {
        while let Some(last) = self.seq.pop() {
            self.placed.remove(last);
            if let Some(e) = self.next_available(Some(last)) {
                self.seq.push(e);
                self.placed.insert(e);
                self.fill();
                return true;
            }
        }
        false
    }

    /// Next extension as an element sequence, without building a [`Numbering`].
    pub fn next_sequence(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(&self.seq)
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Numbering;

    fn next(&mut self) -> Option<Numbering> {
        let n = self.poset.len();
        let seq = self.next_sequence()?;
        let mut ranks = vec![0u32; n];
        for (i, &e) in seq.iter().enumerate() {
            ranks[e] = i as u32 + 1;
        }
        Some(Numbering::from_rank_vec(ranks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn chain_and_antichain_counts() {
        assert_eq!(linear_extensions_count(&Poset::chain(6)).unwrap(), 1);
        assert_eq!(linear_extensions_count(&Poset::antichain(5)).unwrap(), 120);
        assert_eq!(linear_extensions_count(&Poset::antichain(0)).unwrap(), 1);
        assert_eq!(linear_extensions(&Poset::antichain(0)).count(), 1);
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let seqs: Vec<Vec<usize>> = linear_extensions(&diamond()).map(|n| n.sequence()).collect();
        assert_eq!(seqs, vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]);
        let anti: Vec<Vec<usize>> = linear_extensions(&Poset::antichain(3)).map(|n| n.sequence()).collect();
        assert_eq!(anti.len(), 6);
        let mut sorted = anti.clone();
        sorted.sort();
        assert_eq!(anti, sorted);
    }

    #[test]
    fn numbering_validation() {
        let d = diamond();
        assert!(Numbering::from_sequence(&d, &[0, 2, 1, 3]).is_ok());
        assert!(Numbering::from_sequence(&d, &[1, 0]).is_err());
        assert!(Numbering::from_sequence(&d, &[0, 0]).is_err());
        assert!(Numbering::from_ranks(&d, &[(0, 1), (3, 3)]).is_err());
        let n = Numbering::from_ranks(&d, &[(1, 2), (0, 1)]).unwrap();
        assert_eq!(n.sequence(), vec![0, 1]);
        assert_eq!(n.rank(1), Some(2));
        assert_eq!(n.rank(3), None);
    }

    #[test]
    fn numberings_of_subset_use_induced_order() {
        // In the chain 0<1<2, the subset {0,2} has exactly one numbering.
        let c = Poset::chain(3);
        assert_eq!(numberings_of(&c, [0, 2].into_iter().collect()).count(), 1);
        assert_eq!(count_within(&c, [0, 2].into_iter().collect()).unwrap(), 1);
    }
}
