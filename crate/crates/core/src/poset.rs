//! Finite posets given by their cover relation.

use crate::elements::{ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// A finite poset on the elements `0..n`.
///
/// The cover relation is stored in both directions together with the strict
/// up- and down-sets of every element, so order queries are single bit tests.
/// Values are immutable once validated.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poset {
    n: usize,
    upper: Vec<ElementSet>,
    lower: Vec<ElementSet>,
    above: Vec<ElementSet>,
    below: Vec<ElementSet>,
}

/// A poset induced on a subset, with the map back to the parent's indices.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub poset: Poset,
    /// `to_parent[i]` is the parent element that became element `i`.
    pub to_parent: Vec<usize>,
}

impl Poset {
    /// Builds a poset from a transitively reduced cover list.
    ///
    /// A pair `(lo, hi)` means `lo` is covered by `hi`. Pairs implied by
    /// transitivity (or repeated) are rejected with [`Error::RedundantCover`].
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        let (poset, dropped) = Self::build(n, covers)?;
        if let Some(&(lo, hi)) = dropped.first() {
            return Err(Error::RedundantCover { lo, hi });
        }
        Ok(poset)
    }

    /// Builds a poset from any acyclic relation, reducing it to its covers.
    ///
    /// Returns the pairs that were dropped during the reduction.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<(Poset, Vec<(usize, usize)>)> {
        Self::build(n, pairs)
    }

    fn build(n: usize, pairs: &[(usize, usize)]) -> Result<(Poset, Vec<(usize, usize)>)> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements { n, max: MAX_ELEMENTS });
        }
        let mut dropped = Vec::new();
        let mut upper = vec![ElementSet::EMPTY; n];
        for &(lo, hi) in pairs {
            for index in [lo, hi] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if lo == hi {
                return Err(Error::CycleDetected(lo));
            }
            if upper[lo].contains(hi) {
                dropped.push((lo, hi));
            }
            upper[lo].insert(hi);
        }
        let mut lower = vec![ElementSet::EMPTY; n];
        for lo in 0..n {
            for hi in upper[lo] {
                lower[hi].insert(lo);
            }
        }

        // Kahn's algorithm; the down-sets accumulate along the topological order.
        let mut pending: Vec<usize> = lower.iter().map(|s| s.len()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&e| pending[e] == 0).collect();
        let mut below = vec![ElementSet::EMPTY; n];
        let mut seen = 0;
        while let Some(e) = ready.pop() {
            seen += 1;
            for hi in upper[e] {
                below[hi] = below[hi].union(below[e]).with(e);
                pending[hi] -= 1;
                if pending[hi] == 0 {
                    ready.push(hi);
                }
            }
        }
        if seen < n {
            let stuck = (0..n).find(|&e| pending[e] > 0).unwrap_or(0);
            return Err(Error::CycleDetected(stuck));
        }
        let mut above = vec![ElementSet::EMPTY; n];
        for hi in 0..n {
            for lo in below[hi] {
                above[lo].insert(hi);
            }
        }

        // Drop covers with an intermediate element.
        for lo in 0..n {
            for hi in upper[lo] {
                if !above[lo].intersection(below[hi]).is_empty() {
                    dropped.push((lo, hi));
                    upper[lo].remove(hi);
                    lower[hi].remove(lo);
                }
            }
        }
        dropped.sort_unstable();
        dropped.dedup();
        Ok((Poset { n, upper, lower, above, below }, dropped))
    }

    /// Adds a new element `n` whose strict down-set is `ideal`.
    pub fn extend_with_max(&self, ideal: ElementSet) -> Result<Poset> {
        let n = self.n;
        if n + 1 > MAX_ELEMENTS {
            return Err(Error::TooManyElements { n: n + 1, max: MAX_ELEMENTS });
        }
        if !ideal.is_subset(self.all()) || !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let tops = self.maximal_in(ideal);
        let mut p = self.clone();
        for e in tops {
            p.upper[e].insert(n);
        }
        for e in ideal {
            p.above[e].insert(n);
        }
        p.upper.push(ElementSet::EMPTY);
        p.above.push(ElementSet::EMPTY);
        p.lower.push(tops);
        p.below.push(ideal);
        p.n = n + 1;
        Ok(p)
    }

    /// The antichain on `n` elements.
    pub fn antichain(n: usize) -> Poset {
        Poset::from_covers(n, &[]).expect("antichain is valid")
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_covers(n, &covers).expect("chain is valid")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// Elements covering `e`.
    #[inline]
    pub fn upper_covers(&self, e: usize) -> ElementSet {
        self.upper[e]
    }

    /// Elements covered by `e`.
    #[inline]
    pub fn lower_covers(&self, e: usize) -> ElementSet {
        self.lower[e]
    }

    /// `{y : y > e}`.
    #[inline]
    pub fn strictly_above(&self, e: usize) -> ElementSet {
        self.above[e]
    }

    /// `{y : y < e}`.
    #[inline]
    pub fn strictly_below(&self, e: usize) -> ElementSet {
        self.below[e]
    }

    #[inline]
    pub fn up_set(&self, e: usize) -> ElementSet {
        self.above[e].with(e)
    }

    #[inline]
    pub fn down_set(&self, e: usize) -> ElementSet {
        self.below[e].with(e)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.above[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// True when `lo` is covered by `hi`.
    #[inline]
    pub fn covers(&self, lo: usize, hi: usize) -> bool {
        self.upper[lo].contains(hi)
    }

    /// Cover pairs `(lo, hi)` in lexicographic order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|lo| self.upper[lo].iter().map(move |hi| (lo, hi))).collect()
    }

    pub fn minimal_elements(&self) -> ElementSet {
        (0..self.n).filter(|&e| self.lower[e].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> ElementSet {
        (0..self.n).filter(|&e| self.upper[e].is_empty()).collect()
    }

    /// Minimal elements of the induced subposet on `set`.
    pub fn minimal_in(&self, set: ElementSet) -> ElementSet {
        set.iter().filter(|&e| self.below[e].is_disjoint(set)).collect()
    }

    /// Maximal elements of the induced subposet on `set`.
    pub fn maximal_in(&self, set: ElementSet) -> ElementSet {
        set.iter().filter(|&e| self.above[e].is_disjoint(set)).collect()
    }

    pub fn unique_max(&self) -> Option<usize> {
        let max = self.maximal_elements();
        if max.len() == 1 {
            max.first()
        } else {
            None
        }
    }

    pub fn has_unique_max(&self) -> bool {
        self.unique_max().is_some()
    }

    /// Connectivity of the cover diagram. The empty poset counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut reached = ElementSet::singleton(0);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let mut next = ElementSet::EMPTY;
            for e in frontier {
                next = next.union(self.upper[e]).union(self.lower[e]);
            }
            frontier = next.difference(reached);
            reached = reached.union(next);
        }
        reached.len() == self.n
    }

    /// Connected components of the cover diagram, ordered by smallest member.
    pub fn components(&self) -> Vec<ElementSet> {
        let mut left = self.all();
        let mut out = Vec::new();
        while let Some(seed) = left.first() {
            let mut comp = ElementSet::singleton(seed);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = ElementSet::EMPTY;
                for e in frontier {
                    next = next.union(self.upper[e]).union(self.lower[e]);
                }
                frontier = next.difference(comp);
                comp = comp.union(next);
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_ideal(&self, set: ElementSet) -> bool {
        set.is_subset(self.all()) && set.iter().all(|e| self.below[e].is_subset(set))
    }

    pub fn is_filter(&self, set: ElementSet) -> bool {
        set.is_subset(self.all()) && set.iter().all(|e| self.above[e].is_subset(set))
    }

    pub fn is_chain(&self, set: ElementSet) -> bool {
        let elems: Vec<_> = set.iter().collect();
        elems
            .iter()
            .enumerate()
            .all(|(i, &a)| elems[i + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    /// Smallest ideal containing `set`.
    pub fn ideal_generated(&self, set: ElementSet) -> ElementSet {
        set.iter().fold(set, |acc, e| acc.union(self.below[e]))
    }

    /// Smallest filter containing `set`.
    pub fn filter_generated(&self, set: ElementSet) -> ElementSet {
        set.iter().fold(set, |acc, e| acc.union(self.above[e]))
    }

    /// `[x, y] = {z : x <= z <= y}`.
    pub fn interval(&self, x: usize, y: usize) -> Result<ElementSet> {
        self.check_index(x)?;
        self.check_index(y)?;
        if !self.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        Ok(self.up_set(x).intersection(self.down_set(y)))
    }

    pub fn check_index(&self, e: usize) -> Result<()> {
        if e < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: e, n: self.n })
        }
    }

    /// The poset with every cover reversed.
    pub fn order_dual(&self) -> Poset {
        Poset {
            n: self.n,
            upper: self.lower.clone(),
            lower: self.upper.clone(),
            above: self.below.clone(),
            below: self.above.clone(),
        }
    }

    /// The subposet induced on `set`, renumbered in ascending order of the
    /// parent indices.
    pub fn restrict(&self, set: ElementSet) -> Restriction {
        let to_parent: Vec<usize> = set.iter().collect();
        let mut index = [usize::MAX; MAX_ELEMENTS];
        for (i, &p) in to_parent.iter().enumerate() {
            index[p] = i;
        }
        let map = |s: ElementSet| -> ElementSet { s.intersection(set).iter().map(|p| index[p]).collect() };
        let mut above = Vec::with_capacity(to_parent.len());
        let mut below = Vec::with_capacity(to_parent.len());
        for &p in &to_parent {
            above.push(map(self.above[p]));
            below.push(map(self.below[p]));
        }
        let n = to_parent.len();
        let mut upper = vec![ElementSet::EMPTY; n];
        let mut lower = vec![ElementSet::EMPTY; n];
        for a in 0..n {
            for b in above[a] {
                if above[a].intersection(below[b]).is_empty() {
                    upper[a].insert(b);
                    lower[b].insert(a);
                }
            }
        }
        Restriction { poset: Poset { n, upper, lower, above, below }, to_parent }
    }

    /// Renames element `e` to `perm[e]`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        assert_eq!(perm.len(), self.n);
        let map = |s: ElementSet| -> ElementSet { s.iter().map(|e| perm[e]).collect() };
        let mut out = Poset {
            n: self.n,
            upper: vec![ElementSet::EMPTY; self.n],
            lower: vec![ElementSet::EMPTY; self.n],
            above: vec![ElementSet::EMPTY; self.n],
            below: vec![ElementSet::EMPTY; self.n],
        };
        for e in 0..self.n {
            let t = perm[e];
            out.upper[t] = map(self.upper[e]);
            out.lower[t] = map(self.lower[e]);
            out.above[t] = map(self.above[e]);
            out.below[t] = map(self.below[e]);
        }
        out
    }

    /// A linear extension as a list, by down-set size then index.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&e| (self.below[e].len(), e));
        order
    }

    /// Every ideal of the poset, starting with the empty set.
    pub fn ideals(&self) -> Ideals<'_> {
        self.ideals_within(self.all())
    }

    /// Every subset of `set` that is down-closed relative to `set`.
    ///
    /// When `set` is a filter these are exactly the ideals of the induced
    /// subposet, e.g. the candidate domains for test numberings of `P - I`.
    pub fn ideals_within(&self, set: ElementSet) -> Ideals<'_> {
        let order = self.topological_order().into_iter().filter(|&e| set.contains(e)).collect();
        Ideals { poset: self, set, order, stack: vec![(0, ElementSet::EMPTY)] }
    }

    /// Every filter of the poset, as complements of the ideals.
    pub fn filters(&self) -> impl Iterator<Item = ElementSet> + '_ {
        let all = self.all();
        self.ideals().map(move |i| all.difference(i))
    }
}

/// Depth-first enumeration of down-closed subsets.
///
/// Elements are decided in a fixed linear-extension order, "exclude" before
/// "include", so the order of emission is deterministic and starts with `∅`.
pub struct Ideals<'p> {
    poset: &'p Poset,
    set: ElementSet,
    order: Vec<usize>,
    stack: Vec<(usize, ElementSet)>,
}

impl Iterator for Ideals<'_> {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        while let Some((depth, cur)) = self.stack.pop() {
            if depth == self.order.len() {
                return Some(cur);
            }
            let e = self.order[depth];
            if self.poset.strictly_below(e).intersection(self.set).is_subset(cur) {
                self.stack.push((depth + 1, cur.with(e)));
            }
            self.stack.push((depth + 1, cur));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diamond() -> Poset {
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn diamond_basics() {
        let d = diamond();
        assert_eq!(d.len(), 4);
        assert_eq!(d.unique_max(), Some(3));
        assert!(d.is_connected());
        assert!(d.lt(0, 3) && !d.comparable(1, 2));
        assert_eq!(d.cover_pairs(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn rejects_cycles_and_redundant_covers() {
        assert_eq!(Poset::from_covers(2, &[(0, 1), (1, 0)]), Err(Error::CycleDetected(0)));
        assert_eq!(Poset::from_covers(1, &[(0, 0)]), Err(Error::CycleDetected(0)));
        assert_eq!(
            Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]),
            Err(Error::RedundantCover { lo: 0, hi: 2 })
        );
        assert_eq!(
            Poset::from_covers(2, &[(0, 1), (0, 1)]),
            Err(Error::RedundantCover { lo: 0, hi: 1 })
        );
        assert_eq!(Poset::from_covers(2, &[(0, 5)]), Err(Error::IndexOutOfRange { index: 5, n: 2 }));
    }

    #[test]
    fn lenient_mode_reduces() {
        let (p, dropped) = Poset::from_relations(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(dropped, vec![(0, 2)]);
        assert_eq!(p, Poset::chain(3));
    }

    #[test]
    fn connectivity() {
        assert!(!Poset::antichain(2).is_connected());
        assert!(!Poset::antichain(2).has_unique_max());
        assert_eq!(Poset::antichain(3).components().len(), 3);
    }

    #[test]
    fn ideal_enumeration() {
        assert_eq!(Poset::chain(3).ideals().count(), 4);
        let ideals: Vec<_> = diamond().ideals().collect();
        assert_eq!(ideals.len(), 6);
        assert_eq!(ideals[0], ElementSet::EMPTY);
        let expected: Vec<ElementSet> = vec![
            ElementSet::EMPTY,
            [0].into_iter().collect(),
            [0, 1].into_iter().collect(),
            [0, 2].into_iter().collect(),
            [0, 1, 2].into_iter().collect(),
            ElementSet::full(4),
        ];
        let mut sorted = ideals.clone();
        sorted.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(sorted, want);
        assert!(ideals.iter().all(|&i| diamond().is_ideal(i)));
        assert_eq!(Poset::antichain(4).ideals().count(), 16);
    }

    #[test]
    fn intervals_duals_restrictions() {
        let d = diamond();
        assert_eq!(d.interval(0, 3).unwrap(), ElementSet::full(4));
        assert_eq!(d.interval(1, 2), Err(Error::NotComparable(1, 2)));
        let dual = d.order_dual();
        assert_eq!(dual.unique_max(), Some(0));
        assert_eq!(dual.order_dual(), d);
        let r = d.restrict([0, 1, 3].into_iter().collect());
        assert_eq!(r.poset, Poset::chain(3));
        assert_eq!(r.to_parent, vec![0, 1, 3]);
    }

    #[test]
    fn restriction_keeps_order_without_covers() {
        // 0 < 1 < 2: dropping the middle element must leave 0 covered by 2.
        let r = Poset::chain(3).restrict([0, 2].into_iter().collect());
        assert!(r.poset.covers(0, 1));
    }
}
