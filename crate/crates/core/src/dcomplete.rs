//! d_k and d_k⁻ intervals and the three d-complete axioms.
//!
//! Intervals are matched against double-tailed diamonds structurally: an
//! interval `[w, z]` has the shape Δ_{b,n} when it holds exactly one
//! incomparable pair, with `b` elements below that pair and `n` above it.

use std::fmt;

use crate::elements::ElementSet;
use crate::poset::Poset;

/// An interval isomorphic to Δ_{k-2,k-2} (for k = 3, a diamond).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DkInterval {
    pub k: usize,
    pub bottom: usize,
    pub top: usize,
    /// The two incomparable middle elements, smaller index first.
    pub mids: (usize, usize),
    pub members: ElementSet,
}

/// For k = 3 the triple `[w; x, y]` of two elements covering `w`; for
/// k ≥ 4 an interval `[w, y]` isomorphic to Δ_{k-2,k-3}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DkMinusInterval {
    pub k: usize,
    pub bottom: usize,
    /// `None` for k = 3.
    pub top: Option<usize>,
    pub mids: (usize, usize),
    pub members: ElementSet,
}

impl fmt::Display for DkInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}[{},{}]", self.k, self.bottom, self.top)
    }
}

impl fmt::Display for DkMinusInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.top {
            None => write!(f, "d3-[{};{},{}]", self.bottom, self.mids.0, self.mids.1),
            Some(t) => write!(f, "d{}-[{},{}]", self.k, self.bottom, t),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Axiom {
    D1,
    D2,
    D3,
}

/// Why an axiom fails.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// A d_k⁻-interval with no completing element.
    Uncompleted(DkMinusInterval),
    /// The top of a d_k-interval covers `element`, which lies outside it.
    ExtraCover { interval: DkInterval, element: usize },
    /// Two overlapping d_k⁻-intervals.
    Overlap(DkMinusInterval, DkMinusInterval),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Uncompleted(i) => write!(f, "{i} is not completed"),
            Witness::ExtraCover { interval, element } => {
                write!(f, "top of {interval} covers {element} outside the interval")
            }
            Witness::Overlap(a, b) => write!(f, "{a} overlaps {b}"),
        }
    }
}

/// Outcome of checking one axiom; passes when `witnesses` is empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub axiom: Axiom,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// A Δ_{b,n}-shaped interval found in a poset.
#[derive(Clone, Copy, Debug)]
struct DeltaShape {
    bottom: usize,
    top: usize,
    b: usize,
    n: usize,
    mids: (usize, usize),
    members: ElementSet,
}

/// Matches `[w, z]` against Δ_{b,n} for the unique `(b, n)` it could be.
fn delta_shape(poset: &Poset, w: usize, z: usize) -> Option<DeltaShape> {
    let members = poset.up_set(w).intersection(poset.down_set(z));
    let mut pair = None;
    for a in members {
        let incomparable = members.difference(poset.up_set(a)).difference(poset.down_set(a));
        match incomparable.len() {
            0 => {}
            1 => {
                let b = incomparable.first().expect("one element");
                if a < b {
                    if pair.is_some() {
                        return None;
                    }
                    pair = Some((a, b));
                }
            }
            _ => return None,
        }
    }
    let (x, y) = pair?;
    let below = poset.strictly_below(x).intersection(members);
    if below != poset.strictly_below(y).intersection(members) {
        return None;
    }
    let b = below.len();
    let n = members.len() - b - 2;
    Some(DeltaShape { bottom: w, top: z, b, n, mids: (x, y), members })
}

/// Every Δ-shaped interval `[w, z]` with `b, n ≥ 1`.
fn delta_shapes(poset: &Poset) -> Vec<DeltaShape> {
    let mut out = Vec::new();
    for w in 0..poset.len() {
        for z in poset.strictly_above(w) {
            if let Some(s) = delta_shape(poset, w, z) {
                if s.b >= 1 && s.n >= 1 {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Every d_k-interval.
pub fn find_dk_intervals(poset: &Poset, k: usize) -> Vec<DkInterval> {
    assert!(k >= 3, "d_k intervals start at k = 3");
    delta_shapes(poset)
        .into_iter()
        .filter(|s| s.b == k - 2 && s.n == k - 2)
        .map(|s| DkInterval { k, bottom: s.bottom, top: s.top, mids: s.mids, members: s.members })
        .collect()
}

/// Every d_k⁻-interval.
pub fn find_dk_minus_intervals(poset: &Poset, k: usize) -> Vec<DkMinusInterval> {
    assert!(k >= 3, "d_k intervals start at k = 3");
    if k == 3 {
        let mut out = Vec::new();
        for w in 0..poset.len() {
            let ups: Vec<usize> = poset.upper_covers(w).iter().collect();
            for (i, &x) in ups.iter().enumerate() {
                for &y in &ups[i + 1..] {
                    out.push(DkMinusInterval {
                        k,
                        bottom: w,
                        top: None,
                        mids: (x, y),
                        members: [w, x, y].into_iter().collect(),
                    });
                }
            }
        }
        return out;
    }
    delta_shapes(poset)
        .into_iter()
        .filter(|s| s.b == k - 2 && s.n == k - 3)
        .map(|s| DkMinusInterval { k, bottom: s.bottom, top: Some(s.top), mids: s.mids, members: s.members })
        .collect()
}

/// All d_k and d_k⁻ intervals for every k that occurs.
struct Census {
    full: Vec<DkInterval>,
    minus: Vec<DkMinusInterval>,
}

fn census(poset: &Poset, max_k: Option<usize>) -> Census {
    let allow = |k: usize| max_k.is_none_or(|m| k <= m);
    let mut full = Vec::new();
    let mut minus = find_dk_minus_intervals(poset, 3);
    for s in delta_shapes(poset) {
        if s.b == s.n && allow(s.b + 2) {
            full.push(DkInterval { k: s.b + 2, bottom: s.bottom, top: s.top, mids: s.mids, members: s.members });
        } else if s.b == s.n + 1 && allow(s.b + 2) {
            minus.push(DkMinusInterval {
                k: s.b + 2,
                bottom: s.bottom,
                top: Some(s.top),
                mids: s.mids,
                members: s.members,
            });
        }
    }
    Census { full, minus }
}

fn is_completed(poset: &Poset, full: &[DkInterval], m: &DkMinusInterval) -> bool {
    match m.top {
        None => full
            .iter()
            .any(|d| d.k == 3 && d.bottom == m.bottom && d.mids == m.mids),
        Some(y) => full
            .iter()
            .any(|d| d.k == m.k && d.bottom == m.bottom && poset.covers(y, d.top) && d.members.contains(y)),
    }
}

/// The element covering the bottom of a d_k⁻-interval (k ≥ 4) inside it.
fn second(poset: &Poset, m: &DkMinusInterval) -> usize {
    poset
        .upper_covers(m.bottom)
        .intersection(m.members)
        .first()
        .expect("Δ intervals have a bottom chain")
}

fn check(poset: &Poset, c: &Census, axiom: Axiom) -> Verdict {
    let mut witnesses = Vec::new();
    match axiom {
        Axiom::D1 => {
            for m in &c.minus {
                if !is_completed(poset, &c.full, m) {
                    witnesses.push(Witness::Uncompleted(*m));
                }
            }
        }
        Axiom::D2 => {
            for d in &c.full {
                for e in poset.lower_covers(d.top).difference(d.members) {
                    witnesses.push(Witness::ExtraCover { interval: *d, element: e });
                }
            }
        }
        Axiom::D3 => {
            for (i, a) in c.minus.iter().enumerate() {
                for b in &c.minus[i + 1..] {
                    if a.k != b.k || a.bottom == b.bottom {
                        continue;
                    }
                    let overlap = if a.k == 3 {
                        a.mids == b.mids
                    } else {
                        a.top == b.top && second(poset, a) == second(poset, b)
                    };
                    if overlap {
                        witnesses.push(Witness::Overlap(*a, *b));
                    }
                }
            }
        }
    }
    Verdict { axiom, witnesses }
}

/// Checks one axiom for every k ≥ 3.
pub fn check_axiom(poset: &Poset, axiom: Axiom) -> Verdict {
    check(poset, &census(poset, None), axiom)
}

/// The three axioms for every k, in order.
pub fn check_all(poset: &Poset) -> [Verdict; 3] {
    let c = census(poset, None);
    [Axiom::D1, Axiom::D2, Axiom::D3].map(|a| check(poset, &c, a))
}

pub fn is_dcomplete(poset: &Poset) -> bool {
    check_all(poset).iter().all(Verdict::passed)
}

/// D1 through D3 for k = 3 only.
pub fn is_d3_complete(poset: &Poset) -> bool {
    let c = census(poset, Some(3));
    [Axiom::D1, Axiom::D2, Axiom::D3].iter().all(|&a| check(poset, &c, a).passed())
}

/// D3 for every k.
pub fn is_nonoverlapping(poset: &Poset) -> bool {
    check_axiom(poset, Axiom::D3).passed()
}

/// Elements lying strictly above both middle elements of some d_k-interval,
/// within that interval.
pub(crate) fn upper_chains(poset: &Poset) -> ElementSet {
    census(poset, None)
        .full
        .iter()
        .map(|d| d.members.intersection(poset.strictly_above(d.mids.0)).intersection(poset.strictly_above(d.mids.1)))
        .fold(ElementSet::EMPTY, ElementSet::union)
}
