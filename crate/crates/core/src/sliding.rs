//! Bubbles, labels and the slideout / emptying operators.
//!
//! A bubble swaps with the largest label among the elements it covers, and
//! keeps doing so until it covers no label. Bubbles and empty cells are never
//! swap targets, so every swap strictly lowers a bubble and emptying always
//! terminates.

use std::fmt;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::extensions::Numbering;
use crate::poset::Poset;

/// Names a bubble: one of the two test bubbles, the `i`th indexed bubble,
/// or a leader created while repairing a collision.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BubbleId {
    TestA,
    TestB,
    Indexed(u32),
    Leader(u32),
}

impl fmt::Display for BubbleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BubbleId::TestA => f.write_str("A"),
            BubbleId::TestB => f.write_str("B"),
            BubbleId::Indexed(i) => write!(f, "G{i}"),
            BubbleId::Leader(i) => write!(f, "L{i}"),
        }
    }
}

/// Contents of one element in a snapshot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Cell {
    Empty,
    Bubble(BubbleId),
    Label(u32),
}

/// The order in which the two test bubbles are slid out.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TestOrder {
    /// `S_B ∘ S_A`: `A` is slid first.
    BA,
    /// `S_A ∘ S_B`: `B` is slid first.
    AB,
}

/// Whether a bi-numbering covers the whole poset with indexed bubbles only,
/// or carries the two test bubbles on an ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Form {
    Plain,
    Test,
}

/// Green bubbles and red labels on disjoint domains.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiNumbering {
    green: Vec<Option<BubbleId>>,
    red: Numbering,
    form: Form,
}

impl BiNumbering {
    /// Validates a green assignment against a red numbering.
    ///
    /// Without test bubbles the two domains must partition the poset and the
    /// indexed bubbles must number their domain. With both test bubbles the
    /// union must be an ideal and the bubbles must respect the quasi-order in
    /// which `A` and `B` sit below every indexed bubble.
    pub fn new(poset: &Poset, green: &[(usize, BubbleId)], red: Numbering) -> Result<BiNumbering> {
        let bad = |m: String| Err(Error::MalformedBiNumbering(m));
        let n = poset.len();
        let mut cells = vec![None; n];
        let mut green_dom = ElementSet::EMPTY;
        for &(e, b) in green {
            poset.check_index(e)?;
            if matches!(b, BubbleId::Leader(_)) {
                return bad(format!("leader bubble {b} cannot start a bi-numbering"));
            }
            if green_dom.contains(e) {
                return bad(format!("element {e} carries two bubbles"));
            }
            if red.domain().contains(e) {
                return bad(format!("element {e} carries a bubble and a label"));
            }
            green_dom.insert(e);
            cells[e] = Some(b);
        }
        let ids: Vec<BubbleId> = green.iter().map(|&(_, b)| b).collect();
        let tests = ids.iter().filter(|b| !matches!(b, BubbleId::Indexed(_))).count();
        let has_a = ids.contains(&BubbleId::TestA);
        let has_b = ids.contains(&BubbleId::TestB);
        let mut indexed: Vec<u32> = ids
            .iter()
            .filter_map(|b| match b {
                BubbleId::Indexed(i) => Some(*i),
                _ => None,
            })
            .collect();
        indexed.sort_unstable();
        if indexed.iter().enumerate().any(|(k, &i)| i != k as u32 + 1) {
            return bad("indexed bubbles must be exactly G1..Gg".into());
        }
        let form = match (has_a, has_b, tests) {
            (false, false, 0) => Form::Plain,
            (true, true, 2) => Form::Test,
            _ => return bad("test bubbles must appear as exactly one A and one B".into()),
        };
        let union = green_dom.union(red.domain());
        match form {
            Form::Plain if union != poset.all() => return bad("bubbles and labels must cover every element".into()),
            Form::Test if !poset.is_ideal(union) => return bad("bubbles and labels must occupy an ideal".into()),
            _ => {}
        }
        for a in green_dom {
            for b in poset.strictly_above(a).intersection(green_dom) {
                let ok = match (cells[a].unwrap(), cells[b].unwrap()) {
                    (BubbleId::Indexed(i), BubbleId::Indexed(j)) => i <= j,
                    (BubbleId::Indexed(_), _) => false,
                    _ => true,
                };
                if !ok {
                    return bad(format!("bubbles at {a} < {b} are out of order"));
                }
            }
        }
        Ok(BiNumbering { green: cells, red, form })
    }

    /// Plain bi-numbering: `green` numbers the bubbles `G1, G2, ...`.
    pub fn plain(poset: &Poset, green: &Numbering, red: Numbering) -> Result<BiNumbering> {
        let pairs: Vec<_> = green.pairs().into_iter().map(|(e, r)| (e, BubbleId::Indexed(r))).collect();
        BiNumbering::new(poset, &pairs, red)
    }

    /// Test bi-numbering with `A` at `x`, `B` at `y` and `G1, G2, ...` on
    /// `repair` in order.
    pub fn test(poset: &Poset, x: usize, y: usize, repair: &[usize], red: Numbering) -> Result<BiNumbering> {
        let mut pairs = vec![(x, BubbleId::TestA), (y, BubbleId::TestB)];
        pairs.extend(repair.iter().enumerate().map(|(i, &e)| (e, BubbleId::Indexed(i as u32 + 1))));
        BiNumbering::new(poset, &pairs, red)
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn red(&self) -> &Numbering {
        &self.red
    }

    pub fn green(&self, e: usize) -> Option<BubbleId> {
        self.green.get(e).copied().flatten()
    }

    pub(crate) fn cells(&self) -> Vec<Cell> {
        (0..self.green.len())
            .map(|e| match (self.green[e], self.red.rank(e)) {
                (Some(b), _) => Cell::Bubble(b),
                (None, Some(r)) => Cell::Label(r),
                (None, None) => Cell::Empty,
            })
            .collect()
    }

    /// Indexed bubbles in slide order.
    fn indexed_count(&self) -> u32 {
        self.green.iter().filter(|g| matches!(g, Some(BubbleId::Indexed(_)))).count() as u32
    }
}

/// One interchange of a bubble with a label.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Swap {
    pub bubble: BubbleId,
    pub from: usize,
    pub to: usize,
    pub label: u32,
}

impl fmt::Display for Swap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} -> {} (label {} up)", self.bubble, self.from, self.to, self.label)
    }
}

/// A placement of bubbles and labels mid-emptying, with its move log.
#[derive(Clone, Debug)]
pub struct Snapshot<'p> {
    poset: &'p Poset,
    cells: Vec<Cell>,
    starts: Vec<(BubbleId, usize)>,
    history: Vec<Swap>,
}

impl PartialEq for Snapshot<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.poset, other.poset)
            && self.cells == other.cells
            && self.starts == other.starts
            && self.history == other.history
    }
}

impl<'p> Snapshot<'p> {
    pub fn new(poset: &'p Poset, bn: &BiNumbering) -> Snapshot<'p> {
        Snapshot::from_cells_unchecked(poset, bn.cells())
    }

    /// A free placement; bubbles and label ranks must each be distinct.
    pub fn from_cells(poset: &'p Poset, cells: Vec<Cell>) -> Result<Snapshot<'p>> {
        if cells.len() != poset.len() {
            return Err(Error::MalformedBiNumbering(format!(
                "{} cells for {} elements",
                cells.len(),
                poset.len()
            )));
        }
        let mut seen_bubbles = Vec::new();
        let mut seen_labels = Vec::new();
        for c in &cells {
            match *c {
                Cell::Bubble(b) if seen_bubbles.contains(&b) => {
                    return Err(Error::MalformedBiNumbering(format!("bubble {b} placed twice")))
                }
                Cell::Bubble(b) => seen_bubbles.push(b),
                Cell::Label(r) if r == 0 || seen_labels.contains(&r) => {
                    return Err(Error::MalformedBiNumbering(format!("label {r} repeated or zero")))
                }
                Cell::Label(r) => seen_labels.push(r),
                Cell::Empty => {}
            }
        }
        Ok(Snapshot::from_cells_unchecked(poset, cells))
    }

    pub(crate) fn from_cells_unchecked(poset: &'p Poset, cells: Vec<Cell>) -> Snapshot<'p> {
        let starts = cells
            .iter()
            .enumerate()
            .filter_map(|(e, c)| match c {
                Cell::Bubble(b) => Some((*b, e)),
                _ => None,
            })
            .collect();
        Snapshot { poset, cells, starts, history: Vec::new() }
    }

    pub fn poset(&self) -> &'p Poset {
        self.poset
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, e: usize) -> Cell {
        self.cells[e]
    }

    pub fn history(&self) -> &[Swap] {
        &self.history
    }

    pub fn position(&self, b: BubbleId) -> Option<usize> {
        self.cells.iter().position(|&c| c == Cell::Bubble(b))
    }

    /// Moves `b` once: swaps it with the largest label it covers, if any.
    /// Returns whether a swap happened.
    pub fn move_once(&mut self, b: BubbleId) -> Result<bool> {
        let at = self.position(b).ok_or_else(|| Error::UnknownBubble(b.to_string()))?;
        Ok(self.step_from(b, at).is_some())
    }

    #[inline]
    pub(crate) fn step_from(&mut self, b: BubbleId, at: usize) -> Option<usize> {
        let (to, label) = largest_label_below(self.poset, &self.cells, at)?;
        self.cells[to] = Cell::Bubble(b);
        self.cells[at] = Cell::Label(label);
        self.history.push(Swap { bubble: b, from: at, to, label });
        Some(to)
    }

    /// Slides `b` out completely; returns the element where it stops.
    pub fn slide_out(&mut self, b: BubbleId) -> Result<usize> {
        let mut at = self.position(b).ok_or_else(|| Error::UnknownBubble(b.to_string()))?;
        while let Some(to) = self.step_from(b, at) {
            at = to;
        }
        Ok(at)
    }

    /// Every element `b` has occupied since the snapshot was created,
    /// starting with its initial location.
    pub fn path(&self, b: BubbleId) -> Result<Vec<usize>> {
        let start = self
            .starts
            .iter()
            .find(|(id, _)| *id == b)
            .map(|&(_, e)| e)
            .ok_or_else(|| Error::UnknownBubble(b.to_string()))?;
        let mut path = vec![start];
        path.extend(self.history.iter().filter(|s| s.bubble == b).map(|s| s.to));
        Ok(path)
    }

    /// The red numbering carried by the labels.
    pub fn red_part(&self) -> Numbering {
        Numbering::from_rank_vec(
            self.cells
                .iter()
                .map(|c| match c {
                    Cell::Label(r) => *r,
                    _ => 0,
                })
                .collect(),
        )
    }

    /// Label ranks per element (0 where no label sits).
    pub fn label_ranks(&self) -> Vec<u32> {
        self.cells
            .iter()
            .map(|c| match c {
                Cell::Label(r) => *r,
                _ => 0,
            })
            .collect()
    }

    /// Renames bubble `from` to `to` in place (paths stay with the old name).
    pub fn rename(&mut self, from: BubbleId, to: BubbleId) -> Result<()> {
        let at = self.position(from).ok_or_else(|| Error::UnknownBubble(from.to_string()))?;
        self.cells[at] = Cell::Bubble(to);
        self.starts.retain(|(id, _)| *id != to);
        self.starts.push((to, at));
        Ok(())
    }
}

/// The element holding the largest label covered by `at`.
#[inline]
pub(crate) fn largest_label_below(poset: &Poset, cells: &[Cell], at: usize) -> Option<(usize, u32)> {
    let mut best: Option<(usize, u32)> = None;
    for e in poset.lower_covers(at) {
        if let Cell::Label(r) = cells[e] {
            if best.is_none_or(|(_, br)| r > br) {
                best = Some((e, r));
            }
        }
    }
    best
}

/// `J = S_g ∘ … ∘ S_1`: slides the indexed bubbles out in increasing order.
pub fn empty<'p>(poset: &'p Poset, bn: &BiNumbering) -> Result<Snapshot<'p>> {
    if bn.form() != Form::Plain {
        return Err(Error::MalformedBiNumbering("plain emptying needs a plain bi-numbering".into()));
    }
    let mut s = Snapshot::new(poset, bn);
    for i in 1..=bn.indexed_count() {
        s.slide_out(BubbleId::Indexed(i))?;
    }
    Ok(s)
}

/// `J_BA` or `J_AB`: the two test bubbles in the given order, then the
/// indexed bubbles in increasing order.
pub fn test_empty<'p>(poset: &'p Poset, bn: &BiNumbering, order: TestOrder) -> Result<Snapshot<'p>> {
    if bn.form() != Form::Test {
        return Err(Error::MalformedBiNumbering("test emptying needs a test bi-numbering".into()));
    }
    let mut s = Snapshot::new(poset, bn);
    let (first, second) = match order {
        TestOrder::BA => (BubbleId::TestA, BubbleId::TestB),
        TestOrder::AB => (BubbleId::TestB, BubbleId::TestA),
    };
    s.slide_out(first)?;
    s.slide_out(second)?;
    for i in 1..=bn.indexed_count() {
        s.slide_out(BubbleId::Indexed(i))?;
    }
    Ok(s)
}

/// Slides the bubble at `at` out without logging; returns where it stops.
#[inline]
pub(crate) fn slide_from(poset: &Poset, cells: &mut [Cell], mut at: usize) -> usize {
    let bubble = cells[at];
    while let Some((to, label)) = largest_label_below(poset, cells, at) {
        cells[to] = bubble;
        cells[at] = Cell::Label(label);
        at = to;
    }
    at
}

/// Like [`slide_from`], appending every occupied element to `path`.
pub(crate) fn slide_from_traced(poset: &Poset, cells: &mut [Cell], mut at: usize, path: &mut Vec<usize>) {
    let bubble = cells[at];
    path.push(at);
    while let Some((to, label)) = largest_label_below(poset, cells, at) {
        cells[to] = bubble;
        cells[at] = Cell::Label(label);
        at = to;
        path.push(at);
    }
}

/// Runs a test emptying in place. Bubbles sit at `x` (A), `y` (B) and
/// `repair` (G1, G2, ...); only slid bubbles ever move, so no lookups are
/// needed.
#[inline]
pub(crate) fn test_empty_in_place(poset: &Poset, cells: &mut [Cell], x: usize, y: usize, repair: &[usize], order: TestOrder) {
    let (first, second) = match order {
        TestOrder::BA => (x, y),
        TestOrder::AB => (y, x),
    };
    slide_from(poset, cells, first);
    slide_from(poset, cells, second);
    for &g in repair {
        slide_from(poset, cells, g);
    }
}

/// True when the two cell vectors carry the same labels in the same places.
#[inline]
pub(crate) fn same_labels(a: &[Cell], b: &[Cell]) -> bool {
    a.iter().zip(b).all(|(p, q)| match (p, q) {
        (Cell::Label(r), Cell::Label(s)) => r == s,
        (Cell::Label(_), _) | (_, Cell::Label(_)) => false,
        _ => true,
    })
}
