//! The collision/repair engine behind simultaneous solutions.
//!
//! Both test emptyings are computed on one shared snapshot. While the paths
//! of the two test bubbles meet, the bubbles are advanced to one move short
//! of the meeting point `w`, the next repair bubble is slid until it sits on
//! an element `z` covering both, and the diamond `{w, x, y, z}` is rewritten:
//! the label from `w` goes to `z`, a leader bubble appears at `w` and is slid
//! out, and the test bubbles carry on from `x` and `y`.

use std::collections::VecDeque;
use std::fmt;

use crate::dcomplete::is_d3_complete;
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::extensions::{numberings_of, Numbering};
use crate::jdt::{crucial_pairs, Challenge, CrucialPair};
use crate::poset::Poset;
use crate::sliding::{same_labels, test_empty_in_place, BubbleId, Cell, Snapshot, TestOrder};
use crate::structure::{acyclic_elements, slant_components};

/// Poset-wide data the engine needs on every run.
#[derive(Clone, Debug)]
pub struct SimContext<'p> {
    pub poset: &'p Poset,
    /// Empty when the poset has no unique maximal element.
    pub acyclic: ElementSet,
    pub d3_complete: bool,
}

impl<'p> SimContext<'p> {
    pub fn new(poset: &'p Poset) -> SimContext<'p> {
        SimContext {
            poset,
            acyclic: acyclic_elements(poset).unwrap_or(ElementSet::EMPTY),
            d3_complete: is_d3_complete(poset),
        }
    }
}

/// One repaired collision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CollisionRecord {
    pub index: usize,
    pub site: usize,
    pub x: usize,
    pub y: usize,
    pub repair_site: usize,
    pub sigma: u32,
    pub repair_start: usize,
    /// From `repair_start` to `repair_site`.
    pub repair_path: Vec<usize>,
    /// From `site` until the leader stops.
    pub leader_path: Vec<usize>,
}

impl fmt::Display for CollisionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "collision {}: w={} x={} y={} z={} sigma={} fixer={:?} leader={:?}",
            self.index, self.site, self.x, self.y, self.repair_site, self.sigma, self.repair_path, self.leader_path
        )
    }
}

/// Which capability requirement failed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Condition {
    /// No repair bubble left.
    NoRepairBubble,
    /// Nothing covers both `x` and `y`.
    NoRepairSite,
    /// The repair bubble never lands on a repair site.
    RepairMissed,
    /// A label other than those at `x`, `y` under `z` beats `sigma`.
    LabelTooLarge,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::NoRepairBubble => "(i) no repair bubble",
            Condition::NoRepairSite => "(ii) no repair site",
            Condition::RepairMissed => "(iii) repair bubble misses",
            Condition::LabelTooLarge => "(iv) label too large",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SimOutcome {
    Solved { m: usize, strong: bool, trace: Vec<CollisionRecord> },
    Failed { collision: usize, condition: Condition, trace: Vec<CollisionRecord> },
    /// The earliest meeting point differs depending on which path is read.
    Ambiguous { collision: usize, trace: Vec<CollisionRecord> },
}

impl SimOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self, SimOutcome::Solved { .. })
    }

    pub fn trace(&self) -> &[CollisionRecord] {
        match self {
            SimOutcome::Solved { trace, .. }
            | SimOutcome::Failed { trace, .. }
            | SimOutcome::Ambiguous { trace, .. } => trace,
        }
    }
}

fn probe(snap: &Snapshot<'_>, b: BubbleId) -> Vec<usize> {
    let mut s = snap.clone();
    s.slide_out(b).expect("bubble present");
    s.path(b).expect("bubble present").split_off(snap.path(b).map_or(0, |p| p.len() - 1))
}

fn invariant(msg: String) -> Error {
    Error::EngineInvariant(msg)
}

/// Runs the engine on challenge `c` with repair bubbles `G1, G2, ...` on
/// `repair`. `repair` must extend `{x, y}` to an ideal of `P - I` one element
/// at a time.
pub fn run_simultaneous(ctx: &SimContext<'_>, c: &Challenge, repair: &[usize]) -> Result<SimOutcome> {
    let poset = ctx.poset;
    let mut domain = c.ideal.with(c.x).with(c.y);
    for &v in repair {
        poset.check_index(v)?;
        if domain.contains(v) || !poset.strictly_below(v).is_subset(domain) {
            return Err(Error::InvalidNumbering(format!("repair bubble at {v} breaks the ideal")));
        }
        domain.insert(v);
    }

    let mut cells: Vec<Cell> = c.rho.ranks().iter().map(|&r| if r == 0 { Cell::Empty } else { Cell::Label(r) }).collect();
    cells[c.x] = Cell::Bubble(BubbleId::TestA);
    cells[c.y] = Cell::Bubble(BubbleId::TestB);
    for (i, &v) in repair.iter().enumerate() {
        cells[v] = Cell::Bubble(BubbleId::Indexed(i as u32 + 1));
    }
    let mut snap = Snapshot::from_cells(poset, cells)?;
    let mut trace: Vec<CollisionRecord> = Vec::new();
    let mut strong = true;

    loop {
        let m = trace.len();
        let path_a = probe(&snap, BubbleId::TestA);
        let path_b = probe(&snap, BubbleId::TestB);
        let on_b: ElementSet = path_b.iter().copied().collect();
        let on_a: ElementSet = path_a.iter().copied().collect();
        let Some(ia) = path_a.iter().position(|&e| on_b.contains(e)) else {
            cross_check(ctx, c, &repair[..m])?;
            return Ok(SimOutcome::Solved { m, strong, trace });
        };
        let w = path_a[ia];
        let ib = path_b.iter().position(|&e| on_a.contains(e)).expect("symmetric intersection");
        if path_b[ib] != w {
            return Ok(SimOutcome::Ambiguous { collision: m + 1, trace });
        }
        if ia == 0 || ib == 0 {
            return Err(invariant(format!("collision at a starting position {w}")));
        }
        if repair.len() < m + 1 {
            return Ok(SimOutcome::Failed { collision: m + 1, condition: Condition::NoRepairBubble, trace });
        }

        for (b, path, stop) in [(BubbleId::TestA, &path_a, ia - 1), (BubbleId::TestB, &path_b, ib - 1)] {
            for step in 1..=stop {
                snap.move_once(b)?;
                if snap.position(b) != Some(path[step]) {
                    return Err(invariant(format!("{b} left its probed path at step {step}")));
                }
            }
        }
        let (x, y) = (path_a[ia - 1], path_b[ib - 1]);
        let Cell::Label(sigma) = snap.cell(w) else {
            return Err(invariant(format!("collision site {w} holds no label")));
        };

        let sites = poset.upper_covers(x).intersection(poset.upper_covers(y));
        if sites.is_empty() {
            return Ok(SimOutcome::Failed { collision: m + 1, condition: Condition::NoRepairSite, trace });
        }
        if ctx.d3_complete && sites.len() != 1 {
            return Err(invariant(format!("repair site for ({x},{y}) is not unique")));
        }

        let g = BubbleId::Indexed(m as u32 + 1);
        let start = repair[m];
        let mut at = start;
        let mut repair_path = vec![start];
        while !sites.contains(at) {
            if !snap.move_once(g)? {
                return Ok(SimOutcome::Failed { collision: m + 1, condition: Condition::RepairMissed, trace });
            }
            at = snap.position(g).expect("bubble present");
            repair_path.push(at);
        }
        let z = at;

        let beaten = poset
            .lower_covers(z)
            .without(x)
            .without(y)
            .iter()
            .any(|e| matches!(snap.cell(e), Cell::Label(r) if r > sigma));
        if beaten {
            if ctx.d3_complete {
                return Err(invariant(format!("label under {z} beats sigma in a d3-complete poset")));
            }
            return Ok(SimOutcome::Failed { collision: m + 1, condition: Condition::LabelTooLarge, trace });
        }

        let leader = BubbleId::Leader(m as u32 + 1);
        let mut fixed = snap.cells().to_vec();
        fixed[z] = Cell::Label(sigma);
        fixed[w] = Cell::Bubble(leader);
        snap = Snapshot::from_cells(poset, fixed)?;
        snap.slide_out(leader)?;
        let leader_path = snap.path(leader)?;

        if repair_path.iter().chain(&leader_path).any(|&e| ctx.acyclic.contains(e)) {
            strong = false;
        }
        trace.push(CollisionRecord {
            index: m + 1,
            site: w,
            x,
            y,
            repair_site: z,
            sigma,
            repair_start: start,
            repair_path,
            leader_path,
        });
    }
}

/// Both raw test emptyings of `{x, y} ∪ repair` must agree on labels.
fn cross_check(ctx: &SimContext<'_>, c: &Challenge, repair: &[usize]) -> Result<()> {
    let poset = ctx.poset;
    let domain = repair.iter().fold(c.ideal.with(c.x).with(c.y), |d, &v| d.with(v));
    if !poset.is_ideal(domain) {
        return Err(invariant("solution domain is not an ideal".into()));
    }
    let mut base: Vec<Cell> = c.rho.ranks().iter().map(|&r| if r == 0 { Cell::Empty } else { Cell::Label(r) }).collect();
    base[c.x] = Cell::Bubble(BubbleId::TestA);
    base[c.y] = Cell::Bubble(BubbleId::TestB);
    for (i, &v) in repair.iter().enumerate() {
        base[v] = Cell::Bubble(BubbleId::Indexed(i as u32 + 1));
    }
    let mut ba = base.clone();
    let mut ab = base;
    test_empty_in_place(poset, &mut ba, c.x, c.y, repair, TestOrder::BA);
    test_empty_in_place(poset, &mut ab, c.x, c.y, repair, TestOrder::AB);
    if same_labels(&ba, &ab) {
        Ok(())
    } else {
        Err(invariant(format!("engine solution for {c} fails the raw emptying check")))
    }
}

/// Searches repair sequences by length, then lexicographically, for one
/// the engine solves (strongly, when `strong` is set). Runs that fail for
/// any reason other than running out of repair bubbles are not extended.
pub fn find_simultaneous_solution(
    ctx: &SimContext<'_>,
    c: &Challenge,
    strong: bool,
) -> Result<Option<(Vec<usize>, SimOutcome)>> {
    let poset = ctx.poset;
    let region = poset.all().difference(c.ideal);
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([Vec::new()]);
    while let Some(prefix) = queue.pop_front() {
        let outcome = run_simultaneous(ctx, c, &prefix)?;
        match &outcome {
            SimOutcome::Solved { strong: s, .. } if *s || !strong => return Ok(Some((prefix, outcome))),
            SimOutcome::Failed { condition: Condition::NoRepairBubble, .. } => {
                let have = prefix.iter().fold(c.ideal.with(c.x).with(c.y), |d, &v| d.with(v));
                for u in region.difference(have) {
                    if poset.strictly_below(u).is_subset(have) {
                        let mut next = prefix.clone();
                        next.push(u);
                        queue.push_back(next);
                    }
                }
            }
            _ => {}
        }
    }
    Ok(None)
}

/// The first crucial challenge with no (strong) simultaneous solution.
pub fn unsolved_simultaneous_challenge(ctx: &SimContext<'_>, strong: bool) -> Result<Option<Challenge>> {
    for pair in crucial_pairs(ctx.poset) {
        let ideal = pair.ideal(ctx.poset);
        for rho in numberings_of(ctx.poset, ideal) {
            let c = Challenge::crucial(ctx.poset, pair, rho)?;
            if find_simultaneous_solution(ctx, &c, strong)?.is_none() {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Every crucial challenge has an m-simultaneous solution for some m.
pub fn is_simultaneous(poset: &Poset) -> Result<bool> {
    Ok(unsolved_simultaneous_challenge(&SimContext::new(poset), false)?.is_none())
}

/// As [`is_simultaneous`], with no repair or leader bubble touching an
/// acyclic element.
pub fn is_strongly_simultaneous(poset: &Poset) -> Result<bool> {
    poset.unique_max().ok_or(Error::NoUniqueMax)?;
    Ok(unsolved_simultaneous_challenge(&SimContext::new(poset), true)?.is_none())
}

/// Result of checking a slant decomposition component by component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositionReport {
    /// Each component with at least two elements, and whether it is
    /// strongly simultaneous.
    pub components: Vec<(ElementSet, bool)>,
    pub simultaneous: bool,
}

impl CompositionReport {
    /// False only when every component passes but the whole does not.
    pub fn consistent(&self) -> bool {
        self.simultaneous || self.components.iter().any(|&(_, ok)| !ok)
    }
}

pub fn check_composition(poset: &Poset) -> Result<CompositionReport> {
    let d = slant_components(poset)?;
    if !d.dcomplete {
        return Err(Error::NotDComplete);
    }
    let mut components = Vec::new();
    for (set, r) in d.components.iter().zip(d.posets(poset)) {
        if set.len() >= 2 {
            components.push((*set, is_strongly_simultaneous(&r.poset)?));
        }
    }
    Ok(CompositionReport { components, simultaneous: is_simultaneous(poset)? })
}

/// Convenience for callers holding a pair and a numbering.
pub fn run_crucial(ctx: &SimContext<'_>, pair: CrucialPair, rho: Numbering, repair: &[usize]) -> Result<SimOutcome> {
    run_simultaneous(ctx, &Challenge::crucial(ctx.poset, pair, rho)?, repair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{delta, shape};

    fn diamond() -> Poset {
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn diamond_one_collision() {
        let d = diamond();
        let ctx = SimContext::new(&d);
        let rho = Numbering::from_sequence(&d, &[0]).unwrap();
        let out = run_crucial(&ctx, CrucialPair { x: 1, y: 2 }, rho.clone(), &[3]).unwrap();
        match &out {
            SimOutcome::Solved { m, strong, trace } => {
                assert_eq!((*m, *strong), (1, true));
                let r = &trace[0];
                assert_eq!((r.site, r.x, r.y, r.repair_site, r.sigma), (0, 1, 2, 3, 1));
                assert_eq!(r.repair_path, vec![3]);
                assert_eq!(r.leader_path, vec![0]);
            }
            o => panic!("unexpected {o:?}"),
        }
        let without = run_crucial(&ctx, CrucialPair { x: 1, y: 2 }, rho, &[]).unwrap();
        assert!(matches!(without, SimOutcome::Failed { collision: 1, condition: Condition::NoRepairBubble, .. }));
    }

    #[test]
    fn delta_32_runs_out_of_repair_bubbles() {
        let p = delta(3, 2);
        let ctx = SimContext::new(&p);
        let rho = Numbering::from_sequence(&p, &[0, 1, 2]).unwrap();
        let out = run_crucial(&ctx, CrucialPair { x: 3, y: 4 }, rho, &[5, 6]).unwrap();
        assert!(matches!(out, SimOutcome::Failed { collision: 3, condition: Condition::NoRepairBubble, .. }), "{out:?}");
        assert!(!is_simultaneous(&p).unwrap());
    }

    #[test]
    fn pendant_label_blocks_the_repair() {
        // w=0, x=1, y=2, z=3, t=4 above z, q=5 covered by z only.
        let p = Poset::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (5, 3)]).unwrap();
        let ctx = SimContext::new(&p);
        assert!(!ctx.d3_complete);
        // I = {w, q}; the label at q beats the one at w.
        let rho = Numbering::from_sequence(&p, &[0, 5]).unwrap();
        let out = run_crucial(&ctx, CrucialPair { x: 1, y: 2 }, rho, &[3]).unwrap();
        assert!(matches!(out, SimOutcome::Failed { collision: 1, condition: Condition::LabelTooLarge, .. }), "{out:?}");
    }

    #[test]
    fn small_verdicts() {
        assert!(is_simultaneous(&diamond()).unwrap());
        assert!(is_strongly_simultaneous(&diamond()).unwrap());
        assert!(is_strongly_simultaneous(&shape(&[3, 3]).unwrap()).unwrap());
        assert!(is_simultaneous(&Poset::chain(3)).unwrap());
        assert!(is_simultaneous(&delta(3, 3)).unwrap());
        assert_eq!(is_strongly_simultaneous(&Poset::antichain(2)), Err(Error::NoUniqueMax));
    }

    #[test]
    fn composition() {
        let p = Poset::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        let r = check_composition(&p).unwrap();
        assert_eq!(r.components, vec![([0, 1, 2, 3].into_iter().collect(), true)]);
        assert!(r.simultaneous && r.consistent());
        assert!(check_composition(&Poset::chain(1)).unwrap().components.is_empty());
        assert_eq!(check_composition(&delta(3, 2)), Err(Error::NotDComplete));
    }
}
