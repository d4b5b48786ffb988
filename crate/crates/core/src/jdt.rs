//! The jdt property, checked at three levels of reduction, and the
//! organizational-chart ("fair chart") formulation of it.
//!
//! * [`is_jdt_definition`]: every numbering of every filter empties to the
//!   same red part.
//! * [`is_jdt_challenges`]: every challenge has a solution.
//! * [`is_jdt`]: every crucial challenge has a solution.

use std::cell::OnceCell;
use std::collections::HashMap;
use std::fmt;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::extensions::{linear_extensions, numberings_of, Numbering};
use crate::poset::Poset;
use crate::sliding::{
    same_labels, slide_from, slide_from_traced, test_empty_in_place, BiNumbering, BubbleId, Cell, TestOrder,
};

/// Largest poset the exhaustive tiers accept by default.
pub const EXHAUSTIVE_LIMIT: usize = 9;

/// An ideal `I`, a numbering `rho` of it, and two distinct minimal elements
/// of `P - I`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Challenge {
    pub ideal: ElementSet,
    pub rho: Numbering,
    pub x: usize,
    pub y: usize,
}

impl Challenge {
    pub fn new(poset: &Poset, ideal: ElementSet, rho: Numbering, x: usize, y: usize) -> Result<Challenge> {
        let bad = |m: &str| Err(Error::InvalidChallenge(m.to_string()));
        poset.check_index(x)?;
        poset.check_index(y)?;
        if !poset.is_ideal(ideal) {
            return bad("the numbered set is not an ideal");
        }
        if rho.domain() != ideal {
            return bad("rho must number exactly the ideal");
        }
        let minimal = poset.minimal_in(poset.all().difference(ideal));
        if x == y || !minimal.contains(x) || !minimal.contains(y) {
            return bad("x and y must be distinct minimal elements of P - I");
        }
        Ok(Challenge { ideal, rho, x, y })
    }

    /// The crucial challenge for `pair` with numbering `rho` of `I_xy`.
    pub fn crucial(poset: &Poset, pair: CrucialPair, rho: Numbering) -> Result<Challenge> {
        Challenge::new(poset, pair.ideal(poset), rho, pair.x, pair.y)
    }

    fn base_cells(&self) -> Vec<Cell> {
        label_cells(self.rho.ranks())
    }
}

impl fmt::Display for Challenge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={:?} rho={:?} (x,y)=({},{})", self.ideal, self.rho.sequence(), self.x, self.y)
    }
}

/// Incomparable `x < y` (by index) covered by exactly the same elements and
/// sharing a strict lower bound.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CrucialPair {
    pub x: usize,
    pub y: usize,
}

impl CrucialPair {
    /// `I_xy`: everything outside the filter generated by `x` and `y`.
    pub fn ideal(self, poset: &Poset) -> ElementSet {
        poset.all().difference(poset.filter_generated([self.x, self.y].into_iter().collect()))
    }
}

/// A test numbering: `A` at `x`, `B` at `y`, and `G1, G2, ...` on `repair`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solution {
    /// The domain `J` of the test numbering.
    pub domain: ElementSet,
    pub repair: Vec<usize>,
}

impl Solution {
    pub fn bi_numbering(&self, poset: &Poset, c: &Challenge) -> Result<BiNumbering> {
        BiNumbering::test(poset, c.x, c.y, &self.repair, c.rho.clone())
    }
}

pub fn crucial_pairs(poset: &Poset) -> Vec<CrucialPair> {
    let mut out = Vec::new();
    for x in 0..poset.len() {
        for y in x + 1..poset.len() {
            if !poset.comparable(x, y)
                && poset.upper_covers(x) == poset.upper_covers(y)
                && !poset.strictly_below(x).is_disjoint(poset.strictly_below(y))
            {
                out.push(CrucialPair { x, y });
            }
        }
    }
    out
}

fn label_cells(ranks: &[u32]) -> Vec<Cell> {
    ranks.iter().map(|&r| if r == 0 { Cell::Empty } else { Cell::Label(r) }).collect()
}

fn cells_from_sequence(n: usize, seq: &[usize]) -> Vec<Cell> {
    let mut cells = vec![Cell::Empty; n];
    for (i, &e) in seq.iter().enumerate() {
        cells[e] = Cell::Label(i as u32 + 1);
    }
    cells
}

/// Candidate test numberings for one `(I, x, y)`, reused across every `rho`.
pub(crate) struct SolutionSearch {
    x: usize,
    y: usize,
    domains: Vec<ElementSet>,
    repairs: Vec<OnceCell<Vec<Vec<usize>>>>,
}

impl SolutionSearch {
    pub(crate) fn new(poset: &Poset, ideal: ElementSet, x: usize, y: usize) -> SolutionSearch {
        let rest = poset.all().difference(ideal);
        let mut domains: Vec<ElementSet> =
            poset.ideals_within(rest).filter(|j| j.contains(x) && j.contains(y)).collect();
        domains.sort_by_key(|j| (j.len(), j.bits()));
        let repairs = domains.iter().map(|_| OnceCell::new()).collect();
        SolutionSearch { x, y, domains, repairs }
    }

    /// Numberings of `J - {x, y}` for the `i`th candidate domain.
    pub(crate) fn repairs(&self, poset: &Poset, i: usize) -> &[Vec<usize>] {
        self.repairs[i].get_or_init(|| {
            let inner = self.domains[i].without(self.x).without(self.y);
            let mut it = numberings_of(poset, inner);
            let mut out = Vec::new();
            while let Some(seq) = it.next_sequence() {
                out.push(seq.to_vec());
            }
            out
        })
    }

    fn solve(&self, poset: &Poset, base: &[Cell]) -> Option<Solution> {
        let (x, y) = (self.x, self.y);
        let mut ba = base.to_vec();
        let mut ab = base.to_vec();
        for i in 0..self.domains.len() {
            for repair in self.repairs(poset, i) {
                ba.copy_from_slice(base);
                ab.copy_from_slice(base);
                for c in [&mut ba, &mut ab] {
                    c[x] = Cell::Bubble(BubbleId::TestA);
                    c[y] = Cell::Bubble(BubbleId::TestB);
                    for (k, &g) in repair.iter().enumerate() {
                        c[g] = Cell::Bubble(BubbleId::Indexed(k as u32 + 1));
                    }
                }
                if repair.is_empty() && disjoint_first_paths(poset, &ba, x, y) {
                    return Some(Solution { domain: self.domains[i], repair: Vec::new() });
                }
                test_empty_in_place(poset, &mut ba, x, y, repair, TestOrder::BA);
                test_empty_in_place(poset, &mut ab, x, y, repair, TestOrder::AB);
                if same_labels(&ba, &ab) {
                    return Some(Solution { domain: self.domains[i], repair: repair.clone() });
                }
            }
        }
        debug_assert!(
            !poset.strictly_below(x).is_disjoint(poset.strictly_below(y)),
            "an unsolvable challenge needs a common lower bound"
        );
        None
    }
}

/// Path of `A` when slid first against path of `B` when slid first.
fn disjoint_first_paths(poset: &Poset, cells: &[Cell], x: usize, y: usize) -> bool {
    let trace = |start: usize| {
        let mut c = cells.to_vec();
        let mut path = Vec::new();
        slide_from_traced(poset, &mut c, start, &mut path);
        path.into_iter().collect::<ElementSet>()
    };
    trace(x).is_disjoint(trace(y))
}

/// The first solution in search order: domains `J` by size, then test
/// numberings lexicographically. The disjoint-path criterion settles
/// `J = {x, y}` early when it applies.
pub fn has_solution(poset: &Poset, c: &Challenge) -> Option<Solution> {
    SolutionSearch::new(poset, c.ideal, c.x, c.y).solve(poset, &c.base_cells())
}

fn check_limit(poset: &Poset, limit: usize) -> Result<()> {
    if poset.len() > limit {
        Err(Error::SizeLimitExceeded { n: poset.len(), limit })
    } else {
        Ok(())
    }
}

/// Every ideal, every `rho`, every numbering of the complementary filter.
pub fn is_jdt_definition(poset: &Poset) -> Result<bool> {
    is_jdt_definition_with_limit(poset, EXHAUSTIVE_LIMIT)
}

pub fn is_jdt_definition_with_limit(poset: &Poset, limit: usize) -> Result<bool> {
    check_limit(poset, limit)?;
    let n = poset.len();
    for ideal in poset.ideals() {
        let filter = poset.all().difference(ideal);
        let gammas: Vec<Vec<usize>> = numberings_of(poset, filter).map(|g| g.sequence()).collect();
        if gammas.len() < 2 {
            continue;
        }
        let mut rhos = numberings_of(poset, ideal);
        while let Some(rho) = rhos.next_sequence() {
            let base = cells_from_sequence(n, rho);
            let mut reference: Option<Vec<Cell>> = None;
            for gamma in &gammas {
                let mut cells = base.clone();
                for (k, &g) in gamma.iter().enumerate() {
                    cells[g] = Cell::Bubble(BubbleId::Indexed(k as u32 + 1));
                }
                for &g in gamma {
                    slide_from(poset, &mut cells, g);
                }
                match &reference {
                    None => reference = Some(cells),
                    Some(r) if !same_labels(r, &cells) => return Ok(false),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(true)
}

/// Every challenge has a solution.
pub fn is_jdt_challenges(poset: &Poset) -> Result<bool> {
    is_jdt_challenges_with_limit(poset, EXHAUSTIVE_LIMIT)
}

pub fn is_jdt_challenges_with_limit(poset: &Poset, limit: usize) -> Result<bool> {
    check_limit(poset, limit)?;
    let n = poset.len();
    for ideal in poset.ideals() {
        let minimal: Vec<usize> = poset.minimal_in(poset.all().difference(ideal)).iter().collect();
        for (i, &x) in minimal.iter().enumerate() {
            for &y in &minimal[i + 1..] {
                let search = SolutionSearch::new(poset, ideal, x, y);
                let mut rhos = numberings_of(poset, ideal);
                while let Some(rho) = rhos.next_sequence() {
                    if search.solve(poset, &cells_from_sequence(n, rho)).is_none() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Every crucial challenge has a solution.
pub fn is_jdt(poset: &Poset) -> bool {
    unsolved_crucial_challenge(poset).is_none()
}

/// The first crucial challenge without a solution, if any.
pub fn unsolved_crucial_challenge(poset: &Poset) -> Option<Challenge> {
    let n = poset.len();
    for pair in crucial_pairs(poset) {
        let ideal = pair.ideal(poset);
        let search = SolutionSearch::new(poset, ideal, pair.x, pair.y);
        let mut rhos = numberings_of(poset, ideal);
        while let Some(rho) = rhos.next_sequence() {
            if search.solve(poset, &cells_from_sequence(n, rho)).is_none() {
                let rho = Numbering::from_sequence(poset, rho).expect("enumerated numbering");
                return Some(Challenge { ideal, rho, x: pair.x, y: pair.y });
            }
        }
    }
    None
}

/// Seniority at each position after the departures; `None` marks a vacancy.
pub type Placement = Vec<Option<u32>>;

/// Vacates `filter` and refills positions from below.
///
/// Vacancies are handled from the most junior departed employee upward. A
/// vacancy is filled by the most senior occupant of an immediately
/// subordinate position, which opens a vacancy there, until no subordinate
/// position is occupied.
pub fn simulate_departure(poset: &Poset, ext: &Numbering, filter: ElementSet) -> Result<Placement> {
    if ext.domain() != poset.all() {
        return Err(Error::NotAnExtension);
    }
    if !filter.is_subset(poset.all()) || !poset.is_filter(filter) {
        return Err(Error::NotAFilter);
    }
    let mut seat: Placement = (0..poset.len()).map(|e| if filter.contains(e) { None } else { ext.rank(e) }).collect();
    let mut departed: Vec<usize> = filter.iter().collect();
    departed.sort_by_key(|&e| ext.rank(e));
    for mut vacant in departed {
        while let Some((s, e)) = poset.lower_covers(vacant).iter().filter_map(|e| seat[e].map(|s| (s, e))).max() {
            seat[vacant] = Some(s);
            seat[e] = None;
            vacant = e;
        }
    }
    Ok(seat)
}

/// Two initial assignments agreeing on the survivors but ending differently.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Unfairness {
    pub filter: ElementSet,
    pub first: Numbering,
    pub second: Numbering,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FairReport {
    /// Number of (departing filter, initial assignment) scenarios examined.
    pub scenarios: usize,
    pub counterexample: Option<Unfairness>,
}

impl FairReport {
    pub fn fair(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs every departure scenario.
pub fn fair_chart_report(poset: &Poset) -> Result<FairReport> {
    check_limit(poset, EXHAUSTIVE_LIMIT)?;
    let exts: Vec<Numbering> = linear_extensions(poset).collect();
    let mut scenarios = 0;
    for filter in poset.filters() {
        let mut seen: HashMap<Vec<u32>, (Placement, usize)> = HashMap::new();
        for (i, ext) in exts.iter().enumerate() {
            scenarios += 1;
            let survivors: Vec<u32> = (0..poset.len())
                .map(|e| if filter.contains(e) { 0 } else { ext.rank(e).unwrap_or(0) })
                .collect();
            let outcome = simulate_departure(poset, ext, filter)?;
            match seen.get(&survivors) {
                Some((prior, j)) if *prior != outcome => {
                    return Ok(FairReport {
                        scenarios,
                        counterexample: Some(Unfairness { filter, first: exts[*j].clone(), second: ext.clone() }),
                    });
                }
                Some(_) => {}
                None => {
                    seen.insert(survivors, (outcome, i));
                }
            }
        }
    }
    Ok(FairReport { scenarios, counterexample: None })
}

pub fn is_fair_chart(poset: &Poset) -> Result<bool> {
    fair_chart_report(poset).map(|r| r.fair())
}
