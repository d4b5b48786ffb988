//! Engine soundness checks shared by the property tests and the acceptance
//! suite. Each check returns the number of cases it examined or a message
//! describing the first violation.

use rand::seq::IndexedRandom;
use rand::Rng;
use taquin::dcomplete::is_dcomplete;
use taquin::enumeration::CensusEntry;
use taquin::jdt::{crucial_pairs, is_jdt, Challenge};
use taquin::simultaneous::{find_simultaneous_solution, is_simultaneous, SimContext, SimOutcome};
use taquin::sliding::{test_empty, BiNumbering, Cell, Snapshot, TestOrder};
use taquin::{Numbering, Poset};

use super::{random_challenge, random_repair};

pub type Check = Result<usize, String>;

fn sorted_ranks(n: &Numbering) -> Vec<u32> {
    let mut r: Vec<u32> = n.pairs().into_iter().map(|(_, r)| r).collect();
    r.sort_unstable();
    r
}

/// Checks one finished emptying that started from `red`: the red ranks are
/// conserved and each location sees strictly decreasing labels arrive from
/// the elements it covers.
pub fn check_emptying(poset: &Poset, red: &Numbering, done: &Snapshot<'_>) -> Result<(), String> {
    if sorted_ranks(red) != sorted_ranks(&done.red_part()) {
        return Err(format!("label multiset changed: {:?} -> {:?}", red, done.red_part()));
    }
    let mut here: Vec<Option<u32>> = (0..poset.len()).map(|e| red.rank(e)).collect();
    let mut last = here.clone();
    for s in done.history() {
        if !poset.covers(s.to, s.from) {
            return Err(format!("swap {s} does not follow a cover"));
        }
        if here[s.to] != Some(s.label) {
            return Err(format!("swap {s} moves a label that is not there"));
        }
        if matches!(last[s.from], Some(l) if l <= s.label) {
            return Err(format!("swap {s} raises the label at {}", s.from));
        }
        here[s.to] = None;
        here[s.from] = Some(s.label);
        last[s.from] = Some(s.label);
    }
    for (e, c) in done.cells().iter().enumerate() {
        let stuck = poset.lower_covers(e).iter().all(|d| !matches!(done.cell(d), Cell::Label(_)));
        if matches!(c, Cell::Bubble(_)) && !stuck {
            return Err(format!("bubble at {e} can still move"));
        }
    }
    Ok(())
}

/// Runs both test emptyings of a test numbering and checks each one.
fn both_orders<'p>(poset: &'p Poset, bn: &BiNumbering) -> Result<(Snapshot<'p>, Snapshot<'p>), String> {
    let ba = test_empty(poset, bn, TestOrder::BA).map_err(|e| e.to_string())?;
    let ab = test_empty(poset, bn, TestOrder::AB).map_err(|e| e.to_string())?;
    check_emptying(poset, bn.red(), &ba)?;
    check_emptying(poset, bn.red(), &ab)?;
    Ok((ba, ab))
}

/// Disjoint first-slid test paths force equal outcomes. Draws `cases`
/// random challenges with random repair bubbles from `pool`; returns how
/// many had disjoint paths.
pub fn disjoint_paths_shortcut<R: Rng>(rng: &mut R, pool: &[CensusEntry], cases: usize) -> Check {
    let mut disjoint = 0;
    let mut drawn = 0;
    while drawn < cases {
        let entry = pool.choose(rng).expect("non-empty pool");
        let p = &entry.poset;
        let Some(c) = random_challenge(rng, p) else { continue };
        drawn += 1;
        let repair = random_repair(rng, p, &c);
        let bn = BiNumbering::test(p, c.x, c.y, &repair, c.rho.clone()).map_err(|e| e.to_string())?;
        let (ba, ab) = both_orders(p, &bn)?;
        let path_a = ba.path(taquin::BubbleId::TestA).map_err(|e| e.to_string())?;
        let path_b = ab.path(taquin::BubbleId::TestB).map_err(|e| e.to_string())?;
        if path_a.iter().all(|e| !path_b.contains(e)) {
            disjoint += 1;
            if ba.red_part() != ab.red_part() {
                return Err(format!("{}: {c} repair {repair:?} has disjoint paths but differs", entry.id));
            }
        }
    }
    Ok(disjoint)
}

/// Every solved crucial run must also pass the raw test emptying check
/// with its first `m` repair bubbles. Returns the number of solved runs.
pub fn solved_runs_pass_raw_check(poset: &Poset) -> Check {
    let ctx = SimContext::new(poset);
    let mut solved = 0;
    for pair in crucial_pairs(poset) {
        for rho in taquin::extensions::numberings_of(poset, pair.ideal(poset)) {
            let c = Challenge::crucial(poset, pair, rho).map_err(|e| e.to_string())?;
            let found = find_simultaneous_solution(&ctx, &c, false).map_err(|e| e.to_string())?;
            if let Some((repair, SimOutcome::Solved { m, .. })) = found {
                let bn = BiNumbering::test(poset, c.x, c.y, &repair[..m], c.rho.clone()).map_err(|e| e.to_string())?;
                let (ba, ab) = both_orders(poset, &bn)?;
                if ba.red_part() != ab.red_part() {
                    return Err(format!("{c}: solved with m={m} but the raw emptyings differ"));
                }
                solved += 1;
            }
        }
    }
    Ok(solved)
}

/// Every filter of a poset with `property` has `property` too. Returns the
/// number of filters examined.
pub fn filter_closed(pool: &[CensusEntry], name: &str, property: impl Fn(&Poset) -> bool) -> Check {
    let mut filters = 0;
    for e in pool {
        if !property(&e.poset) {
            continue;
        }
        for f in e.poset.filters() {
            if f.is_empty() {
                continue;
            }
            filters += 1;
            let r = e.poset.restrict(f);
            if !property(&r.poset) {
                return Err(format!("{}: filter {f:?} is not {name}", e.id));
            }
        }
    }
    Ok(filters)
}

pub fn jdt_filter_closure(pool: &[CensusEntry]) -> Check {
    filter_closed(pool, "jdt", is_jdt)
}

pub fn simultaneous_filter_closure(pool: &[CensusEntry]) -> Check {
    filter_closed(pool, "simultaneous", |p| is_simultaneous(p).expect("engine invariant"))
}

/// Simultaneous posets are jdt and d-complete posets are simultaneous.
pub fn implication_chain(pool: &[CensusEntry]) -> Check {
    for e in pool {
        let sim = is_simultaneous(&e.poset).map_err(|err| format!("{}: {err}", e.id))?;
        if sim && !is_jdt(&e.poset) {
            return Err(format!("{} simultaneous but not jdt", e.id));
        }
        if is_dcomplete(&e.poset) && !sim {
            return Err(format!("{} d-complete but not simultaneous", e.id));
        }
    }
    Ok(pool.len())
}
