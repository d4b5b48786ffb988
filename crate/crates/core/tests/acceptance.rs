//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p taquin --release --test acceptance`.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use taquin::canonical::canonical_form_with_limit;
use taquin::dcomplete::is_dcomplete;
use taquin::enumeration::{census_up_to, conjecture_scan_from, enumerate_connected, survey_entries, CensusEntry, Survey, SurveySummary};
use taquin::exec::Exec;
use taquin::families::{delta, minuscule, rooted_tree, shape, Minuscule};
use taquin::jdt::{fair_chart_report, is_fair_chart, is_jdt, is_jdt_challenges, is_jdt_definition};
use taquin::{canonical_form, linear_extensions_count};

use common::soundness;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Context {
    entries: Vec<CensusEntry>,
    survey: Survey,
}

impl Context {
    fn upto(&self, n: usize) -> Vec<CensusEntry> {
        self.entries.iter().filter(|e| e.poset.len() <= n).cloned().collect()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let n = enumerate_connected(8, Exec::Parallel).map_err(|e| e.to_string())?.len();
    ensure(n == 14512, || format!("{n} connected classes"))?;
    Ok(format!("14512 classes in {:.2?}", start.elapsed()))
}

fn ac2(cx: &Context) -> Outcome {
    let eight: Vec<_> = cx.survey.records.iter().filter(|r| r.n == 8).cloned().collect();
    let s = SurveySummary::from_records(&eight);
    ensure(s.total == 14512 && s.jdt == 236 && s.dcomplete_jdt == 181, || s.headline())?;
    Ok(s.headline())
}

fn ac3() -> Outcome {
    for b in 0..=4 {
        for n in 0..=4 {
            let p = delta(b, n);
            ensure(is_jdt(&p) == (b <= n), || format!("jdt of delta({b},{n})"))?;
            ensure(is_dcomplete(&p) == (b <= n), || format!("d-completeness of delta({b},{n})"))?;
        }
    }
    Ok("25 pairs".into())
}

fn tiers_agree(e: &CensusEntry) -> Result<(), String> {
    let p = &e.poset;
    let fast = is_jdt(p);
    let def = is_jdt_definition(p).map_err(|err| err.to_string())?;
    let chal = is_jdt_challenges(p).map_err(|err| err.to_string())?;
    ensure(def == fast && chal == fast, || format!("{}: def={def} challenges={chal} crucial={fast}", e.id))
}

fn ac4(cx: &Context) -> Outcome {
    let six: Vec<_> = cx.entries.iter().filter(|e| e.poset.len() == 6).collect();
    ensure(six.len() == 238, || format!("{} posets at n=6", six.len()))?;
    let results = Exec::Parallel.map(&six, |e| tiers_agree(e));
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let seven: Vec<_> = cx.entries.iter().filter(|e| e.poset.len() == 7).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let picks = rand::seq::index::sample(&mut rng, seven.len(), 200);
    let sample: Vec<_> = picks.iter().map(|i| seven[i]).collect();
    Exec::Parallel.map(&sample, |e| tiers_agree(e)).into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok("238 at n=6, 200 sampled at n=7 (seed 7)".into())
}

fn ac5(cx: &Context) -> Outcome {
    let mut count = 0;
    for r in cx.survey.records.iter().filter(|r| r.dcomplete) {
        ensure(r.simultaneous && r.jdt, || format!("{} d-complete but simultaneous={} jdt={}", r.canonical_id, r.simultaneous, r.jdt))?;
        count += 1;
    }
    Ok(format!("{count} d-complete classes, n <= 8"))
}

fn ac6(cx: &Context) -> Outcome {
    for r in &cx.survey.records {
        ensure((r.nonoverlapping && r.simultaneous) == r.dcomplete, || {
            format!("{}: nonoverlapping={} simultaneous={} dcomplete={}", r.canonical_id, r.nonoverlapping, r.simultaneous, r.dcomplete)
        })?;
    }
    Ok(format!("{} classes, n <= 8", cx.survey.records.len()))
}

fn ac7(cx: &Context) -> Outcome {
    let pool = cx.upto(6);
    Exec::Parallel
        .map(&pool, |e| -> Result<(), String> {
            let fair = is_fair_chart(&e.poset).map_err(|err| err.to_string())?;
            ensure(fair == is_jdt(&e.poset), || format!("{}: fair={fair}", e.id))
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let report = fair_chart_report(&shape(&[3, 3]).unwrap()).map_err(|e| e.to_string())?;
    ensure(report.fair() && report.scenarios == 50, || format!("shape 3,3: fair={} scenarios={}", report.fair(), report.scenarios))?;
    Ok(format!("{} classes, shape 3,3 fair over 50 scenarios", pool.len()))
}

/// Every parent list with parents earlier in the list; covers every rooted
/// tree up to isomorphism.
fn parent_lists(n: usize) -> Vec<Vec<Option<usize>>> {
    let mut level = vec![vec![None]];
    for k in 1..n {
        level = level
            .into_iter()
            .flat_map(|l| {
                (0..k).map(move |p| {
                    let mut next = l.clone();
                    next.push(Some(p));
                    next
                })
            })
            .collect();
    }
    level
}

fn ac8() -> Outcome {
    let known = [1, 1, 2, 4, 9, 20, 48, 115];
    let mut total = 0;
    for n in 1..=8 {
        let mut seen = HashSet::new();
        for parents in parent_lists(n) {
            let p = rooted_tree(&parents).map_err(|e| e.to_string())?;
            if seen.insert(canonical_form(&p).map_err(|e| e.to_string())?) {
                ensure(is_jdt(&p), || format!("tree {parents:?} is not jdt"))?;
            }
        }
        ensure(seen.len() == known[n - 1], || format!("{} trees with {n} nodes", seen.len()))?;
        total += seen.len();
    }
    Ok(format!("{total} rooted trees"))
}

fn ac9() -> Outcome {
    let e6 = minuscule(Minuscule::E6).map_err(|e| e.to_string())?;
    let count = linear_extensions_count(&e6).map_err(|e| e.to_string())?;
    ensure(count == 78, || format!("{count} linear extensions"))?;
    ensure(is_dcomplete(&e6), || "not d-complete".into())?;
    let n = e6.len();
    let same = canonical_form_with_limit(&e6, n).map_err(|e| e.to_string())?
        == canonical_form_with_limit(&e6.order_dual(), n).map_err(|e| e.to_string())?;
    ensure(same, || "not self-dual".into())?;
    Ok("78 linear extensions, d-complete, self-dual".into())
}

fn ac10(cx: &Context) -> Outcome {
    let report = conjecture_scan_from(&cx.entries, &cx.survey, 8).map_err(|e| e.to_string())?;
    let bad = report.not_doubly_dcomplete();
    ensure(bad.is_empty(), || format!("{} doubly-jdt classes not doubly d-complete, first {}", bad.len(), bad[0].canonical_id))?;
    Ok(format!("{} doubly-jdt classes, all doubly d-complete", report.doubly_jdt.len()))
}

fn ac11(cx: &Context) -> Outcome {
    let pool = cx.upto(6);
    let solved: usize = Exec::Parallel
        .map(&pool, |e| soundness::solved_runs_pass_raw_check(&e.poset).map_err(|err| format!("{}: {err}", e.id)))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    let disjoint = soundness::disjoint_paths_shortcut(&mut rng, &cx.upto(7), 1000)?;
    let jdt_filters = soundness::jdt_filter_closure(&pool)?;
    let sim_filters = soundness::simultaneous_filter_closure(&pool)?;
    Ok(format!(
        "{solved} solved runs cross-checked, {disjoint}/1000 disjoint-path challenges, {jdt_filters} jdt and {sim_filters} simultaneous filters"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let entries = census_up_to(8, Exec::Parallel).expect("census");
    let survey = survey_entries(&entries, Exec::Parallel).expect("survey");
    println!("census and survey n <= 8: {:.2?}", start.elapsed());
    let cx = Context { entries, survey };

    let criteria: Vec<Criterion<'_>> = vec![
        ("AC1 census totals", Box::new(ac1)),
        ("AC2 census classification", Box::new(|| ac2(&cx))),
        ("AC3 delta law", Box::new(ac3)),
        ("AC4 tier equivalence", Box::new(|| ac4(&cx))),
        ("AC5 d-complete implies simultaneous and jdt", Box::new(|| ac5(&cx))),
        ("AC6 non-overlapping and simultaneous iff d-complete", Box::new(|| ac6(&cx))),
        ("AC7 fairness equivalence", Box::new(|| ac7(&cx))),
        ("AC8 rooted trees", Box::new(ac8)),
        ("AC9 e6 anchor", Box::new(ac9)),
        ("AC10 doubly-jdt scan", Box::new(|| ac10(&cx))),
        ("AC11 engine soundness", Box::new(|| ac11(&cx))),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.2?}]", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{:.2?}]", t.elapsed());
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
