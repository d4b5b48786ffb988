use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use taquin::dcomplete::check_all;
use taquin::enumeration::{census_up_to, conjecture_scan, enumerate_levels, survey_entries, SurveyRecord};
use taquin::exec::Exec;
use taquin::families::{FamilySpec, Minuscule};
use taquin::io::NamedPoset;
use taquin::jdt::{
    fair_chart_report, is_jdt_challenges, is_jdt_definition, simulate_departure, unsolved_crucial_challenge,
    Challenge, Placement,
};
use taquin::simultaneous::{find_simultaneous_solution, unsolved_simultaneous_challenge, SimContext, SimOutcome};
use taquin::sliding::{empty, test_empty, Form, TestOrder};
use taquin::{ElementSet, Poset};

use crate::report::{Format, Header, Report};
use crate::{Cli, Command, GenArgs, OrderArg, Tier};

type Res<T> = Result<T, Box<dyn Error>>;

/// Runs the selected subcommand; returns the rendered output and whether
/// every verdict held.
pub fn run(cli: &Cli, header: &Header) -> Res<(String, bool)> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let (report, ok) = match &cli.command {
        Command::Gen(g) => return Ok((format!("{}\n", generate(g)?.to_json_string()), true)),
        Command::Empty(a) => empty_cmd(&a.poset, &a.bi_numbering, a.order)?,
        Command::Check(a) => check_cmd(a)?,
        Command::Fairchart(a) => fair_cmd(&a.poset, a.ext.as_deref(), a.filter.as_deref())?,
        Command::Enumerate(a) => enumerate_cmd(a.n, a.out.as_deref(), a.all, exec)?,
        Command::Survey(a) => survey_cmd(a, header, exec)?,
        Command::Conjecture(a) => conjecture_cmd(a.n_max, exec)?,
    };
    Ok((report.render(header, cli.format), ok))
}

fn generate(g: &GenArgs) -> Res<NamedPoset> {
    let spec = if let Some(parts) = &g.shape {
        FamilySpec::Shape(parts.clone())
    } else if let Some(parts) = &g.shifted {
        FamilySpec::ShiftedShape(parts.clone())
    } else if let Some(parents) = &g.tree {
        FamilySpec::RootedTree(
            parents
                .iter()
                .map(|p| if p == "-" { Ok(None) } else { p.parse().map(Some) })
                .collect::<Result<_, _>>()?,
        )
    } else if let Some(bn) = &g.delta {
        match bn.as_slice() {
            &[b, n] => FamilySpec::Delta { b, n },
            _ => return Err("--delta takes two numbers: b,n".into()),
        }
    } else if let Some(name) = &g.minuscule {
        FamilySpec::Minuscule(name.parse::<Minuscule>()?)
    } else if let Some(n) = g.chain {
        return Ok(NamedPoset::new(Poset::chain(n), None));
    } else if let Some(n) = g.antichain {
        return Ok(NamedPoset::new(Poset::antichain(n), None));
    } else {
        unreachable!("clap requires one family")
    };
    Ok(NamedPoset::new(spec.build()?, Some(spec.labels()?)))
}

fn read_poset(path: &Path) -> Res<NamedPoset> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(NamedPoset::parse(&text)?)
}

fn names(p: &NamedPoset, set: ElementSet) -> String {
    let parts: Vec<String> = set.iter().map(|e| p.name(e)).collect();
    format!("{{{}}}", parts.join(","))
}

fn describe(p: &NamedPoset, c: &Challenge) -> String {
    let rho: Vec<String> = c.rho.sequence().into_iter().map(|e| p.name(e)).collect();
    format!("I={} rho=[{}] (x,y)=({},{})", names(p, c.ideal), rho.join(","), p.name(c.x), p.name(c.y))
}

fn challenge_json(p: &NamedPoset, c: &Challenge) -> Value {
    json!({
        "ideal": c.ideal.iter().map(|e| p.name(e)).collect::<Vec<_>>(),
        "rho": c.rho.sequence().into_iter().map(|e| p.name(e)).collect::<Vec<_>>(),
        "x": p.name(c.x),
        "y": p.name(c.y),
    })
}

fn empty_cmd(poset: &Path, bn: &Path, order: OrderArg) -> Res<(Report, bool)> {
    let p = read_poset(poset)?;
    let text = fs::read_to_string(bn).map_err(|e| format!("{}: {e}", bn.display()))?;
    let bn = p.parse_bi_numbering(&text)?;
    let order = match order {
        OrderArg::Ba => TestOrder::BA,
        OrderArg::Ab => TestOrder::AB,
    };
    let snap = match bn.form() {
        Form::Plain => empty(&p.poset, &bn)?,
        Form::Test => test_empty(&p.poset, &bn, order)?,
    };
    let mut r = Report::default();
    let mut swaps = Vec::new();
    for s in snap.history() {
        r.line(format!("{} {} -> {} (label {} up)", s.bubble, p.name(s.from), p.name(s.to), s.label));
        swaps.push(json!({"bubble": s.bubble.to_string(), "from": p.name(s.from), "to": p.name(s.to), "label": s.label}));
    }
    let red = p.numbering_to_json(&snap.red_part());
    r.line(format!("red: {red}"));
    r.set("swaps", swaps);
    r.set("red", serde_json::from_str::<Value>(&red)?);
    Ok((r, true))
}

fn check_cmd(a: &crate::CheckArgs) -> Res<(Report, bool)> {
    let p = read_poset(&a.poset)?;
    let poset = &p.poset;
    let mut r = Report::default();
    let mut ok = true;
    let want_jdt = a.jdt || a.tier.is_some() || !(a.dcomplete || a.simultaneous || a.fair);

    if want_jdt {
        let (name, verdict, failing) = match a.tier.unwrap_or(Tier::Crucial) {
            Tier::Def => ("def", is_jdt_definition(poset)?, None),
            Tier::Challenge => ("challenge", is_jdt_challenges(poset)?, None),
            Tier::Crucial => {
                let c = unsolved_crucial_challenge(poset);
                ("crucial", c.is_none(), c)
            }
        };
        ok &= verdict;
        r.line(format!("jdt[{name}]: {verdict}"));
        r.set("jdt", verdict);
        r.set("tier", name);
        if let Some(c) = failing {
            r.line(format!("failing challenge: {}", describe(&p, &c)));
            r.set("failing_challenge", challenge_json(&p, &c));
        }
    }

    if a.dcomplete {
        let verdicts = check_all(poset);
        let mut axioms = Map::new();
        for v in &verdicts {
            let name = format!("{:?}", v.axiom);
            r.line(format!("{name}: {}", if v.passed() { "pass" } else { "fail" }));
            let ws: Vec<String> = v.witnesses.iter().map(|w| w.to_string()).collect();
            for w in &ws {
                r.line(format!("  witness: {w}"));
            }
            axioms.insert(name, json!({"pass": v.passed(), "witnesses": ws}));
        }
        let verdict = verdicts.iter().all(|v| v.passed());
        ok &= verdict;
        r.line(format!("dcomplete: {verdict}"));
        r.set("dcomplete", verdict);
        r.set("axioms", Value::Object(axioms));
    }

    if a.simultaneous {
        if a.strong && !poset.has_unique_max() {
            return Err("strong simultaneity needs a unique maximal element".into());
        }
        let ctx = SimContext::new(poset);
        let key = if a.strong { "strongly_simultaneous" } else { "simultaneous" };
        let verdict = if a.trace {
            trace_simultaneous(&p, &ctx, a.strong, &mut r)?
        } else {
            let c = unsolved_simultaneous_challenge(&ctx, a.strong)?;
            if let Some(c) = &c {
                r.line(format!("unsolved challenge: {}", describe(&p, c)));
                r.set("unsolved_challenge", challenge_json(&p, c));
            }
            c.is_none()
        };
        ok &= verdict;
        r.line(format!("{key}: {verdict}"));
        r.set(key, verdict);
    }

    if a.fair {
        let report = fair_chart_report(poset)?;
        ok &= report.fair();
        r.line(format!("fair: {} ({} scenarios)", report.fair(), report.scenarios));
        r.set("fair", report.fair());
        r.set("scenarios", report.scenarios);
    }
    Ok((r, ok))
}

fn trace_simultaneous(p: &NamedPoset, ctx: &SimContext<'_>, strong: bool, r: &mut Report) -> Res<bool> {
    let mut all = true;
    let mut runs = Vec::new();
    for pair in taquin::jdt::crucial_pairs(&p.poset) {
        for rho in taquin::extensions::numberings_of(&p.poset, pair.ideal(&p.poset)) {
            let c = Challenge::crucial(&p.poset, pair, rho)?;
            let found = find_simultaneous_solution(ctx, &c, strong)?;
            r.line(format!("challenge {}", describe(p, &c)));
            let mut run = Map::new();
            run.insert("challenge".into(), challenge_json(p, &c));
            match found {
                Some((repair, SimOutcome::Solved { m, strong, trace })) => {
                    let g: Vec<String> = repair.iter().map(|&e| p.name(e)).collect();
                    r.line(format!("  solved m={m} strong={strong} repair=[{}]", g.join(",")));
                    let mut collisions = Vec::new();
                    for t in &trace {
                        let path = |v: &[usize]| v.iter().map(|&e| p.name(e)).collect::<Vec<_>>();
                        r.line(format!(
                            "  collision {}: w={} x={} y={} z={} sigma={} fixer=[{}] leader=[{}]",
                            t.index,
                            p.name(t.site),
                            p.name(t.x),
                            p.name(t.y),
                            p.name(t.repair_site),
                            t.sigma,
                            path(&t.repair_path).join(","),
                            path(&t.leader_path).join(",")
                        ));
                        collisions.push(json!({
                            "w": p.name(t.site), "x": p.name(t.x), "y": p.name(t.y), "z": p.name(t.repair_site),
                            "sigma": t.sigma, "fixer": path(&t.repair_path), "leader": path(&t.leader_path),
                        }));
                    }
                    run.insert("m".into(), m.into());
                    run.insert("repair".into(), g.into());
                    run.insert("collisions".into(), collisions.into());
                }
                _ => {
                    all = false;
                    r.line("  no solution");
                    run.insert("m".into(), Value::Null);
                }
            }
            runs.push(Value::Object(run));
        }
    }
    r.set("runs", runs);
    Ok(all)
}

fn placement_json(p: &NamedPoset, pl: &Placement) -> (String, Value) {
    let mut m = Map::new();
    let mut parts = Vec::new();
    for (e, s) in pl.iter().enumerate() {
        let v = s.map_or(Value::Null, Value::from);
        parts.push(format!("{}={}", p.name(e), s.map_or("-".to_string(), |s| s.to_string())));
        m.insert(p.name(e), v);
    }
    (parts.join(" "), Value::Object(m))
}

fn fair_cmd(poset: &Path, ext: Option<&Path>, filter: Option<&[String]>) -> Res<(Report, bool)> {
    let p = read_poset(poset)?;
    let mut r = Report::default();
    match (ext, filter) {
        (Some(ext), Some(filter)) => {
            let text = fs::read_to_string(ext).map_err(|e| format!("{}: {e}", ext.display()))?;
            let ext = p.parse_numbering(&text)?;
            let f: ElementSet = filter.iter().map(|k| p.element(k)).collect::<Result<_, _>>()?;
            let before: Placement = (0..p.poset.len()).map(|e| ext.rank(e)).collect();
            let after = simulate_departure(&p.poset, &ext, f)?;
            let (bt, bj) = placement_json(&p, &before);
            let (at, aj) = placement_json(&p, &after);
            r.line(format!("departing: {}", names(&p, f)));
            r.line(format!("before: {bt}"));
            r.line(format!("after: {at}"));
            r.set("departing", f.iter().map(|e| p.name(e)).collect::<Vec<_>>());
            r.set("before", bj);
            r.set("after", aj);
            Ok((r, true))
        }
        _ => {
            let report = fair_chart_report(&p.poset)?;
            r.line(format!("fair: {} ({} scenarios)", report.fair(), report.scenarios));
            r.set("fair", report.fair());
            r.set("scenarios", report.scenarios);
            if let Some(u) = &report.counterexample {
                r.line(format!(
                    "counterexample: departing {} first {} second {}",
                    names(&p, u.filter),
                    p.numbering_to_json(&u.first),
                    p.numbering_to_json(&u.second)
                ));
            }
            Ok((r, report.fair()))
        }
    }
}

fn enumerate_cmd(n: usize, out: Option<&Path>, all: bool, exec: Exec) -> Res<(Report, bool)> {
    let level = enumerate_levels(n, exec)?.pop().expect("level n exists");
    let mut classes = Vec::new();
    let mut connected = 0;
    for form in level {
        let poset = form.to_poset();
        if poset.is_connected() {
            classes.push((format!("{n}-{connected:05}"), form, poset));
            connected += 1;
        } else if all {
            classes.push((format!("{n}d-{:05}", classes.len() - connected), form, poset));
        }
    }
    let mut r = Report::default();
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        let mut index = Vec::new();
        for (id, form, poset) in &classes {
            let file = format!("{id}.json");
            fs::write(dir.join(&file), NamedPoset::new(poset.clone(), None).to_json_string() + "\n")?;
            index.push(json!({"id": id, "file": file, "n": n, "hash": format!("{:016x}", form.hash64())}));
        }
        fs::write(dir.join("index.json"), serde_json::to_string_pretty(&index)? + "\n")?;
        r.line(format!("wrote {} classes to {}", classes.len(), dir.display()));
    }
    r.line(format!("n={n} classes={} connected={connected}", classes.len()));
    r.set("n", n);
    r.set("classes", classes.len());
    r.set("connected", connected);
    r.table = Some((
        vec!["canonical_id".into(), "hash".into(), "covers".into()],
        classes
            .iter()
            .map(|(id, form, _)| vec![id.clone(), format!("{:016x}", form.hash64()), format!("{:?}", form.covers())])
            .collect(),
    ));
    Ok((r, true))
}

fn record_row(r: &SurveyRecord) -> Vec<String> {
    let b = |v: bool| v.to_string();
    vec![
        r.canonical_id.clone(),
        format!("{:016x}", r.hash),
        r.n.to_string(),
        b(r.connected),
        b(r.unique_max),
        b(r.jdt),
        b(r.dcomplete),
        b(r.d3complete),
        b(r.nonoverlapping),
        b(r.simultaneous),
        b(r.dual_jdt),
        b(r.doubly_jdt),
        r.neck_like.to_string(),
        r.crucial_pairs.to_string(),
        r.linear_extensions.to_string(),
    ]
}

const RECORD_COLUMNS: [&str; 15] = [
    "canonical_id",
    "hash",
    "n",
    "connected",
    "unique_max",
    "jdt",
    "dcomplete",
    "d3complete",
    "nonoverlapping",
    "simultaneous",
    "dual_jdt",
    "doubly_jdt",
    "neck_like",
    "crucial_pairs",
    "linear_extensions",
];

fn survey_cmd(a: &crate::SurveyArgs, header: &Header, exec: Exec) -> Res<(Report, bool)> {
    let min = a.min_n.unwrap_or(a.n);
    if min == 0 || min > a.n {
        return Err("--min-n must be between 1 and --n".into());
    }
    let mut entries: Vec<_> = census_up_to(a.n, exec)?.into_iter().filter(|e| e.poset.len() >= min).collect();
    if let Some(k) = a.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(header.seed);
        let mut picks = rand::seq::index::sample(&mut rng, entries.len(), k.min(entries.len())).into_vec();
        picks.sort_unstable();
        entries = picks.into_iter().map(|i| entries[i].clone()).collect();
    }
    let survey = survey_entries(&entries, exec)?;
    let s = &survey.summary;
    let summary = serde_json::to_value(s)?;

    let rows: Vec<Vec<String>> = survey.records.iter().map(record_row).collect();
    let columns: Vec<String> = RECORD_COLUMNS.iter().map(|c| c.to_string()).collect();
    if let Some(path) = &a.report {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(&columns)?;
        for row in &rows {
            w.write_record(row)?;
        }
        w.flush()?;
        let summary_path = a.summary.clone().unwrap_or_else(|| with_suffix(path, "summary.json"));
        let mut doc = Report::default();
        doc.set("summary", summary.clone());
        fs::write(&summary_path, doc.render(header, Format::Json))?;
    } else if let Some(path) = &a.summary {
        let mut doc = Report::default();
        doc.set("summary", summary.clone());
        fs::write(path, doc.render(header, Format::Json))?;
    }

    let mut r = Report::default();
    r.line(s.headline());
    if let Value::Object(m) = &summary {
        for (k, v) in m {
            r.line(format!("{k}={v}"));
        }
    }
    r.set("summary", summary);
    r.table = Some((columns, rows));
    Ok((r, true))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn conjecture_cmd(n_max: usize, exec: Exec) -> Res<(Report, bool)> {
    let report = conjecture_scan(n_max, exec)?;
    let mut r = Report::default();
    for e in &report.doubly_jdt {
        r.line(format!(
            "{} n={} minuscule={} dcomplete={} dual_dcomplete={}",
            e.canonical_id,
            e.n,
            e.minuscule.as_deref().unwrap_or("-"),
            e.dcomplete,
            e.dual_dcomplete
        ));
    }
    let outliers = report.outliers().len();
    let bad = report.not_doubly_dcomplete().len();
    r.line(format!("doubly_jdt={} outliers={outliers} not_doubly_dcomplete={bad}", report.doubly_jdt.len()));
    r.set("n_max", n_max);
    r.set("doubly_jdt", serde_json::to_value(&report.doubly_jdt)?);
    r.set("outliers", outliers);
    r.set("not_doubly_dcomplete", bad);
    r.table = Some((
        vec!["canonical_id".into(), "n".into(), "minuscule".into(), "dcomplete".into(), "dual_dcomplete".into()],
        report
            .doubly_jdt
            .iter()
            .map(|e| {
                vec![
                    e.canonical_id.clone(),
                    e.n.to_string(),
                    e.minuscule.clone().unwrap_or_default(),
                    e.dcomplete.to_string(),
                    e.dual_dcomplete.to_string(),
                ]
            })
            .collect(),
    ));
    Ok((r, outliers == 0 && bad == 0))
}
