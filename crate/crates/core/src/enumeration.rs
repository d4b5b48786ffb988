//! Isomorphism-free generation of small posets and the census survey.
//!
//! Level `n` is built from level `n - 1` (connected or not) by adding a new
//! maximal element over each ideal, then deduplicating canonical forms.
//! Every poset arises this way, since removing a maximal element leaves a
//! poset and an ideal.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::canonical::{canonical_form_with_limit, CanonicalForm};
use crate::dcomplete::{check_all, is_d3_complete, is_dcomplete, Verdict};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::extensions::linear_extensions_count;
use crate::families::minuscule_catalog;
use crate::jdt::{crucial_pairs, is_jdt};
use crate::poset::Poset;
use crate::simultaneous::is_simultaneous;

/// Largest size the enumerator accepts.
pub const ENUMERATION_LIMIT: usize = 9;

fn check_size(n: usize) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::SizeLimitExceeded { n, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

/// Every isomorphism class of each size `0..=n_max`, sorted within a level.
pub fn enumerate_levels(n_max: usize, exec: Exec) -> Result<Vec<Vec<CanonicalForm>>> {
    check_size(n_max)?;
    let empty = canonical_form_with_limit(&Poset::antichain(0), ENUMERATION_LIMIT)?;
    let mut levels = vec![vec![empty]];
    for _ in 1..=n_max {
        let parents = levels.last().expect("level 0 exists");
        let children = exec.try_map(parents, |form| -> Result<Vec<CanonicalForm>> {
            let p = form.to_poset();
            p.ideals()
                .map(|ideal| canonical_form_with_limit(&p.extend_with_max(ideal)?, ENUMERATION_LIMIT))
                .collect()
        })?;
        let level: BTreeSet<CanonicalForm> = children.into_iter().flatten().collect();
        levels.push(level.into_iter().collect());
    }
    Ok(levels)
}

/// Every isomorphism class of `n`-element posets.
pub fn enumerate_all(n: usize, exec: Exec) -> Result<Vec<CanonicalForm>> {
    Ok(enumerate_levels(n, exec)?.pop().expect("level n exists"))
}

/// Canonical representatives of the connected `n`-element posets.
pub fn enumerate_connected(n: usize, exec: Exec) -> Result<Vec<Poset>> {
    Ok(census(n, exec)?.into_iter().map(|e| e.poset).collect())
}

/// A connected class with its census id.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    /// `"<n>-<index>"`, the index counting connected classes in canonical order.
    pub id: String,
    pub form: CanonicalForm,
    pub poset: Poset,
}

fn entries(n: usize, level: Vec<CanonicalForm>) -> Vec<CensusEntry> {
    level
        .into_iter()
        .map(|form| (form.to_poset(), form))
        .filter(|(p, _)| p.is_connected())
        .enumerate()
        .map(|(i, (poset, form))| CensusEntry { id: format!("{n}-{i:05}"), form, poset })
        .collect()
}

/// The connected classes of size `n`.
pub fn census(n: usize, exec: Exec) -> Result<Vec<CensusEntry>> {
    let level = enumerate_all(n, exec)?;
    Ok(entries(n, level))
}

/// The connected classes of every size in `1..=n_max`, smallest first.
pub fn census_up_to(n_max: usize, exec: Exec) -> Result<Vec<CensusEntry>> {
    let levels = enumerate_levels(n_max, exec)?;
    Ok(levels.into_iter().enumerate().skip(1).flat_map(|(n, level)| entries(n, level)).collect())
}

/// Classification of one connected class.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SurveyRecord {
    pub canonical_id: String,
    #[serde(serialize_with = "hex")]
    pub hash: u64,
    pub n: usize,
    pub connected: bool,
    pub unique_max: bool,
    pub jdt: bool,
    pub dcomplete: bool,
    pub d3complete: bool,
    pub nonoverlapping: bool,
    pub simultaneous: bool,
    pub dual_jdt: bool,
    pub doubly_jdt: bool,
    pub neck_like: usize,
    pub crucial_pairs: usize,
    pub linear_extensions: u128,
}

fn hex<S: serde::Serializer>(h: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{h:016x}"))
}

/// Non-maximal elements comparable to every element.
pub fn neck_like_count(poset: &Poset) -> usize {
    (0..poset.len())
        .filter(|&e| !poset.upper_covers(e).is_empty())
        .filter(|&e| poset.up_set(e).union(poset.down_set(e)) == poset.all())
        .count()
}

/// Everything but the dual flags, which need the whole level.
pub fn classify(id: &str, poset: &Poset) -> Result<SurveyRecord> {
    let verdicts = check_all(poset);
    let dcomplete = verdicts.iter().all(Verdict::passed);
    let jdt = is_jdt(poset);
    let simultaneous = is_simultaneous(poset)?;
    let record = SurveyRecord {
        canonical_id: id.to_string(),
        hash: canonical_form_with_limit(poset, ENUMERATION_LIMIT)?.hash64(),
        n: poset.len(),
        connected: poset.is_connected(),
        unique_max: poset.has_unique_max(),
        jdt,
        dcomplete,
        d3complete: is_d3_complete(poset),
        nonoverlapping: verdicts[2].passed(),
        simultaneous,
        dual_jdt: false,
        doubly_jdt: false,
        neck_like: neck_like_count(poset),
        crucial_pairs: crucial_pairs(poset).len(),
        linear_extensions: linear_extensions_count(poset)?,
    };
    let fail = |detail: &str| Err(Error::ImplicationViolated { id: id.to_string(), detail: detail.to_string() });
    if dcomplete && !simultaneous {
        return fail("d-complete but not simultaneous");
    }
    if simultaneous && !jdt {
        return fail("simultaneous but not jdt");
    }
    Ok(record)
}

/// Headline counts over a set of survey records.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct SurveySummary {
    pub sizes: Vec<usize>,
    pub total: usize,
    pub jdt: usize,
    pub dcomplete: usize,
    pub dcomplete_jdt: usize,
    pub jdt_not_dcomplete: usize,
    pub d3complete: usize,
    pub nonoverlapping: usize,
    pub simultaneous: usize,
    pub doubly_jdt: usize,
    pub doubly_jdt_not_dcomplete: usize,
    /// Connected jdt classes with more than one maximal element.
    pub jdt_without_unique_max: usize,
    /// Connected jdt classes that are not d-complete and have no neck-like
    /// element; informational only.
    pub jdt_not_dcomplete_without_neck: usize,
    /// Classes breaking "non-overlapping and simultaneous iff d-complete".
    pub nonoverlap_simultaneous_mismatch: usize,
}

impl SurveySummary {
    pub fn from_records(records: &[SurveyRecord]) -> SurveySummary {
        let count = |f: &dyn Fn(&SurveyRecord) -> bool| records.iter().filter(|r| f(r)).count();
        let mut sizes: Vec<usize> = records.iter().map(|r| r.n).collect();
        sizes.sort_unstable();
        sizes.dedup();
        SurveySummary {
            sizes,
            total: records.len(),
            jdt: count(&|r| r.jdt),
            dcomplete: count(&|r| r.dcomplete),
            dcomplete_jdt: count(&|r| r.jdt && r.dcomplete),
            jdt_not_dcomplete: count(&|r| r.jdt && !r.dcomplete),
            d3complete: count(&|r| r.d3complete),
            nonoverlapping: count(&|r| r.nonoverlapping),
            simultaneous: count(&|r| r.simultaneous),
            doubly_jdt: count(&|r| r.doubly_jdt),
            doubly_jdt_not_dcomplete: count(&|r| r.doubly_jdt && !r.dcomplete),
            jdt_without_unique_max: count(&|r| r.jdt && !r.unique_max),
            jdt_not_dcomplete_without_neck: count(&|r| r.jdt && !r.dcomplete && r.neck_like == 0),
            nonoverlap_simultaneous_mismatch: count(&|r| (r.nonoverlapping && r.simultaneous) != r.dcomplete),
        }
    }

    /// `jdt=<..> dcomplete_jdt=<..> total=<..>`
    pub fn headline(&self) -> String {
        format!("jdt={} dcomplete_jdt={} total={}", self.jdt, self.dcomplete_jdt, self.total)
    }
}

#[derive(Clone, Debug)]
pub struct Survey {
    pub records: Vec<SurveyRecord>,
    pub summary: SurveySummary,
}

/// Classifies the given census entries. Duals are looked up among the
/// entries by canonical form and classified directly when absent.
pub fn survey_entries(entries: &[CensusEntry], exec: Exec) -> Result<Survey> {
    let mut records = exec.try_map(entries, |e| classify(&e.id, &e.poset))?;
    let by_form: HashMap<&CanonicalForm, bool> =
        entries.iter().zip(&records).map(|(e, r)| (&e.form, r.jdt)).collect();
    let duals = exec.try_map(entries, |e| -> Result<bool> {
        let dual = e.poset.order_dual();
        let form = canonical_form_with_limit(&dual, ENUMERATION_LIMIT)?;
        Ok(match by_form.get(&form) {
            Some(&jdt) => jdt,
            None => is_jdt(&dual),
        })
    })?;
    for (r, dual_jdt) in records.iter_mut().zip(duals) {
        r.dual_jdt = dual_jdt;
        r.doubly_jdt = r.jdt && dual_jdt;
    }
    let summary = SurveySummary::from_records(&records);
    Ok(Survey { records, summary })
}

/// Surveys every connected class with a size in `sizes`.
pub fn survey(sizes: &[usize], exec: Exec) -> Result<Survey> {
    let n_max = sizes.iter().copied().max().unwrap_or(0);
    let levels = enumerate_levels(n_max, exec)?;
    let mut all = Vec::new();
    for (n, level) in levels.into_iter().enumerate() {
        if n > 0 && sizes.contains(&n) {
            all.extend(entries(n, level));
        }
    }
    survey_entries(&all, exec)
}

/// A connected doubly-jdt class and how it compares with the minuscule list.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConjectureEntry {
    pub canonical_id: String,
    pub n: usize,
    /// Name of the matching minuscule poset, if any.
    pub minuscule: Option<String>,
    pub dcomplete: bool,
    pub dual_dcomplete: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConjectureReport {
    pub n_max: usize,
    pub doubly_jdt: Vec<ConjectureEntry>,
}

impl ConjectureReport {
    /// Doubly-jdt classes that match no minuscule poset.
    pub fn outliers(&self) -> Vec<&ConjectureEntry> {
        self.doubly_jdt.iter().filter(|e| e.minuscule.is_none()).collect()
    }

    /// Doubly-jdt classes where the poset or its dual is not d-complete.
    pub fn not_doubly_dcomplete(&self) -> Vec<&ConjectureEntry> {
        self.doubly_jdt.iter().filter(|e| !(e.dcomplete && e.dual_dcomplete)).collect()
    }
}

/// Matches the doubly-jdt records of a survey against the minuscule list.
pub fn conjecture_scan_from(entries: &[CensusEntry], survey: &Survey, n_max: usize) -> Result<ConjectureReport> {
    let catalog: Vec<(String, CanonicalForm)> = minuscule_catalog(n_max)
        .into_iter()
        .map(|(m, p)| Ok((m.to_string(), canonical_form_with_limit(&p, ENUMERATION_LIMIT)?)))
        .collect::<Result<_>>()?;
    let mut doubly_jdt = Vec::new();
    for (e, r) in entries.iter().zip(&survey.records) {
        if !r.doubly_jdt || r.n > n_max {
            continue;
        }
        doubly_jdt.push(ConjectureEntry {
            canonical_id: r.canonical_id.clone(),
            n: r.n,
            minuscule: catalog.iter().find(|(_, f)| *f == e.form).map(|(name, _)| name.clone()),
            dcomplete: r.dcomplete,
            dual_dcomplete: is_dcomplete(&e.poset.order_dual()),
        });
    }
    Ok(ConjectureReport { n_max, doubly_jdt })
}

/// Surveys every connected class up to `n_max` and matches the doubly-jdt
/// ones against the minuscule list.
pub fn conjecture_scan(n_max: usize, exec: Exec) -> Result<ConjectureReport> {
    let entries = census_up_to(n_max, exec)?;
    let survey = survey_entries(&entries, exec)?;
    conjecture_scan_from(&entries, &survey, n_max)
}
