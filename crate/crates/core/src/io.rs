//! JSON interchange for posets and the numberings placed on them.
//!
//! * poset: `{"n": 4, "covers": [[0,1],[0,2],[1,3],[2,3]], "labels": [...]}`
//!   with `labels` optional;
//! * numbering: `{"0": 1, "2": 2}` mapping elements to ranks;
//! * bi-numbering: `{"green": {"1": "A", "2": "B", "3": 1}, "red": {"0": 1}}`.
//!
//! Element keys may be indices or, when the poset carries labels, label names.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::extensions::Numbering;
use crate::poset::Poset;
use crate::sliding::{BiNumbering, BubbleId};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A poset plus optional display names for its elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NamedPoset {
    pub poset: Poset,
    pub labels: Option<Vec<String>>,
}

impl NamedPoset {
    pub fn new(poset: Poset, labels: Option<Vec<String>>) -> NamedPoset {
        NamedPoset { poset, labels }
    }

    pub fn name(&self, e: usize) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    /// Resolves an index or label to an element.
    pub fn element(&self, key: &str) -> Result<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == key) {
                return Ok(i);
            }
        }
        let e: usize = key.parse().map_err(|_| Error::Parse(format!("unknown element {key:?}")))?;
        self.poset.check_index(e)?;
        Ok(e)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            n: self.poset.len(),
            covers: self.poset.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain data serializes")
    }

    pub fn from_json(j: PosetJson) -> Result<NamedPoset> {
        if let Some(l) = &j.labels {
            if l.len() != j.n {
                return Err(Error::Parse(format!("{} labels for {} elements", l.len(), j.n)));
            }
        }
        let covers: Vec<(usize, usize)> = j.covers.iter().map(|&[a, b]| (a, b)).collect();
        Ok(NamedPoset { poset: Poset::from_covers(j.n, &covers)?, labels: j.labels })
    }

    pub fn parse(text: &str) -> Result<NamedPoset> {
        let j: PosetJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        NamedPoset::from_json(j)
    }

    /// Parses `{"elem": rank, ...}`.
    pub fn parse_numbering(&self, text: &str) -> Result<Numbering> {
        let map: BTreeMap<String, u32> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        self.numbering_from_map(&map)
    }

    fn numbering_from_map(&self, map: &BTreeMap<String, u32>) -> Result<Numbering> {
        let pairs = map.iter().map(|(k, &r)| Ok((self.element(k)?, r))).collect::<Result<Vec<_>>>()?;
        Numbering::from_ranks(&self.poset, &pairs)
    }

    pub fn numbering_to_json(&self, n: &Numbering) -> String {
        let map: BTreeMap<String, u32> = n.pairs().into_iter().map(|(e, r)| (self.name(e), r)).collect();
        serde_json::to_string(&map).expect("plain data serializes")
    }

    /// Parses `{"green": {...}, "red": {...}}`.
    pub fn parse_bi_numbering(&self, text: &str) -> Result<BiNumbering> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            green: BTreeMap<String, Value>,
            #[serde(default)]
            red: BTreeMap<String, u32>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut green = Vec::new();
        for (k, v) in &raw.green {
            let id = match v {
                Value::String(s) if s == "A" => BubbleId::TestA,
                Value::String(s) if s == "B" => BubbleId::TestB,
                Value::Number(i) => match i.as_u64() {
                    Some(i) if i >= 1 && i <= u32::MAX as u64 => BubbleId::Indexed(i as u32),
                    _ => return Err(Error::MalformedBiNumbering(format!("bad bubble index {i}"))),
                },
                other => return Err(Error::MalformedBiNumbering(format!("bad bubble {other}"))),
            };
            green.push((self.element(k)?, id));
        }
        let red = self.numbering_from_map(&raw.red)?;
        BiNumbering::new(&self.poset, &green, red)
    }
}
