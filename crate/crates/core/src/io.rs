//! JSON file formats for posets, parameters and partitions.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::family::{FamilyError, Parameter, Partition};
use crate::poset::{MarkedPoset, PosetError};
use crate::rational::{serde_rat_map, Rat};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("invalid marked poset: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// `{"elements": [...], "covers": [["a","p"], ...], "marking": {"a": "0"}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(with = "serde_rat_map")]
    pub marking: BTreeMap<String, Rat>,
}

impl PosetFile {
    pub fn from_poset(p: &MarkedPoset) -> Self {
        let mut covers: Vec<(String, String)> = p
            .covers()
            .map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
            .collect();
        covers.sort();
        PosetFile {
            elements: p.elements().to_vec(),
            covers,
            marking: p.marking_map(),
        }
    }

    /// Builds the poset and checks every marked-poset invariant.
    pub fn to_poset(&self) -> Result<MarkedPoset, IoError> {
        let covers: Vec<(&str, &str)> = self
            .covers
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let elements: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        let p = MarkedPoset::new(&elements, &covers, &self.marking)?;
        let report = p.validate();
        if !report.is_valid() {
            return Err(IoError::Invalid(report.messages()));
        }
        Ok(p)
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn parse_poset(text: &str) -> Result<MarkedPoset, IoError> {
    serde_json::from_str::<PosetFile>(text)?.to_poset()
}

pub fn read_poset(path: &Path) -> Result<MarkedPoset, IoError> {
    read_json::<PosetFile>(path)?.to_poset()
}

pub fn read_parameter(path: &Path, poset: &MarkedPoset) -> Result<Parameter, IoError> {
    let t: Parameter = read_json(path)?;
    t.validate(poset)?;
    Ok(t)
}

pub fn read_partition(path: &Path, poset: &MarkedPoset) -> Result<Partition, IoError> {
    let part: Partition = read_json(path)?;
    part.validate(poset)?;
    Ok(part)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
