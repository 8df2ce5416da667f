//! Reference tables shipped with the crate.
//!
//! The files live in `data/` and are compiled in. Setting
//! `THETA_ENVELOPE_DATA` to a directory makes the loaders read
//! `table1.json` through `table5.json` from there instead.

use std::path::PathBuf;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DATA_ENV: &str = "THETA_ENVELOPE_DATA";

const BUNDLED: [&str; 5] = [
    include_str!("../data/table1.json"),
    include_str!("../data/table2.json"),
    include_str!("../data/table3.json"),
    include_str!("../data/table4.json"),
    include_str!("../data/table5.json"),
];

/// `q0 + q1 sqrt(k)` as stored in the data files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurdData {
    pub rat: String,
    pub coef: String,
    pub radicand: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub printed: String,
    /// Present when the printed root is rational.
    #[serde(default)]
    pub value: Option<String>,
    pub square: SurdData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub r: i64,
    pub s: i64,
    pub m: String,
    pub torsion: String,
    pub roots: Vec<RootEntry>,
}

/// Torsion examples with the square roots of the M-triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    pub table: u8,
    pub caption: String,
    pub rows: Vec<ClassRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTorsion {
    pub rank: u32,
    pub torsion: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub m: String,
    /// One entry per angle, in the order of [`RankTable::angles`].
    pub entries: Vec<RankTorsion>,
}

/// Rank and torsion of `G_theta^m` for several angles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTable {
    pub table: u8,
    pub caption: String,
    pub angles: Vec<[i64; 2]>,
    pub rows: Vec<RankRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeRow {
    pub n: u64,
    pub bold: bool,
    pub envelope: [String; 5],
    /// `[rank, torsion order]` pairs for the two curves attached to the row.
    #[serde(default)]
    pub rank_torsion: Option<Vec<[u32; 2]>>,
}

/// One envelope per square-free `n` for a fixed angle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeTable {
    pub table: u8,
    pub caption: String,
    pub r: i64,
    pub s: i64,
    pub rows: Vec<EnvelopeRow>,
}

fn raw(id: u8) -> Result<String> {
    if !(1..=5).contains(&id) {
        return Err(Error::Domain(format!("no table {id}; tables are numbered 1 to 5")));
    }
    match std::env::var_os(DATA_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(format!("table{id}.json"));
            std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
        }
        None => Ok(BUNDLED[id as usize - 1].to_string()),
    }
}

fn load<T: DeserializeOwned>(id: u8) -> Result<T> {
    serde_json::from_str(&raw(id)?).map_err(|e| Error::Parse(format!("table {id}: {e}")))
}

pub fn class_table() -> Result<ClassTable> {
    load(1)
}

pub fn rank_table() -> Result<RankTable> {
    load(2)
}

/// Tables 3, 4 and 5.
pub fn envelope_table(id: u8) -> Result<EnvelopeTable> {
    if !(3..=5).contains(&id) {
        return Err(Error::Domain(format!("table {id} does not list envelopes")));
    }
    load(id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_parse() {
        assert_eq!(class_table().unwrap().rows.len(), 4);
        let ranks = rank_table().unwrap();
        assert_eq!(ranks.rows.len() * ranks.angles.len(), 93);
        for id in 3..=5 {
            assert_eq!(envelope_table(id).unwrap().rows.len(), 31);
        }
        assert!(envelope_table(2).is_err());
    }
}
