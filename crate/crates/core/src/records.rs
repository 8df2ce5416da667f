//! Envelope records as JSON lines or CSV.
//!
//! A record is `{"r":2,"s":1,"n":3,"a":"2","b":"5/4","c":"7/4","d":"7/4","e":"13/4"}`.
//! Rationals are exact canonical strings; integers are written without a
//! denominator.

use std::io::{BufRead, Write};

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::envelopes::{Envelope, Relation};
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeRecord {
    pub r: i64,
    pub s: i64,
    pub n: u64,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub e: String,
}

/// Result of checking one record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecordStatus {
    Pass,
    /// Some component is zero or negative.
    NonPositive,
    Fail(Vec<Relation>),
}

impl RecordStatus {
    pub fn passed(&self) -> bool {
        *self == RecordStatus::Pass
    }
}

impl EnvelopeRecord {
    pub fn from_envelope(env: &Envelope, n: u64) -> Result<Self> {
        let angle = env.angle();
        let small = |v: &num_bigint::BigInt| {
            v.to_i64().ok_or_else(|| Error::Domain(format!("angle parameter {v} does not fit in 64 bits")))
        };
        let [a, b, c, d, e] = env.components().map(format_rational);
        Ok(Self { r: small(angle.r())?, s: small(angle.s())?, n, a, b, c, d, e })
    }

    pub fn angle(&self) -> Result<Angle> {
        Angle::new(self.r, self.s)
    }

    pub fn components(&self) -> Result<[Rational; 5]> {
        let parsed = [&self.a, &self.b, &self.c, &self.d, &self.e].map(|t| parse_rational(t));
        let [a, b, c, d, e] = parsed;
        Ok([a?, b?, c?, d?, e?])
    }

    /// Parses and verifies. Malformed fields are errors; a well-formed record
    /// that fails a relation is a [`RecordStatus::Fail`].
    pub fn check(&self) -> Result<RecordStatus> {
        let angle = self.angle()?;
        let parts = self.components()?;
        if parts.iter().any(|q| !q.is_positive()) {
            return Ok(RecordStatus::NonPositive);
        }
        let env = Envelope::new(angle, parts)?;
        let failed = env.failed_relations(&int(self.n));
        Ok(if failed.is_empty() { RecordStatus::Pass } else { RecordStatus::Fail(failed) })
    }

    pub fn to_envelope(&self) -> Result<Envelope> {
        Envelope::new(self.angle()?, self.components()?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    JsonLines,
    Csv,
}

/// A parsed record with its 1-based line number (the header is line 1 in CSV).
pub type Numbered = (usize, Result<EnvelopeRecord>);

/// Reads records, reporting failures per line instead of stopping.
pub fn read_records(input: impl BufRead, format: Format) -> Vec<Numbered> {
    match format {
        Format::JsonLines => read_jsonl(input),
        Format::Csv => read_csv(input),
    }
}

fn read_jsonl(input: impl BufRead) -> Vec<Numbered> {
    input
        .lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = match line {
                Ok(l) => l,
                Err(e) => return Some((i + 1, Err(Error::Parse(e.to_string())))),
            };
            if line.trim().is_empty() {
                return None;
            }
            let rec = serde_json::from_str(&line).map_err(|e| Error::Parse(e.to_string()));
            Some((i + 1, rec))
        })
        .collect()
}

fn read_csv(input: impl BufRead) -> Vec<Numbered> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    reader
        .deserialize()
        .enumerate()
        .map(|(i, rec)| (i + 2, rec.map_err(|e: csv::Error| Error::Parse(e.to_string()))))
        .collect()
}

/// Writes records; CSV output starts with the header `r,s,n,a,b,c,d,e`.
pub fn write_records(out: &mut dyn Write, records: &[EnvelopeRecord], format: Format) -> Result<()> {
    let io = |e: std::io::Error| Error::Internal(e.to_string());
    match format {
        Format::JsonLines => {
            for rec in records {
                let line = serde_json::to_string(rec).map_err(|e| Error::Internal(e.to_string()))?;
                writeln!(out, "{line}").map_err(io)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if records.is_empty() {
                w.write_record(["r", "s", "n", "a", "b", "c", "d", "e"])
                    .map_err(|e| Error::Internal(e.to_string()))?;
            }
            for rec in records {
                w.serialize(rec).map_err(|e| Error::Internal(e.to_string()))?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EnvelopeRecord {
        EnvelopeRecord {
            r: 2,
            s: 1,
            n: 3,
            a: "2".into(),
            b: "5/4".into(),
            c: "7/4".into(),
            d: "7/4".into(),
            e: "13/4".into(),
        }
    }

    #[test]
    fn json_roundtrip() {
        let mut buf = Vec::new();
        write_records(&mut buf, &[sample()], Format::JsonLines).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.trim(), r#"{"r":2,"s":1,"n":3,"a":"2","b":"5/4","c":"7/4","d":"7/4","e":"13/4"}"#);
        let back = read_records(&buf[..], Format::JsonLines);
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].1.as_ref().unwrap(), &sample());
    }

    #[test]
    fn csv_roundtrip() {
        let mut buf = Vec::new();
        write_records(&mut buf, &[sample(), sample()], Format::Csv).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("r,s,n,a,b,c,d,e\n"));
        let back = read_records(&buf[..], Format::Csv);
        assert_eq!(back.iter().map(|(l, _)| *l).collect::<Vec<_>>(), vec![2, 3]);
        assert!(back.iter().all(|(_, r)| r.as_ref().unwrap() == &sample()));
    }

    #[test]
    fn perturbed_record_names_first_relation() {
        let mut rec = sample();
        rec.c = "1750001/1000000".into();
        assert_eq!(rec.check().unwrap(), RecordStatus::Fail(vec![Relation::First]));
        assert!(sample().check().unwrap().passed());
    }

    #[test]
    fn non_positive_is_a_failure_not_an_error() {
        let mut rec = sample();
        rec.b = "-5/4".into();
        assert_eq!(rec.check().unwrap(), RecordStatus::NonPositive);
    }

    #[test]
    fn garbage_is_a_parse_error() {
        let lines = read_records(&b"{\"r\":2}\n\nnot json\n"[..], Format::JsonLines);
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1].0, 3);
        assert!(lines.iter().all(|(_, r)| r.is_err()));
        let mut rec = sample();
        rec.a = "2/0x".into();
        assert!(rec.check().is_err());
    }
}
