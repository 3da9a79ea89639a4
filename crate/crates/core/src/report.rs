//! JSON and CSV documents emitted by the command line front end.
//!
//! Exact integers and rationals are written as decimal strings
//! (`"numerator/denominator"` for rationals) and binary64 values in their
//! shortest round-trip form.

use std::fmt::Display;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linear_code::PweTable;

pub fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_display_vec<T: Display, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Shortest round-trip rendering of a binary64, using exponent notation
/// outside `[1e-5, 1e16)`.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Serialized partition weight enumerator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PweDocument {
    pub partition: Vec<usize>,
    pub terms: Vec<PweTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PweTerm {
    pub profile: Vec<usize>,
    pub count: String,
}

impl PweDocument {
    pub fn from_table(table: &PweTable) -> PweDocument {
        PweDocument {
            partition: table.sizes().to_vec(),
            terms: table
                .iter()
                .map(|(p, c)| PweTerm { profile: p.to_vec(), count: c.to_string() })
                .collect(),
        }
    }

    pub fn to_table(&self) -> Result<PweTable> {
        let mut t = PweTable::new(&self.partition);
        for term in &self.terms {
            let c = BigUint::from_str(&term.count)
                .map_err(|_| Error::Parse { what: "count", detail: term.count.clone() })?;
            t.add(term.profile.clone(), c)?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<PweDocument> {
        serde_json::from_str(s).map_err(|e| Error::Parse { what: "PWE document", detail: e.to_string() })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv_writer();
        w.write_record(["profile", "count"]).expect("in-memory write");
        for t in &self.terms {
            w.write_record([join(&t.profile), t.count.clone()]).expect("in-memory write");
        }
        finish(w)
    }
}

pub fn join<T: Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

pub fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 records")
}

/// CSV with a header row from plain string records.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv_writer();
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    finish(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_rendering_round_trips() {
        for x in [0.0, 0.5, 1.0, 1e-20, 3.25e-7, 0.1 + 0.2, 12345.678, 1e300] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_f64(1e-20), "1e-20");
        assert_eq!(fmt_f64(0.081), "0.081");
    }

    #[test]
    fn csv_quotes_profiles() {
        let mut t = PweTable::new(&[1, 2]);
        t.add(vec![0, 0], BigUint::from(1u32)).unwrap();
        t.add(vec![1, 2], BigUint::from(7u32)).unwrap();
        let csv = PweDocument::from_table(&t).to_csv();
        assert_eq!(csv, "profile,count\n\"0,0\",1\n\"1,2\",7\n");
    }
}
