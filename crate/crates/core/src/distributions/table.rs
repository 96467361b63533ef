use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{DistributionSpec, Support};
use crate::error::{Error, Result};

/// JSON form `{"nodes": [...], "values": [...]}` of a tabulated or
/// empirical CDF.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfTable {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

impl CdfTable {
    pub fn into_spec(self) -> Result<DistributionSpec> {
        DistributionSpec::tabulated(self.nodes, self.values)
    }

    pub fn into_spec_on(self, support: Support) -> Result<DistributionSpec> {
        DistributionSpec::tabulated_on(self.nodes, self.values, support)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Writes a single-column CSV with the given header.
pub fn write_samples_csv<W: Write>(writer: W, header: &str, samples: &[f64]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    w.write_record([header])?;
    for x in samples {
        w.write_record([x.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a single-column CSV with a header row.
pub fn read_samples_csv<R: Read>(reader: R) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        if record.len() != 1 {
            return Err(Error::MalformedInput(format!("row {} has {} columns, expected 1", i + 1, record.len())));
        }
        let x: f64 = record[0]
            .trim()
            .parse()
            .map_err(|_| Error::MalformedInput(format!("row {}: '{}' is not a number", i + 1, &record[0])))?;
        out.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empirical_table_json() {
        let spec = DistributionSpec::empirical(vec![2.0, 1.0, 2.0, 3.0]).unwrap();
        let table = spec.to_table().unwrap();
        assert_eq!(table.nodes, vec![1.0, 2.0, 3.0]);
        assert_eq!(table.values, vec![0.25, 0.75, 1.0]);
        let json = table.to_json().unwrap();
        assert_eq!(json, r#"{"nodes":[1.0,2.0,3.0],"values":[0.25,0.75,1.0]}"#);
        let back = CdfTable::from_json(&json).unwrap().into_spec().unwrap();
        for t in [1.0, 2.0, 3.0] {
            assert_eq!(back.cdf(t), spec.cdf(t));
        }
    }

    #[test]
    fn samples_csv_roundtrip() {
        let xs = vec![0.5, 1.25, -3.0];
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, "x", &xs).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "x\n0.5\n1.25\n-3\n");
        assert_eq!(read_samples_csv(&buf[..]).unwrap(), xs);
        assert!(read_samples_csv("x\nabc\n".as_bytes()).is_err());
    }
}
