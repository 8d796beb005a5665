//! Versioned JSON envelopes for exact objects and long-format CSV for dense matrices.

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::basis::PartitionRecord;
use crate::error::{check_same, Error, Result};
use crate::mub::HadamardMatrix;
use crate::weyl::{self, DenseMatrix, MonomialOperator};

pub const SCHEMA: u32 = 1;
pub const CSV_HEADER: &str = "matrix,row,col,re,im";

/// Objects with an exact JSON encoding that imports back unchanged.
pub trait Exportable: Serialize + DeserializeOwned {
    const KIND: &'static str;
}

impl Exportable for MonomialOperator {
    const KIND: &'static str = "monomial";
}

impl Exportable for HadamardMatrix {
    const KIND: &'static str = "hadamard";
}

impl Exportable for PartitionRecord {
    const KIND: &'static str = "partition";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylPairRecord {
    pub x: MonomialOperator,
    pub z: MonomialOperator,
}

impl WeylPairRecord {
    pub fn new(d: u32) -> Result<Self> {
        let (x, z) = weyl::weyl_pair(d)?;
        Ok(WeylPairRecord { x, z })
    }

    pub fn from_parts(x: MonomialOperator, z: MonomialOperator) -> Result<Self> {
        check_same(x.dim(), z.dim())?;
        Ok(WeylPairRecord { x, z })
    }
}

impl Exportable for WeylPairRecord {
    const KIND: &'static str = "weyl_pair";
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema: u32,
    kind: String,
    data: T,
}

/// Wraps an arbitrary payload as `{"schema": 1, "kind": .., "data": ..}`.
pub fn envelope(kind: &str, data: impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(Envelope {
        schema: SCHEMA,
        kind: kind.to_string(),
        data,
    })?)
}

/// Pretty JSON with a trailing newline; key order is fixed by the types.
pub fn render(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("JSON values always render");
    out.push('\n');
    out
}

pub fn to_json<T: Exportable>(object: &T) -> Result<String> {
    Ok(render(&envelope(T::KIND, object)?))
}

pub fn from_json<T: Exportable>(text: &str) -> Result<T> {
    let env: Envelope<Value> = serde_json::from_str(text)?;
    if env.schema != SCHEMA {
        return Err(Error::Invalid(format!("unsupported schema {}", env.schema)));
    }
    if env.kind != T::KIND {
        return Err(Error::Invalid(format!(
            "expected kind {:?}, found {:?}",
            T::KIND,
            env.kind
        )));
    }
    Ok(serde_json::from_value(env.data)?)
}

/// 17 significant digits, with negative zero written as zero.
pub fn format_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Long format, one row per entry, row-major within each matrix.
pub fn to_csv(matrices: &[(&str, &DenseMatrix)]) -> Result<String> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (name, m) in matrices {
        if name.contains([',', '\n', '"']) {
            return Err(Error::Invalid(format!("matrix name {name:?} is not a plain CSV field")));
        }
        for row in 0..m.dim() {
            for col in 0..m.dim() {
                let z = m.get(row, col);
                out.push_str(&format!(
                    "{name},{row},{col},{},{}\n",
                    format_f64(z.re),
                    format_f64(z.im)
                ));
            }
        }
    }
    Ok(out)
}

type Entries = Vec<(usize, usize, Complex64)>;

/// Inverse of [`to_csv`]; matrices come back in file order.
pub fn from_csv(text: &str) -> Result<Vec<(String, DenseMatrix)>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Invalid("missing CSV header".into()));
    }
    let mut groups: Vec<(String, Entries)> = Vec::new();
    for (n, line) in lines.enumerate() {
        let bad = || Error::Invalid(format!("malformed CSV line {}", n + 2));
        let fields: Vec<&str> = line.split(',').collect();
        let [name, row, col, re, im] = fields[..] else {
            return Err(bad());
        };
        let row: usize = row.parse().map_err(|_| bad())?;
        let col: usize = col.parse().map_err(|_| bad())?;
        let z = Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?);
        match groups.last_mut() {
            Some((last, entries)) if last == name => entries.push((row, col, z)),
            _ => groups.push((name.to_string(), vec![(row, col, z)])),
        }
    }
    groups
        .into_iter()
        .map(|(name, entries)| {
            let n = (entries.len() as f64).sqrt() as usize;
            if n * n != entries.len() {
                return Err(Error::Invalid(format!("matrix {name} is not square")));
            }
            let mut m = DenseMatrix::zeros(n);
            for (row, col, z) in entries {
                if row >= n || col >= n {
                    return Err(Error::Invalid(format!("entry ({row},{col}) outside matrix {name}")));
                }
                m.set(row, col, z);
            }
            Ok((name, m))
        })
        .collect()
}
