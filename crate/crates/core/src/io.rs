//! Shared CSV plumbing.

use std::io::{Read, Write};

use crate::{Error, Result};

/// Formats a double with 17 significant digits (round-trips exactly).
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn write_rows<W: Write>(out: W, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.into_iter().map(fmt_f64))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a numeric CSV whose header must equal `header` exactly.
pub(crate) fn read_rows<R: Read>(input: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let found: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::Parse(format!(
            "expected header `{}`, found `{}`",
            header.join(","),
            found.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: not a number: `{s}`", line + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        if row.len() != header.len() {
            return Err(Error::Parse(format!("row {}: expected {} fields", line + 1, header.len())));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Recovers a uniform time step from a `t` column starting at 0.
pub(crate) fn uniform_dt(ts: &[f64], fallback: Option<f64>) -> Result<f64> {
    if ts.is_empty() {
        return Err(Error::Parse("no rows".into()));
    }
    if ts[0] != 0.0 {
        return Err(Error::Parse(format!("first timestamp must be 0, found {}", ts[0])));
    }
    let dt = match (ts.get(1), fallback) {
        (_, Some(dt)) => dt,
        (Some(&t1), None) => t1,
        (None, None) => return Err(Error::Parse("cannot infer dt from a single row".into())),
    };
    if !(dt > 0.0) {
        return Err(Error::InvalidDt(dt));
    }
    for (k, &t) in ts.iter().enumerate() {
        let expect = k as f64 * dt;
        if (t - expect).abs() > 1e-9 * expect.abs().max(1.0) {
            return Err(Error::Parse(format!("non-uniform timestamp at row {}", k + 1)));
        }
    }
    Ok(dt)
}
