//! Time-series CSV. Values are written in shortest round-trip form, so
//! parsing a file back reproduces every `f64` exactly.

use std::io::Write;

use crate::error::{Error, Result};
use crate::sim::run::TimeSeries;

const LEG_COLUMNS: [&str; 10] = ["lam10", "lam32", "lam10d", "lam32d", "lam10dd", "lam32dd", "f10", "f21y", "f21z", "p10"];
const POSE_COLUMNS: [&str; 10] = ["t", "x", "y", "phi", "xd", "yd", "phid", "xdd", "ydd", "phidd"];
const TAIL_COLUMNS: [&str; 5] = ["T", "V", "dEdt", "sum_power", "ne_residual"];

/// Column names in file order.
pub fn header() -> Vec<String> {
    let mut h: Vec<String> = POSE_COLUMNS.iter().map(|s| s.to_string()).collect();
    for leg in ["A", "B", "C"] {
        h.extend(LEG_COLUMNS.iter().map(|c| format!("{c}_{leg}")));
    }
    h.extend(TAIL_COLUMNS.iter().map(|s| s.to_string()));
    h
}

/// One row of numbers per sample, in [`header`] order.
pub fn rows(series: &TimeSeries) -> Vec<Vec<f64>> {
    series
        .samples
        .iter()
        .map(|s| {
            let p = &s.pose;
            let mut r = vec![s.t, p.x, p.y, p.phi, p.xd, p.yd, p.phid, p.xdd, p.ydd, p.phidd];
            for (l, f) in s.legs.iter().zip(&s.dynamics.legs) {
                r.extend([l.lambda10, l.lambda32, l.lambda10d, l.lambda32d, l.lambda10dd, l.lambda32dd, f.f10, f.f21y, f.f21z, f.p10]);
            }
            r.extend([s.energy.kinetic, s.energy.potential, s.energy.d_edt, s.energy.sum_power, s.ne_residual]);
            r
        })
        .collect()
}

pub fn write_csv(series: &TimeSeries, w: impl Write) -> Result<()> {
    let head = header();
    let mut out = csv::Writer::from_writer(w);
    out.write_record(&head).map_err(csv_error)?;
    for row in rows(series) {
        if let Some(i) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::OracleResidual(format!("non-finite value in column {} at t = {}", head[i], row[0])));
        }
        out.write_record(row.iter().map(|v| format!("{v:?}"))).map_err(csv_error)?;
    }
    out.flush().map_err(|e| Error::Config(e.to_string()))
}

pub fn to_csv_string(series: &TimeSeries) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(series, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV of formatted numbers is UTF-8"))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Config(format!("CSV: {e}"))
}

/// Parses a CSV produced by [`to_csv_string`] into its header and rows.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let head: Vec<String> = reader.headers().map_err(csv_error)?.iter().map(str::to_owned).collect();
    let mut rows = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let row = record
            .map_err(csv_error)?
            .iter()
            .map(|v| v.parse::<f64>().map_err(|e| Error::Config(format!("CSV line {}: {e}", n + 2))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((head, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let h = header();
        assert_eq!(h.len(), 10 + 30 + 5);
        assert_eq!(h[10], "lam10_A");
        assert_eq!(h[19], "p10_A");
        assert_eq!(h[20], "lam10_B");
        assert_eq!(h[39], "p10_C");
        assert_eq!(h[44], "ne_residual");
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        assert!(parse_csv("a,b\n1,2\n3\n").is_err());
        let (h, r) = parse_csv("a,b\n1,-0.0\n").unwrap();
        assert_eq!(h, ["a", "b"]);
        assert_eq!(r, vec![vec![1.0, -0.0]]);
    }
}
