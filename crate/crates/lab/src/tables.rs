//! CSV and key/value output.

use std::io::Write;

use toric_core::{Classification, InvariantReport, MomentProfile, OrbitDatum};

use crate::experiments::SweepRecord;
use crate::LabError;

/// Schema line written before every CSV table.
pub const SCHEMA_LINE: &str = "#schema=1";

/// `x` with 17 significant digits.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_orbits_csv<W: Write>(out: W, p: &MomentProfile, orbits: &[OrbitDatum]) -> Result<(), LabError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["m", "n", "w1", "w2", "action", "location_kind", "location_index"])?;
    for o in orbits {
        w.write_record([
            o.mn.m.to_string(),
            o.mn.n.to_string(),
            sig17(o.base_point.x),
            sig17(o.base_point.y),
            sig17(o.action),
            o.location.kind().to_string(),
            o.location.index(p).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Names of the classification flags that hold, joined by `|`.
pub fn flag_names(c: &Classification) -> String {
    let flags = [
        ("star_shaped", c.star_shaped.holds),
        ("monotone", c.monotone.holds),
        ("strictly_monotone", c.strictly_monotone.holds),
        ("convex_4d", c.convex_4d.holds),
    ];
    flags.iter().filter(|f| f.1).map(|f| f.0).collect::<Vec<_>>().join("|")
}

pub const REPORT_FIELDS: [&str; 9] =
    ["area", "contact_volume", "ruelle", "ruelle_quadrature", "t_min", "sys", "ru", "product", "flags"];

fn report_values(r: &InvariantReport) -> [String; 9] {
    [
        sig17(r.area),
        sig17(r.contact_volume),
        sig17(r.ruelle),
        sig17(r.ruelle_quadrature),
        sig17(r.t_min),
        sig17(r.sys),
        sig17(r.ru),
        sig17(r.product),
        flag_names(&r.classification),
    ]
}

/// One `key = value` line per field.
pub fn report_key_values(r: &InvariantReport) -> String {
    REPORT_FIELDS
        .iter()
        .zip(report_values(r))
        .map(|(k, v)| format!("{k} = {v}\n"))
        .collect()
}

pub fn write_report_csv<W: Write>(out: W, reports: &[InvariantReport]) -> Result<(), LabError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REPORT_FIELDS)?;
    for r in reports {
        w.write_record(report_values(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep_csv<W: Write>(mut out: W, rows: &[SweepRecord]) -> Result<(), LabError> {
    writeln!(out, "{SCHEMA_LINE}")?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(SweepRecord::FIELDS)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Parse a table written by [`write_sweep_csv`].
pub fn read_sweep_csv(text: &str) -> Result<Vec<SweepRecord>, LabError> {
    let body = text
        .strip_prefix(SCHEMA_LINE)
        .ok_or_else(|| LabError::Format("missing schema line".into()))?
        .trim_start_matches(['\r', '\n']);
    let mut r = csv::Reader::from_reader(body.as_bytes());
    r.deserialize().map(|row| row.map_err(LabError::from)).collect()
}
