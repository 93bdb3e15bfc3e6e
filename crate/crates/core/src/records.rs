//! CSV and JSON serialization of sweep records.
//!
//! Both formats use the flat keys
//! `epsilon,force,omega,time,eta_b,eta_ng,nu,fidelity`. An absent fidelity
//! is an empty CSV field or a JSON `null`. CSV numbers carry 17 significant
//! digits so every value re-parses to the same `f64`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::fmt;
use crate::hamiltonian::DuffingParams;
use crate::sweep::MeasureRecord;

pub const CSV_HEADER: [&str; 8] = [
    "epsilon", "force", "omega", "time", "eta_b", "eta_ng", "nu", "fidelity",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct FlatRecord {
    epsilon: f64,
    force: f64,
    omega: f64,
    time: f64,
    eta_b: f64,
    eta_ng: f64,
    nu: f64,
    fidelity: Option<f64>,
}

impl From<&MeasureRecord> for FlatRecord {
    fn from(r: &MeasureRecord) -> Self {
        Self {
            epsilon: r.params.epsilon,
            force: r.params.force,
            omega: r.params.omega,
            time: r.params.time,
            eta_b: r.eta_b,
            eta_ng: r.eta_ng,
            nu: r.nu,
            fidelity: r.fidelity,
        }
    }
}

impl TryFrom<FlatRecord> for MeasureRecord {
    type Error = crate::error::Error;

    fn try_from(f: FlatRecord) -> Result<Self> {
        Ok(Self {
            params: DuffingParams::new(f.epsilon, f.force, f.omega, f.time)?,
            eta_b: f.eta_b,
            eta_ng: f.eta_ng,
            nu: f.nu,
            fidelity: f.fidelity,
        })
    }
}

pub fn write_csv<W: Write>(records: &[MeasureRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for r in records {
        let f = FlatRecord::from(r);
        writer.write_record([
            fmt(f.epsilon),
            fmt(f.force),
            fmt(f.omega),
            fmt(f.time),
            fmt(f.eta_b),
            fmt(f.eta_ng),
            fmt(f.nu),
            f.fidelity.map(fmt).unwrap_or_default(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<MeasureRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(crate::error::Error::Parse(format!(
            "unexpected CSV header {:?}",
            header.iter().collect::<Vec<_>>()
        )));
    }
    reader
        .deserialize::<FlatRecord>()
        .map(|row| MeasureRecord::try_from(row?))
        .collect()
}

pub fn write_json<W: Write>(records: &[MeasureRecord], out: W) -> Result<()> {
    let flat: Vec<FlatRecord> = records.iter().map(FlatRecord::from).collect();
    serde_json::to_writer_pretty(out, &flat)?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<MeasureRecord>> {
    let flat: Vec<FlatRecord> = serde_json::from_reader(input)?;
    flat.into_iter().map(MeasureRecord::try_from).collect()
}
