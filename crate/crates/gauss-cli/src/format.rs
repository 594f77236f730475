//! File formats: CSV (header row, comma-separated, LF, UTF-8) and JSON
//! with the stable top-level shape {header, rows|report}.
//!
//! Rationals are serialized as integer pairs; the `xi_real` column is a
//! plotting convenience and consumers must treat it as lossy — the
//! readers below reconstruct fractions from the num/den columns only.
//! All floating-point fields are written in shortest round-trip form, so
//! reading a file back reproduces the in-memory values bit for bit.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use gauss_core::kernel::Amplitude;
use gauss_core::rational::ReducedFraction;
use gauss_core::strategies::{FactorReport, GhostRow, ScalingRow, SpectrumSample};

use crate::runner::CliError;

/// Run metadata embedded in every JSON document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Header {
    pub command: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smax: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ns: Option<Vec<u64>>,
}

impl Header {
    pub fn new(command: &str) -> Self {
        Header {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            n: None,
            m: None,
            s0: None,
            variant: None,
            dm: None,
            smax: None,
            seed: None,
            j: None,
            xi: None,
            ns: None,
        }
    }
}

/// One spectrum line: exact argument, amplitude, squared magnitude.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct SpectrumRow {
    pub xi_num: u64,
    pub xi_den: u64,
    pub xi_real: f64,
    pub re: f64,
    pub im: f64,
    pub mag2: f64,
}

impl SpectrumRow {
    pub fn from_sample(s: &SpectrumSample) -> Self {
        SpectrumRow {
            xi_num: s.argument.numerator(),
            xi_den: s.argument.denominator(),
            xi_real: s.argument.to_f64(),
            re: s.amplitude.re,
            im: s.amplitude.im,
            mag2: s.magnitude_sq,
        }
    }

    /// Rebuild the in-memory sample; the rational comes from the exact
    /// integer pair, never from `xi_real`.
    pub fn to_sample(&self) -> Result<SpectrumSample, CliError> {
        let argument = ReducedFraction::new(self.xi_num, self.xi_den)
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(SpectrumSample {
            argument,
            amplitude: Amplitude {
                re: self.re,
                im: self.im,
            },
            magnitude_sq: self.mag2,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub header: Header,
    pub rows: Vec<SpectrumRow>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct DegeneracyRow {
    pub value_num: u64,
    pub value_den: u64,
    pub d: u32,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DegeneracyDoc {
    pub header: Header,
    pub rows: Vec<DegeneracyRow>,
    pub generators: Vec<u64>,
    pub factors: Vec<u64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct GhostRowDoc {
    pub m: u32,
    pub max_nonfactor_mag: f64,
    pub ghost_count: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GhostDoc {
    pub header: Header,
    pub rows: Vec<GhostRowDoc>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct ScalingRowDoc {
    pub n: u64,
    pub m_min: u32,
    pub ratio: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScalingDoc {
    pub header: Header,
    pub rows: Vec<ScalingRowDoc>,
}

/// A factor report plus wall time, as serialized.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDoc {
    pub n: u64,
    pub method: String,
    pub factors: Vec<u64>,
    pub samples_evaluated: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_used: Option<u32>,
    pub ghost_candidates: u64,
    pub wall_time_ms: f64,
}

impl ReportDoc {
    pub fn from_report(report: &FactorReport, wall_time_ms: f64) -> Self {
        ReportDoc {
            n: report.n,
            method: report.method.to_string(),
            factors: report.factors.clone(),
            samples_evaluated: report.samples_evaluated,
            m_used: report.m_used,
            ghost_candidates: report.ghost_candidates,
            wall_time_ms,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FactorDoc {
    pub header: Header,
    pub report: ReportDoc,
}

// ---------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------

pub fn write_spectrum_csv(out: &mut dyn Write, rows: &[SpectrumRow]) -> std::io::Result<()> {
    out.write_all(b"xi_num,xi_den,xi_real,re,im,mag2\n")?;
    for r in rows {
        // xi_real with 17 significant digits; the other floats in
        // shortest round-trip form
        writeln!(
            out,
            "{},{},{:.16e},{},{},{}",
            r.xi_num, r.xi_den, r.xi_real, r.re, r.im, r.mag2
        )?;
    }
    Ok(())
}

pub fn write_degeneracy_csv(
    out: &mut dyn Write,
    rows: &[DegeneracyRow],
) -> std::io::Result<()> {
    out.write_all(b"value_num,value_den,d\n")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.value_num, r.value_den, r.d)?;
    }
    Ok(())
}

pub fn write_ghost_csv(out: &mut dyn Write, rows: &[GhostRowDoc]) -> std::io::Result<()> {
    out.write_all(b"m,max_nonfactor_mag,ghost_count\n")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.m, r.max_nonfactor_mag, r.ghost_count)?;
    }
    Ok(())
}

pub fn write_scaling_csv(out: &mut dyn Write, rows: &[ScalingRowDoc]) -> std::io::Result<()> {
    out.write_all(b"n,m_min,ratio\n")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.n, r.m_min, r.ratio)?;
    }
    Ok(())
}

pub fn ghost_row_doc(r: &GhostRow) -> GhostRowDoc {
    GhostRowDoc {
        m: r.m,
        max_nonfactor_mag: r.max_nonfactor_magnitude,
        ghost_count: r.ghost_count,
    }
}

pub fn scaling_row_doc(r: &ScalingRow) -> ScalingRowDoc {
    ScalingRowDoc {
        n: r.n,
        m_min: r.m_min,
        ratio: r.ratio,
    }
}

// ---------------------------------------------------------------------
// Readers (round-trip: exact reconstruction from emitted files)
// ---------------------------------------------------------------------

fn parse_field<T: std::str::FromStr>(field: &str, line_no: usize) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    field.parse().map_err(|e| {
        CliError::Config(format!("line {line_no}: bad field {field:?}: {e}"))
    })
}

pub fn read_spectrum_csv(input: &mut dyn BufRead) -> Result<Vec<SpectrumRow>, CliError> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(CliError::Io)?;
        if i == 0 {
            if line != "xi_num,xi_den,xi_real,re,im,mag2" {
                return Err(CliError::Config(format!("unexpected header {line:?}")));
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(CliError::Config(format!(
                "line {}: expected 6 fields, got {}",
                i + 1,
                fields.len()
            )));
        }
        rows.push(SpectrumRow {
            xi_num: parse_field(fields[0], i + 1)?,
            xi_den: parse_field(fields[1], i + 1)?,
            xi_real: parse_field(fields[2], i + 1)?,
            re: parse_field(fields[3], i + 1)?,
            im: parse_field(fields[4], i + 1)?,
            mag2: parse_field(fields[5], i + 1)?,
        });
    }
    Ok(rows)
}

pub fn read_spectrum_json(input: &mut dyn BufRead) -> Result<SpectrumDoc, CliError> {
    serde_json::from_reader(input).map_err(|e| CliError::Config(e.to_string()))
}

pub fn read_degeneracy_csv(input: &mut dyn BufRead) -> Result<Vec<DegeneracyRow>, CliError> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(CliError::Io)?;
        if i == 0 {
            if line != "value_num,value_den,d" {
                return Err(CliError::Config(format!("unexpected header {line:?}")));
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::Config(format!(
                "line {}: expected 3 fields, got {}",
                i + 1,
                fields.len()
            )));
        }
        rows.push(DegeneracyRow {
            value_num: parse_field(fields[0], i + 1)?,
            value_den: parse_field(fields[1], i + 1)?,
            d: parse_field(fields[2], i + 1)?,
        });
    }
    Ok(rows)
}
