//! File formats: CSV tables for path-loss samples, fitted/catalog models and
//! delay-spread values; JSON for PDP batches, campaign records and configs.
//!
//! Floats are written with Rust's shortest round-trip formatting, so
//! `parse(emit(x))` re-emits byte-identical text.

use std::fmt::Display;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use csv::StringRecord;
use mmwave_core::{
    CiModelParams, Environment, FrequencyBand, PathLossSample, Polarization, StratumKey,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{CliError, Result};

pub const SAMPLE_HEADER: [&str; 7] = [
    "location_id",
    "band_ghz",
    "env",
    "pol",
    "dir",
    "distance_m",
    "path_loss_db",
];

pub const PARAMS_HEADER: [&str; 7] = ["band_ghz", "env", "pol", "dir", "ple", "sigma_db", "d0_m"];

pub const SPREAD_HEADER: [&str; 4] = ["band_ghz", "env", "pol", "rms_delay_spread_ns"];

/// Marker written in the `path_loss_db` column for a location where no
/// multipath was detected.
pub const OUTAGE: &str = "outage";

pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// A row of the path-loss sample table.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleRow {
    Sample(PathLossSample),
    Outage {
        location_id: String,
        stratum: StratumKey,
        distance_m: f64,
    },
}

/// A labelled RMS delay spread value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadRow {
    pub band: FrequencyBand,
    pub env: Environment,
    pub pol: Polarization,
    pub rms_delay_spread_ns: f64,
}

struct Row<'a> {
    rec: &'a StringRecord,
    line: u64,
    source: &'a Path,
}

impl Row<'_> {
    fn text(&self, idx: usize) -> &str {
        self.rec.get(idx).unwrap_or("")
    }

    fn parse<T>(&self, idx: usize, name: &str) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        self.text(idx)
            .trim()
            .parse()
            .map_err(|e| CliError::parse(self.source, self.line, format!("column {name}: {e}")))
    }

    fn band(&self, idx: usize) -> Result<FrequencyBand> {
        let ghz: f64 = self.parse(idx, "band_ghz")?;
        FrequencyBand::from_ghz(ghz)
            .map_err(|e| CliError::parse(self.source, self.line, format!("column band_ghz: {e}")))
    }

    fn fail(&self, message: impl Into<String>) -> CliError {
        CliError::parse(self.source, self.line, message)
    }
}

fn parse_csv<T>(
    text: &str,
    source: &Path,
    header: &[&str],
    mut convert: impl FnMut(&Row<'_>) -> Result<T>,
) -> Result<Vec<T>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());
    let found = reader
        .headers()
        .map_err(|e| CliError::parse(source, 1, e.to_string()))?
        .clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(CliError::parse(
            source,
            1,
            format!(
                "unexpected header '{}' (expected '{}')",
                found.iter().collect::<Vec<_>>().join(","),
                header.join(",")
            ),
        ));
    }
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::parse(source, line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        out.push(convert(&Row {
            rec: &rec,
            line,
            source,
        })?);
    }
    Ok(out)
}

fn emit_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn parse_samples(text: &str, source: &Path) -> Result<Vec<SampleRow>> {
    parse_csv(text, source, &SAMPLE_HEADER, |row| {
        let location_id = row.text(0).to_string();
        if location_id.is_empty() {
            return Err(row.fail("column location_id: empty"));
        }
        let stratum = StratumKey {
            band: row.band(1)?,
            env: row.parse(2, "env")?,
            pol: row.parse(3, "pol")?,
            dir: row.parse(4, "dir")?,
        };
        let distance_m: f64 = row.parse(5, "distance_m")?;
        if row.text(6).trim() == OUTAGE {
            return Ok(SampleRow::Outage {
                location_id,
                stratum,
                distance_m,
            });
        }
        let sample = PathLossSample {
            location_id,
            band: stratum.band,
            env: stratum.env,
            pol: stratum.pol,
            dir: stratum.dir,
            distance_m,
            path_loss_db: row.parse(6, "path_loss_db")?,
        };
        sample.validate().map_err(|e| row.fail(e.to_string()))?;
        Ok(SampleRow::Sample(sample))
    })
}

pub fn samples_to_csv(rows: &[SampleRow]) -> String {
    emit_csv(
        &SAMPLE_HEADER,
        rows.iter().map(|row| match row {
            SampleRow::Sample(s) => vec![
                s.location_id.clone(),
                fmt_f64(s.band.ghz()),
                s.env.to_string(),
                s.pol.to_string(),
                s.dir.to_string(),
                fmt_f64(s.distance_m),
                fmt_f64(s.path_loss_db),
            ],
            SampleRow::Outage {
                location_id,
                stratum,
                distance_m,
            } => vec![
                location_id.clone(),
                fmt_f64(stratum.band.ghz()),
                stratum.env.to_string(),
                stratum.pol.to_string(),
                stratum.dir.to_string(),
                fmt_f64(*distance_m),
                OUTAGE.to_string(),
            ],
        }),
    )
}

pub fn plain_samples_to_csv(samples: &[PathLossSample]) -> String {
    let rows: Vec<SampleRow> = samples.iter().cloned().map(SampleRow::Sample).collect();
    samples_to_csv(&rows)
}

pub fn parse_params(text: &str, source: &Path) -> Result<Vec<CiModelParams>> {
    parse_csv(text, source, &PARAMS_HEADER, |row| {
        let stratum = StratumKey {
            band: row.band(0)?,
            env: row.parse(1, "env")?,
            pol: row.parse(2, "pol")?,
            dir: row.parse(3, "dir")?,
        };
        CiModelParams::new(
            stratum,
            row.parse(4, "ple")?,
            row.parse(5, "sigma_db")?,
            row.parse(6, "d0_m")?,
        )
        .map_err(|e| row.fail(e.to_string()))
    })
}

pub fn params_to_csv(params: &[CiModelParams]) -> String {
    emit_csv(
        &PARAMS_HEADER,
        params.iter().map(|p| {
            vec![
                fmt_f64(p.band.ghz()),
                p.env.to_string(),
                p.pol.to_string(),
                p.dir.to_string(),
                fmt_f64(p.ple),
                fmt_f64(p.shadow_sigma_db),
                fmt_f64(p.d0_m),
            ]
        }),
    )
}

pub fn parse_spreads(text: &str, source: &Path) -> Result<Vec<SpreadRow>> {
    parse_csv(text, source, &SPREAD_HEADER, |row| {
        let value: f64 = row.parse(3, "rms_delay_spread_ns")?;
        if !(value.is_finite() && value >= 0.0) {
            return Err(row.fail("column rms_delay_spread_ns: must be non-negative"));
        }
        Ok(SpreadRow {
            band: row.band(0)?,
            env: row.parse(1, "env")?,
            pol: row.parse(2, "pol")?,
            rms_delay_spread_ns: value,
        })
    })
}

pub fn spreads_to_csv(rows: &[SpreadRow]) -> String {
    emit_csv(
        &SPREAD_HEADER,
        rows.iter().map(|r| {
            vec![
                fmt_f64(r.band.ghz()),
                r.env.to_string(),
                r.pol.to_string(),
                fmt_f64(r.rms_delay_spread_ns),
            ]
        }),
    )
}

/// Generic table writer for report outputs.
pub fn table_to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    emit_csv(header, rows)
}

pub fn parse_json<T: DeserializeOwned>(text: &str, source: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::parse(source, e.line() as u64, e.to_string()))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("model types serialize");
    s.push('\n');
    s
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Write via a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| CliError::io(path, e))?;
    // Temp files are created owner-only; outputs are ordinary data files.
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file()
            .set_permissions(std::fs::Permissions::from_mode(0o644))
            .map_err(|e| CliError::io(path, e))?;
    }
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
