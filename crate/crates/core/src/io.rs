//! Level tables on disk and run configuration.
//!
//! A levels file is CSV with the header `label,L,S,J,energy,uncertainty`,
//! optionally preceded by comment lines starting with `#`. A comment of the
//! form `# unit: cm-1` names the energy unit; the fitter never looks at it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{HalfInt, Rational};
use crate::spectra::{Multiplet, SpectraError};

pub const LEVELS_HEADER: [&str; 6] = ["label", "L", "S", "J", "energy", "uncertainty"];

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn ser_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser_rational(q, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Field { line: u64, column: String, message: String },
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("{0}")]
    File(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelRow {
    pub label: String,
    #[serde(rename = "L")]
    pub l: HalfInt,
    #[serde(rename = "S")]
    pub s: HalfInt,
    #[serde(rename = "J")]
    pub j: HalfInt,
    pub energy: f64,
    pub uncertainty: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LevelsFile {
    pub unit: Option<String>,
    pub rows: Vec<LevelRow>,
}

fn field<T: FromStr>(record: &csv::StringRecord, idx: usize, line: u64) -> Result<T, ParseError>
where
    T::Err: fmt::Display,
{
    let raw = record.get(idx).unwrap_or("").trim();
    raw.parse().map_err(|e: T::Err| ParseError::Field {
        line,
        column: LEVELS_HEADER[idx].to_string(),
        message: format!("cannot parse {raw:?}: {e}"),
    })
}

impl LevelsFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let unit = text
            .lines()
            .filter_map(|l| l.trim().strip_prefix('#'))
            .find_map(|c| c.trim().strip_prefix("unit:").map(|u| u.trim().to_string()));
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| ParseError::File(e.to_string()))?.clone();
        if header.iter().collect::<Vec<_>>() != LEVELS_HEADER {
            return Err(ParseError::Row {
                line: header.position().map_or(1, |p| p.line()),
                message: format!("header must be {}, found {}", LEVELS_HEADER.join(","), header.iter().collect::<Vec<_>>().join(",")),
            });
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| match e.position() {
                Some(p) => ParseError::Row { line: p.line(), message: e.to_string() },
                None => ParseError::File(e.to_string()),
            })?;
            let line = record.position().map_or(0, |p| p.line());
            let row = LevelRow {
                label: field(&record, 0, line)?,
                l: field(&record, 1, line)?,
                s: field(&record, 2, line)?,
                j: field(&record, 3, line)?,
                energy: field(&record, 4, line)?,
                uncertainty: field(&record, 5, line)?,
            };
            if !row.energy.is_finite() {
                return Err(ParseError::Field { line, column: "energy".into(), message: "energy must be finite".into() });
            }
            if !(row.uncertainty >= 0.0 && row.uncertainty.is_finite()) {
                return Err(ParseError::Field { line, column: "uncertainty".into(), message: "uncertainty must be finite and nonnegative".into() });
            }
            rows.push(row);
        }
        Ok(LevelsFile { unit, rows })
    }

    /// CSV text; floats carry 17 significant digits so a re-read is exact.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(unit) = &self.unit {
            out.push_str(&format!("# unit: {unit}\n"));
        }
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(LEVELS_HEADER).expect("in-memory write");
        for r in &self.rows {
            writer
                .write_record([
                    r.label.clone(),
                    r.l.to_string(),
                    r.s.to_string(),
                    r.j.to_string(),
                    format!("{:.16e}", r.energy),
                    format!("{:.16e}", r.uncertainty),
                ])
                .expect("in-memory write");
        }
        out.push_str(&String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input"));
        out
    }

    pub fn from_multiplet(m: &Multiplet, unit: Option<String>) -> Self {
        let rows = m
            .levels
            .iter()
            .map(|(&j, &(energy, uncertainty))| LevelRow { label: m.label.clone(), l: m.l, s: m.s, j, energy, uncertainty })
            .collect();
        LevelsFile { unit, rows }
    }

    /// Rows grouped by `(label, L, S)` in order of first appearance.
    pub fn multiplets(&self) -> Result<Vec<Multiplet>, MultipletGroupError> {
        let mut order: Vec<(String, HalfInt, HalfInt)> = Vec::new();
        let mut groups: BTreeMap<(String, HalfInt, HalfInt), BTreeMap<HalfInt, (f64, f64)>> = BTreeMap::new();
        for r in &self.rows {
            let key = (r.label.clone(), r.l, r.s);
            let group = groups.entry(key.clone()).or_insert_with(|| {
                order.push(key.clone());
                BTreeMap::new()
            });
            if group.insert(r.j, (r.energy, r.uncertainty)).is_some() {
                return Err(MultipletGroupError::DuplicateLevel { label: r.label.clone(), j: r.j });
            }
        }
        order
            .into_iter()
            .map(|key| {
                let levels = groups.remove(&key).expect("key recorded on insert");
                Multiplet::new(key.0, key.1, key.2, levels).map_err(MultipletGroupError::Invalid)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MultipletGroupError {
    #[error("label {label}: J = {j} appears twice")]
    DuplicateLevel { label: String, j: HalfInt },
    #[error(transparent)]
    Invalid(SpectraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            _ => Err(format!("unknown output format {s:?}, expected json, csv or text")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub step_h: f64,
    pub det_tol: f64,
    pub lande_threshold: f64,
    pub confidence: f64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { step_h: 1e-3, det_tol: 1e-12, lande_threshold: 0.05, confidence: 0.95, output_format: OutputFormat::Json }
    }
}

impl RunConfig {
    /// `key = value` lines; blank lines and `#` comments are skipped and
    /// unset keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = (i + 1) as u64;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ParseError::Row { line, message: format!("expected key = value, found {content:?}") });
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = |message: String| ParseError::Field { line, column: key.to_string(), message };
            let number = || value.parse::<f64>().map_err(|e| bad(format!("cannot parse {value:?}: {e}")));
            match key {
                "step_h" => cfg.step_h = number()?,
                "det_tol" => cfg.det_tol = number()?,
                "lande_threshold" => cfg.lande_threshold = number()?,
                "confidence" => cfg.confidence = number()?,
                "output_format" => cfg.output_format = value.parse().map_err(bad)?,
                _ => return Err(ParseError::Row { line, message: format!("unknown key {key:?}") }),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ParseError> {
        let check = |ok: bool, key: &str, msg: &str| {
            if ok {
                Ok(())
            } else {
                Err(ParseError::Field { line: 0, column: key.into(), message: msg.into() })
            }
        };
        check(self.step_h > 0.0 && self.step_h.is_finite(), "step_h", "must be positive")?;
        check(self.det_tol > 0.0 && self.det_tol.is_finite(), "det_tol", "must be positive")?;
        check(self.lande_threshold > 0.0 && self.lande_threshold.is_finite(), "lande_threshold", "must be positive")?;
        check(self.confidence > 0.0 && self.confidence < 1.0, "confidence", "must lie strictly between 0 and 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# unit: cm-1\nlabel,L,S,J,energy,uncertainty\nO I 3P,1,1,2,0,0.01\nO I 3P,1,1,1,158.265,0.01\nO I 3P,1,1,0,226.977,0.01\nNa 2P,1,1/2,3/2,16973.366,0.001\nNa 2P,1,1/2,1/2,16956.17,0.001\n";

    #[test]
    fn parse_and_group() {
        let file = LevelsFile::parse(SAMPLE).unwrap();
        assert_eq!(file.unit.as_deref(), Some("cm-1"));
        assert_eq!(file.rows.len(), 5);
        assert_eq!(file.rows[3].j, HalfInt::from_twice(3));
        let groups = file.multiplets().unwrap();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].label, "O I 3P");
        assert_eq!(groups[1].levels.len(), 2);
    }

    #[test]
    fn round_trip_is_exact() {
        let mut file = LevelsFile::parse(SAMPLE).unwrap();
        file.rows[0].energy = 0.1 + 0.2;
        file.rows[1].energy = std::f64::consts::PI * 1e-7;
        file.rows[2].energy = -1.0 / 3.0 * 1e300;
        let again = LevelsFile::parse(&file.to_csv()).unwrap();
        assert_eq!(again, file);
    }

    #[test]
    fn errors_name_line_and_column() {
        let bad = SAMPLE.replace("O I 3P,1,1,0,", "O I 3P,1,1,2.7,");
        match LevelsFile::parse(&bad) {
            Err(ParseError::Field { line, column, .. }) => {
                assert_eq!(line, 5);
                assert_eq!(column, "J");
            }
            other => panic!("{other:?}"),
        }
        let header = SAMPLE.replace("energy,uncertainty", "E,uncertainty");
        assert!(matches!(LevelsFile::parse(&header), Err(ParseError::Row { .. })));
        let negative = SAMPLE.replace("158.265,0.01", "158.265,-1");
        assert!(matches!(LevelsFile::parse(&negative), Err(ParseError::Field { .. })));
        let dup = format!("{SAMPLE}O I 3P,1,1,0,1.0,0.01\n");
        assert!(matches!(LevelsFile::parse(&dup).unwrap().multiplets(), Err(MultipletGroupError::DuplicateLevel { .. })));
    }

    #[test]
    fn run_config() {
        let cfg = RunConfig::parse("# defaults otherwise\nstep_h = 0.01\nconfidence=0.9\noutput_format = csv\n").unwrap();
        assert_eq!(cfg.step_h, 0.01);
        assert_eq!(cfg.confidence, 0.9);
        assert_eq!(cfg.output_format, OutputFormat::Csv);
        assert_eq!(cfg.det_tol, 1e-12);
        assert!(RunConfig::parse("confidence = 1").is_err());
        assert!(RunConfig::parse("step_h = -1").is_err());
        assert!(RunConfig::parse("colour = red").is_err());
        assert!(RunConfig::parse("step_h").is_err());
    }
}
