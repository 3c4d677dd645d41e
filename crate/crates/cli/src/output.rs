//! Table emission. Every tabular command shares one fixed CSV schema
//! (absent values become empty fields, never 0) and mirrors the same field
//! names in JSON, one object per line. CSV reals carry 12 significant
//! digits; JSON reals keep full round-trip precision.

use std::io::{self, Write};

use serde::Serialize;

pub const CSV_HEADER: &str = "x,count,theta,psi,pp_weight,empirical_c,singular_c,ratio";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Integer counts stay integers; the averaged commands put a real mean in
/// the same column.
#[derive(Clone, Copy, Debug)]
pub enum CountField {
    Exact(u64),
    Mean(f64),
}

/// An exact rational prepared for both renderings.
#[derive(Clone, Debug)]
pub struct WeightField {
    /// `numerator/denominator`, always with the slash.
    pub exact: String,
    pub decimal: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Row {
    pub x: u64,
    pub offsets: Option<String>,
    pub admissible: Option<bool>,
    pub count: Option<CountField>,
    pub theta: Option<f64>,
    pub psi: Option<f64>,
    pub pp_weight: Option<WeightField>,
    pub empirical: Option<f64>,
    pub singular: Option<f64>,
    pub ratio: Option<f64>,
}

impl Row {
    pub fn at(x: u64) -> Self {
        Self {
            x,
            ..Self::default()
        }
    }
}

/// 12 significant digits, positional where readable.
pub fn fmt_real(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, v)
    } else {
        format!("{:.11e}", v)
    }
}

#[derive(Serialize)]
struct JsonRow<'a> {
    x: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    offsets: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    admissible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<serde_json::Number>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pp_weight: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    empirical_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    singular_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
}

pub fn emit<W: Write>(out: &mut W, format: Format, rows: &[Row]) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for row in rows {
                let opt = |v: &Option<f64>| v.map(fmt_real).unwrap_or_default();
                let count = match row.count {
                    Some(CountField::Exact(c)) => c.to_string(),
                    Some(CountField::Mean(m)) => fmt_real(m),
                    None => String::new(),
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    row.x,
                    count,
                    opt(&row.theta),
                    opt(&row.psi),
                    row.pp_weight
                        .as_ref()
                        .map(|w| fmt_real(w.decimal))
                        .unwrap_or_default(),
                    opt(&row.empirical),
                    opt(&row.singular),
                    opt(&row.ratio),
                )?;
            }
        }
        Format::Json => {
            for row in rows {
                let count = match row.count {
                    Some(CountField::Exact(c)) => Some(serde_json::Number::from(c)),
                    Some(CountField::Mean(m)) => serde_json::Number::from_f64(m),
                    None => None,
                };
                let json = JsonRow {
                    x: row.x,
                    offsets: row.offsets.as_deref(),
                    admissible: row.admissible,
                    count,
                    theta: row.theta,
                    psi: row.psi,
                    pp_weight: row.pp_weight.as_ref().map(|w| w.exact.as_str()),
                    empirical_c: row.empirical,
                    singular_c: row.singular,
                    ratio: row.ratio,
                };
                writeln!(out, "{}", serde_json::to_string(&json)?)?;
            }
        }
    }
    Ok(())
}
