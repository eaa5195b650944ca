use std::fmt::Write as _;
use std::str::FromStr;

use super::IdentityCheck;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

/// Serialize a report. JSON carries polynomials in their structured form,
/// CSV and text in the `2*y^3*t - q^-2` form.
pub fn render(checks: &[IdentityCheck], format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(checks).map_err(|e| Error::Parse(e.to_string())),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Parse(e.to_string());
            w.write_record(["id", "n", "lhs", "rhs", "verdict", "note", "millis"])
                .map_err(io)?;
            for c in checks {
                w.write_record([
                    c.id.clone(),
                    c.n.to_string(),
                    c.lhs.to_string(),
                    c.rhs.to_string(),
                    c.verdict.name().to_string(),
                    c.note.clone(),
                    c.millis.to_string(),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
        }
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                let _ = writeln!(s, "{:<30} n={:<2} {:<16} {}", c.id, c.n, c.verdict.name(), c.lhs);
                if !c.verdict.is_ok() || c.lhs != c.rhs {
                    let _ = writeln!(s, "{:<36} rhs {}", "", c.rhs);
                }
                if !c.note.is_empty() {
                    let _ = writeln!(s, "{:<36} note: {}", "", c.note);
                }
            }
            Ok(s)
        }
    }
}
