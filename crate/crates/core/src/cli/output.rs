//! Output envelope and the three renderings (json, csv, text).

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::algebra::{format_rational, FallingPoly, MonomialPoly, Series};
use crate::error::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_SELFTEST: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Series,
    Polynomial,
    Table,
    GraphList,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Series => "series",
            Kind::Polynomial => "polynomial",
            Kind::Table => "table",
            Kind::GraphList => "graph_list",
        }
    }
}

/// One command result. `payload` is what the json envelope carries; the
/// csv and text renderings are prepared by the command alongside it.
#[derive(Clone, Debug)]
pub struct Output {
    pub kind: Kind,
    pub params: Value,
    pub payload: Value,
    pub cache_hit: bool,
    pub text: String,
    pub csv: String,
}

impl Output {
    pub fn series(params: Value, series: &Series) -> Output {
        let start = match series.coeff(0) {
            Some(c) if !num_traits::Zero::is_zero(c) => 0,
            _ => 1,
        };
        let last = series.order().saturating_sub(1);
        let coeffs: Vec<String> = (start..=last)
            .filter_map(|k| series.coeff(k))
            .map(format_rational)
            .collect();
        let csv = std::iter::once("power,value".to_string())
            .chain(coeffs.iter().enumerate().map(|(i, c)| format!("{},{c}", start + i)))
            .collect::<Vec<_>>()
            .join("\n");
        Output {
            kind: Kind::Series,
            params,
            payload: json!({ "var": "x", "first_power": start, "last_power": last, "coeffs": coeffs }),
            cache_hit: false,
            text: series.to_string(),
            csv,
        }
    }

    pub fn falling(params: Value, p: &FallingPoly) -> Output {
        Self::polynomial(params, "falling", p.coeff_strings(), p.to_string())
    }

    pub fn monomial(params: Value, p: &MonomialPoly) -> Output {
        Self::polynomial(params, "monomial", p.coeff_strings(), p.to_string())
    }

    fn polynomial(params: Value, basis: &str, coeffs: Vec<String>, text: String) -> Output {
        let csv = std::iter::once("degree,value".to_string())
            .chain(coeffs.iter().enumerate().map(|(k, c)| format!("{k},{c}")))
            .collect::<Vec<_>>()
            .join("\n");
        Output {
            kind: Kind::Polynomial,
            params,
            payload: json!({ "var": "N", "basis": basis, "coeffs": coeffs, "text": text }),
            cache_hit: false,
            text,
            csv,
        }
    }

    /// A list of flat rows. `columns` fixes the csv column order.
    pub fn table(kind: Kind, params: Value, payload: Value, columns: &[&str], rows: &[Value]) -> Output {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        let mut csv = vec![columns.join(",")];
        let mut text = Vec::new();
        for row in rows {
            let cells: Vec<String> = columns.iter().map(|c| cell(&row[*c])).collect();
            csv.push(
                cells
                    .iter()
                    .map(|c| if c.contains(',') { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
                    .collect::<Vec<_>>()
                    .join(","),
            );
            text.push(
                columns
                    .iter()
                    .zip(&cells)
                    .map(|(c, v)| format!("{c}={v}"))
                    .collect::<Vec<_>>()
                    .join("  "),
            );
        }
        Output {
            kind,
            params,
            payload,
            cache_hit: false,
            text: text.join("\n"),
            csv: csv.join("\n"),
        }
    }

    pub fn envelope(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "params": self.params,
            "payload": self.payload,
            "version": VERSION,
            "cache_hit": self.cache_hit,
        })
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = match format {
            Format::Json => serde_json::to_string(&self.envelope()).expect("envelope serializes"),
            Format::Csv => self.csv.clone(),
            Format::Text => self.text.clone(),
        };
        s.push('\n');
        s
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Guard(_) => EXIT_GUARD,
        Error::InvalidArgument(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Guard(_) => "guard",
        Error::InvalidArgument(_) => "usage",
        Error::Parse(_) => "parse",
        Error::InexactDivision(_) => "inexact_division",
        Error::Inconsistent(_) => "inconsistent",
        _ => "internal",
    }
}

pub fn error_object(kind: &str, message: &str, exit: i32) -> String {
    let v = json!({ "error": { "kind": kind, "message": message, "exit_code": exit }, "version": VERSION });
    format!("{v}\n")
}
