//! Reference tables shipped with the crate.

use std::sync::OnceLock;

use serde_json::Value;

use crate::algebra::{parse_rational, MonomialPoly, Series};
use crate::error::{Error, Result};

const GENUS0: &str = include_str!("../../data/golden/genus0.json");
const GENUS1: &str = include_str!("../../data/golden/genus1.json");
const GENUS2: &str = include_str!("../../data/golden/genus2.json");
const MISC: &str = include_str!("../../data/golden/misc.json");

fn parsed(cell: &'static OnceLock<Value>, text: &str) -> &'static Value {
    cell.get_or_init(|| serde_json::from_str(text).expect("shipped golden file is valid JSON"))
}

pub fn misc() -> &'static Value {
    static CELL: OnceLock<Value> = OnceLock::new();
    parsed(&CELL, MISC)
}

/// Rows `(m, series)` of the genus `g` table, `g <= 2`.
pub fn genus_table(g: usize) -> Result<Vec<(usize, Series)>> {
    static CELLS: [OnceLock<Value>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let text = match g {
        0 => GENUS0,
        1 => GENUS1,
        2 => GENUS2,
        _ => return Err(Error::InvalidArgument(format!("no shipped table for genus {g}"))),
    };
    let doc = parsed(&CELLS[g], text);
    doc["rows"]
        .as_array()
        .ok_or_else(|| Error::Parse("table without rows".into()))?
        .iter()
        .map(|row| {
            let m = row["m"].as_u64().ok_or_else(|| Error::Parse("row without m".into()))?;
            Ok((m as usize, Series::from_json(row)?))
        })
        .collect()
}

pub fn genus_row(g: usize, m: usize) -> Result<Series> {
    genus_table(g)?
        .into_iter()
        .find(|(mm, _)| *mm == m)
        .map(|(_, s)| s)
        .ok_or_else(|| Error::InvalidArgument(format!("no shipped row for genus {g}, m = {m}")))
}

pub fn named_series(name: &str) -> Result<Series> {
    let entry = misc()["series"]
        .as_array()
        .and_then(|list| list.iter().find(|s| s["name"] == name))
        .ok_or_else(|| Error::InvalidArgument(format!("no shipped series named {name}")))?;
    Series::from_json(&entry["series"])
}

fn strings(v: &Value) -> Result<Vec<crate::Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected a coefficient list".into()))?
        .iter()
        .map(|c| parse_rational(c.as_str().unwrap_or_default()))
        .collect()
}

/// Published `P^(m)_{2mr}` in the monomial basis.
pub fn moment_polynomial(m: usize, r: usize) -> Result<MonomialPoly> {
    let entry = misc()["moment_polynomials"]
        .as_array()
        .and_then(|l| l.iter().find(|e| e["m"] == m && e["r"] == r))
        .ok_or_else(|| Error::InvalidArgument(format!("no shipped polynomial for m = {m}, r = {r}")))?;
    Ok(MonomialPoly::new(strings(&entry["monomial"])?))
}

pub fn count(path: &[&str]) -> Option<&'static Value> {
    path.iter().try_fold(&misc()["counts"], |v, key| v.get(*key))
}

pub fn min_degree3_count(g: usize) -> Option<u64> {
    count(&["min_degree3"])?
        .as_array()?
        .iter()
        .find(|e| e["g"] == g)?["count"]
        .as_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_tables_load() {
        assert_eq!(genus_table(0).unwrap().len(), 11);
        assert_eq!(genus_row(2, 2).unwrap().coeff(1).unwrap().to_string(), "35/8");
        assert_eq!(named_series("T").unwrap().order(), 5);
        assert_eq!(moment_polynomial(1, 2).unwrap().to_string(), "2N^3 + N");
        assert_eq!(min_degree3_count(3), Some(15));
    }
}
