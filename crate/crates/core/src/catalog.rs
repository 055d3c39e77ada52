//! Reference reactions with their expected counts.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::curve::{ml_degree_curve, CurveError, PlaneCurve};
use crate::engine::{ml_degree_faithful, EngineError};
use crate::model::{build_model, EquilibriumConstant, ModelError};
use crate::numeric::Tolerances;
use crate::reaction::{parse_reaction, ParseError};

const FIXTURE: &str = include_str!("../data/catalog.tsv");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("fixture line {line}: {message}")]
    Fixture { line: usize, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Confirmed,
    DiscrepancyDocumented,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::DiscrepancyDocumented => "discrepancy_documented",
        })
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "confirmed" => Ok(Status::Confirmed),
            "discrepancy_documented" => Ok(Status::DiscrepancyDocumented),
            _ => Err(format!("unknown status `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub reaction_text: String,
    pub ke: EquilibriumConstant,
    pub published_value: u64,
    pub status: Status,
    pub note: String,
    pub expected_parameter_count: Option<u64>,
    pub expected_variety_count: Option<u64>,
}

fn opt_count(s: &str) -> Result<Option<u64>, String> {
    if s == "n/a" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| format!("bad count `{s}`"))
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| CatalogError::Fixture { line: line_no, message };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 7 {
            return Err(err(format!("expected 7 columns, found {}", cols.len())));
        }
        let ke = cols[1].parse().map_err(|e: ModelError| err(e.to_string()))?;
        let published_value = cols[2].parse().map_err(|_| err(format!("bad published value `{}`", cols[2])))?;
        let status: Status = cols[3].parse().map_err(err)?;
        if status == Status::DiscrepancyDocumented && cols[4].trim().is_empty() {
            return Err(err("discrepancy rows need a note".to_string()));
        }
        parse_reaction(cols[0])?;
        out.push(CatalogEntry {
            reaction_text: cols[0].to_string(),
            ke,
            published_value,
            status,
            note: cols[4].to_string(),
            expected_parameter_count: opt_count(cols[5]).map_err(err)?,
            expected_variety_count: opt_count(cols[6]).map_err(err)?,
        });
    }
    Ok(out)
}

pub fn load_catalog() -> Vec<CatalogEntry> {
    parse_catalog(FIXTURE).expect("bundled fixture is well formed")
}

/// First entry for the reaction (compared after normalization) and constant.
pub fn lookup(reaction: &str, ke: &EquilibriumConstant) -> Option<CatalogEntry> {
    let want = parse_reaction(reaction).ok()?.to_string();
    load_catalog()
        .into_iter()
        .find(|e| &e.ke == ke && parse_reaction(&e.reaction_text).map(|r| r.to_string()).as_deref() == Ok(want.as_str()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogRow {
    pub reaction: String,
    pub ke: String,
    pub published_value: u64,
    pub status: Status,
    pub expected_parameter: Option<u64>,
    pub expected_variety: Option<u64>,
    pub parameter_space_count: Option<u64>,
    pub fiber_degree: u64,
    pub variety_count_quotient: String,
    /// `None` when the curve oracle does not apply.
    pub curve_count: Option<u64>,
    pub curve_note: String,
    pub matches: bool,
    pub note: String,
}

pub fn evaluate_entry(e: &CatalogEntry, seed: u64, tol: &Tolerances) -> Result<CatalogRow, CatalogError> {
    let r = parse_reaction(&e.reaction_text)?;
    let m = build_model(&r, &e.ke)?;
    let rep = ml_degree_faithful(&m)?;
    let (curve_count, curve_note) = if m.species_count() == 3 {
        match PlaneCurve::from_model(&m, seed).map_err(|e| e.to_string()) {
            Ok((c, _)) => match ml_degree_curve(&c, tol) {
                Ok(v) => (Some(v.ml_degree), String::new()),
                Err(CurveError::Singular { .. }) => (None, "singular curve; formula not applicable".to_string()),
                Err(err) => (None, err.to_string()),
            },
            Err(err) => (None, err),
        }
    } else {
        (None, "not a plane curve".to_string())
    };
    let param_ok = e.expected_parameter_count.is_none() || rep.parameter_space_count == e.expected_parameter_count;
    let variety_ok = match e.expected_variety_count {
        None => true,
        Some(v) => rep.variety_count() == Some(v) && curve_count.is_none_or(|c| c == v),
    };
    Ok(CatalogRow {
        reaction: r.to_string(),
        ke: e.ke.to_string(),
        published_value: e.published_value,
        status: e.status,
        expected_parameter: e.expected_parameter_count,
        expected_variety: e.expected_variety_count,
        parameter_space_count: rep.parameter_space_count,
        fiber_degree: rep.fiber_degree,
        variety_count_quotient: rep.variety_count_quotient,
        curve_count,
        curve_note,
        matches: param_ok && variety_ok,
        note: e.note.clone(),
    })
}

/// Evaluate every entry concurrently; rows keep catalog order.
pub fn run_catalog(seed: u64, tol: &Tolerances) -> Vec<Result<CatalogRow, CatalogError>> {
    let entries = load_catalog();
    std::thread::scope(|s| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| s.spawn(move || evaluate_entry(e, seed, tol)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("catalog worker panicked")).collect()
    })
}

/// A run passes when every confirmed row matches.
pub fn catalog_passes(rows: &[Result<CatalogRow, CatalogError>]) -> bool {
    rows.iter().all(|r| match r {
        Ok(row) => row.status != Status::Confirmed || row.matches,
        Err(_) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_loads() {
        let c = load_catalog();
        assert_eq!(c.len(), 17);
        for e in &c {
            if e.status == Status::Confirmed {
                let exp = [e.expected_parameter_count, e.expected_variety_count];
                assert!(exp.contains(&Some(e.published_value)), "{}", e.reaction_text);
            } else {
                assert!(!e.note.is_empty());
            }
        }
    }

    #[test]
    fn lookups() {
        let e = lookup("A+B<->2C", &EquilibriumConstant::int(4)).unwrap();
        assert_eq!(e.published_value, 1);
        let e = lookup("3A + 3B <-> 3C", &EquilibriumConstant::int(1)).unwrap();
        assert_eq!(e.status, Status::DiscrepancyDocumented);
        assert!(lookup("A <-> B", &EquilibriumConstant::int(9)).is_none());
    }

    #[test]
    fn fixture_errors() {
        assert!(matches!(parse_catalog("A <-> B\tgeneric\t1"), Err(CatalogError::Fixture { line: 1, .. })));
        assert!(parse_catalog("A <-> B\tgeneric\t1\tdiscrepancy_documented\t\t1\t1").is_err());
        assert!(parse_catalog("A <-> B\tgeneric\t1\tconfirmed\t\tn/a\t1").unwrap()[0]
            .expected_parameter_count
            .is_none());
    }

    #[test]
    fn full_run_passes() {
        let rows = run_catalog(7, &Tolerances::default());
        for r in &rows {
            let r = r.as_ref().unwrap();
            assert!(r.matches, "{r:?}");
        }
        assert!(catalog_passes(&rows));
    }
}
