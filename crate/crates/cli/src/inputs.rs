//! Loading forms, surfaces and maps named on the command line.

use std::path::Path;

use dq_core::atlas::PolygonGluing;
use dq_core::corpus;
use dq_core::matrix::Matrix;
use dq_core::poisson::SymplecticForm;
use dq_core::text::{parse_expr, parse_poly, parse_scalar};
use dq_core::transport::{random_symplecto, SymplectoMap};
use dq_core::{HbarSeries, SparsePoly};
use serde_json::Value;

use crate::CliError;

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {path}: {e}")))
}

/// `omega0`, `omega0xN` (block-diagonal on N copies) or a JSON file
/// `{"rows": [["0", "-1"], ["1", "0"]]}`.
pub fn form(arg: &str) -> Result<SymplecticForm, CliError> {
    if arg == "omega0" {
        return Ok(SymplecticForm::omega0());
    }
    if let Some(n) = arg.strip_prefix("omega0x") {
        let n: usize =
            n.parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
                CliError::Malformed(format!("bad copy count in form name {arg:?}"))
            })?;
        return Ok(SymplecticForm::omega0_product(n));
    }
    let v: Value = serde_json::from_str(&read(arg)?)
        .map_err(|e| CliError::Malformed(format!("{arg}: bad JSON: {e}")))?;
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Malformed(format!("{arg}: missing \"rows\" array")))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| CliError::Malformed(format!("{arg}: each row must be an array")))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_scalar(s).map_err(CliError::from),
                    other => Err(CliError::Malformed(format!(
                        "{arg}: entry {other} must be an exact string such as \"-1/2\""
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SymplecticForm::new(Matrix::from_rows(rows)?)?)
}

/// A JSON polygon file, or one of `square`, `octagon`, `l-shape`,
/// `double-pentagon`.
pub fn surface(arg: &str) -> Result<PolygonGluing, CliError> {
    if Path::new(arg).is_file() {
        return Ok(PolygonGluing::from_json(&read(arg)?)?);
    }
    PolygonGluing::builtin(arg).ok_or_else(|| {
        CliError::Malformed(format!("{arg}: no such surface file or built-in surface"))
    })
}

/// A JSON map file, `identity`, `shear`, or `random:SEED`.
pub fn map(arg: &str) -> Result<SymplectoMap, CliError> {
    if Path::new(arg).is_file() {
        return Ok(SymplectoMap::from_json(&read(arg)?)?);
    }
    match arg {
        "identity" => Ok(SymplectoMap::identity(2)),
        "shear" => Ok(SymplectoMap::standard_shear()),
        _ => {
            if let Some(seed) = arg.strip_prefix("random:") {
                let seed: u64 = seed
                    .parse()
                    .map_err(|_| CliError::Malformed(format!("bad seed in {arg:?}")))?;
                return Ok(seeded_map(seed)?);
            }
            Err(CliError::Malformed(format!(
                "{arg}: no such map file or built-in map"
            )))
        }
    }
}

/// The seeded map family shipped in `data/maps`: a quadratic fiber shear,
/// then `SL(2)` and a translation.
pub fn seeded_map(seed: u64) -> dq_core::Result<SymplectoMap> {
    random_symplecto(&mut corpus::rng(seed), 1, 2)
}

pub fn series(src: &str, arity: usize, order: usize) -> Result<HbarSeries, CliError> {
    Ok(parse_expr(src, arity, order)?.into_series(order))
}

pub fn poly(src: &str, arity: usize) -> Result<SparsePoly, CliError> {
    Ok(parse_poly(src, arity)?)
}
