//! JSON readers and writers for the on-disk input formats.
//!
//! Point sets: {"points": [[re, im], ...]}
//! Polynomials: {"coeffs": [[re, im], ...]}
//! Series: {"coeffs": [[re, im], ...], "radius": r, "tail_bound": t?}
//!
//! An analytic-function file is a series when a "radius" field is present
//! and a polynomial otherwise.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};
use crate::polyops::Polynomial;
use crate::taylor::TaylorSeries;
use crate::valency::AnalyticFn;

#[derive(Serialize, Deserialize)]
struct PointSetFile {
    points: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialFile {
    coeffs: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct SeriesFile {
    coeffs: Vec<[f64; 2]>,
    radius: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_bound: Option<f64>,
}

#[derive(Deserialize)]
struct FnProbe {
    radius: Option<f64>,
}

fn read_text(path: &Path) -> Result<String> {
    if !path.exists() {
        return Err(Error::InputNotFound {
            path: path.display().to_string(),
        });
    }
    Ok(std::fs::read_to_string(path)?)
}

fn pairs_to_complex(pairs: &[[f64; 2]]) -> Result<Vec<Complex64>> {
    pairs
        .iter()
        .map(|&[re, im]| {
            if re.is_finite() && im.is_finite() {
                Ok(Complex64::new(re, im))
            } else {
                Err(Error::NonFinite)
            }
        })
        .collect()
}

pub fn read_point_set(path: &Path) -> Result<PointSet> {
    let file: PointSetFile = serde_json::from_str(&read_text(path)?)?;
    let points = file
        .points
        .iter()
        .map(|&[re, im]| Point::new(re, im))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointSet::new(points))
}

pub fn write_point_set(path: &Path, z: &PointSet) -> Result<()> {
    let file = PointSetFile {
        points: z.points.iter().map(|p| [p.re, p.im]).collect(),
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

pub fn read_polynomial(path: &Path) -> Result<Polynomial> {
    let file: PolynomialFile = serde_json::from_str(&read_text(path)?)?;
    Ok(Polynomial::new(pairs_to_complex(&file.coeffs)?))
}

pub fn write_polynomial(path: &Path, p: &Polynomial) -> Result<()> {
    let file = PolynomialFile {
        coeffs: p.coeffs().iter().map(|c| [c.re, c.im]).collect(),
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

pub fn read_series(path: &Path) -> Result<TaylorSeries> {
    let file: SeriesFile = serde_json::from_str(&read_text(path)?)?;
    TaylorSeries::new(pairs_to_complex(&file.coeffs)?, file.radius, file.tail_bound)
}

pub fn write_series(path: &Path, s: &TaylorSeries) -> Result<()> {
    let file = SeriesFile {
        coeffs: s.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        radius: s.working_radius(),
        tail_bound: s.tail_bound(),
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Read either representation, keyed on the presence of "radius".
pub fn read_analytic_fn(path: &Path) -> Result<AnalyticFn> {
    let text = read_text(path)?;
    let probe: FnProbe = serde_json::from_str(&text)?;
    if probe.radius.is_some() {
        let file: SeriesFile = serde_json::from_str(&text)?;
        Ok(AnalyticFn::Series(TaylorSeries::new(
            pairs_to_complex(&file.coeffs)?,
            file.radius,
            file.tail_bound,
        )?))
    } else {
        let file: PolynomialFile = serde_json::from_str(&text)?;
        Ok(AnalyticFn::Poly(Polynomial::new(pairs_to_complex(
            &file.coeffs,
        )?)))
    }
}

/// Zeros file: {"zeros": [[re, im], ...]}.
#[derive(Serialize, Deserialize)]
struct ZerosFile {
    zeros: Vec<[f64; 2]>,
}

pub fn read_zeros(path: &Path) -> Result<Vec<Complex64>> {
    let file: ZerosFile = serde_json::from_str(&read_text(path)?)?;
    pairs_to_complex(&file.zeros)
}
