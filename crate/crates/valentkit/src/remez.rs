//! Remez-type inequalities for complex polynomials and for analytic
//! functions with finitely many zeros: the fixed-alpha bound
//! (6 e^{1/alpha} / c_{d,alpha}(Z))^d, its optimized form K_d(Z), the
//! Hausdorff-content variant, the distortion factor sigma_p, and the
//! combined analytic harness.

use serde::{Deserialize, Serialize};

use crate::cartan::{cartan_measure, partition_radius_vectors, SolveMode};
use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::polyops::{max_modulus_circle, max_on_set, Polynomial};
use crate::taylor::TaylorSeries;
use crate::valency::{count_zeros, AnalyticFn, ZeroCount};

/// Alpha search window for the optimized constant. Outside it the
/// exponential factors saturate for the small degrees this crate targets.
pub const ALPHA_MIN: f64 = 1.0 / 64.0;
pub const ALPHA_MAX: f64 = 64.0;

/// Relative slack accepted when flagging an inequality as holding.
pub const HOLDS_TOL: f64 = 1e-9;

/// Partition enumeration is cached across alpha samples up to this size;
/// larger sets fall back to one branch-and-bound solve per alpha.
const CACHE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemezReport {
    /// Certified maximum of |P| (or |f|) over the target disk.
    pub lhs: f64,
    /// constant_used times the maximum over the sample set.
    pub rhs: f64,
    pub constant_used: f64,
    pub alpha: f64,
    pub holds: bool,
    /// rhs / lhs; how much room the inequality has.
    pub margin: f64,
}

impl RemezReport {
    fn assemble(lhs: f64, rhs: f64, constant_used: f64, alpha: f64) -> RemezReport {
        RemezReport {
            lhs,
            rhs,
            constant_used,
            alpha,
            holds: lhs <= rhs * (1.0 + HOLDS_TOL),
            margin: if lhs > 0.0 { rhs / lhs } else { f64::INFINITY },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KdResult {
    pub value: f64,
    /// The alpha at which the minimum was found.
    pub alpha_star: f64,
    /// Every (alpha, bound) pair evaluated on the search grid.
    pub samples: Vec<(f64, f64)>,
}

fn bound_from_cartan(c: f64, d: usize, alpha: f64) -> f64 {
    (6.0 * (1.0 / alpha).exp() / c).powi(d as i32)
}

/// (6 e^{1/alpha} / c_{d,alpha}(Z))^d.
pub fn fixed_alpha_bound(z: &PointSet, d: usize, alpha: f64) -> Result<f64> {
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if z.dedup().len() <= d {
        return Err(Error::InfiniteBound { d });
    }
    let c = cartan_measure(z, d, alpha, SolveMode::Bnb)?.value;
    Ok(bound_from_cartan(c, d, alpha))
}

/// Minimum of the fixed-alpha bound over alpha in [ALPHA_MIN, ALPHA_MAX]:
/// a log-spaced grid scan refined by golden-section search around the grid
/// minimum.
pub fn k_d(z: &PointSet, d: usize) -> Result<KdResult> {
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let points = z.dedup();
    if points.len() <= d {
        return Err(Error::InfiniteBound { d });
    }
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "must be a positive integer".into(),
        });
    }

    // One partition enumeration serves every alpha when the set is small;
    // otherwise each alpha gets its own branch-and-bound solve.
    let vectors = if points.len() <= CACHE_LIMIT {
        Some(partition_radius_vectors(&points, d))
    } else {
        None
    };
    let eval = |alpha: f64| -> f64 {
        let c = match &vectors {
            Some(vecs) => vecs
                .iter()
                .map(|radii| {
                    let sum: f64 = radii.iter().map(|r| r.powf(alpha)).sum();
                    sum.powf(1.0 / alpha)
                })
                .fold(f64::INFINITY, f64::min),
            None => {
                cartan_measure(z, d, alpha, SolveMode::Bnb)
                    .expect("validated above")
                    .value
            }
        };
        bound_from_cartan(c, d, alpha)
    };

    let grid_n = 49usize;
    let (lo, hi) = (ALPHA_MIN.ln(), ALPHA_MAX.ln());
    let mut samples = Vec::with_capacity(grid_n);
    let mut best_i = 0usize;
    for i in 0..grid_n {
        let alpha = (lo + (hi - lo) * i as f64 / (grid_n - 1) as f64).exp();
        let b = eval(alpha);
        if b < samples.get(best_i).map_or(f64::INFINITY, |&(_, v)| v) {
            best_i = i;
        }
        samples.push((alpha, b));
    }

    // Golden-section refinement in log-alpha between the grid neighbors.
    let mut a = if best_i == 0 {
        lo
    } else {
        samples[best_i - 1].0.ln()
    };
    let mut b = if best_i + 1 == grid_n {
        hi
    } else {
        samples[best_i + 1].0.ln()
    };
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = eval(x1.exp());
    let mut f2 = eval(x2.exp());
    for _ in 0..80 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = eval(x1.exp());
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = eval(x2.exp());
        }
    }
    let (mut alpha_star, mut value) = samples[best_i];
    for (x, fx) in [(x1, f1), (x2, f2)] {
        if fx < value {
            value = fx;
            alpha_star = x.exp();
        }
    }
    Ok(KdResult {
        value,
        alpha_star,
        samples,
    })
}

/// (6e / H_alpha)^{d/alpha} for a caller-supplied Hausdorff content value.
pub fn k_d_hausdorff(h_alpha: f64, alpha: f64, d: usize) -> Result<f64> {
    if !(h_alpha > 0.0) || !h_alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "H_alpha",
            reason: format!("must be positive and finite, got {h_alpha}"),
        });
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("must be positive and finite, got {alpha}"),
        });
    }
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "must be a positive integer".into(),
        });
    }
    Ok((6.0 * std::f64::consts::E / h_alpha).powf(d as f64 / alpha))
}

/// Check max over the unit disk of |P| against the fixed-alpha bound times
/// the max of |P| over Z.
pub fn remez_check_polynomial(p: &Polynomial, z: &PointSet, alpha: f64) -> Result<RemezReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if z.max_abs() > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter {
            name: "Z",
            reason: format!(
                "points must lie in the closed unit disk; max modulus {}",
                z.max_abs()
            ),
        });
    }
    let max_z = max_on_set(p, z)?;
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        // Constants: both sides are |c|.
        let c = p.coeffs()[0].norm();
        return Ok(RemezReport::assemble(c, max_z, 1.0, alpha));
    }
    if z.dedup().len() <= d {
        return Err(Error::InfiniteBound { d });
    }
    let constant = fixed_alpha_bound(z, d, alpha)?;
    let (lhs, _certified) = max_modulus_circle(p, 1.0, 1e-9)?;
    Ok(RemezReport::assemble(lhs, constant * max_z, constant, alpha))
}

/// The distortion factor ((1+R)/(1-R) * (1+rho)/(1-rho))^{2p}.
pub fn sigma_p(r_outer: f64, rho: f64, p: usize) -> Result<f64> {
    for (name, v) in [("R", r_outer), ("rho", rho)] {
        if !(0.0..1.0).contains(&v) {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("must lie in [0, 1), got {v}"),
            });
        }
    }
    if p == 0 {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: "need p >= 1".into(),
        });
    }
    let base = (1.0 + r_outer) / (1.0 - r_outer) * (1.0 + rho) / (1.0 - rho);
    Ok(base.powi(2 * p as i32))
}

/// Full audit trail for the analytic harness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyticRemezReport {
    pub report: RemezReport,
    pub s: usize,
    pub p: usize,
    pub sigma: f64,
    pub k_s: f64,
    pub rho: f64,
    pub r_outer: f64,
    pub max_on_set: f64,
    pub zero_count: ZeroCount,
}

/// max_{|z| <= R} |f| <= sigma_p(R, rho) K_s(Z) max_Z |f| for f with exactly
/// s zeros in the unit disk, assuming f meets the claimed valency p.
pub fn remez_analytic_check(
    f: &AnalyticFn,
    s: usize,
    p: usize,
    z: &PointSet,
    r_outer: f64,
) -> Result<AnalyticRemezReport> {
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let points = z.dedup();
    if points.len() <= s {
        return Err(Error::TooFewPoints {
            needed: s + 1,
            got: points.len(),
        });
    }
    let rho = z.max_abs();
    if rho >= 1.0 {
        return Err(Error::InvalidParameter {
            name: "Z",
            reason: format!("points must lie strictly inside the unit disk; max modulus {rho}"),
        });
    }
    if !(0.0..1.0).contains(&r_outer) {
        return Err(Error::InvalidParameter {
            name: "R",
            reason: format!("must lie in [0, 1), got {r_outer}"),
        });
    }

    // Certify the claimed zero count on a circle as close to the unit
    // boundary as the representation allows.
    let r_cert = f.max_certifiable_radius().min(0.995);
    let zc = count_zeros(f, r_cert)?;
    if !zc.certified || zc.count != s {
        return Err(Error::ZeroCountMismatch {
            claimed: s,
            counted: zc.count,
        });
    }

    let sigma = sigma_p(r_outer, rho, p)?;
    let (k_s, alpha) = if s == 0 {
        (1.0, 1.0)
    } else {
        let kd = k_d(z, s)?;
        (kd.value, kd.alpha_star)
    };

    // Certified upper bound on max |f| over the circle R.
    let lhs = match f {
        AnalyticFn::Poly(poly) => max_modulus_circle(poly, r_outer, 1e-9)?.0,
        AnalyticFn::Series(series) => {
            let truncated = Polynomial::new(series.coeffs().to_vec());
            max_modulus_circle(&truncated, r_outer, 1e-9)?.0 + series.tail_bound().unwrap_or(0.0)
        }
    };
    let max_set = points
        .iter()
        .map(|pt| f.eval(pt.to_complex()).norm())
        .fold(0.0f64, f64::max);

    let constant = sigma * k_s;
    Ok(AnalyticRemezReport {
        report: RemezReport::assemble(lhs, constant * max_set, constant, alpha),
        s,
        p,
        sigma,
        k_s,
        rho,
        r_outer,
        max_on_set: max_set,
        zero_count: zc,
    })
}

/// Convenience used by tests and the series harness: wrap a polynomial's
/// coefficients as a tail-free series on a given radius.
pub fn polynomial_as_series(p: &Polynomial, radius: f64) -> Result<TaylorSeries> {
    TaylorSeries::new(p.coeffs().to_vec(), radius, Some(0.0))
}
