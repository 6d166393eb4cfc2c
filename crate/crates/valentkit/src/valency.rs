//! Argument-principle zero counting, empirical valency probing, and the
//! distortion-theorem checks.
//!
//! Zero counts come from continuous-argument tracking along a circle: the
//! winding number of f equals the number of zeros enclosed. Tracking is
//! adaptive — any step whose argument jump exceeds pi/4 is bisected — and a
//! count is certified only when refinement converged, the winding lands
//! within 0.25 of an integer, and the minimum modulus on the circle clears
//! the evaluation-error and tail budget.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyops::Polynomial;
use crate::taylor::TaylorSeries;

/// Maximum circle samples before refinement gives up (marks uncertified).
const MAX_SAMPLES: usize = 1 << 21;

/// Fraction of a series' working radius usable for counting circles, so the
/// tail bound stays meaningful.
pub const SERIES_RADIUS_FRACTION: f64 = 0.95;

/// An analytic function given either exactly as a polynomial or as a
/// truncated Taylor series with a tail bound on its working radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnalyticFn {
    Poly(Polynomial),
    Series(TaylorSeries),
}

impl AnalyticFn {
    /// Largest circle radius on which the function can be certified.
    pub fn max_certifiable_radius(&self) -> f64 {
        match self {
            AnalyticFn::Poly(_) => f64::INFINITY,
            AnalyticFn::Series(s) => SERIES_RADIUS_FRACTION * s.working_radius(),
        }
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter {
                name: "r",
                reason: format!("circle radius must be positive and finite, got {r}"),
            });
        }
        match self {
            AnalyticFn::Poly(_) => Ok(()),
            AnalyticFn::Series(s) => {
                if s.tail_bound().is_none() {
                    return Err(Error::InvalidParameter {
                        name: "tail_bound",
                        reason: "series form needs a tail bound for certified counting".into(),
                    });
                }
                if r > self.max_certifiable_radius() {
                    return Err(Error::InvalidParameter {
                        name: "r",
                        reason: format!(
                            "radius {r} exceeds {SERIES_RADIUS_FRACTION} x working radius {}",
                            s.working_radius()
                        ),
                    });
                }
                Ok(())
            }
        }
    }

    /// Evaluate at a point. For series, this is the truncated sum.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            AnalyticFn::Poly(p) => p.eval(z),
            AnalyticFn::Series(s) => s.eval_truncated(z),
        }
    }

    /// Upper bound on |true value - eval| anywhere on the circle |z| = r:
    /// floating-point evaluation error plus (for series) the truncation tail.
    pub fn eval_error_on_circle(&self, r: f64) -> f64 {
        match self {
            AnalyticFn::Poly(p) => p.eval_error_bound(r),
            AnalyticFn::Series(s) => {
                let n = s.coeffs().len().max(1);
                let mag: f64 = s
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.norm() * r.powi(k as i32))
                    .sum();
                let float_err = 2.0 * n as f64 * f64::EPSILON * mag;
                // The tail bound is stated on the working radius; a circle at
                // r <= working radius can only shrink it.
                float_err + s.tail_bound().unwrap_or(0.0)
            }
        }
    }

    /// Coefficients up to degree s as a polynomial (the Taylor polynomial).
    pub fn taylor_polynomial(&self, s: usize) -> Polynomial {
        let coeffs = match self {
            AnalyticFn::Poly(p) => p.coeffs(),
            AnalyticFn::Series(t) => t.coeffs(),
        };
        let take = coeffs.len().min(s + 1);
        Polynomial::new(coeffs[..take].to_vec())
    }

    /// f - P, staying in the same representation.
    pub fn sub_poly(&self, p: &Polynomial) -> Result<AnalyticFn> {
        match self {
            AnalyticFn::Poly(q) => Ok(AnalyticFn::Poly(q.sub(p))),
            AnalyticFn::Series(s) => {
                if p.degree().unwrap_or(0) > s.top_index() && !p.is_zero() {
                    return Err(Error::InvalidParameter {
                        name: "P",
                        reason: format!(
                            "degree {} exceeds the series truncation order {}",
                            p.degree().unwrap_or(0),
                            s.top_index()
                        ),
                    });
                }
                let mut coeffs = s.coeffs().to_vec();
                for (k, c) in p.coeffs().iter().enumerate() {
                    if k < coeffs.len() {
                        coeffs[k] -= c;
                    }
                }
                Ok(AnalyticFn::Series(TaylorSeries::new(
                    coeffs,
                    s.working_radius(),
                    s.tail_bound(),
                )?))
            }
        }
    }

    fn is_identically_zero(&self) -> bool {
        match self {
            AnalyticFn::Poly(p) => p.is_zero(),
            AnalyticFn::Series(s) => {
                s.coeffs().iter().all(|c| c.norm() == 0.0) && s.tail_bound() == Some(0.0)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCount {
    pub count: usize,
    pub circle_radius: f64,
    pub min_modulus_on_circle: f64,
    pub certified: bool,
    /// Raw winding (total argument increment / 2 pi) before rounding.
    pub winding: f64,
    /// Circle samples used by the adaptive refinement.
    pub samples: usize,
}

/// Number of zeros of f inside |z| < r, by winding of f along the circle.
pub fn count_zeros(f: &AnalyticFn, r: f64) -> Result<ZeroCount> {
    f.check_radius(r)?;
    if f.is_identically_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let margin = f.eval_error_on_circle(r);

    let at = |theta: f64| -> Complex64 {
        let z = Complex64::from_polar(r, theta);
        f.eval(z)
    };

    // Segment stack over [0, 2 pi]; each segment carries its endpoint values.
    let two_pi = 2.0 * std::f64::consts::PI;
    let initial = 64usize;
    let mut total_arg = 0.0f64;
    let mut min_modulus = f64::INFINITY;
    let mut min_theta = 0.0f64;
    let mut samples = initial + 1;
    let mut refined_ok = true;

    let note = |theta: f64, v: Complex64, min_modulus: &mut f64, min_theta: &mut f64| {
        let m = v.norm();
        if m < *min_modulus {
            *min_modulus = m;
            *min_theta = theta;
        }
    };

    let mut stack: Vec<(f64, Complex64, f64, Complex64)> = Vec::new();
    let mut prev_theta = 0.0;
    let mut prev_val = at(0.0);
    note(0.0, prev_val, &mut min_modulus, &mut min_theta);
    for i in 1..=initial {
        let theta = two_pi * i as f64 / initial as f64;
        let val = at(theta);
        note(theta, val, &mut min_modulus, &mut min_theta);
        stack.push((prev_theta, prev_val, theta, val));
        prev_theta = theta;
        prev_val = val;
    }

    let quarter = std::f64::consts::FRAC_PI_4;
    while let Some((ta, va, tb, vb)) = stack.pop() {
        if va.norm() == 0.0 || vb.norm() == 0.0 {
            return Err(Error::CircleNearZero {
                theta: if va.norm() == 0.0 { ta } else { tb },
                modulus: 0.0,
            });
        }
        let step = (vb / va).arg();
        if step.abs() <= quarter {
            total_arg += step;
            continue;
        }
        if samples >= MAX_SAMPLES {
            total_arg += step;
            refined_ok = false;
            continue;
        }
        let tm = 0.5 * (ta + tb);
        let vm = at(tm);
        note(tm, vm, &mut min_modulus, &mut min_theta);
        samples += 1;
        stack.push((tm, vm, tb, vb));
        stack.push((ta, va, tm, vm));
    }

    if min_modulus <= margin {
        return Err(Error::CircleNearZero {
            theta: min_theta,
            modulus: min_modulus,
        });
    }

    let winding = total_arg / two_pi;
    let rounded = winding.round();
    let certified = refined_ok && (winding - rounded).abs() < 0.25 && rounded >= 0.0;
    Ok(ZeroCount {
        count: rounded.max(0.0) as usize,
        circle_radius: r,
        min_modulus_on_circle: min_modulus,
        certified,
        winding,
        samples,
    })
}

/// One probe of the valency search: the perturbing polynomial and the count
/// it achieved (None when certification failed and the probe was skipped).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub label: String,
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValencyProbe {
    pub s: usize,
    pub r: f64,
    pub trials: usize,
    pub seed: u64,
    pub coeff_bound: f64,
    /// Empirical lower bound p-hat: the largest certified count achieved.
    pub max_count: usize,
    /// The perturbing polynomial attaining max_count.
    pub witness: Polynomial,
    pub witness_label: String,
    pub skipped: usize,
    pub probes_run: usize,
}

/// Magnitudes for the structured c-grid: decade-spaced from 1e-16 up to 1.
fn structured_grid() -> Vec<f64> {
    (0..=16).map(|e| 10f64.powi(e - 16)).collect()
}

/// Empirically probe how many solutions f = P can have for polynomials P of
/// degree at most s, inside |z| < r. Probes combine the Taylor polynomial of
/// f, the Taylor polynomial perturbed by c z^s over a log grid of c, and
/// seeded random coefficient draws. The result is a lower bound on the true
/// valency count, never an upper bound.
pub fn valency_probe(
    f: &AnalyticFn,
    s: usize,
    r: f64,
    trials: usize,
    coeff_bound: f64,
    seed: u64,
) -> Result<ValencyProbe> {
    f.check_radius(r)?;
    if !(coeff_bound > 0.0) || !coeff_bound.is_finite() {
        return Err(Error::InvalidParameter {
            name: "coeff_bound",
            reason: format!("must be positive and finite, got {coeff_bound}"),
        });
    }

    let mut best: Option<(usize, Polynomial, String)> = None;
    let mut skipped = 0usize;
    let mut probes_run = 0usize;

    let run_probe = |p: Polynomial,
                         label: String,
                         best: &mut Option<(usize, Polynomial, String)>,
                         skipped: &mut usize,
                         probes_run: &mut usize| {
        let g = match f.sub_poly(&p) {
            Ok(g) => g,
            Err(_) => {
                *skipped += 1;
                return;
            }
        };
        if g.is_identically_zero() {
            *skipped += 1;
            return;
        }
        *probes_run += 1;
        match count_zeros(&g, r) {
            Ok(zc) if zc.certified => {
                let better = best.as_ref().map_or(true, |(c, _, _)| zc.count > *c);
                if better {
                    *best = Some((zc.count, p, label));
                }
            }
            _ => *skipped += 1,
        }
    };

    // Structured probes first: Taylor polynomial, then the c z^s family.
    let taylor = f.taylor_polynomial(s);
    run_probe(
        taylor.clone(),
        "taylor".into(),
        &mut best,
        &mut skipped,
        &mut probes_run,
    );
    for mag in structured_grid() {
        for sign in [1.0f64, -1.0] {
            let c = Complex64::new(sign * mag, 0.0);
            let p = taylor.add(&Polynomial::monomial(s).scale(c));
            run_probe(
                p,
                format!("taylor+({:e})z^{s}", sign * mag),
                &mut best,
                &mut skipped,
                &mut probes_run,
            );
        }
    }

    // Random probes, seeded per trial so order of execution cannot matter.
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64 + 1);
        let coeffs: Vec<Complex64> = (0..=s)
            .map(|_| {
                let radius = coeff_bound * rng.gen::<f64>().sqrt();
                let angle = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
                Complex64::from_polar(radius, angle)
            })
            .collect();
        run_probe(
            Polynomial::new(coeffs),
            format!("random#{trial}"),
            &mut best,
            &mut skipped,
            &mut probes_run,
        );
    }

    let (max_count, witness, witness_label) = best.unwrap_or((0, Polynomial::zero(), "none".into()));
    Ok(ValencyProbe {
        s,
        r,
        trials,
        seed,
        coeff_bound,
        max_count,
        witness,
        witness_label,
        skipped,
        probes_run,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExaRow {
    pub s: usize,
    pub structured_only: bool,
    pub max_count: usize,
    pub expected_max: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExaReport {
    pub p: usize,
    pub big_n: usize,
    pub radius: f64,
    pub rows: Vec<ExaRow>,
    pub all_pass: bool,
}

/// The f(x) = x^p + x^N family: probing degrees below p stays within p
/// solutions, while the degree-p structured probe forces N of them.
pub fn example_exa_report(p: usize, big_n: usize, trials: usize, seed: u64) -> Result<ExaReport> {
    if p == 0 || p > 5 {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: format!("need 1 <= p <= 5, got {p}"),
        });
    }
    if big_n > 63 {
        return Err(Error::InvalidParameter {
            name: "N",
            reason: format!("need N <= 63, got {big_n}"),
        });
    }
    if big_n < 10 * p + 1 {
        return Err(Error::InvalidParameter {
            name: "N",
            reason: format!("need N >= 10p + 1 = {}, got {big_n}", 10 * p + 1),
        });
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); big_n + 1];
    coeffs[p] = Complex64::new(1.0, 0.0);
    coeffs[big_n] = Complex64::new(1.0, 0.0);
    let f = AnalyticFn::Poly(Polynomial::new(coeffs));
    let radius = 1.0 / 3.0;

    let mut rows = Vec::new();
    for s in 0..p {
        let probe = valency_probe(&f, s, radius, trials, 1.0, seed)?;
        rows.push(ExaRow {
            s,
            structured_only: false,
            max_count: probe.max_count,
            expected_max: p,
            pass: probe.max_count <= p,
        });
    }
    // Degree-p structured probe: the c z^p family drives the count to N.
    let probe = valency_probe(&f, p, radius, 0, 1.0, seed)?;
    rows.push(ExaRow {
        s: p,
        structured_only: true,
        max_count: probe.max_count,
        expected_max: big_n,
        pass: probe.max_count == big_n,
    });

    let all_pass = rows.iter().all(|r| r.pass);
    Ok(ExaReport {
        p,
        big_n,
        radius,
        rows,
        all_pass,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSpec {
    pub angles: usize,
    pub radii: usize,
    pub max_radius: f64,
}

impl GridSpec {
    /// Parse "radial:24x12" (24 angles, 12 radii up to 0.9) or
    /// "radial:24x12@0.8" for a custom outer radius.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter {
            name: "grid",
            reason: format!("expected radial:AxR or radial:AxR@rmax, got `{s}`"),
        };
        let rest = s.strip_prefix("radial:").ok_or_else(bad)?;
        let (dims, rmax) = match rest.split_once('@') {
            Some((d, r)) => (d, r.parse::<f64>().map_err(|_| bad())?),
            None => (rest, 0.9),
        };
        let (a, r) = dims.split_once('x').ok_or_else(bad)?;
        let angles: usize = a.parse().map_err(|_| bad())?;
        let radii: usize = r.parse().map_err(|_| bad())?;
        if angles == 0 || radii == 0 || !(rmax > 0.0 && rmax < 1.0) {
            return Err(bad());
        }
        Ok(GridSpec {
            angles,
            radii,
            max_radius: rmax,
        })
    }

    pub fn points(&self) -> Vec<Complex64> {
        let mut pts = Vec::with_capacity(self.angles * self.radii);
        for i in 1..=self.radii {
            let r = self.max_radius * i as f64 / self.radii as f64;
            for j in 0..self.angles {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / self.angles as f64;
                pts.push(Complex64::from_polar(r, theta));
            }
        }
        pts
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistortionReport {
    pub s: usize,
    pub p: usize,
    pub normalization: (f64, f64),
    pub certification_radius: f64,
    pub grid_points: usize,
    pub holds: bool,
    /// Smallest slack min(|g| - lower, upper - |g|) over the grid.
    pub min_margin: f64,
    pub violation: Option<(f64, f64)>,
}

/// Two-sided distortion bounds for g = f / (A P), where P collects f's
/// zeros in the unit disk and A normalizes g(0) = 1:
/// ((1-|x|)/(1+|x|))^{2p} <= |g(x)| <= ((1+|x|)/(1-|x|))^{2p}.
pub fn distortion_check(
    f: &AnalyticFn,
    zeros: &[Complex64],
    p: usize,
    grid: &GridSpec,
) -> Result<DistortionReport> {
    if p == 0 {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: "need p >= 1".into(),
        });
    }
    let s = zeros.len();
    let max_zero = zeros.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if max_zero >= 1.0 {
        return Err(Error::InvalidParameter {
            name: "zeros",
            reason: format!("all zeros must lie strictly inside the unit disk; got modulus {max_zero}"),
        });
    }

    // Cross-check the claimed zero count on a circle between the outermost
    // zero and the boundary.
    let r_cert = f
        .max_certifiable_radius()
        .min(0.5 * (max_zero + 1.0))
        .min(0.995)
        .max(grid.max_radius);
    let zc = count_zeros(f, r_cert)?;
    if !zc.certified || zc.count != s {
        return Err(Error::ZeroCountMismatch {
            claimed: s,
            counted: zc.count,
        });
    }

    let p_poly = crate::polyops::from_roots(&crate::polyops::RootForm {
        leading: Complex64::new(1.0, 0.0),
        roots: zeros.to_vec(),
    });

    // Normalization A = (f/P)(0), read from the series quotient so zeros of
    // P at the origin cancel correctly.
    let f_series = match f {
        AnalyticFn::Poly(q) => TaylorSeries::new(q.coeffs().to_vec(), 1.0, Some(0.0))?,
        AnalyticFn::Series(t) => t.clone(),
    };
    let quotient = crate::polyops::series_divide(&f_series, &p_poly, s)?;
    let a = quotient.coeffs()[0];
    if a.norm() == 0.0 {
        return Err(Error::Geometry(
            "f/P vanishes at the origin; the zero list is missing a root at 0".into(),
        ));
    }
    let g0 = quotient.coeffs()[0] / a;

    let mut holds = true;
    let mut min_margin = f64::INFINITY;
    let mut violation = None;
    let mut evaluated = 0usize;
    for x in grid.points() {
        let pv = p_poly.eval(x);
        // Grid points landing on a zero of P carry no information; skip.
        if pv.norm() < 1e-13 * (1.0 + x.norm()).powi(s as i32) {
            continue;
        }
        let g = f.eval(x) / (a * pv);
        let t = x.norm();
        let lower = ((1.0 - t) / (1.0 + t)).powi(2 * p as i32);
        let upper = ((1.0 + t) / (1.0 - t)).powi(2 * p as i32);
        let margin = (g.norm() - lower).min(upper - g.norm());
        if margin < min_margin {
            min_margin = margin;
        }
        if margin < -1e-9 * upper {
            holds = false;
            if violation.is_none() {
                violation = Some((x.re, x.im));
            }
        }
        evaluated += 1;
    }

    Ok(DistortionReport {
        s,
        p,
        normalization: (g0.re, g0.im),
        certification_radius: r_cert,
        grid_points: evaluated,
        holds,
        min_margin,
        violation,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub p: usize,
    pub big_n: usize,
    pub shift: f64,
    pub circle_radius: f64,
    pub solutions_found: usize,
    pub expected: usize,
    pub demonstrates_failure: bool,
}

/// The normalized quotient g = 1 + x^{N-p} of the x^p + x^N family is not
/// p-valent: g = c has N - p solutions for c near 1.
pub fn counterexample_report(p: usize, big_n: usize) -> Result<CounterexampleReport> {
    if big_n <= p {
        return Err(Error::InvalidParameter {
            name: "N",
            reason: format!("need N > p, got N = {big_n}, p = {p}"),
        });
    }
    let gap = big_n - p;
    let shift = 1e-6f64;
    // Solutions of g = 1 + shift are the roots of x^{N-p} - shift.
    let mut coeffs = vec![Complex64::new(-shift, 0.0)];
    coeffs.resize(gap, Complex64::new(0.0, 0.0));
    coeffs.push(Complex64::new(1.0, 0.0));
    let h = AnalyticFn::Poly(Polynomial::new(coeffs));
    let r = 0.9;
    let zc = count_zeros(&h, r)?;
    Ok(CounterexampleReport {
        p,
        big_n,
        shift,
        circle_radius: r,
        solutions_found: zc.count,
        expected: gap,
        demonstrates_failure: zc.certified && zc.count == gap && gap > p,
    })
}
