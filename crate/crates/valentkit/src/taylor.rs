//! Taylor-domination profiles, lower truncation, Biernacki-constant fitting,
//! and the correspondence between coefficient recurrences and valency radii.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncated Taylor series a_0..a_K with a working radius, optionally with a
/// bound on the discarded tail valid for |z| <= working_radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
    working_radius: f64,
    tail_bound: Option<f64>,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<Complex64>, working_radius: f64, tail_bound: Option<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter {
                name: "coeffs",
                reason: "series needs at least one coefficient".into(),
            });
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(working_radius > 0.0) || !working_radius.is_finite() {
            return Err(Error::InvalidParameter {
                name: "working_radius",
                reason: format!("must be positive and finite, got {working_radius}"),
            });
        }
        if let Some(t) = tail_bound {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "tail_bound",
                    reason: format!("must be >= 0 and finite, got {t}"),
                });
            }
        }
        Ok(TaylorSeries {
            coeffs,
            working_radius,
            tail_bound,
        })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Highest stored index K.
    pub fn top_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn working_radius(&self) -> f64 {
        self.working_radius
    }

    pub fn tail_bound(&self) -> Option<f64> {
        self.tail_bound
    }

    /// Horner evaluation of the stored (truncated) part.
    pub fn eval_truncated(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Required domination sequence of a series at parameters (N, R):
/// `required[i]` is |a_k| R^k / base for k = N + 1 + i, with
/// base = max over the index range of |a_i| R^i.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationProfile {
    pub n: usize,
    pub r: f64,
    pub base: f64,
    pub required: Vec<f64>,
}

impl DominationProfile {
    /// k-index of `required[i]`.
    pub fn k_of(&self, i: usize) -> usize {
        self.n + 1 + i
    }
}

/// Candidate domination sequences S(k).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SequenceExpr {
    /// S(k) = c
    Constant(f64),
    /// S(k) = c * k^q
    Power { coeff: f64, exponent: f64 },
    /// S(k) = (A k / m)^(2m)
    Biernacki { m: usize, a: f64 },
}

impl SequenceExpr {
    pub fn eval(&self, k: usize) -> f64 {
        let kf = k as f64;
        match self {
            SequenceExpr::Constant(c) => *c,
            SequenceExpr::Power { coeff, exponent } => coeff * kf.powf(*exponent),
            SequenceExpr::Biernacki { m, a } => (a * kf / *m as f64).powi(2 * *m as i32),
        }
    }

    /// Parse `const:1.0`, `power:c=2,q=1.5`, `biernacki:m=2,A=1.5`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |reason: String| Error::InvalidParameter { name: "S", reason };
        let (head, rest) = s.split_once(':').ok_or_else(|| {
            bad(format!("expected `family:params`, got `{s}`"))
        })?;
        let get = |key: &str| -> Result<f64> {
            let fields: std::collections::BTreeMap<&str, &str> = rest
                .split(',')
                .filter(|f| !f.is_empty())
                .map(|f| f.split_once('=').ok_or_else(|| bad(format!("bad field `{f}`"))))
                .collect::<Result<_>>()?;
            fields
                .get(key)
                .ok_or_else(|| bad(format!("missing field `{key}` in `{s}`")))?
                .parse::<f64>()
                .map_err(|e| bad(format!("field `{key}`: {e}")))
        };
        match head {
            "const" => Ok(SequenceExpr::Constant(rest.parse().map_err(|e| {
                bad(format!("constant value: {e}"))
            })?)),
            "power" => Ok(SequenceExpr::Power {
                coeff: get("c")?,
                exponent: get("q")?,
            }),
            "biernacki" => Ok(SequenceExpr::Biernacki {
                m: get("m")? as usize,
                a: get("A")?,
            }),
            other => Err(bad(format!("unknown family `{other}`"))),
        }
    }
}

/// Linear non-stationary recurrence a_k = sum_j c_j(k) a_{k-j}, j = 1..m,
/// with per-index coefficients stored for k = m..=k_max and the empirical
/// bound parameters |c_j(k)| <= k_bound * rho^j.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recurrence {
    pub m: usize,
    /// coeff_table[k - m][j - 1] = c_j(k)
    pub coeff_table: Vec<Vec<Complex64>>,
    pub k_bound: f64,
    pub rho: f64,
}

impl Recurrence {
    pub fn k_max(&self) -> usize {
        self.m + self.coeff_table.len() - 1
    }
}

/// Lower s-truncation: b_0 = 0 and b_k = a_{s+k} for k >= 1.
pub fn lower_truncation(f: &TaylorSeries, s: usize) -> Result<TaylorSeries> {
    let k = f.top_index();
    if s >= k {
        return Err(Error::InvalidParameter {
            name: "s",
            reason: format!("must be < K = {k}, got {s}"),
        });
    }
    let mut coeffs = Vec::with_capacity(k - s + 1);
    coeffs.push(Complex64::new(0.0, 0.0));
    coeffs.extend_from_slice(&f.coeffs()[s + 1..]);
    TaylorSeries::new(coeffs, f.working_radius(), f.tail_bound())
}

/// Required-sequence profile with the default index range 0..=N for the base.
pub fn domination_profile(f: &TaylorSeries, n: usize, r: f64) -> Result<DominationProfile> {
    domination_profile_with_range(f, n, r, 0)
}

/// Same, with the base maximum taken over i = i_lo..=N. The i_lo = 1 variant
/// matches the Biernacki convention; applied to a lower truncation (a_0 = 0)
/// the two conventions agree.
pub fn domination_profile_with_range(
    f: &TaylorSeries,
    n: usize,
    r: f64,
    i_lo: usize,
) -> Result<DominationProfile> {
    if !(r > 0.0) || r > f.working_radius() {
        return Err(Error::InvalidParameter {
            name: "R",
            reason: format!(
                "must satisfy 0 < R <= working_radius = {}, got {r}",
                f.working_radius()
            ),
        });
    }
    if n >= f.top_index() {
        return Err(Error::InvalidParameter {
            name: "N",
            reason: format!("must be < K = {}, got {n}", f.top_index()),
        });
    }
    let weight = |k: usize| f.coeffs()[k].norm() * r.powi(k as i32);
    let base = (i_lo..=n).map(weight).fold(0.0, f64::max);
    if base == 0.0 {
        return Err(Error::ZeroBase { upto: n + 1 });
    }
    let required = (n + 1..=f.top_index()).map(|k| weight(k) / base).collect();
    Ok(DominationProfile {
        n,
        r,
        base,
        required,
    })
}

/// Pointwise check that S dominates the profile. Returns the overall verdict
/// and the first violating index k, if any.
pub fn check_domination(p: &DominationProfile, s: &SequenceExpr) -> (bool, Option<usize>) {
    for (i, req) in p.required.iter().enumerate() {
        let k = p.k_of(i);
        if *req > s.eval(k) {
            return (false, Some(k));
        }
    }
    (true, None)
}

/// Minimal A >= 0 with S_req(k) <= (A k / m)^(2m) for every stored k > m,
/// i.e. A = max over k of (m / k) * S_req(k)^(1 / 2m).
pub fn fit_biernacki_constant(f: &TaylorSeries, m: usize, r: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: "must be >= 1".into(),
        });
    }
    let profile = domination_profile(f, m, r)?;
    let mf = m as f64;
    let mut a = 0.0f64;
    for (i, req) in profile.required.iter().enumerate() {
        let k = profile.k_of(i) as f64;
        a = a.max(mf / k * req.powf(1.0 / (2.0 * mf)));
    }
    Ok(a)
}

/// Canonical single-support recurrence extraction.
///
/// For each k >= m with a_k != 0, put all weight on j*(k) maximizing
/// |a_{k-j}| rho^j (ties to the smallest j): c_{j*}(k) = a_k / a_{k-j*},
/// all other c_j(k) = 0. Reports C_emp = max |c_j(k)| / rho^j.
pub fn extract_recurrence(f: &TaylorSeries, m: usize, rho: f64) -> Result<Recurrence> {
    if m == 0 {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: "must be >= 1".into(),
        });
    }
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidParameter {
            name: "rho",
            reason: format!("must be positive and finite, got {rho}"),
        });
    }
    let coeffs = f.coeffs();
    if coeffs.len() <= m {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("series has only {} coefficients", coeffs.len()),
        });
    }
    let mut table = Vec::with_capacity(coeffs.len() - m);
    let mut c_emp = 0.0f64;
    for k in m..coeffs.len() {
        let mut row = vec![Complex64::new(0.0, 0.0); m];
        let ak = coeffs[k];
        if ak.norm_sqr() != 0.0 {
            let mut best: Option<(usize, f64)> = None;
            for j in 1..=m {
                let score = coeffs[k - j].norm() * rho.powi(j as i32);
                if score > 0.0 && best.map_or(true, |(_, b)| score > b) {
                    best = Some((j, score));
                }
            }
            let (j_star, _) =
                best.ok_or(Error::RecurrenceUnrepresentable { k, m })?;
            let c = ak / coeffs[k - j_star];
            row[j_star - 1] = c;
            c_emp = c_emp.max(c.norm() / rho.powi(j_star as i32));
        }
        table.push(row);
    }
    Ok(Recurrence {
        m,
        coeff_table: table,
        k_bound: c_emp,
        rho,
    })
}

/// Forward recursion from initial data a_0..a_{m-1} through index K.
/// The working radius of the result is the valency radius of the recurrence
/// bound parameters.
pub fn generate_from_recurrence(
    rec: &Recurrence,
    initial: &[Complex64],
    k_out: usize,
) -> Result<TaylorSeries> {
    if initial.len() != rec.m {
        return Err(Error::InvalidParameter {
            name: "initial",
            reason: format!("need exactly m = {} initial coefficients", rec.m),
        });
    }
    if k_out >= rec.m && k_out > rec.k_max() {
        return Err(Error::MissingTableEntry { k: rec.k_max() + 1 });
    }
    let mut coeffs: Vec<Complex64> = initial.to_vec();
    for k in rec.m..=k_out {
        let row = &rec.coeff_table[k - rec.m];
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=rec.m {
            acc += row[j - 1] * coeffs[k - j];
        }
        coeffs.push(acc);
    }
    coeffs.truncate(k_out + 1);
    TaylorSeries::new(
        coeffs,
        valency_radius(rec.m, rec.k_bound, rec.rho),
        None,
    )
}

/// R = 1 / (2^(3m+1) (2K + 2) rho): the disk radius on which a bounded
/// recurrence forces (s, s+m)-valency for every s.
pub fn valency_radius(m: usize, k_bound: f64, rho: f64) -> f64 {
    let denom = 2f64.powi(3 * m as i32 + 1) * (2.0 * k_bound + 2.0) * rho;
    1.0 / denom
}

/// Coefficients of the truncation of 1 / (1 - (z/R)^m) through index K.
/// Lacunary test family: a_k = R^(-k) at multiples of m, else 0.
pub fn lacunary_geometric(m: usize, r: f64, k_top: usize) -> TaylorSeries {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); k_top + 1];
    let mut k = 0usize;
    while k <= k_top {
        coeffs[k] = Complex64::new(r.powi(-(k as i32)), 0.0);
        k += m;
    }
    // Geometric tail bound at radius 0.95 R for |z| <= 0.95 R.
    let q = 0.95f64.powi(m as i32);
    let tail = q.powi((k_top / m + 1) as i32) / (1.0 - q);
    TaylorSeries::new(coeffs, r, Some(tail)).expect("valid series")
}
