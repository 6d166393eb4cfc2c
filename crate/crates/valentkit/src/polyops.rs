//! Complex polynomial arithmetic with certified maximum-modulus evaluation.
//!
//! The maximum over the closed disk is evaluated on the boundary circle only
//! (maximum-modulus principle). Certification uses the crude derivative bound
//! `|P'| <= sum k |p_k| r^(k-1)` on the circle: coarse but sound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::taylor::TaylorSeries;

/// Polynomial with complex coefficients in ascending degree order.
/// Trailing exact-zero coefficients are trimmed on normalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

/// Factored form: leading coefficient times a product of linear factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootForm {
    pub leading: Complex64,
    pub roots: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial {
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Polynomial::new(vec![c])
    }

    /// z^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    /// Highest index with nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| c.norm_sqr() != 0.0)
    }

    /// Lowest index with nonzero coefficient (vanishing order at 0).
    pub fn vanishing_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.norm_sqr() != 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Conservative bound on the absolute evaluation error of Horner's scheme
    /// at |z| = r.
    pub fn eval_error_bound(&self, r: f64) -> f64 {
        let n = self.coeffs.len() as f64;
        let sum: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * r.powi(k as i32))
            .sum();
        2.0 * n * f64::EPSILON * sum
    }
}

/// Expand a root form into ascending coefficients.
pub fn from_roots(rf: &RootForm) -> Polynomial {
    let mut coeffs = vec![rf.leading];
    for root in &rf.roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * root;
        }
        coeffs = next;
    }
    Polynomial::new(coeffs)
}

/// Certified maximum of |P| on the circle |z| = r.
///
/// Branch-and-bound over arcs: an arc's value is bounded by the larger
/// endpoint sample plus the smaller of the Lipschitz slack `L * len/2`
/// (L = r * sum k |p_k| r^(k-1)) and the chord-deviation slack
/// `M2 * len^2/8` (M2 = sum k^2 |p_k| r^k). Arcs are split until the
/// largest upper bound is within `tol` of the best sample. `certified` is
/// false only if the refinement budget runs out.
pub fn max_modulus_circle(p: &Polynomial, r: f64, tol: f64) -> Result<(f64, bool)> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter {
            name: "r",
            reason: format!("must be positive and finite, got {r}"),
        });
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: format!("must be positive and finite, got {tol}"),
        });
    }
    if p.is_zero() {
        return Ok((0.0, true));
    }
    let lip: f64 = r * p
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c.norm() * r.powi(k as i32 - 1))
        .sum::<f64>();
    if lip == 0.0 {
        return Ok((p.coeffs[0].norm(), true));
    }
    // Curvature bound |d^2/dtheta^2 P(r e^(i theta))| <= sum k^2 |p_k| r^k;
    // the chord-deviation form max(ma, mb) + m2 len^2 / 8 beats the
    // Lipschitz slack on short arcs and is what lets constant-modulus
    // polynomials (z^k) converge at all.
    let m2: f64 = p
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| (k * k) as f64 * c.norm() * r.powi(k as i32))
        .sum::<f64>();

    let sample = |theta: f64| p.eval(Complex64::from_polar(r, theta)).norm();

    #[derive(PartialEq)]
    struct Arc {
        ub: f64,
        a: f64,
        b: f64,
        ma: f64,
        mb: f64,
    }
    impl Eq for Arc {}
    impl Ord for Arc {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.ub.total_cmp(&other.ub)
        }
    }
    impl PartialOrd for Arc {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }

    let two_pi = 2.0 * std::f64::consts::PI;
    let n0 = 64usize;
    let mut best = f64::NEG_INFINITY;
    let mut heap = std::collections::BinaryHeap::new();
    let thetas: Vec<f64> = (0..=n0).map(|i| two_pi * i as f64 / n0 as f64).collect();
    let values: Vec<f64> = thetas.iter().map(|&t| sample(t)).collect();
    for v in &values {
        best = best.max(*v);
    }
    let slack = |len: f64| (lip * len * 0.5).min(m2 * len * len / 8.0);
    for i in 0..n0 {
        let (a, b) = (thetas[i], thetas[i + 1]);
        let (ma, mb) = (values[i], values[i + 1]);
        heap.push(Arc {
            ub: ma.max(mb) + slack(b - a),
            a,
            b,
            ma,
            mb,
        });
    }

    let mut evals = n0 + 1;
    const MAX_EVALS: usize = 4_000_000;
    while let Some(arc) = heap.pop() {
        if arc.ub <= best + tol {
            return Ok((best, true));
        }
        if evals >= MAX_EVALS {
            return Ok((best, false));
        }
        let mid = 0.5 * (arc.a + arc.b);
        let mm = sample(mid);
        evals += 1;
        best = best.max(mm);
        let half = 0.5 * (arc.b - arc.a);
        heap.push(Arc {
            ub: arc.ma.max(mm) + slack(half),
            a: arc.a,
            b: mid,
            ma: arc.ma,
            mb: mm,
        });
        heap.push(Arc {
            ub: mm.max(arc.mb) + slack(half),
            a: mid,
            b: arc.b,
            ma: mm,
            mb: arc.mb,
        });
    }
    Ok((best, true))
}

/// Exact maximum of |P| over a finite set.
pub fn max_on_set(p: &Polynomial, z: &PointSet) -> Result<f64> {
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(z.points
        .iter()
        .map(|pt| p.eval(pt.to_complex()).norm())
        .fold(0.0, f64::max))
}

/// First `k_out + 1` Taylor coefficients of f / P by long division.
///
/// Requires the quotient to be regular at 0: P's vanishing order must not
/// exceed f's. Coefficients of f below P's vanishing order must be zero up
/// to a 1e-12 relative threshold.
pub fn series_divide(f: &TaylorSeries, p: &Polynomial, k_out: usize) -> Result<TaylorSeries> {
    let v = p.vanishing_order().ok_or(Error::ZeroPolynomial)?;
    let fc = f.coeffs();
    let scale = fc.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let threshold = 1e-12 * scale;
    for (i, c) in fc.iter().enumerate().take(v) {
        if c.norm() > threshold {
            return Err(Error::NotRegularAtOrigin {
                divisor_order: v,
                numerator_order: i,
            });
        }
    }
    let pc = &p.coeffs()[v..];
    let lead = pc[0];
    let mut q = vec![Complex64::new(0.0, 0.0); k_out + 1];
    for k in 0..=k_out {
        let mut acc = fc
            .get(k + v)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0));
        for j in 1..=k.min(pc.len() - 1) {
            acc -= pc[j] * q[k - j];
        }
        q[k] = acc / lead;
    }
    TaylorSeries::new(q, f.working_radius(), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Naive power-sum evaluation oracle.
    fn eval_oracle(p: &Polynomial, z: Complex64) -> Complex64 {
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, a)| a * z.powu(k as u32))
            .sum()
    }

    fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Polynomial {
        Polynomial::new(
            (0..=deg)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn eval_trivial() {
        let p = Polynomial::from_real(&[2.0, 1.0]);
        assert_eq!(p.eval(c(1.0, 0.0)), c(3.0, 0.0));
        let sq = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        let v = sq.eval(c(0.0, 1.0));
        assert!((v - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_matches_term_sum_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let deg = rng.gen_range(0..9);
            let p = random_poly(&mut rng, deg);
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let a = p.eval(z);
            let b = eval_oracle(&p, z);
            assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn from_roots_hand_expansion() {
        let p = from_roots(&RootForm {
            leading: c(1.0, 0.0),
            roots: vec![c(0.5, 0.0), c(-2.0, 0.0)],
        });
        // (z - 0.5)(z + 2) = z^2 + 1.5 z - 1
        assert!((p.coeffs()[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((p.coeffs()[1] - c(1.5, 0.0)).norm() < 1e-14);
        assert!((p.coeffs()[2] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn from_roots_empty_is_constant() {
        let p = from_roots(&RootForm {
            leading: c(2.0, 0.0),
            roots: vec![],
        });
        assert_eq!(p.coeffs(), &[c(2.0, 0.0)]);
    }

    #[test]
    fn from_roots_vanishes_at_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let roots: Vec<Complex64> = (0..rng.gen_range(1..6))
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let p = from_roots(&RootForm {
                leading: c(rng.gen_range(0.5..2.0), 0.0),
                roots: roots.clone(),
            });
            for r in &roots {
                assert!(p.eval(*r).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn from_roots_matches_convolution_oracle_exactly_on_integers() {
        // Degree <= 10 with small integer roots: expansion must be exact.
        let roots: Vec<Complex64> = vec![1.0, -2.0, 3.0, -1.0, 2.0, 0.0, 4.0, -3.0, 1.0, 2.0]
            .into_iter()
            .map(|x| c(x, 0.0))
            .collect();
        let p = from_roots(&RootForm {
            leading: c(1.0, 0.0),
            roots: roots.clone(),
        });
        // Convolution oracle: repeated polynomial multiplication.
        let mut q = Polynomial::constant(c(1.0, 0.0));
        for r in &roots {
            q = q.mul(&Polynomial::new(vec![-r, c(1.0, 0.0)]));
        }
        assert_eq!(p.coeffs(), q.coeffs());
    }

    #[test]
    fn maxmod_linear() {
        let p = Polynomial::from_real(&[2.0, 1.0]);
        let (v, cert) = max_modulus_circle(&p, 1.0, 1e-10).unwrap();
        assert!(cert);
        assert!((v - 3.0).abs() < 1e-9);
    }

    #[test]
    fn maxmod_pure_power() {
        let p = Polynomial::monomial(7);
        let (v, cert) = max_modulus_circle(&p, 1.0, 1e-8).unwrap();
        assert!(cert);
        assert!((v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn maxmod_matches_dense_grid_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..4 {
            let p = random_poly(&mut rng, 6);
            let (v, cert) = max_modulus_circle(&p, 1.0, 1e-8).unwrap();
            assert!(cert);
            // Dense boundary sampling oracle, 10^6 points.
            let n = 1_000_000usize;
            let mut oracle = 0.0f64;
            for i in 0..n {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                oracle = oracle.max(p.eval(Complex64::from_polar(1.0, t)).norm());
            }
            assert!((v - oracle).abs() < 1e-6, "v={v} oracle={oracle}");
            assert!(v >= oracle - 1e-8);
        }
    }

    #[test]
    fn maxmod_dominates_samples_and_scales() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let p = random_poly(&mut rng, 5);
        let (v, _) = max_modulus_circle(&p, 1.3, 1e-9).unwrap();
        for i in 0..200 {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 200.0;
            assert!(v + 1e-9 >= p.eval(Complex64::from_polar(1.3, t)).norm());
        }
        let k = c(-2.5, 1.0);
        let (vs, _) = max_modulus_circle(&p.scale(k), 1.3, 1e-9).unwrap();
        assert!((vs - k.norm() * v).abs() <= 1e-7 * (1.0 + vs));
    }

    #[test]
    fn maxmod_zero_polynomial() {
        let (v, cert) = max_modulus_circle(&Polynomial::zero(), 1.0, 1e-8).unwrap();
        assert_eq!(v, 0.0);
        assert!(cert);
    }

    #[test]
    fn max_on_set_examples() {
        let p = Polynomial::from_real(&[0.0, 1.0]);
        let z = PointSet::from_coords(&[(0.1, 0.0), (0.5, 0.0)]).unwrap();
        assert_eq!(max_on_set(&p, &z).unwrap(), 0.5);
        let k = Polynomial::constant(c(-3.0, 4.0));
        assert!((max_on_set(&k, &z).unwrap() - 5.0).abs() < 1e-15);
        assert!(matches!(
            max_on_set(&p, &PointSet::new(vec![])),
            Err(Error::EmptyPointSet)
        ));
    }

    #[test]
    fn series_divide_by_z() {
        let f = TaylorSeries::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], 1.0, None).unwrap();
        let q = series_divide(&f, &Polynomial::monomial(1), 1).unwrap();
        assert_eq!(q.coeffs(), &[c(1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn series_divide_identity() {
        let p = Polynomial::from_real(&[2.0, -1.0, 3.0]);
        let f = TaylorSeries::new(p.coeffs().to_vec(), 1.0, None).unwrap();
        let q = series_divide(&f, &p, 4).unwrap();
        assert!((q.coeffs()[0] - c(1.0, 0.0)).norm() < 1e-13);
        for k in 1..=4 {
            assert!(q.coeffs()[k].norm() < 1e-12);
        }
    }

    #[test]
    fn series_divide_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let pdeg = rng.gen_range(1..5);
            let mut p = random_poly(&mut rng, pdeg);
            // Ensure P(0) != 0 for this family.
            if p.coeffs()[0].norm() < 0.1 {
                p = p.add(&Polynomial::constant(c(1.0, 0.0)));
            }
            let fdeg = rng.gen_range(2..8);
            let f_poly = random_poly(&mut rng, fdeg);
            let f = TaylorSeries::new(f_poly.coeffs().to_vec(), 1.0, None).unwrap();
            let kk = fdeg + 4;
            let q = series_divide(&f, &p, kk).unwrap();
            // Multiply back and compare the first coefficients of f.
            let qp = Polynomial::new(q.coeffs().to_vec()).mul(&p);
            let fmax = f_poly.coeffs().iter().map(|x| x.norm()).fold(0.0, f64::max);
            for k in 0..=fdeg {
                let want = f_poly.coeffs()[k];
                let got = qp.coeffs().get(k).copied().unwrap_or_else(|| c(0.0, 0.0));
                assert!((want - got).norm() <= 1e-10 * (1.0 + fmax));
            }
        }
    }

    #[test]
    fn series_divide_rejects_irregular_quotient() {
        let f = TaylorSeries::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 1.0, None).unwrap();
        assert!(matches!(
            series_divide(&f, &Polynomial::monomial(1), 3),
            Err(Error::NotRegularAtOrigin { .. })
        ));
        assert!(matches!(
            series_divide(&f, &Polynomial::zero(), 3),
            Err(Error::ZeroPolynomial)
        ));
    }
}
