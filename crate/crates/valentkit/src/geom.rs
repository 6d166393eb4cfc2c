//! Planar primitives: points, disks, minimum enclosing disk.
//!
//! Everything here is exact double-precision geometry on finite coordinates.
//! The minimum enclosing disk uses the incremental (Welzl-style) method with
//! the input order taken as-is, so results are reproducible bit-for-bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Membership slack when testing whether a point lies inside a disk.
pub const CONTAINS_TOL: f64 = 1e-9;

/// A point of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub re: f64,
    pub im: f64,
}

impl Point {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Point { re, im })
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Point::new(z.re, z.im)
    }
}

/// A closed disk: center plus nonnegative radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidParameter {
                name: "radius",
                reason: format!("must be finite and >= 0, got {radius}"),
            });
        }
        Ok(Disk { center, radius })
    }

    /// Membership with the crate-wide tolerance.
    pub fn contains(&self, p: &Point) -> bool {
        self.center.dist(p) <= self.radius + CONTAINS_TOL
    }

    /// Tighter membership used internally by the enclosing-disk construction,
    /// relative in the radius so large and small scales behave alike.
    fn contains_tight(&self, p: &Point) -> bool {
        self.center.dist(p) <= self.radius * (1.0 + 1e-12) + 1e-14
    }
}

/// A finite multiset of plane points. Operations that need distinctness work
/// on the deduplicated view (exact coordinate equality).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Self {
        PointSet { points }
    }

    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        let points = coords
            .iter()
            .map(|&(re, im)| Point::new(re, im))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointSet { points })
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Deduplicated view, preserving first-occurrence order. Equality is
    /// exact; callers wanting tolerance must pre-snap.
    pub fn dedup(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            if !out.iter().any(|q| q == p) {
                out.push(*p);
            }
        }
        out
    }

    /// Largest modulus over the set, i.e. the radius of the smallest disk
    /// about the origin containing it.
    pub fn max_abs(&self) -> f64 {
        self.points.iter().map(|p| p.abs()).fold(0.0, f64::max)
    }
}

/// Smallest disk containing every input point.
///
/// Incremental method over the points in input order (no randomized shuffle),
/// expected linear on typical inputs and deterministic always.
pub fn min_enclosing_disk(pts: &PointSet) -> Result<Disk> {
    if pts.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(meb_of_slice(&pts.points))
}

pub(crate) fn meb_of_slice(points: &[Point]) -> Disk {
    debug_assert!(!points.is_empty());
    let mut disk = Disk {
        center: points[0],
        radius: 0.0,
    };
    for (i, p) in points.iter().enumerate().skip(1) {
        if !disk.contains_tight(p) {
            disk = meb_one_boundary(&points[..=i], *p);
        }
    }
    disk
}

// Invariant: `p` lies on the boundary of the result.
fn meb_one_boundary(points: &[Point], p: Point) -> Disk {
    let mut disk = Disk {
        center: p,
        radius: 0.0,
    };
    for (i, q) in points.iter().enumerate() {
        if !disk.contains_tight(q) {
            disk = if disk.radius == 0.0 {
                diameter_disk(p, *q)
            } else {
                meb_two_boundary(&points[..=i], p, *q)
            };
        }
    }
    disk
}

// Invariant: `p` and `q` lie on the boundary of the result.
fn meb_two_boundary(points: &[Point], p: Point, q: Point) -> Disk {
    let circ = diameter_disk(p, q);
    let mut left: Option<(Disk, f64)> = None;
    let mut right: Option<(Disk, f64)> = None;
    let px = q.re - p.re;
    let py = q.im - p.im;
    for r in points {
        if circ.contains_tight(r) {
            continue;
        }
        let cross = px * (r.im - p.im) - py * (r.re - p.re);
        let c = match circumcircle(p, q, *r) {
            Some(c) => c,
            None => continue,
        };
        let cc = px * (c.center.im - p.im) - py * (c.center.re - p.re);
        if cross > 0.0 {
            if left.as_ref().map_or(true, |(_, best)| cc > *best) {
                left = Some((c, cc));
            }
        } else if cross < 0.0 && right.as_ref().map_or(true, |(_, best)| cc < *best) {
            right = Some((c, cc));
        }
    }
    let left = left.map(|(d, _)| d);
    let right = right.map(|(d, _)| d);
    match (left, right) {
        (None, None) => circ,
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (Some(l), Some(r)) => {
            if l.radius <= r.radius {
                l
            } else {
                r
            }
        }
    }
}

pub(crate) fn diameter_disk(p: Point, q: Point) -> Disk {
    let center = Point {
        re: 0.5 * (p.re + q.re),
        im: 0.5 * (p.im + q.im),
    };
    // Radius as max distance to the two endpoints guards against rounding.
    let radius = center.dist(&p).max(center.dist(&q));
    Disk { center, radius }
}

/// Circumcircle of three points; `None` when they are (numerically) collinear.
pub(crate) fn circumcircle(a: Point, b: Point, c: Point) -> Option<Disk> {
    // Shift to the centroid for better conditioning.
    let ox = (a.re + b.re + c.re) / 3.0;
    let oy = (a.im + b.im + c.im) / 3.0;
    let ax = a.re - ox;
    let ay = a.im - oy;
    let bx = b.re - ox;
    let by = b.im - oy;
    let cx = c.re - ox;
    let cy = c.im - oy;
    let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if d == 0.0 {
        return None;
    }
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    let uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    let center = Point {
        re: ux + ox,
        im: uy + oy,
    };
    let radius = center
        .dist(&a)
        .max(center.dist(&b))
        .max(center.dist(&c));
    if !radius.is_finite() {
        return None;
    }
    Some(Disk { center, radius })
}

/// Minimum Euclidean distance between distinct points of the set.
pub fn min_pairwise_distance(pts: &PointSet) -> Result<f64> {
    let d = pts.dedup();
    if d.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: d.len(),
        });
    }
    let mut best = f64::INFINITY;
    for i in 0..d.len() {
        for j in (i + 1)..d.len() {
            best = best.min(d[i].dist(&d[j]));
        }
    }
    Ok(best)
}
