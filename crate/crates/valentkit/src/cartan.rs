//! The (d, alpha)-Cartan measure, covering numbers, and the invariants
//! omega_d, omega_cd, rho_d, with exact solvers at small scale and
//! branch-and-bound beyond.
//!
//! Optimal coverings reduce to point-set partitions: replacing each disk by
//! the minimum enclosing disk of its assigned points never increases the
//! objective, so every solver below searches partitions of the deduplicated
//! set into at most d blocks and scores a partition by the l_alpha norm of
//! the block MEB radii.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{diameter_disk, circumcircle, meb_of_slice, Disk, Point, PointSet};

/// Exact mode enumerates every partition; keep the input small.
pub const EXACT_LIMIT: usize = 10;

/// Covering and omega computations track coverage masks in a u128.
pub const COVER_LIMIT: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Exact,
    Bnb,
    Heuristic,
}

impl std::str::FromStr for SolveMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SolveMode::Exact),
            "bnb" => Ok(SolveMode::Bnb),
            "heuristic" => Ok(SolveMode::Heuristic),
            other => Err(Error::InvalidParameter {
                name: "mode",
                reason: format!("expected exact|bnb|heuristic, got `{other}`"),
            }),
        }
    }
}

/// A covering of the deduplicated set by at most d disks, with the
/// point-index -> disk-index assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Covering {
    pub disks: Vec<Disk>,
    pub assignment: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CartanResult {
    pub value: f64,
    pub alpha: f64,
    pub d: usize,
    pub covering: Covering,
    pub exact: bool,
}

/// Step function epsilon -> M(epsilon, Z).
///
/// `initial` is the value for epsilon below the first breakpoint (the number
/// of distinct points); `breakpoints` lists (epsilon, M) with M holding on
/// [epsilon_i, epsilon_{i+1}) — the curve is right-continuous and
/// non-increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringNumberCurve {
    pub initial: usize,
    pub breakpoints: Vec<(f64, usize)>,
}

impl CoveringNumberCurve {
    /// M(eps) by curve lookup.
    pub fn m_at(&self, eps: f64) -> usize {
        let mut m = self.initial;
        for &(e, v) in &self.breakpoints {
            if eps >= e {
                m = v;
            } else {
                break;
            }
        }
        m
    }

    /// Left limit of M at eps (the value just below eps).
    pub fn m_left(&self, eps: f64) -> usize {
        let mut m = self.initial;
        for &(e, v) in &self.breakpoints {
            if eps > e {
                m = v;
            } else {
                break;
            }
        }
        m
    }
}

fn l_alpha_norm(radii: &[f64], alpha: f64) -> f64 {
    let sum: f64 = radii.iter().map(|r| r.powf(alpha)).sum();
    sum.powf(1.0 / alpha)
}

fn validate_d_alpha(d: usize, alpha: f64) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "must be a positive integer".into(),
        });
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("must be positive and finite, got {alpha}"),
        });
    }
    Ok(())
}

fn covering_from_blocks(points: &[Point], blocks: &[Vec<usize>]) -> Covering {
    let mut assignment = vec![0usize; points.len()];
    let mut disks = Vec::with_capacity(blocks.len());
    for (b, idx) in blocks.iter().enumerate() {
        let members: Vec<Point> = idx.iter().map(|&i| points[i]).collect();
        disks.push(meb_of_slice(&members));
        for &i in idx {
            assignment[i] = b;
        }
    }
    Covering { disks, assignment }
}

/// Minimum of the l_alpha norm of covering radii over coverings of Z by at
/// most d disks.
pub fn cartan_measure(
    z: &PointSet,
    d: usize,
    alpha: f64,
    mode: SolveMode,
) -> Result<CartanResult> {
    validate_d_alpha(d, alpha)?;
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let points = z.dedup();
    let n = points.len();

    // At most d points: d degenerate disks, measure 0.
    if n <= d {
        let blocks: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        return Ok(CartanResult {
            value: 0.0,
            alpha,
            d,
            covering: covering_from_blocks(&points, &blocks),
            exact: true,
        });
    }

    match mode {
        SolveMode::Exact => {
            if n > EXACT_LIMIT {
                return Err(Error::TooLarge {
                    op: "cartan_measure(exact)",
                    len: n,
                    limit: EXACT_LIMIT,
                });
            }
            let (value, blocks) = exact_min_partition(&points, d, alpha);
            Ok(CartanResult {
                value,
                alpha,
                d,
                covering: covering_from_blocks(&points, &blocks),
                exact: true,
            })
        }
        SolveMode::Bnb => {
            let (value, blocks) = bnb_min_partition(&points, d, alpha);
            Ok(CartanResult {
                value,
                alpha,
                d,
                covering: covering_from_blocks(&points, &blocks),
                exact: true,
            })
        }
        SolveMode::Heuristic => {
            let blocks = heuristic_partition(&points, d, alpha);
            let radii: Vec<f64> = blocks
                .iter()
                .map(|b| {
                    let members: Vec<Point> = b.iter().map(|&i| points[i]).collect();
                    meb_of_slice(&members).radius
                })
                .collect();
            Ok(CartanResult {
                value: l_alpha_norm(&radii, alpha),
                alpha,
                d,
                covering: covering_from_blocks(&points, &blocks),
                exact: false,
            })
        }
    }
}

/// All sorted radius vectors of partitions of `points` into <= d blocks,
/// deduplicated. Lets callers re-score the same partition family under many
/// alpha values without re-enumerating (the optimum over coverings is the
/// minimum over these vectors of the l_alpha norm).
pub fn partition_radius_vectors(points: &[Point], d: usize) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut out: Vec<Vec<f64>> = Vec::new();
    let mut assignment = vec![0usize; n];
    fn rec(
        points: &[Point],
        d: usize,
        i: usize,
        used: usize,
        assignment: &mut Vec<usize>,
        out: &mut Vec<Vec<f64>>,
    ) {
        let n = points.len();
        if i == n {
            let mut radii = Vec::with_capacity(used);
            for b in 0..used {
                let members: Vec<Point> = (0..n)
                    .filter(|&j| assignment[j] == b)
                    .map(|j| points[j])
                    .collect();
                radii.push(meb_of_slice(&members).radius);
            }
            radii.sort_by(f64::total_cmp);
            out.push(radii);
            return;
        }
        let top = (used + 1).min(d);
        for b in 0..top {
            assignment[i] = b;
            rec(points, d, i + 1, used.max(b + 1), assignment, out);
        }
    }
    rec(points, d, 0, 0, &mut assignment, &mut out);
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().map(|x| x.to_bits()).cmp(b.iter().map(|x| x.to_bits())))
    });
    out.dedup();
    out
}

/// Exhaustive minimum over partitions into <= d blocks.
fn exact_min_partition(points: &[Point], d: usize, alpha: f64) -> (f64, Vec<Vec<usize>>) {
    let n = points.len();
    let mut best = f64::INFINITY;
    let mut best_assignment = vec![0usize; n];
    let mut assignment = vec![0usize; n];
    fn rec(
        points: &[Point],
        d: usize,
        alpha: f64,
        i: usize,
        used: usize,
        assignment: &mut Vec<usize>,
        best: &mut f64,
        best_assignment: &mut Vec<usize>,
    ) {
        let n = points.len();
        if i == n {
            let mut radii = Vec::with_capacity(used);
            for b in 0..used {
                let members: Vec<Point> = (0..n)
                    .filter(|&j| assignment[j] == b)
                    .map(|j| points[j])
                    .collect();
                radii.push(meb_of_slice(&members).radius);
            }
            let value = l_alpha_norm(&radii, alpha);
            if value < *best {
                *best = value;
                best_assignment.copy_from_slice(assignment);
            }
            return;
        }
        let top = (used + 1).min(d);
        for b in 0..top {
            assignment[i] = b;
            rec(
                points,
                d,
                alpha,
                i + 1,
                used.max(b + 1),
                assignment,
                best,
                best_assignment,
            );
        }
    }
    rec(
        points,
        d,
        alpha,
        0,
        0,
        &mut assignment,
        &mut best,
        &mut best_assignment,
    );
    let used = best_assignment.iter().copied().max().unwrap() + 1;
    let blocks: Vec<Vec<usize>> = (0..used)
        .map(|b| {
            (0..n)
                .filter(|&j| best_assignment[j] == b)
                .collect::<Vec<_>>()
        })
        .collect();
    (best, blocks)
}

struct BnbState<'a> {
    points: &'a [Point],
    d: usize,
    alpha: f64,
    // Per-cluster member indices and current MEB.
    clusters: Vec<Vec<usize>>,
    disks: Vec<Disk>,
    assigned: Vec<bool>,
    incumbent: f64,
    incumbent_blocks: Vec<Vec<usize>>,
}

impl<'a> BnbState<'a> {
    fn partial_norm(&self) -> f64 {
        let radii: Vec<f64> = self.disks.iter().map(|d| d.radius).collect();
        l_alpha_norm(&radii, self.alpha)
    }

    /// Unassigned point farthest from all current cluster centers
    /// (ties broken by lowest index; with no clusters the lowest index wins).
    fn pick_branch_point(&self) -> usize {
        let mut best_i = usize::MAX;
        let mut best_dist = f64::NEG_INFINITY;
        for i in 0..self.points.len() {
            if self.assigned[i] {
                continue;
            }
            let dist = if self.disks.is_empty() {
                f64::INFINITY
            } else {
                self.disks
                    .iter()
                    .map(|d| d.center.dist(&self.points[i]))
                    .fold(f64::INFINITY, f64::min)
            };
            if dist > best_dist {
                best_dist = dist;
                best_i = i;
            }
        }
        best_i
    }

    fn dfs(&mut self) {
        if self.assigned.iter().all(|&a| a) {
            let value = self.partial_norm();
            if value < self.incumbent {
                self.incumbent = value;
                self.incumbent_blocks = self.clusters.clone();
            }
            return;
        }
        let i = self.pick_branch_point();
        let n_clusters = self.clusters.len();
        // Existing clusters in index order, then one fresh cluster.
        for c in 0..=n_clusters {
            if c == n_clusters && n_clusters == self.d {
                break;
            }
            let saved_disk;
            if c == n_clusters {
                self.clusters.push(vec![i]);
                self.disks.push(Disk {
                    center: self.points[i],
                    radius: 0.0,
                });
                saved_disk = None;
            } else {
                saved_disk = Some(self.disks[c]);
                self.clusters[c].push(i);
                let members: Vec<Point> =
                    self.clusters[c].iter().map(|&j| self.points[j]).collect();
                self.disks[c] = meb_of_slice(&members);
            }
            self.assigned[i] = true;
            if self.partial_norm() < self.incumbent {
                self.dfs();
            }
            self.assigned[i] = false;
            if let Some(d) = saved_disk {
                self.clusters[c].pop();
                self.disks[c] = d;
            } else {
                self.clusters.pop();
                self.disks.pop();
            }
        }
    }
}

/// Branch-and-bound minimum; same optimum as exhaustive enumeration.
fn bnb_min_partition(points: &[Point], d: usize, alpha: f64) -> (f64, Vec<Vec<usize>>) {
    // Warm start from the heuristic so pruning bites early.
    let seed_blocks = heuristic_partition(points, d, alpha);
    let seed_radii: Vec<f64> = seed_blocks
        .iter()
        .map(|b| {
            let members: Vec<Point> = b.iter().map(|&i| points[i]).collect();
            meb_of_slice(&members).radius
        })
        .collect();
    let seed_value = l_alpha_norm(&seed_radii, alpha);

    let mut state = BnbState {
        points,
        d,
        alpha,
        clusters: Vec::new(),
        disks: Vec::new(),
        assigned: vec![false; points.len()],
        // Tiny slack so a partition tying the heuristic is still visited and
        // the reported value is the true minimum, bit-for-bit.
        incumbent: seed_value * (1.0 + 1e-12) + f64::MIN_POSITIVE,
        incumbent_blocks: seed_blocks,
    };
    state.dfs();
    let value = {
        let radii: Vec<f64> = state
            .incumbent_blocks
            .iter()
            .map(|b| {
                let members: Vec<Point> = b.iter().map(|&i| points[i]).collect();
                meb_of_slice(&members).radius
            })
            .collect();
        l_alpha_norm(&radii, alpha)
    };
    (value, state.incumbent_blocks.clone())
}

/// Lloyd-style refinement from farthest-point seeding; deterministic.
/// Always an upper bound on the optimum.
fn heuristic_partition(points: &[Point], d: usize, alpha: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let k = d.min(n);
    // Farthest-point seeding starting from the lowest-index point.
    let mut centers: Vec<Point> = vec![points[0]];
    while centers.len() < k {
        let mut best_i = 0;
        let mut best_dist = f64::NEG_INFINITY;
        for (i, p) in points.iter().enumerate() {
            let dist = centers.iter().map(|c| c.dist(p)).fold(f64::INFINITY, f64::min);
            if dist > best_dist {
                best_dist = dist;
                best_i = i;
            }
        }
        centers.push(points[best_i]);
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut prev_assignment: Vec<usize> = vec![usize::MAX; n];
    for _iter in 0..64 {
        let mut assignment = vec![0usize; n];
        for (i, p) in points.iter().enumerate() {
            let mut best_c = 0;
            let mut best_dist = f64::INFINITY;
            for (ci, c) in centers.iter().enumerate() {
                let dist = c.dist(p);
                if dist < best_dist {
                    best_dist = dist;
                    best_c = ci;
                }
            }
            assignment[i] = best_c;
        }
        blocks = (0..centers.len())
            .map(|b| (0..n).filter(|&i| assignment[i] == b).collect::<Vec<_>>())
            .filter(|blk| !blk.is_empty())
            .collect();
        if assignment == prev_assignment {
            break;
        }
        prev_assignment = assignment;
        centers = blocks
            .iter()
            .map(|blk| {
                let members: Vec<Point> = blk.iter().map(|&i| points[i]).collect();
                meb_of_slice(&members).center
            })
            .collect();
    }
    let _ = alpha; // assignment step is radius-driven; alpha only scores the result
    blocks
}

// --- covering numbers ---------------------------------------------------

/// Candidate disk centers for radius-eps covers: input points, midpoints of
/// point pairs within 2 eps, and circumcenters of acute triples with
/// circumradius <= eps. Optimal covers can always be moved onto this family.
fn candidate_masks(points: &[Point], eps: f64) -> Vec<u128> {
    let n = points.len();
    let tol = 1e-12 * (1.0 + eps);
    let covered = |center: &Point| -> u128 {
        let mut mask = 0u128;
        for (i, p) in points.iter().enumerate() {
            if center.dist(p) <= eps + tol {
                mask |= 1 << i;
            }
        }
        mask
    };
    let mut masks: Vec<u128> = Vec::new();
    let mut push = |m: u128| {
        if m != 0 && !masks.contains(&m) {
            masks.push(m);
        }
    };
    for p in points {
        push(covered(p));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let disk = diameter_disk(points[i], points[j]);
            if disk.radius <= eps + tol {
                push(covered(&disk.center));
            }
            for k in (j + 1)..n {
                if let Some(c) = circumcircle(points[i], points[j], points[k]) {
                    if c.radius <= eps + tol {
                        push(covered(&c.center));
                    }
                }
            }
        }
    }
    // Keep only maximal masks.
    let mut maximal: Vec<u128> = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        let dominated = masks
            .iter()
            .enumerate()
            .any(|(j, &other)| j != i && other & m == m && other != m)
            || masks[..i].contains(&m);
        if !dominated {
            maximal.push(m);
        }
    }
    maximal
}

/// Exact minimum set cover by branch-and-bound with a greedy upper bound.
fn min_cover(full: u128, masks: &[u128]) -> usize {
    // Greedy upper bound.
    let mut ub = 0usize;
    let mut rem = full;
    while rem != 0 {
        let best = masks
            .iter()
            .max_by_key(|&&m| (m & rem).count_ones())
            .copied()
            .unwrap_or(0);
        if best & rem == 0 {
            break; // cannot happen: singleton masks always exist
        }
        rem &= !best;
        ub += 1;
    }
    let max_gain = masks.iter().map(|m| m.count_ones()).max().unwrap_or(1) as usize;

    fn dfs(rem: u128, masks: &[u128], count: usize, best: &mut usize, max_gain: usize) {
        if rem == 0 {
            *best = (*best).min(count);
            return;
        }
        let lb = count + (rem.count_ones() as usize).div_ceil(max_gain);
        if lb >= *best {
            return;
        }
        // Branch on the uncovered point with the fewest covering candidates.
        let mut pick = 0usize;
        let mut pick_count = usize::MAX;
        let mut r = rem;
        while r != 0 {
            let i = r.trailing_zeros() as usize;
            r &= r - 1;
            let c = masks.iter().filter(|&&m| m >> i & 1 == 1).count();
            if c < pick_count {
                pick_count = c;
                pick = i;
            }
        }
        for &m in masks.iter().filter(|&&m| m >> pick & 1 == 1) {
            dfs(rem & !m, masks, count + 1, best, max_gain);
        }
    }
    let mut best = ub;
    dfs(full, masks, 0, &mut best, max_gain);
    best
}

/// Exact minimal number of radius-eps disks covering Z.
pub fn covering_number(z: &PointSet, eps: f64) -> Result<usize> {
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter {
            name: "eps",
            reason: format!("must be positive and finite, got {eps}"),
        });
    }
    let points = z.dedup();
    if points.len() > COVER_LIMIT {
        return Err(Error::TooLarge {
            op: "covering_number",
            len: points.len(),
            limit: COVER_LIMIT,
        });
    }
    let full = if points.len() == 128 {
        u128::MAX
    } else {
        (1u128 << points.len()) - 1
    };
    let masks = candidate_masks(&points, eps);
    Ok(min_cover(full, &masks))
}

/// Complete step function of M(eps, Z). Candidate breakpoints are pairwise
/// half-distances and acute-triple circumradii: every subset's MEB radius is
/// one of these, so M can only change there.
pub fn covering_curve(z: &PointSet) -> Result<CoveringNumberCurve> {
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let points = z.dedup();
    let n = points.len();
    if n > COVER_LIMIT {
        return Err(Error::TooLarge {
            op: "covering_curve",
            len: n,
            limit: COVER_LIMIT,
        });
    }
    let mut candidates: Vec<f64> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            candidates.push(diameter_disk(points[i], points[j]).radius);
            for k in (j + 1)..n {
                if let Some(c) = circumcircle(points[i], points[j], points[k]) {
                    // Only acute triples: obtuse MEBs are pair diameters.
                    let half_max_side = points[i]
                        .dist(&points[j])
                        .max(points[j].dist(&points[k]))
                        .max(points[i].dist(&points[k]))
                        * 0.5;
                    if c.radius >= half_max_side {
                        candidates.push(c.radius);
                    }
                }
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut curve = CoveringNumberCurve {
        initial: n,
        breakpoints: Vec::new(),
    };
    let mut current = n;
    for eps in candidates {
        if eps <= 0.0 {
            continue;
        }
        let masks = candidate_masks(&points, eps);
        let m = min_cover(full, &masks);
        if m < current {
            curve.breakpoints.push((eps, m));
            current = m;
        }
        if current == 1 {
            break;
        }
    }
    Ok(curve)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaVariant {
    D,
    Cd,
    Rho,
}

impl std::str::FromStr for OmegaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d" => Ok(OmegaVariant::D),
            "cd" => Ok(OmegaVariant::Cd),
            "rho" => Ok(OmegaVariant::Rho),
            other => Err(Error::InvalidParameter {
                name: "variant",
                reason: format!("expected d|cd|rho, got `{other}`"),
            }),
        }
    }
}

fn validate_d(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "must be a positive integer".into(),
        });
    }
    Ok(())
}

/// sup over eps of eps * (M(eps, Z) - d), clamped at 0.
///
/// M is right-continuous by our curve convention, so on an interval where
/// M - d > 0 the supremum is approached at the next breakpoint from below;
/// evaluating the left-limit M at each breakpoint captures it.
pub fn omega_d(z: &PointSet, d: usize) -> Result<f64> {
    validate_d(d)?;
    omega_sup(z, d, 1.0)
}

/// sup over eps of eps * (M(eps, Z) - d)^(1/2), clamped at 0.
pub fn omega_cd(z: &PointSet, d: usize) -> Result<f64> {
    validate_d(d)?;
    omega_sup(z, d, 0.5)
}

fn omega_sup(z: &PointSet, d: usize, exponent: f64) -> Result<f64> {
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if z.dedup().len() <= d {
        return Ok(0.0);
    }
    let curve = covering_curve(z)?;
    let mut sup = 0.0f64;
    for &(eps, _) in &curve.breakpoints {
        let m_left = curve.m_left(eps);
        if m_left > d {
            sup = sup.max(eps * ((m_left - d) as f64).powf(exponent));
        }
    }
    Ok(sup)
}

/// d times the d-center value eps_0 = min { eps : M(eps, Z) <= d }.
pub fn rho_d(z: &PointSet, d: usize) -> Result<f64> {
    validate_d(d)?;
    if z.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let curve = covering_curve(z)?;
    if curve.initial <= d {
        return Ok(0.0);
    }
    for &(eps, m) in &curve.breakpoints {
        if m <= d {
            return Ok(d as f64 * eps);
        }
    }
    // Unreachable: the last breakpoint always reaches M = 1 <= d.
    Ok(0.0)
}

// --- the paired-couples example ----------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairedAlphaRow {
    pub alpha: f64,
    pub cartan: f64,
    pub closed_form_upper: f64,
    pub within_upper: bool,
}

/// Report for the d-couples construction: d couples of points 2h apart, with
/// couples pairwise 2 eta-separated, enclosing radius d_target.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairedExampleReport {
    pub d: usize,
    pub h: f64,
    pub eta: f64,
    pub enclosing_radius: f64,
    pub kappa: f64,
    pub omega_d: f64,
    pub omega_d_expected: f64,
    pub omega_cd: f64,
    pub omega_cd_expected: f64,
    pub rho_d: f64,
    pub alpha_rows: Vec<PairedAlphaRow>,
    pub cartan_kappa: f64,
    pub cartan_kappa_ge_eta: bool,
    /// K_d bound at alpha = 1: (6e / (d h))^d.
    pub kd_bound_alpha1: f64,
    /// K_d bound at alpha = kappa: (6 e^(1/kappa) / eta)^d.
    pub kd_bound_kappa: f64,
    /// The same kappa bound rewritten via e^(1/kappa) = (D/h)^(1/ln d).
    pub kd_bound_kappa_rewritten: f64,
    pub points: Vec<Point>,
}

/// Build the point set: couple centers equally spaced on the circle of
/// radius d_target - h, each couple split radially by +-h.
pub fn paired_couples_set(d: usize, h: f64, eta: f64, d_target: f64) -> Result<PointSet> {
    if d < 2 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "need at least 2 couples".into(),
        });
    }
    if !(h > 0.0) || !(eta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "h",
            reason: "h and eta must be positive".into(),
        });
    }
    if eta < 10.0 * h {
        return Err(Error::Geometry(format!(
            "separation scale eta = {eta} must be at least 10 h = {}",
            10.0 * h
        )));
    }
    let ring = d_target - h;
    if ring <= 0.0 {
        return Err(Error::Geometry(format!(
            "target radius {d_target} leaves no room for couples of half-width {h}"
        )));
    }
    let mut points = Vec::with_capacity(2 * d);
    for k in 0..d {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64;
        let (s, c) = theta.sin_cos();
        points.push(Point {
            re: (ring - h) * c,
            im: (ring - h) * s,
        });
        points.push(Point {
            re: (ring + h) * c,
            im: (ring + h) * s,
        });
    }
    let z = PointSet::new(points);
    // The couples must actually be 2 eta-separated.
    let mut min_cross = f64::INFINITY;
    for i in 0..2 * d {
        for j in (i + 1)..2 * d {
            if i / 2 == j / 2 {
                continue;
            }
            min_cross = min_cross.min(z.points[i].dist(&z.points[j]));
        }
    }
    if min_cross < 2.0 * eta {
        return Err(Error::Geometry(format!(
            "couples are only {min_cross:.6} apart, need 2 eta = {}",
            2.0 * eta
        )));
    }
    Ok(z)
}

/// Compute the invariants of the paired-couples set and compare them against
/// their closed forms.
pub fn paired_example_report(
    d: usize,
    h: f64,
    eta: f64,
    d_target: f64,
) -> Result<PairedExampleReport> {
    let z = paired_couples_set(d, h, eta, d_target)?;
    let points = z.dedup();
    let enclosing = meb_of_slice(&points).radius;
    let kappa = 1.0 / (enclosing / h).log(d as f64);

    let omega_d_val = omega_d(&z, d)?;
    let omega_cd_val = omega_cd(&z, d)?;
    let rho_d_val = rho_d(&z, d)?;

    // One partition enumeration serves the whole alpha grid.
    let vectors = partition_radius_vectors(&points, d);
    let measure = |alpha: f64| -> f64 {
        vectors
            .iter()
            .map(|radii| l_alpha_norm(radii, alpha))
            .fold(f64::INFINITY, f64::min)
    };

    let mut alphas = vec![0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0];
    alphas.push(kappa);
    alphas.sort_by(f64::total_cmp);
    let alpha_rows: Vec<PairedAlphaRow> = alphas
        .iter()
        .map(|&alpha| {
            let cartan = measure(alpha);
            let closed_form_upper = (d as f64).powf(1.0 / alpha) * h;
            PairedAlphaRow {
                alpha,
                cartan,
                closed_form_upper,
                within_upper: cartan <= closed_form_upper * (1.0 + 1e-9),
            }
        })
        .collect();

    let cartan_kappa = measure(kappa);
    let e = std::f64::consts::E;
    let df = d as f64;
    let kd_bound_alpha1 = (6.0 * e / (df * h)).powi(d as i32);
    let kd_bound_kappa = (6.0 * e.powf(1.0 / kappa) / eta).powi(d as i32);
    let kd_bound_kappa_rewritten =
        (6.0 * (enclosing / h).powf(1.0 / df.ln()) / eta).powi(d as i32);

    Ok(PairedExampleReport {
        d,
        h,
        eta,
        enclosing_radius: enclosing,
        kappa,
        omega_d: omega_d_val,
        omega_d_expected: df * h,
        omega_cd: omega_cd_val,
        omega_cd_expected: df.sqrt() * h,
        rho_d: rho_d_val,
        alpha_rows,
        cartan_kappa,
        cartan_kappa_ge_eta: cartan_kappa >= eta * (1.0 - 1e-9),
        kd_bound_alpha1,
        kd_bound_kappa,
        kd_bound_kappa_rewritten,
        points,
    })
}
