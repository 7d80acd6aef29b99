//! Hausdorff distance between finite segment unions, the scaled prefix sets
//! S_n = r^-n P(D[:Q^n]) of a regular Dekking curve, the Cauchy-style
//! convergence table, and an iterated-function-system reference for the Koch
//! polyline.
//!
//! Distances are computed by arc-length sampling of one set against exact
//! point-to-segment distances into the other, so the reported value carries
//! a certified error of resolution/2 plus both embedding budgets. Exact
//! segment-union Hausdorff machinery is out of scope on purpose.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::curves::{scaling_info, DekkingCurve, ScalingInfo};
use crate::cyclotomic::CycNumber;
use crate::error::Error;
use crate::turtle::{SegmentSet, TurtleCurve};
use crate::Result;

/// Default cap on how many segments a scaled prefix may hold.
pub const DEFAULT_SEGMENT_CAP: u64 = 1 << 24;

/// A distance value together with its certified error radius.
#[derive(Clone, Copy, Debug)]
pub struct ApproxDistance {
    pub value: f64,
    pub error: f64,
}

/// One level of the convergence table.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub level: u32,
    /// d_H(S_n, S_(n+1)).
    pub step_distance: ApproxDistance,
    /// Q / |r|^n, the a-priori bound on the step distance.
    pub bound: f64,
    /// Geometric-series tail: Q / (|r|^n (1 - 1/|r|)), bounding d_H(S_n, K).
    pub tail_bound: f64,
    pub within_bound: bool,
}

/// Exact distance from a point to a segment (degenerate segments allowed).
pub fn point_segment_distance(p: Complex64, seg: &(Complex64, Complex64)) -> f64 {
    let d = seg.1 - seg.0;
    let len_sq = d.norm_sqr();
    if len_sq == 0.0 {
        return (p - seg.0).norm();
    }
    let t = ((p - seg.0).re * d.re + (p - seg.0).im * d.im) / len_sq;
    let t = t.clamp(0.0, 1.0);
    (p - (seg.0 + d * t)).norm()
}

/// Uniform grid over segment bounding boxes for exact nearest-segment
/// queries. The ring search keeps expanding until no unvisited cell can beat
/// the best distance found, so results equal the brute-force minimum.
struct SegmentGrid<'a> {
    segments: &'a [(Complex64, Complex64)],
    cells: Vec<Vec<u32>>,
    nx: usize,
    ny: usize,
    cell: f64,
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
}

impl<'a> SegmentGrid<'a> {
    fn new(segments: &'a [(Complex64, Complex64)]) -> Self {
        let mut min_x = f64::INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        let mut total_len = 0.0;
        for (a, b) in segments {
            min_x = min_x.min(a.re).min(b.re);
            max_x = max_x.max(a.re).max(b.re);
            min_y = min_y.min(a.im).min(b.im);
            max_y = max_y.max(a.im).max(b.im);
            total_len += (b - a).norm();
        }
        let extent = (max_x - min_x).max(max_y - min_y).max(1e-12);
        let avg_len = total_len / segments.len() as f64;
        let cell = avg_len.max(extent / 1024.0).max(1e-12);
        let nx = (((max_x - min_x) / cell).floor() as usize + 1).min(2048);
        let ny = (((max_y - min_y) / cell).floor() as usize + 1).min(2048);
        let mut grid = SegmentGrid {
            segments,
            cells: vec![Vec::new(); nx * ny],
            nx,
            ny,
            cell,
            min_x,
            min_y,
            max_x,
            max_y,
        };
        for (i, (a, b)) in segments.iter().enumerate() {
            let (cx0, cy0) = grid.cell_of(a.re.min(b.re), a.im.min(b.im));
            let (cx1, cy1) = grid.cell_of(a.re.max(b.re), a.im.max(b.im));
            for cy in cy0..=cy1 {
                for cx in cx0..=cx1 {
                    grid.cells[cy * grid.nx + cx].push(i as u32);
                }
            }
        }
        grid
    }

    fn cell_of(&self, x: f64, y: f64) -> (usize, usize) {
        let cx = (((x - self.min_x) / self.cell).floor() as isize).clamp(0, self.nx as isize - 1);
        let cy = (((y - self.min_y) / self.cell).floor() as isize).clamp(0, self.ny as isize - 1);
        (cx as usize, cy as usize)
    }

    /// Exact min distance from p to the segment union.
    fn min_distance(&self, p: Complex64) -> f64 {
        // distance from p to the bounding box; rays outside only get farther
        let qx = p.re.clamp(self.min_x, self.max_x);
        let qy = p.im.clamp(self.min_y, self.max_y);
        let d_out = ((p.re - qx).powi(2) + (p.im - qy).powi(2)).sqrt();
        let (cx, cy) = self.cell_of(qx, qy);
        let max_ring = self.nx.max(self.ny);
        let mut best = f64::INFINITY;
        for ring in 0..=max_ring {
            let lower = d_out.max((ring as f64 - 1.0) * self.cell);
            if lower >= best {
                break;
            }
            let x0 = cx.saturating_sub(ring);
            let x1 = (cx + ring).min(self.nx - 1);
            let y0 = cy.saturating_sub(ring);
            let y1 = (cy + ring).min(self.ny - 1);
            for y in y0..=y1 {
                for x in x0..=x1 {
                    // only cells at Chebyshev distance exactly `ring` are new
                    if x.abs_diff(cx).max(y.abs_diff(cy)) != ring {
                        continue;
                    }
                    for &idx in &self.cells[y * self.nx + x] {
                        let d = point_segment_distance(p, &self.segments[idx as usize]);
                        if d < best {
                            best = d;
                        }
                    }
                }
            }
        }
        best
    }
}

fn sample_points(seg: &(Complex64, Complex64), resolution: f64) -> Vec<Complex64> {
    let len = (seg.1 - seg.0).norm();
    let steps = (len / resolution).ceil() as usize;
    if steps == 0 {
        return vec![seg.0];
    }
    (0..=steps)
        .map(|i| seg.0 + (seg.1 - seg.0) * (i as f64 / steps as f64))
        .collect()
}

fn directed_distance(
    from: &SegmentSet,
    grid: &SegmentGrid<'_>,
    resolution: f64,
    parallel: bool,
) -> f64 {
    let per_segment = |seg: &(Complex64, Complex64)| {
        sample_points(seg, resolution)
            .into_iter()
            .map(|p| grid.min_distance(p))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    if parallel {
        crate::exec::max_f64(&from.segments, per_segment)
    } else {
        from.segments
            .iter()
            .map(per_segment)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn hausdorff_impl(
    a: &SegmentSet,
    b: &SegmentSet,
    resolution: f64,
    parallel: bool,
) -> Result<ApproxDistance> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySegmentSet);
    }
    if !(resolution > 0.0) {
        return Err(Error::InvalidParameter("resolution must be positive".into()));
    }
    let grid_b = SegmentGrid::new(&b.segments);
    let grid_a = SegmentGrid::new(&a.segments);
    let ab = directed_distance(a, &grid_b, resolution, parallel);
    let ba = directed_distance(b, &grid_a, resolution, parallel);
    Ok(ApproxDistance {
        value: ab.max(ba),
        error: resolution / 2.0 + a.error_budget + b.error_budget,
    })
}

/// Sampled Hausdorff distance: the true distance lies within `error` of
/// `value`, where the error combines the sampling step and both embedding
/// budgets.
pub fn hausdorff_distance(a: &SegmentSet, b: &SegmentSet, resolution: f64) -> Result<ApproxDistance> {
    hausdorff_impl(a, b, resolution, cfg!(feature = "parallel"))
}

/// Sequential twin of [`hausdorff_distance`]; used by the benches to compare
/// against the parallel lane.
#[cfg(feature = "parallel")]
pub fn hausdorff_distance_seq(
    a: &SegmentSet,
    b: &SegmentSet,
    resolution: f64,
) -> Result<ApproxDistance> {
    hausdorff_impl(a, b, resolution, false)
}

/// S_n = r^-n P(D[:Q^n]): the scaled polyline through the first Q^n steps,
/// scaled exactly in the field before embedding. The curve must be certified
/// regular.
pub fn scaled_prefix_set(
    curve: &DekkingCurve,
    level: u32,
    width: &BigRational,
    cap: u64,
) -> Result<SegmentSet> {
    let info = scaling_info(curve)?;
    scaled_prefix_set_with(curve, &info, level, width, cap)
}

/// Like [`scaled_prefix_set`] but reuses an already-computed [`ScalingInfo`].
pub fn scaled_prefix_set_with(
    curve: &DekkingCurve,
    info: &ScalingInfo,
    level: u32,
    width: &BigRational,
    cap: u64,
) -> Result<SegmentSet> {
    if !info.regular {
        return Err(Error::NotRegular { modulus: info.modulus.clone() });
    }
    let count = info
        .big_q
        .checked_pow(level)
        .ok_or(Error::TooLarge { what: format!("Q^{level}"), limit: u64::MAX })?;
    if count > cap {
        return Err(Error::TooLarge { what: format!("Q^{level} = {count} segments"), limit: cap });
    }
    let turtle = curve.to_turtle();
    let points = turtle.points(count as usize + 1);
    let shrink = info.r.inv()?.pow(level as u64);
    let scaled: Vec<CycNumber> = crate::exec::map_collect(&points, |p| p.mul(&shrink));
    SegmentSet::from_exact_points(&scaled, width)
}

/// Step distances d_H(S_n, S_(n+1)) for n = 0..n_max-1, with the theoretical
/// bounds Q/|r|^n and the geometric tail bounds.
pub fn convergence_report(
    curve: &DekkingCurve,
    n_max: u32,
    resolution: f64,
    width: &BigRational,
    cap: u64,
) -> Result<Vec<ConvergenceRow>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("need at least one level".into()));
    }
    let info = scaling_info(curve)?;
    if !info.regular {
        return Err(Error::NotRegular { modulus: info.modulus.clone() });
    }
    // conservative: a smaller |r| only loosens the bound
    let r_lo = info.modulus.lower.to_f64().unwrap_or(1.0).max(1.0 + 1e-12);
    let q = info.big_q as f64;
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut current = scaled_prefix_set_with(curve, &info, 0, width, cap)?;
    for n in 0..n_max {
        let next = scaled_prefix_set_with(curve, &info, n + 1, width, cap)?;
        let step = hausdorff_distance(&current, &next, resolution)?;
        let bound = q / r_lo.powi(n as i32);
        let tail_bound = bound / (1.0 - 1.0 / r_lo);
        rows.push(ConvergenceRow {
            level: n,
            step_distance: step,
            bound,
            tail_bound,
            within_bound: step.value - step.error <= bound,
        });
        current = next;
    }
    Ok(rows)
}

/// Level-n polyline of the Koch curve on [0, 1], by the standard four-map
/// refinement with the middle vertex at (1/2, -sqrt(3)/6). This is the
/// independent geometric reference the scaled prefixes are compared against.
pub fn koch_reference(level: u32) -> SegmentSet {
    let mut points = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let bump = Complex64::new(0.5, -(3f64.sqrt()) / 6.0);
    for _ in 0..level {
        let mut next = Vec::with_capacity(points.len() * 4);
        for w in points.windows(2) {
            let (a, b) = (w[0], w[1]);
            let d = b - a;
            next.push(a);
            next.push(a + d / 3.0);
            next.push(a + d * bump);
            next.push(a + d * 2.0 / 3.0);
        }
        next.push(*points.last().expect("nonempty"));
        points = next;
    }
    // pure f64 construction; rounding stays far below any resolution in use
    SegmentSet::from_embedded_points(&points, 1e-12).expect("at least two points")
}

/// Scaled, rescaled prefix of an arbitrary turtle curve under a similarity
/// witness: r^-n * c * P(T[:steps]), embedded with certified width. Used to
/// exhibit that a certified curve approaches the same limit as its target.
pub fn witness_scaled_prefix(
    curve: &TurtleCurve,
    scale: &CycNumber,
    steps: u64,
    shrink: &CycNumber,
    width: &BigRational,
) -> Result<SegmentSet> {
    if steps == 0 {
        return Err(Error::InvalidParameter("need at least one step".into()));
    }
    let points = curve.points(steps as usize + 1);
    let factor = scale.mul(shrink);
    let scaled: Vec<CycNumber> = crate::exec::map_collect(&points, |p| p.mul(&factor));
    SegmentSet::from_exact_points(&scaled, width)
}

pub fn default_embed_width() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10u64).pow(12))
}
