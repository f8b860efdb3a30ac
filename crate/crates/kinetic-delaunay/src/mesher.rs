//! Voronoi refinement: produce a well-spaced superset of the input inside a
//! bounding box.
//!
//! All input points are inserted first, then a FIFO clean loop repeatedly
//! splits the cell of any vertex whose aspect ratio exceeds `tau` by
//! inserting the cell's farthest Voronoi vertex (the farthest circumcenter of
//! the vertex's incident triangles). Circumcenters falling outside the box
//! are clamped onto its boundary; box/hull vertices are exempt from the
//! aspect requirement. Aspect comparisons are exact: the squared ratio is a
//! rational number compared against `tau^2`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::complex::{ComplexError, Triangulation, VertexId};
use crate::kernel::{self, ExactScalar, Point, WeightClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MesherError {
    #[error("input point set is empty")]
    EmptyInput,
    #[error("input points {i} and {j} coincide")]
    DuplicateInput { i: usize, j: usize },
    #[error("invalid mesher config: {0}")]
    InvalidConfig(&'static str),
    #[error("refinement exceeded the {limit}-point safety cap")]
    MaxPointsExceeded { limit: usize },
    #[error("refinement stalled with vertices above the aspect bound")]
    RefinementStalled,
    #[error("aspect ratio is undefined for hull vertices")]
    HullVertex,
    #[error("triangulation error during refinement: {0}")]
    Complex(#[from] ComplexError),
}

/// Refinement parameters. `tau` must exceed 2 for termination; the derived
/// feature-size constant is `K = 2*tau/(tau - 2)`.
#[derive(Debug, Clone)]
pub struct MesherConfig {
    pub tau: ExactScalar,
    pub box_scale: ExactScalar,
    pub max_points: usize,
}

impl Default for MesherConfig {
    fn default() -> Self {
        MesherConfig {
            tau: ExactScalar::from_int(3),
            box_scale: ExactScalar::from_int(3),
            max_points: 500_000,
        }
    }
}

impl MesherConfig {
    pub fn validate(&self) -> Result<(), MesherError> {
        if self.tau <= ExactScalar::from_int(2) {
            return Err(MesherError::InvalidConfig("tau must be greater than 2"));
        }
        if self.box_scale < ExactScalar::from_int(2) {
            return Err(MesherError::InvalidConfig("box-scale must be at least 2"));
        }
        if self.max_points == 0 {
            return Err(MesherError::InvalidConfig("max-points must be positive"));
        }
        Ok(())
    }

    /// `K = 2*tau/(tau-2)` from the feature-size condition.
    pub fn feature_constant(&self) -> ExactScalar {
        let two = ExactScalar::from_int(2);
        &(&two * &self.tau) / &(&self.tau - &two)
    }
}

/// Voronoi-cell aspect ratio of a non-hull vertex, carried as the exact
/// squared ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aspect {
    pub ratio_sq: ExactScalar,
}

impl Aspect {
    pub fn as_f64(&self) -> f64 {
        self.ratio_sq.to_f64().sqrt()
    }

    pub fn exceeds(&self, tau: &ExactScalar) -> bool {
        self.ratio_sq > tau * tau
    }
}

/// A well-spaced superset with its triangulation and bookkeeping.
#[derive(Debug)]
pub struct MeshResult {
    pub triangulation: Triangulation,
    pub steiner_count: usize,
    /// Final exact aspect of every live non-hull vertex.
    pub aspect_report: Vec<(VertexId, Aspect)>,
}

/// Axis-aligned bounding square: centered on the input's bounding box, side
/// `scale * max(extent, 1)`, corners ccw from the lower-left. All input
/// points end up strictly inside.
pub fn bounding_box(points: &[Point], scale: &ExactScalar) -> Result<[Point; 4], MesherError> {
    if points.is_empty() {
        return Err(MesherError::EmptyInput);
    }
    let min_x = points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let max_x = points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let max_y = points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    let w = ExactScalar::from_f64(max_x) - ExactScalar::from_f64(min_x);
    let h = ExactScalar::from_f64(max_y) - ExactScalar::from_f64(min_y);
    let extent = if w < h { h.clone() } else { w.clone() };
    let one = ExactScalar::from_int(1);
    let extent = if extent < one { one } else { extent };
    let side = scale * &extent;
    let two = ExactScalar::from_int(2);
    let cx = &(ExactScalar::from_f64(min_x) + ExactScalar::from_f64(max_x)) / &two;
    let cy = &(ExactScalar::from_f64(min_y) + ExactScalar::from_f64(max_y)) / &two;
    let half = &side / &two;
    let lo_x = round_down(&(&cx - &half));
    let hi_x = round_up(&(&cx + &half));
    let lo_y = round_down(&(&cy - &half));
    let hi_y = round_up(&(&cy + &half));
    for p in points {
        assert!(
            p.x > lo_x && p.x < hi_x && p.y > lo_y && p.y < hi_y,
            "input must be strictly inside the bounding box"
        );
    }
    Ok([
        Point::new(lo_x, lo_y),
        Point::new(hi_x, lo_y),
        Point::new(hi_x, hi_y),
        Point::new(lo_x, hi_y),
    ])
}

fn round_down(v: &ExactScalar) -> f64 {
    let mut f = v.to_f64();
    for _ in 0..4 {
        if ExactScalar::from_f64(f) <= *v {
            return f;
        }
        f = f.next_down();
    }
    f
}

fn round_up(v: &ExactScalar) -> f64 {
    let mut f = v.to_f64();
    for _ in 0..4 {
        if ExactScalar::from_f64(f) >= *v {
            return f;
        }
        f = f.next_up();
    }
    f
}

/// Exact aspect ratio of the Voronoi cell of `v`: out-radius over in-radius,
/// where the out-radius is the farthest circumcenter of `v`'s incident
/// triangles and the in-radius is half the distance to the nearest Delaunay
/// neighbor.
pub fn aspect(t: &Triangulation, v: VertexId) -> Result<Aspect, MesherError> {
    Ok(aspect_with_center(t, v)?.0)
}

/// Aspect plus the farthest circumcenter (the refinement insertion point).
fn aspect_with_center(
    t: &Triangulation,
    v: VertexId,
) -> Result<(Aspect, (ExactScalar, ExactScalar)), MesherError> {
    if t.vertex(v).removed || t.is_hull_vertex(v) {
        return Err(MesherError::HullVertex);
    }
    let p = t.vertex(v).point;
    let mut out_sq: Option<(ExactScalar, (ExactScalar, ExactScalar))> = None;
    for tri_ref in t.star(v) {
        let tri = t.triangle(tri_ref);
        let [a, b, c] = tri.v.map(|u| t.vertex(u).point);
        let ball = kernel::circumball(a, b, c).expect("live triangles are non-degenerate");
        let dx = &ball.center.0 - &ExactScalar::from_f64(p.x);
        let dy = &ball.center.1 - &ExactScalar::from_f64(p.y);
        let d_sq = &(&dx * &dx) + &(&dy * &dy);
        if out_sq.as_ref().map(|(m, _)| d_sq > *m).unwrap_or(true) {
            out_sq = Some((d_sq, ball.center));
        }
    }
    let (out_sq, far_center) = out_sq.expect("non-hull vertex has incident triangles");
    let mut in_sq: Option<ExactScalar> = None;
    for u in t.neighbor_vertices(v) {
        let d_sq = kernel::sq_dist_exact(p, t.vertex(u).point);
        if in_sq.as_ref().map(|m| d_sq < *m).unwrap_or(true) {
            in_sq = Some(d_sq);
        }
    }
    let in_sq = in_sq.expect("non-hull vertex has neighbors");
    // aspect^2 = out^2 / (min_dist/2)^2 = 4 * out^2 / min_dist^2.
    let ratio_sq = &(&ExactScalar::from_int(4) * &out_sq) / &in_sq;
    Ok((Aspect { ratio_sq }, far_center))
}

/// Refines `points` into a well-spaced superset: box corners plus inputs plus
/// Steiner points, every non-hull vertex with aspect at most `tau`.
/// Deterministic for fixed input and config.
pub fn refine(points: &[Point], cfg: &MesherConfig) -> Result<MeshResult, MesherError> {
    cfg.validate()?;
    if points.is_empty() {
        return Err(MesherError::EmptyInput);
    }
    // Duplicate scan via sorted index order.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(MesherError::DuplicateInput { i, j });
        }
    }

    let corners = bounding_box(points, &cfg.box_scale)?;
    let box_lo = (corners[0].x, corners[0].y);
    let box_hi = (corners[2].x, corners[2].y);
    let mut tri = Triangulation::init_box(corners)?;
    for &p in points {
        tri.insert_vertex(p, WeightClass::Input)?;
    }

    let tau_sq = &cfg.tau * &cfg.tau;
    let mut queue: VecDeque<VertexId> = tri
        .live_vertices()
        .filter(|v| v.kind == WeightClass::Input)
        .map(|v| v.id)
        .collect();
    let mut steiner_count = 0usize;
    loop {
        let mut inserted_this_round = 0usize;
        while let Some(v) = queue.pop_front() {
            if tri.vertex(v).removed || tri.is_hull_vertex(v) {
                continue;
            }
            let (aspect, far_center) = aspect_with_center(&tri, v)?;
            if aspect.ratio_sq <= tau_sq {
                continue;
            }
            if tri.vertex_count() >= cfg.max_points {
                return Err(MesherError::MaxPointsExceeded {
                    limit: cfg.max_points,
                });
            }
            let x = far_center.0.to_f64().clamp(box_lo.0, box_hi.0);
            let y = far_center.1.to_f64().clamp(box_lo.1, box_hi.1);
            match tri.insert_vertex(Point::new(x, y), WeightClass::Steiner) {
                Ok(new_id) => {
                    steiner_count += 1;
                    inserted_this_round += 1;
                    queue.push_back(v);
                    if !tri.is_hull_vertex(new_id) {
                        queue.push_back(new_id);
                    }
                    for u in tri.neighbor_vertices(new_id) {
                        queue.push_back(u);
                    }
                }
                // Rounding collisions: leave v to the final sweep.
                Err(ComplexError::DuplicatePoint { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
        // Post-condition sweep: requeue any violator, give up only if a full
        // round made no progress.
        let violators: Vec<VertexId> = tri
            .live_vertices()
            .filter(|v| !tri.is_hull_vertex(v.id))
            .filter_map(|v| {
                let a = aspect(&tri, v.id).ok()?;
                a.exceeds(&cfg.tau).then_some(v.id)
            })
            .collect();
        if violators.is_empty() {
            break;
        }
        if inserted_this_round == 0 {
            return Err(MesherError::RefinementStalled);
        }
        queue.extend(violators);
    }

    let mut aspect_report = Vec::new();
    for v in tri.live_vertices().map(|v| v.id).collect::<Vec<_>>() {
        if !tri.is_hull_vertex(v) {
            aspect_report.push((v, aspect(&tri, v)?));
        }
    }
    tri.validate()
        .map_err(|e| MesherError::Complex(ComplexError::Validation(e)))?;
    Ok(MeshResult {
        triangulation: tri,
        steiner_count,
        aspect_report,
    })
}

/// Ruppert feature size with respect to a point set: distance to the second
/// nearest point of the set (counting the query point itself when it belongs
/// to the set). Returned squared, exact.
pub fn feature_size_sq(x: Point, set: &[Point]) -> ExactScalar {
    let mut d1: Option<ExactScalar> = None;
    let mut d2: Option<ExactScalar> = None;
    for &p in set {
        let d = kernel::sq_dist_exact(x, p);
        if d1.as_ref().map(|m| d < *m).unwrap_or(true) {
            d2 = d1.take();
            d1 = Some(d);
        } else if d2.as_ref().map(|m| d < *m).unwrap_or(true) {
            d2 = Some(d);
        }
    }
    d2.expect("feature size needs at least two points")
}
