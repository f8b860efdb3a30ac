//! Brute-force reference constructions and instrumentation.
//!
//! Everything here is deliberately independent of the incremental builder and
//! the kinetic loop: the only shared code is the kernel predicates, so a match
//! between engine and oracle is meaningful evidence. Costs are accepted as
//! quartic; verification scale is capped by the caller.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Triangulation, VertexId};
use crate::kernel::{self, ExactScalar, Point, Sign, WeightClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("need at least {need} distinct sites, got {got}")]
    TooFewSites { need: usize, got: usize },
    #[error("sites {i} and {j} coincide")]
    DuplicateSites { i: usize, j: usize },
    #[error("all sites are collinear")]
    AllCollinear,
}

/// A labeled point as the oracle sees it: the id must agree with the engine's
/// vertex id for the symbolic perturbation to resolve ties identically on
/// both sides.
#[derive(Debug, Clone, Copy)]
pub struct Site {
    pub id: VertexId,
    pub point: Point,
    pub kind: WeightClass,
}

/// A face-closed set of simplices with canonical ordering and set semantics.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplexSet {
    pub vertices: BTreeSet<VertexId>,
    /// Canonical pairs, smaller id first.
    pub edges: BTreeSet<(VertexId, VertexId)>,
    /// Ccw triples rotated so the smallest id is first.
    pub triangles: BTreeSet<[VertexId; 3]>,
}

pub fn canonical_edge(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Rotates a ccw triple so the smallest id leads; the cyclic (ccw) order is
/// preserved.
pub fn canonical_triangle(t: [VertexId; 3]) -> [VertexId; 3] {
    let k = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[k], t[(k + 1) % 3], t[(k + 2) % 3]]
}

impl SimplexSet {
    pub fn insert_triangle_with_faces(&mut self, t: [VertexId; 3]) {
        self.triangles.insert(canonical_triangle(t));
        for i in 0..3 {
            self.edges.insert(canonical_edge(t[i], t[(i + 1) % 3]));
            self.vertices.insert(t[i]);
        }
    }

    /// Total number of simplices, all dimensions.
    pub fn size(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.triangles.len()
    }

    /// The live simplices of a triangulation.
    pub fn from_triangulation(t: &Triangulation) -> SimplexSet {
        let mut s = SimplexSet::default();
        for v in t.live_vertices() {
            s.vertices.insert(v.id);
        }
        for (_, tri) in t.live_triangles() {
            s.insert_triangle_with_faces(tri.v);
        }
        s
    }

    /// The simplices of a triangulation all of whose vertices are Input kind,
    /// plus every live Input vertex.
    pub fn input_restriction(t: &Triangulation) -> SimplexSet {
        let mut s = SimplexSet::default();
        let is_input =
            |v: VertexId| !t.vertex(v).removed && t.vertex(v).kind == WeightClass::Input;
        for v in t.live_vertices() {
            if v.kind == WeightClass::Input {
                s.vertices.insert(v.id);
            }
        }
        for (_, tri) in t.live_triangles() {
            if tri.v.iter().all(|&v| is_input(v)) {
                s.insert_triangle_with_faces(tri.v);
            } else {
                for i in 0..3 {
                    let (u, v) = tri.edge(i);
                    if is_input(u) && is_input(v) {
                        self_insert_edge(&mut s, u, v);
                    }
                }
            }
        }
        s
    }

    /// Rewrites every id through `map`. Ids absent from the map are dropped
    /// with their simplices.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> SimplexSet {
        let mut s = SimplexSet::default();
        for v in &self.vertices {
            if let Some(&nv) = map.get(v) {
                s.vertices.insert(nv);
            }
        }
        for &(u, v) in &self.edges {
            if let (Some(&nu), Some(&nv)) = (map.get(&u), map.get(&v)) {
                s.edges.insert(canonical_edge(nu, nv));
            }
        }
        for t in &self.triangles {
            let mapped: Option<Vec<VertexId>> = t.iter().map(|v| map.get(v).copied()).collect();
            if let Some(m) = mapped {
                s.triangles.insert(canonical_triangle([m[0], m[1], m[2]]));
            }
        }
        s
    }

    pub fn is_subset_of(&self, other: &SimplexSet) -> bool {
        self.vertices.is_subset(&other.vertices)
            && self.edges.is_subset(&other.edges)
            && self.triangles.is_subset(&other.triangles)
    }
}

fn self_insert_edge(s: &mut SimplexSet, u: VertexId, v: VertexId) {
    s.edges.insert(canonical_edge(u, v));
    s.vertices.insert(u);
    s.vertices.insert(v);
}

/// One simplex, for diff reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Simplex {
    Vertex(VertexId),
    Edge(VertexId, VertexId),
    Triangle([VertexId; 3]),
}

impl std::fmt::Display for Simplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Simplex::Vertex(v) => write!(f, "{v}"),
            Simplex::Edge(u, v) => write!(f, "({u}, {v})"),
            Simplex::Triangle([a, b, c]) => write!(f, "({a}, {b}, {c})"),
        }
    }
}

/// Diff between an actual and an expected simplex set. Empty lists = pass.
#[derive(Debug, Clone, Default)]
pub struct EqualityReport {
    pub missing: Vec<Simplex>,
    pub extra: Vec<Simplex>,
}

impl EqualityReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

impl std::fmt::Display for EqualityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            return write!(f, "simplex sets match");
        }
        writeln!(f, "missing {} / extra {}:", self.missing.len(), self.extra.len())?;
        for s in &self.missing {
            writeln!(f, "  missing {s}")?;
        }
        for s in &self.extra {
            writeln!(f, "  extra   {s}")?;
        }
        Ok(())
    }
}

/// Lists simplices of `expected` absent from `actual` and vice versa.
pub fn verify_equal(actual: &SimplexSet, expected: &SimplexSet) -> EqualityReport {
    let mut report = EqualityReport::default();
    for v in expected.vertices.difference(&actual.vertices) {
        report.missing.push(Simplex::Vertex(*v));
    }
    for v in actual.vertices.difference(&expected.vertices) {
        report.extra.push(Simplex::Vertex(*v));
    }
    for &(u, v) in expected.edges.difference(&actual.edges) {
        report.missing.push(Simplex::Edge(u, v));
    }
    for &(u, v) in actual.edges.difference(&expected.edges) {
        report.extra.push(Simplex::Edge(u, v));
    }
    for t in expected.triangles.difference(&actual.triangles) {
        report.missing.push(Simplex::Triangle(*t));
    }
    for t in actual.triangles.difference(&expected.triangles) {
        report.extra.push(Simplex::Triangle(*t));
    }
    report
}

fn check_distinct(sites: &[Site]) -> Result<(), OracleError> {
    let mut seen: BTreeMap<Point, usize> = BTreeMap::new();
    for (i, s) in sites.iter().enumerate() {
        if let Some(&j) = seen.get(&s.point) {
            return Err(OracleError::DuplicateSites { i: j, j: i });
        }
        seen.insert(s.point, i);
    }
    Ok(())
}

/// Ground-truth Delaunay triangulation by exhaustive empty-circumball
/// testing: a ccw triple is kept iff no other site encroaches its ball under
/// the symbolic perturbation. All-collinear inputs yield the chain of
/// consecutive edges. O(n^4) worst case.
pub fn brute_delaunay(sites: &[Site]) -> Result<SimplexSet, OracleError> {
    if sites.len() < 2 {
        return Err(OracleError::TooFewSites {
            need: 2,
            got: sites.len(),
        });
    }
    check_distinct(sites)?;
    let mut out = SimplexSet::default();
    for s in sites {
        out.vertices.insert(s.id);
    }
    if triangulate_by_emptiness(sites, &ExactScalar::zero(), &mut out) {
        return Ok(out);
    }
    // All collinear: lexicographic point order is the order along the line.
    let mut order: Vec<&Site> = sites.iter().collect();
    order.sort_by(|a, b| a.point.cmp(&b.point));
    for pair in order.windows(2) {
        self_insert_edge(&mut out, pair[0].id, pair[1].id);
    }
    Ok(out)
}

/// Ground-truth weighted Delaunay triangulation at time `t`: a ccw triple is
/// kept iff no other weighted site encroaches its orthoball "just after" `t`,
/// under the same perturbation rule the engine uses. Submerged sites appear
/// in no simplex.
pub fn brute_weighted_delaunay(sites: &[Site], t: &ExactScalar) -> Result<SimplexSet, OracleError> {
    if sites.len() < 3 {
        return Err(OracleError::TooFewSites {
            need: 3,
            got: sites.len(),
        });
    }
    check_distinct(sites)?;
    let mut out = SimplexSet::default();
    if !triangulate_by_emptiness(sites, t, &mut out) {
        return Err(OracleError::AllCollinear);
    }
    Ok(out)
}

/// Shared enumeration core: inserts every triangle whose orthoball at time
/// `t` is empty under the perturbed predicate. Returns false if no ccw triple
/// exists.
fn triangulate_by_emptiness(sites: &[Site], t: &ExactScalar, out: &mut SimplexSet) -> bool {
    let n = sites.len();
    let t_iv = kernel::filter::Interval::enclosing(t);
    let is_zero_t = t.is_zero();
    let mut any_ccw = false;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (a, b, c) = match kernel::orient2d(sites[i].point, sites[j].point, sites[k].point)
                {
                    Sign::Positive => (i, j, k),
                    Sign::Negative => (i, k, j),
                    Sign::Zero => continue,
                };
                any_ccw = true;
                let mut empty = true;
                for (l, other) in sites.iter().enumerate() {
                    if l == i || l == j || l == k {
                        continue;
                    }
                    let pts = [
                        sites[a].point,
                        sites[b].point,
                        sites[c].point,
                        other.point,
                    ];
                    let kinds = [sites[a].kind, sites[b].kind, sites[c].kind, other.kind];
                    let ids = [
                        sites[a].id.sos_id(),
                        sites[b].id.sos_id(),
                        sites[c].id.sos_id(),
                        other.id.sos_id(),
                    ];
                    let sign = if is_zero_t {
                        kernel::incircle_future_sign_t0(&pts, &kinds, &ids)
                    } else {
                        kernel::incircle_future_sign_filtered(&pts, &kinds, &ids, t, t_iv)
                    };
                    if sign == Sign::Negative {
                        empty = false;
                        break;
                    }
                }
                if empty {
                    out.insert_triangle_with_faces([sites[a].id, sites[b].id, sites[c].id]);
                }
            }
        }
    }
    any_ccw
}

/// Exact spread: max over min pairwise distance. Comparisons are performed on
/// squared distances; only near-extremal pairs are re-checked exactly.
#[derive(Debug, Clone)]
pub struct Spread {
    pub ratio: f64,
    pub min_sq: ExactScalar,
    pub max_sq: ExactScalar,
}

pub fn spread(points: &[Point]) -> Result<Spread, OracleError> {
    if points.len() < 2 {
        return Err(OracleError::TooFewSites {
            need: 2,
            got: points.len(),
        });
    }
    let n = points.len();
    let mut min_f = f64::INFINITY;
    let mut max_f = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            if points[i] == points[j] {
                return Err(OracleError::DuplicateSites { i, j });
            }
            let d = points[i].sq_dist_f64(points[j]);
            min_f = min_f.min(d);
            max_f = max_f.max(d);
        }
    }
    // Re-verify near-extremal pairs exactly; the slack covers f64 rounding of
    // the squared distances.
    let lo_gate = min_f * (1.0 + 1e-9);
    let hi_gate = max_f * (1.0 - 1e-9);
    let mut min_sq: Option<ExactScalar> = None;
    let mut max_sq: Option<ExactScalar> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = points[i].sq_dist_f64(points[j]);
            if d <= lo_gate {
                let exact = kernel::sq_dist_exact(points[i], points[j]);
                if min_sq.as_ref().map(|m| exact < *m).unwrap_or(true) {
                    min_sq = Some(exact);
                }
            }
            if d >= hi_gate {
                let exact = kernel::sq_dist_exact(points[i], points[j]);
                if max_sq.as_ref().map(|m| exact > *m).unwrap_or(true) {
                    max_sq = Some(exact);
                }
            }
        }
    }
    let min_sq = min_sq.expect("nonempty");
    let max_sq = max_sq.expect("nonempty");
    let ratio = (&max_sq / &min_sq).to_f64().sqrt();
    Ok(Spread {
        ratio,
        min_sq,
        max_sq,
    })
}

/// `f = |Del_P|`: total simplex count of the face-closed set, which equals
/// the face count of the dual diagram.
pub fn face_count(s: &SimplexSet) -> usize {
    s.size()
}

/// The counters backing the empirical work bounds, one row per run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub f: usize,
    pub spread: f64,
    pub steiner_count: usize,
    pub flips: u64,
    pub potential_flips: u64,
    pub ratio_flip: f64,
    pub ratio_size: f64,
    pub wall_time_ms: f64,
}

/// `log2(spread + 2)`: the monotone variant of `log(spread)` used in all
/// bound ratios, safely nonzero at spread 1.
pub fn log_spread(spread: f64) -> f64 {
    (spread + 2.0).log2()
}

pub fn bound_report(
    n: usize,
    f: usize,
    spread: f64,
    steiner_count: usize,
    flips: u64,
    potential_flips: u64,
    wall_time_ms: f64,
) -> BoundReport {
    let ls = log_spread(spread);
    BoundReport {
        n,
        f,
        spread,
        steiner_count,
        flips,
        potential_flips,
        ratio_flip: flips as f64 / (f as f64 * ls),
        ratio_size: steiner_count as f64 / (n as f64 * ls),
        wall_time_ms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::WeightClass::{Input, Steiner};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn sites(pts: &[(f64, f64)], kind: WeightClass) -> Vec<Site> {
        pts.iter()
            .enumerate()
            .map(|(i, &(x, y))| Site {
                id: VertexId(i as u32),
                point: p(x, y),
                kind,
            })
            .collect()
    }

    #[test]
    fn three_generic_points() {
        let s = sites(&[(0., 0.), (3., 0.), (1., 2.)], Input);
        let d = brute_delaunay(&s).unwrap();
        assert_eq!(d.triangles.len(), 1);
        assert_eq!(d.edges.len(), 3);
        assert_eq!(d.vertices.len(), 3);
        assert_eq!(face_count(&d), 7);
    }

    #[test]
    fn two_points_and_collinear_chain() {
        let s = sites(&[(0., 0.), (1., 0.)], Input);
        let d = brute_delaunay(&s).unwrap();
        assert_eq!(d.triangles.len(), 0);
        assert_eq!(d.edges.len(), 1);
        assert_eq!(face_count(&d), 3);

        let s = sites(&[(0., 0.), (3., 0.), (1., 0.)], Input);
        let d = brute_delaunay(&s).unwrap();
        assert_eq!(d.triangles.len(), 0);
        let e: Vec<_> = d.edges.iter().copied().collect();
        assert_eq!(
            e,
            vec![
                (VertexId(0), VertexId(2)),
                (VertexId(1), VertexId(2))
            ]
        );
    }

    #[test]
    fn cocircular_square_is_deterministic() {
        let s = sites(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)], Input);
        let d = brute_delaunay(&s).unwrap();
        assert_eq!(d.triangles.len(), 2);
        let d1 = d.edges.contains(&(VertexId(0), VertexId(2)));
        let d2 = d.edges.contains(&(VertexId(1), VertexId(3)));
        assert!(d1 ^ d2, "exactly one diagonal: {:?}", d.edges);
        assert_eq!(brute_delaunay(&s).unwrap(), d);
    }

    #[test]
    fn weighted_equals_unweighted_for_zero_weights() {
        let s = sites(&[(0., 0.), (3., 0.), (1., 2.), (2.5, 2.5), (0.5, 1.5)], Steiner);
        let a = brute_delaunay(&s).unwrap();
        for t in [ExactScalar::zero(), ExactScalar::from_int(7)] {
            let b = brute_weighted_delaunay(&s, &t).unwrap();
            assert_eq!(a.triangles, b.triangles);
        }
    }

    #[test]
    fn weighted_quad_straddles_event() {
        // Hull quad a, q2, b, q1 with event at t = 1/2: before it the
        // Steiner diagonal (q1, q2), after it the input diagonal (a, b).
        let s = vec![
            Site { id: VertexId(0), point: p(0., 0.), kind: Input },
            Site { id: VertexId(1), point: p(2., 0.), kind: Input },
            Site { id: VertexId(2), point: p(1., 0.5), kind: Steiner },
            Site { id: VertexId(3), point: p(1., -1.), kind: Steiner },
        ];
        let before = brute_weighted_delaunay(&s, &ExactScalar::ratio(1, 4)).unwrap();
        assert!(before.edges.contains(&(VertexId(2), VertexId(3))));
        assert!(!before.edges.contains(&(VertexId(0), VertexId(1))));
        let after = brute_weighted_delaunay(&s, &ExactScalar::ratio(3, 4)).unwrap();
        assert!(after.edges.contains(&(VertexId(0), VertexId(1))));
        assert!(!after.edges.contains(&(VertexId(2), VertexId(3))));
        // At t = 0 mixed kinds reduce to the unweighted diagram.
        let at0 = brute_weighted_delaunay(&s, &ExactScalar::zero()).unwrap();
        assert_eq!(at0.triangles, before.triangles);
    }

    #[test]
    fn spread_examples() {
        let sp = spread(&[p(0., 0.), p(1., 0.)]).unwrap();
        assert_eq!(sp.ratio, 1.0);
        let sp = spread(&[p(0., 0.), p(1., 0.), p(3., 0.)]).unwrap();
        assert_eq!(sp.ratio, 3.0);
        assert!(matches!(
            spread(&[p(0., 0.), p(1., 1.), p(0., 0.)]),
            Err(OracleError::DuplicateSites { .. })
        ));
    }

    #[test]
    fn face_count_trivials() {
        assert_eq!(face_count(&SimplexSet::default()), 0);
    }

    #[test]
    fn verify_equal_reports_diffs() {
        let s = sites(&[(0., 0.), (3., 0.), (1., 2.)], Input);
        let a = brute_delaunay(&s).unwrap();
        let mut b = a.clone();
        assert!(verify_equal(&a, &b).passed());
        b.triangles.clear();
        b.insert_triangle_with_faces([VertexId(0), VertexId(2), VertexId(1)]);
        let report = verify_equal(&a, &b);
        assert!(!report.passed());
        assert!(!report.missing.is_empty());
        assert!(!report.extra.is_empty());
    }

    #[test]
    fn incremental_insertion_matches_brute_force() {
        // Deterministic pseudo-random points; ids in the oracle match the
        // engine's vertex ids (box corners 0..4, then inserts).
        let mut state = 0x243F_6A88_85A3_08D3u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 24) as f64) / (1u64 << 40) as f64
        };
        let mut t =
            Triangulation::init_box([p(-50., -50.), p(50., -50.), p(50., 50.), p(-50., 50.)])
                .unwrap();
        let mut all_sites: Vec<Site> = t
            .live_vertices()
            .map(|v| Site {
                id: v.id,
                point: v.point,
                kind: v.kind,
            })
            .collect();
        for _ in 0..50 {
            let x = (next() - 0.5) * 80.0;
            let y = (next() - 0.5) * 80.0;
            let id = t.insert_vertex(p(x, y), WeightClass::Input).unwrap();
            all_sites.push(Site {
                id,
                point: p(x, y),
                kind: WeightClass::Input,
            });
            assert!(t.validate().is_ok());
        }
        let engine = SimplexSet::from_triangulation(&t);
        let brute = brute_delaunay(&all_sites).unwrap();
        let report = verify_equal(&engine, &brute);
        assert!(report.passed(), "{report}");
    }
}
