//! The kinetic flip loop: maintain the weighted Delaunay triangulation as
//! the time parameter grows, driving Steiner points out of the complex.
//!
//! Each interior edge carries at most one live certificate in a min-heap: the
//! exact time at which the determinant of its four surrounding vertices
//! vanishes. Certificates are invalidated lazily — an event stores the
//! `(slot, stamp)` pairs of its two triangles and is discarded as stale if
//! either slot changed since scheduling. After every performed flip the new
//! facets and the quad boundary edges are re-checked and rescheduled.
//!
//! Events with equal exact times are ordered by their canonical edge key, so
//! runs are deterministic. Simultaneous cascades (several certificates with
//! the same root) are handled by allowing events scheduled at the current
//! time; since every four-point determinant is linear in time, each
//! configuration can fire at most once and the loop terminates.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, TriRef, Triangulation, VertexId};
use crate::kernel::{self, ExactScalar, Sign, WeightClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KineticError {
    #[error("kinetic loop finished with interior non-input {vertex}")]
    BoundaryLemma { vertex: VertexId },
    #[error("postprocess expects a completed run")]
    RunIncomplete,
    #[error("triangulation error in kinetic phase: {0}")]
    Complex(#[from] ComplexError),
}

/// A scheduled certificate: the exact failure time of one interior edge,
/// pinned to the two triangle configurations that existed when it was
/// computed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlipEvent {
    pub time: ExactScalar,
    /// Canonical vertex pair, smaller id first.
    pub edge: (VertexId, VertexId),
    /// `(slot, stamp)` for the triangle carrying the ccw half-edge and for
    /// its neighbor.
    pub stamps: [(TriRef, u64); 2],
}

/// Outcome of processing one heap pop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    PerformedFlip22,
    PerformedFlip31,
    Stale,
    Exhausted,
}

/// What kind of flip a trace record describes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlipKind {
    Flip22 {
        old_edge: (u32, u32),
        new_edge: (u32, u32),
    },
    Flip31 {
        removed: u32,
        triangle: [u32; 3],
    },
}

/// One performed flip, with its exact event time as a rational string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub time: String,
    #[serde(flatten)]
    pub kind: FlipKind,
}

impl std::fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            FlipKind::Flip22 { old_edge, new_edge } => write!(
                f,
                "{} flip22 edge=({},{}) new=({},{})",
                self.time, old_edge.0, old_edge.1, new_edge.0, new_edge.1
            ),
            FlipKind::Flip31 { removed, triangle } => write!(
                f,
                "{} flip31 removed={} tri=({},{},{})",
                self.time, removed, triangle[0], triangle[1], triangle[2]
            ),
        }
    }
}

/// Counters backing the work bounds, plus diagnostics.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub flips_22: u64,
    pub flips_31: u64,
    pub potential_flips_seen: u64,
    pub stale_pops: u64,
    pub heap_peak: usize,
    /// Dispatch situations that cannot occur in perturbed general position,
    /// surfaced as stale pops.
    pub anomalies: u64,
    /// Filled by the surrounding pipeline.
    pub steiner_count: usize,
    pub f: usize,
    pub spread: f64,
    pub scaffolding_count: usize,
}

impl RunStats {
    pub fn flips_total(&self) -> u64 {
        self.flips_22 + self.flips_31
    }
}

/// The kinetic phase state: current time, complex, certificate heap, stats.
pub struct KineticState {
    t_now: ExactScalar,
    tri: Triangulation,
    heap: BinaryHeap<Reverse<FlipEvent>>,
    pub stats: RunStats,
    trace: Option<Vec<TraceRecord>>,
    initial_vertices: usize,
    seeded: bool,
}

impl KineticState {
    pub fn new(tri: Triangulation) -> KineticState {
        let initial_vertices = tri.live_vertex_count();
        KineticState {
            t_now: ExactScalar::zero(),
            tri,
            heap: BinaryHeap::new(),
            stats: RunStats::default(),
            trace: None,
            initial_vertices,
            seeded: false,
        }
    }

    /// Record performed flips for the event trace.
    pub fn enable_trace(&mut self) {
        self.trace = Some(Vec::new());
    }

    pub fn take_trace(&mut self) -> Vec<TraceRecord> {
        self.trace.take().unwrap_or_default()
    }

    pub fn t_now(&self) -> &ExactScalar {
        &self.t_now
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn into_triangulation(self) -> Triangulation {
        self.tri
    }

    pub fn heap_len(&self) -> usize {
        self.heap.len()
    }

    /// Computes the certificate of an interior edge at the current time.
    ///
    /// The determinant of the four surrounding vertices is `alpha*t + beta`,
    /// positive while the current diagonal is valid. An event is scheduled at
    /// the exact root when the determinant is strictly decreasing; ties at
    /// the current time are scheduled at the current time and ordered by the
    /// edge key. Identically-degenerate quads resolve through the symbolic
    /// perturbation and normally yield no event.
    pub fn certificate(&mut self, u: VertexId, v: VertexId) -> Option<FlipEvent> {
        let (t1, t2) = self.tri.edge_pair(u, v)?;
        let tri1 = self.tri.triangle(t1);
        let i = (0..3).find(|&i| tri1.edge(i) == (u, v))?;
        let (w, eu, ev, x, _) = self.tri.flip_quad(t1, i)?;
        debug_assert_eq!((eu, ev), (u, v));
        let quad = [w, eu, ev, x];
        let pts = quad.map(|q| self.tri.vertex(q).point);
        let kinds = quad.map(|q| self.tri.vertex(q).kind);
        let parts = kernel::incircle_parts(&pts, &kinds);
        let value = ExactScalar::from_rational(
            &parts.alpha * self.t_now.as_rational() + &parts.beta,
        );
        let alpha = ExactScalar::from_rational(parts.alpha.clone());
        let time = match value.sign() {
            Sign::Positive => {
                if alpha.is_negative() {
                    let beta = ExactScalar::from_rational(parts.beta.clone());
                    -beta / alpha
                } else {
                    return None;
                }
            }
            Sign::Zero => match alpha.sign() {
                Sign::Positive => return None,
                Sign::Negative => self.t_now.clone(),
                Sign::Zero => {
                    // Identically degenerate in t: valid resolution is the
                    // perturbed one; repair immediately if the complex holds
                    // the disfavored diagonal.
                    let ids = quad.map(|q| q.sos_id());
                    let s = kernel::incircle_future_sign(&pts, &kinds, &ids, &self.t_now);
                    if s == Sign::Negative {
                        self.stats.anomalies += 1;
                        self.t_now.clone()
                    } else {
                        return None;
                    }
                }
            },
            Sign::Negative => {
                // Certificates of a maintained complex are never negative;
                // repair defensively.
                self.stats.anomalies += 1;
                self.t_now.clone()
            }
        };
        let edge = if u < v { (u, v) } else { (v, u) };
        Some(FlipEvent {
            time,
            edge,
            stamps: [
                (t1, self.tri.triangle(t1).stamp),
                (t2, self.tri.triangle(t2).stamp),
            ],
        })
    }

    /// Certificate attempt plus scheduling; counts one potential flip per
    /// interior edge examined.
    fn try_schedule(&mut self, u: VertexId, v: VertexId) {
        if self.tri.edge_pair(u, v).is_none() {
            return;
        }
        self.stats.potential_flips_seen += 1;
        if let Some(ev) = self.certificate(u, v) {
            self.heap.push(Reverse(ev));
            self.stats.heap_peak = self.stats.heap_peak.max(self.heap.len());
        }
    }

    /// Checks every interior edge once and schedules its certificate.
    pub fn seed(&mut self) {
        assert!(!self.seeded, "seed runs once");
        assert!(self.t_now.is_zero());
        assert!(self.heap.is_empty());
        let edges: Vec<_> = self.tri.interior_edges().collect();
        for (u, v) in edges {
            self.try_schedule(u, v);
        }
        self.seeded = true;
    }

    /// Pops and processes the next certificate.
    pub fn step(&mut self) -> StepOutcome {
        let Some(Reverse(ev)) = self.heap.pop() else {
            return StepOutcome::Exhausted;
        };
        let [(t1, s1), (t2, s2)] = ev.stamps;
        let tri1 = self.tri.triangle(t1);
        let tri2 = self.tri.triangle(t2);
        if !tri1.alive || tri1.stamp != s1 || !tri2.alive || tri2.stamp != s2 {
            self.stats.stale_pops += 1;
            return StepOutcome::Stale;
        }
        debug_assert!(ev.time >= self.t_now, "events pop in time order");
        let (u, v) = ev.edge;
        let Some(i) = (0..3).find(|&i| self.tri.triangle(t1).edge(i) == (u, v)) else {
            self.stats.anomalies += 1;
            self.stats.stale_pops += 1;
            return StepOutcome::Stale;
        };
        self.t_now = ev.time;
        let (w, _, _, x, _) = self.tri.flip_quad(t1, i).expect("stamped pair shares the edge");
        let pw = self.tri.vertex(w).point;
        let px = self.tri.vertex(x).point;
        let pu = self.tri.vertex(u).point;
        let pv = self.tri.vertex(v).point;
        let su = kernel::orient2d(pw, px, pu);
        let sv = kernel::orient2d(pw, px, pv);
        let strictly_convex = (su == Sign::Positive && sv == Sign::Negative)
            || (su == Sign::Negative && sv == Sign::Positive);
        if strictly_convex {
            let new_edge = self
                .tri
                .flip22(t1, i)
                .expect("strictly convex interior quad flips");
            self.stats.flips_22 += 1;
            if let Some(trace) = &mut self.trace {
                trace.push(TraceRecord {
                    time: self.t_now.to_string(),
                    kind: FlipKind::Flip22 {
                        old_edge: (ev.edge.0 .0, ev.edge.1 .0),
                        new_edge: (new_edge.0 .0, new_edge.1 .0),
                    },
                });
            }
            // Recheck the new diagonal and the quad boundary.
            self.try_schedule(new_edge.0, new_edge.1);
            for (a, b) in [(u, w), (w, v), (v, x), (x, u)] {
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                self.try_schedule(a, b);
            }
            return StepOutcome::PerformedFlip22;
        }
        // Reflex quad: one edge endpoint lies strictly inside the triangle
        // of the other three and must be a Steiner/Box vertex of degree 3.
        let reflex = if point_strictly_inside(pw, px, pv, pu) {
            Some(u)
        } else if point_strictly_inside(pw, px, pu, pv) {
            Some(v)
        } else {
            None
        };
        let Some(r) = reflex else {
            self.stats.anomalies += 1;
            self.stats.stale_pops += 1;
            return StepOutcome::Stale;
        };
        if self.tri.vertex(r).kind == WeightClass::Input
            || self.tri.is_hull_vertex(r)
            || self.tri.vertex_degree(r) != 3
        {
            // Cannot occur in perturbed general position.
            self.stats.anomalies += 1;
            self.stats.stale_pops += 1;
            return StepOutcome::Stale;
        }
        let new_tri = self.tri.flip31(r).expect("interior degree-3 vertex");
        self.stats.flips_31 += 1;
        let tri = self.tri.triangle(new_tri).clone();
        if let Some(trace) = &mut self.trace {
            trace.push(TraceRecord {
                time: self.t_now.to_string(),
                kind: FlipKind::Flip31 {
                    removed: r.0,
                    triangle: tri.v.map(|q| q.0),
                },
            });
        }
        for i in 0..3 {
            let (a, b) = tri.edge(i);
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            self.try_schedule(a, b);
        }
        StepOutcome::PerformedFlip31
    }

    /// Runs the loop to exhaustion, then checks that every surviving
    /// non-input vertex sits on the hull.
    pub fn run(&mut self) -> Result<(), KineticError> {
        assert!(self.seeded, "seed before run");
        while self.step() != StepOutcome::Exhausted {}
        debug_assert!(self.tri.live_vertex_count() <= self.initial_vertices);
        self.check_boundary_lemma()
    }

    /// Exact form of the termination guarantee: Steiner and Box vertices
    /// still present after the run are hull vertices.
    pub fn check_boundary_lemma(&self) -> Result<(), KineticError> {
        for v in self.tri.live_vertices() {
            if v.kind != WeightClass::Input && !self.tri.is_hull_vertex(v.id) {
                return Err(KineticError::BoundaryLemma { vertex: v.id });
            }
        }
        Ok(())
    }

    /// Removes all non-input vertices and their incident simplices, leaving
    /// the Delaunay complex of the input. Returns the number of simplices
    /// (all dimensions) deleted.
    pub fn postprocess(&mut self) -> Result<usize, KineticError> {
        if self.heap.iter().any(|Reverse(ev)| {
            let [(t1, s1), (t2, s2)] = ev.stamps;
            let tri1 = self.tri.triangle(t1);
            let tri2 = self.tri.triangle(t2);
            tri1.alive && tri1.stamp == s1 && tri2.alive && tri2.stamp == s2
        }) {
            return Err(KineticError::RunIncomplete);
        }
        self.check_boundary_lemma()?;
        let before = count_simplices(&self.tri, false);
        let kept = count_simplices(&self.tri, true);
        self.tri.remove_non_input();
        let scaffolding = before - kept;
        self.stats.scaffolding_count = scaffolding;
        Ok(scaffolding)
    }
}

/// Counts live simplices; with `input_only`, only those whose vertices are
/// all Input kind.
fn count_simplices(tri: &Triangulation, input_only: bool) -> usize {
    let keep = |v: VertexId| !input_only || tri.vertex(v).kind == WeightClass::Input;
    let mut vertices = 0usize;
    for v in tri.live_vertices() {
        if keep(v.id) {
            vertices += 1;
        }
    }
    let mut edges = std::collections::BTreeSet::new();
    let mut triangles = 0usize;
    for (_, t) in tri.live_triangles() {
        if t.v.iter().all(|&v| keep(v)) {
            triangles += 1;
        }
        for i in 0..3 {
            let (a, b) = t.edge(i);
            if keep(a) && keep(b) {
                edges.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    vertices + edges.len() + triangles
}

fn point_strictly_inside(
    a: kernel::Point,
    b: kernel::Point,
    c: kernel::Point,
    q: kernel::Point,
) -> bool {
    let o = kernel::orient2d(a, b, c);
    if o == Sign::Zero {
        return false;
    }
    let (a, b, c) = if o == Sign::Positive { (a, b, c) } else { (a, c, b) };
    kernel::orient2d(a, b, q) == Sign::Positive
        && kernel::orient2d(b, c, q) == Sign::Positive
        && kernel::orient2d(c, a, q) == Sign::Positive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{EventTime, Point};
    use crate::mesher::{refine, MesherConfig};
    use crate::oracle::{self, Site, SimplexSet};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    const I: WeightClass = WeightClass::Input;
    const S: WeightClass = WeightClass::Steiner;

    /// The four-point instance whose single event fires at t = 1/2: inputs
    /// a, b on the x-axis, Steiner points above and below, diagonal (q1, q2)
    /// at time zero.
    fn handcrafted_quad() -> Triangulation {
        Triangulation::from_triangles(
            &[
                (p(0., 0.), I),
                (p(2., 0.), I),
                (p(1., 0.5), S),
                (p(1., -1.), S),
            ],
            &[[0, 3, 2], [1, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn certificate_of_weighted_quad() {
        let mut state = KineticState::new(handcrafted_quad());
        let ev = state.certificate(VertexId(2), VertexId(3)).unwrap();
        assert_eq!(ev.time, ExactScalar::ratio(1, 2));
        assert_eq!(ev.edge, (VertexId(2), VertexId(3)));
    }

    #[test]
    fn certificate_none_for_all_input_quad() {
        let tri = Triangulation::from_triangles(
            &[
                (p(0., 0.), I),
                (p(2., 0.), I),
                (p(1., 0.5), I),
                (p(1., -1.), I),
            ],
            &[[0, 3, 2], [1, 2, 3]],
        )
        .unwrap();
        let mut state = KineticState::new(tri);
        assert!(state.certificate(VertexId(2), VertexId(3)).is_none());
    }

    #[test]
    fn certificate_none_for_past_root() {
        // Root of this quad's determinant is -3/2.
        let tri = Triangulation::from_triangles(
            &[
                (p(0., 0.), I),
                (p(1., 0.), I),
                (p(0.5, 1.), I),
                (p(0.5, -1.), S),
            ],
            &[[0, 1, 2], [1, 0, 3]],
        )
        .unwrap();
        let mut state = KineticState::new(tri);
        assert!(state.certificate(VertexId(0), VertexId(1)).is_none());
    }

    #[test]
    fn seed_box_only_schedules_nothing() {
        let tri = Triangulation::init_box([p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap();
        let mut state = KineticState::new(tri);
        state.seed();
        assert_eq!(state.heap_len(), 0);
        assert_eq!(state.stats.potential_flips_seen, 1);
    }

    #[test]
    fn seed_quad_schedules_one_event() {
        let mut state = KineticState::new(handcrafted_quad());
        state.seed();
        assert_eq!(state.heap_len(), 1);
        assert_eq!(state.stats.potential_flips_seen, 1);
    }

    #[test]
    fn step_flips_quad_at_exact_time() {
        let mut state = KineticState::new(handcrafted_quad());
        state.enable_trace();
        state.seed();
        assert_eq!(state.step(), StepOutcome::PerformedFlip22);
        assert_eq!(*state.t_now(), ExactScalar::ratio(1, 2));
        let edges: Vec<_> = state.triangulation().interior_edges().collect();
        assert_eq!(edges, vec![(VertexId(0), VertexId(1))]);
        assert_eq!(state.step(), StepOutcome::Exhausted);
        let trace = state.take_trace();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].time, "1/2");
    }

    #[test]
    fn stale_pop_after_restamp() {
        let mut state = KineticState::new(handcrafted_quad());
        state.seed();
        // Flip the edge under the heap's feet; the stored stamps no longer
        // match.
        let (t1, _) = state
            .tri
            .edge_pair(VertexId(2), VertexId(3))
            .unwrap();
        let tri = state.tri.triangle(t1).clone();
        let i = (0..3)
            .find(|&i| tri.edge(i) == (VertexId(2), VertexId(3)))
            .unwrap();
        state.tri.flip22(t1, i).unwrap();
        assert_eq!(state.step(), StepOutcome::Stale);
        assert_eq!(state.stats.stale_pops, 1);
    }

    #[test]
    fn degree_three_steiner_is_removed_at_exact_root() {
        let sites = [
            (p(0., 0.), I),
            (p(1., 0.), I),
            (p(0., 1.), I),
            (p(0.1, 0.1), S),
        ];
        let tri =
            Triangulation::from_triangles(&sites, &[[0, 1, 3], [1, 2, 3], [2, 0, 3]]).unwrap();
        let expected = match kernel::flip_time(&[sites[3], sites[0], sites[1], sites[2]]) {
            EventTime::At(t) => t,
            other => panic!("expected an event, got {other:?}"),
        };
        let mut state = KineticState::new(tri);
        state.seed();
        assert_eq!(state.stats.potential_flips_seen, 3);
        let mut outcome = state.step();
        while outcome == StepOutcome::Stale {
            outcome = state.step();
        }
        assert_eq!(outcome, StepOutcome::PerformedFlip31);
        assert_eq!(*state.t_now(), expected);
        assert!(state.triangulation().vertex(VertexId(3)).removed);
        state.run().unwrap();
        assert_eq!(state.stats.flips_31, 1);
        assert_eq!(state.stats.flips_22, 0);
    }

    #[test]
    fn run_quad_leaves_hull_steiners() {
        let mut state = KineticState::new(handcrafted_quad());
        state.seed();
        state.run().unwrap();
        assert_eq!(state.stats.flips_total(), 1);
        let t = state.triangulation();
        for v in [VertexId(2), VertexId(3)] {
            assert!(!t.vertex(v).removed);
            assert!(t.is_hull_vertex(v));
        }
        assert!(state.stats.flips_total() <= state.stats.potential_flips_seen);
    }

    #[test]
    fn run_all_input_instance_never_flips() {
        let tri = Triangulation::from_triangles(
            &[
                (p(0., 0.), I),
                (p(2., 0.), I),
                (p(1., 0.5), I),
                (p(1., -1.), I),
            ],
            &[[0, 3, 2], [1, 2, 3]],
        )
        .unwrap();
        let mut state = KineticState::new(tri);
        state.seed();
        state.run().unwrap();
        assert_eq!(state.stats.flips_total(), 0);
    }

    #[test]
    fn postprocess_quad_keeps_input_edge() {
        let mut state = KineticState::new(handcrafted_quad());
        state.seed();
        state.run().unwrap();
        let scaffolding = state.postprocess().unwrap();
        let t = state.triangulation();
        assert_eq!(t.live_triangle_count(), 0);
        let live: Vec<_> = t.live_vertices().map(|v| v.id).collect();
        assert_eq!(live, vec![VertexId(0), VertexId(1)]);
        // Pre-postprocess complex: 4 vertices, 5 edges, 2 triangles = 11
        // simplices; kept: 2 vertices + 1 edge.
        assert_eq!(scaffolding, 8);
    }

    #[test]
    fn full_pipeline_small_instance_matches_oracle() {
        let inputs = [p(0., 0.), p(1., 0.), p(0.3, 0.9), p(0.8, 0.6), p(0.1, 0.4)];
        let mesh = refine(&inputs, &MesherConfig::default()).unwrap();
        let mut state = KineticState::new(mesh.triangulation);
        state.seed();
        state.run().unwrap();
        state.postprocess().unwrap();
        let t = state.triangulation();
        let final_set = SimplexSet::from_triangulation(t);
        // Brute-force reference over the same labeled sites.
        let sites: Vec<Site> = t
            .vertices()
            .filter(|v| v.kind == WeightClass::Input)
            .map(|v| Site {
                id: v.id,
                point: v.point,
                kind: WeightClass::Input,
            })
            .collect();
        let brute = oracle::brute_delaunay(&sites).unwrap();
        let report = oracle::verify_equal(&final_set, &brute);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn kinetic_complex_matches_weighted_oracle_between_events() {
        let inputs = [p(0., 0.), p(1., 0.), p(0.4, 0.8)];
        let mesh = refine(&inputs, &MesherConfig::default()).unwrap();
        let sites: Vec<Site> = mesh
            .triangulation
            .live_vertices()
            .map(|v| Site {
                id: v.id,
                point: v.point,
                kind: v.kind,
            })
            .collect();
        let mut state = KineticState::new(mesh.triangulation);
        state.seed();
        let mut event_times: Vec<ExactScalar> = vec![ExactScalar::zero()];
        let mut snapshots: Vec<SimplexSet> = vec![SimplexSet::from_triangulation(state.triangulation())];
        loop {
            match state.step() {
                StepOutcome::Exhausted => break,
                StepOutcome::Stale => continue,
                _ => {
                    if event_times.last() != Some(state.t_now()) {
                        event_times.push(state.t_now().clone());
                        snapshots.push(SimplexSet::from_triangulation(state.triangulation()));
                    } else {
                        *snapshots.last_mut().unwrap() =
                            SimplexSet::from_triangulation(state.triangulation());
                    }
                }
            }
        }
        assert!(event_times.len() > 1, "instance must have events");
        for k in 0..event_times.len() - 1 {
            let mid = ExactScalar::midpoint(&event_times[k], &event_times[k + 1]);
            let brute = oracle::brute_weighted_delaunay(&sites, &mid).unwrap();
            let report = oracle::verify_equal(&snapshots[k], &brute);
            assert!(report.passed(), "mismatch at t={mid}: {report}");
        }
    }
}
