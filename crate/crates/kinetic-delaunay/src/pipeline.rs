//! End-to-end driver: mesh, seed, run the kinetic loop, strip scaffolding.
//!
//! Besides the final complex the output keeps phase snapshots (the mesh
//! aspect report, the pre-postprocess simplex set, the mesh sites) so the
//! termination and subcomplex guarantees can be audited from the outside,
//! which is exactly what the verification suite does.

use std::collections::BTreeMap;
use std::time::Instant;

use thiserror::Error;

use crate::complex::VertexId;
use crate::kernel::{ExactScalar, Point, WeightClass};
use crate::kinetic::{KineticError, KineticState, RunStats, StepOutcome, TraceRecord};
use crate::mesher::{self, Aspect, MesherConfig, MesherError};
use crate::oracle::{self, BoundReport, OracleError, SimplexSet, Site};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("mesher: {0}")]
    Mesher(#[from] MesherError),
    #[error("kinetic: {0}")]
    Kinetic(#[from] KineticError),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub mesher: MesherConfig,
    /// Validate the complex after every flip and, for small meshes, compare
    /// against the weighted brute-force oracle between events.
    pub check_invariants: bool,
    /// Collect one trace record per performed flip.
    pub trace: bool,
}

/// Everything a pipeline run produces, including phase snapshots.
pub struct PipelineOutput {
    pub stats: RunStats,
    pub report: BoundReport,
    /// Live simplices right after the kinetic loop, complex-id space.
    pub prepost: SimplexSet,
    /// Final complex in complex-id space.
    pub final_set_complex: SimplexSet,
    /// Final complex relabeled to input indices `0..n`.
    pub final_set: SimplexSet,
    /// Exact aspect of every non-hull mesh vertex, post-refinement.
    pub mesh_aspects: Vec<(VertexId, Aspect)>,
    /// The full labeled superset M, for weighted-oracle cross-checks.
    pub mesh_sites: Vec<Site>,
    pub trace: Vec<TraceRecord>,
    /// Complex vertex id of each input point, in input order.
    pub input_ids: Vec<VertexId>,
}

/// Runs the three phases on `points` and audits the built-in guarantees:
/// after the kinetic loop every surviving non-input vertex is a hull vertex,
/// and the final complex is exactly the input-only subcomplex.
pub fn compute(points: &[Point], cfg: &PipelineConfig) -> Result<PipelineOutput, PipelineError> {
    let started = Instant::now();
    let mesh = mesher::refine(points, &cfg.mesher)?;
    let steiner_count = mesh.steiner_count;
    let mesh_aspects = mesh.aspect_report;

    // Input vertices were inserted right after the four box corners, in
    // input order.
    let mut input_ids = Vec::with_capacity(points.len());
    for (k, &p) in points.iter().enumerate() {
        let id = VertexId(4 + k as u32);
        if mesh.triangulation.vertex(id).point != p {
            return Err(PipelineError::Invariant(format!(
                "input {k} not at expected vertex id"
            )));
        }
        input_ids.push(id);
    }
    let mesh_sites: Vec<Site> = mesh
        .triangulation
        .live_vertices()
        .map(|v| Site {
            id: v.id,
            point: v.point,
            kind: v.kind,
        })
        .collect();

    let spread = if points.len() >= 2 {
        oracle::spread(points)?.ratio
    } else {
        1.0
    };

    let mut state = KineticState::new(mesh.triangulation);
    if cfg.trace {
        state.enable_trace();
    }
    state.seed();
    if cfg.check_invariants {
        run_checked(&mut state, &mesh_sites)?;
    } else {
        state.run()?;
    }
    state
        .triangulation()
        .validate()
        .map_err(|e| PipelineError::Invariant(format!("post-run validate: {e}")))?;

    let prepost = SimplexSet::from_triangulation(state.triangulation());
    let final_set_complex = SimplexSet::input_restriction(state.triangulation());
    state.postprocess()?;
    // The surviving triangles must be exactly the input-only restriction.
    let after = SimplexSet::from_triangulation(state.triangulation());
    if after.triangles != final_set_complex.triangles {
        return Err(PipelineError::Invariant(
            "postprocess kept a different triangle set".into(),
        ));
    }
    let tri = state.triangulation();
    if !final_set_complex.triangles.is_empty()
        && tri.live_vertices().all(|v| {
            final_set_complex.triangles.iter().any(|t| t.contains(&v.id))
                || final_set_complex
                    .edges
                    .iter()
                    .any(|&(a, b)| a == v.id || b == v.id)
        })
    {
        tri.validate()
            .map_err(|e| PipelineError::Invariant(format!("final validate: {e}")))?;
    }

    let map: BTreeMap<VertexId, VertexId> = input_ids
        .iter()
        .enumerate()
        .map(|(k, &id)| (id, VertexId(k as u32)))
        .collect();
    let final_set = final_set_complex.relabel(&map);

    let mut stats = state.stats.clone();
    stats.steiner_count = steiner_count;
    stats.spread = spread;
    stats.f = oracle::face_count(&final_set);
    let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    let report = oracle::bound_report(
        points.len(),
        stats.f,
        spread,
        steiner_count,
        stats.flips_total(),
        stats.potential_flips_seen,
        wall_time_ms,
    );

    let mut state = state;
    let trace = state.take_trace();
    Ok(PipelineOutput {
        stats,
        report,
        prepost,
        final_set_complex,
        final_set,
        mesh_aspects,
        mesh_sites,
        trace,
        input_ids,
    })
}

/// Kinetic loop with per-flip validation and, for small meshes, exact
/// agreement checks against the weighted brute-force oracle at the midpoint
/// of every pair of consecutive event times.
fn run_checked(state: &mut KineticState, sites: &[Site]) -> Result<(), PipelineError> {
    let small = sites.len() <= 60;
    let mut event_times: Vec<ExactScalar> = vec![ExactScalar::zero()];
    let mut snapshots: Vec<SimplexSet> = if small {
        vec![SimplexSet::from_triangulation(state.triangulation())]
    } else {
        Vec::new()
    };
    loop {
        match state.step() {
            StepOutcome::Exhausted => break,
            StepOutcome::Stale => continue,
            _ => {
                state
                    .triangulation()
                    .validate()
                    .map_err(|e| PipelineError::Invariant(format!("mid-run validate: {e}")))?;
                if small {
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
    }
    if small {
        for k in 0..event_times.len().saturating_sub(1) {
            let mid = ExactScalar::midpoint(&event_times[k], &event_times[k + 1]);
            let brute = oracle::brute_weighted_delaunay(sites, &mid)?;
            let report = oracle::verify_equal(&snapshots[k], &brute);
            if !report.passed() {
                return Err(PipelineError::Invariant(format!(
                    "kinetic complex diverges from weighted oracle at t={mid}: {report}"
                )));
            }
        }
    }
    state.check_boundary_lemma()?;
    Ok(())
}

/// Convenience wrapper: the input restriction of a pipeline's pre-postprocess
/// complex, relabeled to input indices.
pub fn relabeled(set: &SimplexSet, input_ids: &[VertexId]) -> SimplexSet {
    let map: BTreeMap<VertexId, VertexId> = input_ids
        .iter()
        .enumerate()
        .map(|(k, &id)| (id, VertexId(k as u32)))
        .collect();
    set.relabel(&map)
}

/// Brute-force reference over the raw input points with ids `0..n`, matching
/// the relabeled pipeline output.
pub fn brute_reference(points: &[Point]) -> Result<SimplexSet, OracleError> {
    let sites: Vec<Site> = points
        .iter()
        .enumerate()
        .map(|(i, &p)| Site {
            id: VertexId(i as u32),
            point: p,
            kind: WeightClass::Input,
        })
        .collect();
    oracle::brute_delaunay(&sites)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, Family};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn two_point_instance() {
        let points = [p(0., 0.), p(1., 0.)];
        let out = compute(&points, &PipelineConfig::default()).unwrap();
        assert_eq!(out.final_set.triangles.len(), 0);
        assert_eq!(out.final_set.edges.len(), 1);
        assert_eq!(out.stats.f, 3);
        let brute = brute_reference(&points).unwrap();
        assert!(oracle::verify_equal(&out.final_set, &brute).passed());
    }

    #[test]
    fn three_point_instance() {
        let points = [p(0., 0.), p(1., 0.), p(0.3, 0.8)];
        let out = compute(&points, &PipelineConfig::default()).unwrap();
        assert_eq!(out.final_set.triangles.len(), 1);
        assert_eq!(out.stats.f, 7);
        let brute = brute_reference(&points).unwrap();
        assert!(oracle::verify_equal(&out.final_set, &brute).passed());
    }

    #[test]
    fn single_point_instance() {
        let points = [p(5., 5.)];
        let out = compute(&points, &PipelineConfig::default()).unwrap();
        assert_eq!(out.final_set.vertices.len(), 1);
        assert_eq!(out.stats.f, 1);
    }

    #[test]
    fn random_instance_with_invariant_checks() {
        let points = generate(Family::Uniform, 12, 3);
        let cfg = PipelineConfig {
            check_invariants: true,
            trace: true,
            ..Default::default()
        };
        let out = compute(&points, &cfg).unwrap();
        let brute = brute_reference(&points).unwrap();
        let report = oracle::verify_equal(&out.final_set, &brute);
        assert!(report.passed(), "{report}");
        assert!(out.stats.flips_total() <= out.stats.potential_flips_seen);
        // The final complex is the input-only subcomplex of the pre-cleanup
        // complex.
        assert!(out.final_set_complex.is_subset_of(&out.prepost));
        assert!(!out.trace.is_empty() || out.stats.flips_total() == 0);
    }

    #[test]
    fn deterministic_runs() {
        let points = generate(Family::Clustered, 40, 11);
        let a = compute(&points, &PipelineConfig::default()).unwrap();
        let b = compute(&points, &PipelineConfig::default()).unwrap();
        assert_eq!(a.final_set, b.final_set);
        assert_eq!(a.stats.flips_22, b.stats.flips_22);
        assert_eq!(a.stats.flips_31, b.stats.flips_31);
        assert_eq!(a.stats.potential_flips_seen, b.stats.potential_flips_seen);
        assert_eq!(a.stats.stale_pops, b.stats.stale_pops);
    }
}
