use kinetic_delaunay::gen::{generate, Family};
use kinetic_delaunay::kinetic::KineticState;
use kinetic_delaunay::mesher::{refine, MesherConfig};
use std::time::Instant;

fn main() {
    for n in [1024usize] {
        let pts = generate(Family::Uniform, n, 1);
        let t0 = Instant::now();
        let mesh = refine(&pts, &MesherConfig::default()).unwrap();
        let t_mesh = t0.elapsed();
        let t1 = Instant::now();
        let mut state = KineticState::new(mesh.triangulation);
        state.seed();
        let t_seed = t1.elapsed();
        let t2 = Instant::now();
        state.run().unwrap();
        state.postprocess().unwrap();
        let t_run = t2.elapsed();
        println!(
            "n={n}: mesh {t_mesh:?} (steiner={}) seed {t_seed:?} run+post {t_run:?} flips={} potential={}",
            mesh.steiner_count, state.stats.flips_total(), state.stats.potential_flips_seen
        );
    }
}
