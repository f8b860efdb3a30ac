//! Deterministic point-set generators for benchmarks and tests.
//!
//! All randomness flows from a seeded ChaCha stream and every arithmetic
//! step is plain IEEE add/mul, so a `(family, n, seed)` triple produces the
//! same bytes on every platform. Families differ in where their spread and
//! output complexity come from: `uniform` and `clustered` are the bread and
//! butter, `grid` is nearly degenerate (jittered off exact cocircularities),
//! and `two-scale` plants a pair at distance `2^-k` inside a unit-size set
//! to force spread at least `2^k`.

use std::collections::BTreeSet;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Uniform,
    Clustered,
    Grid,
    TwoScale { exp: u32 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Clustered => "clustered",
            Family::Grid => "grid",
            Family::TwoScale { .. } => "two-scale",
        }
    }

    /// Applies a non-default two-scale exponent.
    pub fn with_exp(self, exp: u32) -> Family {
        match self {
            Family::TwoScale { .. } => Family::TwoScale { exp },
            other => other,
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Family, String> {
        match s {
            "uniform" => Ok(Family::Uniform),
            "clustered" => Ok(Family::Clustered),
            "grid" => Ok(Family::Grid),
            "two-scale" => Ok(Family::TwoScale { exp: 10 }),
            other => Err(format!(
                "unknown family `{other}` (expected uniform, clustered, grid or two-scale)"
            )),
        }
    }
}

/// Generates `n` pairwise-distinct points, deterministic per
/// `(family, n, seed)`.
pub fn generate(family: Family, n: usize, seed: u64) -> Vec<Point> {
    assert!(n >= 1, "need at least one point");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used: BTreeSet<Point> = BTreeSet::new();
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut push_unique = |p: Point, points: &mut Vec<Point>, used: &mut BTreeSet<Point>| -> bool {
        if used.insert(p) {
            points.push(p);
            true
        } else {
            false
        }
    };
    match family {
        Family::Uniform => {
            while points.len() < n {
                let p = Point::new(rng.random::<f64>(), rng.random::<f64>());
                push_unique(p, &mut points, &mut used);
            }
        }
        Family::Clustered => {
            let k = (n / 16).clamp(1, 32);
            let centers: Vec<(f64, f64)> = (0..k)
                .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
                .collect();
            while points.len() < n {
                let c = centers[rng.random_range(0..k)];
                let dx = (rng.random::<f64>() - 0.5) * 0.05;
                let dy = (rng.random::<f64>() - 0.5) * 0.05;
                let p = Point::new(c.0 + dx, c.1 + dy);
                push_unique(p, &mut points, &mut used);
            }
        }
        Family::Grid => {
            let m = (n as f64).sqrt().ceil() as usize;
            let spacing = 1.0 / m as f64;
            // Jitter at the precision floor keeps the lattice shape while
            // breaking exact cocircular quadruples.
            let floor = spacing * 2f64.powi(-16);
            'outer: for i in 0..m {
                for j in 0..m {
                    if points.len() == n {
                        break 'outer;
                    }
                    let jx = (rng.random::<f64>() - 0.5) * floor;
                    let jy = (rng.random::<f64>() - 0.5) * floor;
                    let p = Point::new(i as f64 * spacing + jx, j as f64 * spacing + jy);
                    push_unique(p, &mut points, &mut used);
                }
            }
            while points.len() < n {
                let p = Point::new(rng.random::<f64>(), rng.random::<f64>());
                push_unique(p, &mut points, &mut used);
            }
        }
        Family::TwoScale { exp } => {
            let s = 2f64.powi(-(exp as i32));
            // Anchors pin the spread: a far pair at unit scale and a close
            // pair at distance 2^-exp.
            let anchors = [
                Point::new(0.05, 0.05),
                Point::new(0.95, 0.95),
                Point::new(0.25, 0.25),
                Point::new(0.25 + s, 0.25),
            ];
            for &a in anchors.iter().take(n) {
                push_unique(a, &mut points, &mut used);
            }
            while points.len() < n {
                // Alternate between the coarse square and the fine cluster.
                let p = if points.len() % 2 == 0 {
                    Point::new(rng.random::<f64>(), rng.random::<f64>())
                } else {
                    let dx = rng.random::<f64>() * s;
                    let dy = rng.random::<f64>() * s;
                    Point::new(0.25 + dx, 0.25 + dy)
                };
                push_unique(p, &mut points, &mut used);
            }
        }
    }
    points
}
