//! Mutable planar triangulation: the weighted Delaunay complex at a given
//! time, with point location, incremental insertion and bistellar flips.
//!
//! Triangles live in slots carrying a modification stamp; the stamp bumps on
//! every change to a slot's vertex set (creation, replacement, death), never
//! on pure neighbor-pointer rewiring. A `(slot, stamp)` pair therefore
//! identifies one concrete triangle configuration for the lifetime of the
//! structure, which is what kinetic certificates validate against.
//!
//! Removed vertices and dead triangle slots are tombstoned, never compacted,
//! so `VertexId`s stay stable.
//!
//! Degeneracies (cocircular configurations) are resolved by the fixed
//! symbolic perturbation in [`crate::kernel::incircle_future_sign`]; all
//! construction goes through it, so a triangulation is deterministic given
//! the insertion sequence.

use std::fmt;

use thiserror::Error;

use crate::kernel::{self, Point, Sign, WeightClass};

/// Dense, never-reused vertex identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
    pub fn sos_id(self) -> u64 {
        self.0 as u64
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Triangle slot reference. Slots are reused; pair with the slot's stamp to
/// identify a concrete triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriRef(pub u32);

impl TriRef {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TriRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub id: VertexId,
    pub point: Point,
    pub kind: WeightClass,
    pub removed: bool,
}

#[derive(Debug, Clone)]
pub struct Triangle {
    pub alive: bool,
    /// Vertices in ccw order.
    pub v: [VertexId; 3],
    /// `nbr[i]` is the triangle across the edge opposite `v[i]`.
    pub nbr: [Option<TriRef>; 3],
    /// Bumps on every vertex-set change of this slot.
    pub stamp: u64,
}

impl Triangle {
    /// Local index of `v`, if present.
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.v.iter().position(|&u| u == v)
    }

    /// The edge opposite local vertex `i`, as the ccw-directed pair.
    pub fn edge(&self, i: usize) -> (VertexId, VertexId) {
        (self.v[(i + 1) % 3], self.v[(i + 2) % 3])
    }
}

/// Exact classification of a located point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Interior,
    /// On the open edge opposite this local index.
    OnEdge(usize),
    OnVertex(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("{tri} has non-ccw orientation")]
    BadOrientation { tri: TriRef },
    #[error("{tri} and {other} disagree about their shared edge")]
    NeighborAsymmetry { tri: TriRef, other: TriRef },
    #[error("{tri} references a dead triangle or removed vertex")]
    DeadReference { tri: TriRef },
    #[error("edge ({u}, {v}) has more than two incident triangles")]
    EdgeMultiplicity { u: VertexId, v: VertexId },
    #[error("{v} is live but belongs to no live triangle")]
    VertexUnreferenced { v: VertexId },
    #[error("removed {v} is still referenced by a live triangle")]
    RemovedVertexReferenced { v: VertexId },
    #[error("Euler relation violated: {tris} triangles, {interior} interior and {hull} hull vertices")]
    EulerMismatch {
        tris: usize,
        interior: usize,
        hull: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("point lies outside the convex hull")]
    OutsideHull,
    #[error("point coincides with existing {existing}")]
    DuplicatePoint { existing: VertexId },
    #[error("edge is on the hull")]
    HullEdge,
    #[error("surrounding quadrilateral is not strictly convex")]
    NonConvexQuad,
    #[error("vertex has degree {degree}, expected 3")]
    NotDegreeThree { degree: usize },
    #[error("operation requires an interior vertex")]
    HullVertex,
    #[error("box corners are degenerate or not in convex position")]
    DegenerateCorners,
    #[error("edge is not present")]
    NoSuchEdge,
    #[error("point-location walk failed to terminate")]
    WalkStuck,
    #[error("triangle soup is not a valid triangulation: {0}")]
    Validation(ValidationError),
}

/// A mutable 2D triangulation of the convex closure of its vertex set.
#[derive(Debug, Clone)]
pub struct Triangulation {
    verts: Vec<Vertex>,
    tris: Vec<Triangle>,
    /// A live triangle containing each live vertex.
    vert_tri: Vec<Option<TriRef>>,
    stamp_counter: u64,
    locate_hint: Option<TriRef>,
}

impl Triangulation {
    /// Triangulation of a convex quadrilateral: four Box-kind vertices, two
    /// triangles split along the diagonal from the first corner.
    pub fn init_box(corners: [Point; 4]) -> Result<Triangulation, ComplexError> {
        for i in 0..4 {
            for j in (i + 1)..4 {
                if corners[i] == corners[j] {
                    return Err(ComplexError::DegenerateCorners);
                }
            }
        }
        // Accept either winding, normalize to ccw.
        let mut c = corners;
        let orients = |c: &[Point; 4]| {
            [0usize, 1, 2, 3].map(|i| kernel::orient2d(c[i], c[(i + 1) % 4], c[(i + 2) % 4]))
        };
        if orients(&c).iter().all(|&s| s == Sign::Negative) {
            c.swap(1, 3);
        }
        if !orients(&c).iter().all(|&s| s == Sign::Positive) {
            return Err(ComplexError::DegenerateCorners);
        }
        let verts: Vec<Vertex> = c
            .iter()
            .enumerate()
            .map(|(i, &p)| Vertex {
                id: VertexId(i as u32),
                point: p,
                kind: WeightClass::Box,
                removed: false,
            })
            .collect();
        let v = |i: usize| VertexId(i as u32);
        // Diagonal (c0, c2): in triangle (0,1,2) it is opposite v1, in
        // triangle (0,2,3) opposite v3.
        let tris = vec![
            Triangle {
                alive: true,
                v: [v(0), v(1), v(2)],
                nbr: [None, Some(TriRef(1)), None],
                stamp: 1,
            },
            Triangle {
                alive: true,
                v: [v(0), v(2), v(3)],
                nbr: [None, None, Some(TriRef(0))],
                stamp: 2,
            },
        ];
        let t = Triangulation {
            verts,
            tris,
            vert_tri: vec![
                Some(TriRef(0)),
                Some(TriRef(0)),
                Some(TriRef(0)),
                Some(TriRef(1)),
            ],
            stamp_counter: 2,
            locate_hint: Some(TriRef(0)),
        };
        t.validate().map_err(ComplexError::Validation)?;
        Ok(t)
    }

    /// Builds a triangulation from an explicit triangle soup. Vertex ids are
    /// the indices into `points`. Neighbor links are derived from shared
    /// edges; the result is validated.
    pub fn from_triangles(
        points: &[(Point, WeightClass)],
        triangles: &[[usize; 3]],
    ) -> Result<Triangulation, ComplexError> {
        let verts: Vec<Vertex> = points
            .iter()
            .enumerate()
            .map(|(i, &(p, k))| Vertex {
                id: VertexId(i as u32),
                point: p,
                kind: k,
                removed: false,
            })
            .collect();
        let mut tris = Vec::with_capacity(triangles.len());
        let mut vert_tri = vec![None; points.len()];
        for (ti, &[a, b, c]) in triangles.iter().enumerate() {
            let t = TriRef(ti as u32);
            for &x in &[a, b, c] {
                if x >= points.len() {
                    return Err(ComplexError::Validation(ValidationError::DeadReference {
                        tri: t,
                    }));
                }
                vert_tri[x] = Some(t);
            }
            tris.push(Triangle {
                alive: true,
                v: [VertexId(a as u32), VertexId(b as u32), VertexId(c as u32)],
                nbr: [None; 3],
                stamp: ti as u64 + 1,
            });
        }
        let mut half_edges: std::collections::BTreeMap<(VertexId, VertexId), (TriRef, usize)> =
            std::collections::BTreeMap::new();
        for (ti, tri) in tris.iter().enumerate() {
            for i in 0..3 {
                let e = tri.edge(i);
                if half_edges.insert(e, (TriRef(ti as u32), i)).is_some() {
                    return Err(ComplexError::Validation(ValidationError::EdgeMultiplicity {
                        u: e.0,
                        v: e.1,
                    }));
                }
            }
        }
        let links: Vec<(TriRef, usize, TriRef)> = half_edges
            .iter()
            .filter_map(|(&(u, v), &(t, i))| half_edges.get(&(v, u)).map(|&(o, _)| (t, i, o)))
            .collect();
        for (t, i, o) in links {
            tris[t.index()].nbr[i] = Some(o);
        }
        let stamp_counter = tris.len() as u64;
        let mut out = Triangulation {
            verts,
            tris,
            vert_tri,
            stamp_counter,
            locate_hint: Some(TriRef(0)),
        };
        out.normalize_hint();
        out.validate().map_err(ComplexError::Validation)?;
        Ok(out)
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.verts[v.index()]
    }

    pub fn triangle(&self, t: TriRef) -> &Triangle {
        &self.tris[t.index()]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.verts.iter()
    }

    /// Live (non-removed) vertices.
    pub fn live_vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.verts.iter().filter(|v| !v.removed)
    }

    pub fn live_triangles(&self) -> impl Iterator<Item = (TriRef, &Triangle)> {
        self.tris
            .iter()
            .enumerate()
            .filter(|(_, t)| t.alive)
            .map(|(i, t)| (TriRef(i as u32), t))
    }

    pub fn live_triangle_count(&self) -> usize {
        self.tris.iter().filter(|t| t.alive).count()
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn live_vertex_count(&self) -> usize {
        self.verts.iter().filter(|v| !v.removed).count()
    }

    fn next_stamp(&mut self) -> u64 {
        self.stamp_counter += 1;
        self.stamp_counter
    }

    fn points_of(&self, t: &Triangle) -> [Point; 3] {
        t.v.map(|v| self.verts[v.index()].point)
    }

    /// The flip quadrilateral across edge `i` of `t1`: apex of `t1`, the ccw
    /// edge pair, the apex of the neighbor, and the neighbor itself.
    pub fn flip_quad(
        &self,
        t1: TriRef,
        i: usize,
    ) -> Option<(VertexId, VertexId, VertexId, VertexId, TriRef)> {
        let tri1 = &self.tris[t1.index()];
        let (u, v) = tri1.edge(i);
        let w = tri1.v[i];
        let t2 = tri1.nbr[i]?;
        let tri2 = &self.tris[t2.index()];
        let x = *tri2.v.iter().find(|&&p| p != u && p != v)?;
        Some((w, u, v, x, t2))
    }

    fn replace_neighbor(&mut self, of: Option<TriRef>, old: TriRef, new: Option<TriRef>) {
        if let Some(of) = of {
            let tri = &mut self.tris[of.index()];
            for n in tri.nbr.iter_mut() {
                if *n == Some(old) {
                    *n = new;
                    return;
                }
            }
            debug_assert!(false, "neighbor back-pointer not found");
        }
    }

    fn normalize_hint(&mut self) {
        let ok = self
            .locate_hint
            .map(|t| self.tris[t.index()].alive)
            .unwrap_or(false);
        if !ok {
            self.locate_hint = self
                .tris
                .iter()
                .position(|t| t.alive)
                .map(|i| TriRef(i as u32));
        }
    }

    /// Exact point location by a straight-line walk from the most recently
    /// created triangle.
    pub fn locate(&self, x: Point) -> Result<(TriRef, Containment), ComplexError> {
        let mut current = self
            .locate_hint
            .filter(|t| self.tris[t.index()].alive)
            .or_else(|| {
                self.tris
                    .iter()
                    .position(|t| t.alive)
                    .map(|i| TriRef(i as u32))
            })
            .ok_or(ComplexError::WalkStuck)?;
        let mut came_from: Option<TriRef> = None;
        let limit = 4 * self.tris.len() + 16;
        for _ in 0..limit {
            let tri = &self.tris[current.index()];
            let pts = self.points_of(tri);
            let mut signs = [Sign::Zero; 3];
            for i in 0..3 {
                signs[i] = kernel::orient2d(pts[(i + 1) % 3], pts[(i + 2) % 3], x);
            }
            let mut step: Option<Option<TriRef>> = None;
            for i in 0..3 {
                if signs[i] == Sign::Negative {
                    match tri.nbr[i] {
                        Some(n) if Some(n) != came_from => {
                            step = Some(Some(n));
                            break;
                        }
                        // Retreating through the entry edge only happens if
                        // nothing else is negative.
                        Some(n) => {
                            if step.is_none() {
                                step = Some(Some(n));
                            }
                        }
                        None => return Err(ComplexError::OutsideHull),
                    }
                }
            }
            if let Some(Some(next)) = step {
                came_from = Some(current);
                current = next;
                continue;
            }
            // x is inside the closed triangle; classify exactly.
            let zeros: Vec<usize> = (0..3).filter(|&i| signs[i] == Sign::Zero).collect();
            return Ok(match zeros.len() {
                0 => (current, Containment::Interior),
                1 => (current, Containment::OnEdge(zeros[0])),
                2 => {
                    // The two zero edges meet at the vertex opposite the
                    // remaining edge.
                    let shared = tri.v[3 - zeros[0] - zeros[1]];
                    (current, Containment::OnVertex(shared))
                }
                _ => return Err(ComplexError::WalkStuck),
            });
        }
        Err(ComplexError::WalkStuck)
    }

    /// Inserts a point and restores the (perturbed, time-zero) Delaunay
    /// property by flip legalization. The point may lie strictly inside the
    /// hull or on a hull edge.
    pub fn insert_vertex(&mut self, x: Point, kind: WeightClass) -> Result<VertexId, ComplexError> {
        let (t, containment) = self.locate(x)?;
        let new_id = VertexId(self.verts.len() as u32);
        let mut check: Vec<(TriRef, usize)> = Vec::new();
        match containment {
            Containment::OnVertex(existing) => {
                return Err(ComplexError::DuplicatePoint { existing });
            }
            Containment::Interior => {
                self.push_vertex(new_id, x, kind);
                let tri = self.tris[t.index()].clone();
                let slots = [t, self.alloc_slot(), self.alloc_slot()];
                let faces = [
                    [new_id, tri.v[0], tri.v[1]],
                    [new_id, tri.v[1], tri.v[2]],
                    [new_id, tri.v[2], tri.v[0]],
                ];
                // Face k's base edge (v[k], v[k+1]) is the edge opposite
                // tri.v[k+2].
                let outer = [tri.nbr[2], tri.nbr[0], tri.nbr[1]];
                for k in 0..3 {
                    let stamp = self.next_stamp();
                    self.tris[slots[k].index()] = Triangle {
                        alive: true,
                        v: faces[k],
                        nbr: [outer[k], Some(slots[(k + 1) % 3]), Some(slots[(k + 2) % 3])],
                        stamp,
                    };
                    self.replace_neighbor(outer[k], t, Some(slots[k]));
                    check.push((slots[k], 0));
                }
                self.vert_tri[new_id.index()] = Some(slots[0]);
                for k in 0..3 {
                    self.vert_tri[tri.v[k].index()] = Some(slots[k]);
                }
                self.locate_hint = Some(slots[0]);
            }
            Containment::OnEdge(i) => {
                self.push_vertex(new_id, x, kind);
                let tri1 = self.tris[t.index()].clone();
                let (u, v) = tri1.edge(i);
                let w = tri1.v[i];
                let t2 = tri1.nbr[i];
                // Split t into (w, u, new) and (w, new, v).
                let ta = t;
                let tb = self.alloc_slot();
                let nbr_wu = tri1.nbr[(i + 2) % 3];
                let nbr_vw = tri1.nbr[(i + 1) % 3];
                let stamp = self.next_stamp();
                self.tris[ta.index()] = Triangle {
                    alive: true,
                    v: [w, u, new_id],
                    nbr: [None, Some(tb), nbr_wu],
                    stamp,
                };
                let stamp = self.next_stamp();
                self.tris[tb.index()] = Triangle {
                    alive: true,
                    v: [w, new_id, v],
                    nbr: [None, nbr_vw, Some(ta)],
                    stamp,
                };
                self.replace_neighbor(nbr_vw, t, Some(tb));
                check.push((ta, 2));
                check.push((tb, 1));
                self.vert_tri[w.index()] = Some(ta);
                self.vert_tri[u.index()] = Some(ta);
                self.vert_tri[v.index()] = Some(tb);
                self.vert_tri[new_id.index()] = Some(ta);
                if let Some(t2) = t2 {
                    // Interior edge: split the other side too and stitch.
                    let tri2 = self.tris[t2.index()].clone();
                    let j = (0..3)
                        .find(|&j| tri2.edge(j) == (v, u))
                        .ok_or(ComplexError::NoSuchEdge)?;
                    let z = tri2.v[j];
                    let tc = t2;
                    let td = self.alloc_slot();
                    let nbr_vz = tri2.nbr[(j + 2) % 3];
                    let nbr_zu = tri2.nbr[(j + 1) % 3];
                    let stamp = self.next_stamp();
                    self.tris[tc.index()] = Triangle {
                        alive: true,
                        v: [z, v, new_id],
                        nbr: [Some(tb), Some(td), nbr_vz],
                        stamp,
                    };
                    let stamp = self.next_stamp();
                    self.tris[td.index()] = Triangle {
                        alive: true,
                        v: [z, new_id, u],
                        nbr: [Some(ta), nbr_zu, Some(tc)],
                        stamp,
                    };
                    self.replace_neighbor(nbr_zu, t2, Some(td));
                    self.tris[ta.index()].nbr[0] = Some(td);
                    self.tris[tb.index()].nbr[0] = Some(tc);
                    check.push((tc, 2));
                    check.push((td, 1));
                    self.vert_tri[z.index()] = Some(tc);
                }
                self.locate_hint = Some(ta);
            }
        }
        // Lawson legalization: `check` holds (triangle, local index of the
        // new vertex); the edge to test is the one opposite it.
        while let Some((t, i)) = check.pop() {
            let tri = &self.tris[t.index()];
            if !tri.alive || tri.v[i] != new_id {
                continue;
            }
            let Some((w, u, v, z, _t2)) = self.flip_quad(t, i) else {
                continue;
            };
            debug_assert_eq!(w, new_id);
            let pts = [w, u, v, z].map(|q| self.verts[q.index()].point);
            let kinds = [w, u, v, z].map(|q| self.verts[q.index()].kind);
            let ids = [w, u, v, z].map(|q| q.sos_id());
            if kernel::incircle_future_sign_t0(&pts, &kinds, &ids) == Sign::Negative {
                let (ta, tb) = self.flip22_unchecked(t, i);
                for s in [ta, tb] {
                    if let Some(k) = self.tris[s.index()].index_of(new_id) {
                        check.push((s, k));
                    }
                }
            }
        }
        Ok(new_id)
    }

    fn push_vertex(&mut self, id: VertexId, x: Point, kind: WeightClass) {
        debug_assert_eq!(id.index(), self.verts.len());
        self.verts.push(Vertex {
            id,
            point: x,
            kind,
            removed: false,
        });
        self.vert_tri.push(None);
    }

    fn alloc_slot(&mut self) -> TriRef {
        self.tris.push(Triangle {
            alive: false,
            v: [VertexId(0); 3],
            nbr: [None; 3],
            stamp: 0,
        });
        TriRef(self.tris.len() as u32 - 1)
    }

    /// Swaps the diagonal of the strictly convex quadrilateral around the
    /// interior edge opposite vertex `i` of `t`. Returns the new diagonal as
    /// a canonical vertex pair.
    pub fn flip22(&mut self, t: TriRef, i: usize) -> Result<(VertexId, VertexId), ComplexError> {
        let tri = &self.tris[t.index()];
        if !tri.alive {
            return Err(ComplexError::NoSuchEdge);
        }
        if tri.nbr[i].is_none() {
            return Err(ComplexError::HullEdge);
        }
        let (w, u, v, x, _) = self.flip_quad(t, i).ok_or(ComplexError::NoSuchEdge)?;
        let pw = self.verts[w.index()].point;
        let px = self.verts[x.index()].point;
        let pu = self.verts[u.index()].point;
        let pv = self.verts[v.index()].point;
        let su = kernel::orient2d(pw, px, pu);
        let sv = kernel::orient2d(pw, px, pv);
        let convex = (su == Sign::Positive && sv == Sign::Negative)
            || (su == Sign::Negative && sv == Sign::Positive);
        if !convex {
            return Err(ComplexError::NonConvexQuad);
        }
        self.flip22_unchecked(t, i);
        Ok(if w < x { (w, x) } else { (x, w) })
    }

    /// Core (2,2) flip. Caller guarantees the edge is interior and the quad
    /// strictly convex.
    fn flip22_unchecked(&mut self, t1: TriRef, i: usize) -> (TriRef, TriRef) {
        let (w, u, v, x, t2) = self.flip_quad(t1, i).expect("interior edge");
        let tri1 = self.tris[t1.index()].clone();
        let tri2 = self.tris[t2.index()].clone();
        let j = (0..3)
            .find(|&j| tri2.edge(j) == (v, u))
            .expect("mutual edge");
        // Outer neighbors around the quad, tri1 = (w, u, v), tri2 = (x, v, u)
        // cyclically.
        let b = tri1.nbr[(i + 1) % 3]; // across (v, w)
        let a = tri1.nbr[(i + 2) % 3]; // across (w, u)
        let c = tri2.nbr[(j + 1) % 3]; // across (u, x)
        let d = tri2.nbr[(j + 2) % 3]; // across (x, v)
        let stamp = self.next_stamp();
        self.tris[t1.index()] = Triangle {
            alive: true,
            v: [w, u, x],
            nbr: [c, Some(t2), a],
            stamp,
        };
        let stamp = self.next_stamp();
        self.tris[t2.index()] = Triangle {
            alive: true,
            v: [x, v, w],
            nbr: [b, Some(t1), d],
            stamp,
        };
        self.replace_neighbor(b, t1, Some(t2));
        self.replace_neighbor(c, t2, Some(t1));
        self.vert_tri[w.index()] = Some(t1);
        self.vert_tri[u.index()] = Some(t1);
        self.vert_tri[x.index()] = Some(t2);
        self.vert_tri[v.index()] = Some(t2);
        self.locate_hint = Some(t1);
        (t1, t2)
    }

    /// Removes an interior vertex of degree exactly three, replacing its
    /// three incident triangles with one.
    pub fn flip31(&mut self, v: VertexId) -> Result<TriRef, ComplexError> {
        if self.verts[v.index()].removed {
            return Err(ComplexError::HullVertex);
        }
        if self.is_hull_vertex(v) {
            return Err(ComplexError::HullVertex);
        }
        let star = self.star(v);
        if star.len() != 3 {
            return Err(ComplexError::NotDegreeThree { degree: star.len() });
        }
        // Star triangles ccw: (v, a, b), (v, b, c), (v, c, a).
        let t0 = star[0];
        let tri0 = self.tris[t0.index()].clone();
        let i0 = tri0.index_of(v).unwrap();
        let (a, b) = tri0.edge(i0);
        let t1 = star[1];
        let tri1 = self.tris[t1.index()].clone();
        let i1 = tri1.index_of(v).unwrap();
        let (b2, c) = tri1.edge(i1);
        let t2 = star[2];
        let tri2 = self.tris[t2.index()].clone();
        let i2 = tri2.index_of(v).unwrap();
        let (c2, a2) = tri2.edge(i2);
        debug_assert_eq!(b, b2);
        debug_assert_eq!(c, c2);
        debug_assert_eq!(a, a2);
        let outer0 = tri0.nbr[i0];
        let outer1 = tri1.nbr[i1];
        let outer2 = tri2.nbr[i2];
        let stamp = self.next_stamp();
        // New (a, b, c): edge (b, c) opposite a came from t1's outer, edge
        // (c, a) opposite b from t2's, edge (a, b) opposite c from t0's.
        self.tris[t0.index()] = Triangle {
            alive: true,
            v: [a, b, c],
            nbr: [outer1, outer2, outer0],
            stamp,
        };
        for t in [t1, t2] {
            let stamp = self.next_stamp();
            let slot = &mut self.tris[t.index()];
            slot.alive = false;
            slot.stamp = stamp;
        }
        self.replace_neighbor(outer0, t0, Some(t0));
        self.replace_neighbor(outer1, t1, Some(t0));
        self.replace_neighbor(outer2, t2, Some(t0));
        self.verts[v.index()].removed = true;
        self.vert_tri[v.index()] = None;
        for p in [a, b, c] {
            self.vert_tri[p.index()] = Some(t0);
        }
        self.locate_hint = Some(t0);
        Ok(t0)
    }

    /// Incident triangles of `v` in ccw order. For hull vertices the walk
    /// starts at the clockwise-most triangle.
    pub fn star(&self, v: VertexId) -> Vec<TriRef> {
        let Some(start) = self.vert_tri[v.index()] else {
            return Vec::new();
        };
        debug_assert!(self.tris[start.index()].alive);
        // Rewind clockwise to a hull edge (or detect a full interior loop).
        let mut first = start;
        loop {
            let tri = &self.tris[first.index()];
            let i = tri.index_of(v).expect("vert_tri consistency");
            match tri.nbr[(i + 2) % 3] {
                Some(prev) if prev != start => first = prev,
                Some(_) => {
                    first = start;
                    break;
                }
                None => break,
            }
        }
        let mut out = Vec::with_capacity(8);
        let mut cur = first;
        loop {
            out.push(cur);
            let tri = &self.tris[cur.index()];
            let i = tri.index_of(v).expect("vert_tri consistency");
            match tri.nbr[(i + 1) % 3] {
                Some(next) if next != first => cur = next,
                _ => break,
            }
        }
        out
    }

    /// Neighbor vertices of `v` in ccw order.
    pub fn neighbor_vertices(&self, v: VertexId) -> Vec<VertexId> {
        let star = self.star(v);
        let mut out = Vec::with_capacity(star.len() + 1);
        for (k, &t) in star.iter().enumerate() {
            let tri = &self.tris[t.index()];
            let i = tri.index_of(v).unwrap();
            let (a, b) = tri.edge(i);
            if k == 0 {
                out.push(a);
            }
            out.push(b);
        }
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        out
    }

    pub fn vertex_degree(&self, v: VertexId) -> usize {
        self.neighbor_vertices(v).len()
    }

    /// A vertex is on the hull iff its star is bounded by a hull edge.
    pub fn is_hull_vertex(&self, v: VertexId) -> bool {
        let star = self.star(v);
        if star.is_empty() {
            return false;
        }
        let first = star[0];
        let tri = &self.tris[first.index()];
        let i = tri.index_of(v).unwrap();
        if tri.nbr[(i + 2) % 3].is_none() {
            return true;
        }
        let last = *star.last().unwrap();
        let tri = &self.tris[last.index()];
        let i = tri.index_of(v).unwrap();
        tri.nbr[(i + 1) % 3].is_none()
    }

    /// Both live triangles of an interior edge, or `None` for hull or absent
    /// edges. The first returned triangle contains the ccw half-edge
    /// `(u, v)`.
    pub fn edge_pair(&self, u: VertexId, v: VertexId) -> Option<(TriRef, TriRef)> {
        for t in self.star(u) {
            let tri = &self.tris[t.index()];
            for i in 0..3 {
                if tri.edge(i) == (u, v) {
                    return tri.nbr[i].map(|o| (t, o));
                }
            }
        }
        None
    }

    /// Every interior edge exactly once, as the half-edge whose source id is
    /// smaller. Deterministic order: by (slot, local index).
    pub fn interior_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.live_triangles().flat_map(|(_, tri)| {
            (0..3).filter_map(move |i| {
                let (u, v) = tri.edge(i);
                (tri.nbr[i].is_some() && u < v).then_some((u, v))
            })
        })
    }

    /// Checks every structural invariant, reporting the first violation.
    pub fn validate(&self) -> Result<(), ValidationError> {
        let mut referenced = vec![false; self.verts.len()];
        let mut edge_count: std::collections::BTreeMap<(VertexId, VertexId), usize> =
            std::collections::BTreeMap::new();
        for (t, tri) in self.live_triangles() {
            for &v in &tri.v {
                if v.index() >= self.verts.len() {
                    return Err(ValidationError::DeadReference { tri: t });
                }
                if self.verts[v.index()].removed {
                    return Err(ValidationError::RemovedVertexReferenced { v });
                }
                referenced[v.index()] = true;
            }
            let [a, b, c] = self.points_of(tri);
            if kernel::orient2d(a, b, c) != Sign::Positive {
                return Err(ValidationError::BadOrientation { tri: t });
            }
            for i in 0..3 {
                let (u, v) = tri.edge(i);
                let key = if u < v { (u, v) } else { (v, u) };
                *edge_count.entry(key).or_insert(0) += 1;
                if let Some(n) = tri.nbr[i] {
                    let other = &self.tris[n.index()];
                    if !other.alive {
                        return Err(ValidationError::DeadReference { tri: t });
                    }
                    let reciprocal =
                        (0..3).any(|j| other.edge(j) == (v, u) && other.nbr[j] == Some(t));
                    if !reciprocal {
                        return Err(ValidationError::NeighborAsymmetry { tri: t, other: n });
                    }
                }
            }
        }
        for (&(u, v), &count) in &edge_count {
            if count > 2 {
                return Err(ValidationError::EdgeMultiplicity { u, v });
            }
        }
        for v in self.live_vertices() {
            if !referenced[v.id.index()] {
                return Err(ValidationError::VertexUnreferenced { v: v.id });
            }
            match self.vert_tri[v.id.index()] {
                Some(t)
                    if self.tris[t.index()].alive
                        && self.tris[t.index()].index_of(v.id).is_some() => {}
                _ => return Err(ValidationError::VertexUnreferenced { v: v.id }),
            }
        }
        // Euler relation for a triangulated convex region.
        let tris = self.live_triangle_count();
        if tris > 0 {
            let mut hull = std::collections::BTreeSet::new();
            for (_, tri) in self.live_triangles() {
                for i in 0..3 {
                    if tri.nbr[i].is_none() {
                        let (u, v) = tri.edge(i);
                        hull.insert(u);
                        hull.insert(v);
                    }
                }
            }
            let live = self.live_vertex_count();
            let interior = live - hull.len();
            if tris != 2 * interior + hull.len() - 2 {
                return Err(ValidationError::EulerMismatch {
                    tris,
                    interior,
                    hull: hull.len(),
                });
            }
        }
        Ok(())
    }

    /// Labeled site of a vertex, as the kernel predicates expect it.
    pub fn site(&self, v: VertexId) -> (Point, WeightClass, u64) {
        let vert = &self.verts[v.index()];
        (vert.point, vert.kind, v.sos_id())
    }

    /// Deletes every non-Input vertex together with all incident triangles.
    /// Surviving triangles keep their slots and stamps; links into deleted
    /// triangles become hull edges. After this the structure may be a proper
    /// triangulation of the input hull, or (for degenerate inputs) a bare
    /// vertex/edge set; `validate` only applies to the former.
    pub fn remove_non_input(&mut self) {
        let doomed_tris: Vec<TriRef> = self
            .live_triangles()
            .filter(|(_, tri)| {
                tri.v
                    .iter()
                    .any(|&v| self.verts[v.index()].kind != WeightClass::Input)
            })
            .map(|(t, _)| t)
            .collect();
        for t in doomed_tris {
            let stamp = self.next_stamp();
            let slot = &mut self.tris[t.index()];
            slot.alive = false;
            slot.stamp = stamp;
        }
        let dead_links: Vec<(usize, usize)> = self
            .tris
            .iter()
            .enumerate()
            .filter(|(_, s)| s.alive)
            .flat_map(|(ti, s)| {
                (0..3)
                    .filter(|&i| matches!(s.nbr[i], Some(t) if !self.tris[t.index()].alive))
                    .map(move |i| (ti, i))
            })
            .collect();
        for (ti, i) in dead_links {
            self.tris[ti].nbr[i] = None;
        }
        for v in 0..self.verts.len() {
            if self.verts[v].kind != WeightClass::Input {
                self.verts[v].removed = true;
                self.vert_tri[v] = None;
            } else {
                self.vert_tri[v] = None;
            }
        }
        for (t, tri) in self
            .tris
            .iter()
            .enumerate()
            .filter(|(_, s)| s.alive)
            .map(|(i, s)| (TriRef(i as u32), s.clone()))
            .collect::<Vec<_>>()
        {
            for v in tri.v {
                self.vert_tri[v.index()] = Some(t);
            }
        }
        self.normalize_hint();
    }

    #[cfg(test)]
    fn corrupt_neighbor_for_tests(&mut self, t: TriRef, i: usize) {
        self.tris[t.index()].nbr[i] = None;
    }
}
