//! Certificates that a fan lies in a recognized quasi-convex class.

use serde::{Deserialize, Serialize};

use super::{dot, geom, Fan};
use crate::algebra::{Rat, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuasiConvexity {
    /// Pure of full dimension, every wall in exactly two maximal cones.
    Complete,
    /// Support is a pointed convex cone.
    SupportedOnCone,
    /// Support is convex and full-dimensional in its span, but not pointed.
    ConvexFullDimSupport,
    /// The closure of the complement of the support is a pointed convex cone.
    ComplementConvex,
    /// Not certified; computations still run.
    Unknown,
}

impl QuasiConvexity {
    pub fn is_certified(self) -> bool {
        self != QuasiConvexity::Unknown
    }
}

/// Boundary walls: codimension-one cones in exactly one maximal cone,
/// each with the inward normal of that maximal cone.
fn boundary_walls(fan: &Fan) -> Vec<(usize, usize, Vec<Rat>)> {
    let n = fan.dim();
    let mut out = Vec::new();
    for w in 0..fan.num_cones() {
        if fan.cone(w).dim() + 1 != n {
            continue;
        }
        let owners: Vec<usize> = fan.cofaces(w).iter().copied().filter(|&c| fan.cone(c).dim() == n).collect();
        if owners.len() == 1 {
            let m = owners[0];
            let pos = fan.facets(m).iter().position(|&f| f == w).expect("wall is a facet");
            out.push((w, m, fan.cone(m).facet_normals()[pos].clone()));
        }
    }
    out
}

/// Classifies `fan` into one of the recognized quasi-convex classes.
pub fn classify_quasi_convex(fan: &Fan) -> QuasiConvexity {
    if fan.is_empty() || !fan.is_pure() {
        return QuasiConvexity::Unknown;
    }
    let n = fan.dim();
    let d = fan.ambient_dim();
    let all_rays: Vec<Vec<Rat>> = (0..fan.rays().len()).map(|r| fan.ray_q(r).to_vec()).collect();
    let span = Subspace::span_vecs(&all_rays, d);
    if span.dim() != n {
        return QuasiConvexity::Unknown;
    }
    let walls = boundary_walls(fan);
    if walls.is_empty() {
        return if n == d { QuasiConvexity::Complete } else { QuasiConvexity::ConvexFullDimSupport };
    }
    let convex = walls.iter().all(|(_, _, w)| all_rays.iter().all(|r| !dot(w, r).is_negative()));
    if convex {
        return if geom::pointedness_witness(&all_rays, d).is_some() {
            QuasiConvexity::SupportedOnCone
        } else {
            QuasiConvexity::ConvexFullDimSupport
        };
    }
    if n == d && complement_is_convex_cone(fan, &walls, &all_rays) {
        return QuasiConvexity::ComplementConvex;
    }
    QuasiConvexity::Unknown
}

/// The boundary rays generate a pointed full-dimensional cone `C`, lying on
/// the far side of every boundary wall, with no ray of the fan in the
/// interior of `C`. Only complements that are single cones are recognized.
fn complement_is_convex_cone(fan: &Fan, walls: &[(usize, usize, Vec<Rat>)], all_rays: &[Vec<Rat>]) -> bool {
    let d = fan.ambient_dim();
    let mut brays: Vec<usize> = walls.iter().flat_map(|(w, _, _)| fan.cone(*w).rays().to_vec()).collect();
    brays.sort_unstable();
    brays.dedup();
    let gens: Vec<Vec<Rat>> = brays.iter().map(|&r| all_rays[r].clone()).collect();
    if gens.is_empty() || Subspace::span_vecs(&gens, d).dim() != d {
        return false;
    }
    if geom::pointedness_witness(&gens, d).is_none() {
        return false;
    }
    if !walls.iter().all(|(_, _, w)| gens.iter().all(|g| !dot(w, g).is_positive())) {
        return false;
    }
    let c = Fan::build(d, &brays.iter().map(|&r| fan.ray(r).to_vec()).collect::<Vec<_>>(), &[(0..brays.len()).collect()]);
    let Ok(c) = c else { return false };
    let top = c.maximal_cones()[0];
    all_rays.iter().all(|r| !c.cone_contains_relint(top, r))
}
