//! The Ehrhart sheaf: on a simplicial cone, the lattice points `x^lambda`
//! form a free `A`-module on the box points; non-simplicial fans push it
//! forward from the simplicial refinement.

use std::collections::HashMap;

use crate::algebra::module::{FreeModule, RingSpec};
use crate::algebra::{Mat, Rat};
use crate::error::{Error, Result};
use crate::fan::{box_points, simplicial_refinement, DegreeMap, Fan};

use super::pushforward::pushforward;
use super::{Sheaf, Structure};

/// Ehrhart sheaf of `fan` with degree map `G`.
pub fn build_ehrhart_sheaf(fan: &Fan, g: &DegreeMap) -> Result<Sheaf> {
    build_ehrhart_sheaf_with(fan, &|s, x| g.value_int(s, x))
}

/// Ehrhart sheaf for a degree map given as `degree(s, x)` at lattice points
/// `x` of cone `s` of `fan`.
pub fn build_ehrhart_sheaf_with(fan: &Fan, degree: &dyn Fn(usize, &[i64]) -> Rat) -> Result<Sheaf> {
    if fan.is_simplicial() {
        return simplicial(fan, degree);
    }
    let refinement = simplicial_refinement(fan);
    let fine = simplicial(&refinement.fine, &|t, x| degree(refinement.pi[t], x))?;
    let mut out = pushforward(&refinement, &fine)?.sheaf;
    out.structure = Structure::Ehrhart;
    out.refinement = Some(refinement.fine.maximal_cones().iter().map(|&m| refinement.fine.cone(m).rays().to_vec()).collect());
    Ok(out)
}

fn simplicial(fan: &Fan, degree: &dyn Fn(usize, &[i64]) -> Rat) -> Result<Sheaf> {
    let d = fan.ambient_dim();
    let mut sheaf = Sheaf::empty(fan, Structure::Ehrhart);
    // per cone: degree index and basis index of every stored lattice point
    let mut points: Vec<HashMap<Vec<i64>, (usize, usize)>> = Vec::with_capacity(fan.num_cones());
    for s in 0..fan.num_cones() {
        let rays: Vec<Vec<i64>> = fan.cone(s).rays().iter().map(|&r| fan.ray(r).to_vec()).collect();
        let boxes = box_points(&rays, d);
        let mut gen_degrees = Vec::with_capacity(boxes.len());
        for b in &boxes {
            let v = degree(s, &b.point);
            let k = v
                .to_i64()
                .filter(|x| *x >= 0)
                .ok_or_else(|| Error::NotGorenstein { cone: s, witness: b.point.clone(), value: v.clone() })?;
            let k = sheaf
                .grading
                .index_of(&[k as u32])
                .filter(|&k| !sheaf.grading.is_sentinel(k))
                .ok_or(Error::CapTooSmall { degree: vec![k as u32] })?;
            gen_degrees.push(k);
        }
        let action = (0..d).map(|j| rays.iter().map(|v| Rat::int(v[j])).collect()).collect();
        let ring = RingSpec { local: vec![0; rays.len()], action };
        let free = FreeModule::new(sheaf.grading.clone(), ring, gen_degrees);
        let mut here = HashMap::new();
        for (k, labels) in free.labels.iter().enumerate() {
            for (i, (gi, a)) in labels.iter().enumerate() {
                let mut p = boxes[*gi].point.clone();
                for (v, &n) in rays.iter().zip(a) {
                    for (pc, vc) in p.iter_mut().zip(v) {
                        *pc += vc * i64::from(n);
                    }
                }
                here.insert(p, (k, i));
            }
        }
        let mut res = Vec::new();
        for &t in fan.faces(s) {
            if t == s {
                continue;
            }
            let mut mats: Vec<Mat> =
                (0..sheaf.degrees()).map(|k| Mat::zeros(sheaf.stalks[t].dims[k], free.module.dims[k])).collect();
            for (p, &(k, i)) in &here {
                if let Some(&(kt, j)) = points[t].get(p) {
                    debug_assert_eq!(k, kt);
                    mats[k].set(j, i, Rat::ONE);
                }
            }
            res.push((t, mats));
        }
        points.push(here);
        sheaf.push_stalk(free.module, res);
    }
    Ok(sheaf)
}
