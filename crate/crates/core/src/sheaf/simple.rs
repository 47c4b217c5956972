//! Simple pure sheaves `L_sigma`, built cone by cone as free modules on
//! lifts of the reduced sections over the boundary.

use std::collections::HashMap;

use crate::algebra::module::{FreeModule, GradedModule};
use crate::algebra::{Mat, Rat};
use crate::error::Result;
use crate::fan::Fan;

use super::{Sections, Sheaf, Structure};

/// Column vectors of `x^a s` for every basis label `(g, a)` of `free`,
/// where `s_g` is a vector of the sections `sec` and `x_i` acts through the
/// ring's local variables.
fn images_of_labels(free: &FreeModule, sec: &Sections, gens: &[(usize, Vec<Rat>)]) -> Vec<Mat> {
    let g = &free.module.grading;
    let mut memo: HashMap<(usize, Vec<u32>), Vec<Rat>> = HashMap::new();
    let mut out = Vec::with_capacity(g.len());
    // labels are processed in degree order, so a label's predecessor is ready
    for k in 0..g.len() {
        let mut cols = Vec::with_capacity(free.labels[k].len());
        for (gi, a) in &free.labels[k] {
            let v = match a.iter().position(|&e| e > 0) {
                None => gens[*gi].1.clone(),
                Some(i) => {
                    let mut b = a.clone();
                    b[i] -= 1;
                    let var = free.ring.local[i];
                    let lo = g.down(k, var).expect("label degrees are consistent");
                    let prev = &memo[&(*gi, b)];
                    sec.module.mul_map(lo, var).expect("stored").mul_vec(prev)
                }
            };
            memo.insert((*gi, a.clone()), v.clone());
            cols.push(v);
        }
        out.push(Mat::from_cols(&cols, sec.space[k].dim()));
    }
    out
}

/// Extends a partially built sheaf to cone `t` by the free module on lifts
/// of the reduced sections over `boundary <t>`; the restriction to each
/// proper face factors through those sections.
pub(crate) fn extend_minimally(sheaf: &mut Sheaf, t: usize) -> Result<()> {
    let sec = sheaf.boundary_sections(t);
    let red = sec.module.reduce()?;
    let mut gen_degrees = Vec::new();
    let mut gens: Vec<(usize, Vec<Rat>)> = Vec::new();
    for (k, q) in red.quotients.iter().enumerate() {
        for &i in q.lift_indices() {
            let mut v = vec![Rat::ZERO; sec.space[k].dim()];
            v[i] = Rat::ONE;
            gen_degrees.push(k);
            gens.push((k, v));
        }
    }
    let free = FreeModule::new(sheaf.grading.clone(), sheaf.rings[t].clone(), gen_degrees);
    let phi = images_of_labels(&free, &sec, &gens);
    let mut res = Vec::new();
    for &rho in sheaf.fan.faces(t) {
        if rho == t {
            continue;
        }
        let mats = (0..sheaf.degrees()).map(|k| sec.restrict_to(sheaf, k, rho).mul(&phi[k])).collect();
        res.push((rho, mats));
    }
    sheaf.push_stalk(free.module, res);
    Ok(())
}

fn push_zero(sheaf: &mut Sheaf, t: usize) {
    let z = GradedModule::zero(sheaf.grading.clone());
    let res = sheaf
        .fan
        .faces(t)
        .iter()
        .copied()
        .filter(|&r| r != t)
        .map(|r| (r, (0..sheaf.degrees()).map(|k| Mat::zeros(sheaf.stalks[r].dims[k], 0)).collect()))
        .collect();
    sheaf.push_stalk(z, res);
}

/// The simple sheaf `L_sigma` with `L_sigma(sigma)` the structure ring in
/// degree zero, supported on the star of `sigma`.
pub fn build_simple_sheaf(fan: &Fan, sigma: usize, structure: Structure) -> Result<Sheaf> {
    let structure = if structure == Structure::Ehrhart { Structure::A } else { structure };
    let mut sheaf = Sheaf::empty(fan, structure);
    for t in 0..fan.num_cones() {
        if !fan.is_face(sigma, t) {
            push_zero(&mut sheaf, t);
        } else if t == sigma {
            let free = FreeModule::new(sheaf.grading.clone(), sheaf.rings[t].clone(), vec![0]);
            let res = fan
                .faces(t)
                .iter()
                .copied()
                .filter(|&r| r != t)
                .map(|r| {
                    let mats = (0..sheaf.degrees()).map(|k| Mat::zeros(sheaf.stalks[r].dims[k], free.module.dims[k])).collect();
                    (r, mats)
                })
                .collect();
            sheaf.push_stalk(free.module, res);
        } else {
            extend_minimally(&mut sheaf, t)?;
        }
    }
    Ok(sheaf)
}

/// `L_o`: the minimal extension of the structure ring at the zero cone.
pub fn minimal_extension(fan: &Fan, structure: Structure) -> Result<Sheaf> {
    build_simple_sheaf(fan, fan.zero_cone().expect("nonempty fan"), structure)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_cone() -> Fan {
        Fan::build(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]], &[vec![0, 1, 3, 2]]).unwrap()
    }

    #[test]
    fn square_cone_stalk_generators() {
        let f = square_cone();
        let l = minimal_extension(&f, Structure::A).unwrap();
        let top = f.maximal_cones()[0];
        let red = l.stalk(top).reduce().unwrap();
        assert_eq!(red.dims[..3], [1, 1, 0]);
        assert!(l.check_flabby().is_ok());
    }

    #[test]
    fn split_cone_sections() {
        let f = Fan::build(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]).unwrap();
        let l = minimal_extension(&f, Structure::A).unwrap();
        let red = l.global_sections().module.reduce().unwrap();
        assert_eq!(red.dims, vec![1, 1, 0, 0]);
        for s in 0..f.num_cones() {
            assert!(l.stalk(s).check_commuting());
        }
    }

    #[test]
    fn c_structure_on_two_cone() {
        let f = Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        let l = minimal_extension(&f, Structure::C).unwrap();
        let top = f.maximal_cones()[0];
        let red = l.stalk(top).reduce().unwrap();
        let g = &l.grading;
        let gens: Vec<Vec<u32>> = (0..g.len()).filter(|&k| red.dims[k] > 0).map(|k| g.degree(k).to_vec()).collect();
        assert_eq!(gens, vec![vec![0, 0], vec![1, 0]]);
    }
}
