//! Subdivisions of fans with certified support equality.

use std::collections::{BTreeSet, HashMap};

use super::refine::pulling_triangulation;
use super::{dot, geom, Fan};
use crate::algebra::{Mat, Rat};
use crate::error::{Error, Result};

/// A fan `fine` refining `coarse`, with `pi[t]` the smallest cone of
/// `coarse` containing cone `t` of `fine`.
#[derive(Clone, Debug)]
pub struct FanSubdivision {
    pub fine: Fan,
    pub coarse: Fan,
    pub pi: Vec<usize>,
}

impl FanSubdivision {
    pub fn identity(fan: &Fan) -> FanSubdivision {
        FanSubdivision { fine: fan.clone(), coarse: fan.clone(), pi: (0..fan.num_cones()).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.fine.rays() == self.coarse.rays()
            && self.fine.num_cones() == self.coarse.num_cones()
            && self.pi.iter().enumerate().all(|(t, &s)| self.fine.cone(t).rays() == self.coarse.cone(s).rays())
    }

    /// Computes `pi` for a fan known to refine `coarse`; reports fine rays
    /// outside the coarse support and fine cones inside no coarse cone.
    pub fn from_containment(fine: Fan, coarse: Fan) -> Result<FanSubdivision> {
        if fine.ambient_dim() != coarse.ambient_dim() {
            return Err(Error::AmbientMismatch(fine.ambient_dim(), coarse.ambient_dim()));
        }
        let ray_in: Vec<BTreeSet<usize>> = (0..fine.rays().len())
            .map(|r| (0..coarse.num_cones()).filter(|&s| coarse.cone_contains(s, fine.ray_q(r))).collect())
            .collect();
        if let Some(r) = ray_in.iter().position(|s| s.is_empty()) {
            return Err(Error::SupportMismatch(format!("fine ray {:?} lies outside the coarse support", fine.ray(r))));
        }
        let mut pi = Vec::with_capacity(fine.num_cones());
        for t in 0..fine.num_cones() {
            let mut cands: BTreeSet<usize> = (0..coarse.num_cones()).collect();
            for &r in fine.cone(t).rays() {
                cands = cands.intersection(&ray_in[r]).copied().collect();
            }
            let best = cands.into_iter().min_by_key(|&s| (coarse.cone(s).dim(), s)).ok_or(Error::NotARefinement(t))?;
            pi.push(best);
        }
        Ok(FanSubdivision { fine, coarse, pi })
    }

    /// Fine cones mapping into the face poset of coarse cone `s`.
    pub fn preimage(&self, s: usize) -> Vec<usize> {
        (0..self.fine.num_cones()).filter(|&t| self.coarse.is_face(self.pi[t], s)).collect()
    }

    /// The fan `pi^{-1}(<s>)` and the map from its cones into `fine`.
    pub fn preimage_fan(&self, s: usize) -> (Fan, Vec<usize>) {
        self.fine.subfan(&self.preimage(s))
    }

    /// The subdivision restricted over the single-cone fan `<s>`.
    pub fn restrict_to_cone(&self, s: usize) -> (FanSubdivision, Vec<usize>, Vec<usize>) {
        let (fine, fmap) = self.preimage_fan(s);
        let (coarse, cmap) = self.coarse.cone_fan(s);
        let back: HashMap<usize, usize> = cmap.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let pi = fmap.iter().map(|&t| back[&self.pi[t]]).collect();
        (FanSubdivision { fine, coarse, pi }, fmap, cmap)
    }
}

/// `|det|` of the generators in span coordinates divided by the product of
/// their values under `psi`: proportional to the volume of the simplex cut
/// from the simplicial cone by `psi <= 1`.
fn simplex_volume(gens: &[Vec<Rat>], span: &crate::algebra::Subspace, psi: &[Rat]) -> Rat {
    let k = gens.len();
    let rows: Vec<Vec<Rat>> = gens.iter().map(|g| span.coords(g)).collect();
    let det = Mat::from_rows(rows, k).det().abs();
    let mut denom = Rat::ONE;
    for g in gens {
        denom = &denom * &dot(psi, g);
    }
    &det / &denom
}

/// Builds the subdivision, certifying that every fine cone lies in a coarse
/// cone and that the fine cones inside each maximal coarse cone fill it.
pub fn build_subdivision(fine: &Fan, coarse: &Fan) -> Result<FanSubdivision> {
    let sub = FanSubdivision::from_containment(fine.clone(), coarse.clone())?;
    let mut fine_memo = HashMap::new();
    let mut coarse_memo = HashMap::new();
    for &s in coarse.maximal_cones() {
        let c = coarse.cone(s);
        let k = c.dim();
        if k == 0 {
            continue;
        }
        let psi = geom::pointedness_witness(&coarse.ray_gens(s), coarse.ambient_dim()).expect("cones are pointed");
        let mut coarse_vol = Rat::ZERO;
        for simplex in pulling_triangulation(coarse, s, &mut coarse_memo) {
            let gens: Vec<Vec<Rat>> = simplex.iter().map(|&r| coarse.ray_q(r).to_vec()).collect();
            coarse_vol += &simplex_volume(&gens, c.span(), &psi);
        }
        let mut fine_vol = Rat::ZERO;
        for t in (0..fine.num_cones()).filter(|&t| sub.pi[t] == s && fine.cone(t).dim() == k) {
            for simplex in pulling_triangulation(fine, t, &mut fine_memo) {
                let gens: Vec<Vec<Rat>> = simplex.iter().map(|&r| fine.ray_q(r).to_vec()).collect();
                fine_vol += &simplex_volume(&gens, c.span(), &psi);
            }
        }
        if fine_vol != coarse_vol {
            return Err(Error::SupportMismatch(format!(
                "fine cones cover volume {fine_vol} of coarse cone {:?}, which has volume {coarse_vol}",
                c.rays()
            )));
        }
    }
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone2() -> Fan {
        Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap()
    }

    fn split2() -> Fan {
        Fan::build(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn split_cone_maps_to_top() {
        let s = build_subdivision(&split2(), &cone2()).unwrap();
        let top = s.coarse.find(&[0, 1]).unwrap();
        let mid = s.fine.find(&[1]).unwrap();
        assert_eq!(s.pi[mid], top);
        for &m in s.fine.maximal_cones() {
            assert_eq!(s.pi[m], top);
        }
        assert_eq!(s.pi[s.fine.find(&[0]).unwrap()], s.coarse.find(&[0]).unwrap());
        assert_eq!(s.pi[s.fine.find(&[2]).unwrap()], s.coarse.find(&[1]).unwrap());
    }

    #[test]
    fn identity_and_mismatch() {
        assert!(build_subdivision(&cone2(), &cone2()).unwrap().is_identity());
        let complete =
            Fan::build(2, &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
                .unwrap();
        assert!(matches!(build_subdivision(&complete, &cone2()), Err(Error::SupportMismatch(_))));
        let half = Fan::build(2, &[vec![1, 0], vec![1, 1]], &[vec![0, 1]]).unwrap();
        assert!(matches!(build_subdivision(&half, &cone2()), Err(Error::SupportMismatch(_))));
    }
}
