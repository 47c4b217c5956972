//! Decomposition of a pure sheaf into shifted simple sheaves, read off from
//! the kernels `K_sigma` of the reduced restrictions to the boundary.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{Poly, Rat, Subspace, Vars};
use crate::error::{Error, Result};
use crate::fan::{classify_quasi_convex, Fan};

use super::simple::build_simple_sheaf;
use super::{Sheaf, Structure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub cone: usize,
    /// The shift `j` of `L_sigma[-j]`: one entry for single gradings, the
    /// degree vector for multigradings.
    pub shift: Vec<u32>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// `K_sigma^k` inside the reduced stalk `ov F(sigma)^k`, per cone and
    /// degree.
    pub kernels: Vec<Vec<Subspace>>,
    tdegs: Vec<u32>,
}

impl Decomposition {
    /// `L(F, sigma; t) = sum_k dim K_sigma^k t^(tdeg k)`.
    pub fn local_poincare(&self, s: usize) -> Poly {
        let mut p = Poly::zero(Vars::T);
        for (k, ker) in self.kernels[s].iter().enumerate() {
            if ker.dim() > 0 {
                p.add_term(&[self.tdegs[k] as i32], &Rat::int(ker.dim() as i64));
            }
        }
        p
    }

    pub fn to_json(&self, kind_multi: bool) -> serde_json::Value {
        let summands: Vec<serde_json::Value> = self
            .summands
            .iter()
            .map(|s| {
                let shift = if kind_multi { serde_json::json!(s.shift) } else { serde_json::json!(s.shift[0]) };
                serde_json::json!({"cone": s.cone, "shift": shift, "multiplicity": s.multiplicity})
            })
            .collect();
        serde_json::json!({ "summands": summands })
    }
}

/// Computes every `K_sigma` without the consistency check.
pub fn kernels(f: &Sheaf) -> Result<Decomposition> {
    let g = &f.grading;
    let mut summands = Vec::new();
    let mut all = Vec::with_capacity(f.fan.num_cones());
    for s in 0..f.fan.num_cones() {
        let red = f.stalk(s).reduce()?;
        let bd = f.boundary_sections(s);
        let bred = bd.module.reduce()?;
        let mut per_degree = Vec::with_capacity(g.len());
        for k in 0..g.len() {
            let lifts = red.quotients[k].lift_indices();
            let m = bred.rho(k).mul(&bd.from_stalk(f, s, k).select_cols(lifts));
            let ker = m.kernel();
            if ker.dim() > 0 {
                summands.push(Summand { cone: s, shift: g.degree(k).to_vec(), multiplicity: ker.dim() });
            }
            per_degree.push(ker);
        }
        all.push(per_degree);
    }
    let tdegs = (0..g.len()).map(|k| g.tdeg(k)).collect();
    Ok(Decomposition { summands, kernels: all, tdegs })
}

/// Reduced dimensions of global sections of the simple sheaves, built on
/// demand.
pub struct SimpleCache<'a> {
    fan: &'a Fan,
    structure: Structure,
    dims: HashMap<usize, Vec<usize>>,
}

impl<'a> SimpleCache<'a> {
    pub fn new(fan: &'a Fan, structure: Structure) -> SimpleCache<'a> {
        SimpleCache { fan, structure, dims: HashMap::new() }
    }

    /// Degreewise dimensions of `ov L_sigma(fan)`.
    pub fn reduced_global(&mut self, s: usize) -> Result<&[usize]> {
        if !self.dims.contains_key(&s) {
            let l = build_simple_sheaf(self.fan, s, self.structure)?;
            let d = l.global_sections().module.reduce()?.dims;
            self.dims.insert(s, d);
        }
        Ok(&self.dims[&s])
    }
}

/// Checks `dim ov F(fan)^k = sum_sigma sum_j dim K_sigma^j dim ov L_sigma(fan)^(k-j)`.
pub fn check_consistency(f: &Sheaf, dec: &Decomposition, cache: &mut SimpleCache) -> Result<()> {
    let g = f.grading.clone();
    let lhs = f.global_sections().module.reduce()?.dims;
    let mut rhs = vec![0usize; g.len()];
    for sm in &dec.summands {
        let l = cache.reduced_global(sm.cone)?;
        for (k0, &n) in l.iter().enumerate() {
            if n == 0 {
                continue;
            }
            match g.shifted(k0, &sm.shift) {
                Some(k) => rhs[k] += sm.multiplicity * n,
                None => return Err(Error::CapTooSmall { degree: g.degree(k0).to_vec() }),
            }
        }
    }
    if lhs != rhs {
        return Err(Error::ConsistencyMismatch(format!("reduced sections {lhs:?}, summands give {rhs:?}")));
    }
    Ok(())
}

/// Decomposition of `F`; on certified quasi-convex fans the reduced section
/// dimensions are checked against the summands.
pub fn decompose(f: &Sheaf) -> Result<Decomposition> {
    let dec = kernels(f)?;
    if classify_quasi_convex(&f.fan).is_certified() {
        let structure = if f.structure == Structure::C { Structure::C } else { Structure::A };
        let mut cache = SimpleCache::new(&f.fan, structure);
        check_consistency(f, &dec, &mut cache)?;
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{build_subdivision, gorenstein_degree_map};
    use crate::sheaf::{build_ehrhart_sheaf, minimal_extension, pushforward};

    fn cones_and_shifts(d: &Decomposition) -> Vec<(usize, u32, usize)> {
        d.summands.iter().map(|s| (s.cone, s.shift[0], s.multiplicity)).collect()
    }

    #[test]
    fn minimal_extension_is_simple() {
        let f = Fan::build(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        let l = minimal_extension(&f, Structure::A).unwrap();
        let d = decompose(&l).unwrap();
        assert_eq!(cones_and_shifts(&d), vec![(f.zero_cone().unwrap(), 0, 1)]);
    }

    #[test]
    fn split_cone_pushforward() {
        let fine = Fan::build(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]).unwrap();
        let coarse = Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        let sub = build_subdivision(&fine, &coarse).unwrap();
        let p = pushforward(&sub, &minimal_extension(&fine, Structure::A).unwrap()).unwrap();
        let d = decompose(&p.sheaf).unwrap();
        let top = coarse.maximal_cones()[0];
        assert_eq!(cones_and_shifts(&d), vec![(coarse.zero_cone().unwrap(), 0, 1), (top, 1, 1)]);
    }

    #[test]
    fn square_cone_ehrhart() {
        let f = Fan::build(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]], &[vec![0, 1, 3, 2]]).unwrap();
        let e = build_ehrhart_sheaf(&f, &gorenstein_degree_map(&f).unwrap()).unwrap();
        let d = decompose(&e).unwrap();
        assert_eq!(cones_and_shifts(&d), vec![(f.zero_cone().unwrap(), 0, 1)]);
    }
}
