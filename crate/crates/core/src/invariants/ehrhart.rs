//! Lattice-point generating functions graded by a degree map, computed from
//! box points of a simplicial refinement.

use crate::algebra::{Poly, Rat, Vars};
use crate::error::{Error, Result};
use crate::fan::{box_points, simplicial_refinement, Fan, FanSubdivision};

/// For every cone `rho` of a simplicial refinement, the exponents
/// `G(b) + #{i : c_i = 0}` over its box points `b = sum c_i v_i`.
///
/// Lattice points in the relative interior of `rho` are `b + sum n_i v_i`
/// with `n_i >= 1` where `c_i = 0`, so `rho` contributes
/// `sum_b t^(G(b) + #zeros) / (1 - t)^dim rho` to the Ehrhart series.
#[derive(Clone, Debug)]
pub struct EhrhartData {
    pub refinement: FanSubdivision,
    exponents: Vec<Vec<u32>>,
}

impl EhrhartData {
    /// `degree(s, x)` evaluates the degree map at lattice point `x` of cone
    /// `s` of `fan`.
    pub fn new(fan: &Fan, degree: &dyn Fn(usize, &[i64]) -> Rat) -> Result<EhrhartData> {
        let refinement = simplicial_refinement(fan);
        let fine = &refinement.fine;
        let d = fan.ambient_dim();
        let mut exponents = Vec::with_capacity(fine.num_cones());
        for rho in 0..fine.num_cones() {
            let gens: Vec<Vec<i64>> = fine.cone(rho).rays().iter().map(|&r| fine.ray(r).to_vec()).collect();
            let s = refinement.pi[rho];
            let mut exps = Vec::new();
            for b in box_points(&gens, d) {
                let g = degree(s, &b.point);
                let g = g
                    .to_i64()
                    .filter(|v| *v >= 0)
                    .ok_or_else(|| Error::NotGorenstein { cone: s, witness: b.point.clone(), value: g.clone() })?;
                let zeros = b.coeffs.iter().filter(|c| c.is_zero()).count();
                exps.push(g as u32 + zeros as u32);
            }
            exponents.push(exps);
        }
        Ok(EhrhartData { refinement, exponents })
    }

    /// Exponent lists per refined cone.
    pub fn exponents(&self, rho: usize) -> &[u32] {
        &self.exponents[rho]
    }

    /// The `h*` numerator of `sum` over refined cones lying over the coarse
    /// cones selected by `over`, for a fan of dimension `n`.
    fn numerator(&self, n: usize, over: &dyn Fn(usize) -> bool) -> Poly {
        let mut out = Poly::zero(Vars::T);
        let one_minus_t = Poly::from_coeffs(&[1, -1]);
        for rho in 0..self.refinement.fine.num_cones() {
            if !over(self.refinement.pi[rho]) {
                continue;
            }
            let k = self.refinement.fine.cone(rho).dim();
            let pow = one_minus_t.pow((n - k) as u32);
            for &e in &self.exponents[rho] {
                out = out.add(&pow.shift(&[e as i32]));
            }
        }
        out
    }

    /// `h*(<s>; t)`.
    pub fn hstar_cone(&self, s: usize) -> Poly {
        let coarse = &self.refinement.coarse;
        let n = coarse.cone(s).dim();
        self.numerator(n, &|c| coarse.is_face(c, s))
    }

    /// `h*(fan; t)`.
    pub fn hstar(&self) -> Poly {
        self.numerator(self.refinement.coarse.dim(), &|_| true)
    }

    /// Number of lattice points of degree `k` in cone `s` of the fan, for
    /// `k = 0..=max`, read off the box decomposition.
    pub fn counts_cone(&self, s: usize, max: usize) -> Vec<u64> {
        let coarse = &self.refinement.coarse;
        let mut counts = vec![0u64; max + 1];
        for rho in 0..self.refinement.fine.num_cones() {
            if !coarse.is_face(self.refinement.pi[rho], s) {
                continue;
            }
            let k = self.refinement.fine.cone(rho).dim() as u64;
            // number of ways to add k nonnegative integers to reach m is C(m+k-1, k-1)
            for &e in &self.exponents[rho] {
                for (deg, c) in counts.iter_mut().enumerate() {
                    let e = u64::from(e);
                    let deg = deg as u64;
                    if deg < e {
                        continue;
                    }
                    let m = deg - e;
                    *c += if k == 0 { u64::from(m == 0) } else { binomial(m + k - 1, k - 1) };
                }
            }
        }
        counts
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
