//! Hodge-Deligne polynomials of reduced global sections filtered by degree
//! and by weight, the refined version with the monodromy filtration, and
//! t-Poincare polynomials.

use crate::algebra::{Mat, Poly, Rat, Subspace, Vars};
use crate::error::{Error, Result};
use crate::fan::FanSubdivision;

use super::decompose::{decompose, kernels, SimpleCache};
use super::pushforward::pushforward;
use super::simple::build_simple_sheaf;
use super::weight::WeightData;
use super::{Sections, Sheaf, Structure};

/// Reduced weight subspaces `rho(W^r)` of global sections for
/// `r = 0..=rmax + 1`, per degree.
fn reduced_weights(f: &Sheaf, sec: &Sections, rho: &[Mat]) -> Vec<Vec<Subspace>> {
    let w = WeightData::new(f);
    (0..=w.rmax + 1)
        .map(|r| w.on_sections(f, sec, r).iter().enumerate().map(|(k, s)| s.image(&rho[k])).collect())
        .collect()
}

fn check_vanishes(levels: &[Vec<Subspace>], what: &str) -> Result<()> {
    let last = levels.last().expect("at least one level");
    if last.iter().any(|s| s.dim() > 0) {
        return Err(Error::ConsistencyMismatch(format!("{what} weight filtration does not reach zero")));
    }
    Ok(())
}

/// `P^t(ov F(Delta))`: reduced dimensions with `t^(tdeg)`.
pub fn reduced_poincare(f: &Sheaf, dims: &[usize]) -> Poly {
    let mut p = Poly::zero(Vars::T);
    for (k, &n) in dims.iter().enumerate() {
        if n > 0 {
            p.add_term(&[f.grading.tdeg(k) as i32], &Rat::int(n as i64));
        }
    }
    p
}

/// `E(u, v) = sum dim Gr^F_p Gr_W^r u^p v^(r - p)`, with `p` the degree
/// (t-degree for multigradings). Checks that `u -> t, v -> 1` gives the
/// reduced Poincare polynomial.
pub fn hodge_deligne(f: &Sheaf) -> Result<Poly> {
    let sec = f.global_sections();
    let red = sec.module.reduce()?;
    let rho: Vec<Mat> = (0..f.degrees()).map(|k| red.rho(k)).collect();
    let levels = reduced_weights(f, &sec, &rho);
    check_vanishes(&levels, "global")?;
    let mut e = Poly::zero(Vars::UV);
    for k in 0..f.degrees() {
        let p = f.grading.tdeg(k) as i32;
        for r in 0..levels.len() - 1 {
            let n = levels[r][k].dim() - levels[r + 1][k].dim();
            if n > 0 {
                e.add_term(&[p, r as i32 - p], &Rat::int(n as i64));
            }
        }
    }
    let spec = e.subst(Vars::T, &[vec![1], vec![0]]);
    if spec != reduced_poincare(f, &red.dims) {
        return Err(Error::ConsistencyMismatch("Hodge-Deligne polynomial does not specialize to the Poincare polynomial".into()));
    }
    Ok(e)
}

/// The refined limit Hodge-Deligne polynomial from the triple filtration
/// and from the summand formula, which must agree.
#[derive(Clone, Debug)]
pub struct RefinedHodge {
    pub direct: Poly,
    pub formula: Poly,
}

/// Subspace dimensions `dim(a ∩ b)` with empty intersections short-cut.
fn meet_dim(a: &Subspace, b: &Subspace) -> usize {
    if a.dim() == 0 || b.dim() == 0 {
        0
    } else {
        a.intersect(b).dim()
    }
}

/// Direct computation: `M^m` is the image of the weight filtration of `F`
/// on `Sigma`, `W^r` that of `pi_* F` on `Delta`; a class of degree `p` in
/// `Gr_M^m Gr_W^r` contributes `u^p v^(m - p) w^r`.
fn refined_direct(sub: &FanSubdivision, f: &Sheaf) -> Result<Poly> {
    let pf = pushforward(sub, f)?;
    let coarse = &pf.sheaf;
    let h = coarse.global_sections();
    let red = h.module.reduce()?;
    let rho: Vec<Mat> = (0..f.degrees()).map(|k| red.rho(k)).collect();
    let wl = reduced_weights(coarse, &h, &rho);
    check_vanishes(&wl, "coarse")?;
    // sections over Sigma into sections of the pushforward over Delta
    let g = f.global_sections();
    let phi: Vec<Mat> = (0..f.degrees())
        .map(|k| {
            let mut m = Mat::zeros(h.ambient[k], g.space[k].dim());
            for (mi, &s) in h.maximal.iter().enumerate() {
                m.put(h.offsets[k][mi], 0, &g.restriction_to(f, &pf.sections[s], k));
            }
            rho[k].mul(&h.space[k].coord_map().mul(&m))
        })
        .collect();
    let ml = reduced_weights(f, &g, &phi);
    check_vanishes(&ml, "monodromy")?;
    let mut e = Poly::zero(Vars::UVW);
    for k in 0..f.degrees() {
        let p = f.grading.tdeg(k) as i32;
        let d = |r: usize, m: usize| -> i64 {
            if r >= wl.len() || m >= ml.len() {
                0
            } else {
                meet_dim(&wl[r][k], &ml[m][k]) as i64
            }
        };
        for r in 0..wl.len() {
            for m in 0..ml.len() {
                let n = d(r, m) - d(r + 1, m) - d(r, m + 1) + d(r + 1, m + 1);
                if n != 0 {
                    e.add_term(&[p, m as i32 - p, r as i32], &Rat::int(n));
                }
            }
        }
    }
    Ok(e)
}

/// Summand formula: over the decomposition of `F` into `L_sigma[-j]`,
/// `u^j v^(dim sigma - j) sum_tau w^(dim tau) L(pi_* L_sigma, tau; uv)
/// P(ov L_tau(Delta); uvw^2)`.
fn refined_formula(sub: &FanSubdivision, f: &Sheaf) -> Result<Poly> {
    let dec = decompose(f)?;
    let mut coarse_simple = SimpleCache::new(&sub.coarse, Structure::A);
    let mut e = Poly::zero(Vars::UVW);
    for sm in &dec.summands {
        let j = sm.shift[0] as i32;
        let dim = sub.fine.cone(sm.cone).dim() as i32;
        let l = build_simple_sheaf(&sub.fine, sm.cone, Structure::A)?;
        let pl = pushforward(sub, &l)?;
        let ker = kernels(&pl.sheaf)?;
        let mut inner = Poly::zero(Vars::UVW);
        for tau in 0..sub.coarse.num_cones() {
            let local = ker.local_poincare(tau);
            if local.is_zero() {
                continue;
            }
            let local = local.subst(Vars::UVW, &[vec![1, 1, 0]]);
            let dims = coarse_simple.reduced_global(tau)?;
            let mut pt = Poly::zero(Vars::UVW);
            for (k, &n) in dims.iter().enumerate() {
                if n > 0 {
                    let k = k as i32;
                    pt.add_term(&[k, k, 2 * k], &Rat::int(n as i64));
                }
            }
            let wd = Poly::monomial(Vars::UVW, &[0, 0, sub.coarse.cone(tau).dim() as i32], Rat::ONE);
            inner = inner.add(&wd.mul(&local).mul(&pt));
        }
        let lead = Poly::monomial(Vars::UVW, &[j, dim - j, 0], Rat::int(sm.multiplicity as i64));
        e = e.add(&lead.mul(&inner));
    }
    Ok(e)
}

/// Refined limit Hodge-Deligne polynomial of a sheaf on `sub.fine`, with
/// the direct computation checked against the summand formula.
pub fn refined_hodge_deligne(sub: &FanSubdivision, f: &Sheaf) -> Result<RefinedHodge> {
    let direct = refined_direct(sub, f)?;
    let formula = refined_formula(sub, f)?;
    if direct != formula {
        return Err(Error::TripleGradedMismatch(format!(
            "direct {} vs formula {}",
            direct.to_json(),
            formula.to_json()
        )));
    }
    Ok(RefinedHodge { direct, formula })
}

/// Which reduced space `t_poincare` measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceSelector {
    Sections,
    RelBoundary,
}

/// `P^t` of the reduced global sections, or of the reduced sections
/// vanishing on the boundary subfan.
pub fn t_poincare(f: &Sheaf, which: SpaceSelector) -> Result<Poly> {
    let sec = f.global_sections();
    let module = match which {
        SpaceSelector::Sections => sec.module.clone(),
        SpaceSelector::RelBoundary => {
            let (_, bmap) = f.fan.boundary()?;
            let bd = f.sections(&bmap);
            let ker: Vec<Subspace> = (0..f.degrees()).map(|k| sec.restriction_to(f, &bd, k).kernel()).collect();
            sec.module.submodule(&ker)
        }
    };
    let red = module.reduce()?;
    Ok(reduced_poincare(f, &red.dims))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{build_subdivision, gorenstein_degree_map, Fan};
    use crate::sheaf::{build_ehrhart_sheaf_with, minimal_extension};

    fn complete4() -> Fan {
        Fan::build(2, &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
            .unwrap()
    }

    fn uv(terms: &[(i32, i32, i64)]) -> Poly {
        let mut p = Poly::zero(Vars::UV);
        for &(a, b, c) in terms {
            p.add_term(&[a, b], &Rat::int(c));
        }
        p
    }

    #[test]
    fn complete_fan_hodge_deligne() {
        let l = minimal_extension(&complete4(), Structure::A).unwrap();
        assert_eq!(hodge_deligne(&l).unwrap(), uv(&[(0, 0, 1), (1, 1, 2), (2, 2, 1)]));
    }

    #[test]
    fn shifted_simple_on_two_cone() {
        let f = Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        let top = f.maximal_cones()[0];
        let l = build_simple_sheaf(&f, top, Structure::A).unwrap().shift(&[1]);
        assert_eq!(hodge_deligne(&l).unwrap(), uv(&[(1, 1, 1)]));
    }

    #[test]
    fn c_structure_split_cone() {
        let fine = Fan::build(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]).unwrap();
        let coarse = Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        let sub = build_subdivision(&fine, &coarse).unwrap();
        let p = pushforward(&sub, &minimal_extension(&fine, Structure::C).unwrap()).unwrap();
        assert_eq!(hodge_deligne(&p.sheaf).unwrap(), uv(&[(0, 0, 1), (1, 1, 1), (1, 2, 1), (2, 1, 1)]));
    }

    #[test]
    fn t_poincare_values() {
        let l = minimal_extension(&complete4(), Structure::C).unwrap();
        let p = t_poincare(&l, SpaceSelector::Sections).unwrap();
        // (1+t)(1+t^2) + 2(t+t^2)
        assert_eq!(p, Poly::from_coeffs(&[1, 3, 3, 1]));
        let cone = Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        let l = minimal_extension(&cone, Structure::C).unwrap();
        assert_eq!(t_poincare(&l, SpaceSelector::Sections).unwrap(), Poly::from_coeffs(&[1, 1]));
        assert_eq!(t_poincare(&l, SpaceSelector::RelBoundary).unwrap(), Poly::from_coeffs(&[0, 0, 1, 1]));
    }

    #[test]
    fn refined_split_segment() {
        let fine = Fan::build(2, &[vec![1, 0], vec![1, 1], vec![1, 2]], &[vec![0, 1], vec![1, 2]]).unwrap();
        let coarse = Fan::build(2, &[vec![1, 0], vec![1, 2]], &[vec![0, 1]]).unwrap();
        let sub = build_subdivision(&fine, &coarse).unwrap();
        let g = gorenstein_degree_map(&coarse).unwrap();
        let e = build_ehrhart_sheaf_with(&fine, &|t, x| g.value_int(sub.pi[t], x)).unwrap();
        let r = refined_hodge_deligne(&sub, &e).unwrap();
        let mut expect = Poly::one(Vars::UVW);
        expect.add_term(&[1, 1, 2], &Rat::ONE);
        assert_eq!(r.direct, expect);
    }

    #[test]
    fn refined_identity_complete() {
        let f = complete4();
        let l = minimal_extension(&f, Structure::A).unwrap();
        let r = refined_hodge_deligne(&FanSubdivision::identity(&f), &l).unwrap();
        let mut expect = Poly::one(Vars::UVW);
        expect.add_term(&[1, 1, 2], &Rat::int(2));
        expect.add_term(&[2, 2, 4], &Rat::ONE);
        assert_eq!(r.direct, expect);
    }
}
