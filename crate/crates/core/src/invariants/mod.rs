//! Combinatorial invariants of fans and subdivisions: toric `g` and `h`,
//! local and mixed `h`, Ehrhart `h*` and its local, mixed and refined
//! variants, flag numbers and the `ab`-, `cd`- and mixed `cd`-indices.
//!
//! Everything here is computed from face posets and box points of the
//! original fans; links and preimages are handled as sets of cones.

pub mod ehrhart;
pub mod faces;

pub use ehrhart::EhrhartData;
pub use faces::{flag_key, ConeSet, FaceCache, FlagVector};

use crate::algebra::{NcPoly, Poly, Rat, Tensor, Vars};
use crate::error::{Error, Result};
use crate::fan::{DegreeMap, EulerianPoset, Fan, FanSubdivision};

/// `t -> u v^-1`, then multiplied by `v^k`.
fn to_uv_local(p: &Poly, k: usize) -> Poly {
    p.subst(Vars::UV, &[vec![1, -1]]).shift(&[0, k as i32])
}

/// `t -> uv`.
fn to_uv(p: &Poly) -> Poly {
    p.subst(Vars::UV, &[vec![1, 1]])
}

/// Toric `g` of a graded poset with least and greatest element.
pub fn toric_g(poset: &EulerianPoset) -> Result<Poly> {
    poset.g()
}

/// Toric `g` of cone `s`, equal to `h(<s>)`.
pub fn cone_g(fan: &Fan, s: usize) -> Poly {
    let mut c = FaceCache::new(fan);
    c.g(fan.zero_cone().expect("nonempty fan"), s)
}

/// Toric `h` of a purely dimensional fan; zero for the empty fan.
pub fn toric_h(fan: &Fan) -> Result<Poly> {
    if fan.is_empty() {
        return Ok(Poly::zero(Vars::T));
    }
    let mut c = FaceCache::new(fan);
    let w = c.whole();
    c.h(&w)
}

/// `h(link s; t)`.
pub fn link_h(fan: &Fan, s: usize) -> Result<Poly> {
    let mut c = FaceCache::new(fan);
    let l = c.link_set(s);
    c.h(&l)
}

/// Local `h` of the link morphism at fine cone `tau` over the interval
/// `[pi(tau), sigma]`:
/// `sum_rho h({u >= tau : pi(u) <= rho}) (-1)^(dim sigma - dim rho) g([rho, sigma]^*)`.
/// With `tau = o` this is `l^h_<sigma>(pi^-1 <sigma>)`.
pub fn local_h_link(
    sub: &FanSubdivision,
    fine: &mut FaceCache,
    coarse: &mut FaceCache,
    tau: usize,
    sigma: usize,
) -> Result<Poly> {
    let base = sub.pi[tau];
    if !sub.coarse.is_face(base, sigma) {
        return Err(Error::TargetNotSingleCone);
    }
    let ds = sub.coarse.cone(sigma).dim();
    let mut out = Poly::zero(Vars::T);
    let above: Vec<usize> = sub.fine.cofaces(tau).to_vec();
    for &rho in sub.coarse.faces(sigma) {
        if !sub.coarse.is_face(base, rho) {
            continue;
        }
        let cones: Vec<usize> = above.iter().copied().filter(|&u| sub.coarse.is_face(sub.pi[u], rho)).collect();
        let h = fine.h(&ConeSet { base: tau, cones })?;
        let sign = if (ds - sub.coarse.cone(rho).dim()) % 2 == 0 { Rat::ONE } else { Rat::int(-1) };
        out = out.add(&h.mul(&coarse.g_dual(rho, sigma)).scale(&sign));
    }
    Ok(out)
}

/// `l^h_<sigma>(pi^-1 <sigma>; t)`.
pub fn local_h_at(sub: &FanSubdivision, sigma: usize) -> Result<Poly> {
    let mut fine = FaceCache::new(&sub.fine);
    let mut coarse = FaceCache::new(&sub.coarse);
    let o = sub.fine.zero_cone().ok_or(Error::ConeNotInFan)?;
    local_h_link(sub, &mut fine, &mut coarse, o, sigma)
}

/// The unique maximal cone of a single-cone fan.
fn single_cone(fan: &Fan) -> Result<usize> {
    match fan.maximal_cones() {
        [s] => Ok(*s),
        _ => Err(Error::TargetNotSingleCone),
    }
}

/// Local `h` of a subdivision of a single-cone fan `<sigma>`.
pub fn local_h(sub: &FanSubdivision) -> Result<Poly> {
    local_h_at(sub, single_cone(&sub.coarse)?)
}

/// `l^h_<sigma>(pi^-1 <sigma>)` for every coarse cone `sigma`.
fn local_h_all(sub: &FanSubdivision, fine: &mut FaceCache, coarse: &mut FaceCache) -> Result<Vec<Poly>> {
    let o = sub.fine.zero_cone().ok_or(Error::ConeNotInFan)?;
    (0..sub.coarse.num_cones()).map(|s| local_h_link(sub, fine, coarse, o, s)).collect()
}

/// Mixed `h`: `sum_sigma v^dim sigma l^h(pi^-1 <sigma>; u v^-1) h(link sigma; uv)`.
pub fn mixed_h(sub: &FanSubdivision) -> Result<Poly> {
    let mut fine = FaceCache::new(&sub.fine);
    let mut coarse = FaceCache::new(&sub.coarse);
    let locals = local_h_all(sub, &mut fine, &mut coarse)?;
    let mut out = Poly::zero(Vars::UV);
    for (s, l) in locals.iter().enumerate() {
        let link = coarse.link_set(s);
        let h = coarse.h(&link)?;
        out = out.add(&to_uv_local(l, sub.coarse.cone(s).dim()).mul(&to_uv(&h)));
    }
    Ok(out)
}

/// Right-hand side of the decomposition `h(Sigma) = sum_sigma l^h(pi^-1 <sigma>) h(link sigma)`.
pub fn h_decomposition(sub: &FanSubdivision) -> Result<Poly> {
    let mut fine = FaceCache::new(&sub.fine);
    let mut coarse = FaceCache::new(&sub.coarse);
    let locals = local_h_all(sub, &mut fine, &mut coarse)?;
    let mut out = Poly::zero(Vars::T);
    for (s, l) in locals.iter().enumerate() {
        let link = coarse.link_set(s);
        out = out.add(&l.mul(&coarse.h(&link)?));
    }
    Ok(out)
}

/// Ehrhart data of a fan graded by its own degree map.
pub fn ehrhart_data(fan: &Fan, g: &DegreeMap) -> Result<EhrhartData> {
    EhrhartData::new(fan, &|s, x| g.value_int(s, x))
}

/// Ehrhart data of the fine fan of `sub`, graded by the coarse degree map.
pub fn fine_ehrhart_data(sub: &FanSubdivision, g: &DegreeMap) -> Result<EhrhartData> {
    g.check_equal_on(sub)?;
    EhrhartData::new(&sub.fine, &|t, x| g.value_int(sub.pi[t], x))
}

/// `h*(fan; t)`.
pub fn hstar(fan: &Fan, g: &DegreeMap) -> Result<Poly> {
    Ok(ehrhart_data(fan, g)?.hstar())
}

/// `l*(<s>) = sum_{tau <= s} h*(<tau>) (-1)^(dim s - dim tau) g([tau, s]^*)` for
/// every cone `s` of the fan carrying `data`.
fn local_hstar_all(data: &EhrhartData, cache: &mut FaceCache) -> Vec<Poly> {
    let fan = cache.fan;
    let hs: Vec<Poly> = (0..fan.num_cones()).map(|s| data.hstar_cone(s)).collect();
    (0..fan.num_cones())
        .map(|s| {
            let ds = fan.cone(s).dim();
            let mut out = Poly::zero(Vars::T);
            for &t in fan.faces(s) {
                let sign = if (ds - fan.cone(t).dim()) % 2 == 0 { Rat::ONE } else { Rat::int(-1) };
                out = out.add(&hs[t].mul(&cache.g_dual(t, s)).scale(&sign));
            }
            out
        })
        .collect()
}

/// `l*(<s>; t)`.
pub fn local_hstar(fan: &Fan, s: usize, g: &DegreeMap) -> Result<Poly> {
    let data = ehrhart_data(fan, g)?;
    let mut cache = FaceCache::new(fan);
    Ok(local_hstar_all(&data, &mut cache).swap_remove(s))
}

/// `sum_sigma v^dim sigma l*(<sigma>; u v^-1) h(link sigma; uv)` over `fan`,
/// with local `h*` values indexed by the cones of `fan`.
fn mixed_over(cache: &mut FaceCache, locals: &[Poly]) -> Result<Poly> {
    let fan = cache.fan;
    let mut out = Poly::zero(Vars::UV);
    for (s, l) in locals.iter().enumerate() {
        if l.is_zero() {
            continue;
        }
        let link = cache.link_set(s);
        let h = cache.h(&link)?;
        out = out.add(&to_uv_local(l, fan.cone(s).dim()).mul(&to_uv(&h)));
    }
    Ok(out)
}

/// Mixed `h*` of a Gorenstein fan.
pub fn mixed_hstar(fan: &Fan, g: &DegreeMap) -> Result<Poly> {
    let data = ehrhart_data(fan, g)?;
    let mut cache = FaceCache::new(fan);
    let locals = local_hstar_all(&data, &mut cache);
    mixed_over(&mut cache, &locals)
}

/// Right-hand side of `h*(Delta) = sum_sigma l*(<sigma>) h(link sigma)`.
pub fn hstar_decomposition(fan: &Fan, g: &DegreeMap) -> Result<Poly> {
    let data = ehrhart_data(fan, g)?;
    let mut cache = FaceCache::new(fan);
    let locals = local_hstar_all(&data, &mut cache);
    let mut out = Poly::zero(Vars::T);
    for (s, l) in locals.iter().enumerate() {
        let link = cache.link_set(s);
        out = out.add(&l.mul(&cache.h(&link)?));
    }
    Ok(out)
}

/// Limit mixed `h*`: the mixed `h*` sum taken over the fine fan, with the
/// degree map of the coarse fan.
pub fn limit_mixed_hstar(sub: &FanSubdivision, g: &DegreeMap) -> Result<Poly> {
    let data = fine_ehrhart_data(sub, g)?;
    let mut cache = FaceCache::new(&sub.fine);
    let locals = local_hstar_all(&data, &mut cache);
    mixed_over(&mut cache, &locals)
}

/// The local limit mixed `h*` of `pi^-1 <sigma>` over `<sigma>`:
/// `sum_{tau in pi^-1 <sigma>} v^dim tau l*(<tau>; u v^-1) l^h_pi_tau(uv)`,
/// where `l^h_pi_tau` is the local `h` of the link morphism at `tau` over
/// `[pi(tau), sigma]`.
fn local_limit_with(
    sub: &FanSubdivision,
    fine: &mut FaceCache,
    coarse: &mut FaceCache,
    fine_locals: &[Poly],
    sigma: usize,
) -> Result<Poly> {
    let mut out = Poly::zero(Vars::UV);
    for tau in sub.preimage(sigma) {
        if fine_locals[tau].is_zero() {
            continue;
        }
        let lh = local_h_link(sub, fine, coarse, tau, sigma)?;
        out = out.add(&to_uv_local(&fine_locals[tau], sub.fine.cone(tau).dim()).mul(&to_uv(&lh)));
    }
    Ok(out)
}

/// `l*(<sigma>, pi^-1 <sigma>; u, v)`.
pub fn local_limit_mixed_hstar(sub: &FanSubdivision, sigma: usize, g: &DegreeMap) -> Result<Poly> {
    let data = fine_ehrhart_data(sub, g)?;
    let mut fine = FaceCache::new(&sub.fine);
    let mut coarse = FaceCache::new(&sub.coarse);
    let locals = local_hstar_all(&data, &mut fine);
    local_limit_with(sub, &mut fine, &mut coarse, &locals, sigma)
}

/// Refined limit mixed `h*`:
/// `sum_sigma w^dim sigma l*(<sigma>, pi^-1 <sigma>; u, v) h(link sigma; uvw^2)`.
pub fn refined_limit_mixed_hstar(sub: &FanSubdivision, g: &DegreeMap) -> Result<Poly> {
    let data = fine_ehrhart_data(sub, g)?;
    let mut fine = FaceCache::new(&sub.fine);
    let mut coarse = FaceCache::new(&sub.coarse);
    let locals = local_hstar_all(&data, &mut fine);
    let mut out = Poly::zero(Vars::UVW);
    for s in 0..sub.coarse.num_cones() {
        let ll = local_limit_with(sub, &mut fine, &mut coarse, &locals, s)?;
        if ll.is_zero() {
            continue;
        }
        let link = coarse.link_set(s);
        let h = coarse.h(&link)?;
        let left = ll.subst(Vars::UVW, &[vec![1, 0, 0], vec![0, 1, 0]]).shift(&[0, 0, sub.coarse.cone(s).dim() as i32]);
        let right = h.subst(Vars::UVW, &[vec![1, 1, 2]]);
        out = out.add(&left.mul(&right));
    }
    Ok(out)
}

/// Flag numbers of a fan.
pub fn flag_f(fan: &Fan) -> FlagVector {
    if fan.is_empty() {
        return FlagVector::new();
    }
    let c = FaceCache::new(fan);
    c.flags(&c.whole())
}

/// `ab`-index of a fan.
pub fn ab_index(fan: &Fan) -> NcPoly {
    if fan.is_empty() {
        return NcPoly::zero(crate::algebra::Alphabet::Ab);
    }
    let c = FaceCache::new(fan);
    c.ab_index(&c.whole())
}

/// `cd`-index of a fan; for fans with nonempty boundary, the local
/// `cd`-index plus the `cd`-index of the boundary.
pub fn cd_index(fan: &Fan) -> Result<NcPoly> {
    if fan.is_empty() {
        return Ok(NcPoly::zero(crate::algebra::Alphabet::Cd));
    }
    let c = FaceCache::new(fan);
    c.cd_index(&c.whole())
}

/// Local `cd`-index of a fan: `Psi = l(a + b, ab + ba) + Psi_boundary * a`.
pub fn local_cd(fan: &Fan) -> Result<NcPoly> {
    if fan.is_empty() {
        return Ok(NcPoly::zero(crate::algebra::Alphabet::Cd));
    }
    let c = FaceCache::new(fan);
    c.local_cd(&c.whole())
}

fn preimage_set(sub: &FanSubdivision, s: usize) -> ConeSet {
    ConeSet { base: sub.fine.zero_cone().expect("nonempty fan"), cones: sub.preimage(s) }
}

/// Mixed `cd`-index: `sum_sigma l^Phi(pi^-1 <sigma>) (x) Phi(link sigma)`.
pub fn mixed_cd(sub: &FanSubdivision) -> Result<Tensor> {
    let fine = FaceCache::new(&sub.fine);
    let coarse = FaceCache::new(&sub.coarse);
    let mut out = Tensor::zero();
    for s in 0..sub.coarse.num_cones() {
        let l = fine.local_cd(&preimage_set(sub, s))?;
        if l.is_zero() {
            continue;
        }
        let phi = coarse.cd_index(&coarse.link_set(s))?;
        out.add_product(&l, &phi);
    }
    Ok(out)
}

/// Right-hand side of `Phi_Sigma = sum_sigma l^Phi(pi^-1 <sigma>) Phi(link sigma)`.
pub fn cd_decomposition(sub: &FanSubdivision) -> Result<NcPoly> {
    let fine = FaceCache::new(&sub.fine);
    let coarse = FaceCache::new(&sub.coarse);
    let mut out = NcPoly::zero(crate::algebra::Alphabet::Cd);
    for s in 0..sub.coarse.num_cones() {
        let l = fine.local_cd(&preimage_set(sub, s))?;
        if l.is_zero() {
            continue;
        }
        out = out.add(&l.mul(&coarse.cd_index(&coarse.link_set(s))?));
    }
    Ok(out)
}

/// Local `cd`-index `l^Phi(pi^-1 <sigma>)`.
pub fn local_cd_at(sub: &FanSubdivision, sigma: usize) -> Result<NcPoly> {
    FaceCache::new(&sub.fine).local_cd(&preimage_set(sub, sigma))
}

/// `cd`-index of `link sigma`.
pub fn link_cd(fan: &Fan, sigma: usize) -> Result<NcPoly> {
    let c = FaceCache::new(fan);
    c.cd_index(&c.link_set(sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Alphabet;
    use crate::fan::{build_subdivision, gorenstein_degree_map};

    fn cone2() -> Fan {
        Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap()
    }
    fn split2() -> Fan {
        Fan::build(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]).unwrap()
    }
    fn segment() -> Fan {
        Fan::build(2, &[vec![1, 0], vec![1, 2]], &[vec![0, 1]]).unwrap()
    }
    fn split_segment() -> Fan {
        Fan::build(2, &[vec![1, 0], vec![1, 1], vec![1, 2]], &[vec![0, 1], vec![1, 2]]).unwrap()
    }
    fn square_cone() -> Fan {
        Fan::build(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]], &[vec![0, 1, 3, 2]]).unwrap()
    }
    fn uv(terms: &[(i32, i32, i64)]) -> Poly {
        let mut p = Poly::zero(Vars::UV);
        for &(a, b, c) in terms {
            p.add_term(&[a, b], &Rat::int(c));
        }
        p
    }
    fn cd(terms: &[(&str, i64)]) -> NcPoly {
        let mut p = NcPoly::zero(Alphabet::Cd);
        for &(w, c) in terms {
            p.add_term(w, &Rat::int(c));
        }
        p
    }

    #[test]
    fn h_of_small_fans() {
        assert_eq!(toric_h(&cone2()).unwrap(), Poly::one(Vars::T));
        assert_eq!(toric_h(&split2()).unwrap(), Poly::from_coeffs(&[1, 1]));
        let sq = square_cone();
        assert_eq!(toric_h(&sq).unwrap(), Poly::from_coeffs(&[1, 1]));
        assert_eq!(cone_g(&sq, sq.maximal_cones()[0]), Poly::from_coeffs(&[1, 1]));
    }

    #[test]
    fn local_and_mixed_h_of_split() {
        let sub = build_subdivision(&split2(), &cone2()).unwrap();
        assert_eq!(local_h(&sub).unwrap(), Poly::from_coeffs(&[0, 1]));
        assert_eq!(mixed_h(&sub).unwrap(), uv(&[(0, 0, 1), (1, 1, 1)]));
        assert_eq!(h_decomposition(&sub).unwrap(), toric_h(&split2()).unwrap());
        let id = FanSubdivision::identity(&cone2());
        assert_eq!(local_h(&id).unwrap(), Poly::zero(Vars::T));
    }

    #[test]
    fn ehrhart_values() {
        let sq = square_cone();
        let g = gorenstein_degree_map(&sq).unwrap();
        assert_eq!(hstar(&sq, &g).unwrap(), Poly::from_coeffs(&[1, 1]));
        assert!(local_hstar(&sq, sq.maximal_cones()[0], &g).unwrap().is_zero());
        assert_eq!(mixed_hstar(&sq, &g).unwrap(), uv(&[(0, 0, 1), (1, 1, 1)]));
        let seg = segment();
        let g = gorenstein_degree_map(&seg).unwrap();
        assert_eq!(hstar(&seg, &g).unwrap(), Poly::from_coeffs(&[1, 1]));
        assert_eq!(local_hstar(&seg, seg.maximal_cones()[0], &g).unwrap(), Poly::from_coeffs(&[0, 1]));
        assert_eq!(mixed_hstar(&seg, &g).unwrap(), uv(&[(0, 0, 1), (1, 1, 1)]));
    }

    #[test]
    fn refined_split_segment() {
        let coarse = segment();
        let sub = build_subdivision(&split_segment(), &coarse).unwrap();
        let g = gorenstein_degree_map(&coarse).unwrap();
        let top = coarse.maximal_cones()[0];
        assert_eq!(local_limit_mixed_hstar(&sub, top, &g).unwrap(), uv(&[(1, 1, 1)]));
        let mut want = Poly::one(Vars::UVW);
        want.add_term(&[1, 1, 2], &Rat::ONE);
        assert_eq!(refined_limit_mixed_hstar(&sub, &g).unwrap(), want);
    }

    #[test]
    fn cd_values() {
        assert_eq!(cd_index(&cone2()).unwrap(), cd(&[("c", 1)]));
        assert!(local_cd(&cone2()).unwrap().is_zero());
        assert_eq!(cd_index(&split2()).unwrap(), cd(&[("c", 1), ("d", 1)]));
        assert_eq!(local_cd(&split2()).unwrap(), cd(&[("d", 1)]));
        let sub = build_subdivision(&split2(), &cone2()).unwrap();
        let mut want = Tensor::zero();
        want.add_term("", "c", &Rat::ONE);
        want.add_term("d", "", &Rat::ONE);
        assert_eq!(mixed_cd(&sub).unwrap(), want);
        assert_eq!(cd_decomposition(&sub).unwrap(), cd_index(&split2()).unwrap());
    }
}
