//! Rational polyhedral fans: construction with certified fan axioms, face
//! lattices, links, boundaries and subfans.

pub mod classify;
pub mod gorenstein;
pub mod lattice;
pub mod poset;
pub mod refine;
pub mod snf;
pub mod subdivision;

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::lp::{feasible_point, Constraint};
use crate::algebra::{Mat, Rat, Subspace};
use crate::error::{Error, Result};

pub use classify::{classify_quasi_convex, QuasiConvexity};
pub use gorenstein::{gorenstein_degree_map, DegreeMap};
pub use lattice::{box_points, BoxPoint};
pub use poset::EulerianPoset;
pub use refine::simplicial_refinement;
pub use subdivision::{build_subdivision, FanSubdivision};

/// A cone of a fan, identified by its ray set.
#[derive(Clone, Debug)]
pub struct Cone {
    rays: Vec<usize>,
    dim: usize,
    span: Subspace,
    /// Functionals `w` with `w . x >= 0` for `x` in the cone, one per facet,
    /// written on the ambient space and meaningful on the span.
    facet_normals: Vec<Vec<Rat>>,
}

impl Cone {
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn facet_normals(&self) -> &[Vec<Rat>] {
        &self.facet_normals
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }
}

/// Serialized form of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSpec {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

/// A fan in `Q^d`. Cones are sorted by dimension and then by ray set; when
/// the fan is nonempty the zero cone has index 0.
#[derive(Clone, Debug)]
pub struct Fan {
    ambient: usize,
    rays: Vec<Vec<i64>>,
    rays_q: Vec<Vec<Rat>>,
    cones: Vec<Cone>,
    index: HashMap<Vec<usize>, usize>,
    faces: Vec<Vec<usize>>,
    facets: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    maximal: Vec<usize>,
    normalized: Vec<usize>,
}

pub(crate) fn to_q(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::int(x)).collect()
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::ZERO;
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

pub(crate) fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

fn sign_vector(x: &[Rat]) -> Option<Vec<Rat>> {
    // None if mixed signs; otherwise the vector oriented to be >= 0
    let pos = x.iter().any(|c| c.is_positive());
    let neg = x.iter().any(|c| c.is_negative());
    match (pos, neg) {
        (true, true) => None,
        (false, true) => Some(x.iter().map(|c| -c).collect()),
        _ => Some(x.to_vec()),
    }
}

/// Geometric helpers on a finite set of rational generators.
pub(crate) mod geom {
    use super::*;

    /// A functional `w` with `w . v >= 1` for every generator, if one exists.
    pub fn pointedness_witness(gens: &[Vec<Rat>], dim: usize) -> Option<Vec<Rat>> {
        let ges: Vec<Constraint> = gens.iter().map(|g| Constraint::new(g.clone(), Rat::ONE)).collect();
        feasible_point(dim, &[], &ges)
    }

    /// Whether `x` is a nonnegative combination of `gens`.
    pub fn in_cone(gens: &[Vec<Rat>], x: &[Rat]) -> bool {
        let n = gens.len();
        let d = x.len();
        if n == 0 {
            return x.iter().all(|c| c.is_zero());
        }
        let eqs: Vec<Constraint> =
            (0..d).map(|i| Constraint::new(gens.iter().map(|g| g[i].clone()).collect(), x[i].clone())).collect();
        let ges: Vec<Constraint> = (0..n)
            .map(|j| {
                let mut c = vec![Rat::ZERO; n];
                c[j] = Rat::ONE;
                Constraint::new(c, Rat::ZERO)
            })
            .collect();
        feasible_point(n, &eqs, &ges).is_some()
    }

    /// Coordinates of each generator in the echelon basis of their span.
    pub fn span_coords(gens: &[Vec<Rat>], ambient: usize) -> (Subspace, Vec<Vec<Rat>>) {
        let span = Subspace::span_vecs(gens, ambient);
        let coords = gens.iter().map(|g| span.coords(g)).collect();
        (span, coords)
    }

    /// Facets of the pointed cone generated by `gens` (all extreme), as sets
    /// of generator positions together with inward normals in span
    /// coordinates.
    pub fn facets(gens: &[Vec<Rat>], ambient: usize) -> Vec<(Vec<usize>, Vec<Rat>)> {
        let (span, coords) = span_coords(gens, ambient);
        let k = span.dim();
        let n = gens.len();
        if k == 0 {
            return vec![];
        }
        if k == 1 {
            return vec![(vec![], vec![Rat::ONE])];
        }
        let mut out: Vec<(Vec<usize>, Vec<Rat>)> = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for combo in (0..n).combinations(k - 1) {
            let rows: Vec<Vec<Rat>> = combo.iter().map(|&i| coords[i].clone()).collect();
            let ker = Mat::from_rows(rows, k).kernel();
            if ker.dim() != 1 {
                continue;
            }
            let nrm = ker.vector(0);
            let vals: Vec<Rat> = coords.iter().map(|c| dot(&nrm, c)).collect();
            let Some(oriented) = sign_vector(&vals) else { continue };
            let zero: Vec<usize> = (0..n).filter(|&i| oriented[i].is_zero()).collect();
            if seen.insert(zero.clone()) {
                let flip = vals.iter().any(|v| v.is_negative());
                let nrm = if flip { nrm.iter().map(|c| -c).collect() } else { nrm };
                out.push((zero, nrm));
            }
        }
        out.sort();
        out
    }
}

impl Fan {
    /// Builds a fan from rays and maximal cones, certifying the fan axioms.
    pub fn build(ambient: usize, rays: &[Vec<i64>], maximal_cones: &[Vec<usize>]) -> Result<Fan> {
        let mut prim = Vec::with_capacity(rays.len());
        let mut normalized = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if r.len() != ambient {
                return Err(Error::DimensionMismatch { index: i, len: r.len(), dim: ambient });
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::ZeroRay(i));
            }
            let p = primitive(r);
            if p != *r {
                normalized.push(i);
            }
            prim.push(p);
        }
        for i in 0..prim.len() {
            for j in 0..i {
                if prim[i] == prim[j] {
                    return Err(Error::DuplicateRay(j, i));
                }
            }
        }
        let rays_q: Vec<Vec<Rat>> = prim.iter().map(|r| to_q(r)).collect();

        let mut inputs: Vec<Vec<usize>> = Vec::new();
        for (ci, c) in maximal_cones.iter().enumerate() {
            let mut s: Vec<usize> = c.clone();
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&r| r >= prim.len()) {
                return Err(Error::RayIndexOutOfRange { cone: ci, ray: bad });
            }
            let gens: Vec<Vec<Rat>> = s.iter().map(|&r| rays_q[r].clone()).collect();
            if !gens.is_empty() && geom::pointedness_witness(&gens, ambient).is_none() {
                return Err(Error::NonPointedCone(ci));
            }
            for (pos, &r) in s.iter().enumerate() {
                let others: Vec<Vec<Rat>> =
                    gens.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, g)| g.clone()).collect();
                if geom::in_cone(&others, &rays_q[r]) {
                    return Err(Error::NonExtremeRay { cone: ci, ray: r });
                }
            }
            inputs.push(s);
        }
        // pairwise intersections must be common faces
        for i in 0..inputs.len() {
            for j in i + 1..inputs.len() {
                if !meets_in_common_face(&rays_q, ambient, &inputs[i], &inputs[j]) {
                    return Err(Error::IntersectionNotAFace(i, j));
                }
            }
        }
        // face closure
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = inputs.clone();
        while let Some(c) = stack.pop() {
            if !all.insert(c.clone()) {
                continue;
            }
            let gens: Vec<Vec<Rat>> = c.iter().map(|&r| rays_q[r].clone()).collect();
            for (f, _) in geom::facets(&gens, ambient) {
                stack.push(f.iter().map(|&p| c[p]).collect());
            }
        }
        let mut fan = Fan::assemble(ambient, prim, all.into_iter().collect());
        fan.normalized = normalized;
        Ok(fan)
    }

    pub fn from_spec(spec: &FanSpec) -> Result<Fan> {
        Fan::build(spec.ambient_dim, &spec.rays, &spec.cones)
    }

    pub fn to_spec(&self) -> FanSpec {
        FanSpec {
            ambient_dim: self.ambient,
            rays: self.rays.clone(),
            cones: self.maximal.iter().map(|&m| self.cones[m].rays.clone()).collect(),
        }
    }

    /// Assembles a fan from a face-closed family of ray sets, computing the
    /// face relation by inclusion of ray sets.
    pub(crate) fn assemble(ambient: usize, rays: Vec<Vec<i64>>, mut sets: Vec<Vec<usize>>) -> Fan {
        let rays_q: Vec<Vec<Rat>> = rays.iter().map(|r| to_q(r)).collect();
        for s in sets.iter_mut() {
            s.sort_unstable();
        }
        sets.sort();
        sets.dedup();
        let mut cones: Vec<Cone> = sets
            .iter()
            .map(|s| {
                let gens: Vec<Vec<Rat>> = s.iter().map(|&r| rays_q[r].clone()).collect();
                let span = Subspace::span_vecs(&gens, ambient);
                Cone { rays: s.clone(), dim: span.dim(), span, facet_normals: vec![] }
            })
            .collect();
        cones.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.rays.cmp(&b.rays)));
        let index: HashMap<Vec<usize>, usize> = cones.iter().enumerate().map(|(i, c)| (c.rays.clone(), i)).collect();
        let n = cones.len();
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        let mut faces = vec![Vec::new(); n];
        let mut cofaces = vec![Vec::new(); n];
        let mut facets = vec![Vec::new(); n];
        for s in 0..n {
            for t in 0..n {
                if cones[t].dim <= cones[s].dim && subset(&cones[t].rays, &cones[s].rays) {
                    faces[s].push(t);
                    cofaces[t].push(s);
                    if cones[t].dim + 1 == cones[s].dim {
                        facets[s].push(t);
                    }
                }
            }
        }
        for s in 0..n {
            let mut normals = Vec::new();
            for &f in &facets[s] {
                let sp = &cones[s].span;
                let fc: Vec<Vec<Rat>> = cones[f].rays.iter().map(|&r| sp.coords(&rays_q[r])).collect();
                let k = sp.dim();
                let ker = if fc.is_empty() { Subspace::full(k) } else { Mat::from_rows(fc, k).kernel() };
                debug_assert_eq!(ker.dim(), 1);
                let mut nrm = ker.vector(0);
                let other = cones[s].rays.iter().find(|r| !cones[f].rays.contains(r)).expect("facet is proper");
                if dot(&nrm, &sp.coords(&rays_q[*other])).is_negative() {
                    nrm = nrm.iter().map(|c| -c).collect();
                }
                let mut w = vec![Rat::ZERO; ambient];
                for (i, &p) in sp.pivots().iter().enumerate() {
                    w[p] = nrm[i].clone();
                }
                normals.push(w);
            }
            cones[s].facet_normals = normals;
        }
        let maximal = (0..n).filter(|&s| cofaces[s].len() == 1).collect();
        Fan { ambient, rays, rays_q, cones, index, faces, facets, cofaces, maximal, normalized: vec![] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn ray_q(&self, i: usize) -> &[Rat] {
        &self.rays_q[i]
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Index of the cone with the given ray set.
    pub fn find(&self, rays: &[usize]) -> Option<usize> {
        let mut s = rays.to_vec();
        s.sort_unstable();
        self.index.get(&s).copied()
    }

    /// Index of the zero cone.
    pub fn zero_cone(&self) -> Option<usize> {
        self.find(&[])
    }

    /// All faces of cone `s`, including `s` itself, in index order.
    pub fn faces(&self, s: usize) -> &[usize] {
        &self.faces[s]
    }

    pub fn facets(&self, s: usize) -> &[usize] {
        &self.facets[s]
    }

    /// All cones having `s` as a face, including `s`.
    pub fn cofaces(&self, s: usize) -> &[usize] {
        &self.cofaces[s]
    }

    pub fn maximal_cones(&self) -> &[usize] {
        &self.maximal
    }

    pub fn is_face(&self, t: usize, s: usize) -> bool {
        self.faces[s].binary_search(&t).is_ok()
    }

    /// Rays that were rescaled to primitive vectors on input.
    pub fn normalized_rays(&self) -> &[usize] {
        &self.normalized
    }

    /// Largest cone dimension; 0 for the empty fan.
    pub fn dim(&self) -> usize {
        self.cones.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        let n = self.dim();
        self.maximal.iter().all(|&m| self.cones[m].dim == n)
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| c.is_simplicial())
    }

    /// Number of cones of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim() + 1];
        for c in &self.cones {
            f[c.dim] += 1;
        }
        f
    }

    /// Whether `x` lies in cone `s`.
    pub fn cone_contains(&self, s: usize, x: &[Rat]) -> bool {
        let c = &self.cones[s];
        c.span.contains(x) && c.facet_normals.iter().all(|w| !dot(w, x).is_negative())
    }

    /// Whether `x` lies in the relative interior of cone `s`.
    pub fn cone_contains_relint(&self, s: usize, x: &[Rat]) -> bool {
        let c = &self.cones[s];
        c.span.contains(x) && c.facet_normals.iter().all(|w| dot(w, x).is_positive())
    }

    pub fn ray_gens(&self, s: usize) -> Vec<Vec<Rat>> {
        self.cones[s].rays.iter().map(|&r| self.rays_q[r].clone()).collect()
    }

    /// The subfan generated by the given cones, with rays reindexed, and the
    /// map from its cones to cones of `self`.
    pub fn subfan(&self, generators: &[usize]) -> (Fan, Vec<usize>) {
        let mut keep: BTreeSet<usize> = BTreeSet::new();
        for &g in generators {
            keep.extend(self.faces[g].iter().copied());
        }
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for &c in &keep {
            used.extend(self.cones[c].rays.iter().copied());
        }
        let used: Vec<usize> = used.into_iter().collect();
        let reindex: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let rays: Vec<Vec<i64>> = used.iter().map(|&r| self.rays[r].clone()).collect();
        let sets: Vec<Vec<usize>> =
            keep.iter().map(|&c| self.cones[c].rays.iter().map(|r| reindex[r]).collect()).collect();
        let sub = Fan::assemble(self.ambient, rays, sets);
        let map = sub
            .cones
            .iter()
            .map(|c| {
                let orig: Vec<usize> = c.rays.iter().map(|&r| used[r]).collect();
                self.index[&orig]
            })
            .collect();
        (sub, map)
    }

    /// The single-cone fan of cone `s` and the map into `self`.
    pub fn cone_fan(&self, s: usize) -> (Fan, Vec<usize>) {
        self.subfan(&[s])
    }

    /// Integer rows whose kernel on `Z^d` is the saturated lattice of
    /// `Span(s)` and which map `Z^d` onto `Z^(d - dim s)`.
    pub fn quotient_map(&self, s: usize) -> Vec<Vec<i64>> {
        let c = &self.cones[s];
        let d = self.ambient;
        if c.rays.is_empty() {
            return (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        }
        let m: Vec<Vec<i64>> = (0..d).map(|i| c.rays.iter().map(|&r| self.rays[r][i]).collect()).collect();
        let diag = snf::diagonalize(&m, d, c.rays.len());
        let k = diag.diag.len();
        debug_assert_eq!(k, c.dim);
        diag.p[k..].iter().map(|row| row.iter().map(|&x| i64::try_from(x).expect("fits")).collect()).collect()
    }

    /// The link of cone `s` in `Q^d / Span(s)`, and the map sending each link
    /// cone to the cone of `self` it comes from.
    pub fn link(&self, s: usize) -> Result<(Fan, Vec<usize>)> {
        if s >= self.cones.len() {
            return Err(Error::ConeNotInFan);
        }
        let q = self.quotient_map(s);
        let qd = q.len();
        let k = self.cones[s].dim;
        let covers: Vec<usize> = self.cofaces[s].iter().copied().filter(|&t| self.cones[t].dim == k + 1).collect();
        let mut rays: Vec<Vec<i64>> = Vec::new();
        let mut cover_ray: HashMap<usize, usize> = HashMap::new();
        for &t in &covers {
            let r = *self.cones[t].rays.iter().find(|r| !self.cones[s].rays.contains(r)).expect("cover adds a ray");
            let img: Vec<i64> = q.iter().map(|row| row.iter().zip(&self.rays[r]).map(|(a, b)| a * b).sum()).collect();
            cover_ray.insert(t, rays.len());
            rays.push(primitive(&img));
        }
        let above: Vec<usize> = self.cofaces[s].clone();
        let sets: Vec<Vec<usize>> = above
            .iter()
            .map(|&t| covers.iter().filter(|&&c| self.is_face(c, t)).map(|c| cover_ray[c]).collect())
            .collect();
        let link = Fan::assemble(qd, rays, sets.clone());
        let mut map = vec![0; link.cones.len()];
        for (i, &t) in above.iter().enumerate() {
            let mut key = sets[i].clone();
            key.sort_unstable();
            map[link.index[&key]] = t;
        }
        Ok((link, map))
    }

    /// The subfan generated by the non-maximal cones lying in exactly one
    /// maximal cone, with the map into `self`.
    pub fn boundary(&self) -> Result<(Fan, Vec<usize>)> {
        if !self.is_pure() {
            return Err(Error::NotPurelyDimensional);
        }
        let gens: Vec<usize> = (0..self.cones.len())
            .filter(|&t| {
                let nmax = self.cofaces[t].iter().filter(|c| self.maximal.contains(c)).count();
                !self.maximal.contains(&t) && nmax == 1
            })
            .collect();
        Ok(self.subfan(&gens))
    }

    /// Cones whose relative interior lies in the interior of the support:
    /// those not in the boundary subfan.
    pub fn interior_cones(&self) -> Result<Vec<usize>> {
        let (_, bmap) = self.boundary()?;
        let b: BTreeSet<usize> = bmap.into_iter().collect();
        Ok((0..self.cones.len()).filter(|c| !b.contains(c)).collect())
    }

    /// The face poset of the whole fan (without an added top element).
    pub fn poset(&self) -> EulerianPoset {
        let n = self.cones.len();
        let rank = self.cones.iter().map(|c| c.dim).collect();
        let le = (0..n).map(|s| (0..n).map(|t| self.is_face(s, t)).collect()).collect();
        EulerianPoset::new(rank, le)
    }

    /// The face poset of cone `s`, elements in the order of `faces(s)`.
    pub fn cone_poset(&self, s: usize) -> EulerianPoset {
        let f = &self.faces[s];
        let rank = f.iter().map(|&c| self.cones[c].dim).collect();
        let le = f.iter().map(|&a| f.iter().map(|&b| self.is_face(a, b)).collect()).collect();
        EulerianPoset::new(rank, le)
    }
}

/// Whether the cones on ray sets `a` and `b` meet in the cone on their
/// common rays and that cone is a face of both: there is `w` vanishing on
/// the common rays, `>= 1` on the rest of `a` and `<= -1` on the rest of `b`.
fn meets_in_common_face(rays: &[Vec<Rat>], d: usize, a: &[usize], b: &[usize]) -> bool {
    let common: Vec<usize> = a.iter().copied().filter(|r| b.contains(r)).collect();
    let eqs: Vec<Constraint> = common.iter().map(|&r| Constraint::new(rays[r].clone(), Rat::ZERO)).collect();
    let mut ges: Vec<Constraint> = Vec::new();
    for &r in a.iter().filter(|r| !common.contains(r)) {
        ges.push(Constraint::new(rays[r].clone(), Rat::ONE));
    }
    for &r in b.iter().filter(|r| !common.contains(r)) {
        ges.push(Constraint::new(rays[r].iter().map(|c| -c).collect(), Rat::ONE));
    }
    feasible_point(d, &eqs, &ges).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square4() -> Fan {
        Fan::build(2, &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
            .unwrap()
    }

    #[test]
    fn complete_fan_has_nine_cones() {
        let f = square4();
        assert_eq!(f.num_cones(), 9);
        assert_eq!(f.f_vector(), vec![1, 4, 4]);
    }

    #[test]
    fn single_cone_and_disjoint_rays() {
        let f = Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert_eq!(f.num_cones(), 4);
        let g = Fan::build(2, &[vec![1, 0], vec![1, 1]], &[vec![0], vec![1]]).unwrap();
        assert_eq!(g.num_cones(), 3);
        assert_eq!(g.dim(), 1);
    }

    #[test]
    fn rejects_bad_cones() {
        let r = Fan::build(1, &[vec![1], vec![-1]], &[vec![0, 1]]);
        assert!(matches!(r, Err(Error::NonPointedCone(0))));
        let r = Fan::build(2, &[vec![1, 0], vec![0, 1], vec![1, 1]], &[vec![0, 1], vec![0, 2]]);
        assert!(matches!(r, Err(Error::IntersectionNotAFace(0, 1))));
        let r = Fan::build(2, &[vec![2, 0]], &[vec![0]]).unwrap();
        assert_eq!(r.normalized_rays(), &[0]);
        assert_eq!(r.ray(0), &[1, 0]);
    }

    #[test]
    fn square_cone_faces() {
        let f = Fan::build(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]], &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(f.f_vector(), vec![1, 4, 4, 1]);
        assert!(f.find(&[0, 3]).is_none());
        assert!(f.find(&[0, 1]).is_some());
    }

    #[test]
    fn links() {
        let f = square4();
        let (l0, _) = f.link(0).unwrap();
        assert_eq!(l0.num_cones(), 9);
        let r = f.find(&[0]).unwrap();
        let (l, map) = f.link(r).unwrap();
        assert_eq!(l.ambient_dim(), 1);
        assert_eq!(l.f_vector(), vec![1, 2]);
        assert_eq!(map[0], r);
        let top = f.find(&[0, 1]).unwrap();
        let (lt, _) = f.link(top).unwrap();
        assert_eq!(lt.num_cones(), 1);
        assert_eq!(lt.ambient_dim(), 0);
    }

    #[test]
    fn boundaries() {
        assert!(square4().boundary().unwrap().0.is_empty());
        let c = Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert_eq!(c.boundary().unwrap().0.f_vector(), vec![1, 2]);
        let s = Fan::build(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]).unwrap();
        let (b, map) = s.boundary().unwrap();
        assert_eq!(b.f_vector(), vec![1, 2]);
        let rays: Vec<usize> = map.iter().filter_map(|&c| (s.cone(c).dim() == 1).then(|| s.cone(c).rays()[0])).collect();
        assert_eq!(rays, vec![0, 2]);
    }
}
