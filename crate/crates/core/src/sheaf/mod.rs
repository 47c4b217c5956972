//! Pure sheaves on fans: stalks as truncated graded modules over the global
//! polynomial ring, restriction matrices per degree, sections over subfans,
//! direct images, decompositions, weight sheaves and Hodge-Deligne
//! polynomials.

pub mod decompose;
pub mod ehrhart;
pub mod hodge;
pub mod lefschetz;
pub mod pushforward;
pub mod simple;
pub mod weight;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::module::{GradedModule, Grading, GradingKind, RingSpec};
use crate::algebra::{Mat, Rat, Subspace};
use crate::fan::Fan;

pub use decompose::{decompose, Decomposition, Summand};
pub use ehrhart::{build_ehrhart_sheaf, build_ehrhart_sheaf_with};
pub use hodge::{hodge_deligne, refined_hodge_deligne, t_poincare, RefinedHodge, SpaceSelector};
pub use lefschetz::{hard_lefschetz, relative_hard_lefschetz, LefschetzOutcome};
pub use pushforward::{pushforward, PushForward};
pub use simple::{build_simple_sheaf, minimal_extension};
pub use weight::WeightData;

/// Which structure sheaf the stalks are modules over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Structure {
    /// Conewise polynomial functions, graded by degree.
    A,
    /// `Q[x_1, ..., x_dim]` on each cone, `(Z>=0)^d`-graded.
    C,
    /// The Ehrhart sheaf: `A`-modules graded by the degree map.
    #[serde(rename = "ehrhart")]
    Ehrhart,
}

impl Structure {
    pub fn grading_kind(self) -> GradingKind {
        match self {
            Structure::C => GradingKind::Multi,
            _ => GradingKind::Single,
        }
    }
}

/// The grading used for sheaves of the given structure in ambient
/// dimension `d`: degrees `0..=d+1` or `{0,1,2}^d` with sentinels.
pub fn grading_for(structure: Structure, d: usize) -> Arc<Grading> {
    match structure.grading_kind() {
        GradingKind::Single => Grading::single(d, d as u32 + 1),
        GradingKind::Multi => Grading::multi(d),
    }
}

/// The ring acting on the stalk at cone `s`, as a quotient of the global
/// polynomial ring.
pub fn ring_for(structure: Structure, fan: &Fan, s: usize) -> RingSpec {
    let d = fan.ambient_dim();
    let c = fan.cone(s);
    match structure {
        Structure::C => {
            let k = c.dim();
            let action = (0..d).map(|j| (0..k).map(|i| if i == j { Rat::ONE } else { Rat::ZERO }).collect()).collect();
            RingSpec { local: (0..k).collect(), action }
        }
        _ => {
            // coordinates on Span(s) are the pivot coordinates of its echelon basis
            let span = c.span();
            let action = (0..d).map(|j| span.basis().row(j).to_vec()).collect();
            RingSpec { local: span.pivots().to_vec(), action }
        }
    }
}

/// Threshold between the preimage and ideal cases of the weight recursion:
/// `dim s` for single gradings, `2^dim s - 1` for multigradings.
pub fn weight_threshold(kind: GradingKind, dim: usize) -> i64 {
    match kind {
        GradingKind::Single => dim as i64,
        GradingKind::Multi => (1i64 << dim) - 1,
    }
}

/// A sheaf on `fan`: a stalk per cone and restriction matrices
/// `res[(s, t)][k]: F(s)^k -> F(t)^k` for every face `t <= s`.
#[derive(Clone, Debug)]
pub struct Sheaf {
    pub fan: Fan,
    pub structure: Structure,
    pub grading: Arc<Grading>,
    pub stalks: Vec<GradedModule>,
    pub rings: Vec<RingSpec>,
    res: HashMap<(usize, usize), Vec<Mat>>,
    /// Maximal cones of the simplicial refinement used to build a
    /// non-simplicial Ehrhart sheaf.
    pub refinement: Option<Vec<Vec<usize>>>,
}

impl Sheaf {
    pub(crate) fn empty(fan: &Fan, structure: Structure) -> Sheaf {
        let grading = grading_for(structure, fan.ambient_dim());
        let rings = (0..fan.num_cones()).map(|s| ring_for(structure, fan, s)).collect();
        Sheaf {
            fan: fan.clone(),
            structure,
            grading: grading.clone(),
            stalks: Vec::with_capacity(fan.num_cones()),
            rings,
            res: HashMap::new(),
            refinement: None,
        }
    }

    /// Appends the stalk of the next cone together with its restrictions to
    /// every proper face.
    pub(crate) fn push_stalk(&mut self, m: GradedModule, res: Vec<(usize, Vec<Mat>)>) {
        let s = self.stalks.len();
        let id: Vec<Mat> = m.dims.iter().map(|&n| Mat::identity(n)).collect();
        self.stalks.push(m);
        self.res.insert((s, s), id);
        for (t, r) in res {
            self.res.insert((s, t), r);
        }
    }

    pub fn stalk(&self, s: usize) -> &GradedModule {
        &self.stalks[s]
    }

    /// `res_{s,t}` in degree `k`.
    pub fn res(&self, s: usize, t: usize, k: usize) -> &Mat {
        &self.res[&(s, t)][k]
    }

    pub fn degrees(&self) -> usize {
        self.grading.len()
    }

    /// The shifted sheaf `F[-j]`.
    pub fn shift(&self, j: &[u32]) -> Sheaf {
        let g = &self.grading;
        let src: Vec<Option<usize>> = (0..g.len())
            .map(|k| {
                let d = g.degree(k);
                if d.iter().zip(j).any(|(a, b)| a < b) {
                    return None;
                }
                let e: Vec<u32> = d.iter().zip(j).map(|(a, b)| a - b).collect();
                g.index_of(&e)
            })
            .collect();
        let stalks: Vec<GradedModule> = self.stalks.iter().map(|m| m.shift(j)).collect();
        let res = self
            .res
            .iter()
            .map(|(&(s, t), mats)| {
                let moved = (0..g.len())
                    .map(|k| match src[k] {
                        Some(a) => mats[a].clone(),
                        None => Mat::zeros(stalks[t].dims[k], stalks[s].dims[k]),
                    })
                    .collect();
                ((s, t), moved)
            })
            .collect();
        Sheaf {
            fan: self.fan.clone(),
            structure: self.structure,
            grading: self.grading.clone(),
            stalks,
            rings: self.rings.clone(),
            res,
            refinement: self.refinement.clone(),
        }
    }

    /// Sections over the face-closed set of cones `cones`.
    pub fn sections(&self, cones: &[usize]) -> Sections {
        Sections::new(self, cones)
    }

    /// Sections over the whole fan.
    pub fn global_sections(&self) -> Sections {
        let all: Vec<usize> = (0..self.fan.num_cones()).collect();
        self.sections(&all)
    }

    /// Sections over `boundary <s>`, the proper faces of `s`.
    pub fn boundary_sections(&self, s: usize) -> Sections {
        let faces: Vec<usize> = self.fan.faces(s).iter().copied().filter(|&t| t != s).collect();
        self.sections(&faces)
    }

    /// Checks that `res: F(s) -> F(boundary s)` is surjective in every
    /// stored degree, returning the first failing cone.
    pub fn check_flabby(&self) -> Result<(), usize> {
        for s in 0..self.fan.num_cones() {
            let b = self.boundary_sections(s);
            for k in 0..self.degrees() {
                if b.space[k].dim() == 0 {
                    continue;
                }
                if b.from_stalk(self, s, k).rank() != b.space[k].dim() {
                    return Err(s);
                }
            }
        }
        Ok(())
    }
}

/// Sections of a sheaf over a face-closed set of cones: per degree the
/// subspace of compatible tuples in the direct sum of the stalks at the
/// maximal cones, and the module they form.
#[derive(Clone, Debug)]
pub struct Sections {
    pub cones: Vec<usize>,
    pub maximal: Vec<usize>,
    /// Offsets of each maximal cone's block, per degree.
    pub offsets: Vec<Vec<usize>>,
    /// Ambient dimension per degree.
    pub ambient: Vec<usize>,
    pub space: Vec<Subspace>,
    pub module: GradedModule,
}

impl Sections {
    fn new(sheaf: &Sheaf, cones: &[usize]) -> Sections {
        let fan = &sheaf.fan;
        let g = sheaf.grading.clone();
        let set: BTreeSet<usize> = cones.iter().copied().collect();
        let maximal: Vec<usize> =
            set.iter().copied().filter(|&c| !fan.cofaces(c).iter().any(|&o| o != c && set.contains(&o))).collect();
        let nd = g.len();
        let mut offsets = vec![Vec::with_capacity(maximal.len()); nd];
        let mut ambient = vec![0usize; nd];
        for k in 0..nd {
            for &m in &maximal {
                offsets[k].push(ambient[k]);
                ambient[k] += sheaf.stalks[m].dims[k];
            }
        }
        // intersections of pairs of maximal cones, with the maximal cones over each
        let mut meets: BTreeSet<usize> = BTreeSet::new();
        for (a, &ma) in maximal.iter().enumerate() {
            for &mb in &maximal[a + 1..] {
                let common: Vec<usize> =
                    fan.cone(ma).rays().iter().copied().filter(|r| fan.cone(mb).rays().contains(r)).collect();
                meets.insert(fan.find(&common).expect("fans are closed under intersection"));
            }
        }
        let owners: Vec<(usize, Vec<usize>)> = meets
            .into_iter()
            .map(|rho| (rho, (0..maximal.len()).filter(|&i| fan.is_face(rho, maximal[i])).collect()))
            .collect();
        let mut space = Vec::with_capacity(nd);
        for k in 0..nd {
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for (rho, own) in &owners {
                let dr = sheaf.stalks[*rho].dims[k];
                if dr == 0 {
                    continue;
                }
                let first = own[0];
                let r0 = sheaf.res(maximal[first], *rho, k);
                for &i in &own[1..] {
                    let ri = sheaf.res(maximal[i], *rho, k);
                    for row in 0..dr {
                        let mut v = vec![Rat::ZERO; ambient[k]];
                        for c in 0..r0.cols() {
                            v[offsets[k][first] + c] = r0.get(row, c).clone();
                        }
                        for c in 0..ri.cols() {
                            let x = ri.get(row, c);
                            if !x.is_zero() {
                                v[offsets[k][i] + c] = &v[offsets[k][i] + c] - x;
                            }
                        }
                        rows.push(v);
                    }
                }
            }
            let s = if rows.is_empty() { Subspace::full(ambient[k]) } else { Mat::from_rows(rows, ambient[k]).kernel() };
            space.push(s);
        }
        // block-diagonal multiplication on the ambient sum, restricted to the sections
        let ambient_mod = {
            let mul = (0..nd)
                .map(|k| {
                    (0..g.nvars())
                        .map(|i| {
                            let up = g.up(k, i)?;
                            let mut m = Mat::zeros(ambient[up], ambient[k]);
                            for (mi, &c) in maximal.iter().enumerate() {
                                m.put(offsets[up][mi], offsets[k][mi], sheaf.stalks[c].mul_map(k, i).expect("stored"));
                            }
                            Some(m)
                        })
                        .collect()
                })
                .collect();
            GradedModule { grading: g.clone(), dims: ambient.clone(), mul }
        };
        let module = ambient_mod.submodule(&space);
        Sections { cones: set.into_iter().collect(), maximal, offsets, ambient, space, module }
    }

    pub fn dims(&self) -> &[usize] {
        &self.module.dims
    }

    /// The block of the section basis at maximal cone index `mi`:
    /// section coordinates to `F(maximal[mi])^k`.
    pub fn component(&self, sheaf: &Sheaf, k: usize, mi: usize) -> Mat {
        let m = self.maximal[mi];
        let n = sheaf.stalks[m].dims[k];
        let idx: Vec<usize> = (self.offsets[k][mi]..self.offsets[k][mi] + n).collect();
        self.space[k].basis().select_rows(&idx)
    }

    /// Section coordinates to `F(rho)^k` for a cone `rho` of the set.
    pub fn restrict_to(&self, sheaf: &Sheaf, k: usize, rho: usize) -> Mat {
        let mi = self
            .maximal
            .iter()
            .position(|&m| sheaf.fan.is_face(rho, m))
            .expect("cone lies in the set");
        sheaf.res(self.maximal[mi], rho, k).mul(&self.component(sheaf, k, mi))
    }

    /// `F(s)^k` to these sections, for a cone `s` whose faces include every
    /// cone of the set.
    pub fn from_stalk(&self, sheaf: &Sheaf, s: usize, k: usize) -> Mat {
        let mut m = Mat::zeros(self.ambient[k], sheaf.stalks[s].dims[k]);
        for (mi, &c) in self.maximal.iter().enumerate() {
            m.put(self.offsets[k][mi], 0, sheaf.res(s, c, k));
        }
        self.space[k].coord_map().mul(&m)
    }

    /// These sections to the sections over a subset `other`.
    pub fn restriction_to(&self, sheaf: &Sheaf, other: &Sections, k: usize) -> Mat {
        let mut m = Mat::zeros(other.ambient[k], self.space[k].dim());
        for (mi, &c) in other.maximal.iter().enumerate() {
            m.put(other.offsets[k][mi], 0, &self.restrict_to(sheaf, k, c));
        }
        other.space[k].coord_map().mul(&m)
    }
}
