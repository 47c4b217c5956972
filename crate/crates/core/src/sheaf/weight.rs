//! Weight subsheaves `W^r F`, computed cone by cone and degree by degree.

use crate::algebra::module::GradingKind;
use crate::algebra::Subspace;

use super::{weight_threshold, Sections, Sheaf};

/// `W^r F(sigma)^k` for `r = 1..=rmax + 1`; smaller `r` give the full stalk
/// and larger `r` the stabilized value at `rmax + 1`.
#[derive(Clone, Debug)]
pub struct WeightData {
    pub rmax: i64,
    levels: Vec<Vec<Vec<Subspace>>>,
}

/// Largest weight with a possibly nonzero reduced piece: `2d` for single
/// gradings, `2(2^d - 1)` for multigradings.
pub fn effective_rmax(kind: GradingKind, d: usize) -> i64 {
    match kind {
        GradingKind::Single => 2 * d as i64,
        GradingKind::Multi => 2 * ((1i64 << d) - 1),
    }
}

impl WeightData {
    pub fn new(f: &Sheaf) -> WeightData {
        let g = f.grading.clone();
        let kind = g.kind();
        let rmax = effective_rmax(kind, f.fan.ambient_dim());
        let mut w = WeightData { rmax, levels: Vec::new() };
        for r in 1..=rmax + 1 {
            let mut level: Vec<Vec<Subspace>> = Vec::with_capacity(f.fan.num_cones());
            for s in 0..f.fan.num_cones() {
                let thr = weight_threshold(kind, f.fan.cone(s).dim());
                let stalk = f.stalk(s);
                let per_degree: Vec<Subspace> = (0..g.len())
                    .map(|k| {
                        let n = stalk.dims[k];
                        if n == 0 {
                            return Subspace::zero(0);
                        }
                        if r <= thr {
                            // preimage of the weight subspaces on the facets
                            let mut acc = Subspace::full(n);
                            for &rho in f.fan.facets(s) {
                                let target = &level[rho][k];
                                acc = acc.intersect(&target.preimage(f.res(s, rho, k)));
                            }
                            acc
                        } else {
                            let mut acc = Subspace::zero(n);
                            for i in 0..g.nvars() {
                                let Some(lo) = g.down(k, i) else { continue };
                                let r2 = r - 2 * i64::from(g.var_tdeg(i));
                                let src = if r2 <= 0 { Subspace::full(stalk.dims[lo]) } else { w.levels[(r2 - 1) as usize][s][lo].clone() };
                                if src.dim() > 0 {
                                    acc = acc.sum(&src.image(stalk.mul_map(lo, i).expect("stored")));
                                }
                            }
                            acc
                        }
                    })
                    .collect();
                level.push(per_degree);
            }
            w.levels.push(level);
        }
        w
    }

    fn clamp(&self, r: i64) -> Option<usize> {
        if r <= 0 {
            None
        } else {
            Some((r.min(self.rmax + 1) - 1) as usize)
        }
    }

    /// `W^r F(s)^k` inside the stalk.
    pub fn at(&self, f: &Sheaf, r: i64, s: usize, k: usize) -> Subspace {
        match self.clamp(r) {
            None => Subspace::full(f.stalk(s).dims[k]),
            Some(i) => self.levels[i][s][k].clone(),
        }
    }

    /// `W^r F(U)` inside the sections over `U`: tuples whose components lie
    /// in the weight subspaces. Restriction maps preserve weights, so the
    /// maximal cones of `U` suffice.
    pub fn on_sections(&self, f: &Sheaf, sec: &Sections, r: i64) -> Vec<Subspace> {
        (0..f.degrees())
            .map(|k| {
                let mut acc = Subspace::full(sec.space[k].dim());
                if self.clamp(r).is_none() {
                    return acc;
                }
                for (mi, &m) in sec.maximal.iter().enumerate() {
                    if f.stalk(m).dims[k] == 0 {
                        continue;
                    }
                    acc = acc.intersect(&self.at(f, r, m, k).preimage(&sec.component(f, k, mi)));
                }
                acc
            })
            .collect()
    }
}

/// `W^r F(fan)` per degree, in the coordinates of the global sections.
pub fn weight_sheaf_sections(f: &Sheaf, r: i64) -> Vec<Subspace> {
    let w = WeightData::new(f);
    w.on_sections(f, &f.global_sections(), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::sheaf::{build_simple_sheaf, Structure};

    #[test]
    fn simple_sheaf_slices() {
        let f = Fan::build(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        let l = build_simple_sheaf(&f, f.zero_cone().unwrap(), Structure::A).unwrap();
        let w = WeightData::new(&l);
        let sec = l.global_sections();
        for r in 0..=w.rmax + 2 {
            let ws = w.on_sections(&l, &sec, r);
            for k in 0..l.degrees() {
                // degrees >= r/2 survive
                let expect = if 2 * k as i64 >= r { sec.space[k].dim() } else { 0 };
                assert_eq!(ws[k].dim(), expect, "r={r} k={k}");
            }
        }
    }
}
