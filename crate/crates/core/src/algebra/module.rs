//! Truncated graded modules over `Q[x_1, ..., x_d]`: finite-dimensional
//! pieces on a finite degree set plus multiplication matrices.

use std::collections::HashMap;
use std::sync::Arc;

use super::linalg::{Mat, Quotient, Subspace};
use super::rational::Rat;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradingKind {
    /// `Z>=0`-grading, every variable in degree 1, pieces `0..=cap`.
    Single,
    /// `(Z>=0)^d`-grading with `deg x_i = e_i`.
    Multi,
}

/// The finite set of stored degrees and how the variables move between them.
#[derive(Debug, PartialEq, Eq)]
pub struct Grading {
    kind: GradingKind,
    nvars: usize,
    degrees: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    up: Vec<Vec<Option<usize>>>,
    down: Vec<Vec<Option<usize>>>,
    sentinel: Vec<bool>,
}

impl Grading {
    /// Degrees `0..=cap`; the top degree is the sentinel.
    pub fn single(nvars: usize, cap: u32) -> Arc<Grading> {
        let degrees: Vec<Vec<u32>> = (0..=cap).map(|k| vec![k]).collect();
        let sentinel = (0..=cap).map(|k| k == cap).collect();
        Arc::new(Grading::finish(GradingKind::Single, nvars, degrees, sentinel))
    }

    /// Degrees in `{0,1,2}^d` with at most one coordinate equal to 2; those
    /// with a 2 are sentinels.
    pub fn multi(nvars: usize) -> Arc<Grading> {
        let mut degrees = Vec::new();
        let total = 3usize.pow(nvars as u32);
        for m in 0..total {
            let mut x = m;
            let mut deg = vec![0u32; nvars];
            for c in deg.iter_mut() {
                *c = (x % 3) as u32;
                x /= 3;
            }
            if deg.iter().filter(|&&c| c == 2).count() <= 1 {
                degrees.push(deg);
            }
        }
        degrees.sort_by(|a, b| {
            let sa: u32 = a.iter().sum();
            let sb: u32 = b.iter().sum();
            sa.cmp(&sb).then_with(|| a.cmp(b))
        });
        let sentinel = degrees.iter().map(|d| d.contains(&2)).collect();
        Arc::new(Grading::finish(GradingKind::Multi, nvars, degrees, sentinel))
    }

    fn finish(kind: GradingKind, nvars: usize, degrees: Vec<Vec<u32>>, sentinel: Vec<bool>) -> Grading {
        let index: HashMap<Vec<u32>, usize> = degrees.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let step = |d: &Vec<u32>, i: usize, sign: i32| -> Option<usize> {
            let mut e = d.clone();
            let slot = if kind == GradingKind::Single { 0 } else { i };
            if sign > 0 {
                e[slot] += 1;
            } else {
                if e[slot] == 0 {
                    return None;
                }
                e[slot] -= 1;
            }
            index.get(&e).copied()
        };
        let up = degrees.iter().map(|d| (0..nvars).map(|i| step(d, i, 1)).collect()).collect();
        let down = degrees.iter().map(|d| (0..nvars).map(|i| step(d, i, -1)).collect()).collect();
        Grading { kind, nvars, degrees, index, up, down, sentinel }
    }

    pub fn kind(&self) -> GradingKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, k: usize) -> &[u32] {
        &self.degrees[k]
    }

    pub fn index_of(&self, d: &[u32]) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Index of `k + deg(x_i)`, if stored.
    pub fn up(&self, k: usize, i: usize) -> Option<usize> {
        self.up[k][i]
    }

    /// Index of `k - deg(x_i)`, if stored.
    pub fn down(&self, k: usize, i: usize) -> Option<usize> {
        self.down[k][i]
    }

    pub fn is_sentinel(&self, k: usize) -> bool {
        self.sentinel[k]
    }

    /// Degree of variable `i` as a degree vector.
    pub fn var_degree(&self, i: usize) -> Vec<u32> {
        match self.kind {
            GradingKind::Single => vec![1],
            GradingKind::Multi => {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                e
            }
        }
    }

    /// The t-degree: the identity for single gradings, `sum_i 2^(i-1) l_i`
    /// for multigradings.
    pub fn tdeg(&self, k: usize) -> u32 {
        tdeg_of(self.kind, &self.degrees[k])
    }

    /// Weight of variable `i` in the t-degree.
    pub fn var_tdeg(&self, i: usize) -> u32 {
        match self.kind {
            GradingKind::Single => 1,
            GradingKind::Multi => 1 << i,
        }
    }

    /// Index of `k + j` for a degree shift `j`.
    pub fn shifted(&self, k: usize, j: &[u32]) -> Option<usize> {
        let d: Vec<u32> = self.degrees[k].iter().zip(j).map(|(a, b)| a + b).collect();
        self.index_of(&d)
    }
}

pub fn tdeg_of(kind: GradingKind, d: &[u32]) -> u32 {
    match kind {
        GradingKind::Single => d[0],
        GradingKind::Multi => d.iter().enumerate().map(|(i, &x)| x << i).sum(),
    }
}

/// A graded module given by its stored pieces: `dims[k]` and matrices
/// `mul[k][i]: piece(k) -> piece(k + deg x_i)` acting on column vectors.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub grading: Arc<Grading>,
    pub dims: Vec<usize>,
    pub mul: Vec<Vec<Option<Mat>>>,
}

impl GradedModule {
    pub fn zero(grading: Arc<Grading>) -> GradedModule {
        let n = grading.len();
        let nv = grading.nvars();
        let mul = (0..n)
            .map(|k| (0..nv).map(|i| grading.up(k, i).map(|_| Mat::zeros(0, 0))).collect())
            .collect();
        GradedModule { grading, dims: vec![0; n], mul }
    }

    pub fn mul_map(&self, k: usize, i: usize) -> Option<&Mat> {
        self.mul[k][i].as_ref()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `m` times the pieces of degree `k - deg x_i`, summed over `i`.
    pub fn ideal_image(&self, k: usize) -> Subspace {
        let g = &self.grading;
        let mut cols: Option<Mat> = None;
        for i in 0..g.nvars() {
            if let Some(lo) = g.down(k, i) {
                let m = self.mul[lo][i].as_ref().expect("multiplication map present");
                if m.cols() == 0 {
                    continue;
                }
                cols = Some(match cols {
                    None => m.clone(),
                    Some(c) => c.hstack(m),
                });
            }
        }
        match cols {
            None => Subspace::zero(self.dims[k]),
            Some(c) => Subspace::span(&c),
        }
    }

    /// Reduction modulo the maximal ideal. Fails if a reduced piece at a
    /// sentinel degree is nonzero.
    pub fn reduce(&self) -> Result<Reduction, Error> {
        let r = self.reduce_unchecked();
        for k in 0..self.grading.len() {
            if self.grading.is_sentinel(k) && r.dims[k] > 0 {
                return Err(Error::CapTooSmall { degree: self.grading.degree(k).to_vec() });
            }
        }
        Ok(r)
    }

    pub fn reduce_unchecked(&self) -> Reduction {
        let quotients: Vec<Quotient> = (0..self.grading.len()).map(|k| Quotient::new(self.ideal_image(k))).collect();
        let dims = quotients.iter().map(|q| q.dim()).collect();
        Reduction { quotients, dims }
    }

    /// Checks that multiplication maps commute wherever both composites are
    /// stored.
    pub fn check_commuting(&self) -> bool {
        let g = &self.grading;
        for k in 0..g.len() {
            for i in 0..g.nvars() {
                for j in i + 1..g.nvars() {
                    let (Some(ki), Some(kj)) = (g.up(k, i), g.up(k, j)) else { continue };
                    let (Some(kij), Some(kji)) = (g.up(ki, j), g.up(kj, i)) else { continue };
                    debug_assert_eq!(kij, kji);
                    let a = self.mul[ki][j].as_ref().unwrap().mul(self.mul[k][i].as_ref().unwrap());
                    let b = self.mul[kj][i].as_ref().unwrap().mul(self.mul[k][j].as_ref().unwrap());
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The shifted module `M[-j]`: piece `k` is the old piece `k - j`.
    pub fn shift(&self, j: &[u32]) -> GradedModule {
        let g = self.grading.clone();
        let n = g.len();
        let src: Vec<Option<usize>> = (0..n)
            .map(|k| {
                let d = g.degree(k);
                if d.iter().zip(j).any(|(a, b)| a < b) {
                    return None;
                }
                let e: Vec<u32> = d.iter().zip(j).map(|(a, b)| a - b).collect();
                g.index_of(&e)
            })
            .collect();
        let dims: Vec<usize> = src.iter().map(|s| s.map_or(0, |s| self.dims[s])).collect();
        let mul = (0..n)
            .map(|k| {
                (0..g.nvars())
                    .map(|i| {
                        let up = g.up(k, i)?;
                        Some(match (src[k], src[up]) {
                            (Some(a), Some(_)) => self.mul[a][i].clone().expect("stored"),
                            _ => Mat::zeros(dims[up], dims[k]),
                        })
                    })
                    .collect()
            })
            .collect();
        GradedModule { grading: g, dims, mul }
    }

    /// Direct sum of two modules on the same grading.
    pub fn direct_sum(&self, o: &GradedModule) -> GradedModule {
        assert_eq!(*self.grading, *o.grading);
        let g = self.grading.clone();
        let dims: Vec<usize> = self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect();
        let mul = (0..g.len())
            .map(|k| {
                (0..g.nvars())
                    .map(|i| {
                        let up = g.up(k, i)?;
                        let mut m = Mat::zeros(dims[up], dims[k]);
                        m.put(0, 0, self.mul[k][i].as_ref().unwrap());
                        m.put(self.dims[up], self.dims[k], o.mul[k][i].as_ref().unwrap());
                        Some(m)
                    })
                    .collect()
            })
            .collect();
        GradedModule { grading: g, dims, mul }
    }

    /// Submodule spanned degreewise by `sub[k]` (assumed closed under the
    /// multiplication maps), in the coordinates of those subspaces.
    pub fn submodule(&self, sub: &[Subspace]) -> GradedModule {
        let g = self.grading.clone();
        let dims: Vec<usize> = sub.iter().map(|s| s.dim()).collect();
        let mul = (0..g.len())
            .map(|k| {
                (0..g.nvars())
                    .map(|i| {
                        let up = g.up(k, i)?;
                        let img = self.mul[k][i].as_ref().unwrap().mul(sub[k].basis());
                        Some(sub[up].coord_map().mul(&img))
                    })
                    .collect()
            })
            .collect();
        GradedModule { grading: g, dims, mul }
    }
}

/// The quotient maps `rho_k: M^k -> M^k / (m M)^k`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub quotients: Vec<Quotient>,
    pub dims: Vec<usize>,
}

impl Reduction {
    pub fn rho(&self, k: usize) -> Mat {
        self.quotients[k].matrix()
    }

    /// Image of a subspace of `M^k` in the reduced piece.
    pub fn image(&self, k: usize, s: &Subspace) -> Subspace {
        s.image(&self.rho(k))
    }
}

/// Ring acting on a stalk: local variables are global variables
/// `local[i]`, and global variable `j` acts as `sum_i action[j][i] y_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub local: Vec<usize>,
    pub action: Vec<Vec<Rat>>,
}

impl RingSpec {
    pub fn nlocal(&self) -> usize {
        self.local.len()
    }
}

/// Exponent vectors `a` in `n` local variables with `base + sum a_i deg(y_i)`
/// inside the grading, keyed by the resulting degree index.
fn monomials_by_degree(g: &Grading, ring: &RingSpec, base: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new(); g.len()];
    let n = ring.nlocal();
    let mut stack: Vec<(usize, Vec<u32>, usize)> = vec![(base, vec![0; n], 0)];
    // enumerate with nondecreasing variable index to avoid repeats
    while let Some((k, a, start)) = stack.pop() {
        out[k].push(a.clone());
        for i in start..n {
            if let Some(up) = g.up(k, ring.local[i]) {
                let mut b = a.clone();
                b[i] += 1;
                stack.push((up, b, i));
            }
        }
    }
    for v in out.iter_mut() {
        v.sort();
    }
    out
}

/// A free module over a stalk ring with named generators, remembering the
/// `(generator, monomial)` label of each basis vector.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub module: GradedModule,
    pub ring: RingSpec,
    pub gen_degrees: Vec<usize>,
    pub labels: Vec<Vec<(usize, Vec<u32>)>>,
    pub index: Vec<HashMap<(usize, Vec<u32>), usize>>,
}

impl FreeModule {
    pub fn new(grading: Arc<Grading>, ring: RingSpec, gen_degrees: Vec<usize>) -> FreeModule {
        let g = grading.clone();
        let mut labels: Vec<Vec<(usize, Vec<u32>)>> = vec![Vec::new(); g.len()];
        for (gi, &gd) in gen_degrees.iter().enumerate() {
            for (k, monos) in monomials_by_degree(&g, &ring, gd).into_iter().enumerate() {
                for a in monos {
                    labels[k].push((gi, a));
                }
            }
        }
        for l in labels.iter_mut() {
            l.sort();
        }
        let index: Vec<HashMap<(usize, Vec<u32>), usize>> = labels
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect())
            .collect();
        let dims: Vec<usize> = labels.iter().map(|l| l.len()).collect();
        let mul = (0..g.len())
            .map(|k| {
                (0..g.nvars())
                    .map(|j| {
                        let up = g.up(k, j)?;
                        let mut m = Mat::zeros(dims[up], dims[k]);
                        for (col, (gi, a)) in labels[k].iter().enumerate() {
                            for (i, c) in ring.action[j].iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let mut b = a.clone();
                                b[i] += 1;
                                if let Some(&row) = index[up].get(&(*gi, b)) {
                                    m.set(row, col, c.clone());
                                }
                            }
                        }
                        Some(m)
                    })
                    .collect()
            })
            .collect();
        FreeModule { module: GradedModule { grading, dims, mul }, ring, gen_degrees, labels, index }
    }
}

/// Generating polynomial data: for each degree index, the number of
/// generators of a free module in that degree that reproduces `m`'s
/// dimensions, or `None` when the reduced dimensions do not fit a free module.
pub fn is_free_with_reduced_generators(m: &GradedModule, ring: &RingSpec, red: &Reduction) -> bool {
    let mut gens = Vec::new();
    for (k, &d) in red.dims.iter().enumerate() {
        gens.extend(std::iter::repeat(k).take(d));
    }
    let f = FreeModule::new(m.grading.clone(), ring.clone(), gens);
    f.module.dims == m.dims
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_ring(n: usize) -> RingSpec {
        let action = (0..n).map(|j| (0..n).map(|i| if i == j { Rat::ONE } else { Rat::ZERO }).collect()).collect();
        RingSpec { local: (0..n).collect(), action }
    }

    #[test]
    fn free_rank_one_reduces_to_degree_zero() {
        let g = Grading::single(2, 3);
        let f = FreeModule::new(g, a_ring(2), vec![0]);
        assert_eq!(f.module.dims, vec![1, 2, 3, 4]);
        assert!(f.module.check_commuting());
        assert_eq!(f.module.reduce().unwrap().dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn generators_zero_one() {
        let g = Grading::single(3, 4);
        let f = FreeModule::new(g, a_ring(3), vec![0, 1]);
        assert_eq!(f.module.reduce().unwrap().dims, vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn shift_reduces_shifted() {
        let g = Grading::single(2, 3);
        let f = FreeModule::new(g, a_ring(2), vec![0]);
        let s = f.module.shift(&[1]);
        assert_eq!(s.reduce().unwrap().dims, vec![0, 1, 0, 0]);
    }

    #[test]
    fn sentinel_catches_top_generator() {
        let g = Grading::single(1, 2);
        let f = FreeModule::new(g, a_ring(1), vec![2]);
        assert!(matches!(f.module.reduce(), Err(Error::CapTooSmall { .. })));
    }

    #[test]
    fn multigrading_degrees() {
        let g = Grading::multi(2);
        // {0,1,2}^2 minus (2,2)
        assert_eq!(g.len(), 8);
        assert_eq!(g.tdeg(g.index_of(&[1, 1]).unwrap()), 3);
        assert!(g.is_sentinel(g.index_of(&[0, 2]).unwrap()));
    }
}
