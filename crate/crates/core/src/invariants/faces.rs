//! Face-poset computations on sets of cones above a base cone: toric `g`
//! of intervals and dual intervals, toric `h`, flags, `ab`- and
//! `cd`-indices, boundaries.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::ncpoly::ab_to_cd;
use crate::algebra::{Alphabet, NcPoly, Poly, Rat, Vars};
use crate::error::{Error, Result};
use crate::fan::Fan;

/// A face-closed set of cones of `fan` lying above `base`, viewed as the fan
/// they form in the quotient by `Span(base)`. The rank of a cone is its
/// dimension minus that of the base.
#[derive(Clone, Debug)]
pub struct ConeSet {
    pub base: usize,
    pub cones: Vec<usize>,
}

/// Flag counts `f_S` keyed by the sorted rank set `S`.
pub type FlagVector = BTreeMap<Vec<usize>, u64>;

pub fn flag_key(s: &[usize]) -> String {
    format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Memoized interval computations on the face poset of one fan.
pub struct FaceCache<'a> {
    pub fan: &'a Fan,
    g: HashMap<(usize, usize), Poly>,
    gd: HashMap<(usize, usize), Poly>,
}

fn truncate_negated(r: &Poly, n: usize) -> Poly {
    let mut g = Poly::zero(Vars::T);
    for i in 0..n.div_ceil(2) {
        g.add_term(&[i as i32], &(-&r.t_coeff(i as i32)));
    }
    g
}

fn t_minus_one_pow(k: usize) -> Poly {
    Poly::from_coeffs(&[-1, 1]).pow(k as u32)
}

impl<'a> FaceCache<'a> {
    pub fn new(fan: &'a Fan) -> FaceCache<'a> {
        FaceCache { fan, g: HashMap::new(), gd: HashMap::new() }
    }

    fn dim(&self, s: usize) -> usize {
        self.fan.cone(s).dim()
    }

    /// Cones `x` with `a <= x <= b`.
    fn between(&self, a: usize, b: usize) -> Vec<usize> {
        self.fan.faces(b).iter().copied().filter(|&x| self.fan.is_face(a, x)).collect()
    }

    /// Toric `g` of the interval `[a, b]` of the face poset.
    pub fn g(&mut self, a: usize, b: usize) -> Poly {
        if let Some(p) = self.g.get(&(a, b)) {
            return p.clone();
        }
        let n = self.dim(b) - self.dim(a);
        let out = if n == 0 {
            Poly::one(Vars::T)
        } else {
            let mut r = Poly::zero(Vars::T);
            for x in self.between(a, b) {
                if x != b {
                    let gx = self.g(a, x);
                    r = r.add(&gx.mul(&t_minus_one_pow(self.dim(b) - self.dim(x))));
                }
            }
            truncate_negated(&r, n)
        };
        self.g.insert((a, b), out.clone());
        out
    }

    /// Toric `g` of the dual of the interval `[a, b]`.
    pub fn g_dual(&mut self, a: usize, b: usize) -> Poly {
        if let Some(p) = self.gd.get(&(a, b)) {
            return p.clone();
        }
        let n = self.dim(b) - self.dim(a);
        let out = if n == 0 {
            Poly::one(Vars::T)
        } else {
            let mut r = Poly::zero(Vars::T);
            for x in self.between(a, b) {
                if x != a {
                    let gx = self.g_dual(x, b);
                    r = r.add(&gx.mul(&t_minus_one_pow(self.dim(x) - self.dim(a))));
                }
            }
            truncate_negated(&r, n)
        };
        self.gd.insert((a, b), out.clone());
        out
    }

    pub fn rank(&self, set: &ConeSet, c: usize) -> usize {
        self.dim(c) - self.dim(set.base)
    }

    /// Largest rank in the set; 0 when empty.
    pub fn set_dim(&self, set: &ConeSet) -> usize {
        set.cones.iter().map(|&c| self.rank(set, c)).max().unwrap_or(0)
    }

    pub fn maximal(&self, set: &ConeSet) -> Vec<usize> {
        set.cones
            .iter()
            .copied()
            .filter(|&c| !set.cones.iter().any(|&o| o != c && self.fan.is_face(c, o)))
            .collect()
    }

    pub fn is_pure(&self, set: &ConeSet) -> bool {
        let n = self.set_dim(set);
        self.maximal(set).iter().all(|&m| self.rank(set, m) == n)
    }

    /// Toric `h`: `t^n h(1/t) = sum_c g([base, c]) (t - 1)^(n - rank c)`.
    pub fn h(&mut self, set: &ConeSet) -> Result<Poly> {
        if set.cones.is_empty() {
            return Ok(Poly::zero(Vars::T));
        }
        if !self.is_pure(set) {
            return Err(Error::NotPurelyDimensional);
        }
        let n = self.set_dim(set);
        let mut s = Poly::zero(Vars::T);
        for &c in &set.cones {
            let g = self.g(set.base, c);
            s = s.add(&g.mul(&t_minus_one_pow(n - self.rank(set, c))));
        }
        Ok(s.reverse(n as i32))
    }

    /// The boundary subset: closure of the non-maximal cones lying in
    /// exactly one maximal cone of the set.
    pub fn boundary(&self, set: &ConeSet) -> Result<ConeSet> {
        if !self.is_pure(set) {
            return Err(Error::NotPurelyDimensional);
        }
        let maxes = self.maximal(set);
        let gens: Vec<usize> = set
            .cones
            .iter()
            .copied()
            .filter(|c| !maxes.contains(c) && maxes.iter().filter(|&&m| self.fan.is_face(*c, m)).count() == 1)
            .collect();
        let cones = set
            .cones
            .iter()
            .copied()
            .filter(|&c| gens.iter().any(|&g| self.fan.is_face(c, g)))
            .collect();
        Ok(ConeSet { base: set.base, cones })
    }

    /// Flag numbers: chains of cones of positive rank, counted by rank set.
    pub fn flags(&self, set: &ConeSet) -> FlagVector {
        let mut out = FlagVector::new();
        if set.cones.is_empty() {
            return out;
        }
        let ranked: Vec<(usize, usize)> = set.cones.iter().map(|&c| (c, self.rank(set, c))).collect();
        let mut stack: Vec<(Option<usize>, Vec<usize>)> = vec![(None, vec![])];
        while let Some((last, ranks)) = stack.pop() {
            *out.entry(ranks.clone()).or_insert(0) += 1;
            for &(c, r) in &ranked {
                if r == 0 {
                    continue;
                }
                let ok = match last {
                    None => true,
                    Some(l) => l != c && self.fan.is_face(l, c),
                };
                if ok {
                    let mut nr = ranks.clone();
                    nr.push(r);
                    stack.push((Some(c), nr));
                }
            }
        }
        out
    }

    /// `Psi = sum_S f_S u_S` with `u_i = b` for `i` in `S` and `a - b` otherwise.
    pub fn ab_index(&self, set: &ConeSet) -> NcPoly {
        if set.cones.is_empty() {
            return NcPoly::zero(Alphabet::Ab);
        }
        let n = self.set_dim(set);
        let a_minus_b = {
            let mut p = NcPoly::word(Alphabet::Ab, "a", Rat::ONE);
            p.add_term("b", &Rat::int(-1));
            p
        };
        let b = NcPoly::word(Alphabet::Ab, "b", Rat::ONE);
        let mut psi = NcPoly::zero(Alphabet::Ab);
        for (s, f) in self.flags(set) {
            let mut u = NcPoly::one(Alphabet::Ab);
            for i in 1..=n {
                u = u.mul(if s.contains(&i) { &b } else { &a_minus_b });
            }
            psi = psi.add(&u.scale(&Rat::int(f as i64)));
        }
        psi
    }

    /// Local `cd`-index: `Psi = l(a+b, ab+ba) + Psi_boundary * a`.
    pub fn local_cd(&self, set: &ConeSet) -> Result<NcPoly> {
        let psi = self.ab_index(set);
        let bd = self.boundary(set)?;
        let rest = psi.sub(&self.ab_index(&bd).mul(&NcPoly::word(Alphabet::Ab, "a", Rat::ONE)));
        ab_to_cd(&rest)
    }

    /// `cd`-index: from the `ab`-index when the boundary is empty, otherwise
    /// the local `cd`-index plus the `cd`-index of the boundary.
    pub fn cd_index(&self, set: &ConeSet) -> Result<NcPoly> {
        let bd = self.boundary(set)?;
        if bd.cones.is_empty() {
            return ab_to_cd(&self.ab_index(set));
        }
        let local = self.local_cd(set)?;
        Ok(local.add(&ab_to_cd(&self.ab_index(&bd))?))
    }

    /// The whole fan as a cone set.
    pub fn whole(&self) -> ConeSet {
        ConeSet { base: self.fan.zero_cone().unwrap_or(0), cones: (0..self.fan.num_cones()).collect() }
    }

    /// `link s` as the cones above `s`.
    pub fn link_set(&self, s: usize) -> ConeSet {
        ConeSet { base: s, cones: self.fan.cofaces(s).to_vec() }
    }

    /// The single-cone fan `<s>`.
    pub fn cone_set(&self, s: usize) -> ConeSet {
        ConeSet { base: self.fan.zero_cone().expect("nonempty fan"), cones: self.fan.faces(s).to_vec() }
    }
}
