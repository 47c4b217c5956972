//! Finite graded posets with the interval recursion for toric `g`.

use std::collections::HashMap;

use crate::algebra::{Poly, Vars};
use crate::error::{Error, Result};

/// A finite graded poset given by ranks and the full order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianPoset {
    rank: Vec<usize>,
    le: Vec<Vec<bool>>,
}

impl EulerianPoset {
    pub fn new(rank: Vec<usize>, le: Vec<Vec<bool>>) -> EulerianPoset {
        assert_eq!(rank.len(), le.len());
        EulerianPoset { rank, le }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x][y]
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.le[x][y]))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.le[y][x]))
    }

    /// The same elements with the order reversed and ranks `r_max - r`.
    pub fn dual(&self) -> EulerianPoset {
        let top = self.rank.iter().copied().max().unwrap_or(0);
        let n = self.len();
        EulerianPoset {
            rank: self.rank.iter().map(|r| top - r).collect(),
            le: (0..n).map(|x| (0..n).map(|y| self.le[y][x]).collect()).collect(),
        }
    }

    /// The closed interval `[a, b]` as its own poset; element order follows
    /// the original indices.
    pub fn interval(&self, a: usize, b: usize) -> (EulerianPoset, Vec<usize>) {
        let elems: Vec<usize> = (0..self.len()).filter(|&z| self.le[a][z] && self.le[z][b]).collect();
        let base = self.rank[a];
        let rank = elems.iter().map(|&z| self.rank[z] - base).collect();
        let le = elems.iter().map(|&x| elems.iter().map(|&y| self.le[x][y]).collect()).collect();
        (EulerianPoset { rank, le }, elems)
    }

    /// Checks that every interval `[x, y]` with `x < y` has as many elements
    /// of even rank as of odd rank.
    pub fn check_eulerian(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if x == y || !self.le[x][y] {
                    continue;
                }
                let mut s: i64 = 0;
                for z in 0..n {
                    if self.le[x][z] && self.le[z][y] {
                        s += if self.rank[z] % 2 == 0 { 1 } else { -1 };
                    }
                }
                if s != 0 {
                    return Err(Error::NotEulerian(x, y));
                }
            }
        }
        Ok(())
    }

    /// Toric `g` of the whole poset, which must have a least and a greatest
    /// element.
    pub fn g(&self) -> Result<Poly> {
        let lo = self.least().ok_or(Error::NoLeastElement)?;
        let hi = self.greatest().ok_or(Error::NoGreatestElement)?;
        self.check_eulerian()?;
        let mut memo = HashMap::new();
        Ok(self.g_interval(lo, hi, &mut memo))
    }

    /// Toric `g` of the interval `[a, b]`: the part of degree below `n/2` of
    /// `-sum_{a <= x < b} g([a, x]) (t - 1)^(n - rk x)`, where `n` is the
    /// length of the interval.
    pub fn g_interval(&self, a: usize, b: usize, memo: &mut HashMap<(usize, usize), Poly>) -> Poly {
        if let Some(p) = memo.get(&(a, b)) {
            return p.clone();
        }
        let n = self.rank[b] - self.rank[a];
        let result = if n == 0 {
            Poly::one(Vars::T)
        } else {
            let tm1 = Poly::from_coeffs(&[-1, 1]);
            let mut r = Poly::zero(Vars::T);
            for x in 0..self.len() {
                if x != b && self.le[a][x] && self.le[x][b] {
                    let gx = self.g_interval(a, x, memo);
                    r = r.add(&gx.mul(&tm1.pow((self.rank[b] - self.rank[x]) as u32)));
                }
            }
            let mut g = Poly::zero(Vars::T);
            for i in 0..n.div_ceil(2) {
                g.add_term(&[i as i32], &(-&r.t_coeff(i as i32)));
            }
            g
        };
        memo.insert((a, b), result.clone());
        result
    }
}

/// Builds a poset from ranks and a cover-or-order predicate.
pub fn poset_from_relation(rank: Vec<usize>, le: impl Fn(usize, usize) -> bool) -> EulerianPoset {
    let n = rank.len();
    let le = (0..n).map(|x| (0..n).map(|y| le(x, y)).collect()).collect();
    EulerianPoset::new(rank, le)
}

/// The Boolean lattice on `k` atoms, graded by cardinality.
pub fn boolean_lattice(k: usize) -> EulerianPoset {
    let n = 1usize << k;
    let rank = (0..n).map(|s: usize| s.count_ones() as usize).collect();
    poset_from_relation(rank, |x, y| x & y == x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_lattices_have_g_one() {
        for k in 0..5 {
            let p = boolean_lattice(k);
            p.check_eulerian().unwrap();
            assert_eq!(p.g().unwrap(), Poly::one(Vars::T));
        }
    }

    #[test]
    fn square_face_lattice() {
        // o, four rays, four edges, top
        let rank = vec![0, 1, 1, 1, 1, 2, 2, 2, 2, 3];
        let edges = [(1, 2), (2, 3), (3, 4), (4, 1)];
        let le = |x: usize, y: usize| {
            if x == y || x == 0 || y == 9 {
                return true;
            }
            if (1..=4).contains(&x) && (5..=8).contains(&y) {
                let (a, b) = edges[y - 5];
                return x == a || x == b;
            }
            false
        };
        let p = poset_from_relation(rank, le);
        assert_eq!(p.g().unwrap(), Poly::from_coeffs(&[1, 1]));
        assert_eq!(p.dual().g().unwrap(), Poly::from_coeffs(&[1, 1]));
    }

    #[test]
    fn chain_of_length_two_is_not_eulerian() {
        let p = poset_from_relation(vec![0, 1, 2], |x, y| x <= y);
        assert!(matches!(p.g(), Err(Error::NotEulerian(_, _))));
    }
}
