//! Degree maps of Gorenstein fans.

use std::collections::HashMap;

use super::lattice::box_points;
use super::refine::pulling_triangulation;
use super::subdivision::FanSubdivision;
use super::{dot, to_q, Fan};
use crate::algebra::{Mat, Rat};
use crate::error::{Error, Result};

/// The conewise linear function equal to 1 on every primitive ray
/// generator, stored as one functional per maximal cone (lying in the span
/// of that cone).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMap {
    pub functionals: Vec<(usize, Vec<Rat>)>,
    per_cone: Vec<usize>,
}

impl DegreeMap {
    /// Functional used on cone `s`: that of the first maximal cone
    /// containing `s`.
    pub fn functional(&self, s: usize) -> &[Rat] {
        &self.functionals[self.per_cone[s]].1
    }

    /// Value at a point of cone `s`.
    pub fn value(&self, s: usize, x: &[Rat]) -> Rat {
        dot(self.functional(s), x)
    }

    pub fn value_int(&self, s: usize, x: &[i64]) -> Rat {
        self.value(s, &to_q(x))
    }

    /// Checks that the degree map of the fine fan of `sub` equals this one
    /// (which belongs to the coarse fan): every fine ray has value 1.
    pub fn check_equal_on(&self, sub: &FanSubdivision) -> Result<()> {
        for t in 0..sub.fine.num_cones() {
            let c = sub.fine.cone(t);
            if c.dim() == 1 && !self.value(sub.pi[t], sub.fine.ray_q(c.rays()[0])).is_one() {
                return Err(Error::DegreeMapMismatch(t));
            }
        }
        Ok(())
    }
}

/// The functional on `Span(s)` taking value 1 on each ray of `s`, or the
/// first ray where the value forced by the earlier rays differs from 1.
fn cone_functional(fan: &Fan, s: usize) -> std::result::Result<Vec<Rat>, (usize, Rat)> {
    let c = fan.cone(s);
    let basis = c.span().basis();
    let rows: Vec<Vec<Rat>> =
        c.rays().iter().map(|&r| (0..basis.cols()).map(|j| dot(fan.ray_q(r), &basis.col(j))).collect()).collect();
    let m = Mat::from_rows(rows.clone(), basis.cols());
    let ones = vec![Rat::ONE; rows.len()];
    if let Some((a, _)) = m.solve(&ones) {
        return Ok(basis.mul_vec(&a));
    }
    // find a maximal independent prefix and report the first ray off the hyperplane
    let mut idx: Vec<usize> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial: Vec<Vec<Rat>> = idx.iter().map(|&j| rows[j].clone()).collect();
        trial.push(row.clone());
        if Mat::from_rows(trial, basis.cols()).rank() > idx.len() {
            idx.push(i);
        }
    }
    let sub = Mat::from_rows(idx.iter().map(|&j| rows[j].clone()).collect(), basis.cols());
    let (a, _) = sub.solve(&vec![Rat::ONE; idx.len()]).expect("independent rows");
    let g = basis.mul_vec(&a);
    for &r in c.rays() {
        let v = dot(&g, fan.ray_q(r));
        if !v.is_one() {
            return Err((r, v));
        }
    }
    unreachable!("some ray violates the forced functional")
}

/// The degree map of a Gorenstein fan, certified integral on the box points
/// of a pulling triangulation of each maximal cone.
pub fn gorenstein_degree_map(fan: &Fan) -> Result<DegreeMap> {
    let mut functionals = Vec::new();
    let mut slot = HashMap::new();
    for &m in fan.maximal_cones() {
        let g = cone_functional(fan, m).map_err(|(r, v)| Error::NotGorenstein {
            cone: m,
            witness: fan.ray(r).to_vec(),
            value: v,
        })?;
        slot.insert(m, functionals.len());
        functionals.push((m, g));
    }
    let per_cone: Vec<usize> = (0..fan.num_cones())
        .map(|s| {
            let m = *fan.cofaces(s).iter().find(|c| slot.contains_key(c)).expect("every cone lies in a maximal cone");
            slot[&m]
        })
        .collect();
    let dm = DegreeMap { functionals, per_cone };
    let mut memo = HashMap::new();
    for &m in fan.maximal_cones() {
        let mut bad: Vec<(Rat, Vec<i64>)> = Vec::new();
        for simplex in pulling_triangulation(fan, m, &mut memo) {
            let gens: Vec<Vec<i64>> = simplex.iter().map(|&r| fan.ray(r).to_vec()).collect();
            for b in box_points(&gens, fan.ambient_dim()) {
                let v = dm.value_int(m, &b.point);
                if !v.is_integer() {
                    bad.push((v, b.point));
                }
            }
        }
        bad.sort();
        if let Some((value, witness)) = bad.into_iter().next() {
            return Err(Error::NotGorenstein { cone: m, witness, value });
        }
    }
    Ok(dm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_cone_degree_is_last_coordinate() {
        let f = Fan::build(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]], &[vec![0, 1, 2, 3]]).unwrap();
        let g = gorenstein_degree_map(&f).unwrap();
        assert_eq!(g.functional(0), &[Rat::ZERO, Rat::ZERO, Rat::ONE]);
    }

    #[test]
    fn index_two_cone() {
        let f = Fan::build(2, &[vec![1, 0], vec![1, 2]], &[vec![0, 1]]).unwrap();
        let g = gorenstein_degree_map(&f).unwrap();
        assert_eq!(g.functional(0), &[Rat::ONE, Rat::ZERO]);
    }

    #[test]
    fn non_gorenstein_witness() {
        let f = Fan::build(2, &[vec![3, 1], vec![1, 3]], &[vec![0, 1]]).unwrap();
        match gorenstein_degree_map(&f) {
            Err(Error::NotGorenstein { witness, value, .. }) => {
                assert_eq!(witness, vec![1, 1]);
                assert_eq!(value, Rat::new(1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rays_off_a_hyperplane() {
        let f = Fan::build(3, &[vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 2]], &[vec![0, 1, 2, 3]]).unwrap();
        assert!(matches!(gorenstein_degree_map(&f), Err(Error::NotGorenstein { .. })));
    }
}
