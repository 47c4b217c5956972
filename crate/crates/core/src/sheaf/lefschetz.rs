//! Hard and relative hard Lefschetz as rank statements, with convex
//! conewise linear functions found by exact linear programming.

use serde::Serialize;

use crate::algebra::lp::{feasible_point, Constraint};
use crate::algebra::{Mat, Rat, Subspace};
use crate::error::Result;
use crate::fan::{classify_quasi_convex, dot, Fan, FanSubdivision, QuasiConvexity};

use super::decompose::kernels;
use super::pushforward::pushforward;
use super::{Sections, Sheaf};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum LefschetzOutcome {
    Pass,
    Fail(String),
    Skipped(String),
}

/// A conewise linear function: one functional per maximal cone, agreeing
/// on shared faces.
#[derive(Clone, Debug)]
pub struct ConewiseLinear {
    pub functionals: Vec<(usize, Vec<Rat>)>,
}

impl ConewiseLinear {
    fn on(&self, fan: &Fan, c: usize) -> &[Rat] {
        &self.functionals.iter().find(|(m, _)| fan.is_face(c, *m)).expect("cone lies in a maximal cone").1
    }
}

/// Searches for a conewise linear function on `fan` that is continuous and
/// jumps by at least 1 across every wall selected by `strict`.
pub fn convex_function(fan: &Fan, strict: &dyn Fn(usize) -> bool) -> Option<ConewiseLinear> {
    let d = fan.ambient_dim();
    let maxes: Vec<usize> = fan.maximal_cones().to_vec();
    let n = fan.dim();
    let nv = d * maxes.len();
    let fill = |a: usize, b: usize, x: &[Rat]| -> Vec<Rat> {
        let mut c = vec![Rat::ZERO; nv];
        for j in 0..d {
            c[a * d + j] = &c[a * d + j] + &x[j];
            c[b * d + j] = &c[b * d + j] - &x[j];
        }
        c
    };
    let mut eqs = Vec::new();
    let mut ges = Vec::new();
    for a in 0..maxes.len() {
        for b in a + 1..maxes.len() {
            let ra = fan.cone(maxes[a]).rays();
            let rb = fan.cone(maxes[b]).rays();
            let common: Vec<usize> = ra.iter().copied().filter(|r| rb.contains(r)).collect();
            for &r in &common {
                eqs.push(Constraint::new(fill(a, b, fan.ray_q(r)), Rat::ZERO));
            }
            let meet = fan.find(&common).expect("intersections are faces");
            if fan.cone(meet).dim() + 1 != n || !strict(meet) {
                continue;
            }
            // the functional of each side dominates on its own rays
            for &r in ra.iter().filter(|r| !common.contains(r)) {
                ges.push(Constraint::new(fill(a, b, fan.ray_q(r)), Rat::ONE));
            }
            for &r in rb.iter().filter(|r| !common.contains(r)) {
                ges.push(Constraint::new(fill(b, a, fan.ray_q(r)), Rat::ONE));
            }
        }
    }
    let x = feasible_point(nv, &eqs, &ges)?;
    Some(ConewiseLinear { functionals: maxes.iter().enumerate().map(|(i, &m)| (m, x[i * d..(i + 1) * d].to_vec())).collect() })
}

/// Multiplication by `l` on sections `sec` of `f`, from degree `k` to
/// `k + 1`, in section coordinates.
fn multiply(f: &Sheaf, sec: &Sections, l: &ConewiseLinear, k: usize) -> Mat {
    let g = &f.grading;
    let up = g.up(k, 0).expect("single grading below the cap");
    let mut amb = Mat::zeros(sec.ambient[up], sec.ambient[k]);
    for (mi, &c) in sec.maximal.iter().enumerate() {
        let a = l.on(&f.fan, c);
        let stalk = f.stalk(c);
        let mut block = Mat::zeros(stalk.dims[up], stalk.dims[k]);
        for (j, aj) in a.iter().enumerate() {
            if !aj.is_zero() {
                block = block.add(&stalk.mul_map(k, j).expect("stored").scale(aj));
            }
        }
        amb.put(sec.offsets[up][mi], sec.offsets[k][mi], &block);
    }
    let img = amb.mul(sec.space[k].basis());
    debug_assert!((0..img.cols()).all(|c| sec.space[up].contains(&img.col(c))));
    sec.space[up].coord_map().mul(&img)
}

/// Multiplication induced on the reduction of `sec`, per degree.
fn reduced_multiplication(f: &Sheaf, sec: &Sections, l: &ConewiseLinear) -> Result<(Vec<Mat>, Vec<usize>)> {
    let red = sec.module.reduce()?;
    let top = f.degrees() - 1;
    let maps = (0..top)
        .map(|k| {
            let lifts = red.quotients[k].lift_indices();
            red.rho(k + 1).mul(&multiply(f, sec, l, k).select_cols(lifts))
        })
        .collect();
    Ok((maps, red.dims))
}

fn power(maps: &[Mat], from: usize, steps: usize, dims: &[usize]) -> Mat {
    let mut m = Mat::identity(dims[from]);
    for i in 0..steps {
        m = maps[from + i].mul(&m);
    }
    m
}

/// Multiplication by `l^(n - 2k)` maps reduced global sections of degree
/// `k` bijectively to degree `n - k` on a complete fan of dimension `n`.
pub fn hard_lefschetz(f: &Sheaf) -> Result<LefschetzOutcome> {
    if classify_quasi_convex(&f.fan) != QuasiConvexity::Complete {
        return Ok(LefschetzOutcome::Skipped("fan is not complete".into()));
    }
    let Some(l) = convex_function(&f.fan, &|_| true) else {
        return Ok(LefschetzOutcome::Skipped("no strictly convex conewise linear function found".into()));
    };
    let n = f.fan.dim();
    let sec = f.global_sections();
    let (maps, dims) = reduced_multiplication(f, &sec, &l)?;
    for k in 0..=n / 2 {
        let m = power(&maps, k, n - 2 * k, &dims);
        if dims[k] != dims[n - k] || m.rank() != dims[k] {
            return Ok(LefschetzOutcome::Fail(format!("degree {k}: dims {} and {}, rank {}", dims[k], dims[n - k], m.rank())));
        }
    }
    Ok(LefschetzOutcome::Pass)
}

/// On every coarse cone `sigma`, `dim K_sigma^k = dim K_sigma^(dim sigma - k)`
/// and multiplication by a relatively strictly convex function to the
/// power `dim sigma - 2k` is injective on `K_sigma^k`.
pub fn relative_hard_lefschetz(sub: &FanSubdivision, f: &Sheaf) -> Result<LefschetzOutcome> {
    let fine = &sub.fine;
    let strict = |w: usize| sub.coarse.cone(sub.pi[w]).dim() == fine.cone(w).dim() + 1;
    let Some(l) = convex_function(fine, &strict) else {
        return Ok(LefschetzOutcome::Skipped("no relatively strictly convex function found".into()));
    };
    let pf = pushforward(sub, f)?;
    let dec = kernels(&pf.sheaf)?;
    for s in 0..sub.coarse.num_cones() {
        let ds = sub.coarse.cone(s).dim();
        let ker = &dec.kernels[s];
        let (maps, dims) = reduced_multiplication(f, &pf.sections[s], &l)?;
        for k in 0..=ds {
            let kd = ker.get(k).map_or(0, Subspace::dim);
            let other = ker.get(ds - k).map_or(0, Subspace::dim);
            if kd != other {
                return Ok(LefschetzOutcome::Fail(format!("cone {s}: K dims {kd} in degree {k}, {other} in degree {}", ds - k)));
            }
            if 2 * k > ds || kd == 0 {
                continue;
            }
            let m = power(&maps, k, ds - 2 * k, &dims).mul(ker[k].basis());
            let image = Subspace::span(&m);
            if image.dim() != kd || !ker[ds - k].contains_space(&image) {
                return Ok(LefschetzOutcome::Fail(format!("cone {s}: multiplication is not an isomorphism in degree {k}")));
            }
        }
    }
    Ok(LefschetzOutcome::Pass)
}

/// Value of `l` at a point of cone `c`.
pub fn evaluate(fan: &Fan, l: &ConewiseLinear, c: usize, x: &[Rat]) -> Rat {
    dot(l.on(fan, c), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::build_subdivision;
    use crate::sheaf::{minimal_extension, Structure};

    #[test]
    fn complete_fans_satisfy_hard_lefschetz() {
        let f = Fan::build(2, &[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
            .unwrap();
        let l = minimal_extension(&f, Structure::A).unwrap();
        assert_eq!(hard_lefschetz(&l).unwrap(), LefschetzOutcome::Pass);
        let l = convex_function(&f, &|_| true).unwrap();
        // strictly convex: each piece dominates on its own cone
        for (m, _) in &l.functionals {
            for &r in f.cone(*m).rays() {
                for (m2, _) in &l.functionals {
                    assert!(evaluate(&f, &l, *m, f.ray_q(r)) >= evaluate(&f, &l, *m2, f.ray_q(r)) || m2 == m);
                }
            }
        }
    }

    #[test]
    fn split_cone_relative() {
        let fine = Fan::build(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]).unwrap();
        let coarse = Fan::build(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        let sub = build_subdivision(&fine, &coarse).unwrap();
        let l = minimal_extension(&fine, Structure::A).unwrap();
        assert_eq!(relative_hard_lefschetz(&sub, &l).unwrap(), LefschetzOutcome::Pass);
    }
}
