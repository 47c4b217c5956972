//! Lattice points of half-open parallelepipeds of simplicial cones.

use super::snf::diagonalize;
use crate::algebra::Rat;

/// A lattice point `b = sum_i c_i v_i` with every `c_i` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxPoint {
    pub point: Vec<i64>,
    pub coeffs: Vec<Rat>,
}

/// Lattice points of `[0,1) v_1 + ... + [0,1) v_k` for linearly independent
/// integer vectors `v_i` in `Z^d`, sorted by coordinates. One point is
/// produced per coset of `Z v_1 + ... + Z v_k` in the saturated lattice of
/// their span, read off from a unimodular diagonalization.
pub fn box_points(gens: &[Vec<i64>], d: usize) -> Vec<BoxPoint> {
    let k = gens.len();
    if k == 0 {
        return vec![BoxPoint { point: vec![0; d], coeffs: vec![] }];
    }
    let m: Vec<Vec<i64>> = (0..d).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    let diag = diagonalize(&m, d, k);
    assert_eq!(diag.diag.len(), k, "generators must be linearly independent");
    let sizes: Vec<i128> = diag.diag.clone();
    let mut out = Vec::new();
    let mut y = vec![0i128; k];
    loop {
        // c = Q * (y / diag), reduced mod 1
        let mut coeffs = Vec::with_capacity(k);
        for i in 0..k {
            let mut s = Rat::ZERO;
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 && diag.q[i][j] != 0 {
                    let num = i64::try_from(diag.q[i][j] * yj).expect("fits");
                    s += &Rat::new(num, i64::try_from(sizes[j]).expect("fits"));
                }
            }
            coeffs.push(s.fract());
        }
        let point: Vec<i64> = (0..d)
            .map(|r| {
                let mut s = Rat::ZERO;
                for (c, g) in coeffs.iter().zip(gens) {
                    s += &(c * &Rat::int(g[r]));
                }
                s.to_i64().expect("box point is integral")
            })
            .collect();
        out.push(BoxPoint { point, coeffs });
        let mut i = 0;
        while i < k {
            y[i] += 1;
            if y[i] < sizes[i] {
                break;
            }
            y[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out.sort_by(|a, b| a.point.cmp(&b.point));
    out
}
