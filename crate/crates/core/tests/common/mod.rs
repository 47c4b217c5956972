//! Fan generators and brute-force oracles shared by the integration tests.
//! The oracles use only fan membership tests, cone lists and chain
//! enumeration; none of them calls the recursions or the sheaf code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use fansheaf::algebra::{Alphabet, NcPoly, Poly, Rat, Vars};
use fansheaf::fan::{build_subdivision, DegreeMap, Fan, FanSubdivision};
use fansheaf::verify::corpus::{random_complete_fan, star_split};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fan(d: usize, rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Fan {
    Fan::build(d, rays, cones).expect("valid test fan")
}

pub fn t_poly(cs: &[i64]) -> Poly {
    Poly::from_coeffs(cs)
}

pub fn poly(vars: Vars, terms: &[(&[i32], i64)]) -> Poly {
    let mut p = Poly::zero(vars);
    for (e, c) in terms {
        p.add_term(e, &Rat::int(*c));
    }
    p
}

pub fn cd(terms: &[(&str, i64)]) -> NcPoly {
    let mut p = NcPoly::zero(Alphabet::Cd);
    for &(w, c) in terms {
        p.add_term(w, &Rat::int(c));
    }
    p
}

/// A random complete plane fan with `m` rays and a star subdivision of one
/// of its maximal cones.
pub fn random_plane_split(seed: u64, m: usize) -> (Fan, FanSubdivision) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_complete_fan(&mut rng, m);
    let i = rng.gen_range(0..m);
    let g = star_split(&f, i);
    let sub = build_subdivision(&g, &f).expect("star subdivision");
    (f, sub)
}

fn cross(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// A random nondegenerate lattice triangle in `[0, 3]^2`, counterclockwise.
pub fn random_triangle(seed: u64) -> [(i64, i64); 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut p = [(0, 0); 3];
        for q in p.iter_mut() {
            *q = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        }
        let a = cross(p[0], p[1], p[2]);
        if a > 0 {
            return p;
        }
        if a < 0 {
            p.swap(1, 2);
            return p;
        }
    }
}

/// The cone over a lattice triangle placed at height 1; Gorenstein with
/// degree map the last coordinate.
pub fn triangle_cone(t: &[(i64, i64); 3]) -> Fan {
    let rays: Vec<Vec<i64>> = t.iter().map(|&(x, y)| vec![x, y, 1]).collect();
    fan(3, &rays, &[vec![0, 1, 2]])
}

/// Lattice points of the closed triangle other than its vertices.
pub fn extra_points(t: &[(i64, i64); 3]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for x in 0..=3 {
        for y in 0..=3 {
            let p = (x, y);
            if t.contains(&p) {
                continue;
            }
            let inside = (0..3).all(|i| cross(t[i], t[(i + 1) % 3], p) >= 0);
            if inside {
                out.push(p);
            }
        }
    }
    out
}

/// The star subdivision of a triangle cone at `(p, 1)`, which keeps the
/// degree map; `p` lies in the closed triangle.
pub fn triangle_star(t: &[(i64, i64); 3], p: (i64, i64)) -> FanSubdivision {
    let coarse = triangle_cone(t);
    let mut rays: Vec<Vec<i64>> = t.iter().map(|&(x, y)| vec![x, y, 1]).collect();
    rays.push(vec![p.0, p.1, 1]);
    let cones: Vec<Vec<usize>> =
        (0..3).filter(|&i| cross(t[i], t[(i + 1) % 3], p) != 0).map(|i| vec![i, (i + 1) % 3, 3]).collect();
    let fine = fan(3, &rays, &cones);
    build_subdivision(&fine, &coarse).expect("star subdivision")
}

/// `h(t) = sum_k f_k t^k (1 - t)^(n - k)` from the cone counts of a
/// simplicial fan of dimension `n`.
pub fn simplicial_h(fan: &Fan) -> Poly {
    let n = fan.dim();
    let mut counts = vec![0i64; n + 1];
    for s in 0..fan.num_cones() {
        counts[fan.cone(s).dim()] += 1;
    }
    let one_minus_t = t_poly(&[1, -1]);
    let mut out = Poly::zero(Vars::T);
    for (k, &f) in counts.iter().enumerate() {
        let term = Poly::monomial(Vars::T, &[k as i32], Rat::int(f)).mul(&one_minus_t.pow((n - k) as u32));
        out = out.add(&term);
    }
    out
}

/// Lattice points of degree `k` in the support, for `k = 0..=max`, by
/// enumeration of a box.
pub fn brute_counts(fan: &Fan, g: &DegreeMap, max: usize) -> Vec<i64> {
    let d = fan.ambient_dim();
    let reach = fan.rays().iter().flatten().map(|x| x.abs()).max().unwrap_or(1) * max as i64;
    let mut counts = vec![0i64; max + 1];
    let mut x = vec![-reach; d];
    loop {
        let q: Vec<Rat> = x.iter().map(|&v| Rat::int(v)).collect();
        if let Some(&m) = fan.maximal_cones().iter().find(|&&m| fan.cone_contains(m, &q)) {
            let deg = g.value(m, &q);
            assert!(deg.is_integer(), "degree map is integral on lattice points");
            let k = deg.to_i64().expect("small");
            if (0..=max as i64).contains(&k) {
                counts[k as usize] += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return counts;
            }
            x[i] += 1;
            if x[i] <= reach {
                break;
            }
            x[i] = -reach;
            i += 1;
        }
    }
}

/// `h*(t) = (1 - t)^n sum_k #{deg = k} t^k`, truncated at degree `n`, for a
/// fan with full-dimensional support; also returns the coefficient at
/// degree `n + 1`, which must vanish.
pub fn brute_hstar(fan: &Fan, g: &DegreeMap) -> (Poly, Rat) {
    let n = fan.dim();
    let counts = brute_counts(fan, g, n + 1);
    let series = t_poly(&counts);
    let full = series.mul(&t_poly(&[1, -1]).pow(n as u32));
    let mut out = Poly::zero(Vars::T);
    for k in 0..=n as i32 {
        out.add_term(&[k], &full.t_coeff(k));
    }
    (out, full.t_coeff(n as i32 + 1))
}

/// Flag numbers of the face poset of the fan with a top element added,
/// or of the face poset of the cone itself for single-cone fans, by direct
/// enumeration of chains: `f[S]` counts chains with rank set `S`, ranks in
/// `1..n-1` of a rank-`n` poset.
pub fn brute_flags(fan: &Fan) -> (usize, BTreeMap<Vec<usize>, i64>) {
    let single = fan.maximal_cones().len() == 1;
    let top_rank = if single { fan.dim() } else { fan.dim() + 1 };
    let middle: Vec<usize> = (0..fan.num_cones()).filter(|&c| (1..top_rank).contains(&fan.cone(c).dim())).collect();
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    fn extend(fan: &Fan, middle: &[usize], last: Option<usize>, ranks: &mut Vec<usize>, out: &mut BTreeMap<Vec<usize>, i64>) {
        *out.entry(ranks.clone()).or_insert(0) += 1;
        for &c in middle {
            let ok = match last {
                None => true,
                Some(l) => fan.cone(c).dim() > fan.cone(l).dim() && fan.is_face(l, c),
            };
            if ok {
                ranks.push(fan.cone(c).dim());
                extend(fan, middle, Some(c), ranks, out);
                ranks.pop();
            }
        }
    }
    extend(fan, &middle, None, &mut Vec::new(), &mut out);
    (top_rank, out)
}

/// The ab-index `sum_S f_S w_S` with `w_i = b` on `S` and `a - b` off it,
/// from brute-force flag numbers.
pub fn brute_ab(fan: &Fan) -> NcPoly {
    let (n, flags) = brute_flags(fan);
    let mut a_minus_b = NcPoly::word(Alphabet::Ab, "a", Rat::ONE);
    a_minus_b.add_term("b", &Rat::int(-1));
    let b = NcPoly::word(Alphabet::Ab, "b", Rat::ONE);
    let mut psi = NcPoly::zero(Alphabet::Ab);
    for (s, f) in flags {
        let mut u = NcPoly::one(Alphabet::Ab);
        for i in 1..n {
            u = u.mul(if s.contains(&i) { &b } else { &a_minus_b });
        }
        psi = psi.add(&u.scale(&Rat::int(f)));
    }
    psi
}
