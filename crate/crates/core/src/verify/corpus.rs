//! The default corpus of fans and subdivisions, with a seeded generator of
//! random complete fans in the plane.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::fan::{build_subdivision, gorenstein_degree_map, simplicial_refinement, DegreeMap, Fan, FanSubdivision};

/// Seed of the random part of the default corpus.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub sub: FanSubdivision,
}

impl CorpusEntry {
    pub fn identity(name: &str, fan: &Fan) -> CorpusEntry {
        CorpusEntry { name: format!("{name}/identity"), sub: FanSubdivision::identity(fan) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.coarse.ambient_dim()
    }

    /// The coarse degree map, when the coarse fan is Gorenstein and the fine
    /// fan has the same degree map.
    pub fn degree_map(&self) -> Option<DegreeMap> {
        let g = gorenstein_degree_map(&self.sub.coarse).ok()?;
        g.check_equal_on(&self.sub).ok()?;
        gorenstein_degree_map(&self.sub.fine).ok()?;
        Some(g)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "coarse": self.sub.coarse.to_spec(),
            "fine": self.sub.fine.to_spec(),
        })
    }
}

fn fan(d: usize, rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Fan {
    Fan::build(d, rays, cones).expect("corpus fans are valid")
}

fn sub(name: &str, fine: Fan, coarse: Fan) -> CorpusEntry {
    CorpusEntry { name: name.to_string(), sub: build_subdivision(&fine, &coarse).expect("corpus subdivisions are valid") }
}

/// Complete fan in the plane on rays listed counterclockwise.
pub fn polygon_fan(rays: &[Vec<i64>]) -> Fan {
    let m = rays.len();
    let cones: Vec<Vec<usize>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    fan(2, rays, &cones)
}

fn m_gon(m: usize) -> Fan {
    let all: Vec<Vec<i64>> = match m {
        3 => vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        4 => vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        5 => vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![0, -1]],
        6 => vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
        _ => panic!("polygon fans with 3 to 6 rays"),
    };
    polygon_fan(&all)
}

fn cross(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Counterclockwise order of plane vectors starting at the positive x-axis.
fn angle_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let half = |v: &[i64]| v[1] < 0 || (v[1] == 0 && v[0] < 0);
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// A random complete simplicial fan in the plane with `m` primitive rays
/// of coordinates in `[-3, 3]`, consecutive rays less than a half-turn
/// apart.
pub fn random_complete_fan(rng: &mut ChaCha8Rng, m: usize) -> Fan {
    loop {
        let mut rays: Vec<Vec<i64>> = Vec::new();
        while rays.len() < m {
            let v = vec![rng.gen_range(-3..=3i64), rng.gen_range(-3..=3i64)];
            if v == [0, 0] || gcd(v[0], v[1]) != 1 || rays.contains(&v) {
                continue;
            }
            rays.push(v);
        }
        rays.sort_by(|a, b| angle_cmp(a, b));
        if (0..m).all(|i| cross(&rays[i], &rays[(i + 1) % m]) > 0) {
            return polygon_fan(&rays);
        }
    }
}

/// Subdivides maximal cone `i` of a plane polygon fan by the primitive
/// vector along the sum of its rays.
pub fn star_split(f: &Fan, i: usize) -> Fan {
    let spec = f.to_spec();
    let c = &spec.cones[i];
    let (a, b) = (&spec.rays[c[0]], &spec.rays[c[1]]);
    let s = [a[0] + b[0], a[1] + b[1]];
    let g = gcd(s[0], s[1]);
    let mut rays = spec.rays.clone();
    rays.push(vec![s[0] / g, s[1] / g]);
    let new = rays.len() - 1;
    let mut cones: Vec<Vec<usize>> = spec.cones.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| c.clone()).collect();
    cones.push(vec![c[0], new]);
    cones.push(vec![new, c[1]]);
    fan(2, &rays, &cones)
}

/// Normal fan of the cube: the eight coordinate octants.
pub fn cube_fan() -> Fan {
    let rays: Vec<Vec<i64>> =
        vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1]];
    let mut cones = Vec::new();
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                cones.push(vec![x, y, z]);
            }
        }
    }
    fan(3, &rays, &cones)
}

/// The cube fan with the positive octant subdivided at `(1,1,1)`.
pub fn cube_fan_star() -> Fan {
    let mut spec = cube_fan().to_spec();
    spec.rays.push(vec![1, 1, 1]);
    let c = 6;
    spec.cones.retain(|k| k != &vec![0, 2, 4]);
    spec.cones.extend([vec![0, 2, c], vec![0, 4, c], vec![2, 4, c]]);
    fan(3, &spec.rays, &spec.cones)
}

/// Face fan of the square `[-1, 1]^2`: four index-two cones.
pub fn reflexive_square() -> Fan {
    polygon_fan(&[vec![1, 1], vec![-1, 1], vec![-1, -1], vec![1, -1]])
}

/// The face fan of `[-1, 1]^2` refined at the edge midpoints.
pub fn reflexive_square_split() -> Fan {
    polygon_fan(&[vec![1, 1], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![-1, -1], vec![0, -1], vec![1, -1], vec![1, 0]])
}

/// Cone over the lattice triangle with vertices `0, 2e_1, 2e_2` at height 1.
pub fn triangle_cone() -> Fan {
    fan(3, &[vec![0, 0, 1], vec![2, 0, 1], vec![0, 2, 1]], &[vec![0, 1, 2]])
}

/// `triangle_cone` cut at the edge midpoints into four unimodular cones.
pub fn triangle_cone_split() -> Fan {
    fan(
        3,
        &[vec![0, 0, 1], vec![2, 0, 1], vec![0, 2, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]],
        &[vec![0, 3, 4], vec![3, 1, 5], vec![4, 5, 2], vec![3, 4, 5]],
    )
}

pub fn square_cone() -> Fan {
    fan(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]], &[vec![0, 1, 3, 2]])
}

/// The default corpus: fixed small fans in dimensions 1 to 3, their
/// interior-ray and diagonal subdivisions, two subdivisions preserving the
/// degree map, seeded random complete plane
/// fans with a subdivision each, identity subdivisions of every fan, and
/// one four-dimensional entry.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let ray = fan(1, &[vec![1]], &[vec![0]]);
    let cone2 = fan(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]);
    let segment = fan(2, &[vec![1, 0], vec![1, 2]], &[vec![0, 1]]);
    let split2 = fan(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]);
    let split_segment = fan(2, &[vec![1, 0], vec![1, 1], vec![1, 2]], &[vec![0, 1], vec![1, 2]]);
    let square = square_cone();
    let square_split = simplicial_refinement(&square).fine;
    let quad_split = star_split(&m_gon(4), 0);
    let cube = cube_fan();
    let cube_star = cube_fan_star();
    let smoke_coarse = fan(4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]], &[vec![0, 1, 2, 3]]);
    let smoke_fine = fan(
        4,
        &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 0, 0]],
        &[vec![0, 2, 3, 4], vec![1, 2, 3, 4]],
    );

    let mut fans: Vec<(String, Fan)> = vec![
        ("ray".into(), ray),
        ("cone2".into(), cone2.clone()),
        ("segment".into(), segment.clone()),
        ("square".into(), square.clone()),
    ];
    for m in 3..=6 {
        fans.push((format!("gon{m}"), m_gon(m)));
    }
    fans.push(("split2".into(), split2.clone()));
    fans.push(("split_segment".into(), split_segment.clone()));
    fans.push(("square_split".into(), square_split.clone()));
    fans.push(("gon4_split".into(), quad_split.clone()));
    fans.push(("reflexive_square".into(), reflexive_square()));
    fans.push(("reflexive_square_split".into(), reflexive_square_split()));
    fans.push(("triangle_cone".into(), triangle_cone()));
    fans.push(("triangle_cone_split".into(), triangle_cone_split()));
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut random = Vec::new();
    for (i, m) in [4usize, 5].into_iter().enumerate() {
        let f = random_complete_fan(&mut rng, m);
        let j = rng.gen_range(0..m);
        let g = star_split(&f, j);
        fans.push((format!("random{i}"), f.clone()));
        fans.push((format!("random{i}_split"), g.clone()));
        random.push((format!("random{i}_split"), g, f));
    }
    fans.push(("cube".into(), cube.clone()));
    fans.push(("cube_star".into(), cube_star.clone()));

    let mut out: Vec<CorpusEntry> = fans.iter().map(|(n, f)| CorpusEntry::identity(n, f)).collect();
    out.push(sub("split2", split2, cone2));
    out.push(sub("split_segment", split_segment, segment));
    out.push(sub("square_split", square_split, square));
    out.push(sub("gon4_split", quad_split, m_gon(4)));
    out.push(sub("reflexive_square_split", reflexive_square_split(), reflexive_square()));
    out.push(sub("triangle_cone_split", triangle_cone_split(), triangle_cone()));
    for (n, g, f) in random {
        out.push(sub(&n, g, f));
    }
    out.push(sub("cube_star", cube_star, cube));
    out.push(sub("smoke4", smoke_fine, smoke_coarse));
    out
}

/// SHA-256 of the canonical JSON of the entries.
pub fn corpus_hash(entries: &[CorpusEntry]) -> String {
    let doc = serde_json::Value::Array(entries.iter().map(CorpusEntry::to_json).collect());
    let bytes = serde_json::to_vec(&doc).expect("serializable");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic() {
        let a = default_corpus();
        let b = default_corpus();
        assert_eq!(corpus_hash(&a), corpus_hash(&b));
        assert!(a.iter().any(|e| e.ambient_dim() == 4));
    }

    #[test]
    fn random_fans_are_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in 3..7 {
            let f = random_complete_fan(&mut rng, m);
            assert_eq!(crate::fan::classify_quasi_convex(&f), crate::fan::QuasiConvexity::Complete);
        }
    }
}
