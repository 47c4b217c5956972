//! Pulling triangulations of fans without new rays.

use std::collections::{BTreeSet, HashMap};

use super::subdivision::FanSubdivision;
use super::Fan;

/// Pulling triangulation of cone `s` at its lowest-index ray, applied
/// recursively to the facets that avoid that ray. Returns ray sets.
pub fn pulling_triangulation(fan: &Fan, s: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(&s) {
        return t.clone();
    }
    let c = fan.cone(s);
    let out = if c.is_simplicial() {
        vec![c.rays().to_vec()]
    } else {
        let v = c.rays()[0];
        let mut out = Vec::new();
        for &f in fan.facets(s) {
            if fan.cone(f).rays().contains(&v) {
                continue;
            }
            for mut t in pulling_triangulation(fan, f, memo) {
                t.push(v);
                t.sort_unstable();
                out.push(t);
            }
        }
        out.sort();
        out
    };
    memo.insert(s, out.clone());
    out
}

/// A simplicial fan on the same rays refining `fan`, with the projection
/// to `fan`.
pub fn simplicial_refinement(fan: &Fan) -> FanSubdivision {
    if fan.is_simplicial() {
        return FanSubdivision::identity(fan);
    }
    let mut memo = HashMap::new();
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &m in fan.maximal_cones() {
        for simplex in pulling_triangulation(fan, m, &mut memo) {
            let k = simplex.len();
            for mask in 0u32..(1 << k) {
                sets.insert((0..k).filter(|i| mask & (1 << i) != 0).map(|i| simplex[i]).collect());
            }
        }
    }
    let fine = Fan::assemble(fan.ambient_dim(), fan.rays().to_vec(), sets.into_iter().collect());
    FanSubdivision::from_containment(fine, fan.clone()).expect("pulling triangulation refines the fan")
}
