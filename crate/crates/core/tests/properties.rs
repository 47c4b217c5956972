//! Property tests over seeded random fans and subdivisions.

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;

use fansheaf::algebra::module::{FreeModule, Grading, RingSpec};
use fansheaf::algebra::ncpoly::{ab_to_cd, cd_to_ab, cd_words, eta, eta_prime};
use fansheaf::algebra::{Alphabet, NcPoly, Poly, Rat, Tensor, Vars};
use fansheaf::fan::{gorenstein_degree_map, Fan, FanSubdivision};
use fansheaf::invariants as inv;
use fansheaf::verify::{verify, CorpusEntry, Status, Suite};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn plane_split() -> impl Strategy<Value = (Fan, FanSubdivision)> {
    (any::<u64>(), 3usize..=7).prop_map(|(seed, m)| random_plane_split(seed, m))
}

/// A triangle cone and a degree-preserving star subdivision, when the
/// triangle has a lattice point besides its vertices.
fn triangle_split() -> impl Strategy<Value = Option<FanSubdivision>> {
    (any::<u64>(), any::<prop::sample::Index>()).prop_map(|(seed, pick)| {
        let t = random_triangle(seed);
        let extra = extra_points(&t);
        if extra.is_empty() {
            None
        } else {
            Some(triangle_star(&t, extra[pick.index(extra.len())]))
        }
    })
}

fn a_ring(n: usize) -> RingSpec {
    let action = (0..n).map(|j| (0..n).map(|i| if i == j { Rat::ONE } else { Rat::ZERO }).collect()).collect();
    RingSpec { local: (0..n).collect(), action }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn assert_report_clean(entry: CorpusEntry) {
    let report = verify(&[entry], Suite::All);
    for c in &report.checks {
        assert_ne!(c.status, Status::Fail, "{} failed: {:?}", c.id, c.witness);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn faces_are_closed((coarse, sub) in plane_split()) {
        for f in [&coarse, &sub.fine] {
            for s in 0..f.num_cones() {
                let rays: BTreeSet<usize> = f.cone(s).rays().iter().copied().collect();
                for &t in f.faces(s) {
                    prop_assert!(f.cone(t).rays().iter().all(|r| rays.contains(r)));
                }
                // every facet of a cone is in the fan
                prop_assert_eq!(f.facets(s).len(), if f.cone(s).dim() == 0 { 0 } else { f.cone(s).rays().len() });
            }
        }
    }

    #[test]
    fn cone_posets_are_eulerian((coarse, sub) in plane_split()) {
        for f in [&coarse, &sub.fine] {
            for s in 0..f.num_cones() {
                prop_assert!(f.cone_poset(s).check_eulerian().is_ok());
                // g of the face poset of a cone is h of the cone
                let (cf, _) = f.cone_fan(s);
                prop_assert_eq!(inv::toric_g(&f.cone_poset(s)).unwrap(), inv::toric_h(&cf).unwrap());
            }
        }
    }

    #[test]
    fn subdivision_map_respects_faces((_c, sub) in plane_split()) {
        for t in 0..sub.fine.num_cones() {
            for &u in sub.fine.faces(t) {
                prop_assert!(sub.coarse.is_face(sub.pi[u], sub.pi[t]));
            }
        }
    }

    #[test]
    fn complete_fans_have_empty_boundary_and_trivial_link_at_origin((coarse, sub) in plane_split()) {
        for f in [&coarse, &sub.fine] {
            let (b, _) = f.boundary().unwrap();
            prop_assert_eq!(b.num_cones(), 0);
            let (link, map) = f.link(f.zero_cone().unwrap()).unwrap();
            prop_assert_eq!(link.num_cones(), f.num_cones());
            let image: BTreeSet<usize> = map.iter().copied().collect();
            prop_assert_eq!(image.len(), f.num_cones());
            for a in 0..link.num_cones() {
                prop_assert_eq!(link.cone(a).dim(), f.cone(map[a]).dim());
                for b in 0..link.num_cones() {
                    prop_assert_eq!(link.is_face(a, b), f.is_face(map[a], map[b]));
                }
            }
        }
    }

    #[test]
    fn simplicial_h_matches_f_vector((coarse, sub) in plane_split()) {
        for f in [&coarse, &sub.fine] {
            prop_assert_eq!(inv::toric_h(f).unwrap(), simplicial_h(f));
        }
    }

    #[test]
    fn decomposition_identities((_c, sub) in plane_split()) {
        prop_assert_eq!(inv::h_decomposition(&sub).unwrap(), inv::toric_h(&sub.fine).unwrap());
        prop_assert_eq!(inv::cd_decomposition(&sub).unwrap(), inv::cd_index(&sub.fine).unwrap());
    }

    #[test]
    fn mixed_h_is_nonnegative_with_symmetric_unimodal_diagonals((_c, sub) in plane_split()) {
        let m = inv::mixed_h(&sub).unwrap();
        prop_assert!(m.has_nonnegative_coeffs());
        for k in 0..=4 {
            let mut d = Poly::zero(Vars::T);
            for i in 0..=k {
                d.add_term(&[i], &m.coeff(&[i, k - i]));
            }
            prop_assert!(d.is_symmetric(k) && d.is_unimodal(), "diagonal {}: {}", k, d);
        }
        for s in 0..sub.coarse.num_cones() {
            let l = inv::local_h_at(&sub, s).unwrap();
            prop_assert!(l.is_symmetric(sub.coarse.cone(s).dim() as i32) && l.is_unimodal());
        }
    }

    #[test]
    fn random_plane_subdivisions_pass_every_check((_c, sub) in plane_split()) {
        assert_report_clean(CorpusEntry { name: "random".into(), sub });
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn triangle_hstar_matches_lattice_counts(seed in any::<u64>()) {
        let f = triangle_cone(&random_triangle(seed));
        let g = gorenstein_degree_map(&f).unwrap();
        let (oracle, overflow) = brute_hstar(&f, &g);
        prop_assert!(overflow.is_zero());
        prop_assert_eq!(inv::hstar(&f, &g).unwrap(), oracle);
        prop_assert_eq!(inv::hstar_decomposition(&f, &g).unwrap(), inv::hstar(&f, &g).unwrap());
    }

    /// `sum_tau (-1)^(n - dim tau) h*(<tau>) (1 - t)^(n - dim tau) = t^n h*(1/t)`:
    /// both sides are the numerator of the interior Ehrhart series.
    #[test]
    fn ehrhart_reciprocity(seed in any::<u64>()) {
        let f = triangle_cone(&random_triangle(seed));
        let top = f.maximal_cones()[0];
        let n = f.cone(top).dim();
        let mut lhs = Poly::zero(Vars::T);
        for &tau in f.faces(top) {
            let k = f.cone(tau).dim();
            let (face, _) = f.cone_fan(tau);
            let h = if k == 0 { Poly::one(Vars::T) } else { inv::hstar(&face, &gorenstein_degree_map(&face).unwrap()).unwrap() };
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            lhs = lhs.add(&h.mul(&t_poly(&[1, -1]).pow((n - k) as u32)).scale(&Rat::int(sign)));
        }
        let g = gorenstein_degree_map(&f).unwrap();
        let rhs = inv::hstar(&f, &g).unwrap().reverse(n as i32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_preserving_triangle_subdivisions_pass_every_check(sub in triangle_split()) {
        if let Some(sub) = sub {
            let g = gorenstein_degree_map(&sub.coarse).unwrap();
            prop_assert!(g.check_equal_on(&sub).is_ok());
            assert_report_clean(CorpusEntry { name: "triangle".into(), sub });
        }
    }

    #[test]
    fn triangle_boundary_is_topological_boundary(seed in any::<u64>(), a in 0i64..4, b in 0i64..4, c in 0i64..4) {
        let f = triangle_cone(&random_triangle(seed));
        let top = f.maximal_cones()[0];
        let (bd, _) = f.boundary().unwrap();
        let gens = f.ray_gens(top);
        let x: Vec<Rat> = (0..3).map(|j| &(&(&gens[0][j] * &Rat::int(a)) + &(&gens[1][j] * &Rat::int(b))) + &(&gens[2][j] * &Rat::int(c))).collect();
        let on_boundary = (0..bd.num_cones()).any(|s| bd.cone_contains(s, &x));
        prop_assert_eq!(on_boundary, f.cone_contains(top, &x) && !f.cone_contains_relint(top, &x));
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn ab_cd_round_trip(coeffs in prop::collection::vec(-5i64..=5, 1..8), degree in 0usize..=6) {
        let words = cd_words(degree);
        let mut p = NcPoly::zero(Alphabet::Cd);
        for (w, c) in words.iter().zip(coeffs.iter().cycle()) {
            p.add_term(w, &Rat::int(*c));
        }
        prop_assert_eq!(ab_to_cd(&cd_to_ab(&p)).unwrap(), p);
    }

    #[test]
    fn free_module_dimensions(n in 1usize..=3, gens in prop::collection::vec(0usize..4, 1..4)) {
        let cap = 5u32;
        let f = FreeModule::new(Grading::single(n, cap), a_ring(n), gens.clone());
        for k in 0..=cap as usize {
            let want: u64 = gens.iter().filter(|&&g| g <= k).map(|&g| binomial((k - g + n - 1) as u64, (n - 1) as u64)).sum();
            prop_assert_eq!(f.module.dims[k] as u64, want);
        }
        let red = f.module.reduce_unchecked();
        for k in 0..=cap as usize {
            prop_assert_eq!(red.dims[k], gens.iter().filter(|&&g| g == k).count());
        }
    }

    #[test]
    fn reduction_is_additive(n in 1usize..=3, a in prop::collection::vec(0usize..3, 1..3), b in prop::collection::vec(0usize..3, 1..3)) {
        let g = Grading::single(n, 4);
        let x = FreeModule::new(g.clone(), a_ring(n), a).module;
        let y = FreeModule::new(g, a_ring(n), b).module;
        let s = x.direct_sum(&y).reduce_unchecked().dims;
        let parts: Vec<usize> = x.reduce_unchecked().dims.iter().zip(y.reduce_unchecked().dims).map(|(p, q)| p + q).collect();
        prop_assert_eq!(s, parts);
    }
}

#[test]
fn eta_is_injective_on_cd_monomials() {
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for n in 0..=6 {
        for w in cd_words(n) {
            let image = eta(&NcPoly::word(Alphabet::Cd, &w, Rat::ONE)).to_string();
            assert!(seen.insert(image), "eta({w}) repeats an earlier image");
        }
    }
}

#[test]
fn eta_prime_is_injective_on_monomial_pairs() {
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for total in 0..=5 {
        for left in 0..=total {
            for l in cd_words(left) {
                for r in cd_words(total - left) {
                    let mut t = Tensor::zero();
                    t.add_term(&l, &r, &Rat::ONE);
                    let image = eta_prime(&t).unwrap().to_string();
                    assert!(seen.insert(image), "eta'({l}|{r}) repeats an earlier image");
                }
            }
        }
    }
}

#[test]
fn degree_maps_agree_on_shared_faces() {
    for entry in fansheaf::verify::default_corpus() {
        let Some(g) = entry.degree_map() else { continue };
        let f = &entry.sub.coarse;
        let maxes = f.maximal_cones();
        for (i, &a) in maxes.iter().enumerate() {
            for &b in &maxes[i + 1..] {
                for &r in f.cone(a).rays().iter().filter(|r| f.cone(b).rays().contains(r)) {
                    assert_eq!(g.value(a, f.ray_q(r)), g.value(b, f.ray_q(r)), "{}", entry.name);
                }
            }
        }
    }
}
