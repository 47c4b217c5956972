//! Acceptance criteria, one printed PASS/FAIL line each. Every comparison
//! is exact equality over the rationals.

mod common;

use common::*;
use fansheaf::algebra::module::{tdeg_of, GradingKind};
use fansheaf::algebra::ncpoly::{cd_to_ab, eta, eta_prime};
use fansheaf::algebra::{Alphabet, NcPoly, Poly, Rat, Tensor, Vars};
use fansheaf::fan::{build_subdivision, gorenstein_degree_map, Fan};
use fansheaf::invariants as inv;
use fansheaf::verify::corpus::{polygon_fan, square_cone};
use fansheaf::verify::{default_corpus, verify, Report, Status, Suite};

fn m_gon(m: usize) -> Fan {
    let all: Vec<Vec<i64>> = match m {
        3 => vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        4 => vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        5 => vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![0, -1]],
        _ => vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
    };
    polygon_fan(&all)
}

/// Collects named boolean outcomes with the first failing detail.
struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn new() -> Criterion {
        Criterion { failures: Vec::new() }
    }

    fn expect(&mut self, label: &str, ok: bool) {
        if !ok {
            self.failures.push(label.to_string());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{label}: got {got:?}, want {want:?}"));
        }
    }
}

fn golden_values() -> Criterion {
    let mut c = Criterion::new();
    for m in 3..=6 {
        let f = m_gon(m);
        let want = t_poly(&[1, m as i64 - 2, 1]);
        c.eq(&format!("h of {m}-gon fan vs oracle"), simplicial_h(&f), want.clone());
        c.eq(&format!("h of {m}-gon fan"), inv::toric_h(&f).ok(), Some(want));
        let phi = inv::cd_index(&f).unwrap();
        c.eq(&format!("cd of {m}-gon fan vs flag oracle"), cd_to_ab(&phi), brute_ab(&f));
        c.eq(&format!("cd of {m}-gon fan"), phi, cd(&[("cc", 1), ("d", m as i64 - 2)]));
    }

    let sq = square_cone();
    let top = sq.maximal_cones()[0];
    c.eq("g of square cone", inv::cone_g(&sq, top), t_poly(&[1, 1]));
    let g = gorenstein_degree_map(&sq).unwrap();
    c.eq("h* of square cone vs lattice counts", brute_hstar(&sq, &g), (t_poly(&[1, 1]), Rat::ZERO));
    c.eq("h* of square cone", inv::hstar(&sq, &g).ok(), Some(t_poly(&[1, 1])));
    c.expect("local h* of square cone", inv::local_hstar(&sq, top, &g).unwrap().is_zero());

    let seg = fan(2, &[vec![1, 0], vec![1, 2]], &[vec![0, 1]]);
    let top = seg.maximal_cones()[0];
    let g = gorenstein_degree_map(&seg).unwrap();
    c.eq("h* of segment cone vs lattice counts", brute_hstar(&seg, &g), (t_poly(&[1, 1]), Rat::ZERO));
    c.eq("h* of segment cone", inv::hstar(&seg, &g).ok(), Some(t_poly(&[1, 1])));
    c.eq("local h* of segment cone", inv::local_hstar(&seg, top, &g).ok(), Some(t_poly(&[0, 1])));

    let fine = fan(2, &[vec![1, 0], vec![1, 1], vec![1, 2]], &[vec![0, 1], vec![1, 2]]);
    let sub = build_subdivision(&fine, &seg).unwrap();
    c.eq(
        "refined limit mixed h* of split segment",
        inv::refined_limit_mixed_hstar(&sub, &g).ok(),
        Some(poly(Vars::UVW, &[(&[0, 0, 0], 1), (&[1, 1, 2], 1)])),
    );

    let cone2 = fan(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]);
    let fine = fan(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], &[vec![0, 1], vec![1, 2]]);
    let sub = build_subdivision(&fine, &cone2).unwrap();
    c.eq("local h of split cone", inv::local_h(&sub).ok(), Some(t_poly(&[0, 1])));
    c.eq("mixed h of split cone", inv::mixed_h(&sub).ok(), Some(poly(Vars::UV, &[(&[0, 0], 1), (&[1, 1], 1)])));
    let phi = inv::cd_index(&sub.fine).unwrap();
    // the boundary is the two rays of the coarse cone; the local part is
    // Psi(fan) - Psi(boundary) a and the whole is local plus Psi(boundary)
    let bd = fan(2, &[vec![1, 0], vec![0, 1]], &[vec![0], vec![1]]);
    let local_ab = brute_ab(&sub.fine).sub(&brute_ab(&bd).mul(&NcPoly::word(Alphabet::Ab, "a", Rat::ONE)));
    c.eq("local cd of split cone vs flag oracle", inv::local_cd(&sub.fine).map(|p| cd_to_ab(&p)).ok(), Some(local_ab.clone()));
    c.eq("cd of split cone vs flag oracle", cd_to_ab(&phi), local_ab.add(&brute_ab(&bd)));
    c.eq("cd of split cone", phi, cd(&[("c", 1), ("d", 1)]));
    c.eq("local cd of split cone", inv::local_cd(&sub.fine).ok(), Some(cd(&[("d", 1)])));
    let mut omega = Tensor::zero();
    omega.add_term("", "c", &Rat::ONE);
    omega.add_term("d", "", &Rat::ONE);
    let mixed = inv::mixed_cd(&sub).unwrap();
    c.eq("mixed cd of split cone", mixed.clone(), omega);
    c.eq(
        "eta' image of mixed cd",
        eta_prime(&mixed).ok(),
        Some(poly(Vars::UV, &[(&[0, 0], 1), (&[1, 1], 1), (&[1, 2], 1), (&[2, 1], 1)])),
    );
    c
}

fn anchored_values(report: &Report) -> Criterion {
    let mut c = Criterion::new();
    c.eq("eta(1)", eta(&cd(&[("", 1)])), Poly::one(Vars::T));
    let want = t_poly(&[1, 1]).mul(&t_poly(&[1, 0, 1])).mul(&poly(Vars::T, &[(&[4], 1), (&[8], 1)]));
    c.eq("eta(ccd)", eta(&cd(&[("ccd", 1)])), want);
    for d in 1..=4usize {
        for i in 0..d {
            let mut e = vec![0u32; d];
            e[i] = 1;
            c.eq(&format!("T(e_{}) in rank {d}", i + 1), tdeg_of(GradingKind::Multi, &e), 1u32 << i);
        }
    }
    suite_outcome(&mut c, report, &["weight_characterization"]);
    c
}

/// Records failures for every check in `names`, and for a name that never
/// passed on any entry.
fn suite_outcome(c: &mut Criterion, report: &Report, names: &[&str]) -> (usize, usize) {
    let (mut pass, mut skipped) = (0, 0);
    for name in names {
        let mine: Vec<_> = report.checks.iter().filter(|k| k.id.split('/').next() == Some(*name)).collect();
        c.expect(&format!("{name} passes somewhere"), mine.iter().any(|k| k.status == Status::Pass));
        for k in mine {
            match k.status {
                Status::Pass => pass += 1,
                Status::Skipped => skipped += 1,
                Status::Fail => c.failures.push(format!("{}: {}", k.id, k.witness.as_ref().map(|w| w.to_string()).unwrap_or_default())),
            }
        }
    }
    (pass, skipped)
}

fn report_line(n: usize, title: &str, c: &Criterion, extra: &str) -> bool {
    let ok = c.failures.is_empty();
    println!("criterion {n} {}: {title}{extra}", if ok { "PASS" } else { "FAIL" });
    for f in &c.failures {
        println!("    {f}");
    }
    ok
}

#[test]
fn acceptance() {
    let corpus = default_corpus();
    let report = verify(&corpus, Suite::All);
    let mut ok = true;

    ok &= report_line(1, "golden derived values", &golden_values(), "");
    ok &= report_line(2, "anchored values of eta, t-degree and weight sheaves", &anchored_values(&report), "");

    let mut c = Criterion::new();
    let (p, s) = suite_outcome(&mut c, &report, &["mixed_h", "refined_ehrhart", "mixed_cd"]);
    ok &= report_line(3, "theorem equalities on the default corpus", &c, &format!(" ({p} pass, {s} skipped)"));

    let mut c = Criterion::new();
    let names = ["simple_sections", "local_h_sheaf", "ehrhart_sections", "t_poincare_eta", "t_duality"];
    let (p, s) = suite_outcome(&mut c, &report, &names);
    ok &= report_line(4, "proposition suite on the default corpus", &c, &format!(" ({p} pass, {s} skipped)"));

    let mut c = Criterion::new();
    let names = [
        "weight_monotone",
        "flabby",
        "decomposition",
        "specialization",
        "eulerian",
        "mixed_h_nonnegative",
        "mixed_h_diagonals",
        "hard_lefschetz",
        "relative_hard_lefschetz",
    ];
    let (p, s) = suite_outcome(&mut c, &report, &names);
    ok &= report_line(5, "property suites on the default corpus", &c, &format!(" ({p} pass, {s} skipped)"));

    let mut c = Criterion::new();
    let again = verify(&default_corpus(), Suite::All);
    c.expect("two runs give byte-identical reports", report.to_json_string() == again.to_json_string());
    c.expect("no check failed", !report.any_failed());
    ok &= report_line(6, "determinism of the report", &c, "");

    for k in report.checks.iter().filter(|k| k.status == Status::Skipped) {
        println!("    skipped {}: {}", k.id, k.witness.as_ref().map(|w| w.to_string()).unwrap_or_default());
    }
    assert!(ok, "an acceptance criterion failed");
}
