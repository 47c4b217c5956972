//! Cross-checks between the sheaf side and the combinatorial side on a
//! corpus of fans and subdivisions, collected into a JSON report.

pub mod corpus;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{ncpoly, Poly, Rat, Vars};
use crate::error::Result;
use crate::fan::{classify_quasi_convex, QuasiConvexity};
use crate::invariants as inv;
use crate::sheaf::decompose::{decompose, kernels};
use crate::sheaf::lefschetz::convex_function;
use crate::sheaf::weight::WeightData;
use crate::sheaf::{
    build_ehrhart_sheaf, build_ehrhart_sheaf_with, build_simple_sheaf, hard_lefschetz, hodge_deligne, minimal_extension,
    pushforward, refined_hodge_deligne, relative_hard_lefschetz, t_poincare, LefschetzOutcome, Sheaf, SpaceSelector,
    Structure,
};

pub use corpus::{corpus_hash, default_corpus, CorpusEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub corpus_hash: String,
}

impl Report {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    H,
    Hstar,
    Cd,
    Props,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "all" => Suite::All,
            "h" => Suite::H,
            "hstar" => Suite::Hstar,
            "cd" => Suite::Cd,
            "props" => Suite::Props,
            _ => return None,
        })
    }

    fn includes(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }
}

/// Largest ambient dimension for which multigraded and Ehrhart checks run
/// in the harness; larger entries run only the single-graded theorem check.
pub const FULL_SUITE_MAX_DIM: usize = 3;

/// First exponent where the two polynomials differ, with both coefficients.
fn first_difference(a: &Poly, b: &Poly) -> serde_json::Value {
    let exps: BTreeSet<Vec<i32>> = a.terms().chain(b.terms()).map(|(e, _)| e.clone()).collect();
    let mut sorted: Vec<Vec<i32>> = exps.into_iter().collect();
    sorted.sort_by_key(|e| (e.iter().sum::<i32>(), e.clone()));
    for e in sorted {
        let (x, y) = (a.coeff(&e), b.coeff(&e));
        if x != y {
            return serde_json::json!({"exponent": e, "lhs": x.to_string(), "rhs": y.to_string()});
        }
    }
    serde_json::Value::Null
}

struct Ctx<'a> {
    entry: &'a CorpusEntry,
    out: Vec<CheckResult>,
}

impl<'a> Ctx<'a> {
    fn push(&mut self, name: &str, paper_ref: &str, status: Status, witness: Option<serde_json::Value>) {
        self.out.push(CheckResult {
            id: format!("{name}/{}", self.entry.name),
            paper_ref: paper_ref.to_string(),
            status,
            witness,
        });
    }

    fn witness(&self, extra: serde_json::Value) -> serde_json::Value {
        serde_json::json!({"entry": self.entry.to_json(), "detail": extra})
    }

    /// Records a check whose body returns `Ok(None)` on success and
    /// `Ok(Some(detail))` on a mismatch.
    fn run(&mut self, name: &str, paper_ref: &str, body: impl FnOnce() -> Result<Option<serde_json::Value>>) {
        match body() {
            Ok(None) => self.push(name, paper_ref, Status::Pass, None),
            Ok(Some(d)) => {
                let w = self.witness(d);
                self.push(name, paper_ref, Status::Fail, Some(w))
            }
            Err(e) => {
                let w = self.witness(serde_json::json!({"error": e.to_string()}));
                self.push(name, paper_ref, Status::Fail, Some(w))
            }
        }
    }
}

/// `None` when equal, otherwise the mismatch detail.
fn poly_eq(label: &str, lhs: &Poly, rhs: &Poly) -> Option<serde_json::Value> {
    if lhs == rhs {
        None
    } else {
        Some(serde_json::json!({
            "what": label,
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
            "first_difference": first_difference(lhs, rhs),
        }))
    }
}

fn all_eq(items: Vec<(String, Poly, Poly)>) -> Option<serde_json::Value> {
    items.iter().find_map(|(l, a, b)| poly_eq(l, a, b))
}

/// `u -> u w^-1, v -> 1`, renaming `w` to `v`.
fn drop_monodromy(p: &Poly) -> Poly {
    p.subst(Vars::UV, &[vec![1, -1], vec![0, 0], vec![0, 1]])
}

fn drop_weight(p: &Poly) -> Poly {
    p.subst(Vars::UV, &[vec![1, 0], vec![0, 1], vec![0, 0]])
}

fn v_to_one(p: &Poly) -> Poly {
    p.subst(Vars::T, &[vec![1], vec![0]])
}

/// The `k`-th total-degree diagonal `h_{0,k}, ..., h_{k,0}` as a polynomial
/// in `t` with `t^i` carrying `h_{i,k-i}`.
fn diagonal(p: &Poly, k: i32) -> Poly {
    let mut out = Poly::zero(Vars::T);
    for i in 0..=k {
        let c = p.coeff(&[i, k - i]);
        if !c.is_zero() {
            out.add_term(&[i], &c);
        }
    }
    out
}

/// Sheaves built once per entry.
struct Built {
    fine_a: Option<Result<Sheaf>>,
    push_a: Option<Result<Sheaf>>,
}

fn get<'b>(slot: &'b mut Option<Result<Sheaf>>, make: impl FnOnce() -> Result<Sheaf>) -> Result<&'b Sheaf> {
    if slot.is_none() {
        *slot = Some(make());
    }
    match slot.as_ref().expect("filled") {
        Ok(s) => Ok(s),
        Err(e) => Err(e.clone()),
    }
}

fn run_entry(entry: &CorpusEntry, suite: Suite) -> Vec<CheckResult> {
    let mut ctx = Ctx { entry, out: Vec::new() };
    let sub = &entry.sub;
    let full = entry.ambient_dim() <= FULL_SUITE_MAX_DIM;
    let mut built = Built { fine_a: None, push_a: None };

    if suite.includes(Suite::H) {
        ctx.run("mixed_h", "mixed h-polynomial theorem", || {
            let l = get(&mut built.fine_a, || minimal_extension(&sub.fine, Structure::A))?.clone();
            let p = get(&mut built.push_a, || Ok(pushforward(sub, &l)?.sheaf))?;
            Ok(poly_eq("hodge_deligne vs mixed_h", &hodge_deligne(p)?, &inv::mixed_h(sub)?))
        });
    }
    if !full {
        let reason = serde_json::json!({"reason": format!("ambient dimension above {FULL_SUITE_MAX_DIM}")});
        for (name, paper_ref, part) in [
            ("refined_ehrhart", "refined limit mixed h*-polynomial theorem", Suite::Hstar),
            ("mixed_cd", "mixed cd-index theorem", Suite::Cd),
        ] {
            if suite.includes(part) {
                ctx.push(name, paper_ref, Status::Skipped, Some(reason.clone()));
            }
        }
        return ctx.out;
    }
    let degree = entry.degree_map();

    if suite.includes(Suite::Hstar) {
        if let Some(g) = &degree {
            ctx.run("refined_ehrhart", "refined limit mixed h*-polynomial theorem", || {
                let e = build_ehrhart_sheaf_with(&sub.fine, &|t, x| g.value_int(sub.pi[t], x))?;
                let r = refined_hodge_deligne(sub, &e)?;
                let comb = inv::refined_limit_mixed_hstar(sub, g)?;
                let pe = pushforward(sub, &e)?.sheaf;
                Ok(all_eq(vec![
                    ("refined".into(), r.direct.clone(), comb.clone()),
                    ("w -> 1".into(), drop_weight(&r.direct), inv::limit_mixed_hstar(sub, g)?),
                    ("u -> u/w, v -> 1".into(), drop_monodromy(&r.direct), inv::mixed_hstar(&sub.coarse, g)?),
                    ("u -> u/w, v -> 1 on the sheaf side".into(), drop_monodromy(&r.direct), hodge_deligne(&pe)?),
                ]))
            });
        } else {
            let reason = serde_json::json!({"reason": "coarse fan not Gorenstein or degree maps differ"});
            ctx.push("refined_ehrhart", "refined limit mixed h*-polynomial theorem", Status::Skipped, Some(reason));
        }
    }

    if suite.includes(Suite::Cd) {
        ctx.run("mixed_cd", "mixed cd-index theorem", || {
            let l = minimal_extension(&sub.fine, Structure::C)?;
            let p = pushforward(sub, &l)?.sheaf;
            let e = hodge_deligne(&p)?;
            let comb = ncpoly::eta_prime(&inv::mixed_cd(sub)?)?;
            Ok(all_eq(vec![
                ("hodge_deligne vs eta'".into(), e.clone(), comb),
                ("u -> t, v -> 1".into(), v_to_one(&e), t_poincare(&p, SpaceSelector::Sections)?),
            ]))
        });
    }

    if suite.includes(Suite::Props) {
        props(&mut ctx, &mut built, degree.as_ref());
    }
    ctx.out
}

fn props(ctx: &mut Ctx, built: &mut Built, degree: Option<&crate::fan::DegreeMap>) {
    let entry = ctx.entry;
    let sub = &entry.sub;
    let coarse = &sub.coarse;
    let certified = classify_quasi_convex(coarse).is_certified();

    ctx.run("simple_sections", "reduced sections of simple sheaves and toric h of links", || {
        let mut items = Vec::new();
        for s in 0..coarse.num_cones() {
            let l = build_simple_sheaf(coarse, s, Structure::A)?;
            let dims = l.global_sections().module.reduce()?.dims;
            let p = crate::sheaf::hodge::reduced_poincare(&l, &dims);
            items.push((format!("cone {s}"), p, inv::link_h(coarse, s)?));
        }
        Ok(all_eq(items))
    });

    ctx.run("local_h_sheaf", "local Poincare polynomials of the direct image and local h", || {
        let l = get(&mut built.fine_a, || minimal_extension(&sub.fine, Structure::A))?.clone();
        let p = get(&mut built.push_a, || Ok(pushforward(sub, &l)?.sheaf))?;
        let dec = kernels(p)?;
        let mut items = Vec::new();
        for s in 0..coarse.num_cones() {
            items.push((format!("cone {s}"), dec.local_poincare(s), inv::local_h_at(sub, s)?));
        }
        Ok(all_eq(items))
    });

    if let Ok(g) = crate::fan::gorenstein_degree_map(coarse) {
        ctx.run("ehrhart_sections", "h* as the Poincare polynomial of the Ehrhart sheaf", || {
            let e = build_ehrhart_sheaf(coarse, &g)?;
            let dims = e.global_sections().module.reduce()?.dims;
            let mut items =
                vec![("h*".to_string(), crate::sheaf::hodge::reduced_poincare(&e, &dims), inv::hstar(coarse, &g)?)];
            let dec = kernels(&e)?;
            for s in 0..coarse.num_cones() {
                items.push((format!("local h* at cone {s}"), dec.local_poincare(s), inv::local_hstar(coarse, s, &g)?));
            }
            Ok(all_eq(items))
        });
    }

    ctx.run("t_poincare_eta", "t-Poincare polynomials and eta of cd-indices", || {
        let l = minimal_extension(coarse, Structure::C)?;
        let mut items = vec![("global".to_string(), t_poincare(&l, SpaceSelector::Sections)?, ncpoly::eta(&inv::cd_index(coarse)?))];
        let lf = minimal_extension(&sub.fine, Structure::C)?;
        let p = pushforward(sub, &lf)?.sheaf;
        let dec = kernels(&p)?;
        for s in 0..coarse.num_cones() {
            items.push((format!("local at cone {s}"), dec.local_poincare(s), ncpoly::eta(&inv::local_cd_at(sub, s)?)));
        }
        Ok(all_eq(items))
    });

    if certified && coarse.dim() == coarse.ambient_dim() {
        ctx.run("t_duality", "t-Poincare duality for sections relative to the boundary", || {
            let l = minimal_extension(coarse, Structure::C)?;
            let n = ((1i32 << coarse.dim()) - 1) as i32;
            let abs = t_poincare(&l, SpaceSelector::Sections)?;
            let rel = t_poincare(&l, SpaceSelector::RelBoundary)?;
            Ok(poly_eq("t^tdim P(1/t) vs relative", &abs.reverse(n), &rel))
        });
    }

    ctx.run("weight_monotone", "weight filtrations decrease", || {
        for structure in [Structure::A, Structure::C] {
            let l = minimal_extension(&sub.fine, structure)?;
            let p = pushforward(sub, &l)?.sheaf;
            for f in [&l, &p] {
                let w = WeightData::new(f);
                let sec = f.global_sections();
                let mut prev = w.on_sections(f, &sec, 0);
                for r in 1..=w.rmax + 1 {
                    let cur = w.on_sections(f, &sec, r);
                    for k in 0..f.degrees() {
                        if !prev[k].contains_space(&cur[k]) {
                            return Ok(Some(serde_json::json!({"structure": format!("{structure:?}"), "r": r, "degree": k})));
                        }
                    }
                    prev = cur;
                }
            }
        }
        Ok(None)
    });

    ctx.run("flabby", "pure sheaves are flabby", || {
        let mut sheaves = Vec::new();
        for structure in [Structure::A, Structure::C] {
            let l = minimal_extension(&sub.fine, structure)?;
            sheaves.push(pushforward(sub, &l)?.sheaf);
            sheaves.push(l);
            sheaves.push(build_simple_sheaf(coarse, coarse.maximal_cones()[0], structure)?);
        }
        if let Ok(g) = crate::fan::gorenstein_degree_map(coarse) {
            sheaves.push(build_ehrhart_sheaf(coarse, &g)?);
        }
        for f in &sheaves {
            if let Err(s) = f.check_flabby() {
                return Ok(Some(serde_json::json!({"structure": format!("{:?}", f.structure), "cone": s})));
            }
        }
        Ok(None)
    });

    if certified {
        ctx.run("decomposition", "decomposition into shifted simple sheaves", || {
            for structure in [Structure::A, Structure::C] {
                let l = minimal_extension(&sub.fine, structure)?;
                decompose(&pushforward(sub, &l)?.sheaf)?;
            }
            Ok(None)
        });
    }

    ctx.run("weight_characterization", "weight sheaves of shifted simple sheaves", || characterization(coarse));

    let mixed = inv::mixed_h(sub);
    ctx.run("specialization", "specializations of the mixed invariants", || {
        let m = mixed.clone()?;
        let mut items = vec![("mixed_h at v = 1".to_string(), v_to_one(&m), inv::toric_h(&sub.fine)?)];
        if let Some(g) = degree {
            let refined = inv::refined_limit_mixed_hstar(sub, g)?;
            let limit = inv::limit_mixed_hstar(sub, g)?;
            let mixed_star = inv::mixed_hstar(coarse, g)?;
            let h = inv::hstar(coarse, g)?;
            items.push(("refined at w = 1".into(), drop_weight(&refined), limit.clone()));
            items.push(("refined at u -> u/w, v -> 1".into(), drop_monodromy(&refined), mixed_star.clone()));
            items.push(("limit at v = 1".into(), v_to_one(&limit), h.clone()));
            items.push(("mixed h* at v = 1".into(), v_to_one(&mixed_star), h));
        }
        Ok(all_eq(items))
    });

    ctx.run("eulerian", "face posets are Eulerian", || {
        for f in [&sub.fine, coarse] {
            for s in 0..f.num_cones() {
                if let Err(e) = f.cone_poset(s).check_eulerian() {
                    return Ok(Some(serde_json::json!({"cone": s, "error": e.to_string()})));
                }
            }
        }
        Ok(None)
    });

    ctx.run("mixed_h_nonnegative", "mixed h-polynomials have nonnegative coefficients", || {
        let m = mixed.clone()?;
        Ok(if m.has_nonnegative_coeffs() { None } else { Some(serde_json::json!({"mixed_h": m.to_string()})) })
    });

    let fine = &sub.fine;
    let relative = convex_function(fine, &|w| coarse.cone(sub.pi[w]).dim() == fine.cone(w).dim() + 1);
    if relative.is_some() {
        ctx.run("mixed_h_diagonals", "symmetry and unimodality for projective subdivisions", || {
            let m = mixed.clone()?;
            let top = m.degree().unwrap_or(0);
            for k in 0..=top {
                let d = diagonal(&m, k);
                if !d.is_symmetric(k) || !d.is_unimodal() {
                    return Ok(Some(serde_json::json!({"diagonal": k, "values": d.to_string()})));
                }
            }
            for s in 0..coarse.num_cones() {
                let l = inv::local_h_at(sub, s)?;
                if !l.is_symmetric(coarse.cone(s).dim() as i32) || !l.is_unimodal() {
                    return Ok(Some(serde_json::json!({"local_h_at": s, "value": l.to_string()})));
                }
            }
            Ok(None)
        });
    }

    if classify_quasi_convex(coarse) == QuasiConvexity::Complete {
        lefschetz_entry(ctx, "hard_lefschetz", "hard Lefschetz", || hard_lefschetz(&minimal_extension(coarse, Structure::A)?));
    }
    if !sub.is_identity() {
        lefschetz_entry(ctx, "relative_hard_lefschetz", "relative hard Lefschetz", || {
            relative_hard_lefschetz(sub, &minimal_extension(fine, Structure::A)?)
        });
    }
}

fn lefschetz_entry(ctx: &mut Ctx, name: &str, paper_ref: &str, body: impl FnOnce() -> Result<LefschetzOutcome>) {
    match body() {
        Ok(LefschetzOutcome::Pass) => ctx.push(name, paper_ref, Status::Pass, None),
        Ok(LefschetzOutcome::Skipped(why)) => ctx.push(name, paper_ref, Status::Skipped, Some(serde_json::json!({"reason": why}))),
        Ok(LefschetzOutcome::Fail(why)) => {
            let w = ctx.witness(serde_json::json!({"reason": why}));
            ctx.push(name, paper_ref, Status::Fail, Some(w))
        }
        Err(e) => {
            let w = ctx.witness(serde_json::json!({"error": e.to_string()}));
            ctx.push(name, paper_ref, Status::Fail, Some(w))
        }
    }
}

/// On `L_sigma[-j]`, `W^r` over the whole fan and over each cone is the
/// slice of (t-)degrees at least `T(j) + (r - tdim sigma) / 2`.
fn characterization(fan: &crate::fan::Fan) -> Result<Option<serde_json::Value>> {
    for structure in [Structure::A, Structure::C] {
        for s in 0..fan.num_cones() {
            let base = build_simple_sheaf(fan, s, structure)?;
            let g = base.grading.clone();
            let thr = crate::sheaf::weight_threshold(g.kind(), fan.cone(s).dim());
            let mut shifts = vec![vec![0u32; g.degree(0).len()]];
            let mut one = vec![0u32; g.degree(0).len()];
            one[0] = 1;
            shifts.push(one);
            for j in shifts {
                let f = base.shift(&j);
                let tj = i64::from(crate::algebra::module::tdeg_of(g.kind(), &j));
                let w = WeightData::new(&f);
                let mut sets = vec![f.global_sections()];
                for t in 0..fan.num_cones() {
                    sets.push(f.sections(fan.faces(t)));
                }
                for sec in &sets {
                    for r in 0..=w.rmax + 1 {
                        let ws = w.on_sections(&f, sec, r);
                        for k in 0..g.len() {
                            let keep = 2 * (i64::from(g.tdeg(k)) - tj) >= r - thr;
                            let expect = if keep { sec.space[k].dim() } else { 0 };
                            if ws[k].dim() != expect {
                                return Ok(Some(serde_json::json!({
                                    "structure": format!("{structure:?}"), "cone": s, "shift": j, "r": r,
                                    "degree": g.degree(k), "dim": ws[k].dim(), "expected": expect,
                                })));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Runs the selected suites over the entries.
pub fn verify(entries: &[CorpusEntry], suite: Suite) -> Report {
    let checks = entries.iter().flat_map(|e| run_entry(e, suite)).collect();
    Report { checks, corpus_hash: corpus_hash(entries) }
}

/// Total of the rational coefficients, for quick summaries.
pub fn coefficient_sum(p: &Poly) -> Rat {
    p.terms().fold(Rat::ZERO, |a, (_, c)| &a + c)
}
