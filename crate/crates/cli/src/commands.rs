//! Subcommand implementations. Each returns a JSON document and whether a
//! check inside it failed.

use std::path::Path;

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Map, Value};

use fansheaf::algebra::{ncpoly, NcPoly, Poly, Tensor};
use fansheaf::fan::{build_subdivision, classify_quasi_convex, simplicial_refinement, Fan, FanSubdivision};
use fansheaf::invariants as inv;
use fansheaf::sheaf::decompose::kernels;
use fansheaf::sheaf::hodge::reduced_poincare;
use fansheaf::sheaf::{
    build_ehrhart_sheaf, hodge_deligne, minimal_extension, t_poincare, Sheaf, SpaceSelector, Structure,
};
use fansheaf::verify::{self, CorpusEntry, Suite};

use crate::input::{load_fan, LoadedFan};

pub struct Outcome {
    pub doc: Value,
    pub failed: bool,
}

/// Which structure sheaf a computation needs, for the dimension cap.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Cap {
    A,
    C,
}

fn max_dim(cap: Cap) -> Result<usize> {
    match std::env::var("FANSHEAF_MAX_DIM") {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("FANSHEAF_MAX_DIM must be a nonnegative integer, got {v:?}")),
        Err(_) => Ok(match cap {
            Cap::A => 6,
            Cap::C => 4,
        }),
    }
}

fn check_dim(fan: &Fan, cap: Cap) -> Result<()> {
    let limit = max_dim(cap)?;
    if fan.ambient_dim() > limit {
        return Err(fansheaf::Error::DimensionCap { dim: fan.ambient_dim(), cap: limit }.into());
    }
    Ok(())
}

pub const FAN_SELECTORS: &[&str] = &["h", "g", "hstar", "local-hstar", "mixed-hstar", "flag-f", "ab", "cd", "local-cd"];
pub const MIXED_SELECTORS: &[&str] =
    &["mixed-h", "local-h", "mixed-cd", "local-cd", "limit-mixed-hstar", "refined-limit-mixed-hstar"];

/// Splits a comma-separated selector list, rejecting unknown or repeated
/// names before anything is computed.
pub fn parse_selectors(list: &str, known: &[&str]) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for s in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if !known.contains(&s) {
            bail!("unknown selector {s:?}; expected one of {}", known.join(", "));
        }
        if !out.iter().any(|o| o == s) {
            out.push(s.to_string());
        }
    }
    if out.is_empty() {
        bail!("empty selector list; expected some of {}", known.join(", "));
    }
    Ok(out)
}

fn key(selector: &str) -> String {
    selector.replace('-', "_")
}

/// A computed invariant in both serializations.
enum Invariant {
    Poly(Poly),
    Nc(NcPoly),
    Tensor(Tensor),
    Flags(inv::FlagVector),
}

impl Invariant {
    fn text(&self) -> String {
        match self {
            Invariant::Poly(p) => p.to_string(),
            Invariant::Nc(p) => p.to_string(),
            Invariant::Tensor(t) => t.to_string(),
            Invariant::Flags(f) => f.iter().map(|(s, n)| format!("{}={n}", inv::flag_key(s))).collect::<Vec<_>>().join(" "),
        }
    }

    fn coefficients(&self) -> Value {
        match self {
            Invariant::Poly(p) => p.to_json(),
            Invariant::Nc(p) => p.to_json(),
            Invariant::Tensor(t) => t.to_json(),
            Invariant::Flags(f) => Value::Object(f.iter().map(|(s, n)| (inv::flag_key(s), json!(n))).collect()),
        }
    }
}

fn single_cone(fan: &Fan) -> Result<usize> {
    match fan.maximal_cones() {
        [s] => Ok(*s),
        _ => Err(fansheaf::Error::TargetNotSingleCone.into()),
    }
}

fn sheaf_comparison(combinatorial: &Poly, sheaf: &Poly, certified: bool) -> (Value, bool) {
    let agrees = combinatorial == sheaf;
    let doc = json!({"sheaf": sheaf.to_string(), "agrees": agrees, "certified": certified});
    (doc, certified && !agrees)
}

/// `invariants --fan PATH --which LIST [--cross-check]`.
pub fn invariants(path: &Path, which: &[String], cross_check: bool) -> Result<Outcome> {
    let loaded = load_fan(path)?;
    let fan = &loaded.fan;
    let uses_c = which.iter().any(|w| w == "cd" || w == "local-cd");
    check_dim(fan, if uses_c && cross_check { Cap::C } else { Cap::A })?;
    let certified = classify_quasi_convex(fan).is_certified();
    let mut values = Map::new();
    let mut coeffs = Map::new();
    let mut checks = Map::new();
    let mut failed = false;
    for w in which {
        let (value, sheaf_side): (Invariant, Option<Poly>) = match w.as_str() {
            "h" => {
                let h = inv::toric_h(fan)?;
                let s = if cross_check { Some(global_poincare(&minimal_extension(fan, Structure::A)?)?) } else { None };
                (Invariant::Poly(h), s)
            }
            "g" => {
                let g = inv::cone_g(fan, single_cone(fan)?);
                let s = if cross_check { Some(global_poincare(&minimal_extension(fan, Structure::A)?)?) } else { None };
                (Invariant::Poly(g), s)
            }
            "hstar" => {
                let g = loaded.degree_map()?;
                let h = inv::hstar(fan, &g)?;
                let s = if cross_check { Some(global_poincare(&build_ehrhart_sheaf(fan, &g)?)?) } else { None };
                (Invariant::Poly(h), s)
            }
            "local-hstar" => {
                let g = loaded.degree_map()?;
                let top = single_cone(fan)?;
                let l = inv::local_hstar(fan, top, &g)?;
                let s = if cross_check { Some(kernels(&build_ehrhart_sheaf(fan, &g)?)?.local_poincare(top)) } else { None };
                (Invariant::Poly(l), s)
            }
            "mixed-hstar" => {
                let g = loaded.degree_map()?;
                let m = inv::mixed_hstar(fan, &g)?;
                let s = if cross_check { Some(hodge_deligne(&build_ehrhart_sheaf(fan, &g)?)?) } else { None };
                (Invariant::Poly(m), s)
            }
            "flag-f" => (Invariant::Flags(inv::flag_f(fan)), None),
            "ab" => (Invariant::Nc(inv::ab_index(fan)), None),
            "cd" => {
                let cd = inv::cd_index(fan)?;
                if cross_check {
                    let l = minimal_extension(fan, Structure::C)?;
                    let (doc, bad) = sheaf_comparison(&ncpoly::eta(&cd), &t_poincare(&l, SpaceSelector::Sections)?, certified);
                    checks.insert(key(w), doc);
                    failed |= bad;
                }
                (Invariant::Nc(cd), None)
            }
            "local-cd" => {
                let l = inv::local_cd(fan)?;
                if cross_check {
                    let top = single_cone(fan)?;
                    let sheaf = kernels(&minimal_extension(fan, Structure::C)?)?.local_poincare(top);
                    let (doc, bad) = sheaf_comparison(&ncpoly::eta(&l), &sheaf, certified);
                    checks.insert(key(w), doc);
                    failed |= bad;
                }
                (Invariant::Nc(l), None)
            }
            other => unreachable!("selector {other} validated earlier"),
        };
        if let (Some(s), Invariant::Poly(p)) = (&sheaf_side, &value) {
            let (doc, bad) = sheaf_comparison(p, s, certified);
            checks.insert(key(w), doc);
            failed |= bad;
        }
        values.insert(key(w), Value::String(value.text()));
        coeffs.insert(key(w), value.coefficients());
    }
    let mut doc = values;
    doc.insert("coefficients".into(), Value::Object(coeffs));
    if cross_check {
        doc.insert("cross_check".into(), Value::Object(checks));
    }
    Ok(Outcome { doc: Value::Object(doc), failed })
}

fn global_poincare(f: &Sheaf) -> Result<Poly> {
    let dims = f.global_sections().module.reduce()?.dims;
    Ok(reduced_poincare(f, &dims))
}

fn load_subdivision(coarse: &Path, fine: &Path) -> Result<(FanSubdivision, LoadedFan)> {
    let c = load_fan(coarse)?;
    let f = load_fan(fine)?;
    let sub = build_subdivision(&f.fan, &c.fan).map_err(|e| anyhow!("{} over {}: {e}", f.path(), c.path()))?;
    Ok((sub, c))
}

/// `mixed --coarse PATH --fine PATH --which LIST`.
pub fn mixed(coarse: &Path, fine: &Path, which: &[String]) -> Result<Outcome> {
    let (sub, c) = load_subdivision(coarse, fine)?;
    check_dim(&sub.coarse, Cap::A)?;
    let mut values = Map::new();
    let mut coeffs = Map::new();
    for w in which {
        let value = match w.as_str() {
            "mixed-h" => Invariant::Poly(inv::mixed_h(&sub)?),
            "local-h" => Invariant::Poly(inv::local_h(&sub)?),
            "mixed-cd" => Invariant::Tensor(inv::mixed_cd(&sub)?),
            "local-cd" => Invariant::Nc(inv::local_cd_at(&sub, single_cone(&sub.coarse)?)?),
            "limit-mixed-hstar" => {
                let g = c.degree_map()?;
                g.check_equal_on(&sub)?;
                Invariant::Poly(inv::limit_mixed_hstar(&sub, &g)?)
            }
            "refined-limit-mixed-hstar" => {
                let g = c.degree_map()?;
                g.check_equal_on(&sub)?;
                Invariant::Poly(inv::refined_limit_mixed_hstar(&sub, &g)?)
            }
            other => unreachable!("selector {other} validated earlier"),
        };
        values.insert(key(w), Value::String(value.text()));
        coeffs.insert(key(w), value.coefficients());
    }
    values.insert("coefficients".into(), Value::Object(coeffs));
    Ok(Outcome { doc: Value::Object(values), failed: false })
}

pub fn parse_structure(s: &str) -> Result<Structure> {
    match s {
        "A" | "a" => Ok(Structure::A),
        "C" | "c" => Ok(Structure::C),
        "ehrhart" => Ok(Structure::Ehrhart),
        _ => bail!("unknown structure {s:?}; expected A, C or ehrhart"),
    }
}

/// Generator degrees of a module with multiplicities, from its reduction.
fn generator_list(f: &Sheaf, dims: &[usize]) -> Value {
    let g = &f.grading;
    Value::Array(
        dims.iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(k, &n)| json!({"degree": g.degree(k), "count": n}))
            .collect(),
    )
}

fn nonzero_dims(f: &Sheaf, dims: &[usize]) -> Value {
    Value::Array(
        dims.iter().enumerate().filter(|(_, &n)| n > 0).map(|(k, &n)| json!({"degree": f.grading.degree(k), "dim": n})).collect(),
    )
}

/// `sheaf --fan PATH --structure S --dump PATH`.
pub fn sheaf(path: &Path, structure: Structure, dump: &Path) -> Result<Outcome> {
    let loaded = load_fan(path)?;
    let fan = &loaded.fan;
    check_dim(fan, if structure == Structure::C { Cap::C } else { Cap::A })?;
    let f = match structure {
        Structure::Ehrhart => build_ehrhart_sheaf(fan, &loaded.degree_map()?)?,
        s => minimal_extension(fan, s)?,
    };
    let spec = fan.to_spec();
    let mut cones = Vec::new();
    for s in 0..fan.num_cones() {
        let stalk = f.stalk(s);
        let red = stalk.reduce()?;
        cones.push(json!({
            "index": s,
            "rays": fan.cone(s).rays(),
            "dim": fan.cone(s).dim(),
            "stalk_dims": nonzero_dims(&f, &stalk.dims),
            "generators": generator_list(&f, &red.dims),
        }));
    }
    let sec = f.global_sections();
    let red = sec.module.reduce()?;
    let poincare = reduced_poincare(&f, &red.dims);
    let flabby = f.check_flabby().is_ok();
    let mut dumped = json!({
        "structure": structure,
        "fan": spec,
        "cones": cones,
        "global_sections": {
            "dims": nonzero_dims(&f, sec.dims()),
            "generators": generator_list(&f, &red.dims),
            "poincare": poincare.to_string(),
        },
        "flabby": flabby,
    });
    if let Some(r) = &f.refinement {
        dumped["refinement"] = json!(r);
    }
    let text = serde_json::to_string_pretty(&dumped)? + "\n";
    std::fs::write(dump, text).map_err(|e| anyhow!("{}: cannot write dump: {e}", dump.display()))?;
    let doc = json!({
        "structure": structure,
        "cones": fan.num_cones(),
        "poincare": poincare.to_string(),
        "flabby": flabby,
        "dump": dump.display().to_string(),
    });
    Ok(Outcome { doc, failed: !flabby })
}

/// `verify [--coarse PATH --fine PATH | --corpus default] --suite S`.
pub fn verify(coarse: Option<&Path>, fine: Option<&Path>, corpus: Option<&str>, suite: Suite) -> Result<Outcome> {
    let entries = match (coarse, fine, corpus) {
        (Some(c), Some(f), None) => {
            let (sub, _) = load_subdivision(c, f)?;
            let cap = if matches!(suite, Suite::All | Suite::Cd | Suite::Props) { Cap::C } else { Cap::A };
            check_dim(&sub.coarse, cap)?;
            vec![CorpusEntry { name: "input".into(), sub }]
        }
        (None, None, Some("default")) => verify::default_corpus(),
        (None, None, Some(other)) => bail!("unknown corpus {other:?}; expected default"),
        _ => bail!("pass either --coarse and --fine, or --corpus default"),
    };
    let report = verify::verify(&entries, suite);
    Ok(Outcome { failed: report.any_failed(), doc: serde_json::to_value(&report)? })
}

/// `refine --fan PATH --out PATH`.
pub fn refine(path: &Path, out: &Path) -> Result<Outcome> {
    let loaded = load_fan(path)?;
    check_dim(&loaded.fan, Cap::A)?;
    let sub = simplicial_refinement(&loaded.fan);
    let spec = sub.fine.to_spec();
    let text = serde_json::to_string_pretty(&spec)? + "\n";
    std::fs::write(out, text).map_err(|e| anyhow!("{}: cannot write refinement: {e}", out.display()))?;
    let doc = json!({
        "rays": spec.rays.len(),
        "maximal_cones": spec.cones.len(),
        "identity": sub.is_identity(),
        "out": out.display().to_string(),
    });
    Ok(Outcome { doc, failed: false })
}
