//! Fan files: a serialized fan with an optional per-cone degree map.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use fansheaf::algebra::Rat;
use fansheaf::fan::{gorenstein_degree_map, DegreeMap, Fan, FanSpec};

/// A rational entry written either as an integer or as a string `"p/q"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum RatLit {
    Int(i64),
    Str(String),
}

impl RatLit {
    fn value(&self) -> Result<Rat> {
        match self {
            RatLit::Int(n) => Ok(Rat::int(*n)),
            RatLit::Str(s) => s.parse::<Rat>().map_err(|_| anyhow!("not a rational number: {s:?}")),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    ambient_dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    /// One functional per entry of `cones`.
    #[serde(default)]
    degree_map: Option<Vec<Vec<RatLit>>>,
}

pub struct LoadedFan {
    pub fan: Fan,
    /// Functionals supplied in the file, one per listed cone.
    declared: Option<Vec<(Vec<usize>, Vec<Rat>)>>,
    path: String,
}

pub fn load_fan(path: &Path) -> Result<LoadedFan> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).with_context(|| format!("{shown}: cannot read file"))?;
    let file: FanFile = serde_json::from_str(&text)
        .map_err(|e| anyhow!("{shown}:{}:{}: parse error: {e}", e.line(), e.column()))?;
    let spec = FanSpec { ambient_dim: file.ambient_dim, rays: file.rays, cones: file.cones };
    let fan = Fan::from_spec(&spec).map_err(|e| anyhow!("{shown}: {e}"))?;
    let declared = match file.degree_map {
        None => None,
        Some(rows) => {
            if rows.len() != spec.cones.len() {
                bail!("{shown}: degree_map has {} functionals for {} cones", rows.len(), spec.cones.len());
            }
            let mut out = Vec::new();
            for (i, (row, cone)) in rows.iter().zip(&spec.cones).enumerate() {
                if row.len() != spec.ambient_dim {
                    bail!("{shown}: degree_map entry {i} has length {}, expected {}", row.len(), spec.ambient_dim);
                }
                let g = row.iter().map(RatLit::value).collect::<Result<Vec<Rat>>>().with_context(|| format!("{shown}: degree_map entry {i}"))?;
                out.push((cone.clone(), g));
            }
            Some(out)
        }
    };
    Ok(LoadedFan { fan, declared, path: shown })
}

impl LoadedFan {
    /// The degree map of the fan. A declared map must take value 1 on the
    /// rays of each listed cone; the canonical map is returned in either
    /// case.
    pub fn degree_map(&self) -> Result<DegreeMap> {
        if let Some(rows) = &self.declared {
            let spec = self.fan.to_spec();
            for (cone, g) in rows {
                for &r in cone {
                    let v: Rat = spec.rays[r].iter().zip(g).map(|(&x, y)| &Rat::int(x) * y).sum();
                    if !v.is_one() {
                        bail!("{}: degree_map takes value {v} on ray {r}, expected 1", self.path);
                    }
                }
            }
        }
        gorenstein_degree_map(&self.fan).map_err(|e| anyhow!("{}: {e}", self.path))
    }

    pub fn path(&self) -> &str {
        &self.path
    }
}
