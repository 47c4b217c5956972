//! Direct images along subdivisions, with a freeness certificate per stalk.

use crate::algebra::module::is_free_with_reduced_generators;
use crate::error::{Error, Result};
use crate::fan::FanSubdivision;

use super::{Sections, Sheaf};

/// `pi_* F` on the coarse fan, keeping for each coarse cone `sigma` the
/// sections of `F` over `pi^{-1}<sigma>` that form its stalk.
#[derive(Clone, Debug)]
pub struct PushForward {
    pub sheaf: Sheaf,
    pub sections: Vec<Sections>,
}

/// Direct image of a sheaf on `sub.fine`. Each stalk must be free over the
/// coarse cone's ring with generators in the degrees of its reduction.
pub fn pushforward(sub: &FanSubdivision, f: &Sheaf) -> Result<PushForward> {
    let coarse = &sub.coarse;
    let mut sheaf = Sheaf::empty(coarse, f.structure);
    let mut sections: Vec<Sections> = Vec::with_capacity(coarse.num_cones());
    for s in 0..coarse.num_cones() {
        let sec = f.sections(&sub.preimage(s));
        let red = sec.module.reduce()?;
        if !is_free_with_reduced_generators(&sec.module, &sheaf.rings[s], &red) {
            return Err(Error::FreenessCertificateFailed(s));
        }
        let mut res = Vec::new();
        for &t in coarse.faces(s) {
            if t != s {
                let mats = (0..f.degrees()).map(|k| sec.restriction_to(f, &sections[t], k)).collect();
                res.push((t, mats));
            }
        }
        sheaf.push_stalk(sec.module.clone(), res);
        sections.push(sec);
    }
    Ok(PushForward { sheaf, sections })
}
