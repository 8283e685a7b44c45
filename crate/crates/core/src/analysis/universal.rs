use crate::error::Result;
use crate::fourier::IndicatorTransform;
use crate::groups::{Elem, GroupSubset};

/// Outcome of [`universal_obstruction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    /// Every nonzero element of `W` is witnessed.
    pub holds: bool,
    /// `(w, j)`: `w ∉ Z_{T_j}`, with `j` the first such complement. Sorted by element index.
    pub witnesses: Vec<(Elem, usize)>,
    /// Nonzero elements of `W` lying in every `Z_{T_j}`.
    pub unwitnessed: Vec<Elem>,
}

enum Membership {
    /// Subgroup: `χ̂_T(w) ≠ 0` iff `w` pairs trivially with every generator.
    Annihilator(Vec<Elem>),
    General(IndicatorTransform),
}

/// Checks `(⋂_j Z_{T_j}) ∩ W = {0}` and names, for each nonzero `w ∈ W`, a complement
/// `T_j` whose transform does not vanish at `w`.
pub fn universal_obstruction(complements: &[GroupSubset], w: &GroupSubset) -> Result<ObstructionReport> {
    for t in complements {
        t.ensure_same_group(w)?;
    }
    let g = w.group();
    let tests: Vec<Membership> = complements
        .iter()
        .map(|t| match t.subgroup_generators() {
            Some(gens) => Membership::Annihilator(gens.iter().map(|&i| g.element(i)).collect()),
            None => Membership::General(IndicatorTransform::new(t)),
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut unwitnessed = Vec::new();
    for &wi in w.indices().iter().filter(|&&i| i != 0) {
        let we = g.element(wi);
        let hit = tests.iter().position(|m| match m {
            Membership::Annihilator(gens) => gens
                .iter()
                .all(|x| g.pairing_coords(x.coords(), we.coords()) == 0),
            Membership::General(ft) => !ft.at_coords(we.coords()).is_zero(),
        });
        match hit {
            Some(j) => witnesses.push((we, j)),
            None => unwitnessed.push(we),
        }
    }
    Ok(ObstructionReport {
        holds: unwitnessed.is_empty(),
        witnesses,
        unwitnessed,
    })
}
