//! Gluing sets of a subgroup `H` along a tiling (or spectral) pair of `G/H`.

use std::sync::Arc;

use crate::analysis::{is_spectrum, is_tiling, tiles_subgroup};
use crate::error::{Error, Result};
use crate::groups::{coordinate_quotient, CoordinateQuotient, Elem, Group, GroupSubset};

/// Inputs shared by both compositions. `H = Π d_j Z_{n_j}` is given by its divisors.
#[derive(Debug, Clone)]
pub struct Composition {
    pub group: Arc<Group>,
    pub divisors: Vec<u32>,
    /// `T_1, …, T_k ⊆ H`, paired with `reps` in order.
    pub tiles: Vec<GroupSubset>,
    /// `T′` for tilings, the common spectrum `L` for spectral compositions.
    pub partner: GroupSubset,
    /// `S` (or `Q`) in `G/H`.
    pub quotient_set: GroupSubset,
    /// `S′` (or `Q′`) in `G/H`.
    pub quotient_partner: GroupSubset,
    /// One element of `G` per element of `S`, projecting onto it.
    pub reps: Vec<Elem>,
}

#[derive(Debug, Clone)]
pub struct Composed {
    pub gamma: GroupSubset,
    /// Tiling complement or spectrum of `gamma`.
    pub partner: GroupSubset,
    /// Whether the output passed the final check.
    pub verified: bool,
}

fn precondition(msg: String) -> Error {
    Error::Precondition(msg)
}

impl Composition {
    fn quotient(&self) -> Result<CoordinateQuotient> {
        let q = coordinate_quotient(&self.group, &self.divisors)?;
        let qg = q.quotient();
        for (name, s) in [("quotient_set", &self.quotient_set), ("quotient_partner", &self.quotient_partner)] {
            if s.group().moduli() != qg.moduli() {
                return Err(precondition(format!(
                    "{name} lives in Z{:?}, expected the quotient Z{:?}",
                    s.group().moduli(),
                    qg.moduli()
                )));
            }
        }
        Ok(q)
    }

    fn check_shared(&self, q: &CoordinateQuotient, h: &GroupSubset) -> Result<()> {
        if self.tiles.is_empty() {
            return Err(precondition("no tiles given".into()));
        }
        for (j, t) in self.tiles.iter().enumerate() {
            t.ensure_same_group(h)?;
            if !t.is_subset_of(h) {
                return Err(precondition(format!("tile {j} is not contained in H")));
            }
        }
        if self.reps.len() != self.tiles.len() || self.reps.len() != self.quotient_set.len() {
            return Err(precondition(format!(
                "{} representatives for {} tiles and a quotient set of size {}",
                self.reps.len(),
                self.tiles.len(),
                self.quotient_set.len()
            )));
        }
        let mut seen = vec![false; q.quotient().order()];
        for (j, r) in self.reps.iter().enumerate() {
            if r.coords().len() != self.group.dim()
                || r.coords().iter().zip(self.group.moduli()).any(|(&c, &n)| c >= n)
            {
                return Err(precondition(format!("representative {j} is not an element of the group")));
            }
            let p = q.quotient().index_of(&q.project(r));
            if !self.quotient_set.contains_index(p) || seen[p] {
                return Err(precondition(format!(
                    "representative {j} = {r} does not project to a new element of the quotient set"
                )));
            }
            seen[p] = true;
        }
        Ok(())
    }

    fn gamma(&self) -> Result<GroupSubset> {
        let g = &self.group;
        let mut indices = Vec::new();
        for (r, t) in self.reps.iter().zip(&self.tiles) {
            let ri = g.index_of(r);
            indices.extend(t.indices().iter().map(|&x| g.add_index(x, ri)));
        }
        GroupSubset::from_indices(g.clone(), indices)
    }
}

/// `Γ = ∪ (s_j + T_j)` with complement `T′ + S̃′`, where `S̃′` lifts `S′` canonically.
pub fn compose_tiling(c: &Composition) -> Result<Composed> {
    let q = c.quotient()?;
    let h = q.kernel();
    c.check_shared(&q, &h)?;
    c.partner.ensure_same_group(&h)?;
    for (j, t) in c.tiles.iter().enumerate() {
        if !tiles_subgroup(t, &c.partner, &h)? {
            return Err(precondition(format!("tile {j} + T' is not a tiling of H")));
        }
    }
    if !is_tiling(&c.quotient_set, &c.quotient_partner, 1)? {
        return Err(precondition("S + S' is not a tiling of G/H".into()));
    }
    let gamma = c.gamma()?;
    let g = &c.group;
    let lifted: Vec<usize> = c
        .quotient_partner
        .elems()
        .iter()
        .map(|s| g.index_of(&q.lift(s)))
        .collect();
    let mut indices = Vec::new();
    for &s in &lifted {
        indices.extend(c.partner.indices().iter().map(|&t| g.add_index(t, s)));
    }
    let partner = GroupSubset::from_indices(g.clone(), indices)?;
    let verified = is_tiling(&gamma, &partner, 1)?;
    Ok(Composed {
        gamma,
        partner,
        verified,
    })
}

/// `Γ = ∪ (q_j + T_j)` with candidate spectrum `L + Q̃′`, `Q̃′` the pullback of `Q′` to the dual of `G`.
///
/// `L` is a set of characters of `G` whose restrictions to `H` form a common
/// spectrum of the `T_j`; equivalently `is_spectrum(T_j, L)` holds in `G`.
pub fn compose_spectral(c: &Composition) -> Result<Composed> {
    let q = c.quotient()?;
    let h = q.kernel();
    c.check_shared(&q, &h)?;
    c.partner.ensure_same_group(&h)?;
    for (j, t) in c.tiles.iter().enumerate() {
        if !is_spectrum(t, &c.partner)? {
            return Err(precondition(format!("L is not a spectrum of tile {j}")));
        }
    }
    if !is_spectrum(&c.quotient_set, &c.quotient_partner)? {
        return Err(precondition("(Q, Q') is not a spectral pair in G/H".into()));
    }
    let gamma = c.gamma()?;
    let g = &c.group;
    let mut indices = Vec::new();
    for eta in c.quotient_partner.elems() {
        let lifted = g.index_of(&q.lift_dual(&eta));
        indices.extend(c.partner.indices().iter().map(|&l| g.add_index(l, lifted)));
    }
    let partner = GroupSubset::from_indices(g.clone(), indices)?;
    let verified = partner.len() == c.partner.len() * c.quotient_partner.len()
        && is_spectrum(&gamma, &partner)?;
    Ok(Composed {
        gamma,
        partner,
        verified,
    })
}
