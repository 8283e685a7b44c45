//! A tile of `Z_6^5 × Z_m` that is not spectral, built from the fifteen kernels.

use std::str::FromStr;
use std::sync::Arc;

use serde_json::json;

use super::compose::{compose_tiling, Composition};
use super::usc::{k_non_tile_outputs, UscBundle};
use crate::analysis::is_tiling;
use crate::certificate::{subset_value, Certificate, CertificateBuilder};
use crate::cli::RunConfig;
use crate::error::{Error, Result};
use crate::fourier::IndicatorTransform;
use crate::groups::{difference_set, make_group, Elem, Group, GroupSubset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaVariant {
    /// `Z_6^5 × Z_15`, one offset per kernel.
    Z15,
    /// `Z_6^5 × Z_17`, with the last two kernels used twice.
    Z17,
}

impl GammaVariant {
    pub fn last_modulus(self) -> u32 {
        match self {
            GammaVariant::Z15 => 15,
            GammaVariant::Z17 => 17,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GammaVariant::Z15 => "z15",
            GammaVariant::Z17 => "z17",
        }
    }

    pub fn moduli(self) -> Vec<u32> {
        vec![6, 6, 6, 6, 6, self.last_modulus()]
    }

    /// Kernel paired with offset `j`: `j` itself, then `13, 14` for `j = 15, 16`.
    pub fn kernel_index(self, j: usize) -> usize {
        if j < 15 {
            j
        } else {
            13 + (j - 15)
        }
    }
}

impl FromStr for GammaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z15" => Ok(GammaVariant::Z15),
            "z17" => Ok(GammaVariant::Z17),
            other => Err(Error::Parse(format!("unknown variant {other:?} (expected z15 or z17)"))),
        }
    }
}

/// `Γ = ∪_j (f_j + T̃_{i(j)})` with `f_j = (0,0,0,0,0,j)`.
#[derive(Debug, Clone)]
pub struct GammaBundle {
    pub variant: GammaVariant,
    pub group: Arc<Group>,
    pub gamma: GroupSubset,
    pub e_tilde: GroupSubset,
    pub k_tilde: GroupSubset,
    pub offsets: Vec<Elem>,
    pub kernel_indices: Vec<usize>,
    pub usc: UscBundle,
}

/// Embeds a subset of `Z_6^5` with last coordinate 0.
pub fn extend_by_zero(s: &GroupSubset, target: &Arc<Group>) -> Result<GroupSubset> {
    let elems: Vec<Elem> = s
        .elems()
        .into_iter()
        .map(|e| {
            let mut c = e.coords().to_vec();
            c.push(0);
            Elem(c)
        })
        .collect();
    GroupSubset::from_elems(target.clone(), &elems)
}

pub fn build_gamma(variant: GammaVariant) -> Result<GammaBundle> {
    let usc = UscBundle::build()?;
    let group = make_group(&variant.moduli())?;
    let m = variant.last_modulus() as usize;
    let offsets: Vec<Elem> = (0..m).map(|j| Elem(vec![0, 0, 0, 0, 0, j as u32])).collect();
    let kernel_indices: Vec<usize> = (0..m).map(|j| variant.kernel_index(j)).collect();
    let mut indices = Vec::with_capacity(m * 1296);
    for (f, &ki) in offsets.iter().zip(&kernel_indices) {
        let fi = group.index_of(f);
        let t = extend_by_zero(&usc.kernels[ki], &group)?;
        indices.extend(t.indices().iter().map(|&x| group.add_index(x, fi)));
    }
    let gamma = GroupSubset::from_indices(group.clone(), indices)?;
    if gamma.len() != m * usc.kernels[0].len() {
        return Err(Error::StepFailed {
            step: "build_gamma".into(),
            detail: format!("translates overlap: |Gamma| = {}", gamma.len()),
        });
    }
    Ok(GammaBundle {
        variant,
        e_tilde: extend_by_zero(&usc.e, &group)?,
        k_tilde: extend_by_zero(&usc.k, &group)?,
        group,
        gamma,
        offsets,
        kernel_indices,
        usc,
    })
}

impl GammaBundle {
    /// The same set assembled through [`compose_tiling`] with `H = Z_6^5 × {0}`.
    pub fn composition(&self) -> Result<Composition> {
        let m = self.variant.last_modulus();
        let quotient = make_group(&[m])?;
        Ok(Composition {
            group: self.group.clone(),
            divisors: vec![1, 1, 1, 1, 1, m],
            tiles: self
                .kernel_indices
                .iter()
                .map(|&i| extend_by_zero(&self.usc.kernels[i], &self.group))
                .collect::<Result<_>>()?,
            partner: self.e_tilde.clone(),
            quotient_set: GroupSubset::full(quotient.clone()),
            quotient_partner: GroupSubset::zero(quotient),
            reps: self.offsets.clone(),
        })
    }
}

fn statement(variant: GammaVariant) -> String {
    format!(
        "Gamma tiles Z_6^5 x Z_{} with complement E~ and is not spectral",
        variant.last_modulus()
    )
}

/// Computational steps shared with the lifted pipeline. Returns `false` as soon as one fails.
pub(crate) fn gamma_steps(b: &GammaBundle, cert: &mut CertificateBuilder, cfg: &RunConfig) -> Result<bool> {
    let g = &b.group;
    let m = b.variant.last_modulus() as usize;
    let order = g.order();

    let kernel_note = match b.variant {
        GammaVariant::Z15 => "offset j carries kernel T_j".to_string(),
        GammaVariant::Z17 => "offsets 0..14 carry T_0..T_14; offsets 15 and 16 repeat T_13 and T_14, \
             which keeps every element of K - K covered at least once"
            .to_string(),
    };
    let ok = cert.check(
        "gamma_construction",
        &format!("Gamma is the disjoint union of the {m} translates f_j + T~_j, so |Gamma| = {m} * 1296"),
        &json!({"variant": b.variant.name(), "vectors": b.usc.vectors.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>()}),
        || {
            Ok((
                b.gamma.len() == m * 1296,
                json!({
                    "gamma_size": b.gamma.len(),
                    "offsets": b.offsets.iter().map(|f| f.coords().to_vec()).collect::<Vec<_>>(),
                    "kernel_indices": b.kernel_indices,
                    "kernel_reuse": kernel_note,
                    "vectors": b.usc.vectors.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
                }),
            ))
        },
    )?;
    if !ok {
        return Ok(false);
    }

    let ok = cert.check(
        "gamma_tiles_with_e_tilde",
        &format!("Gamma + E~ = Z_6^5 x Z_{m}, each of the {order} elements covered once"),
        &json!({"gamma_size": b.gamma.len(), "e_tilde": subset_value(&b.e_tilde), "variant": b.variant.name()}),
        || {
            let tiles = is_tiling(&b.gamma, &b.e_tilde, 1)?;
            Ok((tiles, json!({"group_order": order, "covered_exactly_once": tiles})))
        },
    )?;
    if !ok {
        return Ok(false);
    }

    let ok = cert.check(
        "gamma_via_composition",
        "the tiling composition over H = Z_6^5 x {0} with S = G/H, S' = {0} yields Gamma with complement E~",
        &json!({"variant": b.variant.name()}),
        || {
            let out = compose_tiling(&b.composition()?)?;
            let same = out.gamma == b.gamma && out.partner == b.e_tilde;
            Ok((same && out.verified, json!({"same_gamma": out.gamma == b.gamma, "verified": out.verified})))
        },
    )?;
    if !ok {
        return Ok(false);
    }

    let ft = IndicatorTransform::new(&b.gamma);
    let diffs = difference_set(&b.k_tilde)?;
    for (n, w) in diffs.elems().into_iter().filter(|w| !w.is_zero()).enumerate() {
        let value = ft.at(&w)?;
        let record = value.to_record();
        let int = value.as_integer();
        let ok = cert.check(
            &format!("ft_gamma_{n:02}"),
            &format!("ft(Gamma) at {w} is a positive multiple of 1296"),
            &json!({"variant": b.variant.name(), "w": w.coords()}),
            || {
                let ok = matches!(int, Some(v) if v > 0 && v % 1296 == 0);
                Ok((ok, json!({"w": w.coords(), "value": record, "integer": int})))
            },
        )?;
        if !ok {
            return Ok(false);
        }
    }

    let ok = cert.check(
        "k_tilde_not_a_tile",
        &format!("K~ does not tile Z_6^5 x Z_{m}: |<K~>| is odd and 6 does not divide it"),
        &json!({"k_tilde": subset_value(&b.k_tilde)}),
        || k_non_tile_outputs(&b.k_tilde, cfg),
    )?;
    if !ok {
        return Ok(false);
    }

    let ok = cert.check(
        "cardinality_identity",
        &format!("|Gamma| * |K~| = |Z_6^5 x Z_{m}|"),
        &json!({"variant": b.variant.name()}),
        || {
            let product = b.gamma.len() * b.k_tilde.len();
            Ok((
                product == order,
                json!({"gamma_size": b.gamma.len(), "k_tilde_size": b.k_tilde.len(), "product": product, "group_order": order}),
            ))
        },
    )?;
    Ok(ok)
}

/// Every finite step showing that `Γ` tiles but has no spectrum.
pub fn gamma_nonspectral_certificate(variant: GammaVariant, cfg: &RunConfig) -> Result<Certificate> {
    let b = build_gamma(variant)?;
    let mut cert = CertificateBuilder::new(&format!("gamma_{}", variant.name()), &statement(variant), cfg.timings);
    if gamma_steps(&b, &mut cert, cfg)? {
        push_nonspectral_inference(&mut cert, variant);
    }
    Ok(cert.finish())
}

pub(crate) fn push_nonspectral_inference(cert: &mut CertificateBuilder, variant: GammaVariant) {
    cert.proof_level(
        "gamma_not_spectral",
        &format!("Gamma has no spectrum in Z_6^5 x Z_{}", variant.last_modulus()),
        "A spectrum Q of Gamma has |Q| = |Gamma| and Q - Q inside Z_Gamma union {0}. \
         The ft_gamma steps put every nonzero element of K~ - K~ outside Z_Gamma, so (Q - Q) and (K~ - K~) meet only in 0. \
         With cardinality_identity this makes Q + K~ a tiling, contradicting k_tilde_not_a_tile.",
    );
}
