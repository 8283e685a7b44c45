//! A tile of `Z_6^5` whose tiling complements share no spectrum.
//!
//! `E = {0, e_1, …, e_5}` tiles `Z_6^5` with every kernel of a functional
//! `x ↦ v·x mod 6` where `v` permutes `(1,2,3,4,5)`. The spectrum `K` of `E`
//! generates a subgroup of order `3^5`, so `K` cannot tile. Fifteen such
//! kernels are chosen so that no nonzero element of `K − K` lies in all of
//! their zero sets; a common spectrum `L` would then make `L + K` a tiling.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::analysis::{
    can_tile, is_log_hadamard, is_spectrum, is_tiling, lagarias_condition, universal_obstruction,
    NonTileReason, RationalMatrix, TileOutcome,
};
use crate::certificate::{subset_value, Certificate, CertificateBuilder};
use crate::cli::RunConfig;
use crate::error::{Error, Result};
use crate::fourier::power_tiling_check;
use crate::groups::{
    difference_set, kernel_of_functional, make_group, subgroup_generated, Elem, Functional, Group,
    GroupSubset,
};

/// Columns of the 5×6 matrix whose columns form `K`.
pub const K_COLUMNS: [[i64; 5]; 6] = [
    [0, 0, 0, 0, 0],
    [0, 2, 2, 4, 4],
    [2, 0, 4, 4, 2],
    [2, 4, 0, 2, 4],
    [4, 4, 2, 0, 2],
    [4, 2, 4, 2, 0],
];

/// Numerators of `K′`; every entry is divided by 3.
pub const K_PRIME_NUMERATORS: [[i64; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 2, 2],
    [0, 1, 0, 2, 2, 1],
    [0, 1, 2, 0, 1, 2],
    [0, 2, 2, 1, 0, 1],
    [0, 2, 1, 2, 1, 0],
];

/// Number of kernels used by the obstruction.
pub const KERNEL_COUNT: usize = 15;

pub fn usc_group() -> Arc<Group> {
    make_group(&[6; 5]).expect("valid moduli")
}

/// `{0, e_1, …, e_5}` in `Z_6^5`.
pub fn build_e() -> GroupSubset {
    let g = usc_group();
    let mut elems = vec![g.zero()];
    for j in 0..5 {
        let mut c = [0i64; 5];
        c[j] = 1;
        elems.push(g.elem(&c).expect("reduced"));
    }
    GroupSubset::from_elems(g, &elems).expect("valid elements")
}

pub fn build_k() -> GroupSubset {
    let g = usc_group();
    let rows: Vec<Vec<i64>> = K_COLUMNS.iter().map(|c| c.to_vec()).collect();
    GroupSubset::from_coords(g, &rows).expect("valid elements")
}

pub fn k_prime() -> RationalMatrix {
    let rows: Vec<Vec<i64>> = K_PRIME_NUMERATORS.iter().map(|r| r.to_vec()).collect();
    RationalMatrix::from_scaled(&rows, 3).expect("nonzero denominator")
}

/// The subgroup of `Z_6^5` of vectors with even coordinates.
pub fn even_subgroup() -> GroupSubset {
    let g = usc_group();
    let bitmap: Vec<bool> = (0..g.order())
        .map(|i| g.element(i).coords().iter().all(|c| c % 2 == 0))
        .collect();
    GroupSubset::from_indices(g.clone(), (0..g.order()).filter(|&i| bitmap[i])).expect("in range")
}

/// All distinct orderings of `items`, in lexicographic order.
pub fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Coverage produced by [`find_covering_permutations`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringChoice {
    pub vectors: Vec<Elem>,
    /// For each selected vector, the pair `{2v, −2v} ⊆ K − K` it accounts for.
    pub covered: Vec<[Elem; 2]>,
}

/// Selects permutations `v` of `(1,2,3,4,5)` whose doubles `±2v` partition the
/// thirty nonzero elements of `K − K`.
///
/// Items are the fifteen negation pairs, each option (a permutation) covers
/// exactly one of them. Options are tried in lexicographic order with
/// backtracking, so `(1,2,3,4,5)` is always the first vector.
pub fn find_covering_permutations() -> CoveringChoice {
    let g = usc_group();
    let diffs = difference_set(&build_k()).expect("nonempty");
    let mut pair_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pairs = 0;
    for &w in diffs.indices().iter().filter(|&&w| w != 0) {
        if pair_of.contains_key(&w) {
            continue;
        }
        pair_of.insert(w, pairs);
        pair_of.insert(g.neg_index(w), pairs);
        pairs += 1;
    }
    let options: Vec<(Elem, usize)> = permutations(&[1, 2, 3, 4, 5])
        .into_iter()
        .filter_map(|p| {
            let v = Elem(p);
            let doubled = g.index_of(&g.scale(&v, 2));
            pair_of.get(&doubled).map(|&item| (v, item))
        })
        .collect();

    fn select(options: &[(Elem, usize)], start: usize, taken: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
        if taken.iter().all(|&t| t) {
            return true;
        }
        for i in start..options.len() {
            let item = options[i].1;
            if taken[item] {
                continue;
            }
            taken[item] = true;
            chosen.push(i);
            if select(options, i + 1, taken, chosen) {
                return true;
            }
            chosen.pop();
            taken[item] = false;
        }
        false
    }

    let mut taken = vec![false; pairs];
    let mut chosen = Vec::new();
    assert!(
        select(&options, 0, &mut taken, &mut chosen),
        "negation pairs of K − K cannot be covered by permutations of (1,2,3,4,5)"
    );
    let vectors: Vec<Elem> = chosen.iter().map(|&i| options[i].0.clone()).collect();
    let covered = vectors
        .iter()
        .map(|v| [g.scale(v, 2), g.scale(v, 4)])
        .collect();
    CoveringChoice { vectors, covered }
}

/// `E`, `K` and the fifteen kernels, with their defining invariants checked.
#[derive(Debug, Clone)]
pub struct UscBundle {
    pub group: Arc<Group>,
    pub e: GroupSubset,
    pub k: GroupSubset,
    pub vectors: Vec<Elem>,
    pub kernels: Vec<GroupSubset>,
}

impl UscBundle {
    pub fn build() -> Result<Self> {
        let group = usc_group();
        let choice = find_covering_permutations();
        let kernels = choice
            .vectors
            .iter()
            .map(|v| Ok(kernel_of_functional(&Functional::new(group.clone(), v.clone(), 6)?)))
            .collect::<Result<Vec<_>>>()?;
        let bundle = UscBundle {
            group,
            e: build_e(),
            k: build_k(),
            vectors: choice.vectors,
            kernels,
        };
        if bundle.vectors.len() != KERNEL_COUNT {
            return Err(Error::StepFailed {
                step: "covering_permutations".into(),
                detail: format!("found {} vectors", bundle.vectors.len()),
            });
        }
        let report = universal_obstruction(&bundle.kernels, &difference_set(&bundle.k)?)?;
        if !report.holds {
            return Err(Error::StepFailed {
                step: "universal_obstruction".into(),
                detail: format!("{} elements unwitnessed", report.unwitnessed.len()),
            });
        }
        Ok(bundle)
    }
}

fn coords(e: &Elem) -> Value {
    json!(e.coords())
}

/// Machine-checks every finite step showing that `E` tiles `Z_6^5` without a universal spectrum.
pub fn build_usc_certificate(cfg: &RunConfig) -> Result<Certificate> {
    let mut cert = CertificateBuilder::new(
        "usc",
        "E = {0, e_1, ..., e_5} tiles Z_6^5 but its tiling complements have no common spectrum",
        cfg.timings,
    );
    let bundle = UscBundle::build()?;
    let g = &bundle.group;
    let e = &bundle.e;
    let k = &bundle.k;

    let choice = find_covering_permutations();
    let ok = cert.check(
        "covering_permutations",
        "15 permutations v_j of (1,2,3,4,5) whose pairs {2v_j, -2v_j} partition the nonzero elements of K - K",
        &json!({"base": [1, 2, 3, 4, 5], "k": subset_value(k)}),
        || {
            let diffs = difference_set(k)?;
            let mut hit = vec![0u32; g.order()];
            for pair in &choice.covered {
                for w in pair {
                    hit[g.index_of(w)] += 1;
                }
            }
            let exact = diffs
                .indices()
                .iter()
                .filter(|&&w| w != 0)
                .all(|&w| hit[w] == 1)
                && hit.iter().sum::<u32>() == 30;
            let vectors: Vec<Value> = choice
                .vectors
                .iter()
                .zip(&choice.covered)
                .map(|(v, [a, b])| json!({"v": coords(v), "covers": [coords(a), coords(b)]}))
                .collect();
            Ok((exact && choice.vectors.len() == KERNEL_COUNT, json!({"vectors": vectors})))
        },
    )?;
    if !ok {
        return Ok(cert.finish());
    }

    for (j, (v, t)) in bundle.vectors.iter().zip(&bundle.kernels).enumerate() {
        let ok = cert.check(
            &format!("e_tiles_with_t{j}"),
            &format!("E + T_{j} = Z_6^5 with T_{j} = ker(x -> v_{j}.x mod 6)"),
            &json!({"e": subset_value(e), "v": coords(v), "modulus": 6}),
            || {
                let tiles = is_tiling(e, t, 1)?;
                Ok((
                    tiles && t.is_subgroup(),
                    json!({"kernel_order": t.len(), "group_order": g.order(), "covered_exactly_once": tiles}),
                ))
            },
        )?;
        if !ok {
            return Ok(cert.finish());
        }
    }

    let ok = cert.check(
        "k_difference_set",
        "K - K consists of 0 and exactly the 30 coordinate permutations of (0,2,2,4,4)",
        &json!({"k": subset_value(k)}),
        || {
            let diffs = difference_set(k)?;
            let perms: Vec<Elem> = permutations(&[0, 2, 2, 4, 4]).into_iter().map(Elem).collect();
            let mut expected = perms.clone();
            expected.push(g.zero());
            let expected = GroupSubset::from_elems(g.clone(), &expected)?;
            Ok((
                diffs == expected && diffs.len() == 31,
                json!({"size": diffs.len(), "permutations": perms.len()}),
            ))
        },
    )?;
    if !ok {
        return Ok(cert.finish());
    }

    let ok = cert.check(
        "k_in_even_subgroup",
        "K lies in the subgroup H of even vectors, |H| = 3^5",
        &json!({"k": subset_value(k)}),
        || {
            let h = even_subgroup();
            Ok((
                k.is_subset_of(&h) && h.len() == 243 && h.is_subgroup(),
                json!({"h_order": h.len()}),
            ))
        },
    )?;
    if !ok {
        return Ok(cert.finish());
    }

    let ok = cert.check(
        "k_not_a_tile",
        "K does not tile Z_6^5: |<K>| is a power of 3 and 6 does not divide it",
        &json!({"k": subset_value(k)}),
        || k_non_tile_outputs(k, cfg),
    )?;
    if !ok {
        return Ok(cert.finish());
    }

    let ok = cert.check(
        "k_spectrum_of_e",
        "K is a spectrum of E; the power-sum identity holds with constant 36",
        &json!({"e": subset_value(e), "k": subset_value(k)}),
        || {
            let spec = is_spectrum(e, k)?;
            let power = power_tiling_check(e, k)?;
            Ok((spec && power, json!({"is_spectrum": spec, "power_sum_identity": power, "constant": 36})))
        },
    )?;
    if !ok {
        return Ok(cert.finish());
    }

    let m = k_prime();
    let ok = cert.check(
        "k_prime_log_hadamard",
        "exp(2 pi i K') has pairwise orthogonal rows (exact, order-3 roots of unity)",
        &json!({"numerators": K_PRIME_NUMERATORS, "denominator": 3}),
        || {
            let ok = is_log_hadamard(&m)?;
            Ok((ok, json!({"root_order": m.common_denominator()})))
        },
    )?;
    if !ok {
        return Ok(cert.finish());
    }

    let ok = cert.check(
        "universal_obstruction",
        "every nonzero w in K - K lies outside Z_{T_j} for some j",
        &json!({"vectors": bundle.vectors.iter().map(coords).collect::<Vec<_>>(), "k": subset_value(k)}),
        || {
            let report = universal_obstruction(&bundle.kernels, &difference_set(k)?)?;
            let witnesses: Vec<Value> = report
                .witnesses
                .iter()
                .map(|(w, j)| json!({"w": coords(w), "j": j}))
                .collect();
            Ok((
                report.holds && witnesses.len() == 30,
                json!({"witness_count": witnesses.len(), "witnesses": witnesses}),
            ))
        },
    )?;
    if !ok {
        return Ok(cert.finish());
    }

    let ok = cert.check(
        "kernels_fail_sufficient_condition",
        "no kernel T_j satisfies |L|.|E| = |G| and L - L outside Z_E",
        &json!({"e": subset_value(e), "vectors": bundle.vectors.iter().map(coords).collect::<Vec<_>>()}),
        || {
            let mut all_fail = true;
            for t in &bundle.kernels {
                all_fail &= !lagarias_condition(e, t)?;
            }
            Ok((all_fail, json!({"checked": bundle.kernels.len()})))
        },
    )?;
    if !ok {
        return Ok(cert.finish());
    }

    cert.proof_level(
        "no_universal_spectrum",
        "E has no universal spectrum in Z_6^5",
        "A universal spectrum L would satisfy |L| = 6^4 and L - L within (intersection of Z_{T_j}) union {0}. \
         By universal_obstruction, (L - L) and (K - K) then meet only in 0, and |L|.|K| = 7776, \
         so L + K would tile Z_6^5, contradicting k_not_a_tile.",
    );
    Ok(cert.finish())
}

/// Shared by the `Z_6^5` and `G_2` pipelines: `K` (or its extension) is not a tile.
pub(crate) fn k_non_tile_outputs(k: &GroupSubset, cfg: &RunConfig) -> Result<(bool, Value)> {
    let span = subgroup_generated(k)?;
    let outcome = can_tile(k, cfg.budget)?;
    let order = span.len();
    let power_of_three = {
        let mut n = order;
        while n % 3 == 0 {
            n /= 3;
        }
        n == 1
    };
    let ok = matches!(
        outcome,
        TileOutcome::NotTile(NonTileReason::SubgroupDivisibility { .. })
    ) && power_of_three
        && order % k.len() != 0;
    Ok((
        ok,
        json!({
            "set_size": k.len(),
            "generated_subgroup_order": order,
            "generated_subgroup_is_power_of_3": power_of_three,
            "set_size_divides_subgroup_order": order % k.len() == 0,
        }),
    ))
}
