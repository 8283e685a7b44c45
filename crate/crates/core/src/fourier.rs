//! Exact Fourier transforms of indicator functions.
//!
//! `χ̂_A(ξ) = Σ_{a ∈ A} ζ_N^{⟨a, ξ⟩}` is accumulated as an exponent count, so
//! every value is an exact [`CycInt`] of order `N = exponent(G)`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::cyclo::{phi, reduce_raw, totient, CycInt};
use crate::error::{Error, Result};
use crate::groups::{Elem, Group, GroupSubset};

/// Above this group order, [`TransformMode::Auto`] switches to the tensor path.
pub const TENSOR_THRESHOLD: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransformMode {
    /// One exponent-count pass over `A` per dual element.
    Naive,
    /// Axis-by-axis transform of the dense exponent-count array.
    Tensor,
    #[default]
    Auto,
}

impl TransformMode {
    fn resolve(self, order: usize) -> TransformMode {
        match self {
            TransformMode::Auto if order > TENSOR_THRESHOLD => TransformMode::Tensor,
            TransformMode::Auto => TransformMode::Naive,
            m => m,
        }
    }
}

impl std::str::FromStr for TransformMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(TransformMode::Naive),
            "tensor" => Ok(TransformMode::Tensor),
            "auto" => Ok(TransformMode::Auto),
            other => Err(Error::Parse(format!("unknown transform mode `{other}`"))),
        }
    }
}

fn check_elem(group: &Group, x: &Elem) -> Result<()> {
    if x.coords().len() != group.dim() {
        return Err(Error::DimensionMismatch {
            expected: group.dim(),
            got: x.coords().len(),
        });
    }
    for (index, (&c, &n)) in x.coords().iter().zip(group.moduli()).enumerate() {
        if c >= n {
            return Err(Error::CoordinateOutOfRange {
                index,
                value: c as i64,
                modulus: n,
            });
        }
    }
    Ok(())
}

/// `Σ_j x_j ξ_j (N / n_j) mod N`.
pub fn pairing_exponent(group: &Group, x: &Elem, xi: &Elem) -> Result<u32> {
    check_elem(group, x)?;
    check_elem(group, xi)?;
    Ok(group.pairing_coords(x.coords(), xi.coords()))
}

/// Coordinates of all members, flattened row-major.
fn member_coords(a: &GroupSubset) -> Vec<u32> {
    let g = a.group();
    let d = g.dim();
    let mut out = vec![0u32; a.len() * d];
    for (row, &i) in out.chunks_mut(d).zip(a.indices()) {
        g.decompose(i, row);
    }
    out
}

fn accumulate(group: &Group, coords: &[u32], xi: &[u32]) -> Vec<i64> {
    let n = group.exponent() as u64;
    let d = group.dim();
    let w: Vec<u64> = xi
        .iter()
        .zip(group.weights())
        .map(|(&c, &w)| c as u64 * w % n)
        .collect();
    let mut counts = vec![0i64; n as usize];
    for row in coords.chunks(d.max(1)) {
        let e = row
            .iter()
            .zip(&w)
            .fold(0u64, |acc, (&x, &wj)| acc + x as u64 * wj)
            % n;
        counts[e as usize] += 1;
    }
    counts
}

/// `χ̂_A(ξ)`.
pub fn ft_indicator_at(a: &GroupSubset, xi: &Elem) -> Result<CycInt> {
    let g = a.group();
    check_elem(g, xi)?;
    let coords = member_coords(a);
    Ok(CycInt::from_counts(
        g.exponent(),
        accumulate(g, &coords, xi.coords()),
    ))
}

/// `χ̂_A` with the member coordinates decoded once, for repeated point evaluations.
#[derive(Debug, Clone)]
pub struct IndicatorTransform {
    group: Arc<Group>,
    coords: Vec<u32>,
    size: usize,
}

impl IndicatorTransform {
    pub fn new(a: &GroupSubset) -> Self {
        IndicatorTransform {
            group: a.group().clone(),
            coords: member_coords(a),
            size: a.len(),
        }
    }

    pub fn set_size(&self) -> usize {
        self.size
    }

    pub fn at_coords(&self, xi: &[u32]) -> CycInt {
        CycInt::from_counts(
            self.group.exponent(),
            accumulate(&self.group, &self.coords, xi),
        )
    }

    pub fn at_index(&self, xi: usize) -> CycInt {
        self.at_coords(self.group.element(xi).coords())
    }

    pub fn at(&self, xi: &Elem) -> Result<CycInt> {
        check_elem(&self.group, xi)?;
        Ok(self.at_coords(xi.coords()))
    }
}

/// All values `χ̂_A(ξ)`, indexed by dual element index.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    group: Arc<Group>,
    values: Vec<CycInt>,
}

impl SpectrumTable {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    pub fn get(&self, index: usize) -> &CycInt {
        &self.values[index]
    }

    pub fn at(&self, xi: &Elem) -> &CycInt {
        &self.values[self.group.index_of(xi)]
    }

    /// Dual points where the transform vanishes exactly.
    pub fn zeros(&self) -> GroupSubset {
        let bitmap = self.values.par_iter().map(CycInt::is_zero).collect();
        GroupSubset::from_bitmap(self.group.clone(), bitmap)
    }
}

pub fn full_transform(a: &GroupSubset, mode: TransformMode) -> Result<SpectrumTable> {
    a.ensure_nonempty()?;
    let g = a.group();
    let values = match mode.resolve(g.order()) {
        TransformMode::Tensor => tensor_transform(a),
        _ => naive_transform(a),
    };
    Ok(SpectrumTable {
        group: g.clone(),
        values,
    })
}

fn naive_transform(a: &GroupSubset) -> Vec<CycInt> {
    let g = a.group();
    let coords = member_coords(a);
    (0..g.order())
        .into_par_iter()
        .map_init(
            || vec![0u32; g.dim()],
            |xi, idx| {
                g.decompose(idx, xi);
                CycInt::from_counts(g.exponent(), accumulate(g, &coords, xi))
            },
        )
        .collect()
}

/// Separable transform: along each axis `j`, replace the `x_j` slot by the
/// `ξ_j` slot via `F[ξ_j] = Σ_{x_j} ζ_N^{w_j x_j ξ_j} · F[x_j]`, where each
/// entry is a raw exponent vector and multiplying by a root is a rotation.
fn tensor_transform(a: &GroupSubset) -> Vec<CycInt> {
    let g = a.group();
    let n = g.exponent() as usize;
    let order = g.order();
    let mut cur = vec![0i64; order * n];
    for &i in a.indices() {
        cur[i * n] = 1;
    }
    for axis in 0..g.dim() {
        let m = g.moduli()[axis] as usize;
        if m == 1 {
            continue;
        }
        let stride = g.strides()[axis];
        let w = g.weights()[axis] as usize;
        let src = &cur;
        let mut next = vec![0i64; order * n];
        next.par_chunks_mut(n).enumerate().for_each(|(idx, out)| {
            let xi_j = (idx / stride) % m;
            let base = idx - xi_j * stride;
            for x_j in 0..m {
                let from = &src[(base + x_j * stride) * n..][..n];
                if from.iter().all(|&c| c == 0) {
                    continue;
                }
                let rot = (w * x_j * xi_j) % n;
                // out[(k + rot) mod n] += from[k]
                for (o, &f) in out[rot..].iter_mut().zip(from) {
                    *o += f;
                }
                for (o, &f) in out[..rot].iter_mut().zip(&from[n - rot..]) {
                    *o += f;
                }
            }
        });
        cur = next;
    }
    cur.chunks(n)
        .map(|c| CycInt::from_counts(n as u32, c.to_vec()))
        .collect()
}

/// `Z_A`: dual points with `χ̂_A(ξ) = 0`. Never contains `0`.
pub fn zero_set(a: &GroupSubset) -> Result<GroupSubset> {
    zero_set_with(a, TransformMode::Auto)
}

pub fn zero_set_with(a: &GroupSubset, mode: TransformMode) -> Result<GroupSubset> {
    Ok(full_transform(a, mode)?.zeros())
}

/// Reduced `|χ̂_Ω(ξ)|²` for every dual point, padded to `φ(N)` entries.
fn power_table(table: &SpectrumTable) -> Vec<Vec<i64>> {
    let n = table.group.exponent();
    let p = phi(n);
    let width = totient(n) as usize;
    table
        .values
        .par_iter()
        .map(|v| {
            let sq = v.try_mul(&v.conj()).expect("same order");
            let mut r = reduce_raw(sq.raw(), &p);
            r.resize(width, 0);
            r
        })
        .collect()
}

/// Checks `Σ_{λ ∈ Λ} |χ̂_Ω(x − λ)|² = |Ω|²` at every dual point `x`.
pub fn power_tiling_check(omega: &GroupSubset, lambda: &GroupSubset) -> Result<bool> {
    omega.ensure_same_group(lambda)?;
    omega.ensure_nonempty()?;
    let g = omega.group();
    let table = full_transform(omega, TransformMode::Auto)?;
    let power = power_table(&table);
    let width = power[0].len();
    let target = (omega.len() * omega.len()) as i64;
    Ok((0..g.order()).into_par_iter().all(|x| {
        let mut acc = vec![0i64; width];
        for &l in lambda.indices() {
            for (a, &p) in acc.iter_mut().zip(&power[g.sub_index(x, l)]) {
                *a += p;
            }
        }
        acc[0] == target && acc[1..].iter().all(|&c| c == 0)
    }))
}
