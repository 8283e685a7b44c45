//! Finite abelian groups presented as products of cyclic factors.
//!
//! Elements are addressed by a mixed-radix index with coordinate 1 the most
//! significant digit: for moduli `(n_1, …, n_d)` the element `(x_1, …, x_d)`
//! has index `((x_1 · n_2 + x_2) · n_3 + x_3) …`. This order is frozen; every
//! sorted element list, zero set and certificate in the crate depends on it.
//!
//! The dual group is identified with the group itself: a coordinate vector
//! `ξ` labels the character `x ↦ exp(2πi Σ_j x_j ξ_j / n_j)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Human-readable form of the element-order convention, embedded in certificates.
pub const ELEMENT_ORDER: &str = "mixed-radix, coordinate 1 most significant";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Group {
    moduli: Vec<u32>,
    strides: Vec<usize>,
    weights: Vec<u64>,
    order: usize,
    exponent: u32,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Group {
    pub fn new(moduli: &[u32]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::EmptyModuli);
        }
        if let Some(pos) = moduli.iter().position(|&n| n == 0) {
            return Err(Error::ZeroModulus(pos));
        }
        let mut order: usize = 1;
        for &n in moduli {
            order = order.checked_mul(n as usize).ok_or(Error::SizeLimit {
                order: usize::MAX,
                limit: usize::MAX,
            })?;
        }
        let mut strides = vec![1usize; moduli.len()];
        for j in (0..moduli.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * moduli[j + 1] as usize;
        }
        let exponent = moduli.iter().fold(1u64, |acc, &n| lcm(acc, n as u64));
        let exponent = u32::try_from(exponent).map_err(|_| Error::SizeLimit {
            order: usize::MAX,
            limit: u32::MAX as usize,
        })?;
        let weights = moduli.iter().map(|&n| (exponent / n) as u64).collect();
        Ok(Group {
            moduli: moduli.to_vec(),
            strides,
            weights,
            order,
            exponent,
        })
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `N = lcm(n_j)`, the order of the roots of unity that character values live in.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Per-coordinate pairing weights `N / n_j`.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![0; self.dim()])
    }

    /// Reduces an arbitrary integer vector into canonical coordinates.
    pub fn reduce(&self, coords: &[i64]) -> Result<Elem> {
        self.check_dim(coords.len())?;
        Ok(Elem(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u32)
                .collect(),
        ))
    }

    /// Accepts only coordinates that are already reduced.
    pub fn elem(&self, coords: &[i64]) -> Result<Elem> {
        self.check_dim(coords.len())?;
        for (index, (&value, &modulus)) in coords.iter().zip(&self.moduli).enumerate() {
            if value < 0 || value >= modulus as i64 {
                return Err(Error::CoordinateOutOfRange {
                    index,
                    value,
                    modulus,
                });
            }
        }
        Ok(Elem(coords.iter().map(|&c| c as u32).collect()))
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got,
            });
        }
        Ok(())
    }

    pub fn index_of(&self, x: &Elem) -> usize {
        self.index_of_coords(&x.0)
    }

    pub fn index_of_coords(&self, coords: &[u32]) -> usize {
        debug_assert_eq!(coords.len(), self.dim());
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn element(&self, index: usize) -> Elem {
        let mut coords = vec![0; self.dim()];
        self.decompose(index, &mut coords);
        Elem(coords)
    }

    /// Writes the coordinates of `index` into `out`.
    pub fn decompose(&self, mut index: usize, out: &mut [u32]) {
        debug_assert!(index < self.order);
        for j in (0..self.dim()).rev() {
            let n = self.moduli[j] as usize;
            out[j] = (index % n) as u32;
            index /= n;
        }
    }

    pub fn add_index(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, n| (x + y) % n)
    }

    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, n| (x + n - y) % n)
    }

    pub fn neg_index(&self, a: usize) -> usize {
        self.sub_index(0, a)
    }

    fn combine(&self, mut a: usize, mut b: usize, op: impl Fn(usize, usize, usize) -> usize) -> usize {
        let mut out = 0;
        for j in (0..self.dim()).rev() {
            let n = self.moduli[j] as usize;
            out += op(a % n, b % n, n) * self.strides[j];
            a /= n;
            b /= n;
        }
        out
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &n)| ((x as u64 + y as u64) % n as u64) as u32)
                .collect(),
        )
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        Elem(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    /// `m · a`.
    pub fn scale(&self, a: &Elem, m: u64) -> Elem {
        Elem(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &n)| ((x as u64 * m) % n as u64) as u32)
                .collect(),
        )
    }

    /// Exponent `e ∈ [0, N)` with `⟨x, ξ⟩ = ζ_N^e`.
    pub fn pairing_coords(&self, x: &[u32], xi: &[u32]) -> u32 {
        let n = self.exponent as u64;
        let mut acc = 0u64;
        for ((&a, &b), &w) in x.iter().zip(xi).zip(&self.weights) {
            acc = (acc + (a as u64 * b as u64 % n) * w) % n;
        }
        acc as u32
    }

    pub(crate) fn ensure_same(&self, other: &Group) -> Result<()> {
        if self.moduli != other.moduli {
            return Err(Error::GroupMismatch {
                left: self.moduli.clone(),
                right: other.moduli.clone(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z_{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Builds a group and wraps it for sharing between subsets.
pub fn make_group(moduli: &[u32]) -> Result<Arc<Group>> {
    Group::new(moduli).map(Arc::new)
}

/// Canonical coordinate vector of a group (or dual group) element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) Vec<u32>);

impl Elem {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A subset of a finite group kept both as a sorted index list and a dense bitmap.
#[derive(Debug, Clone)]
pub struct GroupSubset {
    group: Arc<Group>,
    members: Vec<usize>,
    bitmap: Vec<bool>,
}

impl PartialEq for GroupSubset {
    fn eq(&self, other: &Self) -> bool {
        self.group.moduli == other.group.moduli && self.members == other.members
    }
}

impl Eq for GroupSubset {}

impl GroupSubset {
    pub fn from_indices(group: Arc<Group>, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bitmap = vec![false; group.order()];
        for i in indices {
            if i >= group.order() {
                return Err(Error::Precondition(format!(
                    "element index {i} out of range for a group of order {}",
                    group.order()
                )));
            }
            bitmap[i] = true;
        }
        Ok(Self::from_bitmap(group, bitmap))
    }

    pub(crate) fn from_bitmap(group: Arc<Group>, bitmap: Vec<bool>) -> Self {
        debug_assert_eq!(bitmap.len(), group.order());
        let members = bitmap
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        GroupSubset {
            group,
            members,
            bitmap,
        }
    }

    pub fn from_elems<'a>(group: Arc<Group>, elems: impl IntoIterator<Item = &'a Elem>) -> Result<Self> {
        let mut indices = Vec::new();
        for e in elems {
            group.check_dim(e.0.len())?;
            indices.push(group.index_of(e));
        }
        Self::from_indices(group, indices)
    }

    /// Parses raw coordinate rows, rejecting unreduced entries.
    pub fn from_coords(group: Arc<Group>, rows: &[Vec<i64>]) -> Result<Self> {
        let elems = rows
            .iter()
            .map(|r| group.elem(r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elems(group, &elems)
    }

    pub fn full(group: Arc<Group>) -> Self {
        let order = group.order();
        Self::from_bitmap(group, vec![true; order])
    }

    pub fn zero(group: Arc<Group>) -> Self {
        let mut bitmap = vec![false; group.order()];
        bitmap[0] = true;
        Self::from_bitmap(group, bitmap)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn bitmap(&self) -> &[bool] {
        &self.bitmap
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.bitmap.get(i).copied().unwrap_or(false)
    }

    pub fn contains(&self, x: &Elem) -> bool {
        x.0.len() == self.group.dim() && self.contains_index(self.group.index_of(x))
    }

    pub fn elems(&self) -> Vec<Elem> {
        self.members.iter().map(|&i| self.group.element(i)).collect()
    }

    pub fn coord_rows(&self) -> Vec<Vec<u32>> {
        self.members
            .iter()
            .map(|&i| self.group.element(i).0)
            .collect()
    }

    pub fn translate(&self, t: &Elem) -> Self {
        let t = self.group.index_of(t);
        let bitmap_iter = self.members.iter().map(|&i| self.group.add_index(i, t));
        Self::from_indices(self.group.clone(), bitmap_iter).expect("translate stays in range")
    }

    pub fn negate(&self) -> Self {
        let it = self.members.iter().map(|&i| self.group.neg_index(i));
        Self::from_indices(self.group.clone(), it).expect("negation stays in range")
    }

    /// Complement inside the ambient group.
    pub fn complement(&self) -> Self {
        Self::from_bitmap(self.group.clone(), self.bitmap.iter().map(|b| !b).collect())
    }

    pub fn is_subset_of(&self, other: &GroupSubset) -> bool {
        self.group.moduli == other.group.moduli
            && self.members.iter().all(|&i| other.bitmap[i])
    }

    pub(crate) fn ensure_same_group(&self, other: &GroupSubset) -> Result<()> {
        self.group.ensure_same(&other.group)
    }

    pub(crate) fn ensure_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(())
    }

    /// Greedy generating set, or `None` when the set is not a subgroup.
    pub fn subgroup_generators(&self) -> Option<Vec<usize>> {
        if !self.contains_index(0) {
            return None;
        }
        let mut closure = Closure::trivial(&self.group);
        let mut gens = Vec::new();
        for &m in &self.members {
            if closure.bitmap[m] {
                continue;
            }
            closure.extend(&self.group, m);
            if closure.members.len() > self.len()
                || closure.members.iter().any(|&c| !self.bitmap[c])
            {
                return None;
            }
            gens.push(m);
        }
        Some(gens)
    }

    pub fn is_subgroup(&self) -> bool {
        self.subgroup_generators().is_some()
    }
}

/// Incrementally grown subgroup `⟨g_1, …, g_r⟩`.
struct Closure {
    bitmap: Vec<bool>,
    members: Vec<usize>,
}

impl Closure {
    fn trivial(group: &Group) -> Self {
        let mut bitmap = vec![false; group.order()];
        bitmap[0] = true;
        Closure {
            bitmap,
            members: vec![0],
        }
    }

    /// `C ← C + ⟨g⟩`, walking the cosets `C + k·g` until `k·g` falls back into `C`.
    fn extend(&mut self, group: &Group, g: usize) {
        let base = self.members.clone();
        let mut step = g;
        while !self.bitmap[step] {
            for &c in &base {
                let x = group.add_index(c, step);
                self.bitmap[x] = true;
                self.members.push(x);
            }
            step = group.add_index(step, g);
        }
    }
}

/// `{a − b : a, b ∈ A}`.
pub fn difference_set(a: &GroupSubset) -> Result<GroupSubset> {
    a.ensure_nonempty()?;
    let g = a.group();
    let mut bitmap = vec![false; g.order()];
    for &x in a.indices() {
        for &y in a.indices() {
            bitmap[g.sub_index(x, y)] = true;
        }
    }
    Ok(GroupSubset::from_bitmap(g.clone(), bitmap))
}

/// Smallest subgroup containing `A`.
pub fn subgroup_generated(a: &GroupSubset) -> Result<GroupSubset> {
    a.ensure_nonempty()?;
    let g = a.group();
    let mut closure = Closure::trivial(g);
    for &m in a.indices() {
        if !closure.bitmap[m] {
            closure.extend(g, m);
        }
    }
    Ok(GroupSubset::from_bitmap(g.clone(), closure.bitmap))
}

/// `{ξ : ⟨x, ξ⟩ = 1 for all x ∈ S}` in the dual, which shares the moduli of `S`'s group.
pub fn annihilator(s: &GroupSubset) -> Result<GroupSubset> {
    let gens = s.subgroup_generators().ok_or(Error::NotSubgroup)?;
    let g = s.group();
    let gen_coords: Vec<Elem> = gens.iter().map(|&i| g.element(i)).collect();
    let mut xi = vec![0u32; g.dim()];
    let bitmap = (0..g.order())
        .map(|i| {
            g.decompose(i, &mut xi);
            gen_coords.iter().all(|x| g.pairing_coords(&x.0, &xi) == 0)
        })
        .collect();
    Ok(GroupSubset::from_bitmap(g.clone(), bitmap))
}

/// Homomorphism `x ↦ Σ_j v_j x_j mod m` on a group whose factors all equal `Z_m`.
#[derive(Debug, Clone)]
pub struct Functional {
    group: Arc<Group>,
    v: Elem,
    modulus: u32,
}

impl Functional {
    pub fn new(group: Arc<Group>, v: Elem, modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidFunctional("target modulus is zero".into()));
        }
        if group.moduli().iter().any(|&n| n != modulus) {
            return Err(Error::InvalidFunctional(format!(
                "all factors must equal Z_{modulus}, group is {group}"
            )));
        }
        if v.0.len() != group.dim() || v.0.iter().any(|&c| c >= modulus) {
            return Err(Error::InvalidFunctional(format!(
                "coefficient vector {v} is not an element of {group}"
            )));
        }
        Ok(Functional { group, v, modulus })
    }

    pub fn vector(&self) -> &Elem {
        &self.v
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn apply(&self, x: &Elem) -> u32 {
        let m = self.modulus as u64;
        (x.0.iter()
            .zip(&self.v.0)
            .map(|(&a, &b)| a as u64 * b as u64)
            .sum::<u64>()
            % m) as u32
    }
}

pub fn kernel_of_functional(phi: &Functional) -> GroupSubset {
    let g = &phi.group;
    let mut x = Elem(vec![0; g.dim()]);
    let bitmap = (0..g.order())
        .map(|i| {
            g.decompose(i, &mut x.0);
            phi.apply(&x) == 0
        })
        .collect();
    GroupSubset::from_bitmap(g.clone(), bitmap)
}

/// `G / H` for the coordinate-aligned subgroup `H = Π d_j Z_{n_j}`.
///
/// Coordinates with `d_j = 1` collapse and are dropped from the quotient's
/// presentation; if every coordinate collapses the quotient is `Z_1`.
#[derive(Debug, Clone)]
pub struct CoordinateQuotient {
    parent: Arc<Group>,
    quotient: Arc<Group>,
    divisors: Vec<u32>,
    kept: Vec<usize>,
}

pub fn coordinate_quotient(group: &Arc<Group>, divisors: &[u32]) -> Result<CoordinateQuotient> {
    group.check_dim(divisors.len())?;
    for (index, (&d, &n)) in divisors.iter().zip(group.moduli()).enumerate() {
        if d == 0 || n % d != 0 {
            return Err(Error::NotDivisor {
                index,
                divisor: d,
                modulus: n,
            });
        }
    }
    let kept: Vec<usize> = (0..divisors.len()).filter(|&j| divisors[j] > 1).collect();
    let moduli: Vec<u32> = if kept.is_empty() {
        vec![1]
    } else {
        kept.iter().map(|&j| divisors[j]).collect()
    };
    Ok(CoordinateQuotient {
        parent: group.clone(),
        quotient: make_group(&moduli)?,
        divisors: divisors.to_vec(),
        kept,
    })
}

impl CoordinateQuotient {
    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn quotient(&self) -> &Arc<Group> {
        &self.quotient
    }

    pub fn divisors(&self) -> &[u32] {
        &self.divisors
    }

    pub fn project(&self, x: &Elem) -> Elem {
        if self.kept.is_empty() {
            return Elem(vec![0]);
        }
        Elem(
            self.kept
                .iter()
                .map(|&j| x.0[j] % self.divisors[j])
                .collect(),
        )
    }

    /// Canonical representative of a quotient element (zero off the kept coordinates).
    pub fn lift(&self, q: &Elem) -> Elem {
        let mut coords = vec![0; self.parent.dim()];
        for (k, &j) in self.kept.iter().enumerate() {
            coords[j] = q.0[k];
        }
        Elem(coords)
    }

    /// Pulls a character of the quotient back to a character of the parent:
    /// `ξ_j = η_j · n_j / d_j`.
    pub fn lift_dual(&self, eta: &Elem) -> Elem {
        let mut coords = vec![0; self.parent.dim()];
        for (k, &j) in self.kept.iter().enumerate() {
            coords[j] = eta.0[k] * (self.parent.moduli()[j] / self.divisors[j]);
        }
        Elem(coords)
    }

    /// The subgroup `H` being factored out.
    pub fn kernel(&self) -> GroupSubset {
        let g = &self.parent;
        let mut x = vec![0u32; g.dim()];
        let bitmap = (0..g.order())
            .map(|i| {
                g.decompose(i, &mut x);
                x.iter().zip(&self.divisors).all(|(&c, &d)| c % d == 0)
            })
            .collect();
        GroupSubset::from_bitmap(g.clone(), bitmap)
    }
}
