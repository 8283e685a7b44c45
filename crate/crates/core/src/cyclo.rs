//! Exact arithmetic in `Z[ζ_N]`.
//!
//! Values are stored raw as exponent-count vectors of length `N`; they are
//! only reduced modulo `Φ_N` when a decision (zero test, equality, integer
//! extraction) is needed.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer polynomial, coefficient `k` multiplies `x^k`. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// `x^n − 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = checked(out[i + j], a, b);
            }
        }
        IntPoly::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Precondition("division by the zero polynomial".into()))?;
        if divisor.coeffs[dd] != 1 {
            return Err(Error::Precondition("divisor is not monic".into()));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPoly::default(), self.clone()));
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = checked(rem[i - dd + j], -c, d);
            }
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor)?;
        if !r.is_zero() {
            return Err(Error::Precondition(format!(
                "inexact polynomial division, remainder {:?}",
                r.coeffs
            )));
        }
        Ok(q)
    }
}

/// `acc + a·b`, panicking on overflow.
fn checked(acc: i64, a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .and_then(|p| acc.checked_add(p))
        .expect("cyclotomic coefficient overflow")
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `Φ_N`, obtained by dividing `x^N − 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: usize) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut p = IntPoly::x_pow_minus_one(n);
    for d in divisors(n) {
        if d < n {
            p = p.div_exact(&phi(d as u32))?;
        }
    }
    Ok(p)
}

/// Cached `Φ_N` for the hot zero-test path.
pub(crate) fn phi(n: u32) -> Arc<IntPoly> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("phi cache poisoned").get(&n) {
        return p.clone();
    }
    let p = Arc::new(cyclotomic_poly(n as usize).expect("positive order"));
    cache
        .write()
        .expect("phi cache poisoned")
        .entry(n)
        .or_insert(p)
        .clone()
}

/// Euler's totient, the degree of `Φ_N`.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u32
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An element of `Z[ζ_N]`: `Σ_k coeffs[k] · ζ_N^k`.
#[derive(Debug, Clone)]
pub struct CycInt {
    order: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(CycInt {
            order,
            coeffs: vec![0; order as usize],
        })
    }

    /// Builds from a raw coefficient vector; entry `k` multiplies `ζ_N^k`, indices wrap mod `N`.
    pub fn from_raw(order: u32, raw: &[i64]) -> Result<Self> {
        let mut c = Self::zero(order)?;
        for (k, &v) in raw.iter().enumerate() {
            let slot = &mut c.coeffs[k % order as usize];
            *slot = slot.checked_add(v).expect("cyclotomic coefficient overflow");
        }
        Ok(c)
    }

    /// `ζ_N^k`.
    pub fn root(order: u32, k: i64) -> Result<Self> {
        let mut c = Self::zero(order)?;
        c.coeffs[k.rem_euclid(order as i64) as usize] = 1;
        Ok(c)
    }

    pub fn constant(order: u32, v: i64) -> Result<Self> {
        let mut c = Self::zero(order)?;
        c.coeffs[0] = v;
        Ok(c)
    }

    /// Sum of `ζ_N^e` over the given exponents, with multiplicity.
    pub fn from_exponents(order: u32, exps: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut c = Self::zero(order)?;
        for e in exps {
            c.coeffs[(e % order) as usize] += 1;
        }
        Ok(c)
    }

    pub(crate) fn from_counts(order: u32, coeffs: Vec<i64>) -> Self {
        debug_assert_eq!(coeffs.len(), order as usize);
        CycInt { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn raw(&self) -> &[i64] {
        &self.coeffs
    }

    fn ensure_order(&self, other: &CycInt) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt> {
        self.ensure_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.checked_add(b).expect("cyclotomic coefficient overflow"))
            .collect();
        Ok(CycInt {
            order: self.order,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&a| -a).collect(),
        }
    }

    /// Cyclic convolution of exponent vectors.
    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.ensure_order(other)?;
        let n = self.order as usize;
        let mut out = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let k = (i + j) % n;
                    out[k] = checked(out[k], a, b);
                }
            }
        }
        Ok(CycInt {
            order: self.order,
            coeffs: out,
        })
    }

    /// Complex conjugation `ζ^k ↦ ζ^{−k}`.
    pub fn conj(&self) -> CycInt {
        let n = self.order as usize;
        let mut out = vec![0i64; n];
        for (k, &a) in self.coeffs.iter().enumerate() {
            out[(n - k) % n] = a;
        }
        CycInt {
            order: self.order,
            coeffs: out,
        }
    }

    pub fn scale(&self, m: i64) -> CycInt {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&a| checked(0, a, m)).collect(),
        }
    }

    /// Re-expresses the value in `Z[ζ_M]` for a multiple `M` of the order.
    pub fn lift_order(&self, target: u32) -> Result<CycInt> {
        if target == 0 || target % self.order != 0 {
            return Err(Error::Precondition(format!(
                "order {} does not divide {target}",
                self.order
            )));
        }
        let step = (target / self.order) as usize;
        let mut out = vec![0i64; target as usize];
        for (k, &a) in self.coeffs.iter().enumerate() {
            out[k * step] = a;
        }
        Ok(CycInt {
            order: target,
            coeffs: out,
        })
    }

    /// Canonical representative modulo `Φ_N`, degree `< φ(N)`, trailing zeros trimmed.
    pub fn reduced(&self) -> Vec<i64> {
        let p = phi(self.order);
        reduce_raw(&self.coeffs, &p)
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|&c| c == 0) {
            return true;
        }
        self.reduced().is_empty()
    }

    /// `Some(n)` when the value is the rational integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        match r.len() {
            0 => Some(0),
            1 => Some(r[0]),
            _ => None,
        }
    }

    /// Floating-point value, for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
            let t = std::f64::consts::TAU * k as f64 / n;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }

    pub fn to_record(&self) -> CycRecord {
        CycRecord {
            order: self.order,
            reduced_coeffs: self.reduced(),
        }
    }
}

pub(crate) fn reduce_raw(raw: &[i64], phi: &IntPoly) -> Vec<i64> {
    let p = phi.coeffs();
    let deg = p.len() - 1;
    let mut rem = raw.to_vec();
    for i in (deg..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        for (j, &d) in p.iter().enumerate() {
            if d != 0 {
                rem[i - deg + j] = checked(rem[i - deg + j], -c, d);
            }
        }
    }
    rem.truncate(deg.min(rem.len()));
    while rem.last() == Some(&0) {
        rem.pop();
    }
    rem
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self
                .try_sub(other)
                .map(|d| d.is_zero())
                .unwrap_or(false)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let terms: Vec<String> = self
            .reduced()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, c)| format!("{c}·ζ{}^{k}", self.order))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Serialized form of a cyclotomic integer inside certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycRecord {
    pub order: u32,
    pub reduced_coeffs: Vec<i64>,
}
