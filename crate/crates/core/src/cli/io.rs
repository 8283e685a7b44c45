//! JSON file formats for sets, matrices and composition bundles.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::RationalMatrix;
use crate::constructions::Composition;
use crate::error::{Error, Result};
use crate::groups::{coordinate_quotient, make_group, Elem, Group, GroupSubset};

/// `{"moduli": [...], "elements": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub moduli: Vec<u32>,
    pub elements: Vec<Vec<i64>>,
}

impl SetFile {
    pub fn from_subset(s: &GroupSubset) -> Self {
        SetFile {
            moduli: s.group().moduli().to_vec(),
            elements: s.elems().iter().map(Elem::to_i64).collect(),
        }
    }

    pub fn to_subset(&self) -> Result<GroupSubset> {
        let g = make_group(&self.moduli)?;
        rows_to_subset(&g, &self.elements, "elements")
    }
}

/// Output of `zero-set`: dual points sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSetFile {
    pub moduli: Vec<u32>,
    pub zeros: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    /// Entries are integers or strings `"p/q"`.
    pub rows: Vec<Vec<Value>>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<RationalMatrix> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, v) in row.iter().enumerate() {
                out.push(match v {
                    Value::String(s) => s.clone(),
                    Value::Number(n) if n.is_i64() => n.to_string(),
                    other => {
                        return Err(Error::Parse(format!(
                            "rows[{i}][{j}] = {other} is neither an integer nor a \"p/q\" string"
                        )))
                    }
                });
            }
            rows.push(out);
        }
        RationalMatrix::parse(&rows)
    }
}

/// Inputs of `compose tiling|spectral`. `partner` is `T′` or the common spectrum `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub moduli: Vec<u32>,
    pub divisors: Vec<u32>,
    pub tiles: Vec<Vec<Vec<i64>>>,
    pub partner: Vec<Vec<i64>>,
    pub quotient_set: Vec<Vec<i64>>,
    pub quotient_partner: Vec<Vec<i64>>,
    pub reps: Vec<Vec<i64>>,
}

impl BundleFile {
    pub fn to_composition(&self) -> Result<Composition> {
        let g = make_group(&self.moduli)?;
        let q = coordinate_quotient(&g, &self.divisors)?;
        let qg = q.quotient().clone();
        let tiles = self
            .tiles
            .iter()
            .enumerate()
            .map(|(j, t)| rows_to_subset(&g, t, &format!("tiles[{j}]")))
            .collect::<Result<_>>()?;
        let reps = self
            .reps
            .iter()
            .enumerate()
            .map(|(i, r)| row_to_elem(&g, r, &format!("reps[{i}]")))
            .collect::<Result<_>>()?;
        Ok(Composition {
            group: g.clone(),
            divisors: self.divisors.clone(),
            tiles,
            partner: rows_to_subset(&g, &self.partner, "partner")?,
            quotient_set: rows_to_subset(&qg, &self.quotient_set, "quotient_set")?,
            quotient_partner: rows_to_subset(&qg, &self.quotient_partner, "quotient_partner")?,
            reps,
        })
    }
}

fn row_to_elem(g: &Group, row: &[i64], at: &str) -> Result<Elem> {
    if row.len() != g.dim() {
        return Err(Error::Parse(format!(
            "{at} has {} coordinates, the group Z{:?} has dimension {}",
            row.len(),
            g.moduli(),
            g.dim()
        )));
    }
    for (j, (&c, &n)) in row.iter().zip(g.moduli()).enumerate() {
        if c < 0 || c >= i64::from(n) {
            return Err(Error::Parse(format!("{at}[{j}] = {c} is outside [0, {n})")));
        }
    }
    g.elem(row)
}

fn rows_to_subset(g: &Arc<Group>, rows: &[Vec<i64>], at: &str) -> Result<GroupSubset> {
    let elems = rows
        .iter()
        .enumerate()
        .map(|(i, r)| row_to_elem(g, r, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    GroupSubset::from_elems(g.clone(), &elems)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn annotate<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_set(path: &Path) -> Result<GroupSubset> {
    let file: SetFile = read_json(path)?;
    annotate(path, file.to_subset())
}

pub fn read_matrix(path: &Path) -> Result<RationalMatrix> {
    let file: MatrixFile = read_json(path)?;
    annotate(path, file.to_matrix())
}

pub fn read_bundle(path: &Path) -> Result<Composition> {
    let file: BundleFile = read_json(path)?;
    annotate(path, file.to_composition())
}
