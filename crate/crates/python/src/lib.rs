use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use spectile::analysis::{self, Budget, RationalMatrix, Search, TileOutcome};
use spectile::certificate::Certificate;
use spectile::cli::RunConfig;
use spectile::constructions::{self, GammaVariant};
use spectile::fourier;
use spectile::groups::{self, make_group, GroupSubset};

fn err(e: spectile::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn budget(b: Option<u64>) -> Budget {
    b.map(Budget).unwrap_or_default()
}

/// A subset of `Z_{n_1} × … × Z_{n_d}`.
#[pyclass(name = "Subset", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PySubset(GroupSubset);

#[pymethods]
impl PySubset {
    #[new]
    fn new(moduli: Vec<u32>, elements: Vec<Vec<i64>>) -> PyResult<Self> {
        let g = make_group(&moduli).map_err(err)?;
        GroupSubset::from_coords(g, &elements).map(PySubset).map_err(err)
    }

    #[getter]
    fn moduli(&self) -> Vec<u32> {
        self.0.group().moduli().to_vec()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.0.group().order()
    }

    #[getter]
    fn exponent(&self) -> u32 {
        self.0.group().exponent()
    }

    /// Elements as coordinate lists, in index order.
    fn elements(&self) -> Vec<Vec<u32>> {
        self.0.coord_rows()
    }

    fn contains(&self, coords: Vec<i64>) -> PyResult<bool> {
        let x = self.0.group().elem(&coords).map_err(err)?;
        Ok(self.0.contains(&x))
    }

    fn difference_set(&self) -> PyResult<Self> {
        groups::difference_set(&self.0).map(PySubset).map_err(err)
    }

    fn generated_subgroup(&self) -> PyResult<Self> {
        groups::subgroup_generated(&self.0).map(PySubset).map_err(err)
    }

    fn zero_set(&self) -> PyResult<Self> {
        fourier::zero_set(&self.0).map(PySubset).map_err(err)
    }

    /// Exact transform value at a dual point: `(order, reduced coefficients, complex value)`.
    fn transform(&self, xi: Vec<i64>) -> PyResult<(u32, Vec<i64>, (f64, f64))> {
        let xi = self.0.group().elem(&xi).map_err(err)?;
        let v = fourier::ft_indicator_at(&self.0, &xi).map_err(err)?;
        Ok((v.order(), v.reduced(), v.to_complex()))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Subset(moduli={:?}, size={})", self.0.group().moduli(), self.0.len())
    }
}

#[pyfunction]
#[pyo3(signature = (a, t, level = 1))]
fn is_tiling(a: &PySubset, t: &PySubset, level: u32) -> PyResult<bool> {
    analysis::is_tiling(&a.0, &t.0, level).map_err(err)
}

#[pyfunction]
fn tiling_fourier_criterion(a: &PySubset, t: &PySubset) -> PyResult<bool> {
    analysis::tiling_fourier_criterion(&a.0, &t.0).map_err(err)
}

#[pyfunction]
fn is_spectrum(a: &PySubset, spectrum: &PySubset) -> PyResult<bool> {
    analysis::is_spectrum(&a.0, &spectrum.0).map_err(err)
}

#[pyfunction]
fn power_tiling_check(omega: &PySubset, lambda: &PySubset) -> PyResult<bool> {
    fourier::power_tiling_check(&omega.0, &lambda.0).map_err(err)
}

/// Returns a tiling complement, `None` if the set provably does not tile, and raises when the budget runs out.
#[pyfunction]
#[pyo3(signature = (a, budget_nodes = None))]
fn can_tile(a: &PySubset, budget_nodes: Option<u64>) -> PyResult<Option<PySubset>> {
    match analysis::can_tile(&a.0, budget(budget_nodes)).map_err(err)? {
        TileOutcome::Tiles { complement, .. } => Ok(Some(PySubset(complement))),
        TileOutcome::NotTile(_) => Ok(None),
        TileOutcome::Inconclusive { nodes, .. } => {
            Err(PyValueError::new_err(format!("inconclusive after {nodes} nodes")))
        }
    }
}

/// Returns a spectrum containing 0, `None` if none exists, and raises when the budget runs out.
#[pyfunction]
#[pyo3(signature = (a, budget_nodes = None))]
fn find_spectrum(a: &PySubset, budget_nodes: Option<u64>) -> PyResult<Option<PySubset>> {
    match analysis::find_spectrum(&a.0, budget(budget_nodes)).map_err(err)? {
        Search::Found { value, .. } => Ok(Some(PySubset(value))),
        Search::Exhausted { .. } => Ok(None),
        Search::Inconclusive { nodes } => Err(PyValueError::new_err(format!("inconclusive after {nodes} nodes"))),
    }
}

/// Entries are strings such as `"0"`, `"1/3"` or `"-2/5"`.
#[pyfunction]
fn is_log_hadamard(rows: Vec<Vec<String>>) -> PyResult<bool> {
    let m = RationalMatrix::parse(&rows).map_err(err)?;
    analysis::is_log_hadamard(&m).map_err(err)
}

#[pyfunction]
fn universal_obstruction(complements: Vec<PySubset>, w: &PySubset) -> PyResult<bool> {
    let sets: Vec<GroupSubset> = complements.into_iter().map(|s| s.0).collect();
    Ok(analysis::universal_obstruction(&sets, &w.0).map_err(err)?.holds)
}

#[pyfunction]
fn build_e() -> PySubset {
    PySubset(constructions::build_e())
}

#[pyfunction]
fn build_k() -> PySubset {
    PySubset(constructions::build_k())
}

#[pyfunction]
fn build_gamma(variant: &str) -> PyResult<PySubset> {
    let v: GammaVariant = variant.parse().map_err(err)?;
    Ok(PySubset(constructions::build_gamma(v).map_err(err)?.gamma))
}

fn canonical(c: spectile::Result<Certificate>) -> PyResult<String> {
    c.and_then(|c| c.to_canonical_string()).map_err(err)
}

/// Certificate JSON for the `Z_6^5` construction.
#[pyfunction]
fn verify_usc() -> PyResult<String> {
    canonical(constructions::build_usc_certificate(&RunConfig::default()))
}

#[pyfunction]
#[pyo3(signature = (variant = "z15"))]
fn verify_gamma(variant: &str) -> PyResult<String> {
    let v: GammaVariant = variant.parse().map_err(err)?;
    canonical(constructions::gamma_nonspectral_certificate(v, &RunConfig::default()))
}

#[pyfunction]
#[pyo3(signature = (variant = "z15", k = 2))]
fn verify_lift(variant: &str, k: u32) -> PyResult<String> {
    let v: GammaVariant = variant.parse().map_err(err)?;
    canonical(constructions::lifted_obstruction_check(v, k, &RunConfig::default()))
}

#[pymodule]
fn pyspectile(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySubset>()?;
    m.add_function(wrap_pyfunction!(is_tiling, m)?)?;
    m.add_function(wrap_pyfunction!(tiling_fourier_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(is_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(power_tiling_check, m)?)?;
    m.add_function(wrap_pyfunction!(can_tile, m)?)?;
    m.add_function(wrap_pyfunction!(find_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(is_log_hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(universal_obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(build_e, m)?)?;
    m.add_function(wrap_pyfunction!(build_k, m)?)?;
    m.add_function(wrap_pyfunction!(build_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(verify_usc, m)?)?;
    m.add_function(wrap_pyfunction!(verify_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lift, m)?)?;
    Ok(())
}
