//! Python bindings for the symrack engine: racks, modules, extensions,
//! (co)homology and the associated-group comparison.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use symrack::abgrp::mat::Mat;
use symrack::abgrp::{snf, FiniteAbelianGroup};
use symrack::catalog;
use symrack::cohomology::Guard;
use symrack::error::Error;
use symrack::ext::{self, Variant};
use symrack::rack::{FiniteSymmetricRack, GroupTable};
use symrack::sqmod::SQModule;

fn err(e: Error) -> PyErr {
    match e {
        Error::Resource(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_variant(s: &str) -> PyResult<Variant> {
    match s {
        "sr" => Ok(Variant::Sr),
        "sq" => Ok(Variant::Sq),
        other => Err(PyValueError::new_err(format!("variant must be sr or sq, got '{other}'"))),
    }
}

/// A finite symmetric rack or quandle on indices 0..n-1.
#[pyclass(name = "SymmetricRack")]
#[derive(Clone)]
struct PyRack {
    inner: FiniteSymmetricRack,
}

#[pymethods]
impl PyRack {
    /// Build from an operation table and involution; the division table is
    /// derived and all axioms are checked.
    #[new]
    #[pyo3(signature = (op, rho, quandle = true))]
    fn new(op: Vec<Vec<usize>>, rho: Vec<usize>, quandle: bool) -> PyResult<Self> {
        Ok(PyRack { inner: FiniteSymmetricRack::from_op(op, rho, quandle).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn quandle(&self) -> bool {
        self.inner.is_quandle()
    }

    fn op(&self, x: usize, y: usize) -> PyResult<usize> {
        if x >= self.inner.n() || y >= self.inner.n() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.op(x, y))
    }

    fn inv_op(&self, x: usize, y: usize) -> PyResult<usize> {
        if x >= self.inner.n() || y >= self.inner.n() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.inv_op(x, y))
    }

    fn rho(&self, x: usize) -> PyResult<usize> {
        if x >= self.inner.n() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.rho(x))
    }

    fn op_table(&self) -> Vec<Vec<usize>> {
        self.inner.op_table().to_vec()
    }

    fn rho_table(&self) -> Vec<usize> {
        self.inner.rho_table().to_vec()
    }

    fn orbit_count(&self) -> usize {
        self.inner.orbit_count()
    }

    fn product(&self, other: &PyRack) -> PyResult<PyRack> {
        Ok(PyRack { inner: self.inner.product(&other.inner).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!(
            "SymmetricRack(n={}, quandle={})",
            self.inner.n(),
            self.inner.is_quandle()
        )
    }
}

/// A module over a symmetric rack, wrapped with its base.
#[pyclass(name = "Module")]
#[derive(Clone)]
struct PyModuleObj {
    inner: SQModule,
}

#[pymethods]
impl PyModuleObj {
    #[getter]
    fn homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    fn group_factors(&self, x: usize) -> PyResult<Vec<i64>> {
        if x >= self.inner.base().n() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.group(x).factors_i64())
    }

    fn violations(&self) -> Vec<String> {
        self.inner
            .validate()
            .violations
            .iter()
            .map(|v| format!("{} at {:?}", v.axiom, v.witness))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Module(base_n={}, groups={:?})",
            self.inner.base().n(),
            self.inner.group(0).factors_i64()
        )
    }
}

/// Look up a named rack: unknot-sq, trivial-<n>-<inv>, dihedral-<n>,
/// conj-<group>, core-<group>[-<z>], flip-rack-2, or products like
/// "unknot-sq*dihedral-3".
#[pyfunction]
fn catalog_rack(name: &str) -> PyResult<PyRack> {
    Ok(PyRack { inner: catalog::catalog_rack(name).map_err(err)? })
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::default_rack_names().into_iter().map(String::from).collect()
}

#[pyfunction]
fn conj_rack(mult_table: Vec<Vec<usize>>) -> PyResult<PyRack> {
    let g = GroupTable::new(mult_table).map_err(err)?;
    Ok(PyRack { inner: FiniteSymmetricRack::make_conj(&g).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (mult_table, central_involution = None))]
fn core_rack(mult_table: Vec<Vec<usize>>, central_involution: Option<usize>) -> PyResult<PyRack> {
    let g = GroupTable::new(mult_table).map_err(err)?;
    Ok(PyRack { inner: FiniteSymmetricRack::make_core(&g, central_involution).map_err(err)? })
}

/// The trivial homogeneous module with the given invariant factors.
#[pyfunction]
fn trivial_module(rack: &PyRack, factors: Vec<i64>) -> PyResult<PyModuleObj> {
    let coeff = FiniteAbelianGroup::new(&factors);
    Ok(PyModuleObj { inner: SQModule::trivial(rack.inner.clone(), &coeff).map_err(err)? })
}

/// The order-2-or-4 module: phi = -1, psi = 2, eta = -1.
#[pyfunction]
fn order4_module(rack: &PyRack, factors: Vec<i64>) -> PyResult<PyModuleObj> {
    let coeff = FiniteAbelianGroup::new(&factors);
    Ok(PyModuleObj { inner: SQModule::order4(rack.inner.clone(), &coeff).map_err(err)? })
}

/// A module by catalog name (trivial-Z2, order4-Z4, pair-Z3) over a base.
#[pyfunction]
fn catalog_module(name: &str, rack: &PyRack) -> PyResult<PyModuleObj> {
    Ok(PyModuleObj { inner: catalog::catalog_module(name, &rack.inner).map_err(err)? })
}

/// Invariant factors of the generalized (co)homology group.
#[pyfunction]
#[pyo3(signature = (module, degree, variant = "sq", basepoint = 0, homology = false, max_degree = 3))]
fn cohomology(
    module: &PyModuleObj,
    degree: usize,
    variant: &str,
    basepoint: usize,
    homology: bool,
    max_degree: usize,
) -> PyResult<Vec<i64>> {
    let action = symrack::cohomology::coeff_action(&module.inner).map_err(err)?;
    let guard = Guard { max_degree, ..Guard::default() };
    let v = parse_variant(variant)?;
    let g = if homology {
        symrack::cohomology::homology_group(&action, degree, v, basepoint, &guard).map_err(err)?
    } else {
        symrack::cohomology::cohomology_group(&action, degree, v, basepoint, &guard).map_err(err)?
    };
    Ok(g.factors_i64())
}

/// Invariant factors of the extension-defined second cohomology.
#[pyfunction]
#[pyo3(signature = (module, variant = None))]
fn h2_ext(module: &PyModuleObj, variant: Option<&str>) -> PyResult<Vec<i64>> {
    let v = match variant {
        Some(s) => parse_variant(s)?,
        None => Variant::for_base(module.inner.base()),
    };
    Ok(ext::h2_ext(&module.inner, v).map_err(err)?.factors_i64())
}

/// The semi-direct product as a dense rack table.
#[pyfunction]
fn semidirect(module: &PyModuleObj) -> PyResult<PyRack> {
    let e = ext::semidirect(&module.inner).map_err(err)?;
    let table = e
        .table()
        .ok_or_else(|| PyRuntimeError::new_err("extension too large to tabulate"))?;
    Ok(PyRack { inner: table.clone() })
}

/// Brute-force enumeration statistics over all candidate factor sets.
#[pyfunction]
#[pyo3(signature = (module, max_candidates = 1_000_000, check_tables = true))]
fn enumerate_factor_sets(
    py: Python<'_>,
    module: &PyModuleObj,
    max_candidates: u64,
    check_tables: bool,
) -> PyResult<Py<PyDict>> {
    let stats =
        ext::enumerate_factor_sets(&module.inner, max_candidates, check_tables).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("candidates", stats.candidates)?;
    d.set_item("sr_cocycles", stats.sr_cocycles)?;
    d.set_item("sq_cocycles", stats.sq_cocycles)?;
    d.set_item("rack_realizable", stats.rack_realizable)?;
    d.set_item("quandle_realizable", stats.quandle_realizable)?;
    d.set_item("coboundaries", stats.coboundaries)?;
    d.set_item("mismatches", stats.sr_mismatches + stats.sq_mismatches)?;
    Ok(d.into())
}

/// Generators, relator count and abelianization of the associated group.
#[pyfunction]
fn associated_group(py: Python<'_>, rack: &PyRack) -> PyResult<Py<PyDict>> {
    let pres = symrack::assoc::associated_group(&rack.inner);
    let ab = symrack::assoc::abelianization(&pres);
    let reduced = symrack::assoc::tietze_reduce(&pres);
    let d = PyDict::new(py);
    d.set_item("generators", pres.n_gens)?;
    d.set_item("relators", pres.relator_count())?;
    d.set_item("abelianization", ab.factors_i64())?;
    d.set_item("tietze_generators", reduced.n_gens)?;
    d.set_item("tietze_relators", reduced.relator_count())?;
    Ok(d.into())
}

/// First group cohomology of the associated group with Hom(X, A)
/// coefficients.
#[pyfunction]
fn h1(rack: &PyRack, factors: Vec<i64>) -> PyResult<Vec<i64>> {
    let coeff = FiniteAbelianGroup::new(&factors);
    let v = symrack::assoc::hom_xa(&rack.inner, &coeff);
    let pres = symrack::assoc::associated_group(&rack.inner);
    let action = symrack::assoc::g_action(&v).map_err(err)?;
    Ok(symrack::assoc::h1_group(&pres, &rack.inner, &action, v.group())
        .map_err(err)?
        .factors_i64())
}

/// Compare H2_SR with H1 of the associated group, running the explicit
/// maps in both directions.
#[pyfunction]
fn verify_iso(py: Python<'_>, rack: &PyRack, factors: Vec<i64>) -> PyResult<Py<PyDict>> {
    let coeff = FiniteAbelianGroup::new(&factors);
    let report =
        symrack::assoc::verify_iso(&rack.inner, &coeff, &Guard::default()).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("h2_factors", report.h2_factors.clone())?;
    d.set_item("h1_factors", report.h1_factors.clone())?;
    d.set_item("round_trip_ok", report.round_trip_ok)?;
    d.set_item("findings", report.findings.clone())?;
    d.set_item("passed", report.passed())?;
    Ok(d.into())
}

/// Smith normal form: returns (u, d, v) with u * m * v = d.
#[pyfunction]
fn smith_normal_form(
    m: Vec<Vec<i64>>,
) -> PyResult<(Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let mat = Mat::from_rows_i64(&m);
    let s = snf::snf(&mat);
    let to = |m: &Mat| {
        m.to_rows_i64()
            .ok_or_else(|| PyRuntimeError::new_err("transform entries exceed i64"))
    };
    Ok((to(&s.u)?, to(&s.d)?, to(&s.v)?))
}

/// Canonical invariant factors of a factor list.
#[pyfunction]
fn invariant_factors(factors: Vec<i64>) -> Vec<i64> {
    FiniteAbelianGroup::new(&factors).factors_i64()
}

#[pymodule]
fn symrack_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRack>()?;
    m.add_class::<PyModuleObj>()?;
    m.add_function(wrap_pyfunction!(catalog_rack, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(conj_rack, m)?)?;
    m.add_function(wrap_pyfunction!(core_rack, m)?)?;
    m.add_function(wrap_pyfunction!(trivial_module, m)?)?;
    m.add_function(wrap_pyfunction!(order4_module, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_module, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(h2_ext, m)?)?;
    m.add_function(wrap_pyfunction!(semidirect, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_factor_sets, m)?)?;
    m.add_function(wrap_pyfunction!(associated_group, m)?)?;
    m.add_function(wrap_pyfunction!(h1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_iso, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_factors, m)?)?;
    Ok(())
}
