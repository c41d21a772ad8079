//! Python bindings. Structured values cross the boundary as JSON strings in
//! the same formats the command-line tool reads and writes.

use std::sync::Arc;
use std::time::Duration;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use princ_cong::functor::explain_representation;
use princ_cong::io::{
    congruence_json, natural_iso_json, read_json, EmbeddingJson, FunctorJson, KappaJson, LatticeJson, PrincJson,
    SearchReportJson, ZetaJson,
};
use princ_cong::lattice::zeta_between;
use princ_cong::{
    con_lattice, enumerate_01_sublattices, kappa_map, normalize_functor, princ_poset, principal_congruence,
    search_representation, validate_functor, Error, FiniteLattice, OracleBudget, PosetFunctor, SublatticeEmbedding,
};

fn py_err(e: Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn to_json<T: Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// A finite bounded lattice.
#[pyclass(name = "Lattice", frozen)]
struct PyLattice {
    inner: Arc<FiniteLattice>,
}

#[pymethods]
impl PyLattice {
    /// Parses `{"elements": [...], "covers": [[a, b], ...]}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let l = read_json::<LatticeJson>(text).and_then(|j| j.to_lattice()).map_err(py_err)?;
        Ok(PyLattice { inner: Arc::new(l) })
    }

    #[staticmethod]
    fn chain(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("a chain needs at least one element"));
        }
        Ok(PyLattice {
            inner: Arc::new(FiniteLattice::chain(n)),
        })
    }

    #[staticmethod]
    fn pentagon() -> Self {
        PyLattice {
            inner: Arc::new(FiniteLattice::pentagon()),
        }
    }

    #[staticmethod]
    fn diamond(k: usize) -> Self {
        PyLattice {
            inner: Arc::new(FiniteLattice::diamond(k)),
        }
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&LatticeJson::from_lattice(&self.inner))
    }

    fn labels(&self) -> Vec<String> {
        self.inner.poset().carrier().labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn meet(&self, a: &str, b: &str) -> PyResult<String> {
        let (a, b) = (self.index(a)?, self.index(b)?);
        Ok(self.inner.label(self.inner.meet(a, b)).to_string())
    }

    fn join(&self, a: &str, b: &str) -> PyResult<String> {
        let (a, b) = (self.index(a)?, self.index(b)?);
        Ok(self.inner.label(self.inner.join(a, b)).to_string())
    }

    /// Blocks of the principal congruence generated by `(a, b)`.
    fn cg(&self, a: &str, b: &str) -> PyResult<Vec<Vec<String>>> {
        let (a, b) = (self.index(a)?, self.index(b)?);
        let c = principal_congruence(&self.inner, a, b).map_err(py_err)?;
        Ok(congruence_json(&self.inner, &c))
    }

    /// All congruences, coarsest first.
    fn con(&self) -> Vec<Vec<Vec<String>>> {
        con_lattice(&self.inner)
            .iter()
            .map(|c| congruence_json(&self.inner, c))
            .collect()
    }

    /// Principal congruences with witnesses and Hasse edges, as JSON.
    fn princ(&self) -> PyResult<String> {
        to_json(&PrincJson::from_princ(&princ_poset(self.inner.clone())))
    }

    #[pyo3(signature = (max_count=None))]
    fn sublattices(&self, max_count: Option<usize>) -> Vec<Vec<String>> {
        enumerate_01_sublattices(self.inner.clone(), max_count)
            .map(|s| s.labels())
            .collect()
    }

    /// The induced map from Princ of the sublattice `sub` into Princ of this lattice, as JSON.
    fn zeta(&self, sub: Vec<String>) -> PyResult<String> {
        let emb = SublatticeEmbedding::from_labels(self.inner.clone(), &sub).map_err(py_err)?;
        let source = Arc::new(princ_poset(emb.sub().clone()));
        let target = Arc::new(princ_poset(self.inner.clone()));
        let z = zeta_between(source, target, &emb).map_err(py_err)?;
        to_json(&ZetaJson::from_zeta(&z))
    }

    fn __repr__(&self) -> String {
        format!("Lattice({})", self.labels().join(", "))
    }
}

impl PyLattice {
    fn index(&self, label: &str) -> PyResult<usize> {
        self.inner.index_of(label).map_err(py_err)
    }
}

/// A functor from a bounded poset into bounded posets.
#[pyclass(name = "Functor", frozen)]
struct PyFunctor {
    inner: PosetFunctor,
}

#[pymethods]
impl PyFunctor {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let f = read_json::<FunctorJson>(text).and_then(|j| j.to_functor()).map_err(py_err)?;
        Ok(PyFunctor { inner: f })
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&FunctorJson::from_functor(&self.inner))
    }

    /// Validation report as JSON.
    fn validate(&self) -> PyResult<String> {
        to_json(&validate_functor(&self.inner))
    }

    fn normalize(&self) -> PyResult<PyFunctor> {
        let n = normalize_functor(&self.inner).map_err(py_err)?;
        Ok(PyFunctor { inner: n.functor })
    }

    /// Colimit data and kappa for base element `j`, as JSON. The functor must be normalized.
    fn kappa(&self, j: &str) -> PyResult<String> {
        let j = self.inner.base().index_of(j).map_err(py_err)?;
        let k = kappa_map(&self.inner, j).map_err(py_err)?;
        to_json(&KappaJson::from_kappa(&self.inner, &k))
    }

    /// Natural isomorphism onto Princ ∘ E as JSON, or `None`.
    fn check_rep(&self, embedding_json: &str) -> PyResult<Option<String>> {
        let e = read_json::<EmbeddingJson>(embedding_json)
            .and_then(|j| j.to_embedding(self.inner.base().clone()))
            .map_err(py_err)?;
        let outcome = explain_representation(&self.inner, e.lattice(), &e).map_err(py_err)?;
        outcome
            .into_option()
            .map(|xi| to_json(&natural_iso_json(&self.inner, &xi)))
            .transpose()
    }

    /// Search report as JSON.
    #[pyo3(signature = (max_size=5, time_limit=60))]
    fn search_rep(&self, py: Python<'_>, max_size: usize, time_limit: u64) -> PyResult<String> {
        let budget = OracleBudget::new(max_size, 1_000_000, Duration::from_secs(time_limit)).map_err(py_err)?;
        let f = self.inner.clone();
        let r = py.detach(move || search_representation(&f, &budget)).map_err(py_err)?;
        to_json(&SearchReportJson::from_report(&self.inner, &r))
    }
}

#[pymodule]
fn princ_cong_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_class::<PyFunctor>()?;
    Ok(())
}
