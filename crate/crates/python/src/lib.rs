//! Python bindings: modules, maps, homology, induction, Tor and the verification battery.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use semihomology::chainkit::{homology, ChainComplex, HomologyReport};
use semihomology::diagmod::json::{map_from_json, map_to_json, module_from_json, module_text_dump, module_to_json};
use semihomology::diagmod::{DiagramModule, ModuleMap};
use semihomology::oracle::{
    check_fibration, check_weak_equivalence, run_battery, run_counterexample, CorpusSpec, DEFAULT_SEED,
};
use semihomology::simplexcat::{ComparisonFunctor, Kind};
use semihomology::transport::{
    augmented_chain, counit_map, induce, low_degree_sequence, restrict, restrict_map, tor, underlying_complex,
    CoefficientId,
};

fn err(e: semihomology::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = semihomology::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

fn dims_of(h: &HomologyReport) -> BTreeMap<i32, usize> {
    h.dims().into_iter().collect()
}

/// A validated right module over a truncated indexing category.
#[pyclass(name = "Module", module = "pysemihomology", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDiagramModule {
    inner: DiagramModule,
}

fn wrap(x: DiagramModule) -> PyDiagramModule {
    PyDiagramModule { inner: x }
}

#[pymethods]
impl PyDiagramModule {
    /// Reads module JSON and validates it.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(wrap(module_from_json(text).and_then(|x| x.validated()).map_err(err)?))
    }

    #[staticmethod]
    fn representable(kind: &str, c: i32, truncation: i32) -> PyResult<Self> {
        Ok(wrap(DiagramModule::representable(parse(kind)?, c, truncation).map_err(err)?))
    }

    #[staticmethod]
    fn zero(kind: &str, truncation: i32) -> PyResult<Self> {
        Ok(wrap(DiagramModule::zero(parse(kind)?, truncation)))
    }

    fn to_json(&self) -> String {
        module_to_json(&self.inner)
    }

    fn text_dump(&self) -> String {
        module_text_dump(&self.inner)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn truncation(&self) -> i32 {
        self.inner.truncation()
    }

    /// Dimensions from the lowest degree up to the truncation.
    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    fn dim(&self, n: i32) -> usize {
        self.inner.dim(n)
    }

    fn direct_sum(&self, other: &PyDiagramModule) -> PyResult<Self> {
        Ok(wrap(self.inner.direct_sum(&other.inner).map_err(err)?))
    }

    fn truncate_to(&self, n: i32) -> PyResult<Self> {
        Ok(wrap(self.inner.truncate_to(n).map_err(err)?))
    }

    fn restrict(&self, functor: &str) -> PyResult<Self> {
        Ok(wrap(restrict(parse(functor)?, &self.inner).map_err(err)?))
    }

    /// The augmented chain complex, as a `chain_neg1` module.
    fn augmented_chain(&self) -> PyResult<Self> {
        Ok(wrap(augmented_chain(&self.inner).map_err(err)?.to_module()))
    }

    /// Homology of the complex the module carries, degree to dimension.
    fn homology(&self) -> PyResult<BTreeMap<i32, usize>> {
        let x = &self.inner;
        let c = match x.kind() {
            Kind::AugSsimp => augmented_chain(x),
            k if k.is_chain() => ChainComplex::from_module(x),
            _ => underlying_complex(x),
        }
        .map_err(err)?;
        Ok(dims_of(&homology(&c).map_err(err)?))
    }

    fn tor(&self, coeff: &str) -> PyResult<BTreeMap<i32, usize>> {
        let c: CoefficientId = parse(coeff)?;
        Ok(dims_of(&tor(&self.inner, c).map_err(err)?))
    }

    /// `(induced module, (lo, hi))`.
    fn induce(&self, functor: &str) -> PyResult<(Self, (i32, i32))> {
        let ind = induce(parse(functor)?, &self.inner).map_err(err)?;
        Ok((wrap(ind.module), ind.valid_window))
    }

    /// Dimensions of the four-term low-degree sequence and whether it is exact.
    fn low_degree_sequence(&self) -> PyResult<([usize; 4], bool)> {
        let s = low_degree_sequence(&self.inner).map_err(err)?;
        Ok((s.dims, s.is_exact()))
    }

    fn __eq__(&self, other: &PyDiagramModule) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Module(kind={:?}, truncation={}, dims={:?})", self.kind(), self.truncation(), self.dims())
    }
}

/// A morphism of modules.
#[pyclass(name = "Map", module = "pysemihomology", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMap {
    inner: ModuleMap,
}

#[pymethods]
impl PyMap {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let f = map_from_json(text).map_err(err)?;
        let source = f.source().clone().validated().map_err(err)?;
        let target = f.target().clone().validated().map_err(err)?;
        let inner = ModuleMap::checked(source, target, f.components().clone()).map_err(err)?;
        Ok(PyMap { inner })
    }

    #[staticmethod]
    fn identity(x: &PyDiagramModule) -> Self {
        PyMap {
            inner: ModuleMap::identity(&x.inner),
        }
    }

    #[staticmethod]
    fn zero(source: &PyDiagramModule, target: &PyDiagramModule) -> PyResult<Self> {
        Ok(PyMap {
            inner: ModuleMap::zero(&source.inner, &target.inner).map_err(err)?,
        })
    }

    /// The unit `M -> u* u_! M`.
    #[staticmethod]
    fn unit(functor: &str, m: &PyDiagramModule) -> PyResult<Self> {
        let ind = induce(parse(functor)?, &m.inner).map_err(err)?;
        Ok(PyMap {
            inner: ind.unit().map_err(err)?,
        })
    }

    /// The counit `u_! u* X -> X`.
    #[staticmethod]
    fn counit(functor: &str, x: &PyDiagramModule) -> PyResult<Self> {
        let (_, eps) = counit_map(parse(functor)?, &x.inner).map_err(err)?;
        Ok(PyMap { inner: eps })
    }

    fn to_json(&self) -> String {
        map_to_json(&self.inner)
    }

    #[getter]
    fn source(&self) -> PyDiagramModule {
        wrap(self.inner.source().clone())
    }

    #[getter]
    fn target(&self) -> PyDiagramModule {
        wrap(self.inner.target().clone())
    }

    /// `self ∘ inner`.
    fn compose(&self, inner: &PyMap) -> PyResult<Self> {
        Ok(PyMap {
            inner: self.inner.compose(&inner.inner).map_err(err)?,
        })
    }

    fn restrict(&self, functor: &str) -> PyResult<Self> {
        Ok(PyMap {
            inner: restrict_map(parse(functor)?, &self.inner).map_err(err)?,
        })
    }

    /// `(holds, conditions, failures)`; the four characterizations in order.
    fn weak_equivalence(&self) -> PyResult<(bool, [bool; 4], Vec<(i32, usize, usize, usize)>)> {
        let v = check_weak_equivalence(&self.inner).map_err(err)?;
        Ok((v.holds, v.conditions, v.failures))
    }

    fn is_fibration(&self) -> PyResult<bool> {
        Ok(check_fibration(&self.inner).map_err(err)?.holds)
    }
}

#[pyfunction]
fn hom_count(kind: &str, m: i32, n: i32) -> PyResult<u64> {
    Ok(semihomology::simplexcat::hom_count(parse(kind)?, m, n))
}

#[pyfunction]
fn functors() -> Vec<&'static str> {
    ComparisonFunctor::ALL.iter().map(|u| u.name()).collect()
}

/// The counterexample report as JSON.
#[pyfunction]
#[pyo3(signature = (truncation = 5))]
fn counterexample(truncation: i32) -> String {
    run_counterexample(truncation).to_json()
}

/// The battery report as JSON.
#[pyfunction]
#[pyo3(signature = (seed = DEFAULT_SEED, truncation = 5))]
fn battery(py: Python<'_>, seed: u64, truncation: i32) -> PyResult<String> {
    let spec = CorpusSpec {
        seed,
        truncation,
        ..CorpusSpec::default()
    };
    let report = py.detach(|| run_battery(&spec)).map_err(err)?;
    Ok(report.to_json())
}

#[pymodule]
fn pysemihomology(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagramModule>()?;
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(hom_count, m)?)?;
    m.add_function(wrap_pyfunction!(functors, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(battery, m)?)?;
    m.add("KINDS", Kind::ALL.iter().map(|k| k.name()).collect::<Vec<_>>())?;
    Ok(())
}
