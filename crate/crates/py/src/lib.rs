//! Python bindings. Structured results cross the boundary as plain dicts and lists.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use lpacket_core::cli::file::{GroupSpec, ParameterEntry, SubgroupSpec, TwistSpec};
use lpacket_core::cli::{self as core_cli, Cli};
use lpacket_core::clifford::{verify_clifford_suite, CliffordContext};
use lpacket_core::groups::{self, FinAbGroup};
use lpacket_core::lifting::{self, CoarsePacket, LiftingSource, Locality};
use lpacket_core::params;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_py<T: serde::de::DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(err)
}

fn locality(archimedean: bool) -> Locality {
    if archimedean {
        Locality::Archimedean
    } else {
        Locality::Nonarchimedean
    }
}

/// Finite abelian group in invariant-factor form.
#[pyclass(name = "FinAbGroup", module = "lpacket", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFinAbGroup(FinAbGroup);

#[pymethods]
impl PyFinAbGroup {
    #[new]
    fn new(factors: Vec<u64>) -> PyResult<Self> {
        FinAbGroup::new(factors).map(Self).map_err(err)
    }

    #[getter]
    fn factors(&self) -> Vec<u64> {
        self.0.invariant_factors().to_vec()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn elements(&self) -> Vec<Vec<i64>> {
        self.0.elements()
    }

    fn dual(&self) -> Self {
        Self(self.0.dual())
    }

    fn __len__(&self) -> usize {
        self.0.order() as usize
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("FinAbGroup({})", self.0)
    }
}

/// Homomorphism of finite abelian groups given by the images of the source generators.
#[pyclass(name = "AbHom", module = "lpacket", frozen)]
struct PyAbHom(groups::AbHom);

#[pymethods]
impl PyAbHom {
    #[new]
    fn new(source: &PyFinAbGroup, target: &PyFinAbGroup, images: Vec<Vec<i64>>) -> PyResult<Self> {
        groups::AbHom::from_images(source.0.clone(), target.0.clone(), &images).map(Self).map_err(err)
    }

    fn apply(&self, x: Vec<i64>) -> Vec<i64> {
        self.0.apply(&x)
    }

    /// Kernel as an abstract group.
    fn kernel(&self) -> PyFinAbGroup {
        PyFinAbGroup(self.0.kernel().group().clone())
    }

    fn image(&self) -> PyFinAbGroup {
        PyFinAbGroup(self.0.image().group().clone())
    }
}

/// Lifting datum: `S̄`, `S̄^{Σ0}`, the map `𝔞` and the twist group `X`.
#[pyclass(name = "LiftingDatum", module = "lpacket", frozen)]
struct PyLiftingDatum(lifting::LiftingDatum);

#[pymethods]
impl PyLiftingDatum {
    /// Abelian datum with `S̄^{Σ0} = S̄`.
    #[staticmethod]
    fn abelian(s_bar: Vec<u64>, alpha: Vec<Vec<i64>>, x: Vec<u64>) -> PyResult<Self> {
        let s_bar = FinAbGroup::new(s_bar).map_err(err)?;
        let twist = TwistSpec::Factors(x).build().map_err(err)?;
        lifting::build_lifting(&LiftingSource::abelian(s_bar), &alpha, twist).map(Self).map_err(err)
    }

    /// Datum of a classical parameter, given as a parameter-file entry.
    #[staticmethod]
    fn classical(parameter: &Bound<'_, PyAny>, x: Vec<u64>) -> PyResult<Self> {
        let entry: ParameterEntry = from_py(parameter)?;
        let twist = TwistSpec::Factors(x).build().map_err(err)?;
        let (_, _, datum) = entry.lifting_datum(&twist).map_err(err)?;
        Ok(Self(datum))
    }

    #[getter]
    fn s_bar(&self) -> PyFinAbGroup {
        PyFinAbGroup(self.0.s_bar.clone())
    }

    #[getter]
    fn s_tilde(&self) -> PyFinAbGroup {
        PyFinAbGroup(self.0.s_tilde.group().clone())
    }

    #[getter]
    fn fibre(&self) -> u64 {
        self.0.fibre()
    }

    #[pyo3(signature = (archimedean = false, deficit = 0))]
    fn counts<'py>(&self, py: Python<'py>, archimedean: bool, deficit: u64) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &lifting::coarse_structure(&self.0, locality(archimedean), deficit))
    }

    fn canonical_packet<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &CoarsePacket::canonical(&self.0, Locality::Nonarchimedean, 0))
    }

    /// Pairing assignment or obstruction for `packet` (the canonical packet by default).
    #[pyo3(signature = (packet = None))]
    fn pairing<'py>(&self, py: Python<'py>, packet: Option<&Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let p = self.packet(packet)?;
        to_py(py, &lifting::construct_pairing(&self.0, &p, Locality::Nonarchimedean))
    }

    #[pyo3(signature = (seed = None, packet = None))]
    fn refined<'py>(
        &self,
        py: Python<'py>,
        seed: Option<Vec<i64>>,
        packet: Option<&Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let p = self.packet(packet)?;
        let seed = seed.unwrap_or_else(|| self.0.twist.x().zero());
        to_py(py, &lifting::refined_decomposition(&self.0, &p, &seed).map_err(err)?)
    }

    /// Full analysis: counts, packet checks, pairing, refined packet and bridge.
    #[pyo3(signature = (packet = None, archimedean = false))]
    fn analyze<'py>(&self, py: Python<'py>, packet: Option<&Bound<'py, PyAny>>, archimedean: bool) -> PyResult<Bound<'py, PyAny>> {
        let p = self.packet(packet)?;
        to_py(py, &lifting::analyze(&self.0, &p, locality(archimedean), 0).map_err(err)?)
    }
}

impl PyLiftingDatum {
    fn packet(&self, packet: Option<&Bound<'_, PyAny>>) -> PyResult<CoarsePacket> {
        match packet {
            Some(p) => from_py(p),
            None => Ok(CoarsePacket::canonical(&self.0, Locality::Nonarchimedean, 0)),
        }
    }
}

/// Component groups of a parameter-file entry.
#[pyfunction]
fn component_group<'py>(py: Python<'py>, parameter: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let entry: ParameterEntry = from_py(parameter)?;
    let mut phi = params::ClassicalParameter::new(entry.kind, entry.n, entry.summands);
    if let Some(d) = entry.discrete {
        phi.discrete = d;
    }
    phi.center_image = entry.center_image;
    phi.validate(&entry.id).map_err(err)?;
    let data = params::component_group(&phi).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("coordinates", data.coordinates.clone())?;
    out.set_item("a_phi", data.a_group().invariant_factors().to_vec())?;
    out.set_item("s_bar", data.s_bar_group().invariant_factors().to_vec())?;
    out.set_item("s_bar_sigma0", data.s_bar_sigma0_group().invariant_factors().to_vec())?;
    out.set_item("s_bar_basis", data.s_bar.iter().map(|&v| data.label(v)).collect::<Vec<_>>())?;
    out.set_item("center", data.label(data.center))?;
    out.set_item("theta0_coset_nonempty", data.theta0_coset_nonempty)?;
    Ok(out.into_any())
}

/// The discrete symplectic parameter with `k` summands and its realization check.
#[pyfunction]
fn discrete_sp_agrees(k: usize) -> PyResult<bool> {
    let (phi, r) = params::realizations::discrete_sp(k);
    let data = params::component_group(&phi).map_err(err)?;
    Ok(params::commutant_oracle(&r, &phi).map_err(err)?.data == data)
}

/// Clifford suite for `G` and a normal subgroup, both in parameter-file syntax.
#[pyfunction]
fn clifford_suite<'py>(py: Python<'py>, group: &Bound<'py, PyAny>, subgroup: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let g: GroupSpec = from_py(group)?;
    let h: SubgroupSpec = from_py(subgroup)?;
    let g = Arc::new(g.build().map_err(err)?);
    let h = h.elements(&g).map_err(err)?;
    let ctx = CliffordContext::build(g, &h).map_err(err)?;
    to_py(py, &verify_clifford_suite(&ctx).map_err(err)?)
}

/// Runs the command-line tool; returns `(stdout, stderr, exit_code)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> PyResult<(String, String, i32)> {
    use clap::Parser;
    let argv = std::iter::once("lpacket".to_string()).chain(args);
    match Cli::try_parse_from(argv) {
        Ok(cli) => Ok(core_cli::execute(&cli)),
        Err(e) => Ok((String::new(), e.to_string(), core_cli::EXIT_INPUT)),
    }
}

/// Canonical machine form of a parameter file.
#[pyfunction]
fn normalize(text: &str) -> PyResult<String> {
    core_cli::parse(text).map(|f| f.to_canonical()).map_err(err)
}

#[pymodule]
fn lpacket(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFinAbGroup>()?;
    m.add_class::<PyAbHom>()?;
    m.add_class::<PyLiftingDatum>()?;
    m.add_function(wrap_pyfunction!(component_group, m)?)?;
    m.add_function(wrap_pyfunction!(discrete_sp_agrees, m)?)?;
    m.add_function(wrap_pyfunction!(clifford_suite, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    Ok(())
}
