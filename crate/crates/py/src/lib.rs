//! Python bindings for the exact-arithmetic torsion/lattice toolkit.
//!
//! Matrices cross the boundary as `list[list[int]]` (arbitrary precision via
//! Python ints), polynomials as coefficient lists in ascending degree.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ssred_core::cyclotomic;
use ssred_core::lattice::OperatorLattice as CoreLattice;
use ssred_core::linalg::{self, IntMatrix};
use ssred_core::scenario_file::ScenarioFile;
use ssred_core::scenarios::{self, ExampleId, PaddCase};
use ssred_core::torsion::{self, Side, TorsionPairData};
use ssred_core::verify;
use ssred_core::Error;

type Mat = Vec<Vec<BigInt>>;

fn to_mat(rows: &Mat) -> PyResult<IntMatrix> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(PyValueError::new_err("matrix must be nonempty"));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    Ok(IntMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j].clone()))
}

fn from_mat(m: &IntMatrix) -> Mat {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect())
        .collect()
}

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// R(n): the forcing extension degree for level n.
#[pyfunction]
fn r_of(n: u64) -> PyResult<u64> {
    cyclotomic::r_of(n).map_err(err)
}

/// Row Hermite normal form: returns (H, U) with H = U @ M, U unimodular.
#[pyfunction]
fn hnf(m: Mat) -> PyResult<(Mat, Mat)> {
    let (h, u) = linalg::hnf(&to_mat(&m)?);
    Ok((from_mat(&h), from_mat(&u)))
}

/// Elementary divisors d1 | d2 | ... of the matrix (nonzero entries only).
#[pyfunction]
fn snf(m: Mat) -> PyResult<Vec<BigInt>> {
    Ok(linalg::snf(&to_mat(&m)?))
}

/// Smith normal form with transforms: (U, D, V) with U @ M @ V = D.
#[pyfunction]
fn snf_transforms(m: Mat) -> PyResult<(Mat, Mat, Mat)> {
    let (u, d, v) = linalg::snf_with_transforms(&to_mat(&m)?);
    Ok((from_mat(&u), from_mat(&d), from_mat(&v)))
}

/// Characteristic polynomial coefficients, ascending degree, monic.
#[pyfunction]
fn charpoly(m: Mat) -> PyResult<Vec<BigInt>> {
    Ok(linalg::charpoly(&to_mat(&m)?).coeffs().to_vec())
}

/// Minimal polynomial coefficients, ascending degree, monic (integral by
/// Gauss's lemma).
#[pyfunction]
fn minpoly(m: Mat) -> PyResult<Vec<BigInt>> {
    Ok(linalg::minpoly(&to_mat(&m)?).coeffs().to_vec())
}

/// Integrality criterion at level n for the m-th root of unity to the j-th
/// power: returns (hypothesis_holds, conclusion_holds).
#[pyfunction]
fn check_quasithm(m: u64, j: u64, n: u64) -> PyResult<(bool, bool)> {
    let v = cyclotomic::check_quasithm(m, j, n).map_err(err)?;
    Ok((v.hypothesis_holds, v.conclusion_holds))
}

/// (zeta - 1)^phi(l^s) / l is a unit of Z[zeta] for zeta primitive of order
/// l^s.
#[pyfunction]
fn primroot_unit_check(ell: u64, s: u32) -> PyResult<bool> {
    cyclotomic::primroot_unit_check(ell, s).map_err(err)
}

/// Divisibility bound for (zeta^j - 1)^k over the l^r-th cyclotomic ring.
#[pyfunction]
fn algprop_check(ell: u64, r: u32, k: u64, mexp: u32, j: u64) -> PyResult<bool> {
    cyclotomic::algprop_check(ell, r, k, mexp, j).map_err(err)
}

/// All elements of SL2(Z/n) = Sp2(Z/n) for n in {2, 3, 4}.
#[pyfunction]
fn enumerate_sp2(n: u64) -> PyResult<Vec<Mat>> {
    if ![2, 3, 4].contains(&n) {
        return Err(PyValueError::new_err("enumeration supported for n in {2, 3, 4}"));
    }
    Ok(torsion::enumerate_sp2(n).iter().map(from_mat).collect())
}

/// Level-n torsion module with its symplectic pairing and inertia action.
#[pyclass]
struct TorsionPair {
    inner: TorsionPairData,
}

#[pymethods]
impl TorsionPair {
    #[new]
    fn new(n: u64, d: usize, gamma: Mat) -> PyResult<Self> {
        let inner = TorsionPairData::standard_principal(n, d, to_mat(&gamma)?).map_err(err)?;
        Ok(TorsionPair { inner })
    }

    /// Fixed-submodule criterion sides: (exists S with the pairing/stability
    /// properties, (gamma - 1)^2 = 0 at level n).
    fn sslem(&self) -> (bool, bool) {
        let v = self.inner.sslem_equivalence();
        (v.hyp, v.concl)
    }

    /// Orbit-counting identities between X and its dual.
    fn counting_ok(&self) -> bool {
        self.inner.counting_identities().ok()
    }

    /// Criterion sides on the fixed submodule of level divisor m.
    fn ssprelem_fixed(&self, m: u64) -> (bool, bool) {
        let s = self.inner.fixed_submodule(Side::X, m);
        let v = self.inner.ssprelem_check(&s, m);
        (v.hyp, v.concl)
    }

    fn gamma(&self) -> Mat {
        from_mat(self.inner.gamma(Side::X))
    }
}

/// Saturate the standard lattice under lambda = (gamma^(R^t) - 1)^2 / n.
/// Returns {"basis", "denominator", "divisors", "exponent"}.
#[pyfunction]
fn saturate(py: Python<'_>, n: u64, d: usize, t: u32, gamma: Mat) -> PyResult<Py<PyDict>> {
    let lat = CoreLattice::with_standard_basis(n, d, t, to_mat(&gamma)?).map_err(err)?;
    let (t_lat, quot) = lat.saturate().map_err(err)?;
    let out = PyDict::new_bound(py);
    out.set_item("basis", from_mat(t_lat.basis_num()))?;
    out.set_item("denominator", t_lat.denom().clone())?;
    out.set_item("divisors", quot.divisors.clone())?;
    out.set_item("exponent", quot.exponent.clone())?;
    Ok(out.into())
}

/// Re-verify a built-in worked example and return its certificate as a dict.
#[pyfunction]
fn run_example(py: Python<'_>, id: &str) -> PyResult<Py<PyDict>> {
    let id = ExampleId::parse(id)
        .ok_or_else(|| PyValueError::new_err(format!("unknown example id: {id}")))?;
    let cert = scenarios::run_example(id);
    let out = PyDict::new_bound(py);
    out.set_item("id", cert.id.as_str())?;
    out.set_item("n", cert.n)?;
    out.set_item("ell", cert.ell)?;
    out.set_item("d", cert.d)?;
    out.set_item("gamma_on_x", from_mat(&cert.gamma_on_x))?;
    out.set_item("minpoly_x", cert.minpoly_x.coeffs().to_vec())?;
    out.set_item("kernel_divisors", cert.kernel_divisors.clone())?;
    out.set_item("kernel_exponent", cert.kernel_exponent.clone())?;
    let facts: Vec<(String, bool)> =
        cert.facts.iter().map(|f| (f.name.clone(), f.holds)).collect();
    out.set_item("facts", facts)?;
    out.set_item("falsified", cert.falsified())?;
    Ok(out.into())
}

/// Names of the built-in worked examples.
#[pyfunction]
fn example_ids() -> Vec<&'static str> {
    ExampleId::ALL.iter().map(|id| id.as_str()).collect()
}

/// Degree class ("1", "2", "3", "4", ">=6") of the minimal extension forcing
/// semistability, from the mod-4 and mod-3 inertia matrices.
#[pyfunction]
fn elliptic_degree(g4: Mat, g3: Mat) -> PyResult<String> {
    let dec = scenarios::elliptic_degree_decision(&to_mat(&g4)?, &to_mat(&g3)?).map_err(err)?;
    Ok(dec.class.as_str().to_string())
}

/// Purely-additive potentially-good decision at the given level (4, 3, or 2):
/// returns (relation_holds, squared_vanishes_at_level).
#[pyfunction]
#[pyo3(signature = (gamma, level, quadratic_still_additive = false))]
fn padd(gamma: Mat, level: u64, quadratic_still_additive: bool) -> PyResult<(bool, bool)> {
    let case = match level {
        4 => PaddCase::QuadraticGood,
        3 => PaddCase::CubicGood,
        2 => PaddCase::QuarticViaQuadratic,
        _ => return Err(PyValueError::new_err("level must be 4, 3, or 2")),
    };
    let v = scenarios::padd_decision(&to_mat(&gamma)?, case, quadratic_still_additive)
        .map_err(err)?;
    Ok((v.relation_holds, v.squared_vanishes_at_level))
}

/// Parse a scenario file body and return its fields as a dict.
#[pyfunction]
fn parse_scenario(py: Python<'_>, text: &str) -> PyResult<Py<PyDict>> {
    let sc = ScenarioFile::parse(text).map_err(err)?;
    let out = PyDict::new_bound(py);
    out.set_item("n", sc.n)?;
    out.set_item("d", sc.d)?;
    out.set_item("t", sc.t)?;
    out.set_item("gamma", from_mat(&sc.gamma))?;
    Ok(out.into())
}

/// Run every property suite; returns (machine_block, total_checks,
/// total_exceptions). Deterministic in (seed,) and independent of shards.
#[pyfunction]
#[pyo3(signature = (seed = 42, shards = 1))]
fn run_suites(seed: u64, shards: u32) -> (String, u64, u64) {
    let rep = verify::run_all(seed, shards);
    (rep.machine_block(), rep.total_checks(), rep.total_exceptions())
}

#[pymodule]
fn ssred(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(r_of, m)?)?;
    m.add_function(wrap_pyfunction!(hnf, m)?)?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(snf_transforms, m)?)?;
    m.add_function(wrap_pyfunction!(charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(minpoly, m)?)?;
    m.add_function(wrap_pyfunction!(check_quasithm, m)?)?;
    m.add_function(wrap_pyfunction!(primroot_unit_check, m)?)?;
    m.add_function(wrap_pyfunction!(algprop_check, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_sp2, m)?)?;
    m.add_function(wrap_pyfunction!(saturate, m)?)?;
    m.add_function(wrap_pyfunction!(run_example, m)?)?;
    m.add_function(wrap_pyfunction!(example_ids, m)?)?;
    m.add_function(wrap_pyfunction!(elliptic_degree, m)?)?;
    m.add_function(wrap_pyfunction!(padd, m)?)?;
    m.add_function(wrap_pyfunction!(parse_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(run_suites, m)?)?;
    m.add_class::<TorsionPair>()?;
    Ok(())
}
