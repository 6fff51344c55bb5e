//! Python module `juliadiff`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

use juliadiff_core::bounds::{self, DiamMode};
use juliadiff_core::oracle::{self, GridMask, MaskMode};
use juliadiff_core::{cover, geometry, verify, ComplexPoint, Parameter};

fn err(e: juliadiff_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn param(c_re: f64, c_im: f64) -> PyResult<Parameter> {
    Parameter::from_parts(c_re, c_im).map_err(err)
}

fn pt(z: ComplexPoint) -> (f64, f64) {
    (z.re, z.im)
}

#[pyclass(name = "Disk", frozen, get_all)]
#[derive(Clone)]
struct PyDisk {
    center: (f64, f64),
    radius: f64,
}

#[pymethods]
impl PyDisk {
    #[new]
    fn new(center: (f64, f64), radius: f64) -> Self {
        Self { center, radius }
    }

    fn area(&self) -> f64 {
        self.inner().area()
    }

    fn __repr__(&self) -> String {
        format!("Disk(center=({}, {}), radius={})", self.center.0, self.center.1, self.radius)
    }
}

impl PyDisk {
    fn inner(&self) -> geometry::Disk {
        geometry::Disk::new(ComplexPoint::from(self.center), self.radius)
    }
}

impl From<geometry::Disk> for PyDisk {
    fn from(d: geometry::Disk) -> Self {
        Self {
            center: pt(d.center),
            radius: d.radius,
        }
    }
}

/// One symbolic piece: its symbol string, boundary samples and enclosing disk.
#[pyclass(name = "Piece", frozen, get_all)]
struct PyPiece {
    seq: String,
    samples: Vec<(f64, f64)>,
    sampled_diam: f64,
    disk: PyDisk,
}

#[pymethods]
impl PyPiece {
    fn __repr__(&self) -> String {
        format!("Piece(seq='{}', radius={})", self.seq, self.disk.radius)
    }
}

#[pyclass(name = "Mask", frozen)]
struct PyMask(GridMask);

#[pymethods]
impl PyMask {
    #[getter]
    fn width(&self) -> usize {
        self.0.width
    }

    #[getter]
    fn height(&self) -> usize {
        self.0.height
    }

    #[getter]
    fn cell(&self) -> f64 {
        self.0.cell
    }

    #[getter]
    fn origin(&self) -> (f64, f64) {
        pt(self.0.origin)
    }

    fn count(&self) -> u64 {
        self.0.count()
    }

    fn area(&self) -> f64 {
        oracle::mask_area(&self.0)
    }

    fn get(&self, i: usize, j: usize) -> PyResult<bool> {
        if i >= self.0.width || j >= self.0.height {
            return Err(PyValueError::new_err("cell index out of range"));
        }
        Ok(self.0.get(i, j))
    }

    fn is_point_symmetric(&self) -> bool {
        self.0.is_point_symmetric()
    }

    /// Binary PGM bytes, top row first.
    fn to_pgm<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &juliadiff_core::io::mask_pgm(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("Mask({}x{}, cell={}, count={})", self.0.width, self.0.height, self.0.cell, self.0.count())
    }
}

#[pyfunction]
#[pyo3(signature = (c_re, c_im=0.0))]
fn theorem_condition(c_re: f64, c_im: f64) -> PyResult<bool> {
    Ok(bounds::theorem_condition(&param(c_re, c_im)?))
}

/// `(R_1..R_n, r_1..r_n)`.
#[pyfunction]
#[pyo3(signature = (c_re, c_im, n))]
fn radius_sequences(c_re: f64, c_im: f64, n: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let rb = bounds::radius_sequences(&param(c_re, c_im)?, n).map_err(err)?;
    Ok((rb.outer_seq().to_vec(), rb.inner_seq().to_vec()))
}

#[pyfunction]
#[pyo3(signature = (c_re, c_im=0.0))]
fn radius_limits(c_re: f64, c_im: f64) -> PyResult<(f64, f64)> {
    Ok(bounds::radius_limits(&param(c_re, c_im)?))
}

/// Rows `n = 1..=n_max` as dicts; `diam_i0` defaults to the certified `2·R_1`.
#[pyfunction]
#[pyo3(signature = (c_re, c_im, n_max, diam_i0=None))]
fn bound_table<'py>(
    py: Python<'py>,
    c_re: f64,
    c_im: f64,
    n_max: usize,
    diam_i0: Option<f64>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let p = param(c_re, c_im)?;
    let diam = match diam_i0 {
        Some(d) => d,
        None => bounds::diam_i0_bound(&p, DiamMode::Certified).map_err(err)?,
    };
    bounds::bound_table(&p, n_max, diam)
        .map_err(err)?
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("n", r.n)?;
            d.set_item("k_n", r.k_n)?;
            d.set_item("bound", r.bound)?;
            d.set_item("ratio_step", r.ratio_step)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
#[pyo3(signature = (c_re, c_im=0.0, epsilon=None))]
fn decay_params<'py>(py: Python<'py>, c_re: f64, c_im: f64, epsilon: Option<f64>) -> PyResult<Bound<'py, PyDict>> {
    let dp = bounds::decay_params(&param(c_re, c_im)?, epsilon).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("epsilon", dp.epsilon)?;
    d.set_item("delta", dp.delta)?;
    d.set_item("onset", dp.onset)?;
    d.set_item("ratio", dp.ratio)?;
    d.set_item("k_const", dp.k_const)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (c_re, c_im, n, samples=cover::DEFAULT_SAMPLES))]
fn generate_pieces(c_re: f64, c_im: f64, n: usize, samples: usize) -> PyResult<Vec<PyPiece>> {
    let pieces = cover::generate_pieces(&param(c_re, c_im)?, n, samples).map_err(err)?;
    Ok(pieces
        .into_iter()
        .map(|pc| PyPiece {
            seq: pc.seq.to_string(),
            samples: pc.samples.iter().copied().map(pt).collect(),
            sampled_diam: pc.sampled_diam,
            disk: pc.disk.into(),
        })
        .collect())
}

/// Row-major `L × L` difference disks `D_i − D_j` of the pieces' disks.
#[pyfunction]
fn difference_cover(pieces: Vec<PyRef<'_, PyPiece>>) -> PyResult<Vec<PyDisk>> {
    let disks: Vec<_> = pieces.iter().map(|p| p.disk.inner()).collect();
    Ok(cover::difference_cover(&disks)
        .map_err(err)?
        .into_iter()
        .map(PyDisk::from)
        .collect())
}

#[pyfunction]
fn sum_area(disks: Vec<PyRef<'_, PyDisk>>) -> f64 {
    let disks: Vec<_> = disks.iter().map(|d| d.inner()).collect();
    cover::sum_area(&disks)
}

/// `(area, dilation_margin)` of the lattice union estimate.
#[pyfunction]
fn union_area(disks: Vec<PyRef<'_, PyDisk>>, cell: f64) -> PyResult<(f64, f64)> {
    let disks: Vec<_> = disks.iter().map(|d| d.inner()).collect();
    let u = cover::union_area_grid(&disks, cell).map_err(err)?;
    Ok((u.area, u.dilation_margin))
}

#[pyfunction]
fn minkowski_diff_disks(d2: &PyDisk, d1: &PyDisk) -> PyDisk {
    geometry::minkowski_diff_disks(&d2.inner(), &d1.inner()).into()
}

#[pyfunction]
#[pyo3(signature = (d2, d1, k=100_000, seed=1))]
fn sample_diff_check(d2: &PyDisk, d1: &PyDisk, k: usize, seed: u64) -> PyResult<f64> {
    oracle::sample_diff_check(&d2.inner(), &d1.inner(), k, seed).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (c_re, c_im, n, cell=0.01, mode="inner"))]
fn rasterize_preimage(c_re: f64, c_im: f64, n: usize, cell: f64, mode: &str) -> PyResult<PyMask> {
    let mode = match mode {
        "inner" => MaskMode::Inner,
        "outer" => MaskMode::Outer,
        other => return Err(PyValueError::new_err(format!("mode must be 'inner' or 'outer', got '{other}'"))),
    };
    oracle::rasterize_preimage(&param(c_re, c_im)?, n, cell, mode)
        .map(PyMask)
        .map_err(err)
}

/// Discrete difference set `a − b`.
#[pyfunction]
fn mask_difference(a: &PyMask, b: &PyMask) -> PyResult<PyMask> {
    oracle::grid_minkowski_diff(&a.0, &b.0).map(PyMask).map_err(err)
}

/// Runs the invariant suite and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (c_re, c_im=0.0, depth=5, samples=512, cell=0.01, epsilon=None, seed=1))]
fn run_verify(
    c_re: f64,
    c_im: f64,
    depth: usize,
    samples: usize,
    cell: f64,
    epsilon: Option<f64>,
    seed: u64,
) -> PyResult<String> {
    let config = verify::VerifyConfig {
        c: ComplexPoint::new(c_re, c_im),
        depth,
        samples,
        cell,
        epsilon,
        seed,
        ..verify::VerifyConfig::default()
    };
    verify::run(&config).map(|r| r.to_json()).map_err(err)
}

#[pymodule]
fn juliadiff(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDisk>()?;
    m.add_class::<PyPiece>()?;
    m.add_class::<PyMask>()?;
    m.add_function(wrap_pyfunction!(theorem_condition, m)?)?;
    m.add_function(wrap_pyfunction!(radius_sequences, m)?)?;
    m.add_function(wrap_pyfunction!(radius_limits, m)?)?;
    m.add_function(wrap_pyfunction!(bound_table, m)?)?;
    m.add_function(wrap_pyfunction!(decay_params, m)?)?;
    m.add_function(wrap_pyfunction!(generate_pieces, m)?)?;
    m.add_function(wrap_pyfunction!(difference_cover, m)?)?;
    m.add_function(wrap_pyfunction!(sum_area, m)?)?;
    m.add_function(wrap_pyfunction!(union_area, m)?)?;
    m.add_function(wrap_pyfunction!(minkowski_diff_disks, m)?)?;
    m.add_function(wrap_pyfunction!(sample_diff_check, m)?)?;
    m.add_function(wrap_pyfunction!(rasterize_preimage, m)?)?;
    m.add_function(wrap_pyfunction!(mask_difference, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add("THEOREM_THRESHOLD", bounds::theorem_threshold())?;
    Ok(())
}
