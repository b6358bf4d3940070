use ::conesurf::closed::{closed_with, density_sequence, ClosedOptions, DensityTarget};
use ::conesurf::shortest::{shortest_grown, shortest_with, ShortestOptions};
use ::conesurf::unfolding::{unfold_with, UnfoldOptions};
use ::conesurf::verify::{run_verify, Suite, VerifyConfig};
use ::conesurf::{
    builtin, check_local_geodesic, parse_surface, trace_ray, validate_surface, ConeSurface, Direction, Error,
    GeodesicPath, HomotopyWord, PlanarPoint, SurfacePoint,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(conesurf, ConesurfError, PyException);

fn err(e: Error) -> PyErr {
    match e {
        Error::Schema(_) | Error::Word(_) | Error::InvalidArgument(_) | Error::UnknownBuiltin(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => ConesurfError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A flat surface with cone singularities, glued from polygons.
#[pyclass(module = "conesurf", frozen)]
struct Surface(ConeSurface);

#[pymethods]
impl Surface {
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        builtin(name).map(Surface).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_surface(text).map(Surface).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &serde_json::to_value(validate_surface(&self.0)).expect("report serializes"))
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels.clone()
    }

    #[getter]
    fn genus(&self) -> i64 {
        self.0.topology.genus
    }

    fn area(&self) -> f64 {
        self.0.area()
    }

    fn diameter(&self) -> f64 {
        self.0.diameter()
    }

    /// Cone angles of the singular points, in radians.
    fn cone_angles(&self) -> Vec<f64> {
        self.0.singular_points().map(|c| c.angle).collect()
    }

    /// Point at `(x, y)` in the coordinates of polygon `polygon`.
    #[pyo3(signature = (x, y, polygon = 0))]
    fn point(&self, x: f64, y: f64, polygon: usize) -> PyResult<Point> {
        if polygon >= self.0.polygons.len() {
            return Err(PyValueError::new_err(format!("no polygon {polygon}")));
        }
        self.0.locate(polygon, PlanarPoint::new(x, y)).map(Point).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Surface({:?}, polygons={}, genus={})",
            self.0.name.as_deref().unwrap_or(""),
            self.0.polygons.len(),
            self.0.topology.genus
        )
    }
}

#[pyclass(module = "conesurf", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Point(SurfacePoint);

#[pymethods]
impl Point {
    fn __repr__(&self) -> String {
        format!("Point({:?})", self.0)
    }
}

type Segment = (usize, (f64, f64), (f64, f64));

/// A geodesic polyline on a surface.
#[pyclass(module = "conesurf", frozen)]
struct Path {
    path: GeodesicPath,
    labels: Vec<String>,
}

impl Path {
    fn new(s: &ConeSurface, path: GeodesicPath) -> Self {
        Path { path, labels: s.labels.clone() }
    }
}

#[pymethods]
impl Path {
    #[getter]
    fn length(&self) -> f64 {
        self.path.length
    }

    #[getter]
    fn closed(&self) -> bool {
        self.path.closed
    }

    #[getter]
    fn word(&self) -> String {
        self.path.word.format(&self.labels)
    }

    /// Cone points passed, as `(class id, left angle, right angle)`.
    fn passages(&self) -> Vec<(usize, f64, f64)> {
        self.path.passages().map(|c| (c.id, c.left, c.right)).collect()
    }

    /// Segments as `(triangle, (x0, y0), (x1, y1))` in triangle charts.
    fn segments(&self) -> Vec<Segment> {
        self.path.segments().map(|(a, b, t)| (t, (a.x, a.y), (b.x, b.y))).collect()
    }

    fn is_local_geodesic(&self, surface: &Surface) -> bool {
        check_local_geodesic(&surface.0, &self.path).is_local_geodesic
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.path.to_json(&self.labels))
    }

    fn __repr__(&self) -> String {
        format!("Path(length={}, word={:?}, closed={})", self.path.length, self.word(), self.path.closed)
    }
}

fn word(s: &ConeSurface, text: &str, cyclic: bool) -> PyResult<HomotopyWord> {
    let mut w = HomotopyWord::parse(text, &s.labels, cyclic).map_err(err)?;
    if cyclic {
        w.reduce();
    }
    Ok(w)
}

/// Straight geodesic from `at` in direction `angle` (radians, chart of the start triangle).
#[pyfunction]
fn trace(surface: &Surface, at: &Point, angle: f64, length: f64) -> PyResult<Path> {
    let p = trace_ray(&surface.0, at.0, Direction::new(angle), length).map_err(err)?;
    Ok(Path::new(&surface.0, p))
}

/// All shortest paths from `p` to the lift of `q` reached along `word`.
#[pyfunction]
#[pyo3(signature = (surface, p, q, word = "", radius = None))]
fn shortest(surface: &Surface, p: &Point, q: &Point, word: &str, radius: Option<f64>) -> PyResult<Vec<Path>> {
    let s = &surface.0;
    let w = self::word(s, word, false)?;
    let opts = ShortestOptions::default();
    let m = match radius {
        Some(r) => shortest_with(s, p.0, (q.0, w), r, &opts),
        None => shortest_grown(s, p.0, (q.0, w), &opts),
    }
    .map_err(err)?;
    Ok(m.paths.into_iter().map(|x| Path::new(s, x)).collect())
}

/// Minimum-length closed geodesics freely homotopic to `word`, leftmost first.
#[pyfunction]
fn closed_geodesics(surface: &Surface, word: &str) -> PyResult<Vec<Path>> {
    let s = &surface.0;
    let w = self::word(s, word, true)?;
    let cg = closed_with(s, &w, &ClosedOptions::default()).map_err(err)?;
    Ok(cg.paths.into_iter().map(|x| Path::new(s, x)).collect())
}

/// Developed cells of the universal cover within `radius` of `at`.
#[pyfunction]
#[pyo3(signature = (surface, at, radius, max_cells = 1_000_000))]
fn unfold<'py>(py: Python<'py>, surface: &Surface, at: &Point, radius: f64, max_cells: usize) -> PyResult<Bound<'py, PyAny>> {
    let opts = UnfoldOptions { max_cells, ..Default::default() };
    let tree = unfold_with(&surface.0, at.0, radius, opts).map_err(err)?;
    to_py(py, &serde_json::to_value(tree.to_doc(&surface.0)).expect("tree serializes"))
}

/// Sup distance over `[-window, window]` between the leftmost closed geodesic
/// of each family word and the closed geodesic of `axis` near `at`.
#[pyfunction]
#[pyo3(signature = (surface, axis, family, at, window = 2.0))]
fn density<'py>(
    py: Python<'py>,
    surface: &Surface,
    axis: &str,
    family: Vec<(usize, String)>,
    at: &Point,
    window: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let s = &surface.0;
    let opts = ClosedOptions::default();
    let target = DensityTarget::new(s, at.0, &word(s, axis, true)?, &opts).map_err(err)?;
    let fam = family
        .iter()
        .map(|(n, w)| Ok((*n, word(s, w, true)?)))
        .collect::<PyResult<Vec<_>>>()?;
    let recs = density_sequence(s, &target, &fam, window, &opts);
    to_py(py, &serde_json::to_value(recs).expect("records serialize"))
}

/// Run the self-check suites and return the report.
#[pyfunction]
#[pyo3(signature = (suites = None, corpus = None, seed = 7, queries = 10))]
fn verify<'py>(
    py: Python<'py>,
    suites: Option<Vec<String>>,
    corpus: Option<Vec<String>>,
    seed: u64,
    queries: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = VerifyConfig { seed, segment_queries: queries, ..Default::default() };
    if let Some(names) = suites {
        cfg.suites = names
            .iter()
            .map(|n| Suite::parse(n).ok_or_else(|| PyValueError::new_err(format!("unknown suite `{n}`"))))
            .collect::<PyResult<_>>()?;
    }
    if let Some(c) = corpus {
        cfg.corpus = c;
    }
    let rep = py.detach(|| run_verify(&cfg));
    to_py(py, &serde_json::to_value(rep).expect("report serializes"))
}

#[pymodule]
#[pyo3(name = "conesurf")]
fn conesurf_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ConesurfError", m.py().get_type::<ConesurfError>())?;
    m.add_class::<Surface>()?;
    m.add_class::<Point>()?;
    m.add_class::<Path>()?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(shortest, m)?)?;
    m.add_function(wrap_pyfunction!(closed_geodesics, m)?)?;
    m.add_function(wrap_pyfunction!(unfold, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
