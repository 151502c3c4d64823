//! Python bindings for the polydec library.
//!
//! Exposes the main types and operations: complexes with deletion,
//! link, rank and face counting; the delta family; transportation
//! polytope vertex enumeration; the decomposability searches with
//! certificate verification; the hitting-set extraction; and the
//! corank audits. Structured results come back as plain dicts and
//! lists mirroring the CLI's JSON artifacts.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList};

use polydec_core::complex::{Face, SimplicialComplex};
use polydec_core::decomp::{
    find_strong_decomposition, find_weak_decomposition, verify_certificate, SearchOptions,
    SheddingCertificate,
};
use polydec_core::delta::{cross_validate, delta_complex, DeltaComplex};
use polydec_core::diameter::{bound_report, BoundKind, FacetRidgeGraph};
use polydec_core::obstruction::{
    audit_phi_properties, audit_shedding_sequence, minimal_empty_intersection, tight_family,
    ObstructionError, SetCollection, TheoremAuditOptions,
};
use polydec_core::transport::{
    enumerate_facets, enumerate_vertices, parse_rational, Margins, Rational,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn obstruction_err(e: ObstructionError) -> PyErr {
    match e {
        ObstructionError::InternalAssertion(_) => runtime_err(e),
        other => value_err(other),
    }
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<PyObject> {
    use serde_json::Value;
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any().unbind(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any().unbind()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any().unbind()
            } else {
                n.as_f64()
                    .expect("finite JSON number")
                    .into_pyobject(py)?
                    .into_any()
                    .unbind()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn face_from_ids(ids: &[usize]) -> PyResult<Face> {
    for &v in ids {
        if v >= polydec_core::complex::MAX_VERTICES {
            return Err(value_err(format!("vertex id {v} exceeds the 64-vertex cap")));
        }
    }
    Ok(Face::of(ids.iter().copied()))
}

/// A vertex given by id or by delta label ("u3", "v1").
#[derive(FromPyObject)]
enum VertexRef {
    Id(usize),
    Label(String),
}

/// A rational margin entry: integer or "p/q" string.
#[derive(FromPyObject)]
enum RationalRef {
    Int(i64),
    Literal(String),
}

fn rationals_from(values: Vec<RationalRef>) -> PyResult<Vec<Rational>> {
    values
        .into_iter()
        .map(|v| match v {
            RationalRef::Int(i) => Ok(Rational::from_integer(i)),
            RationalRef::Literal(s) => parse_rational(&s).map_err(value_err),
        })
        .collect()
}

fn margins_from(row: Vec<RationalRef>, col: Vec<RationalRef>) -> PyResult<Margins> {
    Margins::new(rationals_from(row)?, rationals_from(col)?).map_err(value_err)
}

/// A simplicial complex stored by its facet list, with optional vertex
/// labels.
#[pyclass(frozen)]
struct Complex {
    inner: SimplicialComplex,
    labels: Option<Vec<String>>,
    delta: Option<DeltaComplex>,
}

impl Complex {
    fn wrap(inner: SimplicialComplex, labels: Option<Vec<String>>) -> Self {
        Complex {
            inner,
            labels,
            delta: None,
        }
    }
}

#[pymethods]
impl Complex {
    /// Complex from a facet list; subsets and duplicates collapse.
    #[new]
    fn new(facets: Vec<Vec<usize>>, vertex_count: usize) -> PyResult<Self> {
        let faces: Vec<Face> = facets
            .iter()
            .map(|ids| face_from_ids(ids))
            .collect::<PyResult<_>>()?;
        let inner = SimplicialComplex::from_facets(faces, vertex_count).map_err(value_err)?;
        Ok(Complex::wrap(inner, None))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (inner, labels) = SimplicialComplex::from_json(text).map_err(value_err)?;
        Ok(Complex::wrap(inner, labels))
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn facet_count(&self) -> usize {
        self.inner.facet_count()
    }

    fn facets(&self) -> Vec<Vec<usize>> {
        self.inner.facets().iter().map(|f| f.vertex_vec()).collect()
    }

    fn dimension(&self) -> Option<i32> {
        self.inner.dimension()
    }

    fn is_pure(&self) -> bool {
        self.inner.is_pure()
    }

    fn vertex_labels(&self) -> Option<Vec<String>> {
        self.labels.clone()
    }

    fn contains_face(&self, face: Vec<usize>) -> PyResult<bool> {
        Ok(self.inner.contains_face(face_from_ids(&face)?))
    }

    fn f_count(&self, k: i32) -> PyResult<u64> {
        self.inner.f_count(k).map_err(value_err)
    }

    fn deletion(&self, face: Vec<usize>) -> PyResult<Complex> {
        let del = self
            .inner
            .deletion(face_from_ids(&face)?)
            .map_err(value_err)?;
        Ok(Complex::wrap(del, self.labels.clone()))
    }

    fn link(&self, face: Vec<usize>) -> PyResult<Complex> {
        let link = self.inner.link(face_from_ids(&face)?).map_err(value_err)?;
        Ok(Complex::wrap(link, self.labels.clone()))
    }

    /// (rank, corank, witness face) of a vertex set.
    fn rank(&self, vertices: Vec<usize>) -> PyResult<(usize, usize, Vec<usize>)> {
        let r = self.inner.rank_of(face_from_ids(&vertices)?);
        Ok((r.rank, r.corank, r.witness.vertex_vec()))
    }

    /// Exact facet-ridge diameter.
    fn diameter(&self) -> PyResult<usize> {
        polydec_core::diameter::diameter(&self.inner).map_err(value_err)
    }

    /// Facet-ridge graph in DOT format, labelled when labels exist.
    fn ridge_graph_dot(&self) -> PyResult<String> {
        let graph = FacetRidgeGraph::build(&self.inner).map_err(value_err)?;
        Ok(graph.to_dot(self.labels.as_deref()))
    }

    /// Diameter bound reports: the Provan-Billera bounds for this k,
    /// plus Hirsch / Brightwell bounds when the polytope parameters
    /// are supplied (or known from a delta construction).
    #[pyo3(signature = (k, polar_facets=None, dim=None, m=None, n=None))]
    fn bounds(
        &self,
        py: Python<'_>,
        k: usize,
        polar_facets: Option<usize>,
        dim: Option<usize>,
        m: Option<usize>,
        n: Option<usize>,
    ) -> PyResult<PyObject> {
        let mut kinds = vec![
            BoundKind::ProvanBilleraStrong { k },
            BoundKind::ProvanBilleraWeak { k },
        ];
        match (polar_facets, dim) {
            (Some(polar_facets), Some(dim)) => kinds.push(BoundKind::Hirsch { polar_facets, dim }),
            (None, None) => {
                if let Some(delta) = &self.delta {
                    kinds.push(delta.hirsch_bound());
                }
            }
            _ => return Err(value_err("polar_facets and dim go together")),
        }
        match (m, n) {
            (Some(m), Some(n)) => kinds.push(BoundKind::Brightwell { m, n }),
            (None, None) => {
                if let Some(delta) = &self.delta {
                    kinds.push(delta.brightwell_bound());
                }
            }
            _ => return Err(value_err("m and n go together")),
        }
        let mut reports = Vec::new();
        for kind in kinds {
            reports.push(bound_report(&self.inner, kind).map_err(value_err)?);
        }
        json_to_py(py, &serde_json::to_value(&reports).expect("bound serialization"))
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner
            .to_json(self.labels.as_deref())
            .map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Complex(vertices={}, facets={}, dimension={:?})",
            self.inner.vertex_count(),
            self.inner.facet_count(),
            self.inner.dimension()
        )
    }
}

/// The complex delta(a,b): polar boundary complex of the 2×(a+b+1)
/// transportation polytope with margins (2a+1, 2b+1) and all-2
/// columns, built directly from the index-disjoint pair description.
#[pyfunction]
fn delta(a: usize, b: usize) -> PyResult<Complex> {
    let d = delta_complex(a, b).map_err(value_err)?;
    Ok(Complex {
        inner: d.complex.clone(),
        labels: Some(d.labeling.labels()),
        delta: Some(d),
    })
}

/// Checks that the direct and polar constructions of delta(a,b) agree
/// and match the (a+b+1)!/(a!b!) facet count.
#[pyfunction]
fn delta_routes_agree(a: usize, b: usize) -> PyResult<bool> {
    Ok(cross_validate(a, b).map_err(value_err)?.passed())
}

/// Margins of delta(a,b) as ("p/q" | integer) strings.
#[pyfunction]
fn delta_margins(a: usize, b: usize) -> PyResult<(Vec<String>, Vec<String>)> {
    let m = polydec_core::delta::delta_margins(a, b).map_err(value_err)?;
    let fmt = |vals: &[Rational]| {
        vals.iter()
            .map(|&v| polydec_core::transport::format_rational(v))
            .collect()
    };
    Ok((fmt(m.row()), fmt(m.col())))
}

/// All vertices of the transportation polytope with the given margins,
/// as matrices of rational strings. Margins must be feasible and
/// nondegenerate.
#[pyfunction]
fn transportation_vertices(
    row: Vec<RationalRef>,
    col: Vec<RationalRef>,
) -> PyResult<Vec<Vec<Vec<String>>>> {
    let margins = margins_from(row, col)?;
    let vertices = enumerate_vertices(&margins).map_err(value_err)?;
    Ok(vertices.iter().map(|v| v.to_string_matrix()).collect())
}

/// Facet cells (mu, nu) of the transportation polytope.
#[pyfunction]
fn transportation_facets(
    row: Vec<RationalRef>,
    col: Vec<RationalRef>,
) -> PyResult<Vec<(usize, usize)>> {
    let margins = margins_from(row, col)?;
    enumerate_facets(&margins).map_err(value_err)
}

/// Polar boundary complex of a simple transportation polytope.
#[pyfunction]
fn polar_complex(row: Vec<RationalRef>, col: Vec<RationalRef>) -> PyResult<Complex> {
    let margins = margins_from(row, col)?;
    let polar = polydec_core::transport::polar_boundary_complex(&margins).map_err(value_err)?;
    let labels = polar.label_strings();
    Ok(Complex::wrap(polar.complex, Some(labels)))
}

fn run_search(
    py: Python<'_>,
    complex: &Complex,
    k: usize,
    max_states: Option<u64>,
    strong: bool,
) -> PyResult<PyObject> {
    let opts = SearchOptions {
        max_states,
        ..SearchOptions::default()
    };
    let verdict = if strong {
        find_strong_decomposition(&complex.inner, k, &opts)
    } else {
        find_weak_decomposition(&complex.inner, k, &opts)
    }
    .map_err(value_err)?;
    if let Some(cert) = &verdict.certificate {
        verify_certificate(&complex.inner, cert)
            .map_err(|e| runtime_err(format!("certificate replay failed: {e}")))?;
    }
    json_to_py(py, &verdict.to_json_value())
}

/// Weak k-decomposability by certified exhaustive search. Returns a
/// dict with status, exhaustion statistics and any certificate.
#[pyfunction]
#[pyo3(signature = (complex, k, max_states=None))]
fn find_weak(
    py: Python<'_>,
    complex: &Complex,
    k: usize,
    max_states: Option<u64>,
) -> PyResult<PyObject> {
    run_search(py, complex, k, max_states, false)
}

/// Strong k-decomposability (deletion and link conditions).
#[pyfunction]
#[pyo3(signature = (complex, k, max_states=None))]
fn find_strong(
    py: Python<'_>,
    complex: &Complex,
    k: usize,
    max_states: Option<u64>,
) -> PyResult<PyObject> {
    run_search(py, complex, k, max_states, true)
}

/// Replays a certificate (JSON text or dict-compatible string) against
/// a complex; raises ValueError with the failing step on mismatch.
#[pyfunction]
fn check_certificate(complex: &Complex, certificate_json: &str) -> PyResult<()> {
    let cert = SheddingCertificate::from_json(certificate_json).map_err(value_err)?;
    verify_certificate(&complex.inner, &cert).map_err(value_err)
}

/// Minimal empty-intersection sub-collection of a family of
/// ≤(k+1)-sets: kept indices, extraction witnesses, and the union.
#[pyfunction]
fn hitting_set(py: Python<'_>, sets: Vec<Vec<u32>>, k: usize) -> PyResult<PyObject> {
    let collection = SetCollection::from_vecs(sets, k).map_err(obstruction_err)?;
    let extraction = minimal_empty_intersection(&collection).map_err(obstruction_err)?;
    json_to_py(
        py,
        &serde_json::to_value(&extraction).expect("extraction serialization"),
    )
}

/// The family showing the hitting-set union bound is tight at k.
#[pyfunction]
fn tight_hitting_family(k: usize) -> PyResult<Vec<Vec<u32>>> {
    let fam = tight_family(k).map_err(obstruction_err)?;
    Ok(fam
        .sets()
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect())
}

fn faces_from_refs(delta: &DeltaComplex, faces: Vec<Vec<VertexRef>>) -> PyResult<Vec<Face>> {
    faces
        .into_iter()
        .map(|face| {
            let mut f = Face::EMPTY;
            for item in face {
                let v = match item {
                    VertexRef::Id(id) => {
                        if id >= 2 * delta.labeling.n() {
                            return Err(value_err(format!("vertex id {id} out of range")));
                        }
                        polydec_core::complex::VertexId(id as u32)
                    }
                    VertexRef::Label(label) => delta
                        .labeling
                        .parse_label(&label)
                        .ok_or_else(|| value_err(format!("unknown vertex label {label:?}")))?,
                };
                f = f.insert(v);
            }
            Ok(f)
        })
        .collect()
}

/// Corank property audit along a legal shedding prefix of delta(a,b);
/// faces are lists of vertex ids or labels.
#[pyfunction]
fn audit_phi(
    py: Python<'_>,
    a: usize,
    b: usize,
    faces: Vec<Vec<VertexRef>>,
) -> PyResult<PyObject> {
    let d = delta_complex(a, b).map_err(value_err)?;
    let sequence = faces_from_refs(&d, faces)?;
    let report = audit_phi_properties(&d, &sequence).map_err(obstruction_err)?;
    json_to_py(py, &serde_json::to_value(&report).expect("report serialization"))
}

/// Obstruction replay of a candidate shedding sequence on delta(a,b):
/// either an obstruction witness dict or a valid-so-far frontier.
#[pyfunction]
#[pyo3(signature = (a, b, k, faces, full_domain=false))]
fn audit_theorem(
    py: Python<'_>,
    a: usize,
    b: usize,
    k: usize,
    faces: Vec<Vec<VertexRef>>,
    full_domain: bool,
) -> PyResult<PyObject> {
    let d = delta_complex(a, b).map_err(value_err)?;
    let sequence = faces_from_refs(&d, faces)?;
    let outcome = audit_shedding_sequence(a, b, k, &sequence, &TheoremAuditOptions { full_domain })
        .map_err(obstruction_err)?;
    json_to_py(
        py,
        &serde_json::to_value(&outcome).expect("outcome serialization"),
    )
}

#[pymodule]
fn polydec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Complex>()?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(delta_routes_agree, m)?)?;
    m.add_function(wrap_pyfunction!(delta_margins, m)?)?;
    m.add_function(wrap_pyfunction!(transportation_vertices, m)?)?;
    m.add_function(wrap_pyfunction!(transportation_facets, m)?)?;
    m.add_function(wrap_pyfunction!(polar_complex, m)?)?;
    m.add_function(wrap_pyfunction!(find_weak, m)?)?;
    m.add_function(wrap_pyfunction!(find_strong, m)?)?;
    m.add_function(wrap_pyfunction!(check_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(hitting_set, m)?)?;
    m.add_function(wrap_pyfunction!(tight_hitting_family, m)?)?;
    m.add_function(wrap_pyfunction!(audit_phi, m)?)?;
    m.add_function(wrap_pyfunction!(audit_theorem, m)?)?;
    Ok(())
}
