//! Facet-ridge graphs, exact diameters, and diameter bound reports.
//!
//! Two facets of a pure complex are adjacent when they meet along a
//! ridge (a common face with one vertex fewer). The diameter of the
//! complex is the diameter of this graph, computed here by all-pairs
//! breadth-first search. Disconnected graphs are reported as errors
//! rather than infinite diameters: every complex in scope is a polytope
//! boundary or a shed descendant, so disconnection signals a bug.

use serde::Serialize;
use thiserror::Error;

use crate::comb::binomial;
use crate::complex::{Face, SimplicialComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiameterError {
    #[error("facet-ridge graph requires a pure complex")]
    NotPure,
    #[error("facet-ridge graph requires at least one facet")]
    Void,
    #[error("facet-ridge graph is disconnected: {component_a} and {component_b} are not joined")]
    Disconnected { component_a: Face, component_b: Face },
    #[error("face dimension {k} out of range for this complex")]
    KOutOfRange { k: i32 },
}

/// Graph on the facets of a pure complex, adjacency by shared ridges.
#[derive(Clone, Debug)]
pub struct FacetRidgeGraph {
    facets: Vec<Face>,
    neighbors: Vec<Vec<usize>>,
}

impl FacetRidgeGraph {
    /// Node order is the canonical facet order of the complex.
    pub fn build(c: &SimplicialComplex) -> Result<Self, DiameterError> {
        if c.is_void() {
            return Err(DiameterError::Void);
        }
        if !c.is_pure() {
            return Err(DiameterError::NotPure);
        }
        let facets: Vec<Face> = c.facets().to_vec();
        let size = facets[0].cardinality();
        let mut neighbors = vec![Vec::new(); facets.len()];
        for i in 0..facets.len() {
            for j in i + 1..facets.len() {
                if facets[i].intersection(facets[j]).cardinality() + 1 == size {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        Ok(FacetRidgeGraph { facets, neighbors })
    }

    pub fn node_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.neighbors[node].len()
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.neighbors.iter().all(|n| n.len() == d).then_some(d)
    }

    /// BFS distances from one node; `None` marks unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.facets.len()];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.neighbors[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn eccentricity(&self, source: usize) -> Result<u32, DiameterError> {
        let dist = self.bfs_distances(source);
        let mut ecc = 0;
        for (v, d) in dist.iter().enumerate() {
            match d {
                Some(d) => ecc = ecc.max(*d),
                None => {
                    return Err(DiameterError::Disconnected {
                        component_a: self.facets[source],
                        component_b: self.facets[v],
                    })
                }
            }
        }
        Ok(ecc)
    }

    /// Exact diameter by all-pairs BFS.
    pub fn diameter(&self) -> Result<usize, DiameterError> {
        self.diameter_with_threads(1)
    }

    /// Same reduction split across `threads` workers; the result does
    /// not depend on the schedule.
    pub fn diameter_with_threads(&self, threads: usize) -> Result<usize, DiameterError> {
        let n = self.node_count();
        let threads = threads.max(1).min(n);
        if threads == 1 {
            let mut best = 0;
            for source in 0..n {
                best = best.max(self.eccentricity(source)?);
            }
            return Ok(best as usize);
        }
        let results: Vec<Result<u32, DiameterError>> = std::thread::scope(|scope| {
            let chunk = n.div_ceil(threads);
            let mut handles = Vec::new();
            for t in 0..threads {
                let lo = t * chunk;
                let hi = ((t + 1) * chunk).min(n);
                handles.push(scope.spawn(move || {
                    let mut best = 0;
                    for source in lo..hi {
                        best = best.max(self.eccentricity(source)?);
                    }
                    Ok(best)
                }));
            }
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut best = 0;
        for r in results {
            best = best.max(r?);
        }
        Ok(best as usize)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// DOT rendering with a stable node and edge order; node labels are
    /// the comma-joined vertex labels of each facet.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("graph facet_ridge {\n");
        for (i, f) in self.facets.iter().enumerate() {
            let label: Vec<String> = f
                .vertices()
                .map(|v| match labels {
                    Some(l) => l[v.index()].clone(),
                    None => v.to_string(),
                })
                .collect();
            out.push_str(&format!("  f{} [label=\"{}\"];\n", i, label.join(",")));
        }
        for (i, ns) in self.neighbors.iter().enumerate() {
            for &j in ns {
                if i < j {
                    out.push_str(&format!("  f{i} -- f{j};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Exact facet-ridge diameter of a pure complex.
pub fn diameter(c: &SimplicialComplex) -> Result<usize, DiameterError> {
    FacetRidgeGraph::build(c)?.diameter()
}

/// The diameter bounds this crate can evaluate.
///
/// * `Hirsch`: n − d for a polytope with n facets and dimension d
///   (supplied by the caller, typically the polar's facet count).
/// * `ProvanBilleraStrong`: f_k(Δ) − C(d, k+1) for a strongly
///   k-decomposable (d−1)-dimensional complex.
/// * `ProvanBilleraWeak`: 2·f_k(Δ) for a weakly k-decomposable complex.
/// * `Brightwell`: 8(m+n−1) for an m×n transportation polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundKind {
    Hirsch { polar_facets: usize, dim: usize },
    ProvanBilleraStrong { k: usize },
    ProvanBilleraWeak { k: usize },
    Brightwell { m: usize, n: usize },
}

/// One evaluated inequality: diameter against a named bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub diameter: usize,
    #[serde(flatten)]
    pub kind: BoundKind,
    pub bound_value: i64,
    pub satisfied: bool,
}

/// Evaluates one bound for a pure connected complex. The
/// Provan–Billera bounds read d from the complex (d = dim + 1); the
/// polytopal bounds take their parameters from the caller.
pub fn bound_report(c: &SimplicialComplex, kind: BoundKind) -> Result<BoundReport, DiameterError> {
    let diam = diameter(c)?;
    let bound_value = match kind {
        BoundKind::Hirsch { polar_facets, dim } => polar_facets as i64 - dim as i64,
        BoundKind::ProvanBilleraStrong { k } => {
            let d = (c.dimension().expect("non-void") + 1) as u64;
            let fk = c
                .f_count(k as i32)
                .map_err(|_| DiameterError::KOutOfRange { k: k as i32 })?;
            fk as i64 - binomial(d, k as u64 + 1) as i64
        }
        BoundKind::ProvanBilleraWeak { k } => {
            let fk = c
                .f_count(k as i32)
                .map_err(|_| DiameterError::KOutOfRange { k: k as i32 })?;
            2 * fk as i64
        }
        BoundKind::Brightwell { m, n } => 8 * (m as i64 + n as i64 - 1),
    };
    Ok(BoundReport {
        diameter: diam,
        kind,
        bound_value,
        satisfied: (diam as i64) <= bound_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cycle_complex;

    fn face(ids: &[usize]) -> Face {
        Face::of(ids.iter().copied())
    }

    /// Boundary of the triangle: three edges.
    fn triangle_boundary() -> SimplicialComplex {
        cycle_complex(3)
    }

    #[test]
    fn triangle_boundary_is_k3() {
        let g = FacetRidgeGraph::build(&triangle_boundary()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(g.diameter().unwrap(), 1);
    }

    #[test]
    fn hexagon_is_its_own_ridge_graph() {
        let g = FacetRidgeGraph::build(&cycle_complex(6)).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(g.diameter().unwrap(), 3);
        assert_eq!(g.diameter_with_threads(3).unwrap(), 3);
    }

    #[test]
    fn non_pure_rejected() {
        let c = SimplicialComplex::from_facets([face(&[0, 1]), face(&[2])], 3).unwrap();
        assert_eq!(FacetRidgeGraph::build(&c).unwrap_err(), DiameterError::NotPure);
    }

    #[test]
    fn disconnected_reported_with_representatives() {
        let c = SimplicialComplex::from_facets([face(&[0, 1]), face(&[2, 3])], 4).unwrap();
        let g = FacetRidgeGraph::build(&c).unwrap();
        assert!(!g.is_connected());
        match g.diameter().unwrap_err() {
            DiameterError::Disconnected {
                component_a,
                component_b,
            } => {
                assert_eq!(component_a, face(&[0, 1]));
                assert_eq!(component_b, face(&[2, 3]));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn bound_reports() {
        // single 3-simplex: diameter 0, strong bound f_0 − C(4,1) = 0
        let s3 = SimplicialComplex::simplex(face(&[0, 1, 2, 3]), 4).unwrap();
        let r = bound_report(&s3, BoundKind::ProvanBilleraStrong { k: 0 }).unwrap();
        assert_eq!((r.diameter, r.bound_value, r.satisfied), (0, 0, true));

        // hexagon, weak k=0: 2·6 = 12 ≥ 3
        let r = bound_report(&cycle_complex(6), BoundKind::ProvanBilleraWeak { k: 0 }).unwrap();
        assert_eq!((r.diameter, r.bound_value, r.satisfied), (3, 12, true));

        let r = bound_report(
            &cycle_complex(6),
            BoundKind::Hirsch {
                polar_facets: 6,
                dim: 2,
            },
        )
        .unwrap();
        assert_eq!((r.bound_value, r.satisfied), (4, true));

        let r = bound_report(&cycle_complex(6), BoundKind::Brightwell { m: 2, n: 3 }).unwrap();
        assert_eq!((r.bound_value, r.satisfied), (32, true));
    }

    #[test]
    fn dot_export_is_stable() {
        let g = FacetRidgeGraph::build(&triangle_boundary()).unwrap();
        let dot = g.to_dot(None);
        assert_eq!(
            dot,
            "graph facet_ridge {\n  f0 [label=\"0,1\"];\n  f1 [label=\"0,2\"];\n  f2 [label=\"1,2\"];\n  f0 -- f1;\n  f0 -- f2;\n  f1 -- f2;\n}\n"
        );
    }
}
