//! Exact-arithmetic m×n transportation polytopes.
//!
//! P(bm, bn) is the set of nonnegative m×n matrices with prescribed row
//! sums bm and column sums bn (the margins). Everything here is exact
//! rational arithmetic: the feasibility, degeneracy and facet criteria
//! are equality tests that floating point cannot make.
//!
//! Vertices are enumerated through spanning trees of the complete
//! bipartite graph K(m,n): each tree determines a unique solution of
//! the margin equations supported on its edges, and the nonnegative
//! ones are exactly the vertices when the margins are nondegenerate.
//! The polar boundary complex turns each polytope vertex into a facet
//! of a simplicial complex whose vertices are the polytope facets.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex};

pub type Rational = num_rational::Rational64;

/// Instances beyond this many matrix cells are refused; tree counts
/// grow as m^(n−1)·n^(m−1) and desk scale ends quickly.
pub const MAX_CELLS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransportError {
    #[error("margins must be nonempty")]
    EmptyMargins,
    #[error("margins must be positive; {which} margin {index} is {value}")]
    NonPositiveMargin {
        which: &'static str,
        index: usize,
        value: Rational,
    },
    #[error("infeasible margins: row sum {row_sum} != column sum {col_sum}")]
    Infeasible {
        row_sum: Rational,
        col_sum: Rational,
    },
    #[error("degenerate margins: row subset {rows:?} and column subset {cols:?} have equal sums")]
    Degenerate { rows: Vec<usize>, cols: Vec<usize> },
    #[error("not a spanning tree of K({m},{n}): {reason}")]
    NotSpanningTree {
        m: usize,
        n: usize,
        reason: String,
    },
    #[error("degree vector sums to {got}, expected m+n-1 = {expected}")]
    DegreeSumMismatch { got: usize, expected: usize },
    #[error("degree vector entries must be at least 1")]
    DegreeZero,
    #[error("instance has {0} cells, beyond the desk-scale limit {MAX_CELLS}")]
    BeyondDeskScale(usize),
    #[error("simplicity check failed: polytope vertex {vertex} lies on {got} facets, expected {expected}")]
    SimplicityAssertion {
        vertex: usize,
        got: usize,
        expected: usize,
    },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("malformed margins JSON: {0}")]
    Json(String),
}

/// Parses "p/q" or an integer literal.
pub fn parse_rational(s: &str) -> Result<Rational, TransportError> {
    let bad = || TransportError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: i64 = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Canonical rational literal: "p/q", or just "p" for integers.
pub fn format_rational(r: Rational) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Row and column margins of a transportation polytope. All entries
/// are required to be strictly positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Margins {
    row: Vec<Rational>,
    col: Vec<Rational>,
}

impl Margins {
    pub fn new(row: Vec<Rational>, col: Vec<Rational>) -> Result<Self, TransportError> {
        if row.is_empty() || col.is_empty() {
            return Err(TransportError::EmptyMargins);
        }
        for (which, list) in [("row", &row), ("column", &col)] {
            if let Some((index, &value)) = list.iter().enumerate().find(|(_, v)| !v.is_positive())
            {
                return Err(TransportError::NonPositiveMargin {
                    which,
                    index,
                    value,
                });
            }
        }
        Ok(Margins { row, col })
    }

    pub fn from_integers(row: &[i64], col: &[i64]) -> Result<Self, TransportError> {
        Self::new(
            row.iter().map(|&r| Rational::from_integer(r)).collect(),
            col.iter().map(|&c| Rational::from_integer(c)).collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.row.len()
    }

    pub fn n(&self) -> usize {
        self.col.len()
    }

    pub fn row(&self) -> &[Rational] {
        &self.row
    }

    pub fn col(&self) -> &[Rational] {
        &self.col
    }

    pub fn row_total(&self) -> Rational {
        self.row.iter().sum()
    }

    pub fn col_total(&self) -> Rational {
        self.col.iter().sum()
    }

    /// The polytope is nonempty iff the two totals agree.
    pub fn is_feasible(&self) -> bool {
        self.row_total() == self.col_total()
    }

    /// First pair of proper subsets with equal sums, scanning bitmasks
    /// in ascending order; `None` means nondegenerate.
    pub fn degeneracy_witness(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let (m, n) = (self.m(), self.n());
        if m > 20 || n > 20 {
            // degeneracy_witness is only called behind the cell cap
            panic!("degeneracy scan beyond desk scale");
        }
        let subset_sums = |vals: &[Rational]| -> Vec<Rational> {
            let mut sums = vec![Rational::zero(); 1 << vals.len()];
            for mask in 1..sums.len() {
                let low = mask.trailing_zeros() as usize;
                sums[mask] = sums[mask & (mask - 1)] + vals[low];
            }
            sums
        };
        let row_sums = subset_sums(&self.row);
        let col_sums = subset_sums(&self.col);
        for mm in 1..((1usize << m) - 1).max(1) {
            for nn in 1..((1usize << n) - 1).max(1) {
                if row_sums[mm] == col_sums[nn] {
                    let rows = (0..m).filter(|i| mm >> i & 1 == 1).collect();
                    let cols = (0..n).filter(|j| nn >> j & 1 == 1).collect();
                    return Some((rows, cols));
                }
            }
        }
        None
    }

    /// Errors with the witness when the margins are infeasible or
    /// degenerate.
    pub fn check_nondegenerate(&self) -> Result<(), TransportError> {
        if !self.is_feasible() {
            return Err(TransportError::Infeasible {
                row_sum: self.row_total(),
                col_sum: self.col_total(),
            });
        }
        match self.degeneracy_witness() {
            None => Ok(()),
            Some((rows, cols)) => Err(TransportError::Degenerate { rows, cols }),
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.is_feasible() && self.degeneracy_witness().is_none()
    }

    fn check_desk_scale(&self) -> Result<(), TransportError> {
        let cells = self.m() * self.n();
        if cells > MAX_CELLS {
            return Err(TransportError::BeyondDeskScale(cells));
        }
        Ok(())
    }

    /// Canonical margins JSON with rational string entries.
    pub fn to_json(&self) -> String {
        let doc = serde_json::json!({
            "row": self.row.iter().map(|r| format_rational(*r)).collect::<Vec<_>>(),
            "col": self.col.iter().map(|c| format_rational(*c)).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("margins serialization");
        s.push('\n');
        s
    }

    /// Accepts rational strings and integer shorthand in either list.
    pub fn from_json(s: &str) -> Result<Self, TransportError> {
        #[derive(serde::Deserialize)]
        struct Doc {
            row: Vec<serde_json::Value>,
            col: Vec<serde_json::Value>,
        }
        let doc: Doc = serde_json::from_str(s).map_err(|e| TransportError::Json(e.to_string()))?;
        let parse_list = |vals: &[serde_json::Value]| -> Result<Vec<Rational>, TransportError> {
            vals.iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => parse_rational(s),
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(Rational::from_integer)
                        .ok_or_else(|| TransportError::BadRational(n.to_string())),
                    other => Err(TransportError::BadRational(other.to_string())),
                })
                .collect()
        };
        Margins::new(parse_list(&doc.row)?, parse_list(&doc.col)?)
    }
}

/// The margins bm = m·bd − (m+1)·1 and bn = m·1 associated with a
/// degree vector bd. The two totals never agree (they differ by 2m),
/// so feasibility must be checked by the caller and will fail; the
/// formula is reproduced as printed rather than repaired.
pub fn balinski_margins(degrees: &DegreeVector, n: usize) -> Result<Margins, TransportError> {
    let m = degrees.len();
    let m_rat = Rational::from_integer(m as i64);
    let row: Vec<Rational> = degrees
        .degrees()
        .iter()
        .map(|&d| m_rat * Rational::from_integer(d as i64) - Rational::from_integer(m as i64 + 1))
        .collect();
    let col = vec![m_rat; n];
    Margins::new(row, col)
}

/// Prescribed row degrees for spanning trees, each at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVector(Vec<usize>);

impl DegreeVector {
    pub fn new(degrees: Vec<usize>) -> Result<Self, TransportError> {
        if degrees.iter().any(|&d| d == 0) {
            return Err(TransportError::DegreeZero);
        }
        Ok(DegreeVector(degrees))
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

/// A point of the polytope with its positive-entry support. For
/// nondegenerate margins the support of a vertex is a spanning tree of
/// K(m,n); degenerate solves may shrink to a forest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TransportVertex {
    m: usize,
    n: usize,
    entries: Vec<Rational>, // row-major
}

impl TransportVertex {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, mu: usize, nu: usize) -> Rational {
        self.entries[mu * self.n + nu]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Edges of K(m,n) carrying positive weight, in (row, col) order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for mu in 0..self.m {
            for nu in 0..self.n {
                if self.entry(mu, nu).is_positive() {
                    out.push((mu, nu));
                }
            }
        }
        out
    }

    /// Cells with value exactly zero, in (row, col) order.
    pub fn zero_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for mu in 0..self.m {
            for nu in 0..self.n {
                if self.entry(mu, nu).is_zero() {
                    out.push((mu, nu));
                }
            }
        }
        out
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.m)
            .map(|mu| (0..self.n).map(|nu| self.entry(mu, nu)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<Rational> {
        (0..self.n)
            .map(|nu| (0..self.m).map(|mu| self.entry(mu, nu)).sum())
            .collect()
    }

    /// Matrix of rational strings, for JSON dumps.
    pub fn to_string_matrix(&self) -> Vec<Vec<String>> {
        (0..self.m)
            .map(|mu| {
                (0..self.n)
                    .map(|nu| format_rational(self.entry(mu, nu)))
                    .collect()
            })
            .collect()
    }
}

/// Outcome of solving the margin equations on one spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeSolve {
    Vertex(TransportVertex),
    /// The unique tree solution has a negative entry, so the tree is
    /// not the support of any point of the polytope.
    Infeasible {
        edge: (usize, usize),
        value: Rational,
    },
}

fn validate_spanning_tree(
    m: usize,
    n: usize,
    edges: &[(usize, usize)],
) -> Result<(), TransportError> {
    let fail = |reason: &str| TransportError::NotSpanningTree {
        m,
        n,
        reason: reason.to_string(),
    };
    if edges.len() != m + n - 1 {
        return Err(fail(&format!(
            "expected {} edges, got {}",
            m + n - 1,
            edges.len()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    let mut dsu = Dsu::new(m + n);
    for &(mu, nu) in edges {
        if mu >= m || nu >= n {
            return Err(fail(&format!("edge ({mu},{nu}) out of range")));
        }
        if !seen.insert((mu, nu)) {
            return Err(fail(&format!("duplicate edge ({mu},{nu})")));
        }
        if !dsu.union(mu, m + nu) {
            return Err(fail(&format!("edge ({mu},{nu}) closes a cycle")));
        }
    }
    Ok(())
}

/// Solves the uniquely determined linear system on a spanning tree by
/// leaf elimination, exactly.
pub fn vertex_from_tree(
    margins: &Margins,
    edges: &[(usize, usize)],
) -> Result<TreeSolve, TransportError> {
    let (m, n) = (margins.m(), margins.n());
    if !margins.is_feasible() {
        return Err(TransportError::Infeasible {
            row_sum: margins.row_total(),
            col_sum: margins.col_total(),
        });
    }
    validate_spanning_tree(m, n, edges)?;

    // nodes 0..m are rows, m..m+n are columns
    let node_count = m + n;
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for (e, &(mu, nu)) in edges.iter().enumerate() {
        adjacency[mu].push(e);
        adjacency[m + nu].push(e);
    }
    let mut remaining: Vec<Rational> = margins
        .row
        .iter()
        .chain(margins.col.iter())
        .copied()
        .collect();
    let mut degree: Vec<usize> = adjacency.iter().map(|a| a.len()).collect();
    let mut edge_done = vec![false; edges.len()];
    let mut value = vec![Rational::zero(); edges.len()];
    let mut queue: VecDeque<usize> = (0..node_count).filter(|&v| degree[v] == 1).collect();

    while let Some(leaf) = queue.pop_front() {
        if degree[leaf] != 1 {
            continue;
        }
        let &e = adjacency[leaf]
            .iter()
            .find(|&&e| !edge_done[e])
            .expect("leaf has one live edge");
        let (mu, nu) = edges[e];
        let other = if leaf < m { m + nu } else { mu };
        let carried = remaining[leaf];
        value[e] = carried;
        remaining[other] -= carried;
        remaining[leaf] = Rational::zero();
        edge_done[e] = true;
        degree[leaf] -= 1;
        degree[other] -= 1;
        if degree[other] == 1 {
            queue.push_back(other);
        }
    }
    debug_assert!(edge_done.iter().all(|&d| d));
    debug_assert!(remaining.iter().all(|r| r.is_zero()));

    let mut entries = vec![Rational::zero(); m * n];
    for (e, &(mu, nu)) in edges.iter().enumerate() {
        entries[mu * n + nu] = value[e];
    }
    // first negative entry in (row, col) order, if any
    for mu in 0..m {
        for nu in 0..n {
            let v = entries[mu * n + nu];
            if v.is_negative() {
                return Ok(TreeSolve::Infeasible {
                    edge: (mu, nu),
                    value: v,
                });
            }
        }
    }
    Ok(TreeSolve::Vertex(TransportVertex { m, n, entries }))
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when both endpoints were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// All spanning trees of K(m,n) by recursive include/exclude over the
/// lexicographic edge order, with cycle and connectivity pruning.
/// Trees are emitted in lexicographic order of their edge sets.
pub fn spanning_trees(m: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = (0..m)
        .flat_map(|mu| (0..n).map(move |nu| (mu, nu)))
        .collect();
    let needed = m + n - 1;
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(needed);

    fn connects(m: usize, n: usize, chosen: &[(usize, usize)], rest: &[(usize, usize)]) -> bool {
        let mut dsu = Dsu::new(m + n);
        let mut parts = m + n;
        for &(mu, nu) in chosen.iter().chain(rest.iter()) {
            if dsu.union(mu, m + nu) {
                parts -= 1;
            }
        }
        parts == 1
    }

    fn recurse(
        m: usize,
        n: usize,
        edges: &[(usize, usize)],
        at: usize,
        needed: usize,
        dsu: &Dsu,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if chosen.len() == needed {
            out.push(chosen.clone());
            return;
        }
        if at == edges.len() || chosen.len() + (edges.len() - at) < needed {
            return;
        }
        let (mu, nu) = edges[at];
        // include, unless it closes a cycle
        let mut with = Dsu {
            parent: dsu.parent.clone(),
        };
        if with.union(mu, m + nu) {
            chosen.push((mu, nu));
            recurse(m, n, edges, at + 1, needed, &with, chosen, out);
            chosen.pop();
        }
        // exclude, unless that disconnects the remaining graph
        if connects(m, n, chosen, &edges[at + 1..]) {
            recurse(m, n, edges, at + 1, needed, dsu, chosen, out);
        }
    }

    recurse(
        m,
        n,
        &edges,
        0,
        needed,
        &Dsu::new(m + n),
        &mut chosen,
        &mut out,
    );
    out
}

/// Spanning trees whose row-side degrees match the prescribed vector.
pub fn spanning_trees_with_row_degrees(
    m: usize,
    n: usize,
    degrees: &DegreeVector,
) -> Result<Vec<Vec<(usize, usize)>>, TransportError> {
    if degrees.len() != m {
        return Err(TransportError::DegreeSumMismatch {
            got: degrees.len(),
            expected: m,
        });
    }
    if degrees.sum() != m + n - 1 {
        return Err(TransportError::DegreeSumMismatch {
            got: degrees.sum(),
            expected: m + n - 1,
        });
    }
    Ok(spanning_trees(m, n)
        .into_iter()
        .filter(|tree| {
            let mut row_deg = vec![0usize; m];
            for &(mu, _) in tree {
                row_deg[mu] += 1;
            }
            row_deg == degrees.degrees()
        })
        .collect())
}

/// All vertices of P(bm, bn) for feasible nondegenerate margins, in a
/// deterministic order (sorted by matrix entries).
pub fn enumerate_vertices(margins: &Margins) -> Result<Vec<TransportVertex>, TransportError> {
    margins.check_desk_scale()?;
    margins.check_nondegenerate()?;
    let mut vertices = Vec::new();
    for tree in spanning_trees(margins.m(), margins.n()) {
        if let TreeSolve::Vertex(v) = vertex_from_tree(margins, &tree)? {
            vertices.push(v);
        }
    }
    let before = vertices.len();
    vertices.sort_unstable();
    vertices.dedup();
    // distinct trees cannot produce the same matrix under non-degeneracy
    debug_assert_eq!(before, vertices.len());
    Ok(vertices)
}

/// Rank of the affine hull of a point set, via exact Gaussian
/// elimination on difference vectors. Empty input has dimension −1.
fn affine_dim(points: &[&TransportVertex]) -> i64 {
    match points.split_first() {
        None => -1,
        Some((base, rest)) => {
            let width = base.entries.len();
            let mut rows: Vec<Vec<Rational>> = rest
                .iter()
                .map(|p| {
                    (0..width)
                        .map(|i| p.entries[i] - base.entries[i])
                        .collect()
                })
                .collect();
            let mut rank = 0usize;
            for col in 0..width {
                let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                    continue;
                };
                rows.swap(rank, pivot);
                let head = rows[rank][col];
                for r in rank + 1..rows.len() {
                    if !rows[r][col].is_zero() {
                        let factor = rows[r][col] / head;
                        for c in col..width {
                            let sub = factor * rows[rank][c];
                            rows[r][c] -= sub;
                        }
                    }
                }
                rank += 1;
                if rank == rows.len() {
                    break;
                }
            }
            rank as i64
        }
    }
}

/// Cells (μ,ν) whose vanishing locus is a facet of P(bm,bn). For
/// mn > 4 the margin criterion bmμ + bnν < total applies; the small
/// cases fall back to an affine-dimension test on the incident
/// vertices.
pub fn enumerate_facets(margins: &Margins) -> Result<Vec<(usize, usize)>, TransportError> {
    margins.check_desk_scale()?;
    margins.check_nondegenerate()?;
    let (m, n) = (margins.m(), margins.n());
    if m * n > 4 {
        let total = margins.row_total();
        let mut out = Vec::new();
        for mu in 0..m {
            for nu in 0..n {
                if margins.row[mu] + margins.col[nu] < total {
                    out.push((mu, nu));
                }
            }
        }
        return Ok(out);
    }
    // Small cases: F(μ,ν) is a facet iff its incident vertices span an
    // affine space of dimension dim−1 and the face is proper.
    let vertices = enumerate_vertices(margins)?;
    let dim = ((m - 1) * (n - 1)) as i64;
    let mut out = Vec::new();
    for mu in 0..m {
        for nu in 0..n {
            let on: Vec<&TransportVertex> = vertices
                .iter()
                .filter(|v| v.entry(mu, nu).is_zero())
                .collect();
            if !on.is_empty() && on.len() < vertices.len() && affine_dim(&on) == dim - 1 {
                out.push((mu, nu));
            }
        }
    }
    Ok(out)
}

/// The boundary complex of the polar polytope of a simple P(bm,bn):
/// one complex vertex per polytope facet, one complex facet per
/// polytope vertex (the facets through it).
#[derive(Clone, Debug)]
pub struct PolarComplex {
    pub complex: SimplicialComplex,
    /// Complex vertex i corresponds to the polytope facet at this cell.
    pub facet_labels: Vec<(usize, usize)>,
}

impl PolarComplex {
    /// Display labels "F(μ,ν)" with 1-based indices.
    pub fn label_strings(&self) -> Vec<String> {
        self.facet_labels
            .iter()
            .map(|&(mu, nu)| format!("F({},{})", mu + 1, nu + 1))
            .collect()
    }
}

pub fn polar_boundary_complex(margins: &Margins) -> Result<PolarComplex, TransportError> {
    let facet_labels = enumerate_facets(margins)?;
    let vertices = enumerate_vertices(margins)?;
    let index_of = |cell: (usize, usize)| facet_labels.iter().position(|&c| c == cell);
    let expected = (margins.m() - 1) * (margins.n() - 1);
    let mut complex_facets = Vec::with_capacity(vertices.len());
    for (vi, v) in vertices.iter().enumerate() {
        let mut face = Face::EMPTY;
        let mut got = 0usize;
        for cell in v.zero_cells() {
            if let Some(i) = index_of(cell) {
                face = face.insert(crate::complex::VertexId(i as u32));
                got += 1;
            }
        }
        if got != expected {
            return Err(TransportError::SimplicityAssertion {
                vertex: vi,
                got,
                expected,
            });
        }
        complex_facets.push(face);
    }
    let complex = SimplicialComplex::from_facets(complex_facets, facet_labels.len())
        .expect("polar facet ids are in range");
    debug_assert_eq!(complex.facet_count(), vertices.len());
    Ok(PolarComplex {
        complex,
        facet_labels,
    })
}

/// Whether every spanning tree with the prescribed row degrees is the
/// support of a vertex; the first failing tree is the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignatureVerdict {
    Signature {
        trees_checked: usize,
    },
    NotSignature {
        tree: Vec<(usize, usize)>,
        edge: (usize, usize),
        value: Rational,
    },
}

pub fn is_signature_polytope(
    margins: &Margins,
    degrees: &DegreeVector,
) -> Result<SignatureVerdict, TransportError> {
    margins.check_desk_scale()?;
    if !margins.is_feasible() {
        return Err(TransportError::Infeasible {
            row_sum: margins.row_total(),
            col_sum: margins.col_total(),
        });
    }
    let trees = spanning_trees_with_row_degrees(margins.m(), margins.n(), degrees)?;
    let count = trees.len();
    for tree in trees {
        if let TreeSolve::Infeasible { edge, value } = vertex_from_tree(margins, &tree)? {
            return Ok(SignatureVerdict::NotSignature { tree, edge, value });
        }
    }
    Ok(SignatureVerdict::Signature {
        trees_checked: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn rational_parsing_and_formatting() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("6/4").unwrap(), Rational::new(3, 2));
        assert_eq!(format_rational(Rational::new(3, 2)), "3/2");
        assert_eq!(format_rational(rat(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn margins_require_positive_entries() {
        assert!(matches!(
            Margins::from_integers(&[2, 0], &[1, 1]),
            Err(TransportError::NonPositiveMargin { .. })
        ));
        assert!(matches!(
            Margins::from_integers(&[], &[1]),
            Err(TransportError::EmptyMargins)
        ));
    }

    #[test]
    fn feasibility_examples() {
        assert!(Margins::from_integers(&[2, 2], &[1, 1, 2]).unwrap().is_feasible());
        assert!(Margins::from_integers(&[3, 3], &[2, 2, 2]).unwrap().is_feasible());
        assert!(!Margins::from_integers(&[1, 2], &[1, 1, 2]).unwrap().is_feasible());
    }

    #[test]
    fn degeneracy_witness_examples() {
        let m = Margins::from_integers(&[2, 2], &[2, 2]).unwrap();
        assert_eq!(m.degeneracy_witness(), Some((vec![0], vec![0])));

        assert!(Margins::from_integers(&[3, 3], &[2, 2, 2]).unwrap().is_nondegenerate());
        assert!(Margins::from_integers(&[5, 5], &[2, 2, 2, 2, 2])
            .unwrap()
            .is_nondegenerate());
    }

    #[test]
    fn infeasible_margins_rejected_by_nondegeneracy_check() {
        let m = Margins::from_integers(&[1, 2], &[1, 1, 2]).unwrap();
        assert!(matches!(
            m.check_nondegenerate(),
            Err(TransportError::Infeasible { .. })
        ));
    }

    #[test]
    fn tree_solve_spec_instances() {
        let m = Margins::from_integers(&[3, 3], &[2, 2, 2]).unwrap();
        // 1-based tree {(1,1),(1,2),(2,2),(2,3)}
        let solve = vertex_from_tree(&m, &[(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap();
        match solve {
            TreeSolve::Vertex(v) => {
                assert_eq!(v.entry(0, 0), rat(2));
                assert_eq!(v.entry(0, 1), rat(1));
                assert_eq!(v.entry(1, 1), rat(1));
                assert_eq!(v.entry(1, 2), rat(2));
                assert_eq!(v.entry(0, 2), rat(0));
                assert_eq!(v.row_sums(), vec![rat(3), rat(3)]);
                assert_eq!(v.col_sums(), vec![rat(2), rat(2), rat(2)]);
            }
            other => panic!("expected vertex, got {other:?}"),
        }

        // 1-based tree {(1,1),(1,2),(1,3),(2,3)} forces x13 = −1
        let solve = vertex_from_tree(&m, &[(0, 0), (0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(
            solve,
            TreeSolve::Infeasible {
                edge: (0, 2),
                value: rat(-1)
            }
        );
    }

    #[test]
    fn degenerate_tree_solve_shrinks_support() {
        let m = Margins::from_integers(&[1, 1], &[1, 1]).unwrap();
        let solve = vertex_from_tree(&m, &[(0, 0), (1, 1), (0, 1)]).unwrap();
        match solve {
            TreeSolve::Vertex(v) => {
                assert_eq!(v.entry(0, 0), rat(1));
                assert_eq!(v.entry(1, 1), rat(1));
                assert_eq!(v.entry(0, 1), rat(0));
                assert_eq!(v.support(), vec![(0, 0), (1, 1)]);
            }
            other => panic!("expected vertex, got {other:?}"),
        }
    }

    #[test]
    fn tree_validation_rejects_bad_inputs() {
        let m = Margins::from_integers(&[3, 3], &[2, 2, 2]).unwrap();
        assert!(matches!(
            vertex_from_tree(&m, &[(0, 0), (0, 1)]),
            Err(TransportError::NotSpanningTree { .. })
        ));
        assert!(matches!(
            vertex_from_tree(&m, &[(0, 0), (0, 1), (1, 0), (1, 1)]),
            Err(TransportError::NotSpanningTree { .. })
        ));
    }

    #[test]
    fn spanning_tree_counts_match_formula() {
        // m^(n−1) · n^(m−1)
        assert_eq!(spanning_trees(2, 3).len(), 12);
        assert_eq!(spanning_trees(3, 3).len(), 81);
        assert_eq!(spanning_trees(2, 5).len(), 80);
    }

    #[test]
    fn vertex_enumeration_counts() {
        let hexagon = Margins::from_integers(&[3, 3], &[2, 2, 2]).unwrap();
        assert_eq!(enumerate_vertices(&hexagon).unwrap().len(), 6);

        let delta22 = Margins::from_integers(&[5, 5], &[2, 2, 2, 2, 2]).unwrap();
        assert_eq!(enumerate_vertices(&delta22).unwrap().len(), 30);

        let delta21 = Margins::from_integers(&[5, 3], &[2, 2, 2, 2]).unwrap();
        assert_eq!(enumerate_vertices(&delta21).unwrap().len(), 12);
    }

    #[test]
    fn vertex_enumeration_rejects_degenerate_margins() {
        let m = Margins::from_integers(&[2, 2], &[2, 2]).unwrap();
        assert!(matches!(
            enumerate_vertices(&m),
            Err(TransportError::Degenerate { .. })
        ));
    }

    #[test]
    fn facet_criterion_large_cases() {
        let delta22 = Margins::from_integers(&[5, 5], &[2, 2, 2, 2, 2]).unwrap();
        assert_eq!(enumerate_facets(&delta22).unwrap().len(), 10);

        let hexagon = Margins::from_integers(&[3, 3], &[2, 2, 2]).unwrap();
        assert_eq!(enumerate_facets(&hexagon).unwrap().len(), 6);
    }

    #[test]
    fn facet_fallback_small_case() {
        // 2×2 with margins (1,3),(2,2): a segment whose endpoints are
        // the solves with x11 = 0 and x12 = 0, so exactly the two
        // row-1 cells give facets
        let m = Margins::from_integers(&[1, 3], &[2, 2]).unwrap();
        assert!(m.is_nondegenerate());
        assert_eq!(enumerate_vertices(&m).unwrap().len(), 2);
        assert_eq!(enumerate_facets(&m).unwrap(), vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn polar_complex_of_hexagon_margins() {
        let m = Margins::from_integers(&[3, 3], &[2, 2, 2]).unwrap();
        let polar = polar_boundary_complex(&m).unwrap();
        assert_eq!(polar.complex.vertex_count(), 6);
        assert_eq!(polar.complex.facet_count(), 6);
        assert_eq!(polar.complex.dimension(), Some(1));
        assert!(polar.complex.is_pure());
        assert_eq!(
            polar.label_strings(),
            vec!["F(1,1)", "F(1,2)", "F(1,3)", "F(2,1)", "F(2,2)", "F(2,3)"]
        );
    }

    #[test]
    fn signature_examples() {
        let m = Margins::from_integers(&[3, 3], &[2, 2, 2]).unwrap();
        let d = DegreeVector::new(vec![2, 2]).unwrap();
        assert_eq!(
            is_signature_polytope(&m, &d).unwrap(),
            SignatureVerdict::Signature { trees_checked: 6 }
        );

        let skew = Margins::from_integers(&[5, 1], &[2, 2, 2]).unwrap();
        match is_signature_polytope(&skew, &d).unwrap() {
            SignatureVerdict::NotSignature { value, .. } => assert!(value.is_negative()),
            other => panic!("expected failure witness, got {other:?}"),
        }

        // row degrees (3,1): the single row-2 edge must carry the whole
        // row-2 margin 3, exceeding its column's demand 2
        let d31 = DegreeVector::new(vec![3, 1]).unwrap();
        let trees = spanning_trees_with_row_degrees(2, 3, &d31).unwrap();
        assert_eq!(trees.len(), 3);
        for tree in &trees {
            match vertex_from_tree(&m, tree).unwrap() {
                TreeSolve::Infeasible { value, .. } => assert_eq!(value, rat(-1)),
                other => panic!("expected infeasible solve, got {other:?}"),
            }
        }
        assert!(matches!(
            is_signature_polytope(&m, &d31).unwrap(),
            SignatureVerdict::NotSignature { .. }
        ));
    }

    #[test]
    fn degree_vector_validation() {
        assert!(matches!(
            DegreeVector::new(vec![2, 0]),
            Err(TransportError::DegreeZero)
        ));
        let d = DegreeVector::new(vec![2, 1]).unwrap();
        assert!(matches!(
            spanning_trees_with_row_degrees(2, 3, &d),
            Err(TransportError::DegreeSumMismatch { got: 3, expected: 4 })
        ));
    }

    #[test]
    fn balinski_margins_are_always_infeasible_as_printed() {
        let d = DegreeVector::new(vec![3, 2]).unwrap(); // m=2, n=4: sum = 5 = m+n−1
        let margins = balinski_margins(&d, 4).unwrap();
        assert_eq!(margins.row(), &[rat(3), rat(1)]);
        assert_eq!(margins.col(), &[rat(2), rat(2), rat(2), rat(2)]);
        assert!(!margins.is_feasible());

        // degree-1 rows make a nonpositive margin, surfaced as an error
        let d = DegreeVector::new(vec![1, 4]).unwrap();
        assert!(matches!(
            balinski_margins(&d, 4),
            Err(TransportError::NonPositiveMargin { .. })
        ));
    }

    #[test]
    fn desk_scale_cap_enforced() {
        let m = Margins::from_integers(&[5; 5], &[5; 5]).unwrap();
        assert!(matches!(
            enumerate_vertices(&m),
            Err(TransportError::BeyondDeskScale(25))
        ));
    }

    #[test]
    fn margins_json_round_trip() {
        let m = Margins::new(
            vec![Rational::new(3, 2), rat(3)],
            vec![Rational::new(3, 2), rat(1), rat(2)],
        )
        .unwrap();
        let s = m.to_json();
        let back = Margins::from_json(&s).unwrap();
        assert_eq!(back, m);
        // integer shorthand accepted
        let short = Margins::from_json(r#"{"row":[3,3],"col":["2","2",2]}"#).unwrap();
        assert_eq!(short, Margins::from_integers(&[3, 3], &[2, 2, 2]).unwrap());
    }
}
