//! Simplicial complexes stored by their facet lists.
//!
//! Vertices are small integer ids. A face is a bit set over at most 64
//! vertices, so subset and intersection tests are single word
//! operations; this dominates the search workloads elsewhere in the
//! crate. A complex keeps only its inclusion-maximal faces (facets) in
//! a canonical sorted order; the downward closure is implicit.
//!
//! Conventions: the empty face (dimension −1) is a face of every
//! non-void complex, and the complex whose only facet is the empty face
//! is the (−1)-simplex. A complex with no faces at all is void.
//! Deleted vertices keep their ids; the vertex table is never
//! compacted.

use std::collections::HashSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Hard cap on vertices per complex so that faces fit in one word.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("a complex supports at most {MAX_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("facet {face} references vertex {vertex} outside 0..{vertex_count}")]
    VertexOutOfRange {
        face: Face,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("{0} is not a face of the complex")]
    FaceNotPresent(Face),
    #[error("face dimension {k} is outside -1..={max}")]
    DimensionOutOfRange { k: i32, max: i32 },
    #[error("the void complex has no faces to count")]
    Void,
    #[error("vertex label list has {labels} entries for {vertex_count} vertices")]
    LabelCountMismatch { labels: usize, vertex_count: usize },
    #[error("malformed complex JSON: {0}")]
    Json(String),
}

/// Index into a complex's vertex table.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexId(v as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A face: a finite vertex set in canonical (ascending) order, stored
/// as a bit set.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    /// Builds a face from vertex ids. Duplicates collapse; ids must be
    /// below [`MAX_VERTICES`].
    pub fn of<I>(vertices: I) -> Face
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u64;
        for v in vertices {
            assert!(v < MAX_VERTICES, "vertex id {v} exceeds the word width");
            bits |= 1u64 << v;
        }
        Face(bits)
    }

    pub fn from_bits(bits: u64) -> Face {
        Face(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Dimension is cardinality − 1; the empty face has dimension −1.
    pub fn dim(self) -> i32 {
        self.cardinality() as i32 - 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 & (1u64 << v.0) != 0
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn minus(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn insert(self, v: VertexId) -> Face {
        Face(self.0 | (1u64 << v.0))
    }

    pub fn remove(self, v: VertexId) -> Face {
        Face(self.0 & !(1u64 << v.0))
    }

    /// Vertices in ascending order.
    pub fn vertices(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                Some(VertexId(v))
            }
        })
    }

    pub fn vertex_vec(self) -> Vec<usize> {
        self.vertices().map(|v| v.index()).collect()
    }

    /// Applies a vertex permutation given as `perm[old] = new`.
    pub fn permute(self, perm: &[usize]) -> Face {
        let mut bits = 0u64;
        for v in self.vertices() {
            bits |= 1u64 << perm[v.index()];
        }
        Face(bits)
    }
}

impl Ord for Face {
    /// Lexicographic order on the ascending vertex lists, with a proper
    /// prefix sorting first. This is the canonical output order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let mut a = self.0;
        let mut b = other.0;
        while a != 0 && b != 0 {
            let la = a.trailing_zeros();
            let lb = b.trailing_zeros();
            match la.cmp(&lb) {
                std::cmp::Ordering::Equal => {
                    a &= a - 1;
                    b &= b - 1;
                }
                ord => return ord,
            }
        }
        a.count_ones().cmp(&b.count_ones())
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.vertex_vec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        for &v in &ids {
            if v >= MAX_VERTICES {
                return Err(D::Error::custom(format!(
                    "vertex id {v} exceeds the {MAX_VERTICES}-vertex cap"
                )));
            }
        }
        Ok(Face::of(ids))
    }
}

/// Rank of a vertex set: the largest cardinality of a face inside it,
/// with one witness face; corank is the deficit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub corank: usize,
    pub witness: Face,
}

/// A simplicial complex given by its inclusion-maximal faces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Face>,
}

/// Keeps the inclusion-maximal elements, deduplicated, in canonical
/// face order.
fn inclusion_maximal(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by_key(|f| std::cmp::Reverse(f.cardinality()));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|k| f.is_subset_of(*k) && f != *k) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept.dedup();
    kept
}

impl SimplicialComplex {
    /// Builds a complex from a facet list: the inclusion-maximal
    /// elements are kept, canonically sorted. Deterministic for any
    /// input order. An empty facet list yields the void complex.
    pub fn from_facets<I>(facets: I, vertex_count: usize) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Face>,
    {
        if vertex_count > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(vertex_count));
        }
        let facets: Vec<Face> = facets.into_iter().collect();
        for &f in &facets {
            if let Some(v) = f.vertices().find(|v| v.index() >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange {
                    face: f,
                    vertex: v.index(),
                    vertex_count,
                });
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            facets: inclusion_maximal(facets),
        })
    }

    /// The full simplex on the given vertex set.
    pub fn simplex(vertices: Face, vertex_count: usize) -> Result<Self, ComplexError> {
        Self::from_facets([vertices], vertex_count)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// `None` for the void complex.
    pub fn dimension(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.dim()).max()
    }

    /// True when every facet has the top dimension. The void complex
    /// and the (−1)-simplex are pure.
    pub fn is_pure(&self) -> bool {
        match self.dimension() {
            None => true,
            Some(d) => self.facets.iter().all(|f| f.dim() == d),
        }
    }

    /// A single facet together with its implicit closure.
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// No faces at all, not even the empty face.
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Union of all facets: the vertices actually in use.
    pub fn vertex_support(&self) -> Face {
        self.facets
            .iter()
            .fold(Face::EMPTY, |acc, &f| acc.union(f))
    }

    /// Face membership; the empty face is in every non-void complex.
    pub fn contains_face(&self, f: Face) -> bool {
        self.facets.iter().any(|&g| f.is_subset_of(g))
    }

    /// Deletion: the faces not containing `tau`, as a complex over the
    /// same vertex table.
    pub fn deletion(&self, tau: Face) -> Result<Self, ComplexError> {
        if !self.contains_face(tau) {
            return Err(ComplexError::FaceNotPresent(tau));
        }
        let mut candidates = Vec::with_capacity(self.facets.len());
        for &f in &self.facets {
            if !tau.is_subset_of(f) {
                candidates.push(f);
            } else {
                for t in tau.vertices() {
                    candidates.push(f.remove(t));
                }
            }
        }
        Ok(SimplicialComplex {
            vertex_count: self.vertex_count,
            facets: inclusion_maximal(candidates),
        })
    }

    /// Link: the faces disjoint from `tau` whose union with `tau` is a
    /// face, as a complex over the same vertex table.
    pub fn link(&self, tau: Face) -> Result<Self, ComplexError> {
        if !self.contains_face(tau) {
            return Err(ComplexError::FaceNotPresent(tau));
        }
        let candidates: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| tau.is_subset_of(**f))
            .map(|f| f.minus(tau))
            .collect();
        Ok(SimplicialComplex {
            vertex_count: self.vertex_count,
            facets: inclusion_maximal(candidates),
        })
    }

    /// Rank, corank and a witness for a vertex set. Every face inside
    /// `s` lies in some facet, so the maximum of `|facet ∩ s|` over
    /// facets is exactly the rank.
    pub fn rank_of(&self, s: Face) -> RankResult {
        let mut witness = Face::EMPTY;
        for &f in &self.facets {
            let cut = f.intersection(s);
            if cut.cardinality() > witness.cardinality() {
                witness = cut;
            }
        }
        let rank = witness.cardinality();
        RankResult {
            rank,
            corank: s.cardinality() - rank,
            witness,
        }
    }

    /// Number of k-dimensional faces, by closure enumeration with a
    /// deduplicating set. `k` ranges over −1..=dim.
    pub fn f_count(&self, k: i32) -> Result<u64, ComplexError> {
        let dim = self.dimension().ok_or(ComplexError::Void)?;
        if k < -1 || k > dim {
            return Err(ComplexError::DimensionOutOfRange { k, max: dim });
        }
        if k == -1 {
            return Ok(1);
        }
        Ok(self.faces_of_size(k as usize + 1).len() as u64)
    }

    /// All distinct faces with `size` vertices, canonically sorted.
    pub fn faces_of_size(&self, size: usize) -> Vec<Face> {
        let mut seen: HashSet<Face> = HashSet::new();
        for &f in &self.facets {
            let verts = f.vertex_vec();
            crate::comb::for_each_index_subset(verts.len(), size, |idx| {
                seen.insert(Face::of(idx.iter().map(|&i| verts[i])));
            });
        }
        let mut out: Vec<Face> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Renames vertices via `perm[old] = new`; facet order is
    /// re-canonicalized.
    pub fn permute_vertices(&self, perm: &[usize]) -> Self {
        let mut facets: Vec<Face> = self.facets.iter().map(|f| f.permute(perm)).collect();
        facets.sort_unstable();
        SimplicialComplex {
            vertex_count: self.vertex_count,
            facets,
        }
    }

    /// Canonical JSON document, with facets as ascending id lists in
    /// lexicographic order (bit-exact across runs).
    pub fn to_json(&self, labels: Option<&[String]>) -> Result<String, ComplexError> {
        if let Some(l) = labels {
            if l.len() != self.vertex_count {
                return Err(ComplexError::LabelCountMismatch {
                    labels: l.len(),
                    vertex_count: self.vertex_count,
                });
            }
        }
        let doc = ComplexJson {
            vertex_count: self.vertex_count,
            vertex_labels: labels.map(|l| l.to_vec()),
            facets: self.facets.iter().map(|f| f.vertex_vec()).collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("complex serialization");
        s.push('\n');
        Ok(s)
    }

    /// Parses the JSON document format; returns the complex and any
    /// vertex labels it carried.
    pub fn from_json(s: &str) -> Result<(Self, Option<Vec<String>>), ComplexError> {
        let doc: ComplexJson =
            serde_json::from_str(s).map_err(|e| ComplexError::Json(e.to_string()))?;
        if doc.vertex_count > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(doc.vertex_count));
        }
        if let Some(l) = &doc.vertex_labels {
            if l.len() != doc.vertex_count {
                return Err(ComplexError::LabelCountMismatch {
                    labels: l.len(),
                    vertex_count: doc.vertex_count,
                });
            }
        }
        let complex = SimplicialComplex::from_facets(
            doc.facets.iter().map(|ids| Face::of(ids.iter().copied())),
            doc.vertex_count,
        )?;
        Ok((complex, doc.vertex_labels))
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertex_count: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    vertex_labels: Option<Vec<String>>,
    facets: Vec<Vec<usize>>,
}

/// The cycle on `n` vertices as a 1-dimensional complex; handy in tests
/// and as the smallest delta complex up to relabeling.
pub fn cycle_complex(n: usize) -> SimplicialComplex {
    let facets = (0..n).map(|i| Face::of([i, (i + 1) % n]));
    SimplicialComplex::from_facets(facets, n).expect("cycle construction")
}
