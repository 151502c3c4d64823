//! Certified exhaustive search for strong and weak k-decomposability.
//!
//! A pure (d−1)-dimensional complex is weakly k-decomposable when it is
//! a single simplex or some face τ with dim τ ≤ k (a shedding face) has
//! a deletion that is pure, (d−1)-dimensional, and again weakly
//! k-decomposable. Strong k-decomposability additionally requires the
//! link of every shedding face to be (d−|τ|−1)-dimensional and itself
//! k-decomposable.
//!
//! The search is a memoized depth-first enumeration over shedding
//! choices. States are keyed by their canonically sorted facet sets:
//! distinct shed orders reaching the same complex share one verdict.
//! Candidate faces are tried by ascending dimension, then
//! lexicographically, so verdicts and certificates are deterministic.
//! Positive verdicts carry a replayable [`SheddingCertificate`];
//! negative verdicts mean every shedding choice at every reachable
//! state was exhausted.
//!
//! Legality of a shed from a pure complex reduces to a ridge count: the
//! deletion stays pure of full dimension iff some facet avoids τ and
//! every ridge F∖t with τ ⊆ F, t ∈ τ lies in at least two facets (any
//! second facet through such a ridge survives the deletion and covers
//! it). [`verify_certificate`] replays certificates through the full
//! deletion and link operations instead, keeping the two routes
//! independent.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::delta::DeltaComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Weak,
    Strong,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Weak => write!(f, "weak"),
            Mode::Strong => write!(f, "strong"),
        }
    }
}

/// One shed: the face removed and, when the certificate came from the
/// search, the facet count right after the deletion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheddingStep {
    pub face: Face,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub facets_after: Option<usize>,
}

/// An ordered shedding sequence ending at a single simplex. In strong
/// mode, `links` holds one nested certificate per step for the link of
/// the shed face at shed time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheddingCertificate {
    pub mode: Mode,
    pub k: usize,
    pub steps: Vec<SheddingStep>,
    pub terminal: Face,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub links: Vec<SheddingCertificate>,
}

impl SheddingCertificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serialization");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, CertificateError> {
        serde_json::from_str(s).map_err(|e| CertificateError::Json(e.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("step {step}: face {face} is not present at shed time")]
    FaceAbsent { step: usize, face: Face },
    #[error("step {step}: shed face has dimension {dim}, above the cap k={k}")]
    FaceTooLarge { step: usize, dim: i32, k: usize },
    #[error("step {step}: deletion is not pure")]
    DeletionImpure { step: usize },
    #[error("step {step}: deletion changed dimension from {before} to {after:?}")]
    DimensionChanged {
        step: usize,
        before: i32,
        after: Option<i32>,
    },
    #[error("step {step}: certificate records {recorded} facets after the shed, replay found {actual}")]
    FacetCountMismatch {
        step: usize,
        recorded: usize,
        actual: usize,
    },
    #[error("strong certificate has {links} link certificates for {steps} steps")]
    LinkCountMismatch { steps: usize, links: usize },
    #[error("step {step}: link has dimension {actual:?}, expected {expected}")]
    LinkDimensionWrong {
        step: usize,
        expected: i32,
        actual: Option<i32>,
    },
    #[error("step {step}: link is not pure")]
    LinkImpure { step: usize },
    #[error("step {step}: nested link certificate has mismatched mode or k")]
    LinkModeMismatch { step: usize },
    #[error("step {step}: link certificate fails: {source}")]
    LinkCertificate {
        step: usize,
        source: Box<CertificateError>,
    },
    #[error("replay ends with {facets} facets, not a single simplex")]
    NotSimplexAtEnd { facets: usize },
    #[error("terminal facet is {actual}, certificate says {expected}")]
    TerminalMismatch { expected: Face, actual: Face },
    #[error("malformed certificate JSON: {0}")]
    Json(String),
}

/// Replays a certificate against the definitions, checking every shed
/// for presence, dimension cap, purity and dimension preservation, and
/// (strong mode) the nested link certificates. Returns the first
/// violated condition.
pub fn verify_certificate(
    complex: &SimplicialComplex,
    cert: &SheddingCertificate,
) -> Result<(), CertificateError> {
    match cert.mode {
        Mode::Strong => {
            if cert.links.len() != cert.steps.len() {
                return Err(CertificateError::LinkCountMismatch {
                    steps: cert.steps.len(),
                    links: cert.links.len(),
                });
            }
        }
        Mode::Weak => {
            if !cert.links.is_empty() {
                return Err(CertificateError::LinkCountMismatch {
                    steps: cert.steps.len(),
                    links: cert.links.len(),
                });
            }
        }
    }
    let mut cur = complex.clone();
    for (i, step) in cert.steps.iter().enumerate() {
        let tau = step.face;
        if !cur.contains_face(tau) {
            return Err(CertificateError::FaceAbsent { step: i, face: tau });
        }
        if tau.dim() > cert.k as i32 {
            return Err(CertificateError::FaceTooLarge {
                step: i,
                dim: tau.dim(),
                k: cert.k,
            });
        }
        let before = cur.dimension().expect("non-void during replay");
        if cert.mode == Mode::Strong {
            let link = cur.link(tau).expect("presence checked");
            let expected = before - tau.cardinality() as i32;
            if link.dimension() != Some(expected) {
                return Err(CertificateError::LinkDimensionWrong {
                    step: i,
                    expected,
                    actual: link.dimension(),
                });
            }
            if !link.is_pure() {
                return Err(CertificateError::LinkImpure { step: i });
            }
            let nested = &cert.links[i];
            if nested.mode != Mode::Strong || nested.k != cert.k {
                return Err(CertificateError::LinkModeMismatch { step: i });
            }
            verify_certificate(&link, nested).map_err(|e| CertificateError::LinkCertificate {
                step: i,
                source: Box::new(e),
            })?;
        }
        let del = cur.deletion(tau).expect("presence checked");
        if del.dimension() != Some(before) {
            return Err(CertificateError::DimensionChanged {
                step: i,
                before,
                after: del.dimension(),
            });
        }
        if !del.is_pure() {
            return Err(CertificateError::DeletionImpure { step: i });
        }
        if let Some(recorded) = step.facets_after {
            if recorded != del.facet_count() {
                return Err(CertificateError::FacetCountMismatch {
                    step: i,
                    recorded,
                    actual: del.facet_count(),
                });
            }
        }
        cur = del;
    }
    if !cur.is_simplex() {
        return Err(CertificateError::NotSimplexAtEnd {
            facets: cur.facet_count(),
        });
    }
    let actual = cur.facets()[0];
    if actual != cert.terminal {
        return Err(CertificateError::TerminalMismatch {
            expected: cert.terminal,
            actual,
        });
    }
    Ok(())
}

/// Vertex-pair symmetry of a complex: simultaneous permutations of the
/// pair indices, optionally with a U↔V swap. Used to collapse
/// isomorphic states in weak vertex-shed searches, where every state is
/// the induced subcomplex on its remaining vertices.
#[derive(Clone, Debug)]
pub struct PairSymmetry {
    pairs: Vec<(VertexId, VertexId)>,
    swap_sides: bool,
}

impl PairSymmetry {
    pub fn new(pairs: Vec<(VertexId, VertexId)>, swap_sides: bool) -> Self {
        PairSymmetry { pairs, swap_sides }
    }

    /// The index-permutation symmetry of Δ(a,b), with the side swap
    /// exactly when a = b.
    pub fn for_delta(delta: &DeltaComplex) -> Self {
        let l = &delta.labeling;
        PairSymmetry {
            pairs: (0..l.n()).map(|i| (l.u(i), l.v(i))).collect(),
            swap_sides: delta.a() == delta.b(),
        }
    }

    /// Generating permutations as `perm[old] = new` tables.
    fn generators(&self, vertex_count: usize) -> Vec<Vec<usize>> {
        let identity: Vec<usize> = (0..vertex_count).collect();
        let mut gens = Vec::new();
        for w in self.pairs.windows(2) {
            let mut p = identity.clone();
            let ((u1, v1), (u2, v2)) = (w[0], w[1]);
            p.swap(u1.index(), u2.index());
            p.swap(v1.index(), v2.index());
            gens.push(p);
        }
        if self.swap_sides {
            let mut p = identity;
            for &(u, v) in &self.pairs {
                p.swap(u.index(), v.index());
            }
            gens.push(p);
        }
        gens
    }

    /// Canonical key of an induced-subcomplex state: the multiset of
    /// per-pair membership types of the remaining vertex set.
    fn canonical_key(&self, remaining: Face) -> Vec<u64> {
        let mut counts = [0u64; 4];
        for &(u, v) in &self.pairs {
            let t = remaining.contains(u) as usize | (remaining.contains(v) as usize) << 1;
            counts[t] += 1;
        }
        let mut key = counts.to_vec();
        if self.swap_sides {
            let swapped = vec![counts[0], counts[2], counts[1], counts[3]];
            key = key.min(swapped);
        }
        key
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Abort with [`SearchStatus::BudgetExhausted`] after expanding
    /// this many states.
    pub max_states: Option<u64>,
    /// Disable to re-derive every state; verdicts must not change.
    pub disable_memo: bool,
    /// Record the shed prefix of every state with no legal shed
    /// (weak searches only).
    pub collect_dead_ends: bool,
    /// Collapse states isomorphic under a vertex-pair symmetry.
    /// Only valid for weak searches with k = 0; off by default, and
    /// never changes verdicts.
    pub symmetry: Option<PairSymmetry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Decomposable,
    NotDecomposable,
    BudgetExhausted,
}

/// Search outcome with exhaustion statistics. A positive verdict
/// always carries a certificate; a negative verdict means the memoized
/// search exhausted every shed choice at every reachable state.
#[derive(Clone, Debug)]
pub struct SearchVerdict {
    pub mode: Mode,
    pub k: usize,
    pub status: SearchStatus,
    pub certificate: Option<SheddingCertificate>,
    pub states_explored: u64,
    pub memo_hits: u64,
    pub dead_end_prefixes: Vec<Vec<Face>>,
}

impl SearchVerdict {
    /// `None` when the state budget ran out before a verdict.
    pub fn decomposable(&self) -> Option<bool> {
        match self.status {
            SearchStatus::Decomposable => Some(true),
            SearchStatus::NotDecomposable => Some(false),
            SearchStatus::BudgetExhausted => None,
        }
    }

    /// Canonical JSON form of the verdict, certificate included.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "mode": self.mode,
            "k": self.k,
            "status": self.status,
            "decomposable": self.decomposable(),
            "states_explored": self.states_explored,
            "memo_hits": self.memo_hits,
            "certificate": self
                .certificate
                .as_ref()
                .map(|c| serde_json::to_value(c).expect("certificate serialization")),
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    #[error("decomposability is defined for pure complexes only")]
    NotPure,
    #[error("the void complex has no decomposability verdict")]
    Void,
    #[error("symmetry reduction is only supported for weak searches with k = 0")]
    SymmetryUnsupported,
    #[error("the complex is not invariant under the given symmetry")]
    SymmetryInvalid,
}

pub fn find_weak_decomposition(
    complex: &SimplicialComplex,
    k: usize,
    opts: &SearchOptions,
) -> Result<SearchVerdict, DecompError> {
    search(complex, Mode::Weak, k, opts)
}

pub fn find_strong_decomposition(
    complex: &SimplicialComplex,
    k: usize,
    opts: &SearchOptions,
) -> Result<SearchVerdict, DecompError> {
    search(complex, Mode::Strong, k, opts)
}

fn search(
    complex: &SimplicialComplex,
    mode: Mode,
    k: usize,
    opts: &SearchOptions,
) -> Result<SearchVerdict, DecompError> {
    if complex.is_void() {
        return Err(DecompError::Void);
    }
    if !complex.is_pure() {
        return Err(DecompError::NotPure);
    }
    if let Some(sym) = &opts.symmetry {
        if mode != Mode::Weak || k != 0 {
            return Err(DecompError::SymmetryUnsupported);
        }
        let ids_in_range = sym
            .pairs
            .iter()
            .all(|&(u, v)| u.index() < complex.vertex_count() && v.index() < complex.vertex_count());
        if !ids_in_range {
            return Err(DecompError::SymmetryInvalid);
        }
        for perm in sym.generators(complex.vertex_count()) {
            if complex.permute_vertices(&perm) != *complex {
                return Err(DecompError::SymmetryInvalid);
            }
        }
    }

    let mut searcher = Searcher {
        mode,
        k,
        opts,
        memo: HashMap::new(),
        chosen: HashMap::new(),
        states_explored: 0,
        memo_hits: 0,
        dead_ends: Vec::new(),
        path: Vec::new(),
    };
    let root: Vec<Face> = complex.facets().to_vec();
    let proof = searcher.dfs(&root);

    let (status, certificate) = match proof {
        Proof::Yes => {
            let cert = if opts.symmetry.is_some() {
                searcher.rebuild_via_memo(root)
            } else {
                searcher.rebuild_via_chosen(root)
            };
            debug_assert!(verify_certificate(complex, &cert).is_ok());
            (SearchStatus::Decomposable, Some(cert))
        }
        Proof::No => (SearchStatus::NotDecomposable, None),
        Proof::Abort => (SearchStatus::BudgetExhausted, None),
    };
    Ok(SearchVerdict {
        mode,
        k,
        status,
        certificate,
        states_explored: searcher.states_explored,
        memo_hits: searcher.memo_hits,
        dead_end_prefixes: searcher.dead_ends,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Proof {
    Yes,
    No,
    Abort,
}

struct Searcher<'a> {
    mode: Mode,
    k: usize,
    opts: &'a SearchOptions,
    memo: HashMap<Vec<u64>, bool>,
    chosen: HashMap<Vec<u64>, Face>,
    states_explored: u64,
    memo_hits: u64,
    dead_ends: Vec<Vec<Face>>,
    path: Vec<Face>,
}

/// Multiplicity of every ridge (facet minus one vertex) in the facet
/// list of a pure complex.
fn ridge_counts(facets: &[Face]) -> HashMap<Face, u32> {
    let mut counts = HashMap::with_capacity(facets.len() * 4);
    for &f in facets {
        for v in f.vertices() {
            *counts.entry(f.remove(v)).or_insert(0) += 1;
        }
    }
    counts
}

/// Distinct faces with `size` vertices, in canonical order.
fn faces_of_size_in(facets: &[Face], size: usize) -> Vec<Face> {
    let mut seen: BTreeSet<Face> = BTreeSet::new();
    for &f in facets {
        let verts = f.vertex_vec();
        crate::comb::for_each_index_subset(verts.len(), size, |idx| {
            seen.insert(Face::of(idx.iter().map(|&i| verts[i])));
        });
    }
    seen.into_iter().collect()
}

/// Whether deleting `tau` keeps the complex pure of full dimension:
/// some facet must avoid `tau`, and every ridge under a facet through
/// `tau` must lie in a second facet.
fn shed_is_legal(facets: &[Face], ridges: &HashMap<Face, u32>, tau: Face) -> bool {
    let mut any_avoids = false;
    for &f in facets {
        if !tau.is_subset_of(f) {
            any_avoids = true;
            continue;
        }
        for t in tau.vertices() {
            if ridges[&f.remove(t)] < 2 {
                return false;
            }
        }
    }
    any_avoids
}

/// Facets of the deletion of a legal shed: exactly the survivors.
fn deletion_facets(facets: &[Face], tau: Face) -> Vec<Face> {
    facets
        .iter()
        .copied()
        .filter(|f| !tau.is_subset_of(*f))
        .collect()
}

/// Facets of the link: the facets through `tau`, stripped of it. All
/// have equal size, so they are automatically inclusion-maximal.
fn link_facets(facets: &[Face], tau: Face) -> Vec<Face> {
    let mut out: Vec<Face> = facets
        .iter()
        .filter(|f| tau.is_subset_of(**f))
        .map(|f| f.minus(tau))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl Searcher<'_> {
    fn key(&self, facets: &[Face]) -> Vec<u64> {
        match &self.opts.symmetry {
            Some(sym) => {
                let remaining = facets.iter().fold(Face::EMPTY, |acc, &f| acc.union(f));
                sym.canonical_key(remaining)
            }
            None => facets.iter().map(|f| f.bits()).collect(),
        }
    }

    fn legal_sheds(&self, facets: &[Face]) -> Vec<Face> {
        let ridges = ridge_counts(facets);
        let top = facets[0].cardinality();
        let mut legal = Vec::new();
        for size in 1..=(self.k + 1).min(top) {
            for tau in faces_of_size_in(facets, size) {
                if shed_is_legal(facets, &ridges, tau) {
                    legal.push(tau);
                }
            }
        }
        legal
    }

    fn dfs(&mut self, facets: &[Face]) -> Proof {
        if facets.len() == 1 {
            return Proof::Yes;
        }
        let key = self.key(facets);
        if !self.opts.disable_memo {
            if let Some(&verdict) = self.memo.get(&key) {
                self.memo_hits += 1;
                return if verdict { Proof::Yes } else { Proof::No };
            }
        }
        if let Some(budget) = self.opts.max_states {
            if self.states_explored >= budget {
                return Proof::Abort;
            }
        }
        self.states_explored += 1;

        let legal = self.legal_sheds(facets);
        if legal.is_empty() && self.mode == Mode::Weak && self.opts.collect_dead_ends {
            self.dead_ends.push(self.path.clone());
        }
        let mut any_abort = false;
        for tau in legal {
            if self.mode == Mode::Strong {
                match self.dfs(&link_facets(facets, tau)) {
                    Proof::Yes => {}
                    Proof::No => continue,
                    Proof::Abort => {
                        any_abort = true;
                        continue;
                    }
                }
            }
            let child = deletion_facets(facets, tau);
            self.path.push(tau);
            let verdict = self.dfs(&child);
            self.path.pop();
            match verdict {
                Proof::Yes => {
                    self.chosen.insert(key.clone(), tau);
                    self.memo.insert(key, true);
                    return Proof::Yes;
                }
                Proof::No => {}
                Proof::Abort => any_abort = true,
            }
        }
        if any_abort {
            return Proof::Abort;
        }
        self.memo.insert(key, false);
        Proof::No
    }

    /// Certificate replay through the recorded shed choices.
    fn rebuild_via_chosen(&self, facets: Vec<Face>) -> SheddingCertificate {
        let mut steps = Vec::new();
        let mut links = Vec::new();
        let mut cur = facets;
        while cur.len() > 1 {
            let tau = *self
                .chosen
                .get(&self.key(&cur))
                .expect("winning states record their shed");
            if self.mode == Mode::Strong {
                links.push(self.rebuild_via_chosen(link_facets(&cur, tau)));
            }
            cur = deletion_facets(&cur, tau);
            steps.push(SheddingStep {
                face: tau,
                facets_after: Some(cur.len()),
            });
        }
        SheddingCertificate {
            mode: self.mode,
            k: self.k,
            steps,
            terminal: cur[0],
            links,
        }
    }

    /// Under symmetry reduction the recorded shed belongs to the orbit
    /// representative, so rebuild by greedy descent through states the
    /// memo proved decomposable.
    fn rebuild_via_memo(&self, facets: Vec<Face>) -> SheddingCertificate {
        let mut steps = Vec::new();
        let mut cur = facets;
        while cur.len() > 1 {
            let mut next = None;
            for tau in self.legal_sheds(&cur) {
                let child = deletion_facets(&cur, tau);
                let ok = child.len() == 1 || self.memo.get(&self.key(&child)) == Some(&true);
                if ok {
                    next = Some((tau, child));
                    break;
                }
            }
            let (tau, child) = next.expect("a decomposable state has a decomposable child");
            cur = child;
            steps.push(SheddingStep {
                face: tau,
                facets_after: Some(cur.len()),
            });
        }
        SheddingCertificate {
            mode: self.mode,
            k: self.k,
            steps,
            terminal: cur[0],
            links: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cycle_complex;
    use crate::delta::delta_complex;

    fn face(ids: &[usize]) -> Face {
        Face::of(ids.iter().copied())
    }

    fn defaults() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn single_simplex_is_decomposable_with_empty_steps() {
        let c = SimplicialComplex::simplex(face(&[0, 1, 2, 3]), 4).unwrap();
        for verdict in [
            find_weak_decomposition(&c, 0, &defaults()).unwrap(),
            find_strong_decomposition(&c, 0, &defaults()).unwrap(),
        ] {
            assert_eq!(verdict.status, SearchStatus::Decomposable);
            let cert = verdict.certificate.unwrap();
            assert!(cert.steps.is_empty());
            assert_eq!(cert.terminal, face(&[0, 1, 2, 3]));
            assert!(verify_certificate(&c, &cert).is_ok());
        }
    }

    #[test]
    fn hexagon_weak_vertex_decomposition() {
        let c6 = cycle_complex(6);
        let verdict = find_weak_decomposition(&c6, 0, &defaults()).unwrap();
        assert_eq!(verdict.status, SearchStatus::Decomposable);
        let cert = verdict.certificate.unwrap();
        // four vertex sheds take six edges down to one
        assert_eq!(cert.steps.len(), 4);
        assert!(cert.steps.iter().all(|s| s.face.cardinality() == 1));
        assert!(verify_certificate(&c6, &cert).is_ok());
    }

    #[test]
    fn hexagon_strong_vertex_decomposition() {
        let c6 = cycle_complex(6);
        let verdict = find_strong_decomposition(&c6, 0, &defaults()).unwrap();
        assert_eq!(verdict.status, SearchStatus::Decomposable);
        let cert = verdict.certificate.unwrap();
        assert_eq!(cert.links.len(), cert.steps.len());
        assert!(verify_certificate(&c6, &cert).is_ok());
    }

    #[test]
    fn boundary_of_3_simplex_is_strongly_vertex_decomposable() {
        let facets = [
            face(&[0, 1, 2]),
            face(&[0, 1, 3]),
            face(&[0, 2, 3]),
            face(&[1, 2, 3]),
        ];
        let c = SimplicialComplex::from_facets(facets, 4).unwrap();
        let verdict = find_strong_decomposition(&c, 0, &defaults()).unwrap();
        assert_eq!(verdict.status, SearchStatus::Decomposable);
        let cert = verdict.certificate.unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert!(verify_certificate(&c, &cert).is_ok());
    }

    #[test]
    fn delta_2_2_is_not_weakly_vertex_decomposable() {
        let d = delta_complex(2, 2).unwrap();
        let verdict = find_weak_decomposition(&d.complex, 0, &defaults()).unwrap();
        assert_eq!(verdict.status, SearchStatus::NotDecomposable);
        assert!(verdict.certificate.is_none());
        assert!(verdict.states_explored <= 1 << 10);

        let strong = find_strong_decomposition(&d.complex, 0, &defaults()).unwrap();
        assert_eq!(strong.status, SearchStatus::NotDecomposable);
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let d = delta_complex(2, 2).unwrap();
        let opts = SearchOptions {
            max_states: Some(5),
            ..defaults()
        };
        let verdict = find_weak_decomposition(&d.complex, 0, &opts).unwrap();
        assert_eq!(verdict.status, SearchStatus::BudgetExhausted);
        assert_eq!(verdict.decomposable(), None);
        assert!(verdict.certificate.is_none());
    }

    #[test]
    fn memoization_does_not_change_verdicts() {
        let cases = [cycle_complex(6), delta_complex(1, 1).unwrap().complex];
        for c in &cases {
            for k in 0..2 {
                let with = find_weak_decomposition(c, k, &defaults()).unwrap();
                let without = find_weak_decomposition(
                    c,
                    k,
                    &SearchOptions {
                        disable_memo: true,
                        ..defaults()
                    },
                )
                .unwrap();
                assert_eq!(with.status, without.status);
                assert_eq!(with.certificate, without.certificate);
            }
        }
    }

    #[test]
    fn symmetry_reduction_preserves_verdicts() {
        for (a, b) in [(1, 1), (2, 1), (2, 2)] {
            let d = delta_complex(a, b).unwrap();
            let plain = find_weak_decomposition(&d.complex, 0, &defaults()).unwrap();
            let opts = SearchOptions {
                symmetry: Some(PairSymmetry::for_delta(&d)),
                ..defaults()
            };
            let reduced = find_weak_decomposition(&d.complex, 0, &opts).unwrap();
            assert_eq!(plain.status, reduced.status, "verdict changed at ({a},{b})");
            assert!(reduced.states_explored <= plain.states_explored);
            if let Some(cert) = reduced.certificate {
                assert!(verify_certificate(&d.complex, &cert).is_ok());
            }
        }
    }

    #[test]
    fn symmetry_rejected_outside_weak_k0() {
        let d = delta_complex(1, 1).unwrap();
        let opts = SearchOptions {
            symmetry: Some(PairSymmetry::for_delta(&d)),
            ..defaults()
        };
        assert_eq!(
            find_strong_decomposition(&d.complex, 0, &opts).unwrap_err(),
            DecompError::SymmetryUnsupported
        );
        assert_eq!(
            find_weak_decomposition(&d.complex, 1, &opts).unwrap_err(),
            DecompError::SymmetryUnsupported
        );
        // wrong complex for the symmetry
        let c6 = cycle_complex(6);
        let d2 = delta_complex(2, 2).unwrap();
        let opts = SearchOptions {
            symmetry: Some(PairSymmetry::for_delta(&d2)),
            ..defaults()
        };
        assert!(matches!(
            find_weak_decomposition(&c6, 0, &opts),
            Err(DecompError::SymmetryInvalid) | Err(DecompError::Void)
        ));
    }

    #[test]
    fn non_pure_and_void_inputs_rejected() {
        let c = SimplicialComplex::from_facets([face(&[0, 1]), face(&[2])], 3).unwrap();
        assert_eq!(
            find_weak_decomposition(&c, 0, &defaults()).unwrap_err(),
            DecompError::NotPure
        );
        let void = SimplicialComplex::from_facets([], 2).unwrap();
        assert_eq!(
            find_weak_decomposition(&void, 0, &defaults()).unwrap_err(),
            DecompError::Void
        );
    }

    #[test]
    fn monotone_in_k_on_samples() {
        for c in [cycle_complex(6), delta_complex(1, 1).unwrap().complex] {
            assert_eq!(
                find_weak_decomposition(&c, 0, &defaults()).unwrap().status,
                SearchStatus::Decomposable
            );
            for k in 1..3 {
                assert_eq!(
                    find_weak_decomposition(&c, k, &defaults()).unwrap().status,
                    SearchStatus::Decomposable,
                    "monotonicity broke at k={k}"
                );
            }
        }
    }

    #[test]
    fn malformed_certificates_are_rejected_with_location() {
        let c6 = cycle_complex(6);
        let step = |ids: &[usize]| SheddingStep {
            face: face(ids),
            facets_after: None,
        };
        // shedding {0} twice: absent at step 1
        let cert = SheddingCertificate {
            mode: Mode::Weak,
            k: 0,
            steps: vec![step(&[0]), step(&[0])],
            terminal: face(&[4, 5]),
            links: vec![],
        };
        assert_eq!(
            verify_certificate(&c6, &cert),
            Err(CertificateError::FaceAbsent {
                step: 1,
                face: face(&[0])
            })
        );
        // shedding {0},{3},{1}: the last shed leaves an isolated vertex
        let cert = SheddingCertificate {
            mode: Mode::Weak,
            k: 0,
            steps: vec![step(&[0]), step(&[3]), step(&[1])],
            terminal: face(&[4, 5]),
            links: vec![],
        };
        assert_eq!(
            verify_certificate(&c6, &cert),
            Err(CertificateError::DeletionImpure { step: 2 })
        );
        // dimension cap
        let cert = SheddingCertificate {
            mode: Mode::Weak,
            k: 0,
            steps: vec![SheddingStep {
                face: face(&[0, 1]),
                facets_after: None,
            }],
            terminal: face(&[4, 5]),
            links: vec![],
        };
        assert_eq!(
            verify_certificate(&c6, &cert),
            Err(CertificateError::FaceTooLarge {
                step: 0,
                dim: 1,
                k: 0
            })
        );
        // incomplete replay
        let cert = SheddingCertificate {
            mode: Mode::Weak,
            k: 0,
            steps: vec![step(&[0])],
            terminal: face(&[4, 5]),
            links: vec![],
        };
        assert_eq!(
            verify_certificate(&c6, &cert),
            Err(CertificateError::NotSimplexAtEnd { facets: 4 })
        );
    }

    #[test]
    fn certificate_json_round_trip() {
        let c6 = cycle_complex(6);
        let cert = find_weak_decomposition(&c6, 0, &defaults())
            .unwrap()
            .certificate
            .unwrap();
        let s = cert.to_json();
        let back = SheddingCertificate::from_json(&s).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&c6, &back).is_ok());

        let strong = find_strong_decomposition(&c6, 0, &defaults())
            .unwrap()
            .certificate
            .unwrap();
        let back = SheddingCertificate::from_json(&strong.to_json()).unwrap();
        assert_eq!(back, strong);
    }

    #[test]
    fn fast_deletion_matches_general_deletion_on_legal_sheds() {
        let d = delta_complex(2, 2).unwrap().complex;
        let facets: Vec<Face> = d.facets().to_vec();
        let ridges = ridge_counts(&facets);
        for size in 1..=2 {
            for tau in faces_of_size_in(&facets, size) {
                let fast_legal = shed_is_legal(&facets, &ridges, tau);
                let del = d.deletion(tau).unwrap();
                let slow_legal = del.is_pure() && del.dimension() == d.dimension();
                assert_eq!(fast_legal, slow_legal, "legality mismatch at {tau}");
                if fast_legal {
                    assert_eq!(deletion_facets(&facets, tau), del.facets());
                }
            }
        }
    }
}
