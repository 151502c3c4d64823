//! Corank obstructions to weak decomposability on the delta family.
//!
//! Along a shedding sequence τ1, τ2, … on Δ(a,b) with deletions
//! Δ0 ⊇ Δ1 ⊇ …, the corank functions
//!
//! φi(S) = |S| − max{ |σ| : σ ⊆ S, σ ∈ Δi }
//!
//! are tracked on the domain of one-sided vertex sets: S ⊆ U with
//! |S| ≤ b+1, or S ⊆ V with |S| ≤ a+1. At the start every φ0(S) ≤ 1;
//! mixed-side sheds change nothing; U-side sheds leave V-side values
//! alone; and φi(S) ≤ 1 exactly when some v ∈ S has S∖v ∈ Δi
//! ([`audit_phi_properties`] checks all of this per step).
//!
//! Since faces of Δi are the faces of Δ0 containing no shed face,
//! φi(S) ≥ 2 holds for a one-sided S iff some sub-collection of the
//! same-side shed faces has empty intersection and union inside S.
//! [`audit_shedding_sequence`] watches for the first such step lazily,
//! shrinks the collection through the hitting-set extraction
//! ([`minimal_empty_intersection`]: an empty-intersection family of
//! ≤(k+1)-sets contains an empty-intersection sub-family whose union
//! has at most ((k+3)/2)² elements), and then exhibits a face of the
//! opposite side that extends to no full-dimensional face — proof that
//! purity already failed. Sequences that never reach corank 2 get a
//! valid-so-far report with the tracked corank frontier.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::comb::for_each_index_subset;
use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::delta::{delta_complex, DeltaComplex, DeltaError, DeltaLabeling, Side};

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error("set {set} is outside the corank domain: {reason}")]
    DomainViolation { set: Face, reason: String },
    #[error("audit needs (k+3)^2 <= 4*min(a,b); got a={a}, b={b}, k={k}")]
    PreconditionViolated { a: usize, b: usize, k: usize },
    #[error("step {step}: face {face} is not present at shed time")]
    FaceAbsentAtStep { step: usize, face: Face },
    #[error("step {step}: face {face} has dimension above the cap k={k}")]
    FaceTooLarge { step: usize, face: Face, k: usize },
    #[error("step {step}: illegal shed: {reason}")]
    IllegalStep { step: usize, reason: String },
    #[error("collection has nonempty intersection (contains {witness})")]
    NonEmptyIntersection { witness: u32 },
    #[error("set {index} has {size} elements, above the cap k+1={cap}")]
    OversizedSet {
        index: usize,
        size: usize,
        cap: usize,
    },
    #[error("full-domain corank audit beyond desk scale ({sets} sets)")]
    DomainTooLarge { sets: u64 },
    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
    #[error("malformed sequence JSON: {0}")]
    SequenceJson(String),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Delta(#[from] DeltaError),
}

/// A tracked corank value: φ at `step` of the vertex set `subject`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorankProfile {
    pub step: usize,
    pub subject: Face,
    pub value: usize,
}

fn domain_side(labeling: &DeltaLabeling, s: Face) -> Result<Side, ObstructionError> {
    if s.is_empty() {
        return Err(ObstructionError::DomainViolation {
            set: s,
            reason: "the empty set is excluded from the corank domain".into(),
        });
    }
    let (u, v) = (labeling.u_face(), labeling.v_face());
    if s.is_subset_of(u) {
        if s.cardinality() > labeling.b() + 1 {
            return Err(ObstructionError::DomainViolation {
                set: s,
                reason: format!("U-side sets are capped at b+1 = {}", labeling.b() + 1),
            });
        }
        Ok(Side::U)
    } else if s.is_subset_of(v) {
        if s.cardinality() > labeling.a() + 1 {
            return Err(ObstructionError::DomainViolation {
                set: s,
                reason: format!("V-side sets are capped at a+1 = {}", labeling.a() + 1),
            });
        }
        Ok(Side::V)
    } else {
        Err(ObstructionError::DomainViolation {
            set: s,
            reason: "mixed U/V sets are outside the corank domain".into(),
        })
    }
}

/// Corank of a one-sided vertex set in a (possibly shed) state of
/// Δ(a,b), over the original vertex table.
pub fn phi(
    labeling: &DeltaLabeling,
    state: &SimplicialComplex,
    s: Face,
) -> Result<usize, ObstructionError> {
    domain_side(labeling, s)?;
    Ok(state.rank_of(s).corank)
}

/// All domain sets: one-sided nonempty vertex sets up to the caps.
fn domain_sets(labeling: &DeltaLabeling) -> Result<Vec<Face>, ObstructionError> {
    let n = labeling.n() as u64;
    let mut total = 0u64;
    for size in 1..=labeling.b() + 1 {
        total += crate::comb::binomial(n, size as u64);
    }
    for size in 1..=labeling.a() + 1 {
        total += crate::comb::binomial(n, size as u64);
    }
    if total > 500_000 {
        return Err(ObstructionError::DomainTooLarge { sets: total });
    }
    let mut out = Vec::with_capacity(total as usize);
    let sides = [
        (labeling.u_vertices().to_vec(), labeling.b() + 1),
        (labeling.v_vertices().to_vec(), labeling.a() + 1),
    ];
    for (vertices, cap) in sides {
        for size in 1..=cap {
            for_each_index_subset(vertices.len(), size, |idx| {
                out.push(Face::of(idx.iter().map(|&i| vertices[i].index())));
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiViolation {
    /// Which numbered property failed: 1, 2, 3, 4 or 5.
    pub property: u8,
    pub step: usize,
    pub subject: Face,
    pub detail: String,
}

/// Step-by-step property report for the corank functions along a legal
/// shedding prefix.
#[derive(Clone, Debug, Serialize)]
pub struct PhiAuditReport {
    pub steps: usize,
    pub domain_sets: usize,
    pub violations: Vec<PhiViolation>,
    /// Present when the sequence ends at a single simplex; the inner
    /// option carries a domain set of corank ≥ 2 there, which must
    /// exist.
    pub terminal_phi2_witness: Option<Option<Face>>,
}

impl PhiAuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Replays a legal weak shedding prefix on Δ(a,b) and checks the
/// corank properties at every step for every domain set: φ0 ≤ 1;
/// mixed sheds change no value; one-sided sheds leave the other side
/// unchanged; and the corank-≤-1 criterion via single-vertex removal.
/// A step whose deletion breaks purity or dimension is an error, not a
/// violation report.
pub fn audit_phi_properties(
    delta: &DeltaComplex,
    sequence: &[Face],
) -> Result<PhiAuditReport, ObstructionError> {
    let labeling = &delta.labeling;
    let sets = domain_sets(labeling)?;
    let mut cur = delta.complex.clone();
    let mut prev_phi: Vec<usize> = sets.iter().map(|&s| cur.rank_of(s).corank).collect();
    let mut violations = Vec::new();

    // property (1) at step 0
    for (s, &val) in sets.iter().zip(&prev_phi) {
        if val > 1 {
            violations.push(PhiViolation {
                property: 1,
                step: 0,
                subject: *s,
                detail: format!("phi_0 = {val}"),
            });
        }
    }
    check_property_5(&cur, &sets, &prev_phi, 0, &mut violations);

    for (idx, &tau) in sequence.iter().enumerate() {
        let step = idx + 1;
        if !cur.contains_face(tau) {
            return Err(ObstructionError::FaceAbsentAtStep { step, face: tau });
        }
        let before = cur.dimension();
        let next = cur.deletion(tau).expect("presence checked");
        if next.dimension() != before {
            return Err(ObstructionError::IllegalStep {
                step,
                reason: format!(
                    "deletion changed dimension from {before:?} to {:?}",
                    next.dimension()
                ),
            });
        }
        if !next.is_pure() {
            return Err(ObstructionError::IllegalStep {
                step,
                reason: "deletion is not pure".into(),
            });
        }
        cur = next;
        let cur_phi: Vec<usize> = sets.iter().map(|&s| cur.rank_of(s).corank).collect();

        let in_u = tau.is_subset_of(labeling.u_face());
        let in_v = tau.is_subset_of(labeling.v_face());
        for ((s, &old), &new) in sets.iter().zip(&prev_phi).zip(&cur_phi) {
            if !in_u && !in_v {
                // property (3): mixed sheds change nothing
                if new != old {
                    violations.push(PhiViolation {
                        property: 3,
                        step,
                        subject: *s,
                        detail: format!("phi moved {old} -> {new} across a mixed shed"),
                    });
                }
            } else {
                // property (4): the untouched side keeps its values
                let s_side = domain_side(labeling, *s).expect("domain set");
                let untouched = (in_u && s_side == Side::V) || (in_v && s_side == Side::U);
                if untouched && new != old {
                    violations.push(PhiViolation {
                        property: 4,
                        step,
                        subject: *s,
                        detail: format!("phi moved {old} -> {new} on the untouched side"),
                    });
                }
            }
        }
        check_property_5(&cur, &sets, &cur_phi, step, &mut violations);
        prev_phi = cur_phi;
    }

    let terminal_phi2_witness = if cur.is_simplex() {
        let witness = sets
            .iter()
            .zip(&prev_phi)
            .find(|(_, &val)| val >= 2)
            .map(|(s, _)| *s);
        if witness.is_none() {
            violations.push(PhiViolation {
                property: 2,
                step: sequence.len(),
                subject: Face::EMPTY,
                detail: "no domain set has corank >= 2 at the terminal simplex".into(),
            });
        }
        Some(witness)
    } else {
        None
    };

    Ok(PhiAuditReport {
        steps: sequence.len(),
        domain_sets: sets.len(),
        violations,
        terminal_phi2_witness,
    })
}

/// Property (5), both directions: φ(S) ≤ 1 iff S minus some single
/// vertex is a face.
fn check_property_5(
    cur: &SimplicialComplex,
    sets: &[Face],
    phi: &[usize],
    step: usize,
    violations: &mut Vec<PhiViolation>,
) {
    for (s, &val) in sets.iter().zip(phi) {
        let removable = s.vertices().any(|v| cur.contains_face(s.remove(v)));
        if (val <= 1) != removable {
            violations.push(PhiViolation {
                property: 5,
                step,
                subject: *s,
                detail: format!("phi = {val} but single-vertex-removal face test = {removable}"),
            });
        }
    }
}

/// A family of sets over an arbitrary finite universe, each of size at
/// most k+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCollection {
    sets: Vec<BTreeSet<u32>>,
    k: usize,
}

impl SetCollection {
    pub fn new(sets: Vec<BTreeSet<u32>>, k: usize) -> Result<Self, ObstructionError> {
        for (index, s) in sets.iter().enumerate() {
            if s.len() > k + 1 {
                return Err(ObstructionError::OversizedSet {
                    index,
                    size: s.len(),
                    cap: k + 1,
                });
            }
        }
        Ok(SetCollection { sets, k })
    }

    pub fn from_vecs(sets: Vec<Vec<u32>>, k: usize) -> Result<Self, ObstructionError> {
        Self::new(sets.into_iter().map(BTreeSet::from_iter).collect(), k)
    }

    pub fn sets(&self) -> &[BTreeSet<u32>] {
        &self.sets
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn intersection_of(&self, kept: &[usize]) -> BTreeSet<u32> {
        let mut iter = kept.iter().map(|&i| &self.sets[i]);
        let Some(first) = iter.next() else {
            return BTreeSet::new();
        };
        let mut acc = first.clone();
        for s in iter {
            acc.retain(|e| s.contains(e));
        }
        acc
    }
}

/// An inclusion-minimal empty-intersection sub-collection with its
/// extraction trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extraction {
    /// Indices into the input collection, in input order.
    pub kept: Vec<usize>,
    /// For each kept set X, one element of the intersection of the
    /// others; these are pairwise distinct and never lie in X.
    pub witnesses: Vec<u32>,
    pub union: BTreeSet<u32>,
}

impl Extraction {
    /// 4·|union| ≤ (k+3)², i.e. |union| ≤ ((k+3)/2)².
    pub fn union_bound_holds(&self, k: usize) -> bool {
        4 * self.union.len() <= (k + 3) * (k + 3)
    }
}

/// Shrinks an empty-intersection collection to an inclusion-minimal
/// empty-intersection sub-collection. Sets are dropped in reverse
/// input order whenever the rest still intersects emptily, so earlier
/// sets are preferred. The union obeys the ((k+3)/2)² bound.
pub fn minimal_empty_intersection(
    collection: &SetCollection,
) -> Result<Extraction, ObstructionError> {
    let all: Vec<usize> = (0..collection.sets.len()).collect();
    let total = collection.intersection_of(&all);
    if let Some(&witness) = total.iter().next() {
        return Err(ObstructionError::NonEmptyIntersection { witness });
    }
    let mut kept = all;
    for i in (0..collection.sets.len()).rev() {
        let trial: Vec<usize> = kept.iter().copied().filter(|&j| j != i).collect();
        if trial.len() < kept.len() && collection.intersection_of(&trial).is_empty() {
            kept = trial;
        }
    }
    let mut witnesses = Vec::with_capacity(kept.len());
    for &i in &kept {
        let others: Vec<usize> = kept.iter().copied().filter(|&j| j != i).collect();
        let inter = collection.intersection_of(&others);
        let w = *inter.iter().next().ok_or_else(|| {
            ObstructionError::InternalAssertion(format!(
                "minimal collection lost minimality at set {i}"
            ))
        })?;
        if collection.sets[i].contains(&w) {
            return Err(ObstructionError::InternalAssertion(format!(
                "extraction witness {w} lies in its own set {i}"
            )));
        }
        witnesses.push(w);
    }
    let mut distinct = witnesses.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != witnesses.len() {
        return Err(ObstructionError::InternalAssertion(
            "extraction witnesses are not distinct".into(),
        ));
    }
    let mut union = BTreeSet::new();
    for &i in &kept {
        union.extend(collection.sets[i].iter().copied());
    }
    let extraction = Extraction {
        kept,
        witnesses,
        union,
    };
    if !extraction.union_bound_holds(collection.k) {
        return Err(ObstructionError::InternalAssertion(format!(
            "extraction union of size {} breaks the ((k+3)/2)^2 bound at k={}",
            extraction.union.len(),
            collection.k
        )));
    }
    Ok(extraction)
}

/// The family witnessing that the ((k+3)/2)² bound is tight: all
/// ⌊(k+1)/2⌋-subsets of a (⌊(k+1)/2⌋+1)-set, each padded with
/// ⌈(k+1)/2⌉ fresh elements. Total intersection is empty, every
/// proper sub-collection intersects, and the union has exactly
/// (⌊(k+1)/2⌋+1)(⌈(k+1)/2⌉+1) elements.
pub fn tight_family(k: usize) -> Result<SetCollection, ObstructionError> {
    let p = (k + 1) / 2;
    let q = (k + 1) - p;
    let sets: Vec<BTreeSet<u32>> = if p == 0 {
        // k = 0 degenerates to two disjoint fresh singletons
        vec![BTreeSet::from([0]), BTreeSet::from([1])]
    } else {
        let core: Vec<u32> = (0..=p as u32).collect();
        let mut fresh = core.len() as u32;
        let mut sets = Vec::with_capacity(p + 1);
        for_each_index_subset(core.len(), p, |idx| {
            let mut s: BTreeSet<u32> = idx.iter().map(|&i| core[i]).collect();
            for _ in 0..q {
                s.insert(fresh);
                fresh += 1;
            }
            sets.push(s);
        });
        sets
    };
    let collection = SetCollection::new(sets, k)?;
    // construction self-checks
    let all: Vec<usize> = (0..collection.sets.len()).collect();
    if !collection.intersection_of(&all).is_empty() {
        return Err(ObstructionError::InternalAssertion(
            "tight family has nonempty total intersection".into(),
        ));
    }
    for skip in &all {
        let sub: Vec<usize> = all.iter().copied().filter(|i| i != skip).collect();
        if collection.intersection_of(&sub).is_empty() {
            return Err(ObstructionError::InternalAssertion(format!(
                "tight family stays empty without set {skip}"
            )));
        }
    }
    let union: BTreeSet<u32> = collection.sets.iter().flatten().copied().collect();
    if union.len() != (p + 1) * (q + 1) {
        return Err(ObstructionError::InternalAssertion(format!(
            "tight family union has {} elements, expected {}",
            union.len(),
            (p + 1) * (q + 1)
        )));
    }
    if collection.sets.iter().any(|s| s.len() != k + 1) {
        return Err(ObstructionError::InternalAssertion(
            "tight family set sizes are off".into(),
        ));
    }
    Ok(collection)
}

/// The evidence produced when a shedding sequence on Δ(a,b) first
/// reaches corank 2: the reduced subject set, the extracted shed
/// sub-collection, and an opposite-side face that extends to no
/// full-dimensional face of the current state — contradicting purity.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionWitness {
    /// 1-based index of the first step with a corank-2 domain set.
    pub fail_step: usize,
    pub side: Side,
    /// S after replacement by the union of the extracted collection.
    pub subject_s: Face,
    /// The extracted shed faces with empty intersection.
    pub subcollection: Vec<Face>,
    /// The extraction witnesses f(X), one per subcollection member.
    pub extraction_witnesses: Vec<VertexId>,
    /// Opposite-side index-disjoint set of size a+1 (resp. b+1).
    pub complement_t: Face,
    /// Subset of T of size a (resp. b) that is a face of the state.
    pub face_a: Face,
    /// First step whose deletion broke purity or dimension, if any.
    pub first_impure_step: Option<usize>,
    pub violation: String,
}

/// Outcome of the obstruction audit.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TheoremAuditOutcome {
    Witness(ObstructionWitness),
    ValidSoFar {
        /// Final coranks of the tracked same-side shed unions.
        phi_frontier: Vec<CorankProfile>,
        first_impure_step: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TheoremAuditOptions {
    /// Also scan the whole corank domain at every step and require it
    /// to agree with the lazy union tracking. Only sensible at small
    /// (a,b).
    pub full_domain: bool,
}

/// Replays a candidate shedding sequence on Δ(a,b), ignoring purity
/// failures (they are recorded, not fatal), and watches the corank
/// functions lazily over unions of same-side shed faces. At the first
/// step where some domain set reaches corank ≥ 2 the audit reproduces
/// the obstruction: it collects the shed faces inside the subject set,
/// extracts a minimal empty-intersection sub-collection, replaces the
/// subject by its union, picks an index-disjoint opposite-side set T,
/// finds a large face A ⊆ T, and verifies that A extends to no
/// full-size face — so the sequence was already illegal. Requires
/// (k+3)² ≤ 4·min(a,b) and every face of dimension ≤ k.
pub fn audit_shedding_sequence(
    a: usize,
    b: usize,
    k: usize,
    sequence: &[Face],
    options: &TheoremAuditOptions,
) -> Result<TheoremAuditOutcome, ObstructionError> {
    if (k + 3) * (k + 3) > 4 * a.min(b) {
        return Err(ObstructionError::PreconditionViolated { a, b, k });
    }
    let delta = delta_complex(a, b)?;
    let labeling = &delta.labeling;
    for (idx, &tau) in sequence.iter().enumerate() {
        if tau.dim() > k as i32 || tau.is_empty() {
            return Err(ObstructionError::FaceTooLarge {
                step: idx + 1,
                face: tau,
                k,
            });
        }
    }
    let full_sets = if options.full_domain {
        Some(domain_sets(labeling)?)
    } else {
        None
    };

    let mut cur = delta.complex.clone();
    let mut pools: [Vec<Face>; 2] = [Vec::new(), Vec::new()]; // U, V
    let mut first_impure_step = None;

    for (idx, &tau) in sequence.iter().enumerate() {
        let step = idx + 1;
        if !cur.contains_face(tau) {
            return Err(ObstructionError::FaceAbsentAtStep { step, face: tau });
        }
        let before = cur.dimension();
        let next = cur.deletion(tau).expect("presence checked");
        if first_impure_step.is_none() && (!next.is_pure() || next.dimension() != before) {
            first_impure_step = Some(step);
        }
        cur = next;

        let side = if tau.is_subset_of(labeling.u_face()) {
            Some(Side::U)
        } else if tau.is_subset_of(labeling.v_face()) {
            Some(Side::V)
        } else {
            None
        };
        let mut trigger: Option<Vec<Face>> = None;
        if let Some(side) = side {
            let pool_idx = match side {
                Side::U => 0,
                Side::V => 1,
            };
            let cap = match side {
                Side::U => b + 1,
                Side::V => a + 1,
            };
            let pool = &mut pools[pool_idx];
            pool.push(tau);
            trigger = first_empty_family(pool, tau, k, cap);
            if let Some(family) = &trigger {
                let witness = build_witness(
                    &delta,
                    &cur,
                    step,
                    side,
                    family,
                    &pools[pool_idx],
                    k,
                    a,
                    b,
                    first_impure_step,
                )?;
                if let Some(sets) = &full_sets {
                    let full_hit = sets.iter().any(|&s| cur.rank_of(s).corank >= 2);
                    if !full_hit {
                        return Err(ObstructionError::InternalAssertion(format!(
                            "lazy tracking triggered at step {step} but the full domain scan found no corank-2 set"
                        )));
                    }
                }
                return Ok(TheoremAuditOutcome::Witness(witness));
            }
        }
        if let Some(sets) = &full_sets {
            if trigger.is_none() {
                if let Some(s) = sets.iter().find(|&&s| cur.rank_of(s).corank >= 2) {
                    return Err(ObstructionError::InternalAssertion(format!(
                        "full domain scan found corank 2 at step {step} on {s} but lazy tracking saw nothing"
                    )));
                }
            }
        }
    }

    let final_step = sequence.len();
    let mut frontier = Vec::new();
    for (pool, cap) in [(&pools[0], b + 1), (&pools[1], a + 1)] {
        let mut subjects: BTreeSet<Face> = BTreeSet::new();
        let limit = (k + 2).min(pool.len());
        for size in 1..=limit {
            for_each_index_subset(pool.len(), size, |idx| {
                let union = idx
                    .iter()
                    .fold(Face::EMPTY, |acc, &i| acc.union(pool[i]));
                if union.cardinality() <= cap {
                    subjects.insert(union);
                }
            });
        }
        for subject in subjects {
            frontier.push(CorankProfile {
                step: final_step,
                subject,
                value: cur.rank_of(subject).corank,
            });
        }
    }
    Ok(TheoremAuditOutcome::ValidSoFar {
        phi_frontier: frontier,
        first_impure_step,
    })
}

/// First sub-family of `pool` containing `newest` with empty
/// intersection and union within the side cap, scanning by size then
/// index order. Minimal empty families have at most k+2 members, so
/// the size cap loses nothing.
fn first_empty_family(pool: &[Face], newest: Face, k: usize, cap: usize) -> Option<Vec<Face>> {
    let others: Vec<Face> = pool.iter().copied().filter(|&f| f != newest).collect();
    let mut found: Option<Vec<Face>> = None;
    let limit = (k + 1).min(others.len());
    for size in 1..=limit {
        if found.is_some() {
            break;
        }
        for_each_index_subset(others.len(), size, |idx| {
            if found.is_some() {
                return;
            }
            let mut inter = newest;
            let mut union = newest;
            for &i in idx {
                inter = inter.intersection(others[i]);
                union = union.union(others[i]);
            }
            if inter.is_empty() && union.cardinality() <= cap {
                let mut family = vec![newest];
                family.extend(idx.iter().map(|&i| others[i]));
                found = Some(family);
            }
        });
    }
    found
}

#[allow(clippy::too_many_arguments)]
fn build_witness(
    delta: &DeltaComplex,
    state: &SimplicialComplex,
    step: usize,
    side: Side,
    family: &[Face],
    pool: &[Face],
    k: usize,
    a: usize,
    b: usize,
    first_impure_step: Option<usize>,
) -> Result<ObstructionWitness, ObstructionError> {
    let labeling = &delta.labeling;
    let internal = |msg: String| ObstructionError::InternalAssertion(msg);

    let s0 = family.iter().fold(Face::EMPTY, |acc, &f| acc.union(f));
    if state.rank_of(s0).corank < 2 {
        return Err(internal(format!(
            "triggering union {s0} does not have corank 2 at step {step}"
        )));
    }
    // all shed faces inside the subject, in shed order
    let inside: Vec<Face> = pool
        .iter()
        .copied()
        .filter(|f| f.is_subset_of(s0))
        .collect();
    let collection = SetCollection::new(
        inside
            .iter()
            .map(|f| f.vertices().map(|v| v.0).collect())
            .collect(),
        k,
    )?;
    let extraction = minimal_empty_intersection(&collection)?;
    let subcollection: Vec<Face> = extraction.kept.iter().map(|&i| inside[i]).collect();
    let subject_s = subcollection
        .iter()
        .fold(Face::EMPTY, |acc, &f| acc.union(f));

    // |S| ≤ ((k+3)/2)² ≤ min(a,b) by the precondition
    let s_cap = match side {
        Side::U => b,
        Side::V => a,
    };
    if subject_s.cardinality() > s_cap {
        return Err(internal(format!(
            "reduced subject {subject_s} has {} vertices, above the cap {s_cap}",
            subject_s.cardinality()
        )));
    }
    if state.rank_of(subject_s).corank < 2 {
        return Err(internal(format!(
            "reduced subject {subject_s} lost corank 2 at step {step}"
        )));
    }

    // opposite-side T on the smallest indices disjoint from S
    let s_indices: BTreeSet<usize> = subject_s
        .vertices()
        .map(|v| labeling.pair_index(v))
        .collect();
    let t_size = match side {
        Side::U => a + 1,
        Side::V => b + 1,
    };
    let opposite = |nu: usize| match side {
        Side::U => labeling.v(nu),
        Side::V => labeling.u(nu),
    };
    let mut complement_t = Face::EMPTY;
    for nu in 0..labeling.n() {
        if complement_t.cardinality() == t_size {
            break;
        }
        if !s_indices.contains(&nu) {
            complement_t = complement_t.insert(opposite(nu));
        }
    }
    if complement_t.cardinality() != t_size {
        return Err(internal("not enough free indices for T".into()));
    }

    let t_rank = state.rank_of(complement_t);
    if t_rank.corank > 1 {
        return Err(internal(format!(
            "opposite-side set {complement_t} has corank {} at step {step}, expected <= 1",
            t_rank.corank
        )));
    }
    let a_size = t_size - 1;
    let mut face_a = t_rank.witness;
    while face_a.cardinality() > a_size {
        let last = face_a.vertices().last().expect("nonempty");
        face_a = face_a.remove(last);
    }
    if face_a.cardinality() != a_size || !state.contains_face(face_a) {
        return Err(internal(format!(
            "could not extract a size-{a_size} face of {complement_t}"
        )));
    }

    // A must extend to no face of full size a+b
    let full = a + b;
    if let Some(f) = state
        .facets()
        .iter()
        .find(|f| f.cardinality() == full && face_a.is_subset_of(**f))
    {
        return Err(internal(format!(
            "face {face_a} unexpectedly extends to the full-size face {f}"
        )));
    }

    let violation = format!(
        "face {face_a} of the step-{step} state extends to no face of size {full}, \
         so the state is not pure of dimension {}; the shedding sequence was already illegal",
        full - 1
    );
    Ok(ObstructionWitness {
        fail_step: step,
        side,
        subject_s,
        subcollection,
        extraction_witnesses: extraction.witnesses.iter().map(|&w| VertexId(w)).collect(),
        complement_t,
        face_a,
        first_impure_step,
        violation,
    })
}

/// Parses {"faces": [[...], ...]} where entries are vertex ids or
/// labels like "u3"/"v1".
pub fn parse_sequence_json(
    s: &str,
    labeling: &DeltaLabeling,
) -> Result<Vec<Face>, ObstructionError> {
    let doc: serde_json::Value =
        serde_json::from_str(s).map_err(|e| ObstructionError::SequenceJson(e.to_string()))?;
    let faces = doc
        .get("faces")
        .and_then(|f| f.as_array())
        .ok_or_else(|| ObstructionError::SequenceJson("missing \"faces\" array".into()))?;
    let mut out = Vec::with_capacity(faces.len());
    for entry in faces {
        let arr = entry
            .as_array()
            .ok_or_else(|| ObstructionError::SequenceJson("face entries must be arrays".into()))?;
        let mut face = Face::EMPTY;
        for item in arr {
            let v = match item {
                serde_json::Value::Number(n) => {
                    let id = n.as_u64().ok_or_else(|| {
                        ObstructionError::SequenceJson(format!("bad vertex id {n}"))
                    })?;
                    if id >= 2 * labeling.n() as u64 {
                        return Err(ObstructionError::SequenceJson(format!(
                            "vertex id {id} out of range"
                        )));
                    }
                    VertexId(id as u32)
                }
                serde_json::Value::String(label) => labeling
                    .parse_label(label)
                    .ok_or_else(|| ObstructionError::UnknownLabel(label.clone()))?,
                other => {
                    return Err(ObstructionError::SequenceJson(format!(
                        "face entries must be ids or labels, got {other}"
                    )))
                }
            };
            face = face.insert(v);
        }
        out.push(face);
    }
    Ok(out)
}

/// Serializes a shedding sequence with labels.
pub fn sequence_to_json(faces: &[Face], labeling: &DeltaLabeling) -> String {
    let doc = serde_json::json!({
        "faces": faces
            .iter()
            .map(|f| f.vertices().map(|v| labeling.label(v)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("sequence serialization");
    s.push('\n');
    s
}
