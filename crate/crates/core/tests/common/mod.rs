//! Brute-force oracles shared by the integration suites. Everything
//! here recomputes from first principles, independently of the library
//! paths it is used to check.

#![allow(dead_code)]

use polydec_core::complex::{Face, SimplicialComplex};
use polydec_core::transport::{Margins, Rational};

/// Every face of the complex, by testing all subsets of the vertex
/// table for containment in a facet. Exponential; callers keep the
/// vertex count small.
pub fn all_faces_brute(c: &SimplicialComplex) -> Vec<Face> {
    assert!(c.vertex_count() <= 20, "brute closure is exponential");
    let mut out = Vec::new();
    for bits in 0..(1u64 << c.vertex_count()) {
        let f = Face::from_bits(bits);
        if c.contains_face(f) {
            out.push(f);
        }
    }
    out
}

/// Rank of a vertex set by trying all of its subsets.
pub fn rank_brute(c: &SimplicialComplex, s: Face) -> usize {
    let verts = s.vertex_vec();
    let mut best = 0;
    for bits in 0..(1u64 << verts.len()) {
        let sub = Face::of(
            verts
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &v)| v),
        );
        if c.contains_face(sub) {
            best = best.max(sub.cardinality());
        }
    }
    best
}

/// Number of k-dimensional faces by brute closure.
pub fn f_count_brute(c: &SimplicialComplex, k: i32) -> u64 {
    all_faces_brute(c)
        .iter()
        .filter(|f| f.dim() == k)
        .count() as u64
}

/// Solves a linear system exactly; `Some` only for a unique solution.
fn solve_unique(mut rows: Vec<Vec<Rational>>, unknowns: usize) -> Option<Vec<Rational>> {
    use num_traits::Zero;
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let head = rows[r][col];
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col] / head;
                for c in col..=unknowns {
                    let sub = factor * rows[r][c];
                    rows[i][c] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    // inconsistent?
    for row in rows.iter().skip(r) {
        if !row[unknowns].is_zero() {
            return None;
        }
    }
    if pivot_cols.len() < unknowns {
        return None; // underdetermined
    }
    let mut solution = vec![Rational::from_integer(0); unknowns];
    for (i, &col) in pivot_cols.iter().enumerate() {
        solution[col] = rows[i][unknowns] / rows[i][col];
    }
    Some(solution)
}

/// Transportation vertices as basic feasible solutions: every
/// acyclic (m+n−1)-edge support, solved by Gaussian elimination on the
/// margin equations, kept when nonnegative. Returns sorted, deduped
/// row-major matrices.
pub fn vertices_by_gaussian_elimination(margins: &Margins) -> Vec<Vec<Rational>> {
    use num_traits::Signed;
    let (m, n) = (margins.m(), margins.n());
    let edges: Vec<(usize, usize)> = (0..m)
        .flat_map(|mu| (0..n).map(move |nu| (mu, nu)))
        .collect();
    let want = m + n - 1;
    let mut found: Vec<Vec<Rational>> = Vec::new();

    let mut pick: Vec<usize> = (0..want).collect();
    loop {
        let support: Vec<(usize, usize)> = pick.iter().map(|&i| edges[i]).collect();
        if is_acyclic(m, n, &support) {
            // margin equations restricted to the support cells
            let unknowns = support.len();
            let mut rows = vec![vec![Rational::from_integer(0); unknowns + 1]; m + n];
            for (j, &(mu, nu)) in support.iter().enumerate() {
                rows[mu][j] = Rational::from_integer(1);
                rows[m + nu][j] = Rational::from_integer(1);
            }
            for mu in 0..m {
                rows[mu][unknowns] = margins.row()[mu];
            }
            for nu in 0..n {
                rows[m + nu][unknowns] = margins.col()[nu];
            }
            if let Some(sol) = solve_unique(rows, unknowns) {
                if sol.iter().all(|v| !v.is_negative()) {
                    let mut matrix = vec![Rational::from_integer(0); m * n];
                    for (j, &(mu, nu)) in support.iter().enumerate() {
                        matrix[mu * n + nu] = sol[j];
                    }
                    found.push(matrix);
                }
            }
        }
        // next combination
        let mut i = want;
        loop {
            if i == 0 {
                found.sort_unstable();
                found.dedup();
                return found;
            }
            i -= 1;
            if pick[i] != i + edges.len() - want {
                break;
            }
            if i == 0 {
                found.sort_unstable();
                found.dedup();
                return found;
            }
        }
        pick[i] += 1;
        for j in i + 1..want {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

fn is_acyclic(m: usize, n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(mu, nu) in edges {
        let (a, b) = (find(&mut parent, mu), find(&mut parent, m + nu));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}
