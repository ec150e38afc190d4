//! Signed graphs: the signed graph (Γ_d, s) on the d-simplices of a complex,
//! signed Laplacian spectra, balance/antibalance detection by switching, and
//! exact signed Cheeger constants by exhaustive search.

use rayon::prelude::*;

use crate::complex::{incidence_matrix, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::numlin::SymmetricMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedEdge {
    pub u: usize,
    pub v: usize,
    pub sign: i8,
}

/// Undirected graph with ±1 edge signs; at most one edge per vertex pair.
#[derive(Debug, Clone)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<SignedEdge>,
    adj: Vec<Vec<(usize, i8)>>,
}

impl SignedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, i8)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::BTreeSet::new();
        let mut es = Vec::with_capacity(edges.len());
        for (a, b, s) in edges {
            if a == b {
                return Err(Error::MalformedInput(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::MalformedInput(format!("edge ({a},{b}) out of range")));
            }
            if s != 1 && s != -1 {
                return Err(Error::MalformedInput(format!("sign {s} is not ±1")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(Error::MalformedInput(format!("duplicate edge ({u},{v})")));
            }
            adj[u].push((v, s));
            adj[v].push((u, s));
            es.push(SignedEdge { u, v, sign: s });
        }
        es.sort_by_key(|e| (e.u, e.v));
        Ok(SignedGraph { n, edges: es, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[SignedEdge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Same graph with every sign flipped.
    pub fn opposite(&self) -> SignedGraph {
        let edges = self.edges.iter().map(|e| (e.u, e.v, -e.sign)).collect();
        SignedGraph::new(self.n, edges).expect("valid by construction")
    }

    /// Switch at the vertices where theta is -1: each edge sign becomes
    /// theta(u)·s(uv)·theta(v).
    pub fn switched(&self, theta: &[i8]) -> SignedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, theta[e.u] * e.sign * theta[e.v]))
            .collect();
        SignedGraph::new(self.n, edges).expect("valid by construction")
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut queue = vec![start];
            seen[start] = true;
            let mut comp = Vec::new();
            while let Some(v) = queue.pop() {
                comp.push(v);
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// The signed graph (Γ_d, s): one vertex per d-simplex, an edge whenever two
/// distinct d-simplices are facets of a common (d+1)-simplex, signed by the
/// product of their boundary signs in that coface.
pub fn build_up_signed_graph(k: &SimplicialComplex, d: usize) -> Result<SignedGraph> {
    if d + 1 > k.dim() || k.len(d + 1) == 0 {
        return Err(Error::Precondition(format!("no ({})-simplices", d + 1)));
    }
    let b = incidence_matrix(k, d + 1)?;
    let n = k.len(d);
    let mut edge_map: std::collections::BTreeMap<(usize, usize), i8> = std::collections::BTreeMap::new();
    for c in 0..b.cols {
        let faces = b.column(c);
        for i in 0..faces.len() {
            for j in (i + 1)..faces.len() {
                let (u, su) = faces[i];
                let (v, sv) = faces[j];
                let sign = su * sv;
                // in a simplicial complex two distinct d-simplices determine
                // their common coface, so a pair can never repeat
                if edge_map.insert((u, v), sign).is_some() {
                    return Err(Error::AmbiguousAdjacency(format!(
                        "{:?} and {:?} share more than one coface",
                        k.simplices(d)[u],
                        k.simplices(d)[v]
                    )));
                }
            }
        }
    }
    let edges = edge_map.into_iter().map(|((u, v), s)| (u, v, s)).collect();
    let g = SignedGraph::new(n, edges)?;
    for (i, &deg) in k.up_degrees(d).iter().enumerate() {
        debug_assert_eq!(g.degree(i), (d + 1) * deg);
    }
    Ok(g)
}

/// Symmetric realization D^{-1/2}(D - A_s)D^{-1/2} of the signed Laplacian;
/// isospectral to the degree-normalized operator.
pub fn signed_laplacian(g: &SignedGraph) -> Result<SymmetricMatrix> {
    let n = g.vertex_count();
    for v in 0..n {
        if g.degree(v) == 0 {
            return Err(Error::DegenerateDegree(format!("vertex {v} is isolated")));
        }
    }
    let scale: Vec<f64> = (0..n).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut m = SymmetricMatrix::zeros(n);
    for v in 0..n {
        m.set_sym(v, v, 1.0);
    }
    for e in g.edges() {
        m.set_sym(e.u, e.v, -(e.sign as f64) * scale[e.u] * scale[e.v]);
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BalanceVerdict {
    Balanced,
    Antibalanced,
    /// Balanced and antibalanced at once (e.g. an all-positive even cycle).
    Both,
    Neither,
}

#[derive(Debug, Clone)]
pub struct ComponentBalance {
    pub vertices: Vec<usize>,
    pub verdict: BalanceVerdict,
    /// Switching function over the whole vertex set (+1 outside the
    /// component) making the component all-positive, when balanced.
    pub balanced_witness: Option<Vec<i8>>,
    pub antibalanced_witness: Option<Vec<i8>>,
}

fn propagate(g: &SignedGraph, comp: &[usize], target: i8) -> Option<Vec<i8>> {
    // find theta with theta(u) theta(v) s(uv) = target on every edge
    let mut theta = vec![0i8; g.vertex_count()];
    let start = comp[0];
    theta[start] = 1;
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for &(w, s) in &g.adj[v] {
            let want = theta[v] * s * target;
            if theta[w] == 0 {
                theta[w] = want;
                queue.push(w);
            } else if theta[w] != want {
                return None;
            }
        }
    }
    for v in 0..g.vertex_count() {
        if theta[v] == 0 {
            theta[v] = 1;
        }
    }
    Some(theta)
}

/// BFS-propagated switching per connected component: balanced iff a
/// consistent assignment reaches all-positive, antibalanced iff all-negative.
pub fn balance_decompose(g: &SignedGraph) -> Vec<ComponentBalance> {
    g.components()
        .into_iter()
        .map(|comp| {
            let balanced = propagate(g, &comp, 1);
            let anti = propagate(g, &comp, -1);
            let verdict = match (&balanced, &anti) {
                (Some(_), Some(_)) => BalanceVerdict::Both,
                (Some(_), None) => BalanceVerdict::Balanced,
                (None, Some(_)) => BalanceVerdict::Antibalanced,
                (None, None) => BalanceVerdict::Neither,
            };
            ComponentBalance { vertices: comp, verdict, balanced_witness: balanced, antibalanced_witness: anti }
        })
        .collect()
}

pub fn balanced_component_count(g: &SignedGraph) -> usize {
    balance_decompose(g)
        .iter()
        .filter(|c| matches!(c.verdict, BalanceVerdict::Balanced | BalanceVerdict::Both))
        .count()
}

pub fn antibalanced_component_count(g: &SignedGraph) -> usize {
    balance_decompose(g)
        .iter()
        .filter(|c| matches!(c.verdict, BalanceVerdict::Antibalanced | BalanceVerdict::Both))
        .count()
}

/// Signed bipartiteness ratio β^s(V1, V2): twice the frustrated edges inside
/// the pair (negative within a side, positive across) plus the boundary of
/// V1 ⊔ V2, over its volume.
pub fn beta_s(g: &SignedGraph, v1: &[usize], v2: &[usize]) -> Rat {
    let mut side = vec![0u8; g.vertex_count()];
    for &v in v1 {
        side[v] = 1;
    }
    for &v in v2 {
        debug_assert_eq!(side[v], 0, "sub-bipartition sides must be disjoint");
        side[v] = 2;
    }
    let mut frustration = 0i64;
    let mut boundary = 0i64;
    for e in g.edges() {
        let (a, b) = (side[e.u], side[e.v]);
        match (a, b) {
            (0, 0) => {}
            (0, _) | (_, 0) => boundary += 1,
            _ if a == b => {
                if e.sign < 0 {
                    frustration += 1;
                }
            }
            _ => {
                if e.sign > 0 {
                    frustration += 1;
                }
            }
        }
    }
    let volume: i64 = side
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != 0)
        .map(|(v, _)| g.degree(v) as i64)
        .sum();
    Rat::new((2 * frustration + boundary).into(), volume.into())
}

#[derive(Debug, Clone)]
pub struct SignedCheegerReport {
    pub value: Rat,
    /// For each pair i, the two vertex sets (V_{2i-1}, V_{2i}).
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
    pub k: usize,
}

/// Default sizes beyond which the exhaustive k-way search refuses to run.
pub fn default_signed_limit(k: usize) -> usize {
    match k {
        1 => 12,
        2 => 9,
        _ => 8,
    }
}

/// Exact k-way signed Cheeger constant h^s_k by exhaustive enumeration of
/// assignments of vertices to {unused} ∪ {(pair i, side 1|2)}.
///
/// The enumeration is partitioned into disjoint index ranges evaluated in
/// parallel; the merge keeps the minimum with lexicographically smallest
/// assignment encoding, so the result is identical to a sequential run.
pub fn signed_cheeger(g: &SignedGraph, k: usize, limit: Option<usize>) -> Result<SignedCheegerReport> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("k = {k} out of range for {n} vertices")));
    }
    let limit = limit.unwrap_or_else(|| default_signed_limit(k));
    if n > limit {
        return Err(Error::Capacity(format!(
            "signed Cheeger enumeration limited to {limit} vertices for k = {k}, got {n}"
        )));
    }
    let base = (2 * k + 1) as u64;
    let total = base.pow(n as u32);

    let eval = |assignment: &[u8]| -> Option<(i64, i64)> {
        // per pair: numerator and volume; returns max β as a fraction
        let mut num = vec![0i64; k];
        let mut vol = vec![0i64; k];
        for e in g.edges() {
            let (a, b) = (assignment[e.u], assignment[e.v]);
            match (a, b) {
                (0, 0) => {}
                (0, x) | (x, 0) => num[pair_of(x)] += 1,
                _ => {
                    let (pa, pb) = (pair_of(a), pair_of(b));
                    if pa != pb {
                        num[pa] += 1;
                        num[pb] += 1;
                    } else if a == b {
                        if e.sign < 0 {
                            num[pa] += 2;
                        }
                    } else if e.sign > 0 {
                        num[pa] += 2;
                    }
                }
            }
        }
        for (v, &s) in assignment.iter().enumerate() {
            if s != 0 {
                vol[pair_of(s)] += g.degree(v) as i64;
            }
        }
        let mut best: Option<(i64, i64)> = None;
        for i in 0..k {
            if vol[i] == 0 {
                return None; // empty (or volume-free) pair: invalid assignment
            }
            let cand = (num[i], vol[i]);
            best = Some(match best {
                None => cand,
                Some(cur) => {
                    if frac_lt(&cur, &cand) {
                        cand
                    } else {
                        cur
                    }
                }
            });
        }
        best
    };

    let chunk_count = (rayon::current_num_threads() * 8).max(1) as u64;
    let chunk_size = total.div_ceil(chunk_count);
    let best = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * chunk_size;
            let end = (start + chunk_size).min(total);
            let mut local: Option<((i64, i64), Vec<u8>)> = None;
            let mut assignment = decode_assignment(start, base, n);
            let mut idx = start;
            while idx < end {
                // symmetry: the first used vertex goes on side 1 of its pair
                if canonical_first_side(&assignment) {
                    if let Some(score) = eval(&assignment) {
                        let better = match &local {
                            None => true,
                            Some((cur, enc)) => {
                                frac_lt(&score, cur)
                                    || (score == *cur && assignment.as_slice() < enc.as_slice())
                            }
                        };
                        if better {
                            local = Some((score, assignment.clone()));
                        }
                    }
                }
                idx += 1;
                if idx < end {
                    increment_assignment(&mut assignment, base as u8);
                }
            }
            local
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some((sa, ea)), Some((sb, eb))) => {
                    if frac_lt(&sb, &sa) || (sa == sb && eb < ea) {
                        Some((sb, eb))
                    } else {
                        Some((sa, ea))
                    }
                }
            },
        );

    let Some((score, assignment)) = best else {
        return Err(Error::Precondition(format!(
            "no valid assignment of {n} vertices into {k} nonempty sub-bipartitions"
        )));
    };
    let mut pairs = vec![(Vec::new(), Vec::new()); k];
    for (v, &s) in assignment.iter().enumerate() {
        if s != 0 {
            let p = pair_of(s);
            if s % 2 == 1 {
                pairs[p].0.push(v);
            } else {
                pairs[p].1.push(v);
            }
        }
    }
    Ok(SignedCheegerReport { value: Rat::new(score.0.into(), score.1.into()), pairs, k })
}

#[inline]
fn pair_of(label: u8) -> usize {
    ((label - 1) / 2) as usize
}

#[inline]
fn frac_lt(a: &(i64, i64), b: &(i64, i64)) -> bool {
    // a < b with positive denominators
    (a.0 as i128) * (b.1 as i128) < (b.0 as i128) * (a.1 as i128)
}

fn decode_assignment(index: u64, base: u64, n: usize) -> Vec<u8> {
    let mut a = vec![0u8; n];
    let mut x = index;
    for slot in a.iter_mut() {
        *slot = (x % base) as u8;
        x /= base;
    }
    a
}

fn increment_assignment(a: &mut [u8], base: u8) {
    for slot in a.iter_mut() {
        if *slot + 1 < base {
            *slot += 1;
            return;
        }
        *slot = 0;
    }
}

fn canonical_first_side(a: &[u8]) -> bool {
    match a.iter().find(|&&s| s != 0) {
        None => true,
        Some(&s) => s % 2 == 1,
    }
}

/// The smallest non-constant-signed eigenvalue bound check helper: h^s for
/// k = 1 with default limits.
pub fn signed_cheeger_1(g: &SignedGraph) -> Result<Rat> {
    Ok(signed_cheeger(g, 1, None)?.value)
}

/// True when h^s = 0, which happens exactly for balanced graphs.
pub fn is_balanced(g: &SignedGraph) -> bool {
    balance_decompose(g)
        .iter()
        .all(|c| matches!(c.verdict, BalanceVerdict::Balanced | BalanceVerdict::Both))
}
