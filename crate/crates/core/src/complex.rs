//! Finite simplicial complexes, canonical orientations, incidence matrices
//! and Betti numbers.
//!
//! Simplices are stored as strictly increasing vertex tuples; the ascending
//! order doubles as the canonical orientation, so cochains and incidence
//! matrices are expressed in a fixed gauge and every output is deterministic.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, Rat};

pub type Vertex = u32;
pub type Simplex = Vec<Vertex>;

/// A downward-closed finite simplicial complex.
///
/// `simplices_by_dim[d]` lists the d-simplices sorted lexicographically, each
/// a strictly increasing vertex tuple. `up_degree[d][i]` is the number of
/// (d+1)-cofaces of the i-th d-simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    simplices_by_dim: Vec<Vec<Simplex>>,
    up_degree: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Smallest downward-closed complex containing the given facets.
    pub fn from_facets(facets: &[Vec<Vertex>]) -> Result<Self> {
        for f in facets {
            let set: BTreeSet<Vertex> = f.iter().copied().collect();
            if set.len() != f.len() {
                return Err(Error::MalformedInput(format!(
                    "facet {f:?} repeats a vertex"
                )));
            }
            if f.is_empty() {
                return Err(Error::MalformedInput("empty facet".into()));
            }
        }
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for f in facets {
            let mut sorted: Simplex = f.clone();
            sorted.sort_unstable();
            let d = sorted.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(BTreeSet::new());
            }
            insert_with_faces(&mut by_dim, sorted);
        }
        if by_dim.is_empty() {
            return Err(Error::MalformedInput("no facets given".into()));
        }
        Ok(Self::from_closed_sets(by_dim))
    }

    /// Builds from an explicit simplex list, verifying downward closure.
    pub fn from_all_simplices(simplices: &[Vec<Vertex>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in simplices {
            let set: BTreeSet<Vertex> = s.iter().copied().collect();
            if set.len() != s.len() || s.is_empty() {
                return Err(Error::MalformedInput(format!("bad simplex {s:?}")));
            }
            let mut sorted: Simplex = s.clone();
            sorted.sort_unstable();
            let d = sorted.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(BTreeSet::new());
            }
            by_dim[d].insert(sorted);
        }
        // closure check
        for d in 1..by_dim.len() {
            for s in by_dim[d].clone() {
                for j in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(j);
                    if !by_dim[d - 1].contains(&face) {
                        return Err(Error::MalformedInput(format!(
                            "not downward closed: {face:?} (face of {s:?}) is missing"
                        )));
                    }
                }
            }
        }
        if by_dim.is_empty() || by_dim[0].is_empty() {
            return Err(Error::MalformedInput("empty complex".into()));
        }
        Ok(Self::from_closed_sets(by_dim))
    }

    fn from_closed_sets(by_dim: Vec<BTreeSet<Simplex>>) -> Self {
        let simplices_by_dim: Vec<Vec<Simplex>> =
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let vertices: Vec<Vertex> = simplices_by_dim[0].iter().map(|s| s[0]).collect();
        let mut up_degree: Vec<Vec<usize>> = simplices_by_dim
            .iter()
            .map(|level| vec![0; level.len()])
            .collect();
        for d in 1..simplices_by_dim.len() {
            for s in &simplices_by_dim[d] {
                for j in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(j);
                    let idx = index_in(&simplices_by_dim[d - 1], &face)
                        .expect("closure guarantees the face exists");
                    up_degree[d - 1][idx] += 1;
                }
            }
        }
        SimplicialComplex {
            vertices,
            simplices_by_dim,
            up_degree,
        }
    }

    pub fn dim(&self) -> usize {
        self.simplices_by_dim.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// The d-simplices in canonical (lexicographic) order; empty slice above
    /// the top dimension.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices_by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices_by_dim.is_empty()
    }

    pub fn index_of(&self, d: usize, simplex: &[Vertex]) -> Option<usize> {
        index_in(self.simplices(d), simplex)
    }

    /// deg τ: number of (d+1)-cofaces of the i-th d-simplex.
    pub fn up_degree(&self, d: usize, i: usize) -> usize {
        self.up_degree[d][i]
    }

    pub fn up_degrees(&self, d: usize) -> &[usize] {
        &self.up_degree[d]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices_by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Every simplex of every dimension, flattened.
    pub fn all_simplices(&self) -> Vec<Simplex> {
        self.simplices_by_dim.iter().flatten().cloned().collect()
    }

    /// Facets (maximal simplices) of the complex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..=self.dim() {
            for (i, s) in self.simplices(d).iter().enumerate() {
                if self.up_degree[d][i] == 0 {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// True when every (d-1)-simplex lies in exactly two d-simplices, for
    /// d = dim; the codimension-one closedness of a pseudo-manifold.
    pub fn is_closed_at_top(&self) -> bool {
        let t = self.dim();
        if t == 0 {
            return false;
        }
        self.up_degree[t - 1].iter().all(|&deg| deg == 2)
    }
}

fn index_in(level: &[Simplex], simplex: &[Vertex]) -> Option<usize> {
    level.binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
}

fn insert_with_faces(by_dim: &mut [BTreeSet<Simplex>], simplex: Simplex) {
    let d = simplex.len() - 1;
    if by_dim[d].contains(&simplex) {
        return;
    }
    if d > 0 {
        for j in 0..simplex.len() {
            let mut face = simplex.clone();
            face.remove(j);
            insert_with_faces(by_dim, face);
        }
    }
    by_dim[d].insert(simplex);
}

/// Integer matrix of the boundary map ∂_d (equivalently δ_{d-1} transposed):
/// rows are (d-1)-simplices, columns are d-simplices, entries in {-1,0,1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub dim: usize,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<i8>,
}

impl IncidenceMatrix {
    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.entries[r * self.cols + c]
    }

    /// Nonzero (row, sign) pairs of a column: the facets of one d-simplex.
    pub fn column(&self, c: usize) -> Vec<(usize, i8)> {
        (0..self.rows)
            .filter_map(|r| {
                let e = self.get(r, c);
                (e != 0).then_some((r, e))
            })
            .collect()
    }

    /// y = Bᵀ x with integer arithmetic (x indexed by rows, y by columns).
    pub fn transpose_apply_i64(&self, x: &[i64]) -> Vec<i64> {
        let mut y = vec![0i64; self.cols];
        for r in 0..self.rows {
            if x[r] == 0 {
                continue;
            }
            for c in 0..self.cols {
                let e = self.get(r, c);
                if e != 0 {
                    y[c] += e as i64 * x[r];
                }
            }
        }
        y
    }

    /// y = B x with rational arithmetic (x indexed by columns).
    pub fn apply_rat(&self, x: &[Rat]) -> Vec<Rat> {
        use num_traits::Zero;
        let mut y = vec![Rat::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                if e != 0 {
                    let term = &x[c] * exact::rat(e as i64);
                    y[r] = &y[r] + term;
                }
            }
        }
        y
    }

    /// y = Bᵀ x with rational arithmetic (x indexed by rows).
    pub fn transpose_apply_rat(&self, x: &[Rat]) -> Vec<Rat> {
        use num_traits::Zero;
        let mut y = vec![Rat::zero(); self.cols];
        for c in 0..self.cols {
            for r in 0..self.rows {
                let e = self.get(r, c);
                if e != 0 {
                    let term = &x[r] * exact::rat(e as i64);
                    y[c] = &y[c] + term;
                }
            }
        }
        y
    }

    pub fn to_rational(&self) -> Vec<Vec<Rat>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| exact::rat(self.get(r, c) as i64)).collect())
            .collect()
    }

    pub fn transpose_to_rational(&self) -> Vec<Vec<Rat>> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| exact::rat(self.get(r, c) as i64)).collect())
            .collect()
    }

    pub fn to_bigint(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| BigInt::from(self.get(r, c))).collect())
            .collect()
    }

    /// GF(2) rows packed as bitmasks.
    pub fn gf2_rows(&self) -> Vec<Vec<u64>> {
        let words = self.cols.div_ceil(64).max(1);
        (0..self.rows)
            .map(|r| {
                let mut row = vec![0u64; words];
                for c in 0..self.cols {
                    if self.get(r, c) != 0 {
                        row[c / 64] |= 1 << (c % 64);
                    }
                }
                row
            })
            .collect()
    }
}

/// Boundary incidence matrix B_d of a complex, entry(τ,σ) = (-1)^j when τ is
/// σ with its j-th vertex removed.
pub fn incidence_matrix(k: &SimplicialComplex, d: usize) -> Result<IncidenceMatrix> {
    if d == 0 || d > k.dim() {
        return Err(Error::DimensionOutOfRange { dim: d, max: k.dim() });
    }
    let rows = k.len(d - 1);
    let cols = k.len(d);
    let mut entries = vec![0i8; rows * cols];
    for (c, s) in k.simplices(d).iter().enumerate() {
        for j in 0..s.len() {
            let mut face = s.clone();
            face.remove(j);
            let r = k.index_of(d - 1, &face).expect("closure");
            entries[r * cols + c] = if j % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(IncidenceMatrix { dim: d, rows, cols, entries })
}

/// Rank of B_d over the rationals, with the conventions rank(B_0) = 0 and
/// rank = 0 above the top dimension.
pub fn boundary_rank(k: &SimplicialComplex, d: usize) -> usize {
    if d == 0 || d > k.dim() {
        return 0;
    }
    let b = incidence_matrix(k, d).expect("in range");
    exact::rank_rational(&b.to_rational())
}

fn boundary_rank_gf2(k: &SimplicialComplex, d: usize) -> usize {
    if d == 0 || d > k.dim() {
        return 0;
    }
    let b = incidence_matrix(k, d).expect("in range");
    exact::rank_gf2(&b.gf2_rows(), b.cols)
}

/// Coefficient field for Betti number computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Gf2,
}

/// Unreduced Betti numbers: b_d = #Σ_d - rank(B_d) - rank(B_{d+1}),
/// computed in exact arithmetic over the requested field.
pub fn betti_numbers(k: &SimplicialComplex, field: Field) -> Vec<usize> {
    let rank = |d: usize| match field {
        Field::Rationals => boundary_rank(k, d),
        Field::Gf2 => boundary_rank_gf2(k, d),
    };
    (0..=k.dim())
        .map(|d| k.len(d) - rank(d) - rank(d + 1))
        .collect()
}

/// A real or rational-valued function on the canonically oriented
/// d-simplices, stored in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub dim: usize,
    pub values: Vec<Rat>,
}

impl Cochain {
    pub fn new(dim: usize, values: Vec<Rat>) -> Self {
        Cochain { dim, values }
    }

    pub fn from_i64(dim: usize, values: &[i64]) -> Self {
        Cochain { dim, values: values.iter().map(|&v| exact::rat(v)).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<Vec<Vertex>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simplices: Option<BTreeMap<String, Vec<Vec<Vertex>>>>,
}

/// Parses the JSON input format: either `{"facets": [[v,...],...]}` (taken to
/// the downward closure) or `{"simplices": {"0": [...], ...}}` (verified to
/// be closed).
pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile = serde_json::from_str(text)
        .map_err(|e| Error::MalformedInput(format!("invalid JSON: {e}")))?;
    match (file.facets, file.simplices) {
        (Some(f), None) => SimplicialComplex::from_facets(&f),
        (None, Some(map)) => {
            let mut all = Vec::new();
            for (dim_str, list) in &map {
                let d: usize = dim_str.parse().map_err(|_| {
                    Error::MalformedInput(format!("bad dimension key {dim_str:?}"))
                })?;
                for s in list {
                    if s.len() != d + 1 {
                        return Err(Error::MalformedInput(format!(
                            "simplex {s:?} listed under dimension {d}"
                        )));
                    }
                    all.push(s.clone());
                }
            }
            SimplicialComplex::from_all_simplices(&all)
        }
        _ => Err(Error::MalformedInput(
            "expected exactly one of \"facets\" or \"simplices\"".into(),
        )),
    }
}

/// Serializes a complex as its facet list.
pub fn complex_to_json(k: &SimplicialComplex) -> String {
    let file = ComplexFile { facets: Some(k.maximal_simplices()), simplices: None };
    serde_json::to_string(&file).expect("serializable")
}

/// Canonical full-simplex-list serialization; the stable content identity of
/// a complex used for report digests.
pub fn canonical_json(k: &SimplicialComplex) -> String {
    let mut map = BTreeMap::new();
    for d in 0..=k.dim() {
        map.insert(d.to_string(), k.simplices(d).to_vec());
    }
    let file = ComplexFile { facets: None, simplices: Some(map) };
    serde_json::to_string(&file).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a_triangle() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.len(0), 3);
        assert_eq!(k.len(1), 3);
        assert_eq!(k.len(2), 1);
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn three_cycle_has_no_triangle() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.len(1), 3);
    }

    #[test]
    fn duplicate_vertex_in_facet_is_rejected() {
        let err = SimplicialComplex::from_facets(&[vec![0, 1, 1]]).unwrap_err();
        assert!(matches!(err, Error::MalformedInput(_)));
    }

    #[test]
    fn closure_idempotence() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![2, 3]]).unwrap();
        let again = SimplicialComplex::from_facets(&k.all_simplices()).unwrap();
        assert_eq!(k, again);
    }

    #[test]
    fn triangle_boundary_column_signs() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        let b2 = incidence_matrix(&k, 2).unwrap();
        // column of [0,1,2]: +1 on [1,2], -1 on [0,2], +1 on [0,1]
        let r01 = k.index_of(1, &[0, 1]).unwrap();
        let r02 = k.index_of(1, &[0, 2]).unwrap();
        let r12 = k.index_of(1, &[1, 2]).unwrap();
        assert_eq!(b2.get(r12, 0), 1);
        assert_eq!(b2.get(r02, 0), -1);
        assert_eq!(b2.get(r01, 0), 1);
    }

    #[test]
    fn incidence_out_of_range() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1]]).unwrap();
        assert!(incidence_matrix(&k, 2).is_err());
        assert!(incidence_matrix(&k, 0).is_err());
    }

    fn boundary_product_is_zero(k: &SimplicialComplex) {
        for d in 1..k.dim() {
            let bd = incidence_matrix(k, d).unwrap();
            let bd1 = incidence_matrix(k, d + 1).unwrap();
            for r in 0..bd.rows {
                for c in 0..bd1.cols {
                    let mut acc: i64 = 0;
                    for m in 0..bd.cols {
                        acc += bd.get(r, m) as i64 * bd1.get(m, c) as i64;
                    }
                    assert_eq!(acc, 0, "B_{d} * B_{} != 0", d + 1);
                }
            }
        }
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let tetra = SimplicialComplex::from_facets(&[vec![0, 1, 2, 3]]).unwrap();
        boundary_product_is_zero(&tetra);
        let two = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        boundary_product_is_zero(&two);
    }

    #[test]
    fn betti_of_sphere_boundary() {
        // ∂Δ³ ≅ S²
        let facets: Vec<Vec<Vertex>> = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        let k = SimplicialComplex::from_facets(&facets).unwrap();
        assert_eq!(betti_numbers(&k, Field::Rationals), vec![1, 0, 1]);
    }

    #[test]
    fn up_degree_sum_identity() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2, 3], vec![3, 4, 5]]).unwrap();
        for d in 0..k.dim() {
            let lhs: usize = k.up_degrees(d).iter().sum();
            assert_eq!(lhs, (d + 2) * k.len(d + 1));
        }
    }

    #[test]
    fn json_roundtrip_and_closure_check() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        let text = complex_to_json(&k);
        let back = complex_from_json(&text).unwrap();
        assert_eq!(k, back);

        let canon = canonical_json(&k);
        let back2 = complex_from_json(&canon).unwrap();
        assert_eq!(k, back2);

        // missing face must be rejected
        let bad = r#"{"simplices": {"0": [[0],[1]], "1": [[0,1],[1,2]]}}"#;
        assert!(complex_from_json(bad).is_err());
    }

    #[test]
    fn euler_characteristic_matches_betti_alternation() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        let b = betti_numbers(&k, Field::Rationals);
        let alt: i64 = b
            .iter()
            .enumerate()
            .map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum();
        assert_eq!(k.euler_characteristic(), alt);
    }
}
