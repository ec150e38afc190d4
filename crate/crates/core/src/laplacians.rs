//! Assembly of the up/down/full Laplacians of a complex, spectral reports,
//! and the structural spectrum checks (kernel = cohomology, up/down duality,
//! nonzero-spectrum splitting).
//!
//! The unnormalized operators are L_d^up = B_{d+1} B_{d+1}ᵀ,
//! L_d^down = B_dᵀ B_d and their sum. The degree-normalized up operator is
//! realized as the symmetric matrix D^{-1/2} B_{d+1} B_{d+1}ᵀ D^{-1/2} with
//! D = diag(deg τ); it is isospectral to the combinatorial normalized
//! up-Laplacian, whose matrix in the simplex basis is not symmetric. The
//! normalized down operator divides by the facet count d+1, which is the
//! constant down-degree of a d-simplex in a downward-closed complex.

use crate::complex::{betti_numbers, boundary_rank, incidence_matrix, Field, SimplicialComplex};
use crate::error::{Error, Result};
use crate::numlin::{
    eigen_symmetric, multiplicity_of, multisets_match, SymmetricMatrix, DEFAULT_EIGEN_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    Up,
    Down,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Unnormalized,
    DegreeNormalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaplacianSpec {
    pub dim: usize,
    pub kind: LaplacianKind,
    pub normalization: Normalization,
}

fn up_matrix(k: &SimplicialComplex, d: usize) -> SymmetricMatrix {
    let n = k.len(d);
    if d >= k.dim() {
        return SymmetricMatrix::zeros(n);
    }
    let b = incidence_matrix(k, d + 1).expect("d+1 in range");
    SymmetricMatrix::from_fn(n, |i, j| {
        (0..b.cols)
            .map(|c| b.get(i, c) as f64 * b.get(j, c) as f64)
            .sum()
    })
}

fn down_matrix(k: &SimplicialComplex, d: usize) -> SymmetricMatrix {
    let n = k.len(d);
    if d == 0 {
        return SymmetricMatrix::zeros(n);
    }
    let b = incidence_matrix(k, d).expect("d in range");
    SymmetricMatrix::from_fn(n, |i, j| {
        (0..b.rows)
            .map(|r| b.get(r, i) as f64 * b.get(r, j) as f64)
            .sum()
    })
}

pub fn assemble_laplacian(k: &SimplicialComplex, spec: LaplacianSpec) -> Result<SymmetricMatrix> {
    let d = spec.dim;
    if d > k.dim() {
        return Err(Error::DimensionOutOfRange { dim: d, max: k.dim() });
    }
    let n = k.len(d);
    let raw = match spec.kind {
        LaplacianKind::Up => up_matrix(k, d),
        LaplacianKind::Down => down_matrix(k, d),
        LaplacianKind::Full => {
            let up = up_matrix(k, d);
            let down = down_matrix(k, d);
            SymmetricMatrix::from_fn(n, |i, j| up.get(i, j) + down.get(i, j))
        }
    };
    match spec.normalization {
        Normalization::Unnormalized => Ok(raw),
        Normalization::DegreeNormalized => match spec.kind {
            LaplacianKind::Up => {
                let degs = k.up_degrees(d);
                if let Some(i) = degs.iter().position(|&x| x == 0) {
                    return Err(Error::DegenerateDegree(format!(
                        "simplex {:?} has up-degree 0",
                        k.simplices(d)[i]
                    )));
                }
                let scale: Vec<f64> = degs.iter().map(|&x| 1.0 / (x as f64).sqrt()).collect();
                Ok(SymmetricMatrix::from_fn(n, |i, j| raw.get(i, j) * scale[i] * scale[j]))
            }
            LaplacianKind::Down => {
                // the down-degree of a d-simplex is its facet count d+1
                let c = (d + 1) as f64;
                Ok(SymmetricMatrix::from_fn(n, |i, j| raw.get(i, j) / c))
            }
            LaplacianKind::Full => Err(Error::Precondition(
                "degree normalization applies to up or down parts, not the full Laplacian".into(),
            )),
        },
    }
}

/// Index of the first nontrivial up-eigenvalue, I_d = rank(B_d) + 1
/// (1-based). At d = 0 the reduced convention rank(B_0) = 1 applies, so that
/// I_0 = 2 points at the first eigenvalue past the constants.
pub fn index_first_up(k: &SimplicialComplex, d: usize) -> usize {
    if d == 0 {
        2
    } else {
        boundary_rank(k, d) + 1
    }
}

#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub spec: LaplacianSpec,
    pub eigenvalues: Vec<f64>,
    pub zero_multiplicity: usize,
    /// Exact kernel dimension of the operator, from rational ranks; the
    /// tolerance count must agree with this or tests fail.
    pub exact_kernel_dim: usize,
    /// I_d = rank(B_d)+1.
    pub index_first_up: usize,
    pub n: usize,
}

pub fn spectral_report(k: &SimplicialComplex, spec: LaplacianSpec) -> Result<SpectralReport> {
    let m = assemble_laplacian(k, spec)?;
    let dec = eigen_symmetric(&m)?;
    let d = spec.dim;
    let n = k.len(d);
    let rank_up = boundary_rank(k, d + 1);
    let rank_down = boundary_rank(k, d);
    // normalization never changes the kernel for the operators we expose
    let exact_kernel_dim = match spec.kind {
        LaplacianKind::Up => n - rank_up,
        LaplacianKind::Down => n - rank_down,
        LaplacianKind::Full => betti_numbers(k, Field::Rationals)[d],
    };
    Ok(SpectralReport {
        spec,
        zero_multiplicity: multiplicity_of(&dec, 0.0, DEFAULT_EIGEN_TOL),
        exact_kernel_dim,
        eigenvalues: dec.eigenvalues,
        index_first_up: index_first_up(k, d),
        n,
    })
}

/// Eigenvalue at index I_d (1-based) of the normalized up-Laplacian; the
/// smallest nontrivial up eigenvalue.
pub fn lambda_first_nontrivial_up(k: &SimplicialComplex, d: usize) -> Result<f64> {
    let report = spectral_report(
        k,
        LaplacianSpec {
            dim: d,
            kind: LaplacianKind::Up,
            normalization: Normalization::DegreeNormalized,
        },
    )?;
    let idx = report.index_first_up;
    if idx > report.n {
        return Err(Error::Precondition(format!(
            "I_{d} = {idx} exceeds #Σ_{d} = {}; no nontrivial cochains",
            report.n
        )));
    }
    Ok(report.eigenvalues[idx - 1])
}

#[derive(Debug, Clone)]
pub struct EckmannReport {
    /// per dimension: (betti number, zero multiplicity of L_d)
    pub per_dim: Vec<(usize, usize)>,
    pub pass: bool,
}

/// Kernel of the full Laplacian realizes cohomology: for every d the
/// multiplicity of the eigenvalue 0 of L_d equals b_d over the rationals.
pub fn verify_eckmann(k: &SimplicialComplex) -> Result<EckmannReport> {
    let betti = betti_numbers(k, Field::Rationals);
    let mut per_dim = Vec::new();
    let mut pass = true;
    for d in 0..=k.dim() {
        let m = assemble_laplacian(
            k,
            LaplacianSpec { dim: d, kind: LaplacianKind::Full, normalization: Normalization::Unnormalized },
        )?;
        let dec = eigen_symmetric(&m)?;
        let mult = multiplicity_of(&dec, 0.0, DEFAULT_EIGEN_TOL);
        if mult != betti[d] {
            pass = false;
        }
        per_dim.push((betti[d], mult));
    }
    Ok(EckmannReport { per_dim, pass })
}

#[derive(Debug, Clone)]
pub struct DualityReport {
    pub up_nonzero: Vec<f64>,
    pub down_nonzero: Vec<f64>,
    pub pass: bool,
}

pub fn nonzero_part(eigenvalues: &[f64], tol: f64) -> Vec<f64> {
    eigenvalues.iter().copied().filter(|l| l.abs() > tol).collect()
}

/// Nonzero spectra of L_d^up and L_{d+1}^down agree as multisets.
pub fn verify_up_down_duality(k: &SimplicialComplex, d: usize) -> Result<DualityReport> {
    if d + 1 > k.dim() {
        return Err(Error::DimensionOutOfRange { dim: d + 1, max: k.dim() });
    }
    let up = assemble_laplacian(
        k,
        LaplacianSpec { dim: d, kind: LaplacianKind::Up, normalization: Normalization::Unnormalized },
    )?;
    let down = assemble_laplacian(
        k,
        LaplacianSpec { dim: d + 1, kind: LaplacianKind::Down, normalization: Normalization::Unnormalized },
    )?;
    let up_nonzero = nonzero_part(&eigen_symmetric(&up)?.eigenvalues, DEFAULT_EIGEN_TOL);
    let down_nonzero = nonzero_part(&eigen_symmetric(&down)?.eigenvalues, DEFAULT_EIGEN_TOL);
    let pass = multisets_match(&up_nonzero, &down_nonzero, DEFAULT_EIGEN_TOL);
    Ok(DualityReport { up_nonzero, down_nonzero, pass })
}

/// Nonzero spectrum of L_d equals the union of the nonzero spectra of
/// L_d^up and L_d^down as multisets.
pub fn verify_nonzero_union(k: &SimplicialComplex, d: usize) -> Result<bool> {
    let spec = |kind| LaplacianSpec { dim: d, kind, normalization: Normalization::Unnormalized };
    let full = eigen_symmetric(&assemble_laplacian(k, spec(LaplacianKind::Full))?)?;
    let up = eigen_symmetric(&assemble_laplacian(k, spec(LaplacianKind::Up))?)?;
    let down = eigen_symmetric(&assemble_laplacian(k, spec(LaplacianKind::Down))?)?;
    let mut union = nonzero_part(&up.eigenvalues, DEFAULT_EIGEN_TOL);
    union.extend(nonzero_part(&down.eigenvalues, DEFAULT_EIGEN_TOL));
    Ok(multisets_match(
        &nonzero_part(&full.eigenvalues, DEFAULT_EIGEN_TOL),
        &union,
        DEFAULT_EIGEN_TOL,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn boundary_simplex_3() -> SimplicialComplex {
        SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
            .unwrap()
    }

    #[test]
    fn triangle_cycle_normalized_spectrum() {
        // 3-cycle as a pure graph: normalized laplacian spectrum (0, 3/2, 3/2)
        let k = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let m = assemble_laplacian(
            &k,
            LaplacianSpec { dim: 0, kind: LaplacianKind::Up, normalization: Normalization::DegreeNormalized },
        )
        .unwrap();
        let dec = eigen_symmetric(&m).unwrap();
        assert!((dec.eigenvalues[0]).abs() < 1e-9);
        assert!((dec.eigenvalues[1] - 1.5).abs() < 1e-9);
        assert!((dec.eigenvalues[2] - 1.5).abs() < 1e-9);
    }

    #[test]
    fn unnormalized_up_diagonal_is_degree() {
        let k = boundary_simplex_3();
        let m = assemble_laplacian(
            &k,
            LaplacianSpec { dim: 1, kind: LaplacianKind::Up, normalization: Normalization::Unnormalized },
        )
        .unwrap();
        for i in 0..k.len(1) {
            assert_eq!(m.get(i, i), 2.0); // each edge lies in two triangles
        }
    }

    #[test]
    fn normalized_up_spectrum_in_range() {
        let k = boundary_simplex_3();
        for d in 0..k.dim() {
            let m = assemble_laplacian(
                &k,
                LaplacianSpec { dim: d, kind: LaplacianKind::Up, normalization: Normalization::DegreeNormalized },
            )
            .unwrap();
            let dec = eigen_symmetric(&m).unwrap();
            for l in dec.eigenvalues {
                assert!(l >= -1e-9 && l <= (d + 2) as f64 + 1e-9);
            }
        }
    }

    #[test]
    fn spectral_report_fields() {
        let k = boundary_simplex_3();
        let rep = spectral_report(
            &k,
            LaplacianSpec { dim: 1, kind: LaplacianKind::Up, normalization: Normalization::DegreeNormalized },
        )
        .unwrap();
        // rank(B_1) = 3 so I_1 = 4; kernel of the up operator is ker(B_2ᵀ), dim 3
        assert_eq!(rep.index_first_up, 4);
        assert_eq!(rep.zero_multiplicity, 3);
        assert_eq!(rep.exact_kernel_dim, 3);

        let full = spectral_report(
            &k,
            LaplacianSpec { dim: 1, kind: LaplacianKind::Full, normalization: Normalization::Unnormalized },
        )
        .unwrap();
        assert_eq!(full.zero_multiplicity, 0); // = b_1
    }

    #[test]
    fn disjoint_triangles_have_two_components() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let rep = spectral_report(
            &k,
            LaplacianSpec { dim: 0, kind: LaplacianKind::Full, normalization: Normalization::Unnormalized },
        )
        .unwrap();
        assert_eq!(rep.zero_multiplicity, 2);
    }

    #[test]
    fn eckmann_on_small_complexes() {
        let sphere = boundary_simplex_3();
        let rep = verify_eckmann(&sphere).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.per_dim.iter().map(|p| p.0).collect::<Vec<_>>(), vec![1, 0, 1]);

        let solid = SimplicialComplex::from_facets(&[vec![0, 1, 2, 3]]).unwrap();
        let rep = verify_eckmann(&solid).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.per_dim[0].0, 1);
        for d in 1..=solid.dim() {
            assert_eq!(rep.per_dim[d].0, 0);
        }
    }

    #[test]
    fn up_down_duality_small() {
        let k = boundary_simplex_3();
        for d in 0..k.dim() {
            assert!(verify_up_down_duality(&k, d).unwrap().pass);
        }
        let graph = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(verify_up_down_duality(&graph, 0).unwrap().pass);
    }

    #[test]
    fn nonzero_union_identity() {
        let k = boundary_simplex_3();
        for d in 0..=k.dim() {
            assert!(verify_nonzero_union(&k, d).unwrap());
        }
    }

    #[test]
    fn up_kernel_at_least_d_plus_1_for_pure() {
        let k = boundary_simplex_3();
        for d in 0..k.dim() {
            let rep = spectral_report(
                &k,
                LaplacianSpec { dim: d, kind: LaplacianKind::Up, normalization: Normalization::DegreeNormalized },
            )
            .unwrap();
            assert!(rep.zero_multiplicity >= d + 1);
        }
    }

    #[test]
    fn rayleigh_quotients_stay_in_spectral_range() {
        let k = boundary_simplex_3();
        let d = 1;
        let b2 = crate::complex::incidence_matrix(&k, 2).unwrap();
        let m = assemble_laplacian(
            &k,
            LaplacianSpec { dim: d, kind: LaplacianKind::Up, normalization: Normalization::DegreeNormalized },
        )
        .unwrap();
        let dec = eigen_symmetric(&m).unwrap();
        let (lo, hi) = (dec.eigenvalues[0], *dec.eigenvalues.last().unwrap());
        let degs = k.up_degrees(d);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let f: Vec<f64> = (0..k.len(d)).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut num = 0.0;
            for c in 0..b2.cols {
                let mut acc = 0.0;
                for r in 0..b2.rows {
                    acc += b2.get(r, c) as f64 * f[r];
                }
                num += acc * acc;
            }
            let den: f64 = f.iter().zip(degs).map(|(x, &w)| w as f64 * x * x).sum();
            if den < 1e-12 {
                continue;
            }
            let q = num / den;
            assert!(q >= lo - 1e-9 && q <= hi + 1e-9);
        }
    }

    #[test]
    fn degenerate_degree_is_reported() {
        // an edge dangling off a triangle has up-degree 0
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![2, 3]]).unwrap();
        let err = assemble_laplacian(
            &k,
            LaplacianSpec { dim: 1, kind: LaplacianKind::Up, normalization: Normalization::DegreeNormalized },
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateDegree(_)));
    }
}
