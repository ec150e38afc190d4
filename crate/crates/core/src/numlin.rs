//! Dense symmetric eigensolver (cyclic Jacobi) and small matrix utilities.

use crate::error::{Error, Result};

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    a: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, a: vec![0.0; n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.a[i * n + j] = v;
                m.a[j * n + i] = v;
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Simultaneous row/column permutation: entry(i,j) of the result equals
    /// `entry(perm[i], perm[j])` of self.
    pub fn permuted(&self, perm: &[usize]) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(self.n, |i, j| self.get(perm[i], perm[j]))
    }
}

/// Full spectrum of a symmetric matrix: eigenvalues ascending, eigenvectors
/// as orthonormal columns in matching order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi diagonalization. Converges when the off-diagonal Frobenius
/// norm drops below 1e-12 · ‖A‖_F. Ties in the eigenvalue sort are broken by
/// lexicographic order of the sign-normalized eigenvectors.
pub fn eigen_symmetric(m: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = m.order();
    if n == 0 {
        return Err(Error::NumericInput("empty matrix".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if !m.get(i, j).is_finite() {
                return Err(Error::NumericInput(format!("entry ({i},{j}) is not finite")));
            }
        }
    }
    let mut a = m.clone();
    // v[i][k]: i-th component of k-th eigenvector (accumulated rotations)
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let fro = a.frobenius();
    let target = 1e-12 * fro;

    let off = |a: &SymmetricMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a.get(i, j) * a.get(i, j);
                }
            }
        }
        s.sqrt()
    };

    const MAX_SWEEPS: usize = 100;
    let mut sweeps = 0;
    while off(&a) > target && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e30 {
                    1.0 / (2.0 * theta)
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set_sym(k, p, c * akp - s * akq);
                    a.set_sym(k, q, s * akp + c * akq);
                }
                let app2 = a.get(p, p);
                let aqq2 = a.get(q, q);
                let apq2 = a.get(p, q);
                // redo the (p,p),(q,q),(p,q) block exactly from pre-rotation values
                let _ = (app2, aqq2, apq2);
                a.set_sym(p, p, c * c * app - 2.0 * s * c * apq + s * s * aqq);
                a.set_sym(q, q, s * s * app + 2.0 * s * c * apq + c * c * aqq);
                a.set_sym(p, q, 0.0);

                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| {
            let mut vec_k: Vec<f64> = (0..n).map(|i| v[i][k]).collect();
            normalize_sign(&mut vec_k);
            (a.get(k, k), vec_k)
        })
        .collect();
    pairs.sort_by(|(la, va), (lb, vb)| {
        la.total_cmp(lb).then_with(|| lex_cmp(va, vb))
    });
    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

fn normalize_sign(v: &mut [f64]) {
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.total_cmp(y);
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// Number of eigenvalues within `tol` of `value`.
pub fn multiplicity_of(dec: &EigenDecomposition, value: f64, tol: f64) -> usize {
    dec.eigenvalues.iter().filter(|&&l| (l - value).abs() <= tol).count()
}

pub const DEFAULT_EIGEN_TOL: f64 = 1e-8;

/// Multisets of reals agree when, after sorting, entries pair up within tol.
pub fn multisets_match(a: &[f64], b: &[f64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
}
