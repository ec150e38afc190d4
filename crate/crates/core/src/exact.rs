//! Exact linear algebra over the rationals, GF(2) and the integers.
//!
//! Everything here is dense and intended for desk-scale matrices (a few
//! hundred entries). Ranks and solvability questions feed Betti numbers and
//! the coset machinery of the Cheeger module, where floating point would
//! force tolerances onto quantities that are exact by definition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn rank_rational(m: &[Vec<Rat>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let inv = a[rank][col].clone();
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = &a[r][col] / &inv;
                for c in col..cols {
                    let delta = &factor * &a[rank][c];
                    a[r][c] = &a[r][c] - delta;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank over GF(2); rows are bitmasks packed into u64 words.
pub fn rank_gf2(rows: &[Vec<u64>], cols: usize) -> usize {
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for b in &basis {
            let lead = leading_bit(b);
            if let Some(l) = lead {
                if get_bit(&v, l) {
                    xor_into(&mut v, b);
                }
            }
        }
        if v.iter().any(|&w| w != 0) {
            basis.push(v);
        }
        if basis.len() == cols {
            break;
        }
    }
    basis.len()
}

fn get_bit(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

fn xor_into(v: &mut [u64], w: &[u64]) {
    for (a, b) in v.iter_mut().zip(w) {
        *a ^= b;
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    for (i, &w) in v.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

/// Solve `a x = b` over the rationals. Returns a particular solution, or
/// `None` when the system is inconsistent.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        return Some(vec![]);
    }
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for c in col..=cols {
            m[rank][c] = &m[rank][c] / &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == rows {
            break;
        }
    }
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, c) in pivots {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Basis of the kernel of `a` over the rationals.
pub fn kernel_basis_rational(a: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let rows = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for c in col..cols {
            m[rank][c] = &m[rank][c] / &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let is_pivot = |c: usize| pivot_cols.contains(&c);
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// A particular-preimage operator for `a`: matrix `e` (rank × rows of a) and
/// pivot columns such that for any y in the column-image of `a`, the vector
/// supported on the pivot columns with values `e · y` solves `a x = y`.
/// Built from the row operations of a full elimination on `[a | I]`.
pub struct PreimageOperator {
    pub e: Vec<Vec<Rat>>,
    pub pivot_cols: Vec<usize>,
}

pub fn preimage_operator(a: &[Vec<Rat>], cols: usize) -> PreimageOperator {
    let rows = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            for i in 0..rows {
                v.push(if i == r { Rat::one() } else { Rat::zero() });
            }
            v
        })
        .collect();
    let width = cols + rows;
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for c in 0..width {
            m[rank][c] = &m[rank][c] / &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..width {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let e = (0..rank).map(|r| m[r][cols..width].to_vec()).collect();
    PreimageOperator { e, pivot_cols }
}

/// Reduced row echelon form of the row span of `gens`; returns the RREF rows
/// together with their pivot columns. Used to build canonical coset
/// representatives modulo a subspace.
pub fn rref_rows(gens: &[Vec<Rat>], cols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = gens.to_vec();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for c in col..cols {
            m[rank][c] = &m[rank][c] / &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    m.truncate(rank);
    (m, pivots)
}

/// Decides whether `a x = b` has an integer solution, by greedy forward
/// elimination with unimodular column operations (Hermite-style). Matrix
/// entries and the right-hand side are integers.
pub fn integer_solvable(a: &[Vec<BigInt>], b: &[BigInt]) -> bool {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        return true;
    }
    // column-major working copy
    let mut col: Vec<Vec<BigInt>> = (0..cols)
        .map(|c| (0..rows).map(|r| a[r][c].clone()).collect())
        .collect();
    let mut rhs: Vec<BigInt> = b.to_vec();
    let mut next = 0usize;
    for row in 0..rows {
        if next >= cols {
            if !rhs[row].is_zero() {
                return false;
            }
            continue;
        }
        // Reduce the active columns so that at most one of them is nonzero in
        // this row (its entry becomes the gcd).
        loop {
            let mut nonzero: Vec<usize> = (next..cols).filter(|&c| !col[c][row].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by(|&x, &y| col[x][row].abs().cmp(&col[y][row].abs()));
            let small = nonzero[0];
            for &c in &nonzero[1..] {
                let q = col[c][row].div_floor(&col[small][row]);
                if !q.is_zero() {
                    for r in 0..rows {
                        let delta = &q * &col[small][r];
                        col[c][r] = &col[c][r] - delta;
                    }
                }
            }
        }
        let pivot = (next..cols).find(|&c| !col[c][row].is_zero());
        match pivot {
            None => {
                if !rhs[row].is_zero() {
                    return false;
                }
            }
            Some(p) => {
                col.swap(next, p);
                let g = col[next][row].clone();
                let (q, r) = rhs[row].div_rem(&g);
                if !r.is_zero() {
                    return false;
                }
                for rr in 0..rows {
                    let delta = &q * &col[next][rr];
                    rhs[rr] = &rhs[rr] - delta;
                }
                next += 1;
            }
        }
    }
    true
}

/// Scale a rational vector by the lcm of its denominators, yielding a
/// primitive integer vector in the same direction.
pub fn scale_to_integer(v: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &out {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut out {
            *x = &*x / &g;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank_rational(&m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank_rational(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_rational(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_rational(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn rank_gf2_matches_parity_structure() {
        // [[1,1],[1,1]] has rank 1 over GF(2)
        assert_eq!(rank_gf2(&[vec![0b11], vec![0b11]], 2), 1);
        // [[1,0],[1,1]] has rank 2
        assert_eq!(rank_gf2(&[vec![0b01], vec![0b11]], 2), 2);
    }

    #[test]
    fn solve_and_kernel() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let sol = solve_rational(&a, &[rat(2), rat(0)]).unwrap();
        assert_eq!(sol, vec![rat(1), rat(1)]);
        assert!(solve_rational(&m(&[&[1, 1], &[1, 1]]), &[rat(0), rat(1)]).is_none());

        let k = kernel_basis_rational(&m(&[&[1, 1, 1]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rat = v.iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn integer_solvability() {
        let big = |x: i64| BigInt::from(x);
        // 2x = 2 solvable; 2x = 1 not (though rationally solvable)
        assert!(integer_solvable(&[vec![big(2)]], &[big(2)]));
        assert!(!integer_solvable(&[vec![big(2)]], &[big(1)]));
        // x + y = 1, x - y = 1 -> x=1, y=0
        assert!(integer_solvable(
            &[vec![big(1), big(1)], vec![big(1), big(-1)]],
            &[big(1), big(1)]
        ));
        // x + y = 1, x - y = 0 -> x = 1/2: rational only
        assert!(!integer_solvable(
            &[vec![big(1), big(1)], vec![big(1), big(-1)]],
            &[big(1), big(0)]
        ));
        // inconsistent even over the rationals
        assert!(!integer_solvable(
            &[vec![big(1), big(1)], vec![big(1), big(1)]],
            &[big(0), big(1)]
        ));
    }

    #[test]
    fn scaling_rationals_to_integers() {
        let v = vec![rat_frac(1, 2), rat_frac(1, 3), rat(0)];
        let w = scale_to_integer(&v);
        assert_eq!(w, vec![BigInt::from(3), BigInt::from(2), BigInt::from(0)]);
    }
}
