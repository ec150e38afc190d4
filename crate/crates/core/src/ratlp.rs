//! Exact rational linear programming: a dense two-phase simplex with Bland's
//! rule, plus the weighted-ℓ¹ quotient norms and the ℓ¹-orthogonality
//! certificate built on top of it.
//!
//! Everything runs over `BigRational`; there is no floating fallback. The
//! instances are tiny, so a dense tableau with anti-cycling pivoting is the
//! simplest correct choice.

use num_traits::{Signed, Zero};

use crate::complex::IncidenceMatrix;
use crate::error::{Error, Result};
use crate::exact::Rat;

/// Minimize `objective · x` subject to `constraints x = rhs`, with `x_i ≥ 0`
/// unless `free[i]`.
#[derive(Debug, Clone)]
pub struct RationalLp {
    pub objective: Vec<Rat>,
    pub constraints: Vec<Vec<Rat>>,
    pub rhs: Vec<Rat>,
    pub free: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: Rat,
    pub point: Vec<Rat>,
}

/// Deterministic exact optimum: identical inputs give identical optimizers.
pub fn solve_lp(lp: &RationalLp) -> Result<LpSolution> {
    let n_orig = lp.objective.len();
    debug_assert!(lp.constraints.iter().all(|r| r.len() == n_orig));
    debug_assert_eq!(lp.free.len(), n_orig);

    // split free variables into differences of nonnegatives
    let mut col_map: Vec<(usize, bool)> = Vec::new(); // (orig index, negated part?)
    for (i, &f) in lp.free.iter().enumerate() {
        col_map.push((i, false));
        if f {
            col_map.push((i, true));
        }
    }
    let n = col_map.len();
    let m = lp.constraints.len();

    let cost: Vec<Rat> = col_map
        .iter()
        .map(|&(i, neg)| if neg { -lp.objective[i].clone() } else { lp.objective[i].clone() })
        .collect();

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for (r, row) in lp.constraints.iter().enumerate() {
        let mut expanded: Vec<Rat> = col_map
            .iter()
            .map(|&(i, neg)| if neg { -row[i].clone() } else { row[i].clone() })
            .collect();
        let mut b = lp.rhs[r].clone();
        if b.is_negative() {
            b = -b;
            for e in expanded.iter_mut() {
                *e = -e.clone();
            }
        }
        rows.push(expanded);
        rhs.push(b);
    }

    let tableau = Tableau::phase_one(rows, rhs, n, m)?;
    let point_split = tableau.phase_two(&cost)?;

    let mut point = vec![Rat::zero(); n_orig];
    for (j, &(i, neg)) in col_map.iter().enumerate() {
        if neg {
            point[i] = &point[i] - &point_split[j];
        } else {
            point[i] = &point[i] + &point_split[j];
        }
    }
    let value: Rat = lp
        .objective
        .iter()
        .zip(&point)
        .map(|(c, x)| c * x)
        .fold(Rat::zero(), |a, b| a + b);
    Ok(LpSolution { value, point })
}

struct Tableau {
    ncols: usize, // real columns (artificials live at ncols..ncols+m)
    m: usize,
    rows: Vec<Vec<Rat>>, // m rows of length ncols + m + 1 (last = rhs)
    basis: Vec<usize>,
}

impl Tableau {
    fn phase_one(a: Vec<Vec<Rat>>, b: Vec<Rat>, n: usize, m: usize) -> Result<Tableau> {
        let width = n + m + 1;
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
        for r in 0..m {
            let mut row = vec![Rat::zero(); width];
            row[..n].clone_from_slice(&a[r]);
            row[n + r] = Rat::from_integer(1.into());
            row[width - 1] = b[r].clone();
            rows.push(row);
        }
        let basis: Vec<usize> = (0..m).map(|r| n + r).collect();
        let mut t = Tableau { ncols: n, m, rows, basis };

        // phase-1 cost: sum of artificials; reduced row = -sum of constraint rows
        let mut cost = vec![Rat::zero(); width];
        for r in 0..m {
            for j in 0..width {
                if j < n || j == width - 1 {
                    cost[j] = &cost[j] - &t.rows[r][j];
                }
            }
        }
        t.iterate(&mut cost, true)?;
        let phase1_value = -cost[width - 1].clone();
        if !phase1_value.is_zero() {
            return Err(Error::LpInfeasible);
        }
        // pivot artificials out of the basis where possible
        for r in 0..m {
            if t.basis[r] >= n {
                if let Some(j) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, j, &mut cost);
                }
                // else: redundant row, inert from here on
            }
        }
        Ok(t)
    }

    fn phase_two(mut self, cost_real: &[Rat]) -> Result<Vec<Rat>> {
        let width = self.ncols + self.m + 1;
        let mut cost = vec![Rat::zero(); width];
        cost[..self.ncols].clone_from_slice(cost_real);
        // reduced costs w.r.t. the current basis
        for r in 0..self.m {
            let b = self.basis[r];
            let cb = if b < self.ncols { cost_real[b].clone() } else { Rat::zero() };
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                let delta = &cb * &self.rows[r][j];
                cost[j] = &cost[j] - delta;
            }
        }
        self.iterate(&mut cost, false)?;
        let mut x = vec![Rat::zero(); self.ncols];
        for r in 0..self.m {
            if self.basis[r] < self.ncols {
                x[self.basis[r]] = self.rows[r][width - 1].clone();
            }
        }
        Ok(x)
    }

    /// Bland's rule iteration; artificial columns may only enter in phase 1.
    fn iterate(&mut self, cost: &mut [Rat], allow_artificial: bool) -> Result<()> {
        let width = self.ncols + self.m + 1;
        let limit = if allow_artificial { self.ncols + self.m } else { self.ncols };
        loop {
            let entering = (0..limit).find(|&j| cost[j].is_negative());
            let Some(j) = entering else { return Ok(()) };
            let mut leave: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for r in 0..self.m {
                if self.rows[r][j].is_positive() {
                    let ratio = &self.rows[r][width - 1] / &self.rows[r][j];
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b
                                    && self.basis[r] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leave = Some(r);
                    }
                }
            }
            let Some(r) = leave else { return Err(Error::LpUnbounded) };
            self.pivot(r, j, cost);
        }
    }

    fn pivot(&mut self, r: usize, j: usize, cost: &mut [Rat]) {
        let width = self.ncols + self.m + 1;
        let inv = self.rows[r][j].clone();
        for c in 0..width {
            self.rows[r][c] = &self.rows[r][c] / &inv;
        }
        for r2 in 0..self.m {
            if r2 != r && !self.rows[r2][j].is_zero() {
                let factor = self.rows[r2][j].clone();
                for c in 0..width {
                    let delta = &factor * &self.rows[r][c];
                    self.rows[r2][c] = &self.rows[r2][c] - delta;
                }
            }
        }
        if !cost[j].is_zero() {
            let factor = cost[j].clone();
            for c in 0..width {
                let delta = &factor * &self.rows[r][c];
                cost[c] = &cost[c] - delta;
            }
        }
        self.basis[r] = j;
    }
}

/// Weighted ℓ¹ norm Σ w_i |x_i|.
pub fn weighted_l1(x: &[Rat], weights: &[Rat]) -> Rat {
    x.iter()
        .zip(weights)
        .map(|(v, w)| v.abs() * w)
        .fold(Rat::zero(), |a, b| a + b)
}

/// min ‖x0 + Σ_i w_i g_i‖_{1,weights} over free coefficients w, where the
/// `gens` are arbitrary subspace generators. Returns the optimal value and
/// the attaining representative of the coset.
pub fn min_l1_over_span(x0: &[Rat], gens: &[Vec<Rat>], weights: &[Rat]) -> Result<(Rat, Vec<Rat>)> {
    let n = x0.len();
    let k = gens.len();
    // variables: p(n), q(n), w(k free); constraints: p - q - Σ w_i g_i = x0
    let nv = 2 * n + k;
    let mut objective = vec![Rat::zero(); nv];
    for i in 0..n {
        objective[i] = weights[i].clone();
        objective[n + i] = weights[i].clone();
    }
    let mut constraints = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![Rat::zero(); nv];
        row[i] = Rat::from_integer(1.into());
        row[n + i] = Rat::from_integer((-1).into());
        for (gi, g) in gens.iter().enumerate() {
            row[2 * n + gi] = -g[i].clone();
        }
        constraints.push(row);
    }
    let mut free = vec![false; nv];
    for f in free.iter_mut().skip(2 * n) {
        *f = true;
    }
    let lp = RationalLp { objective, constraints, rhs: x0.to_vec(), free };
    let sol = solve_lp(&lp)?;
    let rep: Vec<Rat> = (0..n).map(|i| &sol.point[i] - &sol.point[n + i]).collect();
    Ok((sol.value, rep))
}

/// min ‖x‖_{1,weights} subject to `A x = y`, rows of `a` given densely.
/// This is the filling norm when A = B_{d+1}ᵀ and y ∈ image(δ_d).
pub fn min_l1_with_constraint(
    a: &[Vec<Rat>],
    y: &[Rat],
    weights: &[Rat],
) -> Result<(Rat, Vec<Rat>)> {
    let m = a.len();
    let n = weights.len();
    let nv = 2 * n;
    let mut objective = vec![Rat::zero(); nv];
    for i in 0..n {
        objective[i] = weights[i].clone();
        objective[n + i] = weights[i].clone();
    }
    let mut constraints = Vec::with_capacity(m);
    for r in 0..m {
        let mut row = vec![Rat::zero(); nv];
        for i in 0..n {
            row[i] = a[r][i].clone();
            row[n + i] = -a[r][i].clone();
        }
        constraints.push(row);
    }
    let lp = RationalLp { objective, constraints, rhs: y.to_vec(), free: vec![false; nv] };
    let sol = solve_lp(&lp)?;
    let x: Vec<Rat> = (0..n).map(|i| &sol.point[i] - &sol.point[n + i]).collect();
    Ok((sol.value, x))
}

/// Quotient-norm instance: minimize ‖base + z‖_{1,weights} over z in the
/// image of B_dᵀ (the coboundaries of (d-1)-cochains).
pub struct QuotientNormProblem<'a> {
    pub base: &'a [Rat],
    /// B_d; `None` encodes the trivial subspace (d = 0 unreduced, or no rows).
    pub subspace: Option<&'a IncidenceMatrix>,
    pub weights: &'a [Rat],
}

#[derive(Debug, Clone)]
pub struct QuotientNorm {
    pub value: Rat,
    /// The coset element attaining the minimum.
    pub representative: Vec<Rat>,
}

pub fn quotient_norm(p: &QuotientNormProblem) -> Result<QuotientNorm> {
    let gens = match p.subspace {
        None => Vec::new(),
        Some(b) => b.to_rational(), // rows of B_d span image(B_dᵀ)
    };
    if gens.is_empty() {
        return Ok(QuotientNorm {
            value: weighted_l1(p.base, p.weights),
            representative: p.base.to_vec(),
        });
    }
    let (value, representative) = min_l1_over_span(p.base, &gens, p.weights)?;
    Ok(QuotientNorm { value, representative })
}

#[derive(Debug, Clone)]
pub struct OrthogonalityCertificate {
    pub orthogonal: bool,
    /// The subgradient witness u when feasible.
    pub witness: Option<Vec<Rat>>,
}

/// Decides whether x is ‖·‖_{1,deg}-orthogonal to the span of the rows of
/// `subspace_rows`: is there u ∈ ∇‖x‖_{1,deg} with u ⊥ every generator?
///
/// The subgradient constraint fixes u_i = w_i·sign(x_i) on the support of x
/// and boxes u_i ∈ [-w_i, w_i] elsewhere; orthogonality is a linear system,
/// so the whole question is an exact LP feasibility problem.
pub fn l1_orthogonality_certificate(
    x: &[Rat],
    subspace_rows: &[Vec<Rat>],
    weights: &[Rat],
) -> Result<OrthogonalityCertificate> {
    let n = x.len();
    let fixed: Vec<Option<Rat>> = (0..n)
        .map(|i| {
            if x[i].is_zero() {
                None
            } else if x[i].is_positive() {
                Some(weights[i].clone())
            } else {
                Some(-weights[i].clone())
            }
        })
        .collect();
    if subspace_rows.is_empty() {
        let witness = fixed
            .iter()
            .map(|f| f.clone().unwrap_or_else(Rat::zero))
            .collect();
        return Ok(OrthogonalityCertificate { orthogonal: true, witness: Some(witness) });
    }
    // free coordinates: u_i = v_i - w_i with v_i ∈ [0, 2 w_i]
    let free_idx: Vec<usize> = (0..n).filter(|&i| fixed[i].is_none()).collect();
    let nf = free_idx.len();
    // variables: v (nf), slack s (nf) with v + s = 2w
    let nv = 2 * nf;
    let mut constraints = Vec::new();
    let mut rhs = Vec::new();
    for g in subspace_rows {
        // Σ_i g_i u_i = 0  =>  Σ_free g_i v_i = Σ_free g_i w_i - Σ_fixed g_i u_i
        let mut row = vec![Rat::zero(); nv];
        let mut b = Rat::zero();
        for (fi, &i) in free_idx.iter().enumerate() {
            row[fi] = g[i].clone();
            b = &b + &(&g[i] * &weights[i]);
        }
        for i in 0..n {
            if let Some(u) = &fixed[i] {
                b = &b - &(&g[i] * u);
            }
        }
        constraints.push(row);
        rhs.push(b);
    }
    for (fi, &i) in free_idx.iter().enumerate() {
        let mut row = vec![Rat::zero(); nv];
        row[fi] = Rat::from_integer(1.into());
        row[nf + fi] = Rat::from_integer(1.into());
        constraints.push(row);
        rhs.push(&weights[i] * Rat::from_integer(2.into()));
    }
    let lp = RationalLp {
        objective: vec![Rat::zero(); nv],
        constraints,
        rhs,
        free: vec![false; nv],
    };
    match solve_lp(&lp) {
        Ok(sol) => {
            let mut u: Vec<Rat> = fixed
                .iter()
                .map(|f| f.clone().unwrap_or_else(Rat::zero))
                .collect();
            for (fi, &i) in free_idx.iter().enumerate() {
                u[i] = &sol.point[fi] - &weights[i];
            }
            Ok(OrthogonalityCertificate { orthogonal: true, witness: Some(u) })
        }
        Err(Error::LpInfeasible) => Ok(OrthogonalityCertificate { orthogonal: false, witness: None }),
        Err(e) => Err(e),
    }
}
