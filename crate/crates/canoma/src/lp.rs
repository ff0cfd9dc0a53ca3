//! Halfspace systems in the four power variables and a phase-1 simplex
//! feasibility solver.
//!
//! Every rate constraint the optimizer needs has the fractional form
//! `log2(1 + a·p / (b·p + noise)) >= c` with non-negative `a`, `b`, `noise`.
//! Since the denominator is positive, this is equivalent to the halfspace
//! `(a - γ b)·p >= γ·noise` with `γ = 2^c - 1`, so each bisection step only
//! has to decide feasibility of a handful of linear inequalities together
//! with `p >= 0` and the power budget. The instances are tiny (4 variables,
//! at most ~16 rows), so a dense self-contained phase-1 simplex with Bland's
//! anti-cycling rule is used; determinism matters more than speed here.

use thiserror::Error;

/// Pivots smaller than this are treated as zero.
const PIVOT_TOL: f64 = 1e-12;
/// Safety cap on simplex pivots; Bland's rule terminates long before this.
const MAX_PIVOTS: usize = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("ill-conditioned system: no usable pivot (best |pivot| = {pivot:.3e})")]
    IllConditioned { pivot: f64 },
}

/// One linear inequality `normal · p >= offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Halfspace {
    pub normal: [f64; 4],
    pub offset: f64,
}

/// A conjunction of halfspaces plus the implicit box `p >= 0` and budget
/// `sum(p) <= budget`.
#[derive(Debug, Clone)]
pub struct HalfspaceSystem {
    halfspaces: Vec<Halfspace>,
    budget: f64,
}

impl HalfspaceSystem {
    pub fn new(budget: f64) -> Self {
        assert!(
            budget.is_finite() && budget >= 0.0,
            "power budget must be finite and non-negative"
        );
        Self {
            halfspaces: Vec::new(),
            budget,
        }
    }

    pub fn push(&mut self, h: Halfspace) {
        assert!(
            h.normal.iter().all(|x| x.is_finite()) && h.offset.is_finite(),
            "halfspace coefficients must be finite"
        );
        self.halfspaces.push(h);
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    /// Feasibility tolerance used both by the solver verdict and by witness
    /// checks: absolute, scaled to the budget.
    pub fn tolerance(&self) -> f64 {
        1e-9 * self.budget.max(1.0)
    }

    /// Whether `p` satisfies every constraint within the system tolerance.
    pub fn satisfied_by(&self, p: &[f64; 4]) -> bool {
        let tol = self.tolerance();
        if p.iter().any(|x| *x < -tol) {
            return false;
        }
        if p.iter().sum::<f64>() > self.budget + tol {
            return false;
        }
        self.halfspaces.iter().all(|h| {
            let lhs: f64 = h.normal.iter().zip(p).map(|(n, x)| n * x).sum();
            lhs >= h.offset - tol
        })
    }
}

/// Turns `log2(1 + a·p/(b·p + noise)) >= c_target` into its equivalent
/// halfspace `(a − γ b)·p >= γ·noise`, `γ = 2^c_target − 1`.
///
/// Targets beyond 1000 bit/s/Hz would overflow `exp2`; they are capped, and
/// the resulting row (with `γ ~ 1e301`) stays verdict-equivalent: no bounded
/// power vector can satisfy it.
pub fn linearize(a: [f64; 4], b: [f64; 4], noise: f64, c_target: f64) -> Halfspace {
    debug_assert!(noise > 0.0 && c_target >= 0.0);
    let gamma = c_target.min(1000.0).exp2() - 1.0;
    let mut normal = [0.0; 4];
    for k in 0..4 {
        normal[k] = a[k] - gamma * b[k];
    }
    Halfspace {
        normal,
        offset: gamma * noise,
    }
}

/// Decides feasibility of the system; on success returns a witness point.
///
/// Phase-1 simplex: rows with positive right-hand side get an artificial
/// variable, the rest start on their slack; Bland's rule picks pivots, and
/// the system is feasible iff the artificial mass can be driven to (near)
/// zero. Rows are equilibrated to unit magnitude first, so one absolute
/// threshold stays meaningful when linearized constraints mix scales across
/// many orders of magnitude; witnesses end up far inside the documented
/// [`HalfspaceSystem::tolerance`].
pub fn feasible(sys: &HalfspaceSystem) -> Result<Option<[f64; 4]>, LpError> {
    const NV: usize = 4;
    let feas_tol = sys.tolerance();

    let mut scaled: Vec<Halfspace> = Vec::with_capacity(sys.halfspaces.len());
    for h in &sys.halfspaces {
        let max_c = h.normal.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if max_c < PIVOT_TOL {
            // A row that demands a positive offset through sub-tolerance
            // coefficients could only be "satisfied" by pivoting below
            // PIVOT_TOL; a row demanding nothing is dropped.
            if h.offset > feas_tol {
                return Err(LpError::IllConditioned { pivot: max_c });
            }
            continue;
        }
        let s = max_c.max(h.offset.abs());
        scaled.push(Halfspace {
            normal: h.normal.map(|x| x / s),
            offset: h.offset / s,
        });
    }
    let m = scaled.len() + 1; // + budget row

    // Column layout: [p(4) | slack/surplus(m) | artificials(n_art) | rhs]
    struct Row {
        coeffs: Vec<f64>,
        rhs: f64,
    }
    let mut rows: Vec<Row> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut artificial_rows: Vec<usize> = Vec::new();

    for (r, h) in scaled.iter().enumerate() {
        let mut coeffs = vec![0.0; NV + m];
        if h.offset > 0.0 {
            // normal·p − surplus = offset, artificial basic.
            coeffs[..NV].copy_from_slice(&h.normal);
            coeffs[NV + r] = -1.0;
            rows.push(Row {
                coeffs,
                rhs: h.offset,
            });
            artificial_rows.push(r);
            basis.push(usize::MAX); // patched below once n_art is known
        } else {
            // −normal·p + slack = −offset (>= 0), slack basic.
            for (k, n) in h.normal.iter().enumerate() {
                coeffs[k] = -n;
            }
            coeffs[NV + r] = 1.0;
            rows.push(Row {
                coeffs,
                rhs: -h.offset,
            });
            basis.push(NV + r);
        }
    }
    // Budget row: sum(p) + slack = budget, equilibrated like the others.
    {
        let s = sys.budget.max(1.0);
        let mut coeffs = vec![0.0; NV + m];
        coeffs[..NV].copy_from_slice(&[1.0 / s; 4]);
        coeffs[NV + m - 1] = 1.0;
        rows.push(Row {
            coeffs,
            rhs: sys.budget / s,
        });
        basis.push(NV + m - 1);
    }

    let n_art = artificial_rows.len();
    let n_cols = NV + m + n_art;
    for row in &mut rows {
        row.coeffs.resize(n_cols, 0.0);
    }
    for (a_idx, &r) in artificial_rows.iter().enumerate() {
        rows[r].coeffs[NV + m + a_idx] = 1.0;
        basis[r] = NV + m + a_idx;
    }

    // Phase-1 cost row (c_j − z_j for cost = sum of artificials): start from
    // the artificial costs and price out the artificial basis.
    let mut cost = vec![0.0; n_cols];
    for a_idx in 0..n_art {
        cost[NV + m + a_idx] = 1.0;
    }
    let mut objective = 0.0;
    for &r in &artificial_rows {
        for (c, v) in cost.iter_mut().zip(&rows[r].coeffs) {
            *c -= v;
        }
        objective -= rows[r].rhs;
    }

    for _ in 0..MAX_PIVOTS {
        // Bland: entering column = smallest index with negative reduced cost.
        let Some(enter) = (0..n_cols).find(|&j| cost[j] < -PIVOT_TOL) else {
            break;
        };
        // Ratio test; Bland tie-break on the smallest basic variable index.
        let mut leave: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        let mut best_pivot_seen: f64 = 0.0;
        for (r, row) in rows.iter().enumerate() {
            let a = row.coeffs[enter];
            best_pivot_seen = best_pivot_seen.max(a.abs());
            if a > PIVOT_TOL {
                let ratio = row.rhs / a;
                let better = ratio < best_ratio - PIVOT_TOL
                    || ((ratio - best_ratio).abs() <= PIVOT_TOL
                        && leave.is_some_and(|l| basis[r] < basis[l]));
                if better || leave.is_none() {
                    best_ratio = ratio.min(best_ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(leave) = leave else {
            // Phase-1 is bounded below by zero, so an unbounded column can
            // only come from numerically unusable pivots.
            return Err(LpError::IllConditioned {
                pivot: best_pivot_seen,
            });
        };

        // Pivot on (leave, enter).
        let pivot = rows[leave].coeffs[enter];
        for j in 0..n_cols {
            rows[leave].coeffs[j] /= pivot;
        }
        rows[leave].rhs /= pivot;
        for r in 0..rows.len() {
            if r != leave {
                let f = rows[r].coeffs[enter];
                if f != 0.0 {
                    for j in 0..n_cols {
                        rows[r].coeffs[j] -= f * rows[leave].coeffs[j];
                    }
                    rows[r].rhs -= f * rows[leave].rhs;
                }
            }
        }
        let f = cost[enter];
        if f != 0.0 {
            for (c, v) in cost.iter_mut().zip(&rows[leave].coeffs) {
                *c -= f * v;
            }
            objective -= f * rows[leave].rhs;
        }
        basis[leave] = enter;
    }

    // Residual artificial mass decides feasibility. Rows have unit
    // magnitude, so an absolute threshold well above pivot roundoff and
    // well below any meaningful violation works across all scales.
    if -objective > 1e-11 {
        return Ok(None);
    }
    let mut p = [0.0; 4];
    for (r, &b) in basis.iter().enumerate() {
        if b < NV {
            p[b] = rows[r].rhs.max(0.0);
        }
    }
    Ok(Some(p))
}
