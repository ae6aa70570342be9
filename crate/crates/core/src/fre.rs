//! Max-min fuzzy relational equations `p ∘ Q = r`.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matrix::{vec_mat_maxmin, Matrix};
use crate::value::{scalar_gt, scalar_min, OrderPolicy, Scalar};

pub const VERIFY_TOL: f64 = 1e-12;
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreOptions {
    /// Lift σ and min to `Real ∪ pure-I` values; off rejects neutrosophic entries.
    pub neutrosophic: bool,
    pub policy: OrderPolicy,
    pub exec: Exec,
}

impl Default for FreOptions {
    fn default() -> Self {
        FreOptions {
            neutrosophic: false,
            policy: OrderPolicy::BookDefault,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreSolution {
    pub max_solution: Vec<Scalar>,
    pub solvable: bool,
    pub residual: Vec<Scalar>,
}

/// `σ(q, r) = r` if `q > r`, else 1.
pub fn sigma(q: Scalar, r: Scalar, policy: OrderPolicy) -> Result<Scalar> {
    Ok(if scalar_gt(q, r, policy)? { r } else { Scalar::ONE })
}

fn check_values<'a>(vals: impl Iterator<Item = &'a Scalar>, opts: FreOptions) -> Result<()> {
    for (i, v) in vals.enumerate() {
        let ok = match v {
            Scalar::Real(x) => (0.0..=1.0).contains(x),
            Scalar::Neutro(..) => opts.neutrosophic && v.is_pure_indet(),
        };
        if !ok {
            return Err(Error::DomainViolation {
                value: v.to_string(),
                domain: if opts.neutrosophic { "neutro-unit" } else { "unit" }.into(),
                row: 0,
                col: i + 1,
            });
        }
    }
    Ok(())
}

fn check_dims(q: &Matrix, r: &[Scalar]) -> Result<()> {
    if q.cols() != r.len() {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} against {}x{} membership matrix",
            r.len(),
            q.rows(),
            q.cols()
        )));
    }
    Ok(())
}

pub fn solve_max(q: &Matrix, r: &[Scalar], opts: FreOptions) -> Result<FreSolution> {
    check_dims(q, r)?;
    check_values(q.entries().iter().chain(r), opts)?;
    let mut p = Vec::with_capacity(q.rows());
    for j in 0..q.rows() {
        let mut acc = Scalar::ONE;
        for (k, rk) in r.iter().enumerate() {
            acc = scalar_min(acc, sigma(q.get(j, k), *rk, opts.policy)?, opts.policy)?;
        }
        p.push(acc);
    }
    let residual = vec_mat_maxmin(&p, q, opts.policy)?;
    let solvable = residual.iter().zip(r).all(|(a, b)| a.approx_eq(*b, VERIFY_TOL));
    Ok(FreSolution {
        max_solution: p,
        solvable,
        residual,
    })
}

/// Solves `P ∘ Q = R` row by row.
pub fn solve_matrix(q: &Matrix, r: &Matrix, opts: FreOptions) -> Result<Vec<FreSolution>> {
    if q.cols() != r.cols() {
        return Err(Error::ShapeMismatch(format!(
            "R is {}x{} but Q is {}x{}",
            r.rows(),
            r.cols(),
            q.rows(),
            q.cols()
        )));
    }
    let rows = r.to_rows();
    opts.exec
        .map(&rows, |_, row| solve_max(q, row, opts))
        .into_iter()
        .collect()
}

/// Columns `k` with `max_j q_jk < r_k`; any such column makes the system unsolvable.
pub fn unreachable_columns(q: &Matrix, r: &[Scalar], policy: OrderPolicy) -> Result<Vec<usize>> {
    check_dims(q, r)?;
    let mut out = Vec::new();
    for (k, rk) in r.iter().enumerate() {
        let mut best = q.get(0, k);
        for j in 1..q.rows() {
            best = crate::value::scalar_max(best, q.get(j, k), policy)?;
        }
        if scalar_gt(*rk, best, policy)? {
            out.push(k);
        }
    }
    Ok(out)
}

/// Necessary condition: every `r_k` is reachable by some `q_jk`.
pub fn check_necessary(q: &Matrix, r: &[Scalar]) -> Result<bool> {
    Ok(unreachable_columns(q, r, OrderPolicy::BookDefault)?.is_empty())
}

fn grid_points(step: f64) -> Result<Vec<f64>> {
    let n = (1.0 / step).round();
    if !(step > 0.0 && step <= 1.0) || ((n * step) - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!("grid step {step} does not divide 1")));
    }
    let n = n as usize;
    Ok((0..=n).map(|i| i as f64 / n as f64).collect())
}

fn leq(a: &[Scalar], b: &[Scalar]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.real_part() <= y.real_part())
}

/// Every grid vector `p` with `p ∘ Q = r`, in lexicographic grid order.
pub fn grid_solutions(q: &Matrix, r: &[Scalar], grid_step: f64, budget: u128, exec: Exec) -> Result<Vec<Vec<Scalar>>> {
    check_dims(q, r)?;
    let pts = grid_points(grid_step)?;
    let m = q.rows() as u32;
    let total = (pts.len() as u128).checked_pow(m).unwrap_or(u128::MAX);
    let needed = total.saturating_mul(m as u128);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    // split on the first coordinate so the sweep can run in parallel
    let per_first = total / pts.len() as u128;
    let chunks = exec.map(&pts, |_, &first| -> Result<Vec<Vec<Scalar>>> {
        let mut found = Vec::new();
        let mut idx = vec![0usize; m as usize];
        for _ in 0..per_first {
            let p: Vec<Scalar> = std::iter::once(first)
                .chain(idx[1..].iter().map(|&i| pts[i]))
                .map(Scalar::real)
                .collect();
            let got = vec_mat_maxmin(&p, q, OrderPolicy::BookDefault)?;
            if got.iter().zip(r).all(|(a, b)| a.approx_eq(*b, VERIFY_TOL)) {
                found.push(p);
            }
            for d in (1..idx.len()).rev() {
                idx[d] += 1;
                if idx[d] < pts.len() {
                    break;
                }
                idx[d] = 0;
            }
        }
        Ok(found)
    });
    Ok(chunks.into_iter().collect::<Result<Vec<_>>>()?.concat())
}

/// Minimal elements (entrywise ≤) among the grid solutions.
pub fn minimal_solutions_bruteforce(q: &Matrix, r: &[Scalar], grid_step: f64, budget: u128) -> Result<Vec<Vec<Scalar>>> {
    let sols = grid_solutions(q, r, grid_step, budget, Exec::default())?;
    Ok(sols
        .iter()
        .filter(|p| !sols.iter().any(|o| o != *p && leq(o, p)))
        .cloned()
        .collect())
}

/// Componentwise solve of a union of independent problems.
pub fn solve_special(problems: &[(Matrix, Vec<Scalar>)], opts: FreOptions) -> Result<Vec<FreSolution>> {
    opts.exec
        .map(problems, |_, (q, r)| solve_max(q, r, opts))
        .into_iter()
        .collect()
}
