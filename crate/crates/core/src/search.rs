//! Numerical search for Weyl-Heisenberg covariant SIC fiducials.
//!
//! A state `ψ` is a fiducial when every non-trivial displacement `D_p`
//! satisfies `|⟨ψ|D_p ψ⟩|² = 1/(N+1)`. The search minimizes the least-squares
//! defect
//!
//! ```text
//! L(ψ) = Σ_{p ≠ 0} ( |⟨ψ|D_p ψ⟩|² − 1/(N+1) )²
//! ```
//!
//! over `2N` raw real parameters (re/im interleaved). The parameters are
//! normalized inside the loss, so the optimizer is unconstrained and the
//! global phase is a flat direction.
//!
//! The optimizer is steepest descent with an Armijo backtracking line search,
//! followed by a Levenberg-Marquardt polish on the residual vector
//! `r_p = |⟨ψ|D_p ψ⟩|² − 1/(N+1)` when descent alone has not reached the
//! tolerance. Near degenerate minima (the qutrit fiducials form continuous
//! families) descent slows to `O(1/t)`; the polish restores fast convergence.
//! Both phases accept only loss-decreasing steps.
//! Random starts come from `ChaCha8Rng::seed_from_u64(seed + restart)` with
//! `2N` standard normal draws (`rand_distr::StandardNormal`, ziggurat), then
//! normalized.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{params_to_complex, StateVector};
use crate::weyl_heisenberg::{weyl_apply, DisplacementIndex};

/// Armijo sufficient-decrease constant.
pub const ARMIJO_C: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dim: usize,
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
    /// A run counts as converged once the loss is at or below this.
    pub loss_tolerance: f64,
    /// Trial step for the first line search.
    pub initial_step: f64,
    /// Step multiplier on each rejected trial, in `(0, 1)`.
    pub backtrack: f64,
    /// Accepted step multiplier, `≥ 1`.
    pub growth: f64,
    /// The descent phase halts once a line search needs a step below this.
    pub min_step: f64,
    /// Levenberg-Marquardt iterations after descent; zero disables the polish.
    pub polish_iterations: usize,
}

impl SearchConfig {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            seed: 1,
            restarts: 20,
            max_iterations: 10_000,
            loss_tolerance: 1e-16,
            initial_step: 0.1,
            backtrack: 0.5,
            growth: 2.0,
            min_step: 1e-14,
            polish_iterations: 200,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_loss_tolerance(mut self, tol: f64) -> Self {
        self.loss_tolerance = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1");
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1");
        }
        if self.loss_tolerance.is_nan() || self.loss_tolerance <= 0.0 {
            return bad("loss_tolerance must be positive");
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return bad("initial_step must be positive");
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            return bad("backtrack must lie in (0, 1)");
        }
        if !(self.growth >= 1.0 && self.growth.is_finite()) {
            return bad("growth must be at least 1");
        }
        if self.min_step.is_nan() || self.min_step <= 0.0 {
            return bad("min_step must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub fiducial: StateVector,
    pub loss: f64,
    pub iterations_used: usize,
    pub restart_index: usize,
    pub converged: bool,
}

/// The SIC defect of a normalized state.
pub fn loss(fiducial: &StateVector) -> f64 {
    evaluate(fiducial.entries(), false).0
}

/// The SIC defect of the state obtained by normalizing `params`.
pub fn loss_params(params: &[f64]) -> Result<f64> {
    let z = raw_vector(params)?;
    Ok(evaluate(&z, false).0)
}

/// Gradient of `loss ∘ normalize` with respect to the raw parameters.
pub fn loss_gradient(params: &[f64]) -> Result<Vec<f64>> {
    let z = raw_vector(params)?;
    let (_, g) = evaluate(&z, true);
    Ok(interleave(&g))
}

fn raw_vector(params: &[f64]) -> Result<Vec<Complex64>> {
    if params.is_empty() || !params.len().is_multiple_of(2) {
        return Err(Error::WrongLength {
            expected: params.len().max(1).next_multiple_of(2),
            got: params.len(),
        });
    }
    if let Some(i) = params.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    if params.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(params_to_complex(params))
}

fn interleave(g: &[Complex64]) -> Vec<f64> {
    g.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Writes `(X^{p₁} Z^{p₂})† z` into `out`.
fn weyl_adjoint_apply(idx: DisplacementIndex, z: &[Complex64], out: &mut [Complex64]) {
    let n = idx.dim();
    // (Z^{-b} X^{-a} z)_k = ω^{-bk} z_{k+a}
    for (k, o) in out.iter_mut().enumerate() {
        let e = (idx.p2() * k) % n;
        let w = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * e as f64 / n as f64);
        *o = w * z[(k + idx.p1()) % n];
    }
}

/// Loss and (optionally) its gradient at the raw vector `z`.
///
/// With `s = ‖z‖²`, `a_p = z† W_p z` and `f_p = |a_p|²/s²`, the gradient with
/// respect to `(Re z, Im z)` packed as a complex vector is
/// `Σ_p 4 (f_p − c) [ (ā_p W_p z + a_p W_p† z)/s² − 2|a_p|² z/s³ ]`.
/// The phases of the displacements cancel, so `W_p = X^{p₁}Z^{p₂}` is used.
fn evaluate(z: &[Complex64], want_grad: bool) -> (f64, Vec<Complex64>) {
    let n = z.len();
    let target = 1.0 / (n as f64 + 1.0);
    let s: f64 = z.iter().map(|v| v.norm_sqr()).sum();
    let mut wz = vec![Complex64::new(0.0, 0.0); n];
    let mut wdz = vec![Complex64::new(0.0, 0.0); n];
    let mut grad = if want_grad {
        vec![Complex64::new(0.0, 0.0); n]
    } else {
        Vec::new()
    };
    let mut total = 0.0;
    for p in DisplacementIndex::all(n).skip(1) {
        weyl_apply(p, z, &mut wz);
        let a: Complex64 = z.iter().zip(&wz).map(|(x, y)| x.conj() * y).sum();
        let a2 = a.norm_sqr();
        let dev = a2 / (s * s) - target;
        total += dev * dev;
        if want_grad {
            weyl_adjoint_apply(p, z, &mut wdz);
            let k = 4.0 * dev;
            let radial = 2.0 * a2 / (s * s * s);
            for i in 0..n {
                grad[i] += k * ((a.conj() * wz[i] + a * wdz[i]) / (s * s) - z[i] * radial);
            }
        }
    }
    (total, grad)
}

fn unit_params(z: &[Complex64]) -> Vec<Complex64> {
    let norm = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    z.iter().map(|v| v / norm).collect()
}

/// Steepest descent with Armijo backtracking from `start`, then the
/// Levenberg-Marquardt polish.
///
/// Accepted iterates are rescaled to unit norm, which leaves the loss
/// unchanged. Each accepted step seeds the next trial step multiplied by
/// `cfg.growth`. Descent halts when the loss reaches `cfg.loss_tolerance`,
/// when the line search falls below `cfg.min_step`, or after
/// `cfg.max_iterations`; the polish then runs unless already converged.
pub fn optimize(start: &[f64], cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let raw = raw_vector(start)?;
    if raw.len() != cfg.dim {
        return Err(Error::DimensionMismatch(cfg.dim, raw.len()));
    }
    Ok(descend(unit_params(&raw), cfg, 0, None))
}

/// [`optimize`], also returning the loss after every accepted step (the
/// starting loss first).
pub fn optimize_with_history(start: &[f64], cfg: &SearchConfig) -> Result<(SearchResult, Vec<f64>)> {
    cfg.validate()?;
    let raw = raw_vector(start)?;
    if raw.len() != cfg.dim {
        return Err(Error::DimensionMismatch(cfg.dim, raw.len()));
    }
    let mut history = Vec::new();
    let result = descend(unit_params(&raw), cfg, 0, Some(&mut history));
    Ok((result, history))
}

fn descend(
    mut z: Vec<Complex64>,
    cfg: &SearchConfig,
    restart_index: usize,
    mut history: Option<&mut Vec<f64>>,
) -> SearchResult {
    let (mut f, mut g) = evaluate(&z, true);
    if let Some(h) = history.as_deref_mut() {
        h.push(f);
    }
    let mut step = cfg.initial_step;
    let mut iterations = 0;
    let mut trial = vec![Complex64::new(0.0, 0.0); z.len()];
    let mut converged = f <= cfg.loss_tolerance;

    while !converged && iterations < cfg.max_iterations {
        let g2: f64 = g.iter().map(|v| v.norm_sqr()).sum();
        if g2 == 0.0 {
            break;
        }
        let mut t = step;
        let accepted = loop {
            for ((o, zi), gi) in trial.iter_mut().zip(&z).zip(&g) {
                *o = zi - gi * t;
            }
            let unit = unit_params(&trial);
            let (ft, _) = evaluate(&unit, false);
            if ft <= f - ARMIJO_C * t * g2 {
                break Some(unit);
            }
            t *= cfg.backtrack;
            if t < cfg.min_step {
                break None;
            }
        };
        let Some(unit) = accepted else { break };
        z = unit;
        (f, g) = evaluate(&z, true);
        if let Some(h) = history.as_deref_mut() {
            h.push(f);
        }
        iterations += 1;
        step = t * cfg.growth;
        converged = f <= cfg.loss_tolerance;
    }

    if !converged && cfg.polish_iterations > 0 {
        let (zp, fp, used) = polish(z, f, cfg, history);
        z = zp;
        f = fp;
        iterations += used;
        converged = f <= cfg.loss_tolerance;
    }

    SearchResult {
        fiducial: StateVector::new(z).expect("unit norm iterate"),
        loss: f,
        iterations_used: iterations,
        restart_index,
        converged,
    }
}

/// Residuals `r_p = f_p − c` for `p ≠ 0` and their Jacobian with respect to
/// the interleaved parameters (row-major, `N² − 1` rows by `2N` columns).
fn residuals_and_jacobian(z: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    let n = z.len();
    let target = 1.0 / (n as f64 + 1.0);
    let s: f64 = z.iter().map(|v| v.norm_sqr()).sum();
    let mut wz = vec![Complex64::new(0.0, 0.0); n];
    let mut wdz = vec![Complex64::new(0.0, 0.0); n];
    let mut r = Vec::with_capacity(n * n - 1);
    let mut jac = Vec::with_capacity((n * n - 1) * 2 * n);
    for p in DisplacementIndex::all(n).skip(1) {
        weyl_apply(p, z, &mut wz);
        weyl_adjoint_apply(p, z, &mut wdz);
        let a: Complex64 = z.iter().zip(&wz).map(|(x, y)| x.conj() * y).sum();
        let a2 = a.norm_sqr();
        r.push(a2 / (s * s) - target);
        let radial = 2.0 * a2 / (s * s * s);
        for i in 0..n {
            let d = 2.0 * ((a.conj() * wz[i] + a * wdz[i]) / (s * s) - z[i] * radial);
            jac.push(d.re);
            jac.push(d.im);
        }
    }
    (r, jac)
}

/// Solves `A x = b` for symmetric positive definite `A` (row-major, `m × m`)
/// by Cholesky factorization. Returns `None` if a pivot is not positive.
fn cholesky_solve(m: usize, a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    let mut l = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..=i {
            let sum: f64 = (0..j).map(|k| l[i * m + k] * l[j * m + k]).sum();
            if i == j {
                let d = a[i * m + i] - sum;
                if d.is_nan() || d <= 0.0 {
                    return None;
                }
                l[i * m + i] = d.sqrt();
            } else {
                l[i * m + j] = (a[i * m + j] - sum) / l[j * m + j];
            }
        }
    }
    let mut y = vec![0.0; m];
    for i in 0..m {
        let sum: f64 = (0..i).map(|k| l[i * m + k] * y[k]).sum();
        y[i] = (b[i] - sum) / l[i * m + i];
    }
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let sum: f64 = ((i + 1)..m).map(|k| l[k * m + i] * x[k]).sum();
        x[i] = (y[i] - sum) / l[i * m + i];
    }
    Some(x)
}

/// Levenberg-Marquardt on the residual vector, accepting only steps that
/// lower the loss. Returns the final point, its loss, and accepted steps.
fn polish(
    mut z: Vec<Complex64>,
    mut f: f64,
    cfg: &SearchConfig,
    mut history: Option<&mut Vec<f64>>,
) -> (Vec<Complex64>, f64, usize) {
    let m = 2 * z.len();
    let mut damping: Option<f64> = None;
    let mut accepted = 0;
    for _ in 0..cfg.polish_iterations {
        if f <= cfg.loss_tolerance {
            break;
        }
        let (r, jac) = residuals_and_jacobian(&z);
        let rows = r.len();
        let mut jtj = vec![0.0; m * m];
        let mut jtr = vec![0.0; m];
        for k in 0..rows {
            let row = &jac[k * m..(k + 1) * m];
            for i in 0..m {
                jtr[i] += row[i] * r[k];
                for j in 0..m {
                    jtj[i * m + j] += row[i] * row[j];
                }
            }
        }
        if jtr.iter().all(|&g| g == 0.0) {
            break;
        }
        let scale = (0..m).map(|i| jtj[i * m + i]).fold(0.0, f64::max);
        let mut mu = *damping.get_or_insert(1e-3 * scale);
        let step = loop {
            let mut lhs = jtj.clone();
            for i in 0..m {
                lhs[i * m + i] += mu;
            }
            let neg: Vec<f64> = jtr.iter().map(|g| -g).collect();
            if let Some(dx) = cholesky_solve(m, &lhs, &neg) {
                let trial = unit_params(
                    &z.iter()
                        .enumerate()
                        .map(|(i, zi)| zi + Complex64::new(dx[2 * i], dx[2 * i + 1]))
                        .collect::<Vec<_>>(),
                );
                let ft = evaluate(&trial, false).0;
                if ft < f {
                    break Some((trial, ft));
                }
            }
            mu *= 4.0;
            if mu > 1e16 * scale.max(1.0) {
                break None;
            }
        };
        let Some((trial, ft)) = step else { break };
        z = trial;
        f = ft;
        if let Some(h) = history.as_deref_mut() {
            h.push(f);
        }
        accepted += 1;
        damping = Some(mu / 3.0);
    }
    (z, f, accepted)
}

/// The `2N` standard-normal start of restart `restart_index`.
pub fn random_start(dim: usize, seed: u64, restart_index: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart_index as u64));
    (0..2 * dim).map(|_| StandardNormal.sample(&mut rng)).collect()
}

fn better(a: &SearchResult, b: &SearchResult) -> bool {
    (a.converged && !b.converged)
        || (a.converged == b.converged
            && (a.loss < b.loss || (a.loss == b.loss && a.restart_index < b.restart_index)))
}

/// Runs up to `cfg.restarts` descents from seeded random starts and returns
/// the best one (converged first, then lowest loss, then lowest restart index).
///
/// Restarts run in order and the loop stops at the first converged run.
pub fn search(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let mut best: Option<SearchResult> = None;
    for r in 0..cfg.restarts {
        let start = random_start(cfg.dim, cfg.seed, r);
        let raw = params_to_complex(&start);
        let result = descend(unit_params(&raw), cfg, r, None);
        let done = result.converged;
        if best.as_ref().is_none_or(|b| better(&result, b)) {
            best = Some(result);
        }
        if done {
            break;
        }
    }
    Ok(best.expect("at least one restart"))
}
