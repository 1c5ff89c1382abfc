#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sicpovm::linalg::{symmetrize, DensityMatrix, SquareMatrix, StateVector, UnitaryOperator};
use sicpovm::weyl_heisenberg::SicEnsemble;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    StateVector::normalized((0..n).map(|_| gaussian(rng)).collect()).unwrap()
}

/// Haar-random unitary by Gram-Schmidt on Gaussian columns.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> UnitaryOperator {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= proj * ci;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            entries[i * n + j] = c[i];
        }
    }
    UnitaryOperator::new(SquareMatrix::new(n, entries).unwrap()).unwrap()
}

/// Random full-rank density matrix: a convex mixture of `n` pure states.
pub fn random_density(rng: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for w in weights {
        let psi = random_state(rng, n);
        let z = psi.entries();
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] += z[i] * z[j].conj() * (w / total);
            }
        }
    }
    DensityMatrix::new(symmetrize(&SquareMatrix::new(n, entries).unwrap())).unwrap()
}

/// `N²` independent Haar-random states.
pub fn random_ensemble(rng: &mut ChaCha8Rng, n: usize) -> SicEnsemble {
    SicEnsemble::new((0..n * n).map(|_| random_state(rng, n)).collect()).unwrap()
}

/// Central finite-difference gradient of `f`.
pub fn central_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let mut up = x.to_vec();
            let mut dn = x.to_vec();
            up[i] += h;
            dn[i] -= h;
            (f(&up) - f(&dn)) / (2.0 * h)
        })
        .collect()
}

/// `‖a − b‖ / ‖b‖`.
pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let s: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    d / s
}

/// Squared overlaps `|⟨ψ|X^a Z^b|ψ⟩|²` for all `(a, b)`, computed directly
/// from the index formulas. `params` is interleaved and need not be unit.
pub fn oracle_weyl_overlaps(params: &[f64]) -> Vec<f64> {
    let n = params.len() / 2;
    let norm2: f64 = params.iter().map(|x| x * x).sum();
    let z: Vec<Complex64> = (0..n).map(|j| Complex64::new(params[2 * j], params[2 * j + 1])).collect();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                // (X^a Z^b z)_j = ω^{b (j - a)} z_{j - a}
                let src = (j + n - a) % n;
                let angle = 2.0 * std::f64::consts::PI * ((b * src) % n) as f64 / n as f64;
                acc += z[j].conj() * Complex64::from_polar(1.0, angle) * z[src];
            }
            out.push(acc.norm_sqr() / (norm2 * norm2));
        }
    }
    out
}

/// Fiducial loss from the direct overlap formula.
pub fn oracle_loss(params: &[f64]) -> f64 {
    let n = params.len() / 2;
    let c = 1.0 / (n as f64 + 1.0);
    oracle_weyl_overlaps(params).iter().skip(1).map(|o| (o - c) * (o - c)).sum()
}

/// `Σ_ij |⟨ψ_i|ψ_j⟩|⁴` by a double loop.
pub fn oracle_frame_potential(ens: &SicEnsemble) -> f64 {
    let mut total = 0.0;
    for a in ens.states() {
        for b in ens.states() {
            let ov: Complex64 = a.entries().iter().zip(b.entries()).map(|(x, y)| x.conj() * y).sum();
            total += ov.norm_sqr().powi(2);
        }
    }
    total
}
