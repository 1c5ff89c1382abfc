//! Certification of SIC-POVM candidates.
//!
//! An ensemble of `N²` unit vectors is a SIC when every pair of distinct
//! states has squared overlap `1/(N+1)` and the rescaled projectors resolve
//! the identity, `Σᵢ (1/N)|ψᵢ⟩⟨ψᵢ| = I`. The two conditions are measured
//! separately: equiangularity in the max norm, the identity resolution in the
//! Hilbert-Schmidt norm. Informational completeness is checked as full rank of
//! the projector Gram matrix `Gᵢⱼ = Tr(PᵢPⱼ) = |⟨ψᵢ|ψⱼ⟩|²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner_slices, symmetric_eigenvalues};
use crate::weyl_heisenberg::SicEnsemble;

/// Default certification tolerance on both residuals.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Singular values below this fraction of the largest count as zero.
pub const RANK_REL_TOL: f64 = 1e-10;

/// The pair of distinct states whose squared overlap deviates most from
/// `1/(N+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlapPair {
    pub i: usize,
    pub j: usize,
    pub overlap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub dim: usize,
    pub tol: f64,
    pub equiangularity_residual: f64,
    pub identity_residual: f64,
    pub completeness_rank: usize,
    pub frame_potential: f64,
    /// `None` when the ensemble has a single state.
    pub max_overlap_ij: Option<OverlapPair>,
    pub pass: bool,
}

/// The `N² × N²` matrix of squared overlaps `|⟨ψᵢ|ψⱼ⟩|²`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapMatrix {
    size: usize,
    data: Vec<f64>,
}

impl OverlapMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.size + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Off-diagonal entries `(i, j, value)` with `i < j`.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.size).flat_map(move |i| ((i + 1)..self.size).map(move |j| (i, j, self.get(i, j))))
    }
}

pub fn overlap_matrix(ens: &SicEnsemble) -> OverlapMatrix {
    let states = ens.states();
    let m = states.len();
    let mut data = vec![0.0; m * m];
    for i in 0..m {
        data[i * m + i] = inner_slices(states[i].entries(), states[i].entries()).norm_sqr();
        for j in (i + 1)..m {
            let v = inner_slices(states[i].entries(), states[j].entries()).norm_sqr();
            data[i * m + j] = v;
            data[j * m + i] = v;
        }
    }
    OverlapMatrix { size: m, data }
}

fn sic_overlap(dim: usize) -> f64 {
    1.0 / (dim as f64 + 1.0)
}

fn worst_pair(ens: &SicEnsemble, overlaps: &OverlapMatrix) -> Option<(OverlapPair, f64)> {
    let target = sic_overlap(ens.dim());
    overlaps
        .off_diagonal()
        .map(|(i, j, overlap)| (OverlapPair { i, j, overlap }, (overlap - target).abs()))
        .fold(None, |best, cur| match best {
            Some((_, d)) if d >= cur.1 => best,
            _ => Some(cur),
        })
}

/// `max_{i≠j} | |⟨ψᵢ|ψⱼ⟩|² − 1/(N+1) |`, zero for a single state.
pub fn equiangularity_residual(ens: &SicEnsemble) -> f64 {
    worst_pair(ens, &overlap_matrix(ens)).map_or(0.0, |(_, d)| d)
}

/// Hilbert-Schmidt norm of `Σᵢ (1/N)|ψᵢ⟩⟨ψᵢ| − I`.
pub fn identity_residual(ens: &SicEnsemble) -> f64 {
    let n = ens.dim();
    let w = 1.0 / n as f64;
    let mut acc = vec![num_complex::Complex64::new(0.0, 0.0); n * n];
    for s in ens.states() {
        let z = s.entries();
        for i in 0..n {
            for j in 0..n {
                acc[i * n + j] += z[i] * z[j].conj() * w;
            }
        }
    }
    for i in 0..n {
        acc[i * n + i] -= 1.0;
    }
    acc.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn gram_rank(overlaps: &OverlapMatrix) -> usize {
    let sv: Vec<f64> = symmetric_eigenvalues(overlaps.size, overlaps.data.clone())
        .into_iter()
        .map(f64::abs)
        .collect();
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_REL_TOL * largest).count()
}

/// Rank of the projector Gram matrix; `N²` certifies the projectors span
/// every Hermitian matrix.
pub fn info_completeness_rank(ens: &SicEnsemble) -> usize {
    gram_rank(&overlap_matrix(ens))
}

/// `Σᵢⱼ |⟨ψᵢ|ψⱼ⟩|⁴` over all ordered pairs, diagonal included.
pub fn frame_potential(ens: &SicEnsemble) -> f64 {
    overlap_matrix(ens).data.iter().map(|v| v * v).sum()
}

/// The frame potential of an exact SIC, `2N³/(N+1)`, which is the minimum
/// over all ensembles of `N²` unit vectors.
pub fn sic_frame_potential(dim: usize) -> f64 {
    let n = dim as f64;
    2.0 * n * n * n / (n + 1.0)
}

/// Runs every diagnostic and decides `pass` at tolerance `tol`.
pub fn verify(ens: &SicEnsemble, tol: f64) -> Result<VerificationReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidConfig(format!("tolerance must be positive, got {tol}")));
    }
    let overlaps = overlap_matrix(ens);
    let worst = worst_pair(ens, &overlaps);
    let equiangularity_residual = worst.map_or(0.0, |(_, d)| d);
    let identity_residual = identity_residual(ens);
    let completeness_rank = gram_rank(&overlaps);
    let frame_potential = overlaps.data.iter().map(|v| v * v).sum();
    let pass = equiangularity_residual <= tol
        && identity_residual <= tol
        && completeness_rank == ens.len();
    Ok(VerificationReport {
        dim: ens.dim(),
        tol,
        equiangularity_residual,
        identity_residual,
        completeness_rank,
        frame_potential,
        max_overlap_ij: worst.map(|(p, _)| p),
        pass,
    })
}
