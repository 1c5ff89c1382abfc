//! Dense complex linear algebra at small dimension.
//!
//! Everything here works on row-major `Vec<Complex64>` storage and is meant
//! for matrices of side at most a few dozen. The invariant-carrying wrappers
//! ([`HermitianMatrix`], [`DensityMatrix`], [`UnitaryOperator`]) validate on
//! construction and reject bad input rather than repairing it. The single
//! exception is [`StateVector::normalized`], which the optimizer uses on its
//! raw iterates, and [`symmetrize`], which must be called explicitly.
//!
//! The metric on Hermitian matrices is `d²(A, B) = ½ Tr (A − B)²`
//! ([`hs_distance_sq`]). Under it two pure states satisfy
//! `d²(P_ψ, P_φ) = 1 − |⟨ψ|φ⟩|²`.

use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `Σ|z_k|² = 1` for [`StateVector`].
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance on `max |A − A†|` for [`HermitianMatrix`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on `Tr ρ = 1` for [`DensityMatrix`].
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue admitted in a [`DensityMatrix`].
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance on `max |U†U − I|` for [`UnitaryOperator`].
pub const UNITARY_TOL: f64 = 1e-10;
/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// (scaled by the matrix norm when that exceeds one).
pub const JACOBI_OFF_TOL: f64 = 1e-13;

const JACOBI_MAX_SWEEPS: usize = 100;

fn check_finite(entries: &[Complex64]) -> Result<()> {
    match entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

fn norm_sqr(entries: &[Complex64]) -> f64 {
    entries.iter().map(|z| z.norm_sqr()).sum()
}

/// A unit-norm vector in `C^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    entries: Vec<Complex64>,
}

impl StateVector {
    /// Wraps `entries`, rejecting them unless they are finite and of unit norm.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroDimension);
        }
        check_finite(&entries)?;
        let n2 = norm_sqr(&entries);
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { entries })
    }

    /// Divides `entries` by their norm.
    pub fn normalized(mut entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroDimension);
        }
        check_finite(&entries)?;
        let n = norm_sqr(&entries).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        entries.iter_mut().for_each(|z| *z /= n);
        Ok(Self { entries })
    }

    /// Builds a state from `2N` interleaved real/imaginary parts, normalizing.
    pub fn from_params(params: &[f64]) -> Result<Self> {
        if !params.len().is_multiple_of(2) {
            return Err(Error::WrongLength {
                expected: params.len() + 1,
                got: params.len(),
            });
        }
        Self::normalized(params_to_complex(params))
    }

    /// The `k`-th computational basis vector of `C^dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if k >= dim {
            return Err(Error::DimensionMismatch(k, dim));
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim];
        entries[k] = Complex64::new(1.0, 0.0);
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Interleaved `[re₀, im₀, re₁, im₁, …]`.
    pub fn to_params(&self) -> Vec<f64> {
        self.entries.iter().flat_map(|z| [z.re, z.im]).collect()
    }

    /// Multiplies by the global phase `e^{iθ}`.
    pub fn with_phase(&self, theta: f64) -> Self {
        let w = Complex64::from_polar(1.0, theta);
        Self {
            entries: self.entries.iter().map(|z| z * w).collect(),
        }
    }

    /// Rotates the global phase so the first component with modulus above
    /// `1e-12` is real and nonnegative.
    pub fn gauge_fixed(&self) -> Self {
        match self.entries.iter().find(|z| z.norm() > 1e-12) {
            Some(z) => {
                let w = z.conj() / z.norm();
                let mut entries: Vec<Complex64> = self.entries.iter().map(|e| e * w).collect();
                if let Some(first) = entries.iter_mut().find(|z| z.norm() > 1e-12) {
                    first.im = 0.0;
                }
                Self { entries }
            }
            None => self.clone(),
        }
    }
}

pub(crate) fn params_to_complex(params: &[f64]) -> Vec<Complex64> {
    params
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect()
}

/// A `dim × dim` complex matrix in row-major order with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl SquareMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::WrongLength {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        check_finite(&entries)?;
        Ok(Self { dim, entries })
    }

    /// Builds from real parts only.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(diag: &[Complex64]) -> Result<Self> {
        let dim = diag.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        check_finite(diag)?;
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * dim + i] = d;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, exponent: usize) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..exponent {
            out = out.matmul(self).expect("same dimension");
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |self − other|` over entries.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        let n = self.dim;
        Ok((0..n)
            .map(|i| {
                self.entries[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

/// A matrix equal to its adjoint within [`HERMITIAN_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(SquareMatrix);

impl HermitianMatrix {
    pub fn new(m: SquareMatrix) -> Result<Self> {
        let dev = m.max_abs_diff(&m.adjoint())?;
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self(m))
    }

    pub fn identity(dim: usize) -> Self {
        Self(SquareMatrix::identity(dim))
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// The trace, which is real for a Hermitian matrix.
    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }
}

/// Replaces `A` by `(A + A†)/2`.
pub fn symmetrize(m: &SquareMatrix) -> HermitianMatrix {
    let adj = m.adjoint();
    HermitianMatrix(SquareMatrix {
        dim: m.dim,
        entries: m
            .entries
            .iter()
            .zip(&adj.entries)
            .map(|(a, b)| (a + b) * 0.5)
            .collect(),
    })
}

/// A unit-trace positive semi-definite Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let tr = h.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let lo = min_eigenvalue(&h)?;
        if lo < -PSD_TOL {
            return Err(Error::NotPositive(lo));
        }
        Ok(Self(h))
    }

    /// The maximally mixed state `I/N`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self(HermitianMatrix(
            SquareMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
        )))
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.0 .0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

impl AsRef<HermitianMatrix> for DensityMatrix {
    fn as_ref(&self) -> &HermitianMatrix {
        &self.0
    }
}

impl AsRef<HermitianMatrix> for HermitianMatrix {
    fn as_ref(&self) -> &HermitianMatrix {
        self
    }
}

/// A matrix with `U†U = I` within [`UNITARY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator(SquareMatrix);

impl UnitaryOperator {
    pub fn new(m: SquareMatrix) -> Result<Self> {
        let dev = m
            .adjoint()
            .matmul(&m)?
            .max_abs_diff(&SquareMatrix::identity(m.dim))?;
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self(m))
    }

    pub fn identity(dim: usize) -> Self {
        Self(SquareMatrix::identity(dim))
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Product of two unitaries; the result is re-validated.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::new(self.0.matmul(&other.0)?)
    }
}

/// `⟨u|v⟩ = Σ conj(u_k) v_k`.
pub fn inner(u: &StateVector, v: &StateVector) -> Result<Complex64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch(u.dim(), v.dim()));
    }
    Ok(inner_slices(&u.entries, &v.entries))
}

#[inline]
pub(crate) fn inner_slices(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// The rank-one projector `|ψ⟩⟨ψ|`.
pub fn projector(psi: &StateVector) -> DensityMatrix {
    let n = psi.dim();
    let z = psi.entries();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(z[i] * z[j].conj());
        }
    }
    // Positive and unit-trace by construction.
    DensityMatrix(HermitianMatrix(SquareMatrix { dim: n, entries }))
}

/// `½ Tr (A − B)²`, computed as `½ Σ |A_ij − B_ij|²`.
pub fn hs_distance_sq(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(0.5
        * a.0
            .entries
            .iter()
            .zip(&b.0.entries)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>())
}

/// `Tr(AB)` for Hermitian arguments (real).
pub fn hs_inner(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    // Tr(AB) = Σ_ij A_ij B_ji = Σ_ij A_ij conj(B_ij)
    Ok(a.0
        .entries
        .iter()
        .zip(&b.0.entries)
        .map(|(x, y)| (x * y.conj()).re)
        .sum())
}

/// `U|ψ⟩`.
pub fn apply(u: &UnitaryOperator, psi: &StateVector) -> Result<StateVector> {
    StateVector::new(u.0.mul_vec(psi.entries())?)
}

/// `U A U†`.
pub fn conjugate(u: &UnitaryOperator, a: &HermitianMatrix) -> Result<HermitianMatrix> {
    if u.dim() != a.dim() {
        return Err(Error::DimensionMismatch(u.dim(), a.dim()));
    }
    let m = u.0.matmul(&a.0)?.matmul(&u.0.adjoint())?;
    HermitianMatrix::new(m)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &HermitianMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?[0])
}

/// All eigenvalues of a Hermitian matrix in ascending order.
///
/// The `N × N` complex matrix `A + iB` is embedded as the real symmetric
/// `[[A, −B], [B, A]]`, whose spectrum is that of the original with every
/// eigenvalue doubled; every other value of the sorted real spectrum is kept.
pub fn eigenvalues(a: &HermitianMatrix) -> Result<Vec<f64>> {
    let dev = a.0.max_abs_diff(&a.0.adjoint())?;
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let n = a.dim();
    let m = 2 * n;
    let mut real = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = a.0.entries[i * n + j];
            real[i * m + j] = z.re;
            real[(i + n) * m + (j + n)] = z.re;
            real[i * m + (j + n)] = -z.im;
            real[(i + n) * m + j] = z.im;
        }
    }
    let doubled = symmetric_eigenvalues(m, real);
    Ok(doubled.into_iter().step_by(2).collect())
}

/// Eigenvalues (ascending) of a real symmetric `n × n` matrix by cyclic
/// Jacobi rotations.
///
/// Only the upper triangle is read, so small asymmetries from rounding are
/// harmless.
pub fn symmetric_eigenvalues(n: usize, mut a: Vec<f64>) -> Vec<f64> {
    assert_eq!(a.len(), n * n, "matrix storage must be n*n");
    for i in 0..n {
        for j in 0..i {
            a[i * n + j] = a[j * n + i];
        }
    }
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = JACOBI_OFF_TOL * frob.max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}
