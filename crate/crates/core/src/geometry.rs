//! Moment-map and Hilbert-Schmidt geometry.
//!
//! The torus `T^M` acts on `CP^{M−1}` by independent phases on the homogeneous
//! coordinates. Its moment map sends `[z₀ : … : z_{M−1}]` to
//! `½ (|z₀|², …, |z_{M−1}|²) / ‖z‖²`, a point of the scaled standard simplex
//! `{x ≥ 0, Σx = ½}`. The fixed points `[e_k]` land on the vertices `½e_k`,
//! which sit at mutual squared distance `½`.
//!
//! On the other side, unit-trace Hermitian matrices are embedded isometrically
//! in `R^{N²}` by expanding them in an orthonormal Hermitian basis. With that
//! embedding a SIC is a regular simplex of `N²` vertices whose edges satisfy
//! `½ Tr (Pᵢ − Pⱼ)² = N/(N+1)` and whose vertices lie at distance
//! `√((N−1)/(2N))` from `I/N`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{projector, DensityMatrix, HermitianMatrix, SquareMatrix};
use crate::weyl_heisenberg::SicEnsemble;

/// Tolerance on `Σ coords = ½` for a [`MomentImage`].
pub const MOMENT_SUM_TOL: f64 = 1e-12;
/// Default spread allowed between the shortest and longest simplex edge.
pub const REGULARITY_TOL: f64 = 1e-7;
/// Default allowed deviation of a vertex from the outsphere.
pub const OUTSPHERE_TOL: f64 = 1e-9;

/// A point of `CP^{M−1}` given by a nonzero representative.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    rep: Vec<Complex64>,
}

impl ProjectivePoint {
    pub fn new(rep: Vec<Complex64>) -> Result<Self> {
        if rep.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(i) = rep.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if rep.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { rep })
    }

    pub fn from_real(rep: &[f64]) -> Result<Self> {
        Self::new(rep.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn rep(&self) -> &[Complex64] {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }
}

/// A point of the simplex `{x ∈ R^M : x ≥ 0, Σx = ½}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentImage {
    coords: Vec<f64>,
}

impl MomentImage {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(i) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if let Some(x) = coords.iter().find(|&&x| !(0.0..=0.5 + MOMENT_SUM_TOL).contains(&x)) {
            return Err(Error::InvalidMomentImage(format!("coordinate {x} outside [0, 1/2]")));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 0.5).abs() > MOMENT_SUM_TOL {
            return Err(Error::InvalidMomentImage(format!("coordinates sum to {sum}, not 1/2")));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Squared Euclidean distance between two images.
    pub fn distance_sq(&self, other: &Self) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }
}

/// `μ([z])_k = ½ |z_k|² / ‖z‖²`.
pub fn moment_map(z: &ProjectivePoint) -> MomentImage {
    let sq: Vec<f64> = z.rep.iter().map(|v| v.norm_sqr()).collect();
    let total: f64 = sq.iter().sum();
    MomentImage {
        coords: sq.into_iter().map(|s| 0.5 * s / total).collect(),
    }
}

/// Images of the `M` torus-fixed points `[e_k]`, i.e. the vertices `½e_k`.
pub fn vertex_images(m: usize) -> Result<Vec<MomentImage>> {
    if m == 0 {
        return Err(Error::ZeroDimension);
    }
    (0..m)
        .map(|k| {
            let mut rep = vec![Complex64::new(0.0, 0.0); m];
            rep[k] = Complex64::new(1.0, 0.0);
            Ok(moment_map(&ProjectivePoint::new(rep)?))
        })
        .collect()
}

/// Whether `x` lies in the scaled simplex up to `tol`: every coordinate at
/// least `−tol` and `|Σx − ½| ≤ tol`.
pub fn simplex_membership(x: &[f64], tol: f64) -> bool {
    !x.is_empty()
        && x.iter().all(|&v| v.is_finite() && v >= -tol)
        && (x.iter().sum::<f64>() - 0.5).abs() <= tol
}

/// A representative with `μ(z) = x`: `z_k = √(2 x_k)`, already unit norm.
pub fn simplex_preimage(x: &MomentImage) -> ProjectivePoint {
    ProjectivePoint {
        rep: x
            .coords
            .iter()
            .map(|&v| Complex64::new((2.0 * v).sqrt(), 0.0))
            .collect(),
    }
}

/// Coordinates of a Hermitian matrix in the orthonormal basis of
/// [`hermitian_basis`]. Euclidean inner products of coordinates equal
/// `Tr(AB)`, so the squared Euclidean distance is `Tr (A − B)² = 2 d²(A, B)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianCoords {
    vec: Vec<f64>,
}

impl HermitianCoords {
    pub fn as_slice(&self) -> &[f64] {
        &self.vec
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.vec.iter().zip(&other.vec).map(|(a, b)| a * b).sum()
    }

    pub fn distance_sq(&self, other: &Self) -> f64 {
        self.vec
            .iter()
            .zip(&other.vec)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }
}

/// The orthonormal Hermitian basis (under `Tr(AB)`) used by
/// [`hermitian_coords`], in order:
///
/// 1. `I/√N`;
/// 2. `(E_jk + E_kj)/√2` for `j < k`, lexicographic;
/// 3. `(−i E_jk + i E_kj)/√2` for `j < k`, lexicographic;
/// 4. `(Σ_{m<l} E_mm − l E_ll)/√(l(l+1))` for `l = 1..N−1`.
pub fn hermitian_basis(dim: usize) -> Result<Vec<HermitianMatrix>> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = dim;
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(n * n);
    let build = |entries: Vec<Complex64>| HermitianMatrix::new(SquareMatrix::new(n, entries)?);

    out.push(build(
        SquareMatrix::identity(n)
            .scale(Complex64::new(1.0 / (n as f64).sqrt(), 0.0))
            .entries()
            .to_vec(),
    )?);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for (re, im) in [(r, 0.0), (0.0, r)] {
        for j in 0..n {
            for k in (j + 1)..n {
                let mut e = vec![zero; n * n];
                e[j * n + k] = Complex64::new(re, -im);
                e[k * n + j] = Complex64::new(re, im);
                out.push(build(e)?);
            }
        }
    }
    for l in 1..n {
        let norm = ((l * (l + 1)) as f64).sqrt();
        let mut e = vec![zero; n * n];
        for m in 0..l {
            e[m * n + m] = Complex64::new(1.0 / norm, 0.0);
        }
        e[l * n + l] = Complex64::new(-(l as f64) / norm, 0.0);
        out.push(build(e)?);
    }
    Ok(out)
}

/// Coordinates of a density matrix; see [`hermitian_basis`] for the order.
pub fn hermitian_coords(rho: &DensityMatrix) -> HermitianCoords {
    hermitian_coords_of(rho.hermitian())
}

/// Coordinates of any Hermitian matrix.
pub fn hermitian_coords_of(a: &HermitianMatrix) -> HermitianCoords {
    let n = a.dim();
    let m = a.matrix();
    let mut vec = Vec::with_capacity(n * n);
    vec.push(a.trace() / (n as f64).sqrt());
    let s2 = std::f64::consts::SQRT_2;
    for j in 0..n {
        for k in (j + 1)..n {
            vec.push(s2 * m[(j, k)].re);
        }
    }
    for j in 0..n {
        for k in (j + 1)..n {
            vec.push(-s2 * m[(j, k)].im);
        }
    }
    for l in 1..n {
        let norm = ((l * (l + 1)) as f64).sqrt();
        let head: f64 = (0..l).map(|i| m[(i, i)].re).sum();
        vec.push((head - l as f64 * m[(l, l)].re) / norm);
    }
    HermitianCoords { vec }
}

/// `√((N−1)/(2N))`, the distance from any pure state to `I/N`.
pub fn outsphere_radius(dim: usize) -> f64 {
    let n = dim as f64;
    ((n - 1.0) / (2.0 * n)).sqrt()
}

/// Edge and circumsphere statistics of the simplex spanned by an ensemble's
/// projectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexReport {
    pub dim: usize,
    /// Smallest pairwise `½ Tr (Pᵢ − Pⱼ)²`.
    pub min_edge: f64,
    pub max_edge: f64,
    pub mean_edge: f64,
    /// `N/(N+1)`, the SIC edge.
    pub sic_edge: f64,
    pub regularity_tol: f64,
    pub regular: bool,
    pub outsphere_radius: f64,
    /// Largest `| dist(Pᵢ, I/N) − outsphere_radius |`.
    pub max_radius_deviation: f64,
    pub outsphere_tol: f64,
    pub on_outsphere: bool,
}

/// Embeds every projector with [`hermitian_coords`] and measures the simplex.
///
/// Distances are taken in the embedding and converted with the factor
/// `d² = ½ |c(A) − c(B)|²`. For a single state there are no edges; the edge
/// statistics are zero and the simplex counts as regular.
pub fn sic_simplex_report(ens: &SicEnsemble, regularity_tol: f64, outsphere_tol: f64) -> SimplexReport {
    let n = ens.dim();
    let coords: Vec<HermitianCoords> = ens
        .states()
        .iter()
        .map(|s| hermitian_coords(&projector(s)))
        .collect();

    let mut min_edge = f64::INFINITY;
    let mut max_edge = 0.0f64;
    let mut sum = 0.0;
    let mut count = 0usize;
    for i in 0..coords.len() {
        for j in (i + 1)..coords.len() {
            let d = 0.5 * coords[i].distance_sq(&coords[j]);
            min_edge = min_edge.min(d);
            max_edge = max_edge.max(d);
            sum += d;
            count += 1;
        }
    }
    if count == 0 {
        min_edge = 0.0;
    }
    let mean_edge = if count == 0 { 0.0 } else { sum / count as f64 };

    let centre = hermitian_coords(&DensityMatrix::maximally_mixed(n).expect("positive dim"));
    let radius = outsphere_radius(n);
    let max_radius_deviation = coords
        .iter()
        .map(|c| ((0.5 * c.distance_sq(&centre)).sqrt() - radius).abs())
        .fold(0.0, f64::max);

    SimplexReport {
        dim: n,
        min_edge,
        max_edge,
        mean_edge,
        sic_edge: n as f64 / (n as f64 + 1.0),
        regularity_tol,
        regular: max_edge - min_edge <= regularity_tol,
        outsphere_radius: radius,
        max_radius_deviation,
        outsphere_tol,
        on_outsphere: max_radius_deviation <= outsphere_tol,
    }
}
