//! Clock, shift and displacement operators of the Weyl-Heisenberg group in
//! dimension `N`, and the orbit of a fiducial state under it.
//!
//! Conventions:
//!
//! * `Z = diag(1, ω, …, ω^{N−1})` with `ω = e^{2πi/N}`,
//! * `X e_j = e_{j+1 mod N}`,
//! * `D_p = τ^{p₁p₂} X^{p₁} Z^{p₂}` with `τ = e^{iπ(N+1)/N}`.
//!
//! Only squared overlaps `|⟨·|·⟩|²` enter the SIC conditions, so the phase
//! convention never changes a residual.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{SquareMatrix, StateVector, UnitaryOperator};

/// A point `(p₁, p₂)` of `Z_N × Z_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DisplacementIndex {
    p1: usize,
    p2: usize,
    dim: usize,
}

impl DisplacementIndex {
    /// Reduces both components modulo `dim`.
    pub fn new(p1: i64, p2: i64, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let n = dim as i64;
        Ok(Self {
            p1: p1.rem_euclid(n) as usize,
            p2: p2.rem_euclid(n) as usize,
            dim,
        })
    }

    /// Index `k` in the orbit ordering (`p₂` fastest).
    pub fn from_linear(k: usize, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if k >= dim * dim {
            return Err(Error::DimensionMismatch(k, dim * dim));
        }
        Ok(Self {
            p1: k / dim,
            p2: k % dim,
            dim,
        })
    }

    pub fn p1(&self) -> usize {
        self.p1
    }

    pub fn p2(&self) -> usize {
        self.p2
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn linear(&self) -> usize {
        self.p1 * self.dim + self.p2
    }

    pub fn neg(&self) -> Self {
        Self {
            p1: (self.dim - self.p1) % self.dim,
            p2: (self.dim - self.p2) % self.dim,
            dim: self.dim,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self {
            p1: (self.p1 + other.p1) % self.dim,
            p2: (self.p2 + other.p2) % self.dim,
            dim: self.dim,
        }
    }

    /// All `N²` indices in orbit order.
    pub fn all(dim: usize) -> impl Iterator<Item = Self> {
        (0..dim * dim).map(move |k| Self {
            p1: k / dim,
            p2: k % dim,
            dim,
        })
    }
}

/// `ω^k` with the exponent reduced modulo `N` before evaluating.
fn root_of_unity(k: usize, dim: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (k % dim) as f64 / dim as f64)
}

/// `τ^k = e^{iπ(N+1)k/N}`; `τ` has order dividing `2N`.
fn tau_power(k: usize, dim: usize) -> Complex64 {
    let e = ((dim + 1) * k) % (2 * dim);
    Complex64::from_polar(1.0, PI * e as f64 / dim as f64)
}

/// The clock operator `Z`.
pub fn clock(dim: usize) -> Result<UnitaryOperator> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let diag: Vec<Complex64> = (0..dim).map(|k| root_of_unity(k, dim)).collect();
    UnitaryOperator::new(SquareMatrix::diagonal(&diag)?)
}

/// The cyclic shift `X`.
pub fn shift(dim: usize) -> Result<UnitaryOperator> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        // column j maps to row j+1
        entries[((j + 1) % dim) * dim + j] = Complex64::new(1.0, 0.0);
    }
    UnitaryOperator::new(SquareMatrix::new(dim, entries)?)
}

/// `X^{p₁} Z^{p₂}` without the symmetrizing phase.
pub fn weyl_operator(idx: DisplacementIndex) -> UnitaryOperator {
    displacement_with_phase(idx, Complex64::new(1.0, 0.0))
}

/// The displacement operator `D_p = τ^{p₁p₂} X^{p₁} Z^{p₂}`.
pub fn displacement(idx: DisplacementIndex) -> UnitaryOperator {
    displacement_with_phase(idx, tau_power(idx.p1 * idx.p2, idx.dim))
}

fn displacement_with_phase(idx: DisplacementIndex, phase: Complex64) -> UnitaryOperator {
    let n = idx.dim;
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    // (X^a Z^b)_{j, j-a} = ω^{b(j-a)}
    for j in 0..n {
        let k = (j + n - idx.p1) % n;
        entries[j * n + k] = phase * root_of_unity(idx.p2 * k, n);
    }
    UnitaryOperator::new(SquareMatrix::new(n, entries).expect("finite entries"))
        .expect("monomial matrix with unimodular entries is unitary")
}

/// Writes `X^{p₁} Z^{p₂} z` into `out` without building the matrix.
///
/// The overall phase `τ^{p₁p₂}` is dropped; callers only use this inside
/// expressions where it cancels.
pub(crate) fn weyl_apply(idx: DisplacementIndex, z: &[Complex64], out: &mut [Complex64]) {
    let n = idx.dim;
    for (j, o) in out.iter_mut().enumerate() {
        let k = (j + n - idx.p1) % n;
        *o = root_of_unity(idx.p2 * k, n) * z[k];
    }
}

/// `N²` states of dimension `N`, indexed by `(p₁, p₂)` with `p₂` fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct SicEnsemble {
    dim: usize,
    states: Vec<StateVector>,
}

impl SicEnsemble {
    /// Wraps an arbitrary list of `N²` states of common dimension `N`.
    pub fn new(states: Vec<StateVector>) -> Result<Self> {
        let dim = states.first().map(StateVector::dim).ok_or(Error::ZeroDimension)?;
        if states.len() != dim * dim {
            return Err(Error::WrongLength {
                expected: dim * dim,
                got: states.len(),
            });
        }
        if let Some(bad) = states.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch(dim, bad.dim()));
        }
        Ok(Self { dim, states })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, idx: DisplacementIndex) -> &StateVector {
        &self.states[idx.linear()]
    }

    /// Applies `f` to every state.
    pub fn map_states<F>(&self, f: F) -> Result<Self>
    where
        F: FnMut(&StateVector) -> Result<StateVector>,
    {
        Self::new(self.states.iter().map(f).collect::<Result<Vec<_>>>()?)
    }
}

/// The Weyl-Heisenberg orbit `{D_p |ψ⟩}` of a fiducial.
pub fn orbit(fiducial: &StateVector) -> SicEnsemble {
    orbit_by(fiducial, displacement)
}

/// The orbit under the phase-free operators `X^{p₁} Z^{p₂}`.
pub fn orbit_unphased(fiducial: &StateVector) -> SicEnsemble {
    orbit_by(fiducial, weyl_operator)
}

fn orbit_by(fiducial: &StateVector, op: fn(DisplacementIndex) -> UnitaryOperator) -> SicEnsemble {
    let dim = fiducial.dim();
    let states = DisplacementIndex::all(dim)
        .map(|p| {
            let v = op(p).matrix().mul_vec(fiducial.entries()).expect("dims agree");
            StateVector::new(v).expect("displacements are exact permutations with phases")
        })
        .collect();
    SicEnsemble { dim, states }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{apply, inner};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert_eq!(clock(0), Err(Error::ZeroDimension));
        assert_eq!(shift(0), Err(Error::ZeroDimension));
        assert_eq!(DisplacementIndex::new(0, 0, 0), Err(Error::ZeroDimension));
    }

    #[test]
    fn one_dimensional_operators_are_trivial() {
        assert_eq!(clock(1).unwrap().matrix().entries(), &[c(1.0, 0.0)]);
        assert_eq!(shift(1).unwrap().matrix().entries(), &[c(1.0, 0.0)]);
    }

    #[test]
    fn clock_examples() {
        let z2 = clock(2).unwrap();
        assert!((z2.matrix()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((z2.matrix()[(1, 1)] - c(-1.0, 0.0)).norm() < 1e-15);
        let z3 = clock(3).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!((z3.matrix()[(1, 1)] - w).norm() < 1e-15);
        assert!((z3.matrix()[(2, 2)] - w * w).norm() < 1e-15);
        assert_eq!(z3.matrix()[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn shift_examples() {
        let x2 = shift(2).unwrap();
        assert_eq!(
            x2.matrix().entries(),
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]
        );
        let out = apply(&shift(3).unwrap(), &StateVector::basis(3, 0).unwrap()).unwrap();
        assert_eq!(out, StateVector::basis(3, 1).unwrap());
    }

    #[test]
    fn generators_have_order_n_and_satisfy_weyl_relation() {
        for n in 1..=8 {
            let z = clock(n).unwrap();
            let x = shift(n).unwrap();
            let id = SquareMatrix::identity(n);
            assert!(z.matrix().pow(n).max_abs_diff(&id).unwrap() < 1e-12);
            assert!(x.matrix().pow(n).max_abs_diff(&id).unwrap() < 1e-12);
            let xz = x.matrix().matmul(z.matrix()).unwrap();
            let zx = z.matrix().matmul(x.matrix()).unwrap();
            let w = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
            // Z X e_j = ω^{j+1} e_{j+1} = ω · X Z e_j
            assert!(zx.max_abs_diff(&xz.scale(w)).unwrap() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn displacement_examples() {
        for n in 1..=5 {
            let d0 = displacement(DisplacementIndex::new(0, 0, n).unwrap());
            assert_eq!(d0.matrix(), &SquareMatrix::identity(n));
        }
        let d10 = displacement(DisplacementIndex::new(1, 0, 2).unwrap());
        assert_eq!(d10.matrix(), shift(2).unwrap().matrix());
    }

    #[test]
    fn displacement_matches_generator_powers() {
        for n in 1..=6 {
            let x = shift(n).unwrap();
            let z = clock(n).unwrap();
            for p in DisplacementIndex::all(n) {
                let want = x.matrix().pow(p.p1()).matmul(&z.matrix().pow(p.p2())).unwrap();
                let got = weyl_operator(p);
                assert!(got.matrix().max_abs_diff(&want).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn displacements_are_unitary() {
        for n in 1..=8 {
            for p in DisplacementIndex::all(n) {
                let d = displacement(p);
                let dev = d
                    .adjoint()
                    .matrix()
                    .matmul(d.matrix())
                    .unwrap()
                    .max_abs_diff(&SquareMatrix::identity(n))
                    .unwrap();
                assert!(dev < 1e-12);
            }
        }
    }

    #[test]
    fn adjoint_is_unimodular_multiple_of_negated_index() {
        for n in 1..=8 {
            for p in DisplacementIndex::all(n) {
                let adj = displacement(p).adjoint();
                let neg = displacement(p.neg());
                // adj = λ · neg with |λ| = 1; recover λ from Tr(neg† adj) / N.
                let lambda = neg.adjoint().matrix().matmul(adj.matrix()).unwrap().trace() / n as f64;
                assert!((lambda.norm() - 1.0).abs() < 1e-12);
                let diff = adj.matrix().max_abs_diff(&neg.matrix().scale(lambda)).unwrap();
                assert!(diff < 1e-12);
                if n % 2 == 1 {
                    assert!((lambda - c(1.0, 0.0)).norm() < 1e-12, "odd n has exact inverse");
                }
            }
        }
    }

    #[test]
    fn group_law_holds_up_to_phase() {
        for n in 1..=6 {
            for p in DisplacementIndex::all(n) {
                for q in DisplacementIndex::all(n) {
                    let prod = displacement(p).matrix().matmul(displacement(q).matrix()).unwrap();
                    let t = displacement(p.add(&q)).adjoint().matrix().matmul(&prod).unwrap().trace();
                    assert!((t.norm() - n as f64).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn fast_apply_matches_matrix_up_to_phase() {
        let z: Vec<Complex64> = (0..5).map(|k| c(k as f64 * 0.3 - 0.5, 0.1 * k as f64)).collect();
        let mut out = vec![c(0.0, 0.0); 5];
        for p in DisplacementIndex::all(5) {
            weyl_apply(p, &z, &mut out);
            let want = weyl_operator(p).matrix().mul_vec(&z).unwrap();
            for (a, b) in out.iter().zip(&want) {
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn orbit_of_one_dimensional_state() {
        let psi = StateVector::basis(1, 0).unwrap();
        let ens = orbit(&psi);
        assert_eq!(ens.len(), 1);
        assert_eq!(ens.states()[0], psi);
    }

    #[test]
    fn orbit_of_basis_vector_in_dimension_two() {
        let e0 = StateVector::basis(2, 0).unwrap();
        let e1 = StateVector::basis(2, 1).unwrap();
        let ens = orbit(&e0);
        assert_eq!(ens.len(), 4);
        // (0,0) -> e0, (0,1) -> Z e0 = e0, (1,0) -> e1, (1,1) -> phase * e1
        let expect = [&e0, &e0, &e1, &e1];
        for (s, want) in ens.states().iter().zip(expect) {
            assert!((inner(s, want).unwrap().norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn orbit_starts_at_fiducial_and_is_ordered() {
        let psi = StateVector::normalized(vec![c(0.3, 0.2), c(-0.1, 0.7), c(0.4, -0.4)]).unwrap();
        let ens = orbit(&psi);
        assert_eq!(ens.len(), 9);
        assert_eq!(ens.states()[0], psi);
        let p = DisplacementIndex::new(2, 1, 3).unwrap();
        assert_eq!(p.linear(), 7);
        assert_eq!(ens.state(p), &apply(&displacement(p), &psi).unwrap());
    }

    #[test]
    fn ensemble_rejects_wrong_sizes() {
        let e = StateVector::basis(2, 0).unwrap();
        assert!(matches!(
            SicEnsemble::new(vec![e.clone(); 3]),
            Err(Error::WrongLength { expected: 4, got: 3 })
        ));
        let f = StateVector::basis(3, 0).unwrap();
        assert!(SicEnsemble::new(vec![e.clone(), e.clone(), e, f]).is_err());
        assert!(SicEnsemble::new(vec![]).is_err());
    }

    #[test]
    fn index_reduction_and_linear_order() {
        let p = DisplacementIndex::new(-1, 7, 3).unwrap();
        assert_eq!((p.p1(), p.p2()), (2, 1));
        let all: Vec<_> = DisplacementIndex::all(3).map(|p| (p.p1(), p.p2())).collect();
        assert_eq!(all[..4], [(0, 0), (0, 1), (0, 2), (1, 0)]);
        assert_eq!(DisplacementIndex::from_linear(5, 3).unwrap(), DisplacementIndex::new(1, 2, 3).unwrap());
    }
}
