//! Known closed-form fiducials used as test oracles and examples.

use num_complex::Complex64;

use crate::linalg::StateVector;

/// Qubit fiducial with Bloch vector `(1, 1, 1)/√3`:
/// `(√((1 + 1/√3)/2), e^{iπ/4} √((1 − 1/√3)/2))`.
pub fn qubit_fiducial() -> StateVector {
    let r = 1.0 / 3f64.sqrt();
    let a = ((1.0 + r) / 2.0).sqrt();
    let b = ((1.0 - r) / 2.0).sqrt();
    StateVector::normalized(vec![
        Complex64::new(a, 0.0),
        Complex64::from_polar(b, std::f64::consts::FRAC_PI_4),
    ])
    .expect("nonzero")
}

/// Qutrit fiducial `(0, 1, −1)/√2` from the Hesse configuration.
pub fn hesse_fiducial() -> StateVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::new(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(-s, 0.0),
    ])
    .expect("unit norm")
}
