//! Numerical laboratory for symmetric informationally complete POVMs.
//!
//! A SIC in dimension `N` is a set of `N²` unit vectors whose pairwise squared
//! overlaps all equal `1/(N+1)`. This crate searches for Weyl-Heisenberg
//! covariant SICs, certifies candidates, and measures the geometry they
//! induce: the regular simplex their projectors span in the space of
//! unit-trace Hermitian matrices, and the moment-map simplex of the torus
//! action on complex projective space.
//!
//! Modules:
//!
//! - [`linalg`]: small dense complex algebra, the `½ Tr (A − B)²` metric and a
//!   cyclic Jacobi eigensolver.
//! - [`weyl_heisenberg`]: clock, shift and displacement operators; orbits.
//! - [`verify`]: SIC residuals, Gram rank and frame potential.
//! - [`search`]: least-squares fiducial search with seeded restarts.
//! - [`geometry`]: moment map, Hermitian coordinates and simplex reports.
//! - [`io`] and [`cli`]: JSON file formats and the command-line front end.
//!
//! ```
//! use sicpovm::{fixtures, verify, weyl_heisenberg};
//!
//! let ens = weyl_heisenberg::orbit(&fixtures::qubit_fiducial());
//! let report = verify::verify(&ens, 1e-9).unwrap();
//! assert!(report.pass);
//! ```

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod search;
pub mod verify;
pub mod weyl_heisenberg;

pub use error::{Error, Result};
