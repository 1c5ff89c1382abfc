//! Clock and shift operators, their commutation relation, and the squared
//! overlap table of the Hesse SIC orbit.

use num_complex::Complex64;
use sicpovm::fixtures::hesse_fiducial;
use sicpovm::linalg::inner;
use sicpovm::weyl_heisenberg::{clock, displacement, orbit, shift, DisplacementIndex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let z = clock(n)?;
    let x = shift(n)?;
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
    let zx = z.matrix().matmul(x.matrix())?;
    let xz = x.matrix().matmul(z.matrix())?.scale(omega);
    println!("N={n}: max |ZX - wXZ| = {:.2e}", zx.max_abs_diff(&xz)?);
    println!("X^N = I to {:.2e}", x.matrix().pow(n).max_abs_diff(&sicpovm::linalg::SquareMatrix::identity(n))?);

    for p in DisplacementIndex::all(n) {
        let d = displacement(p);
        println!("D({},{}) trace = {:.3}", p.p1(), p.p2(), d.matrix().trace());
    }

    let ens = orbit(&hesse_fiducial());
    println!("\nsquared overlaps |<psi_i|psi_j>|^2 of the Hesse orbit:");
    for a in ens.states() {
        let row: Vec<String> = ens
            .states()
            .iter()
            .map(|b| format!("{:.3}", inner(a, b).map(|v| v.norm_sqr()).unwrap_or(f64::NAN)))
            .collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}
