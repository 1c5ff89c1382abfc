//! SIC projectors as the vertices of a regular simplex inscribed in the
//! outsphere of the state space.

use sicpovm::geometry::{hermitian_coords, outsphere_radius, sic_simplex_report, OUTSPHERE_TOL, REGULARITY_TOL};
use sicpovm::linalg::{projector, DensityMatrix};
use sicpovm::search::{search, SearchConfig};
use sicpovm::weyl_heisenberg::orbit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=5 {
        let fid = search(&SearchConfig::new(n).with_restarts(50).with_loss_tolerance(1e-20))?.fiducial;
        let ens = orbit(&fid);
        let rep = sic_simplex_report(&ens, REGULARITY_TOL, OUTSPHERE_TOL);
        println!(
            "N={n}: edge^2 in [{:.12}, {:.12}] (N/(N+1) = {:.12}), radius {:.12}, deviation {:.1e}",
            rep.min_edge, rep.max_edge, rep.sic_edge, rep.outsphere_radius, rep.max_radius_deviation
        );

        // Centroid of the vertices is the maximally mixed state.
        let centre = hermitian_coords(&DensityMatrix::maximally_mixed(n)?);
        let mut mean = vec![0.0; centre.as_slice().len()];
        for s in ens.states() {
            for (m, c) in mean.iter_mut().zip(hermitian_coords(&projector(s)).as_slice()) {
                *m += c / ens.len() as f64;
            }
        }
        let off: f64 = mean.iter().zip(centre.as_slice()).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        println!("      centroid distance from I/N = {off:.1e}, outsphere sqrt((N-1)/2N) = {:.12}", outsphere_radius(n));
    }
    Ok(())
}
