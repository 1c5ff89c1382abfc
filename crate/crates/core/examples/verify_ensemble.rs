//! Verification reports for a SIC and for a random ensemble of the same size.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use sicpovm::fixtures::qubit_fiducial;
use sicpovm::io::to_json;
use sicpovm::linalg::StateVector;
use sicpovm::verify::{sic_frame_potential, verify};
use sicpovm::weyl_heisenberg::{orbit, SicEnsemble};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sic = orbit(&qubit_fiducial());
    println!("qubit SIC:\n{}", to_json(&verify(&sic, 1e-9)?));

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let states = (0..4)
        .map(|_| {
            let z: Vec<Complex64> = (0..2)
                .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect();
            StateVector::normalized(z)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let random = SicEnsemble::new(states)?;
    let report = verify(&random, 1e-9)?;
    println!("random ensemble:\n{}", to_json(&report));
    println!(
        "frame potential {:.6} vs SIC minimum {:.6}",
        report.frame_potential,
        sic_frame_potential(2)
    );
    Ok(())
}
