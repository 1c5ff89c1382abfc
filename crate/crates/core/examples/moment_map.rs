//! The moment map of the torus action on complex projective space: fixed
//! points land on the simplex vertices and random points inside.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sicpovm::geometry::{moment_map, simplex_membership, simplex_preimage, vertex_images, ProjectivePoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 3;
    for (k, img) in vertex_images(m)?.iter().enumerate() {
        println!("e{k} -> {:?}", img.coords());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let z: Vec<Complex64> = (0..m)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let p = ProjectivePoint::new(z.clone())?;
        let img = moment_map(&p);
        let torus: Vec<Complex64> = z
            .iter()
            .map(|v| v * Complex64::from_polar(1.0, rng.gen_range(0.0..6.3)))
            .collect();
        let moved = moment_map(&ProjectivePoint::new(torus)?);
        let shift = img.distance_sq(&moved).sqrt();
        let back = moment_map(&simplex_preimage(&img));
        println!(
            "{:?} inside={} torus shift={shift:.1e} preimage error={:.1e}",
            img.coords(),
            simplex_membership(img.coords(), 1e-12),
            img.distance_sq(&back).sqrt()
        );
    }
    Ok(())
}
