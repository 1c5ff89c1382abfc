//! Analytic loss gradient against central finite differences.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use sicpovm::search::{loss_gradient, loss_params};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let h = 1e-6;
    for n in 2..=6 {
        let x: Vec<f64> = (0..2 * n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let g = loss_gradient(&x)?;
        let mut err = 0.0f64;
        let mut scale = 0.0f64;
        for i in 0..x.len() {
            let mut up = x.clone();
            let mut dn = x.clone();
            up[i] += h;
            dn[i] -= h;
            let fd = (loss_params(&up)? - loss_params(&dn)?) / (2.0 * h);
            err += (fd - g[i]).powi(2);
            scale += fd * fd;
        }
        println!("N={n}: loss {:.6}, relative gradient error {:.2e}", loss_params(&x)?, (err / scale).sqrt());
    }
    Ok(())
}
