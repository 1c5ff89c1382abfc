//! Numerical fiducial search in a chosen dimension.
//!
//! ```text
//! cargo run --release --example search_fiducial -- 5 [SEED]
//! ```

use sicpovm::search::{search, SearchConfig};
use sicpovm::verify::verify;
use sicpovm::weyl_heisenberg::orbit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dim: usize = args.next().as_deref().unwrap_or("4").parse()?;
    let seed: u64 = args.next().as_deref().unwrap_or("1").parse()?;

    let cfg = SearchConfig::new(dim).with_seed(seed).with_restarts(50).with_loss_tolerance(1e-20);
    let result = search(&cfg)?;
    println!(
        "N={dim} seed={seed}: restart {} after {} iterations, loss {:.3e}, converged {}",
        result.restart_index, result.iterations_used, result.loss, result.converged
    );
    println!("fiducial (gauge fixed):");
    for (k, z) in result.fiducial.gauge_fixed().entries().iter().enumerate() {
        println!("  z[{k}] = {:+.15} {:+.15}i", z.re, z.im);
    }
    let report = verify(&orbit(&result.fiducial), 1e-9)?;
    println!(
        "orbit: equiangularity {:.3e}, identity {:.3e}, rank {}/{}, pass {}",
        report.equiangularity_residual,
        report.identity_residual,
        report.completeness_rank,
        dim * dim,
        report.pass
    );
    Ok(())
}
