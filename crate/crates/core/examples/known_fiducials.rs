//! Certifies the two closed-form fiducials shipped with the crate.
//!
//! ```text
//! cargo run --example known_fiducials [OUT_DIR]
//! ```
//!
//! With `OUT_DIR` the fiducials are also written as `known_d2.json` and
//! `known_d3.json`.

use std::path::PathBuf;

use sicpovm::fixtures::{hesse_fiducial, qubit_fiducial};
use sicpovm::io::{write_json, FiducialFile};
use sicpovm::verify::verify;
use sicpovm::weyl_heisenberg::orbit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    for (name, fid) in [("known_d2.json", qubit_fiducial()), ("known_d3.json", hesse_fiducial())] {
        let report = verify(&orbit(&fid), 1e-11)?;
        println!(
            "N={} equiangularity={:.3e} identity={:.3e} rank={} frame_potential={:.12} pass={}",
            report.dim,
            report.equiangularity_residual,
            report.identity_residual,
            report.completeness_rank,
            report.frame_potential,
            report.pass
        );
        if let Some(dir) = &out_dir {
            let path = dir.join(name);
            write_json(&path, &FiducialFile::new(&fid, None))?;
            println!("  wrote {}", path.display());
        }
    }
    Ok(())
}
