// Finite-difference spectrum of the untransformed equation. Only the n = 0
// state is normalizable at the tabulated shape, so only it is expected to
// show up.

use std::error::Error;
use std::fmt::Write;

use qes_dwp::oracle::{self, FdConfig};
use qes_dwp::PotentialParams;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let params = PotentialParams::table(-9.0);
    let spectrum = oracle::fd_eigenvalues(&params, &FdConfig::default())?;
    writeln!(out, "lowest eigenvalues: {:?}", spectrum.eigenvalues)?;
    writeln!(
        out,
        "refinement shift {:.2e}, coarse grid: {}",
        spectrum.refinement_shift, spectrum.coarse_grid
    )?;

    let mut previous = None;
    for n_points in [401, 801, 1601, 3201] {
        let cfg = FdConfig {
            n_points,
            n_eigen: 1,
            ..FdConfig::default()
        };
        let e0 = oracle::fd_eigenvalues(&params, &cfg)?.eigenvalues[0];
        match previous {
            Some(p) => writeln!(
                out,
                "n_points = {n_points:>4}: E0 = {e0:.10}  change {:.2e}",
                e0 - p
            )?,
            None => writeln!(out, "n_points = {n_points:>4}: E0 = {e0:.10}")?,
        }
        previous = Some(e0);
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
