// Samples the double well at the tabulated shape and locates its minima.
//
// ```text
// cargo run --example potential_profile
// ```

use std::error::Error;
use std::fmt::Write;

use qes_dwp::potential::{self, ManningParams, PotentialParams};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let params = PotentialParams::table(-9.0);
    let validity = potential::validate(&params)?;
    let sample = potential::sample_grid(&params, -4.0, 4.0, 801)?;

    let mut out = String::new();
    writeln!(
        out,
        "V(x) at v1 = {}, v2 = {}, v3 = {}, g = {}",
        params.v1, params.v2, params.v3, params.g
    )?;
    writeln!(out, "real-energy region: {}", validity.is_valid())?;
    for i in sample.local_minima() {
        writeln!(
            out,
            "well   x = {:+.4}  V = {:.6}",
            sample.x[i], sample.v[i]
        )?;
    }
    for i in sample.local_maxima() {
        writeln!(
            out,
            "barrier x = {:+.4}  V = {:.6}",
            sample.x[i], sample.v[i]
        )?;
    }

    // Large g with v2, v3 rescaled approaches v4 sech² + v5 sech⁴.
    let manning = ManningParams { v4: -3.0, v5: 2.0 };
    let xs = potential::uniform_grid(-5.0, 5.0, 401)?;
    for g in [1e2, 1e3, 1e4] {
        let d =
            potential::manning_discrepancy(&PotentialParams::from_manning(0.09, manning, g), &xs);
        writeln!(out, "g = {g:>7}: max |V - V_manning| = {d:.3e}")?;
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
