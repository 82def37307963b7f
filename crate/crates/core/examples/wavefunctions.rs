// Assembles ψ(x) for every admissible v2 up to n = 3 and substitutes it back
// into -ψ'' + Vψ = Eψ. Writes the ground state to CSV when given a path.
//
// ```text
// cargo run --example wavefunctions -- ground.csv
// ```

use std::error::Error;
use std::fmt::Write;

use qes_dwp::potential::uniform_grid;
use qes_dwp::reduction::{assemble_wavefunction, reduce};
use qes_dwp::{bethe, lie, oracle, PotentialParams, TABLE_SHAPE};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let (v1, v3, g) = TABLE_SHAPE;
    let grid = uniform_grid(-3.0, 3.0, 241)?;
    let mut out = String::new();
    for n in 0..=3 {
        let e = bethe::energy(n, v1, v3, g)?;
        for v2 in lie::solve_level(n, v1, v3, g)?.level().v2_values {
            let params = PotentialParams::new(v1, v2, v3, g);
            let k = reduce(&params, e)?;
            let wf = assemble_wavefunction(&params, &lie::polynomial_coefficients(n, &k, k.sigma))?;
            let scan = oracle::ode_residual(&params, e, &wf, &grid)?;
            writeln!(
                out,
                "n = {n}  v2 = {v2:>14.9}  psi(0) = {:+.4e}  psi(6) = {:+.4e}  residual {:.1e}",
                wf.evaluate(0.0),
                wf.evaluate(6.0),
                scan.max_residual
            )?;
        }
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    if let Some(path) = std::env::args().nth(1) {
        let params = PotentialParams::table(-9.0);
        let k = reduce(&params, -1.21)?;
        let wf = assemble_wavefunction(&params, &lie::polynomial_coefficients(0, &k, k.sigma))?;
        std::fs::write(&path, wf.to_csv(&uniform_grid(-6.0, 6.0, 601)?))?;
        println!("ground state written to {path}");
    }
    Ok(())
}
