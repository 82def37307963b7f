// Both routes side by side for n = 0..3 at v1 = 0.09, v3 = 10, g = 1/4.
//
// The n = 3 value v2 = -36 has φ = (z - λ)³, a triple root sitting on a
// singular point, which the root equations cannot represent.

use std::error::Error;

use qes_dwp::cli;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let table = cli::cmd_table1().map_err(|e| e.message)?;
    Ok(table.render_text())
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
