// Quantized energies E_n = -(2n + s/2)² for a few shapes.

use std::error::Error;
use std::fmt::Write;

use qes_dwp::bethe;
use qes_dwp::reduction::shape_constant;
use qes_dwp::TABLE_SHAPE;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let shapes = [TABLE_SHAPE, (0.0, 0.0, 1.0), (-1.5, 4.0, 2.0)];
    for (v1, v3, g) in shapes {
        let s = shape_constant(v1, v3, g)?;
        write!(out, "v1 = {v1:<5} v3 = {v3:<5} g = {g:<5} s = {s:+.4}  E:")?;
        for n in 0..=5 {
            write!(out, " {:.4}", bethe::energy(n, v1, v3, g)?)?;
        }
        writeln!(out)?;
    }
    // outside the region the energy is not real
    if let Err(e) = bethe::energy(0, 0.3, 10.0, 0.25) {
        writeln!(out, "v1 = 0.3: {e}")?;
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
