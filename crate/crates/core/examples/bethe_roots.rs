// Multistart Newton on the root equations, plus the electrostatic picture:
// every solution is a stationary point of the logarithmic energy.

use std::error::Error;
use std::fmt::Write;

use qes_dwp::bethe::{self, SeedStrategy};
use qes_dwp::TABLE_SHAPE;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let (v1, v3, g) = TABLE_SHAPE;
    let mut out = String::new();

    let k1 = bethe::level_coefficients(1, v1, v3, g)?;
    let closed = bethe::n1_closed_form(&k1)?;
    writeln!(
        out,
        "n = 1 closed form: {:.10} {:.10}",
        closed[0].re, closed[1].re
    )?;

    for n in 1..=3 {
        let coeffs = bethe::level_coefficients(n, v1, v3, g)?;
        let report = bethe::solve_bae(n, &coeffs, &SeedStrategy::default());
        writeln!(
            out,
            "n = {n}: {} solutions from {} starts ({} failed)",
            report.states.len(),
            report.starts,
            report.failed_starts
        )?;
        for state in &report.states {
            let roots: Vec<String> = state
                .roots
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        format!("{:.10}", z.re)
                    } else {
                        format!("{:.10}{:+.10}i", z.re, z.im)
                    }
                })
                .collect();
            let grad = bethe::electrostatic_gradient(&state.roots, &coeffs, 1e-6)?;
            let grad = grad.iter().map(|z| z.norm()).fold(0.0, f64::max);
            writeln!(
                out,
                "  v2 = {:>14.9}  residual {:.1e}  |grad U| {:.1e}  roots [{}]",
                state.v2,
                state.residual,
                grad,
                roots.join(", ")
            )?;
        }
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
