// The tridiagonal matrix of the reduced operator, its σ eigenvalues and the
// admissible v2 they map to. Also checks the generator form against the
// direct matrix.

use std::error::Error;
use std::fmt::Write;

use qes_dwp::lie;
use qes_dwp::TABLE_SHAPE;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let (v1, v3, g) = TABLE_SHAPE;
    let mut out = String::new();
    for n in 0..=3 {
        let spectrum = lie::sigma_spectrum(n, v1, v3, g)?;
        writeln!(out, "n = {n}, E = {}", spectrum.energy)?;
        write!(out, "{}", spectrum.matrix.to_csv())?;
        for (i, (s, v2)) in spectrum.sigma.iter().zip(&spectrum.v2).enumerate() {
            writeln!(
                out,
                "  sigma = {:>14.9} -> v2 = {:>14.9}  (relative det {:.1e})",
                s.re,
                v2.re,
                spectrum.relative_determinant(i)
            )?;
        }
    }

    let defect = (0..=10)
        .map(|n| lie::generator_matrices(n).commutator_defect())
        .fold(0.0, f64::max);
    writeln!(out, "sl(2) commutator defect for n <= 10: {defect:.1e}")?;

    let k = qes_dwp::bethe::level_coefficients(3, v1, v3, g)?;
    let h = lie::qes_hamiltonian(3, &k)?;
    let d = lie::direct_matrix(3, &k).to_dense();
    writeln!(
        out,
        "n = 3 generator form vs direct matrix: {:.1e}",
        (h - d).amax()
    )?;
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
