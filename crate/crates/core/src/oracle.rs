//! Independent checks against the untransformed Schrödinger equation
//! `-ψ'' + V ψ = E ψ`.
//!
//! Nothing here uses the reduced equation: eigenvalues come from a
//! three-point finite-difference Hamiltonian, and residuals from numerical
//! second derivatives of a wavefunction evaluated pointwise.

use serde::Serialize;

use crate::potential::{evaluate, uniform_grid, PotentialParams};
use crate::reduction::Wavefunction;
use crate::{fmt_sig17, QesError, Result};

/// Box discretization for [`fd_eigenvalues`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdConfig {
    /// Dirichlet walls at `±x_max`.
    pub x_max: f64,
    /// Grid nodes including both walls.
    pub n_points: usize,
    pub n_eigen: usize,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self {
            x_max: 8.0,
            n_points: 4000,
            n_eigen: 4,
        }
    }
}

impl FdConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_points < 200 {
            return Err(QesError::InvalidConfig(format!(
                "n_points = {} is below 200",
                self.n_points
            )));
        }
        if !(self.x_max >= 6.0) || !self.x_max.is_finite() {
            return Err(QesError::InvalidConfig(format!(
                "x_max = {} must be finite and >= 6",
                self.x_max
            )));
        }
        if self.n_eigen == 0 || self.n_eigen > self.n_points - 2 {
            return Err(QesError::InvalidConfig(format!(
                "n_eigen = {} must be in 1..={}",
                self.n_eigen,
                self.n_points - 2
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        2.0 * self.x_max / (self.n_points - 1) as f64
    }
}

/// Shift of the ground-state estimate, under grid refinement, above which
/// the grid is reported as too coarse.
pub const COARSE_GRID_SHIFT: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdSpectrum {
    /// Lowest eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// `|E_0(h) - E_0(h/2)|`.
    pub refinement_shift: f64,
    pub coarse_grid: bool,
}

/// Lowest eigenvalues of a symmetric tridiagonal matrix with constant
/// off-diagonal `off`, by Sturm-count bisection.
fn lowest_eigenvalues(diag: &[f64], off: f64, count: usize) -> Vec<f64> {
    let below = |mu: f64| -> usize {
        let off2 = off * off;
        let mut negatives = 0;
        let mut pivot = 1.0;
        for (i, &d) in diag.iter().enumerate() {
            pivot = if i == 0 {
                d - mu
            } else {
                d - mu - off2 / pivot
            };
            if pivot == 0.0 {
                pivot = -f64::EPSILON * (d.abs() + mu.abs()).max(1.0);
            }
            if pivot < 0.0 {
                negatives += 1;
            }
        }
        negatives
    };
    let lo0 = diag.iter().copied().fold(f64::INFINITY, f64::min) - 2.0 * off.abs();
    let hi0 = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 2.0 * off.abs();
    (0..count)
        .map(|k| {
            let (mut lo, mut hi) = (lo0, hi0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if below(mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 4.0 * f64::EPSILON * mid.abs().max(1.0) {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

fn fd_spectrum_raw(
    params: &PotentialParams,
    x_max: f64,
    n_points: usize,
    count: usize,
) -> Vec<f64> {
    let h = 2.0 * x_max / (n_points - 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let nodes = uniform_grid(-x_max, x_max, n_points).expect("validated grid");
    let diag: Vec<f64> = nodes[1..n_points - 1]
        .iter()
        .map(|&x| 2.0 * inv_h2 + evaluate(params, x))
        .collect();
    lowest_eigenvalues(&diag, -inv_h2, count)
}

/// Lowest eigenvalues of `-d²/dx² + V` on `[-x_max, x_max]` with Dirichlet
/// walls, three-point stencil. The ground state is recomputed on a grid with
/// half the spacing to flag an under-resolved discretization.
pub fn fd_eigenvalues(params: &PotentialParams, cfg: &FdConfig) -> Result<FdSpectrum> {
    cfg.validate()?;
    if !(params.g > 0.0) {
        return Err(QesError::NonPositiveShape(params.g));
    }
    let eigenvalues = fd_spectrum_raw(params, cfg.x_max, cfg.n_points, cfg.n_eigen);
    let refined = fd_spectrum_raw(params, cfg.x_max, 2 * cfg.n_points - 1, 1)[0];
    let refinement_shift = (refined - eigenvalues[0]).abs();
    Ok(FdSpectrum {
        eigenvalues,
        refinement_shift,
        coarse_grid: refinement_shift > COARSE_GRID_SHIFT,
    })
}

/// Pointwise Schrödinger residual of a wavefunction on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualScan {
    pub x: Vec<f64>,
    pub psi: Vec<f64>,
    pub residual: Vec<f64>,
    pub max_residual: f64,
    /// The raw five-point estimates at `h` and `h/2` disagree by more than
    /// [`STEP_BUDGET`] relative to the residual scale.
    pub step_warning: bool,
}

impl ResidualScan {
    /// CSV with header `x,psi,residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,psi,residual\n");
        for i in 0..self.x.len() {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_sig17(self.x[i]),
                fmt_sig17(self.psi[i]),
                fmt_sig17(self.residual[i])
            ));
        }
        out
    }
}

/// Default finite-difference step of [`ode_residual`].
pub const RESIDUAL_STEP: f64 = 1e-2;
/// Grids must stay inside `|x| <= RESIDUAL_X_LIMIT`.
pub const RESIDUAL_X_LIMIT: f64 = 3.5;
pub const STEP_BUDGET: f64 = 1e-3;

fn five_point(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

pub fn ode_residual(
    params: &PotentialParams,
    energy: f64,
    wf: &Wavefunction,
    grid: &[f64],
) -> Result<ResidualScan> {
    ode_residual_with_step(params, energy, wf, grid, RESIDUAL_STEP)
}

/// `|-ψ'' + Vψ - Eψ| / max(|Eψ(x)|, 1e-8 · max_grid |Eψ|)`, with `ψ''` from
/// five-point differences at `h` and `h/2` combined by Richardson
/// extrapolation.
pub fn ode_residual_with_step(
    params: &PotentialParams,
    energy: f64,
    wf: &Wavefunction,
    grid: &[f64],
    step: f64,
) -> Result<ResidualScan> {
    if grid.is_empty() {
        return Err(QesError::InvalidGrid("empty residual grid".into()));
    }
    if let Some(x) = grid.iter().find(|x| !(x.abs() <= RESIDUAL_X_LIMIT)) {
        return Err(QesError::InvalidGrid(format!(
            "residual grid point {x} outside |x| <= {RESIDUAL_X_LIMIT}"
        )));
    }
    if !(step > 0.0) {
        return Err(QesError::InvalidGrid(format!(
            "step {step} must be positive"
        )));
    }

    let psi_fn = |x: f64| wf.evaluate(x);
    let psi: Vec<f64> = grid.iter().map(|&x| psi_fn(x)).collect();
    let weight = if energy != 0.0 { energy.abs() } else { 1.0 };
    let floor = 1e-8 * weight * psi.iter().fold(0.0f64, |m, p| m.max(p.abs()));

    let mut residual = Vec::with_capacity(grid.len());
    let mut worst_step_gap: f64 = 0.0;
    for (&x, &p) in grid.iter().zip(&psi) {
        let coarse = five_point(&psi_fn, x, step);
        let fine = five_point(&psi_fn, x, 0.5 * step);
        let second = (16.0 * fine - coarse) / 15.0;
        let denom = (weight * p.abs()).max(floor).max(f64::MIN_POSITIVE);
        worst_step_gap = worst_step_gap.max((fine - coarse).abs() / denom);
        residual.push((-second + (evaluate(params, x) - energy) * p).abs() / denom);
    }
    let max_residual = residual.iter().copied().fold(0.0, f64::max);
    Ok(ResidualScan {
        x: grid.to_vec(),
        psi,
        residual,
        max_residual,
        step_warning: worst_step_gap > STEP_BUDGET,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;
    use crate::reduction::{assemble_wavefunction, reduce};
    use num_complex::Complex64;

    fn residual_grid() -> Vec<f64> {
        uniform_grid(-3.0, 3.0, 241).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(FdConfig::default().validate().is_ok());
        assert!(FdConfig {
            n_points: 100,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(FdConfig {
            x_max: 5.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(FdConfig {
            n_eigen: 0,
            ..Default::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn sturm_bisection_small_matrix() {
        // diag 2, off -1, size 3: eigenvalues 2 - 2cos(kπ/4)
        let ev = lowest_eigenvalues(&[2.0, 2.0, 2.0], -1.0, 3);
        for (k, e) in ev.iter().enumerate() {
            let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / 4.0).cos();
            assert!((e - want).abs() < 1e-13);
        }
    }

    #[test]
    fn particle_in_a_box() {
        let cfg = FdConfig {
            x_max: 6.0,
            n_points: 4000,
            n_eigen: 3,
        };
        let spectrum = fd_eigenvalues(&PotentialParams::new(0.0, 0.0, 0.0, 1.0), &cfg).unwrap();
        for (k, e) in spectrum.eigenvalues.iter().enumerate() {
            let exact = ((k + 1) as f64 * std::f64::consts::PI / (2.0 * cfg.x_max)).powi(2);
            assert!(
                (e - exact).abs() < 1e-5 * (k + 1).pow(4) as f64,
                "{e} vs {exact}"
            );
        }
        assert!(spectrum.eigenvalues.windows(2).all(|w| w[0] < w[1]));
        assert!(!spectrum.coarse_grid);
    }

    #[test]
    fn ground_state_of_table_potential() {
        let spectrum = fd_eigenvalues(&PotentialParams::table(-9.0), &FdConfig::default()).unwrap();
        assert_eq!(spectrum.eigenvalues.len(), 4);
        assert!(
            (spectrum.eigenvalues[0] + 1.21).abs() < 1e-3,
            "{:?}",
            spectrum.eigenvalues
        );
    }

    #[test]
    fn coarse_grid_flag() {
        let cfg = FdConfig {
            x_max: 8.0,
            n_points: 200,
            n_eigen: 1,
        };
        let deep = PotentialParams::new(-400.0, 0.0, 0.0, 1.0);
        assert!(fd_eigenvalues(&deep, &cfg).unwrap().coarse_grid);
    }

    #[test]
    fn residual_of_ground_state() {
        let params = PotentialParams::table(-9.0);
        let wf = assemble_wavefunction(&params, &[1.0]).unwrap();
        let scan = ode_residual(&params, -1.21, &wf, &residual_grid()).unwrap();
        assert!(scan.max_residual < 1e-6, "{}", scan.max_residual);
        assert!(!scan.step_warning);

        let off = ode_residual(&params, -1.21 + 0.01, &wf, &residual_grid()).unwrap();
        assert!(off.max_residual > 1e-3);
    }

    #[test]
    fn residual_of_second_excited_state() {
        let params = PotentialParams::table(8.471121770);
        let roots = [
            Complex64::new(0.6953879418, 0.0),
            Complex64::new(0.1092848103, 0.0),
        ];
        let coeffs: Vec<f64> = crate::poly::from_roots(&roots)
            .iter()
            .map(|z| z.re)
            .collect();
        let wf = assemble_wavefunction(&params, &coeffs).unwrap();
        let scan = ode_residual(&params, -8.41, &wf, &residual_grid()).unwrap();
        assert!(scan.max_residual < 1e-5, "{}", scan.max_residual);
    }

    #[test]
    fn residual_of_lie_polynomials() {
        for n in 0..=3 {
            let spectrum = lie::sigma_spectrum(n, 0.09, 10.0, 0.25).unwrap();
            for (i, s) in spectrum.sigma.iter().enumerate() {
                let params = PotentialParams::table(spectrum.v2[i].re);
                let coeffs = reduce(&params, spectrum.energy).unwrap();
                let a = lie::polynomial_coefficients(n, &coeffs, s.re);
                let wf = assemble_wavefunction(&params, &a).unwrap();
                let scan = ode_residual(&params, spectrum.energy, &wf, &residual_grid()).unwrap();
                assert!(
                    scan.max_residual < 1e-5,
                    "n={n} i={i}: {}",
                    scan.max_residual
                );
            }
        }
    }

    #[test]
    fn residual_grid_bounds() {
        let params = PotentialParams::table(-9.0);
        let wf = assemble_wavefunction(&params, &[1.0]).unwrap();
        assert!(ode_residual(&params, -1.21, &wf, &[0.0, 4.0]).is_err());
        assert!(ode_residual(&params, -1.21, &wf, &[]).is_err());
        let csv = ode_residual(&params, -1.21, &wf, &[0.0, 1.0])
            .unwrap()
            .to_csv();
        assert!(csv.starts_with("x,psi,residual\n"));
    }
}
