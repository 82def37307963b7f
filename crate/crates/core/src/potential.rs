//! The double-well potential family, its validity region and the Manning
//! (`g → ∞`) limit.

use serde::{Deserialize, Serialize};

use crate::{fmt_sig17, QesError, Result};

/// Beyond this `|x|` the hyperbolic functions are evaluated through `sech²x`
/// so that `cosh²x` never overflows.
const ASYMPTOTIC_X: f64 = 30.0;

/// The four couplings of the potential, in units `ħ = m = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub g: f64,
}

impl PotentialParams {
    pub fn new(v1: f64, v2: f64, v3: f64, g: f64) -> Self {
        Self { v1, v2, v3, g }
    }

    /// Reference shape `v1 = 0.09, v3 = 10, g = 1/4` with the given `v2`.
    pub fn table(v2: f64) -> Self {
        let (v1, v3, g) = crate::TABLE_SHAPE;
        Self { v1, v2, v3, g }
    }

    /// Builds the couplings that reproduce a Manning potential at finite `g`:
    /// `v2 = (v4 - v1)·g`, `v3 = v5·g²`.
    pub fn from_manning(v1: f64, manning: ManningParams, g: f64) -> Self {
        Self {
            v1,
            v2: (manning.v4 - v1) * g,
            v3: manning.v5 * g * g,
            g,
        }
    }

    pub fn with_v2(self, v2: f64) -> Self {
        Self { v2, ..self }
    }

    /// `λ = (1+g)/g`, the third singular point of the reduced equation.
    pub fn lambda(&self) -> f64 {
        (1.0 + self.g) / self.g
    }

    /// `v1 < 1/4` and `v3 > -(1+g)`: both square roots in the reduction are real.
    pub fn is_qes_valid(&self) -> bool {
        self.v1 < 0.25 && self.v3 > -(1.0 + self.g)
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        evaluate(self, x)
    }
}

/// `V(x) = v4 sech²x + v5 sech⁴x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ManningParams {
    pub v4: f64,
    pub v5: f64,
}

impl ManningParams {
    pub fn evaluate(&self, x: f64) -> f64 {
        let s = sech_squared(x);
        self.v4 * s + self.v5 * s * s
    }
}

/// `sech²x`, overflow-free for any finite `x`.
pub(crate) fn sech_squared(x: f64) -> f64 {
    let ax = x.abs();
    if ax > ASYMPTOTIC_X {
        let t = (-2.0 * ax).exp();
        4.0 * t / ((1.0 + t) * (1.0 + t))
    } else {
        let c = ax.cosh();
        1.0 / (c * c)
    }
}

/// Evaluates the potential at `x`.
pub fn evaluate(params: &PotentialParams, x: f64) -> f64 {
    let ax = x.abs();
    let (sech2, bracket_inv) = if ax > ASYMPTOTIC_X {
        // 1/(1 + g cosh²x) = sech²x / (sech²x + g)
        let s = sech_squared(ax);
        (s, s / (s + params.g))
    } else {
        let c2 = ax.cosh().powi(2);
        (1.0 / c2, 1.0 / (1.0 + params.g * c2))
    };
    params.v1 * sech2 + params.v2 * bracket_inv + params.v3 * bracket_inv * bracket_inv
}

pub fn manning_limit(params: &PotentialParams) -> ManningParams {
    ManningParams {
        v4: params.v1 + params.v2 / params.g,
        v5: params.v3 / (params.g * params.g),
    }
}

/// Max-norm distance on `xs` between the potential and its Manning form.
pub fn manning_discrepancy(params: &PotentialParams, xs: &[f64]) -> f64 {
    let manning = manning_limit(params);
    xs.iter()
        .map(|&x| (evaluate(params, x) - manning.evaluate(x)).abs())
        .fold(0.0, f64::max)
}

/// Outcome of the two real-energy conditions `v1 < 1/4` and `v3 > -(1+g)`.
///
/// Margins are positive inside the valid region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityReport {
    pub v1_ok: bool,
    pub v1_margin: f64,
    pub v3_ok: bool,
    pub v3_margin: f64,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.v1_ok && self.v3_ok
    }
}

/// Checks the validity region. Only `g <= 0` is a hard error; an invalid
/// report still lets callers explore the potential itself.
pub fn validate(params: &PotentialParams) -> Result<ValidityReport> {
    if !(params.g > 0.0) || !params.g.is_finite() {
        return Err(QesError::NonPositiveShape(params.g));
    }
    let v1_margin = 0.25 - params.v1;
    let v3_margin = params.v3 + 1.0 + params.g;
    Ok(ValidityReport {
        v1_ok: v1_margin > 0.0,
        v1_margin,
        v3_ok: v3_margin > 0.0,
        v3_margin,
    })
}

/// Uniformly sampled `(x, V(x))` table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSample {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
}

impl GridSample {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Indices of strict interior local minima of the sampled `V`.
    pub fn local_minima(&self) -> Vec<usize> {
        (1..self.v.len().saturating_sub(1))
            .filter(|&i| self.v[i] < self.v[i - 1] && self.v[i] < self.v[i + 1])
            .collect()
    }

    /// Indices of strict interior local maxima of the sampled `V`.
    pub fn local_maxima(&self) -> Vec<usize> {
        (1..self.v.len().saturating_sub(1))
            .filter(|&i| self.v[i] > self.v[i - 1] && self.v[i] > self.v[i + 1])
            .collect()
    }

    /// CSV with header `x,V`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,V\n");
        for (x, v) in self.x.iter().zip(&self.v) {
            out.push_str(&fmt_sig17(*x));
            out.push(',');
            out.push_str(&fmt_sig17(*v));
            out.push('\n');
        }
        out
    }
}

/// Evenly spaced points from `x_min` to `x_max` inclusive.
pub fn uniform_grid(x_min: f64, x_max: f64, n_points: usize) -> Result<Vec<f64>> {
    if n_points < 2 {
        return Err(QesError::InvalidGrid(format!(
            "need at least 2 points, got {n_points}"
        )));
    }
    if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
        return Err(QesError::InvalidGrid(format!(
            "need finite x_min < x_max, got [{x_min}, {x_max}]"
        )));
    }
    // Convex combination of the end points: exact at both ends, and exactly
    // antisymmetric when x_min = -x_max.
    let last = (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|i| (x_min * (last - i as f64) + x_max * i as f64) / last)
        .collect())
}

pub fn sample_grid(
    params: &PotentialParams,
    x_min: f64,
    x_max: f64,
    n_points: usize,
) -> Result<GridSample> {
    let x = uniform_grid(x_min, x_max, n_points)?;
    let v = x.iter().map(|&xi| evaluate(params, xi)).collect();
    Ok(GridSample { x, v })
}
