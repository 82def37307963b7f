//! Change of variable `z = -sinh²x` and the Heun-type operator it produces.
//!
//! Writing
//!
//! ```text
//! ψ(x) = cosh(x)^e1 · (1 + g cosh²x)^e2 · φ(z),   z = -sinh²x,
//! e1 = (1 + √(1-4v1)) / 2,   e2 = (1 - √(1 + v3/(1+g))) / 2,
//! ```
//!
//! turns the Schrödinger equation into `H φ = 0` with
//!
//! ```text
//! H = P(z) d²/dz² + Q(z) d/dz + (αβ z - σ),
//! P = z (z - 1)(z - λ),
//! Q = (γ+δ+ε) z² - (λγ + γ + λδ + ε) z + λγ.
//! ```
//!
//! `σ` is the only coefficient that depends on `v2`.

use serde::Serialize;

use crate::potential::{sech_squared, PotentialParams};
use crate::{fmt_sig17, poly, QesError, Result};

/// `s = 3 + √(1-4v1) - 2√(1 + v3/(1+g))`.
///
/// The sum `α + β = s/2` does not depend on the energy, and the quantized
/// energies are `E_n = -(2n + s/2)²`.
pub fn shape_constant(v1: f64, v3: f64, g: f64) -> Result<f64> {
    Ok(3.0 + cosh_root(v1)? - 2.0 * bracket_root(v3, g)?)
}

/// `√(1 - 4 v1)`.
fn cosh_root(v1: f64) -> Result<f64> {
    let radicand = 1.0 - 4.0 * v1;
    if radicand < 0.0 || radicand.is_nan() {
        return Err(QesError::Domain(format!(
            "1 - 4 v1 = {radicand} is negative (v1 = {v1} must be < 1/4)"
        )));
    }
    Ok(radicand.sqrt())
}

/// `√(1 + v3/(1+g))`.
fn bracket_root(v3: f64, g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(QesError::NonPositiveShape(g));
    }
    let radicand = 1.0 + v3 / (1.0 + g);
    if radicand < 0.0 || radicand.is_nan() {
        return Err(QesError::Domain(format!(
            "1 + v3/(1+g) = {radicand} is negative (v3 = {v3} must be > -(1+g))"
        )));
    }
    Ok(radicand.sqrt())
}

/// Parameters of the reduced Heun-type equation at a given energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub lambda: f64,
    pub sigma: f64,
    /// The shape constant `s`; `α + β = s/2`.
    pub shape: f64,
}

impl ReducedCoefficients {
    /// `γ + δ + ε`: total charge of the three force centers, equal to `1 + s/2`.
    pub fn charge_sum(&self) -> f64 {
        self.gamma + self.delta + self.epsilon
    }

    /// `λγ + γ + λδ + ε`, minus the linear coefficient of `Q`.
    pub fn linear_term(&self) -> f64 {
        self.lambda * self.gamma + self.gamma + self.lambda * self.delta + self.epsilon
    }

    pub fn alpha_beta(&self) -> f64 {
        self.alpha * self.beta
    }

    /// Recovers `(v1, v3, g, E)` from the coefficients. `v2` cannot be
    /// recovered without `σ`'s reference point and is not returned.
    pub fn shape_parameters(&self) -> (f64, f64, f64, f64) {
        let r1 = 2.0 * (self.delta - 1.0);
        let r3 = 0.5 * (3.0 + r1 - self.shape);
        let g = 1.0 / (self.lambda - 1.0);
        let v1 = 0.25 * (1.0 - r1 * r1);
        let v3 = (r3 * r3 - 1.0) * (1.0 + g);
        let e = -(self.alpha - self.beta).powi(2);
        (v1, v3, g, e)
    }

    /// `αβ + n(n-1) + n(γ+δ+ε)`; zero when a degree-`n` polynomial solution
    /// can exist.
    pub fn quasi_solvability_residual(&self, n: usize) -> f64 {
        let n = n as f64;
        self.alpha_beta() + n * (n - 1.0) + n * self.charge_sum()
    }
}

/// Computes all reduced coefficients for `params` at energy `energy <= 0`.
///
/// `α` and `β` take the `±√(-E)` branches in that order.
pub fn reduce(params: &PotentialParams, energy: f64) -> Result<ReducedCoefficients> {
    let PotentialParams { v1, v2, v3, g } = *params;
    if energy > 0.0 {
        return Err(QesError::PositiveEnergy(energy));
    }
    let r1 = cosh_root(v1)?;
    let r3 = bracket_root(v3, g)?;
    let shape = 3.0 + r1 - 2.0 * r3;
    let k = (-energy).sqrt();

    let alpha = 0.25 * (shape + 2.0 * k);
    let beta = 0.25 * (shape - 2.0 * k);
    let gamma = 0.5;
    let delta = 1.0 + 0.5 * r1;
    let lambda = (1.0 + g) / g;
    let epsilon = alpha + beta + 1.0 - gamma - delta;
    let sigma = 0.25
        * lambda
        * (0.5 + 0.5 * r1 + 1.0 / lambda
            - r3 / lambda
            - v1
            - v2 / (g * lambda)
            - v3 / (g * g * lambda * lambda)
            + energy);

    Ok(ReducedCoefficients {
        alpha,
        beta,
        gamma,
        delta,
        epsilon,
        lambda,
        sigma,
        shape,
    })
}

/// The three polynomial coefficients of the reduced operator, lowest degree
/// first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeOperator {
    pub p: [f64; 4],
    pub q: [f64; 3],
    pub r: [f64; 2],
}

impl OdeOperator {
    /// Applies the operator to a polynomial; the result has degree at most
    /// `deg φ + 1`.
    pub fn apply(&self, phi: &[f64]) -> Vec<f64> {
        if phi.is_empty() {
            return Vec::new();
        }
        let d1 = poly::derivative(phi);
        let d2 = poly::derivative(&d1);
        let mut out = vec![0.0; phi.len() + 1];
        for (k, c) in poly::multiply(&self.p, &d2).into_iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in poly::multiply(&self.q, &d1).into_iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in poly::multiply(&self.r, phi).into_iter().enumerate() {
            out[k] += c;
        }
        out
    }
}

pub fn ode_operator(coeffs: &ReducedCoefficients) -> OdeOperator {
    let lambda = coeffs.lambda;
    OdeOperator {
        p: [0.0, lambda, -(lambda + 1.0), 1.0],
        q: [
            lambda * coeffs.gamma,
            -coeffs.linear_term(),
            coeffs.charge_sum(),
        ],
        r: [-coeffs.sigma, coeffs.alpha_beta()],
    }
}

/// `ψ(x) = cosh^e1(x) · (1 + g cosh²x)^e2 · Σ a_m (-sinh²x)^m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Wavefunction {
    pub cosh_exponent: f64,
    pub bracket_exponent: f64,
    /// Coefficients `a_0 … a_n` of the polynomial in `z`.
    pub poly: Vec<f64>,
    pub g: f64,
}

/// Past this `|x|` evaluation goes through logarithms.
const LOG_SPACE_X: f64 = 30.0;

pub fn assemble_wavefunction(
    params: &PotentialParams,
    poly_coeffs: &[f64],
) -> Result<Wavefunction> {
    if poly_coeffs.is_empty() {
        return Err(QesError::Domain("empty polynomial".into()));
    }
    Ok(Wavefunction {
        cosh_exponent: 0.5 * (1.0 + cosh_root(params.v1)?),
        bracket_exponent: 0.5 * (1.0 - bracket_root(params.v3, params.g)?),
        poly: poly_coeffs.to_vec(),
        g: params.g,
    })
}

impl Wavefunction {
    pub fn degree(&self) -> usize {
        poly::trim(&self.poly).len().saturating_sub(1)
    }

    /// Polynomial part in the variable `w = sinh²x`, i.e. `Σ a_m (-1)^m w^m`.
    pub fn poly_in_sinh_squared(&self) -> Vec<f64> {
        self.poly
            .iter()
            .enumerate()
            .map(|(m, &a)| if m % 2 == 0 { a } else { -a })
            .collect()
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax > LOG_SPACE_X {
            let (log_mag, sign) = self.evaluate_log(x);
            return sign * log_mag.exp();
        }
        let c = ax.cosh();
        let w = ax.sinh().powi(2);
        c.powf(self.cosh_exponent)
            * (1.0 + self.g * c * c).powf(self.bracket_exponent)
            * poly::eval_real(&self.poly_in_sinh_squared(), w)
    }

    /// `(ln|ψ(x)|, sign ψ(x))`, valid for any finite `x`.
    pub fn evaluate_log(&self, x: f64) -> (f64, f64) {
        let ax = x.abs();
        if ax <= LOG_SPACE_X {
            let v = self.evaluate(x);
            return (v.abs().ln(), sign_of(v));
        }
        let t = (-2.0 * ax).exp();
        let ln_cosh = ax - std::f64::consts::LN_2 + t.ln_1p();
        let ln_sinh = ax - std::f64::consts::LN_2 + (-t).ln_1p();
        let sech2 = sech_squared(ax);
        // ln(1 + g cosh²x) = ln g + 2 ln cosh x + ln(1 + sech²x / g)
        let ln_bracket = self.g.ln() + 2.0 * ln_cosh + (sech2 / self.g).ln_1p();

        let coeffs = self.poly_in_sinh_squared();
        let coeffs = poly::trim(&coeffs);
        let Some(&top) = coeffs.last() else {
            return (f64::NEG_INFINITY, 0.0);
        };
        let n = coeffs.len() - 1;
        // Σ c_m w^m = c_n w^n · Σ (c_m/c_n) w^(m-n)
        let ln_w = 2.0 * ln_sinh;
        let tail: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| c / top * (-(ln_w * (n - m) as f64)).exp())
            .sum();
        let log_mag = self.cosh_exponent * ln_cosh
            + self.bracket_exponent * ln_bracket
            + top.abs().ln()
            + n as f64 * ln_w
            + tail.abs().ln();
        (log_mag, sign_of(top) * sign_of(tail))
    }

    /// CSV with header `x,psi`.
    pub fn to_csv(&self, grid: &[f64]) -> String {
        let mut out = String::from("x,psi\n");
        for &x in grid {
            out.push_str(&format!(
                "{},{}\n",
                fmt_sig17(x),
                fmt_sig17(self.evaluate(x))
            ));
        }
        out
    }
}

fn sign_of(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}
