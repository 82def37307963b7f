//! Quasi-exactly solvable (QES) part of the spectrum of the hyperbolic
//! double-well potential
//!
//! ```text
//! V(x) = v1 / cosh²x + v2 / (1 + g cosh²x) + v3 / (1 + g cosh²x)²
//! ```
//!
//! After the substitution `z = -sinh²x` and a power-law prefactor the
//! Schrödinger equation reduces to a Heun-type equation with regular
//! singular points at `0`, `1` and `λ = (1+g)/g`. A degree-`n` polynomial
//! solution exists only on a quantized energy, and only for a finite set of
//! couplings `v2`. Two independent routes compute that set:
//!
//! * [`bethe`]: multistart Newton on the coupled algebraic equations for the
//!   polynomial roots, followed by a linear extraction of `v2`;
//! * [`lie`]: the sl(2) algebraization, where the reduced operator becomes a
//!   tridiagonal matrix on `⟨1, z, …, zⁿ⟩` whose eigenvalues `σ` map affinely
//!   onto `v2`.
//!
//! The [`oracle`] module verifies both against the untransformed equation
//! using finite differences.
//!
//! ```
//! use qes_dwp::{bethe, lie};
//!
//! let e = bethe::energy(2, 0.09, 10.0, 0.25).unwrap();
//! assert!((e + 8.41).abs() < 1e-12);
//!
//! let spectrum = lie::sigma_spectrum(2, 0.09, 10.0, 0.25).unwrap();
//! let mut v2 = spectrum.real_v2_values();
//! v2.sort_by(f64::total_cmp);
//! assert!((v2[1] + 9.0).abs() < 1e-9);
//! ```

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bethe;
pub mod cli;
mod error;
pub mod level;
pub mod lie;
pub mod oracle;
pub mod poly;
pub mod potential;
pub mod reduction;

pub use error::{QesError, Result};
pub use level::{Method, QesLevel};
pub use potential::PotentialParams;
pub use reduction::{ReducedCoefficients, Wavefunction};

/// Shape parameters of the reference parameter set: `(v1, v3, g)`.
pub const TABLE_SHAPE: (f64, f64, f64) = (0.09, 10.0, 0.25);

/// Formats a float with 17 significant digits, the precision used by every
/// CSV writer in the crate.
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}
