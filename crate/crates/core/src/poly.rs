//! Dense univariate polynomials stored as coefficient lists, lowest degree
//! first, and a companion-matrix root finder.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Horner evaluation of a real polynomial at a complex point.
pub fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Value and first derivative at `z`.
pub fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval_real(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Monic polynomial `∏ (z - z_k)`, complex coefficients.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); out.len() + 1];
        for (k, &c) in out.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        out = next;
    }
    out
}

/// Drops trailing (highest-degree) zero coefficients.
pub fn trim(coeffs: &[f64]) -> &[f64] {
    let len = coeffs.iter().rposition(|&c| c != 0.0).map_or(0, |i| i + 1);
    &coeffs[..len]
}

pub fn multiply(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

/// All complex roots of a real polynomial, with multiplicity.
///
/// The variable is rescaled so that the monic coefficients are of order one,
/// the eigenvalues of the companion matrix are taken, and each eigenvalue is
/// polished by a few Newton steps on the original coefficients.
pub fn roots(coeffs: &[f64]) -> Vec<Complex64> {
    let coeffs = trim(coeffs);
    if coeffs.len() <= 1 {
        return Vec::new();
    }
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];

    // Zeros at the origin are split off exactly.
    let zeros_at_origin = coeffs.iter().position(|&c| c != 0.0).unwrap_or(0);
    let reduced = &coeffs[zeros_at_origin..];
    let m = reduced.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    if m == 0 {
        return out;
    }

    // Fujiwara-type scale: max_k |c_k / c_m|^(1/(m-k)).
    let scale = (0..m)
        .map(|k| (reduced[k] / lead).abs().powf(1.0 / (m - k) as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);

    // Monic polynomial in t = z / scale.
    let monic: Vec<f64> = (0..m)
        .map(|k| reduced[k] / lead / scale.powi((m - k) as i32))
        .collect();
    let mut companion = DMatrix::<f64>::zeros(m, m);
    for i in 1..m {
        companion[(i, i - 1)] = 1.0;
    }
    for (k, &c) in monic.iter().enumerate() {
        companion[(k, m - 1)] = -c;
    }
    let eigen = companion.complex_eigenvalues();

    for t in eigen.iter() {
        out.push(polish(reduced, *t * scale));
    }
    debug_assert_eq!(out.len(), degree);
    out
}

/// Newton polishing that only accepts steps which reduce `|p|`.
fn polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    let (mut p, mut dp) = eval_with_derivative(coeffs, z);
    for _ in 0..50 {
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let candidate = z - p / dp;
        let (cp, cdp) = eval_with_derivative(coeffs, candidate);
        if cp.norm() >= p.norm() {
            break;
        }
        z = candidate;
        p = cp;
        dp = cdp;
    }
    z
}

/// Sorts by real part, then imaginary part.
pub fn sort_lexicographic(values: &mut [Complex64]) {
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}
