//! sl(2) algebraization of the reduced operator.
//!
//! The first-order differential operators
//!
//! ```text
//! J⁺ = -z² d/dz + n z,   J⁰ = z d/dz - n/2,   J⁻ = d/dz
//! ```
//!
//! close under commutation and preserve `⟨1, z, …, zⁿ⟩`. At a quantized
//! energy the reduced operator is a quadratic combination of them, so on
//! that space it is a tridiagonal `(n+1)×(n+1)` matrix `T - σ I`. Polynomial
//! solutions exist exactly when `σ` is an eigenvalue of `T`, and every
//! eigenvalue maps affinely onto an admissible `v2`. The route is complete:
//! it yields all `n + 1` values counting multiplicity.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::bethe::{self, SolutionRecord};
use crate::level::{Method, QesLevel};
use crate::reduction::{reduce, ReducedCoefficients};
use crate::{fmt_sig17, poly, PotentialParams, QesError, Result};

/// A σ root is treated as real when `|Im σ| <= REAL_SIGMA_TOL · (1 + |Re σ|)`.
pub const REAL_SIGMA_TOL: f64 = 1e-8;
/// Largest quasi-solvability residual accepted by [`qes_hamiltonian`].
pub const CONDITION_TOL: f64 = 1e-8;

/// Matrices of `J⁺, J⁰, J⁻` on the monomial basis `1, z, …, zⁿ`. Column `m`
/// holds the image of `zᵐ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub n: usize,
    pub j_plus: DMatrix<f64>,
    pub j_zero: DMatrix<f64>,
    pub j_minus: DMatrix<f64>,
}

pub fn generator_matrices(n: usize) -> GeneratorSet {
    let dim = n + 1;
    let nf = n as f64;
    let mut j_plus = DMatrix::zeros(dim, dim);
    let mut j_zero = DMatrix::zeros(dim, dim);
    let mut j_minus = DMatrix::zeros(dim, dim);
    for m in 0..dim {
        let mf = m as f64;
        if m < n {
            j_plus[(m + 1, m)] = nf - mf;
        }
        j_zero[(m, m)] = mf - 0.5 * nf;
        if m > 0 {
            j_minus[(m - 1, m)] = mf;
        }
    }
    GeneratorSet {
        n,
        j_plus,
        j_zero,
        j_minus,
    }
}

pub fn commutator(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

impl GeneratorSet {
    /// Largest entrywise violation of `[J⁰,J⁺] = J⁺`, `[J⁰,J⁻] = -J⁻`,
    /// `[J⁺,J⁻] = 2J⁰`.
    pub fn commutator_defect(&self) -> f64 {
        let d1 = commutator(&self.j_zero, &self.j_plus) - &self.j_plus;
        let d2 = commutator(&self.j_zero, &self.j_minus) + &self.j_minus;
        let d3 = commutator(&self.j_plus, &self.j_minus) - 2.0 * &self.j_zero;
        [d1, d2, d3].iter().map(|d| d.amax()).fold(0.0, f64::max)
    }
}

/// The reduced operator on `⟨1, …, zⁿ⟩` assembled from generators:
///
/// ```text
/// -J⁺J⁰ + (λ+1) J⁺J⁻ + λ J⁰J⁻ + (1 - 3n/2 - (γ+δ+ε)) J⁺
///   - (λγ+γ+λδ+ε + n(λ+1)) J⁰ + (λγ + nλ/2) J⁻
///   - σ - n(λγ+γ+λδ+ε)/2 - n²(λ+1)/2
/// ```
///
/// The coefficient of `J⁰J⁻` must be `λ` to reproduce the `λ z d²/dz²`
/// term. Fails unless `coeffs` sits on the degree-`n` energy.
pub fn qes_hamiltonian(n: usize, coeffs: &ReducedCoefficients) -> Result<DMatrix<f64>> {
    let residual = coeffs.quasi_solvability_residual(n);
    if !(residual.abs() <= CONDITION_TOL) {
        return Err(QesError::ConditionViolated { n, residual });
    }
    let GeneratorSet {
        j_plus,
        j_zero,
        j_minus,
        ..
    } = generator_matrices(n);
    let nf = n as f64;
    let lambda = coeffs.lambda;
    let xi1 = coeffs.charge_sum();
    let k = coeffs.linear_term();

    let mut h = -(&j_plus * &j_zero);
    h += (lambda + 1.0) * (&j_plus * &j_minus);
    h += lambda * (&j_zero * &j_minus);
    h += ((1.0 - 1.5 * nf) - xi1) * &j_plus;
    h -= (k + nf * (lambda + 1.0)) * &j_zero;
    h += (lambda * coeffs.gamma + 0.5 * nf * lambda) * &j_minus;
    let constant = -coeffs.sigma - 0.5 * nf * k - 0.5 * nf * nf * (lambda + 1.0);
    for i in 0..=n {
        h[(i, i)] += constant;
    }
    Ok(h)
}

/// Tridiagonal matrix of the reduced operator acting on monomials.
///
/// Row `k` collects the coefficient of `zᵏ` in `H φ`:
/// `sub[k-1]·a_{k-1} + (diag_base[k] - σ)·a_k + sup[k]·a_{k+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QesMatrix {
    pub n: usize,
    /// `A_1 … A_n`.
    pub sub: Vec<f64>,
    /// `b_0 … b_n`, the σ-free diagonal.
    pub diag_base: Vec<f64>,
    /// `C_0 … C_{n-1}`.
    pub sup: Vec<f64>,
    pub sigma: f64,
}

/// `A_k = (k-1)(k-2) - n(n-1) + (k-1-n)(γ+δ+ε)`: coefficient of `z^k` in
/// `H z^{k-1}` once `αβ = -n(n-1) - n(γ+δ+ε)`.
fn lower_entry(k: usize, n: usize, coeffs: &ReducedCoefficients) -> f64 {
    let (kf, nf) = (k as f64, n as f64);
    (kf - 1.0) * (kf - 2.0) - nf * (nf - 1.0) + (kf - 1.0 - nf) * coeffs.charge_sum()
}

/// `b_k = -k(k-1)(λ+1) - k(λγ+γ+λδ+ε)`.
fn diagonal_entry(k: usize, coeffs: &ReducedCoefficients) -> f64 {
    let kf = k as f64;
    -kf * (kf - 1.0) * (coeffs.lambda + 1.0) - kf * coeffs.linear_term()
}

/// `C_k = k(k+1)λ + (k+1)λγ`.
fn upper_entry(k: usize, coeffs: &ReducedCoefficients) -> f64 {
    let kf = k as f64;
    kf * (kf + 1.0) * coeffs.lambda + (kf + 1.0) * coeffs.lambda * coeffs.gamma
}

pub fn direct_matrix(n: usize, coeffs: &ReducedCoefficients) -> QesMatrix {
    QesMatrix {
        n,
        sub: (1..=n).map(|k| lower_entry(k, n, coeffs)).collect(),
        diag_base: (0..=n).map(|k| diagonal_entry(k, coeffs)).collect(),
        sup: (0..n).map(|k| upper_entry(k, coeffs)).collect(),
        sigma: coeffs.sigma,
    }
}

/// `A_{n+1}`, the coefficient that would couple `a_n` to `z^{n+1}`.
/// Vanishes identically.
pub fn truncation_coefficient(n: usize, coeffs: &ReducedCoefficients) -> f64 {
    lower_entry(n + 1, n, coeffs)
}

impl QesMatrix {
    /// Dense `T - σ I`.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut t = self.t_dense();
        for i in 0..=self.n {
            t[(i, i)] -= self.sigma;
        }
        t
    }

    /// Dense `T` (no σ shift).
    pub fn t_dense(&self) -> DMatrix<f64> {
        let dim = self.n + 1;
        let mut t = DMatrix::zeros(dim, dim);
        for k in 0..dim {
            t[(k, k)] = self.diag_base[k];
            if k > 0 {
                t[(k, k - 1)] = self.sub[k - 1];
            }
            if k < self.n {
                t[(k, k + 1)] = self.sup[k];
            }
        }
        t
    }

    /// Max absolute row sum of `T`.
    pub fn norm(&self) -> f64 {
        self.t_dense()
            .row_iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `det(T - s I)` and its derivative in `s`, via
    /// `D_{k+1} = (b_k - s) D_k - A_k C_{k-1} D_{k-1}`.
    pub fn determinant(&self, s: Complex64) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (mut d_prev, mut d) = (zero, one);
        let (mut dd_prev, mut dd) = (zero, zero);
        for k in 0..=self.n {
            let coupling = if k > 0 {
                self.sub[k - 1] * self.sup[k - 1]
            } else {
                0.0
            };
            let shifted = self.diag_base[k] - s;
            let next = shifted * d - d_prev * coupling;
            let dnext = -d + shifted * dd - dd_prev * coupling;
            d_prev = d;
            d = next;
            dd_prev = dd;
            dd = dnext;
        }
        (d, dd)
    }

    /// Coefficients of `det(T - s I)` in `s`, lowest degree first.
    pub fn characteristic_polynomial(&self) -> Vec<f64> {
        let mut prev: Vec<f64> = Vec::new();
        let mut cur = vec![1.0];
        for k in 0..=self.n {
            let coupling = if k > 0 {
                self.sub[k - 1] * self.sup[k - 1]
            } else {
                0.0
            };
            let mut next = poly::multiply(&[self.diag_base[k], -1.0], &cur);
            for (i, &p) in prev.iter().enumerate() {
                next[i] -= coupling * p;
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    /// CSV `k,sub,diag,super`; `sub` of row 0 and `super` of row `n` are 0.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,sub,diag,super\n");
        for k in 0..=self.n {
            let sub = if k > 0 { self.sub[k - 1] } else { 0.0 };
            let sup = if k < self.n { self.sup[k] } else { 0.0 };
            out.push_str(&format!(
                "{k},{},{},{}\n",
                fmt_sig17(sub),
                fmt_sig17(self.diag_base[k]),
                fmt_sig17(sup)
            ));
        }
        out
    }
}

/// Eigenvalues of `T` for one level, with their `v2` images.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaSpectrum {
    pub n: usize,
    pub energy: f64,
    pub matrix: QesMatrix,
    /// Sorted by real part; exactly `n + 1` entries.
    pub sigma: Vec<Complex64>,
    pub is_real: Vec<bool>,
    /// `v2` image of each σ (complex σ gives complex `v2`).
    pub v2: Vec<Complex64>,
    pub v1: f64,
    pub v3: f64,
    pub g: f64,
}

impl SigmaSpectrum {
    /// `v2` values of the real σ roots, in σ order.
    pub fn real_v2_values(&self) -> Vec<f64> {
        self.v2
            .iter()
            .zip(&self.is_real)
            .filter(|(_, &r)| r)
            .map(|(v, _)| v.re)
            .collect()
    }

    pub fn level(&self) -> QesLevel {
        QesLevel::new(self.n, self.energy, self.real_v2_values(), Method::Lie)
    }

    /// `|det(T - σ I)| / (‖T‖ + |σ|)^(n+1)` at root `i`.
    pub fn relative_determinant(&self, i: usize) -> f64 {
        let s = self.sigma[i];
        let (d, _) = self.matrix.determinant(s);
        d.norm()
            / (self.matrix.norm() + s.norm())
                .max(1.0)
                .powi(self.n as i32 + 1)
    }
}

fn polish_sigma(matrix: &QesMatrix, mut s: Complex64, real: bool) -> Complex64 {
    let (mut d, mut dd) = matrix.determinant(s);
    for _ in 0..50 {
        if d.norm() == 0.0 || dd.norm() == 0.0 {
            break;
        }
        let mut candidate = s - d / dd;
        if real {
            candidate.im = 0.0;
        }
        let (cd, cdd) = matrix.determinant(candidate);
        if cd.norm() >= d.norm() {
            break;
        }
        s = candidate;
        d = cd;
        dd = cdd;
    }
    s
}

/// All `n + 1` values of `σ` for which a degree-`n` polynomial solution
/// exists: roots of the characteristic polynomial of `T`, each polished by
/// Newton on the determinant recurrence.
pub fn sigma_spectrum(n: usize, v1: f64, v3: f64, g: f64) -> Result<SigmaSpectrum> {
    let energy = bethe::energy(n, v1, v3, g)?;
    let coeffs = reduce(&PotentialParams::new(v1, 0.0, v3, g), energy)?;
    let matrix = direct_matrix(n, &coeffs);
    let mut sigma: Vec<Complex64> = poly::roots(&matrix.characteristic_polynomial());
    poly::sort_lexicographic(&mut sigma);

    let mut is_real = Vec::with_capacity(sigma.len());
    for s in sigma.iter_mut() {
        let real = s.im.abs() <= REAL_SIGMA_TOL * (1.0 + s.re.abs());
        if real {
            s.im = 0.0;
        }
        *s = polish_sigma(&matrix, *s, real);
        is_real.push(real);
    }
    let v2 = sigma
        .iter()
        .map(|&s| Complex64::new(v2_from_sigma(s.re, v1, v3, g, energy), -4.0 * g * s.im))
        .collect();
    Ok(SigmaSpectrum {
        n,
        energy,
        matrix,
        sigma,
        is_real,
        v2,
        v1,
        v3,
        g,
    })
}

/// Inverts the definition of `σ` for `v2`:
///
/// ```text
/// v2 = (1+g) [1/2 + √(1-4v1)/2 + 1/λ - √(1+v3/(1+g))/λ - v1 - v3/(1+g)² + E - 4σ/λ]
/// ```
pub fn v2_from_sigma(sigma: f64, v1: f64, v3: f64, g: f64, energy: f64) -> f64 {
    let lambda = (1.0 + g) / g;
    let r1 = (1.0 - 4.0 * v1).sqrt();
    let r3 = (1.0 + v3 / (1.0 + g)).sqrt();
    (1.0 + g)
        * (0.5 + 0.5 * r1 + 1.0 / lambda - r3 / lambda - v1 - v3 / (1.0 + g).powi(2) + energy
            - 4.0 * sigma / lambda)
}

/// One row of the three-term recurrence
/// `lower·a_{m-1} + (diag - σ)·a_m + upper·a_{m+1} = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecurrenceRow {
    pub lower: f64,
    pub diag: f64,
    pub upper: f64,
}

/// Row `m` of the recurrence, `0 <= m <= n + 1`. Row `n + 1` has
/// `lower = 0` identically, which is what lets the series terminate.
pub fn recurrence_coefficients(
    m: usize,
    n: usize,
    coeffs: &ReducedCoefficients,
) -> Result<RecurrenceRow> {
    if m > n + 1 {
        return Err(QesError::IndexOutOfRange {
            index: m,
            max: n + 1,
        });
    }
    Ok(RecurrenceRow {
        lower: if m == 0 {
            0.0
        } else {
            lower_entry(m, n, coeffs)
        },
        diag: diagonal_entry(m, coeffs),
        upper: upper_entry(m, coeffs),
    })
}

/// Coefficients `a_0 = 1, a_1, …, a_n` generated by the forward recurrence at
/// a given σ. Only when σ is an eigenvalue of `T` does the last row hold.
pub fn polynomial_coefficients(n: usize, coeffs: &ReducedCoefficients, sigma: f64) -> Vec<f64> {
    let mut a = vec![1.0];
    for m in 0..n {
        let row = recurrence_coefficients(m, n, coeffs).expect("m <= n");
        let prev = if m > 0 { a[m - 1] } else { 0.0 };
        a.push(-(row.lower * prev + (row.diag - sigma) * a[m]) / row.upper);
    }
    a
}

/// Evaluated constraint polynomial: the signed sum and the sum of term
/// magnitudes, which sets the scale for a relative test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintResidual {
    pub value: f64,
    pub magnitude: f64,
}

impl ConstraintResidual {
    pub fn relative(&self) -> f64 {
        self.value.abs() / self.magnitude.max(f64::MIN_POSITIVE)
    }
}

/// Evaluates the explicit constraint polynomial linking `E, v1, v2, v3` for
/// `n = 1` (quadratic in `v2`) or `n = 2` (cubic in `v2`). Both were
/// expanded with `g = 1/4` substituted, so other `g` are rejected.
pub fn constraint_polynomial_check(
    n: usize,
    e: f64,
    v1: f64,
    v2: f64,
    v3: f64,
    g: f64,
) -> Result<ConstraintResidual> {
    if g != 0.25 {
        return Err(QesError::UnsupportedShape(g));
    }
    let a = (1.0 - 4.0 * v1).sqrt();
    let b = (25.0 + 20.0 * v3).sqrt();
    if a.is_nan() || b.is_nan() {
        return Err(QesError::Domain(
            "negative radicand in constraint polynomial".into(),
        ));
    }
    let terms: Vec<f64> = match n {
        1 => vec![
            (-300.0 * e + 300.0 * v1 + 240.0 * v2 + 192.0 * v3 - 250.0 * a - 970.0) * b,
            (3750.0 * e - 3750.0 * v1 - 3000.0 * v2 - 2400.0 * v3 + 8125.0) * a,
            (-2500.0 * e + 2000.0 * v2 + 1600.0 * v3 - 17000.0) * v1,
            (-2000.0 * e + 1280.0 * v3 - 8600.0) * v2,
            (-1600.0 * e - 6680.0) * v3,
            1250.0 * e * e,
            10750.0 * e,
            13725.0,
            1250.0 * v1 * v1,
            800.0 * v2 * v2,
            512.0 * v3 * v3,
        ],
        2 => {
            let k = 1.0 / 16000.0;
            vec![
                -125.0 / 64.0 * e.powi(3),
                (375.0 / 64.0 * v1 - 8325.0 / 128.0
                    + 75.0 / 64.0 * b
                    + 75.0 / 16.0 * v2
                    + 15.0 / 4.0 * v3
                    - 1875.0 / 128.0 * a)
                    * e
                    * e,
                e * k * (-150000.0 * v2 - 120000.0 * v3 + 3925000.0) * v1,
                e * k * (375000.0 * v2 + 468750.0 * v1 + 300000.0 * v3 - 3903125.0) * a,
                e * k * (-30000.0 * v2 - 37500.0 * v1 - 24000.0 * v3 + 376250.0 + 73750.0 * a) * b,
                (-15.0 / 4.0 * v2 * v2 + k * (-96000.0 * v3 + 1665000.0) * v2
                    - 375.0 / 64.0 * v1 * v1
                    + 1273.0 / 16.0 * v3
                    - 12.0 / 5.0 * v3 * v3
                    - 72365.0 / 128.0)
                    * e,
                -32895.0 / 32.0,
                k * (30720.0 * v3 * v3 - 1018400.0 * v3 + 7236500.0) * v2,
                b * k
                    * ((426625.0 - 73750.0 * v1 - 59000.0 * v2 - 47200.0 * v3) * a
                        + 12000.0 * v2 * v2
                        + 18750.0 * v1 * v1),
                k * ((30000.0 * v2 + 24000.0 * v3 - 545000.0) * v1 + 7680.0 * v3 * v3
                    - 239000.0 * v3)
                    * b,
                k * ((19200.0 * v3 - 301000.0) * v2 + 1174625.0) * b,
                k * (-234375.0 * v1 * v1 + (-375000.0 * v2 - 300000.0 * v3 + 4606250.0) * v1
                    - 96000.0 * v3 * v3)
                    * a,
                k * (-150000.0 * v2 * v2 + (-240000.0 * v3 + 3122500.0) * v2 + 2430500.0 * v3
                    - 9027500.0)
                    * a,
                53711.0 / 160.0 * v3,
                64.0 / 125.0 * v3.powi(3),
                125.0 / 64.0 * v1.powi(3),
                k * (75000.0 * v2 + 60000.0 * v3 - 2884375.0) * v1 * v1,
                v2.powi(3),
                k * (60000.0 * v2 * v2 + (96000.0 * v3 - 3140000.0) * v2 + 38400.0 * v3 * v3
                    - 2453000.0 * v3
                    + 17311250.0)
                    * v1,
                -607.0 / 25.0 * v3 * v3,
                k * (38400.0 * v3 - 666000.0) * v2 * v2,
            ]
        }
        _ => return Err(QesError::UnsupportedLevel(n)),
    };
    Ok(ConstraintResidual {
        value: terms.iter().sum(),
        magnitude: terms.iter().map(|t| t.abs()).sum(),
    })
}

/// Lie-route level report: the Bethe schema plus the raw σ list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LieLevelReport {
    pub n: usize,
    #[serde(rename = "E")]
    pub energy: f64,
    pub solutions: Vec<SolutionRecord>,
    pub sigma: Vec<[f64; 2]>,
}

impl LieLevelReport {
    pub fn level(&self) -> QesLevel {
        let v2 = self
            .solutions
            .iter()
            .filter(|s| s.is_physical)
            .map(|s| s.v2)
            .collect();
        QesLevel::new(self.n, self.energy, v2, Method::Lie)
    }
}

/// σ spectrum, `v2` images and polynomial roots for one level.
pub fn solve_level(n: usize, v1: f64, v3: f64, g: f64) -> Result<LieLevelReport> {
    let spectrum = sigma_spectrum(n, v1, v3, g)?;
    let coeffs = reduce(&PotentialParams::new(v1, 0.0, v3, g), spectrum.energy)?;
    let mut solutions = Vec::with_capacity(spectrum.sigma.len());
    for (i, s) in spectrum.sigma.iter().enumerate() {
        let real = spectrum.is_real[i];
        let roots = if real {
            let mut r = poly::roots(&polynomial_coefficients(n, &coeffs, s.re));
            poly::sort_lexicographic(&mut r);
            r.iter().map(|z| [z.re, z.im]).collect()
        } else {
            Vec::new()
        };
        solutions.push(SolutionRecord {
            roots,
            residual: spectrum.relative_determinant(i),
            v2: spectrum.v2[i].re,
            is_physical: real,
        });
    }
    Ok(LieLevelReport {
        n,
        energy: spectrum.energy,
        solutions,
        sigma: spectrum.sigma.iter().map(|s| [s.re, s.im]).collect(),
    })
}
