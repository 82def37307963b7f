//! Bethe ansatz route.
//!
//! A degree-`n` polynomial solution `φ(z) = ∏ (z - z_k)` of the reduced
//! equation exists iff its roots satisfy
//!
//! ```text
//! Σ_{j≠k} 2/(z_k - z_j) + γ/z_k + δ/(z_k - 1) + ε/(z_k - λ) = 0,   k = 1..n,
//! ```
//!
//! the equilibrium condition for `n` unit charges with logarithmic
//! interaction in the field of charges `γ, δ, ε` fixed at `0, 1, λ`. Given
//! the roots, the energy is quantized and `v2` follows linearly from the sum
//! of the roots.
//!
//! Solutions are found by damped Newton from many deterministic starting
//! configurations; nothing guarantees that every solution is found.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::level::{Method, QesLevel};
use crate::potential::{validate, PotentialParams};
use crate::reduction::{reduce, shape_constant, ReducedCoefficients};
use crate::{poly, QesError, Result};

/// Accepted Bethe states have a max-norm residual below this.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Relative tolerance of the permutation-invariant duplicate test.
pub const DEDUP_TOL: f64 = 1e-6;
/// `v2` counts as real when its imaginary part is below this.
pub const REAL_V2_TOL: f64 = 1e-8;
/// Denominators smaller than this make a configuration singular.
const SINGULAR_TOL: f64 = 1e-12;
/// Minimum separation (relative to the configuration scale) between roots,
/// and between a root and a force center.
const SEPARATION_TOL: f64 = 1e-8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Quantized energy `E_n = -(2n + s/2)²` of the degree-`n` level.
pub fn energy(n: usize, v1: f64, v3: f64, g: f64) -> Result<f64> {
    let report = validate(&PotentialParams::new(v1, 0.0, v3, g))?;
    if !report.is_valid() {
        return Err(QesError::Domain(format!(
            "outside the real-energy region: v1 = {v1} (need < 1/4), v3 = {v3} (need > {})",
            -(1.0 + g)
        )));
    }
    let s = shape_constant(v1, v3, g)?;
    Ok(-(2.0 * n as f64 + 0.5 * s).powi(2))
}

/// Residual of the energy condition in its unsolved form,
/// `s²/16 + E/4 + n(n-1) + n(γ+δ+ε)`, with `γ+δ+ε` read off the reduced
/// coefficients at `E`.
pub fn energy_condition_residual(n: usize, v1: f64, v3: f64, g: f64, e: f64) -> Result<f64> {
    let coeffs = reduce(&PotentialParams::new(v1, 0.0, v3, g), e)?;
    let nf = n as f64;
    Ok(coeffs.shape.powi(2) / 16.0 + e / 4.0 + nf * (nf - 1.0) + nf * coeffs.charge_sum())
}

/// Reduced coefficients at the degree-`n` energy. `σ` is evaluated at
/// `v2 = 0`; the equations for the roots do not involve it.
pub fn level_coefficients(n: usize, v1: f64, v3: f64, g: f64) -> Result<ReducedCoefficients> {
    let e = energy(n, v1, v3, g)?;
    reduce(&PotentialParams::new(v1, 0.0, v3, g), e)
}

/// Left-hand sides of the root equations (sign convention as above, negated).
pub fn bae_residual(roots: &[Complex64], coeffs: &ReducedCoefficients) -> Result<Vec<Complex64>> {
    let centers = [0.0, 1.0, coeffs.lambda];
    let charges = [coeffs.gamma, coeffs.delta, coeffs.epsilon];
    let mut out = Vec::with_capacity(roots.len());
    for (k, &zk) in roots.iter().enumerate() {
        let mut f = c(0.0, 0.0);
        for (j, &zj) in roots.iter().enumerate() {
            if j == k {
                continue;
            }
            let d = zk - zj;
            if d.norm() < SINGULAR_TOL {
                return Err(QesError::Singular(format!("roots {j} and {k} coincide")));
            }
            f -= 2.0 / d;
        }
        for (&center, &charge) in centers.iter().zip(&charges) {
            let d = zk - center;
            if d.norm() < SINGULAR_TOL {
                return Err(QesError::Singular(format!(
                    "root {k} sits on the force center {center}"
                )));
            }
            f -= charge / d;
        }
        out.push(f);
    }
    Ok(out)
}

/// Analytic Jacobian of [`bae_residual`].
fn bae_jacobian(roots: &[Complex64], coeffs: &ReducedCoefficients) -> DMatrix<Complex64> {
    let n = roots.len();
    let centers = [0.0, 1.0, coeffs.lambda];
    let charges = [coeffs.gamma, coeffs.delta, coeffs.epsilon];
    let mut jac = DMatrix::from_element(n, n, c(0.0, 0.0));
    for k in 0..n {
        let mut diag = c(0.0, 0.0);
        for j in 0..n {
            if j == k {
                continue;
            }
            let inv2 = 2.0 / (roots[k] - roots[j]).powi(2);
            diag += inv2;
            jac[(k, j)] = -inv2;
        }
        for (&center, &charge) in centers.iter().zip(&charges) {
            diag += charge / (roots[k] - center).powi(2);
        }
        jac[(k, k)] = diag;
    }
    jac
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Multistart parameters for [`solve_bae`].
#[derive(Debug, Clone)]
pub struct SeedStrategy {
    /// Number of generated starting configurations.
    pub starts: usize,
    pub max_iterations: usize,
    /// Extra starting configurations tried before the generated ones, e.g.
    /// roots of a polynomial obtained by other means.
    pub warm_starts: Vec<Vec<Complex64>>,
}

impl Default for SeedStrategy {
    fn default() -> Self {
        Self {
            starts: 240,
            max_iterations: 200,
            warm_starts: Vec::new(),
        }
    }
}

/// One solution of the root equations.
#[derive(Debug, Clone, PartialEq)]
pub struct BetheState {
    pub n: usize,
    /// Roots sorted by real part, then imaginary part.
    pub roots: Vec<Complex64>,
    pub residual: f64,
    /// Real part of the extracted coupling.
    pub v2: f64,
    pub v2_imag: f64,
    /// Root set closed under conjugation and `v2` real within tolerance.
    pub is_physical: bool,
}

impl BetheState {
    /// Monic polynomial `∏ (z - z_k)`; real for physical states.
    pub fn polynomial(&self) -> Vec<f64> {
        poly::from_roots(&self.roots).iter().map(|z| z.re).collect()
    }

    pub fn is_real(&self) -> bool {
        self.roots.iter().all(|z| z.im == 0.0)
    }
}

/// Output of [`solve_bae`]. An empty `states` list is a legal outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct BetheSolveReport {
    pub n: usize,
    pub states: Vec<BetheState>,
    pub starts: usize,
    pub failed_starts: usize,
}

impl BetheSolveReport {
    pub fn physical(&self) -> impl Iterator<Item = &BetheState> {
        self.states.iter().filter(|s| s.is_physical)
    }
}

/// Deterministic 64-bit fingerprint of the problem, used to seed the
/// multistart generator.
fn fingerprint(n: usize, coeffs: &ReducedCoefficients) -> u64 {
    let mut h: u64 = 0x9E37_79B9_7F4A_7C15 ^ n as u64;
    for bits in [
        coeffs.gamma.to_bits(),
        coeffs.delta.to_bits(),
        coeffs.epsilon.to_bits(),
        coeffs.lambda.to_bits(),
    ] {
        // splitmix64 finalizer
        h ^= bits;
        h = h.wrapping_add(0x9E37_79B9_7F4A_7C15);
        h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h ^= h >> 31;
    }
    h
}

fn real_seed(rng: &mut ChaCha8Rng, lambda: f64) -> Complex64 {
    let intervals = [
        (-4.0 * lambda, 0.0),
        (0.0, 1.0),
        (1.0, lambda),
        (lambda, 4.0 * lambda),
    ];
    let (lo, hi) = intervals[rng.gen_range(0..intervals.len())];
    let t: f64 = rng.gen_range(0.02..0.98);
    c(lo + t * (hi - lo), 0.0)
}

fn pair_seed(rng: &mut ChaCha8Rng, lambda: f64) -> [Complex64; 2] {
    let centroid = (1.0 + lambda) / 3.0;
    let radius: f64 = rng.gen_range(0.2..3.0 * lambda);
    let angle: f64 = rng.gen_range(0.05..std::f64::consts::PI - 0.05);
    let z = c(centroid, 0.0) + Complex64::from_polar(radius, angle);
    [z, z.conj()]
}

/// Starting configuration number `index`; cycles through all-real,
/// mostly-conjugate-pair and mixed configurations. Every seed is closed
/// under conjugation.
fn seed(rng: &mut ChaCha8Rng, n: usize, lambda: f64, index: usize) -> Vec<Complex64> {
    let pairs = match index % 3 {
        0 => 0,
        1 => n / 2,
        _ => rng.gen_range(0..=n / 2),
    };
    let mut z = Vec::with_capacity(n);
    for _ in 0..pairs {
        z.extend(pair_seed(rng, lambda));
    }
    while z.len() < n {
        z.push(real_seed(rng, lambda));
    }
    z
}

/// Damped Newton from `start`. Returns the converged configuration, or
/// `None` when the iteration stalls, hits a singular configuration or
/// escapes to infinity.
fn newton(
    start: &[Complex64],
    coeffs: &ReducedCoefficients,
    max_iterations: usize,
) -> Option<Vec<Complex64>> {
    let n = start.len();
    let mut z = start.to_vec();
    let mut f = bae_residual(&z, coeffs).ok()?;
    let mut norm = max_norm(&f);
    for _ in 0..max_iterations {
        if norm < 1e-14 {
            break;
        }
        let jac = bae_jacobian(&z, coeffs);
        let rhs = DVector::from_column_slice(&f);
        let step = jac.lu().solve(&rhs)?;
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let candidate: Vec<Complex64> = (0..n).map(|k| z[k] - step[k] * t).collect();
            if let Ok(cf) = bae_residual(&candidate, coeffs) {
                let cn = max_norm(&cf);
                if cn < norm {
                    z = candidate;
                    f = cf;
                    norm = cn;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
        if z.iter().any(|r| !r.is_finite() || r.norm() > 1e12) {
            return None;
        }
    }
    (norm < RESIDUAL_TOL).then_some(z)
}

/// Pairs every root with a conjugate partner and makes the pairing exact.
/// Returns `None` if the set is not closed under conjugation.
fn symmetrize(roots: &[Complex64]) -> Option<Vec<Complex64>> {
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-7 * scale;
    let n = roots.len();
    let mut out = roots.to_vec();
    let mut used = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| roots[a].im.abs().total_cmp(&roots[b].im.abs()));
    for &i in &order {
        if used[i] {
            continue;
        }
        let (j, dist) = (0..n)
            .filter(|&j| !used[j])
            .map(|j| (j, (roots[i] - roots[j].conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if dist > tol {
            return None;
        }
        used[i] = true;
        used[j] = true;
        if i == j {
            out[i] = c(roots[i].re, 0.0);
        } else {
            let avg = 0.5 * (roots[i] + roots[j].conj());
            out[i] = avg;
            out[j] = avg.conj();
        }
    }
    Some(out)
}

/// Roots pairwise separated and away from `0, 1, λ`.
fn well_separated(roots: &[Complex64], lambda: f64) -> bool {
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = SEPARATION_TOL * scale;
    let apart = roots
        .iter()
        .enumerate()
        .all(|(k, a)| roots[k + 1..].iter().all(|b| (a - b).norm() > tol));
    let off_centers = roots
        .iter()
        .all(|z| [0.0, 1.0, lambda].iter().all(|&p| (z - p).norm() > tol));
    apart && off_centers
}

fn same_configuration(a: &[Complex64], b: &[Complex64]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).norm() <= DEDUP_TOL * x.norm().max(y.norm()).max(1.0))
}

/// Sum of the roots to `σ`: the `v2`-bearing coefficient implied by the
/// vanishing of the constant part of `H φ`.
fn sigma_from_roots(n: usize, roots: &[Complex64], coeffs: &ReducedCoefficients) -> Complex64 {
    let nf = n as f64;
    let sum: Complex64 = roots.iter().sum();
    sum * (2.0 * (nf - 1.0) + coeffs.charge_sum())
        - nf * (nf - 1.0) * (coeffs.lambda + 1.0)
        - nf * coeffs.linear_term()
}

/// Coupling `v2` implied by a root configuration, possibly complex.
///
/// `σ` depends on `v2` only through `-v2/(4g)`, so
/// `v2 = 4g (σ|_{v2=0} - σ_roots)`.
pub fn v2_from_roots_complex(
    n: usize,
    roots: &[Complex64],
    v1: f64,
    v3: f64,
    g: f64,
    e: f64,
) -> Result<Complex64> {
    if roots.len() != n {
        return Err(QesError::InvalidConfig(format!(
            "expected {n} roots, got {}",
            roots.len()
        )));
    }
    let coeffs = reduce(&PotentialParams::new(v1, 0.0, v3, g), e)?;
    let target = sigma_from_roots(n, roots, &coeffs);
    Ok((c(coeffs.sigma, 0.0) - target) * (4.0 * g))
}

/// Real coupling `v2`; fails with [`QesError::Unphysical`] when the
/// imaginary part exceeds [`REAL_V2_TOL`].
pub fn v2_from_roots(
    n: usize,
    roots: &[Complex64],
    v1: f64,
    v3: f64,
    g: f64,
    e: f64,
) -> Result<f64> {
    let v2 = v2_from_roots_complex(n, roots, v1, v3, g, e)?;
    if v2.im.abs() > REAL_V2_TOL {
        return Err(QesError::Unphysical(v2.im));
    }
    Ok(v2.re)
}

/// Solves the root equations for degree `n` by multistart Newton.
///
/// `coeffs` must be the reduced coefficients at the degree-`n` energy (see
/// [`level_coefficients`]); their `σ` is ignored. For `n = 0` the single
/// empty configuration is returned.
pub fn solve_bae(
    n: usize,
    coeffs: &ReducedCoefficients,
    strategy: &SeedStrategy,
) -> BetheSolveReport {
    let (v1, v3, g, e) = coeffs.shape_parameters();
    let extract = |roots: &[Complex64]| {
        v2_from_roots_complex(n, roots, v1, v3, g, e).unwrap_or(c(f64::NAN, f64::NAN))
    };
    if n == 0 {
        let v2 = extract(&[]);
        return BetheSolveReport {
            n,
            states: vec![BetheState {
                n,
                roots: Vec::new(),
                residual: 0.0,
                v2: v2.re,
                v2_imag: v2.im,
                is_physical: v2.im.abs() <= REAL_V2_TOL,
            }],
            starts: 0,
            failed_starts: 0,
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(fingerprint(n, coeffs));
    let mut found: Vec<BetheState> = Vec::new();
    let mut failed = 0;
    let total = strategy.warm_starts.len() + strategy.starts;

    for index in 0..total {
        let start = if index < strategy.warm_starts.len() {
            strategy.warm_starts[index].clone()
        } else {
            seed(
                &mut rng,
                n,
                coeffs.lambda,
                index - strategy.warm_starts.len(),
            )
        };
        if start.len() != n {
            failed += 1;
            continue;
        }
        let Some(raw) = newton(&start, coeffs, strategy.max_iterations) else {
            failed += 1;
            continue;
        };
        if !well_separated(&raw, coeffs.lambda) {
            failed += 1;
            continue;
        }
        let (mut roots, closed) = match symmetrize(&raw) {
            Some(sym) => (sym, true),
            None => (raw, false),
        };
        poly::sort_lexicographic(&mut roots);
        let Ok(res) = bae_residual(&roots, coeffs) else {
            failed += 1;
            continue;
        };
        let residual = max_norm(&res);
        if residual >= RESIDUAL_TOL {
            failed += 1;
            continue;
        }
        if let Some(existing) = found
            .iter_mut()
            .find(|s| same_configuration(&s.roots, &roots))
        {
            if residual < existing.residual {
                existing.roots = roots;
                existing.residual = residual;
            }
            continue;
        }
        found.push(BetheState {
            n,
            roots,
            residual,
            v2: 0.0,
            v2_imag: 0.0,
            is_physical: closed,
        });
    }

    for state in &mut found {
        let v2 = extract(&state.roots);
        state.v2 = v2.re;
        state.v2_imag = v2.im;
        state.is_physical = state.is_physical && v2.im.abs() <= REAL_V2_TOL;
    }
    found.sort_by(|a, b| {
        a.v2.total_cmp(&b.v2).then_with(|| {
            a.roots
                .iter()
                .zip(&b.roots)
                .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });

    BetheSolveReport {
        n,
        states: found,
        starts: total,
        failed_starts: failed,
    }
}

/// Both roots of the degree-one equation `Q(z) = 0`:
///
/// ```text
/// z = (λδ + λγ + γ + ε ± √((λ-1)²γ² + 2(λ-1)(λδ-ε)γ + (λδ+ε)²)) / (2(γ+δ+ε))
/// ```
///
/// Returned as `[+, -]`.
pub fn n1_closed_form(coeffs: &ReducedCoefficients) -> Result<[Complex64; 2]> {
    let ReducedCoefficients {
        gamma,
        delta,
        epsilon,
        lambda,
        ..
    } = *coeffs;
    let denom = 2.0 * coeffs.charge_sum();
    if denom.abs() < 2.0 * SINGULAR_TOL {
        return Err(QesError::Singular("γ + δ + ε vanishes".into()));
    }
    let disc = (lambda - 1.0).powi(2) * gamma * gamma
        + 2.0 * (lambda - 1.0) * (lambda * delta - epsilon) * gamma
        + (lambda * delta + epsilon).powi(2);
    let root = c(disc, 0.0).sqrt();
    let num = lambda * delta + lambda * gamma + gamma + epsilon;
    Ok([(num + root) / denom, (num - root) / denom])
}

/// Value of the logarithmic interaction energy of a configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectrostaticEnergy {
    /// `U` built from principal-branch complex logarithms; the real part is
    /// the usual `ln|·|` form.
    pub value: Complex64,
    /// Some logarithm argument lies within `1e-6` of the negative real axis
    /// without being on it, so finite differences may straddle the cut.
    pub near_branch_cut: bool,
}

/// `U = -2 Σ_{j<k} ln(z_k - z_j) - Σ_k (γ ln z_k + δ ln(z_k - 1) + ε ln(z_k - λ))`.
///
/// Each unordered pair is counted once, so that `∂U/∂z_k` reproduces the
/// root equations exactly.
pub fn electrostatic_energy(
    roots: &[Complex64],
    coeffs: &ReducedCoefficients,
) -> Result<ElectrostaticEnergy> {
    let mut near_cut = false;
    let mut log = |w: Complex64| {
        if w.re < 0.0 && w.im != 0.0 && w.im.abs() < 1e-6 {
            near_cut = true;
        }
        w.ln()
    };
    let mut u = c(0.0, 0.0);
    for (k, &zk) in roots.iter().enumerate() {
        for &zj in &roots[..k] {
            let d = zk - zj;
            if d.norm() < SINGULAR_TOL {
                return Err(QesError::Singular("coincident roots".into()));
            }
            u -= 2.0 * log(d);
        }
        for (center, charge) in [
            (0.0, coeffs.gamma),
            (1.0, coeffs.delta),
            (coeffs.lambda, coeffs.epsilon),
        ] {
            let d = zk - center;
            if d.norm() < SINGULAR_TOL {
                return Err(QesError::Singular(format!(
                    "root on the force center {center}"
                )));
            }
            u -= charge * log(d);
        }
    }
    Ok(ElectrostaticEnergy {
        value: u,
        near_branch_cut: near_cut,
    })
}

/// Central-difference gradient of [`electrostatic_energy`] along each
/// coordinate.
pub fn electrostatic_gradient(
    roots: &[Complex64],
    coeffs: &ReducedCoefficients,
    step: f64,
) -> Result<Vec<Complex64>> {
    let mut grad = Vec::with_capacity(roots.len());
    let mut z = roots.to_vec();
    for k in 0..roots.len() {
        z[k] = roots[k] + step;
        let up = electrostatic_energy(&z, coeffs)?.value;
        z[k] = roots[k] - step;
        let down = electrostatic_energy(&z, coeffs)?.value;
        z[k] = roots[k];
        grad.push((up - down) / (2.0 * step));
    }
    Ok(grad)
}

/// JSON shape of one solution: roots as `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionRecord {
    pub roots: Vec<[f64; 2]>,
    pub residual: f64,
    pub v2: f64,
    pub is_physical: bool,
}

impl From<&BetheState> for SolutionRecord {
    fn from(s: &BetheState) -> Self {
        Self {
            roots: s.roots.iter().map(|z| [z.re, z.im]).collect(),
            residual: s.residual,
            v2: s.v2,
            is_physical: s.is_physical,
        }
    }
}

/// Per-level report `{n, E, solutions: [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetheLevelReport {
    pub n: usize,
    #[serde(rename = "E")]
    pub energy: f64,
    pub solutions: Vec<SolutionRecord>,
    #[serde(skip)]
    pub starts: usize,
    #[serde(skip)]
    pub failed_starts: usize,
}

impl BetheLevelReport {
    /// Physical `v2` values as a [`QesLevel`].
    pub fn level(&self) -> QesLevel {
        let v2 = self
            .solutions
            .iter()
            .filter(|s| s.is_physical)
            .map(|s| s.v2)
            .collect();
        QesLevel::new(self.n, self.energy, v2, Method::Bethe)
    }

    /// No generated start converged at `n >= 1`.
    pub fn did_not_converge(&self) -> bool {
        self.n > 0 && self.solutions.is_empty()
    }
}

/// Energy, root equations and `v2` extraction for one level.
pub fn solve_level(
    n: usize,
    v1: f64,
    v3: f64,
    g: f64,
    strategy: &SeedStrategy,
) -> Result<BetheLevelReport> {
    let coeffs = level_coefficients(n, v1, v3, g)?;
    let e = energy(n, v1, v3, g)?;
    let report = solve_bae(n, &coeffs, strategy);
    Ok(BetheLevelReport {
        n,
        energy: e,
        solutions: report.states.iter().map(SolutionRecord::from).collect(),
        starts: report.starts,
        failed_starts: report.failed_starts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const V1: f64 = 0.09;
    const V3: f64 = 10.0;
    const G: f64 = 0.25;

    fn coeffs(n: usize) -> ReducedCoefficients {
        level_coefficients(n, V1, V3, G).unwrap()
    }

    fn real(xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| c(x, 0.0)).collect()
    }

    #[test]
    fn table_energies() {
        for (n, e) in [(0, -1.21), (1, -0.81), (2, -8.41), (3, -24.01)] {
            assert_abs_diff_eq!(energy(n, V1, V3, G).unwrap(), e, epsilon = 1e-12);
        }
        for n in 0..6 {
            let e = energy(n, 0.0, 0.0, 1.0).unwrap();
            assert_abs_diff_eq!(e, -((2 * n + 1) as f64).powi(2), epsilon = 1e-12);
            assert!(
                energy_condition_residual(n, 0.0, 0.0, 1.0, e)
                    .unwrap()
                    .abs()
                    < 1e-10
            );
        }
        assert!(energy(0, 0.3, V3, G).is_err());
        assert!(energy(0, V1, -1.5, G).is_err());
    }

    #[test]
    fn closed_form_degree_one() {
        let k = coeffs(1);
        let [plus, minus] = n1_closed_form(&k).unwrap();
        // (8 ± √65) / (-0.2)
        assert_abs_diff_eq!(plus.re, (8.0 + 65f64.sqrt()) / -0.2, epsilon = 1e-9);
        assert_abs_diff_eq!(minus.re, (8.0 - 65f64.sqrt()) / -0.2, epsilon = 1e-9);
        for z in [plus, minus] {
            assert_eq!(z.im, 0.0);
            assert!(max_norm(&bae_residual(&[z], &k).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn closed_form_rejects_zero_charge() {
        let mut k = coeffs(1);
        k.epsilon = -(k.gamma + k.delta);
        assert!(matches!(n1_closed_form(&k), Err(QesError::Singular(_))));
    }

    #[test]
    fn published_degree_two_roots_satisfy_equations() {
        let k = coeffs(2);
        for pair in [
            vec![c(9.714045208, 0.0), c(0.2859547921, 0.0)],
            vec![c(0.6953879418, 0.0), c(0.1092848103, 0.0)],
            vec![c(7.229242571, -4.010375187), c(7.229242571, 4.010375187)],
        ] {
            assert!(max_norm(&bae_residual(&pair, &k).unwrap()) < 1e-6);
        }
    }

    #[test]
    fn singular_configurations() {
        let k = coeffs(2);
        assert!(bae_residual(&real(&[1.0, 3.0]), &k).is_err());
        assert!(bae_residual(&real(&[2.0, 2.0]), &k).is_err());
        assert!(bae_residual(&real(&[k.lambda, 2.0]), &k).is_err());
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let k = coeffs(3);
        let z = vec![c(0.3, 0.1), c(2.2, -0.4), c(7.0, 0.8)];
        let jac = bae_jacobian(&z, &k);
        let h = 1e-6;
        for j in 0..3 {
            let mut up = z.clone();
            up[j] += h;
            let mut dn = z.clone();
            dn[j] -= h;
            let fu = bae_residual(&up, &k).unwrap();
            let fd = bae_residual(&dn, &k).unwrap();
            for i in 0..3 {
                let fdiff = (fu[i] - fd[i]) / (2.0 * h);
                assert!((fdiff - jac[(i, j)]).norm() < 1e-6 * (1.0 + fdiff.norm()));
            }
        }
    }

    #[test]
    fn degree_zero_solution() {
        let report = solve_bae(0, &coeffs(0), &SeedStrategy::default());
        assert_eq!(report.states.len(), 1);
        let s = &report.states[0];
        assert!(s.roots.is_empty());
        assert_abs_diff_eq!(s.v2, -9.0, epsilon = 1e-12);
    }

    #[test]
    fn degree_one_multistart_finds_closed_form() {
        let k = coeffs(1);
        let report = solve_bae(1, &k, &SeedStrategy::default());
        let [plus, minus] = n1_closed_form(&k).unwrap();
        assert_eq!(report.states.len(), 2);
        for z in [plus, minus] {
            assert!(report.states.iter().any(|s| (s.roots[0] - z).norm() < 1e-8));
        }
        let v2: Vec<f64> = report.states.iter().map(|s| s.v2).collect();
        assert_abs_diff_eq!(v2[0], -8.531128874, epsilon = 1e-6);
        assert_abs_diff_eq!(v2[1], -0.4688711258, epsilon = 1e-6);
    }

    #[test]
    fn degree_two_multistart_finds_all_three() {
        let report = solve_bae(2, &coeffs(2), &SeedStrategy::default());
        let v2: Vec<f64> = report.physical().map(|s| s.v2).collect();
        assert_eq!(v2.len(), 3, "{report:?}");
        for (got, want) in v2.iter().zip([-17.47112177, -9.0, 8.471121770]) {
            assert!((got - want).abs() < 1e-6 * want.abs());
        }
        let complex = &report.states[0];
        assert_abs_diff_eq!(complex.roots[0].re, 7.229242571, epsilon = 1e-6);
        assert_abs_diff_eq!(complex.roots[0].im, -4.010375187, epsilon = 1e-6);
        assert_eq!(complex.roots[0], complex.roots[1].conj());
    }

    #[test]
    fn deterministic() {
        let a = solve_bae(3, &coeffs(3), &SeedStrategy::default());
        let b = solve_bae(3, &coeffs(3), &SeedStrategy::default());
        assert_eq!(a, b);
    }

    #[test]
    fn v2_extraction() {
        assert_abs_diff_eq!(
            v2_from_roots(0, &[], V1, V3, G, -1.21).unwrap(),
            -9.0,
            epsilon = 1e-12
        );
        let v2 = v2_from_roots(2, &real(&[9.714045208, 0.2859547921]), V1, V3, G, -8.41).unwrap();
        assert_abs_diff_eq!(v2, -9.0, epsilon = 1e-6);
        let lopsided = [c(7.0, 4.0), c(7.0, 3.0)];
        assert!(matches!(
            v2_from_roots(2, &lopsided, V1, V3, G, -8.41),
            Err(QesError::Unphysical(_))
        ));
        assert!(v2_from_roots(2, &real(&[1.0]), V1, V3, G, -8.41).is_err());
    }

    #[test]
    fn symmetrize_pairs_conjugates() {
        let z = [c(1.0, 1e-12), c(3.0, 2.0), c(3.0 + 1e-10, -2.0)];
        let s = symmetrize(&z).unwrap();
        assert_eq!(s[0].im, 0.0);
        assert_eq!(s[1], s[2].conj());
        assert!(symmetrize(&[c(3.0, 2.0), c(3.0, 1.0)]).is_none());
    }

    #[test]
    fn electrostatic_equilibrium() {
        let k1 = coeffs(1);
        for z in n1_closed_form(&k1).unwrap() {
            let grad = electrostatic_gradient(&[z], &k1, 1e-6).unwrap();
            assert!(grad[0].norm() < 1e-6, "{grad:?}");
        }
        let k2 = coeffs(2);
        let report = solve_bae(2, &k2, &SeedStrategy::default());
        for state in report.states.iter().filter(|s| s.is_real()) {
            let grad = electrostatic_gradient(&state.roots, &k2, 1e-6).unwrap();
            assert!(grad.iter().all(|g| g.norm() < 1e-6), "{grad:?}");
        }
        // away from equilibrium the gradient equals the (negated) root equations
        let z = real(&[0.4, 3.0]);
        let grad = electrostatic_gradient(&z, &k2, 1e-6).unwrap();
        let res = bae_residual(&z, &k2).unwrap();
        for (g, r) in grad.iter().zip(&res) {
            assert!((g - r).norm() < 1e-6);
        }
    }

    #[test]
    fn electrostatic_far_field() {
        let k = coeffs(1);
        let z = 1e6;
        let u = electrostatic_energy(&[c(z, 0.0)], &k).unwrap();
        let expected = -k.charge_sum() * z.ln();
        assert!((u.value.re - expected).abs() < 1e-5 * expected.abs().max(1.0));
        assert!(!u.near_branch_cut);
    }

    #[test]
    fn branch_cut_flag() {
        let k = coeffs(2);
        let u = electrostatic_energy(&[c(0.5, 1e-8), c(0.5, -1e-8)], &k).unwrap();
        assert!(u.near_branch_cut);
    }

    #[test]
    fn json_schema() {
        let report = solve_level(1, V1, V3, G, &SeedStrategy::default()).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        let obj = json.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["E", "n", "solutions"]);
        let sol = &json["solutions"][0];
        assert!(sol["roots"][0].as_array().unwrap().len() == 2);
        assert!(sol["is_physical"].as_bool().unwrap());
        assert!(sol["residual"].as_f64().unwrap() < RESIDUAL_TOL);
    }
}
