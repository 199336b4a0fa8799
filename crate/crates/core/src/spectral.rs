//! Finite-difference certification of spectra and eigenpairs.
//!
//! `-cD² + V` is discretized with the 3-point stencil on the interior nodes
//! `x_i = a + (i+1)h`, `h = (b-a)/(n+1)`, with Dirichlet conditions at both
//! ends. The lowest eigenvalues come from Sturm-count bisection, and each
//! one is paired with an inverse-iteration eigenvector to report a residual.

use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute bisection tolerance on each eigenvalue.
pub const EIGENVALUE_TOLERANCE: f64 = 1e-10;

/// Eigenpair residuals are accepted below this multiple of `‖H‖∞`.
pub const RELATIVE_RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridMetadata {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: f64,
}

/// Symmetric tridiagonal matrix with constant off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteHamiltonian {
    grid: GridMetadata,
    scaling: f64,
    diagonal: Vec<f64>,
    off_diagonal: f64,
}

impl DiscreteHamiltonian {
    pub fn size(&self) -> usize {
        self.diagonal.len()
    }

    pub fn grid(&self) -> GridMetadata {
        self.grid
    }

    pub fn scaling(&self) -> f64 {
        self.scaling
    }

    pub fn node(&self, i: usize) -> f64 {
        self.grid.min + (i + 1) as f64 * self.grid.spacing
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> f64 {
        self.off_diagonal
    }

    pub fn norm_inf(&self) -> f64 {
        let e = self.off_diagonal.abs();
        self.diagonal
            .iter()
            .map(|d| d.abs() + 2.0 * e)
            .fold(0.0, f64::max)
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let e2 = self.off_diagonal * self.off_diagonal;
        let pivmin = f64::MIN_POSITIVE.max(f64::EPSILON * e2);
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diagonal.iter().enumerate() {
            q = if i == 0 {
                d - lambda
            } else {
                d - lambda - e2 / q
            };
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let e = 2.0 * self.off_diagonal.abs();
        let (lo, hi) = self
            .diagonal
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &d| {
                (lo.min(d - e), hi.max(d + e))
            });
        let pad = f64::EPSILON * lo.abs().max(hi.abs()) + EIGENVALUE_TOLERANCE;
        (lo - pad, hi + pad)
    }

    /// The `j`-th eigenvalue (0-based) by bisection, searching above `floor`.
    fn bisect(&self, j: usize, floor: f64, ceiling: f64) -> f64 {
        let (mut lo, mut hi) = (floor, ceiling);
        loop {
            let mid = 0.5 * (lo + hi);
            let width = EIGENVALUE_TOLERANCE.min(f64::EPSILON * 4.0 * lo.abs().max(hi.abs()));
            if hi - lo <= width.max(EIGENVALUE_TOLERANCE * 1e-2) || mid <= lo || mid >= hi {
                return mid;
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// `H v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.size();
        let e = self.off_diagonal;
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i] * v[i];
                if i > 0 {
                    s += e * v[i - 1];
                }
                if i + 1 < n {
                    s += e * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Eigenvector for an (accurate) eigenvalue by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.size();
        let lu = ShiftedLu::new(self, lambda);
        // Deterministic start with components along every eigenvector.
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64) * 0.7).sin())
            .collect();
        for _ in 0..3 {
            lu.solve(&mut v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                break;
            }
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }

    /// `‖Hv - λv‖₂ / ‖v‖₂`.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        let hv = self.apply(v);
        let num: f64 = hv
            .iter()
            .zip(v)
            .map(|(h, x)| (h - lambda * x).powi(2))
            .sum();
        let den: f64 = v.iter().map(|x| x * x).sum();
        (num / den).sqrt()
    }
}

/// Partial-pivoting LU of `H - λI`, stored as in LAPACK's `dgttrf`.
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(h: &DiscreteHamiltonian, lambda: f64) -> Self {
        let n = h.size();
        let e = h.off_diagonal;
        let mut dl = vec![e; n.saturating_sub(1)];
        let mut d: Vec<f64> = h.diagonal.iter().map(|x| x - lambda).collect();
        let mut du = vec![e; n.saturating_sub(1)];
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                let fact = if d[i] != 0.0 { dl[i] / d[i] } else { 0.0 };
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        // Exact singularity only perturbs the solution's scale.
        let tiny = f64::EPSILON * h.norm_inf().max(1.0);
        for x in d.iter_mut() {
            if x.abs() < tiny {
                *x = if *x < 0.0 { -tiny } else { tiny };
            }
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.du[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.du2[i] * b[i + 2];
            }
            b[i] = s / self.d[i];
        }
    }
}

/// Discretizes `-cD² + V` on the `points` interior nodes of `(a, b)`.
pub fn build_hamiltonian<F: Fn(f64) -> f64>(
    potential: F,
    a: f64,
    b: f64,
    points: usize,
    scaling: f64,
) -> Result<DiscreteHamiltonian> {
    if points == 0 {
        return Err(Error::InvalidGrid(
            "need at least 1 interior point".to_string(),
        ));
    }
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::InvalidGrid(format!(
            "need finite min < max, got [{a}, {b}]"
        )));
    }
    let h = (b - a) / (points + 1) as f64;
    let grid = GridMetadata {
        min: a,
        max: b,
        points,
        spacing: h,
    };
    let kinetic = scaling / (h * h);
    let mut diagonal = Vec::with_capacity(points);
    for i in 0..points {
        let x = a + (i + 1) as f64 * h;
        let v = potential(x);
        if !v.is_finite() {
            return Err(Error::NonFinitePotential { index: i, x });
        }
        diagonal.push(v + 2.0 * kinetic);
    }
    Ok(DiscreteHamiltonian {
        grid,
        scaling,
        diagonal,
        off_diagonal: -kinetic,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub family: Option<String>,
    pub gamma: Option<f64>,
    pub grid: GridMetadata,
    pub scaling: f64,
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    pub residual_tolerance: f64,
    pub converged: bool,
}

impl SpectrumReport {
    pub fn with_tag(mut self, family: impl Into<String>, gamma: Option<f64>) -> Self {
        self.family = Some(family.into());
        self.gamma = gamma;
        self
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Largest `|λ_i - reference_i|` over the common prefix.
    pub fn max_deviation(&self, reference: &[f64]) -> f64 {
        self.eigenvalues
            .iter()
            .zip(reference)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The `k` lowest eigenvalues with their eigenpair residuals.
pub fn lowest_eigenvalues(h: &DiscreteHamiltonian, k: usize) -> Result<SpectrumReport> {
    if k == 0 || k > h.size() {
        return Err(Error::TooManyEigenvalues { k, size: h.size() });
    }
    let (lo, hi) = h.gershgorin();
    let mut eigenvalues = Vec::with_capacity(k);
    let mut floor = lo;
    for j in 0..k {
        let lambda = h.bisect(j, floor, hi);
        eigenvalues.push(lambda);
        floor = lambda - EIGENVALUE_TOLERANCE;
    }
    let residuals: Vec<f64> = eigenvalues
        .iter()
        .map(|&l| h.residual(l, &h.eigenvector(l)))
        .collect();
    let residual_tolerance = RELATIVE_RESIDUAL_TOLERANCE * h.norm_inf().max(1.0);
    let increasing = eigenvalues.windows(2).all(|w| w[0] < w[1]);
    let converged = increasing && residuals.iter().all(|&r| r <= residual_tolerance);
    Ok(SpectrumReport {
        family: None,
        gamma: None,
        grid: h.grid,
        scaling: h.scaling,
        eigenvalues,
        residuals,
        residual_tolerance,
        converged,
    })
}

/// `‖(-cD² + V - E)ψ‖₂ / ‖ψ‖₂` on `points` nodes of `[a, b]` (endpoints
/// included) with the 5-point Laplacian, evaluated where the stencil fits.
pub fn eigen_residual<V, P>(
    potential: V,
    psi: P,
    energy: f64,
    a: f64,
    b: f64,
    points: usize,
    scaling: f64,
) -> f64
where
    V: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
{
    if points < 5 || a >= b {
        return f64::NAN;
    }
    let h = (b - a) / (points - 1) as f64;
    let x = |i: usize| a + i as f64 * h;
    let values: Vec<f64> = (0..points).map(|i| psi(x(i))).collect();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 2..points - 2 {
        let lap = (-values[i - 2] + 16.0 * values[i - 1] - 30.0 * values[i] + 16.0 * values[i + 1]
            - values[i + 2])
            / (12.0 * h * h);
        let r = -scaling * lap + (potential(x(i)) - energy) * values[i];
        num += r * r;
        den += values[i] * values[i];
    }
    (num / den).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator;
    use std::f64::consts::PI;

    #[test]
    fn box_spectrum() {
        let h = build_hamiltonian(|_| 0.0, 0.0, PI, 2000, 0.5).unwrap();
        let report = lowest_eigenvalues(&h, 3).unwrap();
        for (k, &l) in report.eigenvalues.iter().enumerate() {
            let exact = 0.5 * ((k + 1) as f64).powi(2);
            assert!((l - exact).abs() < 1e-5, "{l} vs {exact}");
        }
        assert!(report.converged, "{report:?}");
    }

    #[test]
    fn box_matches_discrete_formula() {
        // Exact eigenvalues of the discrete Laplacian: (2c/h²)(1 - cos(jπ/(n+1))).
        let n = 50;
        let hm = build_hamiltonian(|_| 0.0, 0.0, 1.0, n, 1.0).unwrap();
        let step = 1.0 / (n + 1) as f64;
        let report = lowest_eigenvalues(&hm, 5).unwrap();
        for (j, &l) in report.eigenvalues.iter().enumerate() {
            let exact = 2.0 / (step * step) * (1.0 - ((j + 1) as f64 * PI / (n + 1) as f64).cos());
            assert!((l - exact).abs() < 1e-9, "{l} vs {exact}");
        }
    }

    #[test]
    fn oscillator_spectrum() {
        let h = build_hamiltonian(|x| 0.5 * x * x, -10.0, 10.0, 4000, 0.5).unwrap();
        let report = lowest_eigenvalues(&h, 6).unwrap();
        for (k, &l) in report.eigenvalues.iter().enumerate() {
            assert!((l - (k as f64 + 0.5)).abs() < 2e-4, "{l}");
        }
        assert!(report.converged);
    }

    #[test]
    fn hydrogen_ground_state() {
        let h = build_hamiltonian(|r| -2.0 / r, 0.0, 60.0, 6000, 1.0).unwrap();
        let report = lowest_eigenvalues(&h, 1).unwrap();
        assert!(
            (report.eigenvalues[0] + 1.0).abs() < 1e-3,
            "{:?}",
            report.eigenvalues
        );
    }

    #[test]
    fn deformed_oscillator_is_isospectral() {
        let h = build_hamiltonian(
            |x| oscillator::mielnik_potential(1.0, x).unwrap(),
            -10.0,
            10.0,
            4000,
            0.5,
        )
        .unwrap();
        let report = lowest_eigenvalues(&h, 6).unwrap();
        for (k, &l) in report.eigenvalues.iter().enumerate() {
            assert!((l - (k as f64 + 0.5)).abs() < 2e-4, "{l}");
        }
    }

    #[test]
    fn grid_convergence_is_second_order() {
        let err = |n| {
            let h = build_hamiltonian(|x| 0.5 * x * x, -10.0, 10.0, n, 0.5).unwrap();
            (lowest_eigenvalues(&h, 1).unwrap().eigenvalues[0] - 0.5).abs()
        };
        // n + 1 intervals: 500 → 1000 halves h.
        let ratio = err(499) / err(999);
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn errors() {
        let err = build_hamiltonian(|x| 1.0 / x, -1.0, 1.0, 1, 1.0).unwrap_err();
        assert_eq!(err, Error::NonFinitePotential { index: 0, x: 0.0 });
        let h = build_hamiltonian(|_| 0.0, 0.0, 1.0, 5, 1.0).unwrap();
        assert!(matches!(
            lowest_eigenvalues(&h, 6),
            Err(Error::TooManyEigenvalues { k: 6, size: 5 })
        ));
        assert!(lowest_eigenvalues(&h, 0).is_err());
        assert!(build_hamiltonian(|_| 0.0, 1.0, 0.0, 5, 1.0).is_err());
    }

    #[test]
    fn residual_examples() {
        let r = eigen_residual(
            |x| 0.5 * x * x,
            |x| (-0.5 * x * x).exp(),
            0.5,
            -10.0,
            10.0,
            4000,
            0.5,
        );
        assert!(r < 1e-8, "{r}");
        let r = eigen_residual(
            |x| oscillator::mielnik_potential(0.5, x).unwrap(),
            |x| oscillator::mielnik_ground_state(0.5, x).unwrap(),
            0.5,
            -10.0,
            10.0,
            4000,
            0.5,
        );
        assert!(r < 1e-6, "{r}");
        // Opposite sign of the derivative term: x²/2 + d/dx[e^{-x²}/(γ + I)] = x²/2 - 2xv - v².
        let plus = |x: f64| {
            let v = (-x * x).exp() / oscillator::denominator(0.5, x);
            0.5 * x * x - 2.0 * x * v - v * v
        };
        let r = eigen_residual(
            plus,
            |x| oscillator::mielnik_ground_state(0.5, x).unwrap(),
            0.5,
            -10.0,
            10.0,
            4000,
            0.5,
        );
        assert!(r > 1e-1, "{r}");
    }

    #[test]
    fn eigenvector_matches_ground_state() {
        let h = build_hamiltonian(|x| 0.5 * x * x, -8.0, 8.0, 1599, 0.5).unwrap();
        let report = lowest_eigenvalues(&h, 1).unwrap();
        let v = h.eigenvector(report.eigenvalues[0]);
        let sign = v[800].signum();
        let norm = (v.iter().map(|x| x * x).sum::<f64>() * h.grid().spacing).sqrt();
        for i in (0..1599).step_by(100) {
            let want = oscillator::undeformed_ground_state(h.node(i));
            assert!((sign * v[i] / norm - want).abs() < 1e-4);
        }
    }

    #[test]
    fn report_serializes() {
        let h = build_hamiltonian(|_| 0.0, 0.0, 1.0, 10, 1.0).unwrap();
        let report = lowest_eigenvalues(&h, 2).unwrap().with_tag("box", None);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"family\":\"box\""));
        assert!(json.contains("\"eigenvalues\""));
    }
}
