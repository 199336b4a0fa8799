//! One-parameter Darboux deformations of a Schrödinger operator.
//!
//! A seed is a nodeless, normalizable zero mode `F0` of `-c D² + V` at
//! energy `E₀`. In reduced units the potential reads `f = (V - E₀)/c`, the
//! log-derivative `Φ = -F0'/F0` solves `Φ² - Φ' = f`, and every member of the
//! family
//!
//! ```text
//! D(x)   = γ + σ ∫_a^x F0²
//! ψ̃(x)   = F0(x) / D(x)
//! Ṽ(x)   = c f(x) + E₀ - 2c (ln D)''(x)
//! ```
//!
//! keeps `E₀` as an eigenvalue with eigenfunction `ψ̃` and shares the
//! partner potential `c(Φ² + Φ') + E₀`. The orientation `σ = ±1` only
//! reparametrizes γ; it lets the oscillator (`γ + ∫`) and the radial
//! problem (`γ - ∫`) use their customary signs.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::specfun::adaptive_quadrature;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

const CUMULATIVE_TOL: f64 = 1e-13;

/// Sign σ in front of the running integral of the Bernoulli denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Plus => 1.0,
            Orientation::Minus => -1.0,
        }
    }
}

/// Factorization seed.
///
/// Only the potential and zero mode are mandatory. Missing log-derivatives
/// fall back to central differences of `F0` (step `ε^{1/3} max(1, |x|)`),
/// `Φ'` falls back to the Riccati identity `Φ' = Φ² - f`, and a missing
/// running norm falls back to adaptive quadrature.
#[derive(Clone)]
pub struct SeedSpec {
    domain: (f64, f64),
    potential: RealFn,
    ground_state: RealFn,
    log_derivative: Option<RealFn>,
    log_derivative_prime: Option<RealFn>,
    cumulative_norm: Option<RealFn>,
    total_norm: Option<f64>,
    orientation: Orientation,
    energy_offset: f64,
    scaling: f64,
}

impl fmt::Debug for SeedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeedSpec")
            .field("domain", &self.domain)
            .field("orientation", &self.orientation)
            .field("energy_offset", &self.energy_offset)
            .field("scaling", &self.scaling)
            .field("analytic_phi", &self.log_derivative.is_some())
            .field("closed_form_norm", &self.cumulative_norm.is_some())
            .finish()
    }
}

impl SeedSpec {
    /// `potential` is `f` in reduced units, i.e. `F0''/F0`.
    pub fn new<P, G>(domain: (f64, f64), potential: P, ground_state: G) -> Self
    where
        P: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        assert!(domain.0 < domain.1, "empty seed domain");
        Self {
            domain,
            potential: Arc::new(potential),
            ground_state: Arc::new(ground_state),
            log_derivative: None,
            log_derivative_prime: None,
            cumulative_norm: None,
            total_norm: None,
            orientation: Orientation::Plus,
            energy_offset: 0.0,
            scaling: 1.0,
        }
    }

    pub fn with_log_derivative<F>(mut self, phi: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.log_derivative = Some(Arc::new(phi));
        self
    }

    pub fn with_log_derivative_prime<F>(mut self, phi_prime: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.log_derivative_prime = Some(Arc::new(phi_prime));
        self
    }

    /// Closed form of `∫_a^x F0²` together with its limit at the right end.
    pub fn with_cumulative_norm<F>(mut self, cumulative: F, total: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.cumulative_norm = Some(Arc::new(cumulative));
        self.total_norm = Some(total);
        self
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_energy_offset(mut self, energy: f64) -> Self {
        self.energy_offset = energy;
        self
    }

    pub fn with_scaling(mut self, c: f64) -> Self {
        assert!(c > 0.0, "kinetic scaling must be positive");
        self.scaling = c;
        self
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn energy_offset(&self) -> f64 {
        self.energy_offset
    }

    pub fn scaling(&self) -> f64 {
        self.scaling
    }

    pub fn reduced_potential(&self, x: f64) -> f64 {
        (self.potential)(x)
    }

    /// `c f + E₀`, the undeformed potential in physical units.
    pub fn physical_potential(&self, x: f64) -> f64 {
        self.scaling * (self.potential)(x) + self.energy_offset
    }

    pub fn zero_mode(&self, x: f64) -> f64 {
        (self.ground_state)(x)
    }

    pub fn phi(&self, x: f64) -> Result<f64> {
        match &self.log_derivative {
            Some(phi) => Ok(phi(x)),
            None => log_derivative(&*self.ground_state, x),
        }
    }

    pub fn phi_prime(&self, x: f64) -> Result<f64> {
        match &self.log_derivative_prime {
            Some(d) => Ok(d(x)),
            None => {
                let phi = self.phi(x)?;
                Ok(phi * phi - (self.potential)(x))
            }
        }
    }

    /// W(x) = ∫_a^x F0².
    pub fn cumulative(&self, x: f64) -> Result<f64> {
        match &self.cumulative_norm {
            Some(w) => Ok(w(x)),
            None => {
                let f0 = &self.ground_state;
                let q = adaptive_quadrature(
                    |t| {
                        let v = f0(t);
                        v * v
                    },
                    self.domain.0,
                    x,
                    CUMULATIVE_TOL,
                )?;
                Ok(q.value)
            }
        }
    }

    /// S = ∫_a^b F0².
    pub fn total(&self) -> Result<f64> {
        let s = match self.total_norm {
            Some(s) => s,
            None => self.cumulative(self.domain.1).map_err(|e| match e {
                Error::QuadratureNonConvergence { .. } => {
                    Error::NonNormalizable(format!("integral of F0^2 does not converge ({e})"))
                }
                other => other,
            })?,
        };
        if s.is_finite() && s > 0.0 {
            Ok(s)
        } else {
            Err(Error::NonNormalizable(format!("integral of F0^2 is {s}")))
        }
    }

    /// First grid point where `F0 ≤ 0`, if any.
    pub fn first_node(&self, a: f64, b: f64, n: usize) -> Result<Option<f64>> {
        let g = GridFunction::sample(a, b, n, |x| self.zero_mode(x))?;
        let node = g
            .points()
            .find(|&(_, v)| v <= 0.0 || v.is_nan())
            .map(|(x, _)| x);
        Ok(node)
    }

    /// `Φ² - Φ' - f` on a grid, using the seed's own derivatives.
    pub fn riccati_residual(&self, a: f64, b: f64, n: usize) -> Result<GridFunction> {
        let g = GridFunction::sample(a, b, n, |_| 0.0)?;
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let x = g.x(i);
            let phi = self.phi(x)?;
            values.push(phi * phi - self.phi_prime(x)? - self.reduced_potential(x));
        }
        GridFunction::from_values(a, b, values)
    }
}

/// The deformation parameter γ together with its regularity verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaParameter {
    value: f64,
    regular: bool,
}

impl GammaParameter {
    /// Regular iff `γ + σW` keeps one sign on the closed range `W ∈ [0, S]`;
    /// the boundary values `γ = 0` and `γ = -σS` are singular. Infinite γ is
    /// the undeformed limit and counts as regular.
    pub fn classify(value: f64, orientation: Orientation, total: f64) -> Self {
        let regular = match orientation {
            Orientation::Plus => value > 0.0 || value < -total,
            Orientation::Minus => value < 0.0 || value > total,
        };
        Self { value, regular }
    }

    pub fn for_seed(seed: &SeedSpec, value: f64) -> Result<Self> {
        Ok(Self::classify(value, seed.orientation(), seed.total()?))
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }
}

/// Human-readable regularity domain for error messages.
pub fn regular_domain(orientation: Orientation, total: f64) -> String {
    match orientation {
        Orientation::Plus => format!("regular iff gamma > 0 or gamma < -{total}"),
        Orientation::Minus => format!("regular iff gamma < 0 or gamma > {total}"),
    }
}

/// Family member evaluator without the regularity gate.
///
/// Singular γ evaluates to whatever the formulas give, including infinities
/// at exact poles; callers that need regular members go through
/// [`Deformation::new`] or the free functions of this module.
#[derive(Debug, Clone, Copy)]
pub struct Deformation<'s> {
    seed: &'s SeedSpec,
    gamma: f64,
}

impl<'s> Deformation<'s> {
    pub fn new(seed: &'s SeedSpec, gamma: GammaParameter) -> Result<Self> {
        if !gamma.is_regular() {
            return Err(Error::IrregularGamma {
                gamma: gamma.value(),
                domain: regular_domain(seed.orientation(), seed.total()?),
            });
        }
        Ok(Self {
            seed,
            gamma: gamma.value(),
        })
    }

    pub fn allow_singular(seed: &'s SeedSpec, gamma: f64) -> Self {
        Self { seed, gamma }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// D(x) = γ + σ W(x).
    pub fn denominator(&self, x: f64) -> Result<f64> {
        if self.gamma.is_infinite() {
            return Ok(self.gamma);
        }
        Ok(self.gamma + self.seed.orientation().sign() * self.seed.cumulative(x)?)
    }

    /// v = F0² / D.
    pub fn bernoulli(&self, x: f64) -> Result<f64> {
        let f0 = self.seed.zero_mode(x);
        Ok(f0 * f0 / self.denominator(x)?)
    }

    /// v' = -2Φv - σv², from the linear equation for u = 1/v.
    pub fn bernoulli_prime(&self, x: f64) -> Result<f64> {
        let v = self.bernoulli(x)?;
        let sigma = self.seed.orientation().sign();
        Ok(-2.0 * self.seed.phi(x)? * v - sigma * v * v)
    }

    /// Φ_g = Φ + σv = -ψ̃'/ψ̃.
    pub fn general_riccati(&self, x: f64) -> Result<f64> {
        Ok(self.seed.phi(x)? + self.seed.orientation().sign() * self.bernoulli(x)?)
    }

    pub fn general_riccati_prime(&self, x: f64) -> Result<f64> {
        Ok(self.seed.phi_prime(x)? + self.seed.orientation().sign() * self.bernoulli_prime(x)?)
    }

    /// Ṽ = c f + E₀ + 2c (2σΦv + v²), which is `c f + E₀ - 2cσ v'`.
    pub fn potential(&self, x: f64) -> Result<f64> {
        let v = self.bernoulli(x)?;
        let sigma = self.seed.orientation().sign();
        let c = self.seed.scaling();
        let shift = if v == 0.0 {
            0.0
        } else {
            2.0 * c * (2.0 * sigma * self.seed.phi(x)? * v + v * v)
        };
        Ok(self.seed.physical_potential(x) + shift)
    }

    /// Unnormalized ground state F0 / D.
    pub fn ground_state(&self, x: f64) -> Result<f64> {
        Ok(self.seed.zero_mode(x) / self.denominator(x)?)
    }

    // Strict variants reject an exact zero of the denominator.
    fn checked<T>(&self, x: f64, eval: impl FnOnce(&Self) -> Result<T>) -> Result<T> {
        if self.denominator(x)? == 0.0 {
            return Err(Error::SingularFamily {
                gamma: self.gamma,
                x,
            });
        }
        eval(self)
    }
}

/// Φ = -F0'/F0 by central differences with step `ε^{1/3} max(1, |x|)`.
pub fn log_derivative<F: Fn(f64) -> f64 + ?Sized>(f0: &F, x: f64) -> Result<f64> {
    let value = f0(x);
    if value.is_nan() || value.abs() <= 1e-300 {
        return Err(Error::SingularSeed { x });
    }
    let h = f64::EPSILON.cbrt() * x.abs().max(1.0);
    let derivative = (f0(x + h) - f0(x - h)) / (2.0 * h);
    Ok(-derivative / value)
}

/// Pointwise Riccati residual `Φ² - Φ' - f` on `n` points of `[a, b]`.
pub fn riccati_residual<P, D, F>(
    phi: P,
    phi_prime: D,
    f: F,
    a: f64,
    b: f64,
    n: usize,
) -> Result<GridFunction>
where
    P: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    GridFunction::sample(a, b, n, |x| {
        let p = phi(x);
        p * p - phi_prime(x) - f(x)
    })
}

pub fn bernoulli_reciprocal(seed: &SeedSpec, gamma: GammaParameter, x: f64) -> Result<f64> {
    let d = Deformation::new(seed, gamma)?;
    d.checked(x, |d| d.bernoulli(x))
}

pub fn deform_potential(seed: &SeedSpec, gamma: GammaParameter, x: f64) -> Result<f64> {
    let d = Deformation::new(seed, gamma)?;
    d.checked(x, |d| d.potential(x))
}

pub fn deform_ground_state(seed: &SeedSpec, gamma: GammaParameter, x: f64) -> Result<f64> {
    let d = Deformation::new(seed, gamma)?;
    d.checked(x, |d| d.ground_state(x))
}

/// N(γ) with N² = γ(γ + σS)/S, so that `N² ∫ (F0/D)² = 1`.
pub fn norm_const_closed_form(gamma: f64, orientation: Orientation, total: f64) -> f64 {
    if gamma.is_infinite() {
        return f64::INFINITY;
    }
    (gamma * (gamma + orientation.sign() * total) / total).sqrt()
}

pub fn deformed_norm_const(seed: &SeedSpec, gamma: GammaParameter) -> Result<f64> {
    let total = seed.total()?;
    if !gamma.is_regular() {
        return Err(Error::IrregularGamma {
            gamma: gamma.value(),
            domain: regular_domain(seed.orientation(), total),
        });
    }
    Ok(norm_const_closed_form(
        gamma.value(),
        seed.orientation(),
        total,
    ))
}

/// Roots of `γ² + σSγ - S·N²_target = 0`, returned as `(larger, smaller)`.
///
/// Both roots are regular: one in each branch of the regularity domain.
pub fn matched_gamma_pair(total: f64, orientation: Orientation, target_norm_sq: f64) -> (f64, f64) {
    assert!(total > 0.0 && target_norm_sq > 0.0);
    let b = orientation.sign() * total;
    let c = -total * target_norm_sq;
    let disc = (b * b - 4.0 * c).sqrt();
    // Avoid cancellation: compute the large-magnitude root first.
    let q = -0.5 * (b + b.signum() * disc);
    let (r1, r2) = (q, c / q);
    (r1.max(r2), r1.min(r2))
}

/// Non-parametric partner `c(f + 2Φ') + E₀`, shared by the whole family.
pub fn partner_potential(seed: &SeedSpec, x: f64) -> Result<f64> {
    Ok(
        seed.scaling() * (seed.reduced_potential(x) + 2.0 * seed.phi_prime(x)?)
            + seed.energy_offset(),
    )
}

/// A sampled family member.
#[derive(Debug, Clone)]
pub struct DeformedFamilyMember {
    pub gamma: GammaParameter,
    pub v_tilde: GridFunction,
    pub psi0: GridFunction,
    pub norm_const: f64,
    pub s_total: f64,
}

impl DeformedFamilyMember {
    pub fn build(seed: &SeedSpec, gamma: GammaParameter, a: f64, b: f64, n: usize) -> Result<Self> {
        let norm_const = deformed_norm_const(seed, gamma)?;
        let deformation = Deformation::new(seed, gamma)?;
        let grid = GridFunction::sample(a, b, n, |_| 0.0)?;
        let mut potential = Vec::with_capacity(n);
        let mut psi = Vec::with_capacity(n);
        for i in 0..n {
            let x = grid.x(i);
            potential.push(deformation.checked(x, |d| d.potential(x))?);
            psi.push(deformation.ground_state(x)?);
        }
        Ok(Self {
            gamma,
            v_tilde: GridFunction::from_values(a, b, potential)?,
            psi0: GridFunction::from_values(a, b, psi)?,
            norm_const,
            s_total: seed.total()?,
        })
    }
}

/// Reflectionless well `V = -2 sech² x` (c = 1) with its bound state
/// `sech x` at `E₀ = -1`. Only the potential and the zero mode are given,
/// so every derived quantity goes through the generic fallbacks.
pub fn sech_squared_seed() -> SeedSpec {
    SeedSpec::new(
        (f64::NEG_INFINITY, f64::INFINITY),
        |x: f64| 1.0 - 2.0 / x.cosh().powi(2),
        |x: f64| 1.0 / x.cosh(),
    )
    .with_energy_offset(-1.0)
}
