//! One-parameter deformations of the harmonic oscillator `H = -½D² + ½x²`.
//!
//! With `I(x) = ∫_{-∞}^x e^{-t²} dt` and `v = e^{-x²}/(γ + I(x))`:
//!
//! ```text
//! Ṽ(x;γ)  = x²/2 - v'(x) = x²/2 + 2xv + v²
//! Ψ̃₀(x;γ) = e^{-x²/2} / (γ + I(x))
//! N₀(γ)   = sqrt(γ(γ/√π + 1))
//! ```
//!
//! Members are regular for `γ > 0` or `γ < -√π`. The involution
//! `γ ↦ -γ - √π` maps a member onto its mirror image.

use crate::darboux::{self, GammaParameter, Orientation, SeedSpec};
use crate::error::{Error, Result};
use crate::specfun::{gauss_integral, SQRT_PI};

pub const GROUND_ENERGY: f64 = 0.5;
pub const SCALING: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorFamily {
    gamma: GammaParameter,
}

impl OscillatorFamily {
    pub fn new(gamma: f64) -> Result<Self> {
        let gamma = classify(gamma);
        if !gamma.is_regular() {
            return Err(forbidden(gamma.value()));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> GammaParameter {
        self.gamma
    }

    pub fn potential(&self, x: f64) -> f64 {
        potential_unchecked(self.gamma.value(), x)
    }

    pub fn ground_state(&self, x: f64) -> f64 {
        ground_state_unchecked(self.gamma.value(), x)
    }

    pub fn norm_const(&self) -> f64 {
        darboux::norm_const_closed_form(self.gamma.value(), Orientation::Plus, SQRT_PI)
    }

    pub fn normalized_ground_state(&self, x: f64) -> f64 {
        if self.gamma.value().is_infinite() {
            return undeformed_ground_state(x);
        }
        self.norm_const() * self.ground_state(x)
    }
}

/// The generic-engine seed: `F0 = e^{-x²/2}`, `Φ = x`, `c = ½`, `E₀ = ½`.
pub fn seed() -> SeedSpec {
    SeedSpec::new(
        (f64::NEG_INFINITY, f64::INFINITY),
        |x| x * x - 1.0,
        |x: f64| (-0.5 * x * x).exp(),
    )
    .with_log_derivative(|x| x)
    .with_log_derivative_prime(|_| 1.0)
    .with_cumulative_norm(gauss_integral, SQRT_PI)
    .with_scaling(SCALING)
    .with_energy_offset(GROUND_ENERGY)
}

pub fn classify(gamma: f64) -> GammaParameter {
    GammaParameter::classify(gamma, Orientation::Plus, SQRT_PI)
}

fn forbidden(gamma: f64) -> Error {
    Error::IrregularGamma {
        gamma,
        domain: "gamma should not be in the forbidden interval [-sqrt(pi), 0]".to_string(),
    }
}

fn checked(gamma: f64) -> Result<()> {
    if classify(gamma).is_regular() {
        Ok(())
    } else {
        Err(forbidden(gamma))
    }
}

/// γ + I(x). For x > 0 the tail is subtracted from `γ + √π` so the value
/// stays accurate when it approaches `γ + √π`.
pub fn denominator(gamma: f64, x: f64) -> f64 {
    if gamma.is_infinite() {
        gamma
    } else if x <= 0.0 {
        gamma + gauss_integral(x)
    } else {
        (gamma + SQRT_PI) - crate::specfun::gauss_tail(x)
    }
}

fn bernoulli(gamma: f64, x: f64) -> f64 {
    (-x * x).exp() / denominator(gamma, x)
}

/// Ṽ(x;γ) without the regularity gate; poles of singular members come out
/// as huge or infinite values.
pub fn potential_unchecked(gamma: f64, x: f64) -> f64 {
    let v = bernoulli(gamma, x);
    0.5 * x * x + 2.0 * x * v + v * v
}

pub fn ground_state_unchecked(gamma: f64, x: f64) -> f64 {
    (-0.5 * x * x).exp() / denominator(gamma, x)
}

pub fn mielnik_potential(gamma: f64, x: f64) -> Result<f64> {
    checked(gamma)?;
    Ok(potential_unchecked(gamma, x))
}

pub fn mielnik_ground_state(gamma: f64, x: f64) -> Result<f64> {
    checked(gamma)?;
    Ok(ground_state_unchecked(gamma, x))
}

pub fn oscillator_norm_const(gamma: f64) -> Result<f64> {
    Ok(OscillatorFamily::new(gamma)?.norm_const())
}

/// `(γ₊, γ₋) = ½(-√π ± √(π + 4))`, the parameters with `N₀(γ±) = π^{-1/4}`.
pub fn oscillator_matched_pair() -> (f64, f64) {
    darboux::matched_gamma_pair(SQRT_PI, Orientation::Plus, 1.0 / SQRT_PI)
}

/// General solution β = x + v of `β' + β² = 1 + x²`.
pub fn beta_general(gamma: f64, x: f64) -> Result<f64> {
    checked(gamma)?;
    Ok(x + bernoulli(gamma, x))
}

/// β' = 1 + v' with `v' = -2xv - v²`.
pub fn beta_general_prime(gamma: f64, x: f64) -> Result<f64> {
    checked(gamma)?;
    let v = bernoulli(gamma, x);
    Ok(1.0 - 2.0 * x * v - v * v)
}

/// π^{-1/4} e^{-x²/2}.
pub fn undeformed_ground_state(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_PI.sqrt()
}
