//! Radial Coulomb problem in units where `λ_n = -1/n²`:
//!
//! ```text
//! H_ℓ R = (1/r)[-D² + ℓ(ℓ+1)/r² - 2/r] (r R) = λ R
//! ```
//!
//! Operators act on reduced functions `u = rR` with a Dirichlet condition at
//! the origin. The one-parameter family deforms the `ℓ-1` channel around its
//! nodeless state `r^{ℓ-1} e^{-r/ℓ}` at `λ = -1/ℓ²`:
//!
//! ```text
//! β_ℓ       = ℓ/r - 1/ℓ + w/(γ - Γ_ℓ(r)),     w = r^{2ℓ} e^{-2r/ℓ}
//! Ṽ_{ℓ-1}   = -2/r + ℓ(ℓ-1)/r² + d/dr[2w/(γ - Γ_ℓ(r))]
//! R̃_{ℓ,ℓ-1} = r^{ℓ-1} e^{-r/ℓ} / (γ - Γ_ℓ(r))
//! N_ℓ       = sqrt(γ(γ/Γ_ℓ - 1))
//! ```
//!
//! Regular members have `γ < 0` or `γ > Γ_ℓ`.

use serde::Serialize;

use crate::darboux::{self, GammaParameter, Orientation, SeedSpec};
use crate::error::{Error, Result};
use crate::specfun::{
    assoc_laguerre, assoc_laguerre_derivative, gamma_ell, incomplete_pe_integral,
};

/// A bound state `R_{n,ℓ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RadialState {
    pub n: u32,
    pub ell: u32,
}

impl RadialState {
    pub fn new(n: u32, ell: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::QuantumNumbers {
                n,
                ell,
                reason: "n must be at least 1",
            });
        }
        if ell >= n {
            return Err(Error::QuantumNumbers {
                n,
                ell,
                reason: "ell must be smaller than n",
            });
        }
        Ok(Self { n, ell })
    }

    pub fn eigenvalue(&self) -> f64 {
        -1.0 / (self.n as f64).powi(2)
    }

    /// C_{n,ℓ} = (2/n²) sqrt((n-ℓ-1)!/(n+ℓ)!).
    pub fn norm_const(&self) -> f64 {
        let ratio: f64 = (self.n - self.ell..=self.n + self.ell)
            .map(|j| 1.0 / j as f64)
            .product();
        2.0 / (self.n as f64).powi(2) * ratio.sqrt()
    }

    pub fn radial(&self, r: f64) -> f64 {
        let (n, l) = (self.n as f64, self.ell as i32);
        let rho = 2.0 * r / n;
        self.norm_const()
            * rho.powi(l)
            * (-r / n).exp()
            * assoc_laguerre(self.n - self.ell - 1, 2 * self.ell + 1, rho)
    }

    pub fn radial_derivative(&self, r: f64) -> f64 {
        let (n, l) = (self.n as f64, self.ell);
        let rho = 2.0 * r / n;
        let k = self.n - self.ell - 1;
        let alpha = 2 * self.ell + 1;
        let lag = assoc_laguerre(k, alpha, rho);
        let dlag = assoc_laguerre_derivative(k, alpha, rho);
        let power = rho.powi(l as i32);
        let dpower = if l == 0 {
            0.0
        } else {
            l as f64 * rho.powi(l as i32 - 1)
        };
        // d/dρ [ρ^ℓ e^{-ρ/2} L(ρ)] times dρ/dr = 2/n.
        let d_rho = (dpower - 0.5 * power) * lag + power * dlag;
        self.norm_const() * (-r / n).exp() * d_rho * 2.0 / n
    }

    /// u = r R.
    pub fn reduced(&self, r: f64) -> f64 {
        r * self.radial(r)
    }

    /// u' = R + r R'.
    pub fn reduced_derivative(&self, r: f64) -> f64 {
        self.radial(r) + r * self.radial_derivative(r)
    }
}

pub fn radial_eigenfunction(n: u32, ell: u32, r: f64) -> Result<f64> {
    Ok(RadialState::new(n, ell)?.radial(r))
}

/// Reduced potential `ℓ(ℓ+1)/r² - 2/r` of the undeformed channel ℓ.
pub fn coulomb_potential(ell: u32, r: f64) -> f64 {
    let l = ell as f64;
    l * (l + 1.0) / (r * r) - 2.0 / r
}

/// c_{nℓ} = sqrt((n-ℓ)(n+ℓ))/(nℓ).
pub fn ladder_coefficient(n: u32, ell: u32) -> f64 {
    let (n, l) = (n as f64, ell as f64);
    ((n - l) * (n + l)).sqrt() / (n * l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LadderDirection {
    /// a⁻_ℓ: R_{n,ℓ} → c_{nℓ} R_{n,ℓ-1}.
    Lower,
    /// a⁺_ℓ: R_{n,ℓ-1} → c_{nℓ} R_{n,ℓ}.
    Raise,
}

/// Applies an Infeld–Hull ladder operator with index `ell` at radius `r`,
/// using analytic derivatives.
pub fn ladder_apply(direction: LadderDirection, n: u32, ell: u32, r: f64) -> Result<f64> {
    if ell == 0 {
        return Err(Error::QuantumNumbers {
            n,
            ell,
            reason: "ladder operators need ell >= 1",
        });
    }
    let l = ell as f64;
    let w = l / r - 1.0 / l;
    match direction {
        LadderDirection::Lower => {
            let s = RadialState::new(n, ell)?;
            Ok((s.reduced_derivative(r) + w * s.reduced(r)) / r)
        }
        LadderDirection::Raise => {
            // R_{n,ℓ} must exist for the raised state.
            RadialState::new(n, ell)?;
            let s = RadialState::new(n, ell - 1)?;
            Ok((-s.reduced_derivative(r) + w * s.reduced(r)) / r)
        }
    }
}

/// Radial truncation `max(60, 20ℓ²)` used for the half-line grids.
pub fn truncation_radius(ell: u32) -> f64 {
    60f64.max(20.0 * (ell as f64).powi(2))
}

/// C_ℓ = C_{ℓ,ℓ-1} = 2/(ℓ² sqrt((2ℓ-1)!)).
pub fn undeformed_norm_const(ell: u32) -> f64 {
    RadialState {
        n: ell,
        ell: ell - 1,
    }
    .norm_const()
}

/// Deformed family for orbital index `ell ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydrogenFamily {
    ell: u32,
    gamma: GammaParameter,
    total: f64,
}

impl HydrogenFamily {
    pub fn new(ell: u32, gamma: f64) -> Result<Self> {
        let total = total(ell)?;
        let gamma = GammaParameter::classify(gamma, Orientation::Minus, total);
        if !gamma.is_regular() {
            return Err(irregular(gamma.value(), total));
        }
        Ok(Self { ell, gamma, total })
    }

    /// Skips the regularity gate; poles of singular members evaluate to
    /// huge or infinite values.
    pub fn allow_singular(ell: u32, gamma: f64) -> Result<Self> {
        let total = total(ell)?;
        Ok(Self {
            ell,
            gamma: GammaParameter::classify(gamma, Orientation::Minus, total),
            total,
        })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn gamma(&self) -> GammaParameter {
        self.gamma
    }

    /// Γ_ℓ.
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn eigenvalue(&self) -> f64 {
        -1.0 / (self.ell as f64).powi(2)
    }

    fn denominator(&self, r: f64) -> f64 {
        let g = self.gamma.value();
        if g.is_infinite() {
            g
        } else {
            g - incomplete_pe_integral(self.ell, r)
        }
    }

    fn weight(&self, r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        let l = self.ell as f64;
        (2.0 * l * r.ln() - 2.0 * r / l).exp()
    }

    /// v = w/(γ - Γ_ℓ(r)).
    pub fn bernoulli(&self, r: f64) -> f64 {
        self.weight(r) / self.denominator(r)
    }

    pub fn beta(&self, r: f64) -> f64 {
        let l = self.ell as f64;
        l / r - 1.0 / l + self.bernoulli(r)
    }

    /// β' = -ℓ/r² + v', v' = (2ℓ/r - 2/ℓ) v + v².
    pub fn beta_prime(&self, r: f64) -> f64 {
        let l = self.ell as f64;
        let v = self.bernoulli(r);
        -l / (r * r) + (2.0 * l / r - 2.0 / l) * v + v * v
    }

    pub fn potential(&self, r: f64) -> f64 {
        let l = self.ell as f64;
        let v = self.bernoulli(r);
        let shift = if v == 0.0 {
            0.0
        } else {
            2.0 * ((2.0 * l / r - 2.0 / l) * v + v * v)
        };
        coulomb_potential(self.ell - 1, r) + shift
    }

    /// Unnormalized R̃_{ℓ,ℓ-1}.
    pub fn radial(&self, r: f64) -> f64 {
        let l = self.ell as f64;
        r.powi(self.ell as i32 - 1) * (-r / l).exp() / self.denominator(r)
    }

    /// r R̃.
    pub fn reduced(&self, r: f64) -> f64 {
        r * self.radial(r)
    }

    pub fn norm_const(&self) -> f64 {
        darboux::norm_const_closed_form(self.gamma.value(), Orientation::Minus, self.total)
    }

    pub fn normalized_radial(&self, r: f64) -> f64 {
        if self.gamma.value().is_infinite() {
            let l = self.ell as f64;
            return r.powi(self.ell as i32 - 1) * (-r / l).exp() / self.total.sqrt();
        }
        self.norm_const() * self.radial(r)
    }

    /// g = (D + β_ℓ) u_{n,ℓ}, the reduced form of A⁻_ℓ R_{n,ℓ}.
    pub fn modified_lowering_reduced(&self, state: RadialState, r: f64) -> f64 {
        state.reduced_derivative(r) + self.beta(r) * state.reduced(r)
    }
}

fn total(ell: u32) -> Result<f64> {
    if ell == 0 {
        return Err(Error::QuantumNumbers {
            n: 0,
            ell,
            reason: "the deformed family needs ell >= 1",
        });
    }
    gamma_ell(ell)
}

fn irregular(gamma: f64, total: f64) -> Error {
    Error::IrregularGamma {
        gamma,
        domain: format!("singular unless gamma < 0 or gamma > Gamma_ell = {total}"),
    }
}

/// Generic-engine seed: `F0 = r^ℓ e^{-r/ℓ}` (the reduced nodeless state of
/// channel ℓ-1), `σ = -1`, `c = 1`, `E₀ = -1/ℓ²`.
pub fn seed(ell: u32) -> Result<SeedSpec> {
    let s = total(ell)?;
    let l = ell as f64;
    Ok(SeedSpec::new(
        (0.0, f64::INFINITY),
        move |r| l * (l - 1.0) / (r * r) - 2.0 / r + 1.0 / (l * l),
        move |r: f64| r.powi(ell as i32) * (-r / l).exp(),
    )
    .with_log_derivative(move |r| -l / r + 1.0 / l)
    .with_log_derivative_prime(move |r| l / (r * r))
    .with_cumulative_norm(move |r| incomplete_pe_integral(ell, r), s)
    .with_orientation(Orientation::Minus)
    .with_energy_offset(-1.0 / (l * l)))
}

pub fn beta_ell(ell: u32, gamma: f64, r: f64) -> Result<f64> {
    Ok(HydrogenFamily::new(ell, gamma)?.beta(r))
}

pub fn deformed_potential(ell: u32, gamma: f64, r: f64) -> Result<f64> {
    Ok(HydrogenFamily::new(ell, gamma)?.potential(r))
}

pub fn deformed_radial(ell: u32, gamma: f64, r: f64) -> Result<f64> {
    Ok(HydrogenFamily::new(ell, gamma)?.radial(r))
}

pub fn hydrogen_norm_const(ell: u32, gamma: f64) -> Result<f64> {
    Ok(HydrogenFamily::new(ell, gamma)?.norm_const())
}

/// Roots of `γ² - Γ_ℓγ - Γ_ℓC_ℓ² = 0` as `(γ₊, γ₋)`; both give `N_ℓ = C_ℓ`.
pub fn hydrogen_matched_pair(ell: u32) -> Result<(f64, f64)> {
    let s = total(ell)?;
    let c = undeformed_norm_const(ell);
    Ok(darboux::matched_gamma_pair(s, Orientation::Minus, c * c))
}
