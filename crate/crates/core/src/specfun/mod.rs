//! Special functions used by the closed-form deformations: the Gaussian
//! integral, the polynomial-times-exponential integrals of the radial
//! problem, and generalized Laguerre polynomials.

mod quadrature;

pub use quadrature::{adaptive_quadrature, QuadratureResult};

use crate::error::{Error, Result};

pub const SQRT_PI: f64 = 1.772_453_850_905_516;
const HALF_SQRT_PI: f64 = 0.5 * SQRT_PI;

/// I(x) = ∫_{-∞}^x e^{-t²} dt, with `I(+∞) = √π` exactly.
///
/// For positive x the value is formed as `√π - tail(x)` so that
/// `I(x) + I(-x) = √π` holds to rounding.
pub fn gauss_integral(x: f64) -> f64 {
    if x == f64::INFINITY {
        SQRT_PI
    } else if x <= 0.0 {
        HALF_SQRT_PI * libm::erfc(-x)
    } else {
        SQRT_PI - gauss_tail(x)
    }
}

/// ∫_x^∞ e^{-t²} dt.
pub fn gauss_tail(x: f64) -> f64 {
    HALF_SQRT_PI * libm::erfc(x)
}

/// Γ_ℓ(r) = ∫_0^r t^{2ℓ} e^{-2t/ℓ} dt.
///
/// Uses the integration-by-parts sum `Γ_ℓ - e^{-2r/ℓ} Σ_j (2ℓ)!/j! r^j (ℓ/2)^{2ℓ+1-j}`
/// once `2r/ℓ ≥ 2ℓ+1`; below that the sum cancels against Γ_ℓ, so the
/// positive series `e^{-x} r^{2ℓ+1} Σ_k x^k / ((2ℓ+1)…(2ℓ+1+k))`, x = 2r/ℓ,
/// is summed instead. `r = +∞` returns Γ_ℓ.
pub fn incomplete_pe_integral(ell: u32, r: f64) -> f64 {
    assert!(ell >= 1, "ell must be positive");
    assert!(r >= 0.0, "r must be nonnegative");
    if r == 0.0 {
        return 0.0;
    }
    if r == f64::INFINITY {
        return gamma_ell(ell).unwrap_or(f64::INFINITY);
    }
    let m = 2 * ell;
    let rate = 2.0 / ell as f64;
    let x = rate * r;
    if x < (m + 1) as f64 {
        lower_series(m, r, x)
    } else {
        let total = gamma_ell(ell).unwrap_or(f64::INFINITY);
        total - upper_sum(m, rate, r)
    }
}

fn lower_series(m: u32, r: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1;
    while k < 100_000 {
        term *= x / (m + 1 + k) as f64;
        sum += term;
        if term < f64::EPSILON * sum {
            break;
        }
        k += 1;
    }
    // r^{m+1} e^{-x}/(m+1), assembled in log space against overflow.
    let prefactor = ((m + 1) as f64 * r.ln() - x).exp() / (m + 1) as f64;
    prefactor * sum
}

// e^{-ar} Σ_{j=0}^{m} m!/j! · r^j / a^{m+1-j}
fn upper_sum(m: u32, rate: f64, r: f64) -> f64 {
    let mut term = (m as f64 * r.ln() - rate * r).exp() / rate;
    let mut sum = term;
    for j in (1..=m).rev() {
        term *= j as f64 / (rate * r);
        sum += term;
    }
    sum
}

/// Γ_ℓ = (2ℓ)! (ℓ/2)^{2ℓ+1}, the full integral ∫_0^∞ t^{2ℓ} e^{-2t/ℓ} dt.
pub fn gamma_ell(ell: u32) -> Result<f64> {
    assert!(ell >= 1, "ell must be positive");
    let factorial: f64 = (1..=2 * ell).map(f64::from).product();
    let value = factorial * (ell as f64 / 2.0).powi(2 * ell as i32 + 1);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("Gamma_ell for ell = {ell}")))
    }
}

/// Generalized Laguerre polynomial L_k^{(α)}(x), degree `k`.
pub fn assoc_laguerre(k: u32, alpha: u32, x: f64) -> f64 {
    let alpha = alpha as f64;
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = 1.0 + alpha - x;
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + alpha - x) * curr - (j + alpha) * prev) / (j + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// d/dx L_k^{(α)}(x) = -L_{k-1}^{(α+1)}(x).
pub fn assoc_laguerre_derivative(k: u32, alpha: u32, x: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        -assoc_laguerre(k - 1, alpha + 1, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gauss_integral_values() {
        assert_eq!(gauss_integral(f64::INFINITY), SQRT_PI);
        assert!((gauss_integral(0.0) - 0.886_226_925_452_758).abs() < 1e-15);
        // 40-digit mpmath quadrature.
        assert!((gauss_integral(1.0) - 1.633_051_058_265_185).abs() < 1e-14);
        assert_eq!(gauss_integral(f64::NEG_INFINITY), 0.0);
    }

    #[test]
    fn gauss_integral_matches_quadrature() {
        for &x in &[-6.0, -2.5, -0.3, 0.0, 0.7, 1.0, 3.2, 8.0] {
            let q = adaptive_quadrature(|t| (-t * t).exp(), f64::NEG_INFINITY, x, 1e-14).unwrap();
            assert!((gauss_integral(x) - q.value).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn gauss_integral_reflection() {
        for &x in &[0.1, 0.5, 1.3, 2.7, 4.0, 6.5] {
            let s = gauss_integral(x) + gauss_integral(-x);
            assert!((s - SQRT_PI).abs() < 4e-16, "x = {x}");
        }
    }

    #[test]
    fn incomplete_pe_values() {
        assert_eq!(incomplete_pe_integral(1, 0.0), 0.0);
        assert_eq!(incomplete_pe_integral(1, f64::INFINITY), 0.25);
        // 40-digit mpmath quadrature of t^4 e^{-t} over (0, 3).
        let v = incomplete_pe_integral(2, 3.0);
        assert!((v - 4.433_682_131_429_47).abs() < 1e-13, "{v}");
        // t^2 e^{-2t} over (0, 1).
        let v = incomplete_pe_integral(1, 1.0);
        assert!((v - 0.080_830_895_954_234_14).abs() < 1e-15, "{v}");
    }

    #[test]
    fn incomplete_pe_matches_quadrature() {
        for ell in 1..=5u32 {
            for &r in &[0.5, 1.0, 5.0, 20.0] {
                let l = ell as f64;
                let q = adaptive_quadrature(
                    |t| t.powi(2 * ell as i32) * (-2.0 * t / l).exp(),
                    0.0,
                    r,
                    1e-14,
                )
                .unwrap();
                let v = incomplete_pe_integral(ell, r);
                assert!(
                    ((v - q.value) / q.value).abs() < 1e-8,
                    "ell={ell} r={r}: {v} vs {}",
                    q.value
                );
            }
        }
    }

    #[test]
    fn gamma_ell_values() {
        assert_eq!(gamma_ell(1).unwrap(), 0.25);
        assert_eq!(gamma_ell(2).unwrap(), 24.0);
        assert_eq!(gamma_ell(3).unwrap(), 12_301.875);
        assert!(matches!(gamma_ell(80), Err(Error::Overflow(_))));
    }

    #[test]
    fn gamma_ell_is_the_limit() {
        for ell in 1..=8u32 {
            let g = gamma_ell(ell).unwrap();
            let far = incomplete_pe_integral(ell, 400.0 * ell as f64);
            assert!(((far - g) / g).abs() < 1e-10, "ell = {ell}");
            assert_eq!(incomplete_pe_integral(ell, f64::INFINITY), g);
        }
    }

    #[test]
    fn laguerre_values() {
        assert_eq!(assoc_laguerre(0, 3, 7.2), 1.0);
        assert_eq!(assoc_laguerre(1, 1, 0.0), 2.0);
        assert_eq!(assoc_laguerre(1, 1, 2.0), 0.0);
    }

    // Explicit low-degree generalized Laguerre polynomials.
    fn explicit(k: u32, a: f64, x: f64) -> f64 {
        match k {
            0 => 1.0,
            1 => 1.0 + a - x,
            2 => 0.5 * (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0)),
            3 => {
                (-x.powi(3) + 3.0 * (a + 3.0) * x * x - 3.0 * (a + 2.0) * (a + 3.0) * x
                    + (a + 1.0) * (a + 2.0) * (a + 3.0))
                    / 6.0
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn laguerre_recurrence_matches_explicit() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let x: f64 = rng.gen_range(0.0..20.0);
            for k in 0..=3 {
                for alpha in 0..=5 {
                    let want = explicit(k, alpha as f64, x);
                    let got = assoc_laguerre(k, alpha, x);
                    assert!(
                        (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                        "k={k} a={alpha} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn laguerre_derivative_by_differences() {
        let h = 1e-5;
        for &x in &[0.3, 2.0, 7.5] {
            let fd = (assoc_laguerre(4, 3, x + h) - assoc_laguerre(4, 3, x - h)) / (2.0 * h);
            assert!((fd - assoc_laguerre_derivative(4, 3, x)).abs() < 1e-6);
        }
    }

    proptest! {
        #[test]
        fn gauss_integral_increasing(a in -6.0f64..4.0, d in 1e-3f64..3.0) {
            prop_assert!(gauss_integral(a + d) > gauss_integral(a));
        }

        #[test]
        fn incomplete_pe_increasing(ell in 1u32..6, a in 0.0f64..12.0, d in 1e-3f64..10.0) {
            prop_assert!(incomplete_pe_integral(ell, a + d) > incomplete_pe_integral(ell, a));
        }
    }
}
