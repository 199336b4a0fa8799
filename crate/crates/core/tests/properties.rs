//! Invariants of the deformed families checked on grids and random samples.

use darboux_deform::darboux::{self, Deformation, GammaParameter, Orientation};
use darboux_deform::hydrogen::{self, HydrogenFamily, RadialState};
use darboux_deform::oscillator;
use darboux_deform::specfun::{gamma_ell, SQRT_PI};
use darboux_deform::spectral::eigen_residual;
use proptest::prelude::*;

#[test]
fn undeformed_coulomb_eigen_residuals() {
    for (n, ell) in [(1, 0), (2, 1), (3, 2), (3, 1)] {
        let s = RadialState::new(n, ell).unwrap();
        let r = eigen_residual(
            |r| hydrogen::coulomb_potential(ell, r),
            |r| s.reduced(r),
            s.eigenvalue(),
            0.05,
            60.0,
            12000,
            1.0,
        );
        assert!(r < 1e-6, "n={n} l={ell}: {r}");
    }
}

#[test]
fn deformed_coulomb_eigen_residual_large_ell() {
    let fam = HydrogenFamily::new(3, 13000.0).unwrap();
    let r = eigen_residual(
        |r| fam.potential(r),
        |r| fam.reduced(r),
        -1.0 / 9.0,
        0.05,
        60.0,
        12000,
        1.0,
    );
    assert!(r < 1e-6, "{r}");
}

#[test]
fn factorization_is_gamma_independent() {
    // (-D + β)(D + β) u_{3,1} = (λ_3 + 1) u_{3,1} for every regular γ.
    let state = RadialState::new(3, 1).unwrap();
    let want = state.eigenvalue() + 1.0;
    for g in [-5.0, gamma_ell(1).unwrap() + 1.0] {
        let fam = HydrogenFamily::new(1, g).unwrap();
        let lowered = |r: f64| fam.modified_lowering_reduced(state, r);
        let h = 1e-3;
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..5000 {
            let r = 0.1 + 40.0 * i as f64 / 4999.0;
            let dg = (lowered(r - 2.0 * h) - 8.0 * lowered(r - h) + 8.0 * lowered(r + h)
                - lowered(r + 2.0 * h))
                / (12.0 * h);
            let raised = -dg + fam.beta(r) * lowered(r);
            let u = state.reduced(r);
            num += (raised - want * u).powi(2);
            den += u * u;
        }
        assert!((num / den).sqrt() < 1e-6, "gamma={g}");
    }
}

#[test]
fn raising_operator() {
    for (n, ell) in [(2, 1), (3, 1), (3, 2)] {
        let c = hydrogen::ladder_coefficient(n, ell);
        for i in 0..2000 {
            let r = 0.01 + 50.0 * i as f64 / 1999.0;
            let raised =
                hydrogen::ladder_apply(hydrogen::LadderDirection::Raise, n, ell, r).unwrap();
            let want = c * hydrogen::radial_eigenfunction(n, ell, r).unwrap();
            assert!((raised - want).abs() < 1e-8, "n={n} l={ell} r={r}");
        }
    }
}

#[test]
fn bernoulli_equation_both_orientations() {
    let cases = [
        (oscillator::seed(), vec![0.4, -3.0], (-6.0, 6.0)),
        (hydrogen::seed(2).unwrap(), vec![-3.0, 40.0], (0.2, 30.0)),
    ];
    for (seed, gammas, (a, b)) in &cases {
        for &g in gammas {
            let gp = GammaParameter::for_seed(seed, g).unwrap();
            let d = Deformation::new(seed, gp).unwrap();
            let h = 1e-4;
            for i in 0..500 {
                let x = a + (b - a) * i as f64 / 499.0;
                let fd = (d.bernoulli(x + h).unwrap() - d.bernoulli(x - h).unwrap()) / (2.0 * h);
                let analytic = d.bernoulli_prime(x).unwrap();
                assert!((fd - analytic).abs() < 1e-6, "gamma={g} x={x}");
            }
        }
    }
}

#[test]
fn generic_seed_eigen_residual() {
    let seed = darboux::sech_squared_seed();
    for g in [0.5, -3.0] {
        let gp = GammaParameter::for_seed(&seed, g).unwrap();
        let d = Deformation::new(&seed, gp).unwrap();
        let r = eigen_residual(
            |x| d.potential(x).unwrap(),
            |x| d.ground_state(x).unwrap(),
            -1.0,
            -12.0,
            12.0,
            2400,
            1.0,
        );
        assert!(r < 1e-6, "gamma={g}: {r}");
    }
}

#[test]
fn deformed_riccati_solution() {
    // Φ_g² - Φ_g' reproduces the deformed potential: (Ṽ - E₀)/c.
    let seed = oscillator::seed();
    let gp = GammaParameter::for_seed(&seed, 0.8).unwrap();
    let d = Deformation::new(&seed, gp).unwrap();
    for i in 0..1000 {
        let x = -6.0 + 12.0 * i as f64 / 999.0;
        let p = d.general_riccati(x).unwrap();
        let dp = d.general_riccati_prime(x).unwrap();
        let f = (d.potential(x).unwrap() - 0.5) / 0.5;
        assert!((p * p - dp - f).abs() < 1e-8, "x={x}");
    }
}

fn regular_gamma() -> impl Strategy<Value = f64> {
    prop_oneof![0.001f64..50.0, (0.001f64..50.0).prop_map(|g| -g - SQRT_PI)]
}

proptest! {
    #[test]
    fn parity_involution(x in -6.0f64..6.0, g in regular_gamma()) {
        let mirror = -g - SQRT_PI;
        let v1 = oscillator::mielnik_potential(g, -x).unwrap();
        let v2 = oscillator::mielnik_potential(mirror, x).unwrap();
        prop_assert!((v1 - v2).abs() <= 1e-12 * v1.abs().max(1.0));
        let p1 = oscillator::mielnik_ground_state(g, -x).unwrap();
        let p2 = oscillator::mielnik_ground_state(mirror, x).unwrap();
        prop_assert!((p1 + p2).abs() <= 1e-12 * p1.abs().max(1.0));
    }

    #[test]
    fn matched_roots_lie_in_both_branches(
        total in 0.01f64..1e4,
        target in 1e-4f64..1e2,
        plus in any::<bool>(),
    ) {
        let orientation = if plus { Orientation::Plus } else { Orientation::Minus };
        let (hi, lo) = darboux::matched_gamma_pair(total, orientation, target);
        for g in [hi, lo] {
            prop_assert!(GammaParameter::classify(g, orientation, total).is_regular());
            let n = darboux::norm_const_closed_form(g, orientation, total);
            prop_assert!((n * n - target).abs() <= 1e-10 * target.max(1.0));
        }
        prop_assert!(hi > 0.0 && lo < 0.0);
    }

    #[test]
    fn oscillator_potential_is_bounded_below(x in -8.0f64..8.0, g in regular_gamma()) {
        // Ṽ - x²/2 = 2xv + v² = (x + v)² - x² ≥ -x².
        let v = oscillator::mielnik_potential(g, x).unwrap();
        prop_assert!(v - 0.5 * x * x >= -x * x - 1e-12);
    }

    #[test]
    fn hydrogen_ground_state_is_nodeless(ell in 1u32..4, f in prop_oneof![-50.0f64..-0.001, 1.001f64..50.0]) {
        let g = f * gamma_ell(ell).unwrap();
        let fam = HydrogenFamily::new(ell, g).unwrap();
        let sign = fam.radial(1.0).signum();
        for i in 0..200 {
            let r = 0.05 + 0.3 * i as f64;
            prop_assert_eq!(fam.radial(r).signum(), sign);
        }
    }
}
