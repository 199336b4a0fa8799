//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Semi-infinite and infinite ranges are truncated: the cutoff distance is
//! doubled until the integrand has decayed below `1e-16` of the largest
//! magnitude seen so far, then the finite range is integrated adaptively.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};

const MAX_SUBDIVISIONS: usize = 4000;
const INITIAL_PIECES: usize = 16;
const TAIL_RATIO: f64 = 1e-16;
const MAX_CUTOFF_DOUBLINGS: u32 = 60;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate, always nonnegative.
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Integrates `f` over `[a, b]`, where either limit may be infinite.
///
/// Converges when the summed error estimate drops below
/// `tol * max(1, |value|)`, so `tol` acts as an absolute tolerance for
/// small integrals and a relative one for large integrals.
pub fn adaptive_quadrature<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    assert!(tol > 0.0, "quadrature tolerance must be positive");
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 1,
        });
    }
    if a > b {
        let r = adaptive_quadrature(f, b, a, tol)?;
        return Ok(QuadratureResult {
            value: -r.value,
            ..r
        });
    }

    let mut evaluations = 0usize;
    let mut counted = |x: f64| {
        evaluations += 1;
        f(x)
    };

    let ((lo, hi), tail) = match (a.is_finite(), b.is_finite()) {
        (true, true) => ((a, b), 0.0),
        (true, false) => {
            let (length, tail) = cutoff(&mut counted, a, 1.0, tol)?;
            ((a, a + length), tail)
        }
        (false, true) => {
            let (length, tail) = cutoff(&mut counted, b, -1.0, tol)?;
            ((b - length, b), tail)
        }
        (false, false) => {
            let (left, left_tail) = cutoff(&mut counted, 0.0, -1.0, tol)?;
            let (right, right_tail) = cutoff(&mut counted, 0.0, 1.0, tol)?;
            ((-left, right), left_tail + right_tail)
        }
    };

    let (value, error_estimate) = integrate_finite(&mut counted, lo, hi, tol)?;
    Ok(QuadratureResult {
        value,
        error_estimate: error_estimate + tail,
        evaluations: evaluations.max(1),
    })
}

// Distance from `origin` (in direction `dir`) beyond which |f| is negligible,
// with a crude bound `|f(cutoff)| * cutoff` on the discarded tail.
fn cutoff<F: FnMut(f64) -> f64>(f: &mut F, origin: f64, dir: f64, tol: f64) -> Result<(f64, f64)> {
    let mut scale = 0.0_f64;
    let mut length = 1.0_f64;
    let mut probed = 0.0_f64;
    for _ in 0..MAX_CUTOFF_DOUBLINGS {
        // Sample the newly covered stretch to keep `scale` honest.
        for i in 1..=32 {
            let t = probed + (length - probed) * i as f64 / 32.0;
            scale = scale.max(f(origin + dir * t).abs());
        }
        probed = length;
        let beyond = [1.0, 1.5, 2.0]
            .iter()
            .map(|s| f(origin + dir * length * s).abs())
            .fold(0.0_f64, f64::max);
        let tail = beyond * length;
        if scale > 0.0 && beyond < TAIL_RATIO * scale && tail < 1e-3 * tol {
            return Ok((length, tail));
        }
        if scale == 0.0 && length > 64.0 {
            return Ok((length, 0.0));
        }
        length *= 2.0;
    }
    Err(Error::QuadratureNonConvergence {
        estimate: f64::NAN,
        error_estimate: f64::INFINITY,
    })
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn integrate_finite<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let mut heap = BinaryHeap::new();
    let width = (b - a) / INITIAL_PIECES as f64;
    for i in 0..INITIAL_PIECES {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == INITIAL_PIECES {
            b
        } else {
            lo + width
        };
        heap.push(kronrod(f, lo, hi));
    }

    let mut subdivisions = INITIAL_PIECES;
    loop {
        let (value, error, abs_value) = heap.iter().fold((0.0, 0.0, 0.0), |acc, s| {
            (acc.0 + s.value, acc.1 + s.error, acc.2 + s.value.abs())
        });
        if !value.is_finite() {
            return Err(Error::QuadratureNonConvergence {
                estimate: value,
                error_estimate: f64::INFINITY,
            });
        }
        // Below this floor the estimate is dominated by rounding.
        let floor = 50.0 * f64::EPSILON * abs_value;
        if error <= (tol * value.abs().max(1.0)).max(floor) {
            return Ok((value, error));
        }
        if subdivisions >= MAX_SUBDIVISIONS {
            return Err(Error::QuadratureNonConvergence {
                estimate: value,
                error_estimate: error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval can no longer be split in floating point.
            return Err(Error::QuadratureNonConvergence {
                estimate: value,
                error_estimate: error,
            });
        }
        heap.push(kronrod(f, worst.a, mid));
        heap.push(kronrod(f, mid, worst.b));
        subdivisions += 1;
    }
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod_sum = WGK[7] * fc;
    let mut gauss_sum = WG[3] * fc;
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let pair = f(center - half * x) + f(center + half * x);
        kronrod_sum += w * pair;
        if j % 2 == 1 {
            gauss_sum += WG[j / 2] * pair;
        }
    }
    let value = kronrod_sum * half;
    let error = ((kronrod_sum - gauss_sum) * half).abs();
    Segment { a, b, value, error }
}
