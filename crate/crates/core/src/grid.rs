//! Uniformly sampled real functions.

use crate::error::{Error, Result};

/// A real function sampled at `n` equally spaced points of `[a, b]`,
/// endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    a: f64,
    b: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn sample<F: Fn(f64) -> f64>(a: f64, b: f64, n: usize, f: F) -> Result<Self> {
        check_linspace(a, b, n)?;
        let h = (b - a) / (n - 1) as f64;
        let values = (0..n).map(|i| f(node(a, b, h, n, i))).collect();
        Ok(Self { a, b, values })
    }

    /// Wraps precomputed samples; `values.len()` fixes the number of points.
    pub fn from_values(a: f64, b: f64, values: Vec<f64>) -> Result<Self> {
        check_linspace(a, b, values.len())?;
        Ok(Self { a, b, values })
    }

    pub fn start(&self) -> f64 {
        self.a
    }

    pub fn end(&self) -> f64 {
        self.b
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        (self.b - self.a) / (self.len() - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        node(self.a, self.b, self.spacing(), self.len(), i)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (self.x(i), v))
    }

    /// Largest absolute sample; NaN samples propagate.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| {
            if v.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(v.abs())
            }
        })
    }

    pub fn map<F: Fn(f64, f64) -> f64>(&self, f: F) -> Self {
        let values = self.points().map(|(x, v)| f(x, v)).collect();
        Self {
            a: self.a,
            b: self.b,
            values,
        }
    }

    /// Counts strict sign changes between consecutive samples, skipping exact zeros.
    pub fn sign_changes(&self) -> usize {
        let mut last = 0.0_f64;
        let mut count = 0;
        for &v in &self.values {
            if v == 0.0 || v.is_nan() {
                continue;
            }
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = v;
        }
        count
    }
}

// The last node is pinned to `b` so grids hit their endpoint exactly.
fn node(a: f64, b: f64, h: f64, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        b
    } else {
        a + i as f64 * h
    }
}

fn check_linspace(a: f64, b: f64, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points, got {n}"
        )));
    }
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::InvalidGrid(format!(
            "need finite min < max, got [{a}, {b}]"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let g = GridFunction::sample(-5.0, 5.0, 1001, |x| x).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g.x(0), -5.0);
        assert_eq!(g.x(1000), 5.0);
        assert!((g.x(500)).abs() < 1e-12);
        assert!((g.spacing() - 0.01).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(GridFunction::sample(0.0, 1.0, 1, |x| x).is_err());
        assert!(GridFunction::sample(1.0, 1.0, 10, |x| x).is_err());
        assert!(GridFunction::sample(0.0, f64::INFINITY, 10, |x| x).is_err());
    }

    #[test]
    fn sign_changes_skip_zeros() {
        let g = GridFunction::from_values(0.0, 1.0, vec![1.0, 0.0, -1.0, -2.0, 3.0]).unwrap();
        assert_eq!(g.sign_changes(), 2);
    }
}
