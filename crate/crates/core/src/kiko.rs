//! The bounded solution of the two-branch functional equation
//!
//! ```text
//! f(x) = α·f(2x)               0 ≤ x < 1/2
//! f(x) = γ·f(2x − 1) + (1 − γ)  1/2 ≤ x ≤ 1
//! ```
//!
//! evaluated by unfolding the recursion along the binary expansion of x.

use crate::cloud::{CloudSource, PointCloud};
use crate::error::{Error, Result};
use crate::numerics::Complex;
use crate::pointset::check_alpha;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KikoParams {
    alpha: Complex,
    gamma: Complex,
}

impl KikoParams {
    pub fn new(alpha: Complex, gamma: Complex) -> Result<Self> {
        check_alpha(alpha)?;
        check_alpha(gamma)
            .map_err(|_| Error::invalid(format!("|gamma| must be < 1, got {gamma}")))?;
        Ok(KikoParams { alpha, gamma })
    }

    pub fn alpha(&self) -> Complex {
        self.alpha
    }

    pub fn gamma(&self) -> Complex {
        self.gamma
    }

    pub fn ratio(&self) -> f64 {
        self.alpha.norm().max(self.gamma.norm())
    }

    /// sup |f| ≤ |1 − γ| / (1 − max(|α|, |γ|))
    pub fn bound(&self) -> f64 {
        (Complex::new(1.0, 0.0) - self.gamma).norm() / (1.0 - self.ratio())
    }

    /// Truncation error of [`eval_kiko`] at `depth` for arbitrary x.
    pub fn error_bound(&self, depth: usize) -> f64 {
        self.bound() * self.ratio().powi(depth as i32)
    }
}

/// f(x) with the recursion unfolded at most `depth` times.
///
/// The unfolding stops early when the remaining argument is exactly 0 or 1,
/// where f is known (f(0) = 0, f(1) = 1); otherwise the remainder is replaced
/// by 0. Doubling is exact in binary floating point, so a dyadic x = k/2^d
/// evaluates exactly once `depth ≥ d`.
pub fn eval_kiko(p: &KikoParams, x: f64, depth: usize) -> Result<Complex> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("x must lie in [0, 1], got {x}")));
    }
    let one = Complex::new(1.0, 0.0);
    let mut acc = Complex::new(0.0, 0.0);
    let mut mult = one;
    let mut x = x;
    for _ in 0..depth {
        if x == 0.0 {
            return Ok(acc);
        }
        if x == 1.0 {
            return Ok(acc + mult);
        }
        if x < 0.5 {
            mult *= p.alpha;
            x *= 2.0;
        } else {
            acc += mult * (one - p.gamma);
            mult *= p.gamma;
            x = 2.0 * x - 1.0;
        }
    }
    if x == 1.0 {
        acc += mult;
    }
    Ok(acc)
}

/// {f(k/2^d) : k = 0..=2^d}.
pub fn kiko_image_cloud(p: &KikoParams, d: usize) -> Result<PointCloud> {
    if d > 30 {
        return Err(Error::invalid(format!("dyadic level {d} exceeds 30")));
    }
    let n = 1u64 << d;
    let points = (0..=n)
        .map(|k| eval_kiko(p, k as f64 / n as f64, d))
        .collect::<Result<Vec<_>>>()?;
    // attractor lies in the disk of radius |1−γ|/(1−r); each dyadic piece shrinks by r^d
    let tail = p.ratio().powi(d as i32) * p.bound();
    Ok(PointCloud::new(
        points,
        d,
        tail,
        CloudSource::Kiko {
            alpha: p.alpha,
            gamma: p.gamma,
        },
    ))
}
