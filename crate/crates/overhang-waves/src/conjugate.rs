//! Harmonic conjugate of boundary data on the horizontal strip `ℝ × (0, π)`.
//!
//! Given boundary data `f` on the bottom edge `x₂ = 0` and `g` on the top edge
//! `x₂ = π`, both with an exponential envelope `e^{−σ|x₁|}`, this module
//! evaluates the analytic completion `W = u + iv` of the harmonic extension
//! `u` through the Cauchy integral after the conformal change `ζ = e^{z}`
//! (which maps the strip onto the upper half plane, the bottom edge onto the
//! positive real axis and the top edge onto the negative one):
//!
//! ```text
//! W(z) = (1/πi) ∫ f(s) / (1 − e^{z−s}) ds  −  (1/πi) ∫ g(s) / (1 + e^{z−s}) ds.
//! ```
//!
//! The conjugate `v = Im W` has limits `L₊` and `L₋` as `x₁ → ±∞`; in this
//! normalization `L₊ = 0` and the jump obeys the contour identity
//! `π (L₊ − L₋) = ∫ f − ∫ g`. Since both kernels tend to `0` as `x₁ → +∞`
//! and to `2` as `x₁ → −∞`, the limits follow by quadrature of the data alone,
//! while interior values come from one complex panel quadrature per point.
//! The derivative `W′` is evaluated with the differentiated kernels, so
//! gradients of `u` and `v` cost one extra quadrature, not finite differences.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::Point2;
use crate::numerics::quad::{integrate_panels, integrate_panels_complex};

/// `1 / (1 − e^{w})`, computed in whichever exponential form avoids overflow.
fn inv_one_minus_exp(w: Complex64) -> Complex64 {
    if w.re > 0.0 {
        let e = (-w).exp();
        e / (e - 1.0)
    } else {
        1.0 / (1.0 - w.exp())
    }
}

/// `1 / (1 + e^{w})`, overflow-safe.
fn inv_one_plus_exp(w: Complex64) -> Complex64 {
    if w.re > 0.0 {
        let e = (-w).exp();
        e / (e + 1.0)
    } else {
        1.0 / (1.0 + w.exp())
    }
}

/// `d/dw [1 / (1 − e^{w})] = e^{w} / (1 − e^{w})²`, overflow-safe.
fn d_inv_one_minus_exp(w: Complex64) -> Complex64 {
    if w.re > 0.0 {
        let e = (-w).exp();
        e / ((e - 1.0) * (e - 1.0))
    } else {
        let e = w.exp();
        e / ((1.0 - e) * (1.0 - e))
    }
}

/// `d/dw [1 / (1 + e^{w})] = −e^{w} / (1 + e^{w})²`, overflow-safe.
fn d_inv_one_plus_exp(w: Complex64) -> Complex64 {
    if w.re > 0.0 {
        let e = (-w).exp();
        -e / ((e + 1.0) * (e + 1.0))
    } else {
        let e = w.exp();
        -e / ((1.0 + e) * (1.0 + e))
    }
}

/// Harmonic extension of strip boundary data together with its harmonic
/// conjugate, evaluated by Cauchy-integral quadrature.
///
/// Immutable after construction; evaluation methods take `&self` and are
/// thread-safe.
pub struct StripConjugate<F, G>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    bottom: F,
    top: G,
    /// Decay rate of the boundary-data envelope `e^{−σ|x₁|}`.
    sigma: f64,
    /// Quadrature truncation: data is integrated over `|s| ≤ s_max`.
    s_max: f64,
    /// Panels per unit length at unit distance from the boundary.
    panel_density: f64,
    quad_order: usize,
    /// Limits of the conjugate as `x₁ → ±∞` (by quadrature of the data).
    l_plus: f64,
    l_minus: f64,
}

impl<F, G> StripConjugate<F, G>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    /// Builds the evaluator for bottom data `f`, top data `g` with envelope
    /// decay rate `sigma`; the truncation length is chosen so the neglected
    /// tails are below roundoff for data obeying the envelope.
    pub fn new(bottom: F, top: G, sigma: f64) -> Result<Self> {
        if sigma.is_nan() || sigma <= 0.0 {
            return Err(Error::InvalidParams(vec![format!(
                "envelope decay rate must be positive, got {sigma}"
            )]));
        }
        let s_max = 36.0 / sigma.min(1.0) + 10.0;
        Self::with_truncation(bottom, top, sigma, s_max)
    }

    /// Same as [`StripConjugate::new`] with an explicit truncation length
    /// (useful for data that is exactly periodic or compactly supported).
    pub fn with_truncation(bottom: F, top: G, sigma: f64, s_max: f64) -> Result<Self> {
        if sigma.is_nan() || sigma <= 0.0 || s_max.is_nan() || s_max <= 1.0 {
            return Err(Error::InvalidParams(vec![format!(
                "need sigma > 0 and s_max > 1, got sigma={sigma}, s_max={s_max}"
            )]));
        }
        let mut me = Self {
            bottom,
            top,
            sigma,
            s_max,
            panel_density: 2.0,
            quad_order: 16,
            l_plus: 0.0,
            l_minus: 0.0,
        };
        // Both kernels tend to 2 as x₁ → −∞ and to 0 as x₁ → +∞, so
        // L₊ = 0 and L₋ = Im[(1/πi)(2∫f − 2∫g)] = (∫g − ∫f)/π.
        let panels = (2.0 * s_max * me.panel_density).ceil() as usize + 4;
        let int_f = integrate_panels(&me.bottom, -s_max, s_max, panels, me.quad_order);
        let int_g = integrate_panels(&me.top, -s_max, s_max, panels, me.quad_order);
        me.l_minus = (int_g - int_f) / PI;
        Ok(me)
    }

    /// Conjugate limits `(L₊, L₋)` as `x₁ → ±∞`.
    pub fn limits(&self) -> (f64, f64) {
        (self.l_plus, self.l_minus)
    }

    /// The jump `L₊ − L₋` carried by the conjugate across the strip.
    pub fn jump(&self) -> f64 {
        self.l_plus - self.l_minus
    }

    /// Decay rate of the data envelope this evaluator was built with.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    fn panels_for(&self, x: Point2) -> usize {
        // The kernels vary on the scale of the distance to the nearest edge,
        // so refine the quadrature as the evaluation point approaches one.
        let edge = x.x2.min(PI - x.x2).max(0.05);
        let density = self.panel_density * (1.0 + 1.0 / edge);
        (2.0 * self.s_max * density).ceil() as usize + 4
    }

    fn check_interior(&self, x: Point2) -> Result<()> {
        if x.x2 <= 0.0 || x.x2 >= PI {
            return Err(Error::InvariantViolation {
                what: "strip conjugate evaluation",
                detail: format!("x₂ = {} is not inside (0, π)", x.x2),
            });
        }
        Ok(())
    }

    /// The analytic completion `W(z) = u + iv` at an interior point.
    pub fn complex_value(&self, x: Point2) -> Result<Complex64> {
        self.check_interior(x)?;
        let z = Complex64::new(x.x1, x.x2);
        let panels = self.panels_for(x);
        let wf = integrate_panels_complex(
            |s| (self.bottom)(s) * inv_one_minus_exp(z - s),
            -self.s_max,
            self.s_max,
            panels,
            self.quad_order,
        );
        let wg = integrate_panels_complex(
            |s| (self.top)(s) * inv_one_plus_exp(z - s),
            -self.s_max,
            self.s_max,
            panels,
            self.quad_order,
        );
        Ok((wf - wg) / Complex64::new(0.0, PI))
    }

    /// The complex derivative `W′(z)` at an interior point.
    pub fn complex_derivative(&self, x: Point2) -> Result<Complex64> {
        self.check_interior(x)?;
        let z = Complex64::new(x.x1, x.x2);
        let panels = self.panels_for(x);
        let wf = integrate_panels_complex(
            |s| (self.bottom)(s) * d_inv_one_minus_exp(z - s),
            -self.s_max,
            self.s_max,
            panels,
            self.quad_order,
        );
        let wg = integrate_panels_complex(
            |s| (self.top)(s) * d_inv_one_plus_exp(z - s),
            -self.s_max,
            self.s_max,
            panels,
            self.quad_order,
        );
        Ok((wf - wg) / Complex64::new(0.0, PI))
    }

    /// Harmonic extension `u = Re W` of the boundary data.
    pub fn u(&self, x: Point2) -> Result<f64> {
        Ok(self.complex_value(x)?.re)
    }

    /// Harmonic conjugate `v = Im W`.
    pub fn v(&self, x: Point2) -> Result<f64> {
        Ok(self.complex_value(x)?.im)
    }

    /// Gradient of the conjugate, `(v_{x₁}, v_{x₂}) = (Im W′, Re W′)`.
    pub fn v_gradient(&self, x: Point2) -> Result<Point2> {
        let d = self.complex_derivative(x)?;
        Ok(Point2::new(d.im, d.re))
    }

    /// Gradient of the harmonic extension, `(u_{x₁}, u_{x₂}) = (Re W′, −Im W′)`.
    pub fn u_gradient(&self, x: Point2) -> Result<Point2> {
        let d = self.complex_derivative(x)?;
        Ok(Point2::new(d.re, -d.im))
    }
}

/// Builds the harmonic conjugate of strip boundary data and returns it with
/// its limits `(L₊, L₋)` at `x₁ → ±∞`.
pub fn harmonic_conjugate_strip<F, G>(
    bottom: F,
    top: G,
    sigma: f64,
) -> Result<(StripConjugate<F, G>, f64, f64)>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let sc = StripConjugate::new(bottom, top, sigma)?;
    let (lp, lm) = sc.limits();
    Ok((sc, lp, lm))
}
