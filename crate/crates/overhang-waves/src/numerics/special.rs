//! Special functions: the complex exponential integral `E₁` and the
//! generalized exponential integrals `Eₙ`.
//!
//! These appear in the closed-form pieces of the strip-correction evaluator,
//! where Fourier-integral tails of the form `∫₀^∞ e^{-kζ}/(k+1)^n dk
//! = e^ζ Eₙ(ζ)` are subtracted analytically.

use num_complex::Complex64;

use crate::numerics::EULER_GAMMA;

/// Complex exponential integral `E₁(z) = ∫₁^∞ e^{-zt}/t dt`, valid for
/// `Re z ≥ 0`, `z ≠ 0` (principal branch).
///
/// Power series for small `|z|`, modified-Lentz continued fraction otherwise.
/// Relative accuracy ~1e-14 away from the negative real axis.
pub fn e1(z: Complex64) -> Complex64 {
    debug_assert!(z.norm() > 0.0, "E1 is singular at 0");
    if z.norm() <= 4.0 {
        // E₁(z) = -γ - log z + Σ_{k≥1} (-1)^{k+1} z^k / (k·k!)
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for k in 1..=60 {
            term *= -z / k as f64;
            let add = -term / k as f64;
            sum += add;
            if add.norm() < 1e-17 * (1.0 + sum.norm()) {
                break;
            }
        }
        -EULER_GAMMA - z.ln() + sum
    } else {
        // E₁(z) = e^{-z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...))))),
        // evaluated with the modified Lentz algorithm.
        let tiny = 1e-30;
        let mut b = z + 1.0;
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let a = -(i as f64) * (i as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-15 {
                break;
            }
        }
        (-z).exp() * h
    }
}

/// Generalized exponential integral `Eₙ(z) = ∫₁^∞ e^{-zt}/tⁿ dt` for
/// `n ≥ 1`, via the upward recurrence `E_{n+1}(z) = (e^{-z} - z Eₙ(z))/n`.
///
/// Returns `E₁(z) … E_n(z)`. The recurrence loses accuracy slowly for small
/// `|z|` (absolute error ~`|z|`-independent, relative growth mild for the
/// orders ≤ 8 used here).
pub fn en_up_to(n: usize, z: Complex64) -> Vec<Complex64> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    let emz = (-z).exp();
    let mut e = e1(z);
    out.push(e);
    for m in 1..n {
        e = (emz - z * e) / m as f64;
        out.push(e);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::integrate_panels;

    #[test]
    fn e1_matches_reference_values() {
        // Abramowitz & Stegun 5.1: E₁(1) = 0.219383934..., E₁(10) = 4.15697e-6.
        let v1 = e1(Complex64::new(1.0, 0.0));
        assert!((v1.re - 0.219_383_934_395_520_3).abs() < 1e-14);
        assert!(v1.im.abs() < 1e-15);
        let v10 = e1(Complex64::new(10.0, 0.0));
        assert!((v10.re - 4.156_968_929_685_324e-6).abs() < 1e-18);
    }

    #[test]
    fn e1_complex_matches_direct_quadrature() {
        // E₁(z) = ∫₀^∞ e^{-k z}/(k+1) dk · e^{-z}... check instead through
        // ∫₀^∞ e^{-kz}/(k+1) dk = e^{z} E₁(z) against real/imag quadrature.
        for &(re, im) in &[(0.5, 0.8), (3.0, -2.0), (6.0, 4.0)] {
            let z = Complex64::new(re, im);
            let quad_re =
                integrate_panels(|k: f64| ((-k * z).exp() / (k + 1.0)).re, 0.0, 100.0, 200, 12);
            let quad_im =
                integrate_panels(|k: f64| ((-k * z).exp() / (k + 1.0)).im, 0.0, 100.0, 200, 12);
            let exact = z.exp() * e1(z);
            assert!(
                (exact - Complex64::new(quad_re, quad_im)).norm() < 1e-12,
                "z = {z}"
            );
        }
    }

    #[test]
    fn en_recurrence_matches_quadrature() {
        let z = Complex64::new(0.7, 1.1);
        let es = en_up_to(4, z);
        for (idx, e) in es.iter().enumerate() {
            let n = (idx + 1) as i32;
            let quad_re =
                integrate_panels(|t: f64| ((-t * z).exp() / t.powi(n)).re, 1.0, 80.0, 160, 12);
            let quad_im =
                integrate_panels(|t: f64| ((-t * z).exp() / t.powi(n)).im, 1.0, 80.0, 160, 12);
            assert!((e - Complex64::new(quad_re, quad_im)).norm() < 1e-12);
        }
    }
}
