//! The strip block: a unit-depth shear flow and its correction field.
//!
//! The base field `Ψˢ(x) = −½ω(x₂+dˢ)² − (x₂+dˢ)` solves the overdetermined
//! problem on the line `x₂ = −dˢ` exactly and takes the bottom value
//! `β = 1 − ω/2` on `x₂ = −1 − dˢ`.
//!
//! The correction `Ψ₁ˢ` is harmonic in the strip `−1−dˢ < x₂ < −dˢ` with
//! `Ψ₁ˢ = 0` on the bottom and the Robin condition
//! `∂_ν Ψ₁ˢ − ω Ψ₁ˢ = π δ_{P_S}` on the top (`P_S = (0, −dˢ)`). With the
//! depth variable `t = x₂ + 1 + dˢ ∈ [0, 1]` it has the explicit Fourier
//! representation
//!
//! `Ψ₁ˢ(x₁, t) = ∫₀^∞ [e^{−k(1−t)} − e^{−k(1+t)}] / D(k) · cos(k x₁) dk`,
//! `D(k) = k(1 + e^{−2k}) + ω·expm1(−2k)`,
//!
//! which satisfies the top condition with density exactly 1 for every `k`
//! (so the data is `∫cos(kx₁)dk = πδ`). `D` has no zeros for `k > 0` when
//! `ω < 1` (`D = 0 ⟺ k·coth k = ω < 1 ≤ k·coth k`), and `D ~ 2(1−ω)k` at 0
//! cancels against the numerator.
//!
//! Evaluation writes the integrand as `Re[e^{−kζ} − e^{−kζ₂}]/D` with
//! `ζ = (1−t) − i x₁`, `ζ₂ = (1+t) − i x₁` and splits `∫₀^∞` into a finite
//! Gauss–Legendre part plus the exact tail of the leading rational factor
//! `1/(k−ω)`, expressed through the complex exponential integral — giving
//! uniform accuracy up to the top boundary. The horizontal decay rate is the
//! imaginary zero `k = iκ*` of `D`, where `κ*/tan κ* = ω`.
//!
//! The singular constant `Cˢ = lim_{x→P_S}(Ψ₁ˢ + log|x−P_S|)` is extracted
//! by two-stage Richardson extrapolation and cross-checked against the
//! independent identity `Cˢ = −γ + ∫₀^∞ [1/(k·coth k − ω) − 1/(k+1)] dk`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Field2, Hessian2, Point2};
use crate::numerics::quad::{integrate_adaptive, integrate_panels_complex};
use crate::numerics::special::e1;
use crate::numerics::EULER_GAMMA;
use crate::params::PhysicalParams;

/// The exact strip stream function `Ψˢ`.
#[derive(Debug, Clone, Copy)]
pub struct StripField {
    pub omega: f64,
    pub d_s: f64,
}

impl StripField {
    pub fn new(p: &PhysicalParams) -> Self {
        Self {
            omega: p.omega,
            d_s: p.d_s,
        }
    }

    /// The source point `P_S = (0, −dˢ)` on the top line.
    pub fn source_point(&self) -> Point2 {
        Point2::new(0.0, -self.d_s)
    }
}

impl Field2 for StripField {
    fn value(&self, p: Point2) -> f64 {
        let s = p.x2 + self.d_s;
        -0.5 * self.omega * s * s - s
    }
    fn gradient(&self, p: Point2) -> Point2 {
        Point2::new(0.0, -self.omega * (p.x2 + self.d_s) - 1.0)
    }
    fn hessian(&self, _p: Point2) -> Hessian2 {
        Hessian2::new(0.0, 0.0, -self.omega)
    }
}

/// `D(k) = (k−ω) + (k+ω)e^{−2k}` in the cancellation-free form
/// `k(1+e^{−2k}) + ω·expm1(−2k)`.
fn dispersion(omega: f64, k: f64) -> f64 {
    let e = (-2.0 * k).exp();
    k * (1.0 + e) + omega * (-2.0 * k).exp_m1()
}

/// The horizontal decay rate `κ*` of the strip correction: the unique root
/// of `κ/tan κ = ω` in `(0, π/2)` (the imaginary zero `iκ*` of `D`).
pub fn decay_rate(omega: f64) -> f64 {
    assert!(omega > 0.0 && omega < 1.0);
    let f = |k: f64| k / k.tan() - omega;
    let (mut lo, mut hi) = (1e-9, std::f64::consts::FRAC_PI_2 - 1e-9);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The correction field `Ψ₁ˢ` in physical coordinates.
#[derive(Debug, Clone, Copy)]
pub struct StripCorrection {
    pub omega: f64,
    pub d_s: f64,
    /// The extracted singular constant `Cˢ`.
    pub c_s: f64,
    /// Split point of the Fourier integral (must exceed `ω`).
    k_split: f64,
    /// Upper end of the numerically integrated remainder (`e^{−2k}` tail).
    k_max: f64,
    order: usize,
}

impl StripCorrection {
    /// Builds the correction and extracts `Cˢ`. Fails if `ω` is too close to
    /// the first Robin eigenvalue of the strip (`ω = 1`, where `D` degenerates
    /// at `k = 0`).
    pub fn build(p: &PhysicalParams) -> Result<Self> {
        let margin = 1.0 - p.omega;
        if margin < 1e-3 {
            return Err(Error::IllConditioned {
                what: "strip correction dispersion factor",
                margin,
            });
        }
        let mut corr = Self {
            omega: p.omega,
            d_s: p.d_s,
            c_s: 0.0,
            k_split: 2.0,
            k_max: 22.0,
            order: 16,
        };
        corr.c_s = corr.extract_cs();
        Ok(corr)
    }

    /// Independent route to `Cˢ`: the closed integral identity
    /// `−γ + ∫₀^∞ [1/(k coth k − ω) − 1/(k+1)] dk`.
    pub fn cs_integral_oracle(omega: f64) -> f64 {
        let f = |k: f64| {
            if k < 1e-8 {
                // k coth k − ω → 1 − ω.
                1.0 / (1.0 - omega) - 1.0 / (k + 1.0)
            } else {
                1.0 / (k / k.tanh() - omega) - 1.0 / (k + 1.0)
            }
        };
        // Integrand ~ (1+ω)/k² beyond the cutoff; add the analytic tail.
        let cut = 400.0;
        let body = integrate_adaptive(&f, 0.0, cut, 1e-13);
        // ∫_cut^∞ [1/(k−ω) − 1/(k+1)] dk = log((cut+1)/(cut−ω)).
        let tail = ((cut + 1.0) / (cut - omega)).ln();
        -EULER_GAMMA + body + tail
    }

    /// `Cˢ` by two-stage Richardson extrapolation of `Ψ₁ˢ + log r` along a
    /// vertical approach to `P_S` (error model `a·r·log r + b·r`).
    fn extract_cs(&self) -> f64 {
        let v = |r: f64| self.eval(0.0, 1.0 - r).0 + r.ln();
        let w = |r: f64| 2.0 * v(0.5 * r) - v(r); // kills r·log r up to c·r
        let r0 = 1e-3;
        2.0 * w(0.5 * r0) - w(r0)
    }

    /// Number of panels needed to resolve `cos(k x₁)` over a `k`-interval of
    /// the given length.
    fn panels(len: f64, x1: f64) -> usize {
        (4.0 * len / 2.0 + len * x1.abs() / 4.0).ceil() as usize + 4
    }

    /// Moment integrals `P_m(ζ) = ∫₀^∞ k^m e^{−kζ}/D(k) dk` for `m = 1, 2`
    /// (individually convergent) at `Re ζ ≥ 0`, `ζ ≠ 0`.
    fn p_m(&self, m: i32, zeta: Complex64) -> Complex64 {
        let om = self.omega;
        let x1 = -zeta.im;
        let head = integrate_panels_complex(
            |k| {
                let d = dispersion(om, k);
                k.powi(m) * (-k * zeta).exp() / d
            },
            1e-14,
            self.k_split,
            Self::panels(self.k_split, x1),
            self.order,
        );
        let rem = integrate_panels_complex(
            |k| {
                let d = dispersion(om, k);
                let r = 1.0 / d - 1.0 / (k - om);
                k.powi(m) * (-k * zeta).exp() * r
            },
            self.k_split,
            self.k_max,
            Self::panels(self.k_max - self.k_split, x1),
            self.order,
        );
        head + rem + self.tail_moment(m, zeta)
    }

    /// `∫_{k_split}^∞ k^m e^{−kζ}/(k−ω) dk` in closed form via `E₁`.
    fn tail_moment(&self, m: i32, zeta: Complex64) -> Complex64 {
        let om = self.omega;
        let a = self.k_split - om; // > 0
        let t0 = (-om * zeta).exp() * e1(a * zeta);
        match m {
            0 => t0,
            1 => {
                let i0 = (-self.k_split * zeta).exp() / zeta;
                i0 + om * t0
            }
            2 => {
                let e = (-self.k_split * zeta).exp();
                let i0 = e / zeta;
                let i1 = e * (a / zeta + 1.0 / (zeta * zeta));
                i1 + 2.0 * om * i0 + om * om * t0
            }
            _ => unreachable!("moments above 2 are not used"),
        }
    }

    /// Difference integral `P₀(ζ) − P₀(ζ₂)` (each term alone diverges at
    /// `k = 0`; the combination is regular).
    fn d_0(&self, zeta: Complex64, zeta2: Complex64) -> Complex64 {
        let om = self.omega;
        let x1 = -zeta.im;
        let head = integrate_panels_complex(
            |k| {
                let d = dispersion(om, k);
                ((-k * zeta).exp() - (-k * zeta2).exp()) / d
            },
            1e-14,
            self.k_split,
            Self::panels(self.k_split, x1),
            self.order,
        );
        let rem = integrate_panels_complex(
            |k| {
                let d = dispersion(om, k);
                let r = 1.0 / d - 1.0 / (k - om);
                ((-k * zeta).exp() - (-k * zeta2).exp()) * r
            },
            self.k_split,
            self.k_max,
            Self::panels(self.k_max - self.k_split, x1),
            self.order,
        );
        head + rem + self.tail_moment(0, zeta) - self.tail_moment(0, zeta2)
    }

    /// Value, gradient, and Hessian at `(x₁, t)`, `t = x₂ + 1 + dˢ ∈ [0, 1]`.
    ///
    /// With `G = P₀` holomorphic, `Ψ₁ˢ = Re[G(ζ) − G(ζ₂)]`,
    /// `ζ = (1−t) − ix₁`, `ζ₂ = (1+t) − ix₁`, and the chain rule gives all
    /// partials from the moments `P₁, P₂` at `ζ` and `ζ₂`.
    fn eval(&self, x1: f64, t: f64) -> (f64, Point2, Hessian2) {
        let zeta = Complex64::new(1.0 - t, -x1);
        let zeta2 = Complex64::new(1.0 + t, -x1);
        let d0 = self.d_0(zeta, zeta2);
        let (p1a, p1b) = (self.p_m(1, zeta), self.p_m(1, zeta2));
        let (p2a, p2b) = (self.p_m(2, zeta), self.p_m(2, zeta2));
        let value = d0.re;
        let grad = Point2::new(-(p1a - p1b).im, (p1a + p1b).re);
        let hess = Hessian2::new(-(p2a - p2b).re, -(p2a + p2b).im, (p2a - p2b).re);
        (value, grad, hess)
    }

    fn depth(&self, p: Point2) -> f64 {
        p.x2 + 1.0 + self.d_s
    }
}

impl Field2 for StripCorrection {
    fn value(&self, p: Point2) -> f64 {
        self.eval(p.x1, self.depth(p)).0
    }
    fn gradient(&self, p: Point2) -> Point2 {
        self.eval(p.x1, self.depth(p)).1
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        self.eval(p.x1, self.depth(p)).2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fit::exponential_decay_fit;

    fn correction() -> (PhysicalParams, StripCorrection) {
        let p = PhysicalParams::defaults(1e-3).unwrap();
        let c = StripCorrection::build(&p).unwrap();
        (p, c)
    }

    #[test]
    fn strip_field_exact_identities() {
        let p = PhysicalParams::defaults(1e-3).unwrap();
        let s = StripField::new(&p);
        // Top line: Ψˢ = 0, ∇Ψˢ = (0, −1); bottom: Ψˢ = β.
        let top = Point2::new(3.7, -p.d_s);
        assert_eq!(s.value(top), 0.0);
        assert_eq!(s.gradient(top), Point2::new(0.0, -1.0));
        let bottom = Point2::new(-1.2, -1.0 - p.d_s);
        assert!((s.value(bottom) - p.beta_bottom).abs() < 1e-15);
        // −ΔΨˢ = ω everywhere.
        assert_eq!(-s.laplacian(Point2::new(0.4, -0.6)), p.omega);
    }

    #[test]
    fn dispersion_positive_and_linear_at_zero() {
        for &om in &[0.2, 0.5, 0.9] {
            for k in 1..2000 {
                let k = k as f64 * 0.01;
                assert!(dispersion(om, k) > 0.0, "D({k}) at ω={om}");
            }
            let slope = dispersion(om, 1e-9) / 1e-9;
            assert!((slope - 2.0 * (1.0 - om)).abs() < 1e-6);
        }
    }

    #[test]
    fn decay_rate_solves_its_equation() {
        let k = decay_rate(0.5);
        assert!((k / k.tan() - 0.5).abs() < 1e-12);
        assert!((k - 1.1656).abs() < 1e-4);
        // Monotone in ω: stronger vorticity, slower decay.
        assert!(decay_rate(0.8) < decay_rate(0.5));
    }

    #[test]
    fn bottom_dirichlet_and_evenness() {
        let (p, c) = correction();
        for &x1 in &[0.0, 0.7, 3.0, 8.0] {
            assert!(c.value(Point2::new(x1, -1.0 - p.d_s)).abs() <= 1e-8);
            let a = c.value(Point2::new(x1, -0.3 - p.d_s));
            let b = c.value(Point2::new(-x1, -0.3 - p.d_s));
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn interior_derivatives_match_finite_differences() {
        let (p, c) = correction();
        let h = 1e-4;
        for &(x1, x2off) in &[(0.6, -0.3), (1.5, -0.7), (-2.2, -0.45), (0.1, -0.9)] {
            let x = Point2::new(x1, x2off - p.d_s);
            let g = c.gradient(x);
            let e1v = Point2::new(1.0, 0.0);
            let e2v = Point2::new(0.0, 1.0);
            let fd = |e: Point2| {
                (8.0 * (c.value(x + e * h) - c.value(x - e * h))
                    - (c.value(x + e * (2.0 * h)) - c.value(x - e * (2.0 * h))))
                    / (12.0 * h)
            };
            assert!((g.x1 - fd(e1v)).abs() < 1e-9, "at {x:?}");
            assert!((g.x2 - fd(e2v)).abs() < 1e-9, "at {x:?}");
            let hess = c.hessian(x);
            let fdg = |e: Point2| {
                let gp = c.gradient(x + e * h);
                let gm = c.gradient(x - e * h);
                let gp2 = c.gradient(x + e * (2.0 * h));
                let gm2 = c.gradient(x - e * (2.0 * h));
                Point2::new(
                    (8.0 * (gp.x1 - gm.x1) - (gp2.x1 - gm2.x1)) / (12.0 * h),
                    (8.0 * (gp.x2 - gm.x2) - (gp2.x2 - gm2.x2)) / (12.0 * h),
                )
            };
            let h1 = fdg(e1v);
            let h2 = fdg(e2v);
            assert!((hess.d11 - h1.x1).abs() < 1e-7, "at {x:?}");
            assert!((hess.d12 - h1.x2).abs() < 1e-7, "at {x:?}");
            assert!((hess.d12 - h2.x1).abs() < 1e-7, "at {x:?}");
            assert!((hess.d22 - h2.x2).abs() < 1e-7, "at {x:?}");
            // Harmonic: the trace of the analytic Hessian vanishes by the
            // holomorphic construction; check the FD trace independently.
            assert!((h1.x1 + h2.x2).abs() < 1e-7, "FD Laplacian at {x:?}");
        }
    }

    #[test]
    fn top_robin_residual_vanishes_away_from_the_source() {
        let (p, c) = correction();
        for &x1 in &[0.5, 1.0, 2.0, 4.0, 6.0] {
            let x = Point2::new(x1, -p.d_s);
            let residual = c.gradient(x).x2 - p.omega * c.value(x);
            assert!(residual.abs() <= 1e-8, "x1 = {x1}: {residual}");
        }
    }

    #[test]
    fn singular_constant_matches_the_integral_oracle() {
        let (p, c) = correction();
        // Two finest Richardson levels agree.
        let v = |r: f64| c.eval(0.0, 1.0 - r).0 + r.ln();
        let w = |r: f64| 2.0 * v(0.5 * r) - v(r);
        let lvl1 = 2.0 * w(2e-3) - w(4e-3);
        let lvl2 = 2.0 * w(1e-3) - w(2e-3);
        assert!((lvl1 - lvl2).abs() <= 1e-3);
        // Independent closed integral identity.
        let oracle = StripCorrection::cs_integral_oracle(p.omega);
        assert!(
            (c.c_s - oracle).abs() < 1e-6,
            "Richardson {} vs oracle {}",
            c.c_s,
            oracle
        );
    }

    #[test]
    fn horizontal_decay_at_the_expected_rate() {
        let (p, c) = correction();
        let xs: Vec<f64> = (0..17).map(|i| 2.0 + 0.5 * i as f64).collect();
        let ys: Vec<f64> = xs
            .iter()
            .map(|&x1| c.value(Point2::new(x1, -0.5 - p.d_s)).abs())
            .collect();
        let (_, rate) = exponential_decay_fit(&xs, &ys);
        let kstar = decay_rate(p.omega);
        assert!(rate >= p.mu, "fitted rate {rate} below μ = {}", p.mu);
        assert!((rate - kstar).abs() < 0.05 * kstar, "rate {rate} vs κ* {kstar}");
    }

    #[test]
    fn near_resonance_is_rejected() {
        let mut p = PhysicalParams::defaults(1e-3).unwrap();
        p.omega = 0.9995;
        assert!(matches!(
            StripCorrection::build(&p),
            Err(Error::IllConditioned { .. })
        ));
    }
}
