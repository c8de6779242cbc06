//! The cutoff-function family used to interpolate the building blocks.
//!
//! The basic profile `η₀` is a one-sided step-down: `η₀(s) = 1` for `s ≤ 1`,
//! `η₀(s) = 0` for `s ≥ 2`, with a `C³` degree-7 polynomial transition in
//! between. (One-sidedness matters: the half-plane cutoffs `η₁^± = 1 − η₀(±y₂)`
//! must vanish on the whole half-plane `±y₂ ≤ 1`, not just in a band.) `C³`
//! regularity is enough for every Hessian-level formula in the construction
//! while keeping all derivatives in closed form.
//!
//! From `η₀` we derive the radial cutoff `χ₀(x) = η₀(|x|)` and, given the
//! scale parameters `(ε, δ₁, δ₂)`, the region cutoffs
//!
//! - `χᴴ(x) = χ₀(x/δ₂)` (hairpin / neck region),
//! - `χˢ(x) = [1 − χ₀(x/δ₁)] η₁⁻(x/ε)` (strip region),
//! - `χᴰ(x) = [1 − χ₀(x/δ₁)] η₁⁺(x/ε)` (disk region),
//!
//! and their enlarged companions `χ₂ᴴ(x) = χ₀(x/(2δ₂))`,
//! `χ₂ˢ(x) = [1 − χ₀(2x/δ₁)] η₁⁻(2x/ε)`, `χ₂ᴰ(x) = [1 − χ₀(2x/δ₁)] η₁⁺(2x/ε)`,
//! which equal 1 on the support of their partner: `χ·χ₂ = χ` pointwise.

use crate::field::{ComplementField, Field2, Hessian2, Point2, ProductField};
use crate::params::PhysicalParams;

/// Smoothstep `S(t) = 35t⁴ − 84t⁵ + 70t⁶ − 20t⁷` on `[0,1]`:
/// `S(0)=0`, `S(1)=1`, with three vanishing derivatives at both ends.
fn smoothstep7(t: f64) -> [f64; 4] {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t2 * t2;
    [
        t4 * (35.0 - 84.0 * t + 70.0 * t2 - 20.0 * t3),
        // S' = 140 t³ (1−t)³
        140.0 * t3 * (1.0 - t).powi(3),
        t2 * (420.0 - 1680.0 * t + 2100.0 * t2 - 840.0 * t3),
        t * (840.0 - 5040.0 * t + 8400.0 * t2 - 4200.0 * t3),
    ]
}

/// `η₀(s)` alone.
pub fn eta0(s: f64) -> f64 {
    eta0_derivs(s)[0]
}

/// `η₀(s)` with its first three derivatives: `[η₀, η₀′, η₀″, η₀‴]`.
pub fn eta0_derivs(s: f64) -> [f64; 4] {
    if s <= 1.0 {
        [1.0, 0.0, 0.0, 0.0]
    } else if s >= 2.0 {
        [0.0, 0.0, 0.0, 0.0]
    } else {
        let sm = smoothstep7(s - 1.0);
        [1.0 - sm[0], -sm[1], -sm[2], -sm[3]]
    }
}

/// Radial cutoff `χ₀(x/a) = η₀(|x|/a)` as a planar field with analytic
/// gradient and Hessian.
#[derive(Debug, Clone, Copy)]
pub struct RadialCutoff {
    /// Argument scale `a`: transition on `a ≤ |x| ≤ 2a`.
    pub scale: f64,
}

impl Field2 for RadialCutoff {
    fn value(&self, p: Point2) -> f64 {
        eta0(p.norm() / self.scale)
    }

    fn gradient(&self, p: Point2) -> Point2 {
        let r = p.norm();
        if r <= self.scale || r >= 2.0 * self.scale {
            return Point2::default();
        }
        let d = eta0_derivs(r / self.scale);
        p * (d[1] / (self.scale * r))
    }

    fn hessian(&self, p: Point2) -> Hessian2 {
        let r = p.norm();
        if r <= self.scale || r >= 2.0 * self.scale {
            return Hessian2::default();
        }
        let d = eta0_derivs(r / self.scale);
        let g1 = d[1] / self.scale; // dχ/dr
        let g2 = d[2] / (self.scale * self.scale); // d²χ/dr²
        // D²χ = (g2 − g1/r) x⊗x/r² + (g1/r) Id
        let a = (g2 - g1 / r) / (r * r);
        let b = g1 / r;
        Hessian2::new(
            a * p.x1 * p.x1 + b,
            a * p.x1 * p.x2,
            a * p.x2 * p.x2 + b,
        )
    }
}

/// Half-plane cutoff `η₁^±(x/a) = 1 − η₀(±x₂/a)`: vanishes for `±x₂ ≤ a`,
/// equals 1 for `±x₂ ≥ 2a`.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlaneCutoff {
    /// `+1` for `η₁⁺` (upper half-plane), `−1` for `η₁⁻`.
    pub sign: f64,
    /// Argument scale `a`.
    pub scale: f64,
}

impl Field2 for HalfPlaneCutoff {
    fn value(&self, p: Point2) -> f64 {
        1.0 - eta0(self.sign * p.x2 / self.scale)
    }

    fn gradient(&self, p: Point2) -> Point2 {
        let d = eta0_derivs(self.sign * p.x2 / self.scale);
        Point2::new(0.0, -d[1] * self.sign / self.scale)
    }

    fn hessian(&self, p: Point2) -> Hessian2 {
        let d = eta0_derivs(self.sign * p.x2 / self.scale);
        Hessian2::new(0.0, 0.0, -d[2] / (self.scale * self.scale))
    }
}

/// Strip- or disk-region cutoff `[1 − χ₀(x/d)] η₁^±(x/a)`.
pub type RegionCutoff = ProductField<ComplementField<RadialCutoff>, HalfPlaneCutoff>;

/// The full cutoff family at the scales `(ε, δ₁, δ₂)` of a parameter set.
#[derive(Debug, Clone, Copy)]
pub struct CutoffFamily {
    pub epsilon: f64,
    pub delta1: f64,
    pub delta2: f64,
}

impl CutoffFamily {
    pub fn new(p: &PhysicalParams) -> Self {
        Self {
            epsilon: p.epsilon,
            delta1: p.delta1,
            delta2: p.delta2,
        }
    }

    /// `χᴴ(x) = χ₀(x/δ₂)`.
    pub fn chi_h(&self) -> RadialCutoff {
        RadialCutoff { scale: self.delta2 }
    }

    /// `χ₂ᴴ(x) = χ₀(x/(2δ₂))`.
    pub fn chi2_h(&self) -> RadialCutoff {
        RadialCutoff {
            scale: 2.0 * self.delta2,
        }
    }

    fn region(&self, sign: f64, shrink: f64) -> RegionCutoff {
        ProductField {
            f: ComplementField {
                f: RadialCutoff {
                    scale: self.delta1 / shrink,
                },
            },
            g: HalfPlaneCutoff {
                sign,
                scale: self.epsilon / shrink,
            },
        }
    }

    /// `χˢ(x) = [1 − χ₀(x/δ₁)] η₁⁻(x/ε)`.
    pub fn chi_s(&self) -> RegionCutoff {
        self.region(-1.0, 1.0)
    }

    /// `χ₂ˢ(x) = [1 − χ₀(2x/δ₁)] η₁⁻(2x/ε)`.
    pub fn chi2_s(&self) -> RegionCutoff {
        self.region(-1.0, 2.0)
    }

    /// `χᴰ(x) = [1 − χ₀(x/δ₁)] η₁⁺(x/ε)`.
    pub fn chi_d(&self) -> RegionCutoff {
        self.region(1.0, 1.0)
    }

    /// `χ₂ᴰ(x) = [1 − χ₀(2x/δ₁)] η₁⁺(2x/ε)`.
    pub fn chi2_d(&self) -> RegionCutoff {
        self.region(1.0, 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(field: &dyn Field2, p: Point2, h: f64, tol: f64) {
        let g = field.gradient(p);
        let e1 = Point2::new(1.0, 0.0);
        let e2 = Point2::new(0.0, 1.0);
        let d = |e: Point2| {
            (8.0 * (field.value(p + e * h) - field.value(p - e * h))
                - (field.value(p + e * (2.0 * h)) - field.value(p - e * (2.0 * h))))
                / (12.0 * h)
        };
        assert!((g.x1 - d(e1)).abs() < tol, "d1 at {p:?}");
        assert!((g.x2 - d(e2)).abs() < tol, "d2 at {p:?}");
        let hess = field.hessian(p);
        let dg = |e: Point2| {
            let gp = field.gradient(p + e * h);
            let gm = field.gradient(p - e * h);
            let gp2 = field.gradient(p + e * (2.0 * h));
            let gm2 = field.gradient(p - e * (2.0 * h));
            Point2::new(
                (8.0 * (gp.x1 - gm.x1) - (gp2.x1 - gm2.x1)) / (12.0 * h),
                (8.0 * (gp.x2 - gm.x2) - (gp2.x2 - gm2.x2)) / (12.0 * h),
            )
        };
        let h1 = dg(e1);
        let h2 = dg(e2);
        assert!((hess.d11 - h1.x1).abs() < tol, "d11 at {p:?}");
        assert!((hess.d12 - h1.x2).abs() < tol, "d12 at {p:?}");
        assert!((hess.d12 - h2.x1).abs() < tol, "d21 at {p:?}");
        assert!((hess.d22 - h2.x2).abs() < tol, "d22 at {p:?}");
    }

    #[test]
    fn eta0_plateaus_and_c3_joins() {
        assert_eq!(eta0(-5.0), 1.0);
        assert_eq!(eta0(1.0), 1.0);
        assert_eq!(eta0(2.0), 0.0);
        assert_eq!(eta0(7.0), 0.0);
        assert!((eta0(1.5) - 0.5).abs() < 1e-15);
        // Value and three derivatives continuous at the joins.
        for s in [1.0, 2.0] {
            let inside = eta0_derivs(s + 1e-9 * if s == 1.0 { 1.0 } else { -1.0 });
            let outside = eta0_derivs(s);
            for k in 0..4 {
                assert!((inside[k] - outside[k]).abs() < 1e-5, "join {s}, order {k}");
            }
        }
        // Monotone decreasing on the transition.
        let mut prev = 1.0;
        for i in 1..=100 {
            let v = eta0(1.0 + 0.01 * i as f64);
            assert!(v <= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn eta0_derivatives_match_finite_differences() {
        for i in 0..40 {
            let s = 0.9 + 0.03 * i as f64;
            let d = eta0_derivs(s);
            let h = 1e-4;
            let fd1 = (8.0 * (eta0(s + h) - eta0(s - h)) - (eta0(s + 2.0 * h) - eta0(s - 2.0 * h)))
                / (12.0 * h);
            assert!((d[1] - fd1).abs() < 1e-9, "s = {s}");
            let fd2 = (8.0 * (eta0_derivs(s + h)[1] - eta0_derivs(s - h)[1])
                - (eta0_derivs(s + 2.0 * h)[1] - eta0_derivs(s - 2.0 * h)[1]))
                / (12.0 * h);
            assert!((d[2] - fd2).abs() < 1e-7, "s = {s}");
            let fd3 = (8.0 * (eta0_derivs(s + h)[2] - eta0_derivs(s - h)[2])
                - (eta0_derivs(s + 2.0 * h)[2] - eta0_derivs(s - 2.0 * h)[2]))
                / (12.0 * h);
            assert!((d[3] - fd3).abs() < 1e-5, "s = {s}");
        }
    }

    #[test]
    fn radial_cutoff_derivatives_match_finite_differences() {
        let chi = RadialCutoff { scale: 0.7 };
        for i in 0..24 {
            let theta = 0.37 + 0.26 * i as f64;
            let r = 0.5 + 0.05 * i as f64;
            let p = Point2::new(r * theta.cos(), r * theta.sin());
            fd_check(&chi, p, 1e-4, 1e-7);
        }
        // Plateau checks.
        assert_eq!(chi.value(Point2::new(0.3, 0.2)), 1.0);
        assert_eq!(chi.value(Point2::new(2.0, 1.0)), 0.0);
        assert_eq!(chi.gradient(Point2::new(0.3, 0.2)), Point2::default());
    }

    #[test]
    fn region_cutoffs_match_their_factors_and_fd() {
        let p = PhysicalParams::defaults(1e-2).unwrap();
        let fam = CutoffFamily::new(&p);
        let chi_s = fam.chi_s();
        // Pointwise factorization against direct evaluation.
        for i in 0..30 {
            for j in 0..30 {
                let x = Point2::new(-0.25 + 0.5 * i as f64 / 29.0, -0.25 + 0.5 * j as f64 / 29.0);
                let expect = (1.0 - eta0(x.norm() / p.delta1)) * (1.0 - eta0(-x.x2 / p.epsilon));
                assert!((chi_s.value(x) - expect).abs() < 1e-15);
            }
        }
        // Derivative consistency in both transition bands.
        for &x in &[
            Point2::new(0.06, -0.03),
            Point2::new(0.0, -0.015),
            Point2::new(-0.07, -0.012),
            Point2::new(0.04, -0.018),
        ] {
            fd_check(&chi_s, x, 1e-5, 1e-5);
        }
    }

    #[test]
    fn enlarged_cutoffs_dominate_their_partners() {
        // χ·χ₂ = χ for each of the three pairs, on a dense grid spanning all
        // transition scales.
        let p = PhysicalParams::defaults(1e-2).unwrap();
        let fam = CutoffFamily::new(&p);
        let pairs: [(&dyn Field2, &dyn Field2); 3] = [
            (&fam.chi_h(), &fam.chi2_h()),
            (&fam.chi_s(), &fam.chi2_s()),
            (&fam.chi_d(), &fam.chi2_d()),
        ];
        let n = 61;
        for (chi, chi2) in pairs {
            for i in 0..n {
                for j in 0..n {
                    let x = Point2::new(
                        -0.55 + 1.1 * i as f64 / (n - 1) as f64,
                        -0.55 + 1.1 * j as f64 / (n - 1) as f64,
                    );
                    let (a, b) = (chi.value(x), chi2.value(x));
                    assert!(
                        (a * b - a).abs() < 1e-15,
                        "identity fails at {x:?}: chi = {a}, chi2 = {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn region_cutoff_supports() {
        let p = PhysicalParams::defaults(1e-2).unwrap();
        let fam = CutoffFamily::new(&p);
        // χˢ = 1 well below the neck and away from the origin.
        assert_eq!(fam.chi_s().value(Point2::new(0.3, -0.3)), 1.0);
        // χˢ = 0 in the upper half-plane and inside |x| ≤ δ₁.
        assert_eq!(fam.chi_s().value(Point2::new(0.3, 0.1)), 0.0);
        assert_eq!(fam.chi_s().value(Point2::new(0.02, -0.02)), 0.0);
        // χᴰ mirrors it above the neck.
        assert_eq!(fam.chi_d().value(Point2::new(-0.2, 0.4)), 1.0);
        assert_eq!(fam.chi_d().value(Point2::new(-0.2, -0.4)), 0.0);
        // χᴴ is 1 at the origin and 0 outside 2δ₂.
        assert_eq!(fam.chi_h().value(Point2::default()), 1.0);
        assert_eq!(fam.chi_h().value(Point2::new(0.0, 0.45)), 0.0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn eta0_in_unit_interval_and_monotone(s1 in -3.0f64..4.0, s2 in -3.0f64..4.0) {
                let (a, b) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
                let (va, vb) = (eta0(a), eta0(b));
                prop_assert!((0.0..=1.0).contains(&va) && (0.0..=1.0).contains(&vb));
                prop_assert!(va >= vb);
            }

            #[test]
            fn dominance_identities_hold_everywhere(
                x1 in -0.6f64..0.6,
                x2 in -0.6f64..0.6,
                eps_exp in 1.5f64..3.0,
            ) {
                let p = PhysicalParams::defaults(10f64.powf(-eps_exp)).unwrap();
                let fam = CutoffFamily::new(&p);
                let x = Point2::new(x1, x2);
                let pairs: [(&dyn Field2, &dyn Field2); 3] = [
                    (&fam.chi_h(), &fam.chi2_h()),
                    (&fam.chi_s(), &fam.chi2_s()),
                    (&fam.chi_d(), &fam.chi2_d()),
                ];
                for (chi, chi2) in pairs {
                    let (a, b) = (chi.value(x), chi2.value(x));
                    prop_assert!((a * b - a).abs() < 1e-15);
                    prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
                }
            }
        }
    }
}
