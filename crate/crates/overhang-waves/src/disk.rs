//! The disk block: a rigidly rotating fluid disk and its correction field.
//!
//! The base field `Ψᴰ(x) = (ω/4)(R² − |x − c|²)`, `c = (0, R + dᴰ)`, solves
//! the overdetermined problem on `∂B_R(c)` exactly when `ωR = 2`. The
//! correction `Ψ₁ᴰ` is the harmonic function with a logarithmic point source
//! at the bottom `P_D = (0, dᴰ)` of the circle solving the Robin problem
//!
//! `∂_ν Ψ₁ᴰ − (1/R) Ψ₁ᴰ = π δ_{P_D} + g₀ (x₂ + dˢ)` on `∂B_R(c)`,
//!
//! which is solvable precisely when `g₀ = 1/R²` (orthogonality of the data
//! against the kernel `Z₂ᴰ = x₂ − (R + dᴰ)`).
//!
//! `Ψ₁ᴰ` is built in closed form on the unit disk (`ζ = (x − c)/R`):
//!
//! `f(ζ) = −log(i(ζ+i)) − ½ + iπ + iζ + (1 − iζ) log(1 − iζ)`
//! `     = −½ + iζ + Σ_{n≥2} iⁿ ζⁿ/(n−1)`,
//!
//! whose boundary combination is exactly `Re(ζ f′ − f) = ζ₂` on `|ζ| = 1`
//! (away from the source at `ζ = −i`, where the `−log` carries the `π δ`).
//! The physical field is `Ψ₁ᴰ(x) = Re f(ζ) − d_c + A ζ₂` with
//! `d_c = (R + dᴰ + dˢ)/R` fixing the Robin data and
//! `A = ½ − d_c + log R` cancelling the constant term of the expansion at
//! `P_D`, so that `Ψ₁ᴰ = −log|x − P_D| + O(|x−P_D| log|x−P_D|)`. All
//! logarithms are taken as `log(ζ+i)` (principal), whose cut is the vertical
//! slit `{(0, t) : t < dᴰ}` in physical coordinates — the field extends
//! harmonically across `∂Ωᴰ` minus that slit.

use num_complex::Complex64;

use crate::field::{Field2, Hessian2, Point2};
use crate::numerics::quad::integrate_panels;
use crate::params::PhysicalParams;

/// The exact disk stream function `Ψᴰ`.
#[derive(Debug, Clone, Copy)]
pub struct DiskField {
    pub omega: f64,
    pub radius: f64,
    /// Center height `R + dᴰ`.
    pub center2: f64,
}

impl DiskField {
    pub fn new(p: &PhysicalParams) -> Self {
        Self {
            omega: p.omega,
            radius: p.radius,
            center2: p.radius + p.d_d,
        }
    }

    pub fn center(&self) -> Point2 {
        Point2::new(0.0, self.center2)
    }

    /// The source point `P_D = (0, dᴰ)` at the bottom of the circle.
    pub fn source_point(&self) -> Point2 {
        Point2::new(0.0, self.center2 - self.radius)
    }
}

impl Field2 for DiskField {
    fn value(&self, p: Point2) -> f64 {
        let d = p - self.center();
        0.25 * self.omega * (self.radius * self.radius - d.norm_sq())
    }
    fn gradient(&self, p: Point2) -> Point2 {
        (p - self.center()) * (-0.5 * self.omega)
    }
    fn hessian(&self, _p: Point2) -> Hessian2 {
        Hessian2::new(-0.5 * self.omega, 0.0, -0.5 * self.omega)
    }
}

/// Which kernel of the disk Robin problem: `Z₁ᴰ(x) = x₁` or
/// `Z₂ᴰ(x) = x₂ − (R + dᴰ)` (infinitesimal translations of `Ψᴰ`).
#[derive(Debug, Clone, Copy)]
pub struct DiskKernel {
    pub component: usize,
    pub center2: f64,
}

impl Field2 for DiskKernel {
    fn value(&self, p: Point2) -> f64 {
        match self.component {
            1 => p.x1,
            _ => p.x2 - self.center2,
        }
    }
    fn gradient(&self, _p: Point2) -> Point2 {
        match self.component {
            1 => Point2::new(1.0, 0.0),
            _ => Point2::new(0.0, 1.0),
        }
    }
    fn hessian(&self, _p: Point2) -> Hessian2 {
        Hessian2::default()
    }
}

/// Evaluation route for the correction field: the closed form is primary;
/// the truncated power series is an independent oracle (valid for `|ζ| < 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiskCorrectionRoute {
    ClosedForm,
    Series { terms: usize },
}

/// The correction field `Ψ₁ᴰ` in physical coordinates.
#[derive(Debug, Clone, Copy)]
pub struct DiskCorrection {
    pub radius: f64,
    pub center2: f64,
    /// Additive constant `−d_c = −(R + dᴰ + dˢ)/R`.
    pub minus_dc: f64,
    /// Kernel coefficient `A = ½ − d_c + log R` multiplying `ζ₂`.
    pub a_coeff: f64,
    pub route: DiskCorrectionRoute,
}

impl DiskCorrection {
    pub fn build(p: &PhysicalParams) -> Self {
        let dc = (p.radius + p.d_d + p.d_s) / p.radius;
        Self {
            radius: p.radius,
            center2: p.radius + p.d_d,
            minus_dc: -dc,
            a_coeff: 0.5 - dc + p.radius.ln(),
            route: DiskCorrectionRoute::ClosedForm,
        }
    }

    pub fn with_route(self, route: DiskCorrectionRoute) -> Self {
        Self { route, ..self }
    }

    /// `f(ζ)` and its first three complex derivatives.
    ///
    /// Written in `w = ζ + i` with the principal `log w`, whose cut
    /// (`w` negative real) is the physical slit below `P_D`:
    /// `f = −log w + iπ/2 − ½ + iζ − i w log w − (π/2) w`,
    /// `f′ = −1/w − i log w − π/2`, `f″ = 1/w² − i/w`, `f‴ = −2/w³ + i/w²`.
    fn f_closed(zeta: Complex64) -> [Complex64; 4] {
        let i = Complex64::new(0.0, 1.0);
        let w = zeta + i;
        let lw = w.ln();
        let half_pi = std::f64::consts::FRAC_PI_2;
        let f = -lw + i * half_pi - 0.5 + i * zeta - i * w * lw - half_pi * w;
        let f1 = -1.0 / w - i * lw - half_pi;
        let f2 = 1.0 / (w * w) - i / w;
        let f3 = -2.0 / (w * w * w) + i / (w * w);
        [f, f1, f2, f3]
    }

    /// Truncated series `f(ζ) = −½ + iζ + Σ_{n=2}^{N} iⁿ ζⁿ/(n−1)` with
    /// derivatives; only valid inside the unit disk.
    fn f_series(zeta: Complex64, terms: usize) -> [Complex64; 4] {
        let i = Complex64::new(0.0, 1.0);
        let mut f = Complex64::new(-0.5, 0.0) + i * zeta;
        let mut f1 = i;
        let mut f2 = Complex64::new(0.0, 0.0);
        let mut f3 = Complex64::new(0.0, 0.0);
        let mut pow = i * zeta; // iⁿ ζⁿ running power, currently n = 1
        for n in 2..=terms {
            pow *= i * zeta;
            let nf = n as f64;
            let c = 1.0 / (nf - 1.0);
            f += pow * c;
            // Derivatives of iⁿζⁿ/(n−1): divide out powers of ζ.
            if zeta.norm() > 0.0 {
                f1 += pow * (nf * c) / zeta;
                f2 += pow * (nf * (nf - 1.0) * c) / (zeta * zeta);
                f3 += pow * (nf * (nf - 1.0) * (nf - 2.0) * c) / (zeta * zeta * zeta);
            } else if n == 2 {
                f2 += 2.0 * i * i * c;
            } else if n == 3 {
                f3 += 6.0 * i * i * i * c;
            }
        }
        [f, f1, f2, f3]
    }

    fn unit_coords(&self, p: Point2) -> Complex64 {
        Complex64::new(p.x1 / self.radius, (p.x2 - self.center2) / self.radius)
    }

    fn f_at(&self, zeta: Complex64) -> [Complex64; 4] {
        match self.route {
            DiskCorrectionRoute::ClosedForm => Self::f_closed(zeta),
            DiskCorrectionRoute::Series { terms } => Self::f_series(zeta, terms),
        }
    }
}

impl Field2 for DiskCorrection {
    fn value(&self, p: Point2) -> f64 {
        let zeta = self.unit_coords(p);
        self.f_at(zeta)[0].re + self.minus_dc + self.a_coeff * zeta.im
    }

    fn gradient(&self, p: Point2) -> Point2 {
        let zeta = self.unit_coords(p);
        let f1 = self.f_at(zeta)[1];
        Point2::new(f1.re / self.radius, (-f1.im + self.a_coeff) / self.radius)
    }

    fn hessian(&self, p: Point2) -> Hessian2 {
        let zeta = self.unit_coords(p);
        let f2 = self.f_at(zeta)[2] / (self.radius * self.radius);
        Hessian2::new(f2.re, -f2.im, -f2.re)
    }
}

/// Solvability defect of the Robin data `π δ_{P_D} + g₀'(x₂ + dˢ)` against
/// the kernel `Z₂ᴰ`: `π Z₂ᴰ(P_D) + g₀' ∮ (x₂ + dˢ) Z₂ᴰ ds`
/// `= −πR + g₀' πR³` (computed by quadrature). Vanishes iff `g₀' = 1/R²`.
pub fn mode1_solvability_defect(p: &PhysicalParams, g0: f64) -> f64 {
    let r = p.radius;
    let c2 = r + p.d_d;
    let integral = integrate_panels(
        |theta: f64| {
            let x2 = c2 + r * theta.sin();
            (x2 + p.d_s) * (x2 - c2) * r
        },
        0.0,
        2.0 * std::f64::consts::PI,
        16,
        12,
    );
    let delta_term = std::f64::consts::PI * ((c2 - r) - c2);
    delta_term + g0 * integral
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{robin_identities_check, BoundaryCurve};

    fn circle(p: &PhysicalParams, n: usize) -> BoundaryCurve {
        let c2 = p.radius + p.d_d;
        let r = p.radius;
        let params: Vec<f64> = (0..n)
            .map(|i| 2.0 * std::f64::consts::PI * i as f64 / (n - 1) as f64)
            .collect();
        BoundaryCurve::from_analytic(
            &params,
            move |t| Point2::new(r * t.cos(), c2 + r * t.sin()),
            move |t| Point2::new(-r * t.sin(), r * t.cos()),
            move |t| Point2::new(-r * t.cos(), -r * t.sin()),
        )
    }

    #[test]
    fn disk_field_overdetermined_identities() {
        let p = PhysicalParams::defaults(1e-3).unwrap();
        let disk = DiskField::new(&p);
        let curve = circle(&p, 400);
        // On the boundary: Ψᴰ = 0, ∇Ψᴰ = −(ω/2)(x−c) = −ν (since ωR = 2),
        // and D²Ψᴰ ν·ν = −ω/2 = −ω − s·κ with s = −1, κ = 1/R.
        for s in curve.samples() {
            assert!(disk.value(s.point).abs() < 1e-12);
        }
        let report = robin_identities_check(&disk, &curve, p.omega);
        assert_eq!(report.gradient_sign, -1.0);
        assert!(report.max_gradient_residual < 1e-10);
        assert!(report.max_hessian_residual < 1e-10);
    }

    #[test]
    fn boundary_identity_of_the_poisson_factor() {
        // Re(i/(ζ+i)) = ½ on the unit circle, away from ζ = −i.
        let mut worst = 0.0f64;
        for k in 0..4000 {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 4000.0;
            let zeta = Complex64::new(t.cos(), t.sin());
            if (zeta + Complex64::new(0.0, 1.0)).norm() < 0.1 {
                continue;
            }
            let v = (Complex64::new(0.0, 1.0) / (zeta + Complex64::new(0.0, 1.0))).re;
            worst = worst.max((v - 0.5).abs());
        }
        assert!(worst <= 1e-12, "worst = {worst}");
    }

    #[test]
    fn series_and_closed_form_agree() {
        let p = PhysicalParams::defaults(1e-3).unwrap();
        let closed = DiskCorrection::build(&p);
        let series = closed.with_route(DiskCorrectionRoute::Series { terms: 4000 });
        // Interior points with |ζ| ≤ 0.8: series tail ≤ 0.8^N/(N−1), tiny.
        for &(z1, z2) in &[(0.0, 0.0), (0.5, 0.3), (-0.6, -0.4), (0.0, -0.8), (0.7, 0.1)] {
            let x = Point2::new(
                z1 * p.radius,
                closed.center2 + z2 * p.radius,
            );
            assert!((closed.value(x) - series.value(x)).abs() < 1e-10, "at ζ=({z1},{z2})");
            assert!((closed.gradient(x) - series.gradient(x)).norm() < 1e-8);
            let (hc, hs) = (closed.hessian(x), series.hessian(x));
            assert!((hc.d11 - hs.d11).abs() + (hc.d12 - hs.d12).abs() < 1e-6);
        }
    }

    #[test]
    fn correction_is_harmonic_and_solves_the_robin_problem() {
        let p = PhysicalParams::defaults(1e-3).unwrap();
        let corr = DiskCorrection::build(&p);
        let disk = DiskField::new(&p);
        // Harmonic away from the source.
        for &(z1, z2) in &[(0.3, 0.4), (-0.5, 0.1), (0.0, 0.9), (0.6, -0.5)] {
            let x = Point2::new(z1 * p.radius, corr.center2 + z2 * p.radius);
            assert!(corr.laplacian(x).abs() < 1e-12);
        }
        // Robin residual on the boundary away from P_D.
        let curve = circle(&p, 1000);
        let mut worst = 0.0f64;
        for s in curve.samples() {
            if (s.point - disk.source_point()).norm() < 0.5 {
                continue;
            }
            let lhs = corr.gradient(s.point).dot(s.normal) - corr.value(s.point) / p.radius;
            let rhs = p.g0 * (s.point.x2 + p.d_s);
            worst = worst.max((lhs - rhs).abs());
        }
        assert!(worst <= 1e-8, "worst Robin residual {worst}");
    }

    #[test]
    fn expansion_at_the_source_has_no_constant() {
        // Ψ₁ᴰ + log|x − P_D| → 0 as x → P_D, with remainder O(r log r).
        let p = PhysicalParams::defaults(1e-3).unwrap();
        let corr = DiskCorrection::build(&p);
        let pd = DiskField::new(&p).source_point();
        let mut prev = f64::INFINITY;
        for k in 1..=6 {
            let r = 10f64.powi(-k);
            // Approach along +45° (avoiding the slit below P_D).
            let x = pd + Point2::new(r / 2f64.sqrt(), r / 2f64.sqrt());
            let v = corr.value(x) + (x - pd).norm().ln();
            let bound = r * r.ln().abs();
            assert!(v.abs() < 20.0 * bound, "r = {r}: {v} vs {bound}");
            assert!(v.abs() < prev);
            prev = v.abs();
        }
    }

    #[test]
    fn source_strength_is_one() {
        // The flux of −∇Ψ₁ᴰ through a small circle around P_D is 2π·(log
        // coefficient) = 2π.
        let p = PhysicalParams::defaults(1e-3).unwrap();
        let corr = DiskCorrection::build(&p);
        let pd = DiskField::new(&p).source_point();
        let r = 1e-3;
        let flux = integrate_panels(
            |t: f64| {
                let nu = Point2::new(t.cos(), t.sin());
                let x = pd + nu * r;
                -corr.gradient(x).dot(nu) * r
            },
            0.0,
            2.0 * std::f64::consts::PI,
            16,
            12,
        );
        assert!((flux - 2.0 * std::f64::consts::PI).abs() < 1e-5, "flux = {flux}");
    }

    #[test]
    fn solvability_defect_detects_g0() {
        let p = PhysicalParams::defaults(1e-3).unwrap();
        let exact = mode1_solvability_defect(&p, p.g0);
        assert!(exact.abs() < 1e-10, "defect at g0: {exact}");
        for &fac in &[0.9, 1.1] {
            let d = mode1_solvability_defect(&p, fac * p.g0);
            let expect = (fac - 1.0) * std::f64::consts::PI * p.radius;
            assert!((d - expect).abs() < 1e-9, "fac = {fac}: {d} vs {expect}");
        }
    }

    #[test]
    fn harmonic_extension_across_the_boundary() {
        // Just outside the disk (away from the slit), the closed form agrees
        // with the interior second-order Taylor continuation to O(h³).
        let p = PhysicalParams::defaults(1e-3).unwrap();
        let corr = DiskCorrection::build(&p);
        let c = Point2::new(0.0, corr.center2);
        for &t in &[0.3f64, 1.4, 2.5, 4.0] {
            let nu = Point2::new(t.cos(), t.sin());
            let x0 = c + nu * p.radius;
            let mut errs = Vec::new();
            for &h in &[2e-2, 1e-2] {
                let x = x0 + nu * h;
                let taylor = corr.value(x0)
                    + h * corr.gradient(x0).dot(nu)
                    + 0.5 * h * h * corr.hessian(x0).quad(nu);
                errs.push((corr.value(x) - taylor).abs());
            }
            // Halving h cuts the O(h³) mismatch by ≈ 8.
            assert!(errs[1] < errs[0] / 5.0, "t = {t}: {errs:?}");
            assert!(errs[0] < 1e-4);
        }
    }
}
