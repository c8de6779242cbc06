//! Planar points, scalar fields, and sampled boundary curves.
//!
//! A [`Field2`] exposes pointwise value, gradient, and Hessian (and, where a
//! closed form exists, third derivatives). All block fields in this crate are
//! evaluated analytically — finite differencing only appears in the default
//! `third` fallback and in independent test oracles.
//!
//! A [`BoundaryCurve`] is a parametrized curve sampled together with its unit
//! tangent `T`, normal `ν = T⊥` (rotation of `T` by −π/2; parametrizations
//! are chosen so this is the outward normal of the fluid region), and signed
//! curvature `κ`.

use std::ops::{Add, Mul, Neg, Sub};

/// A point (or vector) in the plane. Coordinate names follow the domain
/// convention: `x1` horizontal, `x2` vertical.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn norm_sq(self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    /// Two-dimensional cross product `self × other` (a scalar).
    pub fn cross(self, other: Self) -> f64 {
        self.x1 * other.x2 - self.x2 * other.x1
    }

    /// Rotation by −π/2: `(x2, −x1)`. Maps a unit tangent to the normal
    /// convention used throughout.
    pub fn perp(self) -> Self {
        Self::new(self.x2, -self.x1)
    }

    pub fn scale(self, t: f64) -> Self {
        Self::new(self.x1 * t, self.x2 * t)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, t: f64) -> Point2 {
        self.scale(t)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x1, -self.x2)
    }
}

/// Symmetric 2×2 Hessian, stored as `[d11, d12, d22]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Hessian2 {
    pub d11: f64,
    pub d12: f64,
    pub d22: f64,
}

impl Hessian2 {
    pub const fn new(d11: f64, d12: f64, d22: f64) -> Self {
        Self { d11, d12, d22 }
    }

    pub fn trace(self) -> f64 {
        self.d11 + self.d22
    }

    /// Quadratic form `v · (H v)`.
    pub fn quad(self, v: Point2) -> f64 {
        self.d11 * v.x1 * v.x1 + 2.0 * self.d12 * v.x1 * v.x2 + self.d22 * v.x2 * v.x2
    }

    /// Matrix-vector product `H v`.
    pub fn apply(self, v: Point2) -> Point2 {
        Point2::new(
            self.d11 * v.x1 + self.d12 * v.x2,
            self.d12 * v.x1 + self.d22 * v.x2,
        )
    }

    /// Frobenius norm (counting the off-diagonal entry twice).
    pub fn frobenius(self) -> f64 {
        (self.d11 * self.d11 + 2.0 * self.d12 * self.d12 + self.d22 * self.d22).sqrt()
    }
}

/// Third derivatives of a scalar field, stored as
/// `[d111, d112, d122, d222]`.
pub type Third2 = [f64; 4];

/// A scalar field on a planar region with pointwise derivatives.
pub trait Field2 {
    fn value(&self, p: Point2) -> f64;
    fn gradient(&self, p: Point2) -> Point2;
    fn hessian(&self, p: Point2) -> Hessian2;

    /// Third derivatives. The default falls back to Richardson-extrapolated
    /// central differences of the Hessian; fields with closed forms override.
    fn third(&self, p: Point2) -> Third2 {
        let h = 1e-4 * (1.0 + p.norm());
        let d = |q: Point2, e: Point2| {
            // Fourth-order central difference of the Hessian along e.
            let hp = self.hessian(q + e * h);
            let hm = self.hessian(q - e * h);
            let hp2 = self.hessian(q + e * (2.0 * h));
            let hm2 = self.hessian(q - e * (2.0 * h));
            [
                (8.0 * (hp.d11 - hm.d11) - (hp2.d11 - hm2.d11)) / (12.0 * h),
                (8.0 * (hp.d12 - hm.d12) - (hp2.d12 - hm2.d12)) / (12.0 * h),
                (8.0 * (hp.d22 - hm.d22) - (hp2.d22 - hm2.d22)) / (12.0 * h),
            ]
        };
        let dx = d(p, Point2::new(1.0, 0.0));
        let dy = d(p, Point2::new(0.0, 1.0));
        // d112 is taken from the x-derivative of d12 (equal to the
        // y-derivative of d11 for smooth fields); likewise d122.
        [dx[0], dx[1], dx[2], dy[2]]
    }

    fn laplacian(&self, p: Point2) -> f64 {
        self.hessian(p).trace()
    }
}

impl<F: Field2 + ?Sized> Field2 for &F {
    fn value(&self, p: Point2) -> f64 {
        (**self).value(p)
    }
    fn gradient(&self, p: Point2) -> Point2 {
        (**self).gradient(p)
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        (**self).hessian(p)
    }
    fn third(&self, p: Point2) -> Third2 {
        (**self).third(p)
    }
}

/// A field assembled from closures; used for manufactured solutions and
/// oracles in tests and for lightweight adaptors between solver stages.
pub struct ClosureField<V, G, H>
where
    V: Fn(Point2) -> f64,
    G: Fn(Point2) -> Point2,
    H: Fn(Point2) -> Hessian2,
{
    pub value: V,
    pub gradient: G,
    pub hessian: H,
}

impl<V, G, H> Field2 for ClosureField<V, G, H>
where
    V: Fn(Point2) -> f64,
    G: Fn(Point2) -> Point2,
    H: Fn(Point2) -> Hessian2,
{
    fn value(&self, p: Point2) -> f64 {
        (self.value)(p)
    }
    fn gradient(&self, p: Point2) -> Point2 {
        (self.gradient)(p)
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        (self.hessian)(p)
    }
}

/// Pointwise linear combination `a·f + b·g` of two fields.
pub struct LinearCombination<F, G> {
    pub a: f64,
    pub f: F,
    pub b: f64,
    pub g: G,
}

impl<F: Field2, G: Field2> Field2 for LinearCombination<F, G> {
    fn value(&self, p: Point2) -> f64 {
        self.a * self.f.value(p) + self.b * self.g.value(p)
    }
    fn gradient(&self, p: Point2) -> Point2 {
        self.f.gradient(p) * self.a + self.g.gradient(p) * self.b
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        let hf = self.f.hessian(p);
        let hg = self.g.hessian(p);
        Hessian2::new(
            self.a * hf.d11 + self.b * hg.d11,
            self.a * hf.d12 + self.b * hg.d12,
            self.a * hf.d22 + self.b * hg.d22,
        )
    }
}

/// Pointwise product `f·g` of two fields (Leibniz rule for derivatives).
pub struct ProductField<F, G> {
    pub f: F,
    pub g: G,
}

impl<F: Field2, G: Field2> Field2 for ProductField<F, G> {
    fn value(&self, p: Point2) -> f64 {
        self.f.value(p) * self.g.value(p)
    }
    fn gradient(&self, p: Point2) -> Point2 {
        self.f.gradient(p) * self.g.value(p) + self.g.gradient(p) * self.f.value(p)
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        let (fv, gv) = (self.f.value(p), self.g.value(p));
        let (fg, gg) = (self.f.gradient(p), self.g.gradient(p));
        let (fh, gh) = (self.f.hessian(p), self.g.hessian(p));
        Hessian2::new(
            fh.d11 * gv + 2.0 * fg.x1 * gg.x1 + fv * gh.d11,
            fh.d12 * gv + fg.x1 * gg.x2 + fg.x2 * gg.x1 + fv * gh.d12,
            fh.d22 * gv + 2.0 * fg.x2 * gg.x2 + fv * gh.d22,
        )
    }
}

/// Neck rescaling of an ambient field: `ψ(y) = Ψ(εy)/ε`. Gradients are
/// scale-free (`∇ψ(y) = ∇Ψ(εy)`), Hessians gain a factor `ε`, third
/// derivatives `ε²`.
pub struct NeckScaled<F> {
    pub ambient: F,
    pub eps: f64,
}

impl<F: Field2> Field2 for NeckScaled<F> {
    fn value(&self, p: Point2) -> f64 {
        self.ambient.value(p * self.eps) / self.eps
    }
    fn gradient(&self, p: Point2) -> Point2 {
        self.ambient.gradient(p * self.eps)
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        let h = self.ambient.hessian(p * self.eps);
        Hessian2::new(self.eps * h.d11, self.eps * h.d12, self.eps * h.d22)
    }
    fn third(&self, p: Point2) -> Third2 {
        let t = self.ambient.third(p * self.eps);
        let s = self.eps * self.eps;
        [s * t[0], s * t[1], s * t[2], s * t[3]]
    }
}

/// Plain dilation precomposition `f(y) = F(εy)` (no amplitude rescaling):
/// gradients gain a factor `ε`, Hessians `ε²`, third derivatives `ε³`.
pub struct DilatedField<F> {
    pub ambient: F,
    pub eps: f64,
}

impl<F: Field2> Field2 for DilatedField<F> {
    fn value(&self, p: Point2) -> f64 {
        self.ambient.value(p * self.eps)
    }
    fn gradient(&self, p: Point2) -> Point2 {
        self.ambient.gradient(p * self.eps) * self.eps
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        let h = self.ambient.hessian(p * self.eps);
        let s = self.eps * self.eps;
        Hessian2::new(s * h.d11, s * h.d12, s * h.d22)
    }
    fn third(&self, p: Point2) -> Third2 {
        let t = self.ambient.third(p * self.eps);
        let s = self.eps * self.eps * self.eps;
        [s * t[0], s * t[1], s * t[2], s * t[3]]
    }
}

/// Pointwise complement `1 − f` of a field.
pub struct ComplementField<F> {
    pub f: F,
}

impl<F: Field2> Field2 for ComplementField<F> {
    fn value(&self, p: Point2) -> f64 {
        1.0 - self.f.value(p)
    }
    fn gradient(&self, p: Point2) -> Point2 {
        -self.f.gradient(p)
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        let h = self.f.hessian(p);
        Hessian2::new(-h.d11, -h.d12, -h.d22)
    }
}

/// One sample of a parametrized boundary curve.
#[derive(Debug, Clone, Copy)]
pub struct CurveSample {
    /// Parameter value of the sample.
    pub param: f64,
    /// Cumulative arclength from the first sample.
    pub arclength: f64,
    pub point: Point2,
    /// Unit tangent in the direction of increasing parameter.
    pub tangent: Point2,
    /// Unit normal `ν = T⊥`.
    pub normal: Point2,
    /// Signed curvature `κ = (γ′ × γ″)/|γ′|³`.
    pub curvature: f64,
}

/// A sampled parametrized curve with arclength, frame, and curvature.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    samples: Vec<CurveSample>,
}

impl BoundaryCurve {
    /// Builds a curve from a parametrization with analytic first and second
    /// derivatives, sampled at `params`.
    pub fn from_analytic(
        params: &[f64],
        gamma: impl Fn(f64) -> Point2,
        dgamma: impl Fn(f64) -> Point2,
        d2gamma: impl Fn(f64) -> Point2,
    ) -> Self {
        let mut samples = Vec::with_capacity(params.len());
        let mut arclength = 0.0;
        let mut prev: Option<(f64, f64)> = None; // (param, speed)
        for &t in params {
            let p = gamma(t);
            let d1 = dgamma(t);
            let d2 = d2gamma(t);
            let speed = d1.norm();
            if let Some((t0, sp0)) = prev {
                // Trapezoidal arclength accumulation between samples.
                arclength += 0.5 * (sp0 + speed) * (t - t0);
            }
            prev = Some((t, speed));
            let tangent = d1 * (1.0 / speed);
            samples.push(CurveSample {
                param: t,
                arclength,
                point: p,
                tangent,
                normal: tangent.perp(),
                curvature: d1.cross(d2) / (speed * speed * speed),
            });
        }
        Self { samples }
    }

    /// Builds a curve from a parametrization only, differentiating it with
    /// fourth-order central differences in the parameter.
    pub fn from_parametrization(params: &[f64], gamma: impl Fn(f64) -> Point2) -> Self {
        let h = {
            // Step well below the sample spacing but far above rounding.
            let span = params[params.len() - 1] - params[0];
            (span / params.len() as f64).abs().clamp(1e-6, 1e-3)
        };
        let d1 = |t: f64| {
            ((gamma(t + h) - gamma(t - h)) * 8.0 - (gamma(t + 2.0 * h) - gamma(t - 2.0 * h)))
                * (1.0 / (12.0 * h))
        };
        let d2 = |t: f64| {
            ((gamma(t + h) + gamma(t - h)) * 16.0
                - (gamma(t + 2.0 * h) + gamma(t - 2.0 * h))
                - gamma(t) * 30.0)
                * (1.0 / (12.0 * h * h))
        };
        Self::from_analytic(params, &gamma, d1, d2)
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn total_arclength(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.arclength)
    }
}

/// Residual report of the two overdetermined boundary identities satisfied by
/// an exact block field `Ψ` with vorticity `ω₀` on its free boundary:
/// `∇Ψ = ±ν` and `D²Ψ ν·ν = −ω₀ ∓ κ`.
#[derive(Debug, Clone, Copy)]
pub struct RobinIdentityReport {
    /// `+1` or `−1`: the sign `s` minimizing `max |∇Ψ − s·ν|`.
    pub gradient_sign: f64,
    /// `max |∇Ψ − s·ν|` over the samples.
    pub max_gradient_residual: f64,
    /// `max |D²Ψ ν·ν + ω₀ + s·κ|` over the samples.
    pub max_hessian_residual: f64,
}

/// Checks the overdetermined boundary identities for `field` along `curve`.
///
/// The two identities characterize solutions of the free-boundary problem:
/// the gradient is a unit normal on the boundary, and differentiating the
/// unit-gradient condition along the curve forces the normal-normal second
/// derivative to equal `−ω₀ ∓ κ` with the sign tied to the gradient's.
pub fn robin_identities_check(
    field: &dyn Field2,
    curve: &BoundaryCurve,
    omega0: f64,
) -> RobinIdentityReport {
    let residual = |sign: f64| {
        curve
            .samples()
            .iter()
            .map(|s| (field.gradient(s.point) - s.normal * sign).norm())
            .fold(0.0f64, f64::max)
    };
    let (rp, rm) = (residual(1.0), residual(-1.0));
    let sign = if rp <= rm { 1.0 } else { -1.0 };
    let hess = curve
        .samples()
        .iter()
        .map(|s| (field.hessian(s.point).quad(s.normal) + omega0 + sign * s.curvature).abs())
        .fold(0.0f64, f64::max);
    RobinIdentityReport {
        gradient_sign: sign,
        max_gradient_residual: rp.min(rm),
        max_hessian_residual: hess,
    }
}
