//! Assembly of the approximate solution: corrected block fields, the glued
//! stream function `ψ₀`, the glued domain `Ω₀` with its neck boundary graphs
//! `g⁺`, `g⁻`, and the slightly modified solver domains used by the linear
//! theory.
//!
//! Everything here lives in neck coordinates `y = x/ε` unless stated
//! otherwise. The corrected fields are
//!
//! * `ψ̃ᴴ(y) = ψᴴ(y) − ¼εω|y|²η₁⁺(y₂) − ½εωy₂²η₁⁻(y₂)` — the hairpin plus
//!   explicit quadratics so that `−Δψ̃ᴴ = εω` away from the horizontal
//!   transition band `|y₂| ≤ 2`,
//! * `ψ̃ᴰ(y) = Ψᴰ(εy)/ε + Ψ₁ᴰ(εy)` — the rotating disk plus its log-source
//!   correction,
//! * `ψ̃ˢ(y) = Ψˢ(εy)/ε + Ψ₁ˢ(εy)` — the shear strip plus its correction,
//!
//! and the glued stream function interpolates them across the annulus
//! `ε^{−b} ≤ |y| ≤ 2ε^{−b}`:
//!
//! ```text
//! ψ₀ = ψ̃ᴴ χ₀(ε^b y) + ψ̃ᴰ (1−χ₀(ε^b y)) η₁⁺ + ψ̃ˢ (1−χ₀(ε^b y)) η₁⁻.
//! ```
//!
//! The free surface near the neck consists of two graphs: `g⁺` blends the
//! (quadratically corrected) upper hairpin graph into the perturbed disk's
//! lower boundary, and `g⁻` blends the lower hairpin graph into the perturbed
//! strip's top. The fluid is the *complement* of the closed region between
//! the graphs (the two air pockets flanking the neck), together with the
//! vertical neck column `|y₁| < π/2 + 1`.

use crate::cutoff::eta0_derivs;
use crate::disk::{DiskCorrection, DiskField};
use crate::error::{Error, Result};
use crate::field::{DilatedField, Field2, Hessian2, NeckScaled, Point2};
use crate::hairpin::{boundary_graph, Branch, HairpinField};
use crate::params::PhysicalParams;
use crate::strip::{StripCorrection, StripField};

use std::f64::consts::FRAC_PI_2;

/// The three exact blocks with their corrections, built for one parameter
/// set. The strip-correction constant `Cˢ` is extracted first (it does not
/// depend on the shifts), installed into the parameters, and the blocks are
/// rebuilt with the final shifts `dᴰ`, `dˢ`.
#[derive(Debug, Clone, Copy)]
pub struct Blocks {
    pub params: PhysicalParams,
    pub hairpin: HairpinField,
    pub disk: DiskField,
    pub disk_correction: DiskCorrection,
    pub strip: StripField,
    pub strip_correction: StripCorrection,
}

impl Blocks {
    /// Builds all blocks at the default parameters for the given `ε`.
    pub fn build(epsilon: f64) -> Result<Self> {
        Self::from_params(PhysicalParams::defaults(epsilon)?)
    }

    /// Builds all blocks for an explicit parameter set. The strip constant
    /// `Cˢ` and the shifts are (re)computed here, so any preinstalled values
    /// are overwritten by consistent ones.
    pub fn from_params(mut params: PhysicalParams) -> Result<Self> {
        // First pass only to extract Cˢ, which is shift-independent.
        let provisional = StripCorrection::build(&params)?;
        params.set_strip_constant(provisional.c_s)?;
        let strip_correction = StripCorrection::build(&params)?;
        Ok(Self {
            params,
            hairpin: HairpinField::upper(),
            disk: DiskField::new(&params),
            disk_correction: DiskCorrection::build(&params),
            strip: StripField::new(&params),
            strip_correction,
        })
    }
}

/// Value–gradient–Hessian jet of a scalar field at a point; the glued field
/// combines jets of blocks and cutoff weights by the Leibniz rule.
#[derive(Debug, Clone, Copy, Default)]
struct Jet {
    v: f64,
    g: Point2,
    h: Hessian2,
}

impl Jet {
    fn of(f: &impl Field2, p: Point2) -> Self {
        Self {
            v: f.value(p),
            g: f.gradient(p),
            h: f.hessian(p),
        }
    }

    fn is_zero(self) -> bool {
        self.v == 0.0 && self.g.x1 == 0.0 && self.g.x2 == 0.0 && self.h == Hessian2::default()
    }

    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            g: self.g * o.v + o.g * self.v,
            h: Hessian2::new(
                self.h.d11 * o.v + 2.0 * self.g.x1 * o.g.x1 + self.v * o.h.d11,
                self.h.d12 * o.v + self.g.x1 * o.g.x2 + self.g.x2 * o.g.x1 + self.v * o.h.d12,
                self.h.d22 * o.v + 2.0 * self.g.x2 * o.g.x2 + self.v * o.h.d22,
            ),
        }
    }

    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            g: self.g + o.g,
            h: Hessian2::new(self.h.d11 + o.h.d11, self.h.d12 + o.h.d12, self.h.d22 + o.h.d22),
        }
    }

    fn scale(self, t: f64) -> Jet {
        Jet {
            v: t * self.v,
            g: self.g * t,
            h: Hessian2::new(t * self.h.d11, t * self.h.d12, t * self.h.d22),
        }
    }
}

/// One-sided vertical cutoffs `η₁⁺(y₂) = 1 − η₀(y₂)` (supported in `y₂ ≥ 1`)
/// and `η₁⁻(y₂) = 1 − η₀(−y₂)` (supported in `y₂ ≤ −1`), as jets.
fn eta1_jet(sign: f64, y2: f64) -> Jet {
    let d = eta0_derivs(sign * y2);
    Jet {
        v: 1.0 - d[0],
        g: Point2::new(0.0, -sign * d[1]),
        h: Hessian2::new(0.0, 0.0, -d[2]),
    }
}

/// Radial cutoff `χ₀(ε^b y)` as a jet (`= 1` for `|y| ≤ ε^{−b}`, `= 0` for
/// `|y| ≥ 2ε^{−b}`).
fn chi0_jet(neck_radius: f64, y: Point2) -> Jet {
    let r = y.norm();
    if r <= neck_radius {
        return Jet {
            v: 1.0,
            ..Jet::default()
        };
    }
    if r >= 2.0 * neck_radius {
        return Jet::default();
    }
    let d = eta0_derivs(r / neck_radius);
    let (g1, g2) = (d[1] / neck_radius, d[2] / (neck_radius * neck_radius));
    let gr = g1 / r;
    let a = (g2 - g1 / r) / (r * r);
    Jet {
        v: d[0],
        g: y * gr,
        h: Hessian2::new(a * y.x1 * y.x1 + gr, a * y.x1 * y.x2, a * y.x2 * y.x2 + gr),
    }
}

/// The hairpin stream function on the whole fluid domain. The one-sided
/// extensions continue analytically across the opposite boundary, so a single
/// branch resolves the wrong (continued) root deep in the other fan; the
/// interior field therefore seeds the inverse map by the sign of `y₂`. Both
/// branches agree on the neck, where the interior root is unique and close to
/// either seed.
#[derive(Debug, Clone, Copy)]
pub struct InteriorHairpin {
    upper: HairpinField,
    lower: HairpinField,
}

impl InteriorHairpin {
    pub fn new() -> Self {
        Self {
            upper: HairpinField::upper(),
            lower: HairpinField::lower(),
        }
    }

    fn side(&self, p: Point2) -> &HairpinField {
        if p.x2 >= 0.0 {
            &self.upper
        } else {
            &self.lower
        }
    }
}

impl Default for InteriorHairpin {
    fn default() -> Self {
        Self::new()
    }
}

impl Field2 for InteriorHairpin {
    fn value(&self, p: Point2) -> f64 {
        self.side(p).value(p)
    }
    fn gradient(&self, p: Point2) -> Point2 {
        self.side(p).gradient(p)
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        self.side(p).hessian(p)
    }
}

/// The corrected hairpin `ψ̃ᴴ` with analytic derivatives.
#[derive(Debug, Clone, Copy)]
pub struct TildeHairpin {
    pub hairpin: InteriorHairpin,
    /// `εω`.
    pub eps_omega: f64,
}

impl TildeHairpin {
    pub fn new(blocks: &Blocks) -> Self {
        Self {
            hairpin: InteriorHairpin::new(),
            eps_omega: blocks.params.epsilon * blocks.params.omega,
        }
    }

    /// Jet of the quadratic correction `−¼εω|y|²η₁⁺ − ½εωy₂²η₁⁻`.
    fn correction_jet(&self, y: Point2) -> Jet {
        let ep = eta1_jet(1.0, y.x2);
        let em = eta1_jet(-1.0, y.x2);
        let r2 = Jet {
            v: y.norm_sq(),
            g: y * 2.0,
            h: Hessian2::new(2.0, 0.0, 2.0),
        };
        let y22 = Jet {
            v: y.x2 * y.x2,
            g: Point2::new(0.0, 2.0 * y.x2),
            h: Hessian2::new(0.0, 0.0, 2.0),
        };
        r2.mul(ep)
            .scale(-0.25 * self.eps_omega)
            .add(y22.mul(em).scale(-0.5 * self.eps_omega))
    }
}

impl Field2 for TildeHairpin {
    fn value(&self, p: Point2) -> f64 {
        self.hairpin.value(p) + self.correction_jet(p).v
    }
    fn gradient(&self, p: Point2) -> Point2 {
        self.hairpin.gradient(p) + self.correction_jet(p).g
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        let h = self.hairpin.hessian(p);
        let c = self.correction_jet(p).h;
        Hessian2::new(h.d11 + c.d11, h.d12 + c.d12, h.d22 + c.d22)
    }
}

/// A block plus its correction in neck coordinates:
/// `ψ̃(y) = Ψ(εy)/ε + Ψ₁(εy)`.
pub struct CorrectedBlock<B, C> {
    pub scaled: NeckScaled<B>,
    pub correction: DilatedField<C>,
}

impl<B: Field2, C: Field2> CorrectedBlock<B, C> {
    pub fn new(block: B, correction: C, eps: f64) -> Self {
        Self {
            scaled: NeckScaled {
                ambient: block,
                eps,
            },
            correction: DilatedField {
                ambient: correction,
                eps,
            },
        }
    }
}

impl<B: Field2, C: Field2> Field2 for CorrectedBlock<B, C> {
    fn value(&self, p: Point2) -> f64 {
        self.scaled.value(p) + self.correction.value(p)
    }
    fn gradient(&self, p: Point2) -> Point2 {
        self.scaled.gradient(p) + self.correction.gradient(p)
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        let a = self.scaled.hessian(p);
        let b = self.correction.hessian(p);
        Hessian2::new(a.d11 + b.d11, a.d12 + b.d12, a.d22 + b.d22)
    }
}

/// The corrected disk `ψ̃ᴰ` in neck coordinates.
pub type TildeDisk = CorrectedBlock<DiskField, DiskCorrection>;
/// The corrected strip `ψ̃ˢ` in neck coordinates.
pub type TildeStrip = CorrectedBlock<StripField, StripCorrection>;

/// Builds the three corrected fields from the blocks.
pub fn tilde_fields(blocks: &Blocks) -> (TildeHairpin, TildeDisk, TildeStrip) {
    let eps = blocks.params.epsilon;
    (
        TildeHairpin::new(blocks),
        CorrectedBlock::new(blocks.disk, blocks.disk_correction, eps),
        CorrectedBlock::new(blocks.strip, blocks.strip_correction, eps),
    )
}

/// The glued approximate stream function `ψ₀` on `Ω₀`.
///
/// Each corrected field is only evaluated where its cutoff weight (or the
/// weight's derivatives) is nonzero, so the hairpin inverse is never asked to
/// resolve far-field points and the strip correction is never evaluated deep
/// inside the disk region.
pub struct GluedField {
    pub tilde_h: TildeHairpin,
    pub tilde_d: TildeDisk,
    pub tilde_s: TildeStrip,
    /// `ε^{−b}`: the gluing radius.
    pub neck_radius: f64,
    /// `εω` (for the interior-defect diagnostic).
    pub eps_omega: f64,
}

impl GluedField {
    pub fn new(blocks: &Blocks) -> Self {
        let (tilde_h, tilde_d, tilde_s) = tilde_fields(blocks);
        Self {
            tilde_h,
            tilde_d,
            tilde_s,
            neck_radius: blocks.params.neck_radius(),
            eps_omega: blocks.params.epsilon * blocks.params.omega,
        }
    }

    fn jet(&self, y: Point2) -> Jet {
        let chi = chi0_jet(self.neck_radius, y);
        let comp = Jet {
            v: 1.0 - chi.v,
            g: -chi.g,
            h: Hessian2::new(-chi.h.d11, -chi.h.d12, -chi.h.d22),
        };
        let wd = comp.mul(eta1_jet(1.0, y.x2));
        let ws = comp.mul(eta1_jet(-1.0, y.x2));
        let mut total = Jet::default();
        if !chi.is_zero() {
            total = total.add(Jet::of(&self.tilde_h, y).mul(chi));
        }
        if !wd.is_zero() {
            total = total.add(Jet::of(&self.tilde_d, y).mul(wd));
        }
        if !ws.is_zero() {
            total = total.add(Jet::of(&self.tilde_s, y).mul(ws));
        }
        total
    }

    /// The interior equation defect `Δψ₀ + εω` at `y`. It vanishes outside a
    /// fixed ball and the gluing annulus; on the ball it is `O(ε)` and on the
    /// annulus `O(ε^{1+b}|log ε|)`.
    pub fn interior_defect(&self, y: Point2) -> f64 {
        self.jet(y).h.trace() + self.eps_omega
    }
}

impl Field2 for GluedField {
    fn value(&self, p: Point2) -> f64 {
        self.jet(p).v
    }
    fn gradient(&self, p: Point2) -> Point2 {
        self.jet(p).g
    }
    fn hessian(&self, p: Point2) -> Hessian2 {
        self.jet(p).h
    }
}

/// Region labels of the classifier: where each description of `Ω₀` is in
/// force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `|y| ≤ ε^{−b}`: pure hairpin.
    Hairpin,
    /// `ε^{−b} < |y| < 2ε^{−b}`: gluing annulus.
    Transition,
    /// Beyond the annulus, upper half: perturbed scaled disk.
    Disk,
    /// Beyond the annulus, lower half: perturbed scaled strip.
    Strip,
}

/// The glued domain `Ω₀` in neck coordinates: boundary graphs near the neck,
/// perturbed disk/strip descriptions outside, a membership test, and a
/// region classifier.
#[derive(Debug, Clone, Copy)]
pub struct GluedDomain {
    pub params: PhysicalParams,
    pub disk_correction: DiskCorrection,
    pub strip_correction: StripCorrection,
    /// Half-diameter parameter `δ` of the neck chart: the two-graph
    /// description is used inside the ball of radius `δ/(2ε)`.
    pub delta: f64,
}

impl GluedDomain {
    pub fn new(blocks: &Blocks) -> Self {
        let p = blocks.params;
        Self {
            params: p,
            disk_correction: blocks.disk_correction,
            strip_correction: blocks.strip_correction,
            delta: 0.5 * p.radius.min(2.0).min(2.0) * 0.5,
        }
    }

    /// Smallest `|y₁|` at which the boundary graphs exist; the neck half-width
    /// at `y₂ = 0` is exactly `π/2 + 1`.
    pub fn neck_half_width(&self) -> f64 {
        FRAC_PI_2 + 1.0
    }

    /// The quadratically corrected upper hairpin graph
    /// `g̃_H⁺ = g_H⁺ + ¼εωy₁²(1 − η₀(|y₁| − 10))`.
    pub fn tilde_g_h_plus(&self, y1: f64) -> Result<f64> {
        let base = boundary_graph(y1, Branch::Upper)?;
        let window = 1.0 - eta0_derivs(y1.abs() - 10.0)[0];
        Ok(base + 0.25 * self.params.epsilon * self.params.omega * y1 * y1 * window)
    }

    /// Lower boundary graph of the dilated (unperturbed) disk,
    /// `g_D⁻(y₁) = (R+dᴰ)/ε − √(R²/ε² − y₁²)`.
    pub fn g_disk_minus(&self, y1: f64) -> f64 {
        let (r, e) = (self.params.radius, self.params.epsilon);
        (r + self.params.d_d) / e - ((r / e) * (r / e) - y1 * y1).sqrt()
    }

    /// Upper boundary graph of the dilated disk.
    pub fn g_disk_plus(&self, y1: f64) -> f64 {
        let (r, e) = (self.params.radius, self.params.epsilon);
        (r + self.params.d_d) / e + ((r / e) * (r / e) - y1 * y1).sqrt()
    }

    fn g_disk_minus_slope(&self, y1: f64) -> f64 {
        let re = self.params.radius / self.params.epsilon;
        y1 / (re * re - y1 * y1).sqrt()
    }

    /// The normal-offset displacement `Ψ₁ᴰ(εy₁, εg_D⁻(y₁))` at a base point
    /// of the dilated circle.
    fn disk_offset(&self, y1: f64) -> f64 {
        let e = self.params.epsilon;
        self.disk_correction
            .value(Point2::new(e * y1, e * self.g_disk_minus(y1)))
    }

    /// Image of the circle base point `y₁` under the normal offset, scaled by
    /// `scale` (`scale = 1` is the perturbed boundary; `scale = 0` recovers
    /// the circle and is used for validation).
    fn disk_offset_point(&self, y1: f64, scale: f64) -> Point2 {
        let g = self.g_disk_minus(y1);
        let gp = self.g_disk_minus_slope(y1);
        let s = (1.0 + gp * gp).sqrt();
        let nu = Point2::new(gp / s, -1.0 / s);
        Point2::new(y1, g) + nu * (scale * self.disk_offset(y1))
    }

    /// The perturbed disk's lower boundary as a graph, `g⁻_{ε,D}(ỹ₁)`:
    /// solves the implicit normal-offset relation by scalar Newton in the
    /// circle parameter (the first-order expansion is only the seed).
    pub fn perturbed_disk_graph(&self, target_y1: f64) -> Result<f64> {
        self.perturbed_disk_graph_scaled(target_y1, 1.0)
    }

    /// Same with the offset multiplied by `scale`.
    pub fn perturbed_disk_graph_scaled(&self, target_y1: f64, scale: f64) -> Result<f64> {
        let limit = 0.5 * self.params.radius / self.params.epsilon;
        if !(1.0..=limit).contains(&target_y1.abs()) {
            return Err(Error::InvariantViolation {
                what: "perturbed disk graph",
                detail: format!("|y1| = {} outside [1, R/(2ε)] = [1, {limit}]", target_y1.abs()),
            });
        }
        let mut y1 = target_y1;
        let h = 1e-6 * (1.0 + target_y1.abs());
        let mut last_residual = f64::INFINITY;
        for _ in 0..50 {
            let fp = self.disk_offset_point(y1, scale);
            let residual = fp.x1 - target_y1;
            last_residual = residual.abs();
            if last_residual <= 1e-12 * (1.0 + target_y1.abs()) {
                return Ok(fp.x2);
            }
            let d = (self.disk_offset_point(y1 + h, scale).x1
                - self.disk_offset_point(y1 - h, scale).x1)
                / (2.0 * h);
            y1 -= residual / d;
        }
        Err(Error::NewtonFailure {
            what: "perturbed disk graph",
            x: target_y1,
            y: y1,
            residual: last_residual,
            iters: 50,
        })
    }

    /// First-order expansion `g_D⁻(y₁) − Ψ₁ᴰ(εy₁, εg_D⁻(y₁))` of the
    /// perturbed graph (cross-check of the Newton solve).
    pub fn perturbed_disk_graph_expansion(&self, y1: f64) -> f64 {
        self.g_disk_minus(y1) - self.disk_offset(y1)
    }

    /// Top boundary of the perturbed scaled strip,
    /// `g⁺_{ε,S}(y₁) = −dˢ/ε + Ψ₁ˢ(εy₁, −dˢ)`.
    pub fn g_strip_plus(&self, y1: f64) -> f64 {
        let e = self.params.epsilon;
        let ds = self.params.d_s;
        -ds / e + self.strip_correction.value(Point2::new(e * y1, -ds))
    }

    /// Blending weight `η₀(ε^b |y₁|)` of the hairpin graph in `g^±`.
    fn neck_weight(&self, y1: f64) -> f64 {
        eta0_derivs(y1.abs() / self.params.neck_radius())[0]
    }

    /// Upper neck boundary graph `g⁺`, defined for
    /// `π/2 + 1 ≤ |y₁| ≤ R/(2ε)`.
    pub fn g_plus(&self, y1: f64) -> Result<f64> {
        let w = self.neck_weight(y1);
        let near = if w > 0.0 {
            w * self.tilde_g_h_plus(y1)?
        } else {
            0.0
        };
        let far = if w < 1.0 {
            (1.0 - w) * self.perturbed_disk_graph(y1)?
        } else {
            0.0
        };
        Ok(near + far)
    }

    /// Lower neck boundary graph `g⁻`, defined for
    /// `π/2 + 1 ≤ |y₁| ≤ δ/(2ε)` (and beyond, up to `1/ε`).
    pub fn g_minus(&self, y1: f64) -> Result<f64> {
        let w = self.neck_weight(y1);
        let near = if w > 0.0 {
            w * boundary_graph(y1, Branch::Lower)?
        } else {
            0.0
        };
        let far = if w < 1.0 {
            (1.0 - w) * self.g_strip_plus(y1)
        } else {
            0.0
        };
        Ok(near + far)
    }

    /// Signed curvature of the graph `y₂ = g⁺(y₁)` by centered differences.
    pub fn upper_curvature(&self, y1: f64) -> Result<f64> {
        let h = 1e-3 * (1.0 + 0.1 * y1.abs());
        let (gm, g0, gp) = (
            self.g_plus(y1 - h)?,
            self.g_plus(y1)?,
            self.g_plus(y1 + h)?,
        );
        let d1 = (gp - gm) / (2.0 * h);
        let d2 = (gp - 2.0 * g0 + gm) / (h * h);
        Ok(d2 / (1.0 + d1 * d1).powf(1.5))
    }

    /// Region classifier by the gluing radii.
    pub fn classify(&self, y: Point2) -> Region {
        let r = y.norm();
        let nr = self.params.neck_radius();
        if r <= nr {
            Region::Hairpin
        } else if r < 2.0 * nr {
            Region::Transition
        } else if y.x2 >= 0.0 {
            Region::Disk
        } else {
            Region::Strip
        }
    }

    /// Fluid membership test for `Ω₀`.
    pub fn contains(&self, y: Point2) -> Result<bool> {
        let e = self.params.epsilon;
        if y.norm() <= 0.5 * self.delta / e {
            // Neck chart: fluid is the complement of the air pocket between
            // the two graphs.
            if y.x1.abs() < self.neck_half_width() {
                return Ok(true);
            }
            Ok(y.x2 >= self.g_plus(y.x1)? || y.x2 <= self.g_minus(y.x1)?)
        } else if y.x2 >= 0.0 {
            // Perturbed scaled disk: compare the radius with the normally
            // offset boundary radius at the projected circle point.
            let x = y * e;
            let center = Point2::new(0.0, self.params.radius + self.params.d_d);
            let d = x - center;
            let rho = d.norm();
            if rho <= 0.5 * self.params.radius {
                return Ok(true);
            }
            let boundary_point = center + d * (self.params.radius / rho);
            let offset = e * self.disk_correction.value(boundary_point);
            Ok(rho <= self.params.radius + offset)
        } else {
            let x = y * e;
            let top = -self.params.d_s
                + e * self
                    .strip_correction
                    .value(Point2::new(x.x1, -self.params.d_s));
            Ok(x.x2 > -1.0 - self.params.d_s && x.x2 < top)
        }
    }
}

/// The modified hairpin domain of the linear theory: coincides with `Ω₀` up
/// to `|y| ≤ 2δ₂/ε` and with the exact hairpin beyond `|y₁| ≥ 4δ₂/ε`.
#[derive(Debug, Clone, Copy)]
pub struct ModifiedHairpin {
    pub domain: GluedDomain,
}

impl ModifiedHairpin {
    fn blend(&self, y1: f64) -> f64 {
        let lambda = 2.0 * self.domain.params.delta2 / self.domain.params.epsilon;
        eta0_derivs(y1.abs() / lambda)[0]
    }

    /// Upper boundary graph `g̃⁺ = g⁺ η + g_H⁺ (1 − η)`.
    pub fn g_upper(&self, y1: f64) -> Result<f64> {
        let w = self.blend(y1);
        let near = if w > 0.0 { w * self.domain.g_plus(y1)? } else { 0.0 };
        let far = if w < 1.0 {
            (1.0 - w) * boundary_graph(y1, Branch::Upper)?
        } else {
            0.0
        };
        Ok(near + far)
    }

    /// Lower boundary graph `g̃⁻ = g⁻ η + g_H⁻ (1 − η)`.
    pub fn g_lower(&self, y1: f64) -> Result<f64> {
        let w = self.blend(y1);
        let near = if w > 0.0 { w * self.domain.g_minus(y1)? } else { 0.0 };
        let far = if w < 1.0 {
            (1.0 - w) * boundary_graph(y1, Branch::Lower)?
        } else {
            0.0
        };
        Ok(near + far)
    }

    /// Fluid membership: complement of the closed region between the graphs.
    pub fn contains(&self, y: Point2) -> Result<bool> {
        if y.x1.abs() < self.domain.neck_half_width() {
            return Ok(true);
        }
        Ok(y.x2 > self.g_upper(y.x1)? || y.x2 < self.g_lower(y.x1)?)
    }
}

/// The modified disk domain (ambient coordinates): agrees with the perturbed
/// disk away from the origin; near the origin its lower boundary is lifted to
/// stay a distance `≥ δ₁⁴`-scale above the neck point.
#[derive(Debug, Clone, Copy)]
pub struct ModifiedDisk {
    pub domain: GluedDomain,
}

impl ModifiedDisk {
    /// The rescaled graph `g̃₁(ξ₁)` on `|ξ₁| ≤ R/(2δ₁)`: blends the
    /// perturbed graph with the vertically lifted circle graph near `ξ₁ = 0`.
    pub fn tilde_g1(&self, xi1: f64) -> Result<f64> {
        let p = self.domain.params;
        let (e, d1) = (p.epsilon, p.delta1);
        let w = eta0_derivs(xi1.abs())[0];
        let lifted = if w > 0.0 {
            w * (e / (d1 * d1) * self.domain.g_disk_minus(d1 * xi1 / e) + d1 * d1)
        } else {
            0.0
        };
        let perturbed = if w < 1.0 {
            (1.0 - w) * (e / (d1 * d1)) * self.domain.perturbed_disk_graph(d1 * xi1 / e)?
        } else {
            0.0
        };
        Ok(lifted + perturbed)
    }

    /// Lower boundary graph `g̃_D⁻(x₁) = δ₁² g̃₁(x₁/δ₁)` for `|x₁| ≤ R/2`
    /// (ambient coordinates).
    pub fn lower_graph(&self, x1: f64) -> Result<f64> {
        let d1 = self.domain.params.delta1;
        Ok(d1 * d1 * self.tilde_g1(x1 / d1)?)
    }

    /// The marked lowest boundary point `P_D = (0, g̃_D⁻(0))`.
    pub fn p_d(&self) -> Point2 {
        let p = self.domain.params;
        // g̃₁(0) uses only the lifted branch: εg_D⁻(0)/δ₁² + δ₁².
        Point2::new(0.0, p.d_d + p.delta1.powi(4))
    }

    /// Minimum of `|x|` over the sampled modified lower boundary.
    pub fn min_boundary_distance(&self, samples: usize) -> Result<f64> {
        let half = 0.5 * self.domain.params.radius;
        let mut best = f64::INFINITY;
        for i in 0..=samples {
            let x1 = -half + (2.0 * half) * i as f64 / samples as f64;
            let x2 = self.lower_graph(x1)?;
            best = best.min(x1.hypot(x2));
        }
        Ok(best)
    }
}

/// The modified strip domain (ambient coordinates): the perturbed top is
/// flattened to the constant `g_S(δ₁)` on `|x₁| ≤ δ₁`, removing the log
/// singularity at the neck point.
#[derive(Debug, Clone, Copy)]
pub struct ModifiedStrip {
    pub domain: GluedDomain,
}

impl ModifiedStrip {
    /// The perturbed strip top `g_S(x₁) = −dˢ + εΨ₁ˢ(x₁, −dˢ)` (ambient).
    pub fn perturbed_top(&self, x1: f64) -> f64 {
        let p = self.domain.params;
        -p.d_s
            + p.epsilon
                * self
                    .domain
                    .strip_correction
                    .value(Point2::new(x1, -p.d_s))
    }

    /// The flattened top `g̃_S = (1 − η₀(|x₁|/δ₁)) g_S + η₀(|x₁|/δ₁) g_S(δ₁)`.
    pub fn top_graph(&self, x1: f64) -> f64 {
        let d1 = self.domain.params.delta1;
        let w = eta0_derivs(x1.abs() / d1)[0];
        let flat = if w > 0.0 { w * self.perturbed_top(d1) } else { 0.0 };
        let outer = if w < 1.0 {
            (1.0 - w) * self.perturbed_top(x1)
        } else {
            0.0
        };
        flat + outer
    }

    /// The marked top point `P_S = (0, g̃_S(0))`.
    pub fn p_s(&self) -> Point2 {
        Point2::new(0.0, self.perturbed_top(self.domain.params.delta1))
    }

    pub fn bed_level(&self) -> f64 {
        -1.0 - self.domain.params.d_s
    }
}

/// Builds the three modified solver domains from the blocks.
pub fn modified_domains(blocks: &Blocks) -> (ModifiedHairpin, ModifiedDisk, ModifiedStrip) {
    let domain = GluedDomain::new(blocks);
    (
        ModifiedHairpin { domain },
        ModifiedDisk { domain },
        ModifiedStrip { domain },
    )
}
