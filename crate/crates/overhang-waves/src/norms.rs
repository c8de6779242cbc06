//! Weighted sup/Hölder norms for right-hand sides and solutions.
//!
//! Every norm here is of "least `M` such that" type: pointwise combinations
//! of a function, its derivatives, and a local Hölder seminorm are bounded by
//! a region-dependent weight times `M`. The families are
//!
//! * neck-scale norms with polynomial weights `(1+|y|)^p` and local balls
//!   `B(y, |y|/10)` (used on the hairpin and on the glued domain),
//! * their two-region variants that switch at `|y| = δ₁/ε` to a frozen
//!   polynomial weight times an exponential envelope `e^{−με|y|}`,
//! * plain Hölder norms on the disk, and `cosh(μx₁)`-weighted Hölder norms
//!   with unit balls on the strip.
//!
//! Suprema are estimated from below on user-supplied sample sets; Hölder
//! seminorms from pair maxima at dyadic separations inside the prescribed
//! balls. Estimates are therefore lower bounds that must converge under
//! sample refinement (and are monotone for nested sample sets).

use crate::error::{Error, Result};
use crate::field::{BoundaryCurve, Field2, Point2};
use crate::params::PhysicalParams;

/// Which weighted norm to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    /// Two-region interior norm for equation right-hand sides on the glued
    /// domain: weight `(1+|y|)^{1+σ}` inside, `(δ₁/ε)^{1+σ}e^{με|y|}` outside.
    StarStarInterior,
    /// Two-region boundary norm (function + arclength derivative + Hölder).
    StarStarBoundary,
    /// Two-region solution norm (through second derivatives).
    StarSolution,
    /// Hairpin solution norm: `(1+|y|)^{σ−1}` times value through `D²` with
    /// graded factors `(1+|y|)^k`.
    Sharp,
    /// Hairpin interior right-hand-side norm: `(1+|y|)^{1+σ}` times value
    /// plus graded Hölder term.
    SharpSharpInterior,
    /// Hairpin boundary right-hand-side norm (function + derivative).
    SharpSharpBoundary,
    /// Hairpin boundary norm of solution trace (through second arclength
    /// derivatives); boundary analogue of [`NormKind::Sharp`].
    SharpBoundary,
    /// Unweighted Hölder norm of an interior function on the disk.
    HolderDisk,
    /// Unweighted `C^{1,α}` norm of a boundary function on the disk.
    HolderDiskBoundary,
    /// Unweighted `C^{2,α}` norm of an interior function on the disk.
    HolderDisk2,
    /// `cosh(μx₁)`-weighted Hölder norm on the strip (unit balls).
    HolderStrip,
    /// `cosh(μx₁)`-weighted boundary `C^{1,α}` norm on the strip.
    HolderStripBoundary,
    /// `cosh(μx₁)`-weighted `C^{2,α}` norm on the strip.
    HolderStrip2,
}

impl NormKind {
    /// Whether the norm acts on boundary functions (arclength derivatives)
    /// rather than planar fields.
    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            NormKind::StarStarBoundary
                | NormKind::SharpSharpBoundary
                | NormKind::SharpBoundary
                | NormKind::HolderDiskBoundary
                | NormKind::HolderStripBoundary
        )
    }
}

/// Scalar parameters entering the weights, plus the chosen kind.
#[derive(Debug, Clone, Copy)]
pub struct WeightedNormConfig {
    pub sigma: f64,
    pub alpha: f64,
    pub mu: f64,
    pub delta1: f64,
    pub epsilon: f64,
    pub kind: NormKind,
}

impl WeightedNormConfig {
    pub fn from_params(p: &PhysicalParams, kind: NormKind) -> Self {
        Self {
            sigma: p.sigma,
            alpha: p.alpha,
            mu: p.mu,
            delta1: p.delta1,
            epsilon: p.epsilon,
            kind,
        }
    }

    /// Region-switch radius `δ₁/ε` of the two-region norms.
    pub fn switch_radius(&self) -> f64 {
        self.delta1 / self.epsilon
    }
}

/// Pointwise weight data: the measured quantity at `y` is
/// `pre·(p0|f| + p1|Df| + p2|D²f| + ph·[D^k f]_α(B(y, radius)))` and the norm
/// is its supremum over samples.
#[derive(Debug, Clone, Copy)]
struct PointWeights {
    pre: f64,
    p0: f64,
    p1: f64,
    p2: f64,
    ph: f64,
    radius: f64,
}

fn weights(cfg: &WeightedNormConfig, y: Point2) -> PointWeights {
    let r = y.norm();
    let l = cfg.switch_radius();
    let inner = r <= l;
    // Scale `s` entering graded factors: `1+|y|` inside, frozen `δ₁/ε`
    // outside; `pre` carries the region prefactor and envelope.
    let (s, env, radius) = if inner {
        (1.0 + r, 1.0, r / 10.0)
    } else {
        (l, (cfg.mu * cfg.epsilon * r).exp(), l / 10.0)
    };
    let local = 1.0 + r;
    let w = |pre: f64, p0: f64, p1: f64, p2: f64, ph: f64, radius: f64| PointWeights {
        pre,
        p0,
        p1,
        p2,
        ph,
        radius,
    };
    match cfg.kind {
        NormKind::SharpSharpInterior => w(
            local.powf(1.0 + cfg.sigma),
            1.0,
            0.0,
            0.0,
            local.powf(cfg.alpha),
            local / 10.0,
        ),
        NormKind::StarStarInterior => w(
            s.powf(1.0 + cfg.sigma) * env,
            1.0,
            0.0,
            0.0,
            s.powf(cfg.alpha),
            radius,
        ),
        NormKind::Sharp => w(
            local.powf(cfg.sigma - 1.0),
            1.0,
            local,
            local * local,
            local.powf(2.0 + cfg.alpha),
            local / 10.0,
        ),
        NormKind::StarSolution => w(
            s.powf(cfg.sigma - 1.0) * env,
            1.0,
            s,
            s * s,
            s.powf(2.0 + cfg.alpha),
            radius,
        ),
        NormKind::SharpSharpBoundary => w(
            local.powf(cfg.sigma),
            1.0,
            local,
            0.0,
            local.powf(1.0 + cfg.alpha),
            local / 10.0,
        ),
        NormKind::StarStarBoundary => w(
            s.powf(cfg.sigma) * env,
            1.0,
            s,
            0.0,
            s.powf(1.0 + cfg.alpha),
            radius,
        ),
        NormKind::SharpBoundary => w(
            local.powf(cfg.sigma - 1.0),
            1.0,
            local,
            local * local,
            local.powf(2.0 + cfg.alpha),
            local / 10.0,
        ),
        NormKind::HolderDisk => w(1.0, 1.0, 0.0, 0.0, 1.0, 1.0),
        NormKind::HolderDiskBoundary => w(1.0, 1.0, 1.0, 0.0, 1.0, 1.0),
        NormKind::HolderDisk2 => w(1.0, 1.0, 1.0, 1.0, 1.0, 1.0),
        NormKind::HolderStrip => w((cfg.mu * y.x1).cosh(), 1.0, 0.0, 0.0, 1.0, 1.0),
        NormKind::HolderStripBoundary => w((cfg.mu * y.x1).cosh(), 1.0, 1.0, 0.0, 1.0, 1.0),
        NormKind::HolderStrip2 => w((cfg.mu * y.x1).cosh(), 1.0, 1.0, 1.0, 1.0, 1.0),
    }
}

/// A norm estimate together with where the supremum was attained.
#[derive(Debug, Clone, Copy)]
pub struct WeightedNormReport {
    /// The estimated least `M` (a lower bound converging under refinement).
    pub value: f64,
    /// Sample point realizing the supremum.
    pub argmax: Point2,
    /// Number of admissible base samples used.
    pub samples: usize,
}

/// Pair-sampling directions for planar Hölder seminorms: eight rays, offset
/// so none is axis-aligned (fields here are often even/odd along axes).
const DIRECTIONS: usize = 8;
/// Dyadic separations used inside each ball, as fractions of its radius.
const SEPARATIONS: [f64; 3] = [0.5, 0.25, 0.125];

fn pair_holder<F: Field2>(
    f: &F,
    y: Point2,
    radius: f64,
    alpha: f64,
    second_order: bool,
    admissible: &impl Fn(Point2) -> bool,
) -> f64 {
    if radius <= 0.0 {
        return 0.0;
    }
    let base_h = f.hessian(y);
    let base_v = f.value(y);
    let mut best = 0.0f64;
    for k in 0..DIRECTIONS {
        let theta = 0.1 + std::f64::consts::PI / 4.0 * k as f64;
        let dir = Point2::new(theta.cos(), theta.sin());
        for &frac in &SEPARATIONS {
            let d = radius * frac;
            let z = y + dir * d;
            if !admissible(z) {
                continue;
            }
            let diff = if second_order {
                let hz = f.hessian(z);
                (hz.d11 - base_h.d11)
                    .abs()
                    .max((hz.d12 - base_h.d12).abs())
                    .max((hz.d22 - base_h.d22).abs())
            } else {
                (f.value(z) - base_v).abs()
            };
            best = best.max(diff / d.powf(alpha));
        }
    }
    best
}

/// Estimates an interior norm of a planar field from below over a sample set.
/// `admissible` restricts both base points and Hölder partners to the domain.
pub fn field_norm<F: Field2>(
    f: &F,
    cfg: &WeightedNormConfig,
    points: &[Point2],
    admissible: impl Fn(Point2) -> bool,
) -> Result<WeightedNormReport> {
    if cfg.kind.is_boundary() {
        return Err(Error::InvariantViolation {
            what: "weighted norm",
            detail: format!("{:?} is a boundary norm; use boundary_norm", cfg.kind),
        });
    }
    let mut report = WeightedNormReport {
        value: 0.0,
        argmax: Point2::new(0.0, 0.0),
        samples: 0,
    };
    let second_order = cfg.kind != NormKind::StarStarInterior
        && cfg.kind != NormKind::SharpSharpInterior
        && cfg.kind != NormKind::HolderDisk
        && cfg.kind != NormKind::HolderStrip;
    for &y in points {
        if !admissible(y) {
            continue;
        }
        report.samples += 1;
        let w = weights(cfg, y);
        let mut q = w.p0 * f.value(y).abs();
        if w.p1 != 0.0 {
            q += w.p1 * f.gradient(y).norm();
        }
        if w.p2 != 0.0 {
            q += w.p2 * f.hessian(y).frobenius();
        }
        if w.ph != 0.0 {
            q += w.ph * pair_holder(f, y, w.radius, cfg.alpha, second_order, &admissible);
        }
        let m = w.pre * q;
        if m > report.value {
            report.value = m;
            report.argmax = y;
        }
    }
    Ok(report)
}

/// First and second arclength derivatives of sampled boundary values on a
/// (possibly non-uniform) arclength grid; endpoints are excluded from sups.
fn arclength_derivatives(s: &[f64], v: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = s.len();
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    for i in 1..n - 1 {
        let (hl, hr) = (s[i] - s[i - 1], s[i + 1] - s[i]);
        let (dl, dr) = ((v[i] - v[i - 1]) / hl, (v[i + 1] - v[i]) / hr);
        d1[i] = (dr * hl + dl * hr) / (hl + hr);
        d2[i] = 2.0 * (dr - dl) / (hl + hr);
    }
    (d1, d2)
}

/// Estimates a boundary norm from values sampled along a curve. `values[i]`
/// is the boundary function at the curve's `i`-th sample; derivatives are
/// taken with respect to arclength, and Hölder pairs range over samples whose
/// arclength separation fits in the prescribed ball.
pub fn boundary_norm(
    curve: &BoundaryCurve,
    values: &[f64],
    cfg: &WeightedNormConfig,
) -> Result<WeightedNormReport> {
    if !cfg.kind.is_boundary() {
        return Err(Error::InvariantViolation {
            what: "weighted norm",
            detail: format!("{:?} is an interior norm; use field_norm", cfg.kind),
        });
    }
    let samples = curve.samples();
    if samples.len() != values.len() || samples.len() < 5 {
        return Err(Error::InvariantViolation {
            what: "weighted norm",
            detail: format!(
                "boundary sample mismatch: {} curve points, {} values",
                samples.len(),
                values.len()
            ),
        });
    }
    let s: Vec<f64> = samples.iter().map(|c| c.arclength).collect();
    let (d1, d2) = arclength_derivatives(&s, values);
    let second_order = cfg.kind == NormKind::SharpBoundary;
    let holder_data: &[f64] = if second_order { &d2 } else { &d1 };
    let n = samples.len();
    let mut report = WeightedNormReport {
        value: 0.0,
        argmax: samples[0].point,
        samples: 0,
    };
    for i in 1..n - 1 {
        let y = samples[i].point;
        report.samples += 1;
        let w = weights(cfg, y);
        let mut q = w.p0 * values[i].abs() + w.p1 * d1[i].abs();
        if w.p2 != 0.0 {
            q += w.p2 * d2[i].abs();
        }
        if w.ph != 0.0 {
            let mut best = 0.0f64;
            for j in i + 1..n - 1 {
                let ds = s[j] - s[i];
                if ds > w.radius {
                    break;
                }
                best = best.max((holder_data[j] - holder_data[i]).abs() / ds.powf(cfg.alpha));
            }
            q += w.ph * best;
        }
        let m = w.pre * q;
        if m > report.value {
            report.value = m;
            report.argmax = y;
        }
    }
    Ok(report)
}
