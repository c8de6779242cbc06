//! The central parameter object: physical constants of the construction,
//! derived matching quantities, and validation of every standing assumption.
//!
//! All later stages consume an immutable [`PhysicalParams`]. The two shift
//! constants `dD` (disk) and `dS` (strip) are the positive roots of scalar
//! quadratics that match the logarithmic far fields of the corrected disk and
//! strip blocks to the hairpin neck; they are solved exactly here rather than
//! through their `ε |log ε|` expansions, which serve only as cross-checks.

use crate::error::{Error, Result};
use crate::numerics::quad::integrate_panels;

/// All scalar parameters of the construction, plus derived quantities.
///
/// Invariants (see [`validate`]):
/// `ω·R = 2`, `0 < ω < 1`, `1/2 < b < 2/3`, `σ ∈ (0,1)` with `σ > 1/(2−b)`,
/// `α ∈ (0,1)`, `0 < m < σ(1−b)`, `ω < μ/tan μ`, `ω < λ/tan λ`, `μ < λ`,
/// `0 < ε ≪ δ₁ < δ₂ ≪ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Constant vorticity `ω`.
    pub omega: f64,
    /// Disk radius `R` (units of asymptotic depth). Tied to `ω` by `ωR = 2`.
    pub radius: f64,
    /// Neck scale `ε > 0`.
    pub epsilon: f64,
    /// Cutoff exponent `b` controlling the gluing radius `ε^{-b}`.
    pub b_exponent: f64,
    /// Decay exponent `σ ∈ (0,1)` of the weighted norms.
    pub sigma: f64,
    /// Hölder exponent `α ∈ (0,1)`.
    pub alpha: f64,
    /// Horizontal decay rate `μ > 0` of strip-region quantities.
    pub mu: f64,
    /// Barrier frequency `λ ∈ (μ, π/2)`.
    pub lambda_barrier: f64,
    /// Inner modification radius `δ₁` of the solver domains.
    pub delta1: f64,
    /// Outer cutoff radius `δ₂` of the coupled solver.
    pub delta2: f64,
    /// Smallness exponent `m` of the projection parameter `g₁`.
    pub m_exponent: f64,
    /// Derived: bottom stream value `β = 1 − ω/2`.
    pub beta_bottom: f64,
    /// Derived: `g₀ = 1/R²`.
    pub g0: f64,
    /// Derived: disk shift `dᴰ(ε)`, root of the disk matching quadratic.
    pub d_d: f64,
    /// Derived: strip shift `dˢ(ε, Cˢ)`, root of the strip matching quadratic.
    pub d_s: f64,
    /// Strip-correction constant `Cˢ`, set by the strip-block solver
    /// (zero until then; `d_s` is re-solved when it is installed).
    pub c_s: f64,
}

impl PhysicalParams {
    /// The default test parameter set: satisfies every standing inequality
    /// with margin. Derived quantities are solved immediately (with
    /// `Cˢ = 0`; call [`set_strip_constant`](Self::set_strip_constant) once
    /// the strip correction has produced it).
    pub fn defaults(epsilon: f64) -> Result<Self> {
        let mut p = Self {
            omega: 0.5,
            radius: 4.0,
            epsilon,
            b_exponent: 0.6,
            sigma: 0.75,
            alpha: 0.5,
            mu: 0.4,
            lambda_barrier: 0.8,
            delta1: 0.05,
            delta2: 0.2,
            m_exponent: 0.1,
            beta_bottom: f64::NAN,
            g0: f64::NAN,
            d_d: f64::NAN,
            d_s: f64::NAN,
            c_s: 0.0,
        };
        p.finalize()?;
        Ok(p)
    }

    /// Recomputes every derived quantity from the primary fields and fails if
    /// the matching quadratics have no positive root.
    pub fn finalize(&mut self) -> Result<()> {
        self.beta_bottom = 1.0 - 0.5 * self.omega;
        self.g0 = 1.0 / (self.radius * self.radius);
        self.d_d = solve_dd(self)?;
        self.d_s = solve_ds(self, self.c_s)?;
        Ok(())
    }

    /// Installs the strip-correction constant `Cˢ` and re-solves `dˢ`.
    pub fn set_strip_constant(&mut self, c_s: f64) -> Result<()> {
        self.c_s = c_s;
        self.d_s = solve_ds(self, c_s)?;
        Ok(())
    }

    /// Sets a primary field by its config-file key name. Derived fields are
    /// not writable. Call [`finalize`](Self::finalize) afterwards.
    pub fn set_field(&mut self, key: &str, value: f64) -> Result<()> {
        match key {
            "omega" => self.omega = value,
            "radius" => self.radius = value,
            "epsilon" => self.epsilon = value,
            "b_exponent" => self.b_exponent = value,
            "sigma" => self.sigma = value,
            "alpha" => self.alpha = value,
            "mu" => self.mu = value,
            "lambda_barrier" => self.lambda_barrier = value,
            "delta1" => self.delta1 = value,
            "delta2" => self.delta2 = value,
            "m_exponent" => self.m_exponent = value,
            "cS" | "c_s" => self.c_s = value,
            _ => {
                return Err(Error::InvalidParams(vec![format!(
                    "unknown parameter key: {key}"
                )]))
            }
        }
        Ok(())
    }

    /// The gluing radius `ε^{-b}` in neck units.
    pub fn neck_radius(&self) -> f64 {
        self.epsilon.powf(-self.b_exponent)
    }

    /// `|log ε|`.
    pub fn abs_log_eps(&self) -> f64 {
        self.epsilon.ln().abs()
    }
}

/// Checks every standing assumption and returns a descriptor per violation
/// (empty iff the parameter set is admissible). Purely diagnostic.
pub fn validate(p: &PhysicalParams) -> Vec<String> {
    let mut errs = Vec::new();
    let mut check = |ok: bool, msg: String| {
        if !ok {
            errs.push(msg);
        }
    };
    check(
        (p.omega * p.radius - 2.0).abs() <= 1e-12,
        format!("omega*R != 2 (omega*R = {})", p.omega * p.radius),
    );
    check(
        p.omega > 0.0 && p.omega < 1.0,
        format!("omega not in (0,1) (omega = {})", p.omega),
    );
    check(
        p.b_exponent > 0.5 && p.b_exponent < 2.0 / 3.0,
        format!("b not in (1/2, 2/3) (b = {})", p.b_exponent),
    );
    check(
        p.sigma > 0.0 && p.sigma < 1.0,
        format!("sigma not in (0,1) (sigma = {})", p.sigma),
    );
    check(
        p.sigma > 1.0 / (2.0 - p.b_exponent),
        format!(
            "sigma <= 1/(2-b) (sigma = {}, 1/(2-b) = {})",
            p.sigma,
            1.0 / (2.0 - p.b_exponent)
        ),
    );
    check(
        p.alpha > 0.0 && p.alpha < 1.0,
        format!("alpha not in (0,1) (alpha = {})", p.alpha),
    );
    check(
        p.m_exponent > 0.0 && p.m_exponent < p.sigma * (1.0 - p.b_exponent),
        format!(
            "m not in (0, sigma*(1-b)) (m = {}, sigma*(1-b) = {})",
            p.m_exponent,
            p.sigma * (1.0 - p.b_exponent)
        ),
    );
    check(
        p.mu > 0.0 && p.mu < std::f64::consts::FRAC_PI_2 && p.omega < p.mu / p.mu.tan(),
        format!(
            "omega >= mu/tan(mu) (omega = {}, mu/tan(mu) = {})",
            p.omega,
            p.mu / p.mu.tan()
        ),
    );
    check(
        p.lambda_barrier > 0.0
            && p.lambda_barrier < std::f64::consts::FRAC_PI_2
            && p.omega < p.lambda_barrier / p.lambda_barrier.tan(),
        format!(
            "omega >= lambda/tan(lambda) (omega = {}, lambda/tan(lambda) = {})",
            p.omega,
            p.lambda_barrier / p.lambda_barrier.tan()
        ),
    );
    check(
        p.mu < p.lambda_barrier,
        format!("mu >= lambda (mu = {}, lambda = {})", p.mu, p.lambda_barrier),
    );
    check(p.epsilon > 0.0, format!("epsilon <= 0 ({})", p.epsilon));
    check(
        p.epsilon < p.delta1 && p.delta1 < p.delta2 && p.delta2 < 1.0,
        format!(
            "scale ordering 0 < eps < delta1 < delta2 < 1 violated (eps = {}, delta1 = {}, delta2 = {})",
            p.epsilon, p.delta1, p.delta2
        ),
    );
    errs
}

/// Solves the disk matching quadratic
/// `−(ω/2)(R dᴰ)/ε − (ω/4)(dᴰ)²/ε + |log ε| = −log 2`
/// for its positive root. With `ωR = 2` this is
/// `(ω/4)d² + d = ε(|log ε| + log 2)`.
pub fn solve_dd(p: &PhysicalParams) -> Result<f64> {
    let rhs = p.epsilon * (p.abs_log_eps() + std::f64::consts::LN_2);
    positive_quadratic_root(0.25 * p.omega, 1.0, -rhs, "dD")
}

/// Solves the strip matching quadratic
/// `−(ω/2)(dˢ)²/ε − dˢ/ε + |log ε| + Cˢ + log 2 = 0`
/// for its positive root: `(ω/2)d² + d = ε(|log ε| + Cˢ + log 2)`.
pub fn solve_ds(p: &PhysicalParams, c_s: f64) -> Result<f64> {
    let rhs = p.epsilon * (p.abs_log_eps() + c_s + std::f64::consts::LN_2);
    positive_quadratic_root(0.5 * p.omega, 1.0, -rhs, "dS")
}

/// Positive root of `a d² + b d + c = 0`, written in the cancellation-free
/// form `d = −2c / (b + sqrt(b² − 4ac))`.
fn positive_quadratic_root(a: f64, b: f64, c: f64, what: &'static str) -> Result<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Err(Error::NoRoot {
            what,
            detail: format!("discriminant {disc} < 0 (a={a}, b={b}, c={c})"),
        });
    }
    let root = -2.0 * c / (b + disc.sqrt());
    if root.is_nan() || root <= 0.0 {
        return Err(Error::NoRoot {
            what,
            detail: format!("root {root} not positive (a={a}, b={b}, c={c})"),
        });
    }
    Ok(root)
}

/// `g₀` by quadrature: `πR / ∮_{∂B_R} x₂² ds`, which equals `1/R²` exactly.
/// Exposed so the closed form can be verified independently.
pub fn g0_quadrature(radius: f64) -> f64 {
    // ∮ x₂² ds over the circle of radius R centered on the x₂-axis offset is
    // computed with the circle centered at the origin; the offset drops out
    // of the solvability quotient (the mode-0 and mode-2 parts of x₂² are
    // orthogonal to the shift).
    let integral = integrate_panels(
        |theta: f64| (radius * theta.sin()).powi(2) * radius,
        0.0,
        2.0 * std::f64::consts::PI,
        16,
        12,
    );
    std::f64::consts::PI * radius / integral
}
