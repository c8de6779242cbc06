//! Truncated complex Taylor series arithmetic: products, composition, and
//! series reversion.
//!
//! Used to differentiate conformal pullbacks analytically: the inverse of an
//! analytic map is reverted locally as a power series, and compositions give
//! derivatives of any order without finite differencing.

use num_complex::Complex64;

/// A truncated Taylor series `Σ_{k=0}^{n} c[k] t^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Taylor {
    pub c: Vec<Complex64>,
}

impl Taylor {
    pub fn zero(order: usize) -> Self {
        Self {
            c: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn from_coeffs(c: Vec<Complex64>) -> Self {
        Self { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    /// Truncated product of two series of the same order.
    pub fn mul(&self, other: &Taylor) -> Taylor {
        let n = self.order().min(other.order());
        let mut out = Taylor::zero(n);
        for k in 0..=n {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..=k {
                s += self.c[j] * other.c[k - j];
            }
            out.c[k] = s;
        }
        out
    }

    /// Composition `self ∘ inner`, requiring `inner.c[0] == 0`.
    pub fn compose(&self, inner: &Taylor) -> Taylor {
        assert!(
            inner.c[0].norm() == 0.0,
            "composition requires inner series with zero constant term"
        );
        let n = self.order().min(inner.order());
        // Horner evaluation in series arithmetic.
        let mut out = Taylor::zero(n);
        out.c[0] = self.c[self.order().min(n)];
        for k in (0..self.order().min(n)).rev() {
            out = out.mul(inner);
            out.c[0] += self.c[k];
        }
        out
    }

    /// Series reversion: given `z(t) = Σ_{k≥1} c[k] t^k` with `c[0] = 0` and
    /// `c[1] ≠ 0`, returns `t(z)` to the same order.
    ///
    /// Coefficients are determined order by order from the identity
    /// `z(t(ζ)) = ζ`.
    pub fn revert(&self) -> Taylor {
        assert!(self.c[0].norm() == 0.0, "reversion requires c[0] = 0");
        assert!(self.c[1].norm() > 0.0, "reversion requires c[1] ≠ 0");
        let n = self.order();
        let mut inv = Taylor::zero(n);
        inv.c[1] = 1.0 / self.c[1];
        for m in 2..=n {
            // Coefficient of ζ^m in self ∘ inv (with inv known to order m-1
            // and inv.c[m] still zero) must be cancelled by c[1]·inv.c[m].
            let trial = self.compose(&inv);
            inv.c[m] = -trial.c[m] / self.c[1];
        }
        inv
    }

    /// The `k`-th derivative at the expansion point: `k! · c[k]`.
    pub fn derivative(&self, k: usize) -> Complex64 {
        let mut fact = 1.0;
        for j in 2..=k {
            fact *= j as f64;
        }
        self.c[k] * fact
    }
}

/// Taylor series of `sin(w0 + t)` in `t` up to `order`.
pub fn sin_series(w0: Complex64, order: usize) -> Taylor {
    let (s, c) = (w0.sin(), w0.cos());
    let mut out = Taylor::zero(order);
    let mut fact = 1.0;
    for k in 0..=order {
        if k > 0 {
            fact *= k as f64;
        }
        out.c[k] = match k % 4 {
            0 => s,
            1 => c,
            2 => -s,
            _ => -c,
        } / fact;
    }
    out
}

/// Taylor series of `cos(w0 + t)` in `t` up to `order`.
pub fn cos_series(w0: Complex64, order: usize) -> Taylor {
    let (s, c) = (w0.sin(), w0.cos());
    let mut out = Taylor::zero(order);
    let mut fact = 1.0;
    for k in 0..=order {
        if k > 0 {
            fact *= k as f64;
        }
        out.c[k] = match k % 4 {
            0 => c,
            1 => -s,
            2 => -c,
            _ => s,
        } / fact;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_matches_polynomial_expansion() {
        // (1 + 2t)(3 + t + t²) = 3 + 7t + 3t² + 2t³.
        let a = Taylor::from_coeffs(vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let b = Taylor::from_coeffs(vec![c(3.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let p = a.mul(&b);
        let expect = [3.0, 7.0, 3.0, 2.0];
        for (k, e) in expect.iter().enumerate() {
            assert!((p.c[k] - e).norm() < 1e-15);
        }
    }

    #[test]
    fn reversion_inverts_exp_minus_one() {
        // z = e^t - 1 has inverse t = log(1+z) = z - z²/2 + z³/3 - ...
        let order = 6;
        let mut exp = Taylor::zero(order);
        let mut fact = 1.0;
        for k in 1..=order {
            fact *= k as f64;
            exp.c[k] = c(1.0 / fact, 0.0);
        }
        let log = exp.revert();
        for k in 1..=order {
            let expect = if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            assert!((log.c[k] - c(expect, 0.0)).norm() < 1e-14, "k = {k}");
        }
    }

    #[test]
    fn trig_series_compose_to_identity_derivatives() {
        // sin²(w0+t) + cos²(w0+t) = 1 as a series identity.
        let w0 = c(0.3, 0.8);
        let s = sin_series(w0, 6);
        let cc = cos_series(w0, 6);
        let sum = s.mul(&s).c.iter().zip(cc.mul(&cc).c.iter()).map(|(a, b)| a + b).collect::<Vec<_>>();
        assert!((sum[0] - c(1.0, 0.0)).norm() < 1e-14);
        for v in &sum[1..] {
            assert!(v.norm() < 1e-13);
        }
    }
}
