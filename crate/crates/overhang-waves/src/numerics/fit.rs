//! Least-squares slope fits and Richardson extrapolation.

/// Least-squares slope of `y` against `x`.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2);
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        num += (xi - mx) * (yi - my);
        den += (xi - mx) * (xi - mx);
    }
    num / den
}

/// Log-log slope: least-squares slope of `log y` against `log x`.
/// All inputs must be positive.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    least_squares_slope(&lx, &ly)
}

/// One Richardson extrapolation step for a quantity with leading error
/// `C·h^p`: given values at steps `h` and `h/r`, returns the eliminated
/// estimate `(r^p f(h/r) - f(h)) / (r^p - 1)`.
pub fn richardson(f_h: f64, f_h_over_r: f64, r: f64, p: f64) -> f64 {
    let rp = r.powf(p);
    (rp * f_h_over_r - f_h) / (rp - 1.0)
}

/// Fits `y ≈ C e^{-λ x}` by log-linear least squares and returns `(C, λ)`.
/// `y` must be positive.
pub fn exponential_decay_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let slope = least_squares_slope(x, &ly);
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let log_c = my - slope * mx;
    (log_c.exp(), -slope)
}
