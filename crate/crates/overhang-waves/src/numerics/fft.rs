//! Thin FFT conveniences over `rustfft`, with the frequency layout used by
//! the spectral solvers.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// In-place forward FFT (engineering sign convention,
/// `X_k = Σ_j x_j e^{-2πi jk/N}`).
pub fn fft_forward(data: &mut [Complex64]) {
    FftPlanner::new().plan_fft_forward(data.len()).process(data);
}

/// In-place inverse FFT, normalized by `1/N` so that it inverts
/// [`fft_forward`].
pub fn fft_inverse(data: &mut [Complex64]) {
    let n = data.len();
    FftPlanner::new().plan_fft_inverse(n).process(data);
    let scale = 1.0 / n as f64;
    for v in data {
        *v *= scale;
    }
}

/// Signed integer frequency for bin `k` of an `n`-point FFT
/// (`0, 1, …, n/2, -(n/2-1), …, -1`).
pub fn freq_index(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}
