//! Banded LU factorization for the five-point Laplacian systems.
//!
//! The finite-difference Poisson solves assemble matrices whose nonzero
//! entries lie within a fixed distance of the diagonal (the bandwidth equals
//! the number of interior columns of the grid).  Those systems are strictly
//! diagonally dominant, so an LU factorization without pivoting is stable;
//! we store the band densely, which keeps the factorization at
//! `O(n * bw^2)` flops and the back-substitution at `O(n * bw)`.

use crate::error::{Error, Result};

/// Dense storage of a square banded matrix and, after [`BandedLu::factorize`],
/// of its LU factors in place.
///
/// Entry `(i, j)` with `|i - j| <= bw` is stored at `data[i * (2*bw+1) + (j - i + bw)]`.
pub struct BandedLu {
    n: usize,
    bw: usize,
    data: Vec<f64>,
    factored: bool,
}

impl BandedLu {
    /// Create a zero matrix of dimension `n` with bandwidth `bw`.
    pub fn new(n: usize, bw: usize) -> Self {
        BandedLu {
            n,
            bw,
            data: vec![0.0; n * (2 * bw + 1)],
            factored: false,
        }
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n && j < self.n);
        debug_assert!(j + self.bw >= i && j <= i + self.bw);
        i * (2 * self.bw + 1) + (j + self.bw - i)
    }

    /// Set entry `(i, j)`; panics if the entry lies outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(!self.factored, "matrix already factored");
        let k = self.idx(i, j);
        self.data[k] = v;
    }

    /// Add to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(!self.factored, "matrix already factored");
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    /// LU-factorize in place without pivoting.  Fails on a (near-)zero pivot,
    /// which for the diagonally dominant assemblies indicates a programming
    /// error rather than bad data.
    pub fn factorize(&mut self) -> Result<()> {
        let n = self.n;
        let bw = self.bw;
        let stride = 2 * bw + 1;
        for k in 0..n {
            let pivot = self.data[k * stride + bw];
            if pivot.abs() < 1e-300 {
                return Err(Error::IllConditioned {
                    what: "banded LU pivot",
                    margin: pivot.abs(),
                });
            }
            let imax = (k + bw).min(n - 1);
            for i in (k + 1)..=imax {
                // position of (i, k) in row i
                let lik = self.data[i * stride + (k + bw - i)] / pivot;
                self.data[i * stride + (k + bw - i)] = lik;
                if lik != 0.0 {
                    let jmax = (k + bw).min(n - 1);
                    for j in (k + 1)..=jmax {
                        let a_kj = self.data[k * stride + (j + bw - k)];
                        if a_kj != 0.0 {
                            self.data[i * stride + (j + bw - i)] -= lik * a_kj;
                        }
                    }
                }
            }
        }
        self.factored = true;
        Ok(())
    }

    /// Solve `A x = b` in place using the stored factors.
    pub fn solve(&self, b: &mut [f64]) {
        assert!(self.factored, "matrix not yet factored");
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let bw = self.bw;
        let stride = 2 * bw + 1;
        // forward substitution with unit-diagonal L
        for i in 0..n {
            let jmin = i.saturating_sub(bw);
            let mut s = b[i];
            for j in jmin..i {
                s -= self.data[i * stride + (j + bw - i)] * b[j];
            }
            b[i] = s;
        }
        // back substitution with U
        for i in (0..n).rev() {
            let jmax = (i + bw).min(n - 1);
            let mut s = b[i];
            for j in (i + 1)..=jmax {
                s -= self.data[i * stride + (j + bw - i)] * b[j];
            }
            b[i] = s / self.data[i * stride + bw];
        }
    }
}
