//! Five-point finite-difference Poisson solver on a vertical rectangle.
//!
//! The rectangle `[-a, a] x [-W, W]` discretizes the conformal preimage of
//! the hairpin: the two vertical walls carry genuine Dirichlet data while the
//! horizontal caps at `±W` impose zero Dirichlet values, which is accurate
//! because every right-hand side we feed in decays exponentially in `|w2|`
//! (the cap error then decays exponentially away from the caps).
//!
//! The assembled matrix is factored once ([`RectPoisson::new`]) and reused
//! for every subsequent right-hand side.

use crate::error::Result;
use crate::numerics::banded::BandedLu;

/// Uniform grid on `[-a, a] x [-w_max, w_max]` including boundary nodes.
#[derive(Clone, Copy, Debug)]
pub struct RectGrid {
    /// Half-width of the rectangle in the first coordinate.
    pub a: f64,
    /// Half-height of the rectangle in the second coordinate.
    pub w_max: f64,
    /// Number of interior columns.
    pub n1: usize,
    /// Number of interior rows.
    pub n2: usize,
}

impl RectGrid {
    /// Horizontal spacing.
    pub fn h1(&self) -> f64 {
        2.0 * self.a / (self.n1 as f64 + 1.0)
    }

    /// Vertical spacing.
    pub fn h2(&self) -> f64 {
        2.0 * self.w_max / (self.n2 as f64 + 1.0)
    }

    /// First coordinate of column `i` (0 = left wall, n1+1 = right wall).
    pub fn x1(&self, i: usize) -> f64 {
        -self.a + self.h1() * i as f64
    }

    /// Second coordinate of row `j` (0 = bottom cap, n2+1 = top cap).
    pub fn x2(&self, j: usize) -> f64 {
        -self.w_max + self.h2() * j as f64
    }
}

/// A field sampled on a [`RectGrid`] (boundary included), with bilinear
/// interpolation of values and of precomputed first-derivative grids.
pub struct GridField {
    grid: RectGrid,
    /// values\[j\]\[i\] over rows j = 0..n2+1, columns i = 0..n1+1
    values: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl GridField {
    fn ncols(&self) -> usize {
        self.grid.n1 + 2
    }

    /// Build from a row-major value array (rows of length `n1 + 2`,
    /// `n2 + 2` rows), computing derivative grids by central differences
    /// (one-sided second order at the edges).
    pub fn from_values(grid: RectGrid, values: Vec<f64>) -> Self {
        let nc = grid.n1 + 2;
        let nr = grid.n2 + 2;
        assert_eq!(values.len(), nc * nr);
        let h1 = grid.h1();
        let h2 = grid.h2();
        let at = |j: usize, i: usize| values[j * nc + i];
        let mut d1 = vec![0.0; nc * nr];
        let mut d2 = vec![0.0; nc * nr];
        for j in 0..nr {
            for i in 0..nc {
                d1[j * nc + i] = if i == 0 {
                    (-3.0 * at(j, 0) + 4.0 * at(j, 1) - at(j, 2)) / (2.0 * h1)
                } else if i == nc - 1 {
                    (3.0 * at(j, nc - 1) - 4.0 * at(j, nc - 2) + at(j, nc - 3)) / (2.0 * h1)
                } else {
                    (at(j, i + 1) - at(j, i - 1)) / (2.0 * h1)
                };
                d2[j * nc + i] = if j == 0 {
                    (-3.0 * at(0, i) + 4.0 * at(1, i) - at(2, i)) / (2.0 * h2)
                } else if j == nr - 1 {
                    (3.0 * at(nr - 1, i) - 4.0 * at(nr - 2, i) + at(nr - 3, i)) / (2.0 * h2)
                } else {
                    (at(j + 1, i) - at(j - 1, i)) / (2.0 * h2)
                };
            }
        }
        GridField {
            grid,
            values,
            d1,
            d2,
        }
    }

    fn locate(&self, x1: f64, x2: f64) -> (usize, usize, f64, f64) {
        let g = &self.grid;
        let h1 = g.h1();
        let h2 = g.h2();
        let u = ((x1 + g.a) / h1).clamp(0.0, (g.n1 + 1) as f64 - 1e-12);
        let v = ((x2 + g.w_max) / h2).clamp(0.0, (g.n2 + 1) as f64 - 1e-12);
        let i = u.floor() as usize;
        let j = v.floor() as usize;
        (i, j, u - i as f64, v - j as f64)
    }

    fn bilinear(&self, arr: &[f64], x1: f64, x2: f64) -> f64 {
        let (i, j, s, t) = self.locate(x1, x2);
        let nc = self.ncols();
        let a00 = arr[j * nc + i];
        let a10 = arr[j * nc + i + 1];
        let a01 = arr[(j + 1) * nc + i];
        let a11 = arr[(j + 1) * nc + i + 1];
        a00 * (1.0 - s) * (1.0 - t) + a10 * s * (1.0 - t) + a01 * (1.0 - s) * t + a11 * s * t
    }

    /// Interpolated value; clamps to the rectangle (the fields we store decay
    /// to the cap values, so clamping is the right off-grid extension).
    pub fn value(&self, x1: f64, x2: f64) -> f64 {
        self.bilinear(&self.values, x1, x2)
    }

    /// Interpolated first derivatives.
    pub fn gradient(&self, x1: f64, x2: f64) -> (f64, f64) {
        (
            self.bilinear(&self.d1, x1, x2),
            self.bilinear(&self.d2, x1, x2),
        )
    }

    /// One-sided second-order outward normal derivative on the left wall at
    /// height `x2` (outward direction `-e1`).
    pub fn normal_derivative_left(&self, x2: f64) -> f64 {
        let h1 = self.grid.h1();
        let v0 = self.wall_interp(0, x2);
        let v1 = self.wall_interp(1, x2);
        let v2 = self.wall_interp(2, x2);
        -(-3.0 * v0 + 4.0 * v1 - v2) / (2.0 * h1)
    }

    /// Same on the right wall (outward direction `+e1`).
    pub fn normal_derivative_right(&self, x2: f64) -> f64 {
        let nc = self.ncols();
        let h1 = self.grid.h1();
        let v0 = self.wall_interp(nc - 1, x2);
        let v1 = self.wall_interp(nc - 2, x2);
        let v2 = self.wall_interp(nc - 3, x2);
        (3.0 * v0 - 4.0 * v1 + v2) / (2.0 * h1)
    }

    /// Linear interpolation in `x2` along a fixed column.
    fn wall_interp(&self, col: usize, x2: f64) -> f64 {
        let g = &self.grid;
        let h2 = g.h2();
        let v = ((x2 + g.w_max) / h2).clamp(0.0, (g.n2 + 1) as f64 - 1e-12);
        let j = v.floor() as usize;
        let t = v - j as f64;
        let nc = self.ncols();
        self.values[j * nc + col] * (1.0 - t) + self.values[(j + 1) * nc + col] * t
    }
}

/// Pre-factored five-point Laplacian on a [`RectGrid`] with Dirichlet data on
/// the two vertical walls and zero Dirichlet caps.
pub struct RectPoisson {
    grid: RectGrid,
    lu: BandedLu,
}

impl RectPoisson {
    /// Assemble and factorize; cost `O(n1^2 * n2 * n1)` once.
    pub fn new(grid: RectGrid) -> Result<Self> {
        let n1 = grid.n1;
        let n2 = grid.n2;
        let n = n1 * n2;
        let h1i = 1.0 / (grid.h1() * grid.h1());
        let h2i = 1.0 / (grid.h2() * grid.h2());
        let mut lu = BandedLu::new(n, n1);
        for j in 0..n2 {
            for i in 0..n1 {
                let k = j * n1 + i;
                lu.set(k, k, -2.0 * (h1i + h2i));
                if i > 0 {
                    lu.set(k, k - 1, h1i);
                }
                if i + 1 < n1 {
                    lu.set(k, k + 1, h1i);
                }
                if j > 0 {
                    lu.set(k, k - n1, h2i);
                }
                if j + 1 < n2 {
                    lu.set(k, k + n1, h2i);
                }
            }
        }
        lu.factorize()?;
        Ok(RectPoisson { grid, lu })
    }

    /// Grid geometry.
    pub fn grid(&self) -> RectGrid {
        self.grid
    }

    /// Solve `Δu = f` with `u = left(x2)` / `u = right(x2)` on the walls and
    /// `u = 0` on the caps.  Returns the solution with boundary values filled
    /// in.
    pub fn solve(
        &self,
        f: &dyn Fn(f64, f64) -> f64,
        left: &dyn Fn(f64) -> f64,
        right: &dyn Fn(f64) -> f64,
    ) -> GridField {
        let g = self.grid;
        let n1 = g.n1;
        let n2 = g.n2;
        let h1i = 1.0 / (g.h1() * g.h1());
        let mut rhs = vec![0.0; n1 * n2];
        for j in 0..n2 {
            let x2 = g.x2(j + 1);
            for i in 0..n1 {
                let x1 = g.x1(i + 1);
                let mut v = f(x1, x2);
                if i == 0 {
                    v -= left(x2) * h1i;
                }
                if i == n1 - 1 {
                    v -= right(x2) * h1i;
                }
                rhs[j * n1 + i] = v;
            }
        }
        self.lu.solve(&mut rhs);
        let nc = n1 + 2;
        let nr = n2 + 2;
        let mut values = vec![0.0; nc * nr];
        for j in 0..n2 {
            for i in 0..n1 {
                values[(j + 1) * nc + (i + 1)] = rhs[j * n1 + i];
            }
        }
        for j in 1..nr - 1 {
            let x2 = g.x2(j);
            values[j * nc] = left(x2);
            values[j * nc + nc - 1] = right(x2);
        }
        GridField::from_values(g, values)
    }
}
