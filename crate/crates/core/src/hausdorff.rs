//! Hausdorff distance between finite point sets.
//!
//! [`hausdorff_points`] buckets the target set into a uniform grid and finds
//! each nearest neighbour by expanding square rings of cells. Both it and the
//! brute-force [`hausdorff_points_brute`] compare the same squared distances
//! `dx*dx + dy*dy` and take a single square root at the end, so when the
//! grid search finds the true nearest neighbour the two agree bit for bit.

use rayon::prelude::*;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::numerics::Complex;

#[inline]
fn dist_sq(a: Complex, b: Complex) -> f64 {
    let dx = a.re - b.re;
    let dy = a.im - b.im;
    dx * dx + dy * dy
}

/// Uniform bucket grid over a point set.
#[derive(Debug, Clone)]
pub struct NearestGrid {
    min_re: f64,
    min_im: f64,
    cell: f64,
    nx: i64,
    ny: i64,
    offsets: Vec<usize>,
    points: Vec<Complex>,
}

impl NearestGrid {
    pub fn new(points: &[Complex]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("nearest-neighbour grid over an empty set"));
        }
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for z in points {
            x0 = x0.min(z.re);
            y0 = y0.min(z.im);
            x1 = x1.max(z.re);
            y1 = y1.max(z.im);
        }
        let (w, h) = (x1 - x0, y1 - y0);
        let n = points.len() as f64;
        // about one point per cell on average
        let mut cell = if w > 0.0 && h > 0.0 {
            (w * h / n).sqrt()
        } else {
            w.max(h) / n
        };
        if cell <= 0.0 || !cell.is_finite() {
            cell = 1.0;
        }
        // keep the cell count O(n) for very elongated sets
        let cells = |c: f64| ((w / c).floor() + 1.0) * ((h / c).floor() + 1.0);
        while cells(cell) > 4.0 * n + 16.0 {
            cell *= 1.5;
        }
        let nx = (w / cell).floor() as i64 + 1;
        let ny = (h / cell).floor() as i64 + 1;
        let mut grid = NearestGrid {
            min_re: x0,
            min_im: y0,
            cell,
            nx,
            ny,
            offsets: vec![0; (nx * ny + 1) as usize],
            points: vec![Complex::new(0.0, 0.0); points.len()],
        };
        let index: Vec<usize> = points
            .iter()
            .map(|&z| {
                let (cx, cy) = grid.cell_of(z);
                (cy.clamp(0, ny - 1) * nx + cx.clamp(0, nx - 1)) as usize
            })
            .collect();
        for &i in &index {
            grid.offsets[i + 1] += 1;
        }
        for i in 0..grid.offsets.len() - 1 {
            grid.offsets[i + 1] += grid.offsets[i];
        }
        let mut fill = grid.offsets.clone();
        for (&i, &z) in index.iter().zip(points) {
            grid.points[fill[i]] = z;
            fill[i] += 1;
        }
        Ok(grid)
    }

    #[inline]
    fn cell_of(&self, z: Complex) -> (i64, i64) {
        (
            ((z.re - self.min_re) / self.cell).floor() as i64,
            ((z.im - self.min_im) / self.cell).floor() as i64,
        )
    }

    #[inline]
    fn scan(&self, cx: i64, cy: i64, q: Complex, best: &mut f64) {
        let i = (cy * self.nx + cx) as usize;
        for &p in &self.points[self.offsets[i]..self.offsets[i + 1]] {
            let d = dist_sq(q, p);
            if d < *best {
                *best = d;
            }
        }
    }

    /// Squared distance from `q` to its nearest neighbour. Returns early with
    /// some value ≤ `floor` as soon as one is found.
    fn nearest_sq_above(&self, q: Complex, floor: f64) -> f64 {
        let (qx, qy) = self.cell_of(q);
        const FAR: i64 = 1 << 40;
        if !(-FAR..=FAR).contains(&qx) || !(-FAR..=FAR).contains(&qy) {
            return self
                .points
                .iter()
                .map(|&p| dist_sq(q, p))
                .fold(f64::INFINITY, f64::min);
        }
        let r_min = [0, -qx, qx - (self.nx - 1), -qy, qy - (self.ny - 1)]
            .into_iter()
            .max()
            .unwrap_or(0);
        let r_max = [qx, self.nx - 1 - qx, qy, self.ny - 1 - qy]
            .into_iter()
            .map(i64::abs)
            .max()
            .unwrap_or(0)
            .max(r_min);
        let mut best = f64::INFINITY;
        for r in r_min..=r_max {
            let (ylo, yhi) = ((qy - r).max(0), (qy + r).min(self.ny - 1));
            let (xlo, xhi) = ((qx - r).max(0), (qx + r).min(self.nx - 1));
            if r == 0 {
                self.scan(qx, qy, q, &mut best);
            } else {
                for y in [qy - r, qy + r] {
                    if (0..self.ny).contains(&y) {
                        for x in xlo..=xhi {
                            self.scan(x, y, q, &mut best);
                        }
                    }
                }
                for x in [qx - r, qx + r] {
                    if (0..self.nx).contains(&x) {
                        for y in ylo.max(qy - r + 1)..=yhi.min(qy + r - 1) {
                            self.scan(x, y, q, &mut best);
                        }
                    }
                }
            }
            if best <= floor {
                return best;
            }
            // unvisited points lie at least r cells away; half a cell of slack
            // absorbs rounding in the cell assignment
            let reach = (r as f64 - 0.5) * self.cell;
            if reach > 0.0 && best <= reach * reach {
                return best;
            }
        }
        best
    }

    pub fn nearest_sq(&self, q: Complex) -> f64 {
        self.nearest_sq_above(q, f64::NEG_INFINITY)
    }

    /// max over `from` of the squared nearest-neighbour distance into the grid.
    pub fn directed_sq(&self, from: &[Complex]) -> f64 {
        from.par_chunks(1024)
            .map(|chunk| {
                let mut worst = 0.0f64;
                for &q in chunk {
                    // a point whose neighbour is no farther than `worst` cannot raise it
                    let d = self.nearest_sq_above(q, worst);
                    if d > worst {
                        worst = d;
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }
}

fn check_nonempty(a: &[Complex], b: &[Complex]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid(
            "Hausdorff distance needs two non-empty sets",
        ));
    }
    Ok(())
}

pub fn hausdorff_points(a: &[Complex], b: &[Complex]) -> Result<f64> {
    check_nonempty(a, b)?;
    let ab = NearestGrid::new(b)?.directed_sq(a);
    let ba = NearestGrid::new(a)?.directed_sq(b);
    Ok(ab.max(ba).sqrt())
}

fn directed_sq_brute(from: &[Complex], to: &[Complex]) -> f64 {
    from.iter()
        .map(|&p| {
            to.iter()
                .map(|&q| dist_sq(p, q))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// O(|a|·|b|) reference implementation.
pub fn hausdorff_points_brute(a: &[Complex], b: &[Complex]) -> Result<f64> {
    check_nonempty(a, b)?;
    Ok(directed_sq_brute(a, b).max(directed_sq_brute(b, a)).sqrt())
}

pub fn hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    hausdorff_points(a.points(), b.points())
}

pub fn hausdorff_brute(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    hausdorff_points_brute(a.points(), b.points())
}
