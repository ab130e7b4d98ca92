//! Sample grids on compact sets.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::exclusion::ExclusionSet;
use crate::error::{Error, Result};
use crate::series::HpComplex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Shape {
    Disk { center: (f64, f64), radius: f64 },
    Annulus { center: (f64, f64), r_in: f64, r_out: f64 },
    AnnularSector { center: (f64, f64), r_in: f64, r_out: f64, theta0: f64, theta1: f64 },
    Rectangle { x0: f64, x1: f64, y0: f64, y1: f64 },
}

impl Shape {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Shape::Disk { radius, .. } => radius > 0.0,
            Shape::Annulus { r_in, r_out, .. } => 0.0 <= r_in && r_in < r_out,
            Shape::AnnularSector { r_in, r_out, theta0, theta1, .. } => {
                0.0 <= r_in && r_in < r_out && theta0 < theta1 && theta1 - theta0 <= TAU
            }
            Shape::Rectangle { x0, x1, y0, y1 } => x0 < x1 && y0 < y1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Grid(format!("degenerate shape {self:?}")))
        }
    }

    /// Membership up to a relative slack for points on the boundary.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        const S: f64 = 1e-12;
        let polar = |c: (f64, f64)| {
            let (dx, dy) = (x - c.0, y - c.1);
            (dx.hypot(dy), dy.atan2(dx))
        };
        match *self {
            Shape::Disk { center, radius } => polar(center).0 <= radius * (1.0 + S),
            Shape::Annulus { center, r_in, r_out } => {
                let r = polar(center).0;
                r >= r_in * (1.0 - S) && r <= r_out * (1.0 + S)
            }
            Shape::AnnularSector { center, r_in, r_out, theta0, theta1 } => {
                let (r, t) = polar(center);
                let t = theta0 + (t - theta0).rem_euclid(TAU);
                r >= r_in * (1.0 - S) && r <= r_out * (1.0 + S) && (t <= theta1 + S || r <= S)
            }
            Shape::Rectangle { x0, x1, y0, y1 } => {
                let (sx, sy) = (S * (x1 - x0), S * (y1 - y0));
                x >= x0 - sx && x <= x1 + sx && y >= y0 - sy && y <= y1 + sy
            }
        }
    }

    /// `max |z|` over the shape.
    pub fn max_modulus(&self) -> f64 {
        match *self {
            Shape::Disk { center, radius } => center.0.hypot(center.1) + radius,
            Shape::Annulus { center, r_out, .. } => center.0.hypot(center.1) + r_out,
            // conservative for sectors not containing the outward direction
            Shape::AnnularSector { center, r_out, .. } => center.0.hypot(center.1) + r_out,
            Shape::Rectangle { x0, x1, y0, y1 } => x0.abs().max(x1.abs()).hypot(y0.abs().max(y1.abs())),
        }
    }

    /// Map unit-square coordinates onto the shape.
    fn place(&self, u: f64, v: f64) -> (f64, f64) {
        match *self {
            Shape::Disk { center, radius } => {
                let (r, t) = (radius * u, TAU * v);
                (center.0 + r * t.cos(), center.1 + r * t.sin())
            }
            Shape::Annulus { center, r_in, r_out } => {
                let (r, t) = (r_in + (r_out - r_in) * u, TAU * v);
                (center.0 + r * t.cos(), center.1 + r * t.sin())
            }
            Shape::AnnularSector { center, r_in, r_out, theta0, theta1 } => {
                let (r, t) = (r_in + (r_out - r_in) * u, theta0 + (theta1 - theta0) * v);
                (center.0 + r * t.cos(), center.1 + r * t.sin())
            }
            Shape::Rectangle { x0, x1, y0, y1 } => (x0 + (x1 - x0) * u, y0 + (y1 - y0) * v),
        }
    }

    /// Periodic angular coordinate: the `v = 1` column repeats `v = 0`.
    fn periodic(&self) -> bool {
        matches!(self, Shape::Disk { .. } | Shape::Annulus { .. })
    }
}

#[derive(Debug, Clone)]
pub struct CompactGrid {
    pub shape: Shape,
    pub points: Vec<HpComplex>,
    /// Indices of points removed by an exclusion set or a filter.
    pub excluded: Vec<usize>,
    pub density: (usize, usize),
}

impl CompactGrid {
    /// `nu × nv` samples of the shape's parameter square. Jitter moves
    /// interior samples by up to half a cell, deterministically per seed.
    pub fn build(shape: Shape, density: (usize, usize), jitter: Option<u64>, prec: u32) -> Result<Self> {
        shape.validate()?;
        let (nu, nv) = density;
        if nu < 2 || nv < 2 {
            return Err(Error::Grid("density must be at least 2 in each direction".into()));
        }
        let mut rng = jitter.map(ChaCha8Rng::seed_from_u64);
        let v_den = if shape.periodic() { nv } else { nv - 1 };
        let mut points = Vec::with_capacity(nu * nv);
        let mut center_done = false;
        for i in 0..nu {
            let u0 = i as f64 / (nu - 1) as f64;
            // a disk's u = 0 ring collapses to the center
            if matches!(shape, Shape::Disk { .. }) && i == 0 {
                if !center_done {
                    let (x, y) = shape.place(0.0, 0.0);
                    points.push(HpComplex::from_f64(prec, x, y));
                    center_done = true;
                }
                continue;
            }
            for j in 0..nv {
                let mut u = u0;
                let mut v = j as f64 / v_den as f64;
                if let Some(r) = rng.as_mut() {
                    let du: f64 = r.gen_range(-0.5..0.5) / (nu - 1) as f64;
                    let dv: f64 = r.gen_range(-0.5..0.5) / v_den as f64;
                    if i > 0 && i + 1 < nu {
                        u += du;
                    }
                    if shape.periodic() || (j > 0 && j + 1 < nv) {
                        v += dv;
                    }
                }
                let (x, y) = shape.place(u, v);
                points.push(HpComplex::from_f64(prec, x, y));
            }
        }
        Ok(CompactGrid { shape, points, excluded: Vec::new(), density })
    }

    /// Remove every point lying in some exclusion disk.
    pub fn apply_exclusion(&mut self, excl: &ExclusionSet) {
        self.exclude_where(|z| excl.contains(z));
    }

    pub fn exclude_where(&mut self, pred: impl Fn(&HpComplex) -> bool + Sync) {
        use rayon::prelude::*;
        let already: std::collections::BTreeSet<usize> = self.excluded.iter().copied().collect();
        let hits: Vec<usize> =
            (0..self.points.len()).into_par_iter().filter(|i| !already.contains(i) && pred(&self.points[*i])).collect();
        self.excluded.extend(hits);
        self.excluded.sort_unstable();
    }

    /// Retained points in index order.
    pub fn retained(&self) -> Vec<&HpComplex> {
        let mut ex = self.excluded.iter().peekable();
        let mut out = Vec::with_capacity(self.points.len() - self.excluded.len());
        for (i, p) in self.points.iter().enumerate() {
            if ex.peek() == Some(&&i) {
                ex.next();
            } else {
                out.push(p);
            }
        }
        out
    }
}
