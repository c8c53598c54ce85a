//! Rasterization of point clouds to binary PGM images.

use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::numerics::Complex;

/// Axis-aligned rectangle [x0, x1] × [y0, y1] in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        let r = Rect { x0, y0, x1, y1 };
        if !(x1 > x0 && y1 > y0) || ![x0, y0, x1, y1].iter().all(|v| v.is_finite()) {
            return Err(Error::invalid(format!("degenerate bounds {r:?}")));
        }
        Ok(r)
    }

    pub fn bounding(points: &[Complex]) -> Option<Rect> {
        let first = points.first()?;
        let mut r = Rect {
            x0: first.re,
            y0: first.im,
            x1: first.re,
            y1: first.im,
        };
        for z in points {
            r.x0 = r.x0.min(z.re);
            r.y0 = r.y0.min(z.im);
            r.x1 = r.x1.max(z.re);
            r.y1 = r.y1.max(z.im);
        }
        Some(r)
    }

    /// Pads by 5% of the extent, then widens one side to the image aspect ratio.
    pub fn fit(points: &[Complex], width: usize, height: usize) -> Option<Rect> {
        let b = Rect::bounding(points)?;
        let (cx, cy) = ((b.x0 + b.x1) / 2.0, (b.y0 + b.y1) / 2.0);
        let mut w = (b.x1 - b.x0) * 1.1;
        let mut h = (b.y1 - b.y0) * 1.1;
        if w <= 0.0 && h <= 0.0 {
            w = 1.0;
            h = 1.0;
        }
        let aspect = width as f64 / height as f64;
        if w < h * aspect {
            w = h * aspect;
        } else {
            h = w / aspect;
        }
        Some(Rect {
            x0: cx - w / 2.0,
            y0: cy - h / 2.0,
            x1: cx + w / 2.0,
            y1: cy + h / 2.0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bounds {
    Auto,
    Explicit(Rect),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterConfig {
    pub width: usize,
    pub height: usize,
    pub bounds: Bounds,
    /// light points on a dark background
    pub invert: bool,
}

impl RasterConfig {
    pub fn square(size: usize) -> Self {
        RasterConfig {
            width: size,
            height: size,
            bounds: Bounds::Auto,
            invert: false,
        }
    }
}

/// 8-bit grayscale image, row-major, top row first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

/// Pixel index of `z`, or `None` outside `r`. The right and top edges clamp inward.
#[inline]
fn pixel_of(z: Complex, r: &Rect, width: usize, height: usize) -> Option<usize> {
    if !(z.re >= r.x0 && z.re <= r.x1 && z.im >= r.y0 && z.im <= r.y1) {
        return None;
    }
    let tx = (z.re - r.x0) / (r.x1 - r.x0);
    let ty = (r.y1 - z.im) / (r.y1 - r.y0);
    let px = ((tx * width as f64).floor() as usize).min(width - 1);
    let py = ((ty * height as f64).floor() as usize).min(height - 1);
    Some(py * width + px)
}

/// Marks the pixels hit by any point; shared by rendering and overlap estimates.
pub fn hit_mask(points: &[Complex], r: &Rect, width: usize, height: usize) -> Vec<bool> {
    let hits: Vec<usize> = points
        .par_iter()
        .filter_map(|&z| pixel_of(z, r, width, height))
        .collect();
    let mut mask = vec![false; width * height];
    for i in hits {
        mask[i] = true;
    }
    mask
}

pub fn rasterize_points(points: &[Complex], cfg: &RasterConfig) -> Result<GrayImage> {
    if cfg.width == 0 || cfg.height == 0 {
        return Err(Error::invalid("image dimensions must be at least 1×1"));
    }
    let rect = match cfg.bounds {
        Bounds::Explicit(r) => Rect::new(r.x0, r.y0, r.x1, r.y1)?,
        Bounds::Auto => Rect::fit(points, cfg.width, cfg.height)
            .ok_or_else(|| Error::invalid("cannot auto-fit bounds to an empty cloud"))?,
    };
    let (ink, paper) = if cfg.invert { (255, 0) } else { (0, 255) };
    let pixels = hit_mask(points, &rect, cfg.width, cfg.height)
        .into_iter()
        .map(|hit| if hit { ink } else { paper })
        .collect();
    Ok(GrayImage {
        width: cfg.width,
        height: cfg.height,
        pixels,
    })
}

pub fn rasterize(c: &PointCloud, cfg: &RasterConfig) -> Result<GrayImage> {
    rasterize_points(c.points(), cfg)
}

pub fn write_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(&img.to_pgm())?;
    Ok(())
}
