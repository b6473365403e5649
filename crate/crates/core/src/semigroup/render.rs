//! Density rasterization of point clouds: per-pixel hit counts,
//! log-scaled to 8-bit grayscale, with binary PPM (P5) output.

use crate::error::{Error, Result};
use crate::sphere::PointCloud;

/// Axis-aligned window in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let w = Window {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        if ![x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite())
            || !(x_min < x_max)
            || !(y_min < y_max)
        {
            return Err(Error::invalid(format!("degenerate window {w:?}")));
        }
        Ok(w)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    /// Row-major, row 0 at the top (y = y_max).
    pub pixels: Vec<u8>,
    /// Points at ∞ or outside the window.
    pub dropped: usize,
}

impl Raster {
    /// Binary 8-bit PPM (P5).
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

/// Hit-count raster of the finite cloud points inside `window`, log-scaled
/// to 8 bits. Points at ∞ and outside the window are dropped and counted.
pub fn render_cloud(
    cloud: &PointCloud,
    window: Window,
    width: usize,
    height: usize,
) -> Result<Raster> {
    if width == 0 || height == 0 {
        return Err(Error::invalid("raster dimensions must be positive"));
    }
    // re-validate: Window is Copy and could be built directly
    let window = Window::new(window.x_min, window.x_max, window.y_min, window.y_max)?;

    let mut counts = vec![0u64; width * height];
    let mut dropped = 0usize;
    let dx = window.x_max - window.x_min;
    let dy = window.y_max - window.y_min;
    for p in &cloud.points {
        let Some(z) = p.as_finite() else {
            dropped += 1;
            continue;
        };
        if z.re < window.x_min || z.re > window.x_max || z.im < window.y_min || z.im > window.y_max
        {
            dropped += 1;
            continue;
        }
        let col = (((z.re - window.x_min) / dx) * width as f64) as usize;
        let row = (((window.y_max - z.im) / dy) * height as f64) as usize;
        let col = col.min(width - 1);
        let row = row.min(height - 1);
        counts[row * width + col] += 1;
    }

    let max_count = counts.iter().copied().max().unwrap_or(0);
    let pixels = if max_count == 0 {
        vec![0u8; width * height]
    } else {
        let denom = (1.0 + max_count as f64).ln();
        counts
            .iter()
            .map(|&c| {
                if c == 0 {
                    0
                } else {
                    (255.0 * (1.0 + c as f64).ln() / denom).round() as u8
                }
            })
            .collect()
    };
    Ok(Raster {
        width,
        height,
        pixels,
        dropped,
    })
}
