//! Canny edge detection: Gaussian smoothing, Sobel gradients, non-maximum
//! suppression, and double-threshold hysteresis.

use crate::raster::{BinaryMask, GrayImage};
use crate::{Error, Result};

/// Symmetric 1D Gaussian kernel truncated at radius `ceil(3 sigma)`.
fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as i64;
    let mut k: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = k.iter().sum();
    for v in &mut k {
        *v /= sum;
    }
    k
}

fn clamp_coord(v: i64, max: u32) -> u32 {
    v.clamp(0, max as i64 - 1) as u32
}

/// Separable Gaussian blur with replicated borders.
fn gaussian_blur(img: &GrayImage, sigma: f64) -> Vec<f64> {
    let w = img.width();
    let h = img.height();
    let kernel = gaussian_kernel(sigma);
    let radius = (kernel.len() / 2) as i64;

    let mut horiz = vec![0.0f64; (w as usize) * (h as usize)];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (i, &kv) in kernel.iter().enumerate() {
                let sx = clamp_coord(x as i64 + i as i64 - radius, w);
                acc += kv * img.value(sx, y) as f64;
            }
            horiz[(y as usize) * (w as usize) + x as usize] = acc;
        }
    }
    let mut out = vec![0.0f64; (w as usize) * (h as usize)];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (i, &kv) in kernel.iter().enumerate() {
                let sy = clamp_coord(y as i64 + i as i64 - radius, h);
                acc += kv * horiz[(sy as usize) * (w as usize) + x as usize];
            }
            out[(y as usize) * (w as usize) + x as usize] = acc;
        }
    }
    out
}

/// Sobel gradients of a smoothed image, replicated borders.
fn sobel(smoothed: &[f64], w: u32, h: u32) -> (Vec<f64>, Vec<f64>) {
    let at = |x: i64, y: i64| -> f64 {
        let cx = clamp_coord(x, w) as usize;
        let cy = clamp_coord(y, h) as usize;
        smoothed[cy * w as usize + cx]
    };
    let mut gx = vec![0.0f64; (w as usize) * (h as usize)];
    let mut gy = vec![0.0f64; (w as usize) * (h as usize)];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let idx = (y as usize) * (w as usize) + x as usize;
            gx[idx] = (at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1));
            gy[idx] = (at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1));
        }
    }
    (gx, gy)
}

/// Standard Canny edge detector.
///
/// Non-maximum suppression quantizes the gradient direction into four bins
/// and keeps a pixel iff its magnitude is `>=` the neighbor on the negative
/// side and `>` the neighbor on the positive side, so plateau ties resolve
/// to a single 1-px chain. Hysteresis grows 8-connected from pixels at or
/// above `high` through pixels at or above `low`. Border pixels are never
/// edges.
pub fn canny(img: &GrayImage, sigma: f64, low: f64, high: f64) -> Result<BinaryMask> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParam(format!("sigma must be positive, got {sigma}")));
    }
    if !(low >= 0.0 && low < high) {
        return Err(Error::InvalidParam(format!(
            "thresholds must satisfy 0 <= low < high, got ({low}, {high})"
        )));
    }
    let w = img.width();
    let h = img.height();
    let mut out = BinaryMask::empty(w, h);
    if w < 3 || h < 3 {
        return Ok(out);
    }

    let smoothed = gaussian_blur(img, sigma);
    let (gx, gy) = sobel(&smoothed, w, h);
    let mag: Vec<f64> = gx
        .iter()
        .zip(gy.iter())
        .map(|(&a, &b)| a.hypot(b))
        .collect();

    // non-maximum suppression on interior pixels
    let idx = |x: u32, y: u32| (y as usize) * (w as usize) + x as usize;
    let mut thin = vec![0.0f64; mag.len()];
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let i = idx(x, y);
            let m = mag[i];
            if m == 0.0 {
                continue;
            }
            let mut angle = gy[i].atan2(gx[i]).to_degrees();
            if angle < 0.0 {
                angle += 180.0;
            }
            let (n1, n2) = if !(22.5..157.5).contains(&angle) {
                (idx(x - 1, y), idx(x + 1, y))
            } else if angle < 67.5 {
                (idx(x - 1, y - 1), idx(x + 1, y + 1))
            } else if angle < 112.5 {
                (idx(x, y - 1), idx(x, y + 1))
            } else {
                (idx(x + 1, y - 1), idx(x - 1, y + 1))
            };
            if m >= mag[n1] && m > mag[n2] {
                thin[i] = m;
            }
        }
    }

    // hysteresis: seed from strong pixels, grow through weak ones
    let mut stack = Vec::new();
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            if thin[idx(x, y)] >= high && !out.get(x, y) {
                out.set(x, y, true);
                stack.push((x, y));
                while let Some((cx, cy)) = stack.pop() {
                    for dy in -1i64..=1 {
                        for dx in -1i64..=1 {
                            if dx == 0 && dy == 0 {
                                continue;
                            }
                            let nx = cx as i64 + dx;
                            let ny = cy as i64 + dy;
                            if nx < 1 || ny < 1 || nx >= w as i64 - 1 || ny >= h as i64 - 1 {
                                continue;
                            }
                            let (nx, ny) = (nx as u32, ny as u32);
                            if !out.get(nx, ny) && thin[idx(nx, ny)] >= low {
                                out.set(nx, ny, true);
                                stack.push((nx, ny));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
