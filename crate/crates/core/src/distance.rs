//! Exact Euclidean distance transform.
//!
//! Two-pass squared-distance method: a column-wise propagation of squared
//! vertical distances followed by a row-wise lower-envelope-of-parabolas
//! pass, which together yield exact squared Euclidean distances.

use std::fmt::Write as _;

use crate::raster::BinaryMask;

const INF: f64 = 1e20;

/// Per-pixel Euclidean distance to the nearest background pixel; zero on
/// background. When the source mask has no background at all, every value is
/// the documented sentinel `max(width, height)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMap {
    width: u32,
    height: u32,
    values: Vec<f64>,
}

impl DistanceMap {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, x: u32, y: u32) -> f64 {
        self.values[(y as usize) * (self.width as usize) + x as usize]
    }

    /// Row-major text grid, space-separated, 3 decimals. Debug interface.
    pub fn to_text_grid(&self) -> String {
        let mut out = String::new();
        for y in 0..self.height {
            for x in 0..self.width {
                if x > 0 {
                    out.push(' ');
                }
                write!(out, "{:.3}", self.value(x, y)).expect("in-memory write");
            }
            out.push('\n');
        }
        out
    }
}

/// 1D squared-distance transform of a sampled function, lower envelope of
/// parabolas (Felzenszwalb & Huttenlocher).
fn dt_1d(f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let mut v = vec![0usize; n]; // parabola apex positions
    let mut z = vec![0.0f64; n + 1]; // envelope breakpoints
    let mut k = 0usize;
    v[0] = 0;
    z[0] = -INF;
    z[1] = INF;
    for q in 1..n {
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q - p) as f64);
            if s <= z[k] {
                if k == 0 {
                    break;
                }
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = INF;
                break;
            }
        }
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let d = q as f64 - p as f64;
        out[q] = d * d + f[p];
    }
}

/// Exact Euclidean distance transform of the mask.
pub fn distance_transform(mask: &BinaryMask) -> DistanceMap {
    let w = mask.width() as usize;
    let h = mask.height() as usize;
    let mut grid = vec![0.0f64; w * h];
    for y in 0..h {
        for x in 0..w {
            grid[y * w + x] = if mask.get(x as u32, y as u32) { INF } else { 0.0 };
        }
    }

    // columns
    let mut col_in = vec![0.0f64; h];
    let mut col_out = vec![0.0f64; h];
    for x in 0..w {
        for y in 0..h {
            col_in[y] = grid[y * w + x];
        }
        dt_1d(&col_in, &mut col_out);
        for y in 0..h {
            grid[y * w + x] = col_out[y];
        }
    }

    // rows
    let mut row_out = vec![0.0f64; w];
    for y in 0..h {
        dt_1d(&grid[y * w..(y + 1) * w], &mut row_out);
        grid[y * w..(y + 1) * w].copy_from_slice(&row_out);
    }

    let sentinel = w.max(h) as f64;
    let values = grid
        .iter()
        .map(|&sq| {
            if sq >= INF {
                sentinel
            } else {
                sq.sqrt()
            }
        })
        .collect();
    DistanceMap {
        width: mask.width(),
        height: mask.height(),
        values,
    }
}
