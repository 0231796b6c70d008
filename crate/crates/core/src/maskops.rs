//! Mask algebra: set difference and disk/rectangle stamps.

use crate::raster::{inverse_rotate, BinaryMask};
use crate::{Error, Result};

/// `a AND NOT b`. Errors on dimension mismatch.
pub fn subtract(a: &BinaryMask, b: &BinaryMask) -> Result<BinaryMask> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ));
    }
    let bits = a
        .bits()
        .iter()
        .zip(b.bits().iter())
        .map(|(&x, &y)| x && !y)
        .collect();
    BinaryMask::new(a.width(), a.height(), bits)
}

/// Filled disk: bit set iff the squared distance from the pixel to `center`
/// is at most `radius^2`. Sub-pixel centers and radii are allowed.
pub fn stamp_disk(w: u32, h: u32, center: (f64, f64), radius: f64) -> BinaryMask {
    let mut out = BinaryMask::empty(w, h);
    if radius < 0.0 {
        return out;
    }
    let r2 = radius * radius;
    for y in 0..h {
        for x in 0..w {
            let dx = x as f64 - center.0;
            let dy = y as f64 - center.1;
            if dx * dx + dy * dy <= r2 {
                out.set(x, y, true);
            }
        }
    }
    out
}

/// Axis-aligned `rw x rh` rectangle about `center`, rotated by `angle_deg`
/// with the same inverse-mapped nearest-neighbor semantics as
/// [`crate::raster::rotate_mask`]. At angle 0 the stamp covers exactly
/// `rw * rh` pixels when fully inside the canvas (half-open extent on both
/// axes).
pub fn stamp_rect(
    w: u32,
    h: u32,
    center: (f64, f64),
    rw: f64,
    rh: f64,
    angle_deg: f64,
) -> Result<BinaryMask> {
    if !(rw > 0.0) || !(rh > 0.0) {
        return Err(Error::InvalidParam(format!(
            "rectangle size must be positive, got {rw}x{rh}"
        )));
    }
    let mut out = BinaryMask::empty(w, h);
    let x_lo = center.0 - rw / 2.0;
    let x_hi = center.0 + rw / 2.0;
    let y_lo = center.1 - rh / 2.0;
    let y_hi = center.1 + rh / 2.0;
    for y in 0..h {
        for x in 0..w {
            let (sx, sy) = inverse_rotate((x as f64, y as f64), center, angle_deg);
            let (sx, sy) = (sx.round(), sy.round());
            if sx >= x_lo && sx < x_hi && sy >= y_lo && sy < y_hi {
                out.set(x, y, true);
            }
        }
    }
    Ok(out)
}
