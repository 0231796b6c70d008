//! Raster types shared by both pipelines: timestamped RGB frames, 8-bit
//! grayscale images, binary masks, and the geometric transforms applied to
//! them (percentile stretch, color band-pass, crop, rotation).

use crate::{Error, Result};

/// Axis-aligned pixel rectangle, `x`/`y` top-left corner, `w`/`h` extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rect {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl Rect {
    pub fn new(x: u32, y: u32, w: u32, h: u32) -> Self {
        Rect { x, y, w, h }
    }

    fn check_inside(&self, img_w: u32, img_h: u32) -> Result<()> {
        if self.w == 0
            || self.h == 0
            || self.x.checked_add(self.w).map_or(true, |r| r > img_w)
            || self.y.checked_add(self.h).map_or(true, |b| b > img_h)
        {
            return Err(Error::RectOutOfBounds {
                x: self.x,
                y: self.y,
                w: self.w,
                h: self.h,
                img_w,
                img_h,
            });
        }
        Ok(())
    }
}

/// Timestamped RGB raster, 8 bits per channel, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    width: u32,
    height: u32,
    pixels: Vec<[u8; 3]>,
    timestamp: f64,
}

impl Frame {
    pub fn new(width: u32, height: u32, pixels: Vec<[u8; 3]>, timestamp: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParam(format!(
                "frame dimensions must be positive, got {width}x{height}"
            )));
        }
        if pixels.len() != (width as usize) * (height as usize) {
            return Err(Error::InvalidParam(format!(
                "pixel count {} does not match {width}x{height}",
                pixels.len()
            )));
        }
        if !timestamp.is_finite() || timestamp < 0.0 {
            return Err(Error::InvalidParam(format!("bad timestamp {timestamp}")));
        }
        Ok(Frame {
            width,
            height,
            pixels,
            timestamp,
        })
    }

    /// Solid-color frame, mostly used by tests and the synthetic renderer.
    pub fn filled(width: u32, height: u32, color: [u8; 3], timestamp: f64) -> Result<Self> {
        Frame::new(
            width,
            height,
            vec![color; (width as usize) * (height as usize)],
            timestamp,
        )
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn timestamp(&self) -> f64 {
        self.timestamp
    }

    pub fn with_timestamp(mut self, timestamp: f64) -> Self {
        self.timestamp = timestamp;
        self
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        self.pixels[(y as usize) * (self.width as usize) + x as usize]
    }

    pub fn set_pixel(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        self.pixels[(y as usize) * (self.width as usize) + x as usize] = rgb;
    }

    pub fn crop(&self, rect: Rect) -> Result<Frame> {
        rect.check_inside(self.width, self.height)?;
        let mut pixels = Vec::with_capacity((rect.w as usize) * (rect.h as usize));
        for j in 0..rect.h {
            for i in 0..rect.w {
                pixels.push(self.pixel(rect.x + i, rect.y + j));
            }
        }
        Frame::new(rect.w, rect.h, pixels, self.timestamp)
    }
}

/// Row-major 8-bit intensity image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    values: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: u32, height: u32, values: Vec<u8>) -> Result<Self> {
        if values.len() != (width as usize) * (height as usize) {
            return Err(Error::InvalidParam(format!(
                "value count {} does not match {width}x{height}",
                values.len()
            )));
        }
        Ok(GrayImage {
            width,
            height,
            values,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn value(&self, x: u32, y: u32) -> u8 {
        self.values[(y as usize) * (self.width as usize) + x as usize]
    }

    pub fn crop(&self, rect: Rect) -> Result<GrayImage> {
        rect.check_inside(self.width, self.height)?;
        let mut values = Vec::with_capacity((rect.w as usize) * (rect.h as usize));
        for j in 0..rect.h {
            for i in 0..rect.w {
                values.push(self.value(rect.x + i, rect.y + j));
            }
        }
        GrayImage::new(rect.w, rect.h, values)
    }
}

/// Row-major boolean raster; `true` is foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: u32, height: u32, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != (width as usize) * (height as usize) {
            return Err(Error::InvalidParam(format!(
                "bit count {} does not match {width}x{height}",
                bits.len()
            )));
        }
        Ok(BinaryMask {
            width,
            height,
            bits,
        })
    }

    pub fn empty(width: u32, height: u32) -> Self {
        BinaryMask {
            width,
            height,
            bits: vec![false; (width as usize) * (height as usize)],
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, x: u32, y: u32) -> bool {
        self.bits[(y as usize) * (self.width as usize) + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, v: bool) {
        self.bits[(y as usize) * (self.width as usize) + x as usize] = v;
    }

    pub fn count_foreground(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Foreground coordinates in row-major order.
    pub fn foreground(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for y in 0..self.height {
            for x in 0..self.width {
                if self.get(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn crop(&self, rect: Rect) -> Result<BinaryMask> {
        rect.check_inside(self.width, self.height)?;
        let mut bits = Vec::with_capacity((rect.w as usize) * (rect.h as usize));
        for j in 0..rect.h {
            for i in 0..rect.w {
                bits.push(self.get(rect.x + i, rect.y + j));
            }
        }
        BinaryMask::new(rect.w, rect.h, bits)
    }

    /// Copies this mask into a larger canvas at the given offset.
    pub fn embed(&self, canvas_w: u32, canvas_h: u32, off_x: u32, off_y: u32) -> Result<BinaryMask> {
        Rect::new(off_x, off_y, self.width, self.height).check_inside(canvas_w, canvas_h)?;
        let mut out = BinaryMask::empty(canvas_w, canvas_h);
        for y in 0..self.height {
            for x in 0..self.width {
                if self.get(x, y) {
                    out.set(off_x + x, off_y + y, true);
                }
            }
        }
        Ok(out)
    }

    /// Tight crop around the foreground. Returns the cropped mask and the
    /// offset of the crop in this mask, or `None` when empty.
    pub fn crop_tight(&self) -> Option<(BinaryMask, (u32, u32))> {
        let mut min_x = u32::MAX;
        let mut min_y = u32::MAX;
        let mut max_x = 0u32;
        let mut max_y = 0u32;
        let mut any = false;
        for y in 0..self.height {
            for x in 0..self.width {
                if self.get(x, y) {
                    any = true;
                    min_x = min_x.min(x);
                    min_y = min_y.min(y);
                    max_x = max_x.max(x);
                    max_y = max_y.max(y);
                }
            }
        }
        if !any {
            return None;
        }
        let rect = Rect::new(min_x, min_y, max_x - min_x + 1, max_y - min_y + 1);
        Some((self.crop(rect).expect("tight rect in bounds"), (min_x, min_y)))
    }

    /// 0/255 grayscale view of the mask.
    pub fn to_gray(&self) -> GrayImage {
        let values = self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect();
        GrayImage::new(self.width, self.height, values).expect("same dimensions")
    }
}

/// Per-channel intensity window with strict bounds: a pixel passes only when
/// every channel satisfies `lower < value < upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorBandFilter {
    pub r: (u8, u8),
    pub g: (u8, u8),
    pub b: (u8, u8),
}

impl ColorBandFilter {
    pub fn new(r: (u8, u8), g: (u8, u8), b: (u8, u8)) -> Result<Self> {
        for (name, (lo, hi)) in [("r", r), ("g", g), ("b", b)] {
            if lo >= hi {
                return Err(Error::InvalidParam(format!(
                    "band {name}: lower {lo} must be < upper {hi}"
                )));
            }
        }
        Ok(ColorBandFilter { r, g, b })
    }

    pub fn passes(&self, rgb: [u8; 3]) -> bool {
        let inside = |v: u8, (lo, hi): (u8, u8)| v > lo && v < hi;
        inside(rgb[0], self.r) && inside(rgb[1], self.g) && inside(rgb[2], self.b)
    }
}

/// Nearest-rank percentile of an 8-bit histogram: the value at sorted index
/// `round(p/100 * (n-1))`.
fn percentile_value(hist: &[usize; 256], n: usize, p: f64) -> u8 {
    debug_assert!(n > 0);
    let rank = (p / 100.0 * (n as f64 - 1.0)).round() as usize;
    let mut cum = 0usize;
    for (v, &c) in hist.iter().enumerate() {
        cum += c;
        if cum > rank {
            return v as u8;
        }
    }
    255
}

/// Per-channel linear stretch mapping the `clip_lo` percentile to 0 and the
/// `clip_hi` percentile to 255, clamped. A channel whose two percentiles
/// coincide is left unchanged. The timestamp is preserved.
pub fn dehaze(frame: &Frame, clip_lo: f64, clip_hi: f64) -> Result<Frame> {
    if !(0.0..=100.0).contains(&clip_lo) || !(0.0..=100.0).contains(&clip_hi) || clip_lo >= clip_hi
    {
        return Err(Error::InvalidParam(format!(
            "percentiles must satisfy 0 <= lo < hi <= 100, got ({clip_lo}, {clip_hi})"
        )));
    }
    let n = frame.pixels.len();
    let mut hists = [[0usize; 256]; 3];
    for px in &frame.pixels {
        for c in 0..3 {
            hists[c][px[c] as usize] += 1;
        }
    }
    let mut maps: [Option<(f64, f64)>; 3] = [None; 3];
    for c in 0..3 {
        let lo = percentile_value(&hists[c], n, clip_lo) as f64;
        let hi = percentile_value(&hists[c], n, clip_hi) as f64;
        if hi > lo {
            maps[c] = Some((lo, hi));
        }
    }
    let pixels = frame
        .pixels
        .iter()
        .map(|px| {
            let mut out = *px;
            for c in 0..3 {
                if let Some((lo, hi)) = maps[c] {
                    let stretched = ((px[c] as f64 - lo) * 255.0 / (hi - lo)).round();
                    out[c] = stretched.clamp(0.0, 255.0) as u8;
                }
            }
            out
        })
        .collect();
    Frame::new(frame.width, frame.height, pixels, frame.timestamp)
}

/// Binary mask of the pixels falling strictly inside all three bands.
pub fn rgb_bandpass(frame: &Frame, filter: &ColorBandFilter) -> BinaryMask {
    let bits = frame.pixels.iter().map(|&px| filter.passes(px)).collect();
    BinaryMask::new(frame.width, frame.height, bits).expect("same dimensions")
}

/// Rec.601 luma conversion: `round(0.299 R + 0.587 G + 0.114 B)`.
pub fn to_gray(frame: &Frame) -> GrayImage {
    let values = frame
        .pixels
        .iter()
        .map(|&[r, g, b]| {
            (0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64).round() as u8
        })
        .collect();
    GrayImage::new(frame.width, frame.height, values).expect("same dimensions")
}

/// Maps `point` through the inverse of a rotation by `angle_deg` about
/// `center`. Forward rotation sends a source pixel s to
/// `R(angle) (s - center) + center` with `R = [[cos, -sin], [sin, cos]]`.
pub(crate) fn inverse_rotate(point: (f64, f64), center: (f64, f64), angle_deg: f64) -> (f64, f64) {
    let rad = angle_deg.to_radians();
    let (sin, cos) = rad.sin_cos();
    let dx = point.0 - center.0;
    let dy = point.1 - center.1;
    (
        cos * dx + sin * dy + center.0,
        -sin * dx + cos * dy + center.1,
    )
}

/// Inverse-mapped nearest-neighbor rotation about the mask center. The output
/// has the same dimensions; sources falling outside the mask are background.
pub fn rotate_mask(mask: &BinaryMask, angle_deg: f64) -> BinaryMask {
    let w = mask.width;
    let h = mask.height;
    let center = ((w as f64 - 1.0) / 2.0, (h as f64 - 1.0) / 2.0);
    let mut out = BinaryMask::empty(w, h);
    for y in 0..h {
        for x in 0..w {
            let (sx, sy) = inverse_rotate((x as f64, y as f64), center, angle_deg);
            let sx = sx.round();
            let sy = sy.round();
            if sx >= 0.0 && sy >= 0.0 && (sx as u32) < w && (sy as u32) < h {
                out.set(x, y, mask.get(sx as u32, sy as u32));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame_from_fn(w: u32, h: u32, f: impl Fn(u32, u32) -> [u8; 3]) -> Frame {
        let mut pixels = Vec::new();
        for y in 0..h {
            for x in 0..w {
                pixels.push(f(x, y));
            }
        }
        Frame::new(w, h, pixels, 0.0).unwrap()
    }

    #[test]
    fn frame_invariants_rejected() {
        assert!(Frame::new(2, 2, vec![[0; 3]; 3], 0.0).is_err());
        assert!(Frame::new(0, 2, vec![], 0.0).is_err());
        assert!(Frame::new(1, 1, vec![[0; 3]], -1.0).is_err());
        assert!(Frame::new(1, 1, vec![[0; 3]], f64::NAN).is_err());
    }

    #[test]
    fn band_filter_requires_lower_below_upper() {
        assert!(ColorBandFilter::new((90, 90), (40, 65), (10, 55)).is_err());
        assert!(ColorBandFilter::new((90, 180), (40, 65), (10, 55)).is_ok());
    }

    #[test]
    fn bandpass_code1_membership() {
        let filt = ColorBandFilter::new((90, 180), (40, 65), (10, 55)).unwrap();
        assert!(filt.passes([100, 50, 30]));
        // strict comparison on the lower red bound
        assert!(!filt.passes([90, 50, 30]));
        assert!(!filt.passes([0, 0, 0]));
    }

    #[test]
    fn bandpass_masks_per_pixel() {
        let filt = ColorBandFilter::new((90, 180), (40, 65), (10, 55)).unwrap();
        let f = frame_from_fn(3, 1, |x, _| match x {
            0 => [100, 50, 30],
            1 => [90, 50, 30],
            _ => [0, 0, 0],
        });
        let m = rgb_bandpass(&f, &filt);
        assert_eq!(m.bits(), &[true, false, false]);
    }

    #[test]
    fn dehaze_identity_when_full_range() {
        let f = frame_from_fn(16, 16, |x, y| {
            let v = ((x + 16 * y) % 256) as u8;
            [v, v, v]
        });
        let out = dehaze(&f, 0.0, 100.0).unwrap();
        assert_eq!(out, f);
    }

    #[test]
    fn dehaze_constant_frame_unchanged() {
        let f = Frame::filled(8, 8, [77, 77, 77], 1.5).unwrap();
        let out = dehaze(&f, 0.0, 100.0).unwrap();
        assert_eq!(out, f);
        assert_eq!(out.timestamp(), 1.5);
    }

    #[test]
    fn dehaze_stretches_midrange_per_formula() {
        // Values span 50..=150; clip (0,100) must map 50 -> 0 and 150 -> 255,
        // every other pixel following the same affine map.
        let f = frame_from_fn(101, 1, |x, _| {
            let v = (50 + x) as u8;
            [v, v, v]
        });
        let out = dehaze(&f, 0.0, 100.0).unwrap();
        for x in 0..101 {
            let v = (50 + x) as f64;
            let expect = ((v - 50.0) * 255.0 / 100.0).round().clamp(0.0, 255.0) as u8;
            assert_eq!(out.pixel(x, 0), [expect; 3], "pixel {x}");
        }
        assert_eq!(out.pixel(0, 0), [0; 3]);
        assert_eq!(out.pixel(100, 0), [255; 3]);
    }

    #[test]
    fn dehaze_idempotent_after_full_stretch() {
        let f = frame_from_fn(32, 32, |x, y| [(x * 7 % 200) as u8 + 20, (y * 5 % 180) as u8, 200]);
        let once = dehaze(&f, 0.0, 100.0).unwrap();
        let twice = dehaze(&once, 0.0, 100.0).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn to_gray_formula() {
        let f = frame_from_fn(2, 1, |x, _| if x == 0 { [255, 255, 255] } else { [0, 0, 0] });
        let g = to_gray(&f);
        assert_eq!(g.values(), &[255, 0]);

        let f = frame_from_fn(16, 16, |x, y| {
            [(x * 13 % 256) as u8, (y * 17 % 256) as u8, ((x + y) * 7 % 256) as u8]
        });
        let g = to_gray(&f);
        for y in 0..16 {
            for x in 0..16 {
                let [r, gg, b] = f.pixel(x, y);
                let expect =
                    (0.299 * r as f64 + 0.587 * gg as f64 + 0.114 * b as f64).round() as u8;
                assert_eq!(g.value(x, y), expect);
            }
        }
    }

    #[test]
    fn crop_full_is_identity_and_single_pixel_matches() {
        let f = frame_from_fn(8, 6, |x, y| [(x * 30) as u8, (y * 40) as u8, 9]);
        let full = f.crop(Rect::new(0, 0, 8, 6)).unwrap();
        assert_eq!(full, f);
        let one = f.crop(Rect::new(3, 4, 1, 1)).unwrap();
        assert_eq!(one.pixel(0, 0), f.pixel(3, 4));
    }

    #[test]
    fn crop_rejects_out_of_bounds() {
        let f = Frame::filled(4, 4, [0; 3], 0.0).unwrap();
        assert!(f.crop(Rect::new(2, 2, 3, 1)).is_err());
        assert!(f.crop(Rect::new(0, 0, 0, 1)).is_err());
    }

    #[test]
    fn crop_copies_pixels_from_source() {
        let f = frame_from_fn(10, 10, |x, y| [(x * 11) as u8, (y * 7) as u8, (x + y) as u8]);
        let rect = Rect::new(2, 3, 5, 4);
        let c = f.crop(rect).unwrap();
        for j in 0..rect.h {
            for i in 0..rect.w {
                assert_eq!(c.pixel(i, j), f.pixel(rect.x + i, rect.y + j));
            }
        }
    }

    #[test]
    fn rotate_zero_is_identity() {
        let mut m = BinaryMask::empty(9, 7);
        m.set(2, 3, true);
        m.set(8, 0, true);
        assert_eq!(rotate_mask(&m, 0.0), m);
    }

    #[test]
    fn rotate_square_by_90_permutes_exactly() {
        let n = 11u32;
        let mut m = BinaryMask::empty(n, n);
        for (x, y) in [(1, 2), (5, 5), (9, 3), (0, 10)] {
            m.set(x, y, true);
        }
        let r = rotate_mask(&m, 90.0);
        // Forward 90-degree rotation about the center sends (x, y) to
        // (cx - (y - cy), cy + (x - cx)) = (n-1-y, x).
        let mut expect = BinaryMask::empty(n, n);
        for (x, y) in m.foreground() {
            expect.set(n - 1 - y, x, true);
        }
        assert_eq!(r, expect);
    }

    #[test]
    fn rotate_32_preserves_rect_area_within_2_percent() {
        let mut m = BinaryMask::empty(64, 64);
        for y in 20..44 {
            for x in 16..48 {
                m.set(x, y, true);
            }
        }
        let area = m.count_foreground() as f64;
        let r = rotate_mask(&m, 32.0);
        let rarea = r.count_foreground() as f64;
        assert!(
            (rarea - area).abs() / area < 0.02,
            "area {area} vs rotated {rarea}"
        );
    }

    #[test]
    fn rotate_matches_inverse_map_oracle() {
        let mut m = BinaryMask::empty(33, 21);
        for y in 5..16 {
            for x in 8..27 {
                m.set(x, y, true);
            }
        }
        let angle = 32.0;
        let r = rotate_mask(&m, angle);
        let center = (16.0, 10.0);
        for y in 0..21u32 {
            for x in 0..33u32 {
                let (sx, sy) = inverse_rotate((x as f64, y as f64), center, angle);
                let (sx, sy) = (sx.round(), sy.round());
                let expect = sx >= 0.0
                    && sy >= 0.0
                    && (sx as u32) < 33
                    && (sy as u32) < 21
                    && m.get(sx as u32, sy as u32);
                assert_eq!(r.get(x, y), expect, "pixel ({x},{y})");
            }
        }
    }

    #[test]
    fn rotate_round_trip_recovers_convex_mask() {
        // Disk of diameter 20; nearest-neighbor loss bound from the module
        // contract: at least 95% of foreground recovered after +32/-32.
        let mut m = BinaryMask::empty(48, 48);
        for y in 0..48i32 {
            for x in 0..48i32 {
                if (x - 24) * (x - 24) + (y - 24) * (y - 24) <= 100 {
                    m.set(x as u32, y as u32, true);
                }
            }
        }
        let back = rotate_mask(&rotate_mask(&m, 32.0), -32.0);
        let kept = m
            .foreground()
            .iter()
            .filter(|&&(x, y)| back.get(x, y))
            .count();
        assert!(kept as f64 >= 0.95 * m.count_foreground() as f64);
    }
}
