//! Frame ingestion: binary PPM (P6) decoding and encoding, optional PNG
//! decoding, and manifest-driven sequence loading.
//!
//! A manifest is UTF-8 text with one image path per line; blank lines and
//! `#` comments are skipped. Relative paths resolve against the manifest's
//! directory. Frame `i` of a sequence gets timestamp `i / fps`.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::raster::Frame;
use crate::{Error, Result};

/// Loads the frames listed in a manifest, in playback order.
pub fn load_frames(manifest: &Path, fps: f64) -> Result<Vec<Frame>> {
    if !(fps > 0.0) {
        return Err(Error::InvalidParam(format!("fps must be positive, got {fps}")));
    }
    let text = fs::read_to_string(manifest).map_err(|source| Error::FileRead {
        path: manifest.to_path_buf(),
        source,
    })?;
    let base = manifest.parent().unwrap_or_else(|| Path::new("."));
    let mut frames = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let path = resolve(base, line);
        let frame = load_frame(&path)?;
        let i = frames.len() as f64;
        frames.push(frame.with_timestamp(i / fps));
    }
    if frames.is_empty() {
        return Err(Error::EmptyManifest);
    }
    Ok(frames)
}

fn resolve(base: &Path, entry: &str) -> PathBuf {
    let p = Path::new(entry);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Decodes a single image file by extension. Timestamp is 0.
pub fn load_frame(path: &Path) -> Result<Frame> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase());
    match ext.as_deref() {
        Some("ppm") => read_ppm(path),
        #[cfg(feature = "png")]
        Some("png") => read_png(path),
        _ => Err(Error::UnsupportedFormat {
            path: path.to_path_buf(),
        }),
    }
}

/// Reads a binary PPM (P6) file with maxval 255. Header whitespace and `#`
/// comments are handled per the format definition.
pub fn read_ppm(path: &Path) -> Result<Frame> {
    let bytes = fs::read(path).map_err(|source| Error::FileRead {
        path: path.to_path_buf(),
        source,
    })?;
    decode_ppm(&bytes).map_err(|reason| Error::Decode {
        path: path.to_path_buf(),
        reason,
    })
}

fn decode_ppm(bytes: &[u8]) -> std::result::Result<Frame, String> {
    fn skip_ws(bytes: &[u8], pos: &mut usize) {
        loop {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if *pos < bytes.len() && bytes[*pos] == b'#' {
                while *pos < bytes.len() && bytes[*pos] != b'\n' {
                    *pos += 1;
                }
            } else {
                return;
            }
        }
    }

    fn token(bytes: &[u8], pos: &mut usize) -> std::result::Result<u32, String> {
        skip_ws(bytes, pos);
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err("truncated header".into());
        }
        std::str::from_utf8(&bytes[start..*pos])
            .map_err(|e| e.to_string())?
            .parse::<u32>()
            .map_err(|e| e.to_string())
    }

    if bytes.len() < 2 || &bytes[0..2] != b"P6" {
        return Err("not a P6 ppm".into());
    }
    let mut pos = 2usize;
    let width = token(bytes, &mut pos)?;
    let height = token(bytes, &mut pos)?;
    let maxval = token(bytes, &mut pos)?;
    if maxval != 255 {
        return Err(format!("unsupported maxval {maxval}"));
    }
    // single whitespace byte after maxval
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err("missing raster separator".into());
    }
    pos += 1;
    let n = (width as usize)
        .checked_mul(height as usize)
        .and_then(|n| n.checked_mul(3))
        .ok_or("dimensions overflow")?;
    let data = bytes.get(pos..pos + n).ok_or("truncated raster data")?;
    let pixels = data
        .chunks_exact(3)
        .map(|c| [c[0], c[1], c[2]])
        .collect::<Vec<_>>();
    Frame::new(width, height, pixels, 0.0).map_err(|e| e.to_string())
}

/// Writes a frame as binary PPM (P6), maxval 255.
pub fn write_ppm(path: &Path, frame: &Frame) -> Result<()> {
    let mut buf = Vec::with_capacity(frame.pixels().len() * 3 + 32);
    write!(buf, "P6\n{} {}\n255\n", frame.width(), frame.height()).expect("in-memory write");
    for px in frame.pixels() {
        buf.extend_from_slice(px);
    }
    fs::write(path, buf).map_err(|source| Error::FileRead {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(feature = "png")]
fn read_png(path: &Path) -> Result<Frame> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|source| Error::FileRead {
            path: path.to_path_buf(),
            source,
        })?;
    let img = image::load_from_memory_with_format(&bytes, image::ImageFormat::Png)
        .map_err(|e| Error::Decode {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?
        .into_rgb8();
    let pixels = img.pixels().map(|p| [p[0], p[1], p[2]]).collect();
    Frame::new(img.width(), img.height(), pixels, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn ppm_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.ppm");
        let mut pixels = Vec::new();
        for i in 0..12u32 {
            pixels.push([(i * 3) as u8, (i * 5) as u8, (i * 7) as u8]);
        }
        let frame = Frame::new(4, 3, pixels, 0.0).unwrap();
        write_ppm(&path, &frame).unwrap();
        let back = read_ppm(&path).unwrap();
        assert_eq!(back, frame);
    }

    #[test]
    fn ppm_header_comments_allowed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.ppm");
        let mut bytes = b"P6\n# a comment\n2 1\n# another\n255\n".to_vec();
        bytes.extend_from_slice(&[1, 2, 3, 4, 5, 6]);
        fs::write(&path, bytes).unwrap();
        let f = read_ppm(&path).unwrap();
        assert_eq!(f.pixel(0, 0), [1, 2, 3]);
        assert_eq!(f.pixel(1, 0), [4, 5, 6]);
    }

    #[test]
    fn load_frames_assigns_timestamps() {
        let dir = tempfile::tempdir().unwrap();
        for i in 0..3 {
            let f = Frame::filled(2, 2, [i as u8; 3], 0.0).unwrap();
            write_ppm(&dir.path().join(format!("f{i}.ppm")), &f).unwrap();
        }
        let manifest = dir.path().join("manifest.txt");
        fs::write(&manifest, "# frames\nf0.ppm\nf1.ppm\n\nf2.ppm\n").unwrap();
        let frames = load_frames(&manifest, 29.0).unwrap();
        assert_eq!(frames.len(), 3);
        for (i, f) in frames.iter().enumerate() {
            assert!((f.timestamp() - i as f64 / 29.0).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_manifest_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = dir.path().join("manifest.txt");
        fs::write(&manifest, "# only comments\n\n").unwrap();
        match load_frames(&manifest, 29.0) {
            Err(Error::EmptyManifest) => {}
            other => panic!("expected EmptyManifest, got {other:?}"),
        }
    }

    #[test]
    fn missing_file_error_names_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = dir.path().join("manifest.txt");
        fs::write(&manifest, "nope.ppm\n").unwrap();
        let err = load_frames(&manifest, 29.0).unwrap_err();
        assert!(err.to_string().contains("nope.ppm"), "{err}");
    }

    #[test]
    fn unsupported_extension_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = dir.path().join("manifest.txt");
        fs::write(dir.path().join("f.gif"), b"GIF89a").unwrap();
        fs::write(&manifest, "f.gif\n").unwrap();
        let err = load_frames(&manifest, 29.0).unwrap_err();
        assert!(err.to_string().contains("unsupported format"), "{err}");
    }

    #[cfg(feature = "png")]
    #[test]
    fn png_decoding_works() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.png");
        let img = image::RgbImage::from_fn(3, 2, |x, y| image::Rgb([x as u8, y as u8, 7]));
        img.save(&path).unwrap();
        let f = load_frame(&path).unwrap();
        assert_eq!(f.width(), 3);
        assert_eq!(f.pixel(2, 1), [2, 1, 7]);
    }
}
