//! Extraction of piano-player finger geometry and pressed-key detection
//! from video frames.
//!
//! Two pipelines share the binary-image primitives in this crate:
//!
//! * hand analysis: color band-pass segmentation, palm localization via the
//!   distance transform, palm removal, per-finger normalization, and joint
//!   localization from fitted edge lines;
//! * key detection: reference-frame differencing over a cropped keyboard
//!   band, matching diff-component top coordinates against a key-range
//!   table, plus range calibration and note transcription on top.
//!
//! A deterministic synthetic renderer ([`synth`]) provides ground truth for
//! every pipeline.

pub mod calib;
pub mod components;
pub mod distance;
pub mod edges;
mod error;
pub mod hand;
pub mod hull;
pub mod io;
pub mod keypress;
pub mod maskops;
pub mod raster;
pub mod synth;
pub mod transcribe;

pub use components::{connected_components, remove_small, Component, Connectivity};
pub use distance::{distance_transform, DistanceMap};
pub use edges::canny;
pub use error::{Error, Result};
pub use hull::{convex_hull, Polygon};
pub use maskops::{stamp_disk, stamp_rect, subtract};
pub use raster::{dehaze, rgb_bandpass, rotate_mask, to_gray, BinaryMask, ColorBandFilter, Frame, GrayImage, Rect};
