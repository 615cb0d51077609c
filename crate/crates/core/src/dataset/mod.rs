//! Capture sets: per-chip observations from one device and session.

mod capture;
mod patch;
mod synth;

pub use capture::{
    load_capture_set, load_capture_set_with, CaptureMeta, CaptureSet, Observation, ObservedColor, MANIFEST_HEADER,
};
pub use patch::{extract_patch_color, load_image_patch, ImagePatch, PatchStatistic, Region};
pub use synth::synthesize_capture_set;
