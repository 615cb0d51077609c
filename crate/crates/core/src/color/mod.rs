//! Color types and conversions among sRGB, linear RGB, CIEXYZ, CIELab,
//! CIELCh and CMYK.
//!
//! All math is in `f64`; 8-bit quantization happens only when producing an
//! [`SrgbColor`]. Tristimulus values are relative, with Y = 1 for the
//! illuminant's reference white.

mod adapt;
mod cmyk;
mod illuminant;
mod lab;
pub(crate) mod matrix;
mod srgb;

pub use adapt::{adapt_white_point, adaptation_matrix};
pub use cmyk::{srgb_to_cmyk, CmykColor};
pub use illuminant::Illuminant;
pub(crate) use lab::hue_angle as hue_angle_deg;
pub use lab::{lab_to_lch, lab_to_xyz, lch_to_lab, xyz_to_lab, LabColor, LchColor};
pub use srgb::{
    lab_to_srgb, linear_to_srgb, linear_to_xyz, srgb_to_lab, srgb_to_linear, xyz_to_linear, GamutMapped,
    LinearRgb, SrgbColor,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CIE 1931 tristimulus values relative to a tagged reference white.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XyzColor {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub illuminant: Illuminant,
}

impl XyzColor {
    pub const fn new(x: f64, y: f64, z: f64, illuminant: Illuminant) -> Self {
        XyzColor { x, y, z, illuminant }
    }

    /// The reference white of `illuminant`.
    pub fn white(illuminant: Illuminant) -> Self {
        let [x, y, z] = illuminant.white_point();
        XyzColor::new(x, y, z, illuminant)
    }

    /// Builds tristimulus values from chromaticity `(x, y)` and luminance `Y`.
    pub fn from_xyy(x: f64, y: f64, luminance: f64, illuminant: Illuminant) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && luminance.is_finite()) || y <= 0.0 || luminance < 0.0 {
            return Err(Error::Domain(format!("invalid xyY ({x}, {y}, {luminance})")));
        }
        Ok(XyzColor::new(
            x * luminance / y,
            luminance,
            (1.0 - x - y) * luminance / y,
            illuminant,
        ))
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}
