use std::fmt;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use super::matrix::{self, Mat3};
use super::{xyz_to_lab, Illuminant, LabColor, XyzColor};

/// An 8-bit sRGB (IEC 61966-2-1) color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SrgbColor {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl SrgbColor {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        SrgbColor { r, g, b }
    }

    /// Channels divided by 255.
    pub fn normalized(self) -> [f64; 3] {
        [self.r as f64 / 255.0, self.g as f64 / 255.0, self.b as f64 / 255.0]
    }

    pub fn to_array(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }
}

impl From<[u8; 3]> for SrgbColor {
    fn from([r, g, b]: [u8; 3]) -> Self {
        SrgbColor { r, g, b }
    }
}

impl fmt::Display for SrgbColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.r, self.g, self.b)
    }
}

/// Linear-light RGB with sRGB primaries; in-gamut channels lie in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LinearRgb {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl LinearRgb {
    pub const fn new(r: f64, g: f64, b: f64) -> Self {
        LinearRgb { r, g, b }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.r, self.g, self.b]
    }

    pub fn in_gamut(self) -> bool {
        self.to_array()
            .iter()
            .all(|&c| (-GAMUT_TOLERANCE..=1.0 + GAMUT_TOLERANCE).contains(&c))
    }
}

/// An 8-bit color produced from an unbounded one, flagged when any channel
/// had to be clamped into [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GamutMapped {
    pub color: SrgbColor,
    pub clipped: bool,
}

// Slack for rounding noise in the linear domain; a genuinely out-of-gamut
// color overshoots by orders of magnitude more.
const GAMUT_TOLERANCE: f64 = 1e-7;

const PRIMARIES: [(f64, f64); 3] = [(0.64, 0.33), (0.30, 0.60), (0.15, 0.06)];

/// Linear sRGB to XYZ (D65), derived from the primaries and white point so
/// that RGB (1, 1, 1) maps exactly onto the D65 white used by CIELab.
static RGB_TO_XYZ: LazyLock<Mat3> = LazyLock::new(|| {
    let mut prim: Mat3 = [[0.0; 3]; 3];
    for (j, &(x, y)) in PRIMARIES.iter().enumerate() {
        prim[0][j] = x / y;
        prim[1][j] = 1.0;
        prim[2][j] = (1.0 - x - y) / y;
    }
    let s = matrix::mul_vec(&matrix::inverse(&prim), Illuminant::D65.white_point());
    matrix::mul(&prim, &matrix::diag(s))
});

static XYZ_TO_RGB: LazyLock<Mat3> = LazyLock::new(|| matrix::inverse(&RGB_TO_XYZ));

fn decode(c: f64) -> f64 {
    if c <= 0.04045 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

fn encode(c: f64) -> f64 {
    if c <= 0.0031308 {
        12.92 * c
    } else {
        1.055 * c.powf(1.0 / 2.4) - 0.055
    }
}

/// Applies the sRGB decoding curve per channel.
pub fn srgb_to_linear(c: SrgbColor) -> LinearRgb {
    let [r, g, b] = c.normalized().map(decode);
    LinearRgb { r, g, b }
}

/// Maps linear sRGB to XYZ relative to `illuminant`.
///
/// The sRGB encoding is D65-referenced; other whites are reached through
/// Bradford adaptation.
pub fn linear_to_xyz(rgb: LinearRgb, illuminant: Illuminant) -> XyzColor {
    let [x, y, z] = matrix::mul_vec(&RGB_TO_XYZ, rgb.to_array());
    XyzColor::new(x, y, z, Illuminant::D65).adapt_to(illuminant)
}

/// Maps XYZ (any white) to unbounded linear sRGB.
pub fn xyz_to_linear(xyz: XyzColor) -> LinearRgb {
    let d65 = xyz.adapt_to(Illuminant::D65);
    let [r, g, b] = matrix::mul_vec(&XYZ_TO_RGB, d65.to_array());
    LinearRgb { r, g, b }
}

/// Encodes and quantizes linear RGB, clamping out-of-gamut channels.
pub fn linear_to_srgb(rgb: LinearRgb) -> GamutMapped {
    let clipped = !rgb.in_gamut();
    let [r, g, b] = rgb
        .to_array()
        .map(|c| (encode(c.clamp(0.0, 1.0)) * 255.0).round().clamp(0.0, 255.0) as u8);
    GamutMapped {
        color: SrgbColor { r, g, b },
        clipped,
    }
}

/// sRGB to CIELab relative to `illuminant`.
pub fn srgb_to_lab(c: SrgbColor, illuminant: Illuminant) -> LabColor {
    let xyz = linear_to_xyz(srgb_to_linear(c), illuminant);
    // In-gamut sRGB never yields negative tristimulus values.
    xyz_to_lab(xyz, illuminant).expect("sRGB maps to non-negative XYZ")
}

/// CIELab to 8-bit sRGB, clamping and flagging out-of-gamut colors.
pub fn lab_to_srgb(lab: LabColor) -> GamutMapped {
    linear_to_srgb(xyz_to_linear(super::lab_to_xyz(lab)))
}
