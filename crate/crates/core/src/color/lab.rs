use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Illuminant, XyzColor};
use crate::error::{Error, Result};

/// CIE 1976 L*a*b* relative to a tagged reference white.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabColor {
    pub l: f64,
    pub a: f64,
    pub b: f64,
    pub illuminant: Illuminant,
}

impl LabColor {
    pub const fn new(l: f64, a: f64, b: f64, illuminant: Illuminant) -> Self {
        LabColor { l, a, b, illuminant }
    }

    /// Shorthand for a D65 color, the reference for all matching.
    pub const fn d65(l: f64, a: f64, b: f64) -> Self {
        LabColor::new(l, a, b, Illuminant::D65)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.l, self.a, self.b]
    }

    pub fn is_finite(self) -> bool {
        self.l.is_finite() && self.a.is_finite() && self.b.is_finite()
    }

    pub fn chroma(self) -> f64 {
        self.a.hypot(self.b)
    }
}

impl fmt::Display for LabColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lab({:.4}, {:.4}, {:.4})", self.l, self.a, self.b)
    }
}

/// Cylindrical form of CIELab: lightness, chroma and hue angle in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LchColor {
    pub l: f64,
    pub c: f64,
    /// Hue angle in [0, 360); 0 on the neutral axis.
    pub h: f64,
    pub illuminant: Illuminant,
}

const EPSILON: f64 = 216.0 / 24389.0;
const KAPPA: f64 = 24389.0 / 27.0;

fn f(t: f64) -> f64 {
    if t > EPSILON {
        t.cbrt()
    } else {
        (KAPPA * t + 16.0) / 116.0
    }
}

fn f_inv(ft: f64) -> f64 {
    let cube = ft * ft * ft;
    if cube > EPSILON {
        cube
    } else {
        (116.0 * ft - 16.0) / KAPPA
    }
}

/// Converts tristimulus values to CIELab under `illuminant`.
///
/// The XYZ tag must already equal `illuminant`; adapt first otherwise.
pub fn xyz_to_lab(xyz: XyzColor, illuminant: Illuminant) -> Result<LabColor> {
    if xyz.illuminant != illuminant {
        return Err(Error::IlluminantMismatch {
            expected: illuminant,
            found: xyz.illuminant,
        });
    }
    if !(xyz.x >= 0.0 && xyz.y >= 0.0 && xyz.z >= 0.0) {
        return Err(Error::Domain(format!(
            "negative or non-finite tristimulus ({}, {}, {})",
            xyz.x, xyz.y, xyz.z
        )));
    }
    let [wx, wy, wz] = illuminant.white_point();
    let fx = f(xyz.x / wx);
    let fy = f(xyz.y / wy);
    let fz = f(xyz.z / wz);
    Ok(LabColor {
        l: 116.0 * fy - 16.0,
        a: 500.0 * (fx - fy),
        b: 200.0 * (fy - fz),
        illuminant,
    })
}

/// Inverse of [`xyz_to_lab`] under the Lab color's own white.
pub fn lab_to_xyz(lab: LabColor) -> XyzColor {
    let fy = (lab.l + 16.0) / 116.0;
    let fx = fy + lab.a / 500.0;
    let fz = fy - lab.b / 200.0;
    let y = if lab.l > KAPPA * EPSILON {
        fy * fy * fy
    } else {
        lab.l / KAPPA
    };
    let [wx, wy, wz] = lab.illuminant.white_point();
    XyzColor::new(f_inv(fx) * wx, y * wy, f_inv(fz) * wz, lab.illuminant)
}

/// Hue angle of `(a, b)` in degrees, normalised to [0, 360).
pub(crate) fn hue_angle(a: f64, b: f64) -> f64 {
    if a == 0.0 && b == 0.0 {
        return 0.0;
    }
    let h = b.atan2(a).to_degrees();
    let h = if h < 0.0 { h + 360.0 } else { h };
    // -tiny + 360 can round to exactly 360
    if h >= 360.0 {
        h - 360.0
    } else {
        h
    }
}

pub fn lab_to_lch(lab: LabColor) -> LchColor {
    LchColor {
        l: lab.l,
        c: lab.a.hypot(lab.b),
        h: hue_angle(lab.a, lab.b),
        illuminant: lab.illuminant,
    }
}

pub fn lch_to_lab(lch: LchColor) -> LabColor {
    let (sin, cos) = lch.h.to_radians().sin_cos();
    LabColor {
        l: lch.l,
        a: lch.c * cos,
        b: lch.c * sin,
        illuminant: lch.illuminant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn white_point_is_l100() {
        for ill in Illuminant::ALL {
            let lab = xyz_to_lab(XyzColor::white(ill), ill).unwrap();
            assert!((lab.l - 100.0).abs() < 1e-9);
            assert!(lab.a.abs() < 1e-9 && lab.b.abs() < 1e-9);
        }
    }

    #[test]
    fn black_is_zero() {
        let lab = xyz_to_lab(XyzColor::new(0.0, 0.0, 0.0, Illuminant::D65), Illuminant::D65).unwrap();
        assert_eq!(lab.to_array(), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn mid_grey_lightness() {
        // 116 * 0.18^(1/3) - 16, cross-checked with colour.XYZ_to_Lab.
        let [wx, wy, wz] = Illuminant::D65.white_point();
        let grey = XyzColor::new(0.18 * wx, 0.18 * wy, 0.18 * wz, Illuminant::D65);
        let lab = xyz_to_lab(grey, Illuminant::D65).unwrap();
        let oracle = 116.0 * 0.18f64.cbrt() - 16.0;
        assert!((lab.l - oracle).abs() < 1e-12);
        assert!((lab.l - 49.496107610119594).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_and_mismatched() {
        let neg = XyzColor::new(-0.1, 0.2, 0.2, Illuminant::D65);
        assert!(matches!(xyz_to_lab(neg, Illuminant::D65), Err(Error::Domain(_))));
        let c = XyzColor::new(0.1, 0.2, 0.2, Illuminant::C);
        assert!(matches!(
            xyz_to_lab(c, Illuminant::D65),
            Err(Error::IlluminantMismatch { .. })
        ));
    }

    #[test]
    fn lch_examples() {
        let n = lab_to_lch(LabColor::d65(50.0, 0.0, 0.0));
        assert_eq!((n.l, n.c, n.h), (50.0, 0.0, 0.0));

        let p = lab_to_lch(LabColor::d65(50.0, 3.0, 4.0));
        assert_eq!(p.c, 5.0);
        assert!((p.h - 4f64.atan2(3.0).to_degrees()).abs() < 1e-12);
        assert!((p.h - 53.130102354155978).abs() < 1e-9);

        let q = lab_to_lch(LabColor::d65(50.0, -3.0, -4.0));
        assert_eq!(q.c, 5.0);
        assert!((q.h - 233.13010235415598).abs() < 1e-9);
    }

    #[test]
    fn dark_branch_round_trip() {
        let lab = LabColor::d65(3.0, 1.0, -2.0);
        let back = xyz_to_lab(lab_to_xyz(lab), Illuminant::D65).unwrap();
        for (x, y) in lab.to_array().iter().zip(back.to_array()) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}
