//! Chromatic adaptation between illuminant white points.
//!
//! A von Kries scaling applied in the Bradford sharpened cone space: the
//! tristimulus values are mapped to cone responses, each response is scaled
//! by the ratio of destination to source white, and the result is mapped
//! back. The source white therefore lands exactly on the destination white.

use super::matrix::{self, Mat3};
use super::{Illuminant, XyzColor};
use crate::error::{Error, Result};

#[rustfmt::skip]
const BRADFORD: Mat3 = [
    [ 0.8951,  0.2664, -0.1614],
    [-0.7502,  1.7135,  0.0367],
    [ 0.0389, -0.0685,  1.0296],
];

/// Full XYZ-to-XYZ adaptation matrix from `from` white to `to` white.
pub fn adaptation_matrix(from: Illuminant, to: Illuminant) -> Mat3 {
    let cone_from = matrix::mul_vec(&BRADFORD, from.white_point());
    let cone_to = matrix::mul_vec(&BRADFORD, to.white_point());
    let scale = matrix::diag([
        cone_to[0] / cone_from[0],
        cone_to[1] / cone_from[1],
        cone_to[2] / cone_from[2],
    ]);
    matrix::mul(&matrix::inverse(&BRADFORD), &matrix::mul(&scale, &BRADFORD))
}

impl XyzColor {
    /// Re-expresses this color relative to the `to` white point.
    pub fn adapt_to(self, to: Illuminant) -> XyzColor {
        if self.illuminant == to {
            return self;
        }
        let m = adaptation_matrix(self.illuminant, to);
        let [x, y, z] = matrix::mul_vec(&m, [self.x, self.y, self.z]);
        XyzColor {
            x,
            y,
            z,
            illuminant: to,
        }
    }
}

/// Adapts `xyz` from the `from` white to the `to` white.
///
/// The color's own illuminant tag must equal `from`.
pub fn adapt_white_point(xyz: XyzColor, from: Illuminant, to: Illuminant) -> Result<XyzColor> {
    if xyz.illuminant != from {
        return Err(Error::IlluminantMismatch {
            expected: from,
            found: xyz.illuminant,
        });
    }
    Ok(xyz.adapt_to(to))
}
