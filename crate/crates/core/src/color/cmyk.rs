use serde::{Deserialize, Serialize};

use super::SrgbColor;

/// Device-independent naive CMYK, each component in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmykColor {
    pub c: f64,
    pub m: f64,
    pub y: f64,
    pub k: f64,
}

impl CmykColor {
    pub fn to_array(self) -> [f64; 4] {
        [self.c, self.m, self.y, self.k]
    }
}

/// Naive conversion from gamma-encoded sRGB: `k = 1 - max(r, g, b)`.
///
/// Pure black is `(0, 0, 0, 1)`.
pub fn srgb_to_cmyk(c: SrgbColor) -> CmykColor {
    let [r, g, b] = c.normalized();
    let max = r.max(g).max(b);
    let k = 1.0 - max;
    if max == 0.0 {
        return CmykColor { c: 0.0, m: 0.0, y: 0.0, k: 1.0 };
    }
    let ink = |ch: f64| ((1.0 - ch - k) / (1.0 - k)).clamp(0.0, 1.0);
    CmykColor {
        c: ink(r),
        m: ink(g),
        y: ink(b),
        k,
    }
}
