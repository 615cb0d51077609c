//! Color-difference formulas: CIE76, CIE94, CIEDE2000 and CMC(l:c).
//!
//! Every function takes the **reference** first and the **sample** second.
//! CIE94 and CMC weight their chroma and hue terms by the reference color's
//! chroma, so swapping the arguments generally changes the result.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::color::LabColor;
use crate::error::{Error, Result};

/// A color-difference formula together with its weighting parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DeltaEMethod {
    De1976,
    De1994 { k_l: f64, k1: f64, k2: f64 },
    De2000 { k_l: f64, k_c: f64, k_h: f64 },
    Cmc { l: f64, c: f64 },
}

impl DeltaEMethod {
    /// CIE94 with the graphic-arts constants.
    pub const DE1994: DeltaEMethod = DeltaEMethod::De1994 {
        k_l: 1.0,
        k1: 0.045,
        k2: 0.015,
    };
    /// CIE94 with the textile constants.
    pub const DE1994_TEXTILES: DeltaEMethod = DeltaEMethod::De1994 {
        k_l: 2.0,
        k1: 0.048,
        k2: 0.014,
    };
    pub const DE2000: DeltaEMethod = DeltaEMethod::De2000 {
        k_l: 1.0,
        k_c: 1.0,
        k_h: 1.0,
    };
    /// CMC at the 2:1 acceptability ratio.
    pub const CMC: DeltaEMethod = DeltaEMethod::Cmc { l: 2.0, c: 1.0 };

    /// The four formulas with default parameters, oldest first.
    pub const ALL: [DeltaEMethod; 4] = [
        DeltaEMethod::De1976,
        DeltaEMethod::DE1994,
        DeltaEMethod::DE2000,
        DeltaEMethod::CMC,
    ];

    /// Short identifier accepted by [`FromStr`].
    pub fn key(&self) -> &'static str {
        match self {
            DeltaEMethod::De1976 => "de1976",
            DeltaEMethod::De1994 { .. } => "de1994",
            DeltaEMethod::De2000 { .. } => "de2000",
            DeltaEMethod::Cmc { .. } => "cmc",
        }
    }

    /// Label used in report tables.
    pub fn label(&self) -> &'static str {
        match self {
            DeltaEMethod::De1976 => "CIE1976",
            DeltaEMethod::De1994 { .. } => "CIE1994",
            DeltaEMethod::De2000 { .. } => "CIE2000",
            DeltaEMethod::Cmc { .. } => "CMC",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let params: &[(&str, f64)] = match self {
            DeltaEMethod::De1976 => &[],
            DeltaEMethod::De1994 { k_l, k1, k2 } => &[("kL", *k_l), ("K1", *k1), ("K2", *k2)],
            DeltaEMethod::De2000 { k_l, k_c, k_h } => &[("kL", *k_l), ("kC", *k_c), ("kH", *k_h)],
            DeltaEMethod::Cmc { l, c } => &[("l", *l), ("c", *c)],
        };
        for (name, v) in params {
            if !(v.is_finite() && *v > 0.0) {
                return Err(Error::Parameter(format!(
                    "{} parameter {name} must be positive, got {v}",
                    self.label()
                )));
            }
        }
        Ok(())
    }

    /// Raw ΔE between `reference` and `sample`, ignoring illuminant tags.
    ///
    /// Parameters are assumed valid; use [`DeltaEMethod::difference`] for
    /// the checked form.
    pub fn compute(&self, reference: &LabColor, sample: &LabColor) -> f64 {
        match *self {
            DeltaEMethod::De1976 => de1976(reference, sample),
            DeltaEMethod::De1994 { k_l, k1, k2 } => de1994(reference, sample, k_l, k1, k2),
            DeltaEMethod::De2000 { k_l, k_c, k_h } => de2000(reference, sample, k_l, k_c, k_h),
            DeltaEMethod::Cmc { l, c } => cmc(reference, sample, l, c),
        }
    }

    /// Checked ΔE: both colors must share an illuminant and the parameters
    /// must be positive.
    pub fn difference(&self, reference: LabColor, sample: LabColor) -> Result<DifferenceResult> {
        self.validate()?;
        if reference.illuminant != sample.illuminant {
            return Err(Error::IlluminantMismatch {
                expected: reference.illuminant,
                found: sample.illuminant,
            });
        }
        let value = self.compute(&reference, &sample);
        if !value.is_finite() {
            return Err(Error::Domain(format!("non-finite ΔE for {reference} vs {sample}")));
        }
        Ok(DifferenceResult {
            value,
            method: *self,
            reference,
            sample,
        })
    }
}

impl Default for DeltaEMethod {
    fn default() -> Self {
        DeltaEMethod::DE2000
    }
}

impl fmt::Display for DeltaEMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for DeltaEMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "de1976" | "cie1976" | "de76" => Ok(DeltaEMethod::De1976),
            "de1994" | "cie1994" | "de94" => Ok(DeltaEMethod::DE1994),
            "de2000" | "cie2000" | "de00" => Ok(DeltaEMethod::DE2000),
            "cmc" => Ok(DeltaEMethod::CMC),
            other => Err(Error::Parameter(format!(
                "unknown ΔE method {other:?}; expected de1976, de1994, de2000 or cmc"
            ))),
        }
    }
}

/// A ΔE value with the inputs that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DifferenceResult {
    pub value: f64,
    pub method: DeltaEMethod,
    pub reference: LabColor,
    pub sample: LabColor,
}

pub fn delta_e_1976(reference: LabColor, sample: LabColor) -> Result<DifferenceResult> {
    DeltaEMethod::De1976.difference(reference, sample)
}

pub fn delta_e_1994(reference: LabColor, sample: LabColor, k_l: f64, k1: f64, k2: f64) -> Result<DifferenceResult> {
    DeltaEMethod::De1994 { k_l, k1, k2 }.difference(reference, sample)
}

pub fn delta_e_2000(reference: LabColor, sample: LabColor, k_l: f64, k_c: f64, k_h: f64) -> Result<DifferenceResult> {
    DeltaEMethod::De2000 { k_l, k_c, k_h }.difference(reference, sample)
}

pub fn delta_e_cmc(reference: LabColor, sample: LabColor, l: f64, c: f64) -> Result<DifferenceResult> {
    DeltaEMethod::Cmc { l, c }.difference(reference, sample)
}

fn de1976(r: &LabColor, s: &LabColor) -> f64 {
    let dl = r.l - s.l;
    let da = r.a - s.a;
    let db = r.b - s.b;
    (dl * dl + da * da + db * db).sqrt()
}

/// Squared hue difference `Δa² + Δb² - ΔC²`, floored at zero against rounding.
fn delta_h_squared(r: &LabColor, s: &LabColor, dc: f64) -> f64 {
    let da = r.a - s.a;
    let db = r.b - s.b;
    (da * da + db * db - dc * dc).max(0.0)
}

fn de1994(r: &LabColor, s: &LabColor, k_l: f64, k1: f64, k2: f64) -> f64 {
    let c1 = r.chroma();
    let c2 = s.chroma();
    let dl = r.l - s.l;
    let dc = c1 - c2;
    let dh2 = delta_h_squared(r, s, dc);
    let sc = 1.0 + k1 * c1;
    let sh = 1.0 + k2 * c1;
    let tl = dl / k_l;
    let tc = dc / sc;
    (tl * tl + tc * tc + dh2 / (sh * sh)).sqrt()
}

fn de2000(r: &LabColor, s: &LabColor, k_l: f64, k_c: f64, k_h: f64) -> f64 {
    const POW25_7: f64 = 6_103_515_625.0; // 25^7

    let c_bar = (r.chroma() + s.chroma()) / 2.0;
    let c_bar7 = c_bar.powi(7);
    let g = 0.5 * (1.0 - (c_bar7 / (c_bar7 + POW25_7)).sqrt());

    let a1 = (1.0 + g) * r.a;
    let a2 = (1.0 + g) * s.a;
    let c1 = a1.hypot(r.b);
    let c2 = a2.hypot(s.b);
    let h1 = crate::color::hue_angle_deg(a1, r.b);
    let h2 = crate::color::hue_angle_deg(a2, s.b);

    let dl = s.l - r.l;
    let dc = c2 - c1;
    let chroma_product = c1 * c2;
    let dh_angle = if chroma_product == 0.0 {
        0.0
    } else if (h2 - h1).abs() <= 180.0 {
        h2 - h1
    } else if h2 - h1 > 180.0 {
        h2 - h1 - 360.0
    } else {
        h2 - h1 + 360.0
    };
    let dh = 2.0 * chroma_product.sqrt() * (dh_angle.to_radians() / 2.0).sin();

    let l_bar = (r.l + s.l) / 2.0;
    let c_bar_p = (c1 + c2) / 2.0;
    let h_bar = if chroma_product == 0.0 {
        h1 + h2
    } else if (h1 - h2).abs() <= 180.0 {
        (h1 + h2) / 2.0
    } else if h1 + h2 < 360.0 {
        (h1 + h2 + 360.0) / 2.0
    } else {
        (h1 + h2 - 360.0) / 2.0
    };

    let t = 1.0 - 0.17 * (h_bar - 30.0).to_radians().cos()
        + 0.24 * (2.0 * h_bar).to_radians().cos()
        + 0.32 * (3.0 * h_bar + 6.0).to_radians().cos()
        - 0.20 * (4.0 * h_bar - 63.0).to_radians().cos();
    let d_theta = 30.0 * (-((h_bar - 275.0) / 25.0).powi(2)).exp();
    let c_bar_p7 = c_bar_p.powi(7);
    let r_c = 2.0 * (c_bar_p7 / (c_bar_p7 + POW25_7)).sqrt();
    let l50 = (l_bar - 50.0).powi(2);
    let s_l = 1.0 + 0.015 * l50 / (20.0 + l50).sqrt();
    let s_c = 1.0 + 0.045 * c_bar_p;
    let s_h = 1.0 + 0.015 * c_bar_p * t;
    let r_t = -(2.0 * d_theta).to_radians().sin() * r_c;

    let tl = dl / (k_l * s_l);
    let tc = dc / (k_c * s_c);
    let th = dh / (k_h * s_h);
    (tl * tl + tc * tc + th * th + r_t * tc * th).max(0.0).sqrt()
}

fn cmc(r: &LabColor, s: &LabColor, l: f64, c: f64) -> f64 {
    let c1 = r.chroma();
    let c2 = s.chroma();
    let dl = r.l - s.l;
    let dc = c1 - c2;
    let dh2 = delta_h_squared(r, s, dc);

    let s_l = if r.l < 16.0 {
        0.511
    } else {
        0.040975 * r.l / (1.0 + 0.01765 * r.l)
    };
    let s_c = 0.0638 * c1 / (1.0 + 0.0131 * c1) + 0.638;
    let h1 = crate::color::hue_angle_deg(r.a, r.b);
    let t = if (164.0..=345.0).contains(&h1) {
        0.56 + (0.2 * (h1 + 168.0).to_radians().cos()).abs()
    } else {
        0.36 + (0.4 * (h1 + 35.0).to_radians().cos()).abs()
    };
    let c1_4 = c1.powi(4);
    let f = (c1_4 / (c1_4 + 1900.0)).sqrt();
    let s_h = s_c * (f * t + 1.0 - f);

    let tl = dl / (l * s_l);
    let tc = dc / (c * s_c);
    (tl * tl + tc * tc + dh2 / (s_h * s_h)).sqrt()
}
