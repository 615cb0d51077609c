use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// CIE standard illuminants supported by the conversion chain, all under the
/// 2° standard observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Illuminant {
    /// Average daylight, the capture and matching reference.
    D65,
    /// Older daylight standard that the Munsell renotation data is defined under.
    C,
    /// Horizon daylight, the usual ICC profile connection space white.
    D50,
}

impl Illuminant {
    pub const ALL: [Illuminant; 3] = [Illuminant::D65, Illuminant::C, Illuminant::D50];

    pub fn name(self) -> &'static str {
        match self {
            Illuminant::D65 => "D65",
            Illuminant::C => "C",
            Illuminant::D50 => "D50",
        }
    }

    /// CIE 1931 chromaticity coordinates of the white point.
    pub fn chromaticity(self) -> (f64, f64) {
        match self {
            Illuminant::D65 => (0.3127, 0.3290),
            Illuminant::C => (0.31006, 0.31616),
            Illuminant::D50 => (0.34567, 0.35850),
        }
    }

    /// Tristimulus values of the reference white with Y normalised to exactly 1.
    pub fn white_point(self) -> [f64; 3] {
        let (x, y) = self.chromaticity();
        [x / y, 1.0, (1.0 - x - y) / y]
    }
}

impl fmt::Display for Illuminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Illuminant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "D65" => Ok(Illuminant::D65),
            "C" => Ok(Illuminant::C),
            "D50" => Ok(Illuminant::D50),
            other => Err(Error::Config(format!("unknown illuminant {other:?}; expected D65, C or D50"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn white_points_have_unit_luminance() {
        for ill in Illuminant::ALL {
            assert_eq!(ill.white_point()[1], 1.0);
        }
    }

    #[test]
    fn d65_white() {
        let [x, y, z] = Illuminant::D65.white_point();
        assert!((x - 0.95045592705167159).abs() < 1e-15);
        assert_eq!(y, 1.0);
        assert!((z - 1.0890577507598784).abs() < 1e-15);
    }

    #[test]
    fn parse_names() {
        assert_eq!("d65".parse::<Illuminant>().unwrap(), Illuminant::D65);
        assert_eq!("C".parse::<Illuminant>().unwrap(), Illuminant::C);
        assert!("A".parse::<Illuminant>().is_err());
    }
}
