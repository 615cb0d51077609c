//! Munsell soil color estimation from device-captured colors.
//!
//! Captured sRGB colors (or image patches) are converted to CIELab under
//! D65 and matched against a database of soil chart chips with one of four
//! color-difference formulas. The analysis module reproduces cross-hue
//! heatmaps, accuracy tables over capture sets, color-space scatter exports
//! and device offset comparisons.
//!
//! ```
//! use munsell_soil::{color::{srgb_to_lab, Illuminant, SrgbColor}, delta_e::DeltaEMethod};
//! use munsell_soil::munsell::{match_color, ChipDatabase};
//!
//! let db = ChipDatabase::bundled().unwrap();
//! let query = srgb_to_lab(SrgbColor::new(140, 100, 70), Illuminant::D65);
//! let result = match_color(query, &db, DeltaEMethod::DE2000, None).unwrap();
//! println!("{} (ΔE {:.2})", result.best().code, result.best().delta_e);
//! ```

// Oracle values in unit tests are pasted verbatim from the reference tools.
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod analysis;
pub mod cli;
pub mod color;
pub mod config;
pub mod dataset;
pub mod delta_e;
mod error;
pub mod munsell;

pub use error::{Error, Result};
