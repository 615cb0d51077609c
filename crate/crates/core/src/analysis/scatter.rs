//! Per-chip coordinate exports for 3D plotting, and a separation score for
//! how well hue pages spread apart in a given space.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::color::{lab_to_lch, lab_to_srgb, lab_to_xyz, srgb_to_cmyk};
use crate::error::{Error, Result};
use crate::munsell::{ChipDatabase, MunsellCode, MunsellHue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ColorSpace {
    Rgb,
    Cmyk,
    Xyz,
    Lch,
    Lab,
}

impl ColorSpace {
    pub const ALL: [ColorSpace; 5] = [ColorSpace::Rgb, ColorSpace::Cmyk, ColorSpace::Xyz, ColorSpace::Lch, ColorSpace::Lab];

    pub fn axes(self) -> &'static [&'static str] {
        match self {
            ColorSpace::Rgb => &["R", "G", "B"],
            ColorSpace::Cmyk => &["C", "M", "Y", "K"],
            ColorSpace::Xyz => &["X", "Y", "Z"],
            ColorSpace::Lch => &["L", "C", "h"],
            ColorSpace::Lab => &["L", "a", "b"],
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            ColorSpace::Rgb => "rgb",
            ColorSpace::Cmyk => "cmyk",
            ColorSpace::Xyz => "xyz",
            ColorSpace::Lch => "lch",
            ColorSpace::Lab => "lab",
        }
    }
}

impl fmt::Display for ColorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for ColorSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        ColorSpace::ALL
            .into_iter()
            .find(|c| c.key() == s)
            .ok_or_else(|| Error::Config(format!("unknown color space {s:?} (expected rgb, cmyk, xyz, lch or lab)")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterRow {
    pub code: MunsellCode,
    pub page: MunsellHue,
    pub coords: Vec<f64>,
    /// Set when the chip lies outside the sRGB gamut and was clamped to render it.
    pub clipped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatterExport {
    pub space: ColorSpace,
    pub rows: Vec<ScatterRow>,
}

/// One row per chip in canonical order.
///
/// RGB is 8-bit encoded sRGB and CMYK is in percent; both are derived from
/// the clamped sRGB rendering, so their rows carry the gamut flag. XYZ, LCh
/// and Lab are exact and relative to the database white.
pub fn scatter_export(db: &ChipDatabase, space: ColorSpace) -> ScatterExport {
    let rows = db
        .chips()
        .iter()
        .map(|chip| {
            let rendered = lab_to_srgb(chip.lab);
            let coords = match space {
                ColorSpace::Rgb => rendered.color.to_array().map(f64::from).to_vec(),
                ColorSpace::Cmyk => srgb_to_cmyk(rendered.color).to_array().map(|v| v * 100.0).to_vec(),
                ColorSpace::Xyz => lab_to_xyz(chip.lab).to_array().to_vec(),
                ColorSpace::Lch => {
                    let lch = lab_to_lch(chip.lab);
                    vec![lch.l, lch.c, lch.h]
                }
                ColorSpace::Lab => chip.lab.to_array().to_vec(),
            };
            ScatterRow {
                code: chip.code,
                page: chip.code.hue,
                coords,
                clipped: rendered.clipped,
            }
        })
        .collect();
    ScatterExport { space, rows }
}

impl ScatterExport {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// CSV with `code,page,<axes>,clipped`; coordinates at full precision.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["code", "page"];
        header.extend_from_slice(self.space.axes());
        header.push("clipped");
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![row.code.to_string(), row.page.to_string()];
            rec.extend(row.coords.iter().map(|v| v.to_string()));
            rec.push(row.clipped.to_string());
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io("<scatter csv>", e))?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClumpingIndex {
    pub overall: f64,
    pub per_page: BTreeMap<MunsellHue, f64>,
    /// Diagonal of the exported points' bounding box.
    pub range: f64,
}

/// Mean distance from each chip to its nearest chip on another page, divided
/// by the bounding-box diagonal of the export. Larger means pages are better
/// separated; coincident points give 0.
pub fn clumping_index(export: &ScatterExport) -> Result<ClumpingIndex> {
    let pages: Vec<MunsellHue> = {
        let mut p: Vec<_> = export.rows.iter().map(|r| r.page).collect();
        p.sort();
        p.dedup();
        p
    };
    if pages.len() < 2 {
        return Err(Error::Domain(format!(
            "clumping index needs at least 2 hue pages, export has {}",
            pages.len()
        )));
    }

    let dims = export.rows[0].coords.len();
    let mut lo = vec![f64::INFINITY; dims];
    let mut hi = vec![f64::NEG_INFINITY; dims];
    for row in &export.rows {
        for (k, &v) in row.coords.iter().enumerate() {
            lo[k] = lo[k].min(v);
            hi[k] = hi[k].max(v);
        }
    }
    let range = lo.iter().zip(&hi).map(|(l, h)| (h - l) * (h - l)).sum::<f64>().sqrt();

    let nearest: Vec<f64> = export
        .rows
        .iter()
        .map(|r| {
            export
                .rows
                .iter()
                .filter(|o| o.page != r.page)
                .map(|o| distance(&r.coords, &o.coords))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();

    let scale = |d: f64| if range > 0.0 { d / range } else { 0.0 };
    let mut per_page = BTreeMap::new();
    for &page in &pages {
        let ds: Vec<f64> = export
            .rows
            .iter()
            .zip(&nearest)
            .filter(|(r, _)| r.page == page)
            .map(|(_, &d)| d)
            .collect();
        per_page.insert(page, scale(ds.iter().sum::<f64>() / ds.len() as f64));
    }
    let overall = scale(nearest.iter().sum::<f64>() / nearest.len() as f64);
    Ok(ClumpingIndex { overall, per_page, range })
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
