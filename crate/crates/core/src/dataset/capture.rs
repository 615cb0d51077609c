//! Capture sets and their manifest CSV form.
//!
//! A manifest has optional `#key=value` metadata lines (`label`, `device`,
//! `session`) followed by the header `truth,image_path,R,G,B,L,a,b`. Each
//! row fills exactly one of: `image_path`, the `R,G,B` triple, or the
//! `L,a,b` triple. Image paths are relative to the image directory given at
//! load time.

use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::patch::{extract_patch_color, load_image_patch, PatchStatistic};
use crate::color::{lab_to_xyz, srgb_to_lab, xyz_to_lab, Illuminant, LabColor, SrgbColor};
use crate::error::{Error, Result};
use crate::munsell::{parse_munsell, MunsellCode};

pub const MANIFEST_HEADER: [&str; 8] = ["truth", "image_path", "R", "G", "B", "L", "a", "b"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ObservedColor {
    Srgb(SrgbColor),
    Lab(LabColor),
}

impl ObservedColor {
    /// CIELab relative to `illuminant`, adapting tagged Lab input if needed.
    pub fn to_lab(&self, illuminant: Illuminant) -> LabColor {
        match *self {
            ObservedColor::Srgb(c) => srgb_to_lab(c, illuminant),
            ObservedColor::Lab(lab) if lab.illuminant == illuminant => lab,
            ObservedColor::Lab(lab) => {
                let xyz = lab_to_xyz(lab).adapt_to(illuminant);
                // Negative tristimulus only arises from non-physical Lab input.
                xyz_to_lab(xyz, illuminant).unwrap_or(LabColor::new(f64::NAN, f64::NAN, f64::NAN, illuminant))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observation {
    pub truth: MunsellCode,
    pub observed: ObservedColor,
}

/// One device/session's observations, at most one per chart chip.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaptureSet {
    pub label: String,
    pub device: String,
    /// Time-of-day or other session tag.
    pub session: Option<String>,
    observations: Vec<Observation>,
}

impl CaptureSet {
    pub fn new(
        label: impl Into<String>,
        device: impl Into<String>,
        session: Option<String>,
        observations: Vec<Observation>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for obs in &observations {
            if !seen.insert(obs.truth) {
                return Err(Error::Domain(format!("duplicate truth code {}", obs.truth)));
            }
            if let ObservedColor::Lab(lab) = obs.observed {
                if !lab.is_finite() {
                    return Err(Error::Domain(format!("non-finite observation for {}", obs.truth)));
                }
            }
        }
        Ok(CaptureSet {
            label: label.into(),
            device: device.into(),
            session,
            observations,
        })
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn get(&self, truth: &MunsellCode) -> Option<&Observation> {
        self.observations.iter().find(|o| &o.truth == truth)
    }

    /// Writes the set as a manifest with inline colors.
    ///
    /// Lab values are written relative to D65 at full precision, so a D65
    /// set reloads identically.
    pub fn write_manifest<W: Write>(&self, out: W) -> Result<()> {
        let mut out = out;
        let io = |e| Error::io("<manifest>", e);
        writeln!(out, "#label={}", self.label).map_err(io)?;
        writeln!(out, "#device={}", self.device).map_err(io)?;
        if let Some(session) = &self.session {
            writeln!(out, "#session={session}").map_err(io)?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(MANIFEST_HEADER)?;
        for obs in &self.observations {
            let truth = obs.truth.to_string();
            match obs.observed {
                ObservedColor::Srgb(c) => {
                    let [r, g, b] = c.to_array().map(|v| v.to_string());
                    w.write_record([truth.as_str(), "", &r, &g, &b, "", "", ""])?;
                }
                ObservedColor::Lab(lab) => {
                    let lab = ObservedColor::Lab(lab).to_lab(Illuminant::D65);
                    let [l, a, b] = lab.to_array().map(|v| v.to_string());
                    w.write_record([truth.as_str(), "", "", "", "", &l, &a, &b])?;
                }
            }
        }
        w.flush().map_err(io)?;
        Ok(())
    }
}

/// Overrides for manifest metadata; `None` keeps the manifest's own value.
#[derive(Debug, Clone, Default)]
pub struct CaptureMeta {
    pub label: Option<String>,
    pub device: Option<String>,
    pub session: Option<String>,
}

#[derive(Debug, Deserialize)]
struct ManifestRow {
    truth: String,
    image_path: Option<String>,
    #[serde(rename = "R")]
    r: Option<String>,
    #[serde(rename = "G")]
    g: Option<String>,
    #[serde(rename = "B")]
    b: Option<String>,
    #[serde(rename = "L")]
    l: Option<String>,
    a: Option<String>,
    #[serde(rename = "b")]
    lab_b: Option<String>,
}

enum RowColor {
    Image(PathBuf),
    Ready(ObservedColor),
}

/// Loads a manifest; image rows are reduced with the mean patch statistic.
pub fn load_capture_set(manifest: impl AsRef<Path>, image_dir: impl AsRef<Path>, meta: &CaptureMeta) -> Result<CaptureSet> {
    load_capture_set_with(manifest, image_dir, meta, PatchStatistic::Mean)
}

pub fn load_capture_set_with(
    manifest: impl AsRef<Path>,
    image_dir: impl AsRef<Path>,
    meta: &CaptureMeta,
    stat: PatchStatistic,
) -> Result<CaptureSet> {
    let manifest = manifest.as_ref();
    let image_dir = image_dir.as_ref();
    let name = manifest.display().to_string();
    let text = std::fs::read_to_string(manifest).map_err(|e| Error::io(manifest, e))?;

    let mut file_meta = CaptureMeta::default();
    let mut comment_lines = 0;
    let mut body_start = 0;
    for line in text.split_inclusive('\n') {
        let Some(comment) = line.trim().strip_prefix('#') else {
            break;
        };
        comment_lines += 1;
        body_start += line.len();
        if let Some((key, value)) = comment.split_once('=') {
            let value = Some(value.trim().to_string());
            match key.trim() {
                "label" => file_meta.label = value,
                "device" => file_meta.device = value,
                "session" => file_meta.session = value,
                _ => {}
            }
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(&text.as_bytes()[body_start..]);
    let headers = reader.headers()?.clone();
    if !headers.is_empty() && headers.iter().ne(MANIFEST_HEADER) {
        return Err(Error::load(&name, comment_lines + 1, format!("expected header {}", MANIFEST_HEADER.join(","))));
    }

    let mut rows: Vec<(usize, MunsellCode, RowColor)> = Vec::new();
    let mut seen = HashSet::new();
    for (i, row) in reader.deserialize::<ManifestRow>().enumerate() {
        let line = comment_lines + i + 2;
        let err = |msg: String| Error::load(&name, line, msg);
        let row = row.map_err(|e| err(e.to_string()))?;
        let truth = parse_munsell(&row.truth).map_err(|e| err(e.to_string()))?;
        if !seen.insert(truth) {
            return Err(err(format!("duplicate truth code {truth}")));
        }
        let rgb = [&row.r, &row.g, &row.b];
        let lab = [&row.l, &row.a, &row.lab_b];
        let filled = |group: &[&Option<String>; 3]| group.iter().filter(|v| v.is_some()).count();
        let color = match (row.image_path.is_some(), filled(&rgb), filled(&lab)) {
            (true, 0, 0) => {
                let path = image_dir.join(row.image_path.as_deref().unwrap_or_default());
                if !path.is_file() {
                    return Err(err(format!("image not found: {}", path.display())));
                }
                RowColor::Image(path)
            }
            (false, 3, 0) => {
                let ch = |v: &Option<String>| -> Result<u8> {
                    let raw = v.as_deref().unwrap_or_default();
                    raw.parse().map_err(|_| err(format!("RGB channel must be 0-255, got {raw:?}")))
                };
                RowColor::Ready(ObservedColor::Srgb(SrgbColor::new(ch(rgb[0])?, ch(rgb[1])?, ch(rgb[2])?)))
            }
            (false, 0, 3) => {
                let num = |v: &Option<String>| -> Result<f64> {
                    let raw = v.as_deref().unwrap_or_default();
                    raw.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| err(format!("Lab component is not a number: {raw:?}")))
                };
                RowColor::Ready(ObservedColor::Lab(LabColor::d65(num(lab[0])?, num(lab[1])?, num(lab[2])?)))
            }
            _ => {
                return Err(err(
                    "exactly one of image_path, the R,G,B triple or the L,a,b triple must be filled".into(),
                ))
            }
        };
        rows.push((line, truth, color));
    }
    if rows.is_empty() {
        return Err(Error::Domain(format!("{name}: empty capture set")));
    }

    let observations = rows
        .into_par_iter()
        .map(|(_, truth, color)| {
            let observed = match color {
                RowColor::Ready(c) => c,
                RowColor::Image(path) => {
                    ObservedColor::Srgb(extract_patch_color(&load_image_patch(&path)?, stat))
                }
            };
            Ok(Observation { truth, observed })
        })
        .collect::<Result<Vec<_>>>()?;

    let label = meta
        .label
        .clone()
        .or(file_meta.label)
        .unwrap_or_else(|| manifest.file_stem().map_or_else(|| name.clone(), |s| s.to_string_lossy().into_owned()));
    let device = meta.device.clone().or(file_meta.device).unwrap_or_else(|| "unknown".into());
    let session = meta.session.clone().or(file_meta.session);
    CaptureSet::new(label, device, session, observations)
}
