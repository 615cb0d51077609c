//! The soil chart chip database: construction from renotation data, loading
//! from sensor scans, and page indexing.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::code::{parse_munsell, MunsellCode, MunsellHue};
use crate::color::{xyz_to_lab, Illuminant, LabColor, XyzColor};
use crate::error::{Error, Result};

/// Renotation xyY records (illuminant C) for the soil hue pages plus a
/// neutral column, shipped with the crate.
pub const BUNDLED_RENOTATION: &str = include_str!("../../data/munsell_soil_renotation.csv");

/// The seven hue pages most common in Australian topsoils, in chart order.
pub const SOIL_PAGES: [&str; 7] = ["10R", "2.5YR", "5YR", "7.5YR", "10YR", "2.5Y", "5Y"];

pub fn soil_pages() -> Vec<MunsellHue> {
    SOIL_PAGES.iter().map(|s| s.parse().expect("static page list")).collect()
}

/// `(value, chroma)` cells present on every bundled hue page: values 8 to 5
/// at chromas 1, 2, 3, 4, 6, 8 and values 4 and 3 at chromas 1, 2, 3, 4, 6.
pub fn soil_chart_layout() -> Vec<(f64, u8)> {
    let mut cells = Vec::with_capacity(34);
    for value in [8.0, 7.0, 6.0, 5.0] {
        for chroma in [1, 2, 3, 4, 6, 8] {
            cells.push((value, chroma));
        }
    }
    for value in [4.0, 3.0] {
        for chroma in [1, 2, 3, 4, 6] {
            cells.push((value, chroma));
        }
    }
    cells
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChipSource {
    RenotationDerived,
    SensorScan,
}

/// How replicate scans of one chip are combined into its reference color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReplicateStatistic {
    #[default]
    Mean,
    Median,
}

impl FromStr for ReplicateStatistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mean" => Ok(ReplicateStatistic::Mean),
            "median" => Ok(ReplicateStatistic::Median),
            other => Err(Error::Config(format!("unknown statistic {other:?}; expected mean or median"))),
        }
    }
}

/// One chart chip with its reference coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Chip {
    pub code: MunsellCode,
    pub lab: LabColor,
    pub source: ChipSource,
    /// Raw readings when the chip came from a sensor scan.
    pub replicates: Vec<LabColor>,
}

/// Immutable, canonically ordered set of chips indexed by code and by page.
#[derive(Debug, Clone, Default)]
pub struct ChipDatabase {
    chips: Vec<Chip>,
    index: BTreeMap<MunsellCode, usize>,
    pages: BTreeMap<MunsellHue, Vec<usize>>,
}

impl ChipDatabase {
    pub fn new(mut chips: Vec<Chip>) -> Result<Self> {
        chips.sort_by_key(|c| c.code);
        if let Some(w) = chips.windows(2).find(|w| w[0].code == w[1].code) {
            return Err(Error::Domain(format!("duplicate chip {}", w[0].code)));
        }
        let illuminants: BTreeSet<Illuminant> = chips.iter().map(|c| c.lab.illuminant).collect();
        if illuminants.len() > 1 {
            return Err(Error::Domain("chips reference more than one illuminant".into()));
        }
        let mut index = BTreeMap::new();
        let mut pages: BTreeMap<MunsellHue, Vec<usize>> = BTreeMap::new();
        for (i, chip) in chips.iter().enumerate() {
            index.insert(chip.code, i);
            pages.entry(chip.code.hue).or_default().push(i);
        }
        Ok(ChipDatabase { chips, index, pages })
    }

    /// The bundled renotation-derived database for the seven soil pages under D65.
    pub fn bundled() -> Result<Self> {
        build_chip_database(BUNDLED_RENOTATION.as_bytes(), Illuminant::D65, &soil_pages())
    }

    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    /// Chips in canonical order.
    pub fn chips(&self) -> &[Chip] {
        &self.chips
    }

    pub fn get(&self, code: &MunsellCode) -> Option<&Chip> {
        self.index.get(code).map(|&i| &self.chips[i])
    }

    pub fn contains(&self, code: &MunsellCode) -> bool {
        self.index.contains_key(code)
    }

    /// Hue pages present, in hue-circle order.
    pub fn pages(&self) -> impl Iterator<Item = MunsellHue> + '_ {
        self.pages.keys().copied()
    }

    pub fn has_page(&self, hue: &MunsellHue) -> bool {
        self.pages.contains_key(hue)
    }

    /// Chips of one page in canonical order; empty if the page is absent.
    pub fn page(&self, hue: &MunsellHue) -> Vec<&Chip> {
        self.pages
            .get(hue)
            .map(|idx| idx.iter().map(|&i| &self.chips[i]).collect())
            .unwrap_or_default()
    }

    /// Illuminant of the reference coordinates; D65 for an empty database.
    pub fn illuminant(&self) -> Illuminant {
        self.chips.first().map_or(Illuminant::D65, |c| c.lab.illuminant)
    }

    /// A database restricted to `pages`.
    pub fn filter_pages(&self, pages: &[MunsellHue]) -> ChipDatabase {
        let chips = self
            .chips
            .iter()
            .filter(|c| pages.contains(&c.code.hue))
            .cloned()
            .collect();
        ChipDatabase::new(chips).expect("subset of a valid database")
    }
}

/// One row of a renotation source: chromaticity and relative luminance
/// under illuminant C. Neutral rows use hue `N` and chroma 0.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct RenotationRecord {
    pub hue: String,
    pub value: f64,
    pub chroma: f64,
    pub x: f64,
    pub y: f64,
    #[serde(rename = "Y")]
    pub luminance: f64,
}

/// Builds a database from renotation xyY data (illuminant C), adapting each
/// chip to `target` and converting to CIELab.
///
/// Neutral (`N`) rows are skipped. Every requested page must contain all the
/// cells of [`soil_chart_layout`]; otherwise the absent codes are reported.
pub fn build_chip_database<R: Read>(source: R, target: Illuminant, pages: &[MunsellHue]) -> Result<ChipDatabase> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let mut chips = Vec::new();
    let mut skipped_neutral = 0usize;
    for (i, rec) in reader.deserialize::<RenotationRecord>().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| Error::load("renotation source", row, e.to_string()))?;
        if rec.hue.eq_ignore_ascii_case("N") {
            skipped_neutral += 1;
            continue;
        }
        let hue: MunsellHue = rec
            .hue
            .parse()
            .map_err(|e: Error| Error::load("renotation source", row, e.to_string()))?;
        if !pages.contains(&hue) {
            continue;
        }
        if rec.chroma.fract() != 0.0 || !(0.0..=255.0).contains(&rec.chroma) {
            return Err(Error::load("renotation source", row, format!("bad chroma {}", rec.chroma)));
        }
        let code = MunsellCode::new(hue, rec.value, rec.chroma as u8)
            .map_err(|e| Error::load("renotation source", row, e.to_string()))?;
        let xyz = XyzColor::from_xyy(rec.x, rec.y, rec.luminance, Illuminant::C)
            .map_err(|e| Error::load("renotation source", row, e.to_string()))?;
        let lab = xyz_to_lab(xyz.adapt_to(target), target)?;
        chips.push(Chip {
            code,
            lab,
            source: ChipSource::RenotationDerived,
            replicates: Vec::new(),
        });
    }
    log::debug!("skipped {skipped_neutral} neutral renotation rows");

    let present: BTreeSet<MunsellCode> = chips.iter().map(|c| c.code).collect();
    let mut missing = Vec::new();
    for hue in pages {
        for (value, chroma) in soil_chart_layout() {
            let code = MunsellCode::new(*hue, value, chroma)?;
            if !present.contains(&code) {
                missing.push(code.to_string());
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingChips { missing });
    }
    ChipDatabase::new(chips)
}

#[derive(Debug, Deserialize)]
struct ScanRow {
    hue: String,
    value: String,
    chroma: String,
    #[serde(rename = "L")]
    l: String,
    a: String,
    b: String,
    replicate: String,
}

/// Loads a sensor-scan CSV (`hue,value,chroma,L,a,b,replicate`, one row per
/// reading) and aggregates replicate readings per chip.
///
/// Readings are taken as D65 / 2° CIELab.
pub fn load_chip_database(path: impl AsRef<Path>, stat: ReplicateStatistic) -> Result<ChipDatabase> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    load_chip_database_from_reader(file, &path.display().to_string(), stat)
}

pub fn load_chip_database_from_reader<R: Read>(source: R, name: &str, stat: ReplicateStatistic) -> Result<ChipDatabase> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let mut readings: BTreeMap<MunsellCode, Vec<(u32, LabColor)>> = BTreeMap::new();
    let mut rows = 0usize;
    for (i, row) in reader.deserialize::<ScanRow>().enumerate() {
        let line = i + 2;
        let err = |msg: String| Error::load(name, line, msg);
        let row = row.map_err(|e| err(e.to_string()))?;
        rows += 1;

        let code = parse_munsell(&format!("{} {}/{}", row.hue, row.value, row.chroma)).map_err(|e| err(e.to_string()))?;
        let num = |field: &str, raw: &str| -> Result<f64> {
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(format!("{field} is not a number: {raw:?}")))
        };
        let lab = LabColor::d65(num("L", &row.l)?, num("a", &row.a)?, num("b", &row.b)?);
        if !(0.0..=100.0).contains(&lab.l) {
            return Err(err(format!("L* {} outside [0, 100]", lab.l)));
        }
        let replicate: u32 = row
            .replicate
            .parse()
            .map_err(|_| err(format!("replicate is not an integer: {:?}", row.replicate)))?;
        if replicate < 1 {
            return Err(err("replicate index must be at least 1".into()));
        }
        let entry = readings.entry(code).or_default();
        if entry.iter().any(|(r, _)| *r == replicate) {
            return Err(err(format!("duplicate replicate {replicate} for {code}")));
        }
        entry.push((replicate, lab));
    }
    if rows == 0 {
        log::warn!("{name}: no chip readings; database is empty");
    }

    let chips = readings
        .into_iter()
        .map(|(code, mut reps)| {
            reps.sort_by_key(|(r, _)| *r);
            let replicates: Vec<LabColor> = reps.into_iter().map(|(_, lab)| lab).collect();
            Chip {
                code,
                lab: aggregate(&replicates, stat),
                source: ChipSource::SensorScan,
                replicates,
            }
        })
        .collect();
    ChipDatabase::new(chips)
}

fn aggregate(readings: &[LabColor], stat: ReplicateStatistic) -> LabColor {
    let channel = |pick: fn(&LabColor) -> f64| -> f64 {
        let mut vals: Vec<f64> = readings.iter().map(pick).collect();
        match stat {
            ReplicateStatistic::Mean => vals.iter().sum::<f64>() / vals.len() as f64,
            ReplicateStatistic::Median => {
                vals.sort_by(f64::total_cmp);
                let mid = vals.len() / 2;
                if vals.len() % 2 == 1 {
                    vals[mid]
                } else {
                    (vals[mid - 1] + vals[mid]) / 2.0
                }
            }
        }
    };
    LabColor::d65(channel(|c| c.l), channel(|c| c.a), channel(|c| c.b))
}
