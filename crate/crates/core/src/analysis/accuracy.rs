//! Hue and hue-value-chroma matching accuracy over capture sets.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::dataset::CaptureSet;
use crate::delta_e::DeltaEMethod;
use crate::error::{Error, Result};
use crate::munsell::{match_color, score_code, soil_pages, ChipDatabase, MunsellCode, MunsellHue};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchRecord {
    pub truth: MunsellCode,
    pub predicted: MunsellCode,
    pub delta_e: f64,
    pub hue_correct: bool,
    pub hvc_correct: bool,
}

/// Accuracy of one method on one capture set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyEntry {
    pub set_label: String,
    pub device: String,
    pub method: DeltaEMethod,
    pub total: usize,
    pub hue_correct: usize,
    pub hvc_correct: usize,
    pub records: Vec<MatchRecord>,
}

impl AccuracyEntry {
    pub fn hue_accuracy(&self) -> f64 {
        percent(self.hue_correct, self.total)
    }

    pub fn hvc_accuracy(&self) -> f64 {
        percent(self.hvc_correct, self.total)
    }
}

fn percent(correct: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * correct as f64 / total as f64
    }
}

/// Entries ordered set-major, then by method in the order requested.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub set_labels: Vec<String>,
    pub methods: Vec<DeltaEMethod>,
    pub entries: Vec<AccuracyEntry>,
}

/// Evaluates every set with every method, matching against the seven soil
/// pages of `db`.
pub fn evaluate(sets: &[CaptureSet], db: &ChipDatabase, methods: &[DeltaEMethod]) -> Result<AccuracyReport> {
    evaluate_on_pages(sets, db, methods, Some(&soil_pages()))
}

/// As [`evaluate`], with an explicit page restriction (`None` for all pages).
pub fn evaluate_on_pages(
    sets: &[CaptureSet],
    db: &ChipDatabase,
    methods: &[DeltaEMethod],
    pages: Option<&[MunsellHue]>,
) -> Result<AccuracyReport> {
    for m in methods {
        m.validate()?;
    }
    for set in sets {
        if let Some(obs) = set.observations().iter().find(|o| !db.contains(&o.truth)) {
            return Err(Error::Evaluation(format!(
                "truth code {} in set {:?} is not in the chip database",
                obs.truth, set.label
            )));
        }
    }

    let illuminant = db.illuminant();
    let mut entries = Vec::with_capacity(sets.len() * methods.len());
    for set in sets {
        let queries: Vec<_> = set
            .observations()
            .iter()
            .map(|o| (o.truth, o.observed.to_lab(illuminant)))
            .collect();
        for &method in methods {
            let records = queries
                .par_iter()
                .map(|(truth, lab)| {
                    let result = match_color(*lab, db, method, pages)?;
                    let best = result.best();
                    let score = score_code(&best.code, truth);
                    Ok(MatchRecord {
                        truth: *truth,
                        predicted: best.code,
                        delta_e: best.delta_e,
                        hue_correct: score.hue_correct,
                        hvc_correct: score.hvc_correct,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            entries.push(AccuracyEntry {
                set_label: set.label.clone(),
                device: set.device.clone(),
                method,
                total: records.len(),
                hue_correct: records.iter().filter(|r| r.hue_correct).count(),
                hvc_correct: records.iter().filter(|r| r.hvc_correct).count(),
                records,
            });
        }
    }
    Ok(AccuracyReport {
        set_labels: sets.iter().map(|s| s.label.clone()).collect(),
        methods: methods.to_vec(),
        entries,
    })
}

impl AccuracyReport {
    pub fn entry(&self, set_label: &str, method: &DeltaEMethod) -> Option<&AccuracyEntry> {
        self.entries
            .iter()
            .find(|e| e.set_label == set_label && e.method == *method)
    }

    /// Two tables (hue, then hue-value-chroma) with one row per method and
    /// one column per set, percentages to 2 decimals.
    pub fn write_tables_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["Table".to_string(), "Calculation".to_string()];
        header.extend(self.set_labels.iter().cloned());
        w.write_record(&header)?;
        for (table, pick) in [
            ("Hue", AccuracyEntry::hue_accuracy as fn(&AccuracyEntry) -> f64),
            ("Hue-Value-Chroma", AccuracyEntry::hvc_accuracy),
        ] {
            for method in &self.methods {
                let mut rec = vec![table.to_string(), method.label().to_string()];
                for (i, _) in self.set_labels.iter().enumerate() {
                    let e = &self.entries[i * self.methods.len() + self.methods.iter().position(|m| m == method).unwrap()];
                    rec.push(format!("{:.2}", pick(e)));
                }
                w.write_record(&rec)?;
            }
        }
        w.flush().map_err(|e| Error::io("<accuracy csv>", e))?;
        Ok(())
    }

    /// Tables CSV as a string.
    pub fn tables_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_tables_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }

    /// One row per (set, method, observation).
    pub fn write_records_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["set", "device", "method", "truth", "predicted", "delta_e", "hue_correct", "hvc_correct"])?;
        for e in &self.entries {
            for r in &e.records {
                w.write_record([
                    e.set_label.as_str(),
                    &e.device,
                    e.method.key(),
                    &r.truth.to_string(),
                    &r.predicted.to_string(),
                    &format!("{:.4}", r.delta_e),
                    if r.hue_correct { "1" } else { "0" },
                    if r.hvc_correct { "1" } else { "0" },
                ])?;
            }
        }
        w.flush().map_err(|e| Error::io("<records csv>", e))?;
        Ok(())
    }
}
