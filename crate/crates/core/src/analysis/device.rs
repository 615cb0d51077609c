//! Per-device Lab offsets against a reference set or the chip database.

use std::collections::HashSet;
use std::io::Write;

use serde::Serialize;

use crate::dataset::CaptureSet;
use crate::error::{Error, Result};
use crate::munsell::{ChipDatabase, MunsellCode};

/// What observations are compared against.
#[derive(Debug, Clone, Copy)]
pub enum OffsetReference<'a> {
    /// Another capture set, e.g. a sensor scan of the same chart.
    Set(&'a CaptureSet),
    /// The chip database's own Lab values.
    Database(&'a ChipDatabase),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChipDelta {
    pub code: MunsellCode,
    /// Observed minus reference, in L, a, b order.
    pub delta: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviceOffsets {
    pub set_label: String,
    pub device: String,
    /// Mean signed offset per channel.
    pub mean: [f64; 3],
    /// Population standard deviation per channel.
    pub stdev: [f64; 3],
    pub deltas: Vec<ChipDelta>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviceOffsetReport {
    pub reference: String,
    pub devices: Vec<DeviceOffsets>,
}

/// Offsets of each set from `reference`, chip by chip.
///
/// Against a reference set the truth codes must match exactly. Against the
/// database every truth code must be a database chip.
pub fn device_offsets(sets: &[CaptureSet], reference: OffsetReference<'_>) -> Result<DeviceOffsetReport> {
    let (reference_name, illuminant) = match reference {
        OffsetReference::Set(r) => (r.label.clone(), crate::color::Illuminant::D65),
        OffsetReference::Database(db) => ("chip database".to_string(), db.illuminant()),
    };

    let mut devices = Vec::with_capacity(sets.len());
    for set in sets {
        check_inventory(set, reference)?;
        let deltas: Vec<ChipDelta> = set
            .observations()
            .iter()
            .map(|obs| {
                let observed = obs.observed.to_lab(illuminant);
                let reference_lab = match reference {
                    OffsetReference::Set(r) => r.get(&obs.truth).expect("inventory checked").observed.to_lab(illuminant),
                    OffsetReference::Database(db) => db.get(&obs.truth).expect("inventory checked").lab,
                };
                ChipDelta {
                    code: obs.truth,
                    delta: [
                        observed.l - reference_lab.l,
                        observed.a - reference_lab.a,
                        observed.b - reference_lab.b,
                    ],
                }
            })
            .collect();
        let (mean, stdev) = channel_stats(&deltas);
        devices.push(DeviceOffsets {
            set_label: set.label.clone(),
            device: set.device.clone(),
            mean,
            stdev,
            deltas,
        });
    }
    Ok(DeviceOffsetReport {
        reference: reference_name,
        devices,
    })
}

fn check_inventory(set: &CaptureSet, reference: OffsetReference<'_>) -> Result<()> {
    let have: HashSet<MunsellCode> = set.observations().iter().map(|o| o.truth).collect();
    let mut missing: Vec<MunsellCode> = match reference {
        OffsetReference::Set(r) => {
            let want: HashSet<MunsellCode> = r.observations().iter().map(|o| o.truth).collect();
            want.symmetric_difference(&have).copied().collect()
        }
        OffsetReference::Database(db) => have.iter().filter(|c| !db.contains(c)).copied().collect(),
    };
    if missing.is_empty() {
        return Ok(());
    }
    missing.sort();
    Err(Error::InventoryMismatch {
        set: set.label.clone(),
        missing: missing.iter().map(|c| c.to_string()).collect(),
    })
}

fn channel_stats(deltas: &[ChipDelta]) -> ([f64; 3], [f64; 3]) {
    if deltas.is_empty() {
        return ([0.0; 3], [0.0; 3]);
    }
    let n = deltas.len() as f64;
    let mean: [f64; 3] = std::array::from_fn(|k| deltas.iter().map(|d| d.delta[k]).sum::<f64>() / n);
    let stdev = std::array::from_fn(|k| {
        (deltas.iter().map(|d| (d.delta[k] - mean[k]).powi(2)).sum::<f64>() / n).sqrt()
    });
    (mean, stdev)
}

impl DeviceOffsetReport {
    /// Summary CSV: one row per device with mean and stdev per channel.
    pub fn write_summary_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["set", "device", "mean_L", "mean_a", "mean_b", "stdev_L", "stdev_a", "stdev_b", "chips"])?;
        for d in &self.devices {
            let mut rec = vec![d.set_label.clone(), d.device.clone()];
            rec.extend(d.mean.iter().chain(&d.stdev).map(|v| format!("{v:.6}")));
            rec.push(d.deltas.len().to_string());
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io("<device csv>", e))?;
        Ok(())
    }

    /// Long-form CSV of every per-chip delta.
    pub fn write_deltas_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["set", "device", "code", "dL", "da", "db"])?;
        for d in &self.devices {
            for c in &d.deltas {
                let [l, a, b] = c.delta.map(|v| format!("{v:.6}"));
                w.write_record([d.set_label.as_str(), &d.device, &c.code.to_string(), &l, &a, &b])?;
            }
        }
        w.flush().map_err(|e| Error::io("<device csv>", e))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::synthesize_capture_set;

    #[test]
    fn self_comparison_is_exactly_zero() {
        let db = ChipDatabase::bundled().unwrap();
        let set = synthesize_capture_set(&db, 1.5, [0.0; 3], 3).unwrap();
        let r = device_offsets(std::slice::from_ref(&set), OffsetReference::Set(&set)).unwrap();
        assert_eq!(r.devices[0].mean, [0.0; 3]);
        assert_eq!(r.devices[0].stdev, [0.0; 3]);
        assert!(r.devices[0].deltas.iter().all(|d| d.delta == [0.0; 3]));
    }

    #[test]
    fn uniform_lightness_offset() {
        let db = ChipDatabase::bundled().unwrap();
        let s10 = synthesize_capture_set(&db, 0.0, [7.4, 0.0, 0.0], 1).unwrap();
        let r = device_offsets(&[s10], OffsetReference::Database(&db)).unwrap();
        let d = &r.devices[0];
        assert!((d.mean[0] - 7.4).abs() < 1e-6, "{:?}", d.mean);
        assert!(d.mean[1].abs() < 1e-12 && d.mean[2].abs() < 1e-12);
        let avg = d.deltas.iter().map(|c| c.delta[0]).sum::<f64>() / d.deltas.len() as f64;
        assert!((avg - d.mean[0]).abs() < 1e-9);
    }

    #[test]
    fn equal_offsets_give_identical_rows() {
        let db = ChipDatabase::bundled().unwrap();
        let a = synthesize_capture_set(&db, 0.0, [1.0, -2.0, 0.5], 1).unwrap();
        let b = synthesize_capture_set(&db, 0.0, [1.0, -2.0, 0.5], 2).unwrap();
        let r = device_offsets(&[a, b], OffsetReference::Database(&db)).unwrap();
        assert_eq!(r.devices[0].mean, r.devices[1].mean);
        assert_eq!(r.devices[0].stdev, r.devices[1].stdev);
    }

    #[test]
    fn inventory_mismatch_lists_codes() {
        let db = ChipDatabase::bundled().unwrap();
        let full = synthesize_capture_set(&db, 0.0, [0.0; 3], 1).unwrap();
        let partial = CaptureSet::new("partial", "d", None, full.observations()[1..].to_vec()).unwrap();
        let err = device_offsets(&[partial], OffsetReference::Set(&full)).unwrap_err();
        let first = full.observations()[0].truth.to_string();
        assert!(err.to_string().contains(&first), "{err}");
    }
}
