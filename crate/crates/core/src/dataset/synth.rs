use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::capture::{CaptureSet, Observation, ObservedColor};
use crate::color::LabColor;
use crate::error::{Error, Result};
use crate::munsell::ChipDatabase;

/// A capture set built from the chip database itself: every chip's Lab is
/// shifted by `offset` and perturbed by isotropic Gaussian noise with
/// standard deviation `noise_sigma` per channel.
///
/// Observations follow the database's canonical order and the same seed
/// always yields the same set.
pub fn synthesize_capture_set(db: &ChipDatabase, noise_sigma: f64, offset: [f64; 3], seed: u64) -> Result<CaptureSet> {
    if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
        return Err(Error::Parameter(format!("noise sigma must be >= 0, got {noise_sigma}")));
    }
    let normal = Normal::new(0.0, noise_sigma).map_err(|e| Error::Parameter(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut noise = || if noise_sigma > 0.0 { normal.sample(&mut rng) } else { 0.0 };

    let observations = db
        .chips()
        .iter()
        .map(|chip| {
            let lab = chip.lab;
            let l = lab.l + offset[0] + noise();
            let a = lab.a + offset[1] + noise();
            let b = lab.b + offset[2] + noise();
            Observation {
                truth: chip.code,
                observed: ObservedColor::Lab(LabColor::new(l, a, b, lab.illuminant)),
            }
        })
        .collect();
    CaptureSet::new(
        format!("synthetic-sigma{noise_sigma}-seed{seed}"),
        "synthetic",
        None,
        observations,
    )
}
