//! Build a chip database from sensor scans (replicate Lab readings per chip)
//! and use it in place of the bundled renotation-derived one.
//!
//!     cargo run --example load_scan_csv -- examples/data/sample_scan.csv

use munsell_soil::analysis::{centerline_stats, heatmap};
use munsell_soil::delta_e::DeltaEMethod;
use munsell_soil::munsell::{load_chip_database, ChipDatabase, ReplicateStatistic};

fn main() -> munsell_soil::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sample_scan.csv").into());
    let scans = load_chip_database(&path, ReplicateStatistic::Median)?;
    let pages: Vec<String> = scans.pages().map(|p| p.to_string()).collect();
    println!("{} chips on pages {}", scans.len(), pages.join(", "));

    let bundled = ChipDatabase::bundled()?;
    let mut worst = (0.0, None);
    for chip in scans.chips() {
        if let Some(reference) = bundled.get(&chip.code) {
            let d = DeltaEMethod::DE2000.compute(&reference.lab, &chip.lab);
            if d > worst.0 {
                worst = (d, Some(chip.code));
            }
        }
    }
    if let (d, Some(code)) = worst {
        println!("largest scan vs renotation difference: {code} ΔE00 {d:.3}");
    }

    if let [a, b, ..] = scans.pages().collect::<Vec<_>>()[..] {
        let s = centerline_stats(&heatmap(&scans, a, b, DeltaEMethod::DE2000)?)?;
        println!("{a} vs {b} centerline: mean {:.2} stdev {:.2}", s.mean, s.stdev);
    }
    Ok(())
}
