//! Lab offsets of several (synthetic) phones against the chip database,
//! e.g. one camera reading every chip about 7.4 L* too light.

use munsell_soil::analysis::{device_offsets, OffsetReference};
use munsell_soil::dataset::synthesize_capture_set;
use munsell_soil::munsell::ChipDatabase;

fn main() -> munsell_soil::Result<()> {
    let db = ChipDatabase::bundled()?;
    let devices = [
        ("Phone A", [7.4, 0.0, 0.0]),
        ("Phone B", [1.2, 2.5, -1.0]),
        ("Tablet", [-0.8, 0.6, 3.1]),
    ];
    let sets = devices
        .iter()
        .enumerate()
        .map(|(i, (name, offset))| {
            let mut set = synthesize_capture_set(&db, 0.8, *offset, i as u64)?;
            set.device = name.to_string();
            set.label = format!("session {}", i + 1);
            Ok(set)
        })
        .collect::<munsell_soil::Result<Vec<_>>>()?;

    let report = device_offsets(&sets, OffsetReference::Database(&db))?;
    report.write_summary_csv(std::io::stdout().lock())?;

    // Devices can also be compared with each other.
    let vs_a = device_offsets(&sets[1..], OffsetReference::Set(&sets[0]))?;
    for d in &vs_a.devices {
        println!("{} vs Phone A: dL {:+.2} da {:+.2} db {:+.2}", d.device, d.mean[0], d.mean[1], d.mean[2]);
    }
    Ok(())
}
