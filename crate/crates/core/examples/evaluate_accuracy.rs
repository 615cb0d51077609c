//! Hue and hue-value-chroma accuracy tables over several capture sets.
//!
//! With no arguments, five synthetic sets with increasing noise stand in
//! for photo sessions. Pass manifest paths to evaluate real captures:
//!
//!     cargo run --example evaluate_accuracy -- set1.csv set2.csv

use std::path::Path;

use munsell_soil::analysis::evaluate;
use munsell_soil::dataset::{load_capture_set, synthesize_capture_set, CaptureMeta};
use munsell_soil::delta_e::DeltaEMethod;
use munsell_soil::munsell::ChipDatabase;

fn main() -> munsell_soil::Result<()> {
    let db = ChipDatabase::bundled()?;
    let paths: Vec<String> = std::env::args().skip(1).collect();
    let sets = if paths.is_empty() {
        [0.5, 1.0, 2.0, 3.0, 5.0]
            .iter()
            .enumerate()
            .map(|(i, &sigma)| {
                let mut set = synthesize_capture_set(&db, sigma, [0.0; 3], 100 + i as u64)?;
                set.label = format!("Set {} (σ={sigma})", i + 1);
                Ok(set)
            })
            .collect::<munsell_soil::Result<Vec<_>>>()?
    } else {
        paths
            .iter()
            .map(|p| {
                let dir = Path::new(p).parent().unwrap_or(Path::new("."));
                load_capture_set(p, dir, &CaptureMeta::default())
            })
            .collect::<munsell_soil::Result<Vec<_>>>()?
    };

    let report = evaluate(&sets, &db, &DeltaEMethod::ALL)?;
    print!("{}", report.tables_csv()?);

    let worst = report
        .entries
        .iter()
        .flat_map(|e| e.records.iter())
        .filter(|r| !r.hvc_correct)
        .max_by(|a, b| a.delta_e.total_cmp(&b.delta_e));
    if let Some(r) = worst {
        println!("\nlargest miss: {} read as {} (ΔE {:.2})", r.truth, r.predicted, r.delta_e);
    }
    Ok(())
}
