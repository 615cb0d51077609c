//! Cross-page ΔE heatmap between two adjacent hue pages.
//!
//!     cargo run --example heatmap_centerline -- 2.5YR 5YR

use munsell_soil::analysis::{centerline_stats, heatmap};
use munsell_soil::delta_e::DeltaEMethod;
use munsell_soil::munsell::ChipDatabase;

fn main() -> munsell_soil::Result<()> {
    let mut args = std::env::args().skip(1);
    let a = args.next().unwrap_or_else(|| "2.5YR".into()).parse()?;
    let b = args.next().unwrap_or_else(|| "5YR".into()).parse()?;
    let db = ChipDatabase::bundled()?;

    for method in DeltaEMethod::ALL {
        let grid = heatmap(&db, a, b, method)?;
        let s = centerline_stats(&grid)?;
        println!(
            "{:<8} centerline mean {:.2} stdev {:.2} (sample {:.2}) range [{:.2}, {:.2}]; off-centerline mean {:.2}",
            method.label(),
            s.mean,
            s.stdev,
            s.sample_stdev,
            s.min,
            s.max,
            grid.off_centerline_mean().unwrap_or(f64::NAN)
        );
    }

    // The DE2000 matrix as CSV on stdout, first few rows only.
    let grid = heatmap(&db, a, b, DeltaEMethod::DE2000)?;
    let mut csv = Vec::new();
    grid.write_csv(&mut csv)?;
    for line in String::from_utf8_lossy(&csv).lines().take(4) {
        println!("{}", &line[..line.len().min(100)]);
    }
    Ok(())
}
