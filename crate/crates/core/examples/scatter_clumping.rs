//! Chip coordinates in each color space and how well the hue pages separate.
//!
//!     cargo run --example scatter_clumping -- lab > chips_lab.csv

use munsell_soil::analysis::{clumping_index, scatter_export, ColorSpace};
use munsell_soil::munsell::ChipDatabase;

fn main() -> munsell_soil::Result<()> {
    let db = ChipDatabase::bundled()?;

    if let Some(space) = std::env::args().nth(1) {
        let export = scatter_export(&db, space.parse()?);
        return export.write_csv(std::io::stdout().lock());
    }

    println!("{:<5} {:>9}  clipped  per page", "space", "index");
    for space in ColorSpace::ALL {
        let export = scatter_export(&db, space);
        let c = clumping_index(&export)?;
        let pages: Vec<String> = c.per_page.iter().map(|(p, v)| format!("{p}={v:.3}")).collect();
        let clipped = export.rows.iter().filter(|r| r.clipped).count();
        println!("{:<5} {:>9.4}  {clipped:>7}  {}", space.key(), c.overall, pages.join(" "));
    }
    Ok(())
}
