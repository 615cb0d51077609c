//! Rank soil chart chips for a captured color or a photo of a chip.
//!
//!     cargo run --example match_chip -- 146,116,79
//!     cargo run --example match_chip -- path/to/chip.png

use munsell_soil::color::{srgb_to_lab, Illuminant, SrgbColor};
use munsell_soil::dataset::{extract_patch_color, load_image_patch, PatchStatistic};
use munsell_soil::delta_e::DeltaEMethod;
use munsell_soil::munsell::{match_color, parse_pages, ChipDatabase};

fn main() -> munsell_soil::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "146,116,79".into());
    let rgb = if arg.contains(',') {
        let ch: Vec<u8> = arg.split(',').map(|v| v.trim().parse().expect("R,G,B")).collect();
        SrgbColor::new(ch[0], ch[1], ch[2])
    } else {
        extract_patch_color(&load_image_patch(&arg)?, PatchStatistic::Median)
    };
    let db = ChipDatabase::bundled()?;
    let query = srgb_to_lab(rgb, Illuminant::D65);

    let result = match_color(query, &db, DeltaEMethod::DE2000, None)?;
    println!("sRGB {rgb} = {query}");
    for (i, r) in result.top(5).iter().enumerate() {
        println!("  {}. {:<10} ΔE00 {:.3}", i + 1, r.code.to_string(), r.delta_e);
    }

    // Restricting to the pages a surveyor expects for the site.
    let pages = parse_pages("7.5YR,10YR")?;
    let best = match_color(query, &db, DeltaEMethod::DE2000, Some(&pages))?;
    println!("within 7.5YR/10YR: {} (ΔE00 {:.3})", best.best().code, best.best().delta_e);
    Ok(())
}
