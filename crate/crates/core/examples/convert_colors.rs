//! sRGB to CIELab, LCh, XYZ and CMYK, plus the effect of the reference white.
//!
//!     cargo run --example convert_colors -- 150,110,80

use munsell_soil::color::{
    lab_to_lch, lab_to_srgb, lab_to_xyz, srgb_to_cmyk, srgb_to_lab, Illuminant, LabColor, SrgbColor,
};

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "150,110,80".into());
    let ch: Vec<u8> = arg.split(',').map(|v| v.trim().parse().expect("R,G,B in 0..=255")).collect();
    let rgb = SrgbColor::new(ch[0], ch[1], ch[2]);

    println!("sRGB   {rgb}");
    for ill in Illuminant::ALL {
        let lab = srgb_to_lab(rgb, ill);
        let lch = lab_to_lch(lab);
        let xyz = lab_to_xyz(lab);
        println!(
            "{:<4}   {lab}  LCh({:.4}, {:.4}, {:.2}°)  XYZ({:.5}, {:.5}, {:.5})",
            ill.name(),
            lch.l,
            lch.c,
            lch.h,
            xyz.x,
            xyz.y,
            xyz.z
        );
    }
    let cmyk = srgb_to_cmyk(rgb);
    println!("CMYK   {:.3} {:.3} {:.3} {:.3}", cmyk.c, cmyk.m, cmyk.y, cmyk.k);

    // Saturated Lab colors can fall outside sRGB; the rendering is clamped and flagged.
    let vivid = LabColor::d65(50.0, 80.0, -80.0);
    let shown = lab_to_srgb(vivid);
    println!("{vivid} -> sRGB {} (clipped: {})", shown.color, shown.clipped);
}
