//! The four color-difference formulas side by side, and why argument order
//! matters for CIE94 and CMC.

use munsell_soil::color::LabColor;
use munsell_soil::delta_e::DeltaEMethod;

fn main() {
    let pairs = [
        (LabColor::d65(50.0, 2.6772, -79.7751), LabColor::d65(50.0, 0.0, -82.7485)),
        (LabColor::d65(60.0, 60.0, 20.0), LabColor::d65(62.0, 20.0, 5.0)),
        (LabColor::d65(45.0, 12.0, 25.0), LabColor::d65(46.5, 10.0, 22.0)),
    ];
    println!("{:<34} {:>9} {:>9} {:>9} {:>9}", "reference -> sample", "CIE1976", "CIE1994", "CIE2000", "CMC");
    for (r, s) in pairs {
        let row: Vec<String> = DeltaEMethod::ALL.iter().map(|m| format!("{:>9.4}", m.compute(&r, &s))).collect();
        println!("{:<34} {}", format!("{:.1}/{:.1}/{:.1}", r.l, r.a, r.b), row.join(" "));
        let swapped: Vec<String> = DeltaEMethod::ALL.iter().map(|m| format!("{:>9.4}", m.compute(&s, &r))).collect();
        println!("{:<34} {}", "  swapped", swapped.join(" "));
    }

    let textile = DeltaEMethod::DE1994_TEXTILES;
    let (r, s) = pairs[2];
    println!("\nCIE94 textiles: {:.4}", textile.compute(&r, &s));
    println!("CMC 1:1:        {:.4}", DeltaEMethod::Cmc { l: 1.0, c: 1.0 }.compute(&r, &s));
}
