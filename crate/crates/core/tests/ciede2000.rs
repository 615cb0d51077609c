//! The 34 published CIEDE2000 test pairs.

use munsell_soil::color::LabColor;
use munsell_soil::delta_e::DeltaEMethod;

const PAIRS: &str = include_str!("fixtures/ciede2000_pairs.csv");

fn pairs() -> Vec<(LabColor, LabColor, f64, f64)> {
    PAIRS
        .lines()
        .skip(1)
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            (LabColor::d65(v[0], v[1], v[2]), LabColor::d65(v[3], v[4], v[5]), v[6], v[7])
        })
        .collect()
}

#[test]
fn published_values_within_1e4() {
    let pairs = pairs();
    assert_eq!(pairs.len(), 34);
    for (i, (a, b, published, _)) in pairs.iter().enumerate() {
        let got = DeltaEMethod::DE2000.compute(a, b);
        assert!((got - published).abs() < 1e-4, "pair {}: {got} vs {published}", i + 1);
    }
}

#[test]
fn agrees_with_reference_implementation() {
    for (i, (a, b, _, oracle)) in pairs().iter().enumerate() {
        let got = DeltaEMethod::DE2000.compute(a, b);
        assert!((got - oracle).abs() < 1e-12, "pair {}: {got} vs {oracle}", i + 1);
    }
}

#[test]
fn pairs_are_symmetric() {
    for (a, b, _, _) in pairs() {
        let ab = DeltaEMethod::DE2000.compute(&a, &b);
        let ba = DeltaEMethod::DE2000.compute(&b, &a);
        assert!((ab - ba).abs() < 1e-12);
    }
}
