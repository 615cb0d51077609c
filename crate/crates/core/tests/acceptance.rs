//! Acceptance checks, one PASS/FAIL line per criterion. Exits non-zero if
//! any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

use munsell_soil::analysis::{
    clumping_index, device_offsets, evaluate, heatmap, scatter_export, ColorSpace, OffsetReference,
};
use munsell_soil::color::{lab_to_srgb, srgb_to_lab, Illuminant, LabColor, SrgbColor};
use munsell_soil::dataset::synthesize_capture_set;
use munsell_soil::delta_e::DeltaEMethod;
use munsell_soil::munsell::{match_color, ChipDatabase};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ciede2000_pairs() -> Check {
    let start = Instant::now();
    let text = include_str!("fixtures/ciede2000_pairs.csv");
    let mut worst = 0.0f64;
    let mut n = 0;
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let d = DeltaEMethod::DE2000.compute(&LabColor::d65(v[0], v[1], v[2]), &LabColor::d65(v[3], v[4], v[5]));
        worst = worst.max((d - v[6]).abs());
        n += 1;
    }
    let elapsed = start.elapsed();
    ensure(n == 34, format!("expected 34 pairs, found {n}"))?;
    ensure(worst < 1e-4, format!("max deviation {worst:.2e}"))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("34 pairs, max deviation {worst:.1e}, {elapsed:.2?}"))
}

fn conversion_round_trip() -> Check {
    let mut worst = 0i16;
    let levels: Vec<u8> = (0..16).map(|i| (i * 17) as u8).collect();
    for &r in &levels {
        for &g in &levels {
            for &b in &levels {
                let c = SrgbColor::new(r, g, b);
                let back = lab_to_srgb(srgb_to_lab(c, Illuminant::D65)).color;
                for (x, y) in c.to_array().iter().zip(back.to_array()) {
                    worst = worst.max((*x as i16 - y as i16).abs());
                }
            }
        }
    }
    ensure(worst <= 1, format!("channel deviation {worst}"))?;
    let white = srgb_to_lab(SrgbColor::new(255, 255, 255), Illuminant::D65);
    let err = (white.l - 100.0).abs().max(white.a.abs()).max(white.b.abs());
    ensure(err < 1e-9, format!("white maps to {white}"))?;
    Ok(format!("4096 colors, max channel deviation {worst}; white error {err:.1e}"))
}

fn self_match(db: &ChipDatabase) -> Check {
    let start = Instant::now();
    let mut queries = 0;
    for method in DeltaEMethod::ALL {
        for chip in db.chips() {
            let r = match_color(chip.lab, db, method, None).map_err(|e| e.to_string())?;
            let best = r.best();
            ensure(
                best.code == chip.code && best.delta_e == 0.0,
                format!("{method}: {} matched {} at {}", chip.code, best.code, best.delta_e),
            )?;
            queries += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("{queries} queries, {elapsed:.2?}"))
}

fn zero_noise_evaluation(db: &ChipDatabase) -> Check {
    let set = synthesize_capture_set(db, 0.0, [0.0; 3], 0).map_err(|e| e.to_string())?;
    let report = evaluate(&[set], db, &DeltaEMethod::ALL).map_err(|e| e.to_string())?;
    let csv = report.tables_csv().map_err(|e| e.to_string())?;
    for e in &report.entries {
        ensure(
            format!("{:.2}/{:.2}", e.hue_accuracy(), e.hvc_accuracy()) == "100.00/100.00",
            format!("{}: {:.2}/{:.2}", e.method, e.hue_accuracy(), e.hvc_accuracy()),
        )?;
    }
    ensure(csv.lines().skip(1).all(|l| l.ends_with(",100.00")), csv.clone())?;
    Ok("100.00% hue and HVC for all four methods".into())
}

fn centerline_geometry(db: &ChipDatabase) -> Check {
    let g = heatmap(db, "2.5YR".parse().unwrap(), "5YR".parse().unwrap(), DeltaEMethod::DE2000)
        .map_err(|e| e.to_string())?;
    // Recompute both means directly from the matrix and chip codes.
    let (mut on, mut n_on, mut off, mut n_off) = (0.0, 0, 0.0, 0);
    for (i, r) in g.row_chips.iter().enumerate() {
        for (j, c) in g.col_chips.iter().enumerate() {
            if r.value() == c.value() && r.chroma() == c.chroma() {
                on += g.values[i][j];
                n_on += 1;
            } else {
                off += g.values[i][j];
                n_off += 1;
            }
        }
    }
    let (on, off) = (on / n_on as f64, off / n_off as f64);
    ensure(n_on == g.centerline.len(), "centerline length disagrees with the matrix")?;
    ensure(on < off, format!("centerline mean {on:.4} >= off-diagonal mean {off:.4}"))?;
    Ok(format!("centerline mean {on:.4} < off-diagonal mean {off:.4} ({n_on} cells)"))
}

fn synthetic_tables(db: &ChipDatabase) -> Check {
    let set = synthesize_capture_set(db, 2.0, [0.0; 3], 42).map_err(|e| e.to_string())?;
    let report = evaluate(&[set], db, &DeltaEMethod::ALL).map_err(|e| e.to_string())?;
    let csv = report.tables_csv().map_err(|e| e.to_string())?;
    ensure(
        csv == include_str!("fixtures/synthetic_sigma2_seed42_accuracy.csv"),
        "report differs from the frozen fixture",
    )?;

    let seeds: Vec<u64> = (0..20).collect();
    let mean_hue = |sigma: f64| -> Result<Vec<f64>, String> {
        let sets: Vec<_> = seeds
            .iter()
            .map(|&s| synthesize_capture_set(db, sigma, [0.0; 3], s))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let report = evaluate(&sets, db, &DeltaEMethod::ALL).map_err(|e| e.to_string())?;
        Ok(DeltaEMethod::ALL
            .iter()
            .map(|m| {
                let v: Vec<f64> = report.entries.iter().filter(|e| e.method == *m).map(|e| e.hue_accuracy()).collect();
                v.iter().sum::<f64>() / v.len() as f64
            })
            .collect())
    };
    let low = mean_hue(1.0)?;
    let high = mean_hue(4.0)?;
    let mut detail = Vec::new();
    for ((m, l), h) in DeltaEMethod::ALL.iter().zip(&low).zip(&high) {
        ensure(l >= h, format!("{}: sigma 1 mean {l:.2} < sigma 4 mean {h:.2}", m.label()))?;
        detail.push(format!("{} {l:.2}>={h:.2}", m.label()));
    }
    Ok(format!("fixture byte-identical; 20-seed mean hue accuracy {}", detail.join(", ")))
}

fn device_offset(db: &ChipDatabase) -> Check {
    let s10 = synthesize_capture_set(db, 0.0, [7.4, 0.0, 0.0], 10).map_err(|e| e.to_string())?;
    let r = device_offsets(std::slice::from_ref(&s10), OffsetReference::Database(db)).map_err(|e| e.to_string())?;
    let l = r.devices[0].mean[0];
    ensure((l - 7.4).abs() < 1e-6, format!("L offset {l}"))?;
    let noisy = synthesize_capture_set(db, 2.0, [0.0; 3], 3).map_err(|e| e.to_string())?;
    let own = device_offsets(std::slice::from_ref(&noisy), OffsetReference::Set(&noisy)).map_err(|e| e.to_string())?;
    let d = &own.devices[0];
    ensure(
        d.mean == [0.0; 3] && d.stdev == [0.0; 3] && d.deltas.iter().all(|c| c.delta == [0.0; 3]),
        "self-comparison is not exactly zero",
    )?;
    Ok(format!("L offset {l:.6}; self-comparison exactly zero"))
}

fn clumping_direction(db: &ChipDatabase) -> Check {
    let lab = clumping_index(&scatter_export(db, ColorSpace::Lab)).map_err(|e| e.to_string())?;
    let xyz = clumping_index(&scatter_export(db, ColorSpace::Xyz)).map_err(|e| e.to_string())?;
    ensure(lab.overall > xyz.overall, format!("LAB {:.4} <= XYZ {:.4}", lab.overall, xyz.overall))?;
    Ok(format!("LAB {:.4} > XYZ {:.4}", lab.overall, xyz.overall))
}

fn hash_dir(dir: &Path) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            let digest = Sha256::digest(std::fs::read(e.path()).unwrap());
            let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
            (e.file_name().to_string_lossy().into_owned(), hex)
        })
        .collect();
    out.sort();
    out
}

fn cli_determinism() -> Check {
    let run_all = |dir: &Path| -> Result<(), String> {
        let out = dir.to_str().unwrap();
        let commands: [&[&str]; 5] = [
            &["heatmap", "--pages", "2.5YR,5YR"],
            &["eval", "--synthetic-sets", "3", "--sigma", "2", "--seed", "42"],
            &["scatter", "--space", "lab"],
            &["scatter", "--space", "rgb"],
            &["device-compare", "--synthetic-offset", "7.4,0,0", "--sigma", "1", "--seed", "9"],
        ];
        for args in commands {
            let o = Command::new(env!("CARGO_BIN_EXE_munsell-soil"))
                .args(["--out", out])
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(o.status.success(), format!("{args:?} failed: {}", String::from_utf8_lossy(&o.stderr)))?;
        }
        Ok(())
    };
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    run_all(a.path())?;
    run_all(b.path())?;
    let (ha, hb) = (hash_dir(a.path()), hash_dir(b.path()));
    ensure(ha.len() == 8, format!("expected 8 output files, found {}", ha.len()))?;
    ensure(ha == hb, "output hashes differ between runs")?;
    Ok(format!("{} files, identical SHA-256 across two runs", ha.len()))
}

fn main() {
    let db = ChipDatabase::bundled().expect("bundled database");
    let criteria: [Criterion; 9] = [
        ("1 CIEDE2000 reference pairs", Box::new(ciede2000_pairs)),
        ("2 sRGB/Lab round trip", Box::new(conversion_round_trip)),
        ("3 chip self-match", Box::new(|| self_match(&db))),
        ("4 zero-noise evaluation", Box::new(|| zero_noise_evaluation(&db))),
        ("5 centerline geometry", Box::new(|| centerline_geometry(&db))),
        ("6 synthetic accuracy tables", Box::new(|| synthetic_tables(&db))),
        ("7 device offset", Box::new(|| device_offset(&db))),
        ("8 clumping direction", Box::new(|| clumping_direction(&db))),
        ("9 CLI determinism", Box::new(cli_determinism)),
    ];
    let mut failed = 0;
    for (name, check) in criteria.iter() {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
