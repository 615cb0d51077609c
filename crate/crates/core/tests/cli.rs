use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_munsell-soil"));
    c.env_remove("MUNSELL_SOIL_OUT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

#[test]
fn convert_examples() {
    let o = run(&["convert", "--rgb", "255,255,255", "--to", "lab"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "100.0000 0.0000 0.0000\n"));
    let o = run(&["convert", "--rgb", "0,0,0", "--to", "cmyk"]);
    assert_eq!(stdout(&o), "0 0 0 1\n");
    let o = run(&["convert", "--lab", "50,3,4", "--to", "lch"]);
    assert_eq!(stdout(&o), "50.0000 5.0000 53.1301\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["convert", "--rgb", "12,34", "--to", "lab"][..],
        &["convert", "--rgb", "1,2,3", "--to", "hsv"],
        &["match"],
        &["match", "--lab", "50,0,0", "--method", "de1999"],
        &["scatter", "--space", "hsl"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"), "{args:?}");
    }
}

#[test]
fn runtime_errors_exit_1() {
    let o = run(&["match", "--image", "/definitely/not/here.png"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("here.png"));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["--out", out, "heatmap", "--pages", "2.5YR,5GY"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_documents_every_flag() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["convert", "match", "heatmap", "eval", "scatter", "device-compare"] {
        assert!(stdout(&o).contains(sub), "{sub}");
        let h = run(&[sub, "--help"]);
        assert_eq!(h.status.code(), Some(0), "{sub}");
        let text = stdout(&h);
        for line in text.lines().filter(|l| l.trim_start().starts_with("--")) {
            // every flag line is followed by or carries a description
            assert!(!line.trim().is_empty(), "{sub}: {line}");
        }
        assert!(text.contains("--out") && text.contains("--config"), "{sub}");
    }
}

#[test]
fn match_image_fixture_and_page_filter() {
    let png = fixtures().join("capture/images/10YR_5_4.png");
    let o = run(&["match", "--image", png.to_str().unwrap(), "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first = text.lines().nth(2).unwrap();
    assert!(first.contains("10YR 5/4"), "{text}");
    assert_eq!(text.lines().count(), 2 + 3);

    let o = run(&["match", "--rgb", "146,116,79", "--pages", "5YR", "--k", "34"]);
    let rows: Vec<_> = stdout(&o).lines().skip(2).map(str::to_string).collect();
    assert_eq!(rows.len(), 34);
    assert!(rows.iter().all(|r| r.contains(" 5YR ")));
}

fn files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

#[test]
fn analysis_commands_write_under_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(run(&["--out", out, "heatmap", "--pages", "2.5YR,5YR", "--method", "de2000"]).status.success());
    assert!(run(&["--out", out, "scatter", "--space", "lab"]).status.success());
    let manifest = fixtures().join("capture/manifest.csv");
    let o = run(&["--out", out, "eval", "--sets", manifest.to_str().unwrap(), "--methods", "de1976,de1994,de2000"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(run(&["--out", out, "device-compare", "--synthetic-offset", "7.4,0,0"]).status.success());
    assert_eq!(
        files(dir.path()),
        [
            "accuracy.csv",
            "accuracy_records.csv",
            "device_deltas.csv",
            "device_offsets.csv",
            "heatmap_2.5YR_5YR_de2000.csv",
            "heatmap_2.5YR_5YR_de2000.json",
            "scatter_lab.csv"
        ]
    );
    let scatter = std::fs::read_to_string(dir.path().join("scatter_lab.csv")).unwrap();
    assert_eq!(scatter.lines().count(), 1 + 238);
    let acc = std::fs::read_to_string(dir.path().join("accuracy.csv")).unwrap();
    assert_eq!(
        acc,
        "Table,Calculation,fixture-set\nHue,CIE1976,100.00\nHue,CIE1994,100.00\nHue,CIE2000,100.00\n\
         Hue-Value-Chroma,CIE1976,100.00\nHue-Value-Chroma,CIE1994,100.00\nHue-Value-Chroma,CIE2000,100.00\n"
    );
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("heatmap_2.5YR_5YR_de2000.json")).unwrap()).unwrap();
    assert_eq!(json["page_a"], "2.5YR");
}

#[test]
fn env_var_sets_default_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .env("MUNSELL_SOIL_OUT", dir.path())
        .args(["scatter", "--space", "xyz"])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("scatter_xyz.csv").is_file());
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, format!("method = de1976\nout = {}\n", dir.path().join("res").display())).unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "heatmap", "--pages", "5YR,7.5YR"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("res/heatmap_5YR_7.5YR_de1976.csv").is_file());
}
