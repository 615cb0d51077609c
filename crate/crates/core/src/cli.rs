//! The `munsell-soil` command-line tool.
//!
//! Exit codes: 0 on success, 1 for runtime or data errors, 2 for usage
//! errors. Files are written under `--out`, which defaults to
//! `$MUNSELL_SOIL_OUT` and then `./out`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{
    centerline_stats, clumping_index, device_offsets, evaluate_on_pages, heatmap, scatter_export, ColorSpace,
    OffsetReference,
};
use crate::color::{
    lab_to_lch, lab_to_srgb, lab_to_xyz, srgb_to_cmyk, srgb_to_lab, Illuminant, LabColor, LchColor,
    SrgbColor,
};
use crate::config::{Config, DatabaseSource};
use crate::dataset::{
    extract_patch_color, load_capture_set_with, load_image_patch, synthesize_capture_set, CaptureMeta, CaptureSet,
    PatchStatistic,
};
use crate::delta_e::DeltaEMethod;
use crate::error::{Error, Result};
use crate::munsell::{match_color, parse_pages, soil_pages, ChipDatabase, MunsellHue};

#[derive(Debug, Parser)]
#[command(name = "munsell-soil", version, about = "Estimate Munsell soil colors from captured colors and images")]
pub struct Cli {
    /// Key-value config file (database, illuminant, method, out, seed).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Use a sensor-scan CSV as the chip database instead of the bundled one.
    #[arg(long, global = true, value_name = "CSV")]
    pub scan: Option<PathBuf>,

    /// Reference white for Lab values: D65, C or D50.
    #[arg(long, global = true, value_parser = parse_illuminant)]
    pub illuminant: Option<Illuminant>,

    /// Output directory for written files [default: $MUNSELL_SOIL_OUT, else ./out].
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert an inline color to another color space.
    Convert(ConvertArgs),
    /// Rank chart chips by color difference to a color or image.
    Match(MatchArgs),
    /// Write the ΔE matrix between two hue pages with centerline statistics.
    Heatmap(HeatmapArgs),
    /// Score hue and hue-value-chroma accuracy over capture sets.
    Eval(EvalArgs),
    /// Export per-chip coordinates in a color space and report page separation.
    Scatter(ScatterArgs),
    /// Compare per-device Lab offsets against a reference.
    DeviceCompare(DeviceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Rgb,
    Lab,
    Lch,
    Xyz,
    Cmyk,
}

#[derive(Debug, Args)]
#[group(id = "color", required = true, multiple = false)]
pub struct ColorInput {
    /// 8-bit sRGB as R,G,B.
    #[arg(long, value_parser = parse_rgb, allow_hyphen_values = true)]
    pub rgb: Option<SrgbColor>,
    /// CIELab as L,a,b.
    #[arg(long, value_parser = parse_lab_triple, allow_hyphen_values = true)]
    pub lab: Option<[f64; 3]>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub input: ColorInput,
    /// Target space; Lab-family values print with 4 decimals.
    #[arg(long, value_enum)]
    pub to: Target,
}

#[derive(Debug, Args)]
#[group(id = "query", required = true, multiple = false)]
pub struct QueryInput {
    /// 8-bit sRGB query as R,G,B.
    #[arg(long, value_parser = parse_rgb, allow_hyphen_values = true)]
    pub rgb: Option<SrgbColor>,
    /// CIELab query as L,a,b.
    #[arg(long, value_parser = parse_lab_triple, allow_hyphen_values = true)]
    pub lab: Option<[f64; 3]>,
    /// Image whose central patch is the query.
    #[arg(long, value_name = "PATH")]
    pub image: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    #[command(flatten)]
    pub query: QueryInput,
    /// Patch statistic for --image: mean or median.
    #[arg(long, default_value = "mean", value_parser = parse_patch_stat)]
    pub statistic: PatchStatistic,
    /// ΔE method: de1976, de1994, de2000 or cmc.
    #[arg(long, value_parser = parse_method)]
    pub method: Option<DeltaEMethod>,
    /// Restrict candidates to these hue pages, comma separated.
    #[arg(long, value_parser = parse_page_list)]
    pub pages: Option<PageList>,
    /// Number of ranked chips to print.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct HeatmapArgs {
    /// Row page and column page, e.g. 2.5YR,5YR.
    #[arg(long, value_parser = parse_page_list)]
    pub pages: PageList,
    /// ΔE method: de1976, de1994, de2000 or cmc.
    #[arg(long, value_parser = parse_method)]
    pub method: Option<DeltaEMethod>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Capture-set manifests (CSV), space or comma separated.
    #[arg(long, num_args = 1.., value_delimiter = ',', value_name = "CSV")]
    pub sets: Vec<PathBuf>,
    /// Directory that manifest image paths are relative to; defaults to each manifest's directory.
    #[arg(long, value_name = "DIR")]
    pub image_dir: Option<PathBuf>,
    /// Add this many synthetic sets built from the database.
    #[arg(long, default_value_t = 0)]
    pub synthetic_sets: u32,
    /// Lab noise standard deviation for synthetic sets.
    #[arg(long, default_value_t = 2.0)]
    pub sigma: f64,
    /// First seed for synthetic sets; later sets use seed+1, seed+2, ...
    #[arg(long)]
    pub seed: Option<u64>,
    /// ΔE methods to compare, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_method, default_value = "de1976,de1994,de2000,cmc")]
    pub methods: Vec<DeltaEMethod>,
    /// Candidate hue pages, comma separated, or "all"; defaults to the seven soil pages.
    #[arg(long)]
    pub pages: Option<String>,
    /// Patch statistic for image rows: mean or median.
    #[arg(long, default_value = "mean", value_parser = parse_patch_stat)]
    pub statistic: PatchStatistic,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    /// rgb, cmyk, xyz, lch or lab.
    #[arg(long, value_parser = parse_space)]
    pub space: ColorSpace,
}

#[derive(Debug, Args)]
pub struct DeviceArgs {
    /// Capture-set manifests to compare, space or comma separated.
    #[arg(long, num_args = 1.., value_delimiter = ',', value_name = "CSV")]
    pub sets: Vec<PathBuf>,
    /// Add a synthetic device with this L,a,b offset; repeatable.
    #[arg(long = "synthetic-offset", value_parser = parse_lab_triple, allow_hyphen_values = true)]
    pub synthetic_offsets: Vec<[f64; 3]>,
    /// Noise for synthetic devices.
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    /// Seed for synthetic devices.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Reference manifest; the chip database is used when omitted.
    #[arg(long, value_name = "CSV")]
    pub reference: Option<PathBuf>,
    /// Directory that manifest image paths are relative to; defaults to each manifest's directory.
    #[arg(long, value_name = "DIR")]
    pub image_dir: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct PageList(pub Vec<MunsellHue>);

fn parse_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse::<f64>().map_err(|_| format!("{p:?} is not a number"))?;
        if !slot.is_finite() {
            return Err(format!("{p:?} is not finite"));
        }
    }
    Ok(out)
}

fn parse_lab_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    parse_triple(s)
}

fn parse_rgb(s: &str) -> std::result::Result<SrgbColor, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected R,G,B, got {s:?}"));
    }
    let mut ch = [0u8; 3];
    for (slot, p) in ch.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("{p:?} is not an integer in 0..=255"))?;
    }
    Ok(SrgbColor::from(ch))
}

fn parse_illuminant(s: &str) -> std::result::Result<Illuminant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<DeltaEMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_patch_stat(s: &str) -> std::result::Result<PatchStatistic, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_space(s: &str) -> std::result::Result<ColorSpace, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_page_list(s: &str) -> std::result::Result<PageList, String> {
    parse_pages(s).map(PageList).map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return 0;
            }
            if !e.render().to_string().contains("Usage:") {
                eprintln!("\n{}", usage_for(&args));
            }
            return 2;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            1
        }
    }
}

/// Usage line of the subcommand named in `args`, or of the whole tool.
fn usage_for(args: &[OsString]) -> String {
    use clap::CommandFactory;
    let mut cmd = Cli::command();
    cmd.build();
    let sub = args
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find(|a| cmd.find_subcommand(a).is_some())
        .map(str::to_string);
    match sub.and_then(|name| cmd.find_subcommand_mut(name)) {
        Some(sub) => sub.render_usage().to_string(),
        None => cmd.render_usage().to_string(),
    }
}

/// Runs a parsed command, printing human-readable output to `stdout`.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    if let Some(scan) = cli.scan {
        cfg.database = DatabaseSource::Scan(scan);
        cfg.validate()?;
    }
    if let Some(ill) = cli.illuminant {
        cfg.illuminant = ill;
    }
    if let Some(out) = cli.out {
        cfg.out_dir = out;
    }

    match cli.command {
        Command::Convert(args) => cmd_convert(&cfg, args, stdout),
        Command::Match(args) => cmd_match(&cfg, args, stdout),
        Command::Heatmap(args) => cmd_heatmap(&cfg, args, stdout),
        Command::Eval(args) => cmd_eval(&cfg, args, stdout),
        Command::Scatter(args) => cmd_scatter(&cfg, args, stdout),
        Command::DeviceCompare(args) => cmd_device(&cfg, args, stdout),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Fixed 4-decimal formatting that never prints a negative zero.
fn fixed4(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Up to 4 decimals with trailing zeros removed: 1 -> "1", 0.25 -> "0.25".
fn trimmed(v: f64) -> String {
    let s = fixed4(v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn cmd_convert(cfg: &Config, args: ConvertArgs, stdout: &mut dyn Write) -> Result<()> {
    let ill = cfg.illuminant;
    let (lab, srgb) = match (args.input.rgb, args.input.lab) {
        (Some(c), _) => (srgb_to_lab(c, ill), Some(c)),
        (None, Some([l, a, b])) => (LabColor::new(l, a, b, ill), None),
        (None, None) => unreachable!("clap requires one color input"),
    };
    let rendered = || {
        srgb.unwrap_or_else(|| {
            let mapped = lab_to_srgb(lab);
            if mapped.clipped {
                log::warn!("{lab} is outside the sRGB gamut; channels were clamped");
            }
            mapped.color
        })
    };
    let line = match args.to {
        Target::Lab => lab.to_array().map(fixed4).join(" "),
        Target::Lch => {
            let LchColor { l, c, h, .. } = lab_to_lch(lab);
            [l, c, h].map(fixed4).join(" ")
        }
        Target::Xyz => lab_to_xyz(lab).to_array().map(fixed4).join(" "),
        Target::Rgb => rendered().to_string(),
        Target::Cmyk => srgb_to_cmyk(rendered()).to_array().map(trimmed).join(" "),
    };
    writeln!(stdout, "{line}").map_err(io_err)
}

fn query_lab(args: &MatchArgs, ill: Illuminant) -> Result<LabColor> {
    if let Some(c) = args.query.rgb {
        return Ok(srgb_to_lab(c, ill));
    }
    if let Some([l, a, b]) = args.query.lab {
        return Ok(LabColor::new(l, a, b, ill));
    }
    let path = args.query.image.as_ref().expect("clap requires one query input");
    let patch = load_image_patch(path)?;
    Ok(srgb_to_lab(extract_patch_color(&patch, args.statistic), ill))
}

fn cmd_match(cfg: &Config, args: MatchArgs, stdout: &mut dyn Write) -> Result<()> {
    let db = cfg.load_database()?;
    let method = args.method.unwrap_or(cfg.method);
    let query = query_lab(&args, db.illuminant())?;
    let pages = args.pages.as_ref().map(|p| p.0.as_slice());
    let result = match_color(query, &db, method, pages)?;
    let k = usize::try_from(args.k).unwrap_or(usize::MAX);

    writeln!(stdout, "query {query}").map_err(io_err)?;
    writeln!(stdout, "{:>4}  {:<11} {:>9}", "rank", "munsell", method.key()).map_err(io_err)?;
    for (i, r) in result.top(k).iter().enumerate() {
        writeln!(stdout, "{:>4}  {:<11} {:>9}", i + 1, r.code.to_string(), fixed4(r.delta_e)).map_err(io_err)?;
    }
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn prepare_out(cfg: &Config) -> Result<&Path> {
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    Ok(&cfg.out_dir)
}

fn cmd_heatmap(cfg: &Config, args: HeatmapArgs, stdout: &mut dyn Write) -> Result<()> {
    let [page_a, page_b] = args.pages.0[..] else {
        return Err(Error::Parameter(format!(
            "--pages needs exactly two hue pages, got {}",
            args.pages.0.len()
        )));
    };
    let method = args.method.unwrap_or(cfg.method);
    let db = cfg.load_database()?;
    let grid = heatmap(&db, page_a, page_b, method)?;

    let dir = prepare_out(cfg)?;
    let stem = format!("heatmap_{page_a}_{page_b}_{}", method.key());
    let csv_path = dir.join(format!("{stem}.csv"));
    grid.write_csv(create(&csv_path)?)?;
    let json_path = dir.join(format!("{stem}.json"));
    let mut json = create(&json_path)?;
    writeln!(json, "{}", grid.metadata_json()?).map_err(|e| Error::io(&json_path, e))?;
    json.flush().map_err(|e| Error::io(&json_path, e))?;

    match centerline_stats(&grid) {
        Ok(s) => writeln!(
            stdout,
            "{page_a} vs {page_b} ({}): centerline n={} mean {} stdev {} min {} max {}",
            method.label(),
            s.count,
            fixed4(s.mean),
            fixed4(s.stdev),
            fixed4(s.min),
            fixed4(s.max)
        ),
        Err(_) => writeln!(stdout, "{page_a} vs {page_b}: no shared value/chroma cells"),
    }
    .map_err(io_err)?;
    if let Some(off) = grid.off_centerline_mean() {
        writeln!(stdout, "off-centerline mean {}", fixed4(off)).map_err(io_err)?;
    }
    writeln!(stdout, "wrote {} and {}", csv_path.display(), json_path.display()).map_err(io_err)
}

fn load_sets(paths: &[PathBuf], image_dir: Option<&Path>, stat: PatchStatistic) -> Result<Vec<CaptureSet>> {
    paths
        .iter()
        .map(|p| {
            let dir = image_dir
                .map(Path::to_path_buf)
                .unwrap_or_else(|| p.parent().map(Path::to_path_buf).unwrap_or_default());
            load_capture_set_with(p, dir, &CaptureMeta::default(), stat)
        })
        .collect()
}

fn cmd_eval(cfg: &Config, args: EvalArgs, stdout: &mut dyn Write) -> Result<()> {
    if args.sets.is_empty() && args.synthetic_sets == 0 {
        return Err(Error::Parameter("give --sets and/or --synthetic-sets".into()));
    }
    let db = cfg.load_database()?;
    let mut sets = load_sets(&args.sets, args.image_dir.as_deref(), args.statistic)?;
    let seed = args.seed.unwrap_or(cfg.seed);
    for i in 0..u64::from(args.synthetic_sets) {
        sets.push(synthesize_capture_set(&db, args.sigma, [0.0; 3], seed.wrapping_add(i))?);
    }
    let pages: Option<Vec<MunsellHue>> = match args.pages.as_deref() {
        None => Some(soil_pages()),
        Some(p) if p.eq_ignore_ascii_case("all") => None,
        Some(p) => Some(parse_pages(p)?),
    };
    let report = evaluate_on_pages(&sets, &db, &args.methods, pages.as_deref())?;

    let dir = prepare_out(cfg)?;
    let tables = dir.join("accuracy.csv");
    report.write_tables_csv(create(&tables)?)?;
    let records = dir.join("accuracy_records.csv");
    report.write_records_csv(create(&records)?)?;

    stdout.write_all(report.tables_csv()?.as_bytes()).map_err(io_err)?;
    writeln!(stdout, "wrote {} and {}", tables.display(), records.display()).map_err(io_err)
}

fn cmd_scatter(cfg: &Config, args: ScatterArgs, stdout: &mut dyn Write) -> Result<()> {
    let db = cfg.load_database()?;
    let export = scatter_export(&db, args.space);
    let dir = prepare_out(cfg)?;
    let path = dir.join(format!("scatter_{}.csv", args.space));
    export.write_csv(create(&path)?)?;

    let clipped = export.rows.iter().filter(|r| r.clipped).count();
    writeln!(stdout, "{} chips in {}, {clipped} outside the sRGB gamut", export.len(), args.space).map_err(io_err)?;
    match clumping_index(&export) {
        Ok(c) => {
            writeln!(stdout, "clumping index {:.6}", c.overall).map_err(io_err)?;
            for (page, v) in &c.per_page {
                writeln!(stdout, "  {:<6} {v:.6}", page.to_string()).map_err(io_err)?;
            }
        }
        Err(e) => log::warn!("clumping index unavailable: {e}"),
    }
    writeln!(stdout, "wrote {}", path.display()).map_err(io_err)
}

fn cmd_device(cfg: &Config, args: DeviceArgs, stdout: &mut dyn Write) -> Result<()> {
    if args.sets.is_empty() && args.synthetic_offsets.is_empty() {
        return Err(Error::Parameter("give --sets and/or --synthetic-offset".into()));
    }
    let db: ChipDatabase = cfg.load_database()?;
    let mut sets = load_sets(&args.sets, args.image_dir.as_deref(), PatchStatistic::Mean)?;
    let seed = args.seed.unwrap_or(cfg.seed);
    for (i, offset) in args.synthetic_offsets.iter().enumerate() {
        let mut set = synthesize_capture_set(&db, args.sigma, *offset, seed.wrapping_add(i as u64))?;
        let name = offset.map(trimmed).join(",");
        set.label = format!("synthetic-offset({name})");
        set.device = format!("synthetic {}", i + 1);
        sets.push(set);
    }
    let reference_set = match &args.reference {
        Some(p) => Some(load_sets(std::slice::from_ref(p), args.image_dir.as_deref(), PatchStatistic::Mean)?.remove(0)),
        None => None,
    };
    let reference = match &reference_set {
        Some(r) => OffsetReference::Set(r),
        None => OffsetReference::Database(&db),
    };
    let report = device_offsets(&sets, reference)?;

    let dir = prepare_out(cfg)?;
    let summary = dir.join("device_offsets.csv");
    report.write_summary_csv(create(&summary)?)?;
    let deltas = dir.join("device_deltas.csv");
    report.write_deltas_csv(create(&deltas)?)?;

    writeln!(stdout, "reference: {}", report.reference).map_err(io_err)?;
    for d in &report.devices {
        writeln!(
            stdout,
            "{} [{}]: dL {} da {} db {} (stdev {} {} {})",
            d.set_label,
            d.device,
            fixed4(d.mean[0]),
            fixed4(d.mean[1]),
            fixed4(d.mean[2]),
            fixed4(d.stdev[0]),
            fixed4(d.stdev[1]),
            fixed4(d.stdev[2])
        )
        .map_err(io_err)?;
    }
    writeln!(stdout, "wrote {} and {}", summary.display(), deltas.display()).map_err(io_err)
}
