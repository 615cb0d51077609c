//! Run configuration shared by the command-line tool and examples.
//!
//! The optional config file is plain `key = value` lines; blank lines and
//! lines starting with `#` are ignored. Recognized keys:
//!
//! ```text
//! database   = bundled            # or a path to a sensor-scan CSV
//! illuminant = D65                # D65, C or D50
//! method     = de2000             # de1976, de1994, de2000 or cmc
//! out        = results            # output directory
//! seed       = 42
//! ```

use std::path::{Path, PathBuf};

use crate::color::Illuminant;
use crate::delta_e::DeltaEMethod;
use crate::error::{Error, Result};
use crate::munsell::{build_chip_database, load_chip_database, soil_pages, ChipDatabase, ReplicateStatistic, BUNDLED_RENOTATION};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "MUNSELL_SOIL_OUT";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum DatabaseSource {
    #[default]
    Bundled,
    Scan(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub database: DatabaseSource,
    pub illuminant: Illuminant,
    pub method: DeltaEMethod,
    pub out_dir: PathBuf,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            database: DatabaseSource::Bundled,
            illuminant: Illuminant::D65,
            method: DeltaEMethod::DE2000,
            out_dir: default_out_dir(),
            seed: 0,
        }
    }
}

/// `$MUNSELL_SOIL_OUT` if set, else `./out`.
pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("out"))
}

impl Config {
    /// Reads a config file on top of the defaults. Relative database paths
    /// are resolved against the file's directory.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Config::parse(&text, base)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut cfg = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "database" => cfg.database = parse_database(value, base),
                "illuminant" => cfg.illuminant = value.parse()?,
                "method" => cfg.method = value.parse()?,
                "out" => cfg.out_dir = PathBuf::from(value),
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| Error::Config(format!("line {}: seed must be a non-negative integer", n + 1)))?
                }
                other => return Err(Error::Config(format!("line {}: unknown key {other:?}", n + 1))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let DatabaseSource::Scan(p) = &self.database {
            if !p.is_file() {
                return Err(Error::Config(format!("database file {} does not exist", p.display())));
            }
        }
        self.method.validate()
    }

    /// Loads the configured chip database under the configured illuminant.
    ///
    /// Scan databases carry their own Lab values and must be D65.
    pub fn load_database(&self) -> Result<ChipDatabase> {
        match &self.database {
            DatabaseSource::Bundled => build_chip_database(BUNDLED_RENOTATION.as_bytes(), self.illuminant, &soil_pages()),
            DatabaseSource::Scan(p) => {
                let db = load_chip_database(p, ReplicateStatistic::Mean)?;
                if !db.is_empty() && db.illuminant() != self.illuminant {
                    return Err(Error::IlluminantMismatch {
                        expected: self.illuminant,
                        found: db.illuminant(),
                    });
                }
                Ok(db)
            }
        }
    }
}

fn parse_database(value: &str, base: &Path) -> DatabaseSource {
    if value.eq_ignore_ascii_case("bundled") {
        DatabaseSource::Bundled
    } else {
        let p = Path::new(value);
        DatabaseSource::Scan(if p.is_absolute() { p.to_path_buf() } else { base.join(p) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_de2000_d65() {
        let c = Config::parse("", Path::new(".")).unwrap();
        assert_eq!(c.method, DeltaEMethod::DE2000);
        assert_eq!(c.illuminant, Illuminant::D65);
        assert_eq!(c.database, DatabaseSource::Bundled);
    }

    #[test]
    fn parses_keys_and_comments() {
        let c = Config::parse("# run\nmethod = cmc\nilluminant=C  # chart white\nseed = 9\nout = res\n", Path::new(".")).unwrap();
        assert_eq!(c.method.key(), "cmc");
        assert_eq!(c.illuminant, Illuminant::C);
        assert_eq!(c.seed, 9);
        assert_eq!(c.out_dir, PathBuf::from("res"));
        assert_eq!(c.load_database().unwrap().illuminant(), Illuminant::C);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::parse("colour = red", Path::new(".")).is_err());
        assert!(Config::parse("method = de1999", Path::new(".")).is_err());
        assert!(Config::parse("seed = -1", Path::new(".")).is_err());
        assert!(Config::parse("database = /no/such/scan.csv", Path::new(".")).is_err());
        assert!(Config::parse("just words", Path::new(".")).is_err());
    }
}
