//! Munsell notation, the soil chart chip database, and nearest-chip matching.

mod code;
mod database;
mod matching;

pub use code::{parse_munsell, parse_pages, HueFamily, HueStep, MunsellCode, MunsellHue};
pub use database::{
    build_chip_database, load_chip_database, load_chip_database_from_reader, soil_chart_layout, soil_pages, Chip,
    ChipDatabase, ChipSource, RenotationRecord, ReplicateStatistic, BUNDLED_RENOTATION, SOIL_PAGES,
};
pub use matching::{match_color, rank_by, score_match, MatchResult, MatchScore, RankedChip};
pub(crate) use matching::score_code;
