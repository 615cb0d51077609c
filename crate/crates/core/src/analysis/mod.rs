//! Cross-page heatmaps, accuracy tables, scatter exports and device offsets.

mod accuracy;
mod device;
mod heatmap;
mod scatter;

pub use accuracy::{evaluate, evaluate_on_pages, AccuracyEntry, AccuracyReport, MatchRecord};
pub use device::{device_offsets, ChipDelta, DeviceOffsetReport, DeviceOffsets, OffsetReference};
pub use heatmap::{centerline_stats, heatmap, CenterlineCell, CenterlineStats, HeatmapGrid};
pub use scatter::{clumping_index, scatter_export, ClumpingIndex, ColorSpace, ScatterExport, ScatterRow};
