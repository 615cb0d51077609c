//! Cross-page ΔE heatmaps and their centerline statistics.
//!
//! Rows come from one hue page and columns from another, both ordered by
//! value descending then chroma ascending. The centerline pairs chips with
//! identical value and chroma, e.g. `2.5YR 8/1` with `5YR 8/1`.

use std::io::Write;

use serde::Serialize;

use crate::delta_e::DeltaEMethod;
use crate::error::{Error, Result};
use crate::munsell::{Chip, ChipDatabase, MunsellCode, MunsellHue};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CenterlineCell {
    pub row: usize,
    pub col: usize,
    pub row_code: MunsellCode,
    pub col_code: MunsellCode,
    pub delta_e: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapGrid {
    pub page_a: MunsellHue,
    pub page_b: MunsellHue,
    pub row_chips: Vec<MunsellCode>,
    pub col_chips: Vec<MunsellCode>,
    /// `values[i][j]` is ΔE with row chip `i` as reference and column chip `j` as sample.
    pub values: Vec<Vec<f64>>,
    pub method: DeltaEMethod,
    pub centerline: Vec<CenterlineCell>,
}

fn heatmap_order(chips: &mut [&Chip]) {
    chips.sort_by(|x, y| {
        y.code
            .value()
            .total_cmp(&x.code.value())
            .then(x.code.chroma().cmp(&y.code.chroma()))
    });
}

/// Full ΔE matrix between two hue pages of `db`.
pub fn heatmap(db: &ChipDatabase, page_a: MunsellHue, page_b: MunsellHue, method: DeltaEMethod) -> Result<HeatmapGrid> {
    method.validate()?;
    for page in [page_a, page_b] {
        if !db.has_page(&page) {
            return Err(Error::Domain(format!("page {page} is not in the chip database")));
        }
    }
    let mut rows = db.page(&page_a);
    let mut cols = db.page(&page_b);
    heatmap_order(&mut rows);
    heatmap_order(&mut cols);

    let values: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| method.compute(&r.lab, &c.lab)).collect())
        .collect();

    let centerline = rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            cols.iter()
                .position(|c| c.code.same_value_chroma(&r.code))
                .map(|j| CenterlineCell {
                    row: i,
                    col: j,
                    row_code: r.code,
                    col_code: cols[j].code,
                    delta_e: values[i][j],
                })
        })
        .collect();

    Ok(HeatmapGrid {
        page_a,
        page_b,
        row_chips: rows.iter().map(|c| c.code).collect(),
        col_chips: cols.iter().map(|c| c.code).collect(),
        values,
        method,
        centerline,
    })
}

impl HeatmapGrid {
    pub fn centerline_values(&self) -> Vec<f64> {
        self.centerline.iter().map(|c| c.delta_e).collect()
    }

    fn is_centerline(&self, i: usize, j: usize) -> bool {
        self.centerline.iter().any(|c| c.row == i && c.col == j)
    }

    /// Mean of every cell not on the centerline; `None` if there are none.
    pub fn off_centerline_mean(&self) -> Option<f64> {
        let mut sum = 0.0;
        let mut n = 0usize;
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !self.is_centerline(i, j) {
                    sum += v;
                    n += 1;
                }
            }
        }
        (n > 0).then(|| sum / n as f64)
    }

    /// Matrix CSV: header of column codes, one row per row chip, 4 decimals.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![format!("{} \\ {}", self.page_a, self.page_b)];
        header.extend(self.col_chips.iter().map(|c| c.to_string()));
        w.write_record(&header)?;
        for (code, row) in self.row_chips.iter().zip(&self.values) {
            let mut rec = vec![code.to_string()];
            rec.extend(row.iter().map(|v| format!("{v:.4}")));
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io("<heatmap csv>", e))?;
        Ok(())
    }

    /// JSON sidecar: method, pages, centerline cells and statistics.
    pub fn metadata_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Meta<'a> {
            method: &'static str,
            label: &'static str,
            parameters: DeltaEMethod,
            page_a: MunsellHue,
            page_b: MunsellHue,
            rows: usize,
            cols: usize,
            centerline: &'a [CenterlineCell],
            centerline_stats: Option<CenterlineStats>,
            off_centerline_mean: Option<f64>,
        }
        let meta = Meta {
            method: self.method.key(),
            label: self.method.label(),
            parameters: self.method,
            page_a: self.page_a,
            page_b: self.page_b,
            rows: self.row_chips.len(),
            cols: self.col_chips.len(),
            centerline: &self.centerline,
            centerline_stats: centerline_stats(self).ok(),
            off_centerline_mean: self.off_centerline_mean(),
        };
        Ok(serde_json::to_string_pretty(&meta)?)
    }
}

/// Summary of centerline ΔE values. `stdev` is the population standard
/// deviation; `sample_stdev` uses n - 1 and is NaN for a single value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CenterlineStats {
    pub count: usize,
    pub mean: f64,
    pub stdev: f64,
    pub sample_stdev: f64,
    pub min: f64,
    pub max: f64,
}

impl CenterlineStats {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("empty centerline".into()));
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(CenterlineStats {
            count: values.len(),
            // keep min <= mean <= max despite summation rounding
            mean: mean.clamp(min, max),
            stdev: (ss / n).sqrt(),
            sample_stdev: if values.len() > 1 { (ss / (n - 1.0)).sqrt() } else { f64::NAN },
            min,
            max,
        })
    }
}

pub fn centerline_stats(grid: &HeatmapGrid) -> Result<CenterlineStats> {
    CenterlineStats::from_values(&grid.centerline_values())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hue(s: &str) -> MunsellHue {
        s.parse().unwrap()
    }

    #[test]
    fn same_page_centerline_is_zero() {
        let db = ChipDatabase::bundled().unwrap();
        let g = heatmap(&db, hue("5YR"), hue("5YR"), DeltaEMethod::DE2000).unwrap();
        assert_eq!(g.centerline.len(), 34);
        assert!(g.centerline_values().iter().all(|&v| v == 0.0));
        let s = centerline_stats(&g).unwrap();
        assert_eq!((s.mean, s.stdev), (0.0, 0.0));
    }

    #[test]
    fn ordering_and_shape() {
        let db = ChipDatabase::bundled().unwrap();
        let g = heatmap(&db, hue("2.5YR"), hue("5YR"), DeltaEMethod::DE2000).unwrap();
        assert_eq!(g.values.len(), 34);
        assert!(g.values.iter().all(|r| r.len() == 34));
        assert_eq!(g.row_chips[0].to_string(), "2.5YR 8/1");
        assert_eq!(g.row_chips[5].to_string(), "2.5YR 8/8");
        assert_eq!(g.row_chips[33].to_string(), "2.5YR 3/6");
        assert_eq!(g.centerline[0].col_code.to_string(), "5YR 8/1");
        assert!(g.values.iter().flatten().all(|&v| v >= 0.0));
    }

    #[test]
    fn missing_page_is_error() {
        let db = ChipDatabase::bundled().unwrap();
        assert!(heatmap(&db, hue("2.5YR"), hue("5GY"), DeltaEMethod::DE2000).is_err());
    }

    #[test]
    fn stats_examples() {
        let s = CenterlineStats::from_values(&[0.0, 0.0, 0.0]).unwrap();
        assert_eq!((s.mean, s.stdev), (0.0, 0.0));
        let s = CenterlineStats::from_values(&[1.0, 3.0]).unwrap();
        assert_eq!((s.mean, s.stdev, s.min, s.max), (2.0, 1.0, 1.0, 3.0));
        assert!((s.sample_stdev - 2f64.sqrt()).abs() < 1e-15);
        assert!(CenterlineStats::from_values(&[]).is_err());
    }

    #[test]
    fn csv_and_json_outputs() {
        let db = ChipDatabase::bundled().unwrap();
        let g = heatmap(&db, hue("2.5YR"), hue("5YR"), DeltaEMethod::De1976).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 35);
        assert!(text.starts_with("2.5YR \\ 5YR,5YR 8/1,"));
        let json: serde_json::Value = serde_json::from_str(&g.metadata_json().unwrap()).unwrap();
        assert_eq!(json["method"], "de1976");
        assert_eq!(json["centerline"].as_array().unwrap().len(), 34);
        assert!(json["centerline_stats"]["mean"].as_f64().unwrap() > 0.0);
    }
}
