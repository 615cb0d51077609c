//! Exhaustive nearest-chip matching.
//!
//! Each chip is the reference and the query is the sample, so the
//! reference-anchored formulas (CIE94, CMC) weight by chip chroma.

use serde::Serialize;

use super::code::{MunsellCode, MunsellHue};
use super::database::ChipDatabase;
use crate::color::LabColor;
use crate::delta_e::DeltaEMethod;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankedChip {
    pub code: MunsellCode,
    pub delta_e: f64,
}

/// All candidate chips ranked by ascending ΔE; ties fall back to canonical
/// chip order (hue circle, value, chroma).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchResult {
    pub query: LabColor,
    pub ranked: Vec<RankedChip>,
    pub method: DeltaEMethod,
}

impl MatchResult {
    pub fn best(&self) -> &RankedChip {
        &self.ranked[0]
    }

    pub fn top(&self, k: usize) -> &[RankedChip] {
        &self.ranked[..k.min(self.ranked.len())]
    }
}

/// Ranks the (optionally page-filtered) chips of `db` with an arbitrary
/// `score(reference, sample)` function.
pub fn rank_by<F>(query: &LabColor, db: &ChipDatabase, pages: Option<&[MunsellHue]>, score: F) -> Result<Vec<RankedChip>>
where
    F: Fn(&LabColor, &LabColor) -> f64,
{
    let mut ranked: Vec<RankedChip> = db
        .chips()
        .iter()
        .filter(|c| pages.is_none_or(|p| p.contains(&c.code.hue)))
        .map(|c| RankedChip {
            code: c.code,
            delta_e: score(&c.lab, query),
        })
        .collect();
    if ranked.is_empty() {
        return Err(Error::Domain(match pages {
            Some(p) => format!(
                "no chips to match against on pages {}",
                p.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(",")
            ),
            None => "no chips to match against".into(),
        }));
    }
    ranked.sort_by(|a, b| a.delta_e.total_cmp(&b.delta_e).then(a.code.cmp(&b.code)));
    Ok(ranked)
}

/// Matches `query` against every chip of `db` (restricted to `pages` if given).
pub fn match_color(
    query: LabColor,
    db: &ChipDatabase,
    method: DeltaEMethod,
    pages: Option<&[MunsellHue]>,
) -> Result<MatchResult> {
    method.validate()?;
    if !query.is_finite() {
        return Err(Error::Domain(format!("query {query} is not finite")));
    }
    if !db.is_empty() && query.illuminant != db.illuminant() {
        return Err(Error::IlluminantMismatch {
            expected: db.illuminant(),
            found: query.illuminant,
        });
    }
    let ranked = rank_by(&query, db, pages, |r, s| method.compute(r, s))?;
    Ok(MatchResult { query, ranked, method })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchScore {
    /// Top match is on the same hue page as the truth.
    pub hue_correct: bool,
    /// Top match is exactly the truth chip.
    pub hvc_correct: bool,
}

pub fn score_match(result: &MatchResult, truth: &MunsellCode) -> MatchScore {
    score_code(&result.best().code, truth)
}

pub(crate) fn score_code(predicted: &MunsellCode, truth: &MunsellCode) -> MatchScore {
    MatchScore {
        hue_correct: predicted.hue == truth.hue,
        hvc_correct: predicted == truth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Illuminant;
    use crate::munsell::{soil_pages, Chip, ChipSource};

    fn code(s: &str) -> MunsellCode {
        s.parse().unwrap()
    }

    fn chip(c: &str, l: f64, a: f64, b: f64) -> Chip {
        Chip {
            code: code(c),
            lab: LabColor::d65(l, a, b),
            source: ChipSource::SensorScan,
            replicates: vec![],
        }
    }

    #[test]
    fn self_match_ranks_first() {
        let db = ChipDatabase::bundled().unwrap();
        let target = db.get(&code("10YR 5/4")).unwrap().lab;
        let res = match_color(target, &db, DeltaEMethod::DE2000, None).unwrap();
        assert_eq!(res.best().code, code("10YR 5/4"));
        assert_eq!(res.best().delta_e, 0.0);
        assert_eq!(res.ranked.len(), 238);
        assert!(res.ranked.windows(2).all(|w| w[0].delta_e <= w[1].delta_e));
    }

    #[test]
    fn ties_follow_canonical_order() {
        // Listed out of canonical order on purpose.
        let db = ChipDatabase::new(vec![chip("5YR 5/6", 50.0, 1.0, 0.0), chip("10R 5/6", 50.0, -1.0, 0.0)]).unwrap();
        let res = match_color(LabColor::d65(50.0, 0.0, 0.0), &db, DeltaEMethod::De1976, None).unwrap();
        assert_eq!(res.ranked[0].delta_e, res.ranked[1].delta_e);
        assert_eq!(res.best().code, code("10R 5/6"));
    }

    #[test]
    fn perturbed_chip_still_first() {
        let db = ChipDatabase::bundled().unwrap();
        let base = db.get(&code("7.5YR 6/4")).unwrap().lab;
        let query = LabColor::d65(base.l + 0.2, base.a - 0.1, base.b + 0.1);
        // brute-force oracle over every chip
        let oracle = db
            .chips()
            .iter()
            .min_by(|x, y| {
                DeltaEMethod::DE2000
                    .compute(&x.lab, &query)
                    .total_cmp(&DeltaEMethod::DE2000.compute(&y.lab, &query))
            })
            .unwrap()
            .code;
        assert_eq!(oracle, code("7.5YR 6/4"));
        for m in DeltaEMethod::ALL {
            assert_eq!(match_color(query, &db, m, None).unwrap().best().code, oracle, "{m:?}");
        }
    }

    #[test]
    fn page_filter() {
        let db = ChipDatabase::bundled().unwrap();
        let pages = [code("5YR 5/6").hue];
        let target = db.get(&code("10YR 5/4")).unwrap().lab;
        let res = match_color(target, &db, DeltaEMethod::DE2000, Some(&pages)).unwrap();
        assert_eq!(res.ranked.len(), 34);
        assert!(res.ranked.iter().all(|r| r.code.hue == pages[0]));
    }

    #[test]
    fn empty_candidates_error() {
        let db = ChipDatabase::bundled().unwrap();
        let pages = ["5GY".parse().unwrap()];
        assert!(match_color(LabColor::d65(50.0, 0.0, 0.0), &db, DeltaEMethod::DE2000, Some(&pages)).is_err());
        let empty = ChipDatabase::default();
        assert!(match_color(LabColor::d65(50.0, 0.0, 0.0), &empty, DeltaEMethod::DE2000, None).is_err());
    }

    #[test]
    fn query_illuminant_must_match() {
        let db = ChipDatabase::bundled().unwrap();
        let q = LabColor::new(50.0, 0.0, 0.0, Illuminant::C);
        assert!(matches!(
            match_color(q, &db, DeltaEMethod::DE2000, Some(&soil_pages())),
            Err(Error::IlluminantMismatch { .. })
        ));
    }

    #[test]
    fn scoring() {
        let db = ChipDatabase::new(vec![chip("5YR 5/6", 50.0, 20.0, 30.0)]).unwrap();
        let res = match_color(LabColor::d65(50.0, 20.0, 30.0), &db, DeltaEMethod::DE2000, None).unwrap();
        assert_eq!(
            score_match(&res, &code("5YR 5/8")),
            MatchScore {
                hue_correct: true,
                hvc_correct: false
            }
        );
        assert_eq!(
            score_match(&res, &code("5YR 5/6")),
            MatchScore {
                hue_correct: true,
                hvc_correct: true
            }
        );
        assert_eq!(score_code(&code("7.5YR 5/6"), &code("5YR 5/6")), MatchScore {
            hue_correct: false,
            hvc_correct: false
        });
    }
}
