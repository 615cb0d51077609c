use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The ten Munsell hue families in hue-circle order starting from red.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HueFamily {
    R,
    YR,
    Y,
    GY,
    G,
    BG,
    B,
    PB,
    P,
    RP,
}

impl HueFamily {
    pub const ALL: [HueFamily; 10] = [
        HueFamily::R,
        HueFamily::YR,
        HueFamily::Y,
        HueFamily::GY,
        HueFamily::G,
        HueFamily::BG,
        HueFamily::B,
        HueFamily::PB,
        HueFamily::P,
        HueFamily::RP,
    ];

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn symbol(self) -> &'static str {
        match self {
            HueFamily::R => "R",
            HueFamily::YR => "YR",
            HueFamily::Y => "Y",
            HueFamily::GY => "GY",
            HueFamily::G => "G",
            HueFamily::BG => "BG",
            HueFamily::B => "B",
            HueFamily::PB => "PB",
            HueFamily::P => "P",
            HueFamily::RP => "RP",
        }
    }

    fn from_symbol(s: &str) -> Option<Self> {
        HueFamily::ALL.into_iter().find(|f| f.symbol() == s)
    }
}

/// Position of a hue within its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HueStep {
    S2_5,
    S5,
    S7_5,
    S10,
}

impl HueStep {
    pub const ALL: [HueStep; 4] = [HueStep::S2_5, HueStep::S5, HueStep::S7_5, HueStep::S10];

    pub fn value(self) -> f64 {
        match self {
            HueStep::S2_5 => 2.5,
            HueStep::S5 => 5.0,
            HueStep::S7_5 => 7.5,
            HueStep::S10 => 10.0,
        }
    }

    fn from_value(v: f64) -> Option<Self> {
        HueStep::ALL.into_iter().find(|s| s.value() == v)
    }

    fn label(self) -> &'static str {
        match self {
            HueStep::S2_5 => "2.5",
            HueStep::S5 => "5",
            HueStep::S7_5 => "7.5",
            HueStep::S10 => "10",
        }
    }
}

/// A hue designation such as `5YR`; also identifies one chart page.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MunsellHue {
    pub step: HueStep,
    pub family: HueFamily,
}

impl MunsellHue {
    pub const fn new(step: HueStep, family: HueFamily) -> Self {
        MunsellHue { step, family }
    }

    /// Index on the 40-position hue circle, 2.5R at 1 and 10RP wrapping to 0.
    fn circle_index(self) -> u8 {
        (self.family.index() * 4 + self.step as u8 + 1) % 40
    }

    /// Position on the 100-step Munsell hue circle, in [0, 100).
    ///
    /// `family_index * 10 + step` with R at index 0, so 10R is 10 and 2.5YR
    /// is 12.5; 10RP wraps to 0.
    pub fn hue_degrees(self) -> f64 {
        self.circle_index() as f64 * 2.5
    }
}

impl Ord for MunsellHue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.circle_index().cmp(&other.circle_index())
    }
}

impl PartialOrd for MunsellHue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MunsellHue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.step.label(), self.family.symbol())
    }
}

impl FromStr for MunsellHue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let (hue, rest) = split_hue(s, trimmed)?;
        if !rest.is_empty() {
            return Err(parse_error(s, rest, "unexpected text after hue"));
        }
        Ok(hue)
    }
}

fn parse_error(input: &str, token: &str, reason: &'static str) -> Error {
    Error::MunsellParse {
        input: input.to_string(),
        token: token.to_string(),
        reason,
    }
}

/// Splits the leading hue (`2.5YR`) from the remainder of `text`.
fn split_hue<'a>(input: &str, text: &'a str) -> Result<(MunsellHue, &'a str)> {
    let num_end = text
        .find(|c: char| !(c.is_ascii_digit() || c == '.'))
        .unwrap_or(text.len());
    let family_end = text[num_end..]
        .find(|c: char| !c.is_ascii_alphabetic())
        .map_or(text.len(), |i| num_end + i);
    let number = &text[..num_end];
    let letters = &text[num_end..family_end];

    if number.is_empty() {
        let token = if letters.is_empty() { text } else { letters };
        let reason = if letters.eq_ignore_ascii_case("N") {
            "neutral chips have no chart hue"
        } else {
            "missing hue step"
        };
        return Err(parse_error(input, token, reason));
    }
    let step = number
        .parse::<f64>()
        .ok()
        .and_then(HueStep::from_value)
        .ok_or_else(|| parse_error(input, number, "hue step must be 2.5, 5, 7.5 or 10"))?;
    let family = HueFamily::from_symbol(&letters.to_ascii_uppercase())
        .ok_or_else(|| parse_error(input, letters, "unknown hue family"))?;
    Ok((MunsellHue { step, family }, &text[family_end..]))
}

/// Lowest and highest chart values, in half steps.
const VALUE_HALVES: std::ops::RangeInclusive<u8> = 4..=19;
const CHROMA_RANGE: std::ops::RangeInclusive<u8> = 1..=8;

/// One chart chip notation, e.g. `5YR 5/6`.
///
/// Value is stored in half steps (2, 2.5, ..., 9.5) and chroma as an integer
/// chart level (1..=8), so codes are exact keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MunsellCode {
    pub hue: MunsellHue,
    value_halves: u8,
    chroma: u8,
}

impl MunsellCode {
    pub fn new(hue: MunsellHue, value: f64, chroma: u8) -> Result<Self> {
        let halves = value * 2.0;
        if halves.fract() != 0.0 || !(*VALUE_HALVES.start() as f64..=*VALUE_HALVES.end() as f64).contains(&halves) {
            return Err(Error::Domain(format!("Munsell value {value} is not a chart level (2 to 9.5 in half steps)")));
        }
        if !CHROMA_RANGE.contains(&chroma) {
            return Err(Error::Domain(format!("Munsell chroma {chroma} is not a chart level (1 to 8)")));
        }
        Ok(MunsellCode {
            hue,
            value_halves: halves as u8,
            chroma,
        })
    }

    pub fn value(&self) -> f64 {
        self.value_halves as f64 / 2.0
    }

    pub fn chroma(&self) -> u8 {
        self.chroma
    }

    pub fn hue_degrees(&self) -> f64 {
        self.hue.hue_degrees()
    }

    /// Dashed form used in file names and figure captions, e.g. `2.5YR-8-1`.
    pub fn dashed(&self) -> String {
        format!("{}-{}-{}", self.hue, format_value(self.value()), self.chroma)
    }

    /// Whether `other` sits at the same value and chroma (possibly on another page).
    pub fn same_value_chroma(&self, other: &MunsellCode) -> bool {
        self.value_halves == other.value_halves && self.chroma == other.chroma
    }

    #[cfg(test)]
    pub(crate) fn value_halves(&self) -> u8 {
        self.value_halves
    }
}

fn format_value(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{}", v as u32)
    } else {
        format!("{v}")
    }
}

/// Canonical order: hue circle, then value, then chroma.
impl Ord for MunsellCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.hue
            .cmp(&other.hue)
            .then(self.value_halves.cmp(&other.value_halves))
            .then(self.chroma.cmp(&other.chroma))
    }
}

impl PartialOrd for MunsellCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MunsellCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}/{}", self.hue, format_value(self.value()), self.chroma)
    }
}

/// Parses `5YR 5/6`, `2.5YR-8-1` or `10R 4/8` style notation.
pub fn parse_munsell(text: &str) -> Result<MunsellCode> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(parse_error(text, "", "empty notation"));
    }
    let (hue, rest) = split_hue(text, trimmed)?;
    let rest = rest
        .strip_prefix('-')
        .unwrap_or(rest)
        .trim_start();
    if rest.is_empty() {
        return Err(parse_error(text, rest, "missing value/chroma"));
    }
    let (value_tok, chroma_tok) = rest
        .split_once(['/', '-'])
        .ok_or_else(|| parse_error(text, rest, "expected value/chroma"))?;
    let value_tok = value_tok.trim();
    let chroma_tok = chroma_tok.trim();

    let value: f64 = value_tok
        .parse()
        .map_err(|_| parse_error(text, value_tok, "value is not a number"))?;
    if (value * 2.0).fract() != 0.0 || !(2.0..=9.5).contains(&value) {
        return Err(parse_error(text, value_tok, "value must be 2 to 9.5 in half steps"));
    }
    let chroma: u8 = chroma_tok
        .parse()
        .map_err(|_| parse_error(text, chroma_tok, "chroma is not an integer"))?;
    if !CHROMA_RANGE.contains(&chroma) {
        return Err(parse_error(text, chroma_tok, "chroma must be 1 to 8"));
    }
    MunsellCode::new(hue, value, chroma)
}

impl FromStr for MunsellCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_munsell(s)
    }
}

impl Serialize for MunsellCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MunsellCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for MunsellHue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MunsellHue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated page list such as `2.5YR,5YR`.
pub fn parse_pages(list: &str) -> Result<Vec<MunsellHue>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}
