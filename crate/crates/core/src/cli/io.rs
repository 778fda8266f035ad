//! JSON file formats.
//!
//! Grid file:
//! `{"level": k, "origin": [i, j], "width": w, "height": h, "values": [...]}`
//! with row-major values (first index fastest), each a number or `[re, im]`.
//!
//! Sum file:
//! `{"terms": [{"coeff": [re, im], "freq": [[re, im], [re, im]]}, ...]}`.
//!
//! Sequence file (1-D data): `{"level": k, "origin": i, "values": [...]}`,
//! `origin` optional (default 0).
//!
//! Floats are written with 17 significant digits.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::expspace::{ExponentialSum, Frequency, FrequencyVector, GridSamples, Window};
use crate::subdivision::LevelSequence;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Value> for Complex64 {
    fn from(v: Value) -> Self {
        match v {
            Value::Real(x) => Complex64::new(x, 0.0),
            Value::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

/// Renders values as plain numbers when every imaginary part is exactly zero.
pub fn render_values(values: &[Complex64]) -> Vec<Value> {
    if values.iter().all(|v| v.im == 0.0) {
        values.iter().map(|v| Value::Real(v.re)).collect()
    } else {
        values.iter().map(|&v| Value::Complex(pair(v))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    pub level: u32,
    pub origin: [i64; 2],
    pub width: usize,
    pub height: usize,
    pub values: Vec<Value>,
}

impl GridFile {
    pub fn from_samples(s: &GridSamples) -> Self {
        GridFile { level: s.level(), origin: s.origin(), width: s.width(), height: s.height(), values: render_values(s.values()) }
    }

    pub fn into_samples(self) -> Result<GridSamples, String> {
        let window = Window::new(self.origin, self.width, self.height).map_err(|e| e.to_string())?;
        GridSamples::new(self.level, window, self.values.into_iter().map(Complex64::from).collect()).map_err(|e| e.to_string())
    }
}

/// A frequency component, validated while parsing so that errors carry the
/// line and column of the offending entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct FrequencyJson(pub Frequency);

impl TryFrom<[f64; 2]> for FrequencyJson {
    type Error = String;
    fn try_from(v: [f64; 2]) -> Result<Self, String> {
        Frequency::new(Complex64::new(v[0], v[1])).map(FrequencyJson).map_err(|e| e.to_string())
    }
}

impl From<FrequencyJson> for [f64; 2] {
    fn from(f: FrequencyJson) -> Self {
        pair(f.0.value())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: [f64; 2],
    pub freq: [FrequencyJson; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumFile {
    pub terms: Vec<TermJson>,
}

impl SumFile {
    pub fn from_sum(f: &ExponentialSum) -> Self {
        SumFile {
            terms: f
                .terms()
                .iter()
                .map(|t| TermJson { coeff: pair(t.coeff), freq: [FrequencyJson(t.freq.g1), FrequencyJson(t.freq.g2)] })
                .collect(),
        }
    }

    pub fn to_sum(&self) -> ExponentialSum {
        ExponentialSum::new(
            self.terms
                .iter()
                .map(|t| (Complex64::new(t.coeff[0], t.coeff[1]), FrequencyVector::new(t.freq[0].0, t.freq[1].0))),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    pub level: u32,
    #[serde(default)]
    pub origin: i64,
    pub values: Vec<Value>,
}

impl SequenceFile {
    pub fn from_sequence(s: &LevelSequence) -> Self {
        SequenceFile { level: s.level, origin: s.origin, values: render_values(&s.values) }
    }

    pub fn into_sequence(self) -> LevelSequence {
        LevelSequence::new(self.level, self.origin, self.values.into_iter().map(Complex64::from).collect())
    }
}

pub fn frequency_pair(g: FrequencyVector) -> [[f64; 2]; 2] {
    [pair(g.g1.value()), pair(g.g2.value())]
}

pub fn complex_pair(c: Complex64) -> [f64; 2] {
    pair(c)
}

/// Parses `"0.8"` (real) or `"0.5i"` (imaginary) into a frequency.
pub fn parse_frequency(s: &str) -> Result<Frequency, String> {
    let s = s.trim();
    let parsed = match s.strip_suffix('i') {
        Some(im) => im.parse::<f64>().map(|y| Complex64::new(0.0, y)),
        None => s.parse::<f64>().map(|x| Complex64::new(x, 0.0)),
    }
    .map_err(|e| format!("cannot parse frequency {s:?}: {e}"))?;
    Frequency::new(parsed).map_err(|e| e.to_string())
}

/// Formatter writing every float with 17 significant digits.
#[derive(Debug, Clone, Copy, Default)]
pub struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes `value` as one line of JSON followed by a newline.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits);
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json_line(&vec![0.1f64, -2.0, 1e-300, f64::NAN]);
        assert_eq!(s, "[1.0000000000000001e-1,-2.0000000000000000e0,1.0000000000000000e-300,null]\n");
        let back: Vec<Option<f64>> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[0], Some(0.1));
    }

    #[test]
    fn grid_file_accepts_mixed_values() {
        let text = r#"{"level": 1, "origin": [0, -1], "width": 2, "height": 1, "values": [1.5, [0.0, 2.0]]}"#;
        let g: GridFile = serde_json::from_str(text).unwrap();
        let s = g.into_samples().unwrap();
        assert_eq!(s.get([1, -1]), Some(Complex64::new(0.0, 2.0)));

        let text = r#"{"level": 0, "origin": [0, 0], "width": 2, "height": 2, "values": [1]}"#;
        let g: GridFile = serde_json::from_str(text).unwrap();
        assert!(g.into_samples().is_err());
    }

    #[test]
    fn sum_file_reports_line_of_bad_frequency() {
        let text = "{\"terms\": [\n  {\"coeff\": [1, 0], \"freq\": [[0, 0], [0, 0]]},\n  {\"coeff\": [1, 0], \"freq\": [[0.5, 0.5], [0, 0]]}\n]}";
        let err = serde_json::from_str::<SumFile>(text).unwrap_err();
        assert_eq!(err.line(), 3);
        assert!(err.to_string().contains("neither real nor purely imaginary"));
    }

    #[test]
    fn parse_frequency_forms() {
        assert_eq!(parse_frequency("0.8").unwrap(), Frequency::real(0.8).unwrap());
        assert_eq!(parse_frequency("-0.5i").unwrap(), Frequency::imaginary(-0.5).unwrap());
        assert!(parse_frequency("4i").is_err());
        assert!(parse_frequency("abc").is_err());
    }
}
