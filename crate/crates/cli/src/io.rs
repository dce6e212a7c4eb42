//! The JSON tensor file format.

use std::fs;
use std::io;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hankel_core::HankelTensor;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

/// Ground truth recorded by the planted generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedTruth {
    pub poles: Vec<f64>,
    pub alphas: Vec<f64>,
    pub alpha_inf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorFile {
    pub order: usize,
    pub dim: usize,
    pub generator: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planted: Option<PlantedTruth>,
}

impl TensorFile {
    pub fn from_tensor(t: &HankelTensor) -> Self {
        TensorFile {
            order: t.order(),
            dim: t.dim(),
            generator: t.generator().to_vec(),
            name: None,
            seed: None,
            planted: None,
        }
    }

    /// Validates the generator length.
    pub fn tensor(&self) -> Result<HankelTensor> {
        if self.generator.iter().any(|v| !v.is_finite()) {
            bail!("generator contains a non-finite value");
        }
        Ok(HankelTensor::new(
            self.generator.clone(),
            self.order,
            self.dim,
        )?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: TensorFile = serde_json::from_str(text).context("malformed tensor file")?;
        file.tensor()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("loading {}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        self.tensor()?;
        fs::write(path, to_json(self)? + "\n")
            .with_context(|| format!("writing {}", path.display()))
    }
}

/// Pretty JSON with every float written to 17 significant digits.
struct SigDigits<'a>(PrettyFormatter<'a>);

impl Formatter for SigDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes any report or file. Non-finite floats come out as `null`.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut out, SigDigits(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_use_seventeen_digits() {
        let text = to_json(&vec![0.1_f64, 1.0 / 3.0]).unwrap();
        assert!(text.contains("1.0000000000000001e-1"));
        assert!(text.contains("3.3333333333333331e-1"));
    }

    #[test]
    fn round_trip_is_exact() {
        let file = TensorFile {
            order: 3,
            dim: 3,
            generator: vec![
                1.0 / 3.0,
                -2.5e-300,
                7.0,
                f64::MIN_POSITIVE,
                1e300,
                0.1,
                -0.0,
            ],
            name: Some("x".into()),
            seed: Some(9),
            planted: None,
        };
        let back = TensorFile::parse(&to_json(&file).unwrap()).unwrap();
        for (a, b) in file.generator.iter().zip(&back.generator) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back.name.as_deref(), Some("x"));
    }

    #[test]
    fn rejects_wrong_length() {
        let err = TensorFile::parse(r#"{"order":4,"dim":3,"generator":[1,2,3]}"#).unwrap_err();
        assert!(format!("{err:#}").contains("expected length 9"));
    }

    #[test]
    fn refuses_to_write_non_finite_generator() {
        let dir = tempfile::tempdir().unwrap();
        let mut file = TensorFile::from_tensor(&HankelTensor::zeros(2, 2).unwrap());
        file.generator[1] = f64::NAN;
        assert!(file.write(&dir.path().join("t.json")).is_err());
    }
}
