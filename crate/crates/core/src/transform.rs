//! Fitting and applying dataset → imageset transformations.
//!
//! A [`Transformer`] is fitted once on training data and then applied,
//! unchanged, to any dataset with the same feature count. Applying it places
//! feature `ordering[n]` at the grid cell of fill rank `n`; ranks `N..P²` are
//! padding and hold exactly `0.0`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corr::pearson_matrix;
use crate::dataset::SparseDataset;
use crate::error::{Error, Result};
use crate::fill::{image_side, FillVariant};
use crate::ordering::{identity_ordering, random_ordering, sdic_ordering, FeatureOrdering};

/// Version written to, and required from, transformer model files.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// Features kept in their original order.
    #[serde(rename = "ASIS")]
    Asis,
    /// Seeded random permutation.
    #[serde(rename = "RAND")]
    Rand,
    /// Correlation chain, linear fill.
    #[serde(rename = "SDIC")]
    Sdic,
    /// Correlation chain, circular fill.
    #[serde(rename = "SDIC_C")]
    SdicC,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Asis, Scheme::Rand, Scheme::Sdic, Scheme::SdicC];

    pub fn default_fill(self) -> FillVariant {
        match self {
            Scheme::SdicC => FillVariant::Circular,
            _ => FillVariant::Linear,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Asis => "ASIS",
            Scheme::Rand => "RAND",
            Scheme::Sdic => "SDIC",
            Scheme::SdicC => "SDIC_C",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    /// Accepts the canonical tags as well as lowercase, dash-separated
    /// spellings such as `sdic-c`.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "ASIS" => Ok(Scheme::Asis),
            "RAND" => Ok(Scheme::Rand),
            "SDIC" => Ok(Scheme::Sdic),
            "SDIC_C" => Ok(Scheme::SdicC),
            _ => Err(Error::invalid_argument(format!("unknown scheme '{s}'"))),
        }
    }
}

/// A fitted transformation. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transformer {
    format_version: u32,
    scheme: Scheme,
    fill_variant: FillVariant,
    side: usize,
    n_features: usize,
    ordering: FeatureOrdering,
    seed: Option<u64>,
}

impl Transformer {
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn fill_variant(&self) -> FillVariant {
        self.fill_variant
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn ordering(&self) -> &FeatureOrdering {
        &self.ordering
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    fn validate(&self) -> Result<()> {
        let expected = image_side(self.n_features)?;
        if self.side != expected {
            return Err(Error::invalid_argument(format!(
                "side {} does not match {} features (expected {expected})",
                self.side, self.n_features
            )));
        }
        if self.ordering.len() != self.n_features {
            return Err(Error::invalid_argument(format!(
                "ordering has {} entries for {} features",
                self.ordering.len(),
                self.n_features
            )));
        }
        Ok(())
    }

    /// Canonical model-file bytes: compact JSON with a trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec(self).expect("transformer serializes");
        out.push(b'\n');
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        // Check the version before the full decode so a newer file reports
        // the mismatch rather than whatever field changed.
        #[derive(Deserialize)]
        struct Probe {
            format_version: Option<serde_json::Value>,
        }
        if let Ok(Probe { format_version: Some(v) }) = serde_json::from_slice::<Probe>(bytes) {
            if v.as_u64() != Some(FORMAT_VERSION as u64) {
                return Err(Error::parse(
                    0,
                    format!("unsupported format_version {v}, expected {FORMAT_VERSION}"),
                ));
            }
        }
        let t: Transformer =
            serde_json::from_slice(bytes).map_err(|e| Error::parse(json_offset(bytes, &e), e.to_string()))?;
        t.validate().map_err(|e| Error::parse(0, e.to_string()))?;
        Ok(t)
    }

    /// Short content hash of the model bytes, used to tag imagesets.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_bytes());
        format!("{}-{}", self.scheme, hex::encode(&digest[..8]))
    }
}

fn json_offset(bytes: &[u8], err: &serde_json::Error) -> usize {
    if err.line() == 0 || err.is_eof() {
        return bytes.len();
    }
    let line_start: usize = bytes
        .split(|&b| b == b'\n')
        .take(err.line() - 1)
        .map(|l| l.len() + 1)
        .sum();
    (line_start + err.column().saturating_sub(1)).min(bytes.len())
}

/// Fits a transformer on `train`.
///
/// `fill` overrides the scheme's default layout. `seed` is required for
/// [`Scheme::Rand`] and ignored otherwise.
pub fn fit_transformer(
    train: &SparseDataset,
    scheme: Scheme,
    fill: Option<FillVariant>,
    seed: Option<u64>,
) -> Result<Transformer> {
    let n = train.n_features();
    if train.n_samples() == 0 || n == 0 {
        return Err(Error::invalid_argument("cannot fit on an empty dataset"));
    }
    let (ordering, seed) = match scheme {
        Scheme::Asis => (identity_ordering(n)?, None),
        Scheme::Rand => {
            let seed = seed.ok_or_else(|| Error::invalid_argument("RAND needs a seed"))?;
            (random_ordering(n, seed)?, Some(seed))
        }
        Scheme::Sdic | Scheme::SdicC => (sdic_ordering(&pearson_matrix(train)?)?, None),
    };
    Ok(Transformer {
        format_version: FORMAT_VERSION,
        scheme,
        fill_variant: fill.unwrap_or_else(|| scheme.default_fill()),
        side: image_side(n)?,
        n_features: n,
        ordering,
        seed,
    })
}

/// Fits on `train` and returns its imageset alongside the transformer.
pub fn fit_transform(
    train: &SparseDataset,
    scheme: Scheme,
    fill: Option<FillVariant>,
    seed: Option<u64>,
) -> Result<(Transformer, ImageSet)> {
    let t = fit_transformer(train, scheme, fill, seed)?;
    let images = apply_transformer(&t, train)?;
    Ok((t, images))
}

pub fn apply_transformer(t: &Transformer, data: &SparseDataset) -> Result<ImageSet> {
    if data.n_features() != t.n_features {
        return Err(Error::ShapeMismatch {
            expected: format!("{} features (model)", t.n_features),
            found: format!("{} features (data)", data.n_features()),
        });
    }
    let side = t.side;
    let area = side * side;
    let offsets = t.fill_variant.order(side)?.offsets();
    let ordering = t.ordering.as_slice();

    let mut pixels = vec![0.0; data.n_samples() * area];
    pixels
        .par_chunks_mut(area.max(1))
        .enumerate()
        .for_each(|(m, image)| {
            let row = data.row(m);
            for (&feature, &offset) in ordering.iter().zip(&offsets) {
                image[offset] = row[feature];
            }
        });

    Ok(ImageSet {
        count: data.n_samples(),
        side,
        pixels,
        provenance: Some(t.fingerprint()),
    })
}

/// `M` images of `P × P` pixels, stored sample-major then row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageSet {
    count: usize,
    side: usize,
    pixels: Vec<f64>,
    provenance: Option<String>,
}

impl ImageSet {
    /// Builds an imageset from raw pixels. `provenance` names the transformer
    /// that produced them, when known.
    pub fn new(count: usize, side: usize, pixels: Vec<f64>, provenance: Option<String>) -> Result<Self> {
        if pixels.len() != count * side * side {
            return Err(Error::ShapeMismatch {
                expected: format!("{count}x{side}x{side} pixels"),
                found: format!("{} pixels", pixels.len()),
            });
        }
        Ok(ImageSet {
            count,
            side,
            pixels,
            provenance,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    /// Row-major pixels of one image.
    pub fn image(&self, m: usize) -> &[f64] {
        let area = self.side * self.side;
        &self.pixels[m * area..(m + 1) * area]
    }

    pub fn get(&self, m: usize, row: usize, col: usize) -> f64 {
        self.image(m)[row * self.side + col]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dataset(values: Vec<f64>, n: usize) -> SparseDataset {
        let m = values.len() / n;
        SparseDataset::with_default_names(values, n, vec![0; m], 1).unwrap()
    }

    #[test]
    fn two_by_two_linear() {
        let d = dataset(vec![1., 2., 3., 4.], 4);
        let t = fit_transformer(&d, Scheme::Asis, None, None).unwrap();
        let img = apply_transformer(&t, &d).unwrap();
        assert_eq!(img.image(0), &[1., 2., 4., 3.]);
    }

    #[test]
    fn defaults_per_scheme() {
        let d = dataset((0..20).map(|x| (x * x % 7) as f64).collect(), 5);
        for scheme in Scheme::ALL {
            let t = fit_transformer(&d, scheme, None, Some(3)).unwrap();
            assert_eq!(t.fill_variant(), scheme.default_fill());
            assert_eq!(t.side(), 4);
            assert_eq!(t.seed().is_some(), scheme == Scheme::Rand);
        }
        assert_eq!(Scheme::SdicC.default_fill(), FillVariant::Circular);
        let t = fit_transformer(&d, Scheme::Asis, Some(FillVariant::Raster), None).unwrap();
        assert_eq!(t.fill_variant(), FillVariant::Raster);
    }

    #[test]
    fn padding_is_tail_zero() {
        let d = dataset((1..=10).map(f64::from).collect(), 5);
        let t = fit_transformer(&d, Scheme::Asis, Some(FillVariant::Raster), None).unwrap();
        let img = apply_transformer(&t, &d).unwrap();
        assert_eq!(img.image(1), &[6., 7., 8., 9., 10., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0.]);
    }

    #[test]
    fn fit_errors() {
        let empty = SparseDataset::with_default_names(vec![], 3, vec![], 1).unwrap();
        assert!(fit_transformer(&empty, Scheme::Asis, None, None).is_err());
        let one = dataset(vec![1., 2., 3.], 3);
        assert!(fit_transformer(&one, Scheme::Sdic, None, None).is_err());
        assert!(fit_transformer(&one, Scheme::SdicC, None, None).is_err());
        assert!(fit_transformer(&one, Scheme::Rand, None, None).is_err());
        assert!(fit_transformer(&one, Scheme::Asis, None, None).is_ok());
    }

    #[test]
    fn feature_count_mismatch() {
        let t = fit_transformer(&dataset(vec![1., 2., 3.], 3), Scheme::Asis, None, None).unwrap();
        let err = apply_transformer(&t, &dataset(vec![1., 2.], 2)).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("sdic-c".parse::<Scheme>().unwrap(), Scheme::SdicC);
        assert_eq!("SDIC_C".parse::<Scheme>().unwrap(), Scheme::SdicC);
        assert_eq!("asis".parse::<Scheme>().unwrap(), Scheme::Asis);
        assert!("di".parse::<Scheme>().is_err());
    }

    #[test]
    fn model_bytes_round_trip() {
        let d = dataset((0..60).map(|x| ((x * 37) % 11) as f64).collect(), 6);
        let t = fit_transformer(&d, Scheme::Rand, None, Some(99)).unwrap();
        let bytes = t.to_bytes();
        let back = Transformer::from_bytes(&bytes).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_bytes(), bytes);
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.starts_with(r#"{"format_version":1,"scheme":"RAND","fill_variant":"LINEAR","side":4,"n_features":6,"ordering":["#));
        assert!(text.ends_with(",\"seed\":99}\n"));
    }

    #[test]
    fn model_parse_errors() {
        let good = r#"{"format_version":1,"scheme":"ASIS","fill_variant":"LINEAR","side":2,"n_features":3,"ordering":[0,1,2],"seed":null}"#;
        assert!(Transformer::from_bytes(good.as_bytes()).is_ok());

        let err = Transformer::from_bytes(&good.as_bytes()[..40]).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 40, .. }), "{err}");

        let err = Transformer::from_bytes(good.replace("ASIS", "DEEPINSIGHT").as_bytes()).unwrap_err();
        assert!(err.to_string().contains("DEEPINSIGHT"), "{err}");

        let err = Transformer::from_bytes(good.replace(":1,", ":2,").as_bytes()).unwrap_err();
        assert!(err.to_string().contains("format_version"), "{err}");

        // Side inconsistent with feature count.
        assert!(Transformer::from_bytes(good.replace("\"side\":2", "\"side\":4").as_bytes()).is_err());
        // Ordering not a permutation.
        assert!(Transformer::from_bytes(good.replace("[0,1,2]", "[0,1,1]").as_bytes()).is_err());
        // Ordering length disagrees with n_features.
        assert!(Transformer::from_bytes(good.replace("[0,1,2]", "[0,1]").as_bytes()).is_err());
    }
}
