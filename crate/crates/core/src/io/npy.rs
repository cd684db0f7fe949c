//! NPY v1.0 arrays.
//!
//! Layout: magic `\x93NUMPY`, version `1 0`, a little-endian u16 header
//! length, then a Python dict literal such as
//! `{'descr': '<f8', 'fortran_order': False, 'shape': (5, 12, 12), }`
//! padded with spaces and terminated by `\n` so that the whole preamble is a
//! multiple of 64 bytes. Little-endian values follow in C order.
//!
//! Only `<f8`, `<f4` and `<i8` in C order are supported.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::transform::ImageSet;

pub const MAGIC: &[u8; 6] = b"\x93NUMPY";
const ALIGN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    F32,
    #[default]
    F64,
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "32" | "f32" | "float32" => Ok(Precision::F32),
            "64" | "f64" | "float64" => Ok(Precision::F64),
            other => Err(Error::invalid_argument(format!("unknown precision '{other}'"))),
        }
    }
}

/// Element data of an array, by dtype.
#[derive(Debug, Clone, PartialEq)]
pub enum NpyData {
    F64(Vec<f64>),
    F32(Vec<f32>),
    I64(Vec<i64>),
}

impl NpyData {
    fn descr(&self) -> &'static str {
        match self {
            NpyData::F64(_) => "<f8",
            NpyData::F32(_) => "<f4",
            NpyData::I64(_) => "<i8",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            NpyData::F64(v) => v.len(),
            NpyData::F32(v) => v.len(),
            NpyData::I64(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Widens to `f64`.
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            NpyData::F64(v) => v.clone(),
            NpyData::F32(v) => v.iter().map(|&x| f64::from(x)).collect(),
            NpyData::I64(v) => v.iter().map(|&x| x as f64).collect(),
        }
    }
}

fn header_dict(descr: &str, shape: &[usize]) -> String {
    let shape = match shape {
        [n] => format!("({n},)"),
        dims => format!(
            "({})",
            dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
        ),
    };
    format!("{{'descr': '{descr}', 'fortran_order': False, 'shape': {shape}, }}")
}

/// Serializes an array to NPY bytes.
pub fn encode(shape: &[usize], data: &NpyData) -> Result<Vec<u8>> {
    let expected: usize = shape.iter().product();
    if expected != data.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{shape:?} = {expected} elements"),
            found: format!("{} elements", data.len()),
        });
    }
    let mut dict = header_dict(data.descr(), shape);
    let unpadded = MAGIC.len() + 2 + 2 + dict.len() + 1;
    let padded = unpadded.div_ceil(ALIGN) * ALIGN;
    dict.extend(std::iter::repeat_n(' ', padded - unpadded));
    dict.push('\n');
    let header_len = u16::try_from(dict.len())
        .map_err(|_| Error::invalid_argument("array header longer than 65535 bytes"))?;

    let width = match data {
        NpyData::F32(_) => 4,
        _ => 8,
    };
    let mut out = Vec::with_capacity(padded + data.len() * width);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&[1, 0]);
    out.extend_from_slice(&header_len.to_le_bytes());
    out.extend_from_slice(dict.as_bytes());
    match data {
        NpyData::F64(v) => v.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes())),
        NpyData::F32(v) => v.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes())),
        NpyData::I64(v) => v.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes())),
    }
    Ok(out)
}

/// Parses NPY bytes into `(shape, data)`.
pub fn decode(bytes: &[u8]) -> Result<(Vec<usize>, NpyData)> {
    if bytes.len() < 10 || &bytes[..6] != MAGIC {
        return Err(Error::parse(0, "missing NPY magic"));
    }
    let (major, minor) = (bytes[6], bytes[7]);
    let (header_len, start) = match (major, minor) {
        (1, 0) => (u16::from_le_bytes([bytes[8], bytes[9]]) as usize, 10),
        (2, 0) if bytes.len() >= 12 => (
            u32::from_le_bytes([bytes[8], bytes[9], bytes[10], bytes[11]]) as usize,
            12,
        ),
        _ => return Err(Error::parse(6, format!("unsupported NPY version {major}.{minor}"))),
    };
    let end = start + header_len;
    if bytes.len() < end {
        return Err(Error::parse(bytes.len(), "NPY header truncated"));
    }
    let header = std::str::from_utf8(&bytes[start..end])
        .map_err(|e| Error::parse(start + e.valid_up_to(), "NPY header is not ASCII"))?;
    let (descr, fortran, shape) = parse_header(header).map_err(|(off, msg)| Error::parse(start + off, msg))?;
    if fortran {
        return Err(Error::parse(start, "Fortran-ordered arrays are not supported"));
    }

    let count: usize = shape.iter().product();
    let body = &bytes[end..];
    let width = match descr.as_str() {
        "<f8" | "<i8" => 8,
        "<f4" => 4,
        other => return Err(Error::parse(start, format!("unsupported dtype '{other}'"))),
    };
    if body.len() != count * width {
        return Err(Error::parse(
            end,
            format!("payload holds {} bytes, shape {shape:?} needs {}", body.len(), count * width),
        ));
    }
    let data = match descr.as_str() {
        "<f8" => NpyData::F64(body.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect()),
        "<i8" => NpyData::I64(body.chunks_exact(8).map(|c| i64::from_le_bytes(c.try_into().unwrap())).collect()),
        _ => NpyData::F32(body.chunks_exact(4).map(|c| f32::from_le_bytes(c.try_into().unwrap())).collect()),
    };
    Ok((shape, data))
}

type HeaderError = (usize, String);

/// Minimal reader for the dict literal numpy writes.
fn parse_header(h: &str) -> std::result::Result<(String, bool, Vec<usize>), HeaderError> {
    let mut descr = None;
    let mut fortran = None;
    let mut shape = None;

    let mut p = HeaderParser { s: h.as_bytes(), pos: 0 };
    p.expect(b'{')?;
    loop {
        p.skip_ws();
        if p.peek() == Some(b'}') {
            break;
        }
        let key = p.quoted()?;
        p.skip_ws();
        p.expect(b':')?;
        p.skip_ws();
        match key.as_str() {
            "descr" => descr = Some(p.quoted()?),
            "fortran_order" => fortran = Some(p.boolean()?),
            "shape" => shape = Some(p.tuple()?),
            other => return Err((p.pos, format!("unexpected header key '{other}'"))),
        }
        p.skip_ws();
        match p.peek() {
            Some(b',') => p.pos += 1,
            Some(b'}') => {}
            _ => return Err((p.pos, "expected ',' or '}' in header".into())),
        }
    }
    match (descr, fortran, shape) {
        (Some(d), Some(f), Some(s)) => Ok((d, f, s)),
        _ => Err((0, "header must define descr, fortran_order and shape".into())),
    }
}

struct HeaderParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl HeaderParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\n' | b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> std::result::Result<(), HeaderError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err((self.pos, format!("expected '{}' in header", c as char)))
        }
    }

    fn quoted(&mut self) -> std::result::Result<String, HeaderError> {
        let q = match self.peek() {
            Some(q @ (b'\'' | b'"')) => q,
            _ => return Err((self.pos, "expected quoted string in header".into())),
        };
        let start = self.pos + 1;
        let len = self.s[start..]
            .iter()
            .position(|&b| b == q)
            .ok_or((start, "unterminated string in header".to_string()))?;
        self.pos = start + len + 1;
        Ok(String::from_utf8_lossy(&self.s[start..start + len]).into_owned())
    }

    fn boolean(&mut self) -> std::result::Result<bool, HeaderError> {
        for (word, value) in [("True", true), ("False", false)] {
            if self.s[self.pos..].starts_with(word.as_bytes()) {
                self.pos += word.len();
                return Ok(value);
            }
        }
        Err((self.pos, "expected True or False in header".into()))
    }

    fn tuple(&mut self) -> std::result::Result<Vec<usize>, HeaderError> {
        self.expect(b'(')?;
        let mut dims = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b')') => {
                    self.pos += 1;
                    return Ok(dims);
                }
                Some(b',') if !dims.is_empty() => self.pos += 1,
                Some(b'0'..=b'9') => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(b'0'..=b'9')) {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                    dims.push(text.parse().map_err(|_| (start, format!("dimension {text} too large")))?);
                }
                _ => return Err((self.pos, "malformed shape tuple in header".into())),
            }
        }
    }
}

pub fn write_npy(path: &Path, shape: &[usize], data: &NpyData) -> Result<()> {
    let bytes = encode(shape, data)?;
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn read_npy(path: &Path) -> Result<(Vec<usize>, NpyData)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes)
}

fn imageset_data(images: &ImageSet, precision: Precision) -> NpyData {
    match precision {
        Precision::F64 => NpyData::F64(images.pixels().to_vec()),
        Precision::F32 => NpyData::F32(images.pixels().iter().map(|&x| x as f32).collect()),
    }
}

/// Writes an imageset as an `(M, P, P)` array.
pub fn write_array(images: &ImageSet, path: &Path, precision: Precision) -> Result<()> {
    let shape = [images.count(), images.side(), images.side()];
    write_npy(path, &shape, &imageset_data(images, precision))
}

pub fn imageset_to_bytes(images: &ImageSet, precision: Precision) -> Vec<u8> {
    let shape = [images.count(), images.side(), images.side()];
    encode(&shape, &imageset_data(images, precision)).expect("imageset shape is consistent")
}

/// Reads an `(M, P, P)` array. The result carries no provenance.
pub fn read_array(path: &Path) -> Result<ImageSet> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    imageset_from_bytes(&bytes)
}

pub fn imageset_from_bytes(bytes: &[u8]) -> Result<ImageSet> {
    let (shape, data) = decode(bytes)?;
    match shape[..] {
        [m, p, q] if p == q => ImageSet::new(m, p, data.to_f64(), None),
        _ => Err(Error::ShapeMismatch {
            expected: "(M, P, P)".into(),
            found: format!("{shape:?}"),
        }),
    }
}
