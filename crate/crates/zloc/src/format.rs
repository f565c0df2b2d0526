//! Tensor files, numeric formatting, and JSON/CSV writers.

use std::collections::HashSet;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use thiserror::Error;
use zloc_core::regions::RadialRegion;
use zloc_core::{DenseTensor, TensorError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed tensor document: {0}")]
    Json(serde_json::Error),
    #[error("field `{field}`: {err}")]
    Field { field: &'static str, err: TensorError },
    #[error("field `entries[{entry}].idx`: {err}")]
    Entry { entry: usize, err: TensorError },
    #[error("field `entries[{entry}].idx`: duplicate index tuple {idx:?}")]
    DuplicateIndex { entry: usize, idx: Vec<usize> },
    #[error("fields `entries` and `values` are mutually exclusive")]
    EntriesAndValues,
    #[error("field `default` cannot be combined with `values`")]
    DefaultWithValues,
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    idx: Vec<usize>,
    value: f64,
}

/// On-disk tensor document.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorDoc {
    order: usize,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    default: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<EntryDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
}

/// Parses a tensor file.
///
/// The document carries `order`, `dim`, an optional `default` fill (0 when
/// absent) and either sparse `entries` (1-based `idx` tuples, each at most
/// once) or a dense row-major `values` array with the last index fastest.
pub fn parse_tensor(text: &str) -> Result<DenseTensor, FormatError> {
    let doc: TensorDoc = serde_json::from_str(text)?;
    let size = DenseTensor::entry_count(doc.order, doc.dim).map_err(|err| {
        let field = match err {
            TensorError::DimTooSmall(_) => "dim",
            _ => "order",
        };
        FormatError::Field { field, err }
    })?;
    match (doc.entries, doc.values) {
        (Some(_), Some(_)) => Err(FormatError::EntriesAndValues),
        (None, Some(values)) => {
            if doc.default.is_some() {
                return Err(FormatError::DefaultWithValues);
            }
            DenseTensor::new(doc.order, doc.dim, values)
                .map_err(|err| FormatError::Field { field: "values", err })
        }
        (entries, None) => {
            let fill = doc.default.unwrap_or(0.0);
            if !fill.is_finite() {
                return Err(FormatError::Field {
                    field: "default",
                    err: TensorError::NonFinite { offset: 0 },
                });
            }
            let mut t = DenseTensor::filled(doc.order, doc.dim, fill)
                .map_err(|err| FormatError::Field { field: "order", err })?;
            let mut seen = HashSet::with_capacity(entries.as_ref().map_or(0, Vec::len).min(size));
            for (k, e) in entries.into_iter().flatten().enumerate() {
                let off = t.offset(&e.idx).map_err(|err| FormatError::Entry { entry: k, err })?;
                if !seen.insert(off) {
                    return Err(FormatError::DuplicateIndex { entry: k, idx: e.idx });
                }
                t.set(&e.idx, e.value).map_err(|err| FormatError::Entry { entry: k, err })?;
            }
            Ok(t)
        }
    }
}

/// Dense document for a tensor.
pub fn tensor_to_json(t: &DenseTensor) -> String {
    let doc = TensorDoc {
        order: t.order(),
        dim: t.dim(),
        default: None,
        entries: None,
        values: Some(t.values().to_vec()),
    };
    to_json(&doc)
}

/// Formats like C's `%.{prec}g`: `prec` significant digits, trailing zeros
/// trimmed, scientific notation outside `1e-4 <= |v| < 10^prec`.
pub fn fmt_g(v: f64, prec: usize) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", prec - 1, v);
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= prec as i32 {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let digits = (prec as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{v:.digits$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Machine format: 17 significant digits, exact for every `f64`.
pub fn fmt_machine(v: f64) -> String {
    fmt_g(v, 17)
}

/// Human format: 6 significant digits.
pub fn fmt_human(v: f64) -> String {
    fmt_g(v, 6)
}

/// Pretty JSON formatter that writes floats with 17 significant digits.
struct Sig17<'a>(PrettyFormatter<'a>);

impl Formatter for Sig17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_machine(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
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

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes to pretty JSON with 17-significant-digit floats and a
/// trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// One row per interval: `lo,hi,lo_open,hi_open`.
pub fn region_to_csv(region: &RadialRegion) -> String {
    let mut out = String::from("lo,hi,lo_open,hi_open\n");
    for iv in region.intervals() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_machine(iv.lo),
            fmt_machine(iv.hi),
            u8::from(iv.lo_open),
            u8::from(iv.hi_open)
        ));
    }
    out
}
