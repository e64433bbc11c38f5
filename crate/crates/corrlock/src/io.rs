//! File formats shared by the CLI and the browser demo.
//!
//! Matrices: `{"dim": [r, c], "re": [row-major], "im": [row-major]}`.
//! Ensembles: `{"items": [{"p": p, "vec": {"re": [...], "im": [...]}}]}`.
//!
//! All floating-point output goes through [`fmt_g12`] (12 significant
//! digits), so artifacts are byte-stable across reruns and thread counts.

use serde::Deserialize;
use thiserror::Error;

use crate::infomeasure::OptResult;
use crate::bounds::BoundReport;
use crate::mub::MubFamily;
use crate::qmath::{C64, CMat, CVec, Ensemble, QmathError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix payload has {0} entries, expected {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Qmath(#[from] QmathError),
}

pub type Result<T> = std::result::Result<T, IoError>;

// ---------------------------------------------------------------------------
// Deterministic float formatting
// ---------------------------------------------------------------------------

/// Format with 12 significant digits, in the style of `%.12g`: positional
/// for moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }

    let sci = format!("{:.11e}", x); // mantissa with 12 significant digits
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("numeric exponent");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };

    let body = if (-4..12).contains(&exp) {
        if exp >= 0 {
            let point = (exp + 1) as usize;
            if digits.len() <= point {
                format!("{digits}{}", "0".repeat(point - digits.len()))
            } else {
                format!("{}.{}", &digits[..point], &digits[point..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        }
    } else if digits.len() == 1 {
        format!("{digits}e{exp}")
    } else {
        format!("{}.{}e{exp}", &digits[..1], &digits[1..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn push_float_array(out: &mut String, values: impl Iterator<Item = f64>) {
    out.push('[');
    for (i, v) in values.enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&fmt_g12(v));
    }
    out.push(']');
}

// ---------------------------------------------------------------------------
// Matrix format
// ---------------------------------------------------------------------------

pub fn write_matrix_json(m: &CMat) -> String {
    let mut out = String::new();
    out.push_str(&format!("{{\"dim\":[{},{}],\"re\":", m.nrows(), m.ncols()));
    push_float_array(
        &mut out,
        (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].re),
    );
    out.push_str(",\"im\":");
    push_float_array(
        &mut out,
        (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].im),
    );
    out.push('}');
    out
}

#[derive(Deserialize)]
struct MatrixJson {
    dim: [usize; 2],
    re: Vec<f64>,
    im: Vec<f64>,
}

pub fn read_matrix_json(text: &str) -> Result<CMat> {
    let parsed: MatrixJson = serde_json::from_str(text)?;
    matrix_from_parts(parsed)
}

fn matrix_from_parts(parsed: MatrixJson) -> Result<CMat> {
    let [r, c] = parsed.dim;
    if parsed.re.len() != r * c || parsed.im.len() != r * c {
        return Err(IoError::LengthMismatch(
            parsed.re.len().min(parsed.im.len()),
            r * c,
        ));
    }
    Ok(CMat::from_fn(r, c, |i, j| {
        C64::new(parsed.re[i * c + j], parsed.im[i * c + j])
    }))
}

// ---------------------------------------------------------------------------
// Ensemble format
// ---------------------------------------------------------------------------

pub fn write_ensemble_json(e: &Ensemble) -> String {
    let mut out = String::from("{\"items\":[");
    for (i, (p, v)) in e.items().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("{{\"p\":{},\"vec\":{{\"re\":", fmt_g12(*p)));
        push_float_array(&mut out, v.iter().map(|z| z.re));
        out.push_str(",\"im\":");
        push_float_array(&mut out, v.iter().map(|z| z.im));
        out.push_str("}}");
    }
    out.push_str("]}");
    out
}

#[derive(Deserialize)]
struct VecJson {
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Deserialize)]
struct EnsembleItemJson {
    p: f64,
    vec: VecJson,
}

#[derive(Deserialize)]
struct EnsembleJson {
    items: Vec<EnsembleItemJson>,
}

pub fn read_ensemble_json(text: &str) -> Result<Ensemble> {
    let parsed: EnsembleJson = serde_json::from_str(text)?;
    let items = parsed
        .items
        .into_iter()
        .map(|item| {
            if item.vec.re.len() != item.vec.im.len() {
                return Err(IoError::LengthMismatch(
                    item.vec.im.len(),
                    item.vec.re.len(),
                ));
            }
            let v = CVec::from_fn(item.vec.re.len(), |i, _| {
                C64::new(item.vec.re[i], item.vec.im[i])
            });
            Ok((item.p, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ensemble::new(items)?)
}

// ---------------------------------------------------------------------------
// Family, result, and report formats
// ---------------------------------------------------------------------------

pub fn write_mub_family_json(fam: &MubFamily) -> String {
    let mut out = format!("{{\"d\":{},\"unitaries\":[", fam.dim());
    for (i, u) in fam.unitaries().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&write_matrix_json(u));
    }
    out.push_str("]}");
    out
}

#[derive(Deserialize)]
struct MubFamilyJson {
    #[allow(dead_code)]
    d: usize,
    unitaries: Vec<MatrixJson>,
}

pub fn read_mub_family_json(text: &str) -> Result<Option<MubFamily>> {
    let parsed: MubFamilyJson = serde_json::from_str(text)?;
    let unitaries = parsed
        .unitaries
        .into_iter()
        .map(matrix_from_parts)
        .collect::<Result<Vec<_>>>()?;
    Ok(MubFamily::from_unitaries(unitaries))
}

/// The optimizer-result payload emitted by the CLI.
pub fn write_opt_result_json(res: &OptResult) -> String {
    let mut out = format!(
        "{{\"value\":{},\"upper_bound\":{},\"certificate_kind\":\"{}\",\"converged\":{},\"per_restart\":",
        fmt_g12(res.value),
        fmt_g12(res.upper_bound),
        res.certificate_kind.as_str(),
        res.converged,
    );
    push_float_array(&mut out, res.per_restart.iter().copied());
    out.push('}');
    out
}

/// One JSON line per evaluated inequality, for `verify`-style streams.
pub fn write_bound_report_json(report: &BoundReport) -> String {
    let mut out = format!(
        "{{\"name\":\"{}\",\"lhs\":{},\"rhs\":{},\"slack\":{},\"precondition_met\":{}",
        report.name,
        fmt_g12(report.lhs),
        fmt_g12(report.rhs),
        fmt_g12(report.slack),
        report.precondition_met,
    );
    if !report.details.is_empty() {
        out.push_str(",\"details\":{");
        for (i, (k, v)) in report.details.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{k}\":{}", fmt_g12(*v)));
        }
        out.push('}');
    }
    out.push('}');
    out
}

// ---------------------------------------------------------------------------
