//! Fixed-precision number formatting shared by the CSV and JSON writers.
//!
//! Every float is written with 17 significant digits in exponent form, so identical runs
//! give identical bytes and every value round-trips exactly.

use serde::Serialize;
use serde_json::value::RawValue;

use crate::error::{CliError, Result};

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON number token with the fixed formatting; `null` for a missing value.
pub fn raw(x: Option<f64>) -> Box<RawValue> {
    let text = match x {
        Some(v) if v.is_finite() => num(v),
        _ => "null".to_string(),
    };
    RawValue::from_string(text).expect("formatted float is a JSON number")
}

pub fn raw_json(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("caller passes well-formed JSON")
}

/// CSV cell: fixed formatting, empty when missing.
pub fn cell(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn finite(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Numerical(stefan_core::Error::Overflow {
            function: what,
        }))
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialise");
    s.push('\n');
    s
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self { text }
    }

    pub fn row<S: AsRef<str>>(&mut self, cells: &[S]) {
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            self.text.push_str(c.as_ref());
        }
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}
