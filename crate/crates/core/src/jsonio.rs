//! JSON output with floats printed to 17 significant digits, enough for a
//! bit-faithful round trip of every double. All serialized tool output
//! goes through [`to_json_string`] so identical inputs produce identical
//! bytes.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

struct SigDigitFormatter;

impl Formatter for SigDigitFormatter {
    fn write_f64<W: io::Write + ?Sized>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        // 1 leading digit + 16 fractional digits = 17 significant digits.
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: io::Write + ?Sized>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        CompactFormatter.write_f32(writer, value)
    }
}

/// Serialize to a compact JSON string with 17-significant-digit floats.
pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::with_capacity(256);
    let mut ser = Serializer::with_formatter(&mut out, SigDigitFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_bitwise() {
        let values = vec![
            0.0,
            1.0,
            -1.5,
            1.0 / 3.0,
            2.0_f64.sqrt(),
            6.02214076e23,
            5e-324,
            f64::MAX,
        ];
        let text = to_json_string(&values).unwrap();
        let back: Vec<f64> = serde_json::from_str(&text).unwrap();
        for (a, b) in values.iter().zip(&back) {
            assert_eq!(a.to_bits(), b.to_bits(), "{a} reparsed as {b}");
        }
    }

    #[test]
    fn integers_stay_integers() {
        #[derive(Serialize)]
        struct S {
            n: usize,
            x: f64,
        }
        let text = to_json_string(&S { n: 4, x: 0.5 }).unwrap();
        assert_eq!(text, r#"{"n":4,"x":5.0000000000000000e-1}"#);
    }

    #[test]
    fn deterministic_output() {
        let report = crate::fiber::fiber_dim_bounds(5, 2, 7);
        let a = to_json_string(&report).unwrap();
        let b = to_json_string(&report).unwrap();
        assert_eq!(a, b);
    }
}
