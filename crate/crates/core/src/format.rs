//! Number formatting for CLI output: every float is written with 17
//! significant digits so that parsing it back yields the same `f64`.

use std::io;

use serde::Serialize;

/// `x` in scientific notation with 17 significant digits.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON formatter writing floats through [`float17`].
#[derive(Debug, Default, Clone, Copy)]
pub struct Float17Formatter;

impl serde_json::ser::Formatter for Float17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(float17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes `value` as compact JSON with 17-digit floats.
pub fn to_json17<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Float17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}
