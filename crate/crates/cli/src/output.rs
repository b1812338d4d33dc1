//! CSV emission and ingestion.

use std::io::{Read, Write};

use jcspec_core::Spectrum;

/// `%.12g`-style rendering: 12 significant digits, trailing zeros removed,
/// exponent form outside `1e-5 ..= 1e12`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exponent}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(inner: W, header: &[&str]) -> csv::Result<Self> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(inner);
        writer.write_record(header)?;
        Ok(Self { writer })
    }

    pub fn floats(&mut self, values: &[f64]) -> csv::Result<()> {
        self.writer.write_record(values.iter().map(|v| format_float(*v)))
    }

    pub fn record<I, S>(&mut self, fields: I) -> csv::Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields)
    }

    pub fn finish(mut self) -> csv::Result<()> {
        self.writer.flush()?;
        Ok(())
    }
}

/// Reads a trace with an `omega,T` header. Extra columns are ignored.
pub fn read_spectrum<R: Read>(reader: R) -> Result<Spectrum, String> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers().map_err(|e| e.to_string())?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| format!("input CSV has no `{name}` column"))
    };
    let (iw, it) = (column("omega")?, column("T")?);

    let mut omega = Vec::new();
    let mut t = Vec::new();
    for (n, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| e.to_string())?;
        let field = |i: usize| -> Result<f64, String> {
            let raw = record.get(i).unwrap_or("").trim();
            raw.parse().map_err(|_| format!("row {}: `{raw}` is not a number", n + 2))
        };
        omega.push(field(iw)?);
        t.push(field(it)?);
    }
    Spectrum::from_samples(omega, t).map_err(|e| e.to_string())
}
