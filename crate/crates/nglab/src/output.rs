//! JSON-lines and CSV writers plus serialisable views of core types.

use std::io::Write;

use nglab_core::ff::Fe;
use nglab_core::k46::{BuildMode, K46Certificate};
use nglab_core::normgraph::Vertex;
use serde::Serialize;
use serde_json::Value;

use crate::error::{NglabError, Result};

/// Version tag carried by every record; bump on incompatible changes.
pub const SCHEMA: &str = "nglab-output/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    #[serde(flatten)]
    data: &'a T,
}

/// Writes one record per line.
pub struct Emitter<W: Write> {
    format: Format,
    out: W,
    header: Option<Vec<String>>,
}

impl<W: Write> Emitter<W> {
    pub fn new(format: Format, out: W) -> Self {
        Emitter { format, out, header: None }
    }

    pub fn emit<T: Serialize>(&mut self, command: &str, data: &T) -> Result<()> {
        let env = Envelope { schema: SCHEMA, command, data };
        match self.format {
            Format::Json => {
                serde_json::to_writer(&mut self.out, &env)?;
                self.out.write_all(b"\n")?;
            }
            Format::Csv => self.emit_csv(serde_json::to_value(&env)?)?,
        }
        Ok(())
    }

    /// Scalars become cells, nested values compact JSON; a new header row
    /// is written whenever the column set changes.
    fn emit_csv(&mut self, value: Value) -> Result<()> {
        let Value::Object(map) = value else {
            return Err(NglabError::Input("record is not an object".into()));
        };
        let keys: Vec<String> = map.keys().cloned().collect();
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut self.out);
        if self.header.as_ref() != Some(&keys) {
            w.write_record(&keys)?;
            self.header = Some(keys);
        }
        let cells: Vec<String> = map
            .values()
            .map(|v| match v {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                other => other.to_string(),
            })
            .collect();
        w.write_record(&cells)?;
        w.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// Field elements are written as their integer encodings.
pub fn fe(x: Fe) -> u64 {
    x.value()
}

/// A vertex as [first, second].
pub fn vertex(v: &Vertex) -> [u64; 2] {
    [v.first.value(), v.second.value()]
}

pub fn vertices(vs: &[Vertex]) -> Vec<[u64; 2]> {
    vs.iter().map(vertex).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CertificateView {
    pub q: u64,
    pub mode: &'static str,
    pub a_param: u64,
    pub alpha: u64,
    pub beta: u64,
    pub c: u64,
    pub left: Vec<[u64; 2]>,
    pub right: Vec<[u64; 2]>,
}

impl From<&K46Certificate> for CertificateView {
    fn from(c: &K46Certificate) -> Self {
        CertificateView {
            q: c.q,
            mode: mode_name(c.mode),
            a_param: fe(c.a_param),
            alpha: fe(c.alpha),
            beta: fe(c.beta),
            c: fe(c.c),
            left: vertices(&c.left),
            right: vertices(&c.right),
        }
    }
}

pub fn mode_name(m: BuildMode) -> &'static str {
    match m {
        BuildMode::Fast => "fast",
        BuildMode::Certified => "certified",
    }
}
