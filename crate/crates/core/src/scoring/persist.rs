//! Binary score files and top-k text export.
//!
//! Layout (little endian): `b"CQWSCORE"`, version `u32`, precision `u8`
//! (0 = f64, 1 = f32), `n: u64`, method id as `u32` length + UTF-8, `t: f64`,
//! `M: u64`, `seed: u64`, value count `u64`, then the packed values in
//! non-edge order.

use std::io::{Read, Write};

use super::{ScoreMeta, ScoreTable};
use crate::error::{Error, Result};

const MAGIC: &[u8; 8] = b"CQWSCORE";
const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    Single,
}

/// Contents of a score file, detached from any graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreFile {
    pub n: usize,
    pub precision: Precision,
    pub meta: ScoreMeta,
    pub values: Vec<f64>,
}

impl ScoreFile {
    /// Attaches the values to `graph`, which must have the recorded size.
    pub fn into_table(self, graph: &crate::graph::Graph) -> Result<ScoreTable<'_>> {
        if self.n != graph.node_count() {
            return Err(Error::DimensionMismatch { expected: graph.node_count(), actual: self.n });
        }
        ScoreTable::new(graph, self.values, self.meta)
    }
}

pub fn write_scores<W: Write>(table: &ScoreTable<'_>, precision: Precision, mut w: W) -> Result<()> {
    let meta = table.meta();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&[match precision {
        Precision::Double => 0u8,
        Precision::Single => 1u8,
    }])?;
    w.write_all(&(table.graph().node_count() as u64).to_le_bytes())?;
    let method = meta.method.as_bytes();
    w.write_all(&(method.len() as u32).to_le_bytes())?;
    w.write_all(method)?;
    w.write_all(&meta.time.to_le_bytes())?;
    w.write_all(&meta.walkers.to_le_bytes())?;
    w.write_all(&meta.seed.to_le_bytes())?;
    w.write_all(&(table.len() as u64).to_le_bytes())?;
    match precision {
        Precision::Double => {
            for v in table.values() {
                w.write_all(&v.to_le_bytes())?;
            }
        }
        Precision::Single => {
            for v in table.values() {
                w.write_all(&(*v as f32).to_le_bytes())?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn take<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf).map_err(|e| Error::Format(format!("truncated score file: {e}")))?;
    Ok(buf)
}

pub fn read_scores<R: Read>(mut r: R) -> Result<ScoreFile> {
    if &take::<8, _>(&mut r)? != MAGIC {
        return Err(Error::Format("not a score file".into()));
    }
    let version = u32::from_le_bytes(take(&mut r)?);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported score file version {version}")));
    }
    let precision = match take::<1, _>(&mut r)?[0] {
        0 => Precision::Double,
        1 => Precision::Single,
        p => return Err(Error::Format(format!("unknown precision tag {p}"))),
    };
    let n = u64::from_le_bytes(take(&mut r)?) as usize;
    let len = u32::from_le_bytes(take(&mut r)?) as usize;
    let mut method = vec![0u8; len];
    r.read_exact(&mut method).map_err(|e| Error::Format(format!("truncated score file: {e}")))?;
    let method = String::from_utf8(method).map_err(|_| Error::Format("method id is not UTF-8".into()))?;
    let time = f64::from_le_bytes(take(&mut r)?);
    let walkers = u64::from_le_bytes(take(&mut r)?);
    let seed = u64::from_le_bytes(take(&mut r)?);
    let count = u64::from_le_bytes(take(&mut r)?) as usize;
    if count > n * n.saturating_sub(1) / 2 {
        return Err(Error::Format(format!("{count} values cannot belong to a {n}-node graph")));
    }
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        values.push(match precision {
            Precision::Double => f64::from_le_bytes(take(&mut r)?),
            Precision::Single => f32::from_le_bytes(take(&mut r)?) as f64,
        });
    }
    Ok(ScoreFile { n, precision, meta: ScoreMeta { method, time, walkers, seed }, values })
}

/// Writes `u\tv\tscore` lines for the `k` best pairs, using node labels.
/// Within a line `u` is the smaller-index endpoint.
pub fn write_top_k<W: Write>(table: &ScoreTable<'_>, k: usize, mut w: W) -> Result<()> {
    let g = table.graph();
    for ((j, l), s) in table.top_k(k) {
        writeln!(w, "{}\t{}\t{:?}", g.label(j), g.label(l), s)?;
    }
    w.flush()?;
    Ok(())
}
