//! CSV field snapshots.
//!
//! ```text
//! # genmax-snapshot v1 dim=1 n=64 L=1 t=0.25
//! index,re_psi1,im_psi1,re_psi2,im_psi2,re_psi3,im_psi3,re_chi,im_chi
//! 0,...
//! ```
//!
//! `index = (ix * ny + iy) * nz + iz`. Floats use the shortest round-trip
//! representation, so reading a snapshot back reproduces the state exactly.

use std::io::{self, BufRead, Write};

use super::{Dimensionality, FieldState, GridSpec};
use crate::clinalg::Complex;
use crate::error::{Error, Result};

pub const SNAPSHOT_VERSION: u32 = 1;
pub const SNAPSHOT_COLUMNS: &str = "index,re_psi1,im_psi1,re_psi2,im_psi2,re_psi3,im_psi3,re_chi,im_chi";

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub dims: Dimensionality,
    pub n: usize,
    pub length: f64,
    pub state: FieldState,
}

pub fn write_snapshot<W: Write>(out: &mut W, grid: &GridSpec, state: &FieldState) -> Result<()> {
    state.check_grid(grid)?;
    let dim = match grid.dims {
        Dimensionality::One => 1,
        Dimensionality::Three => 3,
    };
    let io = |e: io::Error| Error::Snapshot(e.to_string());
    writeln!(
        out,
        "# genmax-snapshot v{SNAPSHOT_VERSION} dim={dim} n={} L={} t={}",
        grid.n, grid.length, state.t
    )
    .map_err(io)?;
    writeln!(out, "{SNAPSHOT_COLUMNS}").map_err(io)?;
    for (i, (p, x)) in state.psi.iter().zip(&state.chi).enumerate() {
        writeln!(
            out,
            "{i},{},{},{},{},{},{},{},{}",
            p[0].re, p[0].im, p[1].re, p[1].im, p[2].re, p[2].im, x.re, x.im
        )
        .map_err(io)?;
    }
    Ok(())
}

pub fn read_snapshot<R: BufRead>(input: R) -> Result<Snapshot> {
    let mut lines = input.lines();
    let mut next =
        || -> Result<Option<String>> { lines.next().transpose().map_err(|e| Error::Snapshot(e.to_string())) };
    let header = next()?.ok_or_else(|| Error::Snapshot("empty input".into()))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("#") || fields.next() != Some("genmax-snapshot") {
        return Err(Error::Snapshot("missing snapshot header".into()));
    }
    let version = fields.next().unwrap_or("");
    if version != format!("v{SNAPSHOT_VERSION}") {
        return Err(Error::Snapshot(format!("unsupported version {version:?}")));
    }
    let (mut dim, mut n, mut length, mut t) = (None, None, None, None);
    for kv in fields {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Snapshot(format!("bad header field {kv:?}")))?;
        match k {
            "dim" => dim = Some(header_value::<u8>(kv, v)?),
            "n" => n = Some(header_value::<usize>(kv, v)?),
            "L" => length = Some(header_value::<f64>(kv, v)?),
            "t" => t = Some(header_value::<f64>(kv, v)?),
            _ => return Err(Error::Snapshot(format!("unknown header field {k:?}"))),
        }
    }
    let missing = |name: &str| Error::Snapshot(format!("header lacks {name}"));
    let dims = match dim.ok_or_else(|| missing("dim"))? {
        1 => Dimensionality::One,
        3 => Dimensionality::Three,
        d => return Err(Error::Snapshot(format!("dim must be 1 or 3, got {d}"))),
    };
    let n = n.ok_or_else(|| missing("n"))?;
    let length = length.ok_or_else(|| missing("L"))?;
    let t = t.ok_or_else(|| missing("t"))?;
    if next()?.as_deref() != Some(SNAPSHOT_COLUMNS) {
        return Err(Error::Snapshot("column header mismatch".into()));
    }
    let points = match dims {
        Dimensionality::One => n,
        Dimensionality::Three => n.checked_pow(3).ok_or_else(|| Error::Snapshot("n too large".into()))?,
    };
    let mut state = FieldState { psi: Vec::with_capacity(points), chi: Vec::with_capacity(points), t };
    while let Some(line) = next()? {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 9 {
            return Err(Error::Snapshot(format!("expected 9 columns, got {}", cols.len())));
        }
        let index: usize =
            cols[0].parse().map_err(|_| Error::Snapshot(format!("bad index {:?}", cols[0])))?;
        if index != state.chi.len() {
            return Err(Error::Snapshot(format!("record {index} out of order")));
        }
        let v = cols[1..]
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| Error::Snapshot(format!("bad number {s:?}"))))
            .collect::<Result<Vec<f64>>>()?;
        state.psi.push([Complex::new(v[0], v[1]), Complex::new(v[2], v[3]), Complex::new(v[4], v[5])]);
        state.chi.push(Complex::new(v[6], v[7]));
    }
    if state.chi.len() != points {
        return Err(Error::Snapshot(format!("expected {points} records, got {}", state.chi.len())));
    }
    Ok(Snapshot { dims, n, length, state })
}

fn header_value<T: std::str::FromStr>(field: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Snapshot(format!("bad value in {field:?}")))
}
