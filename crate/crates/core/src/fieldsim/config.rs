//! Flat `key = value` run configuration. Blank lines and `#` comments are
//! ignored; each key may appear once.
//!
//! ```text
//! dim = 1
//! n = 64
//! L = 1.0
//! cfl = 0.25
//! mode = transverse
//! k_index = 0,0,1
//! helicity = +
//! cadence = 8
//! diagnostics_out = diag.csv
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Dimensionality, GridSpec, Mode, PulseParams, StencilOrder, System, WaveHelicity};
use crate::clinalg::{Complex, ZERO};
use crate::error::{Error, Result};

/// Recognized keys. Exactly one of `dt` and `cfl` may be set; `cfl`
/// defaults to 0.25. `steps` defaults to one crossing time `L / c`.
pub const CONFIG_KEYS: &[&str] = &[
    "dim",
    "n",
    "L",
    "dt",
    "cfl",
    "c",
    "order",
    "steps",
    "cadence",
    "mode",
    "k_index",
    "helicity",
    "system",
    "width",
    "center",
    "amplitude",
    "seed",
    "diagnostics_out",
    "snapshot_out",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub grid: GridSpec,
    pub mode: Mode,
    pub steps: usize,
    pub cadence: usize,
    pub system: System,
    pub seed: u64,
    pub diagnostics_out: Option<PathBuf>,
    pub snapshot_out: Option<PathBuf>,
}

impl SimConfig {
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_pairs(parse_pairs(text)?)
    }

    /// Builds a config from key/value pairs; later pairs override earlier ones.
    pub fn from_pairs<I, K, V>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            let k = k.into();
            if !CONFIG_KEYS.contains(&k.as_str()) {
                return Err(Error::Config(format!("unknown key {k:?}")));
            }
            map.insert(k, v.into());
        }
        let get = |k: &str| map.get(k).map(String::as_str);

        let dims = match get("dim").unwrap_or("1") {
            "1" => Dimensionality::One,
            "3" => Dimensionality::Three,
            other => return Err(Error::Config(format!("dim must be 1 or 3, got {other:?}"))),
        };
        let n: usize = value(&map, "n")?.unwrap_or(64);
        let length: f64 = value(&map, "L")?.unwrap_or(1.0);
        let c: f64 = value(&map, "c")?.unwrap_or(1.0);
        let order = StencilOrder::from_order(value(&map, "order")?.unwrap_or(6)).map_err(config_err)?;
        let grid = match (value::<f64>(&map, "dt")?, value::<f64>(&map, "cfl")?) {
            (Some(_), Some(_)) => return Err(Error::Config("set either dt or cfl, not both".into())),
            (Some(dt), None) => GridSpec::new(dims, n, length, dt, c)?,
            (None, cfl) => GridSpec::from_cfl(dims, n, length, cfl.unwrap_or(0.25), c)?,
        }
        .with_order(order);

        let steps = match value::<usize>(&map, "steps")? {
            Some(s) => s,
            None => (grid.length / (grid.c * grid.dt)).round().max(1.0) as usize,
        };
        let cadence: usize = value(&map, "cadence")?.unwrap_or(1);
        if steps == 0 || cadence == 0 {
            return Err(Error::Config("steps and cadence must be at least 1".into()));
        }
        let system = match get("system").unwrap_or("unprimed") {
            "unprimed" => System::Unprimed,
            "primed" => System::Primed,
            other => return Err(Error::Config(format!("system must be unprimed or primed, got {other:?}"))),
        };

        let k_index = match get("k_index") {
            Some(s) => triple::<i64>(s, "k_index")?,
            None => [0, 0, 1],
        };
        let k = grid.lattice_wavevector(k_index);
        let mode = match get("mode").unwrap_or("transverse") {
            "zero" => Mode::Zero,
            "transverse" => {
                let helicity = match get("helicity").unwrap_or("+") {
                    "+" | "+1" | "plus" => WaveHelicity::Plus,
                    "-" | "-1" | "minus" => WaveHelicity::Minus,
                    other => return Err(Error::Config(format!("helicity must be + or -, got {other:?}"))),
                };
                Mode::TransversePlaneWave { k, helicity }
            }
            "longitudinal" => Mode::LongitudinalScalarWave { k },
            "gaussian" => {
                let mut p = PulseParams::longitudinal(value(&map, "width")?.unwrap_or(grid.length / 10.0));
                if let Some(s) = get("center") {
                    p.center = triple::<f64>(s, "center")?;
                }
                if let Some(s) = get("amplitude") {
                    p.psi_amplitude = triple::<f64>(s, "amplitude")?.map(|x| Complex::new(x, 0.0));
                }
                p.chi_amplitude = ZERO;
                Mode::GaussianPulse(p)
            }
            other => {
                return Err(Error::Config(format!(
                    "mode must be zero, transverse, longitudinal or gaussian, got {other:?}"
                )))
            }
        };
        match mode {
            Mode::TransversePlaneWave { .. } | Mode::LongitudinalScalarWave { .. } => {
                grid.check_commensurate(k)?;
                if k_index == [0, 0, 0] {
                    return Err(Error::Config("plane-wave modes need a nonzero k_index".into()));
                }
            }
            Mode::Zero | Mode::GaussianPulse(_) => {}
        }

        Ok(SimConfig {
            grid,
            mode,
            steps,
            cadence,
            system,
            seed: value(&map, "seed")?.unwrap_or(0),
            diagnostics_out: get("diagnostics_out").map(PathBuf::from),
            snapshot_out: get("snapshot_out").map(PathBuf::from),
        })
    }
}

fn config_err(e: Error) -> Error {
    Error::Config(e.to_string())
}

/// Splits `key = value` lines, rejecting duplicates and malformed lines.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
        let (k, v) = (k.trim().to_string(), v.trim().to_string());
        if let Some(prev) = seen.insert(k.clone(), lineno + 1) {
            return Err(Error::Config(format!("line {}: key {k:?} already set on line {prev}", lineno + 1)));
        }
        out.push((k, v));
    }
    Ok(out)
}

fn value<T: FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    map.get(key)
        .map(|s| s.parse::<T>().map_err(|_| Error::Config(format!("invalid value {s:?} for {key}"))))
        .transpose()
}

fn triple<T: FromStr + Copy + Default>(s: &str, key: &str) -> Result<[T; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("{key} needs three comma-separated values, got {s:?}")));
    }
    let mut out = [T::default(); 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| Error::Config(format!("invalid {key} component {p:?}")))?;
    }
    Ok(out)
}
