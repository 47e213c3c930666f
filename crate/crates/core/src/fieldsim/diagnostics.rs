use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stencil::Stencil;
use super::{FieldState, GridSpec};
use crate::clinalg::Complex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub t: f64,
    /// `sum (|Psi|^2 + |chi|^2) dV`.
    pub norm: f64,
    pub max_abs_chi: f64,
    pub max_div_psi: f64,
    /// Max of `|div E + (1/c) d/dt Re chi|`.
    pub res_constraint_e: f64,
    /// Max of `|div B - (1/c) d/dt Im chi|`.
    pub res_constraint_b: f64,
}

pub const DIAGNOSTICS_CSV_HEADER: &str = "t,norm,max_abs_chi,max_div_psi,res_constraint_E,res_constraint_B";

/// Diagnostics of `state`, using `prev` for the time derivative of chi.
///
/// Both constraints come from
/// `R = (chi1 - chi0)/(c dt) + (D.Psi1 + D.Psi0)/2 + (c dt/12)(D.D chi1 - D.D chi0)`,
/// the corrected trapezoidal form of `dchi/dt = -c D.Psi`: `Re R` is the
/// electric residual and `-Im R` the magnetic one. For states one RK4 step
/// apart, `R = O(dt^4)`.
pub fn diagnostics(state: &FieldState, prev: &FieldState, grid: &GridSpec) -> Result<Diagnostics> {
    state.check_grid(grid)?;
    prev.check_grid(grid)?;
    let dt = state.t - prev.t;
    if !(dt > 0.0) {
        return Err(Error::Domain(format!("prev.t = {} must precede state.t = {}", prev.t, state.t)));
    }
    let st = Stencil::new(grid);
    let c = grid.c;
    let n = state.len();

    let div1: Vec<Complex> = (0..n).into_par_iter().map(|i| st.divergence(&state.psi, i)).collect();
    let div0: Vec<Complex> = (0..n).into_par_iter().map(|i| st.divergence(&prev.psi, i)).collect();
    let lap1 = st.div_grad(&state.chi);
    let lap0 = st.div_grad(&prev.chi);

    let mut norm = 0.0;
    let (mut max_chi, mut max_div, mut res_e, mut res_b) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..n {
        norm += state.psi[i].iter().map(|z| z.norm_sqr()).sum::<f64>() + state.chi[i].norm_sqr();
        max_chi = max_chi.max(state.chi[i].norm());
        max_div = max_div.max(div1[i].norm());
        let r = (state.chi[i] - prev.chi[i]) / (c * dt)
            + (div1[i] + div0[i]) * 0.5
            + (lap1[i] - lap0[i]) * (c * dt / 12.0);
        res_e = res_e.max(r.re.abs());
        res_b = res_b.max(r.im.abs());
    }
    Ok(Diagnostics {
        t: state.t,
        norm: norm * grid.cell_volume(),
        max_abs_chi: max_chi,
        max_div_psi: max_div,
        res_constraint_e: res_e,
        res_constraint_b: res_b,
    })
}

pub fn write_diagnostics_csv<W: Write>(out: &mut W, series: &[Diagnostics]) -> io::Result<()> {
    writeln!(out, "{DIAGNOSTICS_CSV_HEADER}")?;
    for d in series {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            d.t, d.norm, d.max_abs_chi, d.max_div_psi, d.res_constraint_e, d.res_constraint_b
        )?;
    }
    Ok(())
}
