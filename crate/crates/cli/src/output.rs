//! CSV writers. Numbers are printed in their shortest round-trip form unless a
//! digit count is requested.

use std::io::{self, Write};

use gk_core::nalgebra::DMatrix;
use gk_core::Trajectory;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NumberFormat {
    digits: Option<usize>,
}

impl NumberFormat {
    pub fn new(digits: Option<usize>) -> Self {
        Self { digits }
    }

    pub fn fmt(&self, v: f64) -> String {
        match self.digits {
            Some(d) => format!("{:.*e}", d.saturating_sub(1), v),
            None => {
                let mag = v.abs();
                if v == 0.0 || (1e-5..1e16).contains(&mag) || !v.is_finite() {
                    format!("{v}")
                } else {
                    format!("{v:e}")
                }
            }
        }
    }

    pub fn row(&self, values: &[f64]) -> String {
        values
            .iter()
            .map(|&v| self.fmt(v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn write_matrix<W: Write>(w: &mut W, m: &DMatrix<f64>, nf: NumberFormat) -> io::Result<()> {
    for i in 0..m.nrows() {
        let row: Vec<f64> = (0..m.ncols()).map(|j| m[(i, j)]).collect();
        writeln!(w, "{}", nf.row(&row))?;
    }
    Ok(())
}

pub fn write_column<W: Write>(w: &mut W, v: &[f64], nf: NumberFormat) -> io::Result<()> {
    for &x in v {
        writeln!(w, "{}", nf.fmt(x))?;
    }
    Ok(())
}

/// Columns t, x_N, y_0..y_{N-1}; `shift` is added to x_N only.
pub fn write_reduced<W: Write>(
    w: &mut W,
    traj: &Trajectory,
    shift: f64,
    nf: NumberFormat,
) -> io::Result<()> {
    let dim = traj.states().first().map_or(0, Vec::len);
    let mut header = vec!["t".to_string(), "x_N".to_string()];
    header.extend((0..dim).map(|j| format!("y_{j}")));
    writeln!(w, "{}", header.join(","))?;
    for (k, (t, y)) in traj.times().iter().zip(traj.states()).enumerate() {
        let x = traj.scalar_at(k) + shift;
        writeln!(w, "{},{},{}", nf.fmt(*t), nf.fmt(x), nf.row(y))?;
    }
    Ok(())
}

/// Columns t, x.
pub fn write_reference<W: Write>(
    w: &mut W,
    traj: &Trajectory,
    shift: f64,
    nf: NumberFormat,
) -> io::Result<()> {
    writeln!(w, "t,x")?;
    for (k, t) in traj.times().iter().enumerate() {
        writeln!(w, "{},{}", nf.fmt(*t), nf.fmt(traj.scalar_at(k) + shift))?;
    }
    Ok(())
}
