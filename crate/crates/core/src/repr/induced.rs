use serde::Serialize;

use super::matrix::ComplexMatrix;
use crate::dynamics::Character;
use crate::exactalg::GroupElement;
use crate::torus::Angle;

/// `π′_χ(g)` restricted to the coordinates `k ∈ {−N..N}`.
#[derive(Clone, Debug)]
pub struct WindowedInduced {
    pub halfwidth: usize,
    pub matrix: ComplexMatrix,
    /// Angles of `χ(a^k b)` for `k = −N..N`.
    pub diagonal: Vec<Angle>,
    /// Rows whose shifted coordinate falls outside the window (zero rows).
    pub boundary_rows: Vec<usize>,
    pub diagonal_periodic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowSummary {
    pub halfwidth: usize,
    pub boundary_rows: Vec<usize>,
    pub diagonal_periodic: bool,
}

impl WindowedInduced {
    pub fn summary(&self) -> WindowSummary {
        WindowSummary {
            halfwidth: self.halfwidth,
            boundary_rows: self.boundary_rows.clone(),
            diagonal_periodic: self.diagonal_periodic,
        }
    }
}

/// `(π′_χ(b, l)ξ)_k = χ(a^k b)·ξ_{k+l}`, truncated to the window: the shift
/// `(Uξ)_k = ξ_{k+1}` drops coordinates that leave `{−N..N}`.
pub fn windowed_induced(chi: &Character, g: &GroupElement, halfwidth: usize) -> WindowedInduced {
    let n = halfwidth as i64;
    let size = 2 * halfwidth + 1;
    let diagonal: Vec<Angle> = (-n..=n)
        .map(|k| {
            g.b.monomials()
                .iter()
                .fold(Angle::zero(), |acc, (e, m)| acc.add(&chi.angle(e + k).scale(m)))
        })
        .collect();
    let mut matrix = ComplexMatrix::zeros(size, size);
    let mut boundary_rows = Vec::new();
    for (row, angle) in diagonal.iter().enumerate() {
        let col = row as i64 + g.l;
        if (0..size as i64).contains(&col) {
            matrix.set(row, col as usize, angle.to_unit());
        } else {
            boundary_rows.push(row);
        }
    }
    let q = chi.period();
    let diagonal_periodic = (0..size.saturating_sub(q)).all(|i| diagonal[i].approx_eq(&diagonal[i + q], 1e-12));
    WindowedInduced { halfwidth, matrix, diagonal, boundary_rows, diagonal_periodic }
}
