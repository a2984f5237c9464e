//! Unimodular embeddings into cubes.

use serde::Serialize;

use super::decompose::decompose;
use super::frame::{pseudo_frame, wirth_basis, WirthBasis};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::polytope::LatticePolytope;

fn in_unit_cube(points: &[Vec<i64>]) -> bool {
    points.iter().flatten().all(|x| x.abs() <= 1)
}

/// Wirth basis from the first facet (in facet order, among facets with an
/// opposite facet) whose Hermite transform is the identity, falling back
/// to the first such facet.
fn preferred_basis(p: &LatticePolytope) -> Result<WirthBasis> {
    let mut first: Option<WirthBasis> = None;
    let mut facets: Vec<usize> = p
        .pseudo_symmetric_pairs()
        .iter()
        .flat_map(|pr| [pr.facet, pr.opposite])
        .collect();
    facets.sort_unstable();
    for f in facets {
        let wb = wirth_basis(&pseudo_frame(p, f)?)?;
        if wb.u_map == IntMatrix::identity(p.dim()) {
            return Ok(wb);
        }
        first.get_or_insert(wb);
    }
    first.ok_or(Error::NotPseudoSymmetric)
}

/// A unimodular `u` with every coordinate of every vertex of `u P` in
/// `{-1, 0, 1}`.
pub fn embed_in_cube(p: &LatticePolytope) -> Result<IntMatrix> {
    decompose(p)?;
    let d = p.dim();
    if in_unit_cube(p.vertices()) {
        return Ok(IntMatrix::identity(d));
    }
    let wb = preferred_basis(p)?;
    let a = wb.matrix.assembled();
    let mut ops = IntMatrix::identity(d);
    for j in 0..wb.matrix.f() {
        let i = (j + 1..d)
            .find(|&i| a[(i, j)] == 1)
            .ok_or_else(|| Error::Internal(format!("column {j} has no 1 below the diagonal")))?;
        for k in 0..d {
            ops[(j, k)] -= ops[(i, k)];
        }
    }
    let u = ops.mul(&wb.u_map)?;
    let image = p.transform(&u)?;
    if !in_unit_cube(image.vertices()) {
        return Err(Error::Internal(
            "row operations left a coordinate outside -1..1".into(),
        ));
    }
    Ok(u)
}

/// Result of placing the dual polytope in the coordinates of a Wirth basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualEmbedding {
    /// `floor(d / 2)`.
    pub bound: i64,
    pub max_abs_coordinate: i64,
    pub passes: bool,
}

/// Largest coordinate of a dual vertex in the dual of a Wirth basis,
/// compared against `floor(d / 2)`.
pub fn dual_embedding_bound(p: &LatticePolytope) -> Result<DualEmbedding> {
    decompose(p)?;
    let pair = p.pseudo_symmetric_pairs()[0];
    let wb = wirth_basis(&pseudo_frame(p, pair.facet)?)?;
    let det = wb.u_map.determinant()?;
    let inv = wb.u_map.adjugate()?;
    let mut max = 0;
    for eta in p.dual_vertices()? {
        // coordinates of the covector eta in the new basis: eta * u^-1
        for k in 0..p.dim() {
            let col = inv.column(k);
            let c = linalg::dot(&eta, &col)?;
            if c % det != 0 {
                return Err(Error::Internal(
                    "inverse of a unimodular map is not integral".into(),
                ));
            }
            max = max.max((c / det).abs());
        }
    }
    let bound = (p.dim() / 2) as i64;
    Ok(DualEmbedding {
        bound,
        max_abs_coordinate: max,
        passes: max <= bound,
    })
}
