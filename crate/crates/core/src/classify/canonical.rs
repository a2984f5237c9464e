//! Normal forms of simplicial polytopes under unimodular transformations.

use itertools::Itertools;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::polytope::LatticePolytope;

/// A vertex matrix that is equal for two polytopes exactly when they are
/// unimodularly equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub matrix: IntMatrix,
    /// Hex prefix of a SHA-256 digest of the matrix.
    pub hash: String,
}

impl CanonicalForm {
    fn new(dim: usize, columns: Vec<Vec<i64>>) -> Self {
        let matrix = IntMatrix::from_columns(dim, &columns);
        let mut h = Sha256::new();
        h.update(format!("{} {}\n", dim, columns.len()));
        for c in &columns {
            h.update(c.iter().map(i64::to_string).join(" "));
            h.update("\n");
        }
        let hash = hex::encode(h.finalize())[..16].to_string();
        Self { matrix, hash }
    }
}

/// Candidate normal form for one facet and one ordering of its vertices.
///
/// With `L` the ordered facet matrix and `H = U L` its Hermite form,
/// `U V = H L^-1 V`; `q = adj(L) V` is shared by every ordering of the
/// same facet and only needs its rows permuted.
fn candidate(l: &IntMatrix, q: &IntMatrix, det: i64, sigma: &[usize]) -> Result<Vec<Vec<i64>>> {
    let d = l.rows();
    let h = if det.abs() == 1 {
        IntMatrix::identity(d)
    } else {
        linalg::hermite_form_only(&l.select_columns(sigma))?
    };
    let prod = h.mul(&q.select_rows(sigma))?;
    let mut cols = Vec::with_capacity(prod.cols());
    for j in 0..prod.cols() {
        let col = prod.column(j);
        if col.iter().any(|x| x % det != 0) {
            return Err(Error::Internal("Hermite transform is not integral".into()));
        }
        cols.push(col.iter().map(|x| x / det).collect::<Vec<_>>());
    }
    cols.sort_unstable();
    Ok(cols)
}

/// Lexicographically smallest sorted column list over all facets and all
/// orderings of the facet's vertices.
pub fn canonical_form(p: &LatticePolytope) -> Result<CanonicalForm> {
    if !p.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let d = p.dim();
    let v = p.vertex_matrix();
    let best = (0..p.facets().len())
        .into_par_iter()
        .map(|f| -> Result<Option<Vec<Vec<i64>>>> {
            let l = p.facet_matrix(f);
            let det = l.determinant()?;
            let q = l.adjugate()?.mul(&v)?;
            let mut best: Option<Vec<Vec<i64>>> = None;
            for sigma in (0..d).permutations(d) {
                let c = candidate(&l, &q, det, &sigma)?;
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
            Ok(best)
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, None) => a,
                    (None, b) => b,
                })
            },
        )?;
    let cols = best.ok_or_else(|| Error::Internal("polytope has no facets".into()))?;
    Ok(CanonicalForm::new(d, cols))
}

/// Unimodular equivalence; polytopes of different dimension are never isomorphic.
pub fn is_isomorphic(p: &LatticePolytope, q: &LatticePolytope) -> Result<bool> {
    if p.dim() != q.dim()
        || p.num_vertices() != q.num_vertices()
        || p.facets().len() != q.facets().len()
    {
        if !p.is_simplicial() || !q.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        return Ok(false);
    }
    Ok(canonical_form(p)? == canonical_form(q)?)
}
