//! Checkers for the combinatorial bounds and the boundary lemmas.

use serde::Serialize;

use super::decompose::{decompose, Decomposition};
use crate::catalog::{self, binomial};
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;

/// One upper bound: measured value, limit, and whether equality occurs in
/// exactly the configuration where it is expected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub value: u64,
    pub limit: u64,
    /// `value == limit`.
    pub attained: bool,
    /// The decomposition is the extremal configuration for this bound.
    pub extremal: bool,
    /// Human-readable description of the extremal configuration.
    pub extremal_case: String,
    pub passes: bool,
}

impl BoundCheck {
    fn new(value: u64, limit: u64, extremal: bool, extremal_case: impl Into<String>) -> Self {
        let attained = value == limit;
        Self {
            value,
            limit,
            attained,
            extremal,
            extremal_case: extremal_case.into(),
            passes: value <= limit && attained == extremal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub dim: usize,
    pub decomposition: Decomposition,
    pub vertices: BoundCheck,
    /// Limit is `floor(6^(d/2))`.
    pub facets: BoundCheck,
    pub lattice_points: BoundCheck,
    /// Lattice points in each facet, checked against `C(d+1, 2)`.
    pub facet_lattice_points: BoundCheck,
    pub facets_uniform: bool,
    pub midpoints_on_edges: bool,
}

impl TheoremReport {
    pub fn passes(&self) -> bool {
        self.vertices.passes
            && self.facets.passes
            && self.lattice_points.passes
            && self.facet_lattice_points.passes
            && self.facets_uniform
            && self.midpoints_on_edges
    }
}

fn isqrt(n: u128) -> u128 {
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `d/2` copies of `V_2`, plus one segment when `d` is odd.
fn is_del_pezzo_tower(dec: &Decomposition) -> bool {
    dec.core.is_none()
        && dec.pseudo_del_pezzo.is_empty()
        && dec.del_pezzo.iter().all(|&k| k == 2)
        && dec.segments == dec.dim % 2
}

/// `D_d`, with the segment standing in for `d = 1`.
fn is_d_polytope(dec: &Decomposition) -> bool {
    if dec.dim == 1 {
        return dec.segments == 1;
    }
    catalog::a_matrix(dec.dim).is_ok_and(|a| dec.core.as_ref() == Some(&a))
}

/// Runs every bound check on a pseudo-symmetric simplicial reflexive polytope.
pub fn verify_theorems(p: &LatticePolytope) -> Result<TheoremReport> {
    let dec = decompose(p)?;
    let d = p.dim();
    let du = d as u64;

    let vertex_limit = if d.is_multiple_of(2) {
        3 * du
    } else {
        3 * du - 1
    };
    let tower = is_del_pezzo_tower(&dec);
    let vertices = BoundCheck::new(
        p.num_vertices() as u64,
        vertex_limit,
        tower,
        "splits into V_2 copies (and one segment if d is odd)",
    );

    let six_pow = 6u128.checked_pow(d as u32).ok_or(Error::Overflow)?;
    let facet_limit = u64::try_from(isqrt(six_pow)).map_err(|_| Error::Overflow)?;
    let facet_count = p.facets().len() as u64;
    let facet_extremal = tower && d.is_multiple_of(2);
    // the real bound 6^(d/2) is attained only for even d
    let facet_attained = (facet_count as u128).pow(2) == six_pow;
    let facets = BoundCheck {
        value: facet_count,
        limit: facet_limit,
        attained: facet_attained,
        extremal: facet_extremal,
        extremal_case: "d even and splits into d/2 copies of V_2".into(),
        passes: facet_count <= facet_limit && facet_attained == facet_extremal,
    };

    let report = p.lattice_points()?;
    let dd = is_d_polytope(&dec);
    let lattice_points = BoundCheck::new(
        report.total as u64,
        2 * du * du + 1,
        dd,
        "isomorphic to D_d",
    );

    let per_facet: Vec<u64> = p
        .facets()
        .iter()
        .map(|f| {
            let den = f.normal().denominator();
            let mut n = 0;
            for x in &report.boundary_points {
                if f.pairing(x)? == -den {
                    n += 1;
                }
            }
            Ok(n)
        })
        .collect::<Result<_>>()?;
    let facets_uniform = per_facet.windows(2).all(|w| w[0] == w[1]);
    let max_facet = per_facet.iter().copied().max().unwrap_or(0);
    let facet_lattice_points =
        BoundCheck::new(max_facet, binomial(d + 1, 2), dd, "isomorphic to D_d");

    let midpoints_on_edges = midpoints_on_edges(p, &report.boundary_points)?;

    Ok(TheoremReport {
        dim: d,
        decomposition: dec,
        vertices,
        facets,
        lattice_points,
        facet_lattice_points,
        facets_uniform,
        midpoints_on_edges,
    })
}

/// Every boundary lattice point that is not a vertex is the midpoint of an edge.
pub fn midpoints_on_edges(p: &LatticePolytope, boundary_points: &[Vec<i64>]) -> Result<bool> {
    let n = p.num_vertices();
    for m in boundary_points {
        if p.vertex_index(m).is_some() {
            continue;
        }
        let twice: Vec<i64> = m.iter().map(|x| 2 * x).collect();
        let found = (0..n).any(|a| {
            (a + 1..n).any(|b| {
                p.vertex(a)
                    .iter()
                    .zip(p.vertex(b))
                    .zip(&twice)
                    .all(|((x, y), t)| x + y == *t)
                    && p.is_edge(a, b)
            })
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For boundary lattice points `v`, `w` with `v + w != 0` and no common
/// facet, `v + w` is again a boundary lattice point.
pub fn check_boundary_sums(p: &LatticePolytope) -> Result<bool> {
    if !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let boundary = p.lattice_points()?.boundary_points;
    let facet_sets: Vec<Vec<usize>> = boundary
        .iter()
        .map(|x| p.facets_containing_point(x))
        .collect::<Result<_>>()?;
    for (a, v) in boundary.iter().enumerate() {
        for (b, w) in boundary.iter().enumerate().skip(a + 1) {
            let sum: Vec<i64> = v.iter().zip(w).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&x| x == 0)
                || facet_sets[a].iter().any(|f| facet_sets[b].contains(f))
            {
                continue;
            }
            if !p.contains_point(&sum)? || p.facets_containing_point(&sum)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For every facet `F` and boundary lattice point `m` on the hyperplane
/// `eta_F = 0`, some facet through `m` meets `F` in a face of dimension `d - 2`.
pub fn check_adjacent_facets(p: &LatticePolytope) -> Result<bool> {
    if !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let d = p.dim();
    let boundary = p.lattice_points()?.boundary_points;
    let facet_sets: Vec<Vec<usize>> = boundary
        .iter()
        .map(|x| p.facets_containing_point(x))
        .collect::<Result<_>>()?;
    for (fi, f) in p.facets().iter().enumerate() {
        for (m, through) in boundary.iter().zip(&facet_sets) {
            if f.pairing(m)? != 0 {
                continue;
            }
            let mut ok = false;
            for &g in through {
                if g == fi {
                    continue;
                }
                let common: Vec<usize> = f
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&v| p.facets()[g].contains(v))
                    .collect();
                if !common.is_empty() && p.affine_dimension(&common)? + 2 == d {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Builds the frame of every facet with an opposite facet; each
/// construction checks the coefficient structure of the vertices.
pub fn check_frames(p: &LatticePolytope) -> Result<usize> {
    let mut n = 0;
    for pair in p.pseudo_symmetric_pairs() {
        for f in [pair.facet, pair.opposite] {
            super::frame::pseudo_frame(p, f)?;
            n += 1;
        }
    }
    Ok(n)
}
