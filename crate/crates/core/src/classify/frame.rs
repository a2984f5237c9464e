//! The coordinate frame attached to a facet pair `(F, -F)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, RationalVector};
use crate::polytope::{FacetPair, LatticePolytope};
use crate::wirth::{self, WirthMatrix};

/// Everything read off a facet `F` whose negative is also a facet.
///
/// Indices `0..d` refer to the vertices `e_1..e_d` of `F` in ascending
/// vertex order.
#[derive(Clone, Debug)]
pub struct PseudoSymFrame {
    pub facet_pair: FacetPair,
    /// Vertex indices of `e_1..e_d`.
    pub basis_vertices: Vec<usize>,
    /// Columns `e_1..e_d`.
    pub basis: IntMatrix,
    /// Integer inner normal of `F`.
    pub u: Vec<i64>,
    /// `F_i`: the other facet through all `e_j`, `j != i`.
    pub neighbor_facets: Vec<usize>,
    /// `v^i`: the vertex of `F_i` outside `F`.
    pub opposite_vertices: Vec<usize>,
    /// Expansion of every vertex of the polytope in the `e`-basis.
    pub coefficients: Vec<RationalVector>,
    /// The pairs `(I_k, J_k)`, ordered by the smallest index of `I_k`.
    pub index_pairs: Vec<(BTreeSet<usize>, BTreeSet<usize>)>,
}

fn internal(msg: String) -> Error {
    Error::Internal(msg)
}

impl PseudoSymFrame {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Whether `v^i` lies on the hyperplane `u = 0`.
    pub fn opposite_in_kernel(&self, i: usize, p: &LatticePolytope) -> bool {
        linalg::dot(&self.u, p.vertex(self.opposite_vertices[i])).is_ok_and(|x| x == 0)
    }

    /// Indices appearing in some `I_k` or `J_k`.
    pub fn paired_indices(&self) -> BTreeSet<usize> {
        self.index_pairs
            .iter()
            .flat_map(|(i, j)| i.iter().chain(j).copied())
            .collect()
    }
}

/// Builds the frame of facet `facet` and checks every structural property
/// the frame is known to have. A violation is reported as an internal error.
pub fn pseudo_frame(p: &LatticePolytope, facet: usize) -> Result<PseudoSymFrame> {
    if !p.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    if !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    if facet >= p.facets().len() {
        return Err(Error::InvalidArgument(format!(
            "facet index {facet} out of range"
        )));
    }
    let opposite = p.opposite_facet(facet).ok_or(Error::NotPseudoSymmetric)?;
    let d = p.dim();
    let f = &p.facets()[facet];
    let basis_vertices = f.vertices().to_vec();
    let basis = p.facet_matrix(facet);
    let u = f.normal().to_integers().ok_or(Error::NotReflexive)?;

    let mut neighbor_facets = Vec::with_capacity(d);
    let mut opposite_vertices = Vec::with_capacity(d);
    for i in 0..d {
        let ridge: Vec<usize> = basis_vertices
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| v)
            .collect();
        let g = (0..p.facets().len())
            .find(|&g| g != facet && ridge.iter().all(|&v| p.facets()[g].contains(v)))
            .ok_or_else(|| internal(format!("no second facet through ridge {i}")))?;
        let v = *p.facets()[g]
            .vertices()
            .iter()
            .find(|v| !ridge.contains(v))
            .ok_or_else(|| internal("neighbor facet has no new vertex".into()))?;
        neighbor_facets.push(g);
        opposite_vertices.push(v);
    }

    let coefficients = p
        .vertices()
        .iter()
        .map(|v| linalg::solve_rational(&basis, v))
        .collect::<Result<Vec<_>>>()?;

    // coefficient structure of vertices on u = 0
    for (idx, v) in p.vertices().iter().enumerate() {
        if linalg::dot(&u, v)? != 0 {
            continue;
        }
        let q = coefficients[idx]
            .to_integers()
            .ok_or_else(|| internal(format!("vertex {idx} has fractional coefficients")))?;
        if q.iter().any(|x| x.abs() > 1) {
            return Err(internal(format!(
                "vertex {idx} has a coefficient outside -1..1"
            )));
        }
        let pos = q.iter().filter(|&&x| x == 1).count();
        let neg = q.iter().filter(|&&x| x == -1).count();
        if pos != neg {
            return Err(internal(format!(
                "vertex {idx} has {pos} positive and {neg} negative coefficients"
            )));
        }
        for (i, &qi) in q.iter().enumerate() {
            if (qi == -1) != p.facets()[neighbor_facets[i]].contains(idx) {
                return Err(internal(format!(
                    "vertex {idx}: negative coefficient {i} disagrees with facet membership"
                )));
            }
        }
    }

    // dual basis e_i^* against the neighbor normals
    let det = basis.determinant()?;
    let adj = basis.adjugate()?;
    for i in 0..d {
        let eta = p.facets()[neighbor_facets[i]]
            .normal()
            .to_integers()
            .ok_or(Error::NotReflexive)?;
        let in_kernel = linalg::dot(&u, p.vertex(opposite_vertices[i]))? == 0;
        let alpha: i128 = if in_kernel { 1 } else { 2 };
        for k in 0..d {
            let lhs = (eta[k] as i128 - u[k] as i128) * det as i128;
            if lhs != alpha * adj[(i, k)] as i128 {
                return Err(internal(format!(
                    "neighbor normal {i} is not u + {alpha} e_{i}^*"
                )));
            }
        }
        if !in_kernel
            && p.vertex(opposite_vertices[i])
                .iter()
                .zip(basis.column(i))
                .any(|(a, b)| *a != -b)
        {
            return Err(internal(format!("v^{i} off the kernel is not -e_{i}")));
        }
    }

    // index pairs
    let mut index_pairs: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = Vec::new();
    let mut seen_vertices: Vec<usize> = Vec::new();
    for (i, &v) in opposite_vertices.iter().enumerate() {
        if linalg::dot(&u, p.vertex(v))? != 0 {
            continue;
        }
        let q = coefficients[v]
            .to_integers()
            .expect("checked integral above");
        let neg: BTreeSet<usize> = (0..d).filter(|&k| q[k] == -1).collect();
        let pos: BTreeSet<usize> = (0..d).filter(|&k| q[k] == 1).collect();
        if !neg.contains(&i) {
            return Err(internal(format!(
                "v^{i} does not have coefficient -1 at {i}"
            )));
        }
        if !seen_vertices.contains(&v) {
            seen_vertices.push(v);
            index_pairs.push((neg, pos));
        }
    }
    check_index_pairs(&index_pairs, d, |i| {
        linalg::dot(&u, p.vertex(opposite_vertices[i])).is_ok_and(|x| x == 0)
    })?;
    for (ik, jk) in &index_pairs {
        for &i in ik {
            let q = coefficients[opposite_vertices[i]]
                .to_integers()
                .expect("integral");
            let expected: Vec<i64> = (0..d)
                .map(|k| i64::from(jk.contains(&k)) - i64::from(ik.contains(&k)))
                .collect();
            if q != expected {
                return Err(internal(format!(
                    "v^{i} is not the vertex of its index pair"
                )));
            }
        }
    }

    // every vertex is some ±e_i or v^i
    for (idx, q) in coefficients.iter().enumerate() {
        let is_signed_unit = q.denominator() == 1
            && q.numerators().iter().filter(|&&x| x != 0).count() == 1
            && q.numerators().iter().all(|x| x.abs() <= 1);
        if !is_signed_unit && !opposite_vertices.contains(&idx) {
            return Err(internal(format!(
                "vertex {idx} is neither ±e_i nor some v^i"
            )));
        }
    }

    Ok(PseudoSymFrame {
        facet_pair: FacetPair { facet, opposite },
        basis_vertices,
        basis,
        u,
        neighbor_facets,
        opposite_vertices,
        coefficients,
        index_pairs,
    })
}

fn check_index_pairs(
    pairs: &[(BTreeSet<usize>, BTreeSet<usize>)],
    d: usize,
    in_kernel: impl Fn(usize) -> bool,
) -> Result<()> {
    for (a, (ia, ja)) in pairs.iter().enumerate() {
        if !ia.is_disjoint(ja) || ia.len() != ja.len() {
            return Err(internal(format!(
                "index pair {a} overlaps or is unbalanced"
            )));
        }
        for (b, (ib, jb)) in pairs.iter().enumerate().skip(a + 1) {
            if !ia.is_disjoint(ib) || !ja.is_disjoint(jb) {
                return Err(internal(format!(
                    "index pairs {a} and {b} are not disjoint"
                )));
            }
        }
        for (b, (ib, jb)) in pairs.iter().enumerate() {
            if !ia.is_disjoint(jb) && (a == b || ia != jb || ja != ib) {
                return Err(internal(format!(
                    "index pairs {a} and {b} cross without swapping"
                )));
            }
        }
    }
    let covered: BTreeSet<usize> = pairs.iter().flat_map(|(i, _)| i.iter().copied()).collect();
    for i in 0..d {
        if covered.contains(&i) != in_kernel(i) {
            return Err(internal(format!(
                "index {i}: kernel membership of v^{i} disagrees with the pairs"
            )));
        }
    }
    Ok(())
}

/// A Wirth matrix read off a frame together with the lattice change of basis.
#[derive(Clone, Debug)]
pub struct WirthBasis {
    pub matrix: WirthMatrix,
    /// Unimodular; `u_map * basis[:, order] == matrix.assembled()`.
    pub u_map: IntMatrix,
    /// `order[k]` is the frame index placed at Wirth position `k`.
    pub order: Vec<usize>,
}

impl WirthBasis {
    /// Wirth position of each frame index.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (k, &i) in self.order.iter().enumerate() {
            pos[i] = k;
        }
        pos
    }
}

/// Hermite-reduces the frame basis into Wirth form.
pub fn wirth_basis(frame: &PseudoSymFrame) -> Result<WirthBasis> {
    let (matrix, u_map, order) = wirth::wirth_from_basis(&frame.basis)?;
    let wb = WirthBasis {
        matrix,
        u_map,
        order,
    };
    let pos = wb.positions();
    for i in frame.paired_indices() {
        if !wb.matrix.is_unit_row(pos[i]) {
            return Err(internal(format!(
                "paired index {i} does not give a unit row"
            )));
        }
    }
    Ok(wb)
}
