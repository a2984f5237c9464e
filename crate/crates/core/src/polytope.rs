//! Lattice polytopes given by vertices, with exact facet normals.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;

use crate::error::{Error, PolytopeError, Result};
use crate::linalg::{self, dot, gcd, IntMatrix, RationalVector};

/// A facet: the indices of its vertices (ascending) and its inner normal
/// `eta`, normalized so that `<eta, v> = -1` on the facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    vertices: Vec<usize>,
    normal: RationalVector,
}

impl Facet {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn normal(&self) -> &RationalVector {
        &self.normal
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.vertices.binary_search(&vertex).is_ok()
    }

    /// `<eta, x>` as a fraction over the normal's denominator.
    pub fn pairing(&self, x: &[i64]) -> Result<i64> {
        self.normal.pair(x)
    }
}

/// A full-dimensional lattice polytope with primitive vertices and the
/// origin in its interior. Facets are computed once, at construction.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    facet_lookup: HashMap<Vec<usize>, usize>,
}

/// Lattice points of a polytope, split by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointReport {
    pub total: usize,
    pub boundary: usize,
    pub interior_nonzero: usize,
    /// All lattice points, in lexicographic order.
    pub points: Vec<Vec<i64>>,
    pub boundary_points: Vec<Vec<i64>>,
}

/// A centrally symmetric pair of facets `(F, -F)` by facet index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FacetPair {
    pub facet: usize,
    pub opposite: usize,
}

impl LatticePolytope {
    /// Validates `columns` as the vertex set of a Fano polytope.
    ///
    /// Input that is not exactly a vertex set (duplicates, interior or
    /// redundant points, non-primitive points) is rejected.
    pub fn from_vertices(dim: usize, columns: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 || columns.len() < dim + 1 {
            return Err(PolytopeError::TooFewVertices {
                dim,
                needed: dim + 1,
                got: columns.len(),
            }
            .into());
        }
        let mut seen: HashMap<&[i64], usize> = HashMap::new();
        for (index, v) in columns.iter().enumerate() {
            if v.len() != dim {
                return Err(PolytopeError::WrongLength {
                    index,
                    dim,
                    got: v.len(),
                }
                .into());
            }
            if let Some(&first) = seen.get(v.as_slice()) {
                return Err(PolytopeError::DuplicateVertex { index, first }.into());
            }
            seen.insert(v, index);
            if v.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
                return Err(PolytopeError::NonPrimitiveVertex { index }.into());
            }
        }
        let facets = enumerate_facets(dim, &columns)?;

        // A point is a vertex iff the normals of the facets through it span.
        for index in 0..columns.len() {
            let through: Vec<&[i64]> = facets
                .iter()
                .filter(|f| f.contains(index))
                .map(|f| f.normal.numerators())
                .collect();
            if through.len() < dim || IntMatrix::from_rows(&through).rank()? < dim {
                return Err(PolytopeError::RedundantColumn { index }.into());
            }
        }
        let facet_lookup = facets
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        Ok(Self {
            dim,
            vertices: columns,
            facets,
            facet_lookup,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &[i64] {
        &self.vertices[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex matrix, one column per vertex.
    pub fn vertex_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.vertices)
    }

    /// All facets, sorted lexicographically by inner normal.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Index of the facet with exactly this (ascending) vertex set.
    pub fn facet_with_vertices(&self, vertices: &[usize]) -> Option<usize> {
        self.facet_lookup.get(vertices).copied()
    }

    pub fn vertex_index(&self, point: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|v| v == point)
    }

    /// The matrix whose columns are the vertices of facet `f`, in the
    /// facet's vertex order.
    pub fn facet_matrix(&self, f: usize) -> IntMatrix {
        let cols: Vec<&Vec<i64>> = self.facets[f]
            .vertices
            .iter()
            .map(|&i| &self.vertices[i])
            .collect();
        IntMatrix::from_columns(self.dim, &cols)
    }

    pub fn is_reflexive(&self) -> bool {
        self.facets.iter().all(|f| f.normal.is_integral())
    }

    pub fn is_simplicial(&self) -> bool {
        self.facets.iter().all(|f| f.vertices.len() == self.dim)
    }

    /// Simplicial with every facet a lattice basis.
    pub fn is_smooth_fano(&self) -> bool {
        self.is_simplicial()
            && (0..self.facets.len())
                .all(|f| matches!(self.facet_matrix(f).determinant(), Ok(d) if d.abs() == 1))
    }

    /// For each vertex, the index of its negative if that is also a vertex.
    pub fn negation_map(&self) -> Vec<Option<usize>> {
        let index: HashMap<&[i64], usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_slice(), i))
            .collect();
        self.vertices
            .iter()
            .map(|v| {
                let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                index.get(neg.as_slice()).copied()
            })
            .collect()
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.negation_map().iter().all(Option::is_some)
    }

    /// All pairs of facets `(F, -F)`, each unordered pair once with
    /// `facet < opposite`.
    pub fn pseudo_symmetric_pairs(&self) -> Vec<FacetPair> {
        let neg = self.negation_map();
        let mut pairs = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let Some(mut opposite) = f
                .vertices
                .iter()
                .map(|&v| neg[v])
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            opposite.sort_unstable();
            if let Some(j) = self.facet_with_vertices(&opposite) {
                if i < j {
                    pairs.push(FacetPair {
                        facet: i,
                        opposite: j,
                    });
                }
            }
        }
        pairs
    }

    pub fn is_pseudo_symmetric(&self) -> bool {
        !self.pseudo_symmetric_pairs().is_empty()
    }

    /// Index of the facet `-F` for facet `f`, if present.
    pub fn opposite_facet(&self, f: usize) -> Option<usize> {
        let neg = self.negation_map();
        let mut opposite = self.facets[f]
            .vertices
            .iter()
            .map(|&v| neg[v])
            .collect::<Option<Vec<_>>>()?;
        opposite.sort_unstable();
        self.facet_with_vertices(&opposite)
    }

    /// The dual polytope, whose vertices are the inner normals in facet order.
    pub fn dual(&self) -> Result<LatticePolytope> {
        let normals = self.dual_vertices()?;
        LatticePolytope::from_vertices(self.dim, normals)
    }

    /// Vertices of the dual without validating or enumerating its facets.
    pub fn dual_vertices(&self) -> Result<Vec<Vec<i64>>> {
        self.facets
            .iter()
            .map(|f| f.normal.to_integers().ok_or(Error::NotReflexive))
            .collect()
    }

    /// True iff `x` satisfies every facet inequality.
    pub fn contains_point(&self, x: &[i64]) -> Result<bool> {
        for f in &self.facets {
            if f.pairing(x)? < -f.normal.denominator() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Indices of facets whose hyperplane contains `x`.
    pub fn facets_containing_point(&self, x: &[i64]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            if f.pairing(x)? == -f.normal.denominator() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Enumerates lattice points by scanning the bounding box of the vertices.
    pub fn lattice_points(&self) -> Result<LatticePointReport> {
        let d = self.dim;
        let lo: Vec<i64> = (0..d)
            .map(|k| self.vertices.iter().map(|v| v[k]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..d)
            .map(|k| self.vertices.iter().map(|v| v[k]).max().unwrap())
            .collect();
        let mut points = Vec::new();
        let mut boundary_points = Vec::new();
        let mut x = lo.clone();
        'scan: loop {
            let mut inside = true;
            let mut on_boundary = false;
            for f in &self.facets {
                let s = f.pairing(&x)?;
                let den = f.normal.denominator();
                if s < -den {
                    inside = false;
                    break;
                }
                if s == -den {
                    on_boundary = true;
                }
            }
            if inside {
                if on_boundary {
                    boundary_points.push(x.clone());
                }
                points.push(x.clone());
            }
            for k in (0..d).rev() {
                if x[k] < hi[k] {
                    x[k] += 1;
                    continue 'scan;
                }
                x[k] = lo[k];
            }
            break;
        }
        let total = points.len();
        let boundary = boundary_points.len();
        let has_origin = points.iter().any(|p| p.iter().all(|&c| c == 0));
        Ok(LatticePointReport {
            total,
            boundary,
            interior_nonzero: total - boundary - usize::from(has_origin),
            points,
            boundary_points,
        })
    }

    /// Vertex set of the smallest face containing the given vertices, or
    /// `None` if no facet contains them all.
    pub fn smallest_face(&self, vertices: &[usize]) -> Option<BTreeSet<usize>> {
        let mut face: Option<BTreeSet<usize>> = None;
        for f in &self.facets {
            if vertices.iter().all(|&v| f.contains(v)) {
                let verts: BTreeSet<usize> = f.vertices.iter().copied().collect();
                face = Some(match face {
                    None => verts,
                    Some(acc) => acc.intersection(&verts).copied().collect(),
                });
            }
        }
        face
    }

    /// True iff `conv(v, w)` is an edge.
    pub fn is_edge(&self, v: usize, w: usize) -> bool {
        v != w && self.smallest_face(&[v, w]).is_some_and(|f| f.len() == 2)
    }

    /// Affine dimension of a set of vertices.
    pub fn affine_dimension(&self, vertices: &[usize]) -> Result<usize> {
        if vertices.is_empty() {
            return Ok(0);
        }
        let base = &self.vertices[vertices[0]];
        let diffs: Vec<Vec<i64>> = vertices[1..]
            .iter()
            .map(|&v| {
                self.vertices[v]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        if diffs.is_empty() {
            return Ok(0);
        }
        IntMatrix::from_rows(&diffs).rank()
    }

    /// `(f_0, ..., f_{d-1})`, from all intersections of facet vertex sets.
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        let n = self.vertices.len();
        let facet_sets: Vec<VertexSet> = self
            .facets
            .iter()
            .map(|f| VertexSet::from_indices(n, &f.vertices))
            .collect();
        let mut all: HashSet<VertexSet> = facet_sets.iter().cloned().collect();
        let mut frontier: Vec<VertexSet> = facet_sets.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for face in &frontier {
                for facet in &facet_sets {
                    let meet = face.intersect(facet);
                    if !meet.is_empty() && !all.contains(&meet) {
                        all.insert(meet.clone());
                        next.push(meet);
                    }
                }
            }
            frontier = next;
        }
        let simplicial = self.is_simplicial();
        let mut f = vec![0; self.dim];
        for face in &all {
            let size = face.len();
            let k = if simplicial || size <= 2 {
                size - 1
            } else {
                self.affine_dimension(&face.indices())?
            };
            f[k] += 1;
        }
        Ok(f)
    }

    /// True iff both polytopes have the same vertex set (in any order).
    pub fn same_vertex_set(&self, other: &LatticePolytope) -> bool {
        self.dim == other.dim && {
            let a: BTreeSet<&Vec<i64>> = self.vertices.iter().collect();
            let b: BTreeSet<&Vec<i64>> = other.vertices.iter().collect();
            a == b
        }
    }

    /// Image under `u`, which should be unimodular.
    pub fn transform(&self, u: &IntMatrix) -> Result<LatticePolytope> {
        if !linalg::is_unimodular(u)? || u.rows() != self.dim {
            return Err(Error::InvalidArgument(
                "transform must be a unimodular matrix of the ambient dimension".into(),
            ));
        }
        let verts = self
            .vertices
            .iter()
            .map(|v| u.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        LatticePolytope::from_vertices(self.dim, verts)
    }
}

/// Fixed-size bit set over vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct VertexSet(Vec<u64>);

impl VertexSet {
    fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for &i in indices {
            words[i / 64] |= 1 << (i % 64);
        }
        Self(words)
    }

    fn intersect(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.0.iter().enumerate() {
            for b in 0..64 {
                if w >> b & 1 == 1 {
                    out.push(k * 64 + b);
                }
            }
        }
        out
    }
}

/// Lexicographic order on rational vectors by value.
fn cmp_rational(a: &RationalVector, b: &RationalVector) -> Ordering {
    let (da, db) = (a.denominator() as i128, b.denominator() as i128);
    for (&x, &y) in a.numerators().iter().zip(b.numerators()) {
        match (x as i128 * db).cmp(&(y as i128 * da)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Primitive integer normal of the affine hyperplane through `points`
/// (`dim` of them), or `None` if they are affinely dependent.
fn hyperplane_normal(dim: usize, points: &[&Vec<i64>]) -> Result<Option<Vec<i64>>> {
    let base = points[0];
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal = Vec::with_capacity(dim);
    if dim == 1 {
        normal.push(1);
    } else {
        let d = IntMatrix::from_rows(&diffs);
        let rows: Vec<usize> = (0..dim - 1).collect();
        for k in 0..dim {
            let cols: Vec<usize> = (0..dim).filter(|&c| c != k).collect();
            let minor = d.submatrix(&rows, &cols).determinant()?;
            normal.push(if k % 2 == 0 { minor } else { -minor });
        }
    }
    let g = normal.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        return Ok(None);
    }
    Ok(Some(normal.into_iter().map(|x| x / g).collect()))
}

/// Brute force over `dim`-subsets: each supporting hyperplane through an
/// affinely independent subset is a facet; coplanar subsets are merged.
fn enumerate_facets(dim: usize, vertices: &[Vec<i64>]) -> Result<Vec<Facet>> {
    let n = vertices.len();
    let base = &vertices[0];
    let diffs: Vec<Vec<i64>> = vertices[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    if IntMatrix::from_rows(&diffs).rank()? < dim {
        return Err(PolytopeError::NotFullDimensional.into());
    }

    let mut found: HashMap<Vec<i64>, (i64, Vec<usize>)> = HashMap::new();
    for subset in (0..n).combinations(dim) {
        let points: Vec<&Vec<i64>> = subset.iter().map(|&i| &vertices[i]).collect();
        let Some(mut normal) = hyperplane_normal(dim, &points)? else {
            continue;
        };
        let level = dot(&normal, points[0])?;
        let mut above = false;
        let mut below = false;
        let mut on = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            match dot(&normal, v)?.cmp(&level) {
                Ordering::Greater => above = true,
                Ordering::Less => below = true,
                Ordering::Equal => on.push(i),
            }
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        let mut level = level;
        if below {
            normal.iter_mut().for_each(|x| *x = -*x);
            level = -level;
        }
        found.entry(normal).or_insert((level, on));
    }

    let mut facets = Vec::with_capacity(found.len());
    for (normal, (level, on)) in found {
        if level >= 0 {
            return Err(PolytopeError::OriginNotInterior.into());
        }
        facets.push(Facet {
            vertices: on,
            normal: RationalVector::new(normal, -level)?,
        });
    }
    facets.sort_by(|a, b| cmp_rational(&a.normal, &b.normal));
    Ok(facets)
}
