//! Wirth matrices: the block matrices `(2 id_f, 0; C, id_{d-f})` with
//! odd-weight 0/1 columns in `C` that classify reflexive cs-crosspolytopes.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, gcd_of_maximal_minors, IntMatrix};
use crate::polytope::LatticePolytope;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WirthJson")]
pub struct WirthMatrix {
    dim: usize,
    f: usize,
    /// `d - f` rows, `f` columns.
    c: Vec<Vec<u8>>,
}

#[derive(Deserialize)]
struct WirthJson {
    dim: usize,
    f: usize,
    c: Vec<Vec<u8>>,
}

impl TryFrom<WirthJson> for WirthMatrix {
    type Error = Error;
    fn try_from(j: WirthJson) -> Result<Self> {
        WirthMatrix::new(j.dim, j.f, j.c)
    }
}

impl WirthMatrix {
    /// Builds a Wirth matrix from its `C` block.
    pub fn new(dim: usize, f: usize, c: Vec<Vec<u8>>) -> Result<Self> {
        if dim == 0 && f == 0 && c.is_empty() {
            return Ok(Self::empty());
        }
        if f >= dim {
            return Err(Error::InvalidWirth(format!(
                "f = {f} must be below d = {dim}"
            )));
        }
        if c.len() != dim - f || c.iter().any(|r| r.len() != f) {
            return Err(Error::InvalidWirth(format!(
                "C block must be {}x{f}",
                dim - f
            )));
        }
        if c.iter().flatten().any(|&x| x > 1) {
            return Err(Error::InvalidWirth("C block must be 0/1".into()));
        }
        for j in 0..f {
            let weight = c.iter().filter(|r| r[j] == 1).count();
            if weight % 2 == 0 {
                return Err(Error::InvalidWirth(format!(
                    "column {} of C has even weight {weight}",
                    j + 1
                )));
            }
        }
        Ok(Self { dim, f, c })
    }

    /// The zero-dimensional Wirth matrix left over when everything reduces.
    pub fn empty() -> Self {
        Self {
            dim: 0,
            f: 0,
            c: Vec::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            f: 0,
            c: vec![Vec::new(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn c_block(&self) -> &[Vec<u8>] {
        &self.c
    }

    /// `2^f`.
    pub fn determinant(&self) -> i64 {
        1 << self.f
    }

    pub fn assembled(&self) -> IntMatrix {
        let d = self.dim;
        let mut m = IntMatrix::zeros(d, d);
        for i in 0..self.f {
            m[(i, i)] = 2;
        }
        for (k, row) in self.c.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[(self.f + k, j)] = x as i64;
            }
            m[(self.f + k, self.f + k)] = 1;
        }
        m
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        self.assembled().columns()
    }

    /// True iff row `i` of the assembled matrix is a unit row.
    pub fn is_unit_row(&self, i: usize) -> bool {
        i >= self.f && self.c[i - self.f].iter().all(|&x| x == 0)
    }

    /// No row of `C` is zero.
    pub fn is_one_minimal(&self) -> bool {
        (self.f..self.dim).all(|i| !self.is_unit_row(i))
    }

    /// Restriction to an index set that is a union of the top block and
    /// some identity rows. Dropped identity rows must be zero in `C`.
    pub(crate) fn restrict(&self, keep: &[usize]) -> Result<WirthMatrix> {
        let f = keep.iter().filter(|&&i| i < self.f).count();
        if keep.iter().take(f).any(|&i| i >= self.f) || f != self.f {
            return Err(Error::Internal(
                "restriction must keep the whole 2-block, in front".into(),
            ));
        }
        let c: Vec<Vec<u8>> = keep[f..]
            .iter()
            .map(|&i| self.c[i - self.f].clone())
            .collect();
        WirthMatrix::new(keep.len(), f, c)
            .map_err(|e| Error::Internal(format!("restriction is not Wirth: {e}")))
    }

    /// Block sum with `extra` trailing unit rows (segment directions).
    pub fn pad_with_segments(&self, extra: usize) -> WirthMatrix {
        let mut c = self.c.clone();
        c.extend(std::iter::repeat_n(vec![0u8; self.f], extra));
        WirthMatrix {
            dim: self.dim + extra,
            f: self.f,
            c,
        }
    }
}

impl std::fmt::Display for WirthMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.assembled())
    }
}

/// Reads a square matrix as a Wirth matrix, requiring the literal block layout.
pub fn validate(m: &IntMatrix) -> Result<WirthMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let d = m.rows();
    if d == 0 {
        return Err(Error::InvalidWirth("empty matrix".into()));
    }
    let f = (0..d).take_while(|&i| m[(i, i)] == 2).count();
    if f == d {
        return Err(Error::InvalidWirth("f must be smaller than d".into()));
    }
    for i in 0..d {
        for j in 0..d {
            let x = m[(i, j)];
            let expected_ok = match (i < f, j < f) {
                (true, true) => x == if i == j { 2 } else { 0 },
                (true, false) => x == 0,
                (false, true) => x == 0 || x == 1,
                (false, false) => x == i64::from(i == j),
            };
            if !expected_ok {
                return Err(Error::InvalidWirth(format!(
                    "entry ({}, {}) = {x} breaks the block pattern",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let c = (f..d)
        .map(|i| (0..f).map(|j| m[(i, j)] as u8).collect())
        .collect();
    WirthMatrix::new(d, f, c)
}

/// A Wirth matrix with its unit rows (segment directions) removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub core: WirthMatrix,
    /// Number of deleted segment directions.
    pub segments: usize,
    /// For each core row/column, its index in the original matrix.
    pub kept_indices: Vec<usize>,
}

/// Deletes every unit row of the identity block together with its column.
pub fn reduce(a: &WirthMatrix) -> Reduction {
    let kept_indices: Vec<usize> = (0..a.dim).filter(|&i| !a.is_unit_row(i)).collect();
    let segments = a.dim - kept_indices.len();
    let core = if kept_indices.is_empty() {
        WirthMatrix::empty()
    } else {
        let c = kept_indices[a.f..]
            .iter()
            .map(|&i| a.c[i - a.f].clone())
            .collect();
        WirthMatrix {
            dim: kept_indices.len(),
            f: a.f,
            c,
        }
    };
    Reduction {
        core,
        segments,
        kept_indices,
    }
}

fn all_permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).permutations(n)
}

/// Equivalence of two Wirth matrices of equal dimension: equal determinant
/// and some column permutation `pi` with `a^pi * b^-1` integral.
///
/// For `b` in Wirth form the integrality reduces to a parity condition on
/// the permuted columns `x` of `a`: `x_j = sum_k C[k][j] x_{f+k} (mod 2)`
/// for every `j < f`. The search fixes the `d - f` trailing columns and
/// then matches the required residues against the remaining ones.
pub fn equivalent(a: &WirthMatrix, b: &WirthMatrix) -> Result<bool> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            a.dim, b.dim
        )));
    }
    if a.f != b.f {
        return Ok(false);
    }
    let (d, f) = (a.dim, b.f);
    if d == 0 {
        return Ok(true);
    }
    let residues: Vec<u64> = a
        .columns()
        .iter()
        .map(|col| {
            col.iter()
                .enumerate()
                .fold(0u64, |acc, (i, &x)| acc | (((x & 1) as u64) << i))
        })
        .collect();
    let mut tail = Vec::with_capacity(d - f);
    Ok(search_tail(&residues, b, &mut tail, 0))
}

fn search_tail(residues: &[u64], b: &WirthMatrix, tail: &mut Vec<usize>, used: u64) -> bool {
    let (d, f) = (b.dim, b.f);
    if tail.len() == d - f {
        let mut required: Vec<u64> = (0..f)
            .map(|j| {
                (0..d - f)
                    .filter(|&k| b.c[k][j] == 1)
                    .fold(0u64, |acc, k| acc ^ residues[tail[k]])
            })
            .collect();
        let mut available: Vec<u64> = (0..d)
            .filter(|&i| used >> i & 1 == 0)
            .map(|i| residues[i])
            .collect();
        required.sort_unstable();
        available.sort_unstable();
        return required == available;
    }
    for i in 0..d {
        if used >> i & 1 == 0 {
            tail.push(i);
            if search_tail(residues, b, tail, used | 1 << i) {
                return true;
            }
            tail.pop();
        }
    }
    false
}

/// General integrality test for arbitrary nonsingular square matrices:
/// equal `|det|` and some column permutation `pi` with `a^pi * b^-1` integral.
pub fn equivalent_matrices(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(
            "equivalence needs square matrices of one size".into(),
        ));
    }
    let det_b = b.determinant()?;
    if det_b == 0 {
        return Err(Error::Singular);
    }
    if a.determinant()?.abs() != det_b.abs() {
        return Ok(false);
    }
    let adj = b.adjugate()?;
    for pi in all_permutations(a.cols()) {
        let prod = a.select_columns(&pi).mul(&adj)?;
        if prod.entries().iter().all(|x| x % det_b == 0) {
            return Ok(true);
        }
    }
    Ok(false)
}

static ONE_MINIMAL: [OnceLock<Vec<WirthMatrix>>; 9] = [const { OnceLock::new() }; 9];

/// One representative per equivalence class of 1-minimal Wirth matrices of
/// dimension `d`, each the lexicographically smallest assembled matrix of
/// its class; sorted by `f`, then by matrix.
pub fn enumerate_one_minimal(d: usize) -> Vec<WirthMatrix> {
    match ONE_MINIMAL.get(d) {
        Some(cell) => cell.get_or_init(|| compute_one_minimal(d)).clone(),
        None => compute_one_minimal(d),
    }
}

fn compute_one_minimal(d: usize) -> Vec<WirthMatrix> {
    let mut out = Vec::new();
    for f in 1..d {
        let m = d - f;
        let odd: Vec<u32> = (1u32..1 << m).filter(|v| v.count_ones() % 2 == 1).collect();
        let full = (1u32 << m) - 1;
        let mut candidates: BTreeSet<Vec<Vec<u8>>> = BTreeSet::new();
        for cols in odd.iter().copied().combinations_with_replacement(f) {
            if cols.iter().fold(0, |acc, c| acc | c) != full {
                continue;
            }
            candidates.insert(lex_min_block(&cols, m));
        }
        let mut reps: Vec<WirthMatrix> = Vec::new();
        for c in candidates {
            let w = WirthMatrix { dim: d, f, c };
            let mut fresh = true;
            for r in &reps {
                if equivalent(&w, r).expect("same dimension") {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                reps.push(w);
            }
        }
        out.extend(reps);
    }
    out
}

/// Row-major lexicographically smallest `C` over row and column
/// permutations. Columns are given as bitmasks over the `m` rows.
fn lex_min_block(cols: &[u32], m: usize) -> Vec<Vec<u8>> {
    let f = cols.len();
    let mut best: Option<Vec<Vec<u8>>> = None;
    for pi in all_permutations(f) {
        let mut rows: Vec<Vec<u8>> = (0..m)
            .map(|k| pi.iter().map(|&j| (cols[j] >> k & 1) as u8).collect())
            .collect();
        rows.sort_unstable();
        if best.as_ref().is_none_or(|b| rows < *b) {
            best = Some(rows);
        }
    }
    best.unwrap_or_default()
}

/// Every Wirth class of dimension `d`: each 1-minimal core of dimension
/// `l` padded with `d - l` segment directions.
pub fn enumerate_all(d: usize) -> Vec<WirthMatrix> {
    let mut out = vec![WirthMatrix::identity(d)];
    for l in 2..=d {
        out.extend(
            enumerate_one_minimal(l)
                .iter()
                .map(|w| w.pad_with_segments(d - l)),
        );
    }
    out
}

/// The cs-crosspolytope `conv(±columns)`; vertex order is the columns
/// followed by their negatives.
pub fn polytope_from_wirth(a: &WirthMatrix) -> Result<LatticePolytope> {
    polytope_from_columns(&a.columns(), a.dim)
}

pub(crate) fn polytope_from_columns(cols: &[Vec<i64>], dim: usize) -> Result<LatticePolytope> {
    let mut verts: Vec<Vec<i64>> = cols.to_vec();
    verts.extend(
        cols.iter()
            .map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()),
    );
    LatticePolytope::from_vertices(dim, verts)
}

/// A Wirth matrix read off a facet: `transform * facet_columns = matrix`,
/// where `facet_columns` lists the polytope vertices `vertex_order` in order.
#[derive(Clone, Debug)]
pub struct FacetWirth {
    pub matrix: WirthMatrix,
    pub transform: IntMatrix,
    pub vertex_order: Vec<usize>,
}

/// Hermite reduction of a basis whose lattice sits between `2M` and `M`,
/// followed by the simultaneous row/column permutation that moves the
/// 2-diagonal to the front. Returns the Wirth matrix, the unimodular
/// transform, and the column order.
pub(crate) fn wirth_from_basis(l: &IntMatrix) -> Result<(WirthMatrix, IntMatrix, Vec<usize>)> {
    let (h, u) = linalg::hermite_normal_form(l)?;
    let d = h.rows();
    if let Some(j) = (0..d).find(|&j| !matches!(h[(j, j)], 1 | 2)) {
        return Err(Error::Internal(format!(
            "Hermite diagonal entry {} at {} is not 1 or 2",
            h[(j, j)],
            j + 1
        )));
    }
    let perm: Vec<usize> = (0..d)
        .filter(|&j| h[(j, j)] == 2)
        .chain((0..d).filter(|&j| h[(j, j)] == 1))
        .collect();
    let a = h.submatrix(&perm, &perm);
    let w = validate(&a)
        .map_err(|e| Error::Internal(format!("facet basis does not give a Wirth matrix: {e}")))?;
    Ok((w, u.select_rows(&perm), perm))
}

/// Reads the Wirth matrix of a reflexive cs-crosspolytope off one of its facets.
pub fn wirth_from_crosspolytope(p: &LatticePolytope, facet: usize) -> Result<FacetWirth> {
    let d = p.dim();
    if p.num_vertices() != 2 * d {
        return Err(Error::NotCrossPolytope(format!(
            "{} vertices, expected {}",
            p.num_vertices(),
            2 * d
        )));
    }
    if !p.is_centrally_symmetric() {
        return Err(Error::NotCrossPolytope("not centrally symmetric".into()));
    }
    if !p.is_simplicial() {
        return Err(Error::NotCrossPolytope("not simplicial".into()));
    }
    if !p.is_reflexive() {
        return Err(Error::NotCrossPolytope("not reflexive".into()));
    }
    if facet >= p.facets().len() {
        return Err(Error::InvalidArgument(format!(
            "facet index {facet} out of range"
        )));
    }
    let (matrix, transform, perm) = wirth_from_basis(&p.facet_matrix(facet))?;
    let facet_vertices = p.facets()[facet].vertices();
    let vertex_order = perm.iter().map(|&j| facet_vertices[j]).collect();
    Ok(FacetWirth {
        matrix,
        transform,
        vertex_order,
    })
}

/// A proper nonempty subset `S` of the columns such that `conv(±columns)`
/// splits along `S`, if one exists. Splitting along `S` holds iff the
/// saturation indices of the two column groups multiply to `|det|`.
pub fn find_splitting(a: &IntMatrix) -> Result<Option<Vec<usize>>> {
    let d = a.cols();
    let det = a.determinant()?.abs();
    if det == 0 {
        return Err(Error::Singular);
    }
    // column 0 always on the first side, so each split is tried once
    for mask in 0u64..(1 << (d - 1)) {
        let side: Vec<usize> = std::iter::once(0)
            .chain((1..d).filter(|&j| mask >> (j - 1) & 1 == 1))
            .collect();
        if side.len() == d {
            continue;
        }
        let rest: Vec<usize> = (0..d).filter(|j| !side.contains(j)).collect();
        let g1 = gcd_of_maximal_minors(&a.select_columns(&side))?;
        let g2 = gcd_of_maximal_minors(&a.select_columns(&rest))?;
        if g1.checked_mul(g2).ok_or(Error::Overflow)? == det {
            return Ok(Some(side));
        }
    }
    Ok(None)
}
