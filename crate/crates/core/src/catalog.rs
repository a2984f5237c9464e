//! Named polytope families and the free sum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::wirth::{self, WirthMatrix};

/// One irreducible building block of a pseudo-symmetric simplicial reflexive polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FanoFactor {
    Segment,
    DelPezzo(usize),
    PseudoDelPezzo(usize),
    CsCross(WirthMatrix),
}

impl FanoFactor {
    pub fn dim(&self) -> usize {
        match self {
            FanoFactor::Segment => 1,
            FanoFactor::DelPezzo(k) | FanoFactor::PseudoDelPezzo(k) => *k,
            FanoFactor::CsCross(w) => w.dim(),
        }
    }

    pub fn polytope(&self) -> Result<LatticePolytope> {
        match self {
            FanoFactor::Segment => Ok(segment()),
            FanoFactor::DelPezzo(k) => del_pezzo(*k),
            FanoFactor::PseudoDelPezzo(k) => pseudo_del_pezzo(*k),
            FanoFactor::CsCross(w) => {
                if w.dim() < 2 || !w.is_one_minimal() {
                    return Err(Error::InvalidArgument(format!(
                        "{w} is not a 1-minimal core"
                    )));
                }
                wirth::polytope_from_wirth(w)
            }
        }
    }
}

fn unit(d: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = sign;
    v
}

pub fn segment() -> LatticePolytope {
    LatticePolytope::from_vertices(1, vec![vec![1], vec![-1]]).expect("segment is Fano")
}

/// `[-1,1]^d`, vertices in lexicographic order.
pub fn cube(d: usize) -> Result<LatticePolytope> {
    if d < 1 {
        return Err(Error::InvalidArgument("cube needs d >= 1".into()));
    }
    if d > 20 {
        return Err(Error::InvalidArgument(format!(
            "cube of dimension {d} is too large"
        )));
    }
    let verts = (0u32..1 << d)
        .map(|mask| {
            (0..d)
                .map(|i| if mask >> (d - 1 - i) & 1 == 1 { 1 } else { -1 })
                .collect()
        })
        .collect();
    LatticePolytope::from_vertices(d, verts)
}

fn check_even(k: usize) -> Result<()> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "dimension {k} must be even and at least 2"
        )));
    }
    Ok(())
}

fn pezzo_vertices(k: usize, both: bool) -> Vec<Vec<i64>> {
    let mut verts = Vec::with_capacity(2 * k + 2);
    for i in 0..k {
        verts.push(unit(k, i, 1));
        verts.push(unit(k, i, -1));
    }
    if both {
        verts.push(vec![1; k]);
    }
    verts.push(vec![-1; k]);
    verts
}

/// `V_k = conv(±e_1, ..., ±e_k, ±(e_1 + ... + e_k))`.
pub fn del_pezzo(k: usize) -> Result<LatticePolytope> {
    check_even(k)?;
    LatticePolytope::from_vertices(k, pezzo_vertices(k, true))
}

/// `V_k` without the vertex `e_1 + ... + e_k`.
pub fn pseudo_del_pezzo(k: usize) -> Result<LatticePolytope> {
    check_even(k)?;
    LatticePolytope::from_vertices(k, pezzo_vertices(k, false))
}

/// Exact binomial coefficient from a Pascal row.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u64; n + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=i).rev() {
            row[j] = row[j].saturating_add(row[j - 1]);
        }
    }
    row[k]
}

pub fn facet_count_del_pezzo(k: usize) -> Result<u64> {
    check_even(k)?;
    (k as u64 + 1)
        .checked_mul(binomial(k, k / 2))
        .ok_or(Error::Overflow)
}

pub fn facet_count_pseudo_del_pezzo(k: usize) -> Result<u64> {
    check_even(k)?;
    let tail: u64 = (k / 2..=k).map(|i| binomial(k, i)).sum();
    (k as u64)
        .checked_mul(binomial(k - 1, k / 2))
        .and_then(|x| x.checked_add(tail))
        .ok_or(Error::Overflow)
}

/// Wirth matrix `(2 id_{d-1}, 0; 1 ... 1, 1)`.
pub fn a_matrix(d: usize) -> Result<WirthMatrix> {
    if d < 2 {
        return Err(Error::InvalidArgument("A_d needs d >= 2".into()));
    }
    WirthMatrix::new(d, d - 1, vec![vec![1; d - 1]])
}

/// The cs-crosspolytope of [`a_matrix`].
pub fn d_polytope(d: usize) -> Result<LatticePolytope> {
    wirth::polytope_from_wirth(&a_matrix(d)?)
}

/// The dual of [`d_polytope`] written out directly:
/// `±(-c_1, ..., -c_{d-1}, 1)` for `c` in `{0,1}^{d-1}`.
pub fn dual_of_d_polytope(d: usize) -> Result<LatticePolytope> {
    if !(2..=20).contains(&d) {
        return Err(Error::InvalidArgument(format!(
            "dual of D_d needs 2 <= d <= 20, got {d}"
        )));
    }
    let half: Vec<Vec<i64>> = (0u32..1 << (d - 1))
        .map(|mask| {
            let mut v: Vec<i64> = (0..d - 1).map(|i| -i64::from(mask >> i & 1)).collect();
            v.push(1);
            v
        })
        .collect();
    let mut verts = half.clone();
    verts.extend(
        half.iter()
            .map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()),
    );
    LatticePolytope::from_vertices(d, verts)
}

/// `conv(P_1 ⊕ 0, 0 ⊕ P_2, ...)` with coordinates padded in input order.
pub fn free_sum(parts: &[LatticePolytope]) -> Result<LatticePolytope> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("free sum of no polytopes".into()));
    }
    let dim: usize = parts.iter().map(LatticePolytope::dim).sum();
    let mut verts = Vec::new();
    let mut offset = 0;
    for p in parts {
        for v in p.vertices() {
            let mut w = vec![0; dim];
            w[offset..offset + p.dim()].copy_from_slice(v);
            verts.push(w);
        }
        offset += p.dim();
    }
    LatticePolytope::from_vertices(dim, verts)
}

pub fn free_sum_factors(factors: &[FanoFactor]) -> Result<LatticePolytope> {
    let parts = factors
        .iter()
        .map(FanoFactor::polytope)
        .collect::<Result<Vec<_>>>()?;
    free_sum(&parts)
}
