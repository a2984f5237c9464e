//! Splitting into irreducible factors and putting the factors back together.

use serde::{Deserialize, Serialize};

use super::frame::{pseudo_frame, wirth_basis};
use crate::catalog::{self, FanoFactor};
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::wirth::{self, WirthMatrix};

/// The factor multiset of a pseudo-symmetric simplicial reflexive polytope.
///
/// `core` is the representative from [`wirth::enumerate_one_minimal`] of
/// the singular cs-crosspolytope factor, if there is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DecompositionJson")]
pub struct Decomposition {
    pub dim: usize,
    pub core: Option<WirthMatrix>,
    pub segments: usize,
    /// Sorted ascending.
    pub del_pezzo: Vec<usize>,
    /// Sorted ascending.
    pub pseudo_del_pezzo: Vec<usize>,
}

#[derive(Deserialize)]
struct DecompositionJson {
    dim: usize,
    core: Option<WirthMatrix>,
    segments: usize,
    del_pezzo: Vec<usize>,
    pseudo_del_pezzo: Vec<usize>,
}

impl TryFrom<DecompositionJson> for Decomposition {
    type Error = Error;
    fn try_from(j: DecompositionJson) -> Result<Self> {
        let dec = Decomposition {
            dim: j.dim,
            core: j.core,
            segments: j.segments,
            del_pezzo: j.del_pezzo,
            pseudo_del_pezzo: j.pseudo_del_pezzo,
        };
        dec.validate()?;
        Ok(dec)
    }
}

impl Decomposition {
    pub fn total_dim(&self) -> usize {
        self.core.as_ref().map_or(0, WirthMatrix::dim)
            + self.segments
            + self.del_pezzo.iter().sum::<usize>()
            + self.pseudo_del_pezzo.iter().sum::<usize>()
    }

    pub fn is_smooth(&self) -> bool {
        self.core.is_none()
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidArgument(
                "decomposition of dimension 0".into(),
            ));
        }
        if self.total_dim() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "factor dimensions add up to {}, expected {}",
                self.total_dim(),
                self.dim
            )));
        }
        if let Some(c) = &self.core {
            if c.dim() < 2 || !c.is_one_minimal() {
                return Err(Error::InvalidArgument(format!("core {c} is not 1-minimal")));
            }
        }
        for &k in self.del_pezzo.iter().chain(&self.pseudo_del_pezzo) {
            if k < 2 || k % 2 == 1 {
                return Err(Error::InvalidArgument(format!(
                    "factor dimension {k} must be even"
                )));
            }
        }
        if !self.del_pezzo.is_sorted() || !self.pseudo_del_pezzo.is_sorted() {
            return Err(Error::InvalidArgument(
                "factor dimensions must be sorted".into(),
            ));
        }
        Ok(())
    }

    /// Factors in composition order: core, segments, del Pezzo, pseudo-del Pezzo.
    pub fn factors(&self) -> Vec<FanoFactor> {
        let mut out = Vec::new();
        if let Some(c) = &self.core {
            out.push(FanoFactor::CsCross(c.clone()));
        }
        out.extend(std::iter::repeat_n(FanoFactor::Segment, self.segments));
        out.extend(self.del_pezzo.iter().map(|&k| FanoFactor::DelPezzo(k)));
        out.extend(
            self.pseudo_del_pezzo
                .iter()
                .map(|&k| FanoFactor::PseudoDelPezzo(k)),
        );
        out
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if let Some(c) = &self.core {
            parts.push(format!("core{c}"));
        }
        if self.segments > 0 {
            parts.push(format!("{}x[-1,1]", self.segments));
        }
        parts.extend(self.del_pezzo.iter().map(|k| format!("V{k}")));
        parts.extend(self.pseudo_del_pezzo.iter().map(|k| format!("V~{k}")));
        write!(f, "{}", parts.join(" + "))
    }
}

fn check_input(p: &LatticePolytope) -> Result<()> {
    if !p.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    if !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    Ok(())
}

/// Decomposes using the first facet that has an opposite facet.
pub fn decompose(p: &LatticePolytope) -> Result<Decomposition> {
    check_input(p)?;
    let pair = p
        .pseudo_symmetric_pairs()
        .into_iter()
        .next()
        .ok_or(Error::NotPseudoSymmetric)?;
    decompose_at(p, pair.facet)
}

/// Decomposes from every facet with an opposite facet and checks that all
/// answers agree.
pub fn decompose_all_pairs(p: &LatticePolytope) -> Result<Decomposition> {
    check_input(p)?;
    let mut result: Option<Decomposition> = None;
    for pair in p.pseudo_symmetric_pairs() {
        for facet in [pair.facet, pair.opposite] {
            let dec = decompose_at(p, facet)?;
            match &result {
                None => result = Some(dec),
                Some(r) if *r != dec => {
                    return Err(Error::Internal(format!(
                        "facet {facet} decomposes as {dec}, expected {r}"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    result.ok_or(Error::NotPseudoSymmetric)
}

/// Decomposition read off the frame of one facet whose negative is a facet.
pub fn decompose_at(p: &LatticePolytope, facet: usize) -> Result<Decomposition> {
    let frame = pseudo_frame(p, facet)?;
    let wb = wirth_basis(&frame)?;

    let mut del_pezzo = Vec::new();
    let mut pseudo_del_pezzo = Vec::new();
    let pairs = &frame.index_pairs;
    let mut used = vec![false; pairs.len()];
    for k in 0..pairs.len() {
        if used[k] {
            continue;
        }
        used[k] = true;
        let size = 2 * pairs[k].0.len();
        match (0..pairs.len()).find(|&m| m != k && pairs[m].0 == pairs[k].1) {
            Some(m) => {
                used[m] = true;
                del_pezzo.push(size);
            }
            None => pseudo_del_pezzo.push(size),
        }
    }
    del_pezzo.sort_unstable();
    pseudo_del_pezzo.sort_unstable();

    let paired = frame.paired_indices();
    let pos = wb.positions();
    let mut keep: Vec<usize> = (0..p.dim())
        .filter(|i| !paired.contains(i))
        .map(|i| pos[i])
        .collect();
    keep.sort_unstable();
    let cross = wb.matrix.restrict(&keep)?;
    let reduction = wirth::reduce(&cross);
    let core = if reduction.core.dim() == 0 {
        None
    } else {
        Some(representative(&reduction.core)?)
    };

    let dec = Decomposition {
        dim: p.dim(),
        core,
        segments: reduction.segments,
        del_pezzo,
        pseudo_del_pezzo,
    };
    if dec.total_dim() != dec.dim {
        return Err(Error::Internal(format!(
            "factors of {dec} do not add up to {}",
            dec.dim
        )));
    }
    Ok(dec)
}

/// The listed 1-minimal matrix equivalent to `core`.
pub fn representative(core: &WirthMatrix) -> Result<WirthMatrix> {
    let list = wirth::enumerate_one_minimal(core.dim());
    for rep in list {
        if wirth::equivalent(core, &rep)? {
            return Ok(rep);
        }
    }
    Err(Error::Internal(format!(
        "{core} matches no listed 1-minimal class"
    )))
}

/// Free sum of the factors: core, segments, del Pezzo by dimension,
/// pseudo-del Pezzo by dimension.
pub fn compose(dec: &Decomposition) -> Result<LatticePolytope> {
    dec.validate()?;
    catalog::free_sum_factors(&dec.factors())
}
