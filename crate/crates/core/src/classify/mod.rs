//! Decomposition, normal forms, the classification generator and the
//! bound verifiers for pseudo-symmetric simplicial reflexive polytopes.

mod canonical;
mod decompose;
mod embed;
mod frame;
pub mod verify;

pub use canonical::{canonical_form, is_isomorphic, CanonicalForm};
pub use decompose::{
    compose, decompose, decompose_all_pairs, decompose_at, representative, Decomposition,
};
pub use embed::{dual_embedding_bound, embed_in_cube, DualEmbedding};
pub use frame::{pseudo_frame, wirth_basis, PseudoSymFrame, WirthBasis};
pub use verify::{verify_theorems, BoundCheck, TheoremReport};

use crate::error::{Error, Result};
use crate::wirth;

pub const MAX_DIM: usize = 8;

/// Partitions of `n` into even parts, each ascending.
fn even_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let mut k = min;
        while k <= rest {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
            k += 2;
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        go(n, 2, &mut Vec::new(), &mut out);
    }
    out
}

/// Every isomorphism class of `d`-dimensional pseudo-symmetric simplicial
/// reflexive polytopes, as factor multisets in ascending order.
pub fn classify(d: usize) -> Result<Vec<Decomposition>> {
    if !(1..=MAX_DIM).contains(&d) {
        return Err(Error::InvalidArgument(format!(
            "dimension {d} outside 1..={MAX_DIM}"
        )));
    }
    let mut out = Vec::new();
    for l in std::iter::once(0).chain(2..=d) {
        let cores: Vec<Option<wirth::WirthMatrix>> = if l == 0 {
            vec![None]
        } else {
            wirth::enumerate_one_minimal(l)
                .into_iter()
                .map(Some)
                .collect()
        };
        let rest = d - l;
        for core in &cores {
            for dp_total in (0..=rest).step_by(2) {
                for dp in even_partitions(dp_total) {
                    for pdp_total in (0..=rest - dp_total).step_by(2) {
                        for pdp in even_partitions(pdp_total) {
                            out.push(Decomposition {
                                dim: d,
                                core: core.clone(),
                                segments: rest - dp_total - pdp_total,
                                del_pezzo: dp.clone(),
                                pseudo_del_pezzo: pdp,
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The classes without a singular cs-crosspolytope factor.
pub fn classify_smooth(d: usize) -> Result<Vec<Decomposition>> {
    Ok(classify(d)?
        .into_iter()
        .filter(Decomposition::is_smooth)
        .collect())
}
