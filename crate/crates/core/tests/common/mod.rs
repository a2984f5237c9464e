#![allow(dead_code)]

use itertools::Itertools;
use pseudosym::{IntMatrix, LatticePolytope, WirthMatrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rows(r: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(r)
}

fn wirth(r: &[&[i64]]) -> WirthMatrix {
    pseudosym::wirth::validate(&rows(r)).expect("fixture is a Wirth matrix")
}

/// 1-minimal Wirth matrices listed per dimension, one per class.
pub fn listed_one_minimal(d: usize) -> Vec<WirthMatrix> {
    match d {
        1 => vec![],
        2 => vec![wirth(&[&[2, 0], &[1, 1]])],
        3 => vec![wirth(&[&[2, 0, 0], &[0, 2, 0], &[1, 1, 1]])],
        4 => vec![
            wirth(&[&[2, 0, 0, 0], &[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1]]),
            wirth(&[&[2, 0, 0, 0], &[0, 2, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1]]),
            wirth(&[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[1, 1, 1, 1]]),
        ],
        5 => vec![
            wirth(&[
                &[2, 0, 0, 0, 0],
                &[0, 2, 0, 0, 0],
                &[1, 1, 1, 0, 0],
                &[1, 1, 0, 1, 0],
                &[1, 1, 0, 0, 1],
            ]),
            wirth(&[
                &[2, 0, 0, 0, 0],
                &[0, 2, 0, 0, 0],
                &[0, 0, 2, 0, 0],
                &[1, 0, 0, 1, 0],
                &[0, 1, 1, 0, 1],
            ]),
            wirth(&[
                &[2, 0, 0, 0, 0],
                &[0, 2, 0, 0, 0],
                &[0, 0, 2, 0, 0],
                &[0, 0, 0, 2, 0],
                &[1, 1, 1, 1, 1],
            ]),
        ],
        6 => {
            let blocks: [(usize, &[&[u8]]); 9] = [
                (1, &[&[1], &[1], &[1], &[1], &[1]]),
                (2, &[&[1, 0], &[1, 0], &[1, 0], &[0, 1]]),
                (2, &[&[1, 1], &[1, 1], &[1, 0], &[0, 1]]),
                (3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
                (3, &[&[1, 1, 1], &[1, 0, 0], &[1, 0, 0]]),
                (3, &[&[1, 1, 1], &[1, 1, 0], &[1, 1, 0]]),
                (4, &[&[1, 1, 1, 0], &[0, 0, 0, 1]]),
                (4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]),
                (5, &[&[1, 1, 1, 1, 1]]),
            ];
            blocks
                .iter()
                .map(|(f, c)| {
                    WirthMatrix::new(6, *f, c.iter().map(|r| r.to_vec()).collect()).unwrap()
                })
                .collect()
        }
        _ => panic!("no list for dimension {d}"),
    }
}

/// Seven-vertex simplicial reflexive 4-polytope without opposite facets.
pub fn seven_vertex_polytope() -> LatticePolytope {
    let cols = vec![
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
        vec![-2, 0, -1, 0],
        vec![0, -2, 0, -1],
        vec![1, 1, 1, 1],
    ];
    LatticePolytope::from_vertices(4, cols).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Product of random elementary operations, swaps and sign flips.
pub fn random_unimodular(rng: &mut StdRng, d: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(d);
    if d == 1 {
        if rng.random_bool(0.5) {
            m[(0, 0)] = -1;
        }
        return m;
    }
    for _ in 0..steps {
        let i = rng.random_range(0..d);
        let mut j = rng.random_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        match rng.random_range(0..4) {
            0 => {
                for k in 0..d {
                    let (a, b) = (m[(i, k)], m[(j, k)]);
                    m[(i, k)] = b;
                    m[(j, k)] = a;
                }
            }
            1 => {
                for k in 0..d {
                    m[(i, k)] = -m[(i, k)];
                }
            }
            _ => {
                let c = [-2, -1, 1, 2][rng.random_range(0..4)];
                for k in 0..d {
                    m[(i, k)] += c * m[(j, k)];
                }
            }
        }
    }
    m
}

pub fn random_matrix(rng: &mut StdRng, d: usize, lo: i64, hi: i64) -> IntMatrix {
    let data = (0..d * d).map(|_| rng.random_range(lo..=hi)).collect();
    IntMatrix::new(d, d, data).unwrap()
}

/// Every lower-triangular `H` with nonnegative entries, diagonal product
/// `det`, and below-diagonal entries reduced modulo their column's diagonal.
pub fn hermite_candidates(d: usize, det: i64) -> Vec<IntMatrix> {
    fn diagonals(d: usize, det: i64) -> Vec<Vec<i64>> {
        if d == 0 {
            return if det == 1 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for a in 1..=det {
            if det % a == 0 {
                for mut rest in diagonals(d - 1, det / a) {
                    rest.insert(0, a);
                    out.push(rest);
                }
            }
        }
        out
    }
    let mut out = Vec::new();
    for diag in diagonals(d, det) {
        let slots: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
        let ranges = slots.iter().map(|&(_, j)| 0..diag[j]);
        for values in ranges.multi_cartesian_product() {
            let mut h = IntMatrix::zeros(d, d);
            for i in 0..d {
                h[(i, i)] = diag[i];
            }
            for (&(i, j), v) in slots.iter().zip(values) {
                h[(i, j)] = v;
            }
            out.push(h);
        }
    }
    out
}

/// The unique member of `hermite_candidates` reachable from `l` by a
/// unimodular left factor: `H l^-1` integral.
pub fn brute_force_hermite(l: &IntMatrix) -> Option<IntMatrix> {
    let det = l.determinant().unwrap();
    let adj = l.adjugate().unwrap();
    let mut hits = hermite_candidates(l.rows(), det.abs())
        .into_iter()
        .filter(|h| h.mul(&adj).unwrap().entries().iter().all(|x| x % det == 0));
    let first = hits.next();
    assert!(hits.next().is_none(), "two normal forms for {l}");
    first
}
