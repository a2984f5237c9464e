//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, in order.

mod common;

use std::panic;
use std::time::Instant;

use pseudosym::catalog::{self, binomial};
use pseudosym::classify::{self, verify, Decomposition};
use pseudosym::linalg;
use pseudosym::wirth;
use pseudosym::LatticePolytope;

/// Every criterion is an exact comparison of integers.
const EXACT: u64 = 0;
const RANDOM_TRANSFORMS_PER_CLASS: usize = 100;
const RANDOM_HNF_SAMPLES: usize = 1000;
const HNF_ENTRY_RANGE: (i64, i64) = (-5, 5);
const SMALL_DET_SAMPLES: usize = 400;
const SMALL_DET_MAX: i64 = 4;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

#[allow(clippy::absurd_extreme_comparisons)]
fn same(a: usize, b: usize) -> bool {
    (a as u64).abs_diff(b as u64) <= EXACT
}

fn composed(d: usize) -> Vec<(Decomposition, LatticePolytope)> {
    classify::classify(d)
        .unwrap()
        .into_iter()
        .map(|dec| {
            let p = classify::compose(&dec).unwrap();
            (dec, p)
        })
        .collect()
}

fn classification_counts() -> Outcome {
    let expected = [1, 4, 5, 15, 20, 50];
    let got: Vec<usize> = (1..=6)
        .map(|d| classify::classify(d).unwrap().len())
        .collect();
    ensure!(
        got.iter().zip(expected).all(|(&g, e)| same(g, e)),
        "counts {got:?}, expected {expected:?}"
    );
    Ok(format!("{got:?}"))
}

fn smooth_counts() -> Outcome {
    let expected = [1, 3, 3, 8, 8, 18];
    let got: Vec<usize> = (1..=6)
        .map(|d| classify::classify_smooth(d).unwrap().len())
        .collect();
    ensure!(
        got.iter().zip(expected).all(|(&g, e)| same(g, e)),
        "counts {got:?}, expected {expected:?}"
    );
    Ok(format!("{got:?}"))
}

fn one_minimal_classes() -> Outcome {
    let expected_counts = [0, 1, 1, 3, 3, 9];
    let expected_splits = [(4, 1), (5, 1), (6, 4)];
    for d in 1..=6 {
        let classes = wirth::enumerate_one_minimal(d);
        ensure!(
            same(classes.len(), expected_counts[d - 1]),
            "d = {d}: {} classes",
            classes.len()
        );
        let listed = common::listed_one_minimal(d);
        ensure!(
            same(listed.len(), classes.len()),
            "d = {d}: list has {} matrices",
            listed.len()
        );
        for class in &classes {
            let hits = listed
                .iter()
                .filter(|m| wirth::equivalent(class, m).unwrap())
                .count();
            ensure!(
                hits == 1,
                "d = {d}: class {class} contains {hits} listed matrices"
            );
        }
    }
    let mut splits = Vec::new();
    for (d, want) in expected_splits {
        let n = common::listed_one_minimal(d)
            .iter()
            .filter(|m| wirth::find_splitting(&m.assembled()).unwrap().is_some())
            .count();
        ensure!(
            same(n, want),
            "d = {d}: {n} splitting matrices, expected {want}"
        );
        splits.push(n);
    }
    Ok(format!("classes {expected_counts:?}, splitting {splits:?}"))
}

fn facet_count_formulas() -> Outcome {
    let cases: [(&str, usize, usize, bool); 5] = [
        ("V2", 2, 6, true),
        ("V4", 4, 30, true),
        ("V6", 6, 140, true),
        ("V~2", 2, 5, false),
        ("V~4", 4, 23, false),
    ];
    for (name, k, want, full) in cases {
        let (p, formula) = if full {
            (
                catalog::del_pezzo(k).unwrap(),
                catalog::facet_count_del_pezzo(k).unwrap(),
            )
        } else {
            (
                catalog::pseudo_del_pezzo(k).unwrap(),
                catalog::facet_count_pseudo_del_pezzo(k).unwrap(),
            )
        };
        let brute = p.facets().len();
        ensure!(
            same(brute, want) && same(formula as usize, want),
            "{name}: brute {brute}, formula {formula}, expected {want}"
        );
    }
    Ok("6 30 140 5 23".into())
}

fn lattice_point_maxima() -> Outcome {
    let expected = [9, 19, 33, 51, 73];
    for d in 2..=6 {
        let p = catalog::d_polytope(d).unwrap();
        let report = p.lattice_points().unwrap();
        ensure!(
            same(report.total, expected[d - 2]) && same(report.total, 2 * d * d + 1),
            "D_{d}: {} lattice points",
            report.total
        );
        for (i, f) in p.facets().iter().enumerate() {
            let den = f.normal().denominator();
            let n = report
                .boundary_points
                .iter()
                .filter(|x| f.pairing(x).unwrap() == -den)
                .count();
            ensure!(
                same(n, binomial(d + 1, 2) as usize),
                "D_{d} facet {i}: {n} lattice points"
            );
        }
    }
    Ok(format!("{expected:?}"))
}

fn geometric_sweep() -> Outcome {
    let mut checked = 0;
    for d in 1..=5 {
        for (dec, p) in composed(d) {
            ensure!(
                p.is_reflexive() && p.is_simplicial(),
                "{dec}: not simplicial reflexive"
            );
            ensure!(
                !p.pseudo_symmetric_pairs().is_empty(),
                "{dec}: no opposite facets"
            );
            let r = classify::verify_theorems(&p).unwrap();
            ensure!(r.vertices.passes, "{dec}: vertex bound {:?}", r.vertices);
            ensure!(r.facets.passes, "{dec}: facet bound {:?}", r.facets);
            ensure!(
                r.lattice_points.value <= r.lattice_points.limit,
                "{dec}: lattice points {:?}",
                r.lattice_points
            );
            if d <= 4 {
                ensure!(r.facets_uniform, "{dec}: facets differ in lattice points");
                ensure!(
                    r.midpoints_on_edges,
                    "{dec}: boundary point off the edge midpoints"
                );
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} classes"))
}

fn isomorphism_separation() -> Outcome {
    let mut forms: Vec<_> = composed(6)
        .iter()
        .map(|(_, p)| classify::canonical_form(p).unwrap())
        .collect();
    let n = forms.len();
    forms.sort();
    forms.dedup();
    ensure!(
        same(forms.len(), 50) && same(n, 50),
        "{} distinct forms among {n}",
        forms.len()
    );
    let mut rng = common::rng(7);
    let mut transforms = 0;
    for d in 1..=4 {
        for (dec, p) in composed(d) {
            let base = classify::canonical_form(&p).unwrap();
            for _ in 0..RANDOM_TRANSFORMS_PER_CLASS {
                let u = common::random_unimodular(&mut rng, d, 12);
                let q = p.transform(&u).unwrap();
                ensure!(
                    classify::canonical_form(&q).unwrap() == base,
                    "{dec}: form changes under {u}"
                );
                transforms += 1;
            }
        }
    }
    Ok(format!(
        "50 distinct at d = 6, {transforms} transforms invariant"
    ))
}

fn round_trips() -> Outcome {
    for d in 1..=4 {
        for (dec, p) in composed(d) {
            let back = p.dual().unwrap().dual().unwrap();
            ensure!(back.same_vertex_set(&p), "{dec}: double dual differs");
        }
    }
    let mut facets = 0;
    for d in 1..=6 {
        for w in wirth::enumerate_all(d) {
            let p = wirth::polytope_from_wirth(&w).unwrap();
            for f in 0..p.facets().len() {
                let fw = wirth::wirth_from_crosspolytope(&p, f).unwrap();
                ensure!(
                    wirth::equivalent(&fw.matrix, &w).unwrap(),
                    "{w}: facet {f} gives {}",
                    fw.matrix
                );
                facets += 1;
            }
        }
    }
    for d in 1..=5 {
        for (dec, p) in composed(d) {
            let again = classify::decompose(&p).unwrap();
            ensure!(again == dec, "decompose(compose({dec})) = {again}");
        }
    }
    Ok(format!("{facets} facet readings"))
}

fn embeddings() -> Outcome {
    let mut failures = Vec::new();
    for d in 1..=5 {
        for (dec, p) in composed(d) {
            let u = classify::embed_in_cube(&p).unwrap();
            ensure!(
                linalg::is_unimodular(&u).unwrap(),
                "{dec}: embedding not unimodular"
            );
            let image = p.transform(&u).unwrap();
            ensure!(
                image.vertices().iter().flatten().all(|x| x.abs() <= 1),
                "{dec}: not in the cube"
            );
            let e = classify::dual_embedding_bound(&p).unwrap();
            if !e.passes {
                failures.push(format!(
                    "d = {d} {dec}: max {} > bound {}",
                    e.max_abs_coordinate, e.bound
                ));
            }
        }
    }
    let a = common::listed_one_minimal(4)[0].clone();
    let p = wirth::polytope_from_wirth(&a).unwrap();
    let boundary = p.lattice_points().unwrap().boundary_points;
    ensure!(
        same(boundary.len(), 8),
        "boundary has {} lattice points",
        boundary.len()
    );
    ensure!(
        boundary.iter().all(|x| p.vertex_index(x).is_some()),
        "boundary point outside the columns"
    );
    ensure!(
        failures.is_empty(),
        "dual embedding: {}",
        failures.join("; ")
    );
    Ok("cube and dual embeddings".into())
}

fn lemma_suite() -> Outcome {
    let mut corpus: Vec<(String, LatticePolytope)> = Vec::new();
    for d in 1..=4 {
        corpus.extend(composed(d).into_iter().map(|(dec, p)| (dec.to_string(), p)));
    }
    let seven = common::seven_vertex_polytope();
    ensure!(
        seven.pseudo_symmetric_pairs().is_empty(),
        "seven-vertex polytope has opposite facets"
    );
    corpus.push(("seven-vertex".into(), seven));
    let mut frames = 0;
    for (name, p) in &corpus {
        ensure!(
            verify::check_boundary_sums(p).unwrap(),
            "{name}: boundary sum property fails"
        );
        ensure!(
            verify::check_adjacent_facets(p).unwrap(),
            "{name}: adjacent facet property fails"
        );
        frames += verify::check_frames(p).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} polytopes, {frames} frames", corpus.len()))
}

fn hermite_oracle() -> Outcome {
    let mut rng = common::rng(11);
    let mut n = 0;
    while n < RANDOM_HNF_SAMPLES {
        let l = common::random_matrix(&mut rng, 4, HNF_ENTRY_RANGE.0, HNF_ENTRY_RANGE.1);
        if l.determinant().unwrap() == 0 {
            continue;
        }
        let (h, u) = linalg::hermite_normal_form(&l).unwrap();
        ensure!(u.mul(&l).unwrap() == h, "u l != h for {l}");
        ensure!(
            linalg::is_unimodular(&u).unwrap(),
            "u not unimodular for {l}"
        );
        ensure!(
            linalg::is_hermite_normal_form(&h),
            "{h} is not in normal form"
        );
        // independent check of the normal-form constraints
        for i in 0..4 {
            ensure!(h[(i, i)] > 0, "nonpositive diagonal in {h}");
            for j in 0..4 {
                if j > i {
                    ensure!(h[(i, j)] == 0, "upper entry in {h}");
                } else if j < i {
                    ensure!(
                        (0..h[(j, j)]).contains(&h[(i, j)]),
                        "unreduced entry in {h}"
                    );
                }
            }
        }
        n += 1;
    }
    ensure!(
        common::hermite_candidates(2, 2).len() == 3,
        "candidate enumeration is off"
    );
    ensure!(
        common::hermite_candidates(1, 3).len() == 1,
        "candidate enumeration is off"
    );
    let mut m = 0;
    while m < SMALL_DET_SAMPLES {
        let l = common::random_matrix(&mut rng, 3, -3, 3);
        let det = l.determinant().unwrap().abs();
        if det == 0 || det > SMALL_DET_MAX {
            continue;
        }
        let h = linalg::hermite_normal_form(&l).unwrap().0;
        let oracle = common::brute_force_hermite(&l)
            .ok_or_else(|| format!("oracle found no form for {l}"))?;
        ensure!(h == oracle, "{l}: got {h}, oracle {oracle}");
        m += 1;
    }
    Ok(format!("{n} random 4x4, {m} small-determinant 3x3"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("classification counts", classification_counts),
        ("smooth subfamily counts", smooth_counts),
        ("1-minimal Wirth classes", one_minimal_classes),
        ("facet-count formulas", facet_count_formulas),
        ("lattice-point maxima", lattice_point_maxima),
        ("geometric validation sweep", geometric_sweep),
        ("isomorphism separation", isomorphism_separation),
        ("round trips", round_trips),
        ("embeddings", embeddings),
        ("lemma suite", lemma_suite),
        ("Hermite oracle", hermite_oracle),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "acceptance {:>2} {name}: PASS ({detail}; {secs:.1}s)",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "acceptance {:>2} {name}: FAIL ({detail}; {secs:.1}s)",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
