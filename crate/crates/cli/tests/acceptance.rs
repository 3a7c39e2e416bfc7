//! End-to-end acceptance checks, one test per numbered criterion of the
//! project contract.  Every assertion is an exact equality (no numeric
//! tolerance anywhere), and each criterion carries a pinned wall-clock
//! budget.  Run with `--nocapture` to see one pass line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num::BigInt;

use littelmann::level_zero;
use littelmann::{
    lower, parse_rational, raise, CrystalGraph, Folding, NodeLabel, Path, Rational, RootDatum,
    ScalarPL, Weight,
};

/// Wall-clock budgets in seconds, indexed by criterion number.
const BUDGET_SECS: [u64; 11] = [1, 1, 1, 60, 120, 30, 120, 5, 120, 600, 60];

/// Crystals small enough to regenerate freely: (type, highest weight
/// coefficients, pinned node count).  Node counts also get re-derived from
/// the dimension oracle in criterion 4.
const BATTERY: &[(&str, &[(usize, i64)], u64)] = &[
    ("A1", &[(1, 3)], 4),
    ("A2", &[(1, 1), (2, 1)], 8),
    ("A2", &[(1, 2), (2, 1)], 15),
    ("A3", &[(2, 1)], 6),
    ("A3", &[(1, 1), (3, 1)], 15),
    ("A3", &[(1, 1), (2, 1), (3, 1)], 64),
    ("A3", &[(1, 3), (2, 2), (3, 3)], 2156),
    ("B2", &[(1, 1)], 5),
    ("B2", &[(2, 1)], 4),
    ("C2", &[(1, 1)], 4),
    ("C2", &[(2, 1)], 5),
    ("C2", &[(1, 3), (2, 1)], 64),
    ("B3", &[(1, 1)], 7),
    ("B3", &[(3, 1)], 8),
    ("C3", &[(1, 1)], 6),
    ("C3", &[(2, 1)], 14),
    ("D4", &[(1, 1)], 8),
    ("D4", &[(2, 1)], 28),
    ("G2", &[(1, 1)], 14),
    ("G2", &[(2, 1)], 7),
];

const MAX_BATTERY_NODES: usize = 5000;

fn finish(criterion: usize, started: Instant, detail: &str) {
    let elapsed = started.elapsed();
    let budget = Duration::from_secs(BUDGET_SECS[criterion - 1]);
    println!(
        "criterion {criterion:02}: PASS ({} ms) {detail}",
        elapsed.as_millis()
    );
    assert!(
        elapsed <= budget,
        "criterion {criterion} took {elapsed:?}, over its {budget:?} budget"
    );
}

fn datum(name: &str) -> RootDatum {
    RootDatum::from_name(name).unwrap()
}

fn wt(coeffs: &[(usize, i64)]) -> Weight {
    Weight::from_coords(
        coeffs
            .iter()
            .map(|&(i, c)| (i, Rational::from_integer(BigInt::from(c)))),
        Rational::from_integer(BigInt::from(0)),
    )
}

fn rwt(coeffs: &[(usize, &str)]) -> Weight {
    Weight::from_coords(
        coeffs.iter().map(|&(i, c)| (i, parse_rational(c).unwrap())),
        Rational::from_integer(BigInt::from(0)),
    )
}

fn mult(pairs: &[(usize, u64)]) -> BTreeMap<usize, u64> {
    pairs.iter().copied().collect()
}

fn battery() -> &'static [(RootDatum, Weight, u64, CrystalGraph)] {
    static CELL: OnceLock<Vec<(RootDatum, Weight, u64, CrystalGraph)>> = OnceLock::new();
    CELL.get_or_init(|| {
        BATTERY
            .iter()
            .map(|&(name, coeffs, pinned)| {
                let d = datum(name);
                let lambda = wt(coeffs);
                let graph = CrystalGraph::generate(&d, &lambda, MAX_BATTERY_NODES + 1).unwrap();
                (d, lambda, pinned, graph)
            })
            .collect()
    })
}

fn node_path<'g>(graph: &'g CrystalGraph, v: usize) -> &'g Path {
    match graph.label(v) {
        NodeLabel::Path(p) => p,
        other => panic!("expected a path label, got {other:?}"),
    }
}

#[test]
fn criterion_01_four_element_fundamental_crystal_listing() {
    let started = Instant::now();
    let bin = env!("CARGO_BIN_EXE_littelmann");

    let json_run = Command::new(bin)
        .args([
            "generate", "--type", "C2", "--weight", "1,0", "--format", "json",
        ])
        .output()
        .unwrap();
    assert!(
        json_run.status.success(),
        "generate failed: {}",
        String::from_utf8_lossy(&json_run.stderr)
    );
    let value: serde_json::Value = serde_json::from_slice(&json_run.stdout).unwrap();
    let nodes = value["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 4, "expected exactly 4 elements");
    let listed: BTreeSet<Weight> = nodes
        .iter()
        .map(|n| Weight::from_json(&n["wt"]).unwrap())
        .collect();
    let expected: BTreeSet<Weight> = [
        wt(&[(1, 1)]),
        wt(&[(1, -1), (2, 1)]),
        wt(&[(1, 1), (2, -1)]),
        wt(&[(1, -1)]),
    ]
    .into_iter()
    .collect();
    assert_eq!(listed, expected, "endpoint weights differ");

    let summary_run = Command::new(bin)
        .args(["generate", "--type", "C2", "--weight", "1,0"])
        .output()
        .unwrap();
    assert!(summary_run.status.success());
    let text = String::from_utf8(summary_run.stdout).unwrap();
    assert!(
        text.contains("4 nodes"),
        "summary lacks the node count:\n{text}"
    );

    finish(
        1,
        started,
        "C2 weight 1,0 lists exactly 4 elements with the expected endpoint weights",
    );
}

#[test]
fn criterion_02_virtual_lowering_matches_the_embedded_image() {
    let started = Instant::now();
    let fold = Folding::from_name("C2>A3").unwrap();
    assert_eq!(fold.gamma(1).unwrap(), 1);
    assert_eq!(fold.gamma(2).unwrap(), 2);
    let c2 = fold.source().clone();

    let pi = Path::straight(wt(&[(1, 3), (2, 1)]));
    let f2 = lower(&c2, &pi, 2, 1).unwrap().expect("f_2 applies");
    assert_eq!(f2, Path::straight(wt(&[(1, 5), (2, -1)])));

    let image = fold.virtualize_path(&pi).unwrap();
    assert_eq!(image, Path::straight(wt(&[(1, 3), (2, 2), (3, 3)])));

    let image_f2 = fold
        .virtual_lower(&image, 2)
        .unwrap()
        .expect("virtual f_2 applies");
    assert_eq!(image_f2, Path::straight(wt(&[(1, 5), (2, -2), (3, 5)])));
    assert_eq!(fold.virtualize_path(&f2).unwrap(), image_f2);

    finish(
        2,
        started,
        "C2>A3 embedding intertwines f_2 with the doubled virtual lowering, all values exact",
    );
}

#[test]
fn criterion_03_lowering_splits_the_straight_path_exactly() {
    let started = Instant::now();
    let c2 = datum("C2");
    let pi = Path::straight(wt(&[(1, 3), (2, 1)]));
    let f1 = lower(&c2, &pi, 1, 1).unwrap().expect("f_1 applies");
    assert_eq!(f1.segments().len(), 2, "expected a two-segment path");
    assert_eq!(f1.segments()[0], rwt(&[(1, "-1"), (2, "4/3")]));
    assert_eq!(f1.endpoint(), wt(&[(1, 1), (2, 2)]));
    finish(
        3,
        started,
        "f_1 of the straight path to 3L1+L2 bends at -L1+(4/3)L2 and ends at L1+2L2",
    );
}

#[test]
fn criterion_04_node_counts_match_the_dimension_oracle() {
    let started = Instant::now();
    let mut total = 0usize;
    for (d, lambda, pinned, graph) in battery() {
        assert!(graph.node_count() <= MAX_BATTERY_NODES);
        let dim = d.weyl_dimension(lambda).unwrap();
        assert_eq!(
            BigInt::from(graph.node_count()),
            dim,
            "{} at {}: node count vs dimension oracle",
            d.cartan_type(),
            lambda
        );
        assert_eq!(graph.node_count() as u64, *pinned);
        total += graph.node_count();
    }
    finish(
        4,
        started,
        &format!(
            "{} crystals, {} nodes in total, every count equals the dimension oracle",
            battery().len(),
            total
        ),
    );
}

#[test]
fn criterion_05_iterated_and_dual_operator_laws_hold_on_the_battery() {
    let started = Instant::now();
    let mut checks = 0u64;
    for (d, _, _, graph) in battery() {
        for v in 0..graph.node_count() {
            let pi = node_path(graph, v);
            for &i in d.index_set() {
                for k in 1..=3u32 {
                    let direct = raise(d, pi, i, k).unwrap();
                    let mut iterated = Some(pi.clone());
                    for _ in 0..k {
                        iterated = match iterated {
                            Some(p) => raise(d, &p, i, 1).unwrap(),
                            None => None,
                        };
                    }
                    assert_eq!(
                        direct, iterated,
                        "{}-fold raising disagrees with iteration at node {v}, color {i}",
                        k
                    );
                    let via_dual = raise(d, &pi.dual(), i, k).unwrap().map(|p| p.dual());
                    assert_eq!(
                        lower(d, pi, i, k).unwrap(),
                        via_dual,
                        "lowering disagrees with dual raising at node {v}, color {i}, k = {k}"
                    );
                    checks += 2;
                }
            }
        }
    }
    finish(
        5,
        started,
        &format!("{checks} operator identities, nulls included, all exact"),
    );
}

/// Breakpoint values with plateaus collapsed, so neighbors always differ.
fn collapsed_values(h: &ScalarPL) -> Vec<Rational> {
    let mut values: Vec<Rational> = h.breakpoints().iter().map(|(_, v)| v.clone()).collect();
    values.dedup();
    values
}

#[test]
fn criterion_06_height_local_minima_are_integral_on_the_battery() {
    let started = Instant::now();
    let mut checks = 0u64;
    for (d, _, _, graph) in battery() {
        for v in 0..graph.node_count() {
            let pi = node_path(graph, v);
            for &i in d.index_set() {
                let h = pi.h_function(d, i).unwrap();
                assert!(
                    h.final_value().is_integer(),
                    "H(1) not integral at node {v}, color {i}"
                );
                let values = collapsed_values(&h);
                let last = values.len() - 1;
                for (idx, value) in values.iter().enumerate() {
                    let left_up = idx == 0 || values[idx - 1] > *value;
                    let right_up = idx == last || values[idx + 1] > *value;
                    if left_up && right_up {
                        assert!(
                            value.is_integer(),
                            "local minimum {value} not integral at node {v}, color {i}"
                        );
                        checks += 1;
                    }
                }
            }
        }
    }
    finish(
        6,
        started,
        &format!("{checks} local minima inspected, every one an integer"),
    );
}

/// The three dominant weights with the smallest virtual-image crystals,
/// chosen by the dimension oracle from a fixed candidate pool.
fn smallest_image_weights(fold: &Folding) -> Vec<Weight> {
    let indices = fold.source().classical_index_set().to_vec();
    let mut candidates: Vec<Weight> = Vec::new();
    if indices.len() == 1 {
        for k in 1..=3 {
            candidates.push(wt(&[(indices[0], k)]));
        }
    } else {
        for (a, &i) in indices.iter().enumerate() {
            candidates.push(wt(&[(i, 1)]));
            candidates.push(wt(&[(i, 2)]));
            for &j in &indices[a + 1..] {
                candidates.push(wt(&[(i, 1), (j, 1)]));
            }
        }
    }
    let mut scored: Vec<(BigInt, String, Weight)> = candidates
        .into_iter()
        .map(|lambda| {
            let image = fold.psi(&lambda).unwrap();
            let dim = fold.target().weyl_dimension(&image).unwrap();
            (dim, lambda.to_string(), lambda)
        })
        .collect();
    scored.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    scored.into_iter().take(3).map(|(_, _, w)| w).collect()
}

#[test]
fn criterion_07_catalog_restrictions_virtualize_and_broken_data_is_caught() {
    let started = Instant::now();
    let sources = [
        "C2~", "C3~", "C4~", "A2~2", "A4~2", "A6~2", "A2~2d", "A4~2d", "A6~2d", "D3~2", "D4~2",
        "D5~2", "B3~", "B4~", "A5~2", "A7~2", "F4~", "E6~2", "G2~", "D4~3",
    ];
    let mut restrictions: Vec<Folding> = Vec::new();
    for name in sources {
        let fold = Folding::standard(&name.parse().unwrap())
            .unwrap()
            .finite_restriction()
            .unwrap();
        if !restrictions.contains(&fold) {
            restrictions.push(fold);
        }
    }
    assert_eq!(restrictions.len(), 16, "distinct classical restrictions");

    let mut runs = 0u64;
    for fold in &restrictions {
        let picks = smallest_image_weights(fold);
        assert_eq!(picks.len(), 3, "{}: need 3 dominant weights", fold.name());
        for lambda in picks {
            let report = fold.verify_virtualization(&lambda, 200_000).unwrap();
            assert!(
                report.is_pass(),
                "{} at lambda = {}: {:?}",
                fold.name(),
                lambda,
                report
            );
            runs += 1;
        }
    }

    // Deliberately broken inputs must be rejected with concrete witnesses.
    // Wrong scaling: the C2 > A3 orbits with both scalings forced to 1.
    let base = Folding::from_name("C2>A3").unwrap();
    let mut orbits = BTreeMap::new();
    let mut gammas = BTreeMap::new();
    for &i in base.source().index_set() {
        orbits.insert(i, base.orbit(i).unwrap().to_vec());
        gammas.insert(i, 1);
    }
    let wrong_scale =
        Folding::new(base.source().clone(), base.target().clone(), orbits, gammas).unwrap();
    let report = wrong_scale.check_conditions();
    assert!(!report.is_pass(), "unit scalings on C2 > A3 must fail");
    let cx = report.counterexample.expect("a concrete counterexample");
    assert!(!cx.node.is_empty() && !cx.lhs.is_empty() && !cx.rhs.is_empty());

    // Wrong orbit shape: one A1 node mapped onto two adjacent A2 nodes.
    let adjacent = Folding::new(
        datum("A1"),
        datum("A2"),
        [(1usize, vec![1usize, 2])].into_iter().collect(),
        [(1usize, 1i64)].into_iter().collect(),
    )
    .unwrap();
    let report = adjacent.check_conditions();
    assert!(!report.is_pass(), "adjacent orbits must fail");
    let cx = report.counterexample.expect("a concrete counterexample");
    assert!(!cx.node.is_empty() && !cx.lhs.is_empty() && !cx.rhs.is_empty());

    finish(
        7,
        started,
        &format!(
            "{} restrictions x 3 weights = {runs} embeddings verified; both corrupted foldings rejected with witnesses",
            restrictions.len()
        ),
    );
}

#[test]
fn criterion_08_null_root_scaling_identity_across_the_catalog() {
    let started = Instant::now();
    let sources = [
        "C2~", "A2~2", "A2~2d", "D3~2", "B3~", "A5~2", "F4~", "E6~2", "G2~", "D4~3",
    ];
    for name in sources {
        let fold = Folding::standard(&name.parse().unwrap()).unwrap();
        assert!(
            level_zero::check_psi_delta(&fold).unwrap(),
            "null-root identity fails for {}",
            fold.name()
        );
    }
    finish(
        8,
        started,
        &format!(
            "null-root scaling identity exact for all {} minimal-rank catalog foldings",
            sources.len()
        ),
    );
}

#[test]
fn criterion_09_projected_crystals_factor_into_tensor_products() {
    let started = Instant::now();
    let doubled =
        level_zero::check_tensor_factorization(&datum("A1~"), &mult(&[(1, 2)]), 100_000).unwrap();
    assert!(doubled.is_pass(), "{doubled:?}");
    let mixed =
        level_zero::check_tensor_factorization(&datum("C2~"), &mult(&[(1, 1), (2, 1)]), 100_000)
            .unwrap();
    assert!(mixed.is_pass(), "{mixed:?}");
    finish(
        9,
        started,
        "level-zero factorizations hold: doubled generator and mixed generators",
    );
}

#[test]
fn criterion_10_single_column_virtualization_certified() {
    let started = Instant::now();
    let main = Folding::from_name("C2~>A3~").unwrap();
    assert_eq!(main.gamma(1).unwrap(), 1, "column 1 must carry scaling 1");
    let report = level_zero::verify_kr_virtualization(&main, 1, 100_000).unwrap();
    assert!(report.is_pass(), "{report:?}");

    let further = [
        ("D3~2>A3~", 1),
        ("D3~2>A3~", 2),
        ("A2~2>A1~", 1),
        ("A4~2d>A3~", 1),
    ];
    for (name, column) in further {
        let fold = Folding::from_name(name).unwrap();
        let report = level_zero::verify_kr_virtualization(&fold, column, 100_000).unwrap();
        assert!(report.is_pass(), "{name} column {column}: {report:?}");
    }
    finish(
        10,
        started,
        &format!(
            "single-column virtualization certified for C2~>A3~ and {} further foldings",
            further.len()
        ),
    );
}

#[test]
fn criterion_11_axioms_hold_on_every_generated_crystal() {
    let started = Instant::now();
    let mut graphs = 0u64;

    for (d, lambda, _, graph) in battery() {
        let report = graph.check_axioms();
        assert!(
            report.is_pass(),
            "{} at {}: {:?}",
            d.cartan_type(),
            lambda,
            report
        );
        graphs += 1;
    }

    let projected: &[(&str, &[(usize, u64)])] = &[
        ("A1~", &[(1, 1)]),
        ("A1~", &[(1, 2)]),
        ("C2~", &[(1, 1)]),
        ("C2~", &[(2, 1)]),
        ("C2~", &[(1, 1), (2, 1)]),
        ("D3~2", &[(1, 1)]),
        ("D3~2", &[(2, 1)]),
        ("A2~2", &[(1, 1)]),
        ("A4~2d", &[(1, 1)]),
    ];
    for &(name, pairs) in projected {
        let d = datum(name);
        let graph = level_zero::generate_projected(&d, &mult(pairs), 100_000).unwrap();
        let report = graph.check_axioms();
        assert!(report.is_pass(), "{name} projected: {report:?}");
        graphs += 1;
    }

    let c2 = datum("C2");
    let finite_product = CrystalGraph::tensor(
        &CrystalGraph::generate(&c2, &wt(&[(1, 1)]), 1000).unwrap(),
        &CrystalGraph::generate(&c2, &wt(&[(2, 1)]), 1000).unwrap(),
    )
    .unwrap();
    let report = finite_product.check_axioms();
    assert!(report.is_pass(), "C2 tensor product: {report:?}");
    graphs += 1;

    let a1a = datum("A1~");
    let column = level_zero::generate_projected(&a1a, &mult(&[(1, 1)]), 1000).unwrap();
    let affine_product = CrystalGraph::tensor(&column, &column).unwrap();
    let report = affine_product.check_axioms();
    assert!(report.is_pass(), "A1~ projected tensor product: {report:?}");
    graphs += 1;

    let c2a = datum("C2~");
    let mixed_product = CrystalGraph::tensor(
        &level_zero::generate_projected(&c2a, &mult(&[(1, 1)]), 1000).unwrap(),
        &level_zero::generate_projected(&c2a, &mult(&[(2, 1)]), 1000).unwrap(),
    )
    .unwrap();
    let report = mixed_product.check_axioms();
    assert!(report.is_pass(), "C2~ projected tensor product: {report:?}");
    graphs += 1;

    finish(
        11,
        started,
        &format!("crystal axioms pass on all {graphs} graphs: battery, projected, tensor products"),
    );
}
