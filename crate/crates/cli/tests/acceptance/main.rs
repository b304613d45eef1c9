//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; any failure panics with a diagnostic.

mod hp;

use std::collections::BTreeSet;
use std::process::Command;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use severi::cremona::{apply_cremona, reduce, Terminal};
use severi::criteria::{
    coarse_node_bound, existence, hirschowitz_vanishes, irreducibility, node_sqrt, smoothness,
    sufficient_node_bound, Status,
};
use severi::exceptional::enumerate_minus_one_classes;
use severi::lattice::{DivisorClass, NodalQuery};
use severi::oracle::{certify_exceptional_counts, crosscheck_minimal_system, crosscheck_reduction};

fn cls(d: i64, m: &[i64]) -> DivisorClass {
    DivisorClass::new(d, m.to_vec())
}

fn pass(n: u32, what: &str) {
    println!("[PASS] criterion {n}: {what}");
}

/// The six positive-degree exceptional shapes on at most eight points,
/// each with the number of points it genuinely involves.
fn exceptional_shapes() -> Vec<(DivisorClass, usize)> {
    vec![
        (cls(1, &[1, 1]), 2),
        (cls(2, &[1, 1, 1, 1, 1]), 5),
        (cls(3, &[2, 1, 1, 1, 1, 1, 1]), 7),
        (cls(4, &[2, 2, 2, 1, 1, 1, 1, 1]), 8),
        (cls(5, &[2, 2, 2, 2, 2, 2, 1, 1]), 8),
        (cls(6, &[3, 2, 2, 2, 2, 2, 2, 2]), 8),
    ]
}

#[test]
fn criterion_1_exceptional_table() {
    let expected_totals = [(3usize, 6u64), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)];
    for &(r, total) in &expected_totals {
        let classes = enumerate_minus_one_classes(r, 6, true);
        assert_eq!(classes.len() as u64, total, "count at r = {r}");
        let certified: u64 = certify_exceptional_counts(r).unwrap().values().sum();
        assert_eq!(certified, total, "oracle certification at r = {r}");
    }

    // at r = 8 the positive-degree classes realize exactly the six shapes
    let classes = enumerate_minus_one_classes(8, 6, true);
    let shapes: BTreeSet<DivisorClass> = classes
        .iter()
        .map(|e| e.class().normalized())
        .filter(|c| c.degree >= 1)
        .collect();
    let expected: BTreeSet<DivisorClass> = exceptional_shapes()
        .into_iter()
        .map(|(c, _)| c.padded(8))
        .collect();
    assert_eq!(shapes, expected);
    let points = classes.iter().filter(|e| e.class().degree == 0).count();
    assert_eq!(points, 8);

    pass(1, "exceptional table reproduced and certified (r = 3..8)");
}

#[test]
fn criterion_2_shape_reduction() {
    for (shape, r) in exceptional_shapes() {
        assert_eq!(shape.r(), r, "{shape} stated point count");
        let trace = reduce(&shape);
        assert_eq!(trace.terminal, Terminal::ExceptionalUnit, "{shape}");
        assert_eq!(shape.max_nodes(), 0, "{shape} admits no nodes");
    }
    pass(
        2,
        "all six exceptional shapes reduce to the unit with k_max = 0",
    );
}

#[test]
fn criterion_3_greedy_vs_orbit() {
    for r in 3..=9usize {
        let report = crosscheck_reduction(r, 8).unwrap();
        assert!(
            report.is_clean(),
            "r = {r}: {} greedy-vs-orbit counterexamples, {} system disagreements",
            report.counterexamples.len(),
            report.system_disagreements.len()
        );
    }
    for r in 3..=8usize {
        let disagreements = crosscheck_minimal_system(r, 10);
        assert!(disagreements.is_empty(), "r = {r}: {disagreements:?}");
    }
    pass(
        3,
        "greedy reduction matches exhaustive orbit search and the closed-form system",
    );
}

fn random_tuple_at(rng: &mut ChaCha8Rng, r: usize) -> DivisorClass {
    let d = rng.gen_range(1..=40i64);
    let cap = *[1i64, 2, 3, d].iter().filter(|&&c| c <= d).max().unwrap();
    let cap = if rng.gen_bool(0.7) { cap.min(4) } else { cap };
    let mults = (0..r).map(|_| rng.gen_range(0..=cap)).collect();
    DivisorClass::new(d, mults)
}

#[test]
fn criterion_4_involution_and_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eee11);
    for _ in 0..100_000 {
        let r = rng.gen_range(3..=12usize);
        let a = random_tuple_at(&mut rng, r);
        let b = random_tuple_at(&mut rng, r);
        let mut idx = [0usize; 3];
        loop {
            for slot in idx.iter_mut() {
                *slot = rng.gen_range(0..r);
            }
            if idx[0] != idx[1] && idx[0] != idx[2] && idx[1] != idx[2] {
                break;
            }
        }

        let a1 = apply_cremona(&a, idx).unwrap();
        let b1 = apply_cremona(&b, idx).unwrap();
        assert_eq!(apply_cremona(&a1, idx).unwrap(), a, "involution at {a}");
        assert_eq!(
            a1.intersect(&b1).unwrap(),
            a.intersect(&b).unwrap(),
            "pairing invariance at {a}, {b}"
        );
        assert_eq!(a1.canonical_degree(), a.canonical_degree(), "{a}");
        assert_eq!(a1.max_nodes(), a.max_nodes(), "{a}");

        let trace = reduce(&a);
        let mut prev = trace.initial.degree;
        for step in &trace.steps {
            assert!(step.result.degree < prev, "degree not decreasing at {a}");
            prev = step.result.degree;
        }

        let n = a.normalized();
        assert_eq!(n.normalized(), n, "normalize idempotent at {a}");
    }
    pass(
        4,
        "involution, invariance, descent, and idempotence over 1e5 tuples",
    );
}

fn rank(s: Status) -> u8 {
    match s {
        Status::Holds => 2,
        Status::Unknown => 1,
        Status::Fails => 0,
    }
}

fn random_query(rng: &mut ChaCha8Rng) -> NodalQuery {
    let r = rng.gen_range(0..=14usize);
    let d = rng.gen_range(1..=40i64);
    let cap = if rng.gen_bool(0.7) { d.min(3) } else { d };
    let mults: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=cap)).collect();
    let c = DivisorClass::new(d, mults);
    let k_hi = (c.max_nodes().max(0) as u64) + 10;
    let k = rng.gen_range(0..=k_hi);
    NodalQuery::new(c, k)
}

/// Re-evaluate `sufficient_node_bound` directly from its definition with
/// wide integers.
fn hp_sufficient_bound(c: &DivisorClass) -> Option<i64> {
    let d = c.degree as i128;
    let rhs: i128 = c
        .mults
        .iter()
        .map(|&m| 2 * m as i128 * (m as i128 + 1))
        .sum();
    (1..=d)
        .find(|dp| dp * dp + 6 * dp - 1 - 4 * (dp / 2) > rhs)
        .map(|dp| (d - 1) * (d - 2) / 2 - dp * (dp - 1) / 2)
        .filter(|&b| b >= 0)
        .map(|b| b as i64)
}

#[test]
fn criterion_5_predicate_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c0);
    for _ in 0..100_000 {
        let q = random_query(&mut rng);
        let c = q.cls.stripped();
        let d = c.degree as i128;
        let s = node_sqrt(q.k) as i128;
        let q2: i128 = c.mults.iter().map(|&m| (m as i128 + 2).pow(2)).sum();
        let p: i128 = c
            .mults
            .iter()
            .map(|&m| (m as i128 + 2) * (m as i128 + 1))
            .sum();
        let rr: i128 = c.mults.iter().map(|&m| (m as i128).pow(2)).sum();

        // smoothness: exact integer form vs fixed-point evaluation
        let sm = smoothness(&q);
        if c.r() >= 10 {
            let hp1 = hp::strict_gt_sqrt(d + 6 - 2 * s, 2 * q2);
            let hp2 = hp::strict_gt_sqrt(d + 3 - s, 2 * (2 + p));
            if let (Some(c1), Some(c2)) = (hp1, hp2) {
                assert_eq!(c1 && c2, sm.status == Status::Holds, "smoothness at {q:?}");
            }
        } else {
            assert_eq!(sm.status, Status::Holds);
        }

        // irreducibility likewise
        let ir = irreducibility(&q);
        if c.r() >= 2 {
            let hp1 = hp::strict_gt_sqrt(d + 4 - 4 * s, rr);
            let hp2 = hp::strict_gt_sqrt(d + 2 - 2 * s, 2 * q2);
            if let (Some(c1), Some(c2)) = (hp1, hp2) {
                assert_eq!(
                    c1 && c2,
                    ir.status == Status::Holds,
                    "irreducibility at {q:?}"
                );
            }
        } else {
            assert_eq!(ir.status, Status::Holds);
        }

        // node-bound and vanishing predicates vs direct wide-integer forms
        assert_eq!(sufficient_node_bound(&c), hp_sufficient_bound(&c), "{c}");
        let sprod: i128 = c.mults.iter().map(|&m| m as i128 * (m as i128 + 1)).sum();
        assert_eq!(
            hirschowitz_vanishes(&c, None),
            sprod < 2 * ((d + 3) * (d + 3) / 4),
            "{c}"
        );
        let coarse = coarse_node_bound(&c);
        if d * d >= 2 * sprod {
            assert_eq!(coarse, Some(((d - 1) * (d - 2) / 2 - sprod) as i64), "{c}");
        } else {
            assert_eq!(coarse, None, "{c}");
        }

        // verdicts are monotone in the node count
        let q_next = NodalQuery::new(q.cls.clone(), q.k + 1);
        let ex = existence(&q);
        assert!(rank(existence(&q_next).status) <= rank(ex.status), "{q:?}");
        assert!(rank(smoothness(&q_next).status) <= rank(sm.status), "{q:?}");
        assert!(
            rank(irreducibility(&q_next).status) <= rank(ir.status),
            "{q:?}"
        );

        // completeness and soundness of existence
        if c.r() <= 9 {
            assert_ne!(ex.status, Status::Unknown, "{q:?}");
        }
        if (q.k as i128) > q.cls.max_nodes() as i128 {
            assert_ne!(ex.status, Status::Holds, "{q:?}");
        }
    }
    pass(
        5,
        "integer predicates agree with high-precision evaluation over 1e5 queries",
    );
}

#[test]
fn criterion_6_severi_degeneracy() {
    for d in 1..=20i64 {
        let c = DivisorClass::new(d, vec![]);
        let k_max = (d - 1) * (d - 2) / 2;
        for k in 0..=(k_max as u64 + 5) {
            let v = existence(&NodalQuery::new(c.clone(), k));
            let expected = if (k as i64) <= k_max {
                Status::Holds
            } else {
                Status::Fails
            };
            assert_eq!(v.status, expected, "d = {d}, k = {k}");
        }
    }
    pass(
        6,
        "existence degenerates to the classical plane bound for r = 0",
    );
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_severi"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

#[test]
fn criterion_7_golden_files() {
    let json = run_cli(&[
        "classify",
        "--degree",
        "6",
        "--mults",
        "3,2,2,2,2,2,2,2",
        "--nodes",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(
        json,
        include_bytes!("../golden/classify_sextic.json"),
        "classify JSON"
    );

    // canonical JSON: parse + re-serialize round-trips byte-identically
    let text = std::str::from_utf8(&json).unwrap();
    let value: serde_json::Value = serde_json::from_str(text).unwrap();
    let mut reserialized = serde_json::to_string(&value).unwrap();
    reserialized.push('\n');
    assert_eq!(text, reserialized, "JSON round-trip");

    let trace = run_cli(&["reduce", "--degree", "5", "--mults", "2,2,2,2,2,2,1,1"]);
    assert_eq!(
        trace,
        include_bytes!("../golden/reduce_quintic.txt"),
        "reduce trace"
    );

    let csv = run_cli(&["exceptional", "--r", "8", "--h-max", "6", "--format", "csv"]);
    assert_eq!(
        csv,
        include_bytes!("../golden/exceptional_r8.csv"),
        "exceptional CSV"
    );
    assert_eq!(
        csv.iter().filter(|&&b| b == b'\n').count(),
        241,
        "240 rows + header"
    );

    // the power notation for multiplicities matches the expanded list
    let json_pow = run_cli(&[
        "classify", "--degree", "6", "--mults", "3,2^7", "--nodes", "0", "--format", "json",
    ]);
    assert_eq!(json_pow, json, "power notation");

    // every format reports the same verdicts
    let csv_verdicts = run_cli(&[
        "classify", "--degree", "6", "--mults", "3,2^7", "--nodes", "0", "--format", "csv",
    ]);
    let csv_verdicts = String::from_utf8(csv_verdicts).unwrap();
    let text_verdicts = run_cli(&[
        "classify", "--degree", "6", "--mults", "3,2^7", "--nodes", "0",
    ]);
    let text_verdicts = String::from_utf8(text_verdicts).unwrap();
    for needle in ["holds", "unknown"] {
        assert!(
            csv_verdicts.contains(needle) && text_verdicts.contains(needle),
            "{needle}"
        );
    }

    pass(
        7,
        "documented CLI invocations byte-match the golden outputs",
    );
}
