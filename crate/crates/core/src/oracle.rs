//! Independent brute-force verifiers: breadth-first search over Cremona
//! orbits (all index triples, not just the greedy pivot), exhaustive tuple
//! scans cross-checking the greedy reduction, and exceptional-class count
//! certification.
//!
//! States are canonicalized by sorting, which collapses the permutation
//! part of equivalence; without it orbit sizes blow up by a factor of r!.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::cremona::{
    apply_cremona, is_minimal, minimal_equivalence_system_r_le_8, reduce, Terminal,
};
use crate::lattice::DivisorClass;

/// Default cap on visited states; bounded searches over infinite orbits
/// must fail loudly rather than silently truncate.
pub const DEFAULT_NODE_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("orbit search exceeded the node budget of {budget} states (partial result retained)")]
    BudgetExceeded {
        budget: usize,
        partial: BTreeSet<DivisorClass>,
    },
    #[error("crosscheck expects 3 <= r <= 9 and d_max <= 12: got r = {r}, d_max = {d_max}")]
    UnsupportedRange { r: usize, d_max: i64 },
}

fn index_triples(r: usize) -> Vec<[usize; 3]> {
    let mut triples = Vec::new();
    for j in 0..r {
        for m in (j + 1)..r {
            for n in (m + 1)..r {
                triples.push([j, m, n]);
            }
        }
    }
    triples
}

/// All normalized tuples reachable from `c` by any sequence of Cremona
/// moves whose intermediate degrees stay within `[0, degree_bound]`.
/// Negative multiplicities are allowed inside the search and retained in
/// the result; states of negative degree are discarded.
pub fn bfs_orbit(
    c: &DivisorClass,
    degree_bound: i64,
    budget: usize,
) -> Result<BTreeSet<DivisorClass>, OracleError> {
    let triples = index_triples(c.r());
    let start = c.normalized();
    let mut seen = BTreeSet::new();
    let mut frontier = VecDeque::new();
    if start.degree >= 0 && start.degree <= degree_bound {
        seen.insert(start.clone());
        frontier.push_back(start);
    }
    while let Some(state) = frontier.pop_front() {
        for &t in &triples {
            let image = apply_cremona(&state, t).expect("valid triple").normalized();
            if image.degree < 0 || image.degree > degree_bound {
                continue;
            }
            if seen.insert(image.clone()) {
                if seen.len() > budget {
                    return Err(OracleError::BudgetExceeded {
                        budget,
                        partial: seen,
                    });
                }
                frontier.push_back(image);
            }
        }
    }
    Ok(seen)
}

/// Component of `c` in the graph whose vertices are normalized curve-like
/// tuples (degree >= 1, all multiplicities >= 0, degree <= bound) and whose
/// edges are Cremona moves. Moves are involutions, so this graph is
/// undirected and the reachable set is a connected component.
fn curve_component(
    c: &DivisorClass,
    degree_bound: i64,
    budget: usize,
) -> Result<BTreeSet<DivisorClass>, OracleError> {
    let triples = index_triples(c.r());
    let start = c.normalized();
    let mut seen = BTreeSet::new();
    let mut frontier = VecDeque::new();
    seen.insert(start.clone());
    frontier.push_back(start);
    while let Some(state) = frontier.pop_front() {
        for &t in &triples {
            let image = apply_cremona(&state, t).expect("valid triple").normalized();
            if image.degree < 1 || image.degree > degree_bound {
                continue;
            }
            if image.mults.iter().any(|&m| m < 0) {
                continue;
            }
            if seen.insert(image.clone()) {
                if seen.len() > budget {
                    return Err(OracleError::BudgetExceeded {
                        budget,
                        partial: seen,
                    });
                }
                frontier.push_back(image);
            }
        }
    }
    Ok(seen)
}

fn is_exceptional_unit_tuple(c: &DivisorClass) -> bool {
    c.degree == 1
        && c.mults.len() >= 2
        && c.mults.iter().take(2).all(|&m| m == 1)
        && c.mults.iter().skip(2).all(|&m| m == 0)
}

/// Terminal classification by exhaustive orbit search: the tuple is
/// unit-equivalent if its curve-like component contains `(1;1,1,0,...)`,
/// minimal-equivalent if the component contains a minimal tuple, and
/// invalid otherwise. Mirrors the terminal order of the greedy reduction.
pub fn orbit_terminal(
    c: &DivisorClass,
    degree_bound: i64,
    budget: usize,
) -> Result<Terminal, OracleError> {
    let component = curve_component(c, degree_bound, budget)?;
    if component.iter().any(is_exceptional_unit_tuple) {
        Ok(Terminal::ExceptionalUnit)
    } else if component.iter().any(is_minimal) {
        Ok(Terminal::Minimal)
    } else {
        Ok(Terminal::Invalid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub tuple: DivisorClass,
    pub greedy: Terminal,
    pub oracle: Terminal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub r: usize,
    pub d_max: i64,
    pub tuples_checked: usize,
    /// Greedy terminal vs orbit-derived terminal disagreements.
    pub counterexamples: Vec<Counterexample>,
    /// For r <= 8: tuples where the closed-form inequality system disagrees
    /// with `reduce(c).terminal == Minimal`.
    pub system_disagreements: Vec<DivisorClass>,
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty() && self.system_disagreements.is_empty()
    }
}

/// Enumerate sorted multiplicity vectors `d >= m_1 >= ... >= m_r >= 0` and
/// call `f` on each.
fn for_each_sorted_tuple(r: usize, d: i64, f: &mut impl FnMut(&DivisorClass)) {
    fn rec(d: i64, cap: i64, left: usize, mults: &mut Vec<i64>, f: &mut impl FnMut(&DivisorClass)) {
        if left == 0 {
            f(&DivisorClass::new(d, mults.clone()));
            return;
        }
        for v in (0..=cap).rev() {
            mults.push(v);
            rec(d, v, left - 1, mults, f);
            mults.pop();
        }
    }
    rec(d, d, r, &mut Vec::with_capacity(r), f);
}

/// Exhaustively compare the greedy reduction terminal against the orbit
/// classification on every sorted curve tuple with degree at most `d_max`,
/// and (for r <= 8) against the closed-form inequality system.
///
/// Orbit components are shared across seeds via a cache, so each connected
/// component is explored once.
pub fn crosscheck_reduction(r: usize, d_max: i64) -> Result<CrosscheckReport, OracleError> {
    if !(3..=9).contains(&r) || !(1..=12).contains(&d_max) {
        return Err(OracleError::UnsupportedRange { r, d_max });
    }
    let mut report = CrosscheckReport {
        r,
        d_max,
        tuples_checked: 0,
        counterexamples: Vec::new(),
        system_disagreements: Vec::new(),
    };
    let mut classified: HashMap<DivisorClass, Terminal> = HashMap::new();
    let mut err = None;
    for d in 1..=d_max {
        for_each_sorted_tuple(r, d, &mut |c| {
            if err.is_some() {
                return;
            }
            report.tuples_checked += 1;
            let greedy = reduce(c).terminal;
            let oracle = match classified.get(c) {
                Some(&t) => t,
                None => match curve_component(c, d_max, DEFAULT_NODE_BUDGET) {
                    Ok(component) => {
                        let t = if component.iter().any(is_exceptional_unit_tuple) {
                            Terminal::ExceptionalUnit
                        } else if component.iter().any(is_minimal) {
                            Terminal::Minimal
                        } else {
                            Terminal::Invalid
                        };
                        for state in component {
                            classified.insert(state, t);
                        }
                        t
                    }
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                },
            };
            if greedy != oracle {
                report.counterexamples.push(Counterexample {
                    tuple: c.clone(),
                    greedy,
                    oracle,
                });
            }
            if r <= 8 {
                let system = minimal_equivalence_system_r_le_8(c).expect("r <= 8");
                if system != (greedy == Terminal::Minimal) {
                    report.system_disagreements.push(c.clone());
                }
            }
        });
    }
    match err {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

/// Exhaustive greedy-vs-inequality-system scan (no orbit search), usable up
/// to higher degrees than the full crosscheck.
pub fn crosscheck_minimal_system(r: usize, d_max: i64) -> Vec<DivisorClass> {
    assert!((3..=8).contains(&r));
    let mut disagreements = Vec::new();
    for d in 1..=d_max {
        for_each_sorted_tuple(r, d, &mut |c| {
            let system = minimal_equivalence_system_r_le_8(c).expect("r <= 8");
            if system != (reduce(c).terminal == Terminal::Minimal) {
                disagreements.push(c.clone());
            }
        });
    }
    disagreements
}

fn distinct_permutations(sorted_mults: &[i64]) -> u64 {
    // r! / prod(multiplicity of each value)!
    let factorial = |n: u64| (1..=n).product::<u64>();
    let mut count = factorial(sorted_mults.len() as u64);
    let mut i = 0;
    while i < sorted_mults.len() {
        let mut j = i;
        while j < sorted_mults.len() && sorted_mults[j] == sorted_mults[i] {
            j += 1;
        }
        count /= factorial((j - i) as u64);
        i = j;
    }
    count
}

/// Count exceptional classes by degree via orbit search seeded at a single
/// exceptional divisor, independently of the direct enumeration. Only
/// meaningful for r <= 8, where the orbit is finite.
pub fn certify_exceptional_counts(r: usize) -> Result<BTreeMap<i64, u64>, OracleError> {
    assert!((1..=8).contains(&r), "orbit is infinite for r >= 9");
    let mut seed_mults = vec![0i64; r];
    seed_mults[r - 1] = -1;
    let seed = DivisorClass::new(0, seed_mults);
    if r < 3 {
        // no Cremona moves available; the orbit argument degenerates, but
        // the class list is classical: the E_i, plus the line through the
        // two points when r = 2
        let mut counts = BTreeMap::new();
        counts.insert(0, r as u64);
        if r == 2 {
            counts.insert(1, 1);
        }
        return Ok(counts);
    }
    // degree 8 safely exceeds the maximal exceptional degree (6, at r = 8)
    let shapes = bfs_orbit(&seed, 8, DEFAULT_NODE_BUDGET)?;
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for shape in &shapes {
        *counts.entry(shape.degree).or_insert(0) += distinct_permutations(&shape.mults);
    }
    Ok(counts)
}
