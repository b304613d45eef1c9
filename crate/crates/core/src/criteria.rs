//! Exact-integer implementations of the theorem-level predicates:
//! smoothness, irreducibility, existence, the large-r node bounds, the
//! Hirschowitz vanishing criterion, and the combined classifier.
//!
//! Every square-root comparison is restated as an exact integer inequality
//! so that verdicts on the sharp theorem boundaries never depend on
//! rounding. With `s = [sqrt(2k)]` and `Q = sum (d_i+2)^2`,
//! `P = sum (d_i+2)(d_i+1)`, `R = sum d_i^2`:
//!
//!   s < d/2 + 3 - sqrt(2Q)/2   <=>  d+6-2s > 0  and  2Q < (d+6-2s)^2
//!   s < d + 3 - sqrt(2(2+P))   <=>  d+3-s  > 0  and  2(2+P) < (d+3-s)^2
//!   s < d/4 + 1 - sqrt(R)/4    <=>  d+4-4s > 0  and  R < (d+4-4s)^2
//!   s < d/2 + 1 - sqrt(2Q)/2   <=>  d+2-2s > 0  and  2Q < (d+2-2s)^2
//!
//! (Each strict inequality `x < a - sqrt(b)` with `b >= 0` is equivalent to
//! `a - x > 0` and `b < (a - x)^2`, since both sides are then positive.)

use serde::Serialize;

use crate::cremona::{reduce, ReductionStep, Terminal};
use crate::lattice::{DivisorClass, NodalQuery};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriteriaError {
    #[error("component list must be non-empty")]
    EmptyComponents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

/// Verdict of one theorem-level predicate. `Fails` is only emitted when a
/// necessary condition is violated; `Unknown` only when the applicable
/// condition is merely sufficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriState {
    pub status: Status,
    pub reason: &'static str,
    pub theorem: &'static str,
}

impl TriState {
    fn new(status: Status, reason: &'static str, theorem: &'static str) -> Self {
        TriState {
            status,
            reason,
            theorem,
        }
    }
}

/// Integer square root, `[sqrt(n)]`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    // refine the floating-point guess; exactness matters at the boundaries
    while r > 0 && r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// `s = [sqrt(2k)]`, the auxiliary degree bound used by the smoothness and
/// irreducibility conditions.
pub fn node_sqrt(k: u64) -> u64 {
    isqrt(2 * k)
}

fn sum_sq_plus2(mults: &[i64]) -> i128 {
    mults
        .iter()
        .map(|&m| (m as i128 + 2) * (m as i128 + 2))
        .sum()
}

fn sum_prod_plus2_plus1(mults: &[i64]) -> i128 {
    mults
        .iter()
        .map(|&m| (m as i128 + 2) * (m as i128 + 1))
        .sum()
}

fn sum_sq(mults: &[i64]) -> i128 {
    mults.iter().map(|&m| m as i128 * m as i128).sum()
}

fn sum_prod_plus1(mults: &[i64]) -> i128 {
    mults.iter().map(|&m| m as i128 * (m as i128 + 1)).sum()
}

/// `x > 0 && b < x^2`, the shared shape of all four conditions above.
fn positive_and_dominates(x: i128, b: i128) -> bool {
    x > 0 && b < x * x
}

/// Smoothness of the family of k-nodal irreducible curves in the class.
///
/// For r <= 9 multiple points the family is always smooth. For r >= 10 the
/// two sufficient conditions are checked exactly; when they fail the answer
/// is unknown, not negative.
pub fn smoothness(q: &NodalQuery) -> TriState {
    let c = q.cls.stripped();
    if c.r() <= 9 {
        return TriState::new(
            Status::Holds,
            "anticanonical-unconditional",
            "smoothness-small-r",
        );
    }
    let d = c.degree as i128;
    let s = node_sqrt(q.k) as i128;
    let cond1 = positive_and_dominates(d + 6 - 2 * s, 2 * sum_sq_plus2(&c.mults));
    let cond2 = positive_and_dominates(d + 3 - s, 2 * (2 + sum_prod_plus2_plus1(&c.mults)));
    match (cond1, cond2) {
        (true, true) => TriState::new(
            Status::Holds,
            "sufficient-conditions-hold",
            "smoothness-criterion",
        ),
        (false, _) => TriState::new(Status::Unknown, "condition-i-fails", "smoothness-criterion"),
        (_, false) => TriState::new(
            Status::Unknown,
            "condition-ii-fails",
            "smoothness-criterion",
        ),
    }
}

/// Irreducibility of the family. Unconditional for at most one multiple
/// point; for r >= 2 the two sufficient conditions are checked exactly.
pub fn irreducibility(q: &NodalQuery) -> TriState {
    let c = q.cls.stripped();
    if c.r() == 0 {
        // plane curves: nodal Severi varieties are always irreducible
        return TriState::new(Status::Holds, "plane-unconditional", "irreducibility-plane");
    }
    if c.r() == 1 {
        return TriState::new(
            Status::Holds,
            "one-point-unconditional",
            "irreducibility-one-point",
        );
    }
    let d = c.degree as i128;
    let s = node_sqrt(q.k) as i128;
    let cond1 = positive_and_dominates(d + 4 - 4 * s, sum_sq(&c.mults));
    let cond2 = positive_and_dominates(d + 2 - 2 * s, 2 * sum_sq_plus2(&c.mults));
    match (cond1, cond2) {
        (true, true) => TriState::new(
            Status::Holds,
            "sufficient-conditions-hold",
            "irreducibility-criterion",
        ),
        (false, _) => TriState::new(
            Status::Unknown,
            "condition-i-fails",
            "irreducibility-criterion",
        ),
        (_, false) => TriState::new(
            Status::Unknown,
            "condition-ii-fails",
            "irreducibility-criterion",
        ),
    }
}

/// Smoothness for a reduced curve with the given irreducible components:
/// holds when every component does.
pub fn smoothness_components(parts: &[NodalQuery]) -> Result<TriState, CriteriaError> {
    if parts.is_empty() {
        return Err(CriteriaError::EmptyComponents);
    }
    for part in parts {
        let v = smoothness(part);
        if v.status != Status::Holds {
            return Ok(TriState::new(
                Status::Unknown,
                "component-condition-fails",
                v.theorem,
            ));
        }
    }
    Ok(TriState::new(
        Status::Holds,
        "all-components-hold",
        "smoothness-components",
    ))
}

/// Irreducibility for a reduced curve with the given components: each part
/// must satisfy both the smoothness and the irreducibility criteria.
pub fn irreducibility_components(parts: &[NodalQuery]) -> Result<TriState, CriteriaError> {
    if parts.is_empty() {
        return Err(CriteriaError::EmptyComponents);
    }
    for part in parts {
        let s = smoothness(part);
        if s.status != Status::Holds {
            return Ok(TriState::new(
                Status::Unknown,
                "component-condition-fails",
                s.theorem,
            ));
        }
        let i = irreducibility(part);
        if i.status != Status::Holds {
            return Ok(TriState::new(
                Status::Unknown,
                "component-condition-fails",
                i.theorem,
            ));
        }
    }
    Ok(TriState::new(
        Status::Holds,
        "all-components-hold",
        "irreducibility-components",
    ))
}

/// Largest node count certified by the large-r existence theorem: the
/// maximum over admissible auxiliary degrees `d' <= d` of
/// `(d-1)(d-2)/2 - d'(d'-1)/2`, where `d' >= 1` is admissible when
/// `d'^2 + 6d' - 1 - 4[d'/2] > 2 sum d_i(d_i+1)`. The bound decreases in
/// `d'`, so the smallest admissible `d'` realizes it. `None` when no
/// admissible `d'` exists or when the bound is negative (then no node count
/// is certified).
pub fn sufficient_node_bound(c: &DivisorClass) -> Option<i64> {
    let d = c.degree as i128;
    let rhs = 2 * sum_prod_plus1(&c.mults);
    for dp in 1..=d {
        if dp * dp + 6 * dp - 1 - 4 * (dp / 2) > rhs {
            let bound = (d - 1) * (d - 2) / 2 - dp * (dp - 1) / 2;
            if bound < 0 {
                return None;
            }
            return Some(i64::try_from(bound).expect("overflow in node bound"));
        }
    }
    None
}

/// Weaker closed-form variant of [`sufficient_node_bound`]: when
/// `d^2 >= 2 sum d_i(d_i+1)`, every `k <= (d-1)(d-2)/2 - sum d_i(d_i+1)` is
/// realized.
pub fn coarse_node_bound(c: &DivisorClass) -> Option<i64> {
    let d = c.degree as i128;
    let s = sum_prod_plus1(&c.mults);
    if d * d >= 2 * s {
        let bound = (d - 1) * (d - 2) / 2 - s;
        Some(i64::try_from(bound).expect("overflow in node bound"))
    } else {
        None
    }
}

/// Hirschowitz vanishing criterion for the linear system with assigned
/// generic multiple points: `sum d_i(d_i+1) < 2[(d+3)^2/4]`. When indices
/// `collinear` mark points lying on a common line, additionally require
/// `sum_{i in I} d_i <= d+1`. Indices are zero-based.
pub fn hirschowitz_vanishes(c: &DivisorClass, collinear: Option<&[usize]>) -> bool {
    let d = c.degree as i128;
    let main = sum_prod_plus1(&c.mults) < 2 * ((d + 3) * (d + 3) / 4);
    let line = collinear.is_none_or(|idx| {
        let s: i128 = idx.iter().map(|&i| c.mults[i] as i128).sum();
        s <= d + 1
    });
    main && line
}

fn holds_within_genus(k: u64, k_max: i64, theorem: &'static str) -> TriState {
    if (k as i128) <= k_max as i128 {
        TriState::new(Status::Holds, "within-genus-bound", theorem)
    } else {
        TriState::new(Status::Fails, "k-exceeds-genus-bound", theorem)
    }
}

/// Non-emptiness of the family. Complete (never unknown) for at most nine
/// multiple points; for r >= 10 only the sufficient large-r criterion and
/// the genus bound apply.
///
/// Zero multiplicities are stripped and r taken as the count of positive
/// entries before dispatching; the existence theorems index on the number
/// of genuinely multiple base points.
pub fn existence(q: &NodalQuery) -> TriState {
    let c = q.cls.stripped().normalized();
    let d = c.degree;
    let k = q.k;
    let k_max = c.max_nodes();
    match c.r() {
        // blown-down degeneracy: plane curves of degree d
        0 => holds_within_genus(k, k_max, "severi"),
        1 => {
            let d1 = c.mults[0];
            if d1 < d || (d == 1 && d1 == 1) {
                holds_within_genus(k, k_max, "existence-one-point")
            } else {
                TriState::new(
                    Status::Fails,
                    "multiplicity-exceeds-degree",
                    "existence-one-point",
                )
            }
        }
        2 => {
            let (d1, d2) = (c.mults[0], c.mults[1]);
            if d1 + d2 <= d || (d == 1 && d1 == 1 && d2 == 1) {
                holds_within_genus(k, k_max, "existence-two-points")
            } else {
                TriState::new(
                    Status::Fails,
                    "multiplicities-exceed-degree",
                    "existence-two-points",
                )
            }
        }
        r if r <= 9 => {
            let is_cubic = d == 3 && r == 9 && c.mults.iter().all(|&m| m == 1);
            if is_cubic && k <= 1 {
                // the smooth cubic through 9 points; k_max = 1 and the tuple
                // is minimal, so both node counts are realized
                return TriState::new(
                    Status::Holds,
                    "cubic-through-nine-points",
                    "cremona-reduction",
                );
            }
            // an irreducible curve violating sum d_i <= 3d - 1 would
            // contradict Bezout on the generic blow-up (cubic excepted)
            if c.canonical_degree() >= 0 && !is_cubic {
                return TriState::new(
                    Status::Fails,
                    "violates-anticanonical-bound",
                    "cremona-reduction",
                );
            }
            if (k as i128) > k_max as i128 {
                return TriState::new(Status::Fails, "k-exceeds-genus-bound", "cremona-reduction");
            }
            match reduce(&c).terminal {
                Terminal::Minimal => {
                    TriState::new(Status::Holds, "reduces-to-minimal", "cremona-reduction")
                }
                Terminal::ExceptionalUnit => TriState::new(
                    Status::Holds,
                    "reduces-to-exceptional-unit",
                    "cremona-reduction",
                ),
                Terminal::Invalid => TriState::new(
                    Status::Fails,
                    "not-equivalent-to-minimal",
                    "cremona-reduction",
                ),
            }
        }
        _ => {
            if (k as i128) > k_max as i128 {
                return TriState::new(Status::Fails, "k-exceeds-genus-bound", "genus-bound");
            }
            match sufficient_node_bound(&c) {
                Some(bound) if (k as i128) <= bound as i128 => TriState::new(
                    Status::Holds,
                    "within-sufficient-node-bound",
                    "existence-large-r",
                ),
                _ => TriState::new(
                    Status::Unknown,
                    "beyond-sufficient-criterion",
                    "existence-large-r",
                ),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryEcho {
    pub degree: i64,
    pub mults: Vec<i64>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionView {
    pub steps: Vec<ReductionStep>,
    pub terminal: Terminal,
}

/// Combined verdict for one query. Field order matches the wire format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub query: QueryEcho,
    pub r: usize,
    pub k_max: i64,
    pub s: u64,
    pub existence: TriState,
    pub smoothness: TriState,
    pub irreducibility: TriState,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionView>,
}

/// Run all three predicates on a query. The reduction trace is attached
/// when the stripped tuple has between 3 and 9 positive multiplicities.
pub fn classify(q: &NodalQuery) -> ClassificationReport {
    let stripped = q.cls.stripped().normalized();
    let r = stripped.r();
    let reduction = if (3..=9).contains(&r) {
        let trace = reduce(&stripped);
        Some(ReductionView {
            steps: trace.steps,
            terminal: trace.terminal,
        })
    } else {
        None
    };
    ClassificationReport {
        query: QueryEcho {
            degree: q.cls.degree,
            mults: q.cls.mults.clone(),
            nodes: q.k,
        },
        r,
        k_max: q.cls.max_nodes(),
        s: node_sqrt(q.k),
        existence: existence(q),
        smoothness: smoothness(q),
        irreducibility: irreducibility(q),
        reduction,
    }
}
