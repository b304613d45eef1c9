//! Cremona maps on divisor-class tuples, minimality testing, and greedy
//! reduction to terminal form.
//!
//! The quadratic Cremona transformation based at three of the blown-up
//! points acts on Pic as the lattice involution
//! `d' = 2d - d_j - d_m - d_n`, `d'_j = d - d_m - d_n` (and cyclically),
//! all other entries unchanged. Two tuples are equivalent when a finite
//! sequence of such maps plus a permutation carries one to the other.

use serde::{Deserialize, Serialize};

use crate::lattice::DivisorClass;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CremonaError {
    #[error("cremona indices must be three distinct indices below r = {r}: got {indices:?}")]
    BadIndices { indices: [usize; 3], r: usize },
    #[error("closed-form minimality system only covers r <= 8 (got r = {0})")]
    UnsupportedRank(usize),
}

/// Terminal form of a greedy Cremona reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Terminal {
    /// Reached a non-negative tuple whose three largest multiplicities sum
    /// to at most the degree.
    Minimal,
    /// Reached the tuple `(1;1,1,0,...,0)`, the class of a line through two
    /// of the blown-up points.
    ExceptionalUnit,
    /// Produced a negative entry or a non-positive degree.
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    /// Indices the Cremona map was based at (always the three largest
    /// multiplicities of the normalized tuple).
    pub triple: [usize; 3],
    /// Normalized tuple after the move.
    pub result: DivisorClass,
}

/// The sequence of Cremona moves from a tuple to its terminal form.
/// Degrees along `steps` are strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub initial: DivisorClass,
    pub steps: Vec<ReductionStep>,
    pub terminal: Terminal,
}

/// Apply the Cremona map based at indices `j, m, n` (zero-based, distinct).
pub fn apply_cremona(c: &DivisorClass, triple: [usize; 3]) -> Result<DivisorClass, CremonaError> {
    let [j, m, n] = triple;
    let r = c.r();
    if j >= r || m >= r || n >= r || j == m || j == n || m == n {
        return Err(CremonaError::BadIndices { indices: triple, r });
    }
    let (dj, dm, dn) = (c.mults[j], c.mults[m], c.mults[n]);
    let mut mults = c.mults.clone();
    mults[j] = c.degree - dm - dn;
    mults[m] = c.degree - dj - dn;
    mults[n] = c.degree - dj - dm;
    Ok(DivisorClass::new(2 * c.degree - dj - dm - dn, mults))
}

/// Minimality condition on a normalized tuple: the three largest
/// multiplicities sum to at most the degree. Tuples with fewer than three
/// entries are padded with zeros.
pub fn is_minimal(c: &DivisorClass) -> bool {
    debug_assert!(c.is_normalized());
    let top3: i64 = c.mults.iter().take(3).sum();
    top3 <= c.degree
}

fn is_exceptional_unit(c: &DivisorClass) -> bool {
    c.degree == 1
        && c.mults.len() >= 2
        && c.mults.iter().take(2).all(|&m| m == 1)
        && c.mults.iter().skip(2).all(|&m| m == 0)
}

/// Greedily reduce a tuple: normalize, then pivot at the three largest
/// multiplicities whenever they exceed the degree. Since the degree strictly
/// decreases at every non-terminal step, at most `degree` steps occur.
///
/// Terminal checks run in the order exceptional-unit, minimal, invalid;
/// `(1;1,1,0,...)` fails minimality, so the unit check must come first, and
/// the minimal terminal additionally requires a non-negative tuple of
/// positive degree (tuples outside that range are invalid, not minimal).
pub fn reduce(c: &DivisorClass) -> ReductionTrace {
    let initial = if c.r() < 3 { c.padded(3) } else { c.clone() };
    let mut current = initial.normalized();
    let mut steps = Vec::new();
    loop {
        if is_exceptional_unit(&current) {
            return ReductionTrace {
                initial,
                steps,
                terminal: Terminal::ExceptionalUnit,
            };
        }
        let non_negative = current.degree >= 1 && current.mults.iter().all(|&m| m >= 0);
        if non_negative && is_minimal(&current) {
            return ReductionTrace {
                initial,
                steps,
                terminal: Terminal::Minimal,
            };
        }
        if !non_negative {
            return ReductionTrace {
                initial,
                steps,
                terminal: Terminal::Invalid,
            };
        }
        // d_1 + d_2 + d_3 > d here, so the move strictly drops the degree
        let triple = [0, 1, 2];
        current = apply_cremona(&current, triple)
            .expect("r >= 3 after padding")
            .normalized();
        steps.push(ReductionStep {
            triple,
            result: current.clone(),
        });
    }
}

/// Closed-form equivalence-to-minimal test for normalized tuples with
/// `r <= 8` (padded with zeros to length 8): six linear inequalities on the
/// sorted multiplicities.
pub fn minimal_equivalence_system_r_le_8(c: &DivisorClass) -> Result<bool, CremonaError> {
    if c.r() > 8 {
        return Err(CremonaError::UnsupportedRank(c.r()));
    }
    let c = c.normalized().padded(8);
    let d = c.degree;
    let m = &c.mults;
    let sum = |range: std::ops::RangeInclusive<usize>| -> i64 { range.map(|i| m[i - 1]).sum() };
    Ok(d >= m[0] + m[1]
        && 2 * d >= sum(1..=5)
        && 3 * d >= 2 * m[0] + sum(2..=7)
        && 4 * d >= 2 * sum(1..=3) + sum(4..=8)
        && 5 * d >= 2 * sum(1..=6) + m[6] + m[7]
        && 6 * d >= 3 * m[0] + 2 * sum(2..=8))
}
