//! Enumeration and validation of exceptional curve classes on the blown-up
//! plane: the rigid rational classes with self-intersection -1 and
//! anticanonical degree 1.
//!
//! The enumeration criterion is the Diophantine pair (self-intersection -1,
//! canonical degree -1) rather than the raw inequality `sum h_i^2 > h^2`
//! defining exceptional curves: the pair is finite and checkable, forces
//! arithmetic genus 0, and reproduces the classical tables for r <= 8. The
//! two definitions are not asserted to be equivalent in general.

use serde::{Deserialize, Serialize};

use crate::lattice::DivisorClass;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExceptionalError {
    #[error("class {0} is not exceptional: {1}")]
    NotExceptional(String, &'static str),
}

/// A divisor class certified to satisfy `C^2 = -1` and `K.C = -1`.
///
/// Degree-0 members are the exceptional divisors `E_i` themselves, encoded
/// with a single `-1` multiplicity; members of positive degree have
/// non-negative multiplicities with `sum d_i^2 > d^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExceptionalClass {
    cls: DivisorClass,
}

impl ExceptionalClass {
    pub fn new(cls: DivisorClass) -> Result<Self, ExceptionalError> {
        let fail = |why| Err(ExceptionalError::NotExceptional(cls.to_string(), why));
        if cls.self_intersect() != -1 {
            return fail("self-intersection != -1");
        }
        if cls.canonical_degree() != -1 {
            return fail("canonical degree != -1");
        }
        if cls.degree >= 1 {
            if cls.mults.iter().any(|&m| m < 0) {
                return fail("negative multiplicity at positive degree");
            }
            if !is_exceptional_candidate(&cls) {
                return fail("sum of squared multiplicities <= degree^2");
            }
        } else if cls.degree == 0 {
            let minus_ones = cls.mults.iter().filter(|&&m| m == -1).count();
            let zeros = cls.mults.iter().filter(|&&m| m == 0).count();
            if minus_ones != 1 || zeros != cls.r() - 1 {
                return fail("degree-0 class is not an exceptional divisor");
            }
        } else {
            return fail("negative degree");
        }
        Ok(ExceptionalClass { cls })
    }

    pub fn class(&self) -> &DivisorClass {
        &self.cls
    }

    pub fn into_class(self) -> DivisorClass {
        self.cls
    }
}

/// `sum d_i^2 > d^2`, the defining inequality of exceptional curves.
pub fn is_exceptional_candidate(c: &DivisorClass) -> bool {
    let sq: i128 = c.mults.iter().map(|&m| m as i128 * m as i128).sum();
    sq > c.degree as i128 * c.degree as i128
}

/// Necessary condition for an irreducible curve of class `c` to exist on
/// the generic blow-up: `sum d_i^2 <= d(d+1)`.
pub fn bezout_bound_holds(c: &DivisorClass) -> bool {
    let sq: i128 = c.mults.iter().map(|&m| m as i128 * m as i128).sum();
    sq <= c.degree as i128 * (c.degree as i128 + 1)
}

/// Enumerate all exceptional classes over `r` points with degree at most
/// `h_max`, permutation-distinct classes listed individually, sorted
/// lexicographically by (degree, multiplicities).
///
/// `include_points` controls whether the degree-0 classes `E_i` are listed;
/// including them makes the totals match the classical del Pezzo tallies.
/// For r >= 9 infinitely many classes exist, so the list is a truncation.
pub fn enumerate_minus_one_classes(
    r: usize,
    h_max: i64,
    include_points: bool,
) -> Vec<ExceptionalClass> {
    let mut out = Vec::new();
    if include_points && h_max >= 0 {
        for i in 0..r {
            let mut mults = vec![0i64; r];
            mults[i] = -1;
            out.push(ExceptionalClass::new(DivisorClass::new(0, mults)).unwrap());
        }
    }
    for h in 1..=h_max.max(0) {
        // C^2 = -1 forces sum m_i^2 = h^2 + 1, K.C = -1 forces sum m_i = 3h - 1
        let target_sum = 3 * h - 1;
        let target_sq = h * h + 1;
        let mut shape = Vec::new();
        let mut shapes = Vec::new();
        search_shapes(r, h, target_sum, target_sq, &mut shape, &mut shapes);
        for shape in shapes {
            expand_permutations(h, &shape, r, &mut out);
        }
    }
    out.sort();
    out
}

/// Non-increasing sequences of length <= r with fixed sum and sum of
/// squares, entries in [1, cap]; trailing zeros are implicit.
fn search_shapes(
    r: usize,
    cap: i64,
    sum: i64,
    sq: i64,
    shape: &mut Vec<i64>,
    shapes: &mut Vec<Vec<i64>>,
) {
    if sum == 0 && sq == 0 {
        shapes.push(shape.clone());
        return;
    }
    if shape.len() == r || sum <= 0 || sq <= 0 {
        return;
    }
    let remaining = r - shape.len();
    let hi = cap.min(sum);
    for v in (1..=hi).rev() {
        // pruning: the rest cannot exceed `remaining - 1` copies of v
        if v * (remaining as i64 - 1) < sum - v {
            continue;
        }
        if v * v > sq {
            continue;
        }
        shape.push(v);
        search_shapes(r, v, sum - v, sq - v * v, shape, shapes);
        shape.pop();
    }
}

fn expand_permutations(h: i64, shape: &[i64], r: usize, out: &mut Vec<ExceptionalClass>) {
    let mut mults = vec![0i64; r];
    let mut padded = shape.to_vec();
    padded.resize(r, 0);
    padded.sort_unstable(); // ascending: next_permutation-style expansion
    loop {
        mults.copy_from_slice(&padded);
        out.push(
            ExceptionalClass::new(DivisorClass::new(h, mults.clone()))
                .expect("shape solves the Diophantine system"),
        );
        if !next_permutation(&mut padded) {
            break;
        }
    }
}

/// Lexicographic next permutation; false once the sequence is descending.
fn next_permutation(seq: &mut [i64]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}
