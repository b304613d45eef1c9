//! High-precision fixed-point arithmetic used to cross-validate the exact
//! integer predicates against a direct evaluation of the real-valued
//! inequalities they restate.

use num_bigint::BigInt;

/// Binary digits of fixed-point fraction; ~29 decimal digits of precision.
pub const SHIFT: u32 = 96;

/// `floor(sqrt(n) * 2^SHIFT)` for `n >= 0`.
pub fn fp_sqrt(n: i128) -> BigInt {
    assert!(n >= 0, "fp_sqrt of negative value");
    (BigInt::from(n) << (2 * SHIFT)).sqrt()
}

/// Evaluate `x > sqrt(b)` in fixed point. Returns `None` when the two sides
/// are within 1e-6 of each other (a tie, owned by the integer predicates),
/// otherwise the strict comparison.
pub fn strict_gt_sqrt(x: i128, b: i128) -> Option<bool> {
    let lhs = BigInt::from(x) << SHIFT;
    let rhs = fp_sqrt(b);
    let margin: BigInt = (BigInt::from(1) << SHIFT) / 1_000_000;
    let diff = lhs - rhs;
    if diff.magnitude() <= margin.magnitude() {
        None
    } else {
        Some(diff > BigInt::from(0))
    }
}
