//! Exact integer-arithmetic classification of families of nodal curves on
//! the projective plane blown up at `r` generic points.
//!
//! Given a divisor class `(d; d_1,...,d_r)` and a node count `k`, the crate
//! decides existence (completely for r <= 9, sufficiently for r >= 10),
//! smoothness, and irreducibility of the family of irreducible k-nodal
//! curves in that class, along with Cremona reduction of tuples and
//! enumeration of exceptional (-1)-classes. All predicates are exact
//! integer inequalities; no floating point is involved in any verdict.

pub mod cremona;
pub mod criteria;
pub mod exceptional;
pub mod lattice;
pub mod oracle;

pub use cremona::{apply_cremona, is_minimal, reduce, ReductionTrace, Terminal};
pub use criteria::{
    classify, existence, irreducibility, smoothness, ClassificationReport, Status, TriState,
};
pub use exceptional::{enumerate_minus_one_classes, ExceptionalClass};
pub use lattice::{DivisorClass, NodalQuery};
