//! Divisor-class arithmetic on the Picard lattice of the plane blown up at
//! `r` generic points.
//!
//! A class is written `(d; d_1,...,d_r)` and means `d*E0 - sum d_i*E_i` in
//! the basis `E0, E1,...,Er` (line class and exceptional divisors). The
//! intersection pairing is `E0^2 = 1`, `E_i^2 = -1`, mixed products zero.
//! This convention is shared by every module in the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: r = {0} vs r = {1}")]
    DimensionMismatch(usize, usize),
    #[error("not a curve query class: {0}")]
    NotACurveClass(String),
    #[error("integer overflow in lattice computation")]
    Overflow,
}

/// A class `(d; d_1,...,d_r)` in Pic of the blown-up plane.
///
/// Entries may be arbitrary integers; the stricter "curve query class"
/// requirements (`d >= 1`, `d_i >= 0`) are enforced only at the API boundary
/// by [`DivisorClass::curve_query`], never inside oracle searches.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub degree: i64,
    pub mults: Vec<i64>,
}

impl DivisorClass {
    pub fn new(degree: i64, mults: Vec<i64>) -> Self {
        DivisorClass { degree, mults }
    }

    /// Validated constructor for classes that can carry a curve: `d >= 1`
    /// and all multiplicities non-negative.
    pub fn curve_query(degree: i64, mults: Vec<i64>) -> Result<Self, LatticeError> {
        if degree < 1 {
            return Err(LatticeError::NotACurveClass(format!("degree {degree} < 1")));
        }
        if let Some(m) = mults.iter().find(|&&m| m < 0) {
            return Err(LatticeError::NotACurveClass(format!(
                "negative multiplicity {m}"
            )));
        }
        Ok(DivisorClass { degree, mults })
    }

    /// Number of blown-up points this class lives over.
    pub fn r(&self) -> usize {
        self.mults.len()
    }

    /// Intersection pairing `a.b = d_a d_b - sum a_i b_i`.
    pub fn intersect(&self, other: &DivisorClass) -> Result<i64, LatticeError> {
        if self.r() != other.r() {
            return Err(LatticeError::DimensionMismatch(self.r(), other.r()));
        }
        let mut acc = self.degree as i128 * other.degree as i128;
        for (a, b) in self.mults.iter().zip(&other.mults) {
            acc -= *a as i128 * *b as i128;
        }
        i64::try_from(acc).map_err(|_| LatticeError::Overflow)
    }

    /// Self-intersection `d^2 - sum d_i^2`.
    pub fn self_intersect(&self) -> i64 {
        self.intersect(self).expect("same r")
    }

    /// Degree against the canonical class `K = -3E0 + sum E_i`, i.e.
    /// `K.C = -3d + sum d_i`. Negative exactly when the classical
    /// anticanonical smoothness condition holds.
    pub fn canonical_degree(&self) -> i64 {
        let mut acc = -3 * self.degree as i128;
        for m in &self.mults {
            acc += *m as i128;
        }
        i64::try_from(acc).expect("overflow in canonical_degree")
    }

    /// Arithmetic-genus bound on the node count:
    /// `(d-1)(d-2)/2 - sum d_i(d_i-1)/2`. May be negative, in which case no
    /// irreducible nodal curve of this class exists.
    pub fn max_nodes(&self) -> i64 {
        let d = self.degree as i128;
        let mut twice = (d - 1) * (d - 2);
        assert!(twice % 2 == 0);
        for m in &self.mults {
            let m = *m as i128;
            let p = m * (m - 1);
            assert!(p % 2 == 0);
            twice -= p;
        }
        i64::try_from(twice / 2).expect("overflow in max_nodes")
    }

    /// Copy with multiplicities sorted in non-increasing order. Trailing
    /// zeros are retained, so `r` is unchanged.
    pub fn normalized(&self) -> DivisorClass {
        let mut mults = self.mults.clone();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        DivisorClass {
            degree: self.degree,
            mults,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.mults.windows(2).all(|w| w[0] >= w[1])
    }

    /// Copy with zero multiplicities dropped (used when dispatching the
    /// theorem predicates, which index on the number of genuinely multiple
    /// base points).
    pub fn stripped(&self) -> DivisorClass {
        DivisorClass {
            degree: self.degree,
            mults: self.mults.iter().copied().filter(|&m| m != 0).collect(),
        }
    }

    /// Copy padded with zero multiplicities up to length `r`.
    pub fn padded(&self, r: usize) -> DivisorClass {
        let mut mults = self.mults.clone();
        if mults.len() < r {
            mults.resize(r, 0);
        }
        DivisorClass {
            degree: self.degree,
            mults,
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.degree)?;
        for (i, m) in self.mults.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// A divisor class together with a prescribed node count; the input of all
/// classification predicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodalQuery {
    pub cls: DivisorClass,
    pub k: u64,
}

impl NodalQuery {
    pub fn new(cls: DivisorClass, k: u64) -> Self {
        NodalQuery { cls, k }
    }
}
