//! Dimension formulas for families of rational normal scrolls and curves.
//!
//! Everything here is integer arithmetic. Multi-indices are kept sorted
//! ascending since a scroll type is only defined up to permutation.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("empty multi-index")]
    EmptyIndex,
    #[error("multi-index sums to {sum}, expected n - d + 1 = {expected}")]
    WrongSum { sum: u32, expected: i64 },
    #[error("all entries of the multi-index are zero")]
    AllZero,
    #[error("scroll dimension d = {d} must satisfy 1 <= d <= n - 1 = {}", .n - 1)]
    BadDimension { n: u32, d: u32 },
    #[error("k must be at least 1")]
    BadK,
    #[error("curves-with-scroll formula needs n even and d = n/2 (got n = {n}, d = {d})")]
    NotHalfDimensional { n: u32, d: u32 },
    #[error("n = {0} is too small")]
    SmallN(u32),
    #[error("arithmetic genus {0} is too small")]
    SmallGenus(u32),
}

/// The combinatorial type `a = (a_1, ..., a_d)` of a scroll in ℙⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScrollType {
    a: Vec<u32>,
    n: u32,
}

impl ScrollType {
    /// Validates and sorts a multi-index: `Σ a_i = n - d + 1`, some `a_i > 0`,
    /// `1 <= d <= n - 1`.
    pub fn new(mut a: Vec<u32>, n: u32) -> Result<Self, FamilyError> {
        if a.is_empty() {
            return Err(FamilyError::EmptyIndex);
        }
        let d = a.len() as u32;
        if d >= n {
            return Err(FamilyError::BadDimension { n, d });
        }
        let sum: u32 = a.iter().sum();
        let expected = n as i64 - d as i64 + 1;
        if sum as i64 != expected {
            return Err(FamilyError::WrongSum { sum, expected });
        }
        if a.iter().all(|&x| x == 0) {
            return Err(FamilyError::AllZero);
        }
        a.sort_unstable();
        Ok(ScrollType { a, n })
    }

    /// The multi-index with `n` implied by `Σ a_i = n - d + 1`.
    pub fn from_index(a: Vec<u32>) -> Result<Self, FamilyError> {
        let n = a.iter().sum::<u32>() + a.len() as u32 - 1;
        Self::new(a, n)
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn d(&self) -> u32 {
        self.a.len() as u32
    }
    /// Degree of the scroll in ℙⁿ.
    pub fn degree(&self) -> u32 {
        self.n - self.d() + 1
    }

    /// `|a_i - a_j| <= 1` for all pairs.
    pub fn is_balanced(&self) -> bool {
        self.a[self.a.len() - 1] - self.a[0] <= 1
    }

    /// Smooth exactly when every `a_i > 0`; otherwise the image is a cone.
    pub fn is_smooth(&self) -> bool {
        self.a[0] > 0
    }

    /// The balanced type with the same `n` and `d`.
    pub fn balanced(n: u32, d: u32) -> Result<Self, FamilyError> {
        if d == 0 || d >= n {
            return Err(FamilyError::BadDimension { n, d });
        }
        let total = n - d + 1;
        let (q, r) = (total / d, total % d);
        let a = (0..d).map(|i| q + u32::from(i >= d - r)).collect();
        Self::new(a, n)
    }
}

impl fmt::Display for ScrollType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(u32::to_string).collect();
        write!(f, "F({}) in P^{}", parts.join(","), self.n)
    }
}

/// A dimension that may legitimately be the empty family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyDim {
    Dim(i64),
    #[serde(with = "empty_tag")]
    Empty,
}

mod empty_tag {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("EMPTY")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "EMPTY" {
            Ok(())
        } else {
            Err(serde::de::Error::custom("expected EMPTY"))
        }
    }
}

impl FamilyDim {
    pub fn value(self) -> Option<i64> {
        match self {
            FamilyDim::Dim(v) => Some(v),
            FamilyDim::Empty => None,
        }
    }
    pub fn is_empty(self) -> bool {
        matches!(self, FamilyDim::Empty)
    }
}

impl fmt::Display for FamilyDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDim::Dim(v) => write!(f, "{v}"),
            FamilyDim::Empty => write!(f, "EMPTY"),
        }
    }
}

/// The families whose dimensions are computed here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyDescriptor {
    /// All scrolls of dimension `d` and minimal degree in ℙⁿ.
    AllScrolls { n: u32, d: u32 },
    /// Scrolls of a fixed type.
    Stratum { a: Vec<u32>, n: u32 },
    /// Rational normal curves in ℙⁿ.
    Rnc { n: u32 },
    /// Rational normal curves through a frame.
    RncThroughS { n: u32 },
    /// Scrolls of type `a` through a frame.
    ScrollsThroughS { a: Vec<u32>, n: u32 },
    /// Curves in a fixed scroll whose ruling map has degree `k`.
    CurvesInScroll { a: Vec<u32>, n: u32, k: u32 },
    /// Scrolls of type `a` containing a curve through a frame with ruling degree `k`.
    ScrollsWithCurve { a: Vec<u32>, n: u32, k: u32 },
    /// Binary curves through a frame.
    BinaryThroughS { n: u32 },
}

impl FamilyDescriptor {
    /// Predicted dimension of the family.
    pub fn dimension(&self) -> Result<FamilyDim, FamilyError> {
        use FamilyDescriptor::*;
        Ok(match self {
            AllScrolls { n, d } => {
                check_nd(*n, *d)?;
                FamilyDim::Dim(dim_all_scrolls(*n, *d))
            }
            Stratum { a, n } => FamilyDim::Dim(dim_stratum(&ScrollType::new(a.clone(), *n)?)),
            Rnc { n } => FamilyDim::Dim(dim_rnc(*n)),
            RncThroughS { n } => FamilyDim::Dim(dim_rnc_through_frame(*n)),
            ScrollsThroughS { a, n } => {
                FamilyDim::Dim(dim_scrolls_through_frame(&ScrollType::new(a.clone(), *n)?))
            }
            CurvesInScroll { a, n, k } => dim_curves_in_scroll(&ScrollType::new(a.clone(), *n)?, *k)?,
            ScrollsWithCurve { a, n, k } => {
                dim_scrolls_with_curve(&ScrollType::new(a.clone(), *n)?, *k)?
            }
            BinaryThroughS { n } => FamilyDim::Dim(dim_binary_family(*n)?),
        })
    }
}

fn check_nd(n: u32, d: u32) -> Result<(), FamilyError> {
    if d == 0 || d >= n {
        Err(FamilyError::BadDimension { n, d })
    } else {
        Ok(())
    }
}

/// `dim Aut(⊕ O(a_i)) = Σ_{i,j} max(0, a_i - a_j + 1)`.
pub fn aut_dimension(t: &ScrollType) -> i64 {
    let a = t.a();
    a.iter()
        .flat_map(|&ai| a.iter().map(move |&aj| (ai as i64 - aj as i64 + 1).max(0)))
        .sum()
}

/// `n² + 2n - 2 - d²`.
pub fn dim_all_scrolls(n: u32, d: u32) -> i64 {
    let (n, d) = (n as i64, d as i64);
    n * n + 2 * n - 2 - d * d
}

/// `dim_all_scrolls(n, d) - (dim Aut(a) - d²)`.
pub fn dim_stratum(t: &ScrollType) -> i64 {
    let d = t.d() as i64;
    dim_all_scrolls(t.n(), t.d()) - (aut_dimension(t) - d * d)
}

/// `n² + 2n - 3`.
pub fn dim_rnc(n: u32) -> i64 {
    let n = n as i64;
    n * n + 2 * n - 3
}

/// `n - 1`.
pub fn dim_rnc_through_frame(n: u32) -> i64 {
    n as i64 - 1
}

/// `(n + 2) d - (d² + 2) - (dim Aut(a) - d²)`.
pub fn dim_scrolls_through_frame(t: &ScrollType) -> i64 {
    let (n, d) = (t.n() as i64, t.d() as i64);
    (n + 2) * d - (d * d + 2) - (aut_dimension(t) - d * d)
}

/// Curves in the scroll whose induced map to ℙ¹ has degree `k`:
/// `(d-1)(n+3-k) + (k-1)(2d-n)`, or empty when `k > d` or some `n - k a_i < 0`.
pub fn dim_curves_in_scroll(t: &ScrollType, k: u32) -> Result<FamilyDim, FamilyError> {
    if k == 0 {
        return Err(FamilyError::BadK);
    }
    if k > t.d() || !degrees_nonnegative(t, k) {
        return Ok(FamilyDim::Empty);
    }
    let (n, d, k) = (t.n() as i64, t.d() as i64, k as i64);
    Ok(FamilyDim::Dim((d - 1) * (n + 3 - k) + (k - 1) * (2 * d - n)))
}

/// `n - k a_i >= 0` for every `i`.
pub fn degrees_nonnegative(t: &ScrollType, k: u32) -> bool {
    t.a().iter().all(|&ai| t.n() as i64 - k as i64 * ai as i64 >= 0)
}

/// Scrolls of type `a` (with `n` even, `d = n/2`) containing a curve through a
/// frame whose ruling map has degree `k`:
/// `dim_scrolls_through_frame(a) - (k-1)(n/2 - 1)`, or empty when some `n - k a_i < 0`.
pub fn dim_scrolls_with_curve(t: &ScrollType, k: u32) -> Result<FamilyDim, FamilyError> {
    if k == 0 {
        return Err(FamilyError::BadK);
    }
    if !t.n().is_multiple_of(2) || 2 * t.d() != t.n() {
        return Err(FamilyError::NotHalfDimensional { n: t.n(), d: t.d() });
    }
    if !degrees_nonnegative(t, k) {
        return Ok(FamilyDim::Empty);
    }
    let half = t.n() as i64 / 2;
    Ok(FamilyDim::Dim(
        dim_scrolls_through_frame(t) - (k as i64 - 1) * (half - 1),
    ))
}

/// The same value through the expanded closed form
/// `n²/4 + n - 2 - (k-1)(n/2-1) - (dim Aut(a) - n²/4)`.
pub fn dim_scrolls_with_curve_expanded(t: &ScrollType, k: u32) -> Result<FamilyDim, FamilyError> {
    let via_frame = dim_scrolls_with_curve(t, k)?;
    if via_frame.is_empty() {
        return Ok(via_frame);
    }
    let n = t.n() as i64;
    let q = n * n / 4;
    Ok(FamilyDim::Dim(
        q + n - 2 - (k as i64 - 1) * (n / 2 - 1) - (aut_dimension(t) - q),
    ))
}

/// `2n - 3`, the bound on two intersecting strata of scrolls with curves.
pub fn intersection_bound(n: u32) -> Result<i64, FamilyError> {
    if n < 3 {
        return Err(FamilyError::SmallN(n));
    }
    Ok(2 * n as i64 - 3)
}

/// `2n - 2`, binary curves through a frame.
pub fn dim_binary_family(n: u32) -> Result<i64, FamilyError> {
    if n < 3 {
        return Err(FamilyError::SmallN(n));
    }
    Ok(2 * n as i64 - 2)
}

/// `⌊(p_a + 3) / 2⌋`.
pub fn gonality_bound(p_a: u32) -> Result<i64, FamilyError> {
    if p_a < 2 {
        return Err(FamilyError::SmallGenus(p_a));
    }
    Ok((p_a as i64 + 3) / 2)
}

/// Upper bound on the Clifford index, `gon - 2`.
pub fn clifford_bound(p_a: u32) -> Result<i64, FamilyError> {
    Ok(gonality_bound(p_a)? - 2)
}

/// Number of coefficients in the coordinate model of a curve with ruling
/// degree `k`, minus the 5-dimensional reparametrization and torus action:
/// `Σ (n - k a_i + 1) + 2(k + 1) - 5`.
pub fn coefficient_count(t: &ScrollType, k: u32) -> i64 {
    let n = t.n() as i64;
    let k = k as i64;
    t.a().iter().map(|&ai| n - k * ai as i64 + 1).sum::<i64>() + 2 * (k + 1) - 5
}

/// All sorted multi-indices of `d` nonnegative parts summing to `total`,
/// in lexicographic order.
pub fn multi_indices(total: u32, d: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, slots: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            if remaining >= min {
                prefix.push(remaining);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        let mut v = min;
        while v * slots <= remaining {
            prefix.push(v);
            rec(remaining - v, slots - 1, v, prefix, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(total, d, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// One row per `k` in a stratification table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerK {
    pub k: u32,
    pub dim_curves: FamilyDim,
    /// `None` when the formula does not apply (`n` odd or `d != n/2`).
    pub dim_scrolls_with_curve: Option<FamilyDim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRow {
    pub n: u32,
    pub d: u32,
    pub a: Vec<u32>,
    pub dim_all: i64,
    pub dim_stratum: i64,
    pub aut_dim: i64,
    pub balanced: bool,
    /// The balanced stratum is the dense one.
    pub dense: bool,
    pub dim_through_frame: i64,
    pub per_k: Vec<PerK>,
}

/// Every scroll type for `(n, d)` with all of its dimensions.
pub fn stratification_table(n: u32, d: u32) -> Result<Vec<StratumRow>, FamilyError> {
    check_nd(n, d)?;
    multi_indices(n - d + 1, d)
        .into_iter()
        .map(|a| {
            let t = ScrollType::new(a, n)?;
            let per_k = (1..=d)
                .map(|k| {
                    Ok(PerK {
                        k,
                        dim_curves: dim_curves_in_scroll(&t, k)?,
                        dim_scrolls_with_curve: match dim_scrolls_with_curve(&t, k) {
                            Ok(v) => Some(v),
                            Err(FamilyError::NotHalfDimensional { .. }) => None,
                            Err(e) => return Err(e),
                        },
                    })
                })
                .collect::<Result<Vec<_>, FamilyError>>()?;
            Ok(StratumRow {
                n,
                d,
                a: t.a().to_vec(),
                dim_all: dim_all_scrolls(n, d),
                dim_stratum: dim_stratum(&t),
                aut_dim: aut_dimension(&t),
                balanced: t.is_balanced(),
                dense: t.is_balanced(),
                dim_through_frame: dim_scrolls_through_frame(&t),
                per_k,
            })
        })
        .collect()
}
