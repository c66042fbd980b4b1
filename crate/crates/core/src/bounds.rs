//! Upper and lower bounds on the spectral radius built from a positive scale
//! vector `c`.
//!
//! Conjugating `A` by `U = diag(c)` leaves the spectrum unchanged and turns the
//! row sums into the scaled row sums `M_i = (1/c_i) * sum_j a_ij c_j`. With the
//! `M_i` sorted in descending order, and writing `M`/`S` for the largest and
//! smallest diagonal entries and `N`/`T` for the largest and smallest scaled
//! off-diagonal entries `a_ij c_j / c_i`:
//!
//! ```text
//! rho(A) <= (M_i + M - N + sqrt((M_i - M + N)^2 + 4N sum_{k<i} (M_k - M_i))) / 2
//! rho(A) >= (M_n + S - T + sqrt((M_n - S + T)^2 + 4T sum_{k<n} (M_k - M_n))) / 2
//! ```
//!
//! Taking `c` as the all-ones vector recovers the classical row-sum versions.

use serde::{Deserialize, Serialize};

use crate::error::BoundsError;
use crate::matrix::{spectral_radius_with, IrreducibleMatrix, NonnegativeMatrix, OracleConfig};

/// Relative tolerance for declaring a bound attained by the oracle value.
pub const ATTAINMENT_TOL: f64 = 1e-6;
/// Relative tolerance for the structural equality conditions.
pub const STRUCTURE_TOL: f64 = 1e-9;
/// Relative slack below zero tolerated in a radicand before it is clamped.
pub const RADICAND_SLACK: f64 = 1e-12;

/// Strictly positive scale vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleVector(Vec<f64>);

impl ScaleVector {
    pub fn new(c: Vec<f64>) -> Result<Self, BoundsError> {
        if let Some((index, &value)) = c.iter().enumerate().find(|(_, &x)| !(x > 0.0 && x.is_finite())) {
            return Err(BoundsError::NonPositiveScale { index, value });
        }
        Ok(Self(c))
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for ScaleVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Scaled row sums and the four extremal quantities entering the bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledProfile {
    /// `M_i` in natural (vertex) order.
    pub m_values: Vec<f64>,
    /// Vertex indices sorted by `M_i` descending; ties keep index order.
    pub order: Vec<usize>,
    /// `M = max_i a_ii`.
    pub diag_max: f64,
    /// `S = min_i a_ii`.
    pub diag_min: f64,
    /// `N = max_{i != j} a_ij c_j / c_i` (0 when `n = 1`).
    pub off_max: f64,
    /// `T = min_{i != j} a_ij c_j / c_i` (0 when `n = 1`).
    pub off_min: f64,
}

impl ScaledProfile {
    pub fn dim(&self) -> usize {
        self.m_values.len()
    }

    /// `M` at 1-based rank `k` in sorted order.
    pub fn sorted(&self, k: usize) -> f64 {
        self.m_values[self.order[k - 1]]
    }

    pub fn sorted_values(&self) -> Vec<f64> {
        self.order.iter().map(|&v| self.m_values[v]).collect()
    }

    fn check_rank(&self, i: usize) -> Result<(), BoundsError> {
        if i == 0 || i > self.dim() {
            return Err(BoundsError::IndexOutOfRange {
                index: i,
                n: self.dim(),
            });
        }
        Ok(())
    }

    /// Value of the upper bound at 1-based rank `i`.
    pub fn upper_value(&self, i: usize) -> Result<f64, BoundsError> {
        self.check_rank(i)?;
        if self.off_max <= 0.0 {
            return Err(BoundsError::ZeroOffDiagonalMax);
        }
        let pivot = self.sorted(i);
        let deviation: f64 = (1..i).map(|k| self.sorted(k) - pivot).sum();
        Ok(two_sided_root(pivot, self.diag_max, self.off_max, deviation))
    }

    /// Value of the lower bound (always at rank `n`).
    pub fn lower_value(&self) -> f64 {
        let n = self.dim();
        let pivot = self.sorted(n);
        let deviation: f64 = (1..n).map(|k| self.sorted(k) - pivot).sum();
        two_sided_root(pivot, self.diag_min, self.off_min, deviation)
    }
}

/// `(p + d - o + sqrt((p - d + o)^2 + 4 o s)) / 2`.
fn two_sided_root(pivot: f64, diag: f64, off: f64, deviation: f64) -> f64 {
    let shifted = pivot - diag + off;
    let radicand = clamp_radicand(shifted * shifted + 4.0 * off * deviation);
    (pivot + diag - off + radicand.sqrt()) / 2.0
}

fn clamp_radicand(r: f64) -> f64 {
    if r < 0.0 && r >= -RADICAND_SLACK * (1.0 + r.abs()) {
        0.0
    } else {
        r
    }
}

fn check_scale(m: &NonnegativeMatrix, c: &ScaleVector) -> Result<(), BoundsError> {
    if c.len() != m.dim() {
        return Err(BoundsError::DimensionMismatch {
            matrix: m.dim(),
            scale: c.len(),
        });
    }
    Ok(())
}

/// Scaled row sums `M_i`, their descending order and `M, S, N, T`.
pub fn scaled_profile(m: &IrreducibleMatrix, c: &ScaleVector) -> Result<ScaledProfile, BoundsError> {
    check_scale(m, c)?;
    let n = m.dim();
    let c = c.as_slice();

    let m_values: Vec<f64> = (0..n)
        .map(|i| {
            let s: f64 = m.row(i).iter().zip(c).map(|(a, cj)| a * cj).sum();
            s / c[i]
        })
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    // sort_by is stable, so tied rows keep their vertex order
    order.sort_by(|&a, &b| m_values[b].total_cmp(&m_values[a]));

    let (mut off_max, mut off_min) = (f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let x = m.get(i, j) * c[j] / c[i];
            off_max = off_max.max(x);
            off_min = off_min.min(x);
        }
    }
    if n == 1 {
        off_max = 0.0;
        off_min = 0.0;
    }

    Ok(ScaledProfile {
        m_values,
        order,
        diag_max: m.diag_max(),
        diag_min: m.diag_min(),
        off_max,
        off_min,
    })
}

/// Which side of `rho` a bound sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Structural reason a bound can be tight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "t")]
pub enum EqualityBranch {
    /// All scaled row sums coincide.
    AllEqual,
    /// The diagonal/off-diagonal pattern holds for the first `t - 1` sorted
    /// rows and the remaining scaled row sums coincide.
    Structured(usize),
    NotAttained,
}

impl std::fmt::Display for EqualityBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EqualityBranch::AllEqual => f.write_str("all-equal"),
            EqualityBranch::Structured(t) => write!(f, "structured({t})"),
            EqualityBranch::NotAttained => f.write_str("not-attained"),
        }
    }
}

/// Numeric attainment and structural branch, reported independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualityDiagnosis {
    /// `|bound - rho| <= 1e-6 (1 + rho)`.
    pub holds: bool,
    pub branch: EqualityBranch,
}

impl EqualityDiagnosis {
    pub fn witness_t(&self) -> Option<usize> {
        match self.branch {
            EqualityBranch::Structured(t) => Some(t),
            _ => None,
        }
    }
}

/// One bound evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub value: f64,
    pub side: Side,
    /// 1-based rank in sorted order (`n` for lower bounds).
    pub index_i: usize,
    pub alpha: Option<f64>,
    pub equality: EqualityDiagnosis,
}

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() <= STRUCTURE_TOL * (1.0 + x.abs().max(y.abs()))
}

fn attained(bound: f64, rho: f64) -> bool {
    (bound - rho).abs() <= ATTAINMENT_TOL * (1.0 + rho.abs())
}

fn all_equal(profile: &ScaledProfile) -> bool {
    let hi = profile.m_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = profile.m_values.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo <= STRUCTURE_TOL * (1.0 + hi.abs())
}

/// Checks the structural pattern at split `t` (1-based, `t >= 2`): diagonal
/// entries of sorted rows `k < t` equal `diag`, every scaled entry in sorted
/// columns `l < t` (off the diagonal) equals `off`, and sorted `M_t..M_n` coincide.
fn structured_at(
    m: &NonnegativeMatrix,
    c: &[f64],
    profile: &ScaledProfile,
    t: usize,
    diag: f64,
    off: f64,
) -> bool {
    let ord = &profile.order;
    let n = m.dim();
    let diag_ok = (0..t - 1).all(|k| near(m.get(ord[k], ord[k]), diag));
    let off_ok = (0..n).all(|k| {
        (0..t - 1)
            .filter(|&l| l != k)
            .all(|l| near(m.get(ord[k], ord[l]) * c[ord[l]] / c[ord[k]], off))
    });
    let tail = profile.sorted(t);
    let tail_ok = (t..=n).all(|k| near(profile.sorted(k), tail));
    diag_ok && off_ok && tail_ok
}

fn diagnose_upper(
    m: &NonnegativeMatrix,
    c: &ScaleVector,
    profile: &ScaledProfile,
    i: usize,
    bound: f64,
    rho: f64,
) -> EqualityDiagnosis {
    let branch = if all_equal(profile) {
        EqualityBranch::AllEqual
    } else {
        (2..=i)
            .find(|&t| structured_at(m, c.as_slice(), profile, t, profile.diag_max, profile.off_max))
            .map_or(EqualityBranch::NotAttained, EqualityBranch::Structured)
    };
    EqualityDiagnosis {
        holds: attained(bound, rho),
        branch,
    }
}

fn diagnose_lower(
    m: &NonnegativeMatrix,
    c: &ScaleVector,
    profile: &ScaledProfile,
    bound: f64,
    rho: f64,
) -> EqualityDiagnosis {
    let branch = if all_equal(profile) {
        EqualityBranch::AllEqual
    } else if profile.off_min > 0.0 {
        (2..=profile.dim())
            .find(|&t| structured_at(m, c.as_slice(), profile, t, profile.diag_min, profile.off_min))
            .map_or(EqualityBranch::NotAttained, EqualityBranch::Structured)
    } else {
        // No structural characterization is available when T = 0.
        EqualityBranch::NotAttained
    };
    EqualityDiagnosis {
        holds: attained(bound, rho),
        branch,
    }
}

/// Evaluates bounds for one `(A, c)` pair against a fixed oracle value.
///
/// Construction computes the profile and, unless a value is supplied, runs the
/// oracle once; every bound afterwards is a closed-form evaluation.
#[derive(Debug, Clone)]
pub struct BoundEvaluator<'a> {
    matrix: &'a IrreducibleMatrix,
    scale: ScaleVector,
    profile: ScaledProfile,
    rho: f64,
}

impl<'a> BoundEvaluator<'a> {
    pub fn new(
        matrix: &'a IrreducibleMatrix,
        scale: ScaleVector,
        oracle: &OracleConfig,
    ) -> Result<Self, BoundsError> {
        let profile = scaled_profile(matrix, &scale)?;
        let rho = spectral_radius_with(matrix, oracle)?.rho;
        Ok(Self {
            matrix,
            scale,
            profile,
            rho,
        })
    }

    /// Uses a precomputed spectral radius instead of running the oracle.
    pub fn with_rho(
        matrix: &'a IrreducibleMatrix,
        scale: ScaleVector,
        rho: f64,
    ) -> Result<Self, BoundsError> {
        let profile = scaled_profile(matrix, &scale)?;
        Ok(Self {
            matrix,
            scale,
            profile,
            rho,
        })
    }

    pub fn profile(&self) -> &ScaledProfile {
        &self.profile
    }

    pub fn scale(&self) -> &ScaleVector {
        &self.scale
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn upper(&self, i: usize) -> Result<BoundReport, BoundsError> {
        let value = self.profile.upper_value(i)?;
        Ok(BoundReport {
            value,
            side: Side::Upper,
            index_i: i,
            alpha: None,
            equality: diagnose_upper(self.matrix, &self.scale, &self.profile, i, value, self.rho),
        })
    }

    pub fn lower(&self) -> BoundReport {
        let value = self.profile.lower_value();
        BoundReport {
            value,
            side: Side::Lower,
            index_i: self.profile.dim(),
            alpha: None,
            equality: diagnose_lower(self.matrix, &self.scale, &self.profile, value, self.rho),
        }
    }

    /// Smallest upper bound over all ranks; ties go to the smallest rank.
    pub fn best_upper(&self) -> Result<BoundReport, BoundsError> {
        let mut best = self.upper(1)?;
        for i in 2..=self.profile.dim() {
            let r = self.upper(i)?;
            if r.value < best.value {
                best = r;
            }
        }
        Ok(best)
    }
}

/// Upper bound at rank `i` for scale vector `c` (default oracle for the diagnosis).
pub fn upper_bound(m: &IrreducibleMatrix, c: &ScaleVector, i: usize) -> Result<BoundReport, BoundsError> {
    BoundEvaluator::new(m, c.clone(), &OracleConfig::default())?.upper(i)
}

/// Lower bound for scale vector `c`.
pub fn lower_bound(m: &IrreducibleMatrix, c: &ScaleVector) -> Result<BoundReport, BoundsError> {
    Ok(BoundEvaluator::new(m, c.clone(), &OracleConfig::default())?.lower())
}

/// Row-sum upper bound: [`upper_bound`] with `c` all ones.
pub fn upper_bound_rowsum(m: &IrreducibleMatrix, i: usize) -> Result<BoundReport, BoundsError> {
    upper_bound(m, &ScaleVector::ones(m.dim()), i)
}

/// Row-sum upper bound for matrices with zero diagonal.
pub fn upper_bound_zero_diag(m: &IrreducibleMatrix, i: usize) -> Result<BoundReport, BoundsError> {
    if let Some((index, value)) = m.diagonal().enumerate().find(|&(_, x)| x != 0.0) {
        return Err(BoundsError::NonZeroDiagonal { index, value });
    }
    upper_bound_rowsum(m, i)
}

/// Row-sum lower bound: [`lower_bound`] with `c` all ones.
pub fn lower_bound_rowsum(m: &IrreducibleMatrix) -> Result<BoundReport, BoundsError> {
    lower_bound(m, &ScaleVector::ones(m.dim()))
}

/// Minimum of [`upper_bound`] over all ranks.
pub fn best_upper_bound(m: &IrreducibleMatrix, c: &ScaleVector) -> Result<BoundReport, BoundsError> {
    BoundEvaluator::new(m, c.clone(), &OracleConfig::default())?.best_upper()
}

pub fn equality_diagnosis_upper(
    m: &IrreducibleMatrix,
    c: &ScaleVector,
    i: usize,
    bound_value: f64,
    rho: f64,
) -> Result<EqualityDiagnosis, BoundsError> {
    let profile = scaled_profile(m, c)?;
    profile.check_rank(i)?;
    Ok(diagnose_upper(m, c, &profile, i, bound_value, rho))
}

pub fn equality_diagnosis_lower(
    m: &IrreducibleMatrix,
    c: &ScaleVector,
    bound_value: f64,
    rho: f64,
) -> Result<EqualityDiagnosis, BoundsError> {
    let profile = scaled_profile(m, c)?;
    Ok(diagnose_lower(m, c, &profile, bound_value, rho))
}

/// `diag(c)^-1 A diag(c)`, whose row sums are the scaled row sums of `A`.
pub fn diagonal_similarity(m: &NonnegativeMatrix, c: &ScaleVector) -> Result<NonnegativeMatrix, BoundsError> {
    check_scale(m, c)?;
    let c = c.as_slice();
    Ok(NonnegativeMatrix::from_fn(m.dim(), |i, j| {
        m.get(i, j) * c[j] / c[i]
    })?)
}
