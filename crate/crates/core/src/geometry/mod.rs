//! Convex geometry over the probability simplex.
//!
//! Everything in this module is built on a small dense two-phase simplex
//! solver ([`lp`]). On top of it sit hull membership with certificates,
//! L1 distance from a point to a polytope, convex-extreme point extraction,
//! and the Hausdorff distance between polytopes in total variation.

mod hull;
pub mod lp;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use hull::{
    convex_extreme_points, hausdorff_tv, hull_membership, hull_membership_vectors,
    l1_distance_to_hull, l1_distance_to_hull_vectors,
};
pub use lp::{solve_lp, LinearProgram, LpOutcome};

/// Entries below this are rejected as negative probabilities.
pub const NEGATIVE_TOL: f64 = 1e-12;
/// Largest tolerated deviation of a probability vector's sum from one.
pub const SUM_TOL: f64 = 1e-9;
/// Sums closer to one than this are left as they are.
const RENORMALIZE_TOL: f64 = 1e-12;

/// A probability vector over a finite alphabet.
///
/// Construction clamps entries in `[-1e-12, 0)` to zero and renormalizes
/// when the sum is off by more than `1e-12` but within `1e-9`; anything
/// further off is rejected.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty probability vector".into()));
        }
        if let Some((i, p)) = probs.iter().enumerate().find(|(_, p)| !p.is_finite()) {
            return Err(Error::InvalidDistribution(format!("entry {i} is not finite ({p})")));
        }
        if let Some((i, p)) = probs.iter().enumerate().find(|(_, &p)| p < -NEGATIVE_TOL) {
            return Err(Error::InvalidDistribution(format!("entry {i} is negative ({p})")));
        }
        let mut probs: Vec<f64> = probs.into_iter().map(|p| p.max(0.0)).collect();
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDistribution(format!("entries sum to {sum}, not 1")));
        }
        // Only rescale sums that are visibly off, so that re-validating an
        // already normalized vector leaves it bit-identical.
        if (sum - 1.0).abs() > RENORMALIZE_TOL {
            probs.iter_mut().for_each(|p| *p /= sum);
        }
        Ok(Distribution(probs))
    }

    /// Wraps a vector already known to be a probability vector.
    pub(crate) fn from_raw(probs: Vec<f64>) -> Self {
        debug_assert!((probs.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        Distribution(probs)
    }

    /// Point mass on `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        assert!(index < len, "unit index {index} out of range for length {len}");
        let mut probs = vec![0.0; len];
        probs[index] = 1.0;
        Distribution(probs)
    }

    pub fn uniform(len: usize) -> Self {
        assert!(len > 0);
        Distribution(vec![1.0 / len as f64; len])
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Total variation distance, half the L1 distance.
    pub fn tv_distance(&self, other: &Distribution) -> f64 {
        0.5 * l1(&self.0, &other.0)
    }

    /// Product measure on the pair alphabet, ordered with the second
    /// coordinate varying fastest.
    pub fn product(&self, other: &Distribution) -> Distribution {
        let probs = self
            .0
            .iter()
            .flat_map(|&a| other.0.iter().map(move |&b| a * b))
            .collect();
        Distribution(probs)
    }
}

impl AsRef<[f64]> for Distribution {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let probs = Vec::<f64>::deserialize(de)?;
        Distribution::new(probs).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Numerical tolerances shared by the LP-backed operations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Largest phase-one residual accepted as feasible.
    pub feasibility_tol: f64,
    /// Points closer than this in max-norm are treated as one point.
    pub dedup_tol: f64,
    /// Slack allowed when checking Farkas certificates.
    pub certificate_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            feasibility_tol: 1e-9,
            dedup_tol: 1e-9,
            certificate_tol: 1e-7,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("feasibility_tol", self.feasibility_tol),
            ("dedup_tol", self.dedup_tol),
            ("certificate_tol", self.certificate_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Precondition(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// A linear functional `h` with `<h, q> >= max_g <h, g> + gap`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Separator {
    pub functional: Vec<f64>,
    pub gap: f64,
}

/// Outcome of a convex hull membership query.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    /// Convex weights over the generators reproducing the query point.
    Inside { weights: Vec<f64> },
    Outside(Separator),
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }

    pub fn weights(&self) -> Option<&[f64]> {
        match self {
            Membership::Inside { weights } => Some(weights),
            Membership::Outside(_) => None,
        }
    }

    pub fn separator(&self) -> Option<&Separator> {
        match self {
            Membership::Inside { .. } => None,
            Membership::Outside(sep) => Some(sep),
        }
    }
}
