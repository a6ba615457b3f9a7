//! Input-degradedness and input-equivalence.
//!
//! `W` is input-degraded from `W'` when `W = W' ∘ V` for some channel `V`,
//! which holds exactly when every row of `W` is a convex combination of the
//! rows of `W'`. The convex-extreme rows of a channel (its characteristic)
//! determine its input-equivalence class.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::channel::{product_alphabet, sum_alphabet, Channel, Label};
use crate::error::{Error, Result};
use crate::geometry::{
    convex_extreme_points, dot, hausdorff_tv, hull_membership, max_abs_diff, Distribution,
    Membership, ToleranceConfig,
};

/// Convex-extreme rows of a channel in lexicographic order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Characteristic {
    output_labels: Vec<Label>,
    points: Vec<Distribution>,
}

fn lex_cmp(a: &Distribution, b: &Distribution) -> Ordering {
    a.probs()
        .iter()
        .zip(b.probs())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl Characteristic {
    /// Reduces `points` to their convex-extreme subset in canonical order.
    pub fn from_points(
        output_labels: Vec<Label>,
        points: &[Distribution],
        tol: &ToleranceConfig,
    ) -> Result<Characteristic> {
        if let Some(p) = points.iter().find(|p| p.len() != output_labels.len()) {
            return Err(Error::AlphabetMismatch(format!(
                "point of length {} over an alphabet of {} symbols",
                p.len(),
                output_labels.len()
            )));
        }
        let mut ce: Vec<Distribution> = convex_extreme_points(points, tol)?
            .into_iter()
            .map(|i| points[i].clone())
            .collect();
        ce.sort_by(lex_cmp);
        Ok(Characteristic {
            output_labels,
            points: ce,
        })
    }

    pub fn points(&self) -> &[Distribution] {
        &self.points
    }

    pub fn output_labels(&self) -> &[Label] {
        &self.output_labels
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Set equality up to `dedup_tol` in max-norm.
    pub fn matches(&self, other: &Characteristic, tol: &ToleranceConfig) -> bool {
        let covered = |a: &[Distribution], b: &[Distribution]| {
            a.iter()
                .all(|p| b.iter().any(|q| max_abs_diff(p.probs(), q.probs()) <= tol.dedup_tol))
        };
        self.output_labels == other.output_labels
            && self.len() == other.len()
            && covered(&self.points, &other.points)
            && covered(&other.points, &self.points)
    }
}

impl<'de> Deserialize<'de> for Characteristic {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            output_labels: Vec<Label>,
            points: Vec<Distribution>,
        }
        let raw = Raw::deserialize(de)?;
        if raw.points.is_empty() {
            return Err(D::Error::custom("characteristic has no points"));
        }
        Characteristic::from_points(raw.output_labels, &raw.points, &ToleranceConfig::default())
            .map_err(D::Error::custom)
    }
}

/// A single-context payoff under which some row of `W` beats every row of
/// `W'` by at least `gap`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Refutation {
    pub row_index: usize,
    pub payoff: Vec<f64>,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegradednessResult {
    pub degraded: bool,
    /// `V` with `W = W' ∘ V`, when degraded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intertwiner: Option<Channel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation: Option<Refutation>,
}

/// Decides whether `w` is input-degraded from `w_prime`.
///
/// Each row of `w` is tested for membership in the hull of the rows of
/// `w_prime`; the convex weights become the rows of the intertwiner. On
/// failure the separator of the first failing row is turned into a
/// [`Refutation`] against the row of `w` that scores best under it.
pub fn is_input_degraded(
    w: &Channel,
    w_prime: &Channel,
    tol: &ToleranceConfig,
) -> Result<DegradednessResult> {
    w.same_output_alphabet(w_prime)?;
    let mut weights = Vec::with_capacity(w.input_size());
    for row in w.rows() {
        match hull_membership(row, w_prime.rows(), tol)? {
            Membership::Inside { weights: wts } => weights.push(wts),
            Membership::Outside(sep) => {
                let refutation = refutation_from(w, w_prime, sep.functional);
                return Ok(DegradednessResult {
                    degraded: false,
                    intertwiner: None,
                    refutation: Some(refutation),
                });
            }
        }
    }
    let intertwiner = Channel::with_labels(w_prime.input_labels().to_vec(), weights)?
        .with_input_labels(w.input_labels().to_vec())?;
    Ok(DegradednessResult {
        degraded: true,
        intertwiner: Some(intertwiner),
        refutation: None,
    })
}

fn refutation_from(w: &Channel, w_prime: &Channel, payoff: Vec<f64>) -> Refutation {
    let (row_index, best_w) = w
        .rows()
        .iter()
        .map(|r| dot(&payoff, r.probs()))
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let best_prime = w_prime
        .rows()
        .iter()
        .map(|r| dot(&payoff, r.probs()))
        .fold(f64::NEG_INFINITY, f64::max);
    Refutation {
        row_index,
        payoff,
        gap: best_w - best_prime,
    }
}

/// Single-context payoff witnessing that `w` is not input-degraded from
/// `w_prime`.
pub fn find_separating_payoff(
    w: &Channel,
    w_prime: &Channel,
    tol: &ToleranceConfig,
) -> Result<Refutation> {
    let result = is_input_degraded(w, w_prime, tol)?;
    result.refutation.ok_or_else(|| {
        Error::Precondition("channel is input-degraded; no separating payoff exists".into())
    })
}

pub fn characteristic(w: &Channel, tol: &ToleranceConfig) -> Result<Characteristic> {
    Characteristic::from_points(w.output_labels().to_vec(), w.rows(), tol)
}

pub fn input_rank(w: &Channel, tol: &ToleranceConfig) -> Result<usize> {
    Ok(characteristic(w, tol)?.len())
}

pub fn is_input_equivalent(w: &Channel, w_prime: &Channel, tol: &ToleranceConfig) -> Result<bool> {
    w.same_output_alphabet(w_prime)?;
    Ok(characteristic(w, tol)?.matches(&characteristic(w_prime, tol)?, tol))
}

/// The channel whose rows are exactly the characteristic, in canonical order.
pub fn canonical_representative(w: &Channel, tol: &ToleranceConfig) -> Result<Channel> {
    let ch = characteristic(w, tol)?;
    Channel::from_distributions(ch.output_labels, ch.points)
}

/// Hausdorff distance in total variation between the row hulls of two
/// channels over the same output alphabet. Input alphabets may differ.
pub fn similarity_distance(w: &Channel, w_prime: &Channel, tol: &ToleranceConfig) -> Result<f64> {
    w.same_output_alphabet(w_prime)?;
    let a = characteristic(w, tol)?;
    let b = characteristic(w_prime, tol)?;
    hausdorff_tv(a.points(), b.points(), tol)
}

/// `q = (1 - λ) φ1(p1) + λ φ2(p2)` with `p1`, `p2` in the respective hulls.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumDecomposition {
    pub lambda: f64,
    /// Convex weights over the left characteristic, absent when `λ = 1`.
    pub left_weights: Option<Vec<f64>>,
    /// Convex weights over the right characteristic, absent when `λ = 0`.
    pub right_weights: Option<Vec<f64>>,
}

impl SumDecomposition {
    /// The point described by this decomposition, over the sum alphabet.
    pub fn reconstruct(&self, left: &Characteristic, right: &Characteristic) -> Vec<f64> {
        let mix = |weights: &Option<Vec<f64>>, pts: &[Distribution], scale: f64| -> Vec<f64> {
            let d = pts[0].len();
            let mut out = vec![0.0; d];
            if let Some(w) = weights {
                for (wi, p) in w.iter().zip(pts) {
                    for (o, v) in out.iter_mut().zip(p.probs()) {
                        *o += scale * wi * v;
                    }
                }
            }
            out
        };
        let mut q = mix(&self.left_weights, left.points(), 1.0 - self.lambda);
        q.extend(mix(&self.right_weights, right.points(), self.lambda));
        q
    }
}

/// Decomposes a point of the sum alphabet along the two blocks.
///
/// The block masses fix `λ`, so membership in the hull of `W1 ⊕ W2`
/// reduces to two independent membership queries. Returns `None` when the
/// point is outside.
pub fn decompose_sum_point(
    q: &Distribution,
    q_labels: &[Label],
    left: &Characteristic,
    right: &Characteristic,
    tol: &ToleranceConfig,
) -> Result<Option<SumDecomposition>> {
    if q_labels != sum_alphabet(left.output_labels(), right.output_labels()).as_slice()
        || q.len() != q_labels.len()
    {
        return Err(Error::Malformed(
            "query alphabet is not the tagged union of the two characteristic alphabets".into(),
        ));
    }
    let m1 = left.output_labels().len();
    let mut lambda: f64 = q.probs()[m1..].iter().sum();
    if lambda <= tol.feasibility_tol {
        lambda = 0.0;
    } else if 1.0 - lambda <= tol.feasibility_tol {
        lambda = 1.0;
    }
    let block = |part: &[f64], mass: f64, ch: &Characteristic| -> Result<Option<Vec<f64>>> {
        let p = Distribution::new(part.iter().map(|v| v / mass).collect())?;
        Ok(hull_membership(&p, ch.points(), tol)?.weights().map(<[f64]>::to_vec))
    };
    let left_weights = if lambda < 1.0 {
        match block(&q.probs()[..m1], 1.0 - lambda, left)? {
            Some(w) => Some(w),
            None => return Ok(None),
        }
    } else {
        None
    };
    let right_weights = if lambda > 0.0 {
        match block(&q.probs()[m1..], lambda, right)? {
            Some(w) => Some(w),
            None => return Ok(None),
        }
    } else {
        None
    };
    Ok(Some(SumDecomposition {
        lambda,
        left_weights,
        right_weights,
    }))
}

/// Pairwise products of characteristic points, first factor outermost.
pub fn product_generators(first: &Characteristic, second: &Characteristic) -> Vec<Distribution> {
    first
        .points()
        .iter()
        .flat_map(|a| second.points().iter().map(move |b| a.product(b)))
        .collect()
}

/// Membership in the hull of `{p1 × p2 : p1 ∈ C1, p2 ∈ C2}`, which is the
/// row hull of `W1 ⊗ W2` when `C1`, `C2` are the characteristics of `W1`,
/// `W2`. Weights index [`product_generators`].
pub fn product_hull_membership(
    q: &Distribution,
    q_labels: &[Label],
    first: &Characteristic,
    second: &Characteristic,
    tol: &ToleranceConfig,
) -> Result<Membership> {
    if q_labels != product_alphabet(first.output_labels(), second.output_labels()).as_slice()
        || q.len() != q_labels.len()
    {
        return Err(Error::Malformed(
            "query alphabet is not the product of the two characteristic alphabets".into(),
        ));
    }
    hull_membership(q, &product_generators(first, second), tol)
}
