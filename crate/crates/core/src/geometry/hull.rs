use super::lp::{solve_lp, LinearProgram, LpOutcome};
use super::{dot, l1, max_abs_diff, Distribution, Membership, Separator, ToleranceConfig};
use crate::error::{Error, Result};

fn check_generators<P: AsRef<[f64]>>(q: &[f64], gens: &[P]) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::Empty("hull generator list"));
    }
    if let Some((i, g)) = gens.iter().enumerate().find(|(_, g)| g.as_ref().len() != q.len()) {
        return Err(Error::AlphabetMismatch(format!(
            "generator {i} has length {}, query has length {}",
            g.as_ref().len(),
            q.len()
        )));
    }
    Ok(())
}

/// Phase-one feasibility of `q = sum_i w_i g_i`, `w` in the simplex.
fn convex_weights<P: AsRef<[f64]>>(
    q: &[f64],
    gens: &[P],
    tol: &ToleranceConfig,
) -> Result<Option<Vec<f64>>> {
    let n = gens.len();
    let mut constraints: Vec<Vec<f64>> = (0..q.len())
        .map(|y| gens.iter().map(|g| g.as_ref()[y]).collect())
        .collect();
    constraints.push(vec![1.0; n]);
    let mut rhs = q.to_vec();
    rhs.push(1.0);
    let lp = LinearProgram::new(vec![0.0; n], constraints, rhs);
    match solve_lp(&lp, tol)? {
        LpOutcome::Optimal { solution, .. } => Ok(Some(solution)),
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded => Err(Error::Numerical("feasibility LP reported unbounded".into())),
    }
}

/// The functional `h` with entries in `[lower, 1]` maximizing
/// `<h, q> - max_i <h, g_i>`.
///
/// Writing `h = lower + (1 - lower) u` with `u` in the unit box keeps every
/// variable nonnegative except the free level `t`.
fn max_gap_separator<P: AsRef<[f64]>>(
    q: &[f64],
    gens: &[P],
    lower: f64,
    tol: &ToleranceConfig,
) -> Result<Separator> {
    let d = q.len();
    let n = gens.len();
    let span = 1.0 - lower;
    // Variables: u (d), t (1, free), s (n), r (d).
    let nvars = d + 1 + n + d;
    let t = d;
    let mut objective = vec![0.0; nvars];
    for y in 0..d {
        objective[y] = -span * q[y];
    }
    objective[t] = 1.0;
    let mut constraints = Vec::with_capacity(n + d);
    let mut rhs = Vec::with_capacity(n + d);
    for (i, g) in gens.iter().enumerate() {
        let g = g.as_ref();
        let mut row = vec![0.0; nvars];
        for y in 0..d {
            row[y] = span * g[y];
        }
        row[t] = -1.0;
        row[d + 1 + i] = 1.0;
        constraints.push(row);
        rhs.push(-lower * g.iter().sum::<f64>());
    }
    for y in 0..d {
        let mut row = vec![0.0; nvars];
        row[y] = 1.0;
        row[d + 1 + n + y] = 1.0;
        constraints.push(row);
        rhs.push(1.0);
    }
    let lp = LinearProgram::new(objective, constraints, rhs).with_free(t);
    let LpOutcome::Optimal { solution, .. } = solve_lp(&lp, tol)? else {
        return Err(Error::Numerical("separator LP has no optimum".into()));
    };
    let mut functional: Vec<f64> = solution[..d].iter().map(|u| lower + span * u.clamp(0.0, 1.0)).collect();
    let scale = functional.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale > 0.0 {
        functional.iter_mut().for_each(|v| *v /= scale);
    }
    let best = gens
        .iter()
        .map(|g| dot(&functional, g.as_ref()))
        .fold(f64::NEG_INFINITY, f64::max);
    let gap = dot(&functional, q) - best;
    if gap <= 0.0 {
        return Err(Error::Numerical(format!(
            "infeasible membership query but best separator gap is {gap:e}"
        )));
    }
    Ok(Separator { functional, gap })
}

fn membership<P: AsRef<[f64]>>(
    q: &[f64],
    gens: &[P],
    lower: f64,
    tol: &ToleranceConfig,
) -> Result<Membership> {
    check_generators(q, gens)?;
    match convex_weights(q, gens, tol)? {
        Some(weights) => Ok(Membership::Inside { weights }),
        None => Ok(Membership::Outside(max_gap_separator(q, gens, lower, tol)?)),
    }
}

/// Decides whether `q` lies in the convex hull of `gens`.
///
/// An inside answer carries convex weights over `gens`. An outside answer
/// carries a functional `h` with entries in `[0, 1]` and max-abs one; its gap
/// is the largest achievable under that normalization, which equals the
/// total variation distance from `q` to the hull.
pub fn hull_membership(
    q: &Distribution,
    gens: &[Distribution],
    tol: &ToleranceConfig,
) -> Result<Membership> {
    membership(q.probs(), gens, 0.0, tol)
}

/// Hull membership for arbitrary real vectors. Separators have entries in
/// `[-1, 1]`.
pub fn hull_membership_vectors<P: AsRef<[f64]>>(
    q: &[f64],
    gens: &[P],
    tol: &ToleranceConfig,
) -> Result<Membership> {
    membership(q, gens, -1.0, tol)
}

/// L1 distance from `q` to the hull of `gens`, with the convex weights of a
/// nearest point.
pub fn l1_distance_to_hull_vectors<P: AsRef<[f64]>>(
    q: &[f64],
    gens: &[P],
    tol: &ToleranceConfig,
) -> Result<(f64, Vec<f64>)> {
    check_generators(q, gens)?;
    let d = q.len();
    let n = gens.len();
    // Variables: weights (n), positive part (d), negative part (d).
    let nvars = n + 2 * d;
    let mut objective = vec![0.0; nvars];
    objective[n..].iter_mut().for_each(|c| *c = 1.0);
    let mut constraints = Vec::with_capacity(d + 1);
    for y in 0..d {
        let mut row = vec![0.0; nvars];
        for (i, g) in gens.iter().enumerate() {
            row[i] = g.as_ref()[y];
        }
        row[n + y] = -1.0;
        row[n + d + y] = 1.0;
        constraints.push(row);
    }
    let mut sum_row = vec![0.0; nvars];
    sum_row[..n].iter_mut().for_each(|c| *c = 1.0);
    constraints.push(sum_row);
    let mut rhs = q.to_vec();
    rhs.push(1.0);
    let lp = LinearProgram::new(objective, constraints, rhs);
    let LpOutcome::Optimal { solution, .. } = solve_lp(&lp, tol)? else {
        return Err(Error::Numerical("distance LP has no optimum".into()));
    };
    let weights = solution[..n].to_vec();
    let nearest: Vec<f64> = (0..d)
        .map(|y| weights.iter().zip(gens).map(|(w, g)| w * g.as_ref()[y]).sum())
        .collect();
    Ok((l1(&nearest, q), weights))
}

pub fn l1_distance_to_hull(
    q: &Distribution,
    gens: &[Distribution],
    tol: &ToleranceConfig,
) -> Result<(f64, Vec<f64>)> {
    l1_distance_to_hull_vectors(q.probs(), gens, tol)
}

/// Indices of the convex-extreme points of `points`.
///
/// Points within `dedup_tol` (max-norm) of an earlier point are dropped
/// first, so each surviving index is the lowest of its duplicate group.
/// The result is sorted.
pub fn convex_extreme_points<P: AsRef<[f64]>>(
    points: &[P],
    tol: &ToleranceConfig,
) -> Result<Vec<usize>> {
    let first = points.first().ok_or(Error::Empty("point list"))?.as_ref();
    if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.as_ref().len() != first.len()) {
        return Err(Error::AlphabetMismatch(format!(
            "point {i} has length {}, expected {}",
            p.as_ref().len(),
            first.len()
        )));
    }
    let mut reps: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let dup = reps
            .iter()
            .any(|&r| max_abs_diff(points[r].as_ref(), p.as_ref()) <= tol.dedup_tol);
        if !dup {
            reps.push(i);
        }
    }
    if reps.len() == 1 {
        return Ok(reps);
    }
    let mut extreme = Vec::with_capacity(reps.len());
    for &k in &reps {
        let others: Vec<&[f64]> = reps
            .iter()
            .filter(|&&r| r != k)
            .map(|&r| points[r].as_ref())
            .collect();
        if convex_weights(points[k].as_ref(), &others, tol)?.is_none() {
            extreme.push(k);
        }
    }
    Ok(extreme)
}

/// Hausdorff distance, in total variation, between the convex hulls of `a`
/// and `b`.
///
/// The distance to a polytope is convex, so each directed supremum is
/// attained at an extreme point of the source hull.
pub fn hausdorff_tv(a: &[Distribution], b: &[Distribution], tol: &ToleranceConfig) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("Hausdorff operand"));
    }
    if a[0].len() != b[0].len() {
        return Err(Error::AlphabetMismatch(format!(
            "operands live on alphabets of size {} and {}",
            a[0].len(),
            b[0].len()
        )));
    }
    let ce_a: Vec<&Distribution> = convex_extreme_points(a, tol)?.into_iter().map(|i| &a[i]).collect();
    let ce_b: Vec<&Distribution> = convex_extreme_points(b, tol)?.into_iter().map(|i| &b[i]).collect();
    let directed = |from: &[&Distribution], to: &[&Distribution]| -> Result<f64> {
        let mut worst = 0.0f64;
        for p in from {
            let (d, _) = l1_distance_to_hull_vectors(p.probs(), to, tol)?;
            worst = worst.max(0.5 * d);
        }
        Ok(worst)
    };
    let d = directed(&ce_a, &ce_b)?.max(directed(&ce_b, &ce_a)?);
    Ok(d.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(v: &[f64]) -> Distribution {
        Distribution::new(v.to_vec()).unwrap()
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn generator_is_inside_with_unit_weight() {
        let gens = vec![dist(&[0.2, 0.8]), dist(&[0.7, 0.3])];
        let m = hull_membership(&gens[0], &gens, &tol()).unwrap();
        let w = m.weights().unwrap();
        assert!((w[0] - 1.0).abs() < 1e-12 && w[1].abs() < 1e-12);
    }

    #[test]
    fn midpoint_weights() {
        let gens = vec![dist(&[1.0, 0.0]), dist(&[0.0, 1.0])];
        let m = hull_membership(&dist(&[0.5, 0.5]), &gens, &tol()).unwrap();
        let w = m.weights().unwrap();
        assert!((w[0] - 0.5).abs() < 1e-12 && (w[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn disjoint_support_is_separated() {
        let gens = vec![dist(&[0.0, 1.0, 0.0]), dist(&[0.0, 0.0, 1.0])];
        let m = hull_membership(&dist(&[1.0, 0.0, 0.0]), &gens, &tol()).unwrap();
        let sep = m.separator().unwrap();
        assert_eq!(sep.functional, vec![1.0, 0.0, 0.0]);
        assert!((sep.gap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn segment_separator_matches_tv_distance() {
        let gens = vec![dist(&[0.9, 0.1]), dist(&[0.1, 0.9])];
        let m = hull_membership(&dist(&[1.0, 0.0]), &gens, &tol()).unwrap();
        let sep = m.separator().unwrap();
        assert!((sep.functional[0] - 1.0).abs() < 1e-12);
        assert!(sep.functional[1].abs() < 1e-12);
        assert!((sep.gap - 0.1).abs() < 1e-12);
    }

    #[test]
    fn membership_errors() {
        let q = dist(&[1.0, 0.0]);
        assert!(matches!(hull_membership(&q, &[], &tol()), Err(Error::Empty(_))));
        let gens = vec![dist(&[1.0, 0.0, 0.0])];
        assert!(matches!(
            hull_membership(&q, &gens, &tol()),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    #[test]
    fn l1_distance_basic_cases() {
        let gens = vec![dist(&[0.3, 0.7])];
        let (d, w) = l1_distance_to_hull(&gens[0], &gens, &tol()).unwrap();
        assert!(d.abs() < 1e-12);
        assert!((w[0] - 1.0).abs() < 1e-12);
        let (d, _) = l1_distance_to_hull(&dist(&[1.0, 0.0]), &[dist(&[0.0, 1.0])], &tol()).unwrap();
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn l1_distance_matches_segment_grid() {
        let q = dist(&[0.6, 0.3, 0.1]);
        let gens = vec![dist(&[1.0, 0.0, 0.0]), dist(&[0.0, 1.0, 0.0])];
        let (d, _) = l1_distance_to_hull(&q, &gens, &tol()).unwrap();
        let grid = (0..=10_000)
            .map(|k| {
                let a = k as f64 * 1e-4;
                l1(&[a, 1.0 - a, 0.0], q.probs())
            })
            .fold(f64::INFINITY, f64::min);
        assert!((d - grid).abs() < 1e-3, "lp {d} grid {grid}");
        assert!((d - 0.2).abs() < 1e-9);
    }

    #[test]
    fn extreme_points_examples() {
        let pts = vec![dist(&[1.0, 0.0]), dist(&[0.0, 1.0]), dist(&[0.5, 0.5])];
        assert_eq!(convex_extreme_points(&pts, &tol()).unwrap(), vec![0, 1]);
        let pts = vec![dist(&[1.0, 0.0, 0.0]), dist(&[0.0, 1.0, 0.0]), dist(&[0.0, 0.0, 1.0])];
        assert_eq!(convex_extreme_points(&pts, &tol()).unwrap(), vec![0, 1, 2]);
        let pts = vec![dist(&[1.0, 0.0]), dist(&[1.0, 0.0])];
        assert_eq!(convex_extreme_points(&pts, &tol()).unwrap(), vec![0]);
        let empty: Vec<Distribution> = vec![];
        assert!(convex_extreme_points(&empty, &tol()).is_err());
    }

    #[test]
    fn duplicates_do_not_mask_extremality() {
        let pts = vec![
            dist(&[0.5, 0.5]),
            dist(&[1.0, 0.0]),
            dist(&[0.5, 0.5]),
            dist(&[0.0, 1.0]),
            dist(&[1.0, 0.0]),
        ];
        assert_eq!(convex_extreme_points(&pts, &tol()).unwrap(), vec![1, 3]);
    }

    #[test]
    fn hausdorff_examples() {
        let a = vec![dist(&[0.3, 0.7]), dist(&[0.6, 0.4])];
        assert!(hausdorff_tv(&a, &a, &tol()).unwrap().abs() < 1e-12);
        let d = hausdorff_tv(&[dist(&[1.0, 0.0])], &[dist(&[0.0, 1.0])], &tol()).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        let bsc1 = vec![dist(&[0.9, 0.1]), dist(&[0.1, 0.9])];
        let bsc2 = vec![dist(&[0.8, 0.2]), dist(&[0.2, 0.8])];
        let d = hausdorff_tv(&bsc1, &bsc2, &tol()).unwrap();
        assert!((d - 0.1).abs() < 1e-12);
    }
}
