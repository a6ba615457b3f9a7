//! Convex hull membership in the probability simplex: weights when a point
//! is inside, a separating functional when it is not, plus the raw LP.

use chanorder::geometry::{
    convex_extreme_points, hausdorff_tv, hull_membership, solve_lp, Distribution, LinearProgram,
    LpOutcome, Membership, ToleranceConfig,
};

fn main() -> chanorder::Result<()> {
    let tol = ToleranceConfig::default();
    let gens = vec![
        Distribution::new(vec![0.9, 0.1, 0.0])?,
        Distribution::new(vec![0.1, 0.9, 0.0])?,
        Distribution::new(vec![0.2, 0.2, 0.6])?,
        Distribution::new(vec![0.4, 0.4, 0.2])?,
    ];

    for q in [vec![0.3, 0.4, 0.3], vec![1.0, 0.0, 0.0]] {
        let q = Distribution::new(q)?;
        match hull_membership(&q, &gens, &tol)? {
            Membership::Inside { weights } => println!("{:?} inside, weights {weights:.3?}", q.probs()),
            Membership::Outside(sep) => println!(
                "{:?} outside, functional {:.3?} separates by {:.4}",
                q.probs(),
                sep.functional,
                sep.gap
            ),
        }
    }

    // The fourth generator is a mixture of the others.
    println!("extreme points: {:?}", convex_extreme_points(&gens, &tol)?);

    let shrunk: Vec<Distribution> = gens[..3]
        .iter()
        .map(|g| {
            let p: Vec<f64> = g.probs().iter().map(|v| 0.8 * v + 0.2 / 3.0).collect();
            Distribution::new(p)
        })
        .collect::<chanorder::Result<_>>()?;
    println!("Hausdorff TV to a shrunk copy: {:.4}", hausdorff_tv(&gens, &shrunk, &tol)?);

    // min -x0 - x1 subject to x0 + 2 x1 + s = 4.
    let lp = LinearProgram::new(vec![-1.0, -1.0, 0.0], vec![vec![1.0, 2.0, 1.0]], vec![4.0]);
    match solve_lp(&lp, &tol)? {
        LpOutcome::Optimal { value, solution } => println!("LP optimum {value} at {solution:?}"),
        other => println!("LP: {other:?}"),
    }
    let infeasible = LinearProgram::new(vec![0.0, 0.0], vec![vec![1.0, 1.0]], vec![-1.0]);
    println!("x0 + x1 = -1 with x >= 0: {:?}", solve_lp(&infeasible, &tol)?);
    Ok(())
}
