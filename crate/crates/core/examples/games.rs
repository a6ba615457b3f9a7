//! Randomized games: optimal play, achievable regions, and the
//! game-theoretic test of degradedness.

use chanorder::channel::Channel;
use chanorder::games::{
    achievable_region_vertices, check_bss, optimal_average_payoff, region_contains, RandomizedGame,
    DEFAULT_REGION_CAP,
};
use chanorder::geometry::ToleranceConfig;

fn main() -> chanorder::Result<()> {
    let tol = ToleranceConfig::default();
    let game = RandomizedGame::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]], Channel::bsc(0.1)?)?;
    let best = optimal_average_payoff(&game);
    println!("guessing game over BSC(0.1): value {:.3}, strategy {:?}", best.value, best.strategy);

    let vertices = achievable_region_vertices(&game, DEFAULT_REGION_CAP)?;
    println!("region vertices {vertices:.3?}");
    for v in [[0.5, 0.5], [0.95, 0.95]] {
        println!("{v:?} achievable: {}", region_contains(&game, &v, &tol, DEFAULT_REGION_CAP)?.is_inside());
    }

    let report = check_bss(&Channel::bsc(0.1)?, &Channel::identity(2), 20, 7, &tol, DEFAULT_REGION_CAP)?;
    println!(
        "BSC(0.1) vs identity: {} random games, all consistent: {}",
        report.trials.len(),
        report.passed
    );

    let report = check_bss(&Channel::identity(2), &Channel::bsc(0.1)?, 20, 7, &tol, DEFAULT_REGION_CAP)?;
    let w = report.witness.expect("identity is not degraded from BSC(0.1)");
    println!(
        "identity vs BSC(0.1): witness payoff {:?} scores {:.3} against {:.3}",
        w.game.payoff(),
        w.optimal_lhs,
        w.optimal_rhs
    );
    Ok(())
}
