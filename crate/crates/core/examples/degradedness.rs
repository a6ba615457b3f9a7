//! Deciding whether one channel can be simulated from another by
//! randomizing its input.

use chanorder::channel::{channel_distance, compose, Channel};
use chanorder::geometry::ToleranceConfig;
use chanorder::ordering::{find_separating_payoff, is_input_degraded};

fn main() -> chanorder::Result<()> {
    let tol = ToleranceConfig::default();
    let noisy = Channel::bsc(0.1)?;
    let clean = Channel::identity(2);

    let res = is_input_degraded(&noisy, &clean, &tol)?;
    let v = res.intertwiner.expect("BSC is a randomized identity");
    println!("BSC(0.1) from identity: degraded, intertwiner {:?}", v.matrix());
    println!("  rebuild error {:.1e}", channel_distance(&compose(&clean, &v)?, &noisy)?);

    let res = is_input_degraded(&clean, &noisy, &tol)?;
    println!("identity from BSC(0.1): degraded = {}", res.degraded);
    let r = find_separating_payoff(&clean, &noisy, &tol)?;
    println!(
        "  input {} wins under payoff {:?} by {:.3}",
        r.row_index, r.payoff, r.gap
    );

    // A three-input channel whose middle row is a mixture of the other two
    // is degraded from the two-input channel made of its outer rows.
    let w = Channel::validate(vec![vec![0.7, 0.2, 0.1], vec![0.45, 0.3, 0.25], vec![0.2, 0.4, 0.4]])?;
    let outer = Channel::validate(vec![vec![0.7, 0.2, 0.1], vec![0.2, 0.4, 0.4]])?;
    let res = is_input_degraded(&w, &outer, &tol)?;
    println!("mixture channel: degraded = {}, V = {:?}", res.degraded, res.intertwiner.map(|v| v.matrix()));
    Ok(())
}
