//! Seeded generators for channels, codes and games.
//!
//! All randomness flows from a single `u64` seed through ChaCha8, so a seed
//! fully determines every draw. Independent streams are derived with
//! [`stream_seed`] so that adding draws to one stream never shifts another.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::channel::Channel;
use crate::coding::Decoder;
use crate::error::{Error, Result};
use crate::games::RandomizedGame;
use crate::geometry::{hull_membership, Distribution, ToleranceConfig};

pub type SeededRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `stream`-th independent substream of `seed`.
pub fn stream_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ stream.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn stream(seed: u64, stream: u64) -> SeededRng {
    rng(stream_seed(seed, stream))
}

/// A point drawn uniformly from the simplex (normalized exponentials).
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Distribution {
    assert!(len > 0, "distribution over an empty alphabet");
    let draws: Vec<f64> = (0..len).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    if !(total > 0.0) {
        return Distribution::uniform(len);
    }
    Distribution::new(draws.into_iter().map(|v| v / total).collect())
        .expect("normalized exponentials form a distribution")
}

pub fn random_channel<R: Rng + ?Sized>(rng: &mut R, inputs: usize, outputs: usize) -> Result<Channel> {
    if inputs == 0 || outputs == 0 {
        return Err(Error::Precondition(format!(
            "channel sizes must be positive, got {inputs}x{outputs}"
        )));
    }
    let rows = (0..inputs).map(|_| random_distribution(rng, outputs)).collect();
    Channel::from_distributions(crate::channel::index_labels(outputs), rows)
}

/// Channel with i.i.d. uniform rows, determined by `seed`.
pub fn gen_random_channel(inputs: usize, outputs: usize, seed: u64) -> Result<Channel> {
    random_channel(&mut rng(seed), inputs, outputs)
}

/// Decoder with i.i.d. uniform message choices.
pub fn random_decoder<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    message_count: usize,
    output_size: usize,
) -> Result<Decoder> {
    if n == 0 || message_count == 0 || output_size == 0 {
        return Err(Error::Precondition("decoder sizes must be positive".into()));
    }
    let entries = crate::coding::pow_sat(output_size, n);
    crate::coding::check_cap(entries, crate::coding::DEFAULT_CODING_CAP)?;
    let table = (0..entries as usize)
        .map(|_| rng.random_range(0..message_count))
        .collect();
    Decoder::new(n, message_count, output_size, table)
}

/// A payoff matrix with i.i.d. entries uniform in `[-1, 1]`.
pub fn random_payoff<R: Rng + ?Sized>(rng: &mut R, z_size: usize, y_size: usize) -> Vec<Vec<f64>> {
    (0..z_size)
        .map(|_| (0..y_size).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .collect()
}

pub fn random_game<R: Rng + ?Sized>(rng: &mut R, z_size: usize, channel: Channel) -> Result<RandomizedGame> {
    let payoff = random_payoff(rng, z_size, channel.output_size());
    RandomizedGame::new(payoff, channel)
}

/// A uniformly shuffled surjection from `0..from` onto `0..to`.
pub fn random_surjection<R: Rng + ?Sized>(rng: &mut R, from: usize, to: usize) -> Result<Vec<usize>> {
    if to == 0 || from < to {
        return Err(Error::Precondition(format!("no surjection from {from} onto {to} symbols")));
    }
    let mut map: Vec<usize> = (0..to).chain((to..from).map(|_| rng.random_range(0..to))).collect();
    map.shuffle(rng);
    Ok(map)
}

/// A channel with `inputs` rows over the outputs of `reference`, at least
/// one of which lies outside the row hull of `reference` by a TV margin of
/// at least `margin`.
///
/// Candidates are drawn from the simplex; if none is far enough after a few
/// tries the farthest unit vector is used. Fails when the reference hull is
/// the whole simplex.
pub fn plant_outside_row<R: Rng + ?Sized>(
    rng: &mut R,
    reference: &Channel,
    inputs: usize,
    margin: f64,
    tol: &ToleranceConfig,
) -> Result<Channel> {
    let outputs = reference.output_size();
    let far_enough = |q: &Distribution| -> Result<bool> {
        Ok(hull_membership(q, reference.rows(), tol)?
            .separator()
            .is_some_and(|s| s.gap >= margin))
    };
    let mut planted = None;
    for _ in 0..32 {
        let q = random_distribution(rng, outputs);
        if far_enough(&q)? {
            planted = Some(q);
            break;
        }
    }
    if planted.is_none() {
        for y in 0..outputs {
            let q = Distribution::unit(outputs, y);
            if far_enough(&q)? {
                planted = Some(q);
                break;
            }
        }
    }
    let planted = planted.ok_or_else(|| {
        Error::Precondition("reference hull covers the simplex; nothing lies outside".into())
    })?;
    let slot = rng.random_range(0..inputs.max(1));
    let rows = (0..inputs.max(1))
        .map(|x| if x == slot { planted.clone() } else { random_distribution(rng, outputs) })
        .collect();
    Channel::with_labels(reference.output_labels().to_vec(), rows_to_raw(rows))
}

fn rows_to_raw(rows: Vec<Distribution>) -> Vec<Vec<f64>> {
    rows.into_iter().map(Distribution::into_inner).collect()
}

/// `worse = better ∘ intertwiner`.
#[derive(Clone, Debug)]
pub struct DegradedPair {
    pub worse: Channel,
    pub better: Channel,
    pub intertwiner: Channel,
}

/// A random degraded pair with `|X| <= max_inputs`, `|X'| <= max_better_inputs`
/// and `|Y| <= max_outputs`.
pub fn degraded_pair<R: Rng + ?Sized>(
    rng: &mut R,
    max_inputs: usize,
    max_better_inputs: usize,
    max_outputs: usize,
) -> Result<DegradedPair> {
    let x = rng.random_range(1..=max_inputs);
    let xp = rng.random_range(1..=max_better_inputs);
    let y = rng.random_range(1..=max_outputs);
    let better = random_channel(rng, xp, y)?;
    let intertwiner = random_channel(rng, x, xp)?;
    let worse = crate::channel::compose(&better, &intertwiner)?;
    Ok(DegradedPair {
        worse,
        better,
        intertwiner,
    })
}

/// A random pair `(w, w_prime)` where `w` is certainly not degraded from
/// `w_prime`. Output alphabets have between 2 and `max_outputs` symbols.
pub fn non_degraded_pair<R: Rng + ?Sized>(
    rng: &mut R,
    max_inputs: usize,
    max_other_inputs: usize,
    max_outputs: usize,
    tol: &ToleranceConfig,
) -> Result<(Channel, Channel)> {
    let y = rng.random_range(2..=max_outputs.max(2));
    let xp = rng.random_range(1..=max_other_inputs);
    let x = rng.random_range(1..=max_inputs);
    let mut last_err = None;
    // A reference hull can come within the margin of every vertex; redraw it.
    for _ in 0..16 {
        let w_prime = random_channel(rng, xp, y)?;
        match plant_outside_row(rng, &w_prime, x, 1e-3, tol) {
            Ok(w) => return Ok((w, w_prime)),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_channel() {
        let w = gen_random_channel(1, 1, 5).unwrap();
        assert_eq!(w.matrix(), vec![vec![1.0]]);
    }

    #[test]
    fn same_seed_same_channel() {
        assert_eq!(gen_random_channel(2, 2, 11).unwrap(), gen_random_channel(2, 2, 11).unwrap());
        assert_ne!(gen_random_channel(2, 2, 11).unwrap(), gen_random_channel(2, 2, 12).unwrap());
    }

    #[test]
    fn rows_are_stochastic() {
        for seed in 0..50 {
            let w = gen_random_channel(3, 3, seed).unwrap();
            for row in w.rows() {
                assert!((row.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
                assert!(row.probs().iter().all(|&p| p >= 0.0));
            }
        }
    }

    #[test]
    fn zero_sizes_rejected() {
        assert!(gen_random_channel(0, 2, 1).is_err());
        assert!(gen_random_channel(2, 0, 1).is_err());
    }

    #[test]
    fn surjections_cover_the_target() {
        let mut r = rng(3);
        for _ in 0..100 {
            let f = random_surjection(&mut r, 6, 4).unwrap();
            assert_eq!(f.len(), 6);
            for t in 0..4 {
                assert!(f.contains(&t));
            }
        }
        assert!(random_surjection(&mut r, 2, 3).is_err());
    }

    #[test]
    fn streams_differ() {
        assert_ne!(stream_seed(1, 0), stream_seed(1, 1));
        assert_ne!(stream_seed(1, 0), stream_seed(2, 0));
    }

    #[test]
    fn planted_row_is_outside() {
        let tol = ToleranceConfig::default();
        let mut r = rng(9);
        let reference = Channel::bsc(0.2).unwrap();
        let w = plant_outside_row(&mut r, &reference, 3, 1e-3, &tol).unwrap();
        let res = crate::ordering::is_input_degraded(&w, &reference, &tol).unwrap();
        assert!(!res.degraded);
        assert!(plant_outside_row(&mut r, &Channel::identity(2), 2, 1e-3, &tol).is_err());
    }
}
