//! Randomized games: a context `z` is revealed to the player, who picks an
//! input `x`; the randomizer `W` emits `y` and the player earns `l(z, y)`.
//!
//! Expected payoffs are affine in the strategy, so the achievable region is
//! the hull of the payoff vectors of deterministic strategies, and the
//! optimal average payoff is attained by a deterministic strategy.

use serde::{Deserialize, Serialize};

use crate::channel::Channel;
use crate::coding::{check_cap, pow_sat, tuple_digits};
use crate::error::{Error, Result};
use crate::geometry::{dot, hull_membership_vectors, max_abs_diff, Membership, ToleranceConfig};
use crate::ordering::{is_input_degraded, DegradednessResult, Refutation};
use crate::random::{random_game, stream};

/// Default bound on the number of deterministic strategies enumerated.
pub const DEFAULT_REGION_CAP: u64 = 100_000;

/// Payoff vectors closer than this in max-norm count as one vertex.
pub const VERTEX_DEDUP_TOL: f64 = 1e-9;

/// Slack allowed in the optimal-payoff comparison of [`check_bss`].
pub const PAYOFF_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct RandomizedGame {
    payoff: Vec<Vec<f64>>,
    channel: Channel,
}

impl RandomizedGame {
    /// `payoff[z][y]` is the reward for output `y` in context `z`.
    pub fn new(payoff: Vec<Vec<f64>>, channel: Channel) -> Result<Self> {
        if payoff.is_empty() {
            return Err(Error::Empty("context set"));
        }
        for (z, row) in payoff.iter().enumerate() {
            if row.len() != channel.output_size() {
                return Err(Error::DimensionMismatch(format!(
                    "payoff row {z} has {} entries, channel has {} outputs",
                    row.len(),
                    channel.output_size()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Malformed(format!("payoff row {z} is not finite")));
            }
        }
        Ok(RandomizedGame { payoff, channel })
    }

    pub fn z_size(&self) -> usize {
        self.payoff.len()
    }

    pub fn payoff(&self) -> &[Vec<f64>] {
        &self.payoff
    }

    pub fn channel(&self) -> &Channel {
        &self.channel
    }

    /// The same contexts and payoffs played through another randomizer.
    pub fn with_channel(&self, channel: Channel) -> Result<Self> {
        RandomizedGame::new(self.payoff.clone(), channel)
    }

    /// `score[z][x] = <W_x, l_z>`, the expected payoff of input `x` in
    /// context `z`.
    fn scores(&self) -> Vec<Vec<f64>> {
        self.payoff
            .iter()
            .map(|l| self.channel.rows().iter().map(|r| dot(r.probs(), l)).collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct GameJson {
    z_size: usize,
    payoff: Vec<Vec<f64>>,
    channel: Channel,
}

impl Serialize for RandomizedGame {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GameJson {
            z_size: self.z_size(),
            payoff: self.payoff.clone(),
            channel: self.channel.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RandomizedGame {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GameJson::deserialize(de)?;
        if raw.z_size != raw.payoff.len() {
            return Err(D::Error::custom(format!(
                "z_size is {} but payoff has {} rows",
                raw.z_size,
                raw.payoff.len()
            )));
        }
        RandomizedGame::new(raw.payoff, raw.channel).map_err(D::Error::custom)
    }
}

/// Expected payoff in each context under the strategy `s: Z -> X`.
pub fn payoff_vector(s: &Channel, game: &RandomizedGame) -> Result<Vec<f64>> {
    if s.input_size() != game.z_size() || s.output_size() != game.channel.input_size() {
        return Err(Error::DimensionMismatch(format!(
            "strategy is {}x{}, game needs {}x{}",
            s.input_size(),
            s.output_size(),
            game.z_size(),
            game.channel.input_size()
        )));
    }
    let scores = game.scores();
    Ok((0..game.z_size())
        .map(|z| dot(s.row(z).probs(), &scores[z]))
        .collect())
}

/// Payoff vector of the deterministic strategy `z -> strategy[z]`.
pub fn deterministic_payoff(game: &RandomizedGame, strategy: &[usize]) -> Result<Vec<f64>> {
    if strategy.len() != game.z_size() {
        return Err(Error::DimensionMismatch(format!(
            "strategy covers {} contexts, game has {}",
            strategy.len(),
            game.z_size()
        )));
    }
    if let Some(&x) = strategy.iter().find(|&&x| x >= game.channel.input_size()) {
        return Err(Error::AlphabetMismatch(format!("strategy plays unknown input {x}")));
    }
    let scores = game.scores();
    Ok(strategy.iter().enumerate().map(|(z, &x)| scores[z][x]).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimalPlay {
    pub value: f64,
    /// Best input per context, lowest index on ties.
    pub strategy: Vec<usize>,
}

/// Best payoff averaged uniformly over contexts.
pub fn optimal_average_payoff(game: &RandomizedGame) -> OptimalPlay {
    let mut total = 0.0;
    let mut strategy = Vec::with_capacity(game.z_size());
    for row in game.scores() {
        let (x, best) = row
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (x, &v)| if v > acc.1 { (x, v) } else { acc });
        strategy.push(x);
        total += best;
    }
    OptimalPlay {
        value: total / game.z_size() as f64,
        strategy,
    }
}

/// Deduplicated payoff vectors of all deterministic strategies; their hull
/// is the achievable payoff region.
pub fn achievable_region_vertices(game: &RandomizedGame, cap: u64) -> Result<Vec<Vec<f64>>> {
    let nx = game.channel.input_size();
    let nz = game.z_size();
    let count = pow_sat(nx, nz);
    check_cap(count, cap)?;
    let scores = game.scores();
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for k in 0..count as usize {
        let v: Vec<f64> = tuple_digits(k, nx, nz)
            .into_iter()
            .enumerate()
            .map(|(z, x)| scores[z][x])
            .collect();
        if !vertices.iter().any(|u| max_abs_diff(u, &v) <= VERTEX_DEDUP_TOL) {
            vertices.push(v);
        }
    }
    Ok(vertices)
}

/// Whether `v` is an achievable payoff vector, with convex weights over
/// [`achievable_region_vertices`] or a separating functional.
pub fn region_contains(
    game: &RandomizedGame,
    v: &[f64],
    tol: &ToleranceConfig,
    cap: u64,
) -> Result<Membership> {
    if v.len() != game.z_size() {
        return Err(Error::DimensionMismatch(format!(
            "payoff vector has {} entries, game has {} contexts",
            v.len(),
            game.z_size()
        )));
    }
    hull_membership_vectors(v, &achievable_region_vertices(game, cap)?, tol)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameTrial {
    pub index: usize,
    pub payoff: Vec<Vec<f64>>,
    pub vertices_checked: usize,
    /// Every vertex of the region under `W` lies in the region under `W'`.
    pub region_included: bool,
    pub optimal_lhs: f64,
    pub optimal_rhs: f64,
    /// `optimal_lhs <= optimal_rhs + slack`.
    pub payoff_dominated: bool,
}

impl GameTrial {
    pub fn passed(&self) -> bool {
        self.region_included && self.payoff_dominated
    }
}

/// Single-context game on which `W` strictly outperforms `W'`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessGame {
    pub game: RandomizedGame,
    pub optimal_lhs: f64,
    pub optimal_rhs: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BssReport {
    pub seed: u64,
    pub certificate: DegradednessResult,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trials: Vec<GameTrial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessGame>,
    pub passed: bool,
}

/// Builds the single-context game whose payoff is the refutation's
/// separating functional.
pub fn witness_game(w: &Channel, w_prime: &Channel, refutation: &Refutation) -> Result<WitnessGame> {
    let game = RandomizedGame::new(vec![refutation.payoff.clone()], w.clone())?;
    let lhs = optimal_average_payoff(&game).value;
    let rhs = optimal_average_payoff(&game.with_channel(w_prime.clone())?).value;
    Ok(WitnessGame {
        game,
        optimal_lhs: lhs,
        optimal_rhs: rhs,
        gap: lhs - rhs,
    })
}

/// Checks the game-theoretic characterization of degradedness on one pair.
///
/// For a degraded pair, `trials` random games (1 to 3 contexts, payoffs
/// uniform in `[-1, 1]`) must satisfy region inclusion and optimal-payoff
/// domination. For a non-degraded pair, the refutation is turned into a
/// game on which `W` does strictly better than `W'`.
pub fn check_bss(
    w: &Channel,
    w_prime: &Channel,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
    cap: u64,
) -> Result<BssReport> {
    let certificate = is_input_degraded(w, w_prime, tol)?;
    if let Some(refutation) = &certificate.refutation {
        let witness = witness_game(w, w_prime, refutation)?;
        let passed = witness.gap > 0.0 && (witness.gap - refutation.gap).abs() <= 1e-7;
        return Ok(BssReport {
            seed,
            certificate,
            trials: Vec::new(),
            witness: Some(witness),
            passed,
        });
    }
    let mut results = Vec::with_capacity(trials);
    for index in 0..trials {
        let mut rng = stream(seed, index as u64);
        let z_size = rand::Rng::random_range(&mut rng, 1..=3);
        let game_w = random_game(&mut rng, z_size, w.clone())?;
        let game_wp = game_w.with_channel(w_prime.clone())?;
        let lhs_vertices = achievable_region_vertices(&game_w, cap)?;
        let rhs_vertices = achievable_region_vertices(&game_wp, cap)?;
        let mut region_included = true;
        for v in &lhs_vertices {
            if !hull_membership_vectors(v, &rhs_vertices, tol)?.is_inside() {
                region_included = false;
                break;
            }
        }
        let optimal_lhs = optimal_average_payoff(&game_w).value;
        let optimal_rhs = optimal_average_payoff(&game_wp).value;
        results.push(GameTrial {
            index,
            payoff: game_w.payoff.clone(),
            vertices_checked: lhs_vertices.len(),
            region_included,
            optimal_lhs,
            optimal_rhs,
            payoff_dominated: optimal_lhs <= optimal_rhs + PAYOFF_SLACK,
        });
    }
    let passed = results.iter().all(GameTrial::passed);
    Ok(BssReport {
        seed,
        certificate,
        trials: results,
        witness: None,
        passed,
    })
}
