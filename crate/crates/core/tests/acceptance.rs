//! Acceptance suite. Each criterion runs seeded cases against brute-force
//! oracles and prints one PASS/FAIL line; the process fails if any does.

mod common;

use std::fmt::Display;
use std::process::ExitCode;
use std::time::Instant;

use chanorder::channel::{channel_product, channel_sum, compose, deterministic, Channel};
use chanorder::coding::{capacity, pc, pe_decoder_ml, pe_opt, DEFAULT_CODING_CAP};
use chanorder::games::{check_bss, DEFAULT_REGION_CAP};
use chanorder::geometry::{hull_membership, Distribution, ToleranceConfig};
use chanorder::ordering::{
    characteristic, decompose_sum_point, input_rank, is_input_degraded, is_input_equivalent,
    product_generators, product_hull_membership, similarity_distance,
};
use chanorder::random::{
    degraded_pair, non_degraded_pair, random_channel, random_decoder, random_distribution,
    random_surjection, stream, stream_seed, DegradedPair, SeededRng,
};
use chanorder::Result;
use common::Mat;
use rand::Rng;

const SEED: u64 = 0x5EED_2026;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// Independent generator for case `i` of criterion `criterion`.
fn case_rng(criterion: u64, i: usize) -> SeededRng {
    stream(stream_seed(SEED, criterion), i as u64)
}

fn mat(w: &Channel) -> Mat {
    w.matrix()
}

#[derive(Default)]
struct Tally {
    cases: usize,
    checks: usize,
    failures: usize,
    /// Largest observed `lhs - rhs` over all bounds, before slack.
    worst: f64,
    first: Option<String>,
}

impl Tally {
    fn fail(&mut self, what: String) {
        self.failures += 1;
        self.first.get_or_insert(what);
    }

    fn case(&mut self, f: impl FnOnce(&mut Self) -> Result<()>) {
        self.cases += 1;
        let n = self.cases;
        if let Err(e) = f(self) {
            self.fail(format!("case {n}: {e}"));
        }
    }

    /// `lhs <= rhs + slack`.
    fn bound(&mut self, lhs: f64, rhs: f64, slack: f64, what: impl Display) {
        self.checks += 1;
        let excess = lhs - rhs;
        if excess > self.worst {
            self.worst = excess;
        }
        if !(excess <= slack) {
            self.fail(format!("case {}: {what}: {lhs:e} > {rhs:e} + {slack:e}", self.cases));
        }
    }

    fn near(&mut self, a: f64, b: f64, tol: f64, what: impl Display) {
        self.bound((a - b).abs(), 0.0, tol, what);
    }

    fn expect(&mut self, cond: bool, what: impl Display) {
        self.checks += 1;
        if !cond {
            self.fail(format!("case {}: {what}", self.cases));
        }
    }
}

fn criterion1_pair(i: usize) -> Result<DegradedPair> {
    degraded_pair(&mut case_rng(1, i), 5, 5, 4)
}

/// `W' ∘ D_f` for a random surjection `f` onto the inputs of `w`.
fn with_merged_inputs(rng: &mut SeededRng, w: &Channel) -> Result<Channel> {
    let extra = rng.random_range(0..=2);
    let f = random_surjection(rng, w.input_size() + extra, w.input_size())?;
    compose(w, &deterministic(&f, w.input_size())?)
}

fn soundness() -> Tally {
    let mut t = Tally::default();
    for i in 0..200 {
        t.case(|t| {
            let pair = criterion1_pair(i)?;
            let res = is_input_degraded(&pair.worse, &pair.better, &tol())?;
            t.expect(res.degraded, "constructed pair not reported degraded");
            if let Some(v) = &res.intertwiner {
                let rebuilt = common::compose(&mat(&pair.better), &mat(v));
                t.bound(common::row_distance(&rebuilt, &mat(&pair.worse)), 0.0, 1e-7, "W' ∘ V vs W");
            }
            Ok(())
        });
    }
    t
}

fn refutation() -> Tally {
    let mut t = Tally::default();
    for i in 0..200 {
        t.case(|t| {
            let mut rng = case_rng(2, i);
            let (w, wp) = non_degraded_pair(&mut rng, 5, 5, 4, &tol())?;
            let res = is_input_degraded(&w, &wp, &tol())?;
            t.expect(!res.degraded, "planted pair reported degraded");
            let Some(r) = &res.refutation else {
                return Ok(());
            };
            let (w, wp) = (mat(&w), mat(&wp));
            t.expect(r.gap > 0.0, "non-positive gap");
            let lhs = common::dot(&r.payoff, &w[r.row_index]);
            let rhs = common::best_response(&r.payoff, &wp) + r.gap * (1.0 - 1e-6);
            t.bound(rhs, lhs, 1e-7, "strict gap inequality");

            let report = check_bss(
                &Channel::validate(w.clone())?,
                &Channel::validate(wp.clone())?,
                20,
                rng.random(),
                &tol(),
                DEFAULT_REGION_CAP,
            )?;
            t.expect(report.passed, "check_bss rejected its own witness");
            match &report.witness {
                Some(g) => {
                    let payoff = g.game.payoff().to_vec();
                    let gap = common::optimal_average(&payoff, &w) - common::optimal_average(&payoff, &wp);
                    t.expect(gap > 0.0, "witness game does not favor W");
                    t.near(gap, g.gap, 1e-7, "witness gap vs oracle");
                }
                None => t.expect(false, "no witness game"),
            }
            Ok(())
        });
    }
    t
}

fn decoder_monotonicity() -> Tally {
    let mut t = Tally::default();
    for i in 0..200 {
        t.case(|t| {
            let pair = criterion1_pair(i)?;
            let mut rng = case_rng(3, i);
            let merged = with_merged_inputs(&mut rng, &pair.better)?;
            let (worse, better, merged_m) = (mat(&pair.worse), mat(&pair.better), mat(&merged));
            let y = pair.better.output_size();
            for _ in 0..20 {
                let n = rng.random_range(1..=2);
                let m = rng.random_range(1..=3);
                let d = random_decoder(&mut rng, n, m, y)?;
                let pe_worse = pe_decoder_ml(&pair.worse, &d, DEFAULT_CODING_CAP)?;
                let pe_better = pe_decoder_ml(&pair.better, &d, DEFAULT_CODING_CAP)?;
                let pe_merged = pe_decoder_ml(&merged, &d, DEFAULT_CODING_CAP)?;
                let decode = |y: &[usize]| d.decode(y);
                t.near(pe_worse, common::pe_decoder(&worse, n, m, decode), 1e-9, "P_e,D(W) vs oracle");
                t.near(pe_better, common::pe_decoder(&better, n, m, decode), 1e-9, "P_e,D(W') vs oracle");
                t.near(pe_merged, common::pe_decoder(&merged_m, n, m, decode), 1e-9, "P_e,D(W'∘D_f) vs oracle");
                t.bound(pe_better, pe_worse, 1e-9, "P_e,D(W') <= P_e,D(W)");
                t.near(pe_merged, pe_better, 1e-9, "P_e,D invariant under merging");
            }
            Ok(())
        });
    }
    t
}

fn estimation_forward() -> Tally {
    let mut t = Tally::default();
    for i in 0..200 {
        t.case(|t| {
            let pair = criterion1_pair(i)?;
            let mut rng = case_rng(4, i);
            let (worse, better) = (mat(&pair.worse), mat(&pair.better));
            let y = pair.better.output_size();
            for _ in 0..1000 {
                let u = rng.random_range(1..=3);
                let p = random_distribution(&mut rng, u);
                let d = random_channel(&mut rng, y, u)?;
                let lhs = pc(&p, &pair.worse, &d)?.success_probability;
                let rhs = pc(&p, &pair.better, &d)?.success_probability;
                t.bound(lhs, rhs, 1e-9, "P_c(p,W,D) <= P_c(p,W',D)");
                t.near(lhs, common::pc(p.probs(), &worse, &mat(&d)), 1e-12, "P_c(W) vs oracle");
                t.near(rhs, common::pc(p.probs(), &better, &mat(&d)), 1e-12, "P_c(W') vs oracle");
            }
            Ok(())
        });
    }
    t
}

fn games() -> Tally {
    let mut t = Tally::default();
    for i in 0..50 {
        t.case(|t| {
            let mut rng = case_rng(5, i);
            let pair = degraded_pair(&mut rng, 4, 4, 4)?;
            let report = check_bss(&pair.worse, &pair.better, 20, rng.random(), &tol(), DEFAULT_REGION_CAP)?;
            t.expect(report.passed, "check_bss failed on a degraded pair");
            t.expect(report.trials.len() == 20, "wrong number of trials");
            let (worse, better) = (mat(&pair.worse), mat(&pair.better));
            for trial in &report.trials {
                t.expect(trial.region_included, format!("trial {}: region not included", trial.index));
                let lhs = common::optimal_average(&trial.payoff, &worse);
                let rhs = common::optimal_average(&trial.payoff, &better);
                t.near(trial.optimal_lhs, lhs, 1e-12, "optimal payoff under W vs oracle");
                t.near(trial.optimal_rhs, rhs, 1e-12, "optimal payoff under W' vs oracle");
                t.bound(lhs, rhs, 1e-9, "optimal payoff domination");
            }
            Ok(())
        });
    }
    for i in 0..50 {
        t.case(|t| {
            let mut rng = case_rng(15, i);
            let (w, wp) = non_degraded_pair(&mut rng, 4, 4, 4, &tol())?;
            let report = check_bss(&w, &wp, 20, rng.random(), &tol(), DEFAULT_REGION_CAP)?;
            t.expect(report.passed, "no valid witness for a non-degraded pair");
            match &report.witness {
                Some(g) => {
                    let payoff = g.game.payoff().to_vec();
                    let lhs = common::optimal_average(&payoff, &mat(&w));
                    let rhs = common::optimal_average(&payoff, &mat(&wp));
                    t.expect(lhs > rhs, "witness does not violate payoff domination");
                }
                None => t.expect(false, "no witness game"),
            }
            Ok(())
        });
    }
    t
}

fn bsc(p: f64) -> Channel {
    Channel::bsc(p).expect("valid crossover")
}

fn random_shape(rng: &mut SeededRng, max_inputs: usize, outputs: usize) -> Result<Channel> {
    let x = rng.random_range(1..=max_inputs);
    random_channel(rng, x, outputs)
}

/// Same row hull as `w`: rows shuffled, one duplicated and one interior
/// mixture appended.
fn hull_preserving_variant(rng: &mut SeededRng, w: &Channel) -> Result<Channel> {
    let mut rows = mat(w);
    let dup = rows[rng.random_range(0..rows.len())].clone();
    let weights = random_distribution(rng, rows.len());
    let mix = common::combine(weights.probs(), &rows);
    rows.push(dup);
    rows.push(mix);
    rand::seq::SliceRandom::shuffle(rows.as_mut_slice(), rng);
    Channel::validate(rows)
}

fn similarity() -> Tally {
    let mut t = Tally::default();
    t.case(|t| {
        let d = similarity_distance(&bsc(0.1), &bsc(0.2), &tol())?;
        t.near(d, common::interval_hausdorff(&mat(&bsc(0.1)), &mat(&bsc(0.2))), 1e-7, "BSC interval closed form");
        t.near(d, 0.1, 1e-7, "d(BSC(0.1), BSC(0.2))");
        Ok(())
    });
    for i in 0..300 {
        t.case(|t| {
            let mut rng = case_rng(6, i);
            let y = rng.random_range(1..=4);
            let a = random_shape(&mut rng, 4, y)?;
            let b = random_shape(&mut rng, 4, y)?;
            let c = random_shape(&mut rng, 4, y)?;
            let ab = similarity_distance(&a, &b, &tol())?;
            let ba = similarity_distance(&b, &a, &tol())?;
            let bc = similarity_distance(&b, &c, &tol())?;
            let ac = similarity_distance(&a, &c, &tol())?;
            t.expect(ab == ba, format!("asymmetric: {ab:e} vs {ba:e}"));
            t.bound(ac, ab + bc, 1e-7, "triangle inequality");
            t.expect((0.0..=1.0).contains(&ab), "distance outside [0, 1]");
            Ok(())
        });
    }
    for i in 0..200 {
        t.case(|t| {
            let mut rng = case_rng(16, i);
            let y = rng.random_range(1..=4);
            let a = random_shape(&mut rng, 4, y)?;
            let b = if i % 2 == 0 {
                hull_preserving_variant(&mut rng, &a)?
            } else {
                random_shape(&mut rng, 4, y)?
            };
            let d = similarity_distance(&a, &b, &tol())?;
            let eq = is_input_equivalent(&a, &b, &tol())?;
            if i % 2 == 0 {
                t.expect(eq, "hull-preserving variant not equivalent");
            }
            t.expect(eq == (d <= 1e-8), format!("equivalent={eq} but distance {d:e}"));
            Ok(())
        });
    }
    for i in 0..1000 {
        t.case(|t| {
            let mut rng = case_rng(26, i);
            let x = rng.random_range(1..=4);
            let y = rng.random_range(1..=4);
            let a = random_channel(&mut rng, x, y)?;
            let b = random_channel(&mut rng, x, y)?;
            let d = similarity_distance(&a, &b, &tol())?;
            t.bound(d, common::row_distance(&mat(&a), &mat(&b)), 1e-9, "domination by row distance");
            Ok(())
        });
    }
    for i in 0..50 {
        t.case(|t| {
            let mut rng = case_rng(36, i);
            let a = random_shape(&mut rng, 3, 3)?;
            let b = random_shape(&mut rng, 3, 3)?;
            let d = similarity_distance(&a, &b, &tol())?;
            let grid = common::sampled_hausdorff(
                &common::hull_samples(&mat(&a), 100),
                &common::hull_samples(&mat(&b), 100),
            );
            t.near(d, grid, 2e-2, "grid-sampled Hausdorff");
            Ok(())
        });
    }
    t
}

fn rank_bounds() -> Tally {
    let mut t = Tally::default();
    for i in 0..1000 {
        t.case(|t| {
            let mut rng = case_rng(7, i);
            let x = rng.random_range(1..=8);
            let r2 = input_rank(&random_channel(&mut rng, x, 2)?, &tol())?;
            t.bound(r2 as f64, 2.0, 0.0, "rank with two outputs");
            t.expect(r2 >= 1, "empty characteristic");
            let r1 = input_rank(&random_channel(&mut rng, x, 1)?, &tol())?;
            t.expect(r1 == 1, format!("rank {r1} with one output"));
            Ok(())
        });
    }
    t
}

fn invariance() -> Tally {
    let mut t = Tally::default();
    t.case(|t| {
        let c = capacity(&bsc(0.1), 1e-9)?;
        t.near(c.capacity, common::bsc_capacity(0.1), 1e-6, "capacity of BSC(0.1)");
        Ok(())
    });
    for i in 0..100 {
        t.case(|t| {
            let mut rng = case_rng(8, i);
            let x = rng.random_range(1..=3);
            let y = rng.random_range(1..=3);
            let w = random_channel(&mut rng, x, y)?;
            let merged = with_merged_inputs(&mut rng, &w)?;
            let cw = capacity(&w, 1e-9)?.capacity;
            let cm = capacity(&merged, 1e-9)?.capacity;
            t.near(cw, cm, 1e-6, "capacity under merging");
            for n in 1..=2 {
                for m in 1..=3 {
                    let a = pe_opt(&w, n, m, DEFAULT_CODING_CAP)?.error_probability;
                    let b = pe_opt(&merged, n, m, DEFAULT_CODING_CAP)?.error_probability;
                    t.near(a, b, 1e-9, format!("P_e,{n},{m} under merging"));
                }
            }
            Ok(())
        });
    }
    t
}

/// Query over the alphabet of `s`: a hull point, a free simplex point, or a
/// point supported on one block of a sum.
fn query(rng: &mut SeededRng, s: &Channel, mode: usize, block: Option<(usize, usize)>) -> Distribution {
    match (mode, block) {
        (0, _) => {
            let weights = random_distribution(rng, s.input_size());
            Distribution::new(common::combine(weights.probs(), &mat(s))).expect("mixture of rows")
        }
        (2, Some((start, len))) => {
            let part = random_distribution(rng, len);
            let mut q = vec![0.0; s.output_size()];
            q[start..start + len].copy_from_slice(part.probs());
            Distribution::new(q).expect("embedded distribution")
        }
        _ => random_distribution(rng, s.output_size()),
    }
}

fn hull_identities() -> Tally {
    let mut t = Tally::default();
    for i in 0..500 {
        t.case(|t| {
            let mut rng = case_rng(9, i);
            let (y1, y2) = (rng.random_range(1..=3), rng.random_range(1..=3));
            let w1 = random_shape(&mut rng, 3, y1)?;
            let w2 = random_shape(&mut rng, 3, y2)?;
            let (c1, c2) = (characteristic(&w1, &tol())?, characteristic(&w2, &tol())?);
            let s = channel_sum(&w1, &w2);
            let block = if rng.random_bool(0.5) { (0, y1) } else { (y1, y2) };
            let q = query(&mut rng, &s, i % 3, Some(block));
            let direct = hull_membership(&q, s.rows(), &tol())?;
            let split = decompose_sum_point(&q, s.output_labels(), &c1, &c2, &tol())?;
            t.expect(direct.is_inside() == split.is_some(), "sum verdicts disagree");
            if let Some(w) = direct.weights() {
                t.bound(common::max_abs_diff(&common::combine(w, &mat(&s)), q.probs()), 0.0, 1e-7, "direct reconstruction");
            }
            if let Some(dec) = &split {
                t.bound(common::max_abs_diff(&dec.reconstruct(&c1, &c2), q.probs()), 0.0, 1e-7, "sum reconstruction");
            }
            Ok(())
        });
    }
    for i in 0..500 {
        t.case(|t| {
            let mut rng = case_rng(19, i);
            let (y1, y2) = (rng.random_range(1..=3), rng.random_range(1..=3));
            let w1 = random_shape(&mut rng, 3, y1)?;
            let w2 = random_shape(&mut rng, 3, y2)?;
            let (c1, c2) = (characteristic(&w1, &tol())?, characteristic(&w2, &tol())?);
            let p = channel_product(&w1, &w2);
            let q = query(&mut rng, &p, i % 2, None);
            let direct = hull_membership(&q, p.rows(), &tol())?;
            let via = product_hull_membership(&q, p.output_labels(), &c1, &c2, &tol())?;
            t.expect(direct.is_inside() == via.is_inside(), "product verdicts disagree");
            if let Some(w) = via.weights() {
                let gens: Mat = product_generators(&c1, &c2).into_iter().map(Distribution::into_inner).collect();
                t.bound(common::max_abs_diff(&common::combine(w, &gens), q.probs()), 0.0, 1e-7, "product reconstruction");
            }
            Ok(())
        });
    }
    t
}

fn lipschitz() -> Tally {
    let mut t = Tally::default();
    for i in 0..300 {
        t.case(|t| {
            let mut rng = case_rng(10, i);
            let (y1, y2) = (rng.random_range(1..=3), rng.random_range(1..=3));
            let a1 = random_shape(&mut rng, 3, y1)?;
            let b1 = random_shape(&mut rng, 3, y1)?;
            let a2 = random_shape(&mut rng, 3, y2)?;
            let b2 = random_shape(&mut rng, 3, y2)?;
            let bound = similarity_distance(&a1, &b1, &tol())? + similarity_distance(&a2, &b2, &tol())?;
            let sum = similarity_distance(&channel_sum(&a1, &a2), &channel_sum(&b1, &b2), &tol())?;
            let prod = similarity_distance(&channel_product(&a1, &a2), &channel_product(&b1, &b2), &tol())?;
            t.bound(sum, bound, 1e-7, "sum Lipschitz bound");
            t.bound(prod, bound, 1e-7, "product Lipschitz bound");
            Ok(())
        });
    }
    t
}

type Criterion = (&'static str, fn() -> Tally);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("degradedness soundness", soundness),
        ("degradedness refutation", refutation),
        ("decoder error monotonicity", decoder_monotonicity),
        ("estimation success monotonicity", estimation_forward),
        ("game characterization", games),
        ("similarity metric", similarity),
        ("rank bounds", rank_bounds),
        ("invariance under equivalence", invariance),
        ("sum and product hull identities", hull_identities),
        ("sum and product Lipschitz bounds", lipschitz),
    ];
    let results: Vec<(Tally, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let tally = f();
                    (tally, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut ok = true;
    for (k, ((name, _), (tally, secs))) in criteria.iter().zip(&results).enumerate() {
        let pass = tally.failures == 0 && tally.cases > 0;
        ok &= pass;
        println!(
            "{} criterion {:>2} {name}: {} cases, {} checks, {} failures, max excess {:.3e}, {secs:.1}s",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            tally.cases,
            tally.checks,
            tally.failures,
            tally.worst,
        );
        if let Some(first) = &tally.first {
            println!("     first failure: {first}");
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
