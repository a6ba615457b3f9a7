//! Seeded invariant suites, one per module, runnable from the command line.
//!
//! Every check draws its cases from an independent substream of the run
//! seed, so a report is fully determined by the seed and tolerances.

use std::ops::RangeInclusive;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{
    channel_distance, channel_product, channel_sum, compose, deterministic, Channel,
};
use crate::coding::{capacity, pc, pe_decoder_ml, pe_opt, DEFAULT_CODING_CAP};
use crate::error::{Error, Result};
use crate::games::{
    achievable_region_vertices, check_bss, optimal_average_payoff, payoff_vector, region_contains,
    DEFAULT_REGION_CAP,
};
use crate::geometry::{
    convex_extreme_points, dot, hausdorff_tv, hull_membership, l1_distance_to_hull,
    max_abs_diff, solve_lp, Distribution, LinearProgram, LpOutcome, Membership, ToleranceConfig,
};
use crate::ordering::{
    canonical_representative, characteristic, decompose_sum_point, input_rank,
    is_input_degraded, is_input_equivalent, product_generators, product_hull_membership,
    similarity_distance,
};
use crate::random::{
    degraded_pair, non_degraded_pair, random_channel, random_decoder, random_distribution,
    random_game, random_surjection, stream, stream_seed, SeededRng,
};

pub const SUITES: [&str; 5] = ["geometry", "channel", "ordering", "coding", "games"];

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol: ToleranceConfig,
    pub capacity_tol: f64,
    pub coding_cap: u64,
    pub region_cap: u64,
}

impl VerifyConfig {
    pub fn new(seed: u64) -> Self {
        VerifyConfig {
            seed,
            tol: ToleranceConfig::default(),
            capacity_tol: 1e-9,
            coding_cap: DEFAULT_CODING_CAP,
            region_cap: DEFAULT_REGION_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Largest amount by which a measured quantity exceeded its bound,
    /// or the largest measured slack use when every case passed.
    pub max_violation: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub tolerances: ToleranceConfig,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

/// Outcome of one case: whether it held and by how much a bound was used.
struct Verdict {
    ok: bool,
    excess: f64,
    detail: String,
}

impl Verdict {
    fn holds(ok: bool, detail: impl Into<String>) -> Verdict {
        Verdict {
            ok,
            excess: 0.0,
            detail: detail.into(),
        }
    }

    /// `value <= bound`.
    fn at_most(value: f64, bound: f64, what: &str) -> Verdict {
        Verdict {
            ok: value <= bound,
            excess: value.max(0.0),
            detail: format!("{what}: {value:e} exceeds {bound:e}"),
        }
    }

    fn and(self, other: Verdict) -> Verdict {
        Verdict {
            ok: self.ok && other.ok,
            excess: self.excess.max(other.excess),
            detail: if self.ok { other.detail } else { self.detail },
        }
    }
}

fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    verdicts
        .into_iter()
        .fold(Verdict::holds(true, ""), Verdict::and)
}

struct Suite<'a> {
    cfg: &'a VerifyConfig,
    checks: Vec<CheckResult>,
}

impl Suite<'_> {
    fn check<F>(&mut self, name: &str, cases: usize, mut case: F)
    where
        F: FnMut(&mut SeededRng) -> Result<Verdict>,
    {
        let check_seed = stream_seed(self.cfg.seed, fnv(name));
        let mut result = CheckResult {
            name: name.to_string(),
            cases,
            failures: 0,
            max_violation: 0.0,
            passed: true,
            first_failure: None,
        };
        for i in 0..cases {
            let mut rng = stream(check_seed, i as u64);
            let verdict = case(&mut rng).unwrap_or_else(|e| Verdict::holds(false, format!("error: {e}")));
            result.max_violation = result.max_violation.max(verdict.excess);
            if !verdict.ok {
                result.failures += 1;
                if result.first_failure.is_none() {
                    result.first_failure = Some(format!("case {i}: {}", verdict.detail));
                }
            }
        }
        result.passed = result.failures == 0;
        self.checks.push(result);
    }
}

/// Stable 64-bit FNV-1a hash used to give each check its own stream.
fn fnv(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// Runs one named suite, or every suite for `"all"`.
pub fn run(name: &str, cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.tol.validate()?;
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(Error::Malformed(format!(
            "unknown suite {name:?}; expected one of {} or all",
            SUITES.join(", ")
        )));
    };
    let suites: Vec<SuiteReport> = names.into_iter().map(|n| run_suite(n, cfg)).collect();
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport {
        seed: cfg.seed,
        tolerances: cfg.tol,
        suites,
        passed,
    })
}

fn run_suite(name: &str, cfg: &VerifyConfig) -> SuiteReport {
    let mut suite = Suite {
        cfg,
        checks: Vec::new(),
    };
    match name {
        "geometry" => geometry_suite(&mut suite),
        "channel" => channel_suite(&mut suite),
        "ordering" => ordering_suite(&mut suite),
        "coding" => coding_suite(&mut suite),
        "games" => games_suite(&mut suite),
        _ => unreachable!("suite names are validated by run"),
    }
    let passed = suite.checks.iter().all(|c| c.passed);
    SuiteReport {
        suite: name.to_string(),
        checks: suite.checks,
        passed,
    }
}

fn random_points(rng: &mut SeededRng, count: usize, dim: usize) -> Vec<Distribution> {
    (0..count).map(|_| random_distribution(rng, dim)).collect()
}

fn channel_in(
    rng: &mut SeededRng,
    inputs: RangeInclusive<usize>,
    outputs: RangeInclusive<usize>,
) -> Result<Channel> {
    let x = rng.random_range(inputs);
    let y = rng.random_range(outputs);
    random_channel(rng, x, y)
}

fn points_in(rng: &mut SeededRng, count: RangeInclusive<usize>, dim: usize) -> Vec<Distribution> {
    let k = rng.random_range(count);
    random_points(rng, k, dim)
}

fn mixture<P: AsRef<[f64]>>(rng: &mut SeededRng, points: &[P]) -> Vec<f64> {
    let w = random_distribution(rng, points.len());
    combine(w.probs(), points)
}

fn combine<P: AsRef<[f64]>>(weights: &[f64], points: &[P]) -> Vec<f64> {
    let mut out = vec![0.0; points[0].as_ref().len()];
    for (wi, p) in weights.iter().zip(points) {
        for (o, v) in out.iter_mut().zip(p.as_ref()) {
            *o += wi * v;
        }
    }
    out
}

fn dist(v: Vec<f64>) -> Result<Distribution> {
    Distribution::new(v)
}

/// Half the time a point of the hull, otherwise a draw that may be outside.
fn query_point<P: AsRef<[f64]>>(rng: &mut SeededRng, gens: &[P]) -> Result<Distribution> {
    let dim = gens[0].as_ref().len();
    let inside = mixture(rng, gens);
    match rng.random_range(0..3) {
        0 => dist(inside),
        1 => Ok(random_distribution(rng, dim)),
        _ => {
            let t = rng.random_range(0.05..0.5);
            let r = random_distribution(rng, dim);
            dist(inside.iter().zip(r.probs()).map(|(a, b)| (1.0 - t) * a + t * b).collect())
        }
    }
}

fn geometry_suite(s: &mut Suite) {
    let tol = s.cfg.tol;
    s.check("membership certificates", 300, |rng| {
        let d = rng.random_range(1..=4);
        let gens = points_in(rng, 1..=5, d);
        let q = query_point(rng, &gens)?;
        Ok(match hull_membership(&q, &gens, &tol)? {
            Membership::Inside { weights } => {
                let sum: f64 = weights.iter().sum();
                all([
                    Verdict::holds(weights.iter().all(|&w| w >= -1e-12), "negative weight"),
                    Verdict::at_most((sum - 1.0).abs(), 1e-9, "weight sum"),
                    Verdict::at_most(max_abs_diff(&combine(&weights, &gens), q.probs()), 1e-7, "reconstruction"),
                ])
            }
            Membership::Outside(sep) => {
                let h = &sep.functional;
                let best = gens.iter().map(|g| dot(h, g.probs())).fold(f64::NEG_INFINITY, f64::max);
                let scale = h.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                all([
                    Verdict::holds(sep.gap > 0.0, "non-positive gap"),
                    Verdict::at_most((scale - 1.0).abs(), 1e-12, "functional normalization"),
                    Verdict::holds(
                        dot(h, q.probs()) - best >= sep.gap * (1.0 - 1e-6),
                        "separation inequality fails",
                    ),
                ])
            }
        })
    });
    s.check("separator gap equals distance to hull", 300, |rng| {
        let d = rng.random_range(2..=4);
        let gens = points_in(rng, 1..=5, d);
        let q = query_point(rng, &gens)?;
        let (l1d, _) = l1_distance_to_hull(&q, &gens, &tol)?;
        Ok(match hull_membership(&q, &gens, &tol)? {
            Membership::Inside { .. } => Verdict::at_most(0.5 * l1d, 1e-7, "inside point has distance"),
            Membership::Outside(sep) => Verdict::at_most((sep.gap - 0.5 * l1d).abs(), 1e-7, "gap vs distance"),
        })
    });
    s.check("Farkas certificates of infeasible membership", 200, |rng| {
        let d = rng.random_range(2..=4);
        let gens = points_in(rng, 1..=4, d);
        let q = random_distribution(rng, d);
        let n = gens.len();
        let mut a: Vec<Vec<f64>> = (0..d).map(|y| gens.iter().map(|g| g.probs()[y]).collect()).collect();
        a.push(vec![1.0; n]);
        let mut b = q.probs().to_vec();
        b.push(1.0);
        let lp = LinearProgram::new(vec![0.0; n], a.clone(), b.clone());
        let direct = hull_membership(&q, &gens, &tol)?.is_inside();
        Ok(match solve_lp(&lp, &tol)? {
            LpOutcome::Optimal { .. } => Verdict::holds(direct, "LP feasible but membership says outside"),
            LpOutcome::Infeasible { certificate: y } => {
                let worst = (0..n)
                    .map(|j| a.iter().zip(&y).map(|(row, yi)| row[j] * yi).sum::<f64>())
                    .fold(f64::NEG_INFINITY, f64::max);
                all([
                    Verdict::holds(!direct, "LP infeasible but membership says inside"),
                    Verdict::at_most(worst, 1e-7, "certificate column product"),
                    Verdict::holds(dot(&y, &b) > 0.0, "certificate does not separate"),
                ])
            }
            LpOutcome::Unbounded => Verdict::holds(false, "feasibility LP unbounded"),
        })
    });
    s.check("extreme points are exactly the irredundant points", 200, |rng| {
        let d = rng.random_range(1..=4);
        let mut pts = points_in(rng, 1..=5, d);
        for _ in 0..rng.random_range(0..3) {
            let m = mixture(rng, &pts);
            pts.push(dist(m)?);
        }
        if rng.random_bool(0.3) {
            let k = rng.random_range(0..pts.len());
            pts.push(pts[k].clone());
        }
        let ce = convex_extreme_points(&pts, &tol)?;
        let kept: Vec<&Distribution> = ce.iter().map(|&i| &pts[i]).collect();
        let mut verdicts = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            if ce.contains(&i) {
                let others: Vec<Distribution> =
                    ce.iter().filter(|&&j| j != i).map(|&j| pts[j].clone()).collect();
                if !others.is_empty() {
                    verdicts.push(Verdict::holds(
                        !hull_membership(p, &others, &tol)?.is_inside(),
                        format!("point {i} reported extreme but lies in the hull of the rest"),
                    ));
                }
            } else {
                let (l1d, _) = crate::geometry::l1_distance_to_hull_vectors(p.probs(), &kept, &tol)?;
                verdicts.push(Verdict::at_most(0.5 * l1d, 1e-9, "dropped point distance to kept hull"));
            }
        }
        Ok(all(verdicts))
    });
    s.check("Hausdorff distance of binary symmetric hulls", 200, |rng| {
        let (a, b) = (rng.random_range(0.0..=0.5), rng.random_range(0.0..=0.5));
        let ha = Channel::bsc(a)?;
        let hb = Channel::bsc(b)?;
        let d = hausdorff_tv(ha.rows(), hb.rows(), &tol)?;
        Ok(Verdict::at_most((d - (a - b).abs()).abs(), 1e-9, "interval Hausdorff"))
    });
    s.check("Hausdorff symmetry and identity", 200, |rng| {
        let dim = rng.random_range(1..=4);
        let a = points_in(rng, 1..=4, dim);
        let b = points_in(rng, 1..=4, dim);
        let ab = hausdorff_tv(&a, &b, &tol)?;
        let ba = hausdorff_tv(&b, &a, &tol)?;
        Ok(all([
            Verdict::holds(ab == ba, format!("asymmetric: {ab} vs {ba}")),
            Verdict::at_most(hausdorff_tv(&a, &a, &tol)?, 1e-9, "self distance"),
            Verdict::holds((0.0..=1.0).contains(&ab), "distance outside [0, 1]"),
        ]))
    });
}

fn channel_suite(s: &mut Suite) {
    s.check("composition is associative", 200, |rng| {
        let sizes: Vec<usize> = (0..4).map(|_| rng.random_range(1..=4)).collect();
        let a = random_channel(rng, sizes[0], sizes[1])?;
        let b = random_channel(rng, sizes[1], sizes[2])?;
        let c = random_channel(rng, sizes[2], sizes[3])?;
        let left = compose(&c, &compose(&b, &a)?)?;
        let right = compose(&compose(&c, &b)?, &a)?;
        Ok(Verdict::at_most(channel_distance(&left, &right)?, 1e-12, "associativity"))
    });
    s.check("binary symmetric composition", 200, |rng| {
        let (a, b) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
        let got = compose(&Channel::bsc(a)?, &Channel::bsc(b)?)?;
        let expected = Channel::bsc(a + b - 2.0 * a * b)?;
        Ok(Verdict::at_most(channel_distance(&got, &expected)?, 1e-12, "crossover"))
    });
    s.check("deterministic composition", 200, |rng| {
        let (n, m, k) = (rng.random_range(1..=5), rng.random_range(1..=5), rng.random_range(1..=5));
        let f: Vec<usize> = (0..n).map(|_| rng.random_range(0..m)).collect();
        let g: Vec<usize> = (0..m).map(|_| rng.random_range(0..k)).collect();
        let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
        let got = compose(&deterministic(&g, k)?, &deterministic(&f, m)?)?;
        Ok(Verdict::holds(got == deterministic(&gf, k)?, "D_g after D_f differs from D_(g∘f)"))
    });
    s.check("sum and product structure", 200, |rng| {
        let w1 = channel_in(rng, 1..=3, 1..=3)?;
        let w2 = channel_in(rng, 1..=3, 1..=3)?;
        let sum = channel_sum(&w1, &w2);
        let prod = channel_product(&w1, &w2);
        let (m1, m2) = (w1.output_size(), w2.output_size());
        let mut err = 0.0f64;
        for x in 0..w1.input_size() {
            for y in 0..m1 + m2 {
                let expected = if y < m1 { w1.prob(y, x) } else { 0.0 };
                err = err.max((sum.prob(y, x) - expected).abs());
            }
        }
        for x in 0..w2.input_size() {
            for y in 0..m1 + m2 {
                let expected = if y >= m1 { w2.prob(y - m1, x) } else { 0.0 };
                err = err.max((sum.prob(y, w1.input_size() + x) - expected).abs());
            }
        }
        for x1 in 0..w1.input_size() {
            for x2 in 0..w2.input_size() {
                for y1 in 0..m1 {
                    for y2 in 0..m2 {
                        let got = prod.prob(y1 * m2 + y2, x1 * w2.input_size() + x2);
                        err = err.max((got - w1.prob(y1, x1) * w2.prob(y2, x2)).abs());
                    }
                }
            }
        }
        Ok(Verdict::at_most(err, 1e-15, "entrywise layout"))
    });
    s.check("canonical JSON round trip", 200, |rng| {
        let a = channel_in(rng, 1..=3, 1..=3)?;
        let b = channel_in(rng, 1..=3, 1..=3)?;
        let w = match rng.random_range(0..3) {
            0 => a,
            1 => channel_sum(&a, &b),
            _ => channel_product(&a, &b),
        };
        let text = crate::json::to_canonical_string(&w)?;
        let back: Channel = crate::json::from_str(&text)?;
        let again = crate::json::to_canonical_string(&back)?;
        Ok(all([
            Verdict::holds(back == w, "re-parsed channel differs"),
            Verdict::holds(again == text, "re-serialization differs"),
        ]))
    });
    s.check("channel distance is a metric", 200, |rng| {
        let (x, y) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let a = random_channel(rng, x, y)?;
        let b = random_channel(rng, x, y)?;
        let c = random_channel(rng, x, y)?;
        let (ab, ba) = (channel_distance(&a, &b)?, channel_distance(&b, &a)?);
        let slack = ab - channel_distance(&a, &c)? - channel_distance(&c, &b)?;
        Ok(all([
            Verdict::holds(ab == ba, "asymmetric"),
            Verdict::holds(channel_distance(&a, &a)? == 0.0, "nonzero self distance"),
            Verdict::at_most(slack, 1e-12, "triangle inequality"),
        ]))
    });
}

fn ordering_suite(s: &mut Suite) {
    let tol = s.cfg.tol;
    s.check("degradedness soundness", 200, |rng| {
        let pair = degraded_pair(rng, 5, 5, 4)?;
        let r = is_input_degraded(&pair.worse, &pair.better, &tol)?;
        let Some(v) = r.intertwiner else {
            return Ok(Verdict::holds(false, "constructed degraded pair reported not degraded"));
        };
        let err = channel_distance(&compose(&pair.better, &v)?, &pair.worse)?;
        Ok(Verdict::at_most(err, 1e-7, "recovered intertwiner error"))
    });
    s.check("degradedness refutation", 200, |rng| {
        let (w, wp) = non_degraded_pair(rng, 5, 5, 4, &tol)?;
        let r = is_input_degraded(&w, &wp, &tol)?;
        let Some(f) = r.refutation else {
            return Ok(Verdict::holds(false, "planted pair reported degraded"));
        };
        let lhs = dot(&f.payoff, w.row(f.row_index).probs());
        let rhs = wp.rows().iter().map(|r| dot(&f.payoff, r.probs())).fold(f64::NEG_INFINITY, f64::max);
        let scale = f.payoff.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        Ok(all([
            Verdict::holds(f.gap > 0.0, "non-positive gap"),
            Verdict::holds(lhs > rhs + f.gap * (1.0 - 1e-6), "strict gap inequality fails"),
            Verdict::at_most((scale - 1.0).abs(), 1e-12, "payoff normalization"),
        ]))
    });
    s.check("degradedness is transitive", 100, |rng| {
        let y = rng.random_range(1..=4);
        let c = channel_in(rng, 1..=5, y..=y)?;
        let b = compose(&c, &channel_in(rng, 1..=5, c.input_size()..=c.input_size())?)?;
        let a = compose(&b, &channel_in(rng, 1..=5, b.input_size()..=b.input_size())?)?;
        let (Some(v_ab), Some(v_bc)) = (
            is_input_degraded(&a, &b, &tol)?.intertwiner,
            is_input_degraded(&b, &c, &tol)?.intertwiner,
        ) else {
            return Ok(Verdict::holds(false, "chain link reported not degraded"));
        };
        let chained = compose(&c, &compose(&v_bc, &v_ab)?)?;
        Ok(all([
            Verdict::holds(is_input_degraded(&a, &c, &tol)?.degraded, "end-to-end not degraded"),
            Verdict::at_most(channel_distance(&chained, &a)?, 1e-7, "composed intertwiner error"),
        ]))
    });
    s.check("canonical representative is equivalent", 500, |rng| {
        let w = channel_in(rng, 1..=6, 1..=4)?;
        let rep = canonical_representative(&w, &tol)?;
        Ok(all([
            Verdict::holds(is_input_equivalent(&w, &rep, &tol)?, "not equivalent to representative"),
            Verdict::holds(input_rank(&rep, &tol)? == rep.input_size(), "representative has redundant rows"),
        ]))
    });
    s.check("similarity metric axioms", 300, |rng| {
        let y = rng.random_range(1..=4);
        let draw = |rng: &mut SeededRng| channel_in(rng, 1..=4, y..=y);
        let (a, b, c) = (draw(rng)?, draw(rng)?, draw(rng)?);
        let ab = similarity_distance(&a, &b, &tol)?;
        let ba = similarity_distance(&b, &a, &tol)?;
        let slack = ab - similarity_distance(&a, &c, &tol)? - similarity_distance(&c, &b, &tol)?;
        Ok(all([
            Verdict::holds(ab == ba, format!("asymmetric: {ab} vs {ba}")),
            Verdict::at_most(slack, 1e-7, "triangle inequality"),
        ]))
    });
    s.check("zero similarity iff equivalent", 200, |rng| {
        let w = channel_in(rng, 1..=4, 1..=4)?;
        let other = match rng.random_range(0..3) {
            0 => {
                let from = rng.random_range(w.input_size()..=w.input_size() + 3);
                let f = random_surjection(rng, from, w.input_size())?;
                compose(&w, &deterministic(&f, w.input_size())?)?
            }
            1 => {
                let mut rows: Vec<Vec<f64>> = w.matrix();
                rows.push(mixture(rng, w.rows()));
                Channel::validate(rows)?
            }
            _ => channel_in(rng, 1..=4, w.output_size()..=w.output_size())?,
        };
        let d = similarity_distance(&w, &other, &tol)?;
        let eq = is_input_equivalent(&w, &other, &tol)?;
        Ok(Verdict::holds((d <= 1e-8) == eq, format!("distance {d:e} but equivalent = {eq}")))
    });
    s.check("similarity dominated by channel distance", 1000, |rng| {
        let (x, y) = (rng.random_range(1..=5), rng.random_range(1..=4));
        let a = random_channel(rng, x, y)?;
        let b = random_channel(rng, x, y)?;
        let excess = similarity_distance(&a, &b, &tol)? - channel_distance(&a, &b)?;
        Ok(Verdict::at_most(excess, 1e-9, "similarity exceeds channel distance"))
    });
    s.check("binary outputs have rank at most two", 1000, |rng| {
        let w = channel_in(rng, 1..=8, 2..=2)?;
        let r = input_rank(&w, &tol)?;
        Ok(Verdict::holds(r <= 2, format!("rank {r}")))
    });
    s.check("unary outputs have rank one", 1000, |rng| {
        let w = channel_in(rng, 1..=8, 1..=1)?;
        let r = input_rank(&w, &tol)?;
        Ok(Verdict::holds(r == 1, format!("rank {r}")))
    });
    s.check("sum hull decomposition agrees with direct membership", 500, |rng| {
        let w1 = channel_in(rng, 1..=4, 1..=3)?;
        let w2 = channel_in(rng, 1..=4, 1..=3)?;
        let sum = channel_sum(&w1, &w2);
        let q = query_point(rng, sum.rows())?;
        let (c1, c2) = (characteristic(&w1, &tol)?, characteristic(&w2, &tol)?);
        let split = decompose_sum_point(&q, sum.output_labels(), &c1, &c2, &tol)?;
        let direct = hull_membership(&q, sum.rows(), &tol)?.is_inside();
        let mut v = Verdict::holds(split.is_some() == direct, "verdicts disagree");
        if let Some(dec) = split {
            v = v.and(Verdict::at_most(
                max_abs_diff(&dec.reconstruct(&c1, &c2), q.probs()),
                1e-7,
                "reconstruction",
            ));
        }
        Ok(v)
    });
    s.check("product hull membership agrees with direct membership", 500, |rng| {
        let w1 = channel_in(rng, 1..=3, 1..=3)?;
        let w2 = channel_in(rng, 1..=3, 1..=3)?;
        let prod = channel_product(&w1, &w2);
        let q = query_point(rng, prod.rows())?;
        let (c1, c2) = (characteristic(&w1, &tol)?, characteristic(&w2, &tol)?);
        let m = product_hull_membership(&q, prod.output_labels(), &c1, &c2, &tol)?;
        let direct = hull_membership(&q, prod.rows(), &tol)?.is_inside();
        let mut v = Verdict::holds(m.is_inside() == direct, "verdicts disagree");
        if let Some(w) = m.weights() {
            let gens = product_generators(&c1, &c2);
            v = v.and(Verdict::at_most(max_abs_diff(&combine(w, &gens), q.probs()), 1e-7, "reconstruction"));
        }
        Ok(v)
    });
    s.check("similarity is Lipschitz under sums and products", 300, |rng| {
        let (y1, y2) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let draw = |rng: &mut SeededRng, y| channel_in(rng, 1..=3, y..=y);
        let (a1, b1, a2, b2) = (draw(rng, y1)?, draw(rng, y1)?, draw(rng, y2)?, draw(rng, y2)?);
        let bound = similarity_distance(&a1, &b1, &tol)? + similarity_distance(&a2, &b2, &tol)?;
        let sum = similarity_distance(&channel_sum(&a1, &a2), &channel_sum(&b1, &b2), &tol)?;
        let prod = similarity_distance(&channel_product(&a1, &a2), &channel_product(&b1, &b2), &tol)?;
        Ok(all([
            Verdict::at_most(sum - bound, 1e-7, "sum"),
            Verdict::at_most(prod - bound, 1e-7, "product"),
        ]))
    });
    s.check("sums and products preserve degradedness", 100, |rng| {
        let p1 = degraded_pair(rng, 3, 3, 3)?;
        let p2 = degraded_pair(rng, 3, 3, 3)?;
        let sum = is_input_degraded(&channel_sum(&p1.worse, &p2.worse), &channel_sum(&p1.better, &p2.better), &tol)?;
        let prod = is_input_degraded(
            &channel_product(&p1.worse, &p2.worse),
            &channel_product(&p1.better, &p2.better),
            &tol,
        )?;
        Ok(all([
            Verdict::holds(sum.degraded, "sum not degraded"),
            Verdict::holds(prod.degraded, "product not degraded"),
        ]))
    });
}

/// All compositions of `total` into `parts` nonnegative parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn coding_suite(s: &mut Suite) {
    let cfg = s.cfg.clone();
    s.check("decoder error is monotone under degradation", 100, |rng| {
        let pair = degraded_pair(rng, 5, 5, 3)?;
        let from = pair.worse.input_size() + rng.random_range(0..=2);
        let f = random_surjection(rng, from, pair.worse.input_size())?;
        let equivalent = compose(&pair.worse, &deterministic(&f, pair.worse.input_size())?)?;
        let mut verdicts = Vec::new();
        for _ in 0..20 {
            let (n, m) = (rng.random_range(1..=2), rng.random_range(1..=3));
            let d = random_decoder(rng, n, m, pair.worse.output_size())?;
            let worse = pe_decoder_ml(&pair.worse, &d, cfg.coding_cap)?;
            let better = pe_decoder_ml(&pair.better, &d, cfg.coding_cap)?;
            let same = pe_decoder_ml(&equivalent, &d, cfg.coding_cap)?;
            verdicts.push(Verdict::at_most(better - worse, 1e-9, "better channel has larger error"));
            verdicts.push(Verdict::at_most((same - worse).abs(), 1e-9, "equivalent channel differs"));
        }
        Ok(all(verdicts))
    });
    s.check("estimation is monotone under degradation", 100, |rng| {
        let pair = degraded_pair(rng, 5, 5, 4)?;
        let mut verdicts = Vec::new();
        for _ in 0..1000 {
            let u = rng.random_range(1..=3);
            let p = random_distribution(rng, u);
            let d = random_channel(rng, pair.worse.output_size(), u)?;
            let worse = pc(&p, &pair.worse, &d)?.success_probability;
            let better = pc(&p, &pair.better, &d)?.success_probability;
            verdicts.push(Verdict::at_most(worse - better, 1e-9, "degraded channel estimates better"));
        }
        Ok(all(verdicts))
    });
    s.check("capacity and optimal error are class invariants", 100, |rng| {
        let w = channel_in(rng, 1..=3, 1..=3)?;
        let from = w.input_size() + rng.random_range(0..=2);
        let f = random_surjection(rng, from, w.input_size())?;
        let wf = compose(&w, &deterministic(&f, w.input_size())?)?;
        let c = capacity(&w, cfg.capacity_tol)?.capacity;
        let cf = capacity(&wf, cfg.capacity_tol)?.capacity;
        let (n, m) = (rng.random_range(1..=2), rng.random_range(1..=3));
        let pe = pe_opt(&w, n, m, cfg.coding_cap)?.error_probability;
        let pef = pe_opt(&wf, n, m, cfg.coding_cap)?.error_probability;
        Ok(all([
            Verdict::at_most((c - cf).abs(), 1e-6, "capacity"),
            Verdict::at_most((pe - pef).abs(), 1e-9, "optimal error"),
        ]))
    });
    s.check("deterministic encoders attain the estimation optimum", 50, |rng| {
        let (u, x, y) = (rng.random_range(1..=3), rng.random_range(1..=3), rng.random_range(1..=3));
        let p = random_distribution(rng, u);
        let w = random_channel(rng, x, y)?;
        let d = random_channel(rng, y, u)?;
        let grid: Vec<Vec<f64>> = compositions(20, x)
            .into_iter()
            .map(|c| c.into_iter().map(|k| k as f64 / 20.0).collect())
            .collect();
        // The success probability separates over source symbols, so the
        // supremum over grid encoders is taken row by row.
        let mut sup = 0.0;
        for (ui, &pu) in p.probs().iter().enumerate() {
            let score: Vec<f64> = w
                .rows()
                .iter()
                .map(|r| r.probs().iter().enumerate().map(|(yi, v)| v * d.prob(ui, yi)).sum())
                .collect();
            sup += pu * grid.iter().map(|e| dot(e, &score)).fold(f64::NEG_INFINITY, f64::max);
        }
        let got = pc(&p, &w, &d)?.success_probability;
        Ok(Verdict::at_most((got - sup).abs(), 1e-9, "grid supremum"))
    });
    s.check("optimal error is monotone under degradation", 100, |rng| {
        let pair = degraded_pair(rng, 4, 4, 3)?;
        let (n, m) = (rng.random_range(1..=2), rng.random_range(1..=3));
        let worse = pe_opt(&pair.worse, n, m, cfg.coding_cap)?.error_probability;
        let better = pe_opt(&pair.better, n, m, cfg.coding_cap)?.error_probability;
        Ok(Verdict::at_most(better - worse, 1e-9, "better channel has larger optimal error"))
    });
    s.check("binary symmetric capacity closed form", 50, |rng| {
        let p: f64 = rng.random_range(0.0..=0.5);
        let h = if p > 0.0 { -p * p.ln() - (1.0 - p) * (1.0 - p).ln() } else { 0.0 };
        let c = capacity(&Channel::bsc(p)?, cfg.capacity_tol)?;
        Ok(all([
            Verdict::holds(c.converged, "iteration did not converge"),
            Verdict::at_most((c.capacity - (std::f64::consts::LN_2 - h)).abs(), cfg.capacity_tol + 1e-12, "capacity"),
        ]))
    });
}

fn games_suite(s: &mut Suite) {
    let cfg = s.cfg.clone();
    let tol = cfg.tol;
    s.check("payoff is affine in the strategy", 300, |rng| {
        let w = channel_in(rng, 1..=4, 1..=4)?;
        let z = rng.random_range(1..=3);
        let g = random_game(rng, z, w.clone())?;
        let s1 = random_channel(rng, z, w.input_size())?;
        let s2 = random_channel(rng, z, w.input_size())?;
        let a: f64 = rng.random_range(0.0..=1.0);
        let mixed = Channel::validate(
            s1.rows()
                .iter()
                .zip(s2.rows())
                .map(|(r1, r2)| r1.probs().iter().zip(r2.probs()).map(|(p, q)| a * p + (1.0 - a) * q).collect())
                .collect(),
        )?;
        let v1 = payoff_vector(&s1, &g)?;
        let v2 = payoff_vector(&s2, &g)?;
        let vm = payoff_vector(&mixed, &g)?;
        let err = vm
            .iter()
            .zip(v1.iter().zip(&v2))
            .map(|(m, (p, q))| (m - (a * p + (1.0 - a) * q)).abs())
            .fold(0.0, f64::max);
        Ok(Verdict::at_most(err, 1e-12, "affinity"))
    });
    s.check("optimal payoff is the best vertex average", 300, |rng| {
        let w = channel_in(rng, 1..=4, 1..=4)?;
        let z = rng.random_range(1..=3);
        let g = random_game(rng, z, w)?;
        let best = achievable_region_vertices(&g, cfg.region_cap)?
            .iter()
            .map(|v| v.iter().sum::<f64>() / v.len() as f64)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Verdict::at_most((optimal_average_payoff(&g).value - best).abs(), 1e-12, "optimum"))
    });
    s.check("mixed strategy payoffs lie in the region", 200, |rng| {
        let w = channel_in(rng, 1..=4, 1..=4)?;
        let z = rng.random_range(1..=3);
        let g = random_game(rng, z, w.clone())?;
        let strategy = random_channel(rng, z, w.input_size())?;
        let v = payoff_vector(&strategy, &g)?;
        Ok(Verdict::holds(
            region_contains(&g, &v, &tol, cfg.region_cap)?.is_inside(),
            "mixed payoff outside the vertex hull",
        ))
    });
    s.check("degraded pairs satisfy region inclusion and payoff domination", 50, |rng| {
        let pair = degraded_pair(rng, 5, 5, 4)?;
        let seed = rng.random();
        let report = check_bss(&pair.worse, &pair.better, 20, seed, &tol, cfg.region_cap)?;
        let worst = report
            .trials
            .iter()
            .map(|t| t.optimal_lhs - t.optimal_rhs)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Verdict::holds(report.passed && report.trials.len() == 20, "a sampled game failed")
            .and(Verdict::at_most(worst, 1e-9, "payoff domination")))
    });
    s.check("non-degraded pairs yield a violating game", 50, |rng| {
        let (w, wp) = non_degraded_pair(rng, 5, 5, 4, &tol)?;
        let report = check_bss(&w, &wp, 0, 0, &tol, cfg.region_cap)?;
        let (Some(wit), Some(f)) = (report.witness, report.certificate.refutation) else {
            return Ok(Verdict::holds(false, "no witness game produced"));
        };
        Ok(all([
            Verdict::holds(wit.optimal_lhs > wit.optimal_rhs, "witness does not violate domination"),
            Verdict::at_most((wit.gap - f.gap).abs(), 1e-7, "witness gap vs refutation gap"),
        ]))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run("nope", &VerifyConfig::new(1)), Err(Error::Malformed(_))));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(20, 3).len(), 231);
        assert_eq!(compositions(4, 1), vec![vec![4]]);
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = VerifyConfig::new(7);
        let a = run("channel", &cfg).unwrap();
        let b = run("channel", &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.passed, "{a:?}");
    }
}
