//! Command-line front end. Every object is exchanged as one JSON file.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::channel::{channel_distance, channel_product, channel_sum, compose, Channel};
use crate::coding::{self, capacity, pc, pe_decoder_ml, pe_encoder, pe_opt, Decoder, Encoder};
use crate::error::{Error, Result};
use crate::games::{self, achievable_region_vertices, check_bss, optimal_average_payoff, region_contains, RandomizedGame};
use crate::geometry::{Distribution, ToleranceConfig};
use crate::json::{read_file, to_canonical_string, to_pretty_string, write_file};
use crate::ordering::{
    characteristic, input_rank, is_input_degraded, is_input_equivalent, similarity_distance,
    Characteristic,
};
use crate::random::{random_channel, random_decoder, random_distribution, random_game, rng};
use crate::verify::{self, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "chanorder", version, about = "Compare discrete memoryless channels by input degradation")]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, env = "CHANORDER_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Feasibility, deduplication and capacity tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Enumeration cap for exhaustive computations.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Args, Debug)]
pub struct Pair {
    #[arg(long)]
    pub lhs: PathBuf,
    #[arg(long)]
    pub rhs: PathBuf,
}

#[derive(Args, Debug)]
pub struct PairOut {
    #[command(flatten)]
    pub pair: Pair,
    /// Write the resulting channel here instead of printing it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Channel,
    Decoder,
    Encoder,
    Game,
    Characteristic,
    Distribution,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a file holds a well-formed object.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Channel)]
        kind: Kind,
    },
    /// Channel that applies INNER first and then OUTER.
    Compose {
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Block-diagonal sum of two channels.
    Sum(PairOut),
    /// Parallel product of two channels.
    Product(PairOut),
    /// Worst-row total variation distance between equal-shape channels.
    Distance(Pair),
    /// Decide whether LHS is input-degraded from RHS.
    Degraded(Pair),
    /// Print the intertwiner V with LHS = RHS ∘ V; fails when none exists.
    Intertwiner(PairOut),
    /// Convex-extreme rows of a channel.
    Characteristic {
        #[arg(long)]
        channel: PathBuf,
    },
    /// Number of convex-extreme rows.
    Rank {
        #[arg(long)]
        channel: PathBuf,
    },
    /// Decide whether two channels are input-equivalent.
    Equivalent(Pair),
    /// Hausdorff distance between the row hulls.
    Similarity(Pair),
    /// Capacity in nats.
    Capacity {
        #[arg(long)]
        channel: PathBuf,
    },
    /// Error probability of a decoder under likelihood-maximizing inputs.
    PeDecoder {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        decoder: PathBuf,
    },
    /// Optimal error probability of (n, M) codes, or that of a given encoder.
    PeOpt {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, short = 'n', default_value_t = 1)]
        n: usize,
        #[arg(long, short = 'M', default_value_t = 2)]
        messages: usize,
        /// Evaluate this encoder under ML decoding instead of optimizing.
        #[arg(long)]
        encoder: Option<PathBuf>,
    },
    /// Best probability of recovering a source through a channel and estimator.
    Pc {
        #[arg(long)]
        channel: PathBuf,
        /// Source distribution over U, as a JSON array.
        #[arg(long)]
        source: PathBuf,
        /// Estimator channel from Y to U.
        #[arg(long)]
        estimator: PathBuf,
    },
    /// Optimal average payoff of a game.
    GameOpt {
        #[arg(long)]
        game: PathBuf,
    },
    /// Vertices of the achievable payoff region.
    GameRegion {
        #[arg(long)]
        game: PathBuf,
        /// Comma-separated payoff vector to test for membership.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<f64>>,
    },
    /// Check the game characterization of degradedness on a pair.
    CheckBss {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Emit seeded random objects.
    Gen {
        #[command(subcommand)]
        what: GenKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run a named invariant suite: geometry, channel, ordering, coding, games or all.
    Verify { suite: String },
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    Channel {
        #[arg(long)]
        inputs: usize,
        #[arg(long)]
        outputs: usize,
    },
    Decoder {
        #[arg(long, short = 'n')]
        n: usize,
        #[arg(long, short = 'M')]
        messages: usize,
        #[arg(long)]
        outputs: usize,
    },
    Game {
        #[arg(long)]
        contexts: usize,
        #[arg(long)]
        inputs: usize,
        #[arg(long)]
        outputs: usize,
    },
    Distribution {
        #[arg(long)]
        size: usize,
    },
}

/// Result of a command: a JSON value, a human rendering, and whether the
/// command's assertion held.
struct Outcome {
    value: Value,
    human: String,
    ok: bool,
}

impl Outcome {
    fn new<T: Serialize>(value: &T) -> Result<Outcome> {
        let value = serde_json::to_value(value)?;
        let human = to_pretty_string(&value)?.trim_end().to_string();
        Ok(Outcome { value, human, ok: true })
    }

    fn scalar(key: &str, v: Value) -> Outcome {
        let human = format!("{key}: {v}");
        Outcome {
            value: json!({ key: v }),
            human,
            ok: true,
        }
    }

    fn failing(mut self) -> Outcome {
        self.ok = false;
        self
    }
}

struct Ctx {
    tol: ToleranceConfig,
    capacity_tol: f64,
    coding_cap: u64,
    region_cap: u64,
    seed: u64,
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    read_file(path)
}

fn emit_channel(ch: &Channel, out: &Option<PathBuf>) -> Result<Outcome> {
    match out {
        Some(path) => {
            write_file(path, ch)?;
            let mut o = Outcome::new(ch)?;
            o.human = format!("wrote {}x{} channel to {}", ch.input_size(), ch.output_size(), path.display());
            Ok(o)
        }
        None => Outcome::new(ch),
    }
}

fn execute(cmd: &Command, ctx: &Ctx) -> Result<Outcome> {
    let tol = &ctx.tol;
    match cmd {
        Command::Validate { file, kind } => {
            let summary = match kind {
                Kind::Channel => {
                    let w: Channel = load(file)?;
                    format!("channel with {} inputs and {} outputs", w.input_size(), w.output_size())
                }
                Kind::Decoder => {
                    let d: Decoder = load(file)?;
                    format!("decoder with n = {}, M = {}", d.blocklength(), d.message_count())
                }
                Kind::Encoder => {
                    let e: Encoder = load(file)?;
                    format!("encoder with n = {}, M = {}", e.blocklength(), e.message_count())
                }
                Kind::Game => {
                    let g: RandomizedGame = load(file)?;
                    format!("game with {} contexts", g.z_size())
                }
                Kind::Characteristic => {
                    let c: Characteristic = load(file)?;
                    format!("characteristic with {} points", c.len())
                }
                Kind::Distribution => {
                    let p: Distribution = load(file)?;
                    format!("distribution over {} symbols", p.len())
                }
            };
            Ok(Outcome {
                value: json!({"valid": true, "summary": summary}),
                human: format!("valid {summary}"),
                ok: true,
            })
        }
        Command::Compose { outer, inner, out } => {
            emit_channel(&compose(&load(outer)?, &load(inner)?)?, out)
        }
        Command::Sum(p) => emit_channel(&channel_sum(&load(&p.pair.lhs)?, &load(&p.pair.rhs)?), &p.out),
        Command::Product(p) => {
            emit_channel(&channel_product(&load(&p.pair.lhs)?, &load(&p.pair.rhs)?), &p.out)
        }
        Command::Distance(p) => {
            let d = channel_distance(&load(&p.lhs)?, &load(&p.rhs)?)?;
            Ok(Outcome::scalar("distance", json!(d)))
        }
        Command::Degraded(p) => {
            let r = is_input_degraded(&load(&p.lhs)?, &load(&p.rhs)?, tol)?;
            let mut o = Outcome::new(&r)?;
            if let Some(f) = &r.refutation {
                o.human = format!(
                    "not degraded: input {} beats every row of rhs by {:.6e} under payoff {:?}",
                    f.row_index, f.gap, f.payoff
                );
            }
            Ok(o)
        }
        Command::Intertwiner(p) => {
            let r = is_input_degraded(&load(&p.pair.lhs)?, &load(&p.pair.rhs)?, tol)?;
            match &r.intertwiner {
                Some(v) => emit_channel(v, &p.out),
                None => Ok(Outcome::new(&r)?.failing()),
            }
        }
        Command::Characteristic { channel } => Outcome::new(&characteristic(&load(channel)?, tol)?),
        Command::Rank { channel } => Ok(Outcome::scalar("input_rank", json!(input_rank(&load(channel)?, tol)?))),
        Command::Equivalent(p) => {
            let eq = is_input_equivalent(&load(&p.lhs)?, &load(&p.rhs)?, tol)?;
            Ok(Outcome::scalar("equivalent", json!(eq)))
        }
        Command::Similarity(p) => {
            let d = similarity_distance(&load(&p.lhs)?, &load(&p.rhs)?, tol)?;
            Ok(Outcome::scalar("similarity", json!(d)))
        }
        Command::Capacity { channel } => {
            let c = capacity(&load(channel)?, ctx.capacity_tol)?;
            let mut o = Outcome::new(&c)?;
            o.human = format!("capacity: {} nats (upper bound {})", c.capacity, c.upper_bound);
            Ok(o)
        }
        Command::PeDecoder { channel, decoder } => {
            let pe = pe_decoder_ml(&load(channel)?, &load(decoder)?, ctx.coding_cap)?;
            Ok(Outcome::scalar("error_probability", json!(pe)))
        }
        Command::PeOpt { channel, n, messages, encoder } => {
            let w: Channel = load(channel)?;
            match encoder {
                Some(path) => {
                    let pe = pe_encoder(&w, &load(path)?, ctx.coding_cap)?;
                    Ok(Outcome::scalar("error_probability", json!(pe)))
                }
                None => Outcome::new(&pe_opt(&w, *n, *messages, ctx.coding_cap)?),
            }
        }
        Command::Pc { channel, source, estimator } => {
            let p: Distribution = load(source)?;
            Outcome::new(&pc(&p, &load(channel)?, &load(estimator)?)?)
        }
        Command::GameOpt { game } => Outcome::new(&optimal_average_payoff(&load(game)?)),
        Command::GameRegion { game, point } => {
            let g: RandomizedGame = load(game)?;
            let vertices = achievable_region_vertices(&g, ctx.region_cap)?;
            let mut value = json!({ "vertices": vertices });
            if let Some(v) = point {
                let m = region_contains(&g, v, tol, ctx.region_cap)?;
                value["membership"] = serde_json::to_value(&m)?;
            }
            Outcome::new(&value)
        }
        Command::CheckBss { pair, trials } => {
            let report = check_bss(&load(&pair.lhs)?, &load(&pair.rhs)?, *trials, ctx.seed, tol, ctx.region_cap)?;
            let mut o = Outcome::new(&report)?;
            o.human = if let Some(w) = &report.witness {
                format!(
                    "not degraded; witness payoff {:?} scores {} against {} (gap {:.6e})",
                    w.game.payoff()[0],
                    w.optimal_lhs,
                    w.optimal_rhs,
                    w.gap
                )
            } else {
                let good = report.trials.iter().filter(|t| t.passed()).count();
                format!("degraded; {good}/{} sampled games consistent", report.trials.len())
            };
            o.ok = report.passed;
            Ok(o)
        }
        Command::Gen { what, out } => {
            let mut r = rng(ctx.seed);
            let value = match what {
                GenKind::Channel { inputs, outputs } => {
                    serde_json::to_value(random_channel(&mut r, *inputs, *outputs)?)?
                }
                GenKind::Decoder { n, messages, outputs } => {
                    serde_json::to_value(random_decoder(&mut r, *n, *messages, *outputs)?)?
                }
                GenKind::Game { contexts, inputs, outputs } => {
                    if *contexts == 0 {
                        return Err(Error::Precondition("a game needs at least one context".into()));
                    }
                    let w = random_channel(&mut r, *inputs, *outputs)?;
                    serde_json::to_value(random_game(&mut r, *contexts, w)?)?
                }
                GenKind::Distribution { size } => {
                    if *size == 0 {
                        return Err(Error::Precondition("distribution size must be positive".into()));
                    }
                    serde_json::to_value(random_distribution(&mut r, *size))?
                }
            };
            let mut o = Outcome::new(&value)?;
            if let Some(path) = out {
                write_file(path, &value)?;
                o.human = format!("wrote {}", path.display());
            }
            Ok(o)
        }
        Command::Verify { suite } => {
            let cfg = VerifyConfig {
                seed: ctx.seed,
                tol: ctx.tol,
                capacity_tol: ctx.capacity_tol,
                coding_cap: ctx.coding_cap,
                region_cap: ctx.region_cap,
            };
            let report = verify::run(suite, &cfg)?;
            let mut lines = Vec::new();
            for s in &report.suites {
                for c in &s.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    lines.push(format!(
                        "{status} {}/{} ({} cases, max excess {:.3e})",
                        s.suite, c.name, c.cases, c.max_violation
                    ));
                    if let Some(f) = &c.first_failure {
                        lines.push(format!("     {f}"));
                    }
                }
            }
            lines.push(if report.passed { "all checks passed".into() } else { "some checks failed".into() });
            Ok(Outcome {
                value: serde_json::to_value(&report)?,
                human: lines.join("\n"),
                ok: report.passed,
            })
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Numerical(_) => 1,
        _ => 2,
    }
}

fn context(cli: &Cli) -> Result<Ctx> {
    let mut tol = ToleranceConfig::default();
    let mut capacity_tol = 1e-9;
    if let Some(t) = cli.tol {
        tol.feasibility_tol = t;
        tol.dedup_tol = t;
        capacity_tol = t;
    }
    tol.validate()?;
    let cap = cli.cap;
    if cap == Some(0) {
        return Err(Error::Precondition("cap must be positive".into()));
    }
    Ok(Ctx {
        tol,
        capacity_tol,
        coding_cap: cap.unwrap_or(coding::DEFAULT_CODING_CAP),
        region_cap: cap.unwrap_or(games::DEFAULT_REGION_CAP),
        seed: cli.seed,
    })
}

/// Parses `args` and runs the command, writing to `out` and `err`.
/// Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = context(&cli).and_then(|ctx| execute(&cli.command, &ctx));
    match (result, cli.format) {
        (Ok(o), Format::Json) => {
            let text = to_canonical_string(&o.value).unwrap_or_else(|e| format!("{{\"error\":\"{e}\"}}\n"));
            let _ = out.write_all(text.as_bytes());
            if o.ok { 0 } else { 1 }
        }
        (Ok(o), Format::Human) => {
            let _ = writeln!(out, "{}", o.human);
            if o.ok { 0 } else { 1 }
        }
        (Err(e), Format::Json) => {
            let obj = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            let _ = out.write_all(to_canonical_string(&obj).unwrap_or_default().as_bytes());
            exit_code(&e)
        }
        (Err(e), Format::Human) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
