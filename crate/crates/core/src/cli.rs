//! Command-line front end. `run_cli` is the whole program; the binary only
//! forwards `std::env::args` to it.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analytics::{
    bucket_probs, honor_combo_prob, moments, point_distribution, prob_safe_min_bid, strategy_combos, ComboSet,
    REFERENCE_COMBO_PROBS,
};
use crate::deck::{Hand, PointScale};
use crate::harness::{
    enumerate_splits, reproduce_fixtures, run_tournament, simulate_nt_bidding, table3_hands, write_csv, Meta, SimConfig,
    SplitConfig, SplitMode, TournamentConfig, TournamentReport,
};
use crate::play::OpeningLead;
use crate::policy::{parse_seats, PlaySpec, Thresholds};
use crate::scoring::Scheme;
use crate::service::{SeatKind, SessionConfig, SessionManager, DEFAULT_PORT, PORT_ENV};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_250_101;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedArg(pub Option<u64>);

impl FromStr for SeedArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("random") {
            return Ok(SeedArg(None));
        }
        s.parse().map(|v| SeedArg(Some(v))).map_err(|_| format!("seed must be an integer or \"random\", got {s:?}"))
    }
}

impl SeedArg {
    fn resolve(self) -> u64 {
        self.0.unwrap_or_else(rand::random)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "tribridge", version, about = "Three-player auction bridge engine and experiment harness")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// RNG seed, or "random"
    #[arg(long, global = true, default_value_t = SeedArg(Some(DEFAULT_SEED)))]
    seed: SeedArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl std::fmt::Display for SeedArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("random"),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact probabilities
    Prob {
        #[command(subcommand)]
        what: ProbCmd,
    },
    /// Distribution of hand points
    Dist {
        #[command(subcommand)]
        what: DistCmd,
    },
    /// Monte Carlo bidding simulation
    Simulate {
        #[command(subcommand)]
        what: SimulateCmd,
    },
    /// Multi-deal match between three seat configurations
    Tournament {
        /// Three seat specs, e.g. general,hcf+attack,points:20,25,30
        #[arg(long, default_value = "general,general,general")]
        seats: String,
        #[arg(short = 'n', long = "deals", default_value_t = 12)]
        deals: u64,
        #[arg(long, default_value = "prev,new")]
        schemes: String,
        #[arg(long, default_value = "preceding")]
        lead: OpeningLead,
        /// CSV with one settlement row per deal and scheme instead of score columns
        #[arg(long)]
        settlements: bool,
    },
    /// Play out every (or sampled) split of the 26 unseen cards
    Enumerate {
        /// `table3:<row>` or a file with the declarer hand and phantom hand on two lines
        #[arg(long)]
        hands: String,
        #[arg(long, conflicts_with = "sample")]
        exact: bool,
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value = "general")]
        play: PlaySpec,
        #[arg(long, default_value = "preceding")]
        lead: OpeningLead,
    },
    /// Replay the worked examples
    Fixtures {
        #[arg(value_parser = ["example1"])]
        name: String,
        #[arg(long, default_value = "preceding")]
        lead: OpeningLead,
    },
    /// Population moments of a list of values
    Stats {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        values: Vec<f64>,
    },
    /// Start a live session and serve it
    Play {
        #[arg(long)]
        interactive: bool,
        /// Seat list; "human" marks human seats
        #[arg(long, default_value = "human,general+defensive,general+attack")]
        seats: String,
        #[arg(long)]
        port: Option<u16>,
    },
    /// Run the session server
    Serve {
        #[arg(long)]
        port: Option<u16>,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Debug, Subcommand)]
enum ProbCmd {
    /// Probability of exactly ten cards in a named suit
    SafeMinBid,
    /// Honor-combination probability: `strategy1`..`strategy3`, `all`, or combos like 4A+3K,4A+2K+1Q
    Combos { spec: String },
}

#[derive(Debug, Subcommand)]
enum DistCmd {
    Points {
        /// e.g. A=5,K=4,Q=3,J=2,T=1
        #[arg(long)]
        scale: Option<String>,
        /// e.g. 20,25,30
        #[arg(long)]
        thresholds: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum SimulateCmd {
    /// Seat 1 bids 1-3NT by point count; qualifying deals are played out
    Nt {
        #[arg(long, default_value = "20,25,30")]
        thresholds: String,
        #[arg(short = 'n', long = "deals", default_value_t = 100_000)]
        deals: u64,
        #[arg(long, default_value = "general")]
        play: PlaySpec,
        #[arg(long, default_value = "preceding")]
        lead: OpeningLead,
    },
}

/// Failure of a subcommand after arguments parsed.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Runtime(e.to_string())
    }
}

struct Report {
    table: String,
    csv: (Vec<String>, Vec<Vec<String>>),
    json: serde_json::Value,
}

impl Report {
    fn render(&self, format: Format) -> Result<Vec<u8>, Failure> {
        Ok(match format {
            Format::Table => self.table.clone().into_bytes(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s.into_bytes()
            }
            Format::Csv => {
                let mut buf = Vec::new();
                let header: Vec<&str> = self.csv.0.iter().map(String::as_str).collect();
                write_csv(&mut buf, &header, &self.csv.1).map_err(|e| Failure::Runtime(e.to_string()))?;
                buf
            }
        })
    }
}

fn strings<const N: usize>(xs: [&str; N]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn meta<C: Serialize, B: Serialize>(seed: u64, config: C, body: B) -> serde_json::Value {
    serde_json::to_value(Meta::new(seed, config, body)).expect("report serialises")
}

fn prob_report(cmd: &ProbCmd, seed: u64) -> Result<Report, Failure> {
    match cmd {
        ProbCmd::SafeMinBid => {
            let p = prob_safe_min_bid();
            let table = format!(
                "P(exactly ten cards of a named suit) = {:.5e}\n  exact: {} / {}\n",
                p.value(),
                p.numerator,
                p.denominator
            );
            Ok(Report {
                table,
                csv: (strings(["value", "numerator", "denominator"]), vec![vec![
                    format!("{:e}", p.value()),
                    p.numerator.to_string(),
                    p.denominator.to_string(),
                ]]),
                json: meta(seed, json!({"command": "prob safe-min-bid"}), &p),
            })
        }
        ProbCmd::Combos { spec } => {
            let sets: Vec<(String, ComboSet, Option<f64>)> = match spec.as_str() {
                "all" => (1..=3)
                    .map(|k| (format!("strategy{k}"), strategy_combos(k).unwrap(), Some(REFERENCE_COMBO_PROBS[k as usize - 1])))
                    .collect(),
                s if s.starts_with("strategy") => {
                    let k: u8 = s["strategy".len()..].parse().map_err(|_| Failure::Usage(format!("bad combo spec {s:?}")))?;
                    let set = strategy_combos(k).ok_or_else(|| Failure::Usage(format!("no {s}; use strategy1..3")))?;
                    vec![(s.to_string(), set, Some(REFERENCE_COMBO_PROBS[k as usize - 1]))]
                }
                s => vec![(s.to_string(), ComboSet::parse(s).map_err(|e| Failure::Usage(e.to_string()))?, None)],
            };
            let mut table = String::from("set        probability   exact                            published\n");
            let mut rows = Vec::new();
            let mut js = Vec::new();
            for (name, set, reference) in &sets {
                let p = honor_combo_prob(set)?;
                let reference_text = reference.map(|r| format!("{r:.2e}")).unwrap_or_else(|| "-".into());
                writeln!(
                    table,
                    "{name:<10} {:<13.5e} {:<32} {reference_text}",
                    p.value(),
                    format!("{}/{}", p.numerator, p.denominator)
                )
                .unwrap();
                rows.push(vec![
                    name.clone(),
                    set.to_string(),
                    format!("{:e}", p.value()),
                    p.numerator.to_string(),
                    p.denominator.to_string(),
                    reference.map(|r| format!("{r:e}")).unwrap_or_default(),
                ]);
                js.push(json!({"name": name, "combos": set, "probability": p, "published": reference}));
            }
            Ok(Report {
                table,
                csv: (strings(["set", "combos", "value", "numerator", "denominator", "published"]), rows),
                json: meta(seed, json!({"command": "prob combos", "spec": spec}), js),
            })
        }
    }
}

fn dist_report(scale: Option<&str>, thresholds: Option<&str>, seed: u64) -> Result<Report, Failure> {
    let scale = match scale {
        Some(s) => PointScale::parse(s).map_err(Failure::Usage)?,
        None => PointScale::default(),
    };
    let thresholds = thresholds.map(Thresholds::parse).transpose().map_err(Failure::Usage)?;
    let d = point_distribution(&scale);
    let mut table = String::from("points  hands            probability\n");
    let mut rows = Vec::new();
    for (p, &c) in d.counts.iter().enumerate() {
        writeln!(table, "{p:>6}  {c:<16} {:.10}", d.prob(p)).unwrap();
        rows.push(vec![p.to_string(), c.to_string(), format!("{:e}", d.prob(p))]);
    }
    writeln!(table, "mean {:.6}", d.mean()).unwrap();
    let buckets = match thresholds {
        Some(t) => {
            let b = bucket_probs(&d, t.get()).map_err(|e| Failure::Usage(e.to_string()))?;
            let [t1, t2, t3] = t.get();
            writeln!(table, "P({t1} <= X < {t2}) = {:.8}", b[0]).unwrap();
            writeln!(table, "P({t2} <= X < {t3}) = {:.8}", b[1]).unwrap();
            writeln!(table, "P(X >= {t3}) = {:.8}", b[2]).unwrap();
            Some(b)
        }
        None => None,
    };
    let probs: Vec<_> = d
        .counts
        .iter()
        .enumerate()
        .map(|(p, c)| json!({"points": p, "hands": c.to_string(), "probability": d.prob(p)}))
        .collect();
    Ok(Report {
        table,
        csv: (strings(["points", "hands", "probability"]), rows),
        json: meta(
            seed,
            json!({"command": "dist points", "scale": scale, "thresholds": thresholds}),
            json!({"total": d.total.to_string(), "mean": d.mean(), "distribution": probs, "buckets": buckets}),
        ),
    })
}

fn read_hands(spec: &str) -> Result<(Hand, Hand), Failure> {
    if let Some(row) = spec.strip_prefix("table3:") {
        let row: usize = row.parse().map_err(|_| Failure::Usage(format!("bad table3 row {row:?}")))?;
        return table3_hands(row).map_err(|e| Failure::Usage(e.to_string()));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::Runtime(format!("{spec}: {e}")))?;
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    if lines.len() != 2 {
        return Err(Failure::Runtime(format!("{spec}: expected two hand lines, found {}", lines.len())));
    }
    let parse = |l: &str| {
        let cleaned = l.replace(['[', ']', ','], " ");
        Hand::parse(cleaned.split_whitespace()).map_err(|e| Failure::Runtime(format!("{spec}: {e}")))
    };
    Ok((parse(lines[0])?, parse(lines[1])?))
}

fn resolve_port(flag: Option<u16>) -> Result<u16, Failure> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var(PORT_ENV) {
        Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("{PORT_ENV}={v:?} is not a port"))),
        Err(_) => Ok(DEFAULT_PORT),
    }
}

fn run_server(host: &str, port: u16, manager: Arc<SessionManager>, err: &mut dyn Write) -> Result<(), Failure> {
    let addr: SocketAddr =
        format!("{host}:{port}").parse().map_err(|_| Failure::Usage(format!("bad address {host}:{port}")))?;
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    let _ = writeln!(err, "listening on http://{addr}");
    rt.block_on(crate::service::serve(addr, manager))?;
    Ok(())
}

fn execute(cli: &Cli, seed: u64, err: &mut dyn Write) -> Result<Option<Report>, Failure> {
    let report = match &cli.command {
        Command::Prob { what } => prob_report(what, seed)?,
        Command::Dist { what: DistCmd::Points { scale, thresholds } } => {
            dist_report(scale.as_deref(), thresholds.as_deref(), seed)?
        }
        Command::Simulate { what: SimulateCmd::Nt { thresholds, deals, play, lead } } => {
            let t = Thresholds::parse(thresholds).map_err(Failure::Usage)?;
            let mut config = SimConfig::new(t, *deals);
            config.play = *play;
            config.lead = *lead;
            let r = simulate_nt_bidding(&config, seed)?;
            let mut table = format!("rule set {t}, {} deals, seed {seed}\nlevel  calls      made       failed\n", r.total_deals);
            for l in &r.levels {
                writeln!(table, "{}NT    {:<10} {:<10} {}", l.level, l.calls, l.made, l.failed).unwrap();
            }
            Report {
                table,
                csv: (strings(crate::harness::SimReport::csv_header()), r.csv_rows()),
                json: serde_json::to_value(r.with_meta())?,
            }
        }
        Command::Tournament { seats, deals, schemes, lead, settlements } => {
            let seats = parse_seats(seats).map_err(|e| Failure::Usage(e.to_string()))?;
            let schemes = schemes
                .split(',')
                .map(|s| Scheme::parse(s).ok_or_else(|| Failure::Usage(format!("unknown scheme {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let mut config = TournamentConfig::new(seats, *deals);
            config.schemes = schemes;
            config.lead = *lead;
            let r = run_tournament(&config, seed)?;
            let header = r.csv_header();
            let rows = r.csv_rows();
            let mut table = String::new();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
                .collect();
            for line in std::iter::once(&header).chain(&rows) {
                let cells: Vec<String> = line.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                writeln!(table, "{}", cells.join("  ").trim_end()).unwrap();
            }
            let csv = if *settlements {
                (TournamentReport::settlement_csv_header(), r.settlement_csv_rows())
            } else {
                (header, rows)
            };
            Report { table, csv, json: serde_json::to_value(r.with_meta(seed, &config))? }
        }
        Command::Enumerate { hands, exact, sample, play, lead } => {
            let (declarer, phantom) = read_hands(hands)?;
            let mut config = SplitConfig::new(declarer, phantom);
            config.play = [*play; 3];
            config.lead = *lead;
            let mode = if *exact { SplitMode::Exact } else { SplitMode::Sampled { n: sample.unwrap_or(10_000), seed } };
            let progress = |done: u64, total: u64| {
                if total >= 1_000_000 && done % 1_048_576 < 16_384 {
                    eprintln!("{done}/{total}");
                }
            };
            let d = enumerate_splits(&config, mode, Some(&progress))?;
            let mut table = format!("declarer {declarer}\nphantom  {phantom}\ntricks  frequency\n");
            for (t, f) in d.frequency.iter().enumerate() {
                writeln!(table, "{t:>6}  {f}").unwrap();
            }
            writeln!(table, "total   {}", d.total()).unwrap();
            Report {
                table,
                csv: (strings(["tricks", "frequency"]), d.csv_rows()),
                json: serde_json::to_value(d.with_meta(&config))?,
            }
        }
        Command::Fixtures { lead, .. } => {
            let r = reproduce_fixtures(*lead)?;
            let mut table = format!("example 1, declarer seat 1 at no-trump, opening lead: {lead}\n");
            table.push_str("strategy  per-seat      teams   published per-seat  published teams\n");
            let mut rows = Vec::new();
            for row in &r.rows {
                writeln!(
                    table,
                    "{:<9} {:<13} {:<7} {:<19} {:?}",
                    row.strategy.to_string(),
                    format!("{:?}", row.per_seat),
                    format!("{:?}", row.teams),
                    format!("{:?}", row.expected_per_seat),
                    row.expected_teams
                )
                .unwrap();
                let mut cells = vec![row.strategy.to_string()];
                cells.extend(row.per_seat.iter().map(u8::to_string));
                cells.extend(row.teams.iter().map(u8::to_string));
                cells.extend(row.expected_per_seat.iter().map(u8::to_string));
                rows.push(cells);
            }
            Report {
                table,
                csv: (
                    strings(["strategy", "seat0", "seat1", "seat2", "seat3", "team02", "team13", "pub0", "pub1", "pub2", "pub3"]),
                    rows,
                ),
                json: meta(seed, json!({"command": "fixtures example1", "lead": lead}), &r),
            }
        }
        Command::Stats { values } => {
            let m = moments(values).map_err(|e| Failure::Usage(e.to_string()))?;
            let opt = |x: Option<f64>| x.map_or("undefined".to_string(), |v| format!("{v:.6}"));
            let table = format!(
                "n {}\nmean {:.4}\nSD {:.1}\nskewness {}\nexcess kurtosis {}\n",
                m.n,
                m.mean,
                m.population_sd,
                opt(m.skewness),
                opt(m.excess_kurtosis)
            );
            let cell = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            Report {
                table,
                csv: (
                    strings(["n", "mean", "sd", "skewness", "excess_kurtosis"]),
                    vec![vec![m.n.to_string(), m.mean.to_string(), m.population_sd.to_string(), cell(m.skewness), cell(m.excess_kurtosis)]],
                ),
                json: meta(seed, json!({"command": "stats", "values": values}), m),
            }
        }
        Command::Play { interactive, seats, port } => {
            if !interactive {
                return Err(Failure::Usage("only `play --interactive` is supported".into()));
            }
            let kinds = seats
                .split(',')
                .map(|s| serde_json::from_value::<SeatKind>(json!(s.trim())))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let manager = Arc::new(SessionManager::new());
            let config = SessionConfig { seats: kinds, seed: Some(seed), auto_next_deal: true, lead: OpeningLead::default() };
            let created = manager.create(config).map_err(|e| Failure::Usage(e.to_string()))?;
            let port = resolve_port(*port)?;
            let _ = writeln!(
                err,
                "session {} (human seats {:?})\nview:   GET  /sessions/{}/seats/<seat>/view\nsocket: GET  /sessions/{}/seats/<seat>/ws\nact:    POST /sessions/{}/actions",
                created.session_id, created.human_seats, created.session_id, created.session_id, created.session_id
            );
            run_server("127.0.0.1", port, manager, err)?;
            return Ok(None);
        }
        Command::Serve { port, host } => {
            let port = resolve_port(*port)?;
            run_server(host, port, Arc::new(SessionManager::new()), err)?;
            return Ok(None);
        }
    };
    Ok(Some(report))
}

/// Runs the command line `argv` (including the program name), writing the
/// report to `out` (or `--out`) and diagnostics to `err`.
pub fn run_cli_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let seed = cli.common.seed.resolve();
    let _ = writeln!(err, "# {:?} seed={seed} format={:?}", cli.command, cli.common.format);
    let result = execute(&cli, seed, err).and_then(|r| match r {
        Some(report) => report.render(cli.common.format).map(Some),
        None => Ok(None),
    });
    match result {
        Ok(Some(bytes)) => {
            let written = match &cli.common.out {
                Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(&bytes).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    1
                }
            }
        }
        Ok(None) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            2
        }
        Err(Failure::Runtime(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

/// `run_cli_with` on the process's stdout and stderr.
pub fn run_cli<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_cli_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
