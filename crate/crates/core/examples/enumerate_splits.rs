//! Tally declarer-side tricks over splits of the unseen 26 cards for one of
//! the ten fixed hand pairs.
//!
//! cargo run --release --example enumerate_splits -- [row] [--exact | N]

use std::time::Instant;

use tribridge::harness::{enumerate_splits, table3_hands, SplitConfig, SplitMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let row: usize = args.first().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let mode = match args.get(1).map(String::as_str) {
        Some("--exact") => SplitMode::Exact,
        Some(n) => SplitMode::Sampled { n: n.parse()?, seed: 2024 },
        None => SplitMode::Sampled { n: 10_000, seed: 2024 },
    };
    let (declarer, phantom) = table3_hands(row)?;
    println!("declarer {declarer}\nphantom  {phantom}");
    let cfg = SplitConfig::new(declarer, phantom);
    let started = Instant::now();
    let report = |done: u64, total: u64| {
        if done % 1_048_576 < 16_384 {
            eprintln!("{done}/{total}");
        }
    };
    let dist = enumerate_splits(&cfg, mode, Some(&report))?;
    let secs = started.elapsed().as_secs_f64();
    println!("tricks  frequency");
    for (t, f) in dist.frequency.iter().enumerate() {
        println!("{t:>6}  {f}");
    }
    println!("{} playouts in {secs:.2}s ({:.0}/s)", dist.total(), dist.total() as f64 / secs);
    Ok(())
}
