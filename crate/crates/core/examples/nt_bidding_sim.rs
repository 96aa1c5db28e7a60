//! Compare no-trump bidding rule sets by how often each level is called and
//! made over simulated deals.
//!
//! cargo run --release --example nt_bidding_sim -- [deals]

use tribridge::harness::{simulate_nt_bidding, SimConfig};
use tribridge::policy::Thresholds;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let deals: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(20_000);
    for t in [[20, 25, 30], [23, 26, 29], [18, 22, 26]] {
        let report = simulate_nt_bidding(&SimConfig::new(Thresholds::new(t)?, deals), 2025)?;
        println!("rule set {}: {} contracts in {deals} deals", report.config.thresholds, report.calls());
        for l in &report.levels {
            let rate = if l.calls == 0 { 0.0 } else { l.made as f64 / l.calls as f64 };
            println!("  {}NT  calls {:>6}  made {:>6}  failed {:>6}  success {:.3}", l.level, l.calls, l.made, l.failed, rate);
        }
    }
    Ok(())
}
