//! Exact hand probabilities: the four-aces-and-four-kings opening hand and
//! the honour combinations behind the bidding strategies.
//!
//! cargo run --example probabilities -- [combo list, e.g. "4A+2K,3A+4K"]

use tribridge::analytics::{honor_combo_prob, prob_safe_min_bid, strategy_combos, ComboSet, REFERENCE_COMBO_PROBS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let safe = prob_safe_min_bid();
    println!("safe minimum bid: {}/{} = {:.6e}", safe.numerator, safe.denominator, safe.value());

    for (i, published) in (1..=3).zip(REFERENCE_COMBO_PROBS) {
        let set = strategy_combos(i).expect("strategies 1 to 3 exist");
        let p = honor_combo_prob(&set)?;
        println!("strategy {i} [{set}]: {:.6e} (published {published:.1e})", p.value());
    }

    if let Some(text) = std::env::args().nth(1) {
        let set = ComboSet::parse(&text)?;
        println!("{set}: {:.6e}", honor_combo_prob(&set)?.value());
    }
    Ok(())
}
