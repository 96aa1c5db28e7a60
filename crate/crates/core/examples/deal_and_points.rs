//! Deal a seeded hand, count points, and compare with the exact
//! distribution of points in a 13-card hand.
//!
//! cargo run --example deal_and_points -- [seed]

use tribridge::analytics::{bucket_probs, expected_dummy_points, point_distribution};
use tribridge::deck::{deal_random, hand_points, PointScale, PHANTOM};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(7);
    let scale = PointScale::default();
    let deal = deal_random(seed);
    for seat in 0..4 {
        let hand = deal.hand(seat);
        let label = if seat == PHANTOM { "phantom".to_string() } else { format!("seat {seat}") };
        println!("{label:<8} {:>2} pts  {hand}", hand_points(hand, &scale));
    }
    let own = deal.hand(1);
    println!("seat 1 expects {:.2} points in the phantom", expected_dummy_points(own, &scale));

    let dist = point_distribution(&scale);
    println!("\nhands counted: {}  mean {:.3}", dist.total, dist.mean());
    for p in (0..=dist.max_points()).step_by(4) {
        println!("P({p:>2} pts) = {:.6}", dist.prob(p));
    }
    let [one, two, three] = bucket_probs(&dist, [20, 25, 30])?;
    println!("\nthresholds 20,25,30: P(1NT) {one:.5}  P(2NT) {two:.5}  P(3NT) {three:.6}");
    Ok(())
}
