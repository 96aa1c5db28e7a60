//! Score the same contracts under the previous and new schemes, including
//! doubled contracts, a slam and a failed contract with honours.
//!
//! cargo run --example scoring_schemes

use tribridge::auction::{Contract, Denomination, Doubling};
use tribridge::deck::Hand;
use tribridge::scoring::{honors_points, score_deal, HonorsInfo, Scheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spade_honors = HonorsInfo::from_hands(
        Hand::parse_list("AS KS QS 2H")?,
        Hand::parse_list("JS 3D")?,
        Denomination::Spades,
    );
    let cases = [
        ("1NT made exactly", Contract::new(0, 1, Denomination::NoTrump, Doubling::None), 7, HonorsInfo::none()),
        ("2H with two overtricks", Contract::new(1, 2, Denomination::Hearts, Doubling::None), 10, HonorsInfo::none()),
        ("3C doubled, made", Contract::new(2, 3, Denomination::Clubs, Doubling::Doubled), 9, HonorsInfo::none()),
        ("4S redoubled, +1", Contract::new(0, 4, Denomination::Spades, Doubling::Redoubled), 11, spade_honors),
        ("6NT small slam", Contract::new(1, 6, Denomination::NoTrump, Doubling::None), 12, HonorsInfo::none()),
        ("4S down two, honours", Contract::new(0, 4, Denomination::Spades, Doubling::None), 8, spade_honors),
    ];
    println!("spade honours held by the declaring side are worth {}", honors_points(&spade_honors, Denomination::Spades));
    for (label, contract, tricks, honors) in cases {
        println!("\n{label}: {contract} by seat {}, {tricks} tricks", contract.declarer);
        for scheme in [Scheme::Previous, Scheme::New] {
            let s = score_deal(&contract, tricks, &honors, scheme);
            let b = s.breakdown;
            println!(
                "  {scheme:<8} made={:<5} deltas {:?}  tricks {} over {} insult {} slam {} honours {} penalty {}",
                s.made,
                s.per_seat_delta.map(|p| p.to_string()),
                b.trick_points,
                b.overtrick_points,
                b.insult,
                b.slam_bonus,
                b.honors,
                b.penalties
            );
        }
    }
    Ok(())
}
