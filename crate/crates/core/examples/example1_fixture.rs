//! Replay the worked example deal (declarer seat 1 at 1NT) under the three
//! play strategies and compare tricks with the published figures, for both
//! opening-lead conventions.
//!
//! cargo run --example example1_fixture

use tribridge::harness::{example1_deal, reproduce_fixtures};
use tribridge::play::OpeningLead;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let deal = example1_deal();
    for seat in 0..4 {
        println!("seat {seat}: {}", deal.hand(seat));
    }
    for lead in [OpeningLead::PrecedingDefender, OpeningLead::FollowingDefender] {
        let report = reproduce_fixtures(lead)?;
        println!("\nopening lead: {lead}");
        for row in &report.rows {
            println!(
                "  {:<8} per seat {:?} (published {:?}, {})  teams {:?} (published {:?}, {})",
                row.strategy.to_string(),
                row.per_seat,
                row.expected_per_seat,
                if row.per_seat_match() { "match" } else { "differs" },
                row.teams,
                row.expected_teams,
                if row.teams_match() { "match" } else { "differs" },
            );
        }
    }
    Ok(())
}
