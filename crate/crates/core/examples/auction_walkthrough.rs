//! Run one auction between three heuristic bidders, showing each call, the
//! calls that were legal at that point, and the final contract.
//!
//! cargo run --example auction_walkthrough -- [seed]

use tribridge::auction::AuctionState;
use tribridge::deck::{deal_random, hand_points, PointScale};
use tribridge::policy::{BidMode, BidPolicy, Heuristic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let deal = deal_random(seed);
    let scale = PointScale::default();
    let mut bidders = [BidMode::Defensive, BidMode::Attack, BidMode::Bluff].map(Heuristic::new);
    for (seat, b) in bidders.iter().enumerate() {
        println!("seat {seat} ({:?}) {:>2} pts  {}", b.mode, hand_points(deal.hand(seat), &scale), deal.hand(seat));
    }

    let mut auction = AuctionState::new(0);
    while !auction.is_complete() {
        let seat = auction.to_act();
        let legal = auction.legal_calls(seat)?;
        let call = bidders[seat].call(&auction, deal.hand(seat), seat);
        println!("seat {seat}: {call:<5} ({} legal calls)", legal.len());
        auction.apply_in_place(seat, call)?;
    }
    let contract = auction.contract()?;
    println!("contract {contract} by seat {}, needs {} tricks", contract.declarer, contract.target_tricks());

    let mut late = auction.clone();
    match late.apply_in_place(1, "PASS".parse()?) {
        Err(e) => println!("a call after the auction closed is rejected: {} ({e})", e.rule()),
        Ok(()) => unreachable!(),
    }
    Ok(())
}
