//! Play one contract out with each card-play policy on the declaring side,
//! against general-strategy defenders, and show trick-by-trick play for one.
//!
//! cargo run --example play_policies -- [seed]

use tribridge::auction::{Contract, Denomination, Doubling};
use tribridge::deck::deal_random;
use tribridge::play::{play_deal, OpeningLead, PlayPolicy, PlayState};
use tribridge::policy::PlaySpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(11);
    let deal = deal_random(seed);
    let contract = Contract::new(1, 2, Denomination::Spades, Doubling::None);
    println!("contract {contract} by seat 1");

    for declarer_play in [PlaySpec::Hcf, PlaySpec::Lcf, PlaySpec::General] {
        let specs = [PlaySpec::General, declarer_play, PlaySpec::DefeatSeeking(1)];
        let mut policies = specs.map(PlaySpec::build);
        let [a, b, c] = &mut policies;
        let mut refs: [&mut dyn PlayPolicy; 3] = [a, b, c];
        let out = play_deal(&deal, contract, &mut refs, OpeningLead::default())?;
        println!("declarer {declarer_play:<8} seat tricks {:?}  declaring side {}", out.per_seat, out.declarer_tricks);
    }

    let mut state = PlayState::new(&deal, contract, OpeningLead::default());
    let mut policies = [PlaySpec::General; 3].map(PlaySpec::build);
    while !state.is_complete() {
        let seat = state.to_act();
        let card = policies[state.controller(seat)].choose(&state, seat);
        state.play(seat, card)?;
        if state.current_trick().is_empty() {
            let last = &state.log()[state.log().len() - 4..];
            let cards: Vec<String> = last.iter().map(|r| format!("{}:{}", r.seat, r.card)).collect();
            println!("trick {:>2}  {}", state.tricks_completed(), cards.join(" "));
        }
    }
    println!("tricks won per seat {:?}", state.tricks_won());
    Ok(())
}
