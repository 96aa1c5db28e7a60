//! Batch experiments: no-trump bidding simulation, multi-deal tournaments,
//! exhaustive partner-split enumeration and the worked-example fixtures.
//!
//! Every run is a pure function of its seed and configuration. Deal `i` of
//! a run uses its own RNG stream seeded with `derive_seed(seed, i)`, so
//! results do not depend on the number of worker threads.

mod enumerate;
mod fixtures;
mod output;
mod sim;
mod tournament;

use thiserror::Error;

use crate::auction::AuctionError;
use crate::deck::ParseError;
use crate::play::{PlayError, PlayPolicy};
use crate::policy::{PlaySpec, PolicySpecError};

pub use enumerate::{enumerate_splits, unrank_combination, SplitConfig, SplitDistribution, SplitMode, SPLIT_COUNT};
pub use fixtures::{
    example1_deal, reproduce_fixtures, table3_hands, FixtureReport, FixtureRow, EXAMPLE1_PER_SEAT, EXAMPLE1_STRATEGIES,
    TABLE3_HANDS,
};
pub use output::{write_csv, Meta, VERSION};
pub use sim::{simulate_nt_bidding, LevelCount, SimConfig, SimReport};
pub use tournament::{
    run_tournament, printed_tournament_rows, DealOutcome, DealRow, SchemeColumn, TournamentConfig, TournamentReport,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Play(#[from] PlayError),
    #[error(transparent)]
    Auction(#[from] AuctionError),
    #[error(transparent)]
    Policy(#[from] PolicySpecError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("hands overlap or are not 13 cards each")]
    BadHands,
    #[error("no table-3 row {0} (rows are 1..=10)")]
    NoSuchRow(usize),
    #[error("auction did not finish within {0} calls")]
    RunawayAuction(usize),
    #[error("output: {0}")]
    Output(String),
}

type BoxedPlay = Box<dyn PlayPolicy + Send>;

fn build_play(specs: [PlaySpec; 3]) -> [BoxedPlay; 3] {
    specs.map(PlaySpec::build)
}

fn play_refs(boxes: &mut [BoxedPlay; 3]) -> [&mut dyn PlayPolicy; 3] {
    let [a, b, c] = boxes;
    [a.as_mut(), b.as_mut(), c.as_mut()]
}
