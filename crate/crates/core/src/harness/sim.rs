use rayon::prelude::*;
use serde::Serialize;

use super::{build_play, play_refs, HarnessError, Meta};
use crate::auction::{Contract, Denomination, Doubling};
use crate::deck::{deal_random, derive_seed, hand_points, PointScale, Seat};
use crate::play::{run_to_end, OpeningLead, PlayState};
use crate::policy::{PlaySpec, Thresholds};

/// The seat that always wins the call in the bidding simulation.
pub const SIM_DECLARER: Seat = 1;

const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub thresholds: Thresholds,
    pub deals: u64,
    pub play: PlaySpec,
    pub lead: OpeningLead,
    pub scale: PointScale,
}

impl SimConfig {
    pub fn new(thresholds: Thresholds, deals: u64) -> SimConfig {
        SimConfig { thresholds, deals, play: PlaySpec::General, lead: OpeningLead::default(), scale: PointScale::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct LevelCount {
    pub level: u8,
    pub calls: u64,
    pub made: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimReport {
    pub seed: u64,
    pub total_deals: u64,
    pub config: SimConfig,
    pub levels: [LevelCount; 3],
}

impl SimReport {
    pub fn calls(&self) -> u64 {
        self.levels.iter().map(|l| l.calls).sum()
    }

    pub fn csv_header() -> [&'static str; 5] {
        ["ruleset", "level", "calls", "made", "failed"]
    }

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.levels
            .iter()
            .map(|l| {
                vec![
                    self.config.thresholds.to_string(),
                    format!("{}NT", l.level),
                    l.calls.to_string(),
                    l.made.to_string(),
                    l.failed.to_string(),
                ]
            })
            .collect()
    }

    pub fn with_meta(&self) -> Meta<&SimConfig, &SimReport> {
        Meta::new(self.seed, &self.config, self)
    }
}

fn empty_levels() -> [LevelCount; 3] {
    [1, 2, 3].map(|level| LevelCount { level, ..LevelCount::default() })
}

/// Deals `deals` hands; seat 1 bids kNT when its point count clears the
/// k-th threshold, the deal is then played out with every seat on `play`.
pub fn simulate_nt_bidding(config: &SimConfig, seed: u64) -> Result<SimReport, HarnessError> {
    let chunks: Vec<u64> = (0..config.deals.div_ceil(CHUNK)).collect();
    let partials = chunks
        .par_iter()
        .map(|&c| {
            let mut levels = empty_levels();
            let mut boxes = build_play([config.play; 3]);
            let end = ((c + 1) * CHUNK).min(config.deals);
            for i in c * CHUNK..end {
                let deal = deal_random(derive_seed(seed, i));
                let pts = hand_points(deal.hand(SIM_DECLARER), &config.scale);
                let level = config.thresholds.level_for(pts as f64);
                if level == 0 {
                    continue;
                }
                let contract = Contract::new(SIM_DECLARER, level, Denomination::NoTrump, Doubling::None);
                let mut state = PlayState::new(&deal, contract, config.lead);
                run_to_end(&mut state, &mut play_refs(&mut boxes))?;
                let row = &mut levels[level as usize - 1];
                row.calls += 1;
                if state.declarer_side_tricks() >= contract.target_tricks() {
                    row.made += 1;
                } else {
                    row.failed += 1;
                }
            }
            Ok(levels)
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;

    let mut levels = empty_levels();
    for p in partials {
        for (acc, x) in levels.iter_mut().zip(p) {
            acc.calls += x.calls;
            acc.made += x.made;
            acc.failed += x.failed;
        }
    }
    Ok(SimReport { seed, total_deals: config.deals, config: *config, levels })
}
