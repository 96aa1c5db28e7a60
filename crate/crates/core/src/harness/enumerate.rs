use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::{build_play, play_refs, HarnessError, Meta};
use crate::analytics::choose_u128;
use crate::auction::{Contract, Denomination, Doubling};
use crate::deck::{rng_for, derive_seed, shuffle, Card, Hand, Seat, DECK_SIZE, HAND_SIZE, PHANTOM};
use crate::play::{run_to_end, OpeningLead, PlayState, TRICKS};
use crate::policy::PlaySpec;

/// Ways to split 26 cards into two hands of 13.
pub const SPLIT_COUNT: u64 = 10_400_600;

const REST: usize = 2 * HAND_SIZE;
const CHUNK: u64 = 16_384;
const DECLARER: Seat = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SplitMode {
    Exact,
    Sampled { n: u64, seed: u64 },
}

/// Fixed declarer (seat 1) and phantom hands; the other 26 cards are
/// split between seats 0 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitConfig {
    pub declarer_hand: Hand,
    pub phantom_hand: Hand,
    pub denom: Denomination,
    pub play: [PlaySpec; 3],
    pub lead: OpeningLead,
}

impl SplitConfig {
    /// No-trump, General play everywhere.
    pub fn new(declarer_hand: Hand, phantom_hand: Hand) -> SplitConfig {
        SplitConfig {
            declarer_hand,
            phantom_hand,
            denom: Denomination::NoTrump,
            play: [PlaySpec::General; 3],
            lead: OpeningLead::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitDistribution {
    pub mode: SplitMode,
    /// `frequency[t]` = splits in which the declaring side took `t` tricks.
    pub frequency: [u64; TRICKS + 1],
}

impl SplitDistribution {
    pub fn total(&self) -> u64 {
        self.frequency.iter().sum()
    }

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.frequency
            .iter()
            .enumerate()
            .map(|(t, f)| vec![t.to_string(), f.to_string()])
            .collect()
    }

    pub fn with_meta<'a>(&'a self, config: &'a SplitConfig) -> Meta<&'a SplitConfig, &'a Self> {
        let seed = match self.mode {
            SplitMode::Exact => 0,
            SplitMode::Sampled { seed, .. } => seed,
        };
        Meta::new(seed, config, self)
    }
}

/// The `rank`-th 13-subset of 26 positions in colexicographic order, as a
/// bit mask. This is the order in which Gosper's hack walks subsets.
pub fn unrank_combination(mut rank: u64, n: u32, k: u32) -> u64 {
    let mut mask = 0u64;
    let mut hi = n;
    for i in (1..=k).rev() {
        let mut c = hi - 1;
        while choose_u128(c, i) as u64 > rank {
            c -= 1;
        }
        rank -= choose_u128(c, i) as u64;
        mask |= 1 << c;
        hi = c;
    }
    mask
}

fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

struct Table {
    rest: [Card; REST],
    config: SplitConfig,
    contract: Contract,
    leader: Seat,
}

impl Table {
    fn hands(&self, mask: u64) -> [Hand; 4] {
        let mut west = Hand::EMPTY;
        let mut m = mask;
        while m != 0 {
            west.insert(self.rest[m.trailing_zeros() as usize]);
            m &= m - 1;
        }
        let east = Hand::from_bits(Hand::FULL_DECK.bits() ^ west.bits() ^ self.config.declarer_hand.bits() ^ self.config.phantom_hand.bits());
        let mut hands = [Hand::EMPTY; 4];
        hands[0] = west;
        hands[DECLARER] = self.config.declarer_hand;
        hands[2] = east;
        hands[PHANTOM] = self.config.phantom_hand;
        hands
    }
}

/// Plays out every (or a sample of) split of the unseen 26 cards and
/// tallies the declaring side's tricks. `progress` receives (done, total)
/// after each chunk.
pub fn enumerate_splits(
    config: &SplitConfig,
    mode: SplitMode,
    progress: Option<&(dyn Fn(u64, u64) + Sync)>,
) -> Result<SplitDistribution, HarnessError> {
    let (d, p) = (config.declarer_hand, config.phantom_hand);
    if d.len() != HAND_SIZE || p.len() != HAND_SIZE || !d.is_disjoint(p) {
        return Err(HarnessError::BadHands);
    }
    let unseen = Hand::FULL_DECK.difference(d.union(p));
    debug_assert_eq!(unseen.len(), DECK_SIZE - 2 * HAND_SIZE);
    let mut rest = [Card::default(); REST];
    for (slot, c) in rest.iter_mut().zip(unseen.iter()) {
        *slot = c;
    }
    let contract = Contract::new(DECLARER, 1, config.denom, Doubling::None);
    let table = Table { rest, config: *config, contract, leader: config.lead.leader(DECLARER) };

    let total = match mode {
        SplitMode::Exact => SPLIT_COUNT,
        SplitMode::Sampled { n, .. } => n,
    };
    let done = AtomicU64::new(0);
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
    let partials = chunks
        .par_iter()
        .map(|&c| {
            let mut freq = [0u64; TRICKS + 1];
            let mut boxes = build_play(config.play);
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut play = |mask: u64| -> Result<(), HarnessError> {
                let mut state = PlayState::from_hands(table.hands(mask), table.contract, table.leader);
                run_to_end(&mut state, &mut play_refs(&mut boxes))?;
                freq[state.declarer_side_tricks() as usize] += 1;
                Ok(())
            };
            match mode {
                SplitMode::Exact => {
                    let mut mask = unrank_combination(start, REST as u32, HAND_SIZE as u32);
                    for _ in start..end {
                        play(mask)?;
                        mask = next_combination(mask);
                    }
                }
                SplitMode::Sampled { seed, .. } => {
                    let mut idx: [u8; REST] = std::array::from_fn(|i| i as u8);
                    for j in start..end {
                        let mut rng = rng_for(derive_seed(seed, j));
                        shuffle(&mut idx, &mut rng);
                        let mask = idx[..HAND_SIZE].iter().fold(0u64, |m, &i| m | 1 << i);
                        play(mask)?;
                    }
                }
            }
            let now = done.fetch_add(end - start, Ordering::Relaxed) + end - start;
            if let Some(cb) = progress {
                cb(now, total);
            }
            Ok(freq)
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;

    let mut frequency = [0u64; TRICKS + 1];
    for f in partials {
        for (a, b) in frequency.iter_mut().zip(f) {
            *a += b;
        }
    }
    Ok(SplitDistribution { mode, frequency })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unrank_follows_gosper_order() {
        let mut mask = (1u64 << 13) - 1;
        for r in 0..5000 {
            assert_eq!(unrank_combination(r, 26, 13), mask, "rank {r}");
            mask = next_combination(mask);
        }
        let last = unrank_combination(SPLIT_COUNT - 1, 26, 13);
        assert_eq!(last, ((1u64 << 13) - 1) << 13);
    }

    #[test]
    fn rejects_overlap() {
        let h = Hand::from_bits((1 << 13) - 1);
        let cfg = SplitConfig::new(h, h);
        assert!(matches!(enumerate_splits(&cfg, SplitMode::Exact, None), Err(HarnessError::BadHands)));
    }

    #[test]
    fn sampled_is_deterministic() {
        let (d, p) = super::super::table3_hands(1).unwrap();
        let cfg = SplitConfig::new(d, p);
        let mode = SplitMode::Sampled { n: 500, seed: 9 };
        let a = enumerate_splits(&cfg, mode, None).unwrap();
        assert_eq!(a, enumerate_splits(&cfg, mode, None).unwrap());
        assert_eq!(a.total(), 500);
    }
}
