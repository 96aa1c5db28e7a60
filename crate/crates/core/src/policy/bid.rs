//! Bidding policies.

use std::fmt;

use serde::Serialize;

use crate::analytics::expected_dummy_points;
use crate::auction::{AuctionState, Bid, Call, Denomination, Doubling};
use crate::deck::{hand_points, Hand, PointScale, Seat, Suit};

pub trait BidPolicy {
    fn call(&mut self, state: &AuctionState, hand: Hand, seat: Seat) -> Call;
}

impl<P: BidPolicy + ?Sized> BidPolicy for Box<P> {
    fn call(&mut self, state: &AuctionState, hand: Hand, seat: Seat) -> Call {
        (**self).call(state, hand, seat)
    }
}

/// Strictly increasing point thresholds for 1NT, 2NT and 3NT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Thresholds([u32; 3]);

impl Thresholds {
    pub fn new(t: [u32; 3]) -> Result<Thresholds, String> {
        if t[0] < t[1] && t[1] < t[2] {
            Ok(Thresholds(t))
        } else {
            Err(format!("thresholds must be strictly increasing, got {},{},{}", t[0], t[1], t[2]))
        }
    }

    pub fn get(&self) -> [u32; 3] {
        self.0
    }

    pub fn parse(text: &str) -> Result<Thresholds, String> {
        let parts: Vec<u32> = text
            .split([',', '/', '-'])
            .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad threshold {p:?}")))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [a, b, c] => Thresholds::new([a, b, c]),
            _ => Err(format!("expected three thresholds, got {text:?}")),
        }
    }

    /// Highest level `k` in 1..=3 whose threshold `value` reaches, or 0.
    pub fn level_for(&self, value: f64) -> u8 {
        self.0.iter().rev().position(|&t| value >= t as f64).map_or(0, |i| 3 - i as u8)
    }
}

impl fmt::Display for Thresholds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds([20, 25, 30])
    }
}

fn nt_or_pass(state: &AuctionState, level: u8) -> Call {
    if level > 0 {
        let call = Call::bid(level, Denomination::NoTrump);
        if state.check_call(state.to_act(), call).is_ok() {
            return call;
        }
    }
    if state.high_bid().is_none() {
        // the opener may not pass
        Call::bid(1, Denomination::Clubs)
    } else {
        Call::Pass
    }
}

/// Bids `kNT` for the highest threshold the hand reaches, if that bid is
/// still legal; otherwise passes. A forced opener with nothing bids 1C.
pub fn point_count_call(hand: Hand, thresholds: Thresholds, state: &AuctionState, scale: &PointScale) -> Call {
    let points = hand_points(hand, scale);
    nt_or_pass(state, thresholds.level_for(points as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BidMode {
    Defensive,
    Attack,
    Bluff,
}

/// Tunables of the heuristic bidders. None of these numbers come from
/// measured play; they are defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeuristicConfig {
    pub scale: PointScale,
    /// Used by the defensive fallback and by bluff when it does not trap.
    pub defensive_thresholds: Thresholds,
    /// Compared against own points plus the phantom's expected points.
    pub attack_thresholds: Thresholds,
    /// A suit longer than this with an honour is bid as trump.
    pub long_suit_over: usize,
    /// Highest level the long-suit rule will climb to.
    pub max_suit_level: u8,
    pub bluff_min_length: usize,
    pub bluff_min_honors: usize,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            scale: PointScale::default(),
            defensive_thresholds: Thresholds([20, 25, 30]),
            attack_thresholds: Thresholds([30, 35, 40]),
            long_suit_over: 5,
            max_suit_level: 4,
            bluff_min_length: 5,
            bluff_min_honors: 2,
        }
    }
}

fn honors_in(hand: Hand, suit: Suit) -> usize {
    hand.suit(suit).iter().filter(|c| c.rank().is_honor()).count()
}

fn longest_suit(hand: Hand) -> Suit {
    // ties go to the higher suit
    *Suit::ALL.iter().rev().max_by_key(|&&s| (hand.suit_len(s), s as u8)).unwrap()
}

fn cheapest_bid(state: &AuctionState, denom: Denomination) -> Option<Bid> {
    (1..=7).filter_map(|l| Bid::new(l, denom)).find(|b| state.high_bid().is_none_or(|h| *b > h))
}

fn defensive(hand: Hand, state: &AuctionState, seat: Seat, cfg: &HeuristicConfig) -> Call {
    if state.high_bidder() == Some(seat) {
        return Call::Pass;
    }
    let suit = longest_suit(hand);
    if hand.suit_len(suit) > cfg.long_suit_over && honors_in(hand, suit) >= 1 {
        if let Some(bid) = cheapest_bid(state, Denomination::from_suit(suit)) {
            if bid.level() <= cfg.max_suit_level {
                return Call::Bid(bid);
            }
        }
    }
    point_count_call(hand, cfg.defensive_thresholds, state, &cfg.scale)
}

fn attack(hand: Hand, state: &AuctionState, seat: Seat, cfg: &HeuristicConfig) -> Call {
    if state.high_bidder() == Some(seat) {
        return Call::Pass;
    }
    let value = hand_points(hand, &cfg.scale) as f64 + expected_dummy_points(hand, &cfg.scale);
    nt_or_pass(state, cfg.attack_thresholds.level_for(value))
}

fn bluff(hand: Hand, state: &AuctionState, seat: Seat, cfg: &HeuristicConfig) -> Call {
    let trap = match (state.high_bidder(), state.high_bid().and_then(|b| b.denom().trump())) {
        (Some(bidder), Some(suit)) if bidder != seat => {
            hand.suit_len(suit) >= cfg.bluff_min_length || honors_in(hand, suit) >= cfg.bluff_min_honors
        }
        _ => false,
    };
    if !trap {
        return defensive(hand, state, seat, cfg);
    }
    // our pass would end the auction: double now
    if state.consecutive_passes() == 1 && state.doubling() == Doubling::None {
        Call::Double
    } else {
        Call::Pass
    }
}

/// Defensive, attack or bluff bidding.
///
/// - defensive: bid the longest suit at the cheapest level when it is longer
///   than five cards and holds an honour; otherwise point-count bidding.
/// - attack: point-count bidding on own points plus the phantom hand's
///   expected points.
/// - bluff: holding length or honours in an opponent's trump suit, pass,
///   then double when the auction is one pass from closing.
pub fn heuristic_call(hand: Hand, state: &AuctionState, mode: BidMode, cfg: &HeuristicConfig) -> Call {
    let seat = state.to_act();
    match mode {
        BidMode::Defensive => defensive(hand, state, seat, cfg),
        BidMode::Attack => attack(hand, state, seat, cfg),
        BidMode::Bluff => bluff(hand, state, seat, cfg),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCount {
    pub thresholds: Thresholds,
    pub scale: PointScale,
}

impl BidPolicy for PointCount {
    fn call(&mut self, state: &AuctionState, hand: Hand, _seat: Seat) -> Call {
        point_count_call(hand, self.thresholds, state, &self.scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Heuristic {
    pub mode: BidMode,
    pub config: HeuristicConfig,
}

impl Heuristic {
    pub fn new(mode: BidMode) -> Heuristic {
        Heuristic { mode, config: HeuristicConfig::default() }
    }
}

impl BidPolicy for Heuristic {
    fn call(&mut self, state: &AuctionState, hand: Hand, _seat: Seat) -> Call {
        heuristic_call(hand, state, self.mode, &self.config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{Card, Rank};

    /// A 13-card hand worth exactly `points`: honours from the top, filled
    /// with spot cards.
    fn hand_with_points(points: u32) -> Hand {
        let mut h = Hand::EMPTY;
        let mut left = points;
        for rank in [Rank::Ace, Rank::King, Rank::Queen, Rank::Jack, Rank::Ten] {
            let w = PointScale::default().weight(rank);
            for suit in Suit::ALL {
                if left >= w && h.len() < 13 {
                    h.insert(Card::new(rank, suit));
                    left -= w;
                }
            }
        }
        assert_eq!(left, 0);
        for c in Card::all().filter(|c| c.rank() < Rank::Ten) {
            if h.len() == 13 {
                break;
            }
            h.insert(c);
        }
        assert_eq!(hand_points(h, &PointScale::default()), points);
        h
    }

    fn after(calls: &[&str]) -> AuctionState {
        let mut st = AuctionState::new(0);
        for c in calls {
            st = st.apply_call(st.to_act(), c.parse().unwrap()).unwrap();
        }
        st
    }

    #[test]
    fn point_count_examples() {
        let scale = PointScale::default();
        let st = after(&["1C"]);
        let t1 = Thresholds::new([20, 25, 30]).unwrap();
        let t2 = Thresholds::new([25, 30, 35]).unwrap();
        assert_eq!(point_count_call(hand_with_points(22), t1, &st, &scale), Call::bid(1, Denomination::NoTrump));
        assert_eq!(point_count_call(hand_with_points(22), t2, &st, &scale), Call::Pass);
        assert_eq!(point_count_call(hand_with_points(31), t1, &st, &scale), Call::bid(3, Denomination::NoTrump));
        // forced opener
        let open = AuctionState::new(0);
        assert_eq!(point_count_call(hand_with_points(3), t1, &open, &scale), Call::bid(1, Denomination::Clubs));
        // kNT no longer available
        let st = after(&["2NT"]);
        assert_eq!(point_count_call(hand_with_points(22), t1, &st, &scale), Call::Pass);
    }

    #[test]
    fn threshold_validation() {
        assert!(Thresholds::new([20, 20, 30]).is_err());
        assert_eq!(Thresholds::parse("25,30,35").unwrap().get(), [25, 30, 35]);
        assert_eq!(Thresholds::default().level_for(19.9), 0);
        assert_eq!(Thresholds::default().level_for(25.0), 2);
    }

    #[test]
    fn defensive_long_suit() {
        let hand = Hand::parse_list("AS 9S 8S 7S 6S 5S 2H 3H 4H 2D 3D 2C 3C").unwrap();
        let cfg = HeuristicConfig::default();
        let st = after(&["1H"]);
        assert_eq!(heuristic_call(hand, &st, BidMode::Defensive, &cfg), Call::bid(1, Denomination::Spades));
        let st = after(&["2H"]);
        assert_eq!(heuristic_call(hand, &st, BidMode::Defensive, &cfg), Call::bid(2, Denomination::Spades));
        let st = after(&["1NT"]);
        assert_eq!(heuristic_call(hand, &st, BidMode::Defensive, &cfg), Call::bid(2, Denomination::Spades));
    }

    #[test]
    fn bluff_passes_then_doubles() {
        let hand = Hand::parse_list("2H 3H 4H 5H 6H 7H 2C 3C 4C 5C 2D 3D 4D").unwrap();
        let cfg = HeuristicConfig::default();
        // right after the 2H bid: pass
        let st = after(&["2H"]);
        assert_eq!(heuristic_call(hand, &st, BidMode::Bluff, &cfg), Call::Pass);
        // one pass already: our pass would close the auction, so double
        let st = after(&["2H", "PASS"]);
        assert_eq!(heuristic_call(hand, &st, BidMode::Bluff, &cfg), Call::Double);
    }

    #[test]
    fn attack_vs_defensive() {
        let hand = Hand::parse_list("AS KS 2S AH 2H 3H AD 2D 3D 2C 3C 4C 5C").unwrap();
        assert_eq!(hand_points(hand, &PointScale::default()), 19);
        let scale = PointScale::default();
        let extra = expected_dummy_points(hand, &scale);
        let cfg = HeuristicConfig::default();
        assert!(19.0 < cfg.attack_thresholds.get()[0] as f64);
        assert!(19.0 + extra >= cfg.attack_thresholds.get()[0] as f64);
        let st = after(&["1C"]);
        assert!(matches!(heuristic_call(hand, &st, BidMode::Attack, &cfg), Call::Bid(_)));
        assert_eq!(heuristic_call(hand, &st, BidMode::Defensive, &cfg), Call::Pass);
    }

    #[test]
    fn never_overcalls_own_bid() {
        let hand = hand_with_points(40);
        let st = after(&["1NT", "X"]).apply_call(2, Call::Pass).unwrap();
        assert_eq!(st.to_act(), 0);
        let cfg = HeuristicConfig::default();
        assert_eq!(heuristic_call(hand, &st, BidMode::Defensive, &cfg), Call::Pass);
        assert_eq!(heuristic_call(hand, &st, BidMode::Attack, &cfg), Call::Pass);
    }
}
