//! Trick-by-trick play.
//!
//! Hands play in the fixed rotation 0 → 1 → 2 → 3 → 0, seat 3 being the
//! phantom whose cards the declarer chooses. The phantom hand is exposed to
//! everyone once the opening lead has been made.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::auction::Contract;
use crate::deck::{Card, Deal, Hand, Seat, Suit, PHANTOM};

pub const SEATS: usize = 4;
pub const TRICKS: usize = 13;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlayError {
    #[error("seat {got} played out of turn; seat {expected} is to act")]
    OutOfTurn { expected: Seat, got: Seat },
    #[error("all 13 tricks have been played")]
    DealComplete,
    #[error("{card} is not held by seat {seat}")]
    NotHeld { seat: Seat, card: Card },
    #[error("{card} revokes: seat {seat} must follow {led}")]
    MustFollowSuit { seat: Seat, card: Card, led: Suit },
    #[error("trick is incomplete ({0} of 4 cards)")]
    IncompleteTrick(usize),
    #[error("policy for seat {seat} chose illegal card {card} in trick {trick}")]
    IllegalPolicyPlay { seat: Seat, trick: usize, card: Card },
}

impl PlayError {
    pub fn rule(&self) -> &'static str {
        match self {
            PlayError::OutOfTurn { .. } => "turn-order",
            PlayError::DealComplete => "deal-complete",
            PlayError::NotHeld { .. } => "card-not-held",
            PlayError::MustFollowSuit { .. } => "follow-suit",
            PlayError::IncompleteTrick(_) => "incomplete-trick",
            PlayError::IllegalPolicyPlay { .. } => "policy-illegal-card",
        }
    }
}

/// Who makes the opening lead. Both choices pick a defender.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OpeningLead {
    /// The defender who plays immediately before the declarer in rotation
    /// (declarer 1 → seat 0, declarer 2 → seat 1, declarer 0 → seat 2).
    #[default]
    PrecedingDefender,
    /// The defender who plays immediately after the declarer
    /// (declarer 0 → seat 1, declarer 1 → seat 2, declarer 2 → seat 0).
    FollowingDefender,
}

impl OpeningLead {
    pub fn leader(self, declarer: Seat) -> Seat {
        let step = match self {
            OpeningLead::PrecedingDefender => SEATS - 1,
            OpeningLead::FollowingDefender => 1,
        };
        let mut seat = (declarer + step) % SEATS;
        if seat == PHANTOM {
            seat = (seat + step) % SEATS;
        }
        seat
    }
}

impl std::str::FromStr for OpeningLead {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "preceding" | "preceding-defender" => Ok(OpeningLead::PrecedingDefender),
            "following" | "following-defender" => Ok(OpeningLead::FollowingDefender),
            other => Err(format!("unknown opening-lead convention {other:?} (preceding|following)")),
        }
    }
}

impl fmt::Display for OpeningLead {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpeningLead::PrecedingDefender => "preceding",
            OpeningLead::FollowingDefender => "following",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlayRecord {
    /// 1-based trick number.
    pub trick: usize,
    pub seat: Seat,
    pub card: Card,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Trick {
    plays: [(Seat, Card); 4],
    len: usize,
}

impl Trick {
    pub fn plays(&self) -> &[(Seat, Card)] {
        &self.plays[..self.len]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn lead_suit(&self) -> Option<Suit> {
        self.plays().first().map(|(_, c)| c.suit())
    }

    fn push(&mut self, seat: Seat, card: Card) {
        self.plays[self.len] = (seat, card);
        self.len += 1;
    }

    /// Index into `plays()` of the card currently winning, if any.
    pub fn winning_index(&self, trump: Option<Suit>) -> Option<usize> {
        winning_index(self.plays(), trump)
    }
}

impl Default for Card {
    fn default() -> Self {
        Card::from_index(0)
    }
}

fn beats(card: Card, best: Card, trump: Option<Suit>) -> bool {
    if card.suit() == best.suit() {
        card.rank() > best.rank()
    } else {
        Some(card.suit()) == trump
    }
}

fn winning_index(plays: &[(Seat, Card)], trump: Option<Suit>) -> Option<usize> {
    let mut best = 0;
    for (i, &(_, card)) in plays.iter().enumerate().skip(1) {
        if beats(card, plays[best].1, trump) {
            best = i;
        }
    }
    (!plays.is_empty()).then_some(best)
}

/// Winner of a complete trick: highest trump, else highest card of the suit led.
pub fn trick_winner(plays: &[(Seat, Card)], trump: Option<Suit>) -> Result<Seat, PlayError> {
    if plays.len() != SEATS {
        return Err(PlayError::IncompleteTrick(plays.len()));
    }
    Ok(plays[winning_index(plays, trump).unwrap()].0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayState {
    contract: Contract,
    hands: [Hand; 4],
    trick: Trick,
    tricks_won: [u8; 4],
    leader: Seat,
    completed: usize,
    log: Vec<PlayRecord>,
}

impl PlayState {
    pub fn new(deal: &Deal, contract: Contract, lead: OpeningLead) -> PlayState {
        PlayState::from_hands(deal.hands, contract, lead.leader(contract.declarer))
    }

    pub fn from_hands(hands: [Hand; 4], contract: Contract, leader: Seat) -> PlayState {
        PlayState {
            contract,
            hands,
            trick: Trick::default(),
            tricks_won: [0; 4],
            leader,
            completed: 0,
            log: Vec::with_capacity(52),
        }
    }

    pub fn contract(&self) -> &Contract {
        &self.contract
    }

    pub fn trump(&self) -> Option<Suit> {
        self.contract.trump()
    }

    pub fn hand(&self, seat: Seat) -> Hand {
        self.hands[seat]
    }

    pub fn current_trick(&self) -> &Trick {
        &self.trick
    }

    pub fn leader(&self) -> Seat {
        self.leader
    }

    pub fn tricks_completed(&self) -> usize {
        self.completed
    }

    pub fn tricks_won(&self) -> [u8; 4] {
        self.tricks_won
    }

    pub fn declarer_side_tricks(&self) -> u8 {
        self.tricks_won[self.contract.declarer] + self.tricks_won[PHANTOM]
    }

    pub fn defender_side_tricks(&self) -> u8 {
        self.completed as u8 - self.declarer_side_tricks()
    }

    pub fn dummy_revealed(&self) -> bool {
        !self.log.is_empty()
    }

    pub fn log(&self) -> &[PlayRecord] {
        &self.log
    }

    pub fn is_complete(&self) -> bool {
        self.completed == TRICKS
    }

    /// The hand whose card is due next.
    pub fn to_act(&self) -> Seat {
        (self.leader + self.trick.len) % SEATS
    }

    /// The player who chooses for `seat` (declarer chooses for the phantom).
    pub fn controller(&self, seat: Seat) -> Seat {
        if seat == PHANTOM {
            self.contract.declarer
        } else {
            seat
        }
    }

    /// Cards of `seat` that `viewer` may see.
    pub fn visible_hand(&self, viewer: Seat, seat: Seat) -> Option<Hand> {
        let own = viewer == seat || (seat == PHANTOM && viewer == self.contract.declarer);
        (own || (seat == PHANTOM && self.dummy_revealed())).then_some(self.hands[seat])
    }

    pub fn legal_plays(&self, seat: Seat) -> Result<Hand, PlayError> {
        if self.is_complete() {
            return Err(PlayError::DealComplete);
        }
        if seat != self.to_act() {
            return Err(PlayError::OutOfTurn { expected: self.to_act(), got: seat });
        }
        Ok(self.legal_unchecked(seat))
    }

    fn legal_unchecked(&self, seat: Seat) -> Hand {
        let hand = self.hands[seat];
        match self.trick.lead_suit() {
            Some(led) if !hand.suit(led).is_empty() => hand.suit(led),
            _ => hand,
        }
    }

    pub fn check_play(&self, seat: Seat, card: Card) -> Result<(), PlayError> {
        let legal = self.legal_plays(seat)?;
        if !self.hands[seat].contains(card) {
            return Err(PlayError::NotHeld { seat, card });
        }
        if !legal.contains(card) {
            return Err(PlayError::MustFollowSuit { seat, card, led: self.trick.lead_suit().unwrap() });
        }
        Ok(())
    }

    pub fn play(&mut self, seat: Seat, card: Card) -> Result<(), PlayError> {
        self.check_play(seat, card)?;
        self.hands[seat].remove(card);
        self.trick.push(seat, card);
        self.log.push(PlayRecord { trick: self.completed + 1, seat, card });
        if self.trick.len == SEATS {
            let winner = trick_winner(self.trick.plays(), self.trump()).expect("trick is full");
            self.tricks_won[winner] += 1;
            self.completed += 1;
            self.leader = winner;
            self.trick = Trick::default();
        }
        Ok(())
    }

    pub fn outcome(&self) -> TrickOutcome {
        TrickOutcome {
            per_seat: self.tricks_won,
            declarer_tricks: self.declarer_side_tricks(),
            play_log: self.log.clone(),
        }
    }
}

/// A card-play strategy. `seat` is the hand to play from, which is the
/// phantom when the declarer is choosing for it.
pub trait PlayPolicy {
    fn choose(&mut self, state: &PlayState, seat: Seat) -> Card;

    /// Called before each deal so per-deal memory can be cleared.
    fn begin_deal(&mut self) {}
}

impl<P: PlayPolicy + ?Sized> PlayPolicy for Box<P> {
    fn choose(&mut self, state: &PlayState, seat: Seat) -> Card {
        (**self).choose(state, seat)
    }

    fn begin_deal(&mut self) {
        (**self).begin_deal()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrickOutcome {
    pub per_seat: [u8; 4],
    pub declarer_tricks: u8,
    pub play_log: Vec<PlayRecord>,
}

impl TrickOutcome {
    pub fn defender_tricks(&self) -> u8 {
        TRICKS as u8 - self.declarer_tricks
    }
}

/// Plays all 13 tricks. `policies[s]` acts for seat `s`; the declarer's
/// policy also plays the phantom.
pub fn play_deal(
    deal: &Deal,
    contract: Contract,
    policies: &mut [&mut dyn PlayPolicy; 3],
    lead: OpeningLead,
) -> Result<TrickOutcome, PlayError> {
    let mut state = PlayState::new(deal, contract, lead);
    run_to_end(&mut state, policies)?;
    Ok(state.outcome())
}

/// Drives `state` to the end of the deal.
pub fn run_to_end(state: &mut PlayState, policies: &mut [&mut dyn PlayPolicy; 3]) -> Result<(), PlayError> {
    for p in policies.iter_mut() {
        p.begin_deal();
    }
    while !state.is_complete() {
        let seat = state.to_act();
        let card = policies[state.controller(seat)].choose(state, seat);
        if !state.legal_unchecked(seat).contains(card) {
            return Err(PlayError::IllegalPolicyPlay { seat, trick: state.completed + 1, card });
        }
        state.play(seat, card)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auction::{Denomination, Doubling};
    use crate::deck::{deal_random, parse_card};

    fn c(s: &str) -> Card {
        parse_card(s).unwrap()
    }

    fn trick(cards: &[&str]) -> Vec<(Seat, Card)> {
        cards.iter().enumerate().map(|(i, s)| (i, c(s))).collect()
    }

    #[test]
    fn winner_examples() {
        assert_eq!(trick_winner(&trick(&["5D", "KD", "2D", "9D"]), None).unwrap(), 1);
        assert_eq!(trick_winner(&trick(&["AS", "2H", "KS", "QS"]), Some(Suit::Hearts)).unwrap(), 1);
        assert_eq!(trick_winner(&trick(&["TC", "AS", "JC", "3C"]), Some(Suit::Hearts)).unwrap(), 2);
        assert_eq!(
            trick_winner(&trick(&["TC", "AS"]), None).unwrap_err(),
            PlayError::IncompleteTrick(2)
        );
    }

    fn contract(declarer: Seat, denom: Denomination) -> Contract {
        Contract::new(declarer, 1, denom, Doubling::None)
    }

    #[test]
    fn opening_leaders() {
        assert_eq!(OpeningLead::PrecedingDefender.leader(0), 2);
        assert_eq!(OpeningLead::PrecedingDefender.leader(1), 0);
        assert_eq!(OpeningLead::PrecedingDefender.leader(2), 1);
        assert_eq!(OpeningLead::FollowingDefender.leader(0), 1);
        assert_eq!(OpeningLead::FollowingDefender.leader(1), 2);
        assert_eq!(OpeningLead::FollowingDefender.leader(2), 0);
    }

    #[test]
    fn follow_suit_rules() {
        let mut hands = [Hand::EMPTY; 4];
        hands[0] = Hand::parse_list("4H KH AS").unwrap();
        hands[1] = Hand::parse_list("2H 3C 4C").unwrap();
        hands[2] = Hand::parse_list("5C 6C 7C").unwrap();
        hands[3] = Hand::parse_list("8C 9C TC").unwrap();
        let mut st = PlayState::from_hands(hands, contract(0, Denomination::NoTrump), 1);
        assert_eq!(st.legal_plays(1).unwrap(), hands[1]);
        assert!(matches!(st.legal_plays(0), Err(PlayError::OutOfTurn { expected: 1, got: 0 })));
        st.play(1, c("2H")).unwrap();
        // void in hearts: whole hand
        assert_eq!(st.legal_plays(2).unwrap(), hands[2]);
        st.play(2, c("5C")).unwrap();
        st.play(3, c("8C")).unwrap();
        assert_eq!(st.legal_plays(0).unwrap(), Hand::parse_list("4H KH").unwrap());
        assert!(matches!(st.play(0, c("AS")), Err(PlayError::MustFollowSuit { .. })));
        assert!(matches!(st.play(0, c("QH")), Err(PlayError::NotHeld { .. })));
        st.play(0, c("KH")).unwrap();
        assert_eq!(st.tricks_won(), [1, 0, 0, 0]);
        assert_eq!(st.leader(), 0);
    }

    #[test]
    fn full_lead_has_thirteen_options() {
        let d = deal_random(3);
        let st = PlayState::new(&d, contract(1, Denomination::Spades), OpeningLead::default());
        assert_eq!(st.legal_plays(0).unwrap().len(), 13);
        assert!(!st.dummy_revealed());
        assert_eq!(st.visible_hand(0, PHANTOM), None);
        assert_eq!(st.visible_hand(1, PHANTOM), Some(d.hands[3]));
    }

    struct FirstLegal;
    impl PlayPolicy for FirstLegal {
        fn choose(&mut self, state: &PlayState, seat: Seat) -> Card {
            state.legal_plays(seat).unwrap().iter().next().unwrap()
        }
    }

    struct Cheater;
    impl PlayPolicy for Cheater {
        fn choose(&mut self, state: &PlayState, seat: Seat) -> Card {
            let legal = state.legal_plays(seat).unwrap();
            state.hand(seat).difference(legal).iter().next().unwrap_or_else(|| legal.iter().next().unwrap())
        }
    }

    #[test]
    fn play_deal_conserves_tricks() {
        let d = deal_random(11);
        let (mut a, mut b, mut e) = (FirstLegal, FirstLegal, FirstLegal);
        let out = play_deal(&d, contract(2, Denomination::Hearts), &mut [&mut a, &mut b, &mut e], OpeningLead::default()).unwrap();
        assert_eq!(out.per_seat.iter().map(|&x| x as u32).sum::<u32>(), 13);
        assert_eq!(out.play_log.len(), 52);
        assert_eq!(out.declarer_tricks, out.per_seat[2] + out.per_seat[3]);
        let played: Hand = out.play_log.iter().map(|r| r.card).collect();
        assert_eq!(played, Hand::FULL_DECK);
    }

    #[test]
    fn illegal_policy_is_reported() {
        // find a deal where the cheater actually gets a chance to revoke
        for seed in 0..50 {
            let d = deal_random(seed);
            let (mut a, mut b, mut e) = (Cheater, FirstLegal, FirstLegal);
            let r = play_deal(&d, contract(1, Denomination::NoTrump), &mut [&mut a, &mut b, &mut e], OpeningLead::default());
            if let Err(err) = r {
                assert!(matches!(err, PlayError::IllegalPolicyPlay { seat: 0, .. }));
                return;
            }
        }
        panic!("no revoke opportunity found");
    }
}
