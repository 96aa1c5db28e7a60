//! The three-seat auction.
//!
//! Seats 0, 1, 2 call in rotation starting from the opener. The opener may
//! not pass. Any seat other than the standing bidder may double an undoubled
//! bid; only the standing bidder may redouble. The auction closes once two
//! passes in a row follow the last bid, double or redouble.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::deck::{Seat, Suit};

pub const PLAYERS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Denomination {
    Clubs,
    Diamonds,
    Hearts,
    Spades,
    NoTrump,
}

impl Denomination {
    pub const ALL: [Denomination; 5] = [
        Denomination::Clubs,
        Denomination::Diamonds,
        Denomination::Hearts,
        Denomination::Spades,
        Denomination::NoTrump,
    ];

    pub fn trump(self) -> Option<Suit> {
        match self {
            Denomination::Clubs => Some(Suit::Clubs),
            Denomination::Diamonds => Some(Suit::Diamonds),
            Denomination::Hearts => Some(Suit::Hearts),
            Denomination::Spades => Some(Suit::Spades),
            Denomination::NoTrump => None,
        }
    }

    pub fn from_suit(suit: Suit) -> Denomination {
        Denomination::ALL[suit.index()]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        ["C", "D", "H", "S", "NT"][self.index()]
    }
}

impl fmt::Display for Denomination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl Serialize for Denomination {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bid {
    level: u8,
    denom: Denomination,
}

impl Bid {
    pub fn new(level: u8, denom: Denomination) -> Option<Bid> {
        (1..=7).contains(&level).then_some(Bid { level, denom })
    }

    pub fn level(self) -> u8 {
        self.level
    }

    pub fn denom(self) -> Denomination {
        self.denom
    }

    /// All 35 bids, lowest first.
    pub fn all() -> impl Iterator<Item = Bid> {
        (1..=7u8).flat_map(|level| Denomination::ALL.into_iter().map(move |denom| Bid { level, denom }))
    }
}

impl fmt::Display for Bid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.level, self.denom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Call {
    Bid(Bid),
    Pass,
    Double,
    Redouble,
}

impl Call {
    pub fn bid(level: u8, denom: Denomination) -> Call {
        Call::Bid(Bid::new(level, denom).expect("bid level must be 1..=7"))
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Call::Bid(b) => write!(f, "{b}"),
            Call::Pass => f.write_str("PASS"),
            Call::Double => f.write_str("X"),
            Call::Redouble => f.write_str("XX"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid call {0:?}: expected 1C..7NT, PASS, X or XX")]
pub struct CallParseError(pub String);

impl FromStr for Call {
    type Err = CallParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase();
        match up.as_str() {
            "PASS" | "P" => return Ok(Call::Pass),
            "X" => return Ok(Call::Double),
            "XX" => return Ok(Call::Redouble),
            _ => {}
        }
        let err = || CallParseError(s.to_string());
        let mut chars = up.chars();
        let level = chars.next().and_then(|c| c.to_digit(10)).ok_or_else(err)? as u8;
        let denom = match chars.as_str() {
            "C" => Denomination::Clubs,
            "D" => Denomination::Diamonds,
            "H" => Denomination::Hearts,
            "S" => Denomination::Spades,
            "NT" | "N" => Denomination::NoTrump,
            _ => return Err(err()),
        };
        Bid::new(level, denom).map(Call::Bid).ok_or_else(err)
    }
}

impl Serialize for Call {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Call {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Bid {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Doubling {
    #[default]
    None,
    Doubled,
    Redoubled,
}

impl Doubling {
    /// Score multiplier: 1, 2 or 4.
    pub fn multiplier(self) -> u32 {
        match self {
            Doubling::None => 1,
            Doubling::Doubled => 2,
            Doubling::Redoubled => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Doubling::None => "none",
            Doubling::Doubled => "doubled",
            Doubling::Redoubled => "redoubled",
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Doubling::None => "",
            Doubling::Doubled => "X",
            Doubling::Redoubled => "XX",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuctionError {
    #[error("auction is complete")]
    Complete,
    #[error("auction is not complete")]
    Incomplete,
    #[error("seat {got} called out of turn; seat {expected} is to act")]
    OutOfTurn { expected: Seat, got: Seat },
    #[error("the opening seat may not pass")]
    OpenerMustBid,
    #[error("bid {bid} does not exceed the standing bid {standing}")]
    InsufficientBid { bid: Bid, standing: Bid },
    #[error("double requires an undoubled bid by another seat")]
    IllegalDouble,
    #[error("redouble requires a doubled bid made by the caller")]
    IllegalRedouble,
}

impl AuctionError {
    /// Short rule identifier used in protocol rejections.
    pub fn rule(&self) -> &'static str {
        match self {
            AuctionError::Complete => "auction-complete",
            AuctionError::Incomplete => "auction-incomplete",
            AuctionError::OutOfTurn { .. } => "turn-order",
            AuctionError::OpenerMustBid => "forced-opening-bid",
            AuctionError::InsufficientBid { .. } => "ascending-bids",
            AuctionError::IllegalDouble => "double-eligibility",
            AuctionError::IllegalRedouble => "redouble-eligibility",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CallRecord {
    pub seat: Seat,
    pub call: Call,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AuctionState {
    opener: Seat,
    history: Vec<CallRecord>,
    high_bid: Option<(Seat, Bid)>,
    doubling: Doubling,
    consecutive_passes: u8,
}

impl AuctionState {
    pub fn new(opener: Seat) -> AuctionState {
        assert!(opener < PLAYERS, "opener must be seat 0..=2");
        AuctionState {
            opener,
            history: Vec::new(),
            high_bid: None,
            doubling: Doubling::None,
            consecutive_passes: 0,
        }
    }

    pub fn opener(&self) -> Seat {
        self.opener
    }

    pub fn history(&self) -> &[CallRecord] {
        &self.history
    }

    pub fn high_bid(&self) -> Option<Bid> {
        self.high_bid.map(|(_, b)| b)
    }

    pub fn high_bidder(&self) -> Option<Seat> {
        self.high_bid.map(|(s, _)| s)
    }

    pub fn doubling(&self) -> Doubling {
        self.doubling
    }

    pub fn consecutive_passes(&self) -> u8 {
        self.consecutive_passes
    }

    pub fn to_act(&self) -> Seat {
        (self.opener + self.history.len()) % PLAYERS
    }

    pub fn is_complete(&self) -> bool {
        self.high_bid.is_some() && self.consecutive_passes >= 2
    }

    fn check_turn(&self, seat: Seat) -> Result<(), AuctionError> {
        if self.is_complete() {
            return Err(AuctionError::Complete);
        }
        if seat != self.to_act() {
            return Err(AuctionError::OutOfTurn { expected: self.to_act(), got: seat });
        }
        Ok(())
    }

    /// Why `call` is illegal for `seat`, or `Ok` if it may be made.
    pub fn check_call(&self, seat: Seat, call: Call) -> Result<(), AuctionError> {
        self.check_turn(seat)?;
        match call {
            Call::Pass => {
                if self.high_bid.is_none() {
                    return Err(AuctionError::OpenerMustBid);
                }
            }
            Call::Bid(bid) => {
                if let Some((_, standing)) = self.high_bid {
                    if bid <= standing {
                        return Err(AuctionError::InsufficientBid { bid, standing });
                    }
                }
            }
            Call::Double => match self.high_bid {
                Some((bidder, _)) if bidder != seat && self.doubling == Doubling::None => {}
                _ => return Err(AuctionError::IllegalDouble),
            },
            Call::Redouble => match self.high_bid {
                Some((bidder, _)) if bidder == seat && self.doubling == Doubling::Doubled => {}
                _ => return Err(AuctionError::IllegalRedouble),
            },
        }
        Ok(())
    }

    pub fn legal_calls(&self, seat: Seat) -> Result<Vec<Call>, AuctionError> {
        self.check_turn(seat)?;
        let mut calls = Vec::with_capacity(38);
        if self.high_bid.is_some() {
            calls.push(Call::Pass);
        }
        for extra in [Call::Double, Call::Redouble] {
            if self.check_call(seat, extra).is_ok() {
                calls.push(extra);
            }
        }
        let floor = self.high_bid();
        calls.extend(Bid::all().filter(|b| floor.is_none_or(|f| *b > f)).map(Call::Bid));
        Ok(calls)
    }

    pub fn apply_call(&self, seat: Seat, call: Call) -> Result<AuctionState, AuctionError> {
        let mut next = self.clone();
        next.apply_in_place(seat, call)?;
        Ok(next)
    }

    pub fn apply_in_place(&mut self, seat: Seat, call: Call) -> Result<(), AuctionError> {
        self.check_call(seat, call)?;
        match call {
            Call::Pass => self.consecutive_passes += 1,
            Call::Bid(bid) => {
                self.high_bid = Some((seat, bid));
                self.doubling = Doubling::None;
                self.consecutive_passes = 0;
            }
            Call::Double => {
                self.doubling = Doubling::Doubled;
                self.consecutive_passes = 0;
            }
            Call::Redouble => {
                self.doubling = Doubling::Redoubled;
                self.consecutive_passes = 0;
            }
        }
        self.history.push(CallRecord { seat, call });
        Ok(())
    }

    pub fn contract(&self) -> Result<Contract, AuctionError> {
        if !self.is_complete() {
            return Err(AuctionError::Incomplete);
        }
        let (declarer, bid) = self.high_bid.expect("complete auction has a bid");
        Ok(Contract { declarer, level: bid.level, denom: bid.denom, doubling: self.doubling })
    }
}

/// Free-function forms of the state methods.
pub fn legal_calls(state: &AuctionState, seat: Seat) -> Result<Vec<Call>, AuctionError> {
    state.legal_calls(seat)
}

pub fn apply_call(state: &AuctionState, seat: Seat, call: Call) -> Result<AuctionState, AuctionError> {
    state.apply_call(seat, call)
}

pub fn contract_of(state: &AuctionState) -> Result<Contract, AuctionError> {
    state.contract()
}

/// The final bid. The declarer partners the phantom (seat 3); the other two
/// seats defend together for this deal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Contract {
    pub declarer: Seat,
    pub level: u8,
    pub denom: Denomination,
    pub doubling: Doubling,
}

impl Contract {
    pub fn new(declarer: Seat, level: u8, denom: Denomination, doubling: Doubling) -> Contract {
        assert!(declarer < PLAYERS && (1..=7).contains(&level));
        Contract { declarer, level, denom, doubling }
    }

    pub fn trump(&self) -> Option<Suit> {
        self.denom.trump()
    }

    pub fn target_tricks(&self) -> u8 {
        self.level + 6
    }

    pub fn defenders(&self) -> [Seat; 2] {
        let mut d = (0..PLAYERS).filter(|&s| s != self.declarer);
        [d.next().unwrap(), d.next().unwrap()]
    }

    /// Declarer or phantom.
    pub fn is_declaring_side(&self, seat: Seat) -> bool {
        seat == self.declarer || seat == crate::deck::PHANTOM
    }
}

impl fmt::Display for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.level, self.denom, self.doubling.suffix())
    }
}
