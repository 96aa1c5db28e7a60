//! Bidding and card-play policies, and the names used to configure them.
//!
//! Play policies: `hcf`, `lcf`, `general`, `defeat:<seat>`.
//! Bid policies: `points:<t1,t2,t3>`, `defensive`, `attack`, `bluff`.
//! A seat is configured as `<play>`, `<bid>` or `<play>+<bid>`; the missing
//! half defaults to `general` / `defensive`.

pub mod bid;
pub mod play;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::auction::PLAYERS;
use crate::deck::{PointScale, Seat};
use crate::play::PlayPolicy;

pub use bid::{
    heuristic_call, point_count_call, BidMode, BidPolicy, Heuristic, HeuristicConfig, PointCount, Thresholds,
};
pub use play::{
    defeat_seeking_choose, defeat_seeking_choose_counted, general_choose, general_choose_counted, hcf_choose,
    hcf_choose_counted, lcf_choose, lcf_choose_counted, DefeatSeeking, DefeatSeekingConfig, General, HighCardFirst,
    Inspections, LowCardFirst,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolicySpecError {
    #[error("unknown policy {0:?}")]
    Unknown(String),
    #[error("bad policy argument in {0:?}: {1}")]
    BadArgument(String, String),
    #[error("defeat-seeking seat {seat} cannot name itself as beneficiary")]
    SelfBeneficiary { seat: Seat },
    #[error("expected {expected} seat specs, got {got}")]
    SeatCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaySpec {
    Hcf,
    Lcf,
    General,
    DefeatSeeking(Seat),
}

impl PlaySpec {
    pub fn build(self) -> Box<dyn PlayPolicy + Send> {
        match self {
            PlaySpec::Hcf => Box::new(HighCardFirst),
            PlaySpec::Lcf => Box::new(LowCardFirst),
            PlaySpec::General => Box::new(General),
            PlaySpec::DefeatSeeking(b) => Box::new(DefeatSeeking(DefeatSeekingConfig { beneficiary: b })),
        }
    }
}

impl FromStr for PlaySpec {
    type Err = PolicySpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "hcf" => return Ok(PlaySpec::Hcf),
            "lcf" => return Ok(PlaySpec::Lcf),
            "general" | "gs" => return Ok(PlaySpec::General),
            _ => {}
        }
        if let Some(arg) = t.strip_prefix("defeat:") {
            let seat: Seat = arg
                .parse()
                .ok()
                .filter(|&b| b < PLAYERS)
                .ok_or_else(|| PolicySpecError::BadArgument(s.to_string(), "beneficiary must be seat 0..=2".into()))?;
            return Ok(PlaySpec::DefeatSeeking(seat));
        }
        Err(PolicySpecError::Unknown(s.to_string()))
    }
}

impl fmt::Display for PlaySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaySpec::Hcf => f.write_str("hcf"),
            PlaySpec::Lcf => f.write_str("lcf"),
            PlaySpec::General => f.write_str("general"),
            PlaySpec::DefeatSeeking(b) => write!(f, "defeat:{b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BidSpec {
    Points(Thresholds),
    Heuristic(BidMode),
}

impl BidSpec {
    pub fn build(self) -> Box<dyn BidPolicy + Send> {
        match self {
            BidSpec::Points(thresholds) => Box::new(PointCount { thresholds, scale: PointScale::default() }),
            BidSpec::Heuristic(mode) => Box::new(Heuristic::new(mode)),
        }
    }
}

impl FromStr for BidSpec {
    type Err = PolicySpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "defensive" => return Ok(BidSpec::Heuristic(BidMode::Defensive)),
            "attack" => return Ok(BidSpec::Heuristic(BidMode::Attack)),
            "bluff" => return Ok(BidSpec::Heuristic(BidMode::Bluff)),
            "points" => return Ok(BidSpec::Points(Thresholds::default())),
            _ => {}
        }
        if let Some(arg) = t.strip_prefix("points:") {
            return Thresholds::parse(arg)
                .map(BidSpec::Points)
                .map_err(|e| PolicySpecError::BadArgument(s.to_string(), e));
        }
        Err(PolicySpecError::Unknown(s.to_string()))
    }
}

impl fmt::Display for BidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BidSpec::Points(t) => write!(f, "points:{t}"),
            BidSpec::Heuristic(BidMode::Defensive) => f.write_str("defensive"),
            BidSpec::Heuristic(BidMode::Attack) => f.write_str("attack"),
            BidSpec::Heuristic(BidMode::Bluff) => f.write_str("bluff"),
        }
    }
}

/// Bidding and play policy for one seat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeatSpec {
    pub play: PlaySpec,
    pub bid: BidSpec,
}

impl Default for SeatSpec {
    fn default() -> Self {
        SeatSpec { play: PlaySpec::General, bid: BidSpec::Heuristic(BidMode::Defensive) }
    }
}

impl FromStr for SeatSpec {
    type Err = PolicySpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((p, b)) = s.split_once('+') {
            return Ok(SeatSpec { play: p.parse()?, bid: b.parse()? });
        }
        if let Ok(play) = s.parse::<PlaySpec>() {
            return Ok(SeatSpec { play, ..SeatSpec::default() });
        }
        match s.parse::<BidSpec>() {
            Ok(bid) => Ok(SeatSpec { bid, ..SeatSpec::default() }),
            Err(PolicySpecError::Unknown(_)) => Err(PolicySpecError::Unknown(s.to_string())),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for SeatSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.play, self.bid)
    }
}

impl Serialize for PlaySpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for BidSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for SeatSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl SeatSpec {
    pub fn check_seat(&self, seat: Seat) -> Result<(), PolicySpecError> {
        match self.play {
            PlaySpec::DefeatSeeking(b) if b == seat => Err(PolicySpecError::SelfBeneficiary { seat }),
            _ => Ok(()),
        }
    }
}

/// Splits a comma-separated seat list. Numeric pieces belong to the
/// preceding `points:` spec, so `points:20,25,30,hcf,lcf` is three seats.
pub fn split_seat_list(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for piece in text.split(',').map(str::trim) {
        let numeric = !piece.is_empty() && piece.chars().all(|c| c.is_ascii_digit());
        match out.last_mut() {
            Some(last) if numeric && last.contains("points:") => {
                last.push(',');
                last.push_str(piece);
            }
            _ => out.push(piece.to_string()),
        }
    }
    out
}

/// Parses exactly three seat specs and checks each against its seat.
pub fn parse_seats(text: &str) -> Result<[SeatSpec; PLAYERS], PolicySpecError> {
    let parts = split_seat_list(text);
    if parts.len() != PLAYERS {
        return Err(PolicySpecError::SeatCount { expected: PLAYERS, got: parts.len() });
    }
    let mut seats = [SeatSpec::default(); PLAYERS];
    for (i, p) in parts.iter().enumerate() {
        seats[i] = p.parse()?;
        seats[i].check_seat(i)?;
    }
    Ok(seats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in ["hcf", "lcf", "general", "defeat:2"] {
            assert_eq!(name.parse::<PlaySpec>().unwrap().to_string(), name);
        }
        for name in ["points:20,25,30", "defensive", "attack", "bluff"] {
            assert_eq!(name.parse::<BidSpec>().unwrap().to_string(), name);
        }
        assert!("defeat:3".parse::<PlaySpec>().is_err());
        assert!("points:30,25,20".parse::<BidSpec>().is_err());
        assert!(matches!("random".parse::<SeatSpec>(), Err(PolicySpecError::Unknown(_))));
    }

    #[test]
    fn seat_lists() {
        let seats = parse_seats("points:20,25,30,hcf,lcf+bluff").unwrap();
        assert_eq!(seats[0].bid, BidSpec::Points(Thresholds::new([20, 25, 30]).unwrap()));
        assert_eq!(seats[1].play, PlaySpec::Hcf);
        assert_eq!(seats[2], SeatSpec { play: PlaySpec::Lcf, bid: BidSpec::Heuristic(BidMode::Bluff) });
        assert!(matches!(parse_seats("general,general"), Err(PolicySpecError::SeatCount { .. })));
        assert!(matches!(
            parse_seats("defeat:0,general,general"),
            Err(PolicySpecError::SelfBeneficiary { seat: 0 })
        ));
        assert!(parse_seats("general,defeat:0,general").is_ok());
    }
}
