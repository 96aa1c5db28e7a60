//! Settlement of a played deal under the two scoring schemes.
//!
//! Scores move in half points (spades are 4.5 a trick under the previous
//! scheme), so [`Points`] stores half-point units and stays exact.
//!
//! Made contract (`odd = tricks - 6 >= level`, `m` = 1/2/4 for none/X/XX):
//! - odd tricks: `odd * value * m`, `value` per denomination is
//!   3/3.5/4/4.5/5 under [`Scheme::Previous`] and twice that under [`Scheme::New`];
//! - doubled or redoubled: `25 * m/2` per overtrick and the same again as an insult bonus;
//! - [`Scheme::New`] only: half the full trick value per overtrick, never doubled;
//! - slam: 50 (12 tricks) or 100 (13 tricks), times `m`;
//! - honours, which are never scaled.
//!
//! Failed contract: each defender gets `25 * m` per undertrick. The declarer
//! still collects honours.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize, Serializer};

use crate::auction::{Contract, Denomination, Doubling, PLAYERS};
use crate::deck::{Card, Hand, Rank, Suit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Previous,
    New,
}

impl Scheme {
    pub const BOTH: [Scheme; 2] = [Scheme::Previous, Scheme::New];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Previous => "prev",
            Scheme::New => "new",
        }
    }

    pub fn parse(text: &str) -> Option<Scheme> {
        match text.trim().to_ascii_lowercase().as_str() {
            "prev" | "previous" | "old" => Some(Scheme::Previous),
            "new" => Some(Scheme::New),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A score in half-point units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Points(i64);

impl Points {
    pub const ZERO: Points = Points(0);

    pub fn from_halves(halves: i64) -> Points {
        Points(halves)
    }

    pub fn whole(points: i64) -> Points {
        Points(points * 2)
    }

    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Parses `76.5`, `24` or `-3.5`; anything finer than a half point is rejected.
    pub fn parse(text: &str) -> Option<Points> {
        let v: f64 = text.trim().parse().ok()?;
        let halves = v * 2.0;
        (halves.fract() == 0.0 && halves.is_finite()).then_some(Points(halves as i64))
    }
}

impl fmt::Display for Points {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let a = self.0.unsigned_abs();
        if a.is_multiple_of(2) {
            write!(f, "{sign}{}", a / 2)
        } else {
            write!(f, "{sign}{}.5", a / 2)
        }
    }
}

impl Serialize for Points {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 % 2 == 0 {
            s.serialize_i64(self.0 / 2)
        } else {
            s.serialize_f64(self.as_f64())
        }
    }
}

impl Add for Points {
    type Output = Points;
    fn add(self, o: Points) -> Points {
        Points(self.0 + o.0)
    }
}

impl AddAssign for Points {
    fn add_assign(&mut self, o: Points) {
        self.0 += o.0;
    }
}

impl Sub for Points {
    type Output = Points;
    fn sub(self, o: Points) -> Points {
        Points(self.0 - o.0)
    }
}

impl Neg for Points {
    type Output = Points;
    fn neg(self) -> Points {
        Points(-self.0)
    }
}

impl Mul<i64> for Points {
    type Output = Points;
    fn mul(self, k: i64) -> Points {
        Points(self.0 * k)
    }
}

impl Sum for Points {
    fn sum<I: Iterator<Item = Points>>(iter: I) -> Points {
        iter.fold(Points::ZERO, Add::add)
    }
}

/// Value of one odd trick; `full` is twice the halved value.
pub fn trick_value(denom: Denomination, full: bool) -> Points {
    let halved_in_halves = [6, 7, 8, 9, 10][denom.index()];
    Points::from_halves(if full { 2 * halved_in_halves } else { halved_in_halves })
}

/// Honour cards held by the declaring side: trump A K Q J T, or the aces at no-trump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct HonorsInfo {
    pub declarer: Hand,
    pub dummy: Hand,
}

impl HonorsInfo {
    pub fn none() -> HonorsInfo {
        HonorsInfo::default()
    }

    pub fn honor_cards(denom: Denomination) -> Hand {
        match denom.trump() {
            Some(suit) => Rank::HONORS.iter().map(|&r| Card::new(r, suit)).collect(),
            None => Suit::ALL.iter().map(|&s| Card::new(Rank::Ace, s)).collect(),
        }
    }

    pub fn from_hands(declarer: Hand, dummy: Hand, denom: Denomination) -> HonorsInfo {
        let honors = HonorsInfo::honor_cards(denom);
        HonorsInfo { declarer: declarer.intersection(honors), dummy: dummy.intersection(honors) }
    }
}

/// Honour bonus, first matching tier:
/// all honours in one hand (five trumps, or four aces at no-trump) 100;
/// four trump honours in one hand 80; three or more between the two hands
/// 10 each; otherwise 10 for each honour in the phantom hand.
pub fn honors_points(honors: &HonorsInfo, denom: Denomination) -> u32 {
    let domain = HonorsInfo::honor_cards(denom);
    let d = honors.declarer.intersection(domain).len() as u32;
    let p = honors.dummy.intersection(domain).len() as u32;
    let all = domain.len() as u32;
    if d == all || p == all {
        100
    } else if denom != Denomination::NoTrump && (d == 4 || p == 4) {
        80
    } else if d + p >= 3 {
        10 * (d + p)
    } else {
        10 * p
    }
}

/// 50 for twelve tricks, 100 for thirteen, scaled by the doubling multiplier.
pub fn slam_bonus(declarer_tricks: u8, doubling: Doubling) -> u32 {
    let base = match declarer_tricks {
        12 => 50,
        13 => 100,
        _ => 0,
    };
    base * doubling.multiplier()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Breakdown {
    pub trick_points: Points,
    pub overtrick_points: Points,
    pub insult: Points,
    pub slam_bonus: Points,
    pub honors: Points,
    /// Paid to each defender.
    pub penalties: Points,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Settlement {
    pub scheme: Scheme,
    pub made: bool,
    pub per_seat_delta: [Points; PLAYERS],
    pub breakdown: Breakdown,
}

pub fn score_deal(contract: &Contract, declarer_tricks: u8, honors: &HonorsInfo, scheme: Scheme) -> Settlement {
    assert!(declarer_tricks <= 13, "at most 13 tricks");
    let level = contract.level as i64;
    let odd = declarer_tricks as i64 - 6;
    let m = contract.doubling.multiplier() as i64;
    let mut b = Breakdown { honors: Points::whole(honors_points(honors, contract.denom) as i64), ..Breakdown::default() };
    let mut per_seat = [Points::ZERO; PLAYERS];
    let made = odd >= level;
    if made {
        let over = odd - level;
        let value = trick_value(contract.denom, scheme == Scheme::New);
        b.trick_points = value * (odd * m);
        if contract.doubling != Doubling::None {
            b.overtrick_points = Points::whole(25 * (m / 2) * over);
            b.insult = Points::whole(25 * (m / 2));
        }
        if scheme == Scheme::New {
            b.overtrick_points += Points::from_halves(trick_value(contract.denom, true).halves() * over / 2);
        }
        b.slam_bonus = Points::whole(slam_bonus(declarer_tricks, contract.doubling) as i64);
        per_seat[contract.declarer] = b.trick_points + b.overtrick_points + b.insult + b.slam_bonus + b.honors;
    } else {
        b.penalties = Points::whole((level + 6 - declarer_tricks as i64) * 25 * m);
        for d in contract.defenders() {
            per_seat[d] = b.penalties;
        }
        per_seat[contract.declarer] = b.honors;
    }
    Settlement { scheme, made, per_seat_delta: per_seat, breakdown: b }
}

pub const SETTLEMENT_CSV_HEADER: [&str; 9] =
    ["game", "bidder", "contract", "doubling", "tricks", "scheme", "p0", "p1", "p2"];

/// One settlement as a CSV row under [`SETTLEMENT_CSV_HEADER`]. The contract
/// column omits the doubling, which has its own column.
pub fn settlement_csv_row(
    game: u64,
    contract: &Contract,
    declarer_tricks: Option<u8>,
    scheme: Scheme,
    per_seat: &[Points; PLAYERS],
) -> Vec<String> {
    let mut row = vec![
        game.to_string(),
        contract.declarer.to_string(),
        format!("{}{}", contract.level, contract.denom),
        contract.doubling.name().to_string(),
        declarer_tricks.map(|t| t.to_string()).unwrap_or_default(),
        scheme.to_string(),
    ];
    row.extend(per_seat.iter().map(Points::to_string));
    row
}

impl Settlement {
    pub fn csv_row(&self, game: u64, contract: &Contract, declarer_tricks: u8) -> Vec<String> {
        settlement_csv_row(game, contract, Some(declarer_tricks), self.scheme, &self.per_seat_delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Denomination::*;

    fn con(declarer: usize, level: u8, d: Denomination, x: Doubling) -> Contract {
        Contract::new(declarer, level, d, x)
    }

    fn pts(p: f64) -> Points {
        Points::parse(&p.to_string()).unwrap()
    }

    #[test]
    fn trick_values() {
        let halved: Vec<f64> = Denomination::ALL.iter().map(|&d| trick_value(d, false).as_f64()).collect();
        assert_eq!(halved, vec![3.0, 3.5, 4.0, 4.5, 5.0]);
        for d in Denomination::ALL {
            assert_eq!(trick_value(d, true), trick_value(d, false) * 2);
        }
    }

    #[test]
    fn previous_scheme_examples() {
        let none = HonorsInfo::none();
        let s = score_deal(&con(0, 2, Hearts, Doubling::None), 9, &none, Scheme::Previous);
        assert_eq!(s.per_seat_delta, [pts(12.0), Points::ZERO, Points::ZERO]);

        let s = score_deal(&con(2, 3, Clubs, Doubling::None), 7, &none, Scheme::Previous);
        assert!(!s.made);
        assert_eq!(s.per_seat_delta, [pts(50.0), pts(50.0), Points::ZERO]);

        let s = score_deal(&con(1, 2, Spades, Doubling::Doubled), 9, &none, Scheme::Previous);
        assert_eq!(s.per_seat_delta[1], pts(77.0));
        assert_eq!(s.breakdown.trick_points, pts(27.0));
        assert_eq!(s.breakdown.overtrick_points, pts(25.0));
        assert_eq!(s.breakdown.insult, pts(25.0));

        let s = score_deal(&con(0, 1, Clubs, Doubling::Redoubled), 6, &none, Scheme::Previous);
        assert_eq!(s.per_seat_delta, [Points::ZERO, pts(100.0), pts(100.0)]);
    }

    #[test]
    fn new_scheme_example() {
        let s = score_deal(&con(0, 2, Hearts, Doubling::None), 9, &HonorsInfo::none(), Scheme::New);
        assert_eq!(s.per_seat_delta[0], pts(28.0));
        assert_eq!(s.breakdown.overtrick_points, pts(4.0));
        // half-point overtrick bonus in diamonds
        let s = score_deal(&con(0, 1, Diamonds, Doubling::None), 8, &HonorsInfo::none(), Scheme::New);
        assert_eq!(s.per_seat_delta[0], pts(17.5));
        assert_eq!(s.per_seat_delta[0].to_string(), "17.5");
    }

    #[test]
    fn slam_examples() {
        assert_eq!(slam_bonus(11, Doubling::None), 0);
        assert_eq!(slam_bonus(13, Doubling::None), 100);
        assert_eq!(slam_bonus(12, Doubling::Doubled), 100);
        assert_eq!(slam_bonus(12, Doubling::Redoubled), 200);
        for scheme in Scheme::BOTH {
            let s = score_deal(&con(0, 1, Clubs, Doubling::None), 12, &HonorsInfo::none(), scheme);
            assert_eq!(s.breakdown.slam_bonus, pts(50.0));
        }
    }

    fn honors(decl: &str, dummy: &str) -> HonorsInfo {
        HonorsInfo { declarer: Hand::parse_list(decl).unwrap(), dummy: Hand::parse_list(dummy).unwrap() }
    }

    #[test]
    fn honors_examples() {
        assert_eq!(honors_points(&honors("AH KH QH JH", ""), Hearts), 80);
        assert_eq!(honors_points(&honors("AH KH QH JH TH", ""), Hearts), 100);
        assert_eq!(honors_points(&honors("AS KS", "QS"), Spades), 30);
        assert_eq!(honors_points(&honors("AC AD AH AS", ""), NoTrump), 100);
        assert_eq!(honors_points(&honors("", "KD"), Diamonds), 10);
        assert_eq!(honors_points(&honors("AD KD", ""), Diamonds), 0);
        assert_eq!(honors_points(&honors("", "AC KC QC JC TC"), Clubs), 100);
        // off-trump cards do not count
        assert_eq!(honors_points(&honors("AS KS QS", ""), Hearts), 0);
    }

    #[test]
    fn honors_from_hands() {
        let d = Hand::parse_list("AH KH 2H AS").unwrap();
        let p = Hand::parse_list("QH 9H AC").unwrap();
        let h = HonorsInfo::from_hands(d, p, Hearts);
        assert_eq!(h.declarer, Hand::parse_list("AH KH").unwrap());
        assert_eq!(honors_points(&h, Hearts), 30);
        let h = HonorsInfo::from_hands(d, p, NoTrump);
        assert_eq!(h.declarer.len() + h.dummy.len(), 3);
    }

    #[test]
    fn failed_declarer_keeps_honors() {
        let h = honors("AH KH QH JH", "");
        let s = score_deal(&con(1, 4, Hearts, Doubling::None), 8, &h, Scheme::New);
        assert!(!s.made);
        assert_eq!(s.per_seat_delta, [pts(50.0), pts(80.0), pts(50.0)]);
    }

    #[test]
    fn points_text() {
        assert_eq!(Points::parse("76.5").unwrap().halves(), 153);
        assert!(Points::parse("1.25").is_none());
        assert_eq!((-Points::from_halves(7)).to_string(), "-3.5");
        assert_eq!(serde_json::to_string(&Points::from_halves(153)).unwrap(), "76.5");
        assert_eq!(serde_json::to_string(&Points::whole(24)).unwrap(), "24");
    }

    #[test]
    fn settlement_csv() {
        let c = con(2, 3, Clubs, Doubling::Doubled);
        let s = score_deal(&c, 7, &HonorsInfo::none(), Scheme::New);
        assert_eq!(s.csv_row(4, &c, 7), ["4", "2", "3C", "doubled", "7", "new", "100", "100", "0"]);
    }
}
