use serde::Serialize;

use super::{build_play, play_refs, HarnessError};
use crate::auction::{Contract, Denomination, Doubling};
use crate::deck::{Deal, Hand};
use crate::play::{run_to_end, OpeningLead, PlayState};
use crate::policy::PlaySpec;

/// Example deal: seats 0-3, seat 1 declaring no-trump with seat 3 as the
/// phantom.
const EXAMPLE1: [&str; 4] = [
    "6S 8S QS 2H 3H QH 6D QD 3C 4C 5C 7C JC",
    "5S 7S KS 4H TH AH 4D 5D 8D KD 9C TC AC",
    "2S 3S 4S 5H 9H JH KH 7D TD JD AD 6C QC",
    "9S TS JS AS 6H 7H 8H 2D 3D 9D 2C 8C KC",
];

pub const EXAMPLE1_STRATEGIES: [PlaySpec; 3] = [PlaySpec::Hcf, PlaySpec::Lcf, PlaySpec::General];

/// Published per-seat tricks for the strategies above.
pub const EXAMPLE1_PER_SEAT: [[u8; 4]; 3] = [[0, 4, 6, 3], [1, 4, 5, 3], [3, 2, 4, 4]];

/// Declarer and phantom hands of the ten fixed enumeration rows.
pub const TABLE3_HANDS: [(&str, &str); 10] = [
    ("2H 2S 5D 5H 6D 7H 8C 8S 9C JC QC TH TS", "2D 3C 3D 3H 4D 6H 7D 7S AH AS JS KD QD"),
    ("4D 4S 6D 6H 7S 8C 8D 9H AD JD QC TH TS", "3H 4C 5S 6C 6S 8H 9D AC JH JS KC QS TC"),
    ("2D 2S 3D 3H 4C 5H 6S 7S 8D 9C AH JD TD", "2C 4S 5C 5S 7D 8S AD AS JH JS KC KS QH"),
    ("2H 2S 3H 4S 5H 7C 7H 8C AC JD JH QH TH", "4D 4H 5C 6D 8D AH JC KH KS QD QS TC TS"),
    ("2H 2S 4D 7C 7D 8H 9S AH JS KC KS QD TH", "2D 3D 4C 4H 5C 6C 9C 9D JD QC QS TC TD"),
    ("2D 2S 3D 4C 6D 8H 8S 9C AS QD QH TC TS", "3C 3H 4D 5C 6H 7H AC JD JS KC QS TD TH"),
    ("2H 3D 5D 5S 8H 8S 9S JC JS KC QC TC TS", "2D 2S 3C 4C 5C 7D 7H 7S 8D 9D AC KH TH"),
    ("2C 3H 3S 6S 7D 9C 9S AC JD KC QD TH TS", "2D 2H 5C 5D 6C 6D 7S AS JC JS QC TC TD"),
    ("2D 2S 3D 4D 4H 5C 5D 8D JS KC KD TD TS", "2C 3C 3H 6H 6S 8S 9C 9D JH KH QC QS TH"),
    ("2S 3S 4C 4S 6C 6H 7D 8H 9S AS JC JH TH", "2C 4D 4H 5D 5S 6D 6S 7S 8C 8D AC KC TC"),
];

fn parse(text: &str) -> Hand {
    Hand::parse(text.split_whitespace()).expect("fixture hand")
}

pub fn example1_deal() -> Deal {
    Deal::new(0, EXAMPLE1.map(parse)).expect("fixture deal")
}

/// Row `row` (1-based) of the enumeration fixtures.
pub fn table3_hands(row: usize) -> Result<(Hand, Hand), HarnessError> {
    let (d, p) = TABLE3_HANDS.get(row.wrapping_sub(1)).ok_or(HarnessError::NoSuchRow(row))?;
    Ok((parse(d), parse(p)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FixtureRow {
    pub strategy: PlaySpec,
    pub per_seat: [u8; 4],
    /// Seats 0+2 and 1+3.
    pub teams: [u8; 2],
    pub expected_per_seat: [u8; 4],
    pub expected_teams: [u8; 2],
}

impl FixtureRow {
    pub fn teams_match(&self) -> bool {
        self.teams == self.expected_teams
    }

    pub fn per_seat_match(&self) -> bool {
        self.per_seat == self.expected_per_seat
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub lead: OpeningLead,
    pub rows: Vec<FixtureRow>,
}

fn teams(t: [u8; 4]) -> [u8; 2] {
    [t[0] + t[2], t[1] + t[3]]
}

/// Plays the example deal with every seat on the same strategy.
pub fn reproduce_fixtures(lead: OpeningLead) -> Result<FixtureReport, HarnessError> {
    let deal = example1_deal();
    let contract = Contract::new(1, 1, Denomination::NoTrump, Doubling::None);
    let mut rows = Vec::new();
    for (spec, expected) in EXAMPLE1_STRATEGIES.into_iter().zip(EXAMPLE1_PER_SEAT) {
        let mut boxes = build_play([spec; 3]);
        let mut state = PlayState::new(&deal, contract, lead);
        run_to_end(&mut state, &mut play_refs(&mut boxes))?;
        let per_seat = state.tricks_won();
        rows.push(FixtureRow {
            strategy: spec,
            per_seat,
            teams: teams(per_seat),
            expected_per_seat: expected,
            expected_teams: teams(expected),
        });
    }
    Ok(FixtureReport { lead, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for row in 1..=10 {
            let (d, p) = table3_hands(row).unwrap();
            assert_eq!((d.len(), p.len()), (13, 13));
            assert!(d.is_disjoint(p));
        }
        assert!(table3_hands(0).is_err());
        assert!(table3_hands(11).is_err());
    }

    #[test]
    fn example_one() {
        let r = reproduce_fixtures(OpeningLead::PrecedingDefender).unwrap();
        for row in &r.rows {
            assert_eq!(row.per_seat.iter().sum::<u8>(), 13);
            assert!(row.teams_match(), "{row:?}");
            assert!(row.per_seat_match(), "{row:?}");
        }
        let alt = reproduce_fixtures(OpeningLead::FollowingDefender).unwrap();
        assert!(alt.rows.iter().all(|r| r.teams_match()));
    }
}
