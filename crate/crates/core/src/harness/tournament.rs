use rayon::prelude::*;
use serde::Serialize;

use super::{build_play, play_refs, HarnessError, Meta};
use crate::analytics::{moments, MomentSummary};
use crate::auction::{AuctionState, CallRecord, Contract, Denomination, Doubling, PLAYERS};
use crate::deck::{deal_random, derive_seed, Seat, PHANTOM};
use crate::play::{run_to_end, OpeningLead, PlayState};
use crate::policy::{BidPolicy, SeatSpec};
use crate::scoring::{score_deal, settlement_csv_row, HonorsInfo, Points, Scheme, SETTLEMENT_CSV_HEADER};

/// Generous bound: a legal auction has at most 35 bids, each followed by
/// at most a double, a redouble and two passes.
const MAX_CALLS: usize = 35 * 4 + 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TournamentConfig {
    pub seats: [SeatSpec; PLAYERS],
    pub deals: u64,
    pub schemes: Vec<Scheme>,
    pub lead: OpeningLead,
}

impl TournamentConfig {
    pub fn new(seats: [SeatSpec; PLAYERS], deals: u64) -> TournamentConfig {
        TournamentConfig { seats, deals, schemes: Scheme::BOTH.to_vec(), lead: OpeningLead::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DealOutcome {
    Win,
    Loss,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DealRow {
    pub deal: u64,
    pub bidder: Seat,
    pub contract: Contract,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declarer_tricks: Option<u8>,
    pub outcome: DealOutcome,
    pub doubling: Doubling,
    /// Per-seat points, one entry per scheme of the report.
    pub per_seat_points: Vec<[Points; PLAYERS]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub auction: Vec<CallRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SchemeColumn {
    pub scheme: Scheme,
    pub totals: [Points; PLAYERS],
    pub sd: MomentSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TournamentReport {
    pub schemes: Vec<Scheme>,
    pub rows: Vec<DealRow>,
    pub columns: Vec<SchemeColumn>,
}

impl TournamentReport {
    /// Column totals and the spread of the per-seat totals for each scheme.
    pub fn from_rows(schemes: Vec<Scheme>, rows: Vec<DealRow>) -> TournamentReport {
        let columns = schemes
            .iter()
            .enumerate()
            .map(|(k, &scheme)| {
                let mut totals = [Points::ZERO; PLAYERS];
                for r in &rows {
                    for (t, &p) in totals.iter_mut().zip(&r.per_seat_points[k]) {
                        *t += p;
                    }
                }
                let xs: Vec<f64> = totals.iter().map(|p| p.as_f64()).collect();
                let sd = moments(&xs).expect("three seats");
                SchemeColumn { scheme, totals, sd }
            })
            .collect();
        TournamentReport { schemes, rows, columns }
    }

    pub fn with_meta<'a>(&'a self, seed: u64, config: &'a TournamentConfig) -> Meta<&'a TournamentConfig, &'a Self> {
        Meta::new(seed, config, self)
    }

    pub fn csv_header(&self) -> Vec<String> {
        let mut h: Vec<String> = ["deal", "bidder", "contract", "tricks", "outcome", "doubling"]
            .map(String::from)
            .to_vec();
        for s in &self.schemes {
            h.extend((0..PLAYERS).map(|p| format!("{s}_{p}")));
        }
        h
    }

    pub fn settlement_csv_header() -> Vec<String> {
        SETTLEMENT_CSV_HEADER.map(String::from).to_vec()
    }

    /// One row per deal and scheme in the settlement CSV format.
    pub fn settlement_csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .flat_map(|r| {
                self.schemes.iter().zip(&r.per_seat_points).map(|(&scheme, pts)| {
                    settlement_csv_row(r.deal, &r.contract, r.declarer_tricks, scheme, pts)
                })
            })
            .collect()
    }

    /// Deal rows followed by a `total` row and an `sd` row.
    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut out = Vec::with_capacity(self.rows.len() + 2);
        for r in &self.rows {
            let mut row = vec![
                r.deal.to_string(),
                r.bidder.to_string(),
                r.contract.to_string(),
                r.declarer_tricks.map(|t| t.to_string()).unwrap_or_default(),
                format!("{:?}", r.outcome),
                format!("{:?}", r.doubling).to_lowercase(),
            ];
            for pts in &r.per_seat_points {
                row.extend(pts.iter().map(|p| p.to_string()));
            }
            out.push(row);
        }
        let blank = || vec![String::new(); 5];
        let mut total = vec!["total".to_string()];
        total.extend(blank());
        let mut sd = vec!["sd".to_string()];
        sd.extend(blank());
        for c in &self.columns {
            total.extend(c.totals.iter().map(|p| p.to_string()));
            sd.push(format!("{:.1}", c.sd.population_sd));
            sd.extend([String::new(), String::new()]);
        }
        out.push(total);
        out.push(sd);
        out
    }
}

fn play_one(config: &TournamentConfig, seed: u64, index: u64) -> Result<DealRow, HarnessError> {
    let deal = deal_random(derive_seed(seed, index));
    let opener = (index % PLAYERS as u64) as Seat;
    let mut bidders: Vec<Box<dyn BidPolicy + Send>> = config.seats.iter().map(|s| s.bid.build()).collect();
    let mut auction = AuctionState::new(opener);
    while !auction.is_complete() {
        if auction.history().len() >= MAX_CALLS {
            return Err(HarnessError::RunawayAuction(MAX_CALLS));
        }
        let seat = auction.to_act();
        let call = bidders[seat].call(&auction, deal.hand(seat), seat);
        auction.apply_in_place(seat, call)?;
    }
    let contract = auction.contract()?;

    let mut players = build_play(config.seats.map(|s| s.play));
    let mut state = PlayState::new(&deal, contract, config.lead);
    run_to_end(&mut state, &mut play_refs(&mut players))?;
    let tricks = state.declarer_side_tricks();

    let honors = HonorsInfo::from_hands(deal.hand(contract.declarer), deal.hand(PHANTOM), contract.denom);
    let per_seat_points = config
        .schemes
        .iter()
        .map(|&scheme| score_deal(&contract, tricks, &honors, scheme).per_seat_delta)
        .collect();
    Ok(DealRow {
        deal: index,
        bidder: contract.declarer,
        contract,
        declarer_tricks: Some(tricks),
        outcome: if tricks >= contract.target_tricks() { DealOutcome::Win } else { DealOutcome::Loss },
        doubling: contract.doubling,
        per_seat_points,
        auction: auction.history().to_vec(),
    })
}

/// Plays `config.deals` deals, rotating the opener, and settles each under
/// every requested scheme.
pub fn run_tournament(config: &TournamentConfig, seed: u64) -> Result<TournamentReport, HarnessError> {
    for (i, s) in config.seats.iter().enumerate() {
        s.check_seat(i)?;
    }
    let rows = (0..config.deals)
        .into_par_iter()
        .map(|i| play_one(config, seed, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TournamentReport::from_rows(config.schemes.clone(), rows))
}

/// The twelve printed deals of the previous-vs-new comparison table, as
/// (bidder, level, denomination, won, doubled, previous points, new points).
type PrintedRow = (Seat, u8, Denomination, bool, bool, [f64; 3], [f64; 3]);

const PRINTED_ROWS: [PrintedRow; 12] = {
    use Denomination::*;
    [
        (1, 3, Hearts, true, false, [0.0, 24.0, 0.0], [0.0, 80.0, 0.0]),
        (2, 1, Hearts, true, false, [0.0, 0.0, 8.0], [0.0, 0.0, 68.0]),
        (2, 2, Diamonds, false, false, [25.0, 25.0, 0.0], [25.0, 25.0, 0.0]),
        (0, 2, Spades, true, false, [18.0, 0.0, 0.0], [76.5, 0.0, 0.0]),
        (2, 3, Clubs, false, false, [50.0, 50.0, 0.0], [50.0, 50.0, 0.0]),
        (2, 2, Spades, false, true, [100.0, 100.0, 0.0], [100.0, 100.0, 0.0]),
        (0, 2, Spades, false, true, [0.0, 150.0, 150.0], [0.0, 150.0, 150.0]),
        (2, 1, Spades, true, false, [0.0, 0.0, 9.0], [0.0, 0.0, 72.0]),
        (2, 2, Hearts, false, true, [150.0, 150.0, 0.0], [150.0, 150.0, 0.0]),
        (0, 2, Spades, false, true, [0.0, 50.0, 50.0], [0.0, 50.0, 50.0]),
        (1, 2, Hearts, false, false, [100.0, 0.0, 100.0], [100.0, 0.0, 100.0]),
        (1, 4, Spades, false, false, [75.0, 0.0, 75.0], [75.0, 0.0, 75.0]),
    ]
};

/// The printed comparison table as report rows (players A, B, C are seats
/// 0, 1, 2; trick counts were not printed).
pub fn printed_tournament_rows() -> Vec<DealRow> {
    let pts = |xs: [f64; 3]| xs.map(|x| Points::from_halves((x * 2.0) as i64));
    PRINTED_ROWS
        .iter()
        .enumerate()
        .map(|(i, &(bidder, level, denom, won, doubled, prev, new))| {
            let doubling = if doubled { Doubling::Doubled } else { Doubling::None };
            DealRow {
                deal: i as u64 + 1,
                bidder,
                contract: Contract::new(bidder, level, denom, doubling),
                declarer_tricks: None,
                outcome: if won { DealOutcome::Win } else { DealOutcome::Loss },
                doubling,
                per_seat_points: vec![pts(prev), pts(new)],
                auction: Vec::new(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::parse_seats;

    #[test]
    fn printed_totals_and_spread() {
        let r = TournamentReport::from_rows(Scheme::BOTH.to_vec(), printed_tournament_rows());
        let prev = &r.columns[0];
        let new = &r.columns[1];
        assert_eq!(prev.totals.map(|p| p.as_f64()), [518.0, 549.0, 392.0]);
        assert_eq!(new.totals.map(|p| p.as_f64()), [576.5, 605.0, 515.0]);
        assert!((prev.sd.population_sd - 67.9).abs() < 0.05);
        assert!((new.sd.population_sd - 37.6).abs() < 0.05);
        let csv = r.csv_rows();
        assert_eq!(csv.len(), 14);
        assert_eq!(csv[12][6], "518");
        assert_eq!(csv[13][6], "67.9");
    }

    #[test]
    fn deterministic_and_structural() {
        let seats = parse_seats("general,defensive,hcf+attack").unwrap();
        let cfg = TournamentConfig::new(seats, 9);
        let a = run_tournament(&cfg, 3).unwrap();
        let b = run_tournament(&cfg, 3).unwrap();
        assert_eq!(a, b);
        for (i, row) in a.rows.iter().enumerate() {
            assert_eq!(row.auction[0].seat, i % 3);
            let won = row.declarer_tricks.unwrap() >= row.contract.target_tricks();
            assert_eq!(won, row.outcome == DealOutcome::Win);
            assert_eq!(row.per_seat_points.len(), 2);
        }
    }
}
