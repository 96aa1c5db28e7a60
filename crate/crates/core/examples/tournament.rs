//! A three-seat tournament with mixed strategies, scored under both
//! schemes, with per-deal rows and the spread of final totals.
//!
//! cargo run --release --example tournament -- [deals] [seat specs]

use tribridge::harness::{run_tournament, TournamentConfig};
use tribridge::policy::parse_seats;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let deals: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(12);
    let seats = parse_seats(&args.next().unwrap_or_else(|| "general+defensive,hcf+attack,lcf+bluff".into()))?;
    let config = TournamentConfig::new(seats, deals);
    let report = run_tournament(&config, 1234)?;

    for row in &report.rows {
        let tricks = row.declarer_tricks.map_or("-".to_string(), |t| t.to_string());
        let points: Vec<String> = row.per_seat_points.iter().map(|p| format!("{:?}", p.map(|x| x.to_string()))).collect();
        println!("deal {:>3}  {:<7} tricks {tricks:>2}  {:?}  {}", row.deal, row.contract, row.outcome, points.join(" "));
    }
    for col in &report.columns {
        println!("{:<8} totals {:?}  SD {:.1}", col.scheme.to_string(), col.totals.map(|p| p.to_string()), col.sd.population_sd);
    }
    for (seat, spec) in seats.iter().enumerate() {
        println!("seat {seat}: {spec}");
    }
    Ok(())
}
