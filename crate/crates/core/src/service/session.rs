use serde::{Deserialize, Serialize};

use super::ServiceError;
use crate::auction::{AuctionState, Call, CallRecord, Contract, PLAYERS};
use crate::deck::{deal_random, derive_seed, Card, Deal, Hand, Seat, PHANTOM};
use crate::play::{OpeningLead, PlayPolicy, PlayRecord, PlayState};
use crate::policy::{BidPolicy, PolicySpecError, SeatSpec};
use crate::scoring::{score_deal, HonorsInfo, Points, Scheme, Settlement};

/// Who sits in a seat: `"human"` or a bot policy such as `"general+attack"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeatKind {
    Human,
    Bot(SeatSpec),
}

impl Serialize for SeatKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SeatKind::Human => s.serialize_str("human"),
            SeatKind::Bot(spec) => s.collect_str(spec),
        }
    }
}

impl<'de> Deserialize<'de> for SeatKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text.eq_ignore_ascii_case("human") {
            return Ok(SeatKind::Human);
        }
        text.parse().map(SeatKind::Bot).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SessionConfig {
    pub seats: Vec<SeatKind>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Start the next deal as soon as one is settled.
    #[serde(default = "yes")]
    pub auto_next_deal: bool,
    #[serde(default, skip_deserializing)]
    pub lead: OpeningLead,
}

fn yes() -> bool {
    true
}

impl SessionConfig {
    pub fn new(seats: [SeatKind; PLAYERS], seed: Option<u64>) -> SessionConfig {
        SessionConfig { seats: seats.to_vec(), seed, auto_next_deal: true, lead: OpeningLead::default() }
    }
}

/// A move submitted by a seat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Action {
    Call(Call),
    /// A card from the hand now to play; the declarer also plays the
    /// phantom's cards.
    Play(Card),
    /// Start the next deal once the current one is settled.
    NextDeal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseName {
    Auction,
    Play,
    Finished,
}

enum Phase {
    Auction,
    Play(Box<PlayState>),
    Finished(Box<PlayState>),
}

struct Bot {
    bid: Box<dyn BidPolicy + Send>,
    play: Box<dyn PlayPolicy + Send>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DealResult {
    pub deal_number: u64,
    pub contract: Contract,
    pub declarer_tricks: u8,
    pub settlements: Vec<Settlement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrickCard {
    pub seat: Seat,
    pub card: Card,
}

/// Everything one seat may see.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeatView {
    pub session_id: String,
    pub seat: Seat,
    pub state_version: u64,
    pub deal_number: u64,
    pub phase: PhaseName,
    pub seats: Vec<SeatKind>,
    pub hand: Hand,
    /// The phantom hand, present once the opening lead has been made.
    pub dummy: Option<Hand>,
    pub opener: Seat,
    pub auction: Vec<CallRecord>,
    pub contract: Option<Contract>,
    pub current_trick: Vec<TrickCard>,
    pub play_log: Vec<PlayRecord>,
    pub tricks_won: [u8; 4],
    /// The hand whose turn it is (3 = phantom), if any.
    pub to_act: Option<Seat>,
    /// The seat that must submit the next action.
    pub awaiting: Option<Seat>,
    pub legal_actions: Vec<Action>,
    /// Cumulative totals, keyed by scheme.
    pub scores: Vec<(Scheme, [Points; PLAYERS])>,
    pub results: Vec<DealResult>,
}

pub struct Session {
    id: String,
    config: SessionConfig,
    seed: u64,
    deal_number: u64,
    deal: Deal,
    auction: AuctionState,
    phase: Phase,
    bots: Vec<Option<Bot>>,
    version: u64,
    totals: [[Points; PLAYERS]; 2],
    results: Vec<DealResult>,
}

/// Safety bound on bot moves between two human turns.
const MAX_BOT_STEPS: usize = 4 * 200;

impl Session {
    pub fn new(id: String, config: SessionConfig, seed: u64) -> Result<Session, ServiceError> {
        if config.seats.len() != PLAYERS {
            return Err(ServiceError::BadConfig(format!("need exactly {PLAYERS} seats, got {}", config.seats.len())));
        }
        if !config.seats.contains(&SeatKind::Human) {
            return Err(ServiceError::BadConfig("at least one seat must be human".into()));
        }
        let mut bots = Vec::new();
        for (i, kind) in config.seats.iter().enumerate() {
            bots.push(match kind {
                SeatKind::Human => None,
                SeatKind::Bot(spec) => {
                    spec.check_seat(i).map_err(|e: PolicySpecError| ServiceError::BadConfig(e.to_string()))?;
                    Some(Bot { bid: spec.bid.build(), play: spec.play.build() })
                }
            });
        }
        let mut s = Session {
            id,
            config,
            seed,
            deal_number: 0,
            deal: deal_random(derive_seed(seed, 0)),
            auction: AuctionState::new(0),
            phase: Phase::Auction,
            bots,
            version: 0,
            totals: [[Points::ZERO; PLAYERS]; 2],
            results: Vec::new(),
        };
        s.advance_bots()?;
        Ok(s)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn deal(&self) -> &Deal {
        &self.deal
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn phase(&self) -> PhaseName {
        match self.phase {
            Phase::Auction => PhaseName::Auction,
            Phase::Play(_) => PhaseName::Play,
            Phase::Finished(_) => PhaseName::Finished,
        }
    }

    /// The seat that must act next; `None` between deals when no human has
    /// asked for the next one yet.
    pub fn awaiting(&self) -> Option<Seat> {
        match &self.phase {
            Phase::Auction => Some(self.auction.to_act()),
            Phase::Play(p) => Some(p.controller(p.to_act())),
            Phase::Finished(_) => None,
        }
    }

    fn start_deal(&mut self, number: u64) {
        self.deal_number = number;
        self.deal = deal_random(derive_seed(self.seed, number));
        self.auction = AuctionState::new((number % PLAYERS as u64) as Seat);
        self.phase = Phase::Auction;
    }

    fn settle(&mut self, play: Box<PlayState>) {
        let contract = *play.contract();
        let tricks = play.declarer_side_tricks();
        let honors = HonorsInfo::from_hands(self.deal.hand(contract.declarer), self.deal.hand(PHANTOM), contract.denom);
        let settlements: Vec<Settlement> =
            Scheme::BOTH.iter().map(|&sc| score_deal(&contract, tricks, &honors, sc)).collect();
        for (k, st) in settlements.iter().enumerate() {
            for s in 0..PLAYERS {
                self.totals[k][s] += st.per_seat_delta[s];
            }
        }
        self.results.push(DealResult { deal_number: self.deal_number, contract, declarer_tricks: tricks, settlements });
        if self.config.auto_next_deal {
            self.start_deal(self.deal_number + 1);
        } else {
            self.phase = Phase::Finished(play);
        }
    }

    fn legal_actions(&self, seat: Seat) -> Vec<Action> {
        match &self.phase {
            Phase::Auction if self.auction.to_act() == seat => self
                .auction
                .legal_calls(seat)
                .map(|cs| cs.into_iter().map(Action::Call).collect())
                .unwrap_or_default(),
            Phase::Play(p) if p.controller(p.to_act()) == seat => {
                p.legal_plays(p.to_act()).map(|h| h.iter().map(Action::Play).collect()).unwrap_or_default()
            }
            Phase::Finished(_) if self.config.seats[seat] == SeatKind::Human => vec![Action::NextDeal],
            _ => Vec::new(),
        }
    }

    /// Validates and applies one action, then lets bots move until a human
    /// is due or the deal pauses. On error nothing changes.
    pub fn apply(&mut self, seat: Seat, action: Action) -> Result<u64, ServiceError> {
        if seat >= PLAYERS {
            return Err(ServiceError::NoSuchSeat(seat));
        }
        self.step(seat, action)?;
        self.advance_bots()?;
        Ok(self.version)
    }

    fn step(&mut self, seat: Seat, action: Action) -> Result<(), ServiceError> {
        match (&mut self.phase, action) {
            (Phase::Auction, Action::Call(call)) => {
                self.auction.apply_in_place(seat, call)?;
                if self.auction.is_complete() {
                    let contract = self.auction.contract()?;
                    let state = PlayState::new(&self.deal, contract, self.config.lead);
                    for bot in self.bots.iter_mut().flatten() {
                        bot.play.begin_deal();
                    }
                    self.phase = Phase::Play(Box::new(state));
                }
            }
            (Phase::Play(p), Action::Play(card)) => {
                let hand = p.to_act();
                if p.controller(hand) != seat {
                    return Err(ServiceError::NotYourTurn { seat, expected: p.controller(hand) });
                }
                p.play(hand, card)?;
                if p.is_complete() {
                    let Phase::Play(done) = std::mem::replace(&mut self.phase, Phase::Auction)
                    else {
                        unreachable!()
                    };
                    self.settle(done);
                }
            }
            (Phase::Finished(_), Action::NextDeal) => {
                if self.config.seats[seat] != SeatKind::Human {
                    return Err(ServiceError::NotYourTurn { seat, expected: seat });
                }
                self.start_deal(self.deal_number + 1);
            }
            (phase, action) => {
                let name = match phase {
                    Phase::Auction => "auction",
                    Phase::Play(_) => "play",
                    Phase::Finished(_) => "finished",
                };
                return Err(ServiceError::WrongPhase { phase: name, action: format!("{action:?}") });
            }
        }
        self.version += 1;
        Ok(())
    }

    fn advance_bots(&mut self) -> Result<(), ServiceError> {
        for _ in 0..MAX_BOT_STEPS {
            let Some(seat) = self.awaiting() else { return Ok(()) };
            if self.bots[seat].is_none() {
                return Ok(());
            }
            let action = {
                let bot = self.bots[seat].as_mut().unwrap();
                match &self.phase {
                    Phase::Auction => Action::Call(bot.bid.call(&self.auction, self.deal.hand(seat), seat)),
                    Phase::Play(p) => Action::Play(bot.play.choose(p, p.to_act())),
                    Phase::Finished(_) => return Ok(()),
                }
            };
            self.step(seat, action).map_err(|e| ServiceError::BotFailure(seat, e.to_string()))?;
        }
        Err(ServiceError::BotFailure(0, "bots did not yield".into()))
    }

    pub fn view(&self, seat: Seat) -> Result<SeatView, ServiceError> {
        if seat >= PLAYERS {
            return Err(ServiceError::NoSuchSeat(seat));
        }
        let play: Option<&PlayState> = match &self.phase {
            Phase::Auction => None,
            Phase::Play(p) | Phase::Finished(p) => Some(p),
        };
        let hand = play.map_or(self.deal.hand(seat), |p| p.hand(seat));
        let dummy = play.and_then(|p| p.dummy_revealed().then(|| p.hand(PHANTOM)));
        let to_act = match &self.phase {
            Phase::Auction => Some(self.auction.to_act()),
            Phase::Play(p) => Some(p.to_act()),
            Phase::Finished(_) => None,
        };
        Ok(SeatView {
            session_id: self.id.clone(),
            seat,
            state_version: self.version,
            deal_number: self.deal_number,
            phase: self.phase(),
            seats: self.config.seats.clone(),
            hand,
            dummy,
            opener: self.auction.opener(),
            auction: self.auction.history().to_vec(),
            contract: play.map(|p| *p.contract()),
            current_trick: play
                .map(|p| p.current_trick().plays().iter().map(|&(seat, card)| TrickCard { seat, card }).collect())
                .unwrap_or_default(),
            play_log: play.map(|p| p.log().to_vec()).unwrap_or_default(),
            tricks_won: play.map_or([0; 4], |p| p.tricks_won()),
            to_act,
            awaiting: self.awaiting(),
            legal_actions: self.legal_actions(seat),
            scores: Scheme::BOTH.iter().copied().zip(self.totals).collect(),
            results: self.results.clone(),
        })
    }
}
