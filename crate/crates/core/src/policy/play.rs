//! Card-play strategies: high card first, low card first, the general
//! strategy and the defeat-seeking strategy.
//!
//! Cards are compared across suits by rank, ties broken by suit with the
//! trump suit on top and clubs < diamonds < hearts < spades below it. Every
//! choice is a constant number of linear passes over the acting hand; the
//! `_counted` variants report how many card inspections that took.

use crate::deck::{Card, Hand, Seat, Suit, PHANTOM};
use crate::play::{PlayPolicy, PlayState};

/// Running count of cards examined by a policy.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Inspections(pub u64);

fn order_key(card: Card, trump: Option<Suit>) -> u32 {
    let suit = if Some(card.suit()) == trump { 4 } else { card.suit() as u32 };
    card.rank() as u32 * 5 + suit
}

fn highest(cards: Hand, trump: Option<Suit>, probe: &mut Inspections) -> Option<Card> {
    let mut best: Option<Card> = None;
    for c in cards {
        probe.0 += 1;
        if best.is_none_or(|b| order_key(c, trump) > order_key(b, trump)) {
            best = Some(c);
        }
    }
    best
}

fn lowest(cards: Hand, trump: Option<Suit>, probe: &mut Inspections) -> Option<Card> {
    let mut best: Option<Card> = None;
    for c in cards {
        probe.0 += 1;
        if best.is_none_or(|b| order_key(c, trump) < order_key(b, trump)) {
            best = Some(c);
        }
    }
    best
}

fn filter(cards: Hand, probe: &mut Inspections, keep: impl Fn(Card) -> bool) -> Hand {
    let mut out = Hand::EMPTY;
    for c in cards {
        probe.0 += 1;
        if keep(c) {
            out.insert(c);
        }
    }
    out
}

pub fn hcf_choose_counted(state: &PlayState, seat: Seat, probe: &mut Inspections) -> Card {
    let hand = state.hand(seat);
    let trump = state.trump();
    let Some(led) = state.current_trick().lead_suit() else {
        return highest(hand, trump, probe).expect("hand is not empty");
    };
    let playable = filter(hand, probe, |c| c.suit() == led);
    highest(playable, trump, probe)
        .or_else(|| lowest(hand, trump, probe))
        .expect("hand is not empty")
}

pub fn lcf_choose_counted(state: &PlayState, seat: Seat, probe: &mut Inspections) -> Card {
    let hand = state.hand(seat);
    let trump = state.trump();
    let Some(led) = state.current_trick().lead_suit() else {
        return lowest(hand, trump, probe).expect("hand is not empty");
    };
    let matching = filter(hand, probe, |c| c.suit() == led);
    lowest(matching, trump, probe)
        .or_else(|| lowest(hand, trump, probe))
        .expect("hand is not empty")
}

/// The card currently winning the trick, trumps included.
fn winning_card(state: &PlayState) -> Option<(Seat, Card)> {
    let trick = state.current_trick();
    trick.winning_index(state.trump()).map(|i| trick.plays()[i])
}

pub fn general_choose_counted(state: &PlayState, seat: Seat, probe: &mut Inspections) -> Card {
    let hand = state.hand(seat);
    let trump = state.trump();
    let Some(led) = state.current_trick().lead_suit() else {
        return highest(hand, trump, probe).expect("hand is not empty");
    };
    let matching = filter(hand, probe, |c| c.suit() == led);
    if matching.is_empty() {
        return lowest(hand, trump, probe).expect("hand is not empty");
    }
    let (_, winning) = winning_card(state).expect("trick has a lead");
    // once ruffed, no card of the suit led can win
    let beating = if winning.suit() == led {
        filter(matching, probe, |c| c.rank() > winning.rank())
    } else {
        Hand::EMPTY
    };
    highest(beating, trump, probe)
        .or_else(|| lowest(matching, trump, probe))
        .expect("matching is not empty")
}

/// Plays to let `beneficiary` win while they are declarer; otherwise plays
/// the general strategy.
///
/// With the beneficiary's side (declarer or phantom) winning the trick so
/// far: when following suit, dump the highest card that does not overtake;
/// when void, discard the lowest card that does not overtake, non-trumps first.
pub fn defeat_seeking_choose_counted(
    state: &PlayState,
    seat: Seat,
    beneficiary: Seat,
    probe: &mut Inspections,
) -> Card {
    if state.contract().declarer != beneficiary {
        return general_choose_counted(state, seat, probe);
    }
    let Some(led) = state.current_trick().lead_suit() else {
        return general_choose_counted(state, seat, probe);
    };
    let (winner, winning) = winning_card(state).expect("trick has a lead");
    if winner != beneficiary && winner != PHANTOM {
        return general_choose_counted(state, seat, probe);
    }
    let hand = state.hand(seat);
    let trump = state.trump();
    let overtakes = |c: Card| {
        if c.suit() == winning.suit() {
            c.rank() > winning.rank()
        } else {
            Some(c.suit()) == trump
        }
    };
    let matching = filter(hand, probe, |c| c.suit() == led);
    if !matching.is_empty() {
        let under = filter(matching, probe, |c| !overtakes(c));
        return highest(under, trump, probe)
            .or_else(|| lowest(matching, trump, probe))
            .expect("matching is not empty");
    }
    let discards = filter(hand, probe, |c| !overtakes(c) && Some(c.suit()) != trump);
    lowest(discards, trump, probe)
        .or_else(|| {
            let under = filter(hand, probe, |c| !overtakes(c));
            lowest(under, trump, probe)
        })
        .or_else(|| lowest(hand, trump, probe))
        .expect("hand is not empty")
}

pub fn hcf_choose(state: &PlayState, seat: Seat) -> Card {
    hcf_choose_counted(state, seat, &mut Inspections::default())
}

pub fn lcf_choose(state: &PlayState, seat: Seat) -> Card {
    lcf_choose_counted(state, seat, &mut Inspections::default())
}

pub fn general_choose(state: &PlayState, seat: Seat) -> Card {
    general_choose_counted(state, seat, &mut Inspections::default())
}

pub fn defeat_seeking_choose(state: &PlayState, seat: Seat, config: DefeatSeekingConfig) -> Card {
    defeat_seeking_choose_counted(state, seat, config.beneficiary, &mut Inspections::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefeatSeekingConfig {
    pub beneficiary: Seat,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HighCardFirst;

#[derive(Debug, Clone, Copy, Default)]
pub struct LowCardFirst;

#[derive(Debug, Clone, Copy, Default)]
pub struct General;

#[derive(Debug, Clone, Copy)]
pub struct DefeatSeeking(pub DefeatSeekingConfig);

impl PlayPolicy for HighCardFirst {
    fn choose(&mut self, state: &PlayState, seat: Seat) -> Card {
        hcf_choose(state, seat)
    }
}

impl PlayPolicy for LowCardFirst {
    fn choose(&mut self, state: &PlayState, seat: Seat) -> Card {
        lcf_choose(state, seat)
    }
}

impl PlayPolicy for General {
    fn choose(&mut self, state: &PlayState, seat: Seat) -> Card {
        general_choose(state, seat)
    }
}

impl PlayPolicy for DefeatSeeking {
    fn choose(&mut self, state: &PlayState, seat: Seat) -> Card {
        defeat_seeking_choose(state, seat, self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auction::{Contract, Denomination, Doubling};
    use crate::deck::parse_card;

    fn c(s: &str) -> Card {
        parse_card(s).unwrap()
    }

    /// State where `seat` holds `hand` and the trick so far is `trick`
    /// (played by the seats before it). Filler cards complete the other hands.
    fn state(declarer: Seat, denom: Denomination, seat: Seat, hand: &str, trick: &[(Seat, &str)]) -> PlayState {
        let mut hands = [Hand::EMPTY; 4];
        hands[seat] = Hand::parse_list(hand).unwrap();
        let mut used = hands[seat];
        for &(s, card) in trick {
            hands[s].insert(c(card));
            used.insert(c(card));
        }
        let leader = trick.first().map_or(seat, |(s, _)| *s);
        let mut st = PlayState::from_hands(hands, Contract::new(declarer, 1, denom, Doubling::None), leader);
        for &(s, card) in trick {
            st.play(s, c(card)).unwrap();
        }
        assert_eq!(st.to_act(), seat);
        st
    }

    #[test]
    fn hcf_examples() {
        let st = state(1, Denomination::NoTrump, 0, "QS 3H JC", &[]);
        assert_eq!(hcf_choose(&st, 0), c("QS"));
        let st = state(1, Denomination::NoTrump, 2, "4H KH AS", &[(0, "5H"), (1, "6H")]);
        assert_eq!(hcf_choose(&st, 2), c("KH"));
        let st = state(1, Denomination::Diamonds, 2, "2S 7D", &[(0, "5H"), (1, "6H")]);
        assert_eq!(hcf_choose(&st, 2), c("2S"));
    }

    #[test]
    fn lcf_examples() {
        let st = state(1, Denomination::NoTrump, 0, "QS 3H JC", &[]);
        assert_eq!(lcf_choose(&st, 0), c("3H"));
        let st = state(1, Denomination::NoTrump, 1, "2D 9D", &[(0, "5D")]);
        assert_eq!(lcf_choose(&st, 1), c("2D"));
        let st = state(1, Denomination::NoTrump, 1, "9S 4H 7C", &[(0, "5D")]);
        assert_eq!(lcf_choose(&st, 1), c("4H"));
    }

    #[test]
    fn tie_break_prefers_trump_then_spades() {
        let st = state(1, Denomination::NoTrump, 0, "AC AH AS", &[]);
        assert_eq!(hcf_choose(&st, 0), c("AS"));
        let st = state(1, Denomination::Clubs, 0, "AC AH AS", &[]);
        assert_eq!(hcf_choose(&st, 0), c("AC"));
        let st = state(1, Denomination::Clubs, 0, "2C 2H 2S", &[]);
        assert_eq!(lcf_choose(&st, 0), c("2H"));
    }

    #[test]
    fn general_examples() {
        let st = state(1, Denomination::NoTrump, 2, "KC AC 2C", &[(0, "QC"), (1, "3C")]);
        assert_eq!(general_choose(&st, 2), c("AC"));
        let st = state(1, Denomination::NoTrump, 2, "KC 3C", &[(0, "AC"), (1, "4C")]);
        assert_eq!(general_choose(&st, 2), c("3C"));
        let st = state(1, Denomination::NoTrump, 0, "QS 3H JC", &[]);
        assert_eq!(general_choose(&st, 0), c("QS"));
        // ruffed trick: cannot beat, so lowest of the suit
        let st = state(1, Denomination::Hearts, 2, "KC AC", &[(0, "QC"), (1, "2H")]);
        assert_eq!(general_choose(&st, 2), c("KC"));
        // void: lowest overall
        let st = state(1, Denomination::NoTrump, 2, "9S 4H", &[(0, "QC"), (1, "2C")]);
        assert_eq!(general_choose(&st, 2), c("4H"));
    }

    #[test]
    fn defeat_seeking_examples() {
        // A declares 2H, leads the ace; C holds the king and a small heart.
        let st = state(0, Denomination::Hearts, 2, "KH 6H", &[(0, "AH"), (1, "3H")]);
        assert_eq!(defeat_seeking_choose(&st, 2, DefeatSeekingConfig { beneficiary: 0 }), c("KH"));

        // beneficiary not declarer: identical to general
        let st = state(1, Denomination::Hearts, 2, "KH 6H", &[(0, "AH"), (1, "3H")]);
        assert_eq!(
            defeat_seeking_choose(&st, 2, DefeatSeekingConfig { beneficiary: 0 }),
            general_choose(&st, 2)
        );

        // beneficiary winning with QS; seat void in spades holding trumps discards
        let st = state(0, Denomination::Hearts, 2, "2H 9H 5D 8C", &[(0, "QS"), (1, "3S")]);
        assert_eq!(defeat_seeking_choose(&st, 2, DefeatSeekingConfig { beneficiary: 0 }), c("5D"));
        assert_eq!(general_choose(&st, 2), c("2H"));

        // does not overtake with a higher card of the suit
        let st = state(0, Denomination::NoTrump, 2, "AD 9D 4D", &[(0, "KD"), (1, "3D")]);
        assert_eq!(defeat_seeking_choose(&st, 2, DefeatSeekingConfig { beneficiary: 0 }), c("9D"));
    }

    #[test]
    fn inspections_are_linear() {
        for n in 1..=13usize {
            let cards: Vec<&str> = ["2C", "3C", "4C", "5C", "6C", "7C", "8C", "9C", "TC", "JC", "QC", "KC", "AC"][..n].to_vec();
            let st = state(0, Denomination::NoTrump, 2, &cards.join(" "), &[(0, "2D"), (1, "3D")]);
            let mut p = Inspections::default();
            general_choose_counted(&st, 2, &mut p);
            assert_eq!(p.0, 2 * n as u64, "void case: filter plus one scan");
        }
    }
}
