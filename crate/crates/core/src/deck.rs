//! Cards, hands, deals and point-count evaluation.
//!
//! A [`Card`] is a dense index `suit * 13 + rank` so that a [`Hand`] can be a
//! 52-bit set. Iterating a hand walks the bits in ascending order, which is
//! suit-major (clubs first) then rank (two first).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const DECK_SIZE: usize = 52;
pub const HAND_SIZE: usize = 13;

/// Seat index. Seats 0..=2 are the three players; seat 3 is the phantom hand.
pub type Seat = usize;
pub const PHANTOM: Seat = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Suit {
    Clubs = 0,
    Diamonds = 1,
    Hearts = 2,
    Spades = 3,
}

impl Suit {
    pub const ALL: [Suit; 4] = [Suit::Clubs, Suit::Diamonds, Suit::Hearts, Suit::Spades];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Suit {
        Suit::ALL[i]
    }

    pub fn symbol(self) -> char {
        match self {
            Suit::Clubs => 'C',
            Suit::Diamonds => 'D',
            Suit::Hearts => 'H',
            Suit::Spades => 'S',
        }
    }

    pub fn from_char(c: char) -> Option<Suit> {
        match c.to_ascii_uppercase() {
            'C' => Some(Suit::Clubs),
            'D' => Some(Suit::Diamonds),
            'H' => Some(Suit::Hearts),
            'S' => Some(Suit::Spades),
            _ => None,
        }
    }
}

impl fmt::Display for Suit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Rank {
    Two = 0,
    Three,
    Four,
    Five,
    Six,
    Seven,
    Eight,
    Nine,
    Ten,
    Jack,
    Queen,
    King,
    Ace,
}

impl Rank {
    pub const ALL: [Rank; 13] = [
        Rank::Two,
        Rank::Three,
        Rank::Four,
        Rank::Five,
        Rank::Six,
        Rank::Seven,
        Rank::Eight,
        Rank::Nine,
        Rank::Ten,
        Rank::Jack,
        Rank::Queen,
        Rank::King,
        Rank::Ace,
    ];

    /// The five trump honours, highest first.
    pub const HONORS: [Rank; 5] = [Rank::Ace, Rank::King, Rank::Queen, Rank::Jack, Rank::Ten];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Rank {
        Rank::ALL[i]
    }

    pub fn symbol(self) -> char {
        b"23456789TJQKA"[self.index()] as char
    }

    pub fn from_char(c: char) -> Option<Rank> {
        let c = c.to_ascii_uppercase();
        b"23456789TJQKA"
            .iter()
            .position(|&b| b as char == c)
            .map(Rank::from_index)
    }

    pub fn is_honor(self) -> bool {
        self >= Rank::Ten
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid card {0:?}: expected rank (2-9, T, J, Q, K, A) followed by suit (C, D, H, S)")]
    Card(String),
    #[error("duplicate card {0} in hand")]
    Duplicate(Card),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Card(u8);

impl Card {
    pub fn new(rank: Rank, suit: Suit) -> Card {
        Card(suit as u8 * 13 + rank as u8)
    }

    pub fn from_index(i: usize) -> Card {
        debug_assert!(i < DECK_SIZE);
        Card(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn suit(self) -> Suit {
        Suit::from_index(self.0 as usize / 13)
    }

    pub fn rank(self) -> Rank {
        Rank::from_index(self.0 as usize % 13)
    }

    pub fn all() -> impl Iterator<Item = Card> {
        (0..DECK_SIZE).map(Card::from_index)
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.rank().symbol(), self.suit().symbol())
    }
}

impl fmt::Debug for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Card {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_card(s)
    }
}

/// Parses the two-character form used throughout (`"TD"`, `"as"`).
pub fn parse_card(text: &str) -> Result<Card, ParseError> {
    let mut chars = text.trim().chars();
    match (chars.next(), chars.next(), chars.next()) {
        (Some(r), Some(s), None) => match (Rank::from_char(r), Suit::from_char(s)) {
            (Some(rank), Some(suit)) => Ok(Card::new(rank, suit)),
            _ => Err(ParseError::Card(text.to_string())),
        },
        _ => Err(ParseError::Card(text.to_string())),
    }
}

impl Serialize for Card {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Card {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_card(&s).map_err(serde::de::Error::custom)
    }
}

/// A set of cards, at most one of each.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Hand(u64);

const SUIT_MASK: u64 = (1 << 13) - 1;

impl Hand {
    pub const EMPTY: Hand = Hand(0);
    pub const FULL_DECK: Hand = Hand((1 << DECK_SIZE) - 1);

    pub fn from_bits(bits: u64) -> Hand {
        Hand(bits & Self::FULL_DECK.0)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, card: Card) -> bool {
        self.0 & (1 << card.index()) != 0
    }

    pub fn insert(&mut self, card: Card) -> bool {
        let fresh = !self.contains(card);
        self.0 |= 1 << card.index();
        fresh
    }

    pub fn remove(&mut self, card: Card) -> bool {
        let had = self.contains(card);
        self.0 &= !(1 << card.index());
        had
    }

    pub fn with(mut self, card: Card) -> Hand {
        self.insert(card);
        self
    }

    pub fn union(self, other: Hand) -> Hand {
        Hand(self.0 | other.0)
    }

    pub fn intersection(self, other: Hand) -> Hand {
        Hand(self.0 & other.0)
    }

    pub fn difference(self, other: Hand) -> Hand {
        Hand(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Hand) -> bool {
        self.0 & other.0 == 0
    }

    pub fn suit(self, suit: Suit) -> Hand {
        Hand(self.0 & (SUIT_MASK << (13 * suit.index())))
    }

    pub fn suit_len(self, suit: Suit) -> usize {
        self.suit(suit).len()
    }

    pub fn count_rank(self, rank: Rank) -> usize {
        Suit::ALL
            .iter()
            .filter(|&&s| self.contains(Card::new(rank, s)))
            .count()
    }

    /// Cards in canonical order: clubs..spades, low to high within a suit.
    pub fn iter(self) -> HandIter {
        HandIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Card> {
        self.iter().collect()
    }

    /// Builds a hand from card text tokens, rejecting duplicates.
    pub fn parse<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<Hand, ParseError> {
        let mut hand = Hand::EMPTY;
        for tok in tokens {
            let card = parse_card(tok)?;
            if !hand.insert(card) {
                return Err(ParseError::Duplicate(card));
            }
        }
        Ok(hand)
    }

    /// Parses a bracketed list such as `[2H, 2S, 5D]` (brackets optional).
    pub fn parse_list(text: &str) -> Result<Hand, ParseError> {
        let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
        Hand::parse(
            inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty()),
        )
    }
}

impl FromIterator<Card> for Hand {
    fn from_iter<I: IntoIterator<Item = Card>>(iter: I) -> Self {
        let mut h = Hand::EMPTY;
        for c in iter {
            h.insert(c);
        }
        h
    }
}

impl IntoIterator for Hand {
    type Item = Card;
    type IntoIter = HandIter;

    fn into_iter(self) -> HandIter {
        self.iter()
    }
}

pub struct HandIter(u64);

impl Iterator for HandIter {
    type Item = Card;

    fn next(&mut self) -> Option<Card> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(Card::from_index(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for HandIter {}

impl fmt::Display for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Hand {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Hand {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let cards = Vec::<Card>::deserialize(d)?;
        let mut hand = Hand::EMPTY;
        for c in cards {
            if !hand.insert(c) {
                return Err(serde::de::Error::custom(ParseError::Duplicate(c)));
            }
        }
        Ok(hand)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DealError {
    #[error("hand {seat} has {len} cards, expected 13")]
    HandSize { seat: Seat, len: usize },
    #[error("hands overlap or do not cover the deck")]
    NotAPartition,
}

/// Four 13-card hands partitioning the deck. Seat 3 is the phantom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Deal {
    pub seed: u64,
    pub hands: [Hand; 4],
}

impl Deal {
    pub fn new(seed: u64, hands: [Hand; 4]) -> Result<Deal, DealError> {
        for (seat, h) in hands.iter().enumerate() {
            if h.len() != HAND_SIZE {
                return Err(DealError::HandSize { seat, len: h.len() });
            }
        }
        let union = hands.iter().fold(Hand::EMPTY, |acc, h| acc.union(*h));
        if union != Hand::FULL_DECK {
            return Err(DealError::NotAPartition);
        }
        Ok(Deal { seed, hands })
    }

    pub fn hand(&self, seat: Seat) -> Hand {
        self.hands[seat]
    }
}

impl<'de> Deserialize<'de> for Deal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            seed: u64,
            hands: [Hand; 4],
        }
        let raw = Raw::deserialize(d)?;
        Deal::new(raw.seed, raw.hands).map_err(serde::de::Error::custom)
    }
}

/// The shuffle generator: ChaCha8 keyed by `seed_from_u64(seed)`.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fisher-Yates over `items`, drawing each swap index as a `u32` so the
/// sequence does not depend on the platform's pointer width.
pub fn shuffle<T, R: Rng>(items: &mut [T], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i as u32) as usize;
        items.swap(i, j);
    }
}

/// Deals the canonically ordered deck after a ChaCha8 Fisher-Yates shuffle.
/// Seat `s` receives shuffled positions `13*s .. 13*s + 13`.
pub fn deal_random(seed: u64) -> Deal {
    let mut deck: Vec<Card> = Card::all().collect();
    shuffle(&mut deck, &mut rng_for(seed));
    let mut hands = [Hand::EMPTY; 4];
    for (i, c) in deck.into_iter().enumerate() {
        hands[i / HAND_SIZE].insert(c);
    }
    Deal { seed, hands }
}

/// Seed of the `index`-th deal in a stream rooted at `seed` (SplitMix64 finaliser).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-rank hand evaluation weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointScale {
    pub weights: [u32; 13],
}

impl Default for PointScale {
    /// A=5, K=4, Q=3, J=2, T=1.
    fn default() -> Self {
        let mut weights = [0; 13];
        weights[Rank::Ace.index()] = 5;
        weights[Rank::King.index()] = 4;
        weights[Rank::Queen.index()] = 3;
        weights[Rank::Jack.index()] = 2;
        weights[Rank::Ten.index()] = 1;
        PointScale { weights }
    }
}

impl PointScale {
    pub fn weight(&self, rank: Rank) -> u32 {
        self.weights[rank.index()]
    }

    pub fn deck_total(&self) -> u32 {
        4 * self.weights.iter().sum::<u32>()
    }

    /// Parses `A=5,K=4,...`; unnamed ranks weigh zero.
    pub fn parse(text: &str) -> Result<PointScale, String> {
        let mut weights = [0; 13];
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (r, w) = part
                .split_once('=')
                .ok_or_else(|| format!("bad scale entry {part:?}, expected RANK=WEIGHT"))?;
            let mut rc = r.trim().chars();
            let rank = match (rc.next(), rc.next()) {
                (Some(c), None) => Rank::from_char(c),
                _ => None,
            }
            .ok_or_else(|| format!("bad rank {r:?} in scale"))?;
            weights[rank.index()] = w
                .trim()
                .parse()
                .map_err(|_| format!("bad weight {w:?} in scale"))?;
        }
        Ok(PointScale { weights })
    }
}

pub fn hand_points(hand: Hand, scale: &PointScale) -> u32 {
    hand.iter().map(|c| scale.weight(c.rank())).sum()
}
