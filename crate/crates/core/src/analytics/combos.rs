//! Honor-combination probabilities.
//!
//! Counting model: a combo set tracks every rank that any of its combos
//! names. Each combo is the event "exactly these counts of the tracked
//! ranks", the remaining cards coming from untracked ranks. Distinct combos
//! are then disjoint and their counts add.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::counting::{choose_exact, ExactRatio};
use super::DomainError;
use crate::deck::{Rank, DECK_SIZE, HAND_SIZE};

/// Required number of cards per rank (indexed by `Rank::index`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HonorCombo {
    pub counts: [u8; 13],
}

impl HonorCombo {
    pub fn from_pairs(pairs: &[(Rank, u8)]) -> HonorCombo {
        let mut counts = [0; 13];
        for &(r, n) in pairs {
            counts[r.index()] += n;
        }
        HonorCombo { counts }
    }

    pub fn cards(&self) -> u32 {
        self.counts.iter().map(|&c| c as u32).sum()
    }

    fn check(&self) -> Result<(), DomainError> {
        if self.counts.iter().any(|&c| c > 4) {
            return Err(DomainError::RankOverflow(self.to_string()));
        }
        if self.cards() as usize > HAND_SIZE {
            return Err(DomainError::OverConstrained(self.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for HonorCombo {
    /// Highest rank first: `4A+3K`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for r in Rank::ALL.iter().rev() {
            let n = self.counts[r.index()];
            if n > 0 {
                if !first {
                    f.write_str("+")?;
                }
                write!(f, "{n}{}", r.symbol())?;
                first = false;
            }
        }
        Ok(())
    }
}

impl FromStr for HonorCombo {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DomainError::BadCombo(s.to_string());
        let mut counts = [0u8; 13];
        for part in s.split('+').map(str::trim) {
            let mut chars = part.chars();
            let sym = chars.next_back().ok_or_else(bad)?;
            let rank = Rank::from_char(sym).ok_or_else(bad)?;
            let n: u8 = chars.as_str().parse().map_err(|_| bad())?;
            counts[rank.index()] = counts[rank.index()].checked_add(n).ok_or_else(bad)?;
        }
        let combo = HonorCombo { counts };
        combo.check()?;
        Ok(combo)
    }
}

impl Serialize for HonorCombo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ComboSet(pub Vec<HonorCombo>);

impl ComboSet {
    /// Ranks named by at least one combo.
    pub fn tracked(&self) -> Vec<Rank> {
        Rank::ALL
            .into_iter()
            .filter(|r| self.0.iter().any(|c| c.counts[r.index()] > 0))
            .collect()
    }

    /// Parses `4A+3K, 4A+2K+1Q` (comma or semicolon separated).
    pub fn parse(text: &str) -> Result<ComboSet, DomainError> {
        text.split([',', ';'])
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(ComboSet)
    }
}

impl fmt::Display for ComboSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// The winning-run combo sets for seven, eight and nine straight tricks
/// (strategies 1, 2 and 3).
pub fn strategy_combos(strategy: u8) -> Option<ComboSet> {
    use Rank::*;
    let rows: &[&[(Rank, u8)]] = match strategy {
        1 => &[
            &[(Ace, 4), (King, 3)],
            &[(Ace, 4), (King, 2), (Queen, 1)],
            &[(Ace, 4), (King, 1), (Queen, 1), (Jack, 1)],
        ],
        2 => &[
            &[(Ace, 4), (King, 4)],
            &[(Ace, 4), (King, 3), (Queen, 1)],
            &[(Ace, 4), (King, 2), (Queen, 2)],
            &[(Ace, 4), (King, 2), (Queen, 1), (Jack, 1)],
            &[(Ace, 4), (King, 1), (Queen, 1), (Jack, 1), (Ten, 1)],
        ],
        3 => &[
            &[(Ace, 4), (King, 4), (Queen, 1)],
            &[(Ace, 4), (King, 3), (Queen, 2)],
            &[(Ace, 4), (King, 2), (Queen, 2), (Jack, 1)],
            &[(Ace, 4), (King, 2), (Queen, 1), (Jack, 1), (Ten, 1)],
            &[(Ace, 4), (King, 1), (Queen, 1), (Jack, 1), (Ten, 1), (Nine, 1)],
        ],
        _ => return None,
    };
    Some(ComboSet(rows.iter().map(|r| HonorCombo::from_pairs(r)).collect()))
}

/// Published approximate values for strategies 1-3. They do not follow
/// from the combo tables under any counting tried here; kept for reports.
pub const REFERENCE_COMBO_PROBS: [f64; 3] = [14e-5, 3.6e-5, 0.5e-5];

/// Number of 13-card hands matching some combo of the set.
pub fn honor_combo_count(set: &ComboSet) -> Result<BigUint, DomainError> {
    let tracked = set.tracked();
    let untracked = (DECK_SIZE - 4 * tracked.len()) as u64;
    let mut seen: Vec<HonorCombo> = Vec::new();
    let mut total = BigUint::default();
    for combo in &set.0 {
        combo.check()?;
        if seen.contains(combo) {
            continue;
        }
        seen.push(*combo);
        let rest = HAND_SIZE as u64 - combo.cards() as u64;
        if rest > untracked {
            continue;
        }
        let mut n = choose_exact(untracked, rest)?;
        for r in &tracked {
            n *= choose_exact(4, combo.counts[r.index()] as u64)?;
        }
        total += n;
    }
    Ok(total)
}

pub fn honor_combo_prob(set: &ComboSet) -> Result<ExactRatio, DomainError> {
    let num = honor_combo_count(set)?;
    Ok(ExactRatio::new(num, choose_exact(DECK_SIZE as u64, HAND_SIZE as u64)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_one_by_hand() {
        // Tracked A K Q J leave 36 other cards; every row needs 6 of them.
        let c36_6 = 1_947_792u64;
        let expect = (4 + 6 * 4 + 4 * 4 * 4) * c36_6;
        let n = honor_combo_count(&strategy_combos(1).unwrap()).unwrap();
        assert_eq!(n, BigUint::from(expect));
    }

    #[test]
    fn empty_and_errors() {
        assert_eq!(honor_combo_prob(&ComboSet::default()).unwrap().value(), 0.0);
        assert!(matches!("5A".parse::<HonorCombo>(), Err(DomainError::RankOverflow(_))));
        assert!(matches!(
            "4A+4K+4Q+2J".parse::<HonorCombo>(),
            Err(DomainError::OverConstrained(_))
        ));
        assert!("xyz".parse::<HonorCombo>().is_err());
    }

    #[test]
    fn text_round_trip() {
        let set = strategy_combos(3).unwrap();
        assert_eq!(ComboSet::parse(&set.to_string()).unwrap(), set);
        assert_eq!(set.0[4].to_string(), "4A+1K+1Q+1J+1T+19");
    }
}
