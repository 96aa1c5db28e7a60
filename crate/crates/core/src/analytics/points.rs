use serde::Serialize;

use super::counting::choose_u128;
use super::DomainError;
use crate::deck::{hand_points, Hand, PointScale, Rank, DECK_SIZE, HAND_SIZE};

/// Exact law of the point count of a uniform 13-card hand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointDistribution {
    pub scale: PointScale,
    /// `counts[p]` = number of hands with exactly `p` points.
    pub counts: Vec<u128>,
    pub total: u128,
}

impl PointDistribution {
    pub fn prob(&self, points: usize) -> f64 {
        self.counts.get(points).map_or(0.0, |&c| c as f64 / self.total as f64)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|p| self.prob(p)).collect()
    }

    pub fn max_points(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    /// P(lo ≤ X < hi).
    pub fn prob_range(&self, lo: u32, hi: u32) -> f64 {
        let hi = (hi as usize).min(self.counts.len());
        let lo = (lo as usize).min(hi);
        let n: u128 = self.counts[lo..hi].iter().sum();
        n as f64 / self.total as f64
    }

    pub fn prob_at_least(&self, lo: u32) -> f64 {
        self.prob_range(lo, u32::MAX)
    }

    pub fn mean(&self) -> f64 {
        let s: u128 = self.counts.iter().enumerate().map(|(p, &c)| p as u128 * c).sum();
        s as f64 / self.total as f64
    }
}

/// Dynamic programme over ranks: four cards per rank, choose 0..=4 of them.
pub fn point_distribution(scale: &PointScale) -> PointDistribution {
    let max = scale.deck_total() as usize;
    // dp[chosen][points]
    let mut dp = vec![vec![0u128; max + 1]; HAND_SIZE + 1];
    dp[0][0] = 1;
    for rank in Rank::ALL {
        let w = scale.weight(rank) as usize;
        let mut next = vec![vec![0u128; max + 1]; HAND_SIZE + 1];
        for chosen in 0..=HAND_SIZE {
            for pts in 0..=max {
                let c = dp[chosen][pts];
                if c == 0 {
                    continue;
                }
                for take in 0..=4usize {
                    if chosen + take > HAND_SIZE {
                        break;
                    }
                    next[chosen + take][pts + take * w] += c * choose_u128(4, take as u32);
                }
            }
        }
        dp = next;
    }
    let mut counts = dp.swap_remove(HAND_SIZE);
    let last = counts.iter().rposition(|&c| c > 0).unwrap_or(0);
    counts.truncate(last + 1);
    PointDistribution {
        scale: *scale,
        counts,
        total: choose_u128(DECK_SIZE as u32, HAND_SIZE as u32),
    }
}

/// P(t1 ≤ X < t2), P(t2 ≤ X < t3), P(X ≥ t3).
pub fn bucket_probs(dist: &PointDistribution, thresholds: [u32; 3]) -> Result<[f64; 3], DomainError> {
    let [t1, t2, t3] = thresholds;
    if !(t1 < t2 && t2 < t3) {
        return Err(DomainError::Thresholds);
    }
    Ok([dist.prob_range(t1, t2), dist.prob_range(t2, t3), dist.prob_at_least(t3)])
}

/// Expected points of the concealed phantom hand: the 39 unseen cards
/// hold `deck_total - own` points, 13 of them land in the phantom.
pub fn expected_dummy_points(own: Hand, scale: &PointScale) -> f64 {
    let unseen = scale.deck_total().saturating_sub(hand_points(own, scale));
    unseen as f64 * HAND_SIZE as f64 / (DECK_SIZE - HAND_SIZE) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::{Card, Suit};

    #[test]
    fn zero_points_closed_form() {
        let d = point_distribution(&PointScale::default());
        assert_eq!(d.counts[0], choose_u128(32, 13));
        assert_eq!(d.counts.iter().sum::<u128>(), d.total);
        assert_eq!(d.max_points(), 50);
        assert!((d.mean() - 15.0).abs() < 1e-12);
        assert!((d.prob_at_least(20) - 0.2010).abs() < 0.002);
    }

    #[test]
    fn bucket_identity() {
        let d = point_distribution(&PointScale::default());
        let a = bucket_probs(&d, [20, 25, 30]).unwrap();
        let b = bucket_probs(&d, [25, 30, 35]).unwrap();
        assert_eq!(a[1], b[0]);
        assert!((a[0] - 0.1575).abs() < 0.0011);
        assert!((b[2] - 2.66e-4).abs() < 0.2e-4);
        assert!(bucket_probs(&d, [25, 20, 30]).is_err());
    }

    #[test]
    fn dummy_expectation() {
        let s = PointScale::default();
        assert_eq!(expected_dummy_points(Hand::EMPTY, &s), 20.0);
        let top: Hand = Suit::ALL
            .iter()
            .flat_map(|&su| [Rank::Ace, Rank::King, Rank::Queen].map(|r| Card::new(r, su)))
            .chain([Card::new(Rank::Jack, Suit::Spades)])
            .collect();
        assert_eq!(hand_points(top, &s), 50);
        assert!((expected_dummy_points(top, &s) - 10.0 / 3.0).abs() < 1e-12);
    }
}
