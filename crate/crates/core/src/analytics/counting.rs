use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use super::DomainError;

/// Exact binomial coefficient.
pub fn choose_exact(n: u64, k: u64) -> Result<BigUint, DomainError> {
    if k > n {
        return Err(DomainError::ChooseRange { n, k });
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Fixed-width binomial for the small arguments used in card counting
/// (exact for n ≤ 67). Returns 0 when k > n.
pub fn choose_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// An exact probability with its float value.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRatio {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl ExactRatio {
    pub fn new(numerator: BigUint, denominator: BigUint) -> ExactRatio {
        ExactRatio { numerator, denominator }
    }

    pub fn value(&self) -> f64 {
        let r = BigRational::new(self.numerator.clone().into(), self.denominator.clone().into());
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactRatio", 3)?;
        st.serialize_field("value", &self.value())?;
        st.serialize_field("numerator", &self.numerator.to_string())?;
        st.serialize_field("denominator", &self.denominator.to_string())?;
        st.end()
    }
}

/// Chance that a hand holds exactly ten cards of one named suit:
/// C(13,10)·C(39,3) / C(52,13).
pub fn prob_safe_min_bid() -> ExactRatio {
    let num = choose_exact(13, 10).unwrap() * choose_exact(39, 3).unwrap();
    ExactRatio::new(num, choose_exact(52, 13).unwrap())
}
