use serde::Serialize;

use super::DomainError;

/// Population moments. Skewness and excess kurtosis are `None` for fewer
/// than three samples or zero spread.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MomentSummary {
    pub n: usize,
    pub mean: f64,
    pub population_sd: f64,
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
}

pub fn moments(samples: &[f64]) -> Result<MomentSummary, DomainError> {
    if samples.is_empty() {
        return Err(DomainError::NoSamples);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in samples {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    let sd = m2.sqrt();
    let shaped = samples.len() >= 3 && sd > 0.0;
    Ok(MomentSummary {
        n: samples.len(),
        mean,
        population_sd: sd,
        skewness: shaped.then(|| m3 / (m2 * sd)),
        excess_kurtosis: shaped.then(|| m4 / (m2 * m2) - 3.0),
    })
}
