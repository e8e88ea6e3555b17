//! Interval estimates for Monte-Carlo proportions.

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// A proportion estimate with its Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Proportion {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub low: f64,
    pub high: f64,
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
/// With no trials the interval is the whole of `[0, 1]`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    let low = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let high = if successes >= trials { 1.0 } else { (center + half).min(1.0) };
    (low, high)
}

impl Proportion {
    pub fn new(successes: u64, trials: u64) -> Self {
        let (low, high) = wilson_interval(successes, trials, Z95);
        let estimate = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
        Proportion { successes, trials, estimate, low, high }
    }
}

/// `1/2 P_null(say Null) + 1/2 P_planted(say Planted)`.
///
/// The interval averages the two Wilson endpoints, which covers the metric at
/// least as often as each side's interval covers its own proportion.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConjectureMetric {
    pub null: Proportion,
    pub planted: Proportion,
    pub value: f64,
    pub low: f64,
    pub high: f64,
}

impl ConjectureMetric {
    pub fn new(null_correct: u64, null_trials: u64, planted_correct: u64, planted_trials: u64) -> Self {
        let null = Proportion::new(null_correct, null_trials);
        let planted = Proportion::new(planted_correct, planted_trials);
        ConjectureMetric {
            null,
            planted,
            value: 0.5 * (null.estimate + planted.estimate),
            low: 0.5 * (null.low + planted.low),
            high: 0.5 * (null.high + planted.high),
        }
    }
}

/// Standard deviation of a Bernoulli(p) mean over `trials` draws.
pub fn bernoulli_sigma(p: f64, trials: u64) -> f64 {
    if trials == 0 {
        return 0.0;
    }
    libm::sqrt(p * (1.0 - p) / trials as f64)
}
