use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrialStats {
    pub trials: u64,
    pub accepts: u64,
    pub acceptance_rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

/// Wilson score interval for `accepts` successes out of `trials`.
pub fn wilson_interval(accepts: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = accepts as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // Clamp so rounding never pushes the estimate outside its own interval.
    (
        (center - half).max(0.0).min(p),
        (center + half).min(1.0).max(p),
    )
}

impl TrialStats {
    pub fn new(accepts: u64, trials: u64) -> Self {
        assert!(accepts <= trials, "more accepts than trials");
        let acceptance_rate = if trials == 0 {
            0.0
        } else {
            accepts as f64 / trials as f64
        };
        let (wilson_low, wilson_high) = wilson_interval(accepts, trials, Z95);
        TrialStats {
            trials,
            accepts,
            acceptance_rate,
            wilson_low,
            wilson_high,
        }
    }

    /// Larger of the two distances from the rate to the interval ends.
    pub fn half_width(&self) -> f64 {
        (self.acceptance_rate - self.wilson_low).max(self.wilson_high - self.acceptance_rate)
    }
}
