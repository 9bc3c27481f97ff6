use super::special::{noncentral_t_cdf, normal_quantile, t_critical_two_sided};
use super::StatsError;

const MAX_GROUP_SIZE: usize = 10_000_000;

/// Power of the two-sided, equal-variance two-sample t test with `n`
/// observations per group and standardized effect `cohens_d`.
pub fn two_sample_t_power(n: usize, cohens_d: f64, alpha: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let df = (2 * n - 2) as f64;
    let shift = cohens_d * (n as f64 / 2.0).sqrt();
    let crit = t_critical_two_sided(alpha, df);
    1.0 - noncentral_t_cdf(crit, df, shift) + noncentral_t_cdf(-crit, df, shift)
}

/// Smallest per-group sample size reaching `power` for a two-sided
/// two-sample t test at level `alpha` and effect size `cohens_d`.
///
/// Starts from the normal approximation `2 ((z_{1-α/2} + z_power) / d)^2`
/// and walks the exact noncentral-t power to the boundary.
pub fn min_sample_size(alpha: f64, power: f64, cohens_d: f64) -> Result<usize, StatsError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::Domain(format!("alpha must be in (0, 1), got {alpha}")));
    }
    if !(power > 0.0 && power < 1.0) {
        return Err(StatsError::Domain(format!("power must be in (0, 1), got {power}")));
    }
    if !(cohens_d > 0.0 && cohens_d.is_finite()) {
        return Err(StatsError::Domain(format!("effect size must be > 0, got {cohens_d}")));
    }
    let z = normal_quantile(1.0 - alpha / 2.0) + normal_quantile(power);
    let approx = 2.0 * (z / cohens_d).powi(2);
    if !approx.is_finite() || approx > MAX_GROUP_SIZE as f64 {
        return Err(StatsError::NonConvergence("sample size search"));
    }
    let mut n = (approx.floor() as usize).max(2);
    if two_sample_t_power(n, cohens_d, alpha) >= power {
        while n > 2 && two_sample_t_power(n - 1, cohens_d, alpha) >= power {
            n -= 1;
        }
        return Ok(n);
    }
    while two_sample_t_power(n, cohens_d, alpha) < power {
        n += 1;
        if n > MAX_GROUP_SIZE {
            return Err(StatsError::NonConvergence("sample size search"));
        }
    }
    Ok(n)
}
