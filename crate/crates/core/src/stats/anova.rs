use serde::Serialize;

use super::special::f_tail;
use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnovaDegeneracy {
    /// Every group is constant but the group means differ: F is infinite.
    ZeroWithinVariance,
    /// Every observation is identical: F is 0/0, reported as F = 0, p = 1.
    AllIdentical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaResult {
    pub f_statistic: f64,
    pub p_value: f64,
    pub df_between: usize,
    pub df_within: usize,
    pub group_means: Vec<f64>,
    pub group_sizes: Vec<usize>,
    pub degenerate: Option<AnovaDegeneracy>,
}

/// One-way ANOVA F test across `groups`.
pub fn one_way_anova<G: AsRef<[f64]>>(groups: &[G]) -> Result<AnovaResult, StatsError> {
    if groups.len() < 2 {
        return Err(StatsError::TooFewGroups(groups.len()));
    }
    if let Some(i) = groups.iter().position(|g| g.as_ref().is_empty()) {
        return Err(StatsError::EmptyGroup(i));
    }
    let values = || groups.iter().flat_map(|g| g.as_ref().iter().copied());
    if values().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let total: usize = groups.iter().map(|g| g.as_ref().len()).sum();
    let k = groups.len();
    if total <= k {
        return Err(StatsError::TooFewPoints { needed: k + 1, got: total });
    }

    let grand_mean = values().sum::<f64>() / total as f64;
    let group_sizes: Vec<usize> = groups.iter().map(|g| g.as_ref().len()).collect();
    let group_means: Vec<f64> =
        groups.iter().map(|g| g.as_ref().iter().sum::<f64>() / g.as_ref().len() as f64).collect();
    let ss_between: f64 =
        group_means.iter().zip(&group_sizes).map(|(m, &n)| n as f64 * (m - grand_mean) * (m - grand_mean)).sum();
    let ss_within: f64 =
        groups.iter().zip(&group_means).map(|(g, m)| g.as_ref().iter().map(|x| (x - m) * (x - m)).sum::<f64>()).sum();

    let df_between = k - 1;
    let df_within = total - k;
    let scale = values().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let negligible = f64::EPSILON * total as f64 * scale * scale;

    let (f_statistic, p_value, degenerate) = if ss_within <= negligible {
        if ss_between <= negligible {
            (0.0, 1.0, Some(AnovaDegeneracy::AllIdentical))
        } else {
            (f64::INFINITY, 0.0, Some(AnovaDegeneracy::ZeroWithinVariance))
        }
    } else {
        let f = (ss_between / df_between as f64) / (ss_within / df_within as f64);
        (f, f_tail(f, df_between as f64, df_within as f64), None)
    };

    Ok(AnovaResult { f_statistic, p_value, df_between, df_within, group_means, group_sizes, degenerate })
}
