use serde::Serialize;

use super::special::t_tail;
use super::StatsError;

/// A column whose component orthogonal to the preceding columns has norm at
/// most this fraction of its own norm is treated as linearly dependent.
pub const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionResult {
    pub intercept: f64,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub p_values: Vec<f64>,
    pub intercept_p_value: f64,
    pub r_squared: f64,
    pub adjusted_r_squared: f64,
    pub n: usize,
    pub k: usize,
    #[serde(skip)]
    pub residuals: Vec<f64>,
}

impl RegressionResult {
    pub fn residual_df(&self) -> usize {
        self.n - self.k - 1
    }
}

struct Reflector {
    // Householder vector acting on rows `start..`
    start: usize,
    v: Vec<f64>,
}

impl Reflector {
    fn apply(&self, col: &mut [f64]) {
        let tail = &mut col[self.start..];
        let dot: f64 = self.v.iter().zip(tail.iter()).map(|(a, b)| a * b).sum();
        for (t, v) in tail.iter_mut().zip(&self.v) {
            *t -= 2.0 * dot * v;
        }
    }
}

/// Ordinary least squares with an intercept, via Householder QR.
///
/// `rows` holds the `n × k` predictor matrix row by row. Predictors that are
/// linearly dependent on the intercept and earlier predictors are reported
/// (0-based predictor indices) instead of being dropped.
pub fn ols<R: AsRef<[f64]>>(rows: &[R], y: &[f64]) -> Result<RegressionResult, StatsError> {
    let n = rows.len();
    if y.len() != n {
        return Err(StatsError::LengthMismatch { left: n, right: y.len() });
    }
    let k = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
    if let Some(bad) = rows.iter().find(|r| r.as_ref().len() != k) {
        return Err(StatsError::LengthMismatch { left: k, right: bad.as_ref().len() });
    }
    if n < k + 2 {
        return Err(StatsError::TooFewPoints { needed: k + 2, got: n });
    }
    if y.iter().any(|v| !v.is_finite()) || rows.iter().flat_map(|r| r.as_ref().iter()).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }

    let p = k + 1;
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(p);
    columns.push(vec![1.0; n]);
    for j in 0..k {
        columns.push(rows.iter().map(|r| r.as_ref()[j]).collect());
    }

    let mut reflectors: Vec<Reflector> = Vec::with_capacity(p);
    let mut dependent = Vec::new();
    for (j, col) in columns.iter_mut().enumerate() {
        let norm0 = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        for h in &reflectors {
            h.apply(col);
        }
        let r = reflectors.len();
        let tail_norm = col[r..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm0 == 0.0 || tail_norm <= RANK_TOLERANCE * norm0 {
            dependent.push(j);
            continue;
        }
        let alpha = if col[r] > 0.0 { -tail_norm } else { tail_norm };
        let mut v: Vec<f64> = col[r..].to_vec();
        v[0] -= alpha;
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut v {
            *x /= vnorm;
        }
        let h = Reflector { start: r, v };
        h.apply(col);
        reflectors.push(h);
    }
    if !dependent.is_empty() {
        // column 0 is the intercept and can only be dependent when all-zero
        return Err(StatsError::RankDeficient {
            columns: dependent.into_iter().filter(|&j| j > 0).map(|j| j - 1).collect(),
        });
    }

    // upper-triangular R (p × p) sits in the first p rows of the columns
    let r_mat: Vec<Vec<f64>> = (0..p).map(|i| (0..p).map(|j| columns[j][i]).collect()).collect();
    let mut qty = y.to_vec();
    for h in &reflectors {
        h.apply(&mut qty);
    }
    let beta = back_substitute(&r_mat, &qty[..p]);

    let residuals: Vec<f64> = (0..n)
        .map(|i| {
            let fitted = beta[0] + rows[i].as_ref().iter().zip(&beta[1..]).map(|(x, b)| x * b).sum::<f64>();
            y[i] - fitted
        })
        .collect();
    let ssr: f64 = residuals.iter().map(|e| e * e).sum();
    let y_mean = y.iter().sum::<f64>() / n as f64;
    let sst: f64 = y.iter().map(|v| (v - y_mean) * (v - y_mean)).sum();
    if sst == 0.0 {
        return Err(StatsError::ZeroVariance);
    }
    let df = (n - p) as f64;
    let sigma2 = ssr / df;

    let r_inv = invert_upper(&r_mat);
    let std_errors: Vec<f64> = (0..p).map(|j| (sigma2 * r_inv[j].iter().map(|v| v * v).sum::<f64>()).sqrt()).collect();
    let p_value = |b: f64, se: f64| {
        if se == 0.0 {
            if b == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            t_tail(b / se, df)
        }
    };
    let p_values: Vec<f64> = (1..p).map(|j| p_value(beta[j], std_errors[j])).collect();

    let r_squared = (1.0 - ssr / sst).clamp(0.0, 1.0);
    let adjusted_r_squared = 1.0 - (1.0 - r_squared) * (n - 1) as f64 / df;

    Ok(RegressionResult {
        intercept: beta[0],
        coefficients: beta[1..].to_vec(),
        std_errors: std_errors[1..].to_vec(),
        p_values,
        intercept_p_value: p_value(beta[0], std_errors[0]),
        r_squared,
        adjusted_r_squared,
        n,
        k,
        residuals,
    })
}

fn back_substitute(r: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let p = rhs.len();
    let mut x = vec![0.0; p];
    for i in (0..p).rev() {
        let s: f64 = (i + 1..p).map(|j| r[i][j] * x[j]).sum();
        x[i] = (rhs[i] - s) / r[i][i];
    }
    x
}

/// Inverse of an upper-triangular matrix, returned row by row.
fn invert_upper(r: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let p = r.len();
    let mut inv = vec![vec![0.0; p]; p];
    for col in 0..p {
        let mut e = vec![0.0; p];
        e[col] = 1.0;
        let x = back_substitute(r, &e);
        for row in 0..p {
            inv[row][col] = x[row];
        }
    }
    inv
}
