//! Slow, direct reference computations. None of these share code with the
//! library kernels: ranks by counting, regression by normal equations,
//! tails by numerical integration of the density, alpha by enumerating
//! value pairs.

use sonnet_gam::agreement::Level;

/// Adaptive Simpson quadrature.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    step(f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// Quadrature with a tolerance relative to the integral's size, estimated
/// on a fixed grid first.
pub fn integrate_rel(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel: f64) -> f64 {
    let h = (b - a) / 512.0;
    let rough: f64 = (0..512).map(|i| f(a + (i as f64 + 0.5) * h).abs()).sum::<f64>() * h;
    integrate(f, a, b, rel * rough.max(f64::MIN_POSITIVE))
}

/// `I_x(a, b)` for `a, b >= 1/2`, integrating the beta density after the
/// substitution `u = sin²φ`, which removes the endpoint singularities.
pub fn incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    assert!(a >= 0.5 && b >= 0.5 && (0.0..=1.0).contains(&x));
    let g = move |phi: f64| phi.sin().powf(2.0 * a - 1.0) * phi.cos().powf(2.0 * b - 1.0);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let total = integrate_rel(&g, 0.0, half_pi, 1e-14);
    let tol = 1e-14 * total;
    let phi_x = x.sqrt().asin();
    if x <= 0.5 {
        integrate(&g, 0.0, phi_x, tol) / total
    } else {
        1.0 - integrate(&g, phi_x, half_pi, tol) / total
    }
}

/// Two-sided Student t tail. With `x = √ν tan θ` the density becomes
/// `cos^(ν-1) θ` on `(-π/2, π/2)`.
pub fn t_two_sided(t: f64, df: f64) -> f64 {
    assert!(df >= 1.0);
    let g = move |theta: f64| theta.cos().powf(df - 1.0);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let theta_t = (t.abs() / df.sqrt()).atan();
    let total = integrate_rel(&g, 0.0, half_pi, 1e-14);
    integrate(&g, theta_t, half_pi, 1e-14 * total) / total
}

/// Upper F tail through the beta law of `d1 F / (d1 F + d2)`.
pub fn f_upper(f: f64, d1: f64, d2: f64) -> f64 {
    let x = d2 / (d2 + d1 * f);
    incomplete_beta(d2 / 2.0, d1 / 2.0, x)
}

/// Rank = number of smaller values + half the tied block, plus one half.
pub fn ranks_by_counting(xs: &[f64]) -> Vec<f64> {
    xs.iter()
        .map(|x| {
            let less = xs.iter().filter(|y| *y < x).count() as f64;
            let equal = xs.iter().filter(|y| *y == x).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

/// Spearman's rho from the pairwise-difference form of the covariance.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    let (rx, ry) = (ranks_by_counting(x), ranks_by_counting(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let (dx, dy) = (rx[i] - rx[j], ry[i] - ry[j]);
            sxy += dx * dy;
            sxx += dx * dx;
            syy += dy * dy;
        }
    }
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}

pub struct OlsOracle {
    /// Intercept first.
    pub beta: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r_squared: f64,
    pub adjusted_r_squared: f64,
}

fn invert(mut a: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let p = a.len();
    let mut inv: Vec<Vec<f64>> = (0..p).map(|i| (0..p).map(|j| f64::from(u8::from(i == j))).collect()).collect();
    for col in 0..p {
        let pivot = (col..p).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let d = a[col][col];
        for j in 0..p {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for i in 0..p {
            if i != col {
                let factor = a[i][col];
                for j in 0..p {
                    a[i][j] -= factor * a[col][j];
                    inv[i][j] -= factor * inv[col][j];
                }
            }
        }
    }
    inv
}

/// OLS with intercept by inverting `XᵀX`.
pub fn ols(rows: &[Vec<f64>], y: &[f64]) -> OlsOracle {
    let n = rows.len();
    let x: Vec<Vec<f64>> = rows.iter().map(|r| std::iter::once(1.0).chain(r.iter().copied()).collect()).collect();
    let p = x[0].len();
    let xtx: Vec<Vec<f64>> =
        (0..p).map(|i| (0..p).map(|j| (0..n).map(|r| x[r][i] * x[r][j]).sum()).collect()).collect();
    let xty: Vec<f64> = (0..p).map(|i| (0..n).map(|r| x[r][i] * y[r]).sum()).collect();
    let inv = invert(xtx);
    let beta: Vec<f64> = (0..p).map(|i| (0..p).map(|j| inv[i][j] * xty[j]).sum()).collect();
    let rss: f64 = (0..n)
        .map(|r| {
            let fit: f64 = (0..p).map(|j| x[r][j] * beta[j]).sum();
            (y[r] - fit).powi(2)
        })
        .sum();
    let ybar = y.iter().sum::<f64>() / n as f64;
    let tss: f64 = y.iter().map(|v| (v - ybar).powi(2)).sum();
    let df = (n - p) as f64;
    let sigma2 = rss / df;
    let std_errors: Vec<f64> = (0..p).map(|j| (sigma2 * inv[j][j]).sqrt()).collect();
    let p_values = beta.iter().zip(&std_errors).map(|(b, se)| t_two_sided(b / se, df)).collect();
    let r_squared = 1.0 - rss / tss;
    let adjusted_r_squared = 1.0 - (1.0 - r_squared) * (n - 1) as f64 / df;
    OlsOracle { beta, std_errors, p_values, r_squared, adjusted_r_squared }
}

/// (F, p) from total and within sums of squares.
pub fn anova(groups: &[Vec<f64>]) -> (f64, f64) {
    let all: Vec<f64> = groups.concat();
    let n = all.len() as f64;
    let k = groups.len() as f64;
    let grand = all.iter().sum::<f64>() / n;
    let sst: f64 = all.iter().map(|x| (x - grand).powi(2)).sum();
    let ssw: f64 = groups
        .iter()
        .map(|g| {
            let m = g.iter().sum::<f64>() / g.len() as f64;
            g.iter().map(|x| (x - m).powi(2)).sum::<f64>()
        })
        .sum();
    let f = ((sst - ssw) / (k - 1.0)) / (ssw / (n - k));
    (f, f_upper(f, k - 1.0, n - k))
}

/// Equal-variance two-sample t test: (t, two-sided p).
pub fn pooled_t_test(a: &[f64], b: &[f64]) -> (f64, f64) {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ma, mb) = (a.iter().sum::<f64>() / na, b.iter().sum::<f64>() / nb);
    let ss: f64 = a.iter().map(|x| (x - ma).powi(2)).sum::<f64>() + b.iter().map(|x| (x - mb).powi(2)).sum::<f64>();
    let df = na + nb - 2.0;
    let t = (ma - mb) / (ss / df * (1.0 / na + 1.0 / nb)).sqrt();
    (t, t_two_sided(t, df))
}

/// Krippendorff's alpha by enumerating every ordered pair of pairable
/// values: within units (weighted 1/(m-1)) for the observed disagreement,
/// across the pooled values for the expected one. `None` when the expected
/// disagreement is zero.
pub fn alpha(cells: &[Vec<Option<f64>>], level: Level) -> Option<f64> {
    let units: Vec<Vec<f64>> =
        cells.iter().map(|r| r.iter().flatten().copied().collect::<Vec<_>>()).filter(|u| u.len() >= 2).collect();
    let pool: Vec<f64> = units.concat();
    let n = pool.len() as f64;
    let count = |v: f64| pool.iter().filter(|x| **x == v).count() as f64;
    let dist = |a: f64, b: f64| -> f64 {
        if a == b {
            return 0.0;
        }
        match level {
            Level::Nominal => 1.0,
            Level::Interval => (a - b).powi(2),
            Level::Ordinal => {
                let (lo, hi) = (a.min(b), a.max(b));
                let between = pool.iter().filter(|x| **x >= lo && **x <= hi).count() as f64;
                (between - (count(a) + count(b)) / 2.0).powi(2)
            }
        }
    };
    let mut d_o = 0.0;
    for u in &units {
        let m = u.len() as f64;
        for i in 0..u.len() {
            for j in 0..u.len() {
                if i != j {
                    d_o += dist(u[i], u[j]) / (m - 1.0);
                }
            }
        }
    }
    d_o /= n;
    let mut d_e = 0.0;
    for i in 0..pool.len() {
        for j in 0..pool.len() {
            if i != j {
                d_e += dist(pool[i], pool[j]);
            }
        }
    }
    d_e /= n * (n - 1.0);
    (d_e > 0.0).then(|| 1.0 - d_o / d_e)
}
