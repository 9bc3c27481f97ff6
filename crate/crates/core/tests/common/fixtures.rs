//! Seeded small fixtures comparing each kernel against its oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sonnet_gam::agreement::{krippendorff_alpha, Level, ReliabilityMatrix};
use sonnet_gam::stats::{f_tail, ols, one_way_anova, regularized_incomplete_beta, spearman, t_tail};

use super::oracles;

pub const FIXTURES_PER_KERNEL: usize = 25;
pub const VALUE_TOL: f64 = 1e-8;
pub const TAIL_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct Comparison {
    pub kernel: &'static str,
    pub fixture: usize,
    pub quantity: String,
    pub got: f64,
    pub want: f64,
    pub tol: f64,
}

impl Comparison {
    pub fn ok(&self) -> bool {
        (self.got - self.want).abs() <= self.tol || (self.got.is_infinite() && self.got == self.want)
    }
}

struct Sink(Vec<Comparison>);

impl Sink {
    fn push(
        &mut self,
        kernel: &'static str,
        fixture: usize,
        quantity: impl Into<String>,
        got: f64,
        want: f64,
        tol: f64,
    ) {
        self.0.push(Comparison { kernel, fixture, quantity: quantity.into(), got, want, tol });
    }
}

fn rng(kernel: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + kernel)
}

fn spearman_fixtures(s: &mut Sink) {
    let mut r = rng(1);
    for i in 0..FIXTURES_PER_KERNEL {
        let n = r.gen_range(3..=15);
        // coarse grid so that ties occur
        let x: Vec<f64> = (0..n).map(|_| r.gen_range(0..6) as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| v + r.gen_range(-2..=2) as f64 * 0.5).collect();
        let Some(want) = oracles::spearman(&x, &y) else { continue };
        let got = spearman(&x, &y).unwrap().rho.unwrap();
        s.push("spearman", i, "rho", got, want, VALUE_TOL);
    }
}

fn ols_fixtures(s: &mut Sink) {
    let mut r = rng(2);
    for i in 0..FIXTURES_PER_KERNEL {
        let k = r.gen_range(1..=4);
        let n = r.gen_range(k + 4..=k + 20);
        let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..k).map(|_| r.gen_range(-3.0..3.0)).collect()).collect();
        let beta: Vec<f64> = (0..=k).map(|_| r.gen_range(-2.0..2.0)).collect();
        let y: Vec<f64> = rows
            .iter()
            .map(|row| beta[0] + row.iter().zip(&beta[1..]).map(|(x, b)| x * b).sum::<f64>() + r.gen_range(-1.5..1.5))
            .collect();
        let want = oracles::ols(&rows, &y);
        let got = ols(&rows, &y).unwrap();
        s.push("ols", i, "intercept", got.intercept, want.beta[0], VALUE_TOL);
        for j in 0..k {
            s.push("ols", i, format!("coefficient[{j}]"), got.coefficients[j], want.beta[j + 1], VALUE_TOL);
            s.push("ols", i, format!("std_error[{j}]"), got.std_errors[j], want.std_errors[j + 1], VALUE_TOL);
            s.push("ols", i, format!("p[{j}]"), got.p_values[j], want.p_values[j + 1], TAIL_TOL);
        }
        s.push("ols", i, "r_squared", got.r_squared, want.r_squared, VALUE_TOL);
        s.push("ols", i, "adjusted_r_squared", got.adjusted_r_squared, want.adjusted_r_squared, VALUE_TOL);
    }
}

fn anova_fixtures(s: &mut Sink) {
    let mut r = rng(3);
    for i in 0..FIXTURES_PER_KERNEL {
        let k = r.gen_range(2..=5);
        let groups: Vec<Vec<f64>> = (0..k)
            .map(|g| {
                let shift = g as f64 * r.gen_range(0.0..1.0);
                (0..r.gen_range(2..=12)).map(|_| shift + r.gen_range(-2.0..2.0)).collect()
            })
            .collect();
        let (f, p) = oracles::anova(&groups);
        let got = one_way_anova(&groups).unwrap();
        s.push("anova", i, "F", got.f_statistic, f, VALUE_TOL);
        s.push("anova", i, "p", got.p_value, p, TAIL_TOL);
    }
}

fn beta_fixtures(s: &mut Sink) {
    let mut r = rng(4);
    for i in 0..FIXTURES_PER_KERNEL {
        // half-integers keep the substituted integrand smooth; a few
        // arbitrary shapes exercise the general case
        let (a, b) = if i % 5 == 4 {
            (r.gen_range(0.5..12.0), r.gen_range(0.5..12.0))
        } else {
            (r.gen_range(1..=30) as f64 / 2.0, r.gen_range(1..=30) as f64 / 2.0)
        };
        let x: f64 = r.gen_range(0.001..0.999);
        let got = regularized_incomplete_beta(a, b, x).unwrap();
        s.push(
            "incomplete_beta",
            i,
            format!("I({x:.3}; {a:.2}, {b:.2})"),
            got,
            oracles::incomplete_beta(a, b, x),
            VALUE_TOL,
        );
    }
}

fn tail_fixtures(s: &mut Sink) {
    let mut r = rng(5);
    for i in 0..FIXTURES_PER_KERNEL {
        let df = r.gen_range(1..=60) as f64;
        let t: f64 = r.gen_range(-6.0..6.0);
        s.push("t_tail", i, format!("t={t:.3}, df={df}"), t_tail(t, df), oracles::t_two_sided(t, df), TAIL_TOL);
        let (d1, d2) = (r.gen_range(1..=10) as f64, r.gen_range(1..=80) as f64);
        let f: f64 = r.gen_range(0.01..8.0);
        s.push(
            "f_tail",
            i,
            format!("F={f:.3}, df=({d1}, {d2})"),
            f_tail(f, d1, d2),
            oracles::f_upper(f, d1, d2),
            TAIL_TOL,
        );
    }
}

fn alpha_fixtures(s: &mut Sink) {
    let mut r = rng(6);
    for i in 0..FIXTURES_PER_KERNEL {
        for (name, level) in
            [("alpha_nominal", Level::Nominal), ("alpha_ordinal", Level::Ordinal), ("alpha_interval", Level::Interval)]
        {
            let raters = r.gen_range(2..=4);
            let units = r.gen_range(3..=10);
            let cells: Vec<Vec<Option<f64>>> = (0..units)
                .map(|_| {
                    let centre = r.gen_range(1..=4);
                    (0..raters)
                        .map(|_| (!r.gen_bool(0.15)).then(|| (centre + r.gen_range(-1..=1)).clamp(1, 4) as f64))
                        .collect()
                })
                .collect();
            let Some(want) = oracles::alpha(&cells, level) else { continue };
            let m = ReliabilityMatrix { raters: (1..=raters as u8).collect(), cells, level };
            let Ok(got) = krippendorff_alpha(&m) else { continue };
            s.push(name, i, "alpha", got.alpha, want, VALUE_TOL);
        }
    }
}

/// Every kernel/oracle comparison, in a fixed order.
pub fn kernel_comparisons() -> Vec<Comparison> {
    let mut s = Sink(Vec::new());
    spearman_fixtures(&mut s);
    ols_fixtures(&mut s);
    anova_fixtures(&mut s);
    beta_fixtures(&mut s);
    tail_fixtures(&mut s);
    alpha_fixtures(&mut s);
    s.0
}

pub const KERNELS: [&str; 9] = [
    "spearman",
    "ols",
    "anova",
    "incomplete_beta",
    "t_tail",
    "f_tail",
    "alpha_nominal",
    "alpha_ordinal",
    "alpha_interval",
];

/// Number of distinct fixtures that produced comparisons, per kernel.
pub fn fixture_counts(cs: &[Comparison]) -> Vec<(&'static str, usize)> {
    KERNELS
        .iter()
        .map(|k| {
            let mut ids: Vec<usize> = cs.iter().filter(|c| c.kernel == *k).map(|c| c.fixture).collect();
            ids.dedup();
            (*k, ids.len())
        })
        .collect()
}
