//! Asymptotic checks: log-polynomial fits of power sums, constant-ratio scans
//! of grid energies, and three/four-square counting.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::geometry::{distance_histogram, energy, grid_difference_histogram, PointSet};
use crate::num::{ln_biguint, Real};
use crate::repcount::{partial_sums_at, RepTable};

/// Largest condition estimate (ratio of extreme `R` diagonal entries) accepted by [`fit_log_poly`].
pub const MAX_FIT_CONDITION: f64 = 1e8;

/// Least-squares fit of `S(x) / x` by a polynomial in `log x`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport<T> {
    pub degree: usize,
    /// Coefficients of `(log x)^d, ..., (log x)^0`, leading first.
    pub coefficients: Vec<T>,
    /// Root-mean-square relative residual of `S(x)/x`.
    pub residual: T,
    pub x_min: T,
    pub x_max: T,
    /// Ratio of the largest to smallest diagonal entry of `R`.
    pub condition: T,
}

impl<T: Real> FitReport<T> {
    pub fn leading(&self) -> T {
        self.coefficients[0]
    }

    /// `P(log x)`.
    pub fn eval(&self, x: T) -> T {
        let l = x.ln();
        self.coefficients
            .iter()
            .fold(T::zero(), |acc, &c| acc * l + c)
    }
}

/// Householder QR least squares; returns the solution and `|R_ii|` ratio.
fn least_squares<T: Real>(mut a: Vec<Vec<T>>, mut b: Vec<T>, cols: usize) -> Result<(Vec<T>, T)> {
    let rows = a.len();
    for j in 0..cols {
        let norm = (j..rows)
            .fold(T::zero(), |acc, i| acc + a[i][j] * a[i][j])
            .sqrt();
        if norm == T::zero() {
            return Err(Error::IllConditioned {
                condition: f64::INFINITY,
            });
        }
        let alpha = if a[j][j] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (j..rows).map(|i| a[i][j]).collect();
        v[0] = v[0] - alpha;
        let vnorm2 = v.iter().fold(T::zero(), |acc, &x| acc + x * x);
        if vnorm2 == T::zero() {
            continue;
        }
        for col in j..cols {
            let dot = (j..rows).fold(T::zero(), |acc, i| acc + v[i - j] * a[i][col]);
            let f = T::lit(2.0) * dot / vnorm2;
            for i in j..rows {
                a[i][col] = a[i][col] - f * v[i - j];
            }
        }
        let dot = (j..rows).fold(T::zero(), |acc, i| acc + v[i - j] * b[i]);
        let f = T::lit(2.0) * dot / vnorm2;
        for i in j..rows {
            b[i] = b[i] - f * v[i - j];
        }
    }
    let diag: Vec<T> = (0..cols).map(|j| a[j][j].abs()).collect();
    let max = diag.iter().fold(T::zero(), |m, &x| m.max(x));
    let min = diag.iter().fold(T::infinity(), |m, &x| m.min(x));
    let condition = max / min;
    if !(condition <= T::lit(MAX_FIT_CONDITION)) {
        return Err(Error::IllConditioned {
            condition: condition.to_f64_lossy(),
        });
    }
    let mut x = vec![T::zero(); cols];
    for j in (0..cols).rev() {
        let mut acc = b[j];
        for (k, &xk) in x.iter().enumerate().skip(j + 1) {
            acc = acc - a[j][k] * xk;
        }
        x[j] = acc / a[j][j];
    }
    Ok((x, condition))
}

/// Fits `S(x) / x ~ P_d(log x)` in the relative least-squares sense.
///
/// The basis is `t^j` with `t = (log x - c) / h` mapping the sample range to
/// `[-1, 1]`, solved by Householder QR; coefficients are converted back to
/// powers of `log x` afterwards.
pub fn fit_log_poly<T: Real>(samples: &[(T, T)], degree: usize) -> Result<FitReport<T>> {
    if samples.len() < degree + 2 {
        return Err(domain(format!(
            "degree {degree} needs at least {} samples, got {}",
            degree + 2,
            samples.len()
        )));
    }
    let mut xs: Vec<T> = samples.iter().map(|&(x, _)| x).collect();
    if xs.iter().any(|&x| !(x >= T::lit(10.0))) {
        return Err(domain("sample x values must be at least 10"));
    }
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(domain("sample x values must be distinct"));
    }
    let x_min = xs[0];
    let x_max = xs[xs.len() - 1];
    let (l_lo, l_hi) = (x_min.ln(), x_max.ln());
    let center = (l_lo + l_hi) * T::lit(0.5);
    let half_width = (l_hi - l_lo) * T::lit(0.5);

    let cols = degree + 1;
    let mut a = Vec::with_capacity(samples.len());
    let mut b = Vec::with_capacity(samples.len());
    let mut ys = Vec::with_capacity(samples.len());
    let mut ts = Vec::with_capacity(samples.len());
    for &(x, s) in samples {
        let y = s / x;
        let w = if y == T::zero() {
            T::one()
        } else {
            y.abs().recip()
        };
        let t = (x.ln() - center) / half_width;
        let mut row = Vec::with_capacity(cols);
        let mut p = T::one();
        for _ in 0..cols {
            row.push(p * w);
            p = p * t;
        }
        a.push(row);
        b.push(y * w);
        ys.push(y);
        ts.push(t);
    }
    let (beta, condition) = least_squares(a, b, cols)?;

    let mut sq = T::zero();
    for (&t, &y) in ts.iter().zip(&ys) {
        let fitted = beta.iter().rev().fold(T::zero(), |acc, &c| acc * t + c);
        let rel = if y == T::zero() {
            fitted
        } else {
            (fitted - y) / y
        };
        sq = sq + rel * rel;
    }
    let residual = (sq / T::from_int(samples.len() as i64)).sqrt();

    // sum_j beta_j ((L - c) / h)^j expanded in powers of L
    let mut mono = vec![T::zero(); cols];
    for (j, &bj) in beta.iter().enumerate() {
        let scale = bj / half_width.powi(j as i32);
        let mut binom = T::one();
        for i in 0..=j {
            // C(j, i) L^i (-c)^(j-i)
            mono[i] = mono[i] + scale * binom * (-center).powi((j - i) as i32);
            binom = binom * T::from_int((j - i) as i64) / T::from_int(i as i64 + 1);
        }
    }
    mono.reverse();
    Ok(FitReport {
        degree,
        coefficients: mono,
        residual,
        x_min,
        x_max,
        condition,
    })
}

/// Geometric sample points `lo * ratio^i <= hi`, rounded down, deduplicated.
pub fn geometric_points(lo: u64, hi: u64, per_doubling: u32) -> Vec<u64> {
    let step = 2f64.powf(1.0 / f64::from(per_doubling.max(1)));
    let mut out = Vec::new();
    let mut x = lo as f64;
    while x <= hi as f64 * (1.0 + 1e-12) {
        let v = (x.round() as u64).min(hi);
        if out.last() != Some(&v) {
            out.push(v);
        }
        x *= step;
    }
    if out.last() != Some(&hi) {
        out.push(hi);
    }
    out
}

/// `(x, S_k(x))` samples at the given points, ready for [`fit_log_poly`].
pub fn power_sum_samples<T: Real>(table: &RepTable, k: u32, xs: &[u64]) -> Result<Vec<(T, T)>> {
    let sums = partial_sums_at(table, k, xs)?;
    Ok(xs
        .iter()
        .zip(sums)
        .map(|(&x, s)| (T::from_int(x as i64), T::lit(s as f64)))
        .collect())
}

/// Fits of degree `2^(k-1) - 1` and one lower, compared.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeComparison<T> {
    pub k: u32,
    /// `2^(k-1) - 1`, the power of `log x` predicted for `S_k(x) / x`.
    pub predicted_degree: usize,
    /// `(k - 1) / 2`, the power a `d(P) >~ N / log N` bound via this route would need.
    pub required_power: T,
    pub at_degree: FitReport<T>,
    pub below: FitReport<T>,
}

impl<T: Real> DegreeComparison<T> {
    /// `residual(degree - 1) / residual(degree)`.
    pub fn improvement(&self) -> T {
        self.below.residual / self.at_degree.residual
    }
}

/// Fits `S_k(x) / x` at the predicted degree and one below on the same samples.
pub fn degree_comparison<T: Real>(
    table: &RepTable,
    k: u32,
    xs: &[u64],
) -> Result<DegreeComparison<T>> {
    if !(2..=8).contains(&k) {
        return Err(domain(format!(
            "degree comparison needs 2 <= k <= 8, got {k}"
        )));
    }
    let samples = power_sum_samples::<T>(table, k, xs)?;
    let predicted_degree = (1usize << (k - 1)) - 1;
    Ok(DegreeComparison {
        k,
        predicted_degree,
        required_power: T::from_int(i64::from(k) - 1) / T::lit(2.0),
        at_degree: fit_log_poly(&samples, predicted_degree)?,
        below: fit_log_poly(&samples, predicted_degree - 1)?,
    })
}

/// `(N, ratio)` pairs from a scan, with a description of the normaliser.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSeries<T> {
    pub points: Vec<(u64, T)>,
    pub normalizer: String,
    /// Set when no theorem predicts a bounded ratio for this normaliser.
    pub exploratory: bool,
}

impl<T: Real> RatioSeries<T> {
    /// `max / min` of the ratios.
    pub fn spread(&self) -> T {
        let (lo, hi) = self
            .points
            .iter()
            .fold((T::infinity(), T::zero()), |(lo, hi), &(_, r)| {
                (lo.min(r), hi.max(r))
            });
        hi / lo
    }
}

fn check_sides(sides: &[u64]) -> Result<()> {
    if sides.is_empty() {
        return Err(domain("scan needs at least one side"));
    }
    if sides[0] < 2 || sides.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("sides must be strictly increasing and at least 2"));
    }
    Ok(())
}

/// `E_k(grid) / normaliser` for the grids `{1..side}^m`.
///
/// For `m = 2` the normaliser is `N^(k+1) (log N)^(2^(k-1) - 1)`; for `m >= 3`
/// and `k = 2` it is `N^(2 + (2m-2)/m)`. Any other combination uses `N^(k+1)`
/// and is flagged exploratory.
pub fn grid_energy_ratio_scan<T: Real>(k: u32, m: usize, sides: &[u64]) -> Result<RatioSeries<T>> {
    check_sides(sides)?;
    if k == 0 || k > 8 {
        return Err(domain(format!("energy order must be in 1..=8, got {k}")));
    }
    let log_power = (1u32 << (k - 1)) - 1;
    let (normalizer, exploratory) = match (m, k) {
        (2, _) if log_power == 0 => (format!("N^{}", k + 1), false),
        (2, _) => (format!("N^{} (log N)^{log_power}", k + 1), false),
        (m, 2) if m >= 3 => (format!("N^(2+{}/{m})", 2 * m - 2), false),
        _ => (format!("N^{}", k + 1), true),
    };
    let points = sides
        .par_iter()
        .map(|&side| {
            let h = grid_difference_histogram(m, side)?;
            let n = h.source_size() as f64;
            let ln_n = n.ln();
            let ln_norm = match (m, k) {
                (2, _) => f64::from(k + 1) * ln_n + f64::from(log_power) * ln_n.ln(),
                (m, 2) if m >= 3 => (2.0 + (2.0 * m as f64 - 2.0) / m as f64) * ln_n,
                _ => f64::from(k + 1) * ln_n,
            };
            let ratio = (ln_biguint(&energy(&h, k)) - ln_norm).exp();
            Ok((h.source_size(), T::lit(ratio)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioSeries {
        points,
        normalizer,
        exploratory,
    })
}

/// `d(P) E_2(P) / N^4` for the grids `{1..side}^m`, `m >= 3`.
pub fn optimality_product<T: Real>(m: usize, sides: &[u64]) -> Result<RatioSeries<T>> {
    if m < 3 {
        return Err(domain("the optimality product is stated for m >= 3"));
    }
    check_sides(sides)?;
    let points = sides
        .par_iter()
        .map(|&side| {
            let h = grid_difference_histogram(m, side)?;
            let n = h.source_size() as f64;
            let ln = (h.distinct() as f64).ln() + ln_biguint(&energy(&h, 2)) - 4.0 * n.ln();
            Ok((h.source_size(), T::lit(ln.exp())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioSeries {
        points,
        normalizer: "N^4 / d(P)".to_string(),
        exploratory: false,
    })
}

/// `#{1 <= n <= x : n != 4^a (8b + 7)}`, the integers that are sums of three squares.
pub fn legendre_distinct_count(x: u64) -> u64 {
    let mut excluded = 0;
    let mut scale = 1u64;
    while scale <= x / 7 {
        // 8b + 7 <= x / scale
        excluded += (x / scale - 7) / 8 + 1;
        match scale.checked_mul(4) {
            Some(s) => scale = s,
            None => break,
        }
    }
    x - excluded
}

/// One point set's entry in the energy-exponent report.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyExponentRow<T> {
    pub label: String,
    pub n: u64,
    pub e2: BigUint,
    /// `E_2 / N^(2 + (2m-2)/m)`.
    pub ratio: T,
}

/// `E_2(P) / |P|^(2 + (2m-2)/m)` for each labelled set; a report, not a test.
pub fn energy_exponent_report<T: Real>(
    sets: &[(String, PointSet)],
    m: usize,
) -> Result<Vec<EnergyExponentRow<T>>> {
    if m == 0 {
        return Err(domain("dimension must be positive"));
    }
    let exponent = 2.0 + (2.0 * m as f64 - 2.0) / m as f64;
    sets.iter()
        .map(|(label, set)| {
            if set.dim() != m {
                return Err(domain(format!(
                    "set {label} has dimension {}, expected {m}",
                    set.dim()
                )));
            }
            let h = distance_histogram(set)?;
            let e2 = energy(&h, 2);
            let n = set.len() as u64;
            let ratio = (ln_biguint(&e2) - exponent * (n as f64).ln()).exp();
            Ok(EnergyExponentRow {
                label: label.clone(),
                n,
                e2,
                ratio: T::lit(ratio),
            })
        })
        .collect()
}
