//! Finite integer point sets, their squared-distance histograms and the
//! distance energies built from them.
//!
//! Pairs are ordered and exclude `p == q`, so a histogram over `N` points
//! always accounts for exactly `N(N-1)` pairs and every count is even.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{capacity, domain, Result};
use crate::num::{ln_biguint, Real};

/// Largest number of points a generated grid may hold.
pub const MAX_GRID_POINTS: u64 = 1 << 26;

/// Largest dense squared-distance table allocated by the pair enumerator.
const DENSE_HISTOGRAM_LIMIT: u64 = 1 << 24;

/// Largest number of difference vectors the grid path will visit.
const MAX_DIFFERENCE_VECTORS: u64 = 1 << 32;

/// A finite set of pairwise distinct points in `Z^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<i64>,
}

impl PointSet {
    /// Builds a point set, rejecting empty input, ragged coordinates and duplicates.
    pub fn new(dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(domain("dimension must be at least 1"));
        }
        if points.is_empty() {
            return Err(domain("a point set needs at least one point"));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(domain(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            coords.extend_from_slice(p);
        }
        let mut seen = std::collections::HashSet::with_capacity(points.len());
        for p in &points {
            if !seen.insert(p.as_slice()) {
                return Err(domain(format!("duplicate point {p:?}")));
            }
        }
        Ok(Self { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[i64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }
}

/// Builds the grid `{1, ..., side}^m`.
pub fn make_square_grid(m: usize, side: u64) -> Result<PointSet> {
    if m == 0 || side == 0 {
        return Err(domain("grid dimension and side must be positive"));
    }
    let n = checked_pow(side, m)
        .filter(|&n| n <= MAX_GRID_POINTS)
        .ok_or_else(|| capacity(format!("grid {side}^{m} exceeds {MAX_GRID_POINTS} points")))?;
    let mut coords = Vec::with_capacity(n as usize * m);
    let mut current = vec![1i64; m];
    for _ in 0..n {
        coords.extend_from_slice(&current);
        // odometer, last coordinate fastest
        for c in current.iter_mut().rev() {
            if (*c as u64) < side {
                *c += 1;
                break;
            }
            *c = 1;
        }
    }
    Ok(PointSet { dim: m, coords })
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Seeded random point set in `[lo, hi]^m`; duplicates are rejected and resampled.
///
/// Uses ChaCha8 seeded with `seed`, drawing coordinates uniformly and
/// independently, point by point, in order.
pub fn random_point_set(m: usize, n: usize, lo: i64, hi: i64, seed: u64) -> Result<PointSet> {
    if m == 0 || n == 0 || lo > hi {
        return Err(domain("random point set needs m >= 1, n >= 1 and lo <= hi"));
    }
    let cells = ((hi - lo + 1) as f64).powi(m as i32);
    if (n as f64) > cells {
        return Err(domain(format!(
            "cannot place {n} distinct points in a box of {cells} cells"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p: Vec<i64> = (0..m).map(|_| rng.gen_range(lo..=hi)).collect();
        if seen.insert(p.clone()) {
            points.push(p);
        }
    }
    PointSet::new(m, points)
}

/// Squared distance -> number of ordered pairs of distinct points at that distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceHistogram {
    entries: Vec<(u64, u64)>,
    source_size: u64,
}

impl DistanceHistogram {
    /// `(squared distance, ordered pair count)` in strictly increasing distance order.
    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    /// Number of points `N` of the underlying set.
    pub fn source_size(&self) -> u64 {
        self.source_size
    }

    /// Number of distinct distances `d(P)`.
    pub fn distinct(&self) -> u64 {
        self.entries.len() as u64
    }

    /// Total number of ordered pairs, `N(N-1)`.
    pub fn total_pairs(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| c).sum()
    }

    fn from_dense(dense: &[u64], source_size: u64) -> Self {
        let entries = dense
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c > 0)
            .map(|(d2, &c)| (d2 as u64, c))
            .collect();
        Self {
            entries,
            source_size,
        }
    }
}

/// Exact histogram by enumerating every pair. `O(N^2)`; this is the oracle
/// the grid fast path is checked against.
pub fn distance_histogram(points: &PointSet) -> Result<DistanceHistogram> {
    let n = points.len();
    let dim = points.dim();
    let source_size = n as u64;
    if n < 2 {
        return Ok(DistanceHistogram {
            entries: Vec::new(),
            source_size,
        });
    }

    let mut max_d2: u64 = 0;
    for axis in 0..dim {
        let (lo, hi) = points
            .iter()
            .map(|p| p[axis])
            .fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let span = (hi as i128 - lo as i128) as u128;
        let sq = span * span;
        max_d2 = u64::try_from(sq)
            .ok()
            .and_then(|sq| max_d2.checked_add(sq))
            .ok_or_else(|| capacity("squared distances exceed 64 bits"))?;
    }

    let sq_dist = |i: usize, j: usize| -> u64 {
        points
            .point(i)
            .iter()
            .zip(points.point(j))
            .map(|(&a, &b)| {
                let d = a.abs_diff(b);
                d * d
            })
            .sum()
    };

    if max_d2 < DENSE_HISTOGRAM_LIMIT {
        let len = max_d2 as usize + 1;
        let dense = (0..n)
            .into_par_iter()
            .fold(
                || vec![0u64; len],
                |mut acc, i| {
                    for j in i + 1..n {
                        acc[sq_dist(i, j) as usize] += 2;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(DistanceHistogram::from_dense(&dense, source_size))
    } else {
        let map = (0..n)
            .into_par_iter()
            .fold(HashMap::<u64, u64>::new, |mut acc, i| {
                for j in i + 1..n {
                    *acc.entry(sq_dist(i, j)).or_default() += 2;
                }
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        let mut entries: Vec<(u64, u64)> = map.into_iter().collect();
        entries.sort_unstable();
        Ok(DistanceHistogram {
            entries,
            source_size,
        })
    }
}

/// Histogram of the grid `{1..side}^m` from difference vectors.
///
/// A difference vector `a` occurs between `prod_i (side - |a_i|)` ordered
/// pairs. Only the nonnegative orthant is visited; each vector there stands
/// for `2^(nonzero coordinates)` sign patterns.
pub fn grid_difference_histogram(m: usize, side: u64) -> Result<DistanceHistogram> {
    if m == 0 || side == 0 {
        return Err(domain("grid dimension and side must be positive"));
    }
    let n = checked_pow(side, m).ok_or_else(|| capacity(format!("grid {side}^{m} overflows")))?;
    if n > MAX_DIFFERENCE_VECTORS {
        return Err(capacity(format!(
            "grid {side}^{m} has more than {MAX_DIFFERENCE_VECTORS} difference vectors"
        )));
    }
    // every ordered pair count fits: N(N-1) < 2^64 for N <= 2^32
    let max_d2 = (m as u64) * (side - 1) * (side - 1);
    if max_d2 >= DENSE_HISTOGRAM_LIMIT * 4 {
        return Err(capacity(format!(
            "squared distances up to {max_d2} exceed the dense table"
        )));
    }
    let mut dense = vec![0u64; max_d2 as usize + 1];

    let first_axis: Vec<u64> = (0..side).collect();
    let partials: Vec<Vec<u64>> = first_axis
        .par_chunks(((side as usize) / rayon::current_num_threads().max(1)).max(1))
        .map(|firsts| {
            let mut local = vec![0u64; max_d2 as usize + 1];
            let mut rest = vec![0u64; m - 1];
            for &a0 in firsts {
                rest.iter_mut().for_each(|x| *x = 0);
                loop {
                    let mut weight = side - a0;
                    let mut d2 = a0 * a0;
                    let mut nonzero = u32::from(a0 != 0);
                    for &a in &rest {
                        weight *= side - a;
                        d2 += a * a;
                        nonzero += u32::from(a != 0);
                    }
                    if d2 > 0 {
                        local[d2 as usize] += weight << nonzero;
                    }
                    let mut axis = m - 1;
                    loop {
                        if axis == 0 {
                            break;
                        }
                        let slot = &mut rest[axis - 1];
                        if *slot + 1 < side {
                            *slot += 1;
                            break;
                        }
                        *slot = 0;
                        axis -= 1;
                    }
                    if axis == 0 {
                        break;
                    }
                }
            }
            local
        })
        .collect();
    for part in partials {
        dense.iter_mut().zip(&part).for_each(|(x, y)| *x += y);
    }
    Ok(DistanceHistogram::from_dense(&dense, n))
}

/// `E_k = sum_i n_i^k`. For `k = 0` this is the number of distinct distances.
pub fn energy(histogram: &DistanceHistogram, k: u32) -> BigUint {
    if k == 0 {
        return BigUint::from(histogram.distinct());
    }
    histogram
        .entries
        .iter()
        .map(|&(_, c)| BigUint::from(c).pow(k))
        .fold(BigUint::zero(), |acc, x| acc + x)
}

/// Lower bound `d(P) >= (N^2 - N)^(k/(k-1)) / E_k^(1/(k-1))` from Hölder's inequality.
pub fn holder_lower_bound<T: Real>(histogram: &DistanceHistogram, k: u32) -> Result<T> {
    if k < 2 {
        return Err(domain("the Hölder bound needs k >= 2"));
    }
    let n = histogram.source_size;
    if n < 2 {
        return Err(domain("the Hölder bound needs at least two points"));
    }
    let pairs = (n as f64) * (n as f64 - 1.0);
    let e = energy(histogram, k);
    let kf = f64::from(k);
    let ln_bound = kf / (kf - 1.0) * pairs.ln() - ln_biguint(&e) / (kf - 1.0);
    Ok(T::lit(ln_bound.exp()))
}

/// One row of an energy computation.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport<T> {
    pub n: u64,
    pub k: u32,
    pub energy: BigUint,
    pub distinct: u64,
    /// Hölder bound on `d(P)`; zero when `k < 2` or `N < 2`, where no bound applies.
    pub holder_bound: T,
}

pub fn energy_report<T: Real>(histogram: &DistanceHistogram, k: u32) -> EnergyReport<T> {
    let holder_bound = holder_lower_bound(histogram, k).unwrap_or_else(|_| T::zero());
    EnergyReport {
        n: histogram.source_size,
        k,
        energy: energy(histogram, k),
        distinct: histogram.distinct(),
        holder_bound,
    }
}

/// `N(N-1)` as a big integer; `E_1` for any histogram over `N` points.
pub fn ordered_pairs(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    BigUint::from(n) * BigUint::from(n - 1)
}
