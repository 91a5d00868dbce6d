//! Representation-function sieves.
//!
//! `r_Q(n)` counts integer vectors on the level set `Q = n`. Tables hold one
//! 32-bit counter per `n` in `0..=x_max`; `r(0) = 1` is stored but never enters
//! a partial sum.
//!
//! Every sieve partitions the `n`-range into disjoint slices and fills each
//! slice independently, so results do not depend on the worker count.

use std::io::{Read, Write};

use num_bigint::BigUint;
use num_integer::Roots;
use rayon::prelude::*;

use crate::error::{capacity, domain, Error, Result};

/// Largest sieve length accepted (one `u32` per entry).
pub const MAX_SIEVE_LEN: u64 = 1 << 30;

/// Default ceiling on the exponent of power partial sums.
pub const DEFAULT_MAX_POWER: u32 = 8;

/// Which quadratic form a table counts representations of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormDescriptor {
    /// `x_1^2 + ... + x_m^2`, `m >= 2`.
    SumOfSquares { m: u32 },
    /// `a x^2 + b x y + c y^2`, positive definite.
    Binary { a: i64, b: i64, c: i64 },
}

impl FormDescriptor {
    pub fn sum_of_squares(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(domain(format!("sum of {m} squares: need m >= 2")));
        }
        Ok(Self::SumOfSquares { m })
    }

    pub fn binary(a: i64, b: i64, c: i64) -> Result<Self> {
        check_positive_definite(a, b, c)?;
        Ok(Self::Binary { a, b, c })
    }

    /// Short stable name, used for cache file names.
    pub fn slug(&self) -> String {
        match *self {
            Self::SumOfSquares { m } => format!("squares{m}"),
            Self::Binary { a, b, c } => format!("form_{a}_{b}_{c}"),
        }
    }
}

pub(crate) fn check_positive_definite(a: i64, b: i64, c: i64) -> Result<()> {
    let det = 4 * (a as i128) * (c as i128) - (b as i128) * (b as i128);
    if a <= 0 || det <= 0 {
        return Err(domain(format!(
            "form ({a}, {b}, {c}) is not positive definite"
        )));
    }
    Ok(())
}

/// Sieved values `r(0..=x_max)` for one form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTable {
    descriptor: FormDescriptor,
    values: Vec<u32>,
}

impl RepTable {
    pub fn descriptor(&self) -> FormDescriptor {
        self.descriptor
    }

    pub fn x_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, n: u64) -> Option<u32> {
        self.values.get(n as usize).copied()
    }

    /// The same table cut down to `n <= x_max`.
    pub fn prefix(&self, x_max: u64) -> Result<RepTable> {
        if x_max > self.x_max() {
            return Err(Error::TableTooShort {
                needed: x_max,
                available: self.x_max(),
            });
        }
        Ok(RepTable {
            descriptor: self.descriptor,
            values: self.values[..=x_max as usize].to_vec(),
        })
    }

    /// Fails unless the table reaches `n`.
    pub fn require(&self, n: u64) -> Result<()> {
        if n > self.x_max() {
            return Err(Error::TableTooShort {
                needed: n,
                available: self.x_max(),
            });
        }
        Ok(())
    }
}

fn alloc_counts(x_max: u64) -> Result<Vec<u32>> {
    if x_max >= MAX_SIEVE_LEN {
        return Err(capacity(format!(
            "sieve up to {x_max} exceeds the limit of {MAX_SIEVE_LEN} entries"
        )));
    }
    let len = x_max as usize + 1;
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|_| capacity(format!("cannot allocate {len} counters")))?;
    v.resize(len, 0u32);
    Ok(v)
}

fn slice_len(total: usize) -> usize {
    let workers = rayon::current_num_threads().max(1);
    (total / (workers * 4)).max(1 << 16)
}

/// Integer interval of `x` with `a x^2 + b x y + c y^2 <= bound`, or `None`.
fn x_interval(a: i64, b: i64, c: i64, y: i64, bound: i64) -> Option<(i64, i64)> {
    if bound < 0 {
        return None;
    }
    let (a, b, c, y, bound) = (a as i128, b as i128, c as i128, y as i128, bound as i128);
    let disc = b * b - 4 * a * c;
    // roots of a x^2 + (b y) x + (c y^2 - bound): (-b y ± sqrt(4 a bound + disc y^2)) / 2a
    let rad = 4 * a * bound + disc * y * y;
    if rad < 0 {
        return None;
    }
    let q = |x: i128| a * x * x + b * x * y + c * y * y;
    let root = (rad as u128).sqrt() as i128;
    let mut lo = (-b * y - root).div_euclid(2 * a);
    let mut hi = (-b * y + root).div_euclid(2 * a) + 1;
    while q(lo) > bound {
        lo += 1;
        if lo > hi {
            return None;
        }
    }
    while lo > i128::from(i64::MIN) && q(lo - 1) <= bound {
        lo -= 1;
    }
    while q(hi) > bound {
        hi -= 1;
        if hi < lo {
            return None;
        }
    }
    while q(hi + 1) <= bound {
        hi += 1;
    }
    Some((lo as i64, hi as i64))
}

/// `|y|` bound for the ellipse `Q(x, y) <= bound`: `y^2 <= 4 a bound / |disc|`.
fn y_extent(a: i64, b: i64, c: i64, bound: u64) -> i64 {
    let det = 4 * (a as i128) * (c as i128) - (b as i128) * (b as i128);
    let v = 4 * (a as u128) * (bound as u128) / det as u128;
    v.sqrt() as i64 + 1
}

/// Counts `r_Q(n)` for `n` in `lo..lo + out.len()`.
fn fill_binary_slice(a: i64, b: i64, c: i64, lo: u64, out: &mut [u32]) {
    let hi = lo + out.len() as u64 - 1;
    let y_max = y_extent(a, b, c, hi);
    let q = |x: i64, y: i64| -> u64 {
        let (x, y) = (x as i128, y as i128);
        (a as i128 * x * x + b as i128 * x * y + c as i128 * y * y) as u64
    };
    for y in -y_max..=y_max {
        let Some((ol, oh)) = x_interval(a, b, c, y, hi as i64) else {
            continue;
        };
        match x_interval(a, b, c, y, lo as i64 - 1) {
            None => {
                for x in ol..=oh {
                    out[(q(x, y) - lo) as usize] += 1;
                }
            }
            Some((il, ih)) => {
                for x in (ol..il).chain(ih + 1..=oh) {
                    out[(q(x, y) - lo) as usize] += 1;
                }
            }
        }
    }
}

/// Exact `r_Q(n)` for `n <= x_max` by enumerating the ellipse `Q(x, y) <= x_max`.
pub fn sieve_binary_form(a: i64, b: i64, c: i64, x_max: u64) -> Result<RepTable> {
    let descriptor = FormDescriptor::binary(a, b, c)?;
    let mut values = alloc_counts(x_max)?;
    let chunk = slice_len(values.len());
    values
        .par_chunks_mut(chunk)
        .enumerate()
        .for_each(|(i, out)| fill_binary_slice(a, b, c, (i * chunk) as u64, out));
    Ok(RepTable { descriptor, values })
}

/// Exact `r_m(n)` for `n <= x_max`.
///
/// `m = 2` enumerates the disc; higher `m` convolve with the one-square
/// indicator, `r_m(n) = sum_t r_{m-1}(n - t^2)`.
pub fn sieve_sum_of_squares(m: u32, x_max: u64) -> Result<RepTable> {
    let descriptor = FormDescriptor::sum_of_squares(m)?;
    let mut current = sieve_binary_form(1, 0, 1, x_max)?.values;
    for _ in 2..m {
        let prev = current;
        let mut next = alloc_counts(x_max)?;
        let chunk = slice_len(next.len());
        let overflow = std::sync::atomic::AtomicBool::new(false);
        next.par_chunks_mut(chunk).enumerate().for_each(|(i, out)| {
            let lo = i * chunk;
            for (off, slot) in out.iter_mut().enumerate() {
                let n = lo + off;
                let mut acc = u64::from(prev[n]);
                let mut t = 1usize;
                while t * t <= n {
                    acc += 2 * u64::from(prev[n - t * t]);
                    t += 1;
                }
                match u32::try_from(acc) {
                    Ok(v) => *slot = v,
                    Err(_) => overflow.store(true, std::sync::atomic::Ordering::Relaxed),
                }
            }
        });
        if overflow.into_inner() {
            return Err(capacity(format!("r_{m}(n) exceeds 32 bits below {x_max}")));
        }
        current = next;
    }
    Ok(RepTable {
        descriptor,
        values: current,
    })
}

/// Sieves whichever form `descriptor` names.
pub fn sieve(descriptor: FormDescriptor, x_max: u64) -> Result<RepTable> {
    match descriptor {
        FormDescriptor::SumOfSquares { m } => sieve_sum_of_squares(m, x_max),
        FormDescriptor::Binary { a, b, c } => sieve_binary_form(a, b, c, x_max),
    }
}

fn exact_sqrt(n: u128) -> Option<u128> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

fn squares_oracle(n: u64, m: u32) -> u64 {
    if m == 1 {
        return match exact_sqrt(u128::from(n)) {
            Some(0) => 1,
            Some(_) => 2,
            None => 0,
        };
    }
    let t_max = n.sqrt();
    (0..=t_max)
        .map(|t| {
            let w = if t == 0 { 1 } else { 2 };
            w * squares_oracle(n - t * t, m - 1)
        })
        .sum()
}

fn binary_oracle(a: i64, b: i64, c: i64, n: u64) -> u64 {
    let (a, b, c, n) = (a as i128, b as i128, c as i128, n as i128);
    let disc = b * b - 4 * a * c;
    let y_max = ((4 * a * n / -disc) as u128).sqrt() as i128 + 1;
    let mut count = 0;
    for y in -y_max..=y_max {
        // a x^2 + b y x + (c y^2 - n) = 0
        let rad = 4 * a * n + disc * y * y;
        if rad < 0 {
            continue;
        }
        let Some(root) = exact_sqrt(rad as u128) else {
            continue;
        };
        let root = root as i128;
        let roots: &[i128] = if root == 0 { &[0] } else { &[root, -root] };
        for &sr in roots {
            let num = -b * y + sr;
            if num.rem_euclid(2 * a) == 0 {
                let x = num / (2 * a);
                debug_assert_eq!(a * x * x + b * x * y + c * y * y, n);
                count += 1;
            }
        }
    }
    count
}

/// Direct per-`n` count, sharing no code with the sieves.
pub fn brute_force_rep(descriptor: &FormDescriptor, n: u64) -> u64 {
    match *descriptor {
        FormDescriptor::SumOfSquares { m } => squares_oracle(n, m),
        FormDescriptor::Binary { a, b, c } => binary_oracle(a, b, c, n),
    }
}

fn power_term(r: u32, k: u32) -> Option<u128> {
    if k == 0 {
        return Some(u128::from(r > 0));
    }
    u128::from(r).checked_pow(k)
}

/// Prefix sums `S_k(x) = sum_{1 <= n <= x} r(n)^k` for every `x` in `1..=x_max`.
///
/// `k = 0` counts the `n` with `r(n) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSums {
    k: u32,
    sums: Vec<u128>,
}

impl PowerSums {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// `S_k(x)` for `1 <= x <= x_max`.
    pub fn at(&self, x: u64) -> Option<BigUint> {
        self.raw(x).map(BigUint::from)
    }

    pub fn raw(&self, x: u64) -> Option<u128> {
        if x == 0 {
            return None;
        }
        self.sums.get(x as usize - 1).copied()
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u128)> + '_ {
        self.sums
            .iter()
            .enumerate()
            .map(|(i, &s)| (i as u64 + 1, s))
    }
}

fn check_power(k: u32) -> Result<()> {
    if k > DEFAULT_MAX_POWER {
        return Err(domain(format!(
            "power {k} exceeds the maximum {DEFAULT_MAX_POWER}"
        )));
    }
    Ok(())
}

pub fn power_partial_sums(table: &RepTable, k: u32) -> Result<PowerSums> {
    check_power(k)?;
    let mut sums = Vec::new();
    sums.try_reserve_exact(table.values.len() - 1)
        .map_err(|_| capacity("cannot allocate partial sums"))?;
    let mut acc: u128 = 0;
    for &r in &table.values[1..] {
        acc = power_term(r, k)
            .and_then(|t| acc.checked_add(t))
            .ok_or_else(|| capacity(format!("S_{k} overflows 128 bits")))?;
        sums.push(acc);
    }
    Ok(PowerSums { k, sums })
}

/// `S_k(x)` at the requested points only, in one streaming pass.
pub fn partial_sums_at(table: &RepTable, k: u32, xs: &[u64]) -> Result<Vec<u128>> {
    check_power(k)?;
    if let Some(&max) = xs.iter().max() {
        table.require(max)?;
    }
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by_key(|&i| xs[i]);
    let mut out = vec![0u128; xs.len()];
    let mut acc: u128 = 0;
    let mut n = 0u64;
    for i in order {
        while n < xs[i] {
            n += 1;
            acc = power_term(table.values[n as usize], k)
                .and_then(|t| acc.checked_add(t))
                .ok_or_else(|| capacity(format!("S_{k} overflows 128 bits")))?;
        }
        out[i] = acc;
    }
    Ok(out)
}

// --- RPT1 on-disk format ---------------------------------------------------
//
// offset size  field
//      0    4  magic "RPT1"
//      4    2  version (u16 LE, currently 1)
//      6    1  descriptor tag: 0 = sum of squares, 1 = binary form
//      7    1  reserved, zero
//      8   24  three i64 LE: (m, 0, 0) or (a, b, c)
//     32    8  x_max (u64 LE)
//     40    8  FNV-1a 64 checksum of the count bytes
//     48    .  (x_max + 1) counts, u32 LE

pub const RPT_MAGIC: &[u8; 4] = b"RPT1";
pub const RPT_VERSION: u16 = 1;
const RPT_HEADER_LEN: usize = 48;

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

impl RepTable {
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let body: Vec<u8> = self.values.iter().flat_map(|v| v.to_le_bytes()).collect();
        let mut header = [0u8; RPT_HEADER_LEN];
        header[..4].copy_from_slice(RPT_MAGIC);
        header[4..6].copy_from_slice(&RPT_VERSION.to_le_bytes());
        let (tag, params) = match self.descriptor {
            FormDescriptor::SumOfSquares { m } => (0u8, [i64::from(m), 0, 0]),
            FormDescriptor::Binary { a, b, c } => (1u8, [a, b, c]),
        };
        header[6] = tag;
        for (i, p) in params.iter().enumerate() {
            header[8 + 8 * i..16 + 8 * i].copy_from_slice(&p.to_le_bytes());
        }
        header[32..40].copy_from_slice(&self.x_max().to_le_bytes());
        header[40..48].copy_from_slice(&fnv1a(&body).to_le_bytes());
        w.write_all(&header)?;
        w.write_all(&body)?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut header = [0u8; RPT_HEADER_LEN];
        r.read_exact(&mut header)
            .map_err(|e| Error::Format(format!("short header: {e}")))?;
        if &header[..4] != RPT_MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = u16::from_le_bytes([header[4], header[5]]);
        if version != RPT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let word = |i: usize| i64::from_le_bytes(header[8 + 8 * i..16 + 8 * i].try_into().unwrap());
        let descriptor = match header[6] {
            0 => {
                let m = u32::try_from(word(0)).map_err(|_| Error::Format("bad m".into()))?;
                FormDescriptor::sum_of_squares(m).map_err(|e| Error::Format(e.to_string()))?
            }
            1 => FormDescriptor::binary(word(0), word(1), word(2))
                .map_err(|e| Error::Format(e.to_string()))?,
            t => return Err(Error::Format(format!("unknown descriptor tag {t}"))),
        };
        let x_max = u64::from_le_bytes(header[32..40].try_into().unwrap());
        let checksum = u64::from_le_bytes(header[40..48].try_into().unwrap());
        if x_max >= MAX_SIEVE_LEN {
            return Err(Error::Format(format!("x_max {x_max} out of range")));
        }
        let mut body = vec![0u8; (x_max as usize + 1) * 4];
        r.read_exact(&mut body)
            .map_err(|e| Error::Format(format!("truncated counts: {e}")))?;
        if fnv1a(&body) != checksum {
            return Err(Error::Format("checksum mismatch".into()));
        }
        let mut trailing = [0u8; 1];
        if r.read(&mut trailing)? != 0 {
            return Err(Error::Format("trailing bytes after counts".into()));
        }
        let values = body
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Self { descriptor, values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_squares_values() {
        let t = sieve_sum_of_squares(2, 30).unwrap();
        assert_eq!(t.get(0), Some(1));
        assert_eq!(t.get(5), Some(8));
        assert_eq!(t.get(25), Some(12));
        assert_eq!(t.get(3), Some(0));
        assert_eq!(&t.values()[1..=10], &[4, 4, 0, 4, 8, 0, 0, 4, 4, 8]);
    }

    #[test]
    fn higher_squares_units() {
        assert_eq!(sieve_sum_of_squares(3, 10).unwrap().get(1), Some(6));
        assert_eq!(sieve_sum_of_squares(4, 10).unwrap().get(1), Some(8));
        assert!(sieve_sum_of_squares(1, 10).is_err());
    }

    #[test]
    fn binary_forms() {
        assert_eq!(sieve_binary_form(1, 1, 1, 10).unwrap().get(1), Some(6));
        let t = sieve_binary_form(1, 0, 2, 10).unwrap();
        assert_eq!((t.get(1), t.get(2), t.get(3)), (Some(2), Some(2), Some(4)));
        assert!(sieve_binary_form(1, 2, 1, 10).is_err());
        assert!(sieve_binary_form(-1, 0, -1, 10).is_err());
        assert_eq!(
            sieve_binary_form(1, 0, 1, 500).unwrap().values(),
            sieve_sum_of_squares(2, 500).unwrap().values()
        );
    }

    #[test]
    fn oracle_values() {
        let two = FormDescriptor::sum_of_squares(2).unwrap();
        assert_eq!(brute_force_rep(&two, 5), 8);
        assert_eq!(brute_force_rep(&two, 0), 1);
        let eis = FormDescriptor::binary(1, 1, 1).unwrap();
        assert_eq!(brute_force_rep(&eis, 7), 12);
        assert_eq!(brute_force_rep(&eis, 0), 1);
    }

    #[test]
    fn interval_edges() {
        assert_eq!(x_interval(1, 0, 1, 0, 0), Some((0, 0)));
        assert_eq!(x_interval(1, 0, 1, 1, 0), None);
        assert_eq!(x_interval(1, 0, 1, 0, -1), None);
        assert_eq!(x_interval(1, 1, 1, 1, 1), Some((-1, 0)));
    }

    #[test]
    fn partial_sums() {
        let t = sieve_sum_of_squares(2, 100).unwrap();
        let s2 = power_partial_sums(&t, 2).unwrap();
        assert_eq!(s2.raw(10), Some(208));
        let s0 = power_partial_sums(&t, 0).unwrap();
        let expected = (1..=100u64).filter(|&n| t.get(n).unwrap() > 0).count() as u128;
        assert_eq!(s0.raw(100), Some(expected));
        assert_eq!(
            partial_sums_at(&t, 2, &[10, 1, 100]).unwrap(),
            vec![208, 16, s2.raw(100).unwrap()]
        );
        assert!(partial_sums_at(&t, 2, &[101]).is_err());
        assert!(power_partial_sums(&t, 9).is_err());
    }

    #[test]
    fn rpt1_roundtrip_and_corruption() {
        let t = sieve_binary_form(1, 1, 2, 1000).unwrap();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        assert_eq!(&buf[..4], b"RPT1");
        assert_eq!(buf.len(), 48 + 4 * 1001);
        assert_eq!(RepTable::read_from(buf.as_slice()).unwrap(), t);

        let mut bad = buf.clone();
        bad[100] ^= 1;
        assert!(matches!(
            RepTable::read_from(bad.as_slice()),
            Err(Error::Format(_))
        ));
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(RepTable::read_from(bad.as_slice()).is_err());
        assert!(RepTable::read_from(&buf[..buf.len() - 1]).is_err());
    }
}
