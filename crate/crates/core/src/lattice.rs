//! Arithmetic lattices from imaginary quadratic fields.
//!
//! For a negative squarefree `D` the norm form is `x^2 + xy + (1-D)/4 y^2`
//! when `D = 1 mod 4` and `x^2 - D y^2` otherwise. Scaling by `S_D` brings the
//! lattice to covolume one; the pointwise energy `E_{D,k}(N)` sums `r_D(n)^k`
//! over `n <= N / S_D^2`, with the cutoff computed exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{domain, Result};
use crate::num::Real;
use crate::repcount::{self, check_positive_definite, RepTable};

/// Positive definite integral binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    a: i64,
    b: i64,
    c: i64,
}

impl BinaryForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        check_positive_definite(a, b, c)?;
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// `b^2 - 4ac`, always negative.
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Gauss-reduced equivalent form: `|b| <= a <= c`, with `b >= 0` when either is tight.
    pub fn reduced(&self) -> Self {
        let (mut a, mut b, mut c) = (self.a, self.b, self.c);
        loop {
            if c < a {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if b > a || b <= -a {
                // translate x -> x + t y to bring b into (-a, a]
                let t = (a - b).div_euclid(2 * a);
                c += b * t + a * t * t;
                b += 2 * a * t;
                continue;
            }
            break;
        }
        if a == c && b < 0 {
            b = -b;
        }
        Self { a, b, c }
    }

    pub fn descriptor(&self) -> repcount::FormDescriptor {
        repcount::FormDescriptor::Binary {
            a: self.a,
            b: self.b,
            c: self.c,
        }
    }

    /// Sieves `r_Q(n)` for `n <= x_max`.
    pub fn sieve(&self, x_max: u64) -> Result<RepTable> {
        repcount::sieve_binary_form(self.a, self.b, self.c, x_max)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn check_field_discriminant(d: i64) -> Result<u64> {
    if d >= 0 {
        return Err(domain(format!("D = {d} must be negative")));
    }
    let abs = d.unsigned_abs();
    if !is_squarefree(abs) {
        return Err(domain(format!("D = {d} is not squarefree")));
    }
    Ok(abs)
}

fn is_one_mod_four(d: i64) -> bool {
    d.rem_euclid(4) == 1
}

/// Norm form of the ring of integers of `Q(sqrt D)`.
pub fn norm_form(d: i64) -> Result<BinaryForm> {
    check_field_discriminant(d)?;
    if is_one_mod_four(d) {
        BinaryForm::new(1, 1, (1 - d) / 4)
    } else {
        BinaryForm::new(1, 0, -d)
    }
}

/// `S_D^2` kept exact: `(2 if doubled else 1) / sqrt(|D|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleSquared {
    pub doubled: bool,
    pub abs_d: u64,
}

impl ScaleSquared {
    fn numerator(&self) -> u64 {
        if self.doubled {
            2
        } else {
            1
        }
    }

    pub fn value<T: Real>(&self) -> T {
        T::lit(self.numerator() as f64 / (self.abs_d as f64).sqrt())
    }

    /// `floor(N / S_D^2)`: the largest `n` with `num * n <= N sqrt|D|`,
    /// i.e. `num^2 n^2 <= N^2 |D|`, decided in integers.
    pub fn cutoff(&self, n: u64) -> u64 {
        let rhs = u128::from(n) * u128::from(n) * u128::from(self.abs_d);
        let root = rhs.sqrt();
        (root / u128::from(self.numerator())) as u64
    }
}

/// A norm-form lattice scaled to covolume one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledLattice {
    pub d: i64,
    pub form: BinaryForm,
    /// `S_D` as a float.
    pub scale: f64,
    pub scale_sq: ScaleSquared,
}

impl ScaledLattice {
    /// `S_D^2 * sqrt|disc(Q_D)| / 2`; equals one.
    pub fn covolume(&self) -> f64 {
        let disc = self.form.discriminant().unsigned_abs() as f64;
        self.scale * self.scale * disc.sqrt() / 2.0
    }
}

pub fn covolume_scale(d: i64) -> Result<ScaledLattice> {
    let abs_d = check_field_discriminant(d)?;
    let form = norm_form(d)?;
    let doubled = is_one_mod_four(d);
    let scale_sq = ScaleSquared { doubled, abs_d };
    let quarter = (abs_d as f64).powf(-0.25);
    let scale = if doubled {
        std::f64::consts::SQRT_2 * quarter
    } else {
        quarter
    };
    Ok(ScaledLattice {
        d,
        form,
        scale,
        scale_sq,
    })
}

/// `E_{D,k}(N)` together with the inputs that determine it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeEnergyReport {
    pub d: i64,
    pub k: u32,
    pub n: u64,
    pub cutoff: u64,
    pub energy: BigUint,
}

/// `E_{D,k}(N) = sum_{n <= N/S_D^2} r_D(n)^k`, from a table for `Q_D`.
/// `k = 0` counts the `n` with `r_D(n) > 0`.
pub fn pointwise_energy(
    lattice: &ScaledLattice,
    k: u32,
    n: u64,
    table: &RepTable,
) -> Result<LatticeEnergyReport> {
    if table.descriptor() != lattice.form.descriptor() {
        return Err(domain(format!(
            "table is for {:?}, lattice needs {}",
            table.descriptor(),
            lattice.form
        )));
    }
    let cutoff = lattice.scale_sq.cutoff(n);
    table.require(cutoff)?;
    let energy = table.values()[1..=cutoff as usize]
        .iter()
        .fold(BigUint::zero(), |acc, &r| {
            if k == 0 {
                acc + u32::from(r > 0)
            } else {
                acc + BigUint::from(r).pow(k)
            }
        });
    Ok(LatticeEnergyReport {
        d: lattice.d,
        k,
        n,
        cutoff,
        energy,
    })
}

/// Sieves `Q_D` up to the cutoff and evaluates `E_{D,k}(N)`.
pub fn pointwise_energy_for(d: i64, k: u32, n: u64) -> Result<LatticeEnergyReport> {
    let lattice = covolume_scale(d)?;
    let table = lattice.form.sieve(lattice.scale_sq.cutoff(n).max(1))?;
    pointwise_energy(&lattice, k, n, &table)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplicative weight in the second-moment constant:
/// `A(p^e) = 2 + (1 - 1/p)(e - 1)` for odd `p`; `A(2^e)` is 1, 2, `e - 1`
/// for `e <= 1`, `e = 2`, `e >= 3`.
fn muller_a(q: u64) -> Ratio<i128> {
    factorize(q)
        .into_iter()
        .map(|(p, e)| {
            let p = i128::from(p);
            let e = i128::from(e);
            if p == 2 {
                Ratio::from_integer(match e {
                    0 | 1 => 1,
                    2 => 2,
                    _ => e - 1,
                })
            } else {
                Ratio::from_integer(2) + Ratio::new(p - 1, p) * (e - 1)
            }
        })
        .fold(Ratio::from_integer(1), |acc, x| acc * x)
}

/// Leading constant `A_Q` of `sum_{n<=x} r_Q(n)^2 ~ A_Q x log x`, exact.
///
/// `q = 4ac - b^2` is the determinant of the Gram matrix `[[2a, b], [b, 2c]]`.
pub fn muller_coefficient(form: &BinaryForm) -> Result<Ratio<i128>> {
    if !form.is_primitive() {
        return Err(domain(format!("form {form} is not primitive")));
    }
    let q = form.discriminant().unsigned_abs();
    let mut value = Ratio::from_integer(12) * muller_a(q) / i128::from(q);
    for (p, _) in factorize(q) {
        let p = i128::from(p);
        value *= Ratio::new(p, p + 1);
    }
    Ok(value)
}

/// A planar lattice given by its squared-length form on coefficient vectors.
///
/// Values must be totally ordered exactly, so repeated lengths are detected
/// without any floating-point tolerance.
pub trait PlanarForm {
    type Value: Ord + Copy + fmt::Debug;

    fn value(&self, x: i64, y: i64) -> Self::Value;

    /// Whether `v <= bound`, decided exactly.
    fn within(&self, v: Self::Value, bound: u64) -> bool;

    /// `(X, Y)` with every vector of value `<= bound` inside `|x| <= X, |y| <= Y`.
    fn extent(&self, bound: u64) -> (i64, i64);
}

impl PlanarForm for BinaryForm {
    type Value = i64;

    fn value(&self, x: i64, y: i64) -> i64 {
        self.eval(x, y)
    }

    fn within(&self, v: i64, bound: u64) -> bool {
        v <= bound as i64
    }

    fn extent(&self, bound: u64) -> (i64, i64) {
        let det = (4 * self.a * self.c - self.b * self.b) as u128;
        let x = (4 * self.c as u128 * u128::from(bound) / det).sqrt() as i64 + 1;
        let y = (4 * self.a as u128 * u128::from(bound) / det).sqrt() as i64 + 1;
        (x, y)
    }
}

/// `u + v sqrt(d)` with integer `u, v` and a fixed non-square `d > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub rational: i64,
    pub irrational: i64,
    pub radicand: u64,
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.radicand, other.radicand);
        // sign of (u1 - u2) + (v1 - v2) sqrt(d)
        let du = i128::from(self.rational) - i128::from(other.rational);
        let dv = i128::from(self.irrational) - i128::from(other.irrational);
        sign_of_surd(du, dv, self.radicand)
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign of `u + v sqrt(d)`, exact.
fn sign_of_surd(u: i128, v: i128, d: u64) -> Ordering {
    match (u.cmp(&0), v.cmp(&0)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => (u * u).cmp(&(v * v * i128::from(d))),
        (Ordering::Less, Ordering::Greater) => (v * v * i128::from(d)).cmp(&(u * u)),
    }
}

/// `a x^2 + sqrt(d) y^2` with `d` not a perfect square; a non-arithmetic lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurdForm {
    a: i64,
    radicand: u64,
}

impl SurdForm {
    pub fn new(a: i64, radicand: u64) -> Result<Self> {
        if a <= 0 {
            return Err(domain("leading coefficient must be positive"));
        }
        let r = radicand.sqrt();
        if r * r == radicand {
            return Err(domain(format!("{radicand} is a perfect square")));
        }
        Ok(Self { a, radicand })
    }
}

impl PlanarForm for SurdForm {
    type Value = QuadraticSurd;

    fn value(&self, x: i64, y: i64) -> QuadraticSurd {
        QuadraticSurd {
            rational: self.a * x * x,
            irrational: y * y,
            radicand: self.radicand,
        }
    }

    fn within(&self, v: QuadraticSurd, bound: u64) -> bool {
        sign_of_surd(
            i128::from(bound) - i128::from(v.rational),
            -i128::from(v.irrational),
            self.radicand,
        ) != Ordering::Less
    }

    fn extent(&self, bound: u64) -> (i64, i64) {
        let x = (bound / self.a as u64).sqrt() as i64 + 1;
        // y^2 sqrt(d) <= bound  <=>  d y^4 <= bound^2
        let mut y = 0i64;
        while u128::from(self.radicand) * (y as u128 + 1).pow(4) <= u128::from(bound).pow(2) {
            y += 1;
        }
        (x, y + 1)
    }
}

/// Representative of the line through `(x, y)`, in the half-plane `x > 0` or `x = 0, y > 0`.
fn direction(x: i64, y: i64) -> (i64, i64) {
    if x > 0 || (x == 0 && y > 0) {
        (x, y)
    } else {
        (-x, -y)
    }
}

/// Orders directions by angle, measured from `(1, 0)` within `[0, pi)` .
fn angle_key(v: (i64, i64)) -> (u8, Ratio<i128>) {
    let (x, y) = v;
    // half-plane rep has x > 0 or (x == 0, y > 0); map to [0, pi)
    let (x, y) = if y < 0 { (-x, -y) } else { (x, y) };
    if y == 0 {
        (0, Ratio::from_integer(0))
    } else if x > 0 {
        (1, Ratio::new(i128::from(y), i128::from(x)))
    } else if x == 0 {
        (2, Ratio::from_integer(0))
    } else {
        (3, Ratio::new(i128::from(-x), i128::from(y)))
    }
}

/// Grouped representing vectors `value -> pairwise independent directions`,
/// for every value in `(0, bound]`, ascending.
fn level_directions<F: PlanarForm>(form: &F, bound: u64) -> BTreeMap<F::Value, Vec<(i64, i64)>> {
    let (xm, ym) = form.extent(bound);
    let mut levels: BTreeMap<F::Value, Vec<(i64, i64)>> = BTreeMap::new();
    for y in -ym..=ym {
        for x in -xm..=xm {
            if x == 0 && y == 0 {
                continue;
            }
            let v = form.value(x, y);
            if form.within(v, bound) {
                levels.entry(v).or_default().push(direction(x, y));
            }
        }
    }
    for dirs in levels.values_mut() {
        dirs.sort_by_key(|&d| angle_key(d));
        dirs.dedup();
    }
    levels
}

/// Smallest length carrying three pairwise linearly independent lattice vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuhnleinWitness<V> {
    pub value: V,
    pub vectors: [(i64, i64); 3],
}

/// Searches values up to `n_max` for three pairwise independent vectors of equal length.
pub fn kuhnlein_witness<F: PlanarForm>(form: &F, n_max: u64) -> Option<KuhnleinWitness<F::Value>> {
    level_directions(form, n_max)
        .into_iter()
        .find(|(_, dirs)| dirs.len() >= 3)
        .map(|(value, dirs)| KuhnleinWitness {
            value,
            vectors: [dirs[0], dirs[1], dirs[2]],
        })
}

/// Largest number of pairwise independent vectors sharing one length `<= n_max`.
pub fn max_independent_directions<F: PlanarForm>(form: &F, n_max: u64) -> usize {
    if n_max == 0 {
        return 0;
    }
    level_directions(form, n_max)
        .values()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

/// Outcome of one pairwise comparison demanded by the maximality theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaximalityCheck {
    pub d: i64,
    /// `-3` for `D = 1 mod 4`, else `-1`.
    pub reference: i64,
    /// `E_{D,k}(N) < E_{reference,k}(N)`.
    pub holds: bool,
}

/// Energies of several lattices at one `N`, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeRanking {
    pub k: u32,
    pub n: u64,
    pub entries: Vec<LatticeEnergyReport>,
    pub checks: Vec<MaximalityCheck>,
    /// `Some(true)` when `D = -3` is in the list and strictly largest.
    pub hexagonal_strict_max: Option<bool>,
    /// The theorem covers `k = 2`; other `k` are reported, not claimed.
    pub asserted: bool,
}

impl LatticeRanking {
    pub fn order(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.d).collect()
    }

    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.hexagonal_strict_max != Some(false)
    }
}

pub fn compare_lattices(ds: &[i64], k: u32, n: u64) -> Result<LatticeRanking> {
    let mut entries = Vec::with_capacity(ds.len());
    for &d in ds {
        entries.push(pointwise_energy_for(d, k, n)?);
    }
    let energy_of = |d: i64| entries.iter().find(|e| e.d == d).map(|e| e.energy.clone());
    let mut checks = Vec::new();
    for e in &entries {
        let reference = if is_one_mod_four(e.d) { -3 } else { -1 };
        if e.d == reference {
            continue;
        }
        if let Some(ref_energy) = energy_of(reference) {
            checks.push(MaximalityCheck {
                d: e.d,
                reference,
                holds: e.energy < ref_energy,
            });
        }
    }
    let hexagonal_strict_max =
        energy_of(-3).map(|hex| entries.iter().filter(|e| e.d != -3).all(|e| e.energy < hex));
    entries.sort_by(|x, y| y.energy.cmp(&x.energy).then(x.d.cmp(&y.d)));
    Ok(LatticeRanking {
        k,
        n,
        entries,
        checks,
        hexagonal_strict_max,
        asserted: k == 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_forms() {
        assert_eq!(norm_form(-3).unwrap(), BinaryForm::new(1, 1, 1).unwrap());
        assert_eq!(norm_form(-1).unwrap(), BinaryForm::new(1, 0, 1).unwrap());
        let f = norm_form(-7).unwrap();
        assert_eq!((f.a(), f.b(), f.c()), (1, 1, 2));
        assert_eq!(f.discriminant(), -7);
        assert_eq!(norm_form(-2).unwrap().discriminant(), -8);
        assert!(norm_form(3).is_err());
        assert!(norm_form(-4).is_err());
        assert!(norm_form(-12).is_err());
        assert!(norm_form(0).is_err());
    }

    #[test]
    fn scales() {
        let l = covolume_scale(-1).unwrap();
        assert!((l.scale - 1.0).abs() < 1e-15);
        let l = covolume_scale(-3).unwrap();
        assert!((l.scale * l.scale - 2.0 / 3f64.sqrt()).abs() < 1e-14);
        let l = covolume_scale(-7).unwrap();
        assert!((l.scale * l.scale - 2.0 / 7f64.sqrt()).abs() < 1e-14);
        for d in [-1, -2, -3, -5, -6, -7, -10, -11, -15, -19, -23, -163] {
            assert!(
                (covolume_scale(d).unwrap().covolume() - 1.0).abs() < 1e-12,
                "{d}"
            );
        }
    }

    #[test]
    fn exact_cutoffs() {
        let s = covolume_scale(-1).unwrap().scale_sq;
        assert_eq!(s.cutoff(5), 5);
        // N sqrt(3) / 2 for N = 10^6 is 866025.40...
        assert_eq!(
            covolume_scale(-3).unwrap().scale_sq.cutoff(1_000_000),
            866_025
        );
        // sqrt(2) * 10^6 = 1414213.56...
        assert_eq!(
            covolume_scale(-2).unwrap().scale_sq.cutoff(1_000_000),
            1_414_213
        );
    }

    #[test]
    fn pointwise_energy_small() {
        let r = pointwise_energy_for(-1, 0, 5).unwrap();
        assert_eq!(r.cutoff, 5);
        assert_eq!(r.energy, BigUint::from(4u32));
        let lattice = covolume_scale(-1).unwrap();
        let short = lattice.form.sieve(3).unwrap();
        assert!(matches!(
            pointwise_energy(&lattice, 2, 5, &short),
            Err(crate::Error::TableTooShort {
                needed: 5,
                available: 3
            })
        ));
        let wrong = norm_form(-3).unwrap().sieve(10).unwrap();
        assert!(pointwise_energy(&lattice, 2, 5, &wrong).is_err());
    }

    #[test]
    fn muller_values() {
        assert_eq!(
            muller_coefficient(&norm_form(-1).unwrap()).unwrap(),
            Ratio::from_integer(4)
        );
        assert_eq!(
            muller_coefficient(&norm_form(-3).unwrap()).unwrap(),
            Ratio::from_integer(6)
        );
        assert_eq!(muller_a(1), Ratio::from_integer(1));
        assert_eq!(muller_a(4), Ratio::from_integer(2));
        assert_eq!(muller_a(16), Ratio::from_integer(3));
        assert_eq!(muller_a(9), Ratio::new(8, 3));
        assert!(muller_coefficient(&BinaryForm::new(2, 0, 2).unwrap()).is_err());
    }

    #[test]
    fn witnesses() {
        // 5 = (2,1) = (1,2) = (1,-2) = (2,-1) up to sign, four directions
        let w = kuhnlein_witness(&norm_form(-1).unwrap(), 25).unwrap();
        assert_eq!(w.value, 5);
        assert_eq!(w.vectors, [(2, 1), (1, 2), (1, -2)]);
        assert!(kuhnlein_witness(&norm_form(-1).unwrap(), 4).is_none());
        let at_25 = level_directions(&norm_form(-1).unwrap(), 25);
        assert_eq!(&at_25[&25][..3], &[(5, 0), (4, 3), (3, 4)]);

        let w = kuhnlein_witness(&norm_form(-3).unwrap(), 1).unwrap();
        assert_eq!(w.value, 1);
        let mut got = w.vectors.map(|(x, y)| direction(x, y));
        got.sort();
        let mut want = [(1, 0), (0, 1), (1, -1)].map(|(x, y)| direction(x, y));
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn surd_form_has_no_witness() {
        let f = SurdForm::new(1, 2).unwrap();
        assert!(kuhnlein_witness(&f, 2000).is_none());
        assert_eq!(max_independent_directions(&f, 2000), 2);
        assert_eq!(max_independent_directions(&f, 0), 0);
        assert!(SurdForm::new(1, 4).is_err());
    }

    #[test]
    fn surd_ordering_is_exact() {
        let v = |u, w| QuadraticSurd {
            rational: u,
            irrational: w,
            radicand: 2,
        };
        assert!(v(2, 0) > v(0, 1)); // 2 > 1.414
        assert!(v(1, 1) < v(3, 0)); // 2.414 < 3
        assert!(v(0, 7) > v(9, 0)); // 9.899 > 9
        assert!(v(0, 7) < v(10, 0));
        let f = SurdForm::new(1, 2).unwrap();
        assert!(f.within(v(0, 7), 10));
        assert!(!f.within(v(0, 7), 9));
    }

    #[test]
    fn reduction() {
        let f = BinaryForm::new(3, 8, 6).unwrap().reduced();
        assert_eq!(f.discriminant(), 64 - 72);
        assert!(f.b().abs() <= f.a() && f.a() <= f.c());
        assert_eq!(
            BinaryForm::new(1, 1, 1).unwrap().reduced(),
            BinaryForm::new(1, 1, 1).unwrap()
        );
        assert_eq!(
            BinaryForm::new(2, -2, 1).unwrap().reduced(),
            BinaryForm::new(1, 0, 1).unwrap()
        );
    }

    #[test]
    fn ranking_small() {
        let r = compare_lattices(&[-3], 3, 1000).unwrap();
        assert_eq!(r.order(), vec![-3]);
        assert!(r.checks.is_empty());
        assert_eq!(r.hexagonal_strict_max, Some(true));
        assert!(!r.asserted);
    }
}
