use crate::error::{domain, Error, Result};
use crate::lattice::BinaryForm;
use crate::num::{NeumaierSum, Real};
use crate::repcount::{FormDescriptor, RepTable};

use super::special::{bessel_k, gamma_fn, riemann_zeta};
use super::{EpsteinEvaluation, Method, SpecialFunctionConfig};

/// Radius of the excluded neighbourhoods around `s = 1` and `s = 1/2`.
pub const EXCLUDED_RADIUS: f64 = 1e-6;

/// Smallest `s - 1` accepted by the direct sum.
const DIRECT_MIN_EXCESS: f64 = 1e-3;

/// Order of the Gauss-Legendre rule for the smoothed tail integral.
const QUADRATURE_NODES: usize = 48;

/// Binary form counted by a two-variable table.
pub fn form_of_table(table: &RepTable) -> Result<BinaryForm> {
    match table.descriptor() {
        FormDescriptor::SumOfSquares { m: 2 } => BinaryForm::new(1, 0, 1),
        FormDescriptor::Binary { a, b, c } => BinaryForm::new(a, b, c),
        FormDescriptor::SumOfSquares { m } => Err(domain(format!(
            "Epstein sums need a binary form, table counts sums of {m} squares"
        ))),
    }
}

/// `2 pi / sqrt|disc|`: the number of lattice vectors with `Q <= x` grows like this times `x`.
pub(crate) fn lattice_density<T: Real>(form: &BinaryForm) -> T {
    let disc = T::from_int(form.discriminant()).abs();
    T::lit(2.0) * T::PI() / disc.sqrt()
}

/// Smoothstep of class `C^8` on `[0, 1]`: `sum_{j=9}^{17} C(17, j) t^j (1-t)^(17-j)`.
fn smoothstep<T: Real>(t: T) -> T {
    if t <= T::zero() {
        return T::zero();
    }
    if t >= T::one() {
        return T::one();
    }
    let u = T::one() - t;
    let mut binom = 24_310.0; // C(17, 9)
    let mut acc = T::zero();
    for j in 9..=17 {
        acc = acc + T::lit(binom) * t.powi(j) * u.powi(17 - j);
        binom = binom * f64::from(17 - j) / f64::from(j + 1);
    }
    acc
}

/// Weight applied to `n` in the smoothed sum: one up to `x0`, zero from `2 x0`.
fn window<T: Real>(n: T, x0: T) -> T {
    let u = n / x0;
    if u <= T::one() {
        T::one()
    } else {
        T::one() - smoothstep(u - T::one())
    }
}

/// Nodes and weights of the Gauss-Legendre rule on `[-1, 1]`.
fn gauss_legendre<T: Real>(n: usize) -> Vec<(T, T)> {
    let nt = T::from_int(n as i64);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let guess = (T::PI() * (T::from_int(i as i64) + T::lit(0.75)) / (nt + T::lit(0.5))).cos();
        let mut x = guess;
        let mut deriv = T::one();
        for _ in 0..100 {
            let (mut p0, mut p1) = (T::one(), x);
            for j in 2..=n {
                let jt = T::from_int(j as i64);
                let p2 = ((T::lit(2.0) * jt - T::one()) * x * p1 - (jt - T::one()) * p0) / jt;
                p0 = p1;
                p1 = p2;
            }
            deriv = nt * (x * p1 - p0) / (x * x - T::one());
            let dx = p1 / deriv;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::lit(4.0) {
                break;
            }
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * deriv * deriv);
        out.push((x, w));
    }
    out
}

/// `int_1^inf t^-s (1 - w(t)) dt` for the window above, `s > 1`.
fn smoothed_tail_integral<T: Real>(s: T) -> T {
    let half = T::lit(0.5);
    let mut ramp = NeumaierSum::new();
    for (x, w) in gauss_legendre::<T>(QUADRATURE_NODES) {
        let t = T::lit(1.5) + half * x;
        ramp.add(half * w * t.powf(-s) * smoothstep(t - T::one()));
    }
    ramp.value() + T::lit(2.0).powf(T::one() - s) / (s - T::one())
}

/// Smoothed Dirichlet sum at window `x0` together with its absolute mass.
fn smoothed_sum<T: Real>(table: &RepTable, density: T, s: T, x0: T) -> (T, T) {
    let last = (T::lit(2.0) * x0)
        .floor()
        .to_u64()
        .unwrap_or(0)
        .min(table.x_max());
    let mut acc = NeumaierSum::new();
    for (n, &r) in table
        .values()
        .iter()
        .enumerate()
        .take(last as usize + 1)
        .skip(1)
    {
        if r == 0 {
            continue;
        }
        let nt = T::from_int(n as i64);
        acc.add(T::from_int(i64::from(r)) * nt.powf(-s) * window(nt, x0));
    }
    acc.add(density * x0.powf(T::one() - s) * smoothed_tail_integral(s));
    (acc.value(), acc.abs_mass())
}

/// `Z_Q(s)` from a sieved table.
///
/// A sharp partial sum converges like `x^(1-s)`, far too slowly near `s = 1`.
/// Instead the terms are damped by a `C^8` window that is one up to
/// `x0 = x_max / 2` and zero from `x_max`, and the missing mass is replaced by
/// its smooth main term `(2 pi / sqrt|D|) x0^(1-s) J(s)`. The lattice-point
/// remainder then only enters through the window's high Fourier modes. The
/// error estimate is four times the change from window `x0 / 2` to `x0`, plus
/// a rounding allowance.
pub fn epstein_direct_from_table<T: Real>(table: &RepTable, s: T) -> Result<EpsteinEvaluation<T>> {
    let form = form_of_table(table)?;
    if !(s >= T::one() + T::lit(DIRECT_MIN_EXCESS)) {
        return Err(domain(format!(
            "the lattice sum diverges for s <= 1 (need s >= 1.001, got {s})"
        )));
    }
    if table.x_max() < 2 {
        return Err(Error::TableTooShort {
            needed: 2,
            available: table.x_max(),
        });
    }
    let density = lattice_density::<T>(&form);
    let x0 = T::from_int(table.x_max() as i64) * T::lit(0.5);
    let (value, mass) = smoothed_sum(table, density, s, x0);
    let (coarse, _) = smoothed_sum(table, density, s, x0 * T::lit(0.5));
    let rounding = T::lit(64.0) * T::epsilon() * mass;
    Ok(EpsteinEvaluation {
        form,
        s,
        k: 1,
        value,
        method: Method::Direct,
        error_estimate: T::lit(4.0) * (value - coarse).abs() + rounding,
    })
}

/// Sieves `F` up to `cutoff` and evaluates [`epstein_direct_from_table`].
pub fn epstein_direct<T: Real>(
    form: &BinaryForm,
    s: T,
    cutoff: u64,
) -> Result<EpsteinEvaluation<T>> {
    let table = form.sieve(cutoff)?;
    epstein_direct_from_table(&table, s)
}

/// `sigma_t(n) = sum_{d | n} d^t`.
fn divisor_power_sum<T: Real>(n: u64, t: T) -> T {
    let mut acc = T::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc = acc + T::from_int(d as i64).powf(t);
            let e = n / d;
            if e != d {
                acc = acc + T::from_int(e as i64).powf(t);
            }
        }
        d += 1;
    }
    acc
}

/// Chowla-Selberg expansion evaluated as written, for any `s > 0` off `1/2`
/// and `1`, returning `(value, error estimate)`.
///
/// For the reduced form `(a, b, c)` with `l = sqrt|D| / (2a)`:
///
/// ```text
/// Z(s) = 2 a^-s zeta(2s)
///      + 2 a^-s sqrt(pi) Gamma(s - 1/2) / Gamma(s) zeta(2s - 1) l^(1 - 2s)
///      + 8 a^-s pi^s l^(1/2 - s) / Gamma(s)
///          * sum_{N >= 1} N^(s - 1/2) sigma_{1-2s}(N) K_{s-1/2}(2 pi N l) cos(pi N b / a)
/// ```
///
/// Each sum over a full line `m in Z` contributes twice the half-line terms,
/// hence the leading factors 2 and 8.
pub fn chowla_selberg_raw<T: Real>(
    form: &BinaryForm,
    s: T,
    config: &SpecialFunctionConfig<T>,
) -> Result<(T, T)> {
    config.validate()?;
    check_excluded(s)?;
    let red = form.reduced();
    let a = T::from_int(red.a());
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let pi = T::PI();
    let l = T::from_int(red.discriminant()).abs().sqrt() / (two * a);
    let a_pow = a.powf(-s);

    let gamma_s = gamma_fn(s)?;
    let t1 = two * a_pow * riemann_zeta(two * s)?;
    let t2 = two * a_pow * pi.sqrt() * gamma_fn(s - half)? / gamma_s
        * riemann_zeta(two * s - T::one())?
        * l.powf(T::one() - two * s);

    let prefactor = T::lit(8.0) * a_pow * pi.powf(s) * l.powf(half - s) / gamma_s;
    let nu = s - half;
    let mut series = NeumaierSum::new();
    let mut tail = T::infinity();
    let two_a = 2 * red.a();
    for n in 1..=config.bessel_term_cap as u64 {
        let nt = T::from_int(n as i64);
        let magnitude = prefactor
            * nt.powf(nu)
            * divisor_power_sum(n, T::one() - two * s)
            * bessel_k(nu, two * pi * nt * l)?;
        // cos(pi n b / a) with the angle reduced exactly mod 2 pi
        let r = (n as i64 * red.b()).rem_euclid(two_a);
        let phase = (pi * T::from_int(r) / a).cos();
        series.add(magnitude * phase);
        // later terms shrink at least by exp(-2 pi l) <= exp(-5.4) each
        if n >= 2 && magnitude.abs() < config.target_abs_tolerance * T::lit(1e-3) {
            tail = magnitude.abs();
            break;
        }
    }
    if !tail.is_finite() {
        return Err(domain(format!(
            "Bessel series did not reach tolerance within {} terms",
            config.bessel_term_cap
        )));
    }
    let value = t1 + t2 + series.value();
    let mass = t1.abs() + t2.abs() + series.abs_mass();
    Ok((value, tail + T::lit(64.0) * T::epsilon() * mass))
}

fn check_excluded<T: Real>(s: T) -> Result<()> {
    if !(s > T::zero()) || !s.is_finite() {
        return Err(domain(format!(
            "Chowla-Selberg evaluation needs s > 0, got {s}"
        )));
    }
    let radius = T::lit(EXCLUDED_RADIUS);
    if (s - T::one()).abs() < radius {
        return Err(Error::Pole(format!(
            "s = {s} is within {EXCLUDED_RADIUS} of the pole at 1"
        )));
    }
    if (s - T::lit(0.5)).abs() < radius {
        return Err(Error::Pole(format!(
            "s = {s} is within {EXCLUDED_RADIUS} of the cancelling singularities at 1/2"
        )));
    }
    Ok(())
}

/// `(sqrt|D| / 2 pi)^s Gamma(s)`, the completing factor of `Lambda(s)`.
fn completion<T: Real>(form: &BinaryForm, s: T) -> Result<T> {
    let root = T::from_int(form.discriminant()).abs().sqrt();
    Ok((root / (T::lit(2.0) * T::PI())).powf(s) * gamma_fn(s)?)
}

/// `Z_Q(s)` for `s > 0` off the excluded neighbourhoods. Uses the expansion
/// directly for `s > 1/2` and the functional equation from `1 - s` below.
pub fn epstein_chowla_selberg<T: Real>(
    form: &BinaryForm,
    s: T,
    config: &SpecialFunctionConfig<T>,
) -> Result<EpsteinEvaluation<T>> {
    check_excluded(s)?;
    let (value, error_estimate, method) = if s > T::lit(0.5) {
        let (v, e) = chowla_selberg_raw(form, s, config)?;
        (v, e, Method::ChowlaSelberg)
    } else {
        let reflected = T::one() - s;
        let (v, e) = chowla_selberg_raw(form, reflected, config)?;
        let factor = completion(form, reflected)? / completion(form, s)?;
        (factor * v, factor.abs() * e, Method::FunctionalEquation)
    };
    Ok(EpsteinEvaluation {
        form: *form,
        s,
        k: 1,
        value,
        method,
        error_estimate,
    })
}

/// `|Lambda(s) - Lambda(1 - s)|` with both sides from the raw expansion.
///
/// Exactly zero at `s = 1/2`, where the two sides coincide.
pub fn functional_eq_residual<T: Real>(
    form: &BinaryForm,
    s: T,
    config: &SpecialFunctionConfig<T>,
) -> Result<T> {
    if !(s > T::zero() && s < T::one()) {
        return Err(domain(format!("residual needs 0 < s < 1, got {s}")));
    }
    if s == T::lit(0.5) {
        return Ok(T::zero());
    }
    let lambda = |t: T| -> Result<T> {
        let (z, _) = chowla_selberg_raw(form, t, config)?;
        Ok(completion(form, t)? * z)
    };
    Ok((lambda(s)? - lambda(T::one() - s)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::norm_form;
    use crate::zeta::special::eta_beta;

    #[test]
    fn smoothstep_shape() {
        assert_eq!(smoothstep(0.0f64), 0.0);
        assert_eq!(smoothstep(1.0f64), 1.0);
        assert!((smoothstep(0.5f64) - 0.5).abs() < 1e-15);
        assert!((smoothstep(0.3f64) + smoothstep(0.7f64) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn quadrature_integrates_polynomials() {
        let rule = gauss_legendre::<f64>(QUADRATURE_NODES);
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
        let x6: f64 = rule.iter().map(|&(x, w)| w * x.powi(6)).sum();
        assert!((x6 - 2.0 / 7.0).abs() < 1e-14);
    }

    #[test]
    fn gaussian_form_closed_form() {
        let q = norm_form(-1).unwrap();
        let cfg = SpecialFunctionConfig::default();
        for s in [1.5f64, 2.0, 3.0] {
            let exact = 4.0 * riemann_zeta(s).unwrap() * eta_beta(s).unwrap();
            let cs = epstein_chowla_selberg(&q, s, &cfg).unwrap();
            assert!(
                (cs.value - exact).abs() < 1e-12,
                "{s}: {} vs {exact}",
                cs.value
            );
            let direct = epstein_direct::<f64>(&q, s, 20_000).unwrap();
            assert!(
                (direct.value - exact).abs() < 1e-9,
                "{s}: {} vs {exact}",
                direct.value
            );
        }
    }

    #[test]
    fn exclusions() {
        let q = norm_form(-3).unwrap();
        let cfg = SpecialFunctionConfig::default();
        assert!(matches!(
            epstein_chowla_selberg(&q, 1.0 + 1e-7, &cfg),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            epstein_chowla_selberg(&q, 0.5 - 1e-7, &cfg),
            Err(Error::Pole(_))
        ));
        assert!(epstein_chowla_selberg(&q, 0.0f64, &cfg).is_err());
        assert!(matches!(
            epstein_direct::<f64>(&q, 1.0, 100),
            Err(Error::Domain(_))
        ));
        assert_eq!(functional_eq_residual(&q, 0.5, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(divisor_power_sum(12, 1.0f64), 28.0);
        assert_eq!(divisor_power_sum(9, 0.0f64), 3.0);
    }
}
