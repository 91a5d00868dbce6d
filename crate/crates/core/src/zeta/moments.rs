//! Higher moments `Z_{Q,k}(s) = sum_n r_Q(n)^k n^-s` and the numerical
//! probes built on them.

use crate::error::{domain, Result};
use crate::lattice::BinaryForm;
use crate::num::{NeumaierSum, Real};
use crate::repcount::RepTable;

use super::epstein::{epstein_chowla_selberg, epstein_direct_from_table, form_of_table};
use super::special::{eta_beta, riemann_zeta};
use super::{EpsteinEvaluation, Method, SpecialFunctionConfig};

/// Safety factor applied to the tail envelope.
const TAIL_SAFETY: f64 = 4.0;

/// Power of `log x` in the mean of `r(n)^k`: `2^(k-1) - 1`.
fn log_power(k: u32) -> u32 {
    (1u32 << (k - 1)) - 1
}

/// `Gamma(p + 1, z) = p! e^-z sum_{j<=p} z^j / j!` for integer `p`.
fn upper_incomplete_gamma_int<T: Real>(p: u32, z: T) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    let mut factorial = T::one();
    for j in 1..=p {
        let jt = T::from_int(i64::from(j));
        term = term * z / jt;
        sum = sum + term;
        factorial = factorial * jt;
    }
    factorial * (-z).exp() * sum
}

/// Truncated `Z_{Q,k}(s)` over the whole table, plus a tail estimate.
///
/// `k = 1` uses the smoothed sum of [`epstein_direct_from_table`]. For
/// `k >= 2` the mean of `r(n)^k` near `X = x_max` is modelled as
/// `rho (log x / log X)^p` with `rho = S_k(X) / X` and `p = 2^(k-1) - 1`;
/// integrating that against `x^-s` beyond `X` gives the tail added to the
/// value. The error estimate is four times that tail plus rounding.
pub fn higher_moment_truncated<T: Real>(
    table: &RepTable,
    k: u32,
    s: T,
) -> Result<EpsteinEvaluation<T>> {
    if k == 0 {
        return Err(domain("moment order must be at least 1"));
    }
    if !(s > T::one()) {
        return Err(domain(format!("Z_(Q,k)(s) diverges for s <= 1, got {s}")));
    }
    if k == 1 {
        return epstein_direct_from_table(table, s);
    }
    let form = form_of_table(table)?;
    if table.x_max() < 2 {
        return Err(domain("table too short for a tail estimate"));
    }
    let kk = k as i32;
    let mut sum = NeumaierSum::new();
    let mut count = NeumaierSum::new();
    for (n, &r) in table.values().iter().enumerate().skip(1) {
        if r == 0 {
            continue;
        }
        let rk = T::from_int(i64::from(r)).powi(kk);
        count.add(rk);
        sum.add(rk * T::from_int(n as i64).powf(-s));
    }
    let x = T::from_int(table.x_max() as i64);
    let ln_x = x.ln();
    let p = log_power(k);
    let rho = count.value() / x;
    let excess = s - T::one();
    let tail = rho * ln_x.powi(-(p as i32)) * upper_incomplete_gamma_int(p, excess * ln_x)
        / excess.powi(p as i32 + 1);
    let value = sum.value() + tail;
    let rounding = T::lit(64.0) * T::epsilon() * sum.abs_mass();
    Ok(EpsteinEvaluation {
        form,
        s,
        k,
        value,
        method: Method::Direct,
        error_estimate: T::lit(TAIL_SAFETY) * tail + rounding,
    })
}

/// The factor `phi(s)` left over after dividing `Z_{Q_-1,k}(s)` by
/// `4^k (1 - 2^-s)^(2^(k-1) - 1) (zeta(s) eta(s))^(2^(k-1))`.
///
/// `phi = 1` for `k = 1`; for larger `k` it is a convergent Euler product
/// whose value is only observable this way.
pub fn wilson_structure_check<T: Real>(k: u32, s: T, table: &RepTable) -> Result<T> {
    let form = form_of_table(table)?;
    if form != BinaryForm::new(1, 0, 1)? {
        return Err(domain(format!(
            "the structure check needs the sum of two squares, got {form}"
        )));
    }
    let z = higher_moment_truncated(table, k, s)?;
    let half_power = 1i32 << (k - 1);
    let denom = T::lit(4.0).powi(k as i32)
        * (T::one() - T::lit(2.0).powf(-s)).powi(half_power - 1)
        * (riemann_zeta(s)? * eta_beta(s)?).powi(half_power);
    Ok(z.value / denom)
}

/// One cell of a conjecture probe: a form at covolume one against the hexagonal form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeRow<T> {
    pub form: BinaryForm,
    pub s: T,
    pub k: u32,
    /// `Z_{tQ,k}(s)` with `t = 2 / sqrt|disc|`, so `tQ` has covolume one.
    pub value: T,
    pub method: Method,
    pub error_estimate: T,
    pub hexagonal_value: T,
    /// `value - hexagonal_value`.
    pub difference: T,
    /// Whether the sign is a claim (`k = 1`) or merely reported.
    pub asserted: bool,
    /// `Some(difference > 0)` for non-hexagonal forms, `None` for forms similar to the hexagonal one.
    pub exceeds_hexagonal: Option<bool>,
}

fn is_hexagonal(form: &BinaryForm) -> bool {
    let r = form.reduced();
    r.a() == r.b() && r.b() == r.c()
}

/// Evaluates `Z_{Q,k}` at covolume one for each form and `s`, and compares with
/// the hexagonal form `x^2 + xy + y^2`.
///
/// For `k = 1` and `s > 1` the smoothed direct sum over a table of length
/// `cutoff` is used; below one the Chowla-Selberg continuation. For `k >= 2`
/// only `s > 1` is meaningful and the truncated moment is used. Rows come out
/// grouped by `s`, forms in input order.
pub fn conjecture_probe<T: Real>(
    forms: &[BinaryForm],
    k: u32,
    s_grid: &[T],
    cutoff: u64,
    config: &SpecialFunctionConfig<T>,
) -> Result<Vec<ProbeRow<T>>> {
    if k == 0 {
        return Err(domain("moment order must be at least 1"));
    }
    for &s in s_grid {
        if k >= 2 && !(s > T::one()) {
            return Err(domain(format!("moments with k >= 2 need s > 1, got {s}")));
        }
    }
    let hex = BinaryForm::new(1, 1, 1)?;
    let needs_table = s_grid.iter().any(|&s| s > T::one());
    let tables: Vec<Option<RepTable>> = std::iter::once(&hex)
        .chain(forms)
        .map(|f| needs_table.then(|| f.sieve(cutoff)).transpose())
        .collect::<Result<_>>()?;

    let evaluate =
        |form: &BinaryForm, table: &Option<RepTable>, s: T| -> Result<EpsteinEvaluation<T>> {
            let scale = T::lit(2.0) / T::from_int(form.discriminant()).abs().sqrt();
            let mut eval = match table {
                Some(t) if s > T::one() => higher_moment_truncated(t, k, s)?,
                _ => epstein_chowla_selberg(form, s, config)?,
            };
            let factor = scale.powf(-s);
            eval.value = eval.value * factor;
            eval.error_estimate = eval.error_estimate * factor;
            Ok(eval)
        };

    let mut rows = Vec::with_capacity(forms.len() * s_grid.len());
    for &s in s_grid {
        let hex_eval = evaluate(&hex, &tables[0], s)?;
        for (form, table) in forms.iter().zip(&tables[1..]) {
            let eval = evaluate(form, table, s)?;
            let difference = eval.value - hex_eval.value;
            rows.push(ProbeRow {
                form: *form,
                s,
                k,
                value: eval.value,
                method: eval.method,
                error_estimate: eval.error_estimate,
                hexagonal_value: hex_eval.value,
                difference,
                asserted: k == 1,
                exceeds_hexagonal: (!is_hexagonal(form)).then_some(difference > T::zero()),
            });
        }
    }
    Ok(rows)
}
