//! One function per subcommand, each turning a validated request into a table.

use std::path::Path;

use distance_energy::analysis::{
    fit_log_poly, grid_energy_ratio_scan, optimality_product, power_sum_samples,
};
use distance_energy::geometry::{distance_histogram, energy_report, grid_difference_histogram};
use distance_energy::lattice::compare_lattices;
use distance_energy::repcount::partial_sums_at;
use distance_energy::zeta::{
    conjecture_probe, epstein_chowla_selberg, epstein_direct_from_table, higher_moment_truncated,
};
use distance_energy::{BinaryForm, EpsteinEvaluation, SpecialFunctionConfig};

use crate::cache::sieve_cached;
use crate::config::{Command, EnergySource, MethodArg, RunConfig, ScanKind};
use crate::error::CliError;
use crate::input::FormSpec;
use crate::output::{Cell, Table};

pub const ENERGY_COLUMNS: &[&str] = &["N", "k", "E_k", "d", "holder_bound"];
pub const SUMS_COLUMNS: &[&str] = &["form", "k", "x", "S_k"];
pub const FIT_COLUMNS: &[&str] = &[
    "form",
    "k",
    "degree",
    "power",
    "coefficient",
    "residual",
    "condition",
    "x_min",
    "x_max",
];
pub const ZETA_COLUMNS: &[&str] = &["a", "b", "c", "s", "k", "method", "value", "error_estimate"];
pub const LATTICE_COLUMNS: &[&str] = &[
    "rank",
    "D",
    "k",
    "N",
    "cutoff",
    "E_k",
    "reference",
    "below_reference",
];
pub const PROBE_COLUMNS: &[&str] = &[
    "a",
    "b",
    "c",
    "s",
    "k",
    "method",
    "value",
    "error_estimate",
    "hexagonal_value",
    "difference",
    "asserted",
    "exceeds_hexagonal",
];
pub const SCAN_COLUMNS: &[&str] = &["kind", "m", "k", "N", "ratio"];

pub fn run(config: &RunConfig) -> Result<Table, CliError> {
    let cache = config.cache_dir.as_deref();
    match &config.command {
        Command::Energy { source, ks } => energy(source, ks),
        Command::Sums { form, k, xs } => sums(*form, *k, xs, cache),
        Command::Fit {
            form,
            k,
            degree,
            xs,
        } => fit(*form, *k, *degree, xs, cache),
        Command::Zeta {
            form,
            s,
            k,
            method,
            cutoff,
        } => zeta(form, s, *k, *method, *cutoff, cache),
        Command::LatticeCompare { ds, k, n } => lattice_compare(ds, *k, *n),
        Command::Probe {
            forms,
            k,
            s,
            cutoff,
        } => probe(forms, *k, s, *cutoff),
        Command::Scan { kind, k, m, sides } => scan(*kind, *k, *m, sides),
    }
}

fn energy(source: &EnergySource, ks: &[u32]) -> Result<Table, CliError> {
    let histogram = match source {
        EnergySource::Grid { m, side } => grid_difference_histogram(*m, *side)?,
        EnergySource::Points(p) => distance_histogram(p)?,
    };
    let mut table = Table::new("energy", ENERGY_COLUMNS);
    for &k in ks {
        let r = energy_report::<f64>(&histogram, k);
        table.push(vec![
            Cell::int(r.n),
            Cell::int(r.k),
            Cell::int(&r.energy),
            Cell::int(r.distinct),
            Cell::Float(r.holder_bound),
        ]);
    }
    Ok(table)
}

fn sums(form: FormSpec, k: u32, xs: &[u64], cache: Option<&Path>) -> Result<Table, CliError> {
    let descriptor = form.descriptor()?;
    let x_max = *xs.last().expect("sample points are never empty");
    let rep = sieve_cached(descriptor, x_max, cache)?;
    let values = partial_sums_at(&rep, k, xs)?;
    let mut table = Table::new("sums", SUMS_COLUMNS);
    for (&x, v) in xs.iter().zip(values) {
        table.push(vec![
            Cell::text(descriptor.slug()),
            Cell::int(k),
            Cell::int(x),
            Cell::int(v),
        ]);
    }
    Ok(table)
}

fn fit(
    form: FormSpec,
    k: u32,
    degree: usize,
    xs: &[u64],
    cache: Option<&Path>,
) -> Result<Table, CliError> {
    let descriptor = form.descriptor()?;
    let x_max = *xs.last().expect("sample points are never empty");
    let rep = sieve_cached(descriptor, x_max, cache)?;
    let samples = power_sum_samples::<f64>(&rep, k, xs)?;
    let report = fit_log_poly(&samples, degree)?;
    let mut table = Table::new("fit", FIT_COLUMNS);
    for (i, &c) in report.coefficients.iter().enumerate() {
        table.push(vec![
            Cell::text(descriptor.slug()),
            Cell::int(k),
            Cell::int(report.degree),
            Cell::int(report.degree - i),
            Cell::Float(c),
            Cell::Float(report.residual),
            Cell::Float(report.condition),
            Cell::Float(report.x_min),
            Cell::Float(report.x_max),
        ]);
    }
    Ok(table)
}

fn zeta_row(e: &EpsteinEvaluation) -> Vec<Cell> {
    vec![
        Cell::int(e.form.a()),
        Cell::int(e.form.b()),
        Cell::int(e.form.c()),
        Cell::Float(e.s),
        Cell::int(e.k),
        Cell::text(e.method.as_str()),
        Cell::Float(e.value),
        Cell::Float(e.error_estimate),
    ]
}

fn zeta(
    form: &BinaryForm,
    s: &[f64],
    k: u32,
    method: MethodArg,
    cutoff: u64,
    cache: Option<&Path>,
) -> Result<Table, CliError> {
    let cfg = SpecialFunctionConfig::default();
    let rep = match method {
        MethodArg::Direct | MethodArg::Both => {
            Some(sieve_cached(form.descriptor(), cutoff, cache)?)
        }
        MethodArg::Cs => None,
    };
    let mut table = Table::new("zeta", ZETA_COLUMNS);
    for &si in s {
        if let Some(rep) = &rep {
            let e = if k == 1 {
                epstein_direct_from_table(rep, si)?
            } else {
                higher_moment_truncated(rep, k, si)?
            };
            table.push(zeta_row(&e));
        }
        if method != MethodArg::Direct {
            table.push(zeta_row(&epstein_chowla_selberg(form, si, &cfg)?));
        }
    }
    Ok(table)
}

fn lattice_compare(ds: &[i64], k: u32, n: u64) -> Result<Table, CliError> {
    let ranking = compare_lattices(ds, k, n)?;
    let mut table = Table::new("lattice-compare", LATTICE_COLUMNS);
    table.meta.push(("asserted", Cell::Bool(ranking.asserted)));
    table.meta.push((
        "hexagonal_strict_max",
        ranking.hexagonal_strict_max.map_or(Cell::Empty, Cell::Bool),
    ));
    for (i, e) in ranking.entries.iter().enumerate() {
        let check = ranking.checks.iter().find(|c| c.d == e.d);
        table.push(vec![
            Cell::int(i + 1),
            Cell::int(e.d),
            Cell::int(e.k),
            Cell::int(e.n),
            Cell::int(e.cutoff),
            Cell::int(&e.energy),
            check.map_or(Cell::Empty, |c| Cell::int(c.reference)),
            check.map_or(Cell::Empty, |c| Cell::Bool(c.holds)),
        ]);
    }
    Ok(table)
}

fn probe(forms: &[BinaryForm], k: u32, s: &[f64], cutoff: u64) -> Result<Table, CliError> {
    let cfg = SpecialFunctionConfig::default();
    let rows = conjecture_probe(forms, k, s, cutoff, &cfg)?;
    let mut table = Table::new("probe", PROBE_COLUMNS);
    for r in rows {
        table.push(vec![
            Cell::int(r.form.a()),
            Cell::int(r.form.b()),
            Cell::int(r.form.c()),
            Cell::Float(r.s),
            Cell::int(r.k),
            Cell::text(r.method.as_str()),
            Cell::Float(r.value),
            Cell::Float(r.error_estimate),
            Cell::Float(r.hexagonal_value),
            Cell::Float(r.difference),
            Cell::Bool(r.asserted),
            r.exceeds_hexagonal.map_or(Cell::Empty, Cell::Bool),
        ]);
    }
    Ok(table)
}

fn scan(kind: ScanKind, k: u32, m: usize, sides: &[u64]) -> Result<Table, CliError> {
    let (series, k_cell, name) = match kind {
        ScanKind::Energy => (
            grid_energy_ratio_scan::<f64>(k, m, sides)?,
            Cell::int(k),
            "energy",
        ),
        ScanKind::Optimality => (
            optimality_product::<f64>(m, sides)?,
            Cell::int(2),
            "optimality",
        ),
    };
    let mut table = Table::new("scan", SCAN_COLUMNS);
    table
        .meta
        .push(("normalizer", Cell::text(series.normalizer.clone())));
    table
        .meta
        .push(("exploratory", Cell::Bool(series.exploratory)));
    for (n, ratio) in series.points {
        table.push(vec![
            Cell::text(name),
            Cell::int(m),
            k_cell.clone(),
            Cell::int(n),
            Cell::Float(ratio),
        ]);
    }
    Ok(table)
}
