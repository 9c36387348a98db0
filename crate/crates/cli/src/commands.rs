//! The subcommands, each rendering its table as CSV or JSON lines.

use std::fmt::Write as _;

use efrac_core::alpha::{full_divisor_bound, mixed_bound_with, to_naturals, BoundReport, LiftRule, Provenance};
use efrac_core::arith::FactoredInteger;
use efrac_core::density::{delta_from_profile, empirical_density, ValuationProfile};
use efrac_core::subsetsum::{enumerate_egyptian, sum_set_stats};
use efrac_core::uset::{count_u, g_m_table, recursive_count_bound, CertificateKind, UCertificate};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::cache::chain_counts_cached;
use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, Result};

/// What a command prints: the data table on stdout and an optional summary
/// for stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub summary: Option<String>,
}

impl From<String> for CommandOutput {
    fn from(stdout: String) -> Self {
        Self {
            stdout,
            summary: None,
        }
    }
}

struct Table {
    format: OutputFormat,
    columns: Vec<&'static str>,
    out: String,
}

impl Table {
    fn new(format: OutputFormat, columns: &[&'static str]) -> Self {
        let mut out = String::new();
        if format == OutputFormat::Csv {
            out.push_str(&columns.join(","));
            out.push('\n');
        }
        Self {
            format,
            columns: columns.to_vec(),
            out,
        }
    }

    /// One row; `None` cells are empty in CSV and `null` in JSON.
    fn row(&mut self, cells: Vec<Option<Value>>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        match self.format {
            OutputFormat::Csv => {
                let text: Vec<String> = cells
                    .iter()
                    .map(|c| match c {
                        None | Some(Value::Null) => String::new(),
                        Some(Value::String(s)) => s.clone(),
                        Some(v) => v.to_string(),
                    })
                    .collect();
                self.out.push_str(&text.join(","));
                self.out.push('\n');
            }
            OutputFormat::Json => {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(cells)
                    .map(|(k, v)| (k.to_string(), v.unwrap_or(Value::Null)))
                    .collect();
                let _ = writeln!(self.out, "{}", Value::Object(obj));
            }
        }
    }

    fn finish(self) -> String {
        self.out
    }
}

fn big(v: impl ToString) -> Option<Value> {
    Some(Value::String(v.to_string()))
}

fn num(v: u64) -> Option<Value> {
    Some(json!(v))
}

fn float(v: f64) -> Option<Value> {
    Some(Value::String(format!("{v:.12}")))
}

/// Runs `f` on a worker pool sized by the config.
pub fn with_workers<T: Send>(cfg: &RunConfig, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.workers {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

pub fn cmd_enumerate(cfg: &RunConfig, max_n: u64) -> Result<CommandOutput> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let cards = enumerate_egyptian(max_n, cfg.memory_budget_bytes)?;
    let mut t = Table::new(cfg.output_format, &["n", "card"]);
    for (card, n) in cards.into_iter().zip(1u64..) {
        t.row(vec![num(n), num(card)]);
    }
    Ok(t.finish().into())
}

fn bound_cells(report: &BoundReport) -> Vec<Option<Value>> {
    vec![
        big(report.delta.numer()),
        big(report.delta.denom()),
        big(report.display(8)),
        big(&report.bound_upper),
    ]
}

pub fn chain_bound_report(cfg: &RunConfig, m: &FactoredInteger) -> Result<BoundReport> {
    let counts = chain_counts_cached(m, &cfg.cache_dir, cfg.memory_budget_bytes)?;
    with_workers(cfg, || full_divisor_bound(m, &to_naturals(&counts), cfg.log_precision_bits))?
        .map_err(CliError::from)
}

pub fn cmd_chain_bound(cfg: &RunConfig, m: &FactoredInteger) -> Result<CommandOutput> {
    let report = chain_bound_report(cfg, m)?;
    let mut t = Table::new(
        cfg.output_format,
        &["M", "delta_num", "delta_den", "bound", "bound_upper"],
    );
    let mut cells = vec![big(&report.modulus)];
    cells.extend(bound_cells(&report));
    t.row(cells);
    Ok(t.finish().into())
}

pub fn mixed_bound_report(
    cfg: &RunConfig,
    m: &FactoredInteger,
    m_exact: &FactoredInteger,
    rule: LiftRule,
) -> Result<BoundReport> {
    if !m_exact.divides(m) {
        return Err(efrac_core::Error::Structural(format!(
            "exact modulus {} does not divide {}",
            m_exact.value(),
            m.value()
        ))
        .into());
    }
    let counts = chain_counts_cached(m_exact, &cfg.cache_dir, cfg.memory_budget_bytes)?;
    with_workers(cfg, || {
        mixed_bound_with(m, m_exact, &counts, rule, cfg.log_precision_bits)
    })?
    .map_err(CliError::from)
}

pub fn cmd_mixed_bound(
    cfg: &RunConfig,
    m: &FactoredInteger,
    m_exact: &FactoredInteger,
    rule: LiftRule,
) -> Result<CommandOutput> {
    let report = mixed_bound_report(cfg, m, m_exact, rule)?;
    let tally = |p: Provenance| report.r_provenance.iter().filter(|&&q| q == p).count() as u64;
    let mut t = Table::new(
        cfg.output_format,
        &[
            "M",
            "M_exact",
            "delta_num",
            "delta_den",
            "bound",
            "bound_upper",
            "exact",
            "lifted",
            "lemmaA",
        ],
    );
    let mut cells = vec![big(&report.modulus), big(m_exact.value())];
    cells.extend(bound_cells(&report));
    cells.extend([
        num(tally(Provenance::Exact)),
        num(tally(Provenance::Lifted)),
        num(tally(Provenance::LemmaA)),
    ]);
    t.row(cells);
    Ok(t.finish().into())
}

pub fn cmd_figure_data(cfg: &RunConfig, max_n: u64) -> Result<CommandOutput> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let points = sum_set_stats(max_n, cfg.memory_budget_bytes)?;
    let mut t = Table::new(
        cfg.output_format,
        &["n", "card", "log_card_over_n", "log_card_over_n_over_log_n"],
    );
    for p in points {
        t.row(vec![
            num(p.n),
            num(p.card),
            float(p.log_card_over_n),
            p.log_card_over_n_over_log_n.and_then(float),
        ]);
    }
    Ok(t.finish().into())
}

fn certificate_cells(c: &UCertificate) -> Vec<Option<Value>> {
    let (m, p, k) = match c.kind {
        CertificateKind::Lift { m, p, k } => (num(m), num(p), num(u64::from(k))),
        _ => (None, None, None),
    };
    vec![num(c.n), big(c.kind.name()), m, p, k]
}

/// Optional `(y, x)` for the recursive count bound.
pub fn cmd_u_set(
    cfg: &RunConfig,
    max: u64,
    cap: u64,
    recursive: Option<(u64, u64)>,
) -> Result<CommandOutput> {
    if max == 0 {
        return Err(CliError::Usage("--max must be at least 1".into()));
    }
    if cap > efrac_core::uset::EXACT_DECISION_CAP {
        return Err(efrac_core::Error::CapExceeded {
            what: "exact cap",
            value: cap,
            cap: efrac_core::uset::EXACT_DECISION_CAP,
        }
        .into());
    }
    let counted = count_u(max, cap.min(max), cfg.memory_budget_bytes)?;
    let mut t = Table::new(cfg.output_format, &["n", "kind", "m", "p", "k"]);
    for c in &counted.members {
        t.row(certificate_cells(c));
    }
    let count = counted.count();
    let mut summary = format!(
        "count={count} lower_bound={} complete={}",
        BigUint::from(1u32) << count,
        counted.is_complete()
    );
    if let Some((y, x)) = recursive {
        let u_y = count_u(y, cap.min(y), cfg.memory_budget_bytes)?.member_values();
        let bound = recursive_count_bound(x, y, &u_y)?;
        let _ = write!(summary, " recursive_bound(x={x},y={y})={bound}");
    }
    Ok(CommandOutput {
        stdout: t.finish(),
        summary: Some(summary),
    })
}

pub fn cmd_density(cfg: &RunConfig, m: &FactoredInteger, x: Option<u64>) -> Result<CommandOutput> {
    let profile = ValuationProfile::of_modulus(m);
    let delta = delta_from_profile(&profile);
    let mut t = Table::new(
        cfg.output_format,
        &["M", "delta_num", "delta_den", "x", "empirical_num", "empirical_den"],
    );
    let (xs, en, ed) = match x {
        Some(x) => {
            let e = empirical_density(&profile, x)?;
            (num(x), big(e.numer()), big(e.denom()))
        }
        None => (None, None, None),
    };
    t.row(vec![big(m.value()), big(delta.numer()), big(delta.denom()), xs, en, ed]);
    Ok(t.finish().into())
}

pub fn cmd_gm_table(cfg: &RunConfig, max_m: u64) -> Result<CommandOutput> {
    if max_m == 0 {
        return Err(CliError::Usage("--max-m must be at least 1".into()));
    }
    let table = g_m_table(max_m);
    let mut t = Table::new(cfg.output_format, &["m", "d_m", "g_m", "g_below_3_pow_m"]);
    for e in table.entries() {
        t.row(vec![num(e.m), big(&e.d), big(&e.g), Some(json!(e.below_three_pow))]);
    }
    Ok(t.finish().into())
}
