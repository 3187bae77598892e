use l2betti_core::complexes::{
    closed_form, free_product_complex_with, kunneth_laplacian, resolution_complex, tensor_complex, Action,
    CochainComplex,
};
use l2betti_core::groups::GroupKind;
use l2betti_core::kclass::{betti_report, kazhdan_class};
use l2betti_core::spectral::{verify_kernel_structure, ConvergenceStatus, HeatReport, NumericHeat};
use l2betti_core::{GroupElement, GroupSpec};
use rayon::prelude::*;

use crate::config::{Command, RunConfig};
use crate::error::{exit, CliError};
use crate::formats::{
    matrix_to_json, BettiJson, CheckJson, ComplexJson, HeatJson, LaplacianJson, Output, VerifyJson,
};
use crate::grammar::parse_group;

/// Result of one command together with its exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: Output,
    pub exit_code: u8,
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    match config.command {
        Command::Betti => cmd_betti(config).map(|b| Outcome { output: Output::Betti(b), exit_code: exit::OK }),
        Command::Heat => {
            let report = cmd_heat(config)?;
            let exit_code = match report.status() {
                ConvergenceStatus::Converged => exit::OK,
                ConvergenceStatus::NotConverged => exit::NOT_CONVERGED,
                ConvergenceStatus::BoundUnavailable => exit::BOUND_UNAVAILABLE,
            };
            Ok(Outcome { output: Output::Heat(HeatJson::from_report(&report)), exit_code })
        }
        Command::Verify => {
            let report = cmd_verify(config)?;
            let exit_code = if report.passed { exit::OK } else { exit::VERIFY_FAILED };
            Ok(Outcome { output: Output::Verify(report), exit_code })
        }
        Command::Complex => cmd_complex(config).map(|c| Outcome { output: Output::Complex(c), exit_code: exit::OK }),
    }
}

fn parse_classes(spec: &GroupSpec, config: &RunConfig) -> Result<Vec<GroupElement>, CliError> {
    config.class_words().iter().map(|w| Ok(spec.parse_word(w)?)).collect()
}

/// Exact delocalised Betti numbers from the K-class of the Kazhdan projection.
pub fn cmd_betti(config: &RunConfig) -> Result<BettiJson, CliError> {
    let spec = parse_group(&config.group)?;
    let classes = parse_classes(&spec, config)?;
    let report = betti_report(&spec, config.degree_or(1), &classes)?;
    Ok(BettiJson::from_report(&report))
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Input(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Heat-trace scan over the configured grid, with exact rows and K-class values attached.
pub fn cmd_heat(config: &RunConfig) -> Result<HeatReport, CliError> {
    let spec = parse_group(&config.group)?;
    let degree = config.degree_or(1);
    let complex = resolution_complex(&spec, degree + 1)?;
    let delta = complex.laplacian(degree)?;
    let classes = parse_classes(&spec, config)?;
    let ts: Vec<f64> = config.t_schedule.iter().map(|t| t.value()).collect();
    let grid = with_pool(config.threads, || {
        config
            .radius_schedule
            .par_iter()
            .map(|&r| {
                let engine = NumericHeat::new(&delta, r)?;
                ts.iter().map(|&t| engine.traces(t, &classes)).collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
    })??;
    let mut report =
        HeatReport::assemble(spec.clone(), &classes, &ts, &config.radius_schedule, &grid, config.tolerance);
    report.degree = Some(degree);
    if let Ok(expr) = kazhdan_class(&spec, degree) {
        for summary in &mut report.summaries {
            summary.expected = expr.pair(&summary.class).ok();
        }
    }
    if let Some(order) = config.order {
        let times = if config.exact_times.is_empty() { &config.t_schedule } else { &config.exact_times };
        let exact: Vec<_> = times.iter().map(|t| t.exact.clone()).collect();
        report.add_exact_rows(&delta, &exact, order)?;
    }
    Ok(report)
}

struct Checks(Vec<CheckJson>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckJson { name: name.into(), passed, detail: detail.into() });
    }

    fn complex(&mut self, label: &str, c: &CochainComplex) -> Result<(), CliError> {
        let chain = c.coboundaries().windows(2).all(|w| w[1].mat_mul(&w[0]).is_ok_and(|p| p.is_zero()));
        self.push(format!("{label}chain-law"), chain, format!("ranks {:?}", c.ranks()));
        for (i, lap) in c.laplacians()?.iter().enumerate() {
            self.push(format!("{label}laplacian-{i}-self-adjoint"), lap.is_self_adjoint(), "");
        }
        Ok(())
    }
}

fn free_product_checks(checks: &mut Checks, m: u32, n: u32) -> Result<(), CliError> {
    checks.complex("right-action-", &free_product_complex_with(m, n, 4, Action::Right)?)?;
    let right = free_product_complex_with(m, n, 2, Action::Right)?.laplacian(1)?;
    checks.push("closed-form", right == closed_form::first_laplacian(m, n)?, "first Laplacian, right action");
    checks.push("factored-form", right == closed_form::factored_first_laplacian(m, n)?, "first Laplacian, right action");
    if (m, n) == (2, 3) {
        let left = free_product_complex_with(2, 3, 2, Action::Left)?.laplacian(1)?;
        checks.push("modular-group-matrix", left == closed_form::modular_group_laplacian(), "first Laplacian, left action");
    }
    let (a, b) = if n >= 3 { (m, n) } else { (n, m) };
    if b >= 3 {
        let k = verify_kernel_structure(a, b)?;
        let tag = format!("orders ({a},{b})");
        checks.push("kernel-identity", k.identity_holds, tag.clone());
        checks.push("kernel-factorization", k.factorization_holds, tag.clone());
        checks.push(
            "kernel-residual",
            k.residual_ok(),
            format!("{tag}, radius {}, residual {:.3e}", k.radius, k.residual),
        );
    }
    Ok(())
}

/// Runs the exact identity checks for the family of the configured group.
pub fn cmd_verify(config: &RunConfig) -> Result<VerifyJson, CliError> {
    let spec = parse_group(&config.group)?;
    let mut checks = Checks(Vec::new());
    match spec.kind() {
        GroupKind::Table(_) => {}
        _ => checks.complex("", &resolution_complex(&spec, 4)?)?,
    }
    match spec.kind() {
        GroupKind::FreeProduct(&[m, n]) => free_product_checks(&mut checks, m, n)?,
        GroupKind::Product(factors) => {
            let last = factors.len() - 1;
            let head = GroupSpec::product(factors[..last].to_vec())?;
            let (c1, c2) = (resolution_complex(&head, 4)?, resolution_complex(&factors[last], 4)?);
            let tensor = tensor_complex(&c1, &c2, 4)?;
            for i in 0..=tensor.laplacian_top().unwrap_or(0).min(3) {
                let (Ok(direct), Ok(kunneth)) = (tensor.laplacian(i), kunneth_laplacian(&c1, &c2, i)) else {
                    continue;
                };
                checks.push(format!("kunneth-{i}"), direct == kunneth, "");
            }
        }
        _ => {}
    }
    let degree = match spec.kind() {
        GroupKind::Product(factors) => factors.iter().filter(|f| !f.is_finite()).count(),
        _ if spec.is_finite() => 0,
        _ => 1,
    };
    match kazhdan_class(&spec, degree) {
        Ok(expr) => checks.push(
            "kclass-projections",
            expr.representatives_are_projections(),
            format!("degree {degree}, {} term(s)", expr.terms.len()),
        ),
        Err(l2betti_core::Error::Unsupported(_)) => {}
        Err(e) => return Err(e.into()),
    }
    if checks.0.is_empty() {
        return Err(l2betti_core::Error::Unsupported(format!("no checks available for {spec}")).into());
    }
    let passed = checks.0.iter().all(|c| c.passed);
    Ok(VerifyJson { group: spec.to_string(), passed, checks: checks.0 })
}

/// Coboundaries and Laplacians of the standard complex of the configured group.
pub fn cmd_complex(config: &RunConfig) -> Result<ComplexJson, CliError> {
    let spec = parse_group(&config.group)?;
    let max_degree = config.max_degree.unwrap_or_else(|| config.degree.map_or(2, |d| (d + 1).max(2)));
    let complex = resolution_complex(&spec, max_degree)?;
    let degrees: Vec<usize> = match config.degree {
        Some(d) => vec![d],
        None => (0..=complex.laplacian_top().unwrap_or(0)).collect(),
    };
    let laplacians = degrees
        .into_iter()
        .map(|d| Ok(LaplacianJson { degree: d, matrix: matrix_to_json(&complex.laplacian(d)?) }))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ComplexJson {
        group: spec.to_string(),
        ranks: complex.ranks().to_vec(),
        complete: complex.is_complete(),
        coboundaries: complex.coboundaries().iter().map(matrix_to_json).collect(),
        laplacians,
    })
}
