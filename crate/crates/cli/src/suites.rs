//! Check suites run by `validate` and `verify`.

use qavg::algebra::check_algebra_axioms;
use qavg::calculus::{calculus_suite, lift_coaction, LiftedCoaction};
use qavg::coaction::{check_coaction_axioms, coaction_suite};
use qavg::hopf::{
    check_counit_antipode, check_hopf_axioms, check_sweedler_inverse_identity, check_t_transform_identity,
    compute_haar, hopf_suite,
};
use qavg::metric::{
    average_inner_product, check_definiteness, check_equivariance, check_hermitian_module, check_idempotence,
    classical_average_oracle, psi_cp_check,
};
use qavg::scalar::max_diff;
use qavg::{Error, InnerProduct, Report, Scalar};

use crate::error::{CliError, CliResult};
use crate::model::Model;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Hopf,
    Coaction,
    Calculus,
    Lemmas,
    Theorem,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub samples: usize,
    pub seed: u64,
}

/// Failing report standing in for a check that could not run.
pub fn failure(name: &str, err: &Error) -> Report {
    Report::condition(name, f64::INFINITY, false).with_notes(err.to_string())
}

fn renamed(reports: Vec<Report>, from: &str, to: &str) -> Vec<Report> {
    reports
        .into_iter()
        .map(|mut r| {
            if let Some(rest) = r.check_name.strip_prefix(from) {
                r.check_name = format!("{to}{rest}");
            }
            r
        })
        .collect()
}

fn missing(what: &str) -> CliError {
    CliError::Usage(format!("document has no {what}"))
}

/// Sorted by check name; duplicates from overlapping suites are dropped.
pub fn finish(mut reports: Vec<Report>) -> Vec<Report> {
    reports.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    reports.dedup_by(|a, b| a.check_name == b.check_name);
    reports
}

/// Algebra, Hopf and coaction axioms without anything that needs a Haar
/// functional.
pub fn validate<S: Scalar>(m: &Model<S>) -> Vec<Report> {
    let tol = m.tolerance;
    let mut reports = check_algebra_axioms(&m.algebra, tol);
    if let Some(h) = &m.hopf {
        reports.extend(renamed(
            check_algebra_axioms(h.algebra(), tol),
            "algebra.",
            "hopf.algebra.",
        ));
        reports.extend(check_hopf_axioms(h, tol));
    }
    if let Some(c) = &m.coaction {
        reports.extend(check_coaction_axioms(c, tol));
    }
    finish(reports)
}

pub struct Pipeline<S> {
    pub lifted: Option<Result<LiftedCoaction<S>, Error>>,
    pub averaged: Option<Result<InnerProduct<S>, Error>>,
}

impl<S: Scalar> Pipeline<S> {
    pub fn new(m: &Model<S>) -> Self {
        let tol = m.tolerance;
        let lifted = match (&m.coaction, &m.calculus) {
            (Some(c), Some((calc, _))) => Some(match &m.gamma {
                Some(g) => LiftedCoaction::with_gamma(calc.clone(), c.clone(), g.clone(), tol),
                None => lift_coaction(c, calc, tol),
            }),
            _ => None,
        };
        let averaged = match (&lifted, &m.metric) {
            (Some(l), Some(g)) => Some(l.clone().and_then(|l| average_inner_product(&l, g, tol))),
            _ => None,
        };
        Pipeline { lifted, averaged }
    }
}

pub fn hopf_reports<S: Scalar>(m: &Model<S>) -> CliResult<Vec<Report>> {
    let tol = m.tolerance;
    let h = m.hopf.as_ref().ok_or_else(|| missing("Hopf algebra"))?;
    let mut reports = renamed(check_algebra_axioms(h.algebra(), tol), "algebra.", "hopf.algebra.");
    if h.haar().is_some() {
        match hopf_suite(h, tol) {
            Ok(r) => reports.extend(r),
            Err(e) => reports.push(failure("hopf.error", &e)),
        }
    } else {
        reports.extend(check_hopf_axioms(h, tol));
        reports.push(check_sweedler_inverse_identity(h, tol));
        reports.push(check_counit_antipode(h, tol));
    }
    if let Some(e) = &m.haar_error {
        reports.push(failure("haar.computed", e));
    }
    if m.haar_supplied {
        let supplied = h.haar().expect("supplied Haar is attached");
        reports.push(match compute_haar(h, tol) {
            Ok(computed) => Report::residual(
                "haar.matches_computed",
                max_diff(&supplied.coeffs, &computed.coeffs),
                tol,
            ),
            Err(e) => failure("haar.matches_computed", &e),
        });
    }
    reports.push(match h.ensure_kac(tol) {
        Ok(()) => Report::condition("hopf.kac", 0.0, true),
        Err(e) => failure("hopf.kac", &e),
    });
    Ok(reports)
}

pub fn coaction_reports<S: Scalar>(m: &Model<S>) -> CliResult<Vec<Report>> {
    let tol = m.tolerance;
    let c = m.coaction.as_ref().ok_or_else(|| missing("coaction"))?;
    let mut reports = check_algebra_axioms(&m.algebra, tol);
    match coaction_suite(c, tol) {
        Ok(r) => reports.extend(r),
        Err(e) => {
            reports.extend(check_coaction_axioms(c, tol));
            reports.push(failure("coaction.error", &e));
        }
    }
    Ok(reports)
}

pub fn calculus_reports<S: Scalar>(m: &Model<S>, p: &Pipeline<S>) -> CliResult<Vec<Report>> {
    Ok(
        match p.lifted.as_ref().ok_or_else(|| missing("coaction and calculus"))? {
            Ok(l) => calculus_suite(l, m.tolerance),
            Err(e) => vec![failure("lift.error", e)],
        },
    )
}

/// Sweedler inverse identity, T-transform identities, complete positivity of
/// the averaging map, and the hermitian module laws of the input and averaged
/// products.
pub fn lemma_reports<S: Scalar>(m: &Model<S>, p: &Pipeline<S>, opts: &Options) -> CliResult<Vec<Report>> {
    let tol = m.tolerance;
    let c = m.coaction.as_ref().ok_or_else(|| missing("coaction"))?;
    let h = c.cqg();
    let mut reports = vec![check_sweedler_inverse_identity(h, tol)];
    match check_t_transform_identity(h, tol) {
        Ok(r) => reports.extend(r),
        Err(e) => reports.push(failure("hopf.t_transform", &e)),
    }
    match psi_cp_check(c, opts.samples, tol, opts.seed) {
        Ok(r) => reports.extend(r),
        Err(e) => reports.push(failure("psi.error", &e)),
    }
    if let Some(g) = &m.metric {
        reports.extend(renamed(check_hermitian_module(g, tol), "metric.", "input.metric."));
    }
    match &p.averaged {
        Some(Ok(avg)) => reports.extend(check_hermitian_module(avg, tol)),
        Some(Err(e)) => reports.push(failure("average.error", e)),
        None => {}
    }
    Ok(reports)
}

/// Equivariance, idempotence and definiteness of the averaged product.
pub fn theorem_reports<S: Scalar>(m: &Model<S>, p: &Pipeline<S>) -> CliResult<Vec<Report>> {
    let tol = m.tolerance;
    let avg = match p
        .averaged
        .as_ref()
        .ok_or_else(|| missing("coaction, calculus and metric"))?
    {
        Ok(avg) => avg,
        Err(e) => return Ok(vec![failure("average.error", e)]),
    };
    let Some(Ok(lifted)) = &p.lifted else {
        unreachable!("an averaged product implies a lifted coaction")
    };
    let mut reports = vec![check_equivariance(lifted, avg, tol)];
    match check_idempotence(lifted, avg, tol) {
        Ok(r) => reports.push(r),
        Err(e) => reports.push(failure("metric.idempotent", &e)),
    }
    match check_definiteness(avg, tol) {
        Ok(d) => reports.extend(d.reports()),
        Err(e) => reports.push(failure("metric.definite", &e)),
    }
    Ok(reports)
}

/// Averaged product against the direct group average of the provenance
/// action.
pub fn oracle_reports<S: Scalar>(m: &Model<S>, p: &Pipeline<S>) -> CliResult<Vec<Report>> {
    let c = m.coaction.as_ref().ok_or_else(|| missing("coaction"))?;
    let g = m.metric.as_ref().ok_or_else(|| missing("metric"))?;
    if c.provenance().is_none() {
        return Err(Error::NotClassical.into());
    }
    let oracle = classical_average_oracle(c, g)?;
    Ok(vec![
        match p.averaged.as_ref().expect("metric and coaction are present") {
            Ok(avg) => {
                let worst = avg
                    .gram()
                    .iter()
                    .zip(oracle.gram())
                    .map(|(x, y)| max_diff(x, y))
                    .fold(0.0, f64::max);
                Report::residual("oracle.match", worst, m.tolerance)
            }
            Err(e) => failure("oracle.match", e),
        },
    ])
}

/// Runs a suite. `All` runs every part whose inputs the document supplies.
pub fn verify<S: Scalar>(m: &Model<S>, suite: Suite, opts: &Options) -> CliResult<Vec<Report>> {
    let p = Pipeline::new(m);
    let reports = match suite {
        Suite::Hopf => hopf_reports(m)?,
        Suite::Coaction => coaction_reports(m)?,
        Suite::Calculus => calculus_reports(m, &p)?,
        Suite::Lemmas => lemma_reports(m, &p, opts)?,
        Suite::Theorem => theorem_reports(m, &p)?,
        Suite::All => {
            let mut all = check_algebra_axioms(&m.algebra, m.tolerance);
            if m.hopf.is_some() {
                all.extend(hopf_reports(m)?);
            }
            if m.coaction.is_some() {
                all.extend(coaction_reports(m)?);
                all.extend(lemma_reports(m, &p, opts)?);
            }
            if p.lifted.is_some() {
                all.extend(calculus_reports(m, &p)?);
            }
            if p.averaged.is_some() {
                all.extend(theorem_reports(m, &p)?);
            }
            all
        }
    };
    Ok(finish(reports))
}
