use anyhow::Context;
use serde::Serialize;

use trace_atlas::bounds::{theorem2_report, Verdict};
use trace_atlas::curves::lower_curve;
use trace_atlas::exactpoly::{isolate_real_roots, parse_corpus, serialize_poly, PositivityReport};
use trace_atlas::siegel::normalized_points;
use trace_atlas::{Error, IntPoly, Theorem2Report, TupleInstance};

use crate::commands::{emit, read};
use crate::{Failure, Outcome, Tolerances, VerifyArgs};

/// Points this far below `ℓ(d/n)` still count as above it.
const ELL_SLACK: f64 = 1e-9;

/// The family's irreducibility is known; user corpora are only checked for
/// the analytic conditions.
const CERTIFIED: &str = "roots-certified, irreducibility-assumed";

#[derive(Serialize)]
struct PolyReport {
    line: usize,
    poly: String,
    status: &'static str,
    positivity: PositivityReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    points_above_ell: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_gap_to_ell: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem2: Option<Theorem2Report>,
    pass: bool,
}

#[derive(Serialize)]
struct TupleReport {
    line: usize,
    #[serde(flatten)]
    report: Theorem2Report,
}

#[derive(Serialize)]
struct LineError {
    line: usize,
    error: String,
    pass: bool,
}

pub fn run(args: &VerifyArgs, tol: &Tolerances) -> Result<Outcome, Failure> {
    let (lines, all_pass) = match (&args.input.corpus, &args.input.tuples) {
        (Some(path), _) => verify_corpus(&read(path)?, tol.tol_root)?,
        (None, Some(path)) => verify_tuples(&read(path)?)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let mut text = lines.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    emit(args.out.as_deref(), &text).context("writing report")?;
    Ok(if all_pass {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}

fn line_error(line: usize, e: &Error) -> Result<String, Failure> {
    Ok(serde_json::to_string(&LineError {
        line,
        error: e.to_string(),
        pass: false,
    })?)
}

fn verify_corpus(text: &str, tol_root: f64) -> Result<(Vec<String>, bool), Failure> {
    let mut out = Vec::new();
    let mut all_pass = true;
    for entry in parse_corpus(text) {
        let json = match entry {
            Ok(e) => match check_poly(e.line, &e.poly, tol_root) {
                Ok(r) => {
                    all_pass &= r.pass;
                    serde_json::to_string(&r)?
                }
                Err(err) => {
                    all_pass = false;
                    line_error(e.line, &err)?
                }
            },
            Err((line, err)) => {
                all_pass = false;
                line_error(line, &err)?
            }
        };
        out.push(json);
    }
    Ok((out, all_pass))
}

fn check_poly(line: usize, f: &IntPoly, tol_root: f64) -> Result<PolyReport, Error> {
    let positivity = PositivityReport::new(f);
    let mut report = PolyReport {
        line,
        poly: serialize_poly(f),
        status: "not totally positive",
        positivity,
        points_above_ell: Vec::new(),
        min_gap_to_ell: None,
        theorem2: None,
        pass: false,
    };
    if !positivity.squarefree && positivity.degree >= 1 {
        return Err(Error::NonSquarefree {
            gcd_degree: trace_atlas::SturmChain::new(f).gcd_degree(),
        });
    }
    if !positivity.totally_positive {
        return Ok(report);
    }
    report.status = CERTIFIED;

    let points = normalized_points(f)?;
    let gaps: Vec<f64> = points.iter().map(|q| q.value - lower_curve(q.c)).collect();
    report.points_above_ell = gaps.iter().map(|g| *g >= -ELL_SLACK).collect();
    report.min_gap_to_ell = gaps.iter().copied().reduce(f64::min);

    let enclosures = isolate_real_roots(f, true, tol_root)?;
    let widest = enclosures.iter().map(|e| e.width()).fold(0.0, f64::max);
    let closest = enclosures
        .windows(2)
        .map(|w| w[1].lo - w[0].hi)
        .fold(f64::INFINITY, f64::min);
    // the enclosures must be far narrower than the gaps for Δ to be meaningful
    if closest <= 4.0 * widest {
        return Err(Error::Domain(format!(
            "root enclosures of width {widest:e} do not separate roots {closest:e} apart"
        )));
    }
    let mut t2_pass = true;
    if f.degree() >= 2 {
        let roots: Vec<f64> = enclosures.iter().map(|e| e.mid()).collect();
        let t2 = theorem2_report(&TupleInstance::new(&roots)?)?;
        t2_pass = t2.verdict == Verdict::Pass;
        report.theorem2 = Some(t2);
    }
    report.pass = t2_pass && report.points_above_ell.iter().all(|b| *b);
    Ok(report)
}

fn parse_tuple(l: &str) -> Result<Vec<f64>, String> {
    l.split_whitespace()
        .map(|tok| tok.parse::<f64>().map_err(|e| format!("{tok:?}: {e}")))
        .collect()
}

fn verify_tuples(text: &str) -> Result<(Vec<String>, bool), Failure> {
    let mut out = Vec::new();
    let mut all_pass = true;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let result = parse_tuple(l)
            .map_err(|message| Error::ParseLine { line, message })
            .and_then(|xs| theorem2_report(&TupleInstance::new(&xs)?));
        let json = match result {
            Ok(report) => {
                all_pass &= report.verdict == Verdict::Pass;
                serde_json::to_string(&TupleReport { line, report })?
            }
            Err(e) => {
                all_pass = false;
                line_error(line, &e)?
            }
        };
        out.push(json);
    }
    Ok((out, all_pass))
}
