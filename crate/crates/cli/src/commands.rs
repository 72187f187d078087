use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use serde::Serialize;

use trace_atlas::curves::{
    area_between, limit_curve, lower_curve, standard_areas, theta, AreaReport, CurveKind,
    CurveTable,
};
use trace_atlas::exactpoly::{is_totally_positive, serialize_poly};
use trace_atlas::format::csv_num;
use trace_atlas::siegel::{odd_primes_upto, parse_points_csv, points_csv, Construction};
use trace_atlas::{PointRecord, SiegelPoly};

use crate::svg::Figure;
use crate::{AreaArgs, AreaCurve, CurvesArgs, Failure, Format, GenArgs, Kind, Outcome, Tolerances};

/// Writes `text` to `path`, or to stdout when there is no path.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).context("writing stdout")?;
            out.flush().context("writing stdout")
        }
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn gen(args: &GenArgs) -> Result<Outcome, Failure> {
    let mut primes = match (&args.primes, args.upto) {
        (Some(list), _) => list.clone(),
        (None, Some(upto)) => odd_primes_upto(upto),
        (None, None) => bail!("give --primes or --upto"),
    };
    primes.sort_unstable();
    primes.dedup();
    if primes.is_empty() {
        bail!("the prime list is empty");
    }

    let mut corpus = String::new();
    let mut records = Vec::new();
    let mut rejected = 0;
    let mut uncertified = 0;
    for p in primes {
        let g = match SiegelPoly::build(p, Construction::ClosedForm, args.cap) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("error: {e}");
                rejected += 1;
                continue;
            }
        };
        let status = if args.no_certify {
            "unchecked"
        } else if is_totally_positive(&g.poly) {
            "totally-positive"
        } else {
            uncertified += 1;
            "not-totally-positive"
        };
        println!("p={p} n={} trace={} {status}", g.n, g.absolute_trace());
        corpus.push_str(&format!("# p = {p}\n{}\n", serialize_poly(&g.poly)));
        records.extend(
            g.normalized_points()
                .into_iter()
                .map(|point| PointRecord { p, point }),
        );
    }
    if let Some(path) = &args.corpus {
        emit(Some(path), &corpus)?;
    }
    if let Some(path) = &args.points {
        emit(Some(path), &points_csv(&records))?;
    }
    if rejected > 0 {
        bail!("{rejected} entries rejected");
    }
    Ok(if uncertified > 0 {
        Outcome::VerificationFailed
    } else {
        Outcome::Ok
    })
}

pub fn curves(args: &CurvesArgs) -> Result<Outcome, Failure> {
    if args.grid < 2 {
        bail!("--grid must be at least 2, got {}", args.grid);
    }
    let format = args.format.unwrap_or_else(|| match &args.out {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg")) => Format::Svg,
        _ => Format::Csv,
    });
    let kinds: &[CurveKind] = match args.kind {
        Kind::L => &[CurveKind::L],
        Kind::Ell => &[CurveKind::Ell],
        Kind::Both => &[CurveKind::L, CurveKind::Ell],
    };
    let tables = kinds
        .iter()
        .map(|&k| CurveTable::uniform(k, None, args.grid))
        .collect::<Result<Vec<_>, _>>()?;
    let overlay = match &args.overlay {
        Some(path) if format == Format::Svg => {
            let text = read(path)?;
            parse_points_csv(&text).with_context(|| format!("overlay {}", path.display()))?
        }
        Some(_) => bail!("--overlay needs SVG output"),
        None => Vec::new(),
    };
    let text = match format {
        Format::Csv => curves_csv(&tables),
        Format::Svg => Figure::new(&tables, &overlay).render(),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(Outcome::Ok)
}

/// One table as `c,y`; several share the `c` column under their labels.
fn curves_csv(tables: &[CurveTable]) -> String {
    if let [single] = tables {
        return single.to_csv();
    }
    let labels: Vec<&str> = tables.iter().map(|t| t.kind.label()).collect();
    let mut out = format!("c,{}\n", labels.join(","));
    for i in 0..tables[0].samples.len() {
        out.push_str(&csv_num(tables[0].samples[i].0));
        for t in tables {
            out.push(',');
            out.push_str(&csv_num(t.samples[i].1));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Constants {
    theta: f64,
    ell0: f64,
    #[serde(rename = "L0")]
    l0: f64,
    #[serde(rename = "area_L")]
    area_l: f64,
    area_ell: f64,
    coverage_ratio: f64,
    schur: f64,
    siegel: f64,
    quad_tol: f64,
}

pub fn constants(tol: &Tolerances) -> Result<Outcome, Failure> {
    let (area_l, area_ell) = standard_areas(tol.tol_quad)?;
    let c = Constants {
        theta: theta().theta,
        ell0: lower_curve(0.0),
        l0: limit_curve(0.0),
        area_l,
        area_ell,
        coverage_ratio: area_ell / area_l,
        schur: 0.5f64.exp(),
        siegel: 1.7336,
        quad_tol: tol.tol_quad,
    };
    emit(None, &(serde_json::to_string_pretty(&c)? + "\n"))?;
    Ok(Outcome::Ok)
}

fn area_curve(c: AreaCurve) -> (&'static str, fn(f64) -> f64) {
    match c {
        AreaCurve::L => ("L", limit_curve),
        AreaCurve::Ell => ("ell", lower_curve),
        AreaCurve::One => ("1", |_| 1.0),
    }
}

pub fn area(args: &AreaArgs, tol: &Tolerances) -> Result<Outcome, Failure> {
    if !(0.0 <= args.lo && args.lo <= args.hi && args.hi <= 1.0) {
        bail!("need 0 <= --lo <= --hi <= 1");
    }
    let (upper_name, upper) = area_curve(args.upper);
    let (lower_name, lower) = area_curve(args.lower);
    let area = area_between(upper, lower, args.lo, args.hi, tol.tol_quad)?;
    // share of the region between L and y = 1 that lies under ell
    let ratio = if args.upper == AreaCurve::Ell && args.lower == AreaCurve::One {
        let whole = area_between(limit_curve, |_| 1.0, args.lo, args.hi, tol.tol_quad)?;
        Some(area / whole)
    } else {
        None
    };
    let report = AreaReport {
        upper: upper_name.into(),
        lower: lower_name.into(),
        area,
        tol: tol.tol_quad,
        ratio,
    };
    emit(None, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    Ok(Outcome::Ok)
}
