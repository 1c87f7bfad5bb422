use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use segmental::segments::chebyshev_lobatto_nodes;
use segmental::{
    full_report, interpolate, lebesgue_constant, measure_with, nodal_lebesgue_constant, operator_norm, Error,
    LebesgueReport, MeasurementVector, NodalInterpolant, NodeSet, QuadratureConfig, SegmentClass, SegmentSet,
    SegmentalBasis,
};

use crate::presets::Preset;
use crate::svg::{plot, Series};
use crate::{BasisArgs, C2Args, Common, FamilyArg, InterpArgs, RangeArgs, RungeArgs, SweepArgs};

/// Arc ratio standing in for the nodal limit in `c2-sweep`.
const NODAL_SURROGATE_LAMBDA: f64 = 1e-6;

pub enum Outcome {
    Complete,
    /// Number of rows that failed.
    Partial(usize),
}

pub enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_lambda(lambda: f64) -> Result<(), Failure> {
    if lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(usage(format!("lambda must lie in (0, 1), got {lambda}")))
    }
}

fn check_r(r: usize) -> Result<(), Failure> {
    if r == 0 {
        Err(usage("r must be at least 1"))
    } else {
        Ok(())
    }
}

fn check_range(a: &RangeArgs) -> Result<(), Failure> {
    check_r(a.r_min)?;
    if a.r_max < a.r_min {
        return Err(usage(format!("empty range: r-min {} > r-max {}", a.r_min, a.r_max)));
    }
    check_grid(&a.common)
}

fn check_grid(c: &Common) -> Result<(), Failure> {
    if c.grid < 2 {
        return Err(usage("grid must have at least 2 points"));
    }
    Ok(())
}

fn build_set(family: FamilyArg, r: usize, lambda: f64) -> segmental::Result<SegmentSet> {
    match family {
        FamilyArg::Eq => SegmentSet::equidistant(r, -1.0, 1.0),
        FamilyArg::Cl => SegmentSet::chebyshev_lobatto(r),
        FamilyArg::Clo => SegmentSet::cl_overlapping(r),
        FamilyArg::Arc => SegmentSet::arc_uniform_cl_midpoints(r, lambda),
    }
}

fn uniform_grid((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..n).map(|k| lo + (hi - lo) * (k as f64 / (n - 1) as f64)).collect();
    xs[n - 1] = hi;
    xs
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Run(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Failure::Run(format!("cannot write {}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn outcome(failed: usize) -> CmdResult {
    Ok(if failed == 0 { Outcome::Complete } else { Outcome::Partial(failed) })
}

fn status(e: &Error) -> String {
    // keep the message inside one CSV field
    format!("error: {}", e.to_string().replace(',', ";"))
}

pub fn interp(a: &InterpArgs) -> CmdResult {
    check_grid(&a.common)?;
    let set = match &a.segments_file {
        Some(path) => SegmentSet::from_csv(&read(path)?, None).map_err(|e| usage(e.to_string()))?,
        None => {
            check_r(a.r)?;
            if a.family == FamilyArg::Arc {
                check_lambda(a.lambda)?;
            }
            build_set(a.family, a.r, a.lambda)?
        }
    };
    let preset = match &a.mu_file {
        // f is unknown when the averages come from a file
        Some(_) => None,
        None => Some(Preset::parse(&a.function).map_err(usage)?),
    };
    let mu = match (&a.mu_file, &preset) {
        (Some(path), _) => {
            let mu = MeasurementVector::from_csv(&read(path)?).map_err(|e| usage(e.to_string()))?;
            if mu.len() != set.len() {
                return Err(usage(format!("{} averages for {} segments", mu.len(), set.len())));
            }
            mu
        }
        (None, Some(p)) => {
            let mut cfg = p.quadrature();
            if let Some(n) = a.quad_n {
                cfg.nodes = n;
            }
            if let Some(k) = a.quad_panels {
                cfg.panels = k;
            }
            measure_with(|x| p.eval(x), &set, cfg).map_err(|e| usage(e.to_string()))?
        }
        (None, None) => unreachable!(),
    };
    let interpolant = interpolate(&set, &mu)?;
    let diag = interpolant.diagnostics();

    let xs = uniform_grid(set.interval(), a.common.grid);
    let mut csv = String::from("x,p,f\n");
    let mut max_err = 0.0f64;
    let mut curve_p = Vec::with_capacity(xs.len());
    let mut curve_f = Vec::new();
    for &x in &xs {
        let p = interpolant.eval(x);
        curve_p.push((x, p));
        match &preset {
            Some(f) => {
                let fx = f.eval(x);
                max_err = max_err.max((p - fx).abs());
                curve_f.push((x, fx));
                let _ = writeln!(csv, "{x},{p},{fx}");
            }
            None => {
                let _ = writeln!(csv, "{x},{p},");
            }
        }
    }
    let out = &a.common.out;
    write(out, "interpolant.csv", &csv)?;
    write(out, "segments.csv", &set.to_csv())?;
    write(out, "coefficients.csv", &interpolant.to_csv())?;
    if a.common.svg {
        let mut series = vec![Series { label: "p", points: curve_p }];
        if preset.is_some() {
            series.push(Series { label: "f", points: curve_f });
        }
        write(out, "interpolant.svg", &plot("segmental interpolant", &series, false))?;
    }

    print!("path={} residual={:e} cond={:e}", diag.path.name(), diag.residual_inf, diag.cond_estimate);
    if preset.is_some() {
        print!(" max_error={max_err:e}");
    }
    println!();
    if diag.warning {
        eprintln!("warning: residual {:e} is large; the set may be nearly singular", diag.residual_inf);
    }
    outcome(0)
}

/// `Lambda_{r+1}` of the nodal problem the family is compared against:
/// the chain nodes for chains, the CL nodes otherwise.
fn nodal_next(set: &SegmentSet) -> segmental::Result<f64> {
    let nodes = if set.class() == SegmentClass::Chain {
        set.chain_nodes()?
    } else {
        NodeSet::new(chebyshev_lobatto_nodes(set.len() + 1), (-1.0, 1.0))?
    };
    Ok(nodal_lebesgue_constant(&nodes).value)
}

pub fn lebesgue_sweep(a: &SweepArgs) -> CmdResult {
    check_range(&a.range)?;
    if a.family == FamilyArg::Arc {
        check_lambda(a.lambda)?;
    }
    let rows: Vec<(usize, segmental::Result<(LebesgueReport, f64)>)> = (a.range.r_min..=a.range.r_max)
        .into_par_iter()
        .map(|r| {
            let res = build_set(a.family, r, a.lambda).and_then(|set| Ok((full_report(&set)?, nodal_next(&set)?)));
            (r, res)
        })
        .collect();

    let mut report = String::from(LebesgueReport::CSV_HEADER);
    report.push('\n');
    let mut summary = String::from("r,lambda,opnorm,h,lambda_over_ln_r,nodal_next,status\n");
    let mut failed = 0;
    let (mut seg_curve, mut nodal_curve) = (Vec::new(), Vec::new());
    for (r, res) in &rows {
        match res {
            Ok((rep, nodal)) => {
                report.push_str(&rep.csv_rows());
                let ratio = if *r >= 2 { (rep.lambda_const / (*r as f64).ln()).to_string() } else { String::new() };
                let _ = writeln!(
                    summary,
                    "{r},{},{},{},{ratio},{nodal},ok",
                    rep.lambda_const, rep.op_norm, rep.fill_distance_h
                );
                seg_curve.push((*r as f64, rep.lambda_const));
                nodal_curve.push((*r as f64, *nodal));
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(summary, "{r},,,,,,{}", status(e));
                let _ = writeln!(report, "{r},,,,,error,,");
            }
        }
    }
    let out = &a.range.common.out;
    write(out, "lebesgue_report.csv", &report)?;
    write(out, "lebesgue_summary.csv", &summary)?;
    if a.range.common.svg {
        let series = [
            Series { label: "segmental", points: seg_curve },
            Series { label: "nodal, r+1 points", points: nodal_curve },
        ];
        write(out, "lebesgue.svg", &plot("Lebesgue constants", &series, true))?;
    }
    outcome(failed)
}

pub fn c2_sweep(a: &C2Args) -> CmdResult {
    check_range(&a.range)?;
    if a.lambda.is_empty() {
        return Err(usage("at least one lambda required"));
    }
    for &l in &a.lambda {
        check_lambda(l)?;
    }
    let rs: Vec<usize> = (a.range.r_min..=a.range.r_max).collect();
    let surrogate: Vec<segmental::Result<f64>> = rs
        .par_iter()
        .map(|&r| {
            let set = SegmentSet::arc_uniform_cl_midpoints(r, NODAL_SURROGATE_LAMBDA)?;
            Ok(lebesgue_constant(&set)?.value)
        })
        .collect();
    let jobs: Vec<(usize, usize)> = (0..a.lambda.len()).flat_map(|l| (0..rs.len()).map(move |k| (l, k))).collect();
    // par_iter keeps job order, which is (lambda, r)
    let values: Vec<segmental::Result<f64>> = jobs
        .par_iter()
        .map(|&(l, k)| {
            let set = SegmentSet::arc_uniform_cl_midpoints(rs[k], a.lambda[l])?;
            Ok(lebesgue_constant(&set)?.value)
        })
        .collect();

    let mut csv = String::from("lambda,r,lebesgue,nodal_surrogate,status\n");
    let mut failed = surrogate.iter().filter(|s| s.is_err()).count();
    let mut curves: Vec<Vec<(f64, f64)>> = vec![Vec::new(); a.lambda.len()];
    for (&(l, k), v) in jobs.iter().zip(&values) {
        let sur = surrogate[k].as_ref().map(|s| s.to_string()).unwrap_or_default();
        match v {
            Ok(v) => {
                let st = match &surrogate[k] {
                    Ok(_) => "ok".to_string(),
                    Err(e) => status(e),
                };
                let _ = writeln!(csv, "{},{},{v},{sur},{st}", a.lambda[l], rs[k]);
                curves[l].push((rs[k] as f64, *v));
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(csv, "{},{},,{sur},{}", a.lambda[l], rs[k], status(e));
            }
        }
    }
    let out = &a.range.common.out;
    write(out, "c2_sweep.csv", &csv)?;
    if a.range.common.svg {
        let labels: Vec<String> = a.lambda.iter().map(|l| format!("lambda = {l}")).collect();
        let mut series: Vec<Series<'_>> =
            labels.iter().zip(curves).map(|(label, points)| Series { label, points }).collect();
        let nodal: Vec<(f64, f64)> = rs
            .iter()
            .zip(&surrogate)
            .filter_map(|(&r, s)| s.as_ref().ok().map(|&v| (r as f64, v)))
            .collect();
        series.push(Series { label: "nodal limit", points: nodal });
        write(out, "c2_sweep.svg", &plot("Lebesgue constants, arc-uniform segments", &series, true))?;
    }
    outcome(failed)
}

pub fn clo_gap(a: &RangeArgs) -> CmdResult {
    check_range(a)?;
    let rows: Vec<(usize, segmental::Result<[f64; 3]>)> = (a.r_min..=a.r_max)
        .into_par_iter()
        .map(|r| {
            let res = (|| {
                let clo = SegmentSet::cl_overlapping(r)?;
                let cl = SegmentSet::chebyshev_lobatto(r)?;
                Ok([lebesgue_constant(&clo)?.value, operator_norm(&clo)?.value, operator_norm(&cl)?.value])
            })();
            (r, res)
        })
        .collect();
    let mut csv = String::from("r,lebesgue_clo,opnorm_clo,gap,opnorm_cl,status\n");
    let mut failed = 0;
    let mut gap_curve = Vec::new();
    for (r, res) in &rows {
        match res {
            Ok([lam, op, op_cl]) => {
                let gap = lam - op;
                let _ = writeln!(csv, "{r},{lam},{op},{gap},{op_cl},ok");
                gap_curve.push((*r as f64, gap));
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(csv, "{r},,,,,{}", status(e));
            }
        }
    }
    write(&a.common.out, "clo_gap.csv", &csv)?;
    if a.common.svg {
        let series = [Series { label: "Lebesgue constant minus operator norm", points: gap_curve }];
        write(&a.common.out, "clo_gap.svg", &plot("Overlapping CL segments", &series, false))?;
    }
    outcome(failed)
}

pub fn runge_demo(a: &RungeArgs) -> CmdResult {
    check_r(a.r)?;
    check_grid(&a.common)?;
    let f = Preset::Runge10;
    let fx = |x: f64| f.eval(x);
    let seg = |set: SegmentSet| -> segmental::Result<_> {
        let mu = measure_with(fx, &set, QuadratureConfig::SMOOTH)?;
        interpolate(&set, &mu)
    };
    let seg_eq = seg(SegmentSet::equidistant(a.r, -1.0, 1.0)?)?;
    let seg_cl = seg(SegmentSet::chebyshev_lobatto(a.r)?)?;
    let eq_nodes = if a.r == 1 { NodeSet::new(vec![0.0], (-1.0, 1.0))? } else { NodeSet::equidistant(a.r, -1.0, 1.0)? };
    let nodal_eq = NodalInterpolant::from_fn(eq_nodes, fx);
    let nodal_cheb = NodalInterpolant::from_fn(NodeSet::chebyshev(a.r)?, fx);

    let names = ["segmental_eq", "segmental_cl", "nodal_eq", "nodal_cheb"];
    let evals: [&dyn Fn(f64) -> f64; 4] = [
        &|x| seg_eq.eval(x),
        &|x| seg_cl.eval(x),
        &|x| nodal_eq.eval(x),
        &|x| nodal_cheb.eval(x),
    ];
    let xs = uniform_grid((-1.0, 1.0), a.common.grid);
    let mut csv = String::from("x,f,segmental_eq,segmental_cl,nodal_eq,nodal_cheb\n");
    let mut max_err = [0.0f64; 4];
    let mut curves: Vec<Vec<(f64, f64)>> = (0..5).map(|_| Vec::with_capacity(xs.len())).collect();
    for &x in &xs {
        let y = fx(x);
        let _ = write!(csv, "{x},{y}");
        curves[0].push((x, y));
        for k in 0..4 {
            let p = evals[k](x);
            max_err[k] = max_err[k].max((p - y).abs());
            curves[k + 1].push((x, p));
            let _ = write!(csv, ",{p}");
        }
        csv.push('\n');
    }
    let mut summary = String::from("curve,max_error\n");
    for (name, e) in names.iter().zip(&max_err) {
        let _ = writeln!(summary, "{name},{e}");
    }
    let out = &a.common.out;
    write(out, "curves.csv", &csv)?;
    write(out, "summary.csv", &summary)?;
    if a.common.svg {
        let labels = ["f", names[0], names[1], names[2], names[3]];
        let series: Vec<Series<'_>> = labels.iter().zip(curves).map(|(label, points)| Series { label, points }).collect();
        write(out, "runge.svg", &plot("Runge function 1/(1+10x^2)", &series, false))?;
    }
    let parts: Vec<String> = names.iter().zip(&max_err).map(|(n, e)| format!("{n}={e:.6e}")).collect();
    println!("r={} max errors: {}", a.r, parts.join(" "));
    outcome(0)
}

pub fn basis(a: &BasisArgs) -> CmdResult {
    check_r(a.r)?;
    check_grid(&a.common)?;
    if a.family == FamilyArg::Arc {
        check_lambda(a.lambda)?;
    }
    let indices: Vec<usize> = if a.index.is_empty() { (1..=a.r).collect() } else { a.index.clone() };
    if let Some(&bad) = indices.iter().find(|&&j| j == 0 || j > a.r) {
        return Err(usage(format!("basis index {bad} outside 1..={}", a.r)));
    }
    let set = build_set(a.family, a.r, a.lambda)?;
    let polys = SegmentalBasis::new(&set)?.polys(set.interval());

    let xs = uniform_grid(set.interval(), a.common.grid);
    let mut csv = String::from("x");
    for j in &indices {
        let _ = write!(csv, ",l_{j}");
    }
    csv.push('\n');
    let mut curves: Vec<Vec<(f64, f64)>> = indices.iter().map(|_| Vec::with_capacity(xs.len())).collect();
    for &x in &xs {
        let _ = write!(csv, "{x}");
        for (c, &j) in indices.iter().enumerate() {
            let v = polys[j - 1].eval(x);
            curves[c].push((x, v));
            let _ = write!(csv, ",{v}");
        }
        csv.push('\n');
    }

    // entry (i, j) is the integral of l_j over segment i
    let mut duality = String::from("i");
    for j in 1..=a.r {
        let _ = write!(duality, ",l_{j}");
    }
    duality.push('\n');
    let mut max_dev = 0.0f64;
    for (i, s) in set.segments().iter().enumerate() {
        let _ = write!(duality, "{}", i + 1);
        for (j, p) in polys.iter().enumerate() {
            let v = p.integrate(s.alpha(), s.beta());
            max_dev = max_dev.max((v - if i == j { 1.0 } else { 0.0 }).abs());
            let _ = write!(duality, ",{v}");
        }
        duality.push('\n');
    }
    let out = &a.common.out;
    write(out, "basis.csv", &csv)?;
    write(out, "duality.csv", &duality)?;
    if a.common.svg {
        let labels: Vec<String> = indices.iter().map(|j| format!("l_{j}")).collect();
        let series: Vec<Series<'_>> = labels.iter().zip(curves).map(|(label, points)| Series { label, points }).collect();
        write(out, "basis.svg", &plot("Segmental Lagrange basis", &series, false))?;
    }
    println!("integrals of l_j over s_i (rows i, columns j):");
    for line in duality.lines().skip(1) {
        let cells: Vec<String> = line.split(',').skip(1).map(|c| format!("{:>10.6}", c.parse::<f64>().unwrap_or(f64::NAN))).collect();
        println!("{}", cells.join(" "));
    }
    println!("max deviation from identity: {max_dev:e}");
    outcome(0)
}
