use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use gk_core::derivative::DerivativeTable;
use gk_core::fixtures::{
    max_abs_deviation, FIXTURE_DIM, FIXTURE_TOLERANCE, SUAREZ_SCHOPF_M1, SUAREZ_SCHOPF_M2,
};
use gk_core::integrate::steps_per_delay;
use gk_core::models::{resolve_model, SuarezSchopfParams, DEFAULT_ALPHA};
use gk_core::nalgebra::DMatrix;
use gk_core::quadrature::DEFAULT_ORDER;
use gk_core::reduction::uniform_theta_grid;
use gk_core::{
    assemble_matrix, compare, integrate_dde_reference, integrate_reduced, project_history,
    reconstruct_field, DDESpec, ErrorReport, GkError, HistorySegment, QuadratureRule, Trajectory,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::args::{
    check_positive, parse_dimension, parse_history, AssembleArgs, CoeffsArgs, Engine, FieldArgs,
    Format, ModelArgs, RunArgs, SimulateArgs, Variable,
};
use crate::error::CliError;
use crate::output::{write_column, write_matrix, write_reduced, write_reference, NumberFormat};

pub const QUAD_ORDER_ENV: &str = "GK_QUAD_ORDER";

fn quadrature_rule() -> Result<QuadratureRule, CliError> {
    let order = match std::env::var(QUAD_ORDER_ENV) {
        Ok(text) => text
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&m| m >= 1)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "{QUAD_ORDER_ENV} must be a positive integer, got `{text}`"
                ))
            })?,
        Err(_) => DEFAULT_ORDER,
    };
    Ok(QuadratureRule::gauss_legendre(order))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn cmd_coeffs(args: &CoeffsArgs) -> Result<(), CliError> {
    let n = parse_dimension(args.n, "--n")?;
    if n > gk_core::basis::DEFAULT_MAX_DEGREE {
        return Err(CliError::Config(format!(
            "--n = {n} exceeds the maximum degree"
        )));
    }
    let table = DerivativeTable::new(n)?;
    let nf = NumberFormat::new(args.output.digits);
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(create(path)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match args.format {
        Format::Csv => {
            for row in table.rows() {
                writeln!(sink, "{}", nf.row(row))?;
            }
        }
        Format::Json => {
            let rows: Vec<&[f64]> = table.rows().collect();
            let doc = json!({ "n": n, "rows": rows });
            serde_json::to_writer_pretty(&mut sink, &doc).map_err(io::Error::from)?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    Ok(())
}

fn resolve(model: &ModelArgs) -> Result<DDESpec, CliError> {
    model.validate()?;
    Ok(resolve_model(
        model.model_name(),
        model.tau,
        &model.options(),
    )?)
}

/// Offset added to x when reporting in the original variable.
fn variable_shift(model: &ModelArgs, variable: Variable) -> Result<f64, CliError> {
    match variable {
        Variable::Perturbed => Ok(0.0),
        Variable::Original => {
            if model.model_name() != "suarez-schopf" {
                return Err(CliError::Config(
                    "--variable original is only defined for the suarez-schopf model".into(),
                ));
            }
            let params = SuarezSchopfParams::new(
                model.alpha.unwrap_or(DEFAULT_ALPHA),
                model.tau.unwrap_or(1.0),
            )?;
            Ok(params.t_plus())
        }
    }
}

#[derive(Debug, Serialize)]
struct FixtureReport {
    fixture: &'static str,
    m1_max_abs_deviation: f64,
    m2_max_abs_deviation: f64,
    tolerance: f64,
    pass: bool,
}

pub fn cmd_assemble(args: &AssembleArgs) -> Result<(), CliError> {
    let dim = parse_dimension(args.n, "--n")?;
    let spec = resolve(&args.model)?;
    if args.fixture.is_some() && dim != FIXTURE_DIM {
        return Err(CliError::Config(format!(
            "the suarez-schopf-6d fixture needs --n {FIXTURE_DIM}, got {dim}"
        )));
    }
    let sys = assemble_matrix(&spec, dim)?;
    let nf = NumberFormat::new(args.output.digits);
    fs::create_dir_all(&args.out_dir)?;
    match args.format {
        Format::Csv => {
            for (name, m) in [("A.csv", sys.a()), ("P.csv", sys.p()), ("Q.csv", sys.q())] {
                let mut w = create(&args.out_dir.join(name))?;
                write_matrix(&mut w, m, nf)?;
                w.flush()?;
            }
            let mut w = create(&args.out_dir.join("nu.csv"))?;
            write_column(&mut w, sys.nu(), nf)?;
            w.flush()?;
        }
        Format::Json => {
            let doc = json!({
                "n": dim,
                "tau": spec.tau,
                "A": matrix_rows(sys.a()),
                "P": matrix_rows(sys.p()),
                "Q": matrix_rows(sys.q()),
                "nu": sys.nu(),
            });
            write_json(&args.out_dir.join("system.json"), &doc)?;
        }
    }
    if args.fixture.is_some() {
        let m1 = max_abs_deviation(sys.q(), &SUAREZ_SCHOPF_M1);
        let m2 = max_abs_deviation(&(sys.p() * 2.0), &SUAREZ_SCHOPF_M2);
        let report = FixtureReport {
            fixture: "suarez-schopf-6d",
            m1_max_abs_deviation: m1,
            m2_max_abs_deviation: m2,
            tolerance: FIXTURE_TOLERANCE,
            pass: m1 <= FIXTURE_TOLERANCE && m2 <= FIXTURE_TOLERANCE,
        };
        println!(
            "{}",
            serde_json::to_string(&report).map_err(io::Error::from)?
        );
        if !report.pass {
            return Err(CliError::FixtureMismatch(format!(
                "max deviations {m1:e} (M1), {m2:e} (M2) exceed {FIXTURE_TOLERANCE:e}"
            )));
        }
    }
    Ok(())
}

/// Everything a simulate/field run needs, validated up front.
struct Prepared {
    spec: DDESpec,
    history: HistorySegment,
    rule: QuadratureRule,
    h: f64,
    t_end: f64,
    shift: f64,
    nf: NumberFormat,
}

fn prepare(run: &RunArgs) -> Result<Prepared, CliError> {
    check_positive("--h", run.h)?;
    check_positive("--t-end", run.t_end)?;
    let history = parse_history(&run.history)?;
    let spec = resolve(&run.model)?;
    let shift = variable_shift(&run.model, run.variable)?;
    let rule = quadrature_rule()?;
    Ok(Prepared {
        spec,
        history,
        rule,
        h: run.h,
        t_end: run.t_end,
        shift,
        nf: NumberFormat::new(run.output.digits),
    })
}

fn run_reduced(p: &Prepared, dim: usize) -> Result<Trajectory, GkError> {
    let sys = assemble_matrix(&p.spec, dim)?;
    let y0 = project_history(&p.history, dim, p.spec.tau, &p.rule)?;
    integrate_reduced(&sys, &y0, p.t_end, p.h)
}

/// Writes a finished or partial trajectory, then maps a blow-up to exit code 3.
fn write_or_flush<F>(
    result: Result<Trajectory, GkError>,
    path: &Path,
    mut write: F,
) -> Result<Trajectory, CliError>
where
    F: FnMut(&mut BufWriter<File>, &Trajectory) -> io::Result<()>,
{
    match result {
        Ok(traj) => {
            let mut w = create(path)?;
            write(&mut w, &traj)?;
            w.flush()?;
            Ok(traj)
        }
        Err(GkError::BlowUp { time, partial }) => {
            let mut w = create(path)?;
            write(&mut w, &partial)?;
            w.flush()?;
            Err(CliError::BlowUp(format!(
                "state exceeded bounds at t = {time}; partial output in {}",
                path.display()
            )))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Serialize)]
struct SweepEntry {
    n: usize,
    #[serde(flatten)]
    report: ErrorReport,
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let p = prepare(&args.run)?;
    let sweep = match &args.sweep {
        Some(list) => {
            let mut dims = list
                .iter()
                .map(|&n| parse_dimension(n, "--sweep entry"))
                .collect::<Result<Vec<_>, _>>()?;
            dims.sort_unstable();
            dims.dedup();
            Some(dims)
        }
        None => None,
    };
    let dim = match (args.run.n, &sweep) {
        (Some(n), _) => Some(parse_dimension(n, "--n")?),
        (None, Some(_)) => None,
        (None, None) => return Err(CliError::Config("--n is required".into())),
    };
    let needs_reference = sweep.is_some() || args.engine != Engine::Reduced;
    if needs_reference {
        steps_per_delay(p.spec.tau, p.h)?;
    }
    fs::create_dir_all(&args.out_dir)?;
    let out = |name: &str| args.out_dir.join(name);

    write_json(
        &out("run.json"),
        &json!({
            "model": args.run.model.model_name(),
            "a": p.spec.a,
            "b": p.spec.b,
            "c": p.spec.c,
            "tau": p.spec.tau,
            "n": dim,
            "sweep": sweep,
            "h": p.h,
            "t_end": p.t_end,
            "history": args.run.history,
            "engine": format!("{:?}", args.engine).to_lowercase(),
            "variable": format!("{:?}", args.run.variable).to_lowercase(),
            "quadrature_order": p.rule.order(),
        }),
    )?;

    let (nf, shift) = (p.nf, p.shift);
    let reference = if needs_reference {
        Some(write_or_flush(
            integrate_dde_reference(&p.spec, &p.history, p.t_end, p.h),
            &out("reference.csv"),
            |w, t| write_reference(w, t, shift, nf),
        )?)
    } else {
        None
    };

    if let Some(dims) = sweep {
        let runs: Vec<(usize, Result<Trajectory, GkError>)> =
            dims.par_iter().map(|&n| (n, run_reduced(&p, n))).collect();
        let reference = reference
            .as_ref()
            .expect("sweep always computes the reference");
        let mut entries = Vec::new();
        let mut first_failure = None;
        for (n, result) in runs {
            match write_or_flush(result, &out(&format!("reduced_N{n}.csv")), |w, t| {
                write_reduced(w, t, shift, nf)
            }) {
                Ok(traj) => entries.push(SweepEntry {
                    n,
                    report: compare(&traj, reference)?,
                }),
                Err(e) => {
                    first_failure.get_or_insert(e);
                }
            }
        }
        write_json(&out("sweep.json"), &entries)?;
        return match first_failure {
            Some(e) => Err(e),
            None => Ok(()),
        };
    }

    let dim = dim.expect("dimension checked above");
    let reduced = if args.engine != Engine::Reference {
        Some(write_or_flush(
            run_reduced(&p, dim),
            &out("reduced.csv"),
            |w, t| write_reduced(w, t, shift, nf),
        )?)
    } else {
        None
    };
    if let (Some(reduced), Some(reference)) = (&reduced, &reference) {
        write_json(&out("report.json"), &compare(reduced, reference)?)?;
    }
    Ok(())
}

pub fn cmd_field(args: &FieldArgs) -> Result<(), CliError> {
    let p = prepare(&args.run)?;
    let dim = match args.run.n {
        Some(n) => parse_dimension(n, "--n")?,
        None => return Err(CliError::Config("--n is required".into())),
    };
    if args.every == 0 {
        return Err(CliError::Config("--every must be at least 1".into()));
    }
    let tau = p.spec.tau;
    let grid = match &args.theta {
        Some(list) => list.clone(),
        None => {
            if args.theta_points < 1 {
                return Err(CliError::Config("--theta-points must be at least 1".into()));
            }
            uniform_theta_grid(args.theta_points, tau)
        }
    };
    if let Some(&bad) = grid.iter().find(|&&t| !(t <= 0.0 && t >= -tau)) {
        return Err(CliError::Config(format!(
            "theta = {bad} lies outside [-{tau}, 0]"
        )));
    }

    let (nf, shift) = (p.nf, p.shift);
    let every = args.every;
    write_or_flush(run_reduced(&p, dim), &args.out, |w, traj| {
        writeln!(w, "t,theta,u_N")?;
        for (k, (t, y)) in traj.times().iter().zip(traj.states()).enumerate() {
            if k % every != 0 {
                continue;
            }
            let u =
                reconstruct_field(y, &grid, tau).map_err(|e| io::Error::other(e.to_string()))?;
            for (theta, value) in grid.iter().zip(u) {
                writeln!(
                    w,
                    "{},{},{}",
                    nf.fmt(*t),
                    nf.fmt(*theta),
                    nf.fmt(value + shift)
                )?;
            }
        }
        Ok(())
    })?;
    Ok(())
}
