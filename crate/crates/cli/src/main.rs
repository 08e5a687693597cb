//! Command line front end for the verification toolkit.
//!
//! Exit codes: 0 when every reported check passes, 1 when any check
//! fails, 2 for usage or input errors (bad tags, unparsable files,
//! parameters outside the validity window).

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use liouville_core::analysis::{
    indicial_roots, rational_inhomogeneous_solution, SingularPoint, SolutionOutcome,
    DEFAULT_DEGREE_BOUND,
};
use liouville_core::conservation::numeric_conservation_check;
use liouville_core::families::{d3_bundle, TriangleParameters};
use liouville_core::groups::{
    binary_group, has_common_eigenvector, index_two_subgroups, is_abelian, is_cyclic,
    pgl_projection_order, GroupTag,
};
use liouville_core::rat::{parse_rat, to_f64, Rat};
use liouville_core::verify::verify_family_series;

mod input;
mod report;

use report::RunReport;

#[derive(Parser)]
#[command(
    name = "liouville",
    about = "Exact verification of Liouvillian integrability data for rational 3D vector fields"
)]
struct Cli {
    /// Emit the report as JSON {command, checks, duration_ms}.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a shipped family end to end: series identities, the
    /// rational-solution obstruction, and (for 223) the exact sheet data.
    VerifyFamily {
        /// Family tag: 233, 234, 235, 223, or 22N:<n>.
        tag: String,
        /// Expansion point, a rational "p/q" away from 0 and 1.
        #[arg(long, default_value = "1/2")]
        x0: String,
        /// Series truncation degree.
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Check omega ^ Omega = 0, d(omega) = alpha ^ omega, d(alpha) = 0
    /// for forms read from an input file.
    Check {
        /// Input file; `name = expression` per line, see README.
        path: String,
    },
    /// Report order, cyclicity, common-eigenvector status, projective
    /// order, and index-2 subgroups of a catalog group.
    GroupFacts {
        /// Group tag: C:n, D:N, 2T, 2O, or 2I.
        tag: String,
    },
    /// Indicial exponents of y'' + q y = 0 at 0, 1, infinity for a family
    /// potential, plus the rational-solution outcome for xi'' + q xi = 1.
    Indicial {
        /// Family tag: 233, 234, 235, 223, or 22N:<n>.
        tag: String,
        /// Numerator degree bound for the completeness search.
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
    },
    /// Integrate the family system numerically and report the drift of
    /// the conserved quantity y f + z f' + F.
    Conservation {
        /// Family tag: 233, 234, 235, 223, or 22N:<n>.
        tag: String,
        /// Starting point "x0,y0,z0" as rationals.
        #[arg(long, default_value = "1/2,1,0")]
        start: String,
        /// Integration time, a rational.
        #[arg(long, default_value = "3/10")]
        t_end: String,
        /// Step size, a rational.
        #[arg(long, default_value = "1/1000")]
        dt: String,
        /// Series truncation degree for the conserved quantity.
        #[arg(long, default_value_t = 40)]
        truncation: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::VerifyFamily { tag, x0, order } => cmd_verify_family(tag, x0, *order),
        Command::Check { path } => cmd_check(path),
        Command::GroupFacts { tag } => cmd_group_facts(tag),
        Command::Indicial { tag, degree_bound } => cmd_indicial(tag, *degree_bound),
        Command::Conservation {
            tag,
            start,
            t_end,
            dt,
            truncation,
        } => cmd_conservation(tag, start, t_end, dt, *truncation),
    };
    match outcome {
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Ok(mut report) => {
            report.duration_ms = started.elapsed().as_millis() as u64;
            print!("{}", report.render(cli.json));
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn family(tag: &str) -> Result<TriangleParameters, String> {
    TriangleParameters::from_tag(tag).map_err(|e| format!("bad family tag '{tag}': {e}"))
}

fn base_point(x0: &str) -> Result<Rat, String> {
    let v = parse_rat(x0)?;
    if v == Rat::from_integer(0.into()) || v == Rat::from_integer(1.into()) {
        return Err(format!("x0 = {x0} sits on a singular point of the potential"));
    }
    Ok(v)
}

fn cmd_verify_family(tag: &str, x0: &str, order: usize) -> Result<RunReport, String> {
    let params = family(tag)?;
    let base = base_point(x0)?;
    let mut report = RunReport::new(format!(
        "verify-family {tag} (x0 = {x0}, order = {order}, symmetry group: {})",
        params.group_name()
    ));
    let series = verify_family_series(&params, &base, order + 1).map_err(|e| format!("{e}"))?;
    report.absorb(series);

    let q = params.schwarz_potential();
    match rational_inhomogeneous_solution(&q, DEFAULT_DEGREE_BOUND).map_err(|e| format!("{e}"))? {
        SolutionOutcome::IndicialObstruction {
            at_zero,
            at_one,
            at_infinity,
        } => {
            let fmt_roots = |r: &liouville_core::analysis::IndicialResult| match &r.roots {
                Some((a, b)) => format!("{{{a}, {b}}}"),
                None => "irrational".to_string(),
            };
            report.push(
                "no rational solution to xi'' + q xi = 1 (indicial certificate)",
                true,
                format!(
                    "exponents {} at 0, {} at 1, {} at infinity; none is an integer",
                    fmt_roots(&at_zero),
                    fmt_roots(&at_one),
                    fmt_roots(&at_infinity)
                ),
            );
        }
        SolutionOutcome::SearchExhausted { degree_bound } => {
            report.push(
                "no rational solution to xi'' + q xi = 1 (bounded search)",
                true,
                format!("no solution with numerator degree <= {degree_bound}"),
            );
        }
        SolutionOutcome::Witness(xi) => {
            report.push(
                "no rational solution to xi'' + q xi = 1",
                false,
                format!("found xi = {xi}"),
            );
        }
    }

    if (params.m, params.n, params.p) == (2, 2, 3) {
        report.absorb(d3_bundle().verify());
    }
    Ok(report)
}

fn cmd_check(path: &str) -> Result<RunReport, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let inner = input::check_file(&text).map_err(|e| format!("{path}: {e}"))?;
    let mut report = RunReport::new(format!("check {path}"));
    report.absorb(inner);
    Ok(report)
}

fn cmd_group_facts(tag: &str) -> Result<RunReport, String> {
    let parsed: GroupTag = tag.parse().map_err(|e| format!("{e}"))?;
    let g = binary_group(parsed);
    let mut report = RunReport::new(format!("group-facts {tag}"));
    report.info("order", format!("{}", g.order()));
    report.info("projective order in PGL(2)", format!("{}", pgl_projection_order(&g)));
    report.info("cyclic", format!("{}", is_cyclic(&g)));
    report.info("abelian", format!("{}", is_abelian(&g)));
    report.info(
        "common eigenvector",
        format!("{}", has_common_eigenvector(&g)),
    );
    let subs = index_two_subgroups(&g);
    let describe = subs
        .iter()
        .map(|h| {
            let kind = if is_cyclic(h) { "cyclic" } else { "non-cyclic" };
            format!("{} ({kind})", h.order())
        })
        .collect::<Vec<_>>()
        .join(", ");
    report.info(
        "index-2 subgroups",
        if subs.is_empty() {
            "none".to_string()
        } else {
            format!("{}: orders {describe}", subs.len())
        },
    );
    report.push(
        "a common eigenvector forces cyclicity",
        !has_common_eigenvector(&g) || is_cyclic(&g),
        String::new(),
    );
    Ok(report)
}

fn cmd_indicial(tag: &str, degree_bound: usize) -> Result<RunReport, String> {
    let params = family(tag)?;
    let q = params.schwarz_potential();
    let mut report = RunReport::new(format!("indicial {tag}"));
    for point in [SingularPoint::Zero, SingularPoint::One, SingularPoint::Infinity] {
        let r = indicial_roots(&q, point).map_err(|e| format!("{e}"))?;
        let value = match &r.roots {
            Some((a, b)) => format!(
                "coefficient {}, roots {{{a}, {b}}}{}",
                r.coefficient,
                if r.has_integer_root {
                    ", integer root present"
                } else {
                    ""
                }
            ),
            None => format!("coefficient {}, irrational roots", r.coefficient),
        };
        report.info(&format!("indicial equation at {point}"), value);
    }
    match rational_inhomogeneous_solution(&q, degree_bound).map_err(|e| format!("{e}"))? {
        SolutionOutcome::IndicialObstruction { .. } => report.push(
            "obstruction verified: no rational solution to xi'' + q xi = 1",
            true,
            "indicial certificate".to_string(),
        ),
        SolutionOutcome::SearchExhausted { degree_bound } => report.push(
            "obstruction verified: no rational solution to xi'' + q xi = 1",
            true,
            format!("complete search up to numerator degree {degree_bound}"),
        ),
        SolutionOutcome::Witness(xi) => report.push(
            "obstruction verified: no rational solution to xi'' + q xi = 1",
            false,
            format!("found xi = {xi}"),
        ),
    }
    Ok(report)
}

fn cmd_conservation(
    tag: &str,
    start: &str,
    t_end: &str,
    dt: &str,
    truncation: usize,
) -> Result<RunReport, String> {
    let params = family(tag)?;
    let parts: Vec<&str> = start.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("start `{start}` must be three rationals x0,y0,z0"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| parse_rat(p).map(|r| to_f64(&r)))
        .collect::<Result<_, _>>()?;
    let t_end_v = to_f64(&parse_rat(t_end)?);
    let dt_v = to_f64(&parse_rat(dt)?);
    let out = numeric_conservation_check(
        &params,
        (nums[0], nums[1], nums[2]),
        t_end_v,
        dt_v,
        truncation,
    )
    .map_err(|e| format!("{e}"))?;
    let mut report = RunReport::new(format!(
        "conservation {tag} (start = {start}, t_end = {t_end}, dt = {dt}, N = {truncation})"
    ));
    report.info("steps", format!("{}", out.steps));
    report.info(
        "convergence window (estimated radius)",
        format!("{:.4}", out.window),
    );
    report.info("initial conserved value", format!("{:.6e}", out.initial_value));
    report.info("max drift of y f + z f' + F", format!("{:.6e}", out.max_drift));
    Ok(report)
}
