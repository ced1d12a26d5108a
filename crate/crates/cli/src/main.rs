//! `stabflow`: gldim, flows, oracle checks and surface invariants from the
//! command line.
//!
//! Exit codes: 0 success, 1 oracle mismatch, 2 bad input, 3 polygon or
//! surface outside the valid region, 4 flow did not converge.

mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use stabflow_core::flow::{run_flow, FlowConfig, FlowStatus, FlowTrace};
use stabflow_core::formats::{
    parse_chart, parse_polygon, parse_surface, trace_json, CHART_SCHEMA,
};
use stabflow_core::polygon::{gldim_polygon, polygon_to_chart, random_convex_polygon};
use stabflow_core::quiver::{AnQuiver, HomDims, IntervalObject, DEFAULT_ORACLE_BOUND};
use stabflow_core::stability::{cp_pairs, hn_filtration, metric_distance, DEFAULT_CP_TOL};
use stabflow_core::suite::{closed_form_hom, run_oracle_suite};
use stabflow_core::surface::{annulus_certificate, critical_values, IndexVariant};
use stabflow_core::Error;

#[derive(Parser)]
#[command(name = "stabflow", version, about = "Stability conditions and gldim flows for A_n quivers")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One JSON document per line.
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Global dimension of a polygon or chart file, with the pairs attaining it.
    Gldim {
        file: PathBuf,
        /// Evaluate the angle formula on convex polygons outside the
        /// standard-heart chart too.
        #[arg(long)]
        any_convex: bool,
    },
    /// Run the gldim-descending flow.
    Flow(FlowArgs),
    /// Index certificate for the annulus with m and r marked points and winding w.
    Annulus {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[arg(long)]
        ceiling_indices: bool,
    },
    /// Cross-check closed forms against the matrix oracle and brute-force HN.
    OracleCheck {
        #[arg(long)]
        n: usize,
        /// Largest rank the oracle accepts.
        #[arg(long, env = "STABFLOW_ORACLE_BOUND", default_value_t = DEFAULT_ORACLE_BOUND)]
        bound: usize,
        /// Random charts per rank for the HN check.
        #[arg(long, default_value_t = 100)]
        charts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Break one Hom value on purpose (negative control).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Critical values of a graded marked surface.
    CriticalValues {
        file: PathBuf,
        /// Also count boundaries with negative winding.
        #[arg(long)]
        flag_negative_windings: bool,
    },
    /// Distance between two charts of the same rank.
    Distance { first: PathBuf, second: PathBuf },
    /// HN filtration of an interval object, given as `a,b`.
    Hn { chart: PathBuf, interval: String },
}

#[derive(Args)]
struct FlowArgs {
    /// Starting polygon; drawn at random from --seed when omitted.
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random starts, run in parallel.
    #[arg(long, default_value_t = 1)]
    batch: usize,
    /// Maximum number of accepted steps.
    #[arg(long)]
    steps: Option<usize>,
    /// Initial step size.
    #[arg(long)]
    eta: Option<f64>,
    /// Backtracking factor.
    #[arg(long)]
    shrink: Option<f64>,
    /// Plateau tolerance for convergence.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    active_tol: Option<f64>,
    /// Stop at the first step with gldim <= target.
    #[arg(long)]
    target: Option<f64>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
}

/// Exit code for an error that aborted a command.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::NonConvex
            | Error::ChartOutOfRange(_)
            | Error::NotInChart(_)
            | Error::InvalidSurface(_)
            | Error::SingularConfiguration(_),
        ) => 3,
        _ => 2,
    }
}

/// `x` to 12 significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let decimals = (11 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(format: Format, text: String, machine: Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Machine => println!("{machine}"),
    }
}

fn cmd_gldim(format: Format, file: &Path, any_convex: bool) -> Result<u8> {
    let text = read(file)?;
    let schema: Option<String> = serde_json::from_str::<Value>(&text)
        .ok()
        .and_then(|v| v.get("schema")?.as_str().map(str::to_string));
    if schema.as_deref() == Some(CHART_SCHEMA) {
        let z = parse_chart(&text)?;
        let report = cp_pairs(&z, DEFAULT_CP_TOL)?;
        let pairs: Vec<String> = report
            .pairs
            .iter()
            .map(|p| format!("{} -> {} [{}]", p.source, p.target, p.degree))
            .collect();
        emit(
            format,
            format!("{}\nattained by {}", sig12(report.gldim), pairs.join(", ")),
            json!({ "gldim": report.gldim, "pairs": pairs }),
        );
        return Ok(0);
    }
    let p = parse_polygon(&text)?;
    if !p.is_convex() {
        return Err(Error::NonConvex).context("gldim is only defined on convex polygons");
    }
    if !any_convex {
        polygon_to_chart(&p)
            .context("polygon lies outside the standard-heart chart (use --any-convex to evaluate it anyway)")?;
    }
    let g = gldim_polygon(&p)?;
    let argmax: Vec<String> = g.argmax.iter().map(|(i, j)| format!("({i},{j})")).collect();
    emit(
        format,
        format!("{}\nargmax {}", sig12(g.value), argmax.join(" ")),
        json!({ "gldim": g.value, "argmax": g.argmax }),
    );
    Ok(0)
}

/// `trace.json` becomes `trace-3.json` for run 3 of a batch.
fn indexed(path: &Path, k: usize, batch: usize) -> PathBuf {
    if batch == 1 {
        return path.to_path_buf();
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("run");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}-{k}.{ext}"),
        None => format!("{stem}-{k}"),
    };
    path.with_file_name(name)
}

fn flow_config(a: &FlowArgs) -> Result<FlowConfig> {
    let d = FlowConfig::default();
    let cfg = FlowConfig {
        initial_step: a.eta.unwrap_or(d.initial_step),
        shrink: a.shrink.unwrap_or(d.shrink),
        max_steps: a.steps.unwrap_or(d.max_steps),
        stop_tol: a.tol.unwrap_or(d.stop_tol),
        active_tol: a.active_tol.unwrap_or(d.active_tol),
        target: a.target,
        max_backtracks: d.max_backtracks,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_flow(format: Format, a: &FlowArgs) -> Result<u8> {
    let cfg = flow_config(a)?;
    if a.batch == 0 {
        bail!("--batch must be at least 1");
    }
    let (starts, seed) = match &a.file {
        Some(file) => {
            if a.batch != 1 {
                bail!("--batch needs random starts, not a polygon file");
            }
            let p = parse_polygon(&read(file)?)?;
            if !p.is_convex() {
                return Err(Error::NonConvex).context("the flow starts from a convex polygon");
            }
            (vec![p], None)
        }
        None => {
            // every start comes from one generator, drawn before the fan-out
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let starts = (0..a.batch)
                .map(|_| random_convex_polygon(a.n, &mut rng))
                .collect::<Result<Vec<_>, _>>()?;
            (starts, Some(a.seed))
        }
    };
    let traces: Vec<FlowTrace> = starts
        .par_iter()
        .map(|p| run_flow(p, &cfg))
        .collect::<Result<_, _>>()?;

    let mut code = 0;
    for (k, (start, trace)) in starts.iter().zip(&traces).enumerate() {
        let n = start.n();
        if let Some(path) = &a.trace {
            write(&indexed(path, k, a.batch), &trace_json(n, seed, &cfg, trace))?;
        }
        if let Some(path) = &a.svg {
            write(&indexed(path, k, a.batch), &svg::render_trace(&trace.records))?;
        }
        let last = &trace.records[trace.records.len() - 1];
        let gepner = (n as f64 - 1.0) / (n as f64 + 1.0);
        let status = serde_json::to_value(trace.status)?;
        let status_str = status.as_str().unwrap_or_default().to_string();
        emit(
            format,
            format!(
                "run {k}: {status_str} after {} steps, gldim {} (s={}, rank={}), |gldim - (n-1)/(n+1)| = {:.1e}",
                last.step,
                sig12(last.gldim),
                last.s,
                last.rank,
                (last.gldim - gepner).abs()
            ),
            json!({
                "run": k,
                "n": n,
                "seed": seed,
                "status": status,
                "steps": last.step,
                "gldim": last.gldim,
                "s": last.s,
                "rank": last.rank,
            }),
        );
        if matches!(trace.status, FlowStatus::MaxSteps | FlowStatus::Stalled) {
            code = 4;
        }
    }
    Ok(code)
}

fn cmd_annulus(format: Format, m: u32, r: u32, w: i64, ceiling: bool) -> Result<u8> {
    let variant = if ceiling {
        IndexVariant::Ceiling
    } else {
        IndexVariant::Floor
    };
    let c = annulus_certificate(m, r, w, variant)?;
    c.verify()?;
    let join = |xs: Vec<String>| xs.join(" ");
    let strs = |xs: &[_]| xs.iter().map(ToString::to_string).collect::<Vec<String>>();
    emit(
        format,
        format!(
            "indices {}\nphases {}\ngaps {}\ngap {}\nGd {}",
            join(strs(&c.indices)),
            join(c.phases.iter().map(ToString::to_string).collect()),
            join(c.gaps.iter().map(ToString::to_string).collect()),
            c.gap,
            c.gd
        ),
        json!({
            "m": m,
            "r": r,
            "w": w,
            "indices": c.indices,
            "phases": c.phases.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "gaps": c.gaps.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "gap": c.gap.to_string(),
            "gd": c.gd.to_string(),
        }),
    );
    Ok(0)
}

fn faulty_hom(q: AnQuiver, x: &IntervalObject, y: &IntervalObject) -> stabflow_core::Result<HomDims> {
    let d = q.hom_dim(x, y)?;
    if (x.lo, x.hi, y.lo, y.hi) == (2, 2, 1, 1) {
        return Ok(HomDims::from_module_degrees(0, 0));
    }
    Ok(d)
}

fn cmd_oracle_check(
    format: Format,
    n: usize,
    bound: usize,
    charts: usize,
    seed: u64,
    inject_fault: bool,
) -> Result<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = if inject_fault {
        run_oracle_suite(&faulty_hom, n, bound, charts, &mut rng)?
    } else {
        run_oracle_suite(&closed_form_hom, n, bound, charts, &mut rng)?
    };
    for check in &report.checks {
        let verdict = if check.passed() { "PASS" } else { "FAIL" };
        let mut text = format!(
            "{verdict} {}: {} instances, {} mismatches",
            check.name,
            check.instances,
            check.failures.len()
        );
        for f in check.failures.iter().take(5) {
            text.push_str(&format!("\n  {f}"));
        }
        emit(
            format,
            text,
            json!({
                "check": check.name,
                "passed": check.passed(),
                "instances": check.instances,
                "failures": check.failures,
            }),
        );
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_critical_values(format: Format, file: &Path, negative: bool) -> Result<u8> {
    let s = parse_surface(&read(file)?)?;
    let values: Vec<String> = critical_values(&s, negative)?
        .iter()
        .map(ToString::to_string)
        .collect();
    emit(
        format,
        format!("{{{}}}", values.join(", ")),
        json!({ "critical_values": values }),
    );
    Ok(0)
}

fn cmd_distance(format: Format, first: &Path, second: &Path) -> Result<u8> {
    let a = parse_chart(&read(first)?)?;
    let b = parse_chart(&read(second)?)?;
    let d = metric_distance(&a, &b)?;
    emit(format, sig12(d), json!({ "distance": d }));
    Ok(0)
}

fn parse_interval(s: &str) -> Result<IntervalObject> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let Some((a, b)) = inner.split_once(',') else {
        bail!("interval {s:?} should look like 1,3");
    };
    let a = a.trim().parse().with_context(|| format!("bad interval {s:?}"))?;
    let b = b.trim().parse().with_context(|| format!("bad interval {s:?}"))?;
    Ok(IntervalObject::new(a, b)?)
}

fn cmd_hn(format: Format, chart: &Path, interval: &str) -> Result<u8> {
    let z = parse_chart(&read(chart)?)?;
    let x = parse_interval(interval)?;
    let hn = hn_filtration(&z, &x)?;
    let mut text = format!(
        "{x}: {} factor(s), phase+ {}, phase- {}, mass {}",
        hn.factors.len(),
        sig12(hn.top_phase()),
        sig12(hn.bottom_phase()),
        sig12(hn.mass())
    );
    for f in &hn.factors {
        text.push_str(&format!(
            "\n  {} phase {} Z = {} + {}i",
            f.object,
            sig12(f.phase),
            sig12(f.charge.re),
            sig12(f.charge.im)
        ));
    }
    let factors: Vec<Value> = hn
        .factors
        .iter()
        .map(|f| {
            json!({
                "interval": [f.object.lo, f.object.hi],
                "phase": f.phase,
                "charge": [f.charge.re, f.charge.im],
            })
        })
        .collect();
    emit(
        format,
        text,
        json!({ "interval": [x.lo, x.hi], "factors": factors, "mass": hn.mass() }),
    );
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    let f = cli.format;
    match &cli.command {
        Command::Gldim { file, any_convex } => cmd_gldim(f, file, *any_convex),
        Command::Flow(args) => cmd_flow(f, args),
        Command::Annulus {
            m,
            r,
            w,
            ceiling_indices,
        } => cmd_annulus(f, *m, *r, *w, *ceiling_indices),
        Command::OracleCheck {
            n,
            bound,
            charts,
            seed,
            inject_fault,
        } => cmd_oracle_check(f, *n, *bound, *charts, *seed, *inject_fault),
        Command::CriticalValues {
            file,
            flag_negative_windings,
        } => cmd_critical_values(f, file, *flag_negative_windings),
        Command::Distance { first, second } => cmd_distance(f, first, second),
        Command::Hn { chart, interval } => cmd_hn(f, chart, interval),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(0.6 - 3e-14), "0.600000000000");
        assert_eq!(sig12(12.5), "12.5000000000");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn batch_paths() {
        let p = Path::new("out/trace.json");
        assert_eq!(indexed(p, 3, 1), PathBuf::from("out/trace.json"));
        assert_eq!(indexed(p, 3, 8), PathBuf::from("out/trace-3.json"));
    }

    #[test]
    fn intervals() {
        assert_eq!(parse_interval("[2, 4]").unwrap(), IntervalObject::new(2, 4).unwrap());
        assert!(parse_interval("2").is_err());
        assert!(parse_interval("3,1").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&anyhow::Error::new(Error::NonConvex)), 3);
        assert_eq!(exit_code(&anyhow::Error::new(Error::Format("x".into()))), 2);
        let wrapped = anyhow::Error::new(Error::NonConvex).context("outer");
        assert_eq!(exit_code(&wrapped), 3);
    }
}
