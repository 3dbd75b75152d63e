//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Built with `harness = false` so the lines come out in order.

use jetgeom::cartan::CartanPlane;
use jetgeom::grassmann::{dim_report, lift};
use jetgeom::pdesing::{ma_example, NOT_CONTACT_EQUIVALENT};
use jetgeom::polar::polar_report;
use jetgeom::ratlin::Subspace;
use jetgeom::rng::SeededRng;
use jetgeom::suite::{
    contact_grid, dims_grid, graph_check, polar_grid, theorem1_grid, DimCell, GridBounds, GridConfig,
};
use jetgeom::symalg::Context;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

const SEED: u64 = 20240607;
const SAMPLES: usize = 100;

type Criterion = (&'static str, fn() -> jetgeom::Result<Outcome>, Option<Duration>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn timed(f: impl FnOnce() -> jetgeom::Result<Outcome>) -> (Outcome, Duration) {
    let start = Instant::now();
    let out = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
    (out, start.elapsed())
}

fn dimension_grid() -> jetgeom::Result<Outcome> {
    let cells = dims_grid(&GridBounds::default(), SEED)?;
    let bad = cells.iter().filter(|c| !c.passed()).count();
    let fiber_ok = cells.iter().all(|c: &DimCell| c.report.fiber_dim.agree && c.report.dim_is.agree);
    Ok(outcome(bad == 0 && fiber_ok && cells.len() == 54, format!("{} cells, {bad} mismatches", cells.len())))
}

fn stabilizer() -> jetgeom::Result<Outcome> {
    let cells = theorem1_grid(&GridBounds::default(), SEED, SAMPLES)?;
    let failures: usize = cells.iter().map(|c| c.failures).sum();
    let all_sampled = cells.iter().all(|c| c.samples == SAMPLES);
    Ok(outcome(
        failures == 0 && all_sampled,
        format!("{} cells x {SAMPLES} shadows, {failures} failures", cells.len()),
    ))
}

fn worked_example() -> jetgeom::Result<Outcome> {
    let ctx = Context::new(3, 1, 2)?;
    let i3 = dim_report(&ctx, 3)?;
    let i2 = dim_report(&ctx, 2)?;
    let plane = Arc::new(CartanPlane::new(ctx));
    let mut rng = SeededRng::new(SEED);
    let sigma = lift(&plane, &Subspace::coordinate(3, &[0, 1]), &rng.sym_poly(&ctx, 2))?;
    let polar = polar_report(&sigma)?;
    let ok = i3.dim_is.rank == 6
        && i3.dim_is.agree
        && i2.dim_is.rank == 7
        && i2.dim_is.agree
        && polar.polar_dim.rank == 4
        && polar.sharp_rank.rank == 3
        && polar.sharp_rank.formula == 3
        && polar.passed();
    Ok(outcome(
        ok,
        format!(
            "dim I3 {}, dim I2 {}, dim P {}, rank sharp {}",
            i3.dim_is.rank, i2.dim_is.rank, polar.polar_dim.rank, polar.sharp_rank.rank
        ),
    ))
}

fn polar_formula() -> jetgeom::Result<Outcome> {
    let cells = polar_grid(&GridBounds::default(), SEED, SAMPLES)?;
    let failures: usize = cells.iter().map(|c| c.failures()).sum();
    let surj: usize = cells.iter().map(|c| c.surjectivity_failures + c.polar_dim_failures).sum();
    Ok(outcome(
        failures == 0 && surj == 0,
        format!("{} cells x {SAMPLES} elements, {failures} failures", cells.len()),
    ))
}

fn graphs() -> jetgeom::Result<Outcome> {
    let g = graph_check(&GridBounds::default(), SEED, 500)?;
    Ok(outcome(
        g.passed() && g.samples == 500,
        format!(
            "{} isotropic graphs, {}/{} non-polarizations rejected",
            g.isotropic_graphs, g.rejected, g.non_polarizations
        ),
    ))
}

fn contact() -> jetgeom::Result<Outcome> {
    let cells = contact_grid(&GridBounds::default(), SEED, 50)?;
    let bad = cells.iter().filter(|c| !c.passed()).count();
    Ok(outcome(
        bad == 0 && cells.len() == 6,
        format!("{} (n, m) pairs x 50 chart points, {bad} failures", cells.len()),
    ))
}

fn monge_ampere() -> jetgeom::Result<Outcome> {
    let r = ma_example(SEED, 20, 50, 10)?;
    let ok = r.passed()
        && r.c_family.len() == 20
        && r.lines.len() == 50
        && r.verdict == NOT_CONTACT_EQUIVALENT;
    Ok(outcome(ok, format!("steps a-d {}, verdict {}", r.passed(), r.verdict)))
}

fn library_reports() -> jetgeom::Result<String> {
    let bounds = GridBounds {
        n_max: 3,
        k_max: 3,
        ..GridBounds::default()
    };
    let config = GridConfig {
        bounds,
        samples: 5,
        graph_samples: 20,
        chart_points: 5,
        ..GridConfig::new(SEED)
    };
    let grid = jetgeom::suite::run_grid(&config)?;
    let ma = ma_example(SEED, 20, 50, 10)?;
    Ok(serde_json::to_string(&grid).expect("serializable") + &serde_json::to_string(&ma).expect("serializable"))
}

fn cli_report(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_jetgeom"))
        .args(args)
        .env_remove("JETGEOM_SEED")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?} failed");
    out.stdout
}

fn determinism() -> jetgeom::Result<Outcome> {
    let lib = library_reports()? == library_reports()?;
    let seed = SEED.to_string();
    let commands: [&[&str]; 3] = [
        &["ma-example", "--format", "json", "--seed", &seed],
        &["polar", "-n", "4", "-m", "2", "-k", "3", "-s", "2", "--format", "json", "--seed", &seed],
        &["grid", "--samples", "3", "--n-max", "3", "--k-max", "3", "--format", "json", "--seed", &seed],
    ];
    let cli = commands.iter().all(|args| cli_report(args) == cli_report(args));
    Ok(outcome(lib && cli, format!("library reports identical: {lib}, cli reports identical: {cli}")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("dimension formulas", dimension_grid, Some(Duration::from_secs(60))),
        ("stabilizer equality", stabilizer, None),
        ("n=3 k=2 m=1 worked example", worked_example, None),
        ("polar dimension formula", polar_formula, None),
        ("graph isotropy", graphs, None),
        ("polar frame identities", contact, None),
        ("Monge-Ampere singularity example", monge_ampere, Some(Duration::from_secs(30))),
        ("determinism", determinism, None),
    ];
    let mut all = true;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let (out, elapsed) = timed(run);
        let in_time = budget.is_none_or(|b| elapsed < b);
        let passed = out.passed && in_time;
        all &= passed;
        let budget_note = budget.map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()));
        println!(
            "criterion {} {:<34} {}  {}; {:.2}s{budget_note}",
            i + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
