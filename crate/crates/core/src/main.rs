//! `jetgeom`: command-line front end.
//!
//! Exit status is 0 when every requested check passes, 1 on a verification
//! failure and 2 on malformed input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use jetgeom::cartan::CartanPlane;
use jetgeom::contactization::{contact_report, kernel_condition_check, ContactReport, KernelCheckReport};
use jetgeom::grassmann::{fiber_representative, lift, verify_theorem1, CartanSubspace, Theorem1Report};
use jetgeom::io::{parse_subspace, SubspaceOutput};
use jetgeom::pdesing::{ma_example, MaReport};
use jetgeom::polar::{dim_polar_formula, polar_plane, polar_report, sharp_target_dim, PolarReport};
use jetgeom::rational::{repr_vec, RatRepr};
use jetgeom::report::{mark, Checked};
use jetgeom::rng::SeededRng;
use jetgeom::suite::{dims_cell, run_grid, DimCell, GridBounds, GridConfig, GridReport};
use jetgeom::symalg::{Context, SymPolyRecord};
use jetgeom::Error;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "jetgeom", version, about = "Exact computations with integral elements of Cartan planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct Ctx {
    #[arg(short = 'n', default_value_t = 3)]
    n: usize,
    #[arg(short = 'm', default_value_t = 1)]
    m: usize,
    #[arg(short = 'k', default_value_t = 2)]
    k: usize,
}

impl Ctx {
    fn context(&self) -> Result<Context, Error> {
        Context::new(self.n, self.m, self.k)
    }
}

#[derive(Args, Clone, Copy)]
struct Seeded {
    /// Seed of the xoshiro256** stream
    #[arg(long, env = "JETGEOM_SEED", default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form dimensions against rank computations
    Dims {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(short = 's')]
        s: usize,
        #[command(flatten)]
        seed: Seeded,
        #[command(flatten)]
        common: Common,
    },
    /// Horizontality, isotropy and integrality of a serialized subspace
    Check {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// A polynomial whose lift over the shadow is the given integral element
    Fiber {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Stabilizer, transitivity and dimension checks over seeded shadows
    VerifyTheorem1 {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(short = 's')]
        s: usize,
        #[command(flatten)]
        seed: Seeded,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Polar plane of a serialized integral element, or of a seeded random one
    Polar {
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        ctx: Ctx,
        #[arg(short = 's', default_value_t = 1)]
        s: usize,
        #[command(flatten)]
        seed: Seeded,
        #[command(flatten)]
        common: Common,
    },
    /// Frame, brackets and change of coordinates of the polar distribution of lines
    Contactize {
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        #[arg(short = 'm', default_value_t = 1)]
        m: usize,
        /// Also compare the frame with polar planes at seeded chart points
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        seed: Seeded,
        #[command(flatten)]
        common: Common,
    },
    /// The Monge-Ampere versus quasi-linear non-equivalence argument
    MaExample {
        #[command(flatten)]
        seed: Seeded,
        /// Sampled lines of the distribution D
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The full property suite over a parameter grid
    Grid {
        #[command(flatten)]
        seed: Seeded,
        #[arg(long, env = "JETGEOM_SAMPLES", default_value_t = 100)]
        samples: usize,
        #[arg(long, env = "JETGEOM_GRID_N_MAX", default_value_t = 4)]
        n_max: usize,
        #[arg(long, env = "JETGEOM_GRID_M_MAX", default_value_t = 2)]
        m_max: usize,
        #[arg(long, env = "JETGEOM_GRID_K_MAX", default_value_t = 4)]
        k_max: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Outcome of a command: the rendered report and whether its checks passed.
struct Outcome {
    text: String,
    json: String,
    passed: bool,
}

fn outcome<T: Serialize>(report: &T, text: String, passed: bool) -> Result<Outcome, Error> {
    let json = serde_json::to_string_pretty(report).map_err(|e| Error::Input(e.to_string()))?;
    Ok(Outcome { text, json, passed })
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Input(_)
            | Error::Parse { .. }
            | Error::InvalidContext(_)
            | Error::DimensionMismatch { .. }
            | Error::ContextMismatch(_)
            | Error::NotSubspaceOfL { .. }
            | Error::UnsupportedOrder(..)
    )
}

fn line(out: &mut String, label: &str, c: &Checked) {
    let _ = writeln!(out, "{label:<22} FORMULA {:>5}  RANK {:>5}  {}", c.formula, c.rank, mark(c.agree));
}

#[derive(Serialize)]
struct DimsOutput {
    #[serde(flatten)]
    cell: DimCell,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim_polar: Option<Checked>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sharp_rank: Option<Checked>,
}

fn cmd_dims(ctx: Context, s: usize, seed: u64) -> Result<Outcome, Error> {
    if s == 0 || s > ctx.n {
        return Err(Error::Input(format!("-s must satisfy 1 <= s <= n (s = {s}, n = {})", ctx.n)));
    }
    let cell = dims_cell(&ctx, s, seed)?;
    let (dim_polar, sharp_rank) = if ctx.k >= 2 {
        let plane = Arc::new(CartanPlane::new(ctx));
        let mut rng = SeededRng::derived(seed, 0);
        let sigma = lift(&plane, &rng.subspace(ctx.n, s), &rng.sym_poly(&ctx, ctx.k))?;
        let r = polar_report(&sigma)?;
        (Some(r.polar_dim), Some(r.sharp_rank))
    } else {
        (None, None)
    };
    let out = DimsOutput { cell, dim_polar, sharp_rank };
    let r = &out.cell.report;
    let mut text = String::new();
    let _ = writeln!(text, "context n={} m={} k={} s={} seed={seed}", ctx.n, ctx.m, ctx.k, s);
    line(&mut text, "dim I_{s,n}", &r.dim_flag);
    line(&mut text, "dim I_s", &r.dim_is);
    if let Some(t) = &out.cell.tangent_rank {
        line(&mut text, "dim T I_s", t);
    }
    line(&mut text, "dim fiber", &r.fiber_dim);
    line(&mut text, "dim stabilizer", &r.stabilizer_dim);
    if let (Some(p), Some(sh)) = (&out.dim_polar, &out.sharp_rank) {
        line(&mut text, "dim P", p);
        line(&mut text, "rank sharp", sh);
    }
    let passed = out.cell.passed() && out.dim_polar.is_none_or(|c| c.agree) && out.sharp_rank.is_none_or(|c| c.agree);
    let _ = writeln!(text, "result {}", mark(passed));
    outcome(&out, text, passed)
}

#[derive(Serialize)]
struct CheckOutput {
    subspace: SubspaceOutput,
    dim: usize,
    shadow_dim: usize,
    horizontal: bool,
    isotropic: bool,
    integral_element: bool,
}

fn cmd_check(sigma: &CartanSubspace) -> Result<Outcome, Error> {
    let out = CheckOutput {
        subspace: SubspaceOutput::new(sigma),
        dim: sigma.dim(),
        shadow_dim: sigma.shadow().dim(),
        horizontal: sigma.is_horizontal(),
        isotropic: sigma.is_isotropic(),
        integral_element: sigma.is_integral_element(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "dim {}  shadow dim {}", out.dim, out.shadow_dim);
    let _ = writeln!(text, "horizontal        {}", out.horizontal);
    let _ = writeln!(text, "isotropic         {}", out.isotropic);
    let _ = writeln!(text, "integral element  {}", mark(out.integral_element));
    let passed = out.integral_element;
    outcome(&out, text, passed)
}

#[derive(Serialize)]
struct FiberOutput {
    subspace: SubspaceOutput,
    representative: Option<SymPolyRecord>,
}

fn cmd_fiber(sigma: &CartanSubspace) -> Result<Outcome, Error> {
    let rep = match fiber_representative(sigma) {
        Ok(q) => Some(q),
        Err(Error::NoSolution) | Err(Error::NotIntegralElement) => None,
        Err(e) => return Err(e),
    };
    let out = FiberOutput {
        subspace: SubspaceOutput::new(sigma),
        representative: rep.as_ref().map(SymPolyRecord::from),
    };
    let text = match &rep {
        Some(q) => format!("representative {}\n", q.to_json()),
        None => "no polynomial lifts the shadow to this subspace\nresult FAIL\n".to_string(),
    };
    outcome(&out, text, rep.is_some())
}

fn cmd_theorem1(ctx: Context, s: usize, seed: u64, samples: usize) -> Result<Outcome, Error> {
    let r: Theorem1Report = verify_theorem1(&ctx, s, seed, samples)?;
    let mut text = String::new();
    let _ = writeln!(text, "context n={} m={} k={} s={} seed={seed} samples={samples}", ctx.n, ctx.m, ctx.k, s);
    let _ = writeln!(text, "FORMULA fiber {}  stabilizer {}  dim I_s {}", r.formulas.fiber, r.formulas.stabilizer, r.formulas.isotropic);
    let count = |f: &dyn Fn(&jetgeom::grassmann::Theorem1Certificate) -> bool| r.certificates.iter().filter(|c| f(c)).count();
    let _ = writeln!(text, "stabilizer equals annihilator power  {}/{}", count(&|c| c.stabilizer_equal), samples);
    let _ = writeln!(text, "RANK fiber matches                   {}/{}", count(&|c| c.fiber_rank == r.formulas.fiber), samples);
    let _ = writeln!(text, "isotropic graphs match fiber         {}/{}", count(&|c| c.isotropic_graph_dim == r.formulas.fiber), samples);
    let _ = writeln!(text, "lift round trip                      {}/{}", count(&|c| c.lift_roundtrip), samples);
    let _ = writeln!(text, "transitivity                         {}/{}", count(&|c| c.transitive), samples);
    let _ = writeln!(text, "action                               {}/{}", count(&|c| c.action_ok), samples);
    for c in r.certificates.iter().filter(|c| !c.passed) {
        let _ = writeln!(text, "FAILED sample {}", c.sample);
    }
    let _ = writeln!(text, "result {}", mark(r.passed));
    let passed = r.passed;
    outcome(&r, text, passed)
}

#[derive(Serialize)]
struct PolarOutput {
    subspace: SubspaceOutput,
    report: PolarReport,
    /// images of the echelon basis of `Σ` for each basis vector of `P_Σ`
    polar_basis: Vec<Vec<Vec<RatRepr>>>,
}

fn cmd_polar(sigma: &CartanSubspace) -> Result<Outcome, Error> {
    if !sigma.is_integral_element() {
        return Err(Error::Input("the subspace is not an integral element".into()));
    }
    let report = polar_report(sigma)?;
    let basis = polar_plane(sigma)?;
    let out = PolarOutput {
        subspace: SubspaceOutput::new(sigma),
        polar_basis: basis.iter().map(|p| p.images().iter().map(|v| repr_vec(v)).collect()).collect(),
        report,
    };
    let r = &out.report;
    let mut text = String::new();
    let _ = writeln!(text, "context n={} m={} k={} s={}", r.n, r.m, r.k, r.s);
    line(&mut text, "dim T I_s", &r.tangent_dim);
    line(&mut text, "rank sharp", &r.sharp_rank);
    line(&mut text, "dim P", &r.polar_dim);
    let _ = writeln!(text, "sharp fully symmetric  {}", mark(r.sharp_fully_symmetric));
    let osc = if r.osculator_characterizes_polar { "agrees" } else { "differs" };
    let status = if r.k == 2 { mark(r.osculator_characterizes_polar) } else { "REPORTED" };
    let _ = writeln!(
        text,
        "osc p in orthogonal    dim {} ({osc} with P)  {status}",
        r.osculator_in_orthogonal_dim
    );
    let _ = writeln!(text, "FORMULA dim P {}  dim S^k Sigma* x N {}", dim_polar_formula(&Context::new(r.n, r.m, r.k)?, r.s), sharp_target_dim(&Context::new(r.n, r.m, r.k)?, r.s));
    let passed = r.passed();
    let _ = writeln!(text, "result {}", mark(passed));
    outcome(&out, text, passed)
}

#[derive(Serialize)]
struct ContactOutput {
    report: ContactReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<KernelCheckReport>,
}

fn cmd_contactize(n: usize, m: usize, verify: bool, samples: usize, seed: u64) -> Result<Outcome, Error> {
    let report = contact_report(n, m)?;
    let verification = if verify { Some(kernel_condition_check(n, m, seed, samples)?) } else { None };
    let mut text = String::new();
    let _ = writeln!(text, "chart n={n} m={m}");
    let _ = writeln!(text, "frame ({} fields)", report.frame.len());
    for f in &report.frame {
        let _ = writeln!(text, "  {f}");
    }
    line(&mut text, "frame size vs dim P", &report.frame_size);
    let _ = writeln!(text, "brackets");
    for b in &report.brackets {
        let _ = writeln!(text, "  {}  {}", mark(b.holds), b.identity);
    }
    let _ = writeln!(text, "pushforwards");
    for p in &report.pushforwards {
        let _ = writeln!(text, "  {}  {}", mark(p.holds), p.identity);
    }
    let mut passed = report.passed();
    if let Some(v) = &verification {
        let _ = writeln!(text, "chart points {} seed {}", v.samples, v.seed);
        let _ = writeln!(text, "  frame span equals polar plane  {}/{}", v.span_equal, v.samples);
        let _ = writeln!(text, "  kernel condition agrees        {}/{}", v.membership_agrees, v.samples);
        line(&mut text, "  dim P", &v.polar_dim);
        passed &= v.passed();
    }
    let _ = writeln!(text, "result {}", mark(passed));
    outcome(&ContactOutput { report, verification }, text, passed)
}

fn cmd_ma(seed: u64, samples: usize) -> Result<Outcome, Error> {
    let r: MaReport = ma_example(seed, 20, samples, 10)?;
    let mut text = String::new();
    let _ = writeln!(text, "equation  {} = 0", r.equation);
    let _ = writeln!(text, "control   {} = 0", r.control);
    let _ = writeln!(text, "seed {}", r.seed);
    let ok_a = r.c_family.iter().filter(|c| c.in_equation && c.symbol_vanishes).count();
    let _ = writeln!(text, "(a) (c,0,0,0) in E with zero symbol       {}/{}  {}", ok_a, r.c_family.len(), mark(r.step_a));
    let ok_b = r.lines.iter().filter(|l| l.witness_verified && l.witness_is_expected).count();
    let _ = writeln!(text, "(b) lines of D in the singularity equation {}/{}  {}", ok_b, r.lines.len(), mark(r.step_b));
    let min_lower = r.lines.iter().map(|l| l.lower_bound).min().unwrap_or(0);
    let _ = writeln!(text, "(c) restricted polar dim lower bound       >= {}  {}", min_lower, mark(r.step_c));
    let ok_d = r.controls.iter().filter(|c| c.upper_bound == Some(0)).count();
    let _ = writeln!(
        text,
        "(d) control upper bound 0                  {}/{}  {}  (characteristic directions: {})",
        ok_d,
        r.controls.len(),
        mark(r.step_d),
        r.control_shadow_count.count
    );
    let _ = writeln!(text, "verdict {}", r.verdict);
    let passed = r.passed();
    outcome(&r, text, passed)
}

fn cmd_grid(config: GridConfig) -> Result<Outcome, Error> {
    let r: GridReport = run_grid(&config)?;
    let b = &config.bounds;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "grid n={}..{} m=1..{} k={}..{} seed={} samples={}",
        b.n_min, b.n_max, b.m_max, b.k_min, b.k_max, config.seed, config.samples
    );
    let _ = writeln!(text, "{:<14} {:>6} {:>6} {:>9} {:>9} {:>6}", "cell", "I_s", "fiber", "theorem1", "polar", "P");
    for ((d, t), p) in r.dims.iter().zip(&r.theorem1).zip(&r.polar) {
        let c = &d.report;
        let _ = writeln!(
            text,
            "n{} m{} k{} s{}    {:>6} {:>6} {:>4}/{:<4} {:>4}/{:<4} {:>6}",
            c.n,
            c.m,
            c.k,
            c.s,
            c.dim_is.formula,
            c.fiber_dim.formula,
            t.samples - t.failures,
            t.samples,
            p.samples - p.failures(),
            p.samples,
            p.polar_dim_formula
        );
    }
    let g = &r.graphs;
    let _ = writeln!(text, "graphs isotropic {}/{}  non-polarizations rejected {}/{}", g.isotropic_graphs, g.samples, g.rejected, g.non_polarizations);
    for c in &r.contact {
        let _ = writeln!(text, "contact n{} m{}  identities {}  span {}/{}", c.n, c.m, mark(c.identities_hold), c.span_equal, c.points);
    }
    let _ = writeln!(text, "dims {}  theorem1 {}  polar {}  graphs {}  contact {}", mark(r.dims_passed), mark(r.theorem1_passed), mark(r.polar_passed), mark(r.graphs_passed), mark(r.contact_passed));
    let _ = writeln!(text, "result {}", mark(r.passed));
    let passed = r.passed;
    outcome(&r, text, passed)
}

fn run(command: Command) -> Result<(Outcome, Common), Error> {
    Ok(match command {
        Command::Dims { ctx, s, seed, common } => (cmd_dims(ctx.context()?, s, seed.seed)?, common),
        Command::Check { input, common } => (cmd_check(&parse_subspace(&read(&input)?)?)?, common),
        Command::Fiber { input, common } => (cmd_fiber(&parse_subspace(&read(&input)?)?)?, common),
        Command::VerifyTheorem1 { ctx, s, seed, samples, common } => {
            (cmd_theorem1(ctx.context()?, s, seed.seed, samples)?, common)
        }
        Command::Polar { input, ctx, s, seed, common } => {
            let sigma = match input {
                Some(path) => parse_subspace(&read(&path)?)?,
                None => {
                    let c = ctx.context()?;
                    if s == 0 || s > c.n {
                        return Err(Error::Input(format!("-s must satisfy 1 <= s <= n (s = {s}, n = {})", c.n)));
                    }
                    let plane = Arc::new(CartanPlane::new(c));
                    let mut rng = SeededRng::derived(seed.seed, 0);
                    lift(&plane, &rng.subspace(c.n, s), &rng.sym_poly(&c, c.k))?
                }
            };
            (cmd_polar(&sigma)?, common)
        }
        Command::Contactize { n, m, verify, samples, seed, common } => {
            (cmd_contactize(n, m, verify, samples, seed.seed)?, common)
        }
        Command::MaExample { seed, samples, common } => (cmd_ma(seed.seed, samples)?, common),
        Command::Grid { seed, samples, n_max, m_max, k_max, common } => {
            let bounds = GridBounds {
                n_max,
                m_max,
                k_max,
                ..GridBounds::default()
            };
            if n_max < bounds.n_min || m_max < 1 || k_max < bounds.k_min {
                return Err(Error::Input("grid bounds are empty".into()));
            }
            let config = GridConfig {
                bounds,
                samples,
                ..GridConfig::new(seed.seed)
            };
            (cmd_grid(config)?, common)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, common)) => {
            let body = match common.format {
                Format::Text => out.text,
                Format::Json => out.json + "\n",
            };
            match &common.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, body) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(EXIT_INPUT);
                    }
                }
                None => print!("{body}"),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_input_error(&e) { EXIT_INPUT } else { EXIT_FAIL })
        }
    }
}
