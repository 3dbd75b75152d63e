//! The property suite over a parameter grid, as run by `jetgeom grid`.
//!
//! Cells are keyed by `(n, m, k, s)` and always emitted in sorted order, so
//! the structured report depends only on the bounds, the seed and the
//! sample counts.

use crate::cartan::CartanPlane;
use crate::contactization::{contact_report, kernel_condition_check};
use crate::error::Result;
use crate::grassmann::{dim_formulas, dim_report, graph_of, lift, verify_theorem1, DimReport};
use crate::polar::{polar_report, tangent_space_is};
use crate::rational::{unit, Rational};
use crate::ratlin::Subspace;
use crate::report::Checked;
use crate::rng::SeededRng;
use crate::symalg::{polarize, reconstruct_generator, Context, HomLS, MultiIndex, SymPoly};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

/// Inclusive parameter ranges; `s` always runs over `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridBounds {
    pub n_min: usize,
    pub n_max: usize,
    pub m_max: usize,
    pub k_min: usize,
    pub k_max: usize,
}

impl Default for GridBounds {
    fn default() -> Self {
        GridBounds {
            n_min: 2,
            n_max: 4,
            m_max: 2,
            k_min: 2,
            k_max: 4,
        }
    }
}

impl GridBounds {
    /// All `(n, m, k)` triples, sorted.
    pub fn contexts(&self) -> Vec<Context> {
        let mut out = Vec::new();
        for n in self.n_min..=self.n_max {
            for m in 1..=self.m_max {
                for k in self.k_min..=self.k_max {
                    out.push(Context { n, m, k });
                }
            }
        }
        out
    }

    /// All `(n, m, k, s)` cells with `1 <= s <= n`, sorted.
    pub fn cells(&self) -> Vec<(Context, usize)> {
        self.contexts()
            .into_iter()
            .flat_map(|c| (1..=c.n).map(move |s| (c, s)))
            .collect()
    }
}

/// Closed forms against ranks, plus `dim T_Σ I_s` at a lifted coordinate
/// shadow as an independent rank for `dim I_s`.
#[derive(Debug, Clone, Serialize)]
pub struct DimCell {
    #[serde(flatten)]
    pub report: DimReport,
    /// absent at `k = 1`, where the tangent computation is not set up
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent_rank: Option<Checked>,
}

impl DimCell {
    pub fn passed(&self) -> bool {
        self.report.all_agree() && self.tangent_rank.is_none_or(|c| c.agree)
    }
}

pub fn dims_cell(ctx: &Context, s: usize, seed: u64) -> Result<DimCell> {
    let report = dim_report(ctx, s)?;
    if ctx.k < 2 {
        return Ok(DimCell {
            report,
            tangent_rank: None,
        });
    }
    let plane = Arc::new(CartanPlane::new(*ctx));
    let mut rng = SeededRng::derived(seed, key(ctx, s));
    let sigma0 = Subspace::coordinate(ctx.n, &(0..s).collect::<Vec<_>>());
    let sigma = lift(&plane, &sigma0, &rng.sym_poly(ctx, ctx.k))?;
    let tangent = tangent_space_is(&sigma)?.len();
    Ok(DimCell {
        report,
        tangent_rank: Some(Checked::new(dim_formulas(ctx, s).isotropic, tangent)),
    })
}

fn key(ctx: &Context, s: usize) -> u64 {
    (((ctx.n * 16 + ctx.m) * 16 + ctx.k) * 16 + s) as u64
}

/// Failure counts for seeded random shadows in one cell.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Cell {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub s: usize,
    pub samples: usize,
    pub stabilizer_failures: usize,
    pub failures: usize,
    /// sample indices of failing certificates
    pub failing_samples: Vec<usize>,
}

pub fn theorem1_cell(ctx: &Context, s: usize, seed: u64, samples: usize) -> Result<Theorem1Cell> {
    let r = verify_theorem1(ctx, s, seed ^ key(ctx, s), samples)?;
    Ok(Theorem1Cell {
        n: ctx.n,
        m: ctx.m,
        k: ctx.k,
        s,
        samples,
        stabilizer_failures: r.certificates.iter().filter(|c| !c.stabilizer_equal).count(),
        failures: r.failures,
        failing_samples: r.certificates.iter().filter(|c| !c.passed).map(|c| c.sample).collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PolarCell {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub s: usize,
    pub samples: usize,
    pub sharp_target_dim: usize,
    pub polar_dim_formula: usize,
    pub tangent_failures: usize,
    pub surjectivity_failures: usize,
    pub polar_dim_failures: usize,
    pub symmetry_failures: usize,
    /// samples where `{p : osc p ⊆ Σ^⊥}` equals `P_Σ`; asserted only at `k = 2`
    pub osculator_agreements: usize,
    pub failing_samples: Vec<usize>,
}

impl PolarCell {
    pub fn failures(&self) -> usize {
        self.failing_samples.len()
    }
}

/// Polar reports at `samples` seeded integral elements `Σ0^(p)`.
pub fn polar_cell(ctx: &Context, s: usize, seed: u64, samples: usize) -> Result<PolarCell> {
    let plane = Arc::new(CartanPlane::new(*ctx));
    let cell_seed = seed ^ key(ctx, s);
    let reports = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = SeededRng::derived(cell_seed, i as u64);
            let sigma0 = rng.subspace(ctx.n, s);
            let p = rng.sym_poly(ctx, ctx.k);
            polar_report(&lift(&plane, &sigma0, &p)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let count = |f: &dyn Fn(&crate::polar::PolarReport) -> bool| reports.iter().filter(|r| f(r)).count();
    let first = reports.first();
    Ok(PolarCell {
        n: ctx.n,
        m: ctx.m,
        k: ctx.k,
        s,
        samples,
        sharp_target_dim: first.map_or(0, |r| r.sharp_rank.formula),
        polar_dim_formula: first.map_or(0, |r| r.polar_dim.formula),
        tangent_failures: count(&|r| !r.tangent_dim.agree),
        surjectivity_failures: count(&|r| !r.sharp_rank.agree),
        polar_dim_failures: count(&|r| !r.polar_dim.agree),
        symmetry_failures: count(&|r| !r.sharp_fully_symmetric),
        osculator_agreements: count(&|r| r.osculator_characterizes_polar),
        failing_samples: reports.iter().enumerate().filter(|(_, r)| !r.passed()).map(|(i, _)| i).collect(),
    })
}

/// Graph isotropy for polarizations and rejection of non-polarizations.
#[derive(Debug, Clone, Serialize)]
pub struct GraphCheck {
    pub samples: usize,
    pub isotropic_graphs: usize,
    pub generators_recovered: usize,
    pub non_polarizations: usize,
    pub rejected: usize,
    /// non-polarizations whose graph is (correctly) not isotropic
    pub non_isotropic_graphs: usize,
}

impl GraphCheck {
    pub fn passed(&self) -> bool {
        self.isotropic_graphs == self.samples
            && self.generators_recovered == self.samples
            && self.rejected == self.non_polarizations
            && self.non_isotropic_graphs == self.non_polarizations
    }
}

/// `p̂ + ε` where `ε(e_a) = c·(ξ^b)^{k-1} ⊗ y_j` for `a ≠ b`: the mixed
/// partials `∂_b h(e_a)` and `∂_a h(e_b)` then differ, so this is never a
/// polarization.
fn perturbed_polarization(ctx: &Context, rng: &mut SeededRng) -> Result<HomLS> {
    let p = rng.sym_poly(ctx, ctx.k);
    let mut h = polarize(&p)?;
    let a = rng.int_in(0, ctx.n as i64 - 1) as usize;
    let b = (a + 1 + rng.int_in(0, ctx.n as i64 - 2) as usize) % ctx.n;
    let j = rng.int_in(0, ctx.m as i64 - 1) as usize;
    let mut exps = vec![0u32; ctx.n];
    exps[b] = (ctx.k - 1) as u32;
    let eps = SymPoly::monomial(ctx.m, &MultiIndex(exps), j).scale(&rng.nonzero_rational());
    h.images[a] = h.images[a].add(&eps)?;
    Ok(h)
}

/// Sample `i` runs in the `i`-th context of the bounds, cyclically.
pub fn graph_check(bounds: &GridBounds, seed: u64, samples: usize) -> Result<GraphCheck> {
    let contexts = bounds.contexts();
    let planes: Vec<Arc<CartanPlane>> = contexts.iter().map(|c| Arc::new(CartanPlane::new(*c))).collect();
    let results = (0..samples)
        .into_par_iter()
        .map(|i| {
            let ctx = contexts[i % contexts.len()];
            let plane = &planes[i % contexts.len()];
            let mut rng = SeededRng::derived(seed ^ 0x5eed, i as u64);
            let p = rng.sym_poly(&ctx, ctx.k);
            let graph = graph_of(plane, &p)?;
            let recovered = reconstruct_generator(&polarize(&p)?)? == Some(p.clone());

            let h = perturbed_polarization(&ctx, &mut rng)?;
            let rejected = reconstruct_generator(&h)?.is_none();
            let vectors: Vec<Vec<Rational>> = (0..ctx.n)
                .map(|i| {
                    let mut v = unit(ctx.n, i);
                    v.extend(h.images[i].coeffs().iter().cloned());
                    v
                })
                .collect();
            let non_isotropic = !plane.is_isotropic_set(&vectors);
            Ok((graph.is_isotropic(), recovered, rejected, non_isotropic))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GraphCheck {
        samples,
        isotropic_graphs: results.iter().filter(|r| r.0).count(),
        generators_recovered: results.iter().filter(|r| r.1).count(),
        non_polarizations: samples,
        rejected: results.iter().filter(|r| r.2).count(),
        non_isotropic_graphs: results.iter().filter(|r| r.3).count(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ContactCell {
    pub n: usize,
    pub m: usize,
    pub identities_hold: bool,
    pub points: usize,
    pub span_equal: usize,
    pub membership_agrees: usize,
    pub polar_dim: Checked,
}

impl ContactCell {
    pub fn passed(&self) -> bool {
        self.identities_hold
            && self.span_equal == self.points
            && self.membership_agrees == self.points
            && self.polar_dim.agree
    }
}

pub fn contact_cell(n: usize, m: usize, seed: u64, points: usize) -> Result<ContactCell> {
    let identities = contact_report(n, m)?;
    let kc = kernel_condition_check(n, m, seed ^ ((n * 16 + m) as u64), points)?;
    Ok(ContactCell {
        n,
        m,
        identities_hold: identities.passed(),
        points,
        span_equal: kc.span_equal,
        membership_agrees: kc.membership_agrees,
        polar_dim: kc.polar_dim,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridConfig {
    pub bounds: GridBounds,
    pub seed: u64,
    /// random shadows / integral elements per cell
    pub samples: usize,
    /// polarizations and non-polarizations for the graph check
    pub graph_samples: usize,
    /// chart points per `(n, m)` for the contact check
    pub chart_points: usize,
}

impl GridConfig {
    pub fn new(seed: u64) -> Self {
        GridConfig {
            bounds: GridBounds::default(),
            seed,
            samples: 100,
            graph_samples: 500,
            chart_points: 50,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridReport {
    pub config: GridConfig,
    pub dims: Vec<DimCell>,
    pub theorem1: Vec<Theorem1Cell>,
    pub polar: Vec<PolarCell>,
    pub graphs: GraphCheck,
    pub contact: Vec<ContactCell>,
    pub dims_passed: bool,
    pub theorem1_passed: bool,
    pub polar_passed: bool,
    pub graphs_passed: bool,
    pub contact_passed: bool,
    pub passed: bool,
}

pub fn dims_grid(bounds: &GridBounds, seed: u64) -> Result<Vec<DimCell>> {
    bounds.cells().par_iter().map(|(c, s)| dims_cell(c, *s, seed)).collect()
}

pub fn theorem1_grid(bounds: &GridBounds, seed: u64, samples: usize) -> Result<Vec<Theorem1Cell>> {
    bounds.cells().iter().map(|(c, s)| theorem1_cell(c, *s, seed, samples)).collect()
}

pub fn polar_grid(bounds: &GridBounds, seed: u64, samples: usize) -> Result<Vec<PolarCell>> {
    bounds.cells().iter().map(|(c, s)| polar_cell(c, *s, seed, samples)).collect()
}

/// Contact checks over `n ∈ 2..=n_max`, `m ∈ 1..=m_max`; the `k` bounds do
/// not apply since the chart picture is specific to `k = 2`.
pub fn contact_grid(bounds: &GridBounds, seed: u64, points: usize) -> Result<Vec<ContactCell>> {
    let mut out = Vec::new();
    for n in bounds.n_min.max(2)..=bounds.n_max {
        for m in 1..=bounds.m_max {
            out.push(contact_cell(n, m, seed, points)?);
        }
    }
    Ok(out)
}

pub fn run_grid(config: &GridConfig) -> Result<GridReport> {
    let b = &config.bounds;
    let dims = dims_grid(b, config.seed)?;
    let theorem1 = theorem1_grid(b, config.seed, config.samples)?;
    let polar = polar_grid(b, config.seed, config.samples)?;
    let graphs = graph_check(b, config.seed, config.graph_samples)?;
    let contact = contact_grid(b, config.seed, config.chart_points)?;
    let dims_passed = dims.iter().all(DimCell::passed);
    let theorem1_passed = theorem1.iter().all(|c| c.failures == 0);
    let polar_passed = polar.iter().all(|c| c.failures() == 0);
    let graphs_passed = graphs.passed();
    let contact_passed = contact.iter().all(ContactCell::passed);
    Ok(GridReport {
        config: *config,
        dims,
        theorem1,
        polar,
        graphs,
        contact,
        dims_passed,
        theorem1_passed,
        polar_passed,
        graphs_passed,
        contact_passed,
        passed: dims_passed && theorem1_passed && polar_passed && graphs_passed && contact_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> GridBounds {
        GridBounds {
            n_min: 2,
            n_max: 3,
            m_max: 1,
            k_min: 2,
            k_max: 3,
        }
    }

    #[test]
    fn cells_are_sorted_and_complete() {
        let cells = GridBounds::default().cells();
        assert_eq!(cells.len(), (2 + 3 + 4) * 2 * 3);
        let keys: Vec<u64> = cells.iter().map(|(c, s)| key(c, *s)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn small_grid_passes() {
        let config = GridConfig {
            bounds: small(),
            seed: 3,
            samples: 3,
            graph_samples: 20,
            chart_points: 3,
        };
        let r = run_grid(&config).unwrap();
        assert!(r.passed, "{r:#?}");
    }
}
