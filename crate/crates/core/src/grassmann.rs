//! Horizontal and isotropic subspaces of the Cartan plane.
//!
//! The central objects are the isotropic Grassmannians `I_s(C)`: the
//! `s`-dimensional subspaces that project injectively onto `L` and on which
//! `Ω` vanishes. Over a fixed shadow `Σ0 ∈ Gr(n, s)` they are the lifts
//! `Σ0^(p) = {σ + p̂(σ)}`, and `S^k L* ⊗ N` acts on them by `p ↦ p + q` with
//! stabilizer `S^k Ann(Σ0) ⊗ N`. This module builds those objects and checks
//! the structure by exact rank computations.

use crate::cartan::CartanPlane;
use crate::error::{Error, Result};
use crate::rational::{repr_vec, zeros, RatRepr, Rational};
use crate::ratlin::{RatMatrix, Subspace};
use crate::report::Checked;
use crate::rng::SeededRng;
use crate::symalg::{annihilator_power_basis, binomial, monomials, polarize_at, restriction_matrix, Context, SymPoly};
use num::Zero;
use serde::Serialize;
use std::sync::{Arc, OnceLock};

/// A subspace of the Cartan plane with lazily cached membership flags.
#[derive(Debug, Clone)]
pub struct CartanSubspace {
    plane: Arc<CartanPlane>,
    space: Subspace,
    horizontal: OnceLock<bool>,
    isotropic: OnceLock<bool>,
}

impl CartanSubspace {
    pub fn new(plane: Arc<CartanPlane>, space: Subspace) -> Result<Self> {
        if space.ambient() != plane.dim() {
            return Err(Error::DimensionMismatch {
                expected: plane.dim(),
                found: space.ambient(),
            });
        }
        Ok(CartanSubspace {
            plane,
            space,
            horizontal: OnceLock::new(),
            isotropic: OnceLock::new(),
        })
    }

    pub fn span(plane: Arc<CartanPlane>, vectors: &[Vec<Rational>]) -> Result<Self> {
        let space = Subspace::span(plane.dim(), vectors)?;
        Self::new(plane, space)
    }

    pub fn plane(&self) -> &Arc<CartanPlane> {
        &self.plane
    }

    pub fn context(&self) -> &Context {
        self.plane.context()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Echelon basis. For a horizontal subspace the pivots all sit in the
    /// `L` coordinates, so each basis vector is `(l_b, φ_b)` with the `l_b`
    /// an echelon basis of the shadow.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.space.basis()
    }

    /// Equality of subspaces by mutual containment.
    pub fn same_as(&self, other: &CartanSubspace) -> Result<bool> {
        self.space.same_as(&other.space)
    }

    /// Image under the projection `C → L`.
    pub fn shadow(&self) -> Subspace {
        let n = self.context().n;
        let vs: Vec<Vec<Rational>> = self.basis().into_iter().map(|v| v[..n].to_vec()).collect();
        Subspace::span(n, &vs).expect("truncated vectors have length n")
    }

    pub fn is_horizontal(&self) -> bool {
        *self.horizontal.get_or_init(|| self.shadow().dim() == self.dim())
    }

    pub fn is_isotropic(&self) -> bool {
        *self.isotropic.get_or_init(|| self.plane.is_isotropic_set(&self.basis()))
    }

    /// Membership in `I_s(C)`: isotropic and horizontal.
    pub fn is_integral_element(&self) -> bool {
        self.is_horizontal() && self.is_isotropic()
    }

    pub fn contains(&self, other: &CartanSubspace) -> Result<bool> {
        self.space.contains(&other.space)
    }
}

fn check_degree(ctx: &Context, p: &SymPoly, degree: usize) -> Result<()> {
    if p.n() != ctx.n || p.m() != ctx.m || p.degree() != degree {
        return Err(Error::ContextMismatch(format!(
            "expected a polynomial of degree {degree} on (n={}, m={}), got (n={}, m={}, d={})",
            ctx.n,
            ctx.m,
            p.n(),
            p.m(),
            p.degree()
        )));
    }
    Ok(())
}

/// `Σ0^(p) = {σ + p̂(σ) : σ ∈ Σ0}` for `p ∈ S^k L* ⊗ N`.
pub fn lift(plane: &Arc<CartanPlane>, sigma0: &Subspace, p: &SymPoly) -> Result<CartanSubspace> {
    let ctx = *plane.context();
    check_degree(&ctx, p, ctx.k)?;
    if sigma0.ambient() != ctx.n {
        return Err(Error::NotSubspaceOfL {
            expected: ctx.n,
            found: sigma0.ambient(),
        });
    }
    let vectors = sigma0
        .basis()
        .iter()
        .map(|l| {
            let mut v = l.clone();
            v.extend(polarize_at(p, l)?.into_coeffs());
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    CartanSubspace::span(plane.clone(), &vectors)
}

/// `L_p`, the graph of `p̂ : L → S^{k-1} L* ⊗ N`.
pub fn graph_of(plane: &Arc<CartanPlane>, p: &SymPoly) -> Result<CartanSubspace> {
    lift(plane, &Subspace::full(plane.context().n), p)
}

/// Action of `q ∈ S^k L* ⊗ N` on the fiber of `I_s(C)` over the shadow:
/// `Σ0^(p) ↦ Σ0^(p+q)`. Computed on the graph map directly, which makes it
/// independent of the fiber representative `p`.
pub fn act(sigma: &CartanSubspace, q: &SymPoly) -> Result<CartanSubspace> {
    if !sigma.is_integral_element() {
        return Err(Error::NotIntegralElement);
    }
    let ctx = *sigma.context();
    check_degree(&ctx, q, ctx.k)?;
    let vectors = sigma
        .basis()
        .into_iter()
        .map(|mut v| {
            let shift = polarize_at(q, &v[..ctx.n])?;
            for (x, d) in v[ctx.n..].iter_mut().zip(shift.coeffs()) {
                *x += d;
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    CartanSubspace::span(sigma.plane.clone(), &vectors)
}

/// Solves `q̂|_{Σ0} = graph map of Σ` for `q ∈ S^k L* ⊗ N`.
///
/// An inconsistent system for a horizontal isotropic `Σ` would contradict
/// the transitivity of the action, and is reported as [`Error::NoSolution`].
pub fn fiber_representative(sigma: &CartanSubspace) -> Result<SymPoly> {
    if !sigma.is_integral_element() {
        return Err(Error::NotIntegralElement);
    }
    let ctx = *sigma.context();
    let basis = sigma.basis();
    let shadows: Vec<Vec<Rational>> = basis.iter().map(|v| v[..ctx.n].to_vec()).collect();
    let system = restriction_matrix(&ctx, &shadows)?;
    let rhs: Vec<Rational> = basis.iter().flat_map(|v| v[ctx.n..].to_vec()).collect();
    match system.solve(&rhs)? {
        Some(q) => SymPoly::from_vector(ctx.n, ctx.m, ctx.k, q),
        None => Err(Error::NoSolution),
    }
}

/// A flag `Σ ≤ R` of integral elements with `dim R = n`.
#[derive(Debug, Clone)]
pub struct IsotropicFlag {
    small: CartanSubspace,
    big: CartanSubspace,
}

impl IsotropicFlag {
    pub fn new(small: CartanSubspace, big: CartanSubspace) -> Result<Self> {
        let n = big.context().n;
        if big.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: big.dim(),
            });
        }
        if !small.is_integral_element() || !big.is_integral_element() {
            return Err(Error::NotIntegralElement);
        }
        if !big.contains(&small)? {
            return Err(Error::Input("flag members are not nested".into()));
        }
        Ok(IsotropicFlag { small, big })
    }

    /// The flag `(Σ0^(p), L_p)`.
    pub fn from_pair(plane: &Arc<CartanPlane>, sigma0: &Subspace, p: &SymPoly) -> Result<Self> {
        Self::new(lift(plane, sigma0, p)?, graph_of(plane, p)?)
    }

    pub fn small(&self) -> &CartanSubspace {
        &self.small
    }

    pub fn big(&self) -> &CartanSubspace {
        &self.big
    }
}

/// Closed-form dimensions for `(ctx, s)`:
/// `dim I_{s,n} = s(n-s) + C(n+k-1,k)·m`,
/// `dim I_s = s(n-s) + [C(n+k-1,k) - C(n-s+k-1,k)]·m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimFormulas {
    pub grassmannian: usize,
    pub flag: usize,
    pub isotropic: usize,
    pub fiber: usize,
    pub stabilizer: usize,
}

pub fn dim_formulas(ctx: &Context, s: usize) -> DimFormulas {
    let Context { n, m, k } = *ctx;
    assert!(s <= n);
    let full = binomial(n + k - 1, k);
    let stab = if n - s == 0 { 0 } else { binomial(n - s + k - 1, k) };
    let grassmannian = s * (n - s);
    let fiber = if s == 0 { 0 } else { (full - stab) * m };
    DimFormulas {
        grassmannian,
        flag: grassmannian + full * m,
        isotropic: grassmannian + fiber,
        fiber,
        stabilizer: if s == 0 { full * m } else { stab * m },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub s: usize,
    pub dim_flag: Checked,
    pub dim_is: Checked,
    pub fiber_dim: Checked,
    pub stabilizer_dim: Checked,
}

/// Dimension report with every formula recomputed as a rank at the
/// coordinate shadow `span{e_1, …, e_s}`.
pub fn dim_report(ctx: &Context, s: usize) -> Result<DimReport> {
    if s > ctx.n {
        return Err(Error::Input(format!("s = {s} exceeds n = {}", ctx.n)));
    }
    let indices: Vec<usize> = (0..s).collect();
    dim_report_at(ctx, &Subspace::coordinate(ctx.n, &indices))
}

pub fn dim_report_at(ctx: &Context, sigma0: &Subspace) -> Result<DimReport> {
    let s = sigma0.dim();
    let f = dim_formulas(ctx, s);
    let restriction = restriction_matrix(ctx, &sigma0.basis())?;
    let fiber_rank = restriction.rank();
    let stabilizer_rank = ctx.poly_dim(ctx.k) - fiber_rank;
    // Gr(n, s) at Σ0 has tangent space Hom(Σ0, L/Σ0)
    let gr_rank = s * (ctx.n - s);
    let full = restriction_matrix(ctx, &RatMatrix::identity(ctx.n).row_vecs())?.rank();
    Ok(DimReport {
        n: ctx.n,
        m: ctx.m,
        k: ctx.k,
        s,
        dim_flag: Checked::new(f.flag, gr_rank + full),
        dim_is: Checked::new(f.isotropic, gr_rank + fiber_rank),
        fiber_dim: Checked::new(f.fiber, fiber_rank),
        stabilizer_dim: Checked::new(f.stabilizer, stabilizer_rank),
    })
}

impl DimReport {
    pub fn all_agree(&self) -> bool {
        self.dim_flag.agree && self.dim_is.agree && self.fiber_dim.agree && self.stabilizer_dim.agree
    }
}

/// Linear system whose kernel is the space of isotropic graphs over the
/// given shadow basis: unknowns `φ_1 … φ_s ∈ S^{k-1} L* ⊗ N`, one block of
/// conditions `Ω((l_a, φ_a), (l_b, φ_b)) = 0` per pair `a < b`.
pub fn isotropic_graph_system(plane: &CartanPlane, shadow_basis: &[Vec<Rational>]) -> Result<RatMatrix> {
    let ctx = *plane.context();
    let s = shadow_basis.len();
    let vdim = plane.vertical_dim();
    let odim = plane.omega_dim();
    let pairs: Vec<(usize, usize)> = (0..s).flat_map(|a| ((a + 1)..s).map(move |b| (a, b))).collect();
    let mut mat = RatMatrix::zeros(pairs.len() * odim, s * vdim);
    if ctx.k < 2 {
        return Ok(mat);
    }
    let monos = monomials(ctx.n, ctx.k - 1);
    // images of basis monomials: polarize(e_c)(l_a)
    let mut hat: Vec<Vec<SymPoly>> = Vec::with_capacity(s);
    for l in shadow_basis {
        let mut row = Vec::with_capacity(vdim);
        for sigma in &monos {
            for j in 0..ctx.m {
                row.push(polarize_at(&SymPoly::monomial(ctx.m, sigma, j), l)?);
            }
        }
        hat.push(row);
    }
    for (pi, &(a, b)) in pairs.iter().enumerate() {
        for c in 0..vdim {
            // + φ̂_b(l_a)
            for (o, x) in hat[a][c].coeffs().iter().enumerate() {
                if !x.is_zero() {
                    let cur = mat.get(pi * odim + o, b * vdim + c) + x;
                    mat.set(pi * odim + o, b * vdim + c, cur);
                }
            }
            // − φ̂_a(l_b)
            for (o, x) in hat[b][c].coeffs().iter().enumerate() {
                if !x.is_zero() {
                    let cur = mat.get(pi * odim + o, a * vdim + c) - x;
                    mat.set(pi * odim + o, a * vdim + c, cur);
                }
            }
        }
    }
    Ok(mat)
}

/// Per-sample evidence for the affine-bundle structure over one shadow.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Certificate {
    pub sample: usize,
    pub shadow_basis: Vec<Vec<RatRepr>>,
    /// kernel of `q ↦ q̂|Σ0` equals `S^k Ann(Σ0) ⊗ N`
    pub stabilizer_equal: bool,
    pub stabilizer_kernel_dim: usize,
    pub stabilizer_basis_count: usize,
    /// rank of `q ↦ q̂|Σ0`
    pub fiber_rank: usize,
    /// dimension of the space of isotropic graphs over `Σ0`, computed
    /// without reference to polynomials
    pub isotropic_graph_dim: usize,
    /// a lift of a random polynomial is recovered by `fiber_representative`
    pub lift_roundtrip: bool,
    /// a random isotropic graph over `Σ0` is some `Σ0^(q)`
    pub transitive: bool,
    /// `act(act(Σ, q1), q2) = act(Σ, q1 + q2)` and stabilizer elements act trivially
    pub action_ok: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Report {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub s: usize,
    pub seed: u64,
    pub formulas: DimFormulas,
    pub certificates: Vec<Theorem1Certificate>,
    pub failures: usize,
    pub passed: bool,
}

/// Checks stabilizer, transitivity and dimension claims on `samples`
/// seeded random shadows of dimension `s`.
pub fn verify_theorem1(ctx: &Context, s: usize, seed: u64, samples: usize) -> Result<Theorem1Report> {
    use rayon::prelude::*;
    if s == 0 || s > ctx.n {
        return Err(Error::Input(format!("need 1 <= s <= n (s = {s}, n = {})", ctx.n)));
    }
    let plane = Arc::new(CartanPlane::new(*ctx));
    let formulas = dim_formulas(ctx, s);
    let certificates = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = SeededRng::derived(seed, i as u64);
            theorem1_sample(&plane, s, i, &mut rng, &formulas)
        })
        .collect::<Result<Vec<_>>>()?;
    let failures = certificates.iter().filter(|c| !c.passed).count();
    Ok(Theorem1Report {
        n: ctx.n,
        m: ctx.m,
        k: ctx.k,
        s,
        seed,
        formulas,
        certificates,
        failures,
        passed: failures == 0,
    })
}

/// Kernel of `q ↦ q̂|Σ0` and `span(annihilator_power_basis(Σ0))`, as
/// subspaces of `S^k L* ⊗ N`.
pub fn stabilizer_spaces(ctx: &Context, sigma0: &Subspace) -> Result<(Subspace, Subspace)> {
    let dim = ctx.poly_dim(ctx.k);
    let kernel = Subspace::span(dim, &restriction_matrix(ctx, &sigma0.basis())?.kernel_basis())?;
    let ann: Vec<Vec<Rational>> = annihilator_power_basis(sigma0, ctx)?
        .into_iter()
        .map(SymPoly::into_coeffs)
        .collect();
    Ok((kernel, Subspace::span(dim, &ann)?))
}

fn theorem1_sample(
    plane: &Arc<CartanPlane>,
    s: usize,
    index: usize,
    rng: &mut SeededRng,
    formulas: &DimFormulas,
) -> Result<Theorem1Certificate> {
    let ctx = *plane.context();
    let sigma0 = rng.subspace(ctx.n, s);

    let (kernel, ann) = stabilizer_spaces(&ctx, &sigma0)?;
    let ann_count = annihilator_power_basis(&sigma0, &ctx)?.len();
    let stabilizer_equal = kernel.same_as(&ann)?;
    let fiber_rank = ctx.poly_dim(ctx.k) - kernel.dim();

    // transitivity, route 1: lifts of polynomials, given in a scrambled basis
    let p = rng.sym_poly(&ctx, ctx.k);
    let lifted = lift(plane, &sigma0, &p)?;
    let scrambled = rebase(plane, &lifted, rng)?;
    let lift_roundtrip = match fiber_representative(&scrambled) {
        Ok(q) => lift(plane, &sigma0, &q)?.same_as(&lifted)? && ann.contains_vector(q.sub(&p)?.coeffs())?,
        Err(Error::NoSolution) => false,
        Err(e) => return Err(e),
    };

    // transitivity, route 2: isotropic graphs found from Ω alone
    let shadow_basis = sigma0.basis();
    let graph_space = isotropic_graph_system(plane, &shadow_basis)?.kernel_basis();
    let isotropic_graph_dim = graph_space.len();
    let phi = rng.combination(&graph_space, s * plane.vertical_dim());
    let vdim = plane.vertical_dim();
    let vectors: Vec<Vec<Rational>> = shadow_basis
        .iter()
        .enumerate()
        .map(|(b, l)| {
            let mut v = l.clone();
            v.extend(phi[b * vdim..(b + 1) * vdim].iter().cloned());
            v
        })
        .collect();
    let graph = CartanSubspace::span(plane.clone(), &vectors)?;
    let transitive = graph.is_integral_element()
        && match fiber_representative(&graph) {
            Ok(q) => lift(plane, &sigma0, &q)?.same_as(&graph)?,
            Err(Error::NoSolution) => false,
            Err(e) => return Err(e),
        };

    // action axioms
    let q1 = rng.sym_poly(&ctx, ctx.k);
    let q2 = rng.sym_poly(&ctx, ctx.k);
    let two_steps = act(&act(&lifted, &q1)?, &q2)?;
    let one_step = act(&lifted, &q1.add(&q2)?)?;
    let stab_elem = SymPoly::from_vector(ctx.n, ctx.m, ctx.k, rng.combination(&ann.basis(), ctx.poly_dim(ctx.k)))?;
    let action_ok = two_steps.same_as(&one_step)?
        && act(&lifted, &stab_elem)?.same_as(&lifted)?
        && act(&lifted, &q1)?.same_as(&lift(plane, &sigma0, &p.add(&q1)?)?)?;

    let passed = stabilizer_equal
        && ann_count == formulas.stabilizer
        && fiber_rank == formulas.fiber
        && isotropic_graph_dim == formulas.fiber
        && lift_roundtrip
        && transitive
        && action_ok;
    Ok(Theorem1Certificate {
        sample: index,
        shadow_basis: shadow_basis.iter().map(|v| repr_vec(v)).collect(),
        stabilizer_equal,
        stabilizer_kernel_dim: kernel.dim(),
        stabilizer_basis_count: ann_count,
        fiber_rank,
        isotropic_graph_dim,
        lift_roundtrip,
        transitive,
        action_ok,
        passed,
    })
}

/// Same subspace, spanned by a random invertible recombination of its basis.
pub fn rebase(plane: &Arc<CartanPlane>, sigma: &CartanSubspace, rng: &mut SeededRng) -> Result<CartanSubspace> {
    let basis = sigma.basis();
    let mix = rng.invertible(basis.len());
    let vectors: Vec<Vec<Rational>> = (0..basis.len())
        .map(|r| {
            let mut v = zeros(plane.dim());
            for (c, b) in basis.iter().enumerate() {
                let f = mix.get(r, c);
                if !f.is_zero() {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += f * y;
                    }
                }
            }
            v
        })
        .collect();
    CartanSubspace::span(plane.clone(), &vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, unit};
    use crate::symalg::MultiIndex;

    fn plane(n: usize, m: usize, k: usize) -> Arc<CartanPlane> {
        Arc::new(CartanPlane::new(Context::new(n, m, k).unwrap()))
    }

    fn scalar(n: usize, d: usize, terms: &[(&[u32], i64)]) -> SymPoly {
        let ts: Vec<_> = terms.iter().map(|(s, c)| (MultiIndex(s.to_vec()), 0, int(*c))).collect();
        SymPoly::from_terms(n, 1, d, &ts).unwrap()
    }

    #[test]
    fn shadow_examples() {
        let c = plane(2, 1, 2);
        let p = scalar(2, 2, &[(&[1, 1], 3)]);
        assert!(graph_of(&c, &p).unwrap().shadow().same_as(&Subspace::full(2)).unwrap());
        let vert = CartanSubspace::span(c.clone(), &[unit(4, 2)]).unwrap();
        assert_eq!(vert.shadow().dim(), 0);
        // (e1, ξ¹)
        let s = CartanSubspace::span(c.clone(), &[vec![int(1), int(0), int(1), int(0)]]).unwrap();
        assert!(s.shadow().same_as(&Subspace::coordinate(2, &[0])).unwrap());
    }

    #[test]
    fn horizontal_and_isotropic_examples() {
        let c = plane(2, 1, 2);
        assert!(!CartanSubspace::span(c.clone(), &[unit(4, 3)]).unwrap().is_horizontal());
        let mixed = CartanSubspace::span(c.clone(), &[vec![int(1), int(0), int(1), int(0)], unit(4, 3)]).unwrap();
        assert!(!mixed.is_horizontal());

        let line = CartanSubspace::span(c.clone(), &[vec![int(1), int(2), int(3), int(4)]]).unwrap();
        assert!(line.is_isotropic());
        let l = CartanSubspace::span(c.clone(), &[unit(4, 0), unit(4, 1)]).unwrap();
        assert!(l.is_integral_element());
        // span{(e1, 0), (e2, ξ¹)}
        let bad = CartanSubspace::span(c.clone(), &[unit(4, 0), vec![int(0), int(1), int(1), int(0)]]).unwrap();
        assert!(bad.is_horizontal());
        assert!(!bad.is_isotropic());
    }

    #[test]
    fn graph_examples() {
        let c = plane(2, 1, 2);
        let l = CartanSubspace::span(c.clone(), &[unit(4, 0), unit(4, 1)]).unwrap();
        assert!(graph_of(&c, &SymPoly::zero(2, 1, 2)).unwrap().same_as(&l).unwrap());
        let g = graph_of(&c, &scalar(2, 2, &[(&[2, 0], 1)])).unwrap();
        let expected = CartanSubspace::span(c.clone(), &[vec![int(1), int(0), int(1), int(0)], unit(4, 1)]).unwrap();
        assert!(g.same_as(&expected).unwrap());
        assert!(g.is_integral_element());
    }

    #[test]
    fn lift_examples() {
        let c = plane(3, 1, 2);
        let s0 = Subspace::coordinate(3, &[0, 1]);
        let p = scalar(3, 2, &[(&[0, 0, 2], 1)]);
        let zero_lift = lift(&c, &s0, &SymPoly::zero(3, 1, 2)).unwrap();
        assert!(lift(&c, &s0, &p).unwrap().same_as(&zero_lift).unwrap());
        let q = scalar(3, 2, &[(&[1, 1, 0], 2), (&[0, 1, 1], -1)]);
        assert!(lift(&c, &Subspace::full(3), &q).unwrap().same_as(&graph_of(&c, &q).unwrap()).unwrap());
        let lq = lift(&c, &s0, &q).unwrap();
        assert!(graph_of(&c, &q).unwrap().contains(&lq).unwrap());
        assert!(lq.shadow().same_as(&s0).unwrap());
        assert!(lq.is_integral_element());
    }

    #[test]
    fn act_examples() {
        let c = plane(3, 1, 2);
        let s0 = Subspace::coordinate(3, &[0, 1]);
        let sigma = lift(&c, &s0, &scalar(3, 2, &[(&[1, 0, 1], 1)])).unwrap();
        assert!(act(&sigma, &SymPoly::zero(3, 1, 2)).unwrap().same_as(&sigma).unwrap());
        let stab = scalar(3, 2, &[(&[0, 0, 2], 7)]);
        assert!(act(&sigma, &stab).unwrap().same_as(&sigma).unwrap());
        let not_integral = CartanSubspace::span(c.clone(), &[unit(6, 0), vec![int(0), int(1), int(0), int(1), int(0), int(0)]]).unwrap();
        assert!(matches!(act(&not_integral, &stab), Err(Error::NotIntegralElement)));
    }

    #[test]
    fn fiber_representative_examples() {
        let c = plane(3, 1, 2);
        let s0 = Subspace::coordinate(3, &[0, 1]);
        let p = scalar(3, 2, &[(&[1, 1, 0], 1), (&[0, 0, 2], 5)]);
        let sigma = lift(&c, &s0, &p).unwrap();
        let q = fiber_representative(&sigma).unwrap();
        let (_, ann) = stabilizer_spaces(c.context(), &s0).unwrap();
        assert!(ann.contains_vector(q.sub(&p).unwrap().coeffs()).unwrap());

        let flat = lift(&c, &s0, &SymPoly::zero(3, 1, 2)).unwrap();
        assert!(lift(&c, &s0, &fiber_representative(&flat).unwrap()).unwrap().same_as(&flat).unwrap());

        let fiber = restriction_matrix(c.context(), &s0.basis()).unwrap().rank();
        assert_eq!(fiber, 5);
        assert_eq!(fiber, binomial(4, 2) - binomial(2, 2));
    }

    #[test]
    fn dim_report_examples() {
        let ctx = Context::new(3, 1, 2).unwrap();
        let r = dim_report(&ctx, 3).unwrap();
        assert_eq!(r.dim_is.formula, 6);
        assert!(r.all_agree());
        let r = dim_report(&ctx, 2).unwrap();
        assert_eq!((r.dim_is.formula, r.fiber_dim.formula), (7, 5));
        assert!(r.all_agree());
        let r = dim_report(&ctx, 0).unwrap();
        assert_eq!(r.dim_is.formula, 0);
        assert!(r.all_agree());
    }

    #[test]
    fn theorem1_small_cases() {
        let ctx = Context::new(3, 1, 2).unwrap();
        let r = verify_theorem1(&ctx, 2, 11, 5).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.certificates.iter().all(|c| c.stabilizer_kernel_dim == 1));
        let r = verify_theorem1(&ctx, 3, 11, 3).unwrap();
        assert!(r.passed);
        assert!(r.certificates.iter().all(|c| c.stabilizer_kernel_dim == 0 && c.fiber_rank == 6));
    }

    #[test]
    fn flag_requires_nesting() {
        let c = plane(2, 1, 2);
        let s0 = Subspace::coordinate(2, &[0]);
        let p = scalar(2, 2, &[(&[1, 1], 1)]);
        assert!(IsotropicFlag::from_pair(&c, &s0, &p).is_ok());
        let other = graph_of(&c, &scalar(2, 2, &[(&[2, 0], 1)])).unwrap();
        assert!(IsotropicFlag::new(lift(&c, &s0, &p).unwrap(), other).is_err());
    }
}
