//! Third-order scalar equations in two independent variables at a fixed
//! second-order jet: symbols, characteristic lines and the first-order
//! singularity equation.
//!
//! The ambient Cartan plane is the `(n, m, k) = (2, 1, 3)` one, i.e.
//! `C = L ⊕ S²L*`. The jet vertical vector `∂_{u_σ}` is identified with the
//! divided power `ξ^σ / σ!`; with this identification the tangent planes of
//! jet lifts are exactly the `Ω`-isotropic horizontal planes.
//!
//! A horizontal line with shadow `(l_x, l_y)` is characteristic for a
//! symbol `q(dx, dy)` when its annihilating covector is a root, that is
//! `q(l_y, −l_x) = 0`.

use crate::cartan::CartanPlane;
use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::grassmann::CartanSubspace;
use crate::mpoly::Poly;
use crate::polar::{in_polar_plane, TangentHom};
use crate::rational::{int, rat, repr_vec, zero, zeros, RatRepr, Rational};
use crate::ratlin::RatMatrix;
use crate::rng::SeededRng;
use crate::symalg::Context;
use crate::univar::{RealRoot, RealRootRecord, UniPoly};
use num::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Fiber coordinates in their fixed order.
pub const FIBER_VARS: [&str; 4] = ["u_xxx", "u_xxy", "u_xyy", "u_yyy"];

/// Largest eliminant degree handled before giving up with `Undecided`.
pub const DEGREE_BUDGET: usize = 64;

/// The Monge-Ampere type equation used by `ma-example`.
pub const MONGE_AMPERE: &str = "u_xxy*u_yyy - u_xyy^2";

/// The quasi-linear control equation.
pub const QUASI_LINEAR_CONTROL: &str = "u_xxx + u_yyy";

/// A point `(u_xxx, u_xxy, u_xyy, u_yyy)` of the third-order fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberPoint3(pub [Rational; 4]);

impl FiberPoint3 {
    pub fn zero() -> Self {
        FiberPoint3([zero(), zero(), zero(), zero()])
    }

    pub fn from_slice(v: &[Rational]) -> Result<Self> {
        let arr: [Rational; 4] = v.to_vec().try_into().map_err(|v: Vec<Rational>| Error::DimensionMismatch {
            expected: 4,
            found: v.len(),
        })?;
        Ok(FiberPoint3(arr))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn record(&self) -> Vec<RatRepr> {
        repr_vec(&self.0)
    }
}

impl fmt::Display for FiberPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// A polynomial equation `F = 0` in the fiber coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pde3 {
    source: String,
    poly: Poly,
}

impl Pde3 {
    pub fn parse(source: &str) -> Result<Self> {
        let poly = parse_poly(source, &FIBER_VARS)?;
        if poly.is_zero() {
            return Err(Error::Input("the equation is identically zero".into()));
        }
        Ok(Pde3 {
            source: source.trim().to_string(),
            poly,
        })
    }

    pub fn monge_ampere() -> Self {
        Pde3::parse(MONGE_AMPERE).expect("built-in equation parses")
    }

    pub fn quasi_linear_control() -> Self {
        Pde3::parse(QUASI_LINEAR_CONTROL).expect("built-in equation parses")
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Affine in the fiber coordinates.
    pub fn is_quasi_linear(&self) -> bool {
        self.poly.total_degree().unwrap_or(0) <= 1
    }

    pub fn eval(&self, t: &FiberPoint3) -> Rational {
        self.poly.evaluate(&t.0)
    }

    /// `∂F/∂u_σ` for the `i`-th fiber coordinate.
    pub fn partial(&self, i: usize) -> Poly {
        self.poly.derivative(i)
    }
}

/// `c₀ dx³ + c₁ dx²dy + c₂ dx dy² + c₃ dy³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCubic(pub [Rational; 4]);

impl BinaryCubic {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, dx: &Rational, dy: &Rational) -> Rational {
        &self.0[0] * dx * dx * dx + &self.0[1] * dx * dx * dy + &self.0[2] * dx * dy * dy + &self.0[3] * dy * dy * dy
    }

    /// `q(t, 1)`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(vec![self.0[3].clone(), self.0[2].clone(), self.0[1].clone(), self.0[0].clone()])
    }

    pub fn record(&self) -> Vec<RatRepr> {
        repr_vec(&self.0)
    }
}

impl fmt::Display for BinaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const MONOS: [&str; 4] = ["dx^3", "dx^2*dy", "dx*dy^2", "dy^3"];
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(MONOS)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| format!("({c})*{m}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `∂F/∂u_σ` at `θ̃`, with `u_xxx ↦ dx³`, `u_xxy ↦ dx²dy`, `u_xyy ↦ dx dy²`,
/// `u_yyy ↦ dy³`.
pub fn symbol_at(f: &Pde3, t: &FiberPoint3) -> BinaryCubic {
    BinaryCubic(std::array::from_fn(|i| f.partial(i).evaluate(&t.0)))
}

/// Projective root `(dx : dy)` of a binary cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectiveRoot {
    /// `(1 : 0)`
    AtInfinity,
    /// `(t : 1)` with `t` exact or isolated
    Affine(RealRoot),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShadowCount {
    /// zero symbol: every direction is characteristic
    Infinite,
    Finite(Vec<ProjectiveRoot>),
}

impl ShadowCount {
    pub fn count(&self) -> Option<usize> {
        match self {
            ShadowCount::Infinite => None,
            ShadowCount::Finite(r) => Some(r.len()),
        }
    }

    pub fn record(&self) -> ShadowCountRecord {
        match self {
            ShadowCount::Infinite => ShadowCountRecord {
                count: "INFINITE".into(),
                at_infinity: false,
                affine_roots: Vec::new(),
            },
            ShadowCount::Finite(roots) => ShadowCountRecord {
                count: roots.len().to_string(),
                at_infinity: roots.contains(&ProjectiveRoot::AtInfinity),
                affine_roots: roots
                    .iter()
                    .filter_map(|r| match r {
                        ProjectiveRoot::Affine(x) => Some(x.record()),
                        ProjectiveRoot::AtInfinity => None,
                    })
                    .collect(),
            },
        }
    }
}

/// `count` is a number or `INFINITE`; affine roots are values of `dx/dy`.
#[derive(Debug, Clone, Serialize)]
pub struct ShadowCountRecord {
    pub count: String,
    pub at_infinity: bool,
    pub affine_roots: Vec<RealRootRecord>,
}

/// Distinct real projective roots of `q`.
pub fn characteristic_shadow_count(q: &BinaryCubic) -> Result<ShadowCount> {
    if q.is_zero() {
        return Ok(ShadowCount::Infinite);
    }
    let mut roots = Vec::new();
    if q.0[0].is_zero() {
        roots.push(ProjectiveRoot::AtInfinity);
    }
    let affine = q.dehomogenize();
    if affine.degree().unwrap_or(0) > 0 {
        roots.extend(affine.real_roots()?.into_iter().map(ProjectiveRoot::Affine));
    }
    Ok(ShadowCount::Finite(roots))
}

/// The Cartan plane `L ⊕ S²L*` shared by all lines and jet planes here.
pub fn pde_plane() -> Arc<CartanPlane> {
    static PLANE: OnceLock<Arc<CartanPlane>> = OnceLock::new();
    PLANE
        .get_or_init(|| Arc::new(CartanPlane::new(Context::new(2, 1, 3).expect("valid context"))))
        .clone()
}

/// `l_x D_1 + l_y D_2 + c_xx ∂_{u_xx} + c_xy ∂_{u_xy} + c_yy ∂_{u_yy}` in
/// Cartan coordinates.
pub fn cartan_vector(lx: &Rational, ly: &Rational, vertical: [&Rational; 3]) -> Vec<Rational> {
    let half = rat(1, 2);
    vec![
        lx.clone(),
        ly.clone(),
        vertical[0] * &half,
        vertical[1].clone(),
        vertical[2] * &half,
    ]
}

/// The line spanned by [`cartan_vector`].
pub fn pde_line(lx: &Rational, ly: &Rational, vertical: [&Rational; 3]) -> Result<CartanSubspace> {
    CartanSubspace::span(pde_plane(), &[cartan_vector(lx, ly, vertical)])
}

fn jet_rows(t: &FiberPoint3) -> [Vec<Rational>; 2] {
    let [a, b, c, e] = &t.0;
    [
        cartan_vector(&int(1), &zero(), [a, b, c]),
        cartan_vector(&zero(), &int(1), [b, c, e]),
    ]
}

/// `L_θ̃ = span{D_1 + θ̃_{σ+x} ∂_{u_σ}, D_2 + θ̃_{σ+y} ∂_{u_σ}}`.
pub fn jet_plane(t: &FiberPoint3) -> CartanSubspace {
    CartanSubspace::span(pde_plane(), &jet_rows(t)).expect("rows have the plane's length")
}

fn check_line(sigma: &CartanSubspace) -> Result<()> {
    if sigma.context() != pde_plane().context() {
        return Err(Error::ContextMismatch("expected a line in the (n=2, m=1, k=3) Cartan plane".into()));
    }
    if sigma.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: sigma.dim(),
        });
    }
    if !sigma.is_horizontal() {
        return Err(Error::NotHorizontal);
    }
    Ok(())
}

/// `(l_x, l_y)` of the echelon generator.
pub fn shadow_of(sigma: &CartanSubspace) -> (Rational, Rational) {
    let v = &sigma.basis()[0];
    (v[0].clone(), v[1].clone())
}

/// The characteristic test for a line with shadow `(l_x, l_y)`.
pub fn is_characteristic(q: &BinaryCubic, lx: &Rational, ly: &Rational) -> bool {
    q.eval(ly, &-lx.clone()).is_zero()
}

/// The affine line `{base + t·direction}` of fiber points whose jet plane
/// contains a given horizontal line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentFamily {
    pub base: FiberPoint3,
    pub direction: FiberPoint3,
}

impl ContainmentFamily {
    pub fn at(&self, t: &Rational) -> FiberPoint3 {
        FiberPoint3(std::array::from_fn(|i| &self.base.0[i] + t * &self.direction.0[i]))
    }

    /// Each fiber coordinate as a polynomial in `t`.
    fn as_polys(&self) -> Vec<Poly> {
        (0..4)
            .map(|i| {
                Poly::constant(1, self.base.0[i].clone()).add(&Poly::var(1, 0).scale(&self.direction.0[i]))
            })
            .collect()
    }
}

/// Solves `Σ ⊆ L_θ̃`: three linear conditions on `θ̃`, so a one-parameter
/// family for every horizontal line.
pub fn containment_family(sigma: &CartanSubspace) -> Result<ContainmentFamily> {
    check_line(sigma)?;
    let v = &sigma.basis()[0];
    let (lx, ly) = (&v[0], &v[1]);
    let half = rat(1, 2);
    let (hx, hy) = (lx * &half, ly * &half);
    let z = zero;
    let a = RatMatrix::from_rows(
        4,
        vec![
            vec![hx.clone(), hy.clone(), z(), z()],
            vec![z(), lx.clone(), ly.clone(), z()],
            vec![z(), z(), hx, hy],
        ],
    )?;
    let b = vec![v[2].clone(), v[3].clone(), v[4].clone()];
    let base = a.solve(&b)?.ok_or(Error::NoSolution)?;
    let kernel = a.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::InvalidContext("containment conditions do not have rank three".into()));
    }
    Ok(ContainmentFamily {
        base: FiberPoint3::from_slice(&base)?,
        direction: FiberPoint3::from_slice(&kernel[0])?,
    })
}

fn to_univariate(p: &Poly) -> UniPoly {
    let deg = p.total_degree().unwrap_or(0);
    let mut coeffs = zeros(deg + 1);
    for (e, c) in p.terms() {
        coeffs[e[0] as usize] += c;
    }
    UniPoly::new(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// an exact point of the equation whose jet plane contains the line and
    /// for which the line is characteristic
    Member(FiberPoint3),
    /// such points exist only at irrational parameters of the family
    MemberAtIrrational {
        family: ContainmentFamily,
        roots: Vec<RealRoot>,
    },
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        !matches!(self, Membership::NotMember)
    }

    pub fn witness(&self) -> Option<&FiberPoint3> {
        match self {
            Membership::Member(w) => Some(w),
            _ => None,
        }
    }
}

/// Membership of `Σ` in the first-order singularity equation of `F`.
///
/// On the containment family both `F(θ̃(t))` and the characteristic
/// condition are polynomials in `t`; their gcd is the eliminant.
pub fn singular_membership(sigma: &CartanSubspace, f: &Pde3) -> Result<Membership> {
    let family = containment_family(sigma)?;
    let (lx, ly) = shadow_of(sigma);
    let subst = family.as_polys();
    let eq = to_univariate(&f.poly.substitute(&subst)?);
    let (dx, dy) = (ly, -lx);
    let weights = [
        &dx * &dx * &dx,
        &dx * &dx * &dy,
        &dx * &dy * &dy,
        &dy * &dy * &dy,
    ];
    let mut sym = UniPoly::zero();
    for (i, w) in weights.iter().enumerate() {
        if !w.is_zero() {
            sym = sym.add(&to_univariate(&f.partial(i).substitute(&subst)?).scale(w));
        }
    }
    for p in [&eq, &sym] {
        if p.degree().unwrap_or(0) > DEGREE_BUDGET {
            return Err(Error::Undecided(format!(
                "eliminant of degree {} exceeds the budget {DEGREE_BUDGET}",
                p.degree().unwrap_or(0)
            )));
        }
    }
    let g = eq.gcd(&sym);
    if g.is_zero() {
        return Ok(Membership::Member(family.base.clone()));
    }
    if g.degree() == Some(0) {
        return Ok(Membership::NotMember);
    }
    let roots = g.real_roots()?;
    if let Some(r) = roots.iter().find_map(RealRoot::exact) {
        return Ok(Membership::Member(family.at(r)));
    }
    if roots.is_empty() {
        Ok(Membership::NotMember)
    } else {
        Ok(Membership::MemberAtIrrational { family, roots })
    }
}

/// Re-checks `F(θ̃) = 0`, `Σ ⊆ L_θ̃` and the characteristic condition.
pub fn verify_witness(sigma: &CartanSubspace, f: &Pde3, t: &FiberPoint3) -> Result<bool> {
    check_line(sigma)?;
    let (lx, ly) = shadow_of(sigma);
    Ok(f.eval(t).is_zero()
        && jet_plane(t).contains(sigma)?
        && is_characteristic(&symbol_at(f, t), &lx, &ly))
}

/// Bounds on the dimension of the polar distribution restricted to the
/// singularity equation, at one member line.
#[derive(Debug, Clone, Serialize)]
pub struct PolarBounds {
    /// 1 when the pencil of lines in `L_θ̃` through `Σ` stays in the
    /// singularity equation identically and is tangent to the polar plane
    pub lower_bound: usize,
    /// 0 for a quasi-linear equation with nonzero (hence constant) symbol
    pub upper_bound: Option<usize>,
    pub pencil_in_equation: bool,
    pub pencil_tangent_to_polar: bool,
}

pub fn polar_dim_on_singularity(f: &Pde3, sigma: &CartanSubspace, t: &FiberPoint3) -> Result<PolarBounds> {
    if !verify_witness(sigma, f, t)? {
        return Err(Error::Input(format!("{t} is not a witness for the given line")));
    }
    let line = &sigma.basis()[0];
    let w = jet_rows(t)
        .into_iter()
        .find(|r| !sigma.space().contains_vector(r).unwrap_or(true))
        .ok_or(Error::NoSolution)?;

    // symbol condition along ℓ + s·w with θ̃ fixed, as a polynomial in s
    let q = symbol_at(f, t);
    let dx = UniPoly::new(vec![line[1].clone(), w[1].clone()]);
    let dy = UniPoly::new(vec![-line[0].clone(), -w[0].clone()]);
    let mut along = UniPoly::zero();
    for (i, c) in q.0.iter().enumerate() {
        let mut term = UniPoly::constant(c.clone());
        for _ in 0..(3 - i) {
            term = term.mul(&dx);
        }
        for _ in 0..i {
            term = term.mul(&dy);
        }
        along = along.add(&term);
    }
    let pencil_in_equation = along.is_zero();

    let velocity = TangentHom::new(sigma.clone(), vec![w])?;
    let pencil_tangent_to_polar = in_polar_plane(&velocity)?;

    let upper_bound = if f.is_quasi_linear() && !q.is_zero() { Some(0) } else { None };
    Ok(PolarBounds {
        lower_bound: usize::from(pencil_in_equation && pencil_tangent_to_polar),
        upper_bound,
        pencil_in_equation,
        pencil_tangent_to_polar,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CSample {
    pub c: RatRepr,
    pub in_equation: bool,
    pub symbol_vanishes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LineSample {
    pub a: RatRepr,
    pub c: RatRepr,
    pub witness: Option<Vec<RatRepr>>,
    pub witness_verified: bool,
    /// whether the witness is `(c, 0, 0, 0)`
    pub witness_is_expected: bool,
    pub lower_bound: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ControlSample {
    pub theta: Vec<RatRepr>,
    pub member: bool,
    pub witness_verified: bool,
    pub upper_bound: Option<usize>,
    pub lower_bound: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MaReport {
    pub seed: u64,
    pub equation: String,
    pub control: String,
    pub control_symbol: Vec<RatRepr>,
    pub control_shadow_count: ShadowCountRecord,
    pub c_family: Vec<CSample>,
    pub lines: Vec<LineSample>,
    pub controls: Vec<ControlSample>,
    pub step_a: bool,
    pub step_b: bool,
    pub step_c: bool,
    pub step_d: bool,
    pub verdict: String,
}

impl MaReport {
    pub fn passed(&self) -> bool {
        self.step_a && self.step_b && self.step_c && self.step_d
    }
}

pub const NOT_CONTACT_EQUIVALENT: &str = "NOT_CONTACT_EQUIVALENT";
pub const INCONCLUSIVE: &str = "INCONCLUSIVE";

/// The whole non-equivalence argument: the `(c, 0, 0, 0)` family, sampled
/// lines `D_1 + a D_2 + c ∂_{u_xx}`, the pencil lower bound and the
/// quasi-linear upper bound.
pub fn ma_example(seed: u64, c_samples: usize, line_samples: usize, control_samples: usize) -> Result<MaReport> {
    let ma = Pde3::monge_ampere();
    let control = Pde3::quasi_linear_control();

    let mut rng = SeededRng::derived(seed, 0);
    let c_family: Vec<CSample> = (0..c_samples)
        .map(|i| {
            let c = if i == 0 { zero() } else { rng.rational() };
            let t = FiberPoint3([c.clone(), zero(), zero(), zero()]);
            CSample {
                c: (&c).into(),
                in_equation: ma.eval(&t).is_zero(),
                symbol_vanishes: symbol_at(&ma, &t).is_zero(),
            }
        })
        .collect();

    let lines = (0..line_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = SeededRng::derived(seed, 1000 + i as u64);
            let (a, c) = (rng.rational(), rng.rational());
            let sigma = pde_line(&int(1), &a, [&c, &zero(), &zero()])?;
            let membership = singular_membership(&sigma, &ma)?;
            let expected = FiberPoint3([c.clone(), zero(), zero(), zero()]);
            let (verified, lower) = match membership.witness() {
                Some(w) => {
                    let ok = verify_witness(&sigma, &ma, w)?;
                    let lower = if ok { polar_dim_on_singularity(&ma, &sigma, w)?.lower_bound } else { 0 };
                    (ok, lower)
                }
                None => (false, 0),
            };
            Ok(LineSample {
                a: (&a).into(),
                c: (&c).into(),
                witness: membership.witness().map(FiberPoint3::record),
                witness_verified: verified,
                witness_is_expected: membership.witness() == Some(&expected),
                lower_bound: lower,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let controls = (0..control_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = SeededRng::derived(seed, 2000 + i as u64);
            let (x, b, c) = (rng.rational(), rng.rational(), rng.rational());
            let theta = FiberPoint3([x.clone(), b, c, -x]);
            let rows = jet_rows(&theta);
            let sum: Vec<Rational> = rows[0].iter().zip(&rows[1]).map(|(p, q)| p + q).collect();
            let sigma = CartanSubspace::span(pde_plane(), &[sum])?;
            let membership = singular_membership(&sigma, &control)?;
            let (verified, bounds) = match membership.witness() {
                Some(w) if verify_witness(&sigma, &control, w)? => (true, Some(polar_dim_on_singularity(&control, &sigma, w)?)),
                _ => (false, None),
            };
            Ok(ControlSample {
                theta: theta.record(),
                member: membership.is_member(),
                witness_verified: verified,
                upper_bound: bounds.as_ref().and_then(|b| b.upper_bound),
                lower_bound: bounds.map_or(0, |b| b.lower_bound),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let control_symbol = symbol_at(&control, &FiberPoint3::zero());
    let shadow = characteristic_shadow_count(&control_symbol)?;

    let step_a = c_family.iter().all(|s| s.in_equation && s.symbol_vanishes);
    let step_b = lines.iter().all(|l| l.witness_verified && l.witness_is_expected);
    let step_c = !lines.is_empty() && lines.iter().all(|l| l.lower_bound >= 1);
    let step_d = shadow.count().is_some()
        && controls.iter().all(|c| c.member && c.witness_verified && c.upper_bound == Some(0) && c.lower_bound == 0);
    let verdict = if step_a && step_b && step_c && step_d { NOT_CONTACT_EQUIVALENT } else { INCONCLUSIVE };

    Ok(MaReport {
        seed,
        equation: ma.source().to_string(),
        control: control.source().to_string(),
        control_symbol: control_symbol.record(),
        control_shadow_count: shadow.record(),
        c_family,
        lines,
        controls,
        step_a,
        step_b,
        step_c,
        step_d,
        verdict: verdict.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(v: [i64; 4]) -> FiberPoint3 {
        FiberPoint3(v.map(int))
    }

    #[test]
    fn symbol_examples() {
        let ma = Pde3::monge_ampere();
        for c in [-3, 0, 7] {
            assert!(symbol_at(&ma, &fp([c, 0, 0, 0])).is_zero());
        }
        assert_eq!(symbol_at(&ma, &fp([0, 1, 0, 0])), BinaryCubic([int(0), int(0), int(0), int(1)]));
        let ql = Pde3::quasi_linear_control();
        assert!(ql.is_quasi_linear() && !ma.is_quasi_linear());
        assert_eq!(symbol_at(&ql, &fp([4, -1, 2, 9])), BinaryCubic([int(1), int(0), int(0), int(1)]));
    }

    #[test]
    fn jet_planes_are_integral() {
        let l = jet_plane(&fp([5, 0, 0, 0]));
        let expected = CartanSubspace::span(
            pde_plane(),
            &[cartan_vector(&int(1), &zero(), [&int(5), &zero(), &zero()]), cartan_vector(&zero(), &int(1), [&zero(), &zero(), &zero()])],
        )
        .unwrap();
        assert!(l.same_as(&expected).unwrap());
        assert!(jet_plane(&fp([1, -2, 3, 4])).is_integral_element());
        assert_eq!(jet_plane(&FiberPoint3::zero()).basis()[0], vec![int(1), int(0), int(0), int(0), int(0)]);
    }

    #[test]
    fn shadow_counts() {
        let q = BinaryCubic([int(1), int(0), int(0), int(1)]);
        let ShadowCount::Finite(roots) = characteristic_shadow_count(&q).unwrap() else { panic!() };
        assert_eq!(roots, vec![ProjectiveRoot::Affine(RealRoot::Exact(int(-1)))]);
        let dy3 = BinaryCubic([int(0), int(0), int(0), int(1)]);
        assert_eq!(characteristic_shadow_count(&dy3).unwrap(), ShadowCount::Finite(vec![ProjectiveRoot::AtInfinity]));
        let zero_form = BinaryCubic([int(0), int(0), int(0), int(0)]);
        assert_eq!(characteristic_shadow_count(&zero_form).unwrap(), ShadowCount::Infinite);
        // dx³ − 2 dx dy² has the roots 0 and ±√2
        let q = BinaryCubic([int(1), int(0), int(-2), int(0)]);
        assert_eq!(characteristic_shadow_count(&q).unwrap().count(), Some(3));
    }

    #[test]
    fn membership_examples() {
        let ma = Pde3::monge_ampere();
        for (a, c) in [(2, 3), (-1, 0), (0, 5)] {
            let sigma = pde_line(&int(1), &int(a), [&int(c), &zero(), &zero()]).unwrap();
            let m = singular_membership(&sigma, &ma).unwrap();
            assert_eq!(m.witness(), Some(&fp([c, 0, 0, 0])));
        }
        let d1 = pde_line(&int(1), &zero(), [&zero(), &zero(), &zero()]).unwrap();
        assert_eq!(singular_membership(&d1, &ma).unwrap().witness(), Some(&FiberPoint3::zero()));

        // u_xxx + u_yyy: the annihilator of the shadow must be (1 : −1)
        let ql = Pde3::quasi_linear_control();
        let diag = pde_line(&int(1), &int(1), [&int(3), &int(5), &int(2)]).unwrap();
        let w = singular_membership(&diag, &ql).unwrap();
        assert!(verify_witness(&diag, &ql, w.witness().unwrap()).unwrap());
        let anti = pde_line(&int(1), &int(-1), [&int(2), &int(1), &int(3)]).unwrap();
        assert_eq!(singular_membership(&anti, &ql).unwrap(), Membership::NotMember);
    }

    #[test]
    fn irrational_witnesses_are_isolated() {
        // along D_2 only u_xxx is free; F and its dx³ symbol share the roots ±√2
        let f = Pde3::parse("(u_xxx^2 - 2)^2").unwrap();
        let sigma = pde_line(&zero(), &int(1), [&zero(), &zero(), &zero()]).unwrap();
        match singular_membership(&sigma, &f).unwrap() {
            Membership::MemberAtIrrational { roots, .. } => assert_eq!(roots.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bounds() {
        let ma = Pde3::monge_ampere();
        let sigma = pde_line(&int(1), &int(2), [&int(3), &zero(), &zero()]).unwrap();
        let b = polar_dim_on_singularity(&ma, &sigma, &fp([3, 0, 0, 0])).unwrap();
        assert_eq!(b.lower_bound, 1);
        assert_eq!(b.upper_bound, None);

        let ql = Pde3::quasi_linear_control();
        let t = fp([1, 2, 3, -1]);
        let rows = jet_rows(&t);
        let v: Vec<Rational> = rows[0].iter().zip(&rows[1]).map(|(p, q)| p + q).collect();
        let sigma = CartanSubspace::span(pde_plane(), &[v]).unwrap();
        let b = polar_dim_on_singularity(&ql, &sigma, &t).unwrap();
        assert_eq!((b.lower_bound, b.upper_bound), (0, Some(0)));
    }

    #[test]
    fn full_example() {
        let r = ma_example(7, 20, 10, 5).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.verdict, NOT_CONTACT_EQUIVALENT);
    }
}
