//! Tangent spaces of `I_s(C)`, the ♯ map and polar planes.
//!
//! A tangent vector at `Σ ∈ I_s(C)` is a homomorphism `p : Σ → C/Σ` that
//! keeps `Σ_t = {σ + t·p(σ)}` isotropic to first order, i.e.
//! `Ω(σ, p(σ')) = Ω(σ', p(σ))`. Its ♯-image is `Ω(·, p(·))` with the
//! remaining `S^{k-2} L*` slots restricted to the shadow of `Σ`; the polar
//! plane `P_Σ` is the kernel of ♯.

use crate::error::{Error, Result};
use crate::grassmann::{dim_formulas, CartanSubspace};
use crate::rational::{unit, zeros, Rational};
use crate::ratlin::{RatMatrix, Subspace};
use crate::report::Checked;
use crate::symalg::{binomial, monomials, sym_dim, Context, SymPoly};
use num::Zero;
use serde::Serialize;

/// A tangent vector `p ∈ Hom(Σ, C/Σ)` at `Σ`, stored as the canonical coset
/// representatives of the images of `Σ`'s echelon basis.
#[derive(Debug, Clone)]
pub struct TangentHom {
    base: CartanSubspace,
    images: Vec<Vec<Rational>>,
}

impl TangentHom {
    /// Reduces each image modulo `Σ`.
    pub fn new(base: CartanSubspace, images: Vec<Vec<Rational>>) -> Result<Self> {
        if images.len() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                found: images.len(),
            });
        }
        let dim = base.plane().dim();
        let images = images
            .iter()
            .map(|v| {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                Ok(base.space().reduce(v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TangentHom { base, images })
    }

    pub fn zero(base: CartanSubspace) -> Self {
        let dim = base.plane().dim();
        let images = vec![zeros(dim); base.dim()];
        TangentHom { base, images }
    }

    pub fn base(&self) -> &CartanSubspace {
        &self.base
    }

    pub fn images(&self) -> &[Vec<Rational>] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.iter().all(Zero::is_zero))
    }

    /// Flattened coordinates, image by image.
    pub fn to_vector(&self) -> Vec<Rational> {
        self.images.iter().flatten().cloned().collect()
    }
}

/// `p♯(σ_a, σ_b) = Ω(σ_a, p(σ_b))` restricted to the shadow; `entries[a][b]`
/// is a polynomial of degree `k-2` in `s` variables (coordinates on the
/// shadow basis) with values in `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpValue {
    pub entries: Vec<Vec<SymPoly>>,
}

impl SharpValue {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(SymPoly::is_zero)
    }

    /// Symmetry in the two `Σ` slots.
    pub fn is_symmetric(&self) -> bool {
        let s = self.entries.len();
        (0..s).all(|a| (0..s).all(|b| self.entries[a][b] == self.entries[b][a]))
    }

    /// Whether the entries come from one fully symmetric `k`-tensor on the
    /// shadow, i.e. `V_ab = ∂_a ∂_b Q / (k(k-1))` for
    /// `Q(t) = Σ t_a t_b V_ab(t)`.
    pub fn is_fully_symmetric(&self) -> bool {
        let s = self.entries.len();
        if s == 0 {
            return true;
        }
        let first = &self.entries[0][0];
        let deg = first.degree();
        let k = deg + 2;
        let mut q = SymPoly::zero(s, first.m(), k);
        for a in 0..s {
            for b in 0..s {
                let term = self.entries[a][b].mul_linear_form(&unit(s, a)).mul_linear_form(&unit(s, b));
                q = q.add(&term).expect("same shape");
            }
        }
        let norm = Rational::new(1.into(), ((k * (k - 1)) as i64).into());
        (0..s).all(|a| {
            (0..s).all(|b| q.derivative(a).derivative(b).scale(&norm) == self.entries[a][b])
        })
    }

    /// Entries flattened `(a, b)`-major.
    pub fn to_vector(&self) -> Vec<Rational> {
        self.entries.iter().flatten().flat_map(|p| p.coeffs().to_vec()).collect()
    }
}

/// Precomputed linear data at a fixed integral element.
struct PolarSetup {
    base: CartanSubspace,
    basis: Vec<Vec<Rational>>,
    complement: Vec<usize>,
    /// `w ↦ Ω(σ_a, w)`
    omega_left: Vec<RatMatrix>,
    /// `w ↦ Ω(σ_a, w)` followed by restriction to the shadow
    restricted_left: Vec<RatMatrix>,
    restricted_dim: usize,
}

impl PolarSetup {
    fn new(sigma: &CartanSubspace) -> Result<Self> {
        let ctx = *sigma.context();
        if ctx.k < 2 {
            return Err(Error::UnsupportedOrder(ctx.k, 2));
        }
        if !sigma.is_integral_element() {
            return Err(Error::NotIntegralElement);
        }
        let plane = sigma.plane().clone();
        let basis = sigma.basis();
        let shadow: Vec<Vec<Rational>> = basis.iter().map(|v| v[..ctx.n].to_vec()).collect();
        let restriction = restriction_to_shadow(&ctx, &shadow)?;
        let omega_left: Vec<RatMatrix> = basis.iter().map(|v| plane.omega_left(v)).collect();
        let restricted_left = omega_left
            .iter()
            .map(|w| restriction.mul(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolarSetup {
            base: sigma.clone(),
            complement: sigma.space().complement_indices(),
            basis,
            omega_left,
            restricted_left,
            restricted_dim: restriction.rows(),
        })
    }

    fn s(&self) -> usize {
        self.basis.len()
    }

    fn unknowns(&self) -> usize {
        self.s() * self.complement.len()
    }

    /// Tangency conditions `Ω(σ_a, p_b) − Ω(σ_b, p_a) = 0`, `a < b`.
    fn tangent_system(&self) -> RatMatrix {
        let s = self.s();
        let j = self.complement.len();
        let odim = self.omega_left.first().map_or(0, RatMatrix::rows);
        let pairs: Vec<(usize, usize)> = (0..s).flat_map(|a| ((a + 1)..s).map(move |b| (a, b))).collect();
        let mut mat = RatMatrix::zeros(pairs.len() * odim, self.unknowns());
        for (pi, &(a, b)) in pairs.iter().enumerate() {
            for o in 0..odim {
                for (jj, &col) in self.complement.iter().enumerate() {
                    let x = self.omega_left[a].get(o, col);
                    if !x.is_zero() {
                        let cur = mat.get(pi * odim + o, b * j + jj) + x;
                        mat.set(pi * odim + o, b * j + jj, cur);
                    }
                    let y = self.omega_left[b].get(o, col);
                    if !y.is_zero() {
                        let cur = mat.get(pi * odim + o, a * j + jj) - y;
                        mat.set(pi * odim + o, a * j + jj, cur);
                    }
                }
            }
        }
        mat
    }

    /// Matrix of `p ↦ p♯` (restricted when `restricted`), rows `(a, b, r)`.
    fn sharp_system(&self, restricted: bool) -> RatMatrix {
        let s = self.s();
        let j = self.complement.len();
        let maps = if restricted { &self.restricted_left } else { &self.omega_left };
        let rdim = maps.first().map_or(0, RatMatrix::rows);
        let mut mat = RatMatrix::zeros(s * s * rdim, self.unknowns());
        for a in 0..s {
            for b in 0..s {
                for r in 0..rdim {
                    for (jj, &col) in self.complement.iter().enumerate() {
                        let x = maps[a].get(r, col);
                        if !x.is_zero() {
                            mat.set((a * s + b) * rdim + r, b * j + jj, x.clone());
                        }
                    }
                }
            }
        }
        mat
    }

    /// Splits flattened restricted values into the `(a, b)` entries.
    fn sharp_value(&self, values: &[Rational]) -> Result<SharpValue> {
        let ctx = *self.base.context();
        let s = self.s();
        let rdim = self.restricted_dim;
        let entries = (0..s)
            .map(|a| {
                (0..s)
                    .map(|b| {
                        let start = (a * s + b) * rdim;
                        SymPoly::from_vector(s, ctx.m, ctx.k - 2, values[start..start + rdim].to_vec())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SharpValue { entries })
    }

    fn tangent_basis_matrix(&self) -> RatMatrix {
        let basis = self.tangent_system().kernel_basis();
        RatMatrix::from_columns(self.unknowns(), &basis).expect("kernel vectors have the unknown count")
    }

    fn to_hom(&self, x: &[Rational]) -> TangentHom {
        let dim = self.base.plane().dim();
        let j = self.complement.len();
        let images = (0..self.s())
            .map(|b| {
                let mut v = zeros(dim);
                for (jj, &col) in self.complement.iter().enumerate() {
                    v[col] = x[b * j + jj].clone();
                }
                v
            })
            .collect();
        TangentHom {
            base: self.base.clone(),
            images,
        }
    }

    fn hom_unknowns(&self, p: &TangentHom) -> Vec<Rational> {
        let j = self.complement.len();
        let mut x = zeros(self.unknowns());
        for (b, img) in p.images.iter().enumerate() {
            for (jj, &col) in self.complement.iter().enumerate() {
                x[b * j + jj] = img[col].clone();
            }
        }
        x
    }
}

/// Matrix restricting `S^{k-2} L* ⊗ N` to the span of `shadow` (pullback to
/// polynomials in the shadow coordinates).
fn restriction_to_shadow(ctx: &Context, shadow: &[Vec<Rational>]) -> Result<RatMatrix> {
    let d = ctx.k - 2;
    let s = shadow.len();
    let rows = sym_dim(s, d) * ctx.m;
    let monos = monomials(ctx.n, d);
    let mut mat = RatMatrix::zeros(rows, monos.len() * ctx.m);
    for (mi, sigma) in monos.iter().enumerate() {
        for j in 0..ctx.m {
            let pulled = SymPoly::monomial(ctx.m, sigma, j).pullback(shadow)?;
            for (r, x) in pulled.coeffs().iter().enumerate() {
                if !x.is_zero() {
                    mat.set(r, mi * ctx.m + j, x.clone());
                }
            }
        }
    }
    Ok(mat)
}

/// Basis of `T_Σ I_s(C)`.
pub fn tangent_space_is(sigma: &CartanSubspace) -> Result<Vec<TangentHom>> {
    let setup = PolarSetup::new(sigma)?;
    Ok(setup
        .tangent_system()
        .kernel_basis()
        .iter()
        .map(|x| setup.to_hom(x))
        .collect())
}

/// `p♯`, after checking that `p` is tangent to `I_s(C)`.
pub fn sharp(p: &TangentHom) -> Result<SharpValue> {
    let setup = PolarSetup::new(&p.base)?;
    let plane = p.base.plane();
    let s = setup.s();
    for a in 0..s {
        for b in (a + 1)..s {
            let lhs = plane.omega_coords(&setup.basis[a], &p.images[b]);
            let rhs = plane.omega_coords(&setup.basis[b], &p.images[a]);
            if lhs != rhs {
                return Err(Error::NotTangent(a, b));
            }
        }
    }
    let values = setup.sharp_system(true).mul_vec(&setup.hom_unknowns(p))?;
    setup.sharp_value(&values)
}

/// Basis of `P_Σ = ker ♯ ⊆ T_Σ I_s(C)`.
pub fn polar_plane(sigma: &CartanSubspace) -> Result<Vec<TangentHom>> {
    let setup = PolarSetup::new(sigma)?;
    let tangent = setup.tangent_basis_matrix();
    let composed = setup.sharp_system(true).mul(&tangent)?;
    composed
        .kernel_basis()
        .iter()
        .map(|y| Ok(setup.to_hom(&tangent.mul_vec(y)?)))
        .collect()
}

/// `osc p`: the preimage of `im p` under `C → C/Σ`.
pub fn osculator(p: &TangentHom) -> Result<CartanSubspace> {
    let space = p.base.space().with_vectors(&p.images)?;
    CartanSubspace::new(p.base.plane().clone(), space)
}

/// `dim P = s(n-s) + [C(n+k-1,k) − C(n-s+k-1,k) − C(s+k-1,k)]·m`.
pub fn dim_polar_formula(ctx: &Context, s: usize) -> usize {
    let f = dim_formulas(ctx, s);
    if s == 0 {
        return 0;
    }
    f.isotropic - sharp_target_dim(ctx, s)
}

/// `dim S^k Σ* ⊗ N = C(s+k-1, k)·m`.
pub fn sharp_target_dim(ctx: &Context, s: usize) -> usize {
    if s == 0 {
        return 0;
    }
    binomial(s + ctx.k - 1, ctx.k) * ctx.m
}

/// Rank-based facts about the polar plane at one integral element.
#[derive(Debug, Clone, Serialize)]
pub struct PolarReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub s: usize,
    /// `dim T_Σ I_s` against the closed form for `dim I_s`
    pub tangent_dim: Checked,
    /// rank of ♯ against `dim S^k Σ* ⊗ N` (surjectivity)
    pub sharp_rank: Checked,
    pub polar_dim: Checked,
    /// every basis tangent vector has a fully symmetric ♯-value
    pub sharp_fully_symmetric: bool,
    /// dimension of `{p tangent : osc p ⊆ Σ^⊥}`
    pub osculator_in_orthogonal_dim: usize,
    /// whether that space coincides with `P_Σ`
    pub osculator_characterizes_polar: bool,
}

impl PolarReport {
    /// Everything asserted for all `k`; the osculator characterization is
    /// only asserted at `k = 2`.
    pub fn passed(&self) -> bool {
        self.tangent_dim.agree
            && self.sharp_rank.agree
            && self.polar_dim.agree
            && self.sharp_fully_symmetric
            && (self.k != 2 || self.osculator_characterizes_polar)
    }
}

pub fn polar_report(sigma: &CartanSubspace) -> Result<PolarReport> {
    let setup = PolarSetup::new(sigma)?;
    let ctx = *sigma.context();
    let s = setup.s();
    let formulas = dim_formulas(&ctx, s);
    let tangent = setup.tangent_basis_matrix();
    let restricted = setup.sharp_system(true).mul(&tangent)?;
    let rank = restricted.rank();
    let polar_dim = tangent.cols() - rank;

    let mut fully_symmetric = true;
    for c in 0..restricted.cols() {
        let v = setup.sharp_value(&restricted.column(c))?;
        if !(v.is_symmetric() && v.is_fully_symmetric()) {
            fully_symmetric = false;
            break;
        }
    }

    let unrestricted = setup.sharp_system(false).mul(&tangent)?;
    let osc_dim = tangent.cols() - unrestricted.rank();
    // the unrestricted kernel always sits inside the restricted one
    let osculator_characterizes_polar = osc_dim == polar_dim;

    Ok(PolarReport {
        n: ctx.n,
        m: ctx.m,
        k: ctx.k,
        s,
        tangent_dim: Checked::new(formulas.isotropic, tangent.cols()),
        sharp_rank: Checked::new(sharp_target_dim(&ctx, s), rank),
        polar_dim: Checked::new(dim_polar_formula(&ctx, s), polar_dim),
        sharp_fully_symmetric: fully_symmetric,
        osculator_in_orthogonal_dim: osc_dim,
        osculator_characterizes_polar,
    })
}

/// Whether `p ∈ P_Σ`.
pub fn in_polar_plane(p: &TangentHom) -> Result<bool> {
    Ok(sharp(p)?.is_zero())
}

/// Span of the tangent vectors, as a subspace of `Hom(Σ, C/Σ)` in
/// flattened canonical-representative coordinates.
pub fn hom_span(homs: &[TangentHom]) -> Result<Subspace> {
    let Some(first) = homs.first() else {
        return Err(Error::Input("empty list of tangent vectors".into()));
    };
    let len = first.base.dim() * first.base.plane().dim();
    Subspace::span(len, &homs.iter().map(TangentHom::to_vector).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{graph_of, lift};
    use crate::cartan::CartanPlane;
    use crate::rational::int;
    use crate::rng::SeededRng;
    use std::sync::Arc;
    use crate::symalg::MultiIndex;

    fn plane(n: usize, m: usize, k: usize) -> Arc<CartanPlane> {
        Arc::new(CartanPlane::new(Context::new(n, m, k).unwrap()))
    }

    fn span_x1_x2() -> CartanSubspace {
        CartanSubspace::span(plane(3, 1, 2), &[unit(6, 0), unit(6, 1)]).unwrap()
    }

    #[test]
    fn tangent_space_examples() {
        let c = plane(3, 1, 2);
        let line = CartanSubspace::span(c.clone(), &[vec![int(1), int(2), int(0), int(1), int(0), int(3)]]).unwrap();
        assert_eq!(tangent_space_is(&line).unwrap().len(), c.dim() - 1);

        assert_eq!(tangent_space_is(&span_x1_x2()).unwrap().len(), 7);

        let p = SymPoly::from_terms(3, 1, 2, &[(MultiIndex(vec![1, 1, 0]), 0, int(1))]).unwrap();
        let l = graph_of(&c, &p).unwrap();
        assert_eq!(tangent_space_is(&l).unwrap().len(), 6);
    }

    #[test]
    fn sharp_examples() {
        let sigma = span_x1_x2();
        assert!(sharp(&TangentHom::zero(sigma.clone())).unwrap().is_zero());

        // p = p_{αj} ξ^α ⊗ ξ^j with p_{12} = p_{21} = 1, p_{11} = 2, plus a x3 part
        let images = vec![
            vec![int(0), int(0), int(5), int(2), int(1), int(0)],
            vec![int(0), int(0), int(0), int(1), int(0), int(0)],
        ];
        let p = TangentHom::new(sigma.clone(), images).unwrap();
        let v = sharp(&p).unwrap();
        let val = |a: usize, b: usize| v.entries[a][b].coeffs()[0].clone();
        assert_eq!((val(0, 0), val(0, 1), val(1, 0), val(1, 1)), (int(2), int(1), int(1), int(0)));
        assert!(v.is_symmetric());

        let bad = TangentHom::new(
            sigma,
            vec![vec![int(0), int(0), int(0), int(0), int(1), int(0)], zeros(6)],
        )
        .unwrap();
        assert!(matches!(sharp(&bad), Err(Error::NotTangent(0, 1))));
    }

    #[test]
    fn polar_plane_examples() {
        let sigma = span_x1_x2();
        let polar = polar_plane(&sigma).unwrap();
        assert_eq!(polar.len(), 4);
        assert_eq!(dim_polar_formula(sigma.context(), 2), 4);

        let c = plane(3, 1, 2);
        let l = CartanSubspace::span(c, &[unit(6, 0), unit(6, 1), unit(6, 2)]).unwrap();
        assert!(polar_plane(&l).unwrap().is_empty());

        for n in 2..=4 {
            let ctx = Context::new(n, 1, 2).unwrap();
            let c = Arc::new(CartanPlane::new(ctx));
            let line = CartanSubspace::span(c, &[unit(n + n, 0)]).unwrap();
            assert_eq!(polar_plane(&line).unwrap().len(), 2 * (n - 1));
            assert_eq!(dim_polar_formula(&ctx, 1), 2 * (n - 1));
        }
    }

    #[test]
    fn polar_formula_examples() {
        assert_eq!(dim_polar_formula(&Context::new(3, 1, 2).unwrap(), 2), 4);
        assert_eq!(dim_polar_formula(&Context::new(2, 1, 2).unwrap(), 1), 2);
        assert_eq!(dim_polar_formula(&Context::new(4, 2, 3).unwrap(), 0), 0);
    }

    #[test]
    fn osculator_examples() {
        let sigma = span_x1_x2();
        let zero = TangentHom::zero(sigma.clone());
        assert!(osculator(&zero).unwrap().same_as(&sigma).unwrap());

        let perp = sigma.plane().omega_orthogonal(sigma.space()).unwrap();
        for p in polar_plane(&sigma).unwrap() {
            assert!(perp.contains(osculator(&p).unwrap().space()).unwrap());
        }

        let full = TangentHom::new(sigma.clone(), vec![unit(6, 3), unit(6, 4)]).unwrap();
        assert_eq!(osculator(&full).unwrap().dim(), 4);
    }

    #[test]
    fn report_on_random_lift() {
        let mut rng = SeededRng::new(5);
        let ctx = Context::new(3, 1, 3).unwrap();
        let c = Arc::new(CartanPlane::new(ctx));
        let s0 = rng.subspace(3, 2);
        let p = rng.sym_poly(&ctx, 3);
        let r = polar_report(&lift(&c, &s0, &p).unwrap()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn order_one_is_rejected() {
        let c = plane(2, 1, 1);
        let line = CartanSubspace::span(c, &[unit(3, 0)]).unwrap();
        assert!(matches!(tangent_space_is(&line), Err(Error::UnsupportedOrder(1, 2))));
    }
}
