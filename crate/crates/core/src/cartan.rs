//! The Cartan plane `C = L ⊕ (S^{k-1} L* ⊗ N)` and its meta-symplectic form.
//!
//! Vectors of `C` are handled as flat coordinate vectors in the canonical
//! frame: `e_1 … e_n` of `L` first, then the monomials `ξ^σ ⊗ y_j` of the
//! vertical summand in the order fixed by [`crate::symalg`].

use crate::error::{Error, Result};
use crate::rational::{unit, zeros, Rational};
use crate::ratlin::{RatMatrix, Subspace};
use crate::symalg::{monomials, polarize_at, Context, SymPoly};
use num::Zero;

/// A vector `(l, p)` of the Cartan plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanVector {
    pub horizontal: Vec<Rational>,
    pub vertical: SymPoly,
}

/// Value of `Ω`: an element of `S^{k-2} L* ⊗ N`. For `k = 1` the target
/// space is trivial and `poly` is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaValue {
    pub poly: Option<SymPoly>,
}

impl OmegaValue {
    pub fn is_zero(&self) -> bool {
        self.poly.as_ref().is_none_or(SymPoly::is_zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.poly.as_ref().map_or(&[], |p| p.coeffs())
    }
}

/// One nonzero entry of `Ω` on the canonical frame:
/// `Ω(e_i, v_c)` has coefficient `value` at output index `out`.
#[derive(Debug, Clone)]
struct OmegaEntry {
    horizontal: usize,
    vertical: usize,
    out: usize,
    value: Rational,
}

#[derive(Debug, Clone)]
pub struct CartanPlane {
    ctx: Context,
    vertical_dim: usize,
    out_dim: usize,
    table: Vec<OmegaEntry>,
}

impl CartanPlane {
    pub fn new(ctx: Context) -> Self {
        let vertical_dim = ctx.poly_dim(ctx.k - 1);
        let out_dim = if ctx.k >= 2 { ctx.poly_dim(ctx.k - 2) } else { 0 };
        let mut plane = CartanPlane {
            ctx,
            vertical_dim,
            out_dim,
            table: Vec::new(),
        };
        // Ω(e_i, v_c) read off from the invariant definition
        if ctx.k >= 2 {
            let frame = plane.coordinate_frame();
            let mut table = Vec::new();
            for i in 0..ctx.n {
                for c in 0..vertical_dim {
                    let val = plane
                        .omega(&frame[i], &frame[ctx.n + c])
                        .expect("frame vectors share the context");
                    for (out, x) in val.coeffs().iter().enumerate() {
                        if !x.is_zero() {
                            table.push(OmegaEntry {
                                horizontal: i,
                                vertical: c,
                                out,
                                value: x.clone(),
                            });
                        }
                    }
                }
            }
            plane.table = table;
        }
        plane
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// `dim C = n + m·C(n+k-2, k-1)`.
    pub fn dim(&self) -> usize {
        self.ctx.n + self.vertical_dim
    }

    pub fn vertical_dim(&self) -> usize {
        self.vertical_dim
    }

    /// Dimension of the value space `S^{k-2} L* ⊗ N` of `Ω`.
    pub fn omega_dim(&self) -> usize {
        self.out_dim
    }

    pub fn to_coords(&self, v: &CartanVector) -> Result<Vec<Rational>> {
        self.check_vector(v)?;
        let mut out = v.horizontal.clone();
        out.extend(v.vertical.coeffs().iter().cloned());
        Ok(out)
    }

    pub fn from_coords(&self, coords: &[Rational]) -> Result<CartanVector> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        let n = self.ctx.n;
        Ok(CartanVector {
            horizontal: coords[..n].to_vec(),
            vertical: SymPoly::from_vector(n, self.ctx.m, self.ctx.k - 1, coords[n..].to_vec())?,
        })
    }

    pub fn horizontal(&self, l: &[Rational]) -> Result<Vec<Rational>> {
        if l.len() != self.ctx.n {
            return Err(Error::DimensionMismatch {
                expected: self.ctx.n,
                found: l.len(),
            });
        }
        let mut out = l.to_vec();
        out.extend(zeros(self.vertical_dim));
        Ok(out)
    }

    pub fn vertical(&self, p: &SymPoly) -> Result<Vec<Rational>> {
        self.to_coords(&CartanVector {
            horizontal: zeros(self.ctx.n),
            vertical: p.clone(),
        })
    }

    /// Canonical ordered basis: `e_1 … e_n`, then vertical monomials.
    pub fn coordinate_frame(&self) -> Vec<CartanVector> {
        let n = self.ctx.n;
        let m = self.ctx.m;
        let mut frame: Vec<CartanVector> = (0..n)
            .map(|i| CartanVector {
                horizontal: unit(n, i),
                vertical: SymPoly::zero(n, m, self.ctx.k - 1),
            })
            .collect();
        for sigma in monomials(n, self.ctx.k - 1) {
            for j in 0..m {
                frame.push(CartanVector {
                    horizontal: zeros(n),
                    vertical: SymPoly::monomial(m, &sigma, j),
                });
            }
        }
        frame
    }

    fn check_vector(&self, v: &CartanVector) -> Result<()> {
        let Context { n, m, k } = self.ctx;
        if v.horizontal.len() != n || v.vertical.n() != n || v.vertical.m() != m || v.vertical.degree() != k - 1 {
            return Err(Error::ContextMismatch(format!(
                "vector does not belong to the Cartan plane of (n={n}, m={m}, k={k})"
            )));
        }
        Ok(())
    }

    /// `Ω((l₁,p₁),(l₂,p₂)) = p̂₂(l₁) − p̂₁(l₂)`.
    pub fn omega(&self, v: &CartanVector, w: &CartanVector) -> Result<OmegaValue> {
        self.check_vector(v)?;
        self.check_vector(w)?;
        if self.ctx.k < 2 {
            return Ok(OmegaValue { poly: None });
        }
        let a = polarize_at(&w.vertical, &v.horizontal)?;
        let b = polarize_at(&v.vertical, &w.horizontal)?;
        Ok(OmegaValue { poly: Some(a.sub(&b)?) })
    }

    /// `Ω` on coordinate vectors, returned as coordinates of `S^{k-2} L* ⊗ N`.
    pub fn omega_coords(&self, v: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let n = self.ctx.n;
        let mut out = zeros(self.out_dim);
        for e in &self.table {
            let vi = &v[e.horizontal];
            let wc = &w[n + e.vertical];
            if !vi.is_zero() && !wc.is_zero() {
                out[e.out] += &e.value * vi * wc;
            }
            let wi = &w[e.horizontal];
            let vc = &v[n + e.vertical];
            if !wi.is_zero() && !vc.is_zero() {
                out[e.out] -= &e.value * wi * vc;
            }
        }
        out
    }

    /// Matrix of `w ↦ Ω(v, w)`, of size `omega_dim × dim`.
    pub fn omega_left(&self, v: &[Rational]) -> RatMatrix {
        let n = self.ctx.n;
        let mut mat = RatMatrix::zeros(self.out_dim, self.dim());
        for e in &self.table {
            let vi = &v[e.horizontal];
            if !vi.is_zero() {
                let col = n + e.vertical;
                let cur = mat.get(e.out, col) + &e.value * vi;
                mat.set(e.out, col, cur);
            }
            let vc = &v[n + e.vertical];
            if !vc.is_zero() {
                let cur = mat.get(e.out, e.horizontal) - &e.value * vc;
                mat.set(e.out, e.horizontal, cur);
            }
        }
        mat
    }

    /// `Σ^⊥ = {v : Ω(v, σ) = 0 for all σ ∈ Σ}`; every component of the
    /// `S^{k-2} L* ⊗ N`-valued pairing gives one linear condition.
    pub fn omega_orthogonal(&self, sigma: &Subspace) -> Result<Subspace> {
        if sigma.ambient() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: sigma.ambient(),
            });
        }
        let mut system = RatMatrix::zeros(0, self.dim());
        for b in sigma.basis() {
            // Ω(v, b) = -Ω(b, v)
            system = system.vstack(&self.omega_left(&b))?;
        }
        Subspace::span(self.dim(), &system.kernel_basis())
    }

    /// Whether `Ω` vanishes on every pair of the given vectors.
    pub fn is_isotropic_set(&self, vectors: &[Vec<Rational>]) -> bool {
        for (a, v) in vectors.iter().enumerate() {
            for w in &vectors[a + 1..] {
                if self.omega_coords(v, w).iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}
