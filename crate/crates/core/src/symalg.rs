//! Symmetric algebra `S^d L* ⊗ N` with `L = Q^n`, `N = Q^m`.
//!
//! Polynomials are stored densely in the monomial basis `ξ^σ ⊗ y_j`,
//! monomials ordered graded-lexicographically (for fixed degree,
//! `ξ1^d` first) and `j` varying fastest. Polarization is `1/d` times the
//! differential, so that `p̂(l)` applied `d - 1` more times to `l` gives
//! back `p(l)`.

use crate::error::{Error, Result};
use crate::rational::{int, zeros, RatRepr, Rational};
use crate::ratlin::{RatMatrix, Subspace};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of degree-`d` monomials in `n` variables, `C(n+d-1, d)`.
pub fn sym_dim(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(n + d - 1, d)
}

/// The fixed data of a jet space: `n = dim L`, `m = dim N` and the jet
/// order `k` (the Cartan plane of `J^{k-1}` has vertical part `S^{k-1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Context {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl Context {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        if n == 0 || m == 0 || k == 0 {
            return Err(Error::InvalidContext(format!(
                "need n, m, k >= 1 (got n={n}, m={m}, k={k})"
            )));
        }
        Ok(Context { n, m, k })
    }

    /// `dim S^d L* ⊗ N`.
    pub fn poly_dim(&self, d: usize) -> usize {
        sym_dim(self.n, d) * self.m
    }
}

/// Exponent vector `σ = (σ_1, …, σ_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `σ - 1_i`, or `None` if `σ_i = 0`.
    pub fn lower(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut out = self.clone();
        out.0[i] -= 1;
        Some(out)
    }

    pub fn raise(&self, i: usize) -> MultiIndex {
        let mut out = self.clone();
        out.0[i] += 1;
        out
    }

    /// `σ! = Π σ_i!`
    pub fn factorial(&self) -> Rational {
        let mut acc = Rational::one();
        for &e in &self.0 {
            for t in 2..=e {
                acc *= int(t as i64);
            }
        }
        acc
    }

    /// `l^σ = Π l_i^{σ_i}`
    pub fn eval(&self, l: &[Rational]) -> Rational {
        let mut acc = Rational::one();
        for (e, x) in self.0.iter().zip(l) {
            for _ in 0..*e {
                acc *= x;
            }
        }
        acc
    }

    /// Position of this multi-index among all monomials of its degree.
    pub fn rank(&self) -> usize {
        let n = self.0.len();
        let mut d = self.degree();
        let mut r = 0;
        for (pos, &e) in self.0.iter().enumerate() {
            let rest = n - pos - 1;
            if rest == 0 {
                break;
            }
            let e = e as usize;
            for first in (e + 1)..=d {
                r += sym_dim(rest, d - first);
            }
            d -= e;
        }
        r
    }
}

impl Ord for MultiIndex {
    /// Graded order; within a degree, larger leading exponents come first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All degree-`d` multi-indices in `n` variables, in basis order.
pub fn monomials(n: usize, d: usize) -> Vec<MultiIndex> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if n == 1 {
            prefix.push(d as u32);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u32);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(sym_dim(n, d));
    if n == 0 {
        if d == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Element of `S^d L* ⊗ N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymPoly {
    n: usize,
    m: usize,
    degree: usize,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly[n={}, m={}, d={}](", self.n, self.m, self.degree)?;
        let mut first = true;
        for (sigma, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·ξ^{sigma}⊗y{}", j + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl SymPoly {
    pub fn zero(n: usize, m: usize, degree: usize) -> Self {
        SymPoly {
            n,
            m,
            degree,
            coeffs: zeros(sym_dim(n, degree) * m),
        }
    }

    pub fn from_vector(n: usize, m: usize, degree: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let expected = sym_dim(n, degree) * m;
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(SymPoly { n, m, degree, coeffs })
    }

    /// `ξ^σ ⊗ y_j` (with `j` zero-based).
    pub fn monomial(m: usize, sigma: &MultiIndex, j: usize) -> Self {
        let mut p = SymPoly::zero(sigma.len(), m, sigma.degree());
        p.coeffs[sigma.rank() * m + j] = Rational::one();
        p
    }

    /// Scalar-valued (`m = 1`) linear form `Σ a_i ξ^i`.
    pub fn linear_form(a: &[Rational]) -> Self {
        SymPoly {
            n: a.len(),
            m: 1,
            degree: 1,
            coeffs: a.to_vec(),
        }
    }

    /// Degree-0 element: a vector of `N`.
    pub fn constant(n: usize, values: &[Rational]) -> Self {
        SymPoly {
            n,
            m: values.len(),
            degree: 0,
            coeffs: values.to_vec(),
        }
    }

    /// Builds a polynomial from `(σ, j, coefficient)` terms; repeated terms add.
    pub fn from_terms(n: usize, m: usize, degree: usize, terms: &[(MultiIndex, usize, Rational)]) -> Result<Self> {
        let mut p = SymPoly::zero(n, m, degree);
        for (sigma, j, c) in terms {
            if sigma.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: sigma.len(),
                });
            }
            if sigma.degree() != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree,
                    found: sigma.degree(),
                });
            }
            if *j >= m {
                return Err(Error::DimensionMismatch { expected: m, found: j + 1 });
            }
            p.coeffs[sigma.rank() * m + j] += c;
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, sigma: &MultiIndex, j: usize) -> &Rational {
        &self.coeffs[sigma.rank() * self.m + j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms `(σ, j, coefficient)` in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, usize, &Rational)> + '_ {
        let monos = monomials(self.n, self.degree);
        let m = self.m;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (monos[idx / m].clone(), idx % m, c))
    }

    fn same_space(&self, other: &SymPoly) -> Result<()> {
        if (self.n, self.m, self.degree) != (other.n, other.m, other.degree) {
            return Err(Error::ContextMismatch(format!(
                "polynomial spaces differ: (n={}, m={}, d={}) vs (n={}, m={}, d={})",
                self.n, self.m, self.degree, other.n, other.m, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        self.same_space(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(SymPoly { coeffs, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &SymPoly) -> Result<SymPoly> {
        self.same_space(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(SymPoly { coeffs, ..self.clone_shape() })
    }

    pub fn scale(&self, s: &Rational) -> SymPoly {
        SymPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> SymPoly {
        SymPoly {
            n: self.n,
            m: self.m,
            degree: self.degree,
            coeffs: Vec::new(),
        }
    }

    /// `p(l) = Σ p^j_σ l^σ y_j`
    pub fn evaluate(&self, l: &[Rational]) -> Result<Vec<Rational>> {
        if l.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: l.len(),
            });
        }
        let mut out = zeros(self.m);
        for (sigma, j, c) in self.terms() {
            out[j] += c * sigma.eval(l);
        }
        Ok(out)
    }

    /// Partial derivative `∂p/∂ξ^i`, of degree `d - 1`.
    pub fn derivative(&self, i: usize) -> SymPoly {
        assert!(self.degree >= 1, "derivative of a degree-0 polynomial");
        let mut out = SymPoly::zero(self.n, self.m, self.degree - 1);
        for (sigma, j, c) in self.terms() {
            if let Some(lower) = sigma.lower(i) {
                out.coeffs[lower.rank() * self.m + j] += c * int(sigma.0[i] as i64);
            }
        }
        out
    }

    /// Product with a scalar-valued linear form `Σ a_i ξ^i`.
    pub fn mul_linear_form(&self, a: &[Rational]) -> SymPoly {
        let mut out = SymPoly::zero(self.n, self.m, self.degree + 1);
        for (sigma, j, c) in self.terms() {
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                out.coeffs[sigma.raise(i).rank() * self.m + j] += c * ai;
            }
        }
        out
    }

    /// Pullback along `t ↦ Σ_b t_b v_b`: substitutes `ξ^i = Σ_b v_b[i] t^b`,
    /// giving a polynomial in `vectors.len()` variables.
    pub fn pullback(&self, vectors: &[Vec<Rational>]) -> Result<SymPoly> {
        let s = vectors.len();
        for v in vectors {
            if v.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: v.len(),
                });
            }
        }
        // the substituted linear forms, one per original variable
        let forms: Vec<Vec<Rational>> = (0..self.n).map(|i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
        let mut out = SymPoly::zero(s, self.m, self.degree);
        for (sigma, j, c) in self.terms() {
            let mut prod = SymPoly::constant(s, std::slice::from_ref(c));
            for (i, &e) in sigma.0.iter().enumerate() {
                for _ in 0..e {
                    prod = prod.mul_linear_form(&forms[i]);
                }
            }
            for (idx, x) in prod.coeffs.iter().enumerate() {
                if !x.is_zero() {
                    out.coeffs[idx * self.m + j] += x;
                }
            }
        }
        Ok(out)
    }
}

/// Polarization evaluated at `l`: `p̂(l) = (1/d) Σ l_i ∂p/∂ξ^i`.
pub fn polarize_at(p: &SymPoly, l: &[Rational]) -> Result<SymPoly> {
    if p.degree == 0 {
        return Err(Error::InvalidContext("cannot polarize a degree-0 polynomial".into()));
    }
    if l.len() != p.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            found: l.len(),
        });
    }
    let inv_d = Rational::new(1.into(), (p.degree as i64).into());
    let mut out = SymPoly::zero(p.n, p.m, p.degree - 1);
    for (sigma, j, c) in p.terms() {
        let base = c * &inv_d;
        for (i, li) in l.iter().enumerate() {
            if li.is_zero() || sigma.0[i] == 0 {
                continue;
            }
            let lower = sigma.lower(i).expect("checked above");
            out.coeffs[lower.rank() * p.m + j] += &base * int(sigma.0[i] as i64) * li;
        }
    }
    Ok(out)
}

/// A linear map from a subspace `Σ0 ⊆ L` into `S^d L* ⊗ N`, given by the
/// images of a basis of `Σ0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLS {
    pub domain: Vec<Vec<Rational>>,
    pub images: Vec<SymPoly>,
}

impl HomLS {
    pub fn is_zero(&self) -> bool {
        self.images.iter().all(SymPoly::is_zero)
    }

    pub fn image_degree(&self) -> Option<usize> {
        self.images.first().map(SymPoly::degree)
    }
}

/// `p̂` as a map on the standard basis of `L`.
pub fn polarize(p: &SymPoly) -> Result<HomLS> {
    let domain: Vec<Vec<Rational>> = (0..p.n).map(|i| crate::rational::unit(p.n, i)).collect();
    let images = domain.iter().map(|e| polarize_at(p, e)).collect::<Result<_>>()?;
    Ok(HomLS { domain, images })
}

fn check_in_l(sigma0: &Subspace, n: usize) -> Result<()> {
    if sigma0.ambient() != n {
        return Err(Error::NotSubspaceOfL {
            expected: n,
            found: sigma0.ambient(),
        });
    }
    Ok(())
}

/// Basis of `S^k Ann(Σ0) ⊗ N`: degree-`k` polynomials whose polarization
/// vanishes on `Σ0`. Built as all degree-`k` products of a basis of the
/// annihilator of `Σ0`, tensored with each `y_j`.
pub fn annihilator_power_basis(sigma0: &Subspace, ctx: &Context) -> Result<Vec<SymPoly>> {
    check_in_l(sigma0, ctx.n)?;
    let forms = if sigma0.dim() == 0 {
        RatMatrix::identity(ctx.n).row_vecs()
    } else {
        sigma0.basis_matrix().kernel_basis()
    };
    let t = forms.len();
    let mut out = Vec::new();
    // multisets of size k from the t forms, via exponent vectors
    for combo in monomials(t, ctx.k) {
        for j in 0..ctx.m {
            let mut y = zeros(ctx.m);
            y[j] = Rational::one();
            let mut prod = SymPoly::constant(ctx.n, &y);
            for (f, &e) in combo.0.iter().enumerate() {
                for _ in 0..e {
                    prod = prod.mul_linear_form(&forms[f]);
                }
            }
            out.push(prod);
        }
    }
    Ok(out)
}

/// `q̂` restricted to the given basis of `Σ0`.
pub fn restrict_polarization(q: &SymPoly, sigma0: &Subspace) -> Result<HomLS> {
    check_in_l(sigma0, q.n)?;
    let domain = sigma0.basis();
    let images = domain.iter().map(|v| polarize_at(q, v)).collect::<Result<_>>()?;
    Ok(HomLS { domain, images })
}

/// Matrix of `q ↦ (q̂(v_1), …, q̂(v_s))` from `S^k L* ⊗ N` to
/// `(S^{k-1} L* ⊗ N)^s`, in monomial coordinates.
pub fn restriction_matrix(ctx: &Context, vectors: &[Vec<Rational>]) -> Result<RatMatrix> {
    let basis_k = monomials(ctx.n, ctx.k);
    let out_dim = ctx.poly_dim(ctx.k - 1);
    let cols = basis_k.len() * ctx.m;
    let mut mat = RatMatrix::zeros(out_dim * vectors.len(), cols);
    for (col_mono, sigma) in basis_k.iter().enumerate() {
        for j in 0..ctx.m {
            let col = col_mono * ctx.m + j;
            let e = SymPoly::monomial(ctx.m, sigma, j);
            for (b, v) in vectors.iter().enumerate() {
                let img = polarize_at(&e, v)?;
                for (r, x) in img.coeffs.iter().enumerate() {
                    if !x.is_zero() {
                        mat.set(b * out_dim + r, col, x.clone());
                    }
                }
            }
        }
    }
    Ok(mat)
}

/// Decides whether `h`, defined on a basis of all of `L`, is the
/// polarization of a degree-`k` polynomial, returning that polynomial.
///
/// The candidate is `p = Σ ξ^i ⊗ h(e_i)` (so `p(l) = h(l)(l, …, l)`).
pub fn reconstruct_generator(h: &HomLS) -> Result<Option<SymPoly>> {
    let Some(first) = h.images.first() else {
        return Err(Error::Input("homomorphism has an empty domain".into()));
    };
    let (n, m, d) = (first.n, first.m, first.degree);
    if h.domain.len() != n || h.images.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.domain.len(),
        });
    }
    for img in &h.images {
        first.same_space(img)?;
    }
    // express h on the standard basis: columns of the domain matrix D, h(e_i) = Σ_b (D^{-1})_{b i} h(v_b)
    let dmat = RatMatrix::from_columns(n, &h.domain)?;
    let mut standard = Vec::with_capacity(n);
    for i in 0..n {
        let coords = dmat
            .solve(&crate::rational::unit(n, i))?
            .ok_or_else(|| Error::Input("domain vectors do not form a basis of L".into()))?;
        let mut img = SymPoly::zero(n, m, d);
        for (b, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                img = img.add(&h.images[b].scale(c))?;
            }
        }
        standard.push(img);
    }
    let mut p = SymPoly::zero(n, m, d + 1);
    for (i, img) in standard.iter().enumerate() {
        p = p.add(&img.mul_linear_form(&crate::rational::unit(n, i)))?;
    }
    let hat = polarize(&p)?;
    if hat.images == standard {
        Ok(Some(p))
    } else {
        Ok(None)
    }
}

/// One serialized term of a [`SymPoly`]; `j` is one-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub sigma: Vec<u32>,
    pub j: usize,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPolyRecord {
    pub n: usize,
    pub m: usize,
    pub degree: usize,
    pub terms: Vec<TermRecord>,
}

impl From<&SymPoly> for SymPolyRecord {
    fn from(p: &SymPoly) -> Self {
        SymPolyRecord {
            n: p.n,
            m: p.m,
            degree: p.degree,
            terms: p
                .terms()
                .map(|(sigma, j, c)| {
                    let r = RatRepr::from(c);
                    TermRecord {
                        sigma: sigma.0,
                        j: j + 1,
                        num: r.num,
                        den: r.den,
                    }
                })
                .collect(),
        }
    }
}

impl SymPolyRecord {
    pub fn to_poly(&self) -> Result<SymPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = RatRepr {
                num: t.num.clone(),
                den: t.den.clone(),
            }
            .to_rational()
            .ok_or_else(|| Error::Input(format!("bad rational {}/{}", t.num, t.den)))?;
            if t.j == 0 || t.j > self.m {
                return Err(Error::Input(format!("normal index j={} outside 1..={}", t.j, self.m)));
            }
            terms.push((MultiIndex(t.sigma.clone()), t.j - 1, c));
        }
        SymPoly::from_terms(self.n, self.m, self.degree, &terms)
    }
}

impl SymPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SymPolyRecord::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<SymPoly> {
        let rec: SymPolyRecord = serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))?;
        rec.to_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, unit};

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex(e.to_vec())
    }

    fn scalar(n: usize, d: usize, terms: &[(&[u32], i64)]) -> SymPoly {
        let ts: Vec<_> = terms.iter().map(|(s, c)| (mi(s), 0, int(*c))).collect();
        SymPoly::from_terms(n, 1, d, &ts).unwrap()
    }

    #[test]
    fn monomial_order_and_rank_agree() {
        for n in 1..=4 {
            for d in 0..=4 {
                let ms = monomials(n, d);
                assert_eq!(ms.len(), sym_dim(n, d));
                for (i, s) in ms.iter().enumerate() {
                    assert_eq!(s.rank(), i, "{s}");
                }
                assert!(ms.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(monomials(2, 2), vec![mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])]);
    }

    #[test]
    fn evaluate_examples() {
        let p = scalar(3, 2, &[(&[2, 0, 0], 1)]);
        assert_eq!(p.evaluate(&[int(2), int(0), int(0)]).unwrap(), vec![int(4)]);
        let z = SymPoly::zero(2, 1, 3);
        assert_eq!(z.evaluate(&[int(7), int(-1)]).unwrap(), vec![int(0)]);
        let p = scalar(2, 2, &[(&[1, 1], 1)]);
        assert_eq!(p.evaluate(&[int(3), int(5)]).unwrap(), vec![int(15)]);
        assert!(p.evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn polarize_examples() {
        let p = scalar(2, 2, &[(&[2, 0], 1)]);
        let h = polarize(&p).unwrap();
        assert_eq!(h.images[0], scalar(2, 1, &[(&[1, 0], 1)]));
        assert!(h.images[1].is_zero());

        let p = scalar(2, 2, &[(&[1, 1], 1)]);
        let h = polarize(&p).unwrap();
        let half = |s: &[u32]| SymPoly::from_terms(2, 1, 1, &[(mi(s), 0, rat(1, 2))]).unwrap();
        assert_eq!(h.images[0], half(&[0, 1]));
        assert_eq!(h.images[1], half(&[1, 0]));

        let p = scalar(2, 1, &[(&[1, 0], 1)]);
        let h = polarize(&p).unwrap();
        assert_eq!(h.images[0], SymPoly::constant(2, &[int(1)]));
        assert!(h.images[1].is_zero());
    }

    #[test]
    fn annihilator_power_examples() {
        let ctx = Context::new(3, 1, 2).unwrap();
        let s0 = Subspace::coordinate(3, &[0, 1]);
        let basis = annihilator_power_basis(&s0, &ctx).unwrap();
        assert_eq!(basis, vec![scalar(3, 2, &[(&[0, 0, 2], 1)])]);

        assert!(annihilator_power_basis(&Subspace::full(3), &ctx).unwrap().is_empty());
        let all = annihilator_power_basis(&Subspace::zero(3), &ctx).unwrap();
        assert_eq!(all.len(), ctx.poly_dim(2));

        let bad = Subspace::full(4);
        assert!(matches!(
            annihilator_power_basis(&bad, &ctx),
            Err(Error::NotSubspaceOfL { .. })
        ));
    }

    #[test]
    fn restrict_polarization_examples() {
        let s0 = Subspace::coordinate(3, &[0]);
        let q = scalar(3, 2, &[(&[2, 0, 0], 1)]);
        let h = restrict_polarization(&q, &s0).unwrap();
        assert_eq!(h.images, vec![scalar(3, 1, &[(&[1, 0, 0], 1)])]);

        let q = scalar(3, 2, &[(&[0, 0, 2], 1)]);
        let h = restrict_polarization(&q, &Subspace::coordinate(3, &[0, 1])).unwrap();
        assert!(h.is_zero());

        let q = scalar(3, 2, &[(&[1, 1, 0], 3), (&[0, 1, 1], -1)]);
        let h = restrict_polarization(&q, &Subspace::full(3)).unwrap();
        assert_eq!(h, polarize(&q).unwrap());
    }

    #[test]
    fn reconstruct_examples() {
        let p = scalar(2, 2, &[(&[1, 1], 1), (&[0, 2], -3)]);
        assert_eq!(reconstruct_generator(&polarize(&p).unwrap()).unwrap(), Some(p));

        let h = HomLS {
            domain: vec![unit(2, 0), unit(2, 1)],
            images: vec![scalar(2, 1, &[(&[0, 1], 1)]), SymPoly::zero(2, 1, 1)],
        };
        assert_eq!(reconstruct_generator(&h).unwrap(), None);

        let h = HomLS {
            domain: vec![unit(2, 0), unit(2, 1)],
            images: vec![SymPoly::zero(2, 1, 1), SymPoly::zero(2, 1, 1)],
        };
        assert_eq!(reconstruct_generator(&h).unwrap(), Some(SymPoly::zero(2, 1, 2)));
    }

    #[test]
    fn reconstruct_accepts_non_standard_domain_basis() {
        let p = scalar(2, 3, &[(&[3, 0], 2), (&[1, 2], -1)]);
        let domain = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let images = domain.iter().map(|v| polarize_at(&p, v).unwrap()).collect();
        let h = HomLS { domain, images };
        assert_eq!(reconstruct_generator(&h).unwrap(), Some(p));
    }

    #[test]
    fn pullback_of_restriction() {
        // (ξ1 + ξ2)^2 restricted to the line through (1, -1) vanishes
        let p = scalar(2, 2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        assert!(p.pullback(&[vec![int(1), int(-1)]]).unwrap().is_zero());
        let r = p.pullback(&[vec![int(1), int(0)]]).unwrap();
        assert_eq!(r.coeffs(), &[int(1)]);
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let p = SymPoly::from_terms(2, 2, 2, &[(mi(&[1, 1]), 1, rat(-7, 3)), (mi(&[2, 0]), 0, rat(5, 1))]).unwrap();
        let s = p.to_json();
        assert!(s.contains("\"num\":\"-7\""));
        assert_eq!(SymPoly::from_json(&s).unwrap(), p);
    }
}
