//! The polar distribution of lines at `k = 2` in chart coordinates.
//!
//! On the affine chart `ℓ = D_1 + b^α D_α + f^j_i ∂_{u^j_i}` of the
//! projectivized Cartan plane the polar distribution is spanned by
//!
//! ```text
//! X_α   = ∂_{b^α} + f^j_α ∂_{f^j_1}
//! X^α_j = ∂_{f^j_α} − b^α ∂_{f^j_1}
//! ```
//!
//! and the substitution `b = y`, `f_α = v_α`, `f^j_1 = 2v^j − v^j_α y^α`
//! turns it into the Cartan distribution of a first-order jet space.
//! Indices follow the usual convention: `α ∈ 2..=n`, `i ∈ 1..=n`,
//! `j ∈ 1..=m`.

use crate::cartan::CartanPlane;
use crate::error::{Error, Result};
use crate::grassmann::CartanSubspace;
use crate::mpoly::{Chart, Poly, PolyVectorField};
use crate::polar::{dim_polar_formula, polar_plane};
use crate::rational::{int, one, rat, zero, zeros, Rational};
use crate::ratlin::Subspace;
use crate::report::Checked;
use crate::rng::SeededRng;
use crate::symalg::Context;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

fn check_nm(n: usize, m: usize) -> Result<()> {
    if n < 2 || m < 1 {
        return Err(Error::InvalidContext(format!("chart needs n >= 2 and m >= 1, got n={n}, m={m}")));
    }
    Ok(())
}

/// `(b^2..b^n, f^1_1..f^1_n, …, f^m_1..f^m_n)`.
pub fn pc_chart(n: usize, m: usize) -> Result<Chart> {
    check_nm(n, m)?;
    let mut names: Vec<String> = (2..=n).map(|a| format!("b^{a}")).collect();
    for j in 1..=m {
        names.extend((1..=n).map(|i| format!("f^{j}_{i}")));
    }
    Chart::new(names)
}

/// `(y^2..y^n, v^1..v^m, v^1_2..v^1_n, …, v^m_2..v^m_n)`.
pub fn jet_chart(n: usize, m: usize) -> Result<Chart> {
    check_nm(n, m)?;
    let mut names: Vec<String> = (2..=n).map(|a| format!("y^{a}")).collect();
    names.extend((1..=m).map(|j| format!("v^{j}")));
    for j in 1..=m {
        names.extend((2..=n).map(|a| format!("v^{j}_{a}")));
    }
    Chart::new(names)
}

/// Position of `b^α` in [`pc_chart`].
pub fn b_index(alpha: usize) -> usize {
    alpha - 2
}

/// Position of `f^j_i` in [`pc_chart`].
pub fn f_index(n: usize, j: usize, i: usize) -> usize {
    (n - 1) + (j - 1) * n + (i - 1)
}

/// Position of `y^α` in [`jet_chart`].
pub fn y_index(alpha: usize) -> usize {
    alpha - 2
}

/// Position of `v^j` in [`jet_chart`].
pub fn v_index(n: usize, j: usize) -> usize {
    (n - 1) + (j - 1)
}

/// Position of `v^j_α` in [`jet_chart`].
pub fn v_alpha_index(n: usize, m: usize, j: usize, alpha: usize) -> usize {
    (n - 1) + m + (j - 1) * (n - 1) + (alpha - 2)
}

/// `X_α = ∂_{b^α} + Σ_j f^j_α ∂_{f^j_1}`.
pub fn x_lower(n: usize, m: usize, alpha: usize) -> Result<PolyVectorField> {
    let chart = pc_chart(n, m)?;
    let mut x = PolyVectorField::coordinate(&chart, b_index(alpha));
    for j in 1..=m {
        let d = PolyVectorField::coordinate(&chart, f_index(n, j, 1)).mul_poly(&chart.var(f_index(n, j, alpha)));
        x = x.add(&d)?;
    }
    Ok(x)
}

/// `X^α_j = ∂_{f^j_α} − b^α ∂_{f^j_1}`.
pub fn x_upper(n: usize, m: usize, alpha: usize, j: usize) -> Result<PolyVectorField> {
    let chart = pc_chart(n, m)?;
    let d = PolyVectorField::coordinate(&chart, f_index(n, j, 1)).mul_poly(&chart.var(b_index(alpha)));
    PolyVectorField::coordinate(&chart, f_index(n, j, alpha)).sub(&d)
}

/// `X_2..X_n` followed by `X^α_j` for `j = 1..m`, `α = 2..n`.
pub fn polar_frame(n: usize, m: usize) -> Result<Vec<PolyVectorField>> {
    check_nm(n, m)?;
    let mut frame = (2..=n).map(|a| x_lower(n, m, a)).collect::<Result<Vec<_>>>()?;
    for j in 1..=m {
        for a in 2..=n {
            frame.push(x_upper(n, m, a, j)?);
        }
    }
    Ok(frame)
}

/// A polynomial change of chart, stored in both directions.
#[derive(Debug, Clone)]
pub struct CoordinateChange {
    from: Chart,
    to: Chart,
    /// coordinates of `to` as polynomials on `from`
    new_in_old: Vec<Poly>,
    /// coordinates of `from` as polynomials on `to`
    old_in_new: Vec<Poly>,
}

impl CoordinateChange {
    /// Checks that the two substitutions compose to the identity both ways.
    pub fn new(from: Chart, to: Chart, new_in_old: Vec<Poly>, old_in_new: Vec<Poly>) -> Result<Self> {
        if new_in_old.len() != to.len() || old_in_new.len() != from.len() {
            return Err(Error::NonInvertible);
        }
        if new_in_old.iter().any(|p| p.nvars() != from.len()) || old_in_new.iter().any(|p| p.nvars() != to.len()) {
            return Err(Error::ChartMismatch("substitution polynomials live on the wrong chart".into()));
        }
        for (w, p) in new_in_old.iter().enumerate() {
            if p.substitute(&old_in_new)? != to.var(w) {
                return Err(Error::NonInvertible);
            }
        }
        for (w, p) in old_in_new.iter().enumerate() {
            if p.substitute(&new_in_old)? != from.var(w) {
                return Err(Error::NonInvertible);
            }
        }
        Ok(CoordinateChange {
            from,
            to,
            new_in_old,
            old_in_new,
        })
    }

    /// `b = y`, `f^j_α = v^j_α`, `f^j_1 = 2v^j − v^j_α y^α`.
    pub fn jet_coordinates(n: usize, m: usize) -> Result<Self> {
        let from = pc_chart(n, m)?;
        let to = jet_chart(n, m)?;
        let mut new_in_old = vec![Poly::zero(from.len()); to.len()];
        let mut old_in_new = vec![Poly::zero(to.len()); from.len()];
        for a in 2..=n {
            new_in_old[y_index(a)] = from.var(b_index(a));
            old_in_new[b_index(a)] = to.var(y_index(a));
        }
        let half = rat(1, 2);
        for j in 1..=m {
            let mut vj = from.var(f_index(n, j, 1));
            let mut f1 = to.var(v_index(n, j)).scale(&int(2));
            for a in 2..=n {
                new_in_old[v_alpha_index(n, m, j, a)] = from.var(f_index(n, j, a));
                old_in_new[f_index(n, j, a)] = to.var(v_alpha_index(n, m, j, a));
                vj = vj.add(&from.var(f_index(n, j, a)).mul(&from.var(b_index(a))));
                f1 = f1.sub(&to.var(v_alpha_index(n, m, j, a)).mul(&to.var(y_index(a))));
            }
            new_in_old[v_index(n, j)] = vj.scale(&half);
            old_in_new[f_index(n, j, 1)] = f1;
        }
        CoordinateChange::new(from, to, new_in_old, old_in_new)
    }

    pub fn from_chart(&self) -> &Chart {
        &self.from
    }

    pub fn to_chart(&self) -> &Chart {
        &self.to
    }

    /// `X` expressed on the new chart: its `w`-component is `X(w)` with the
    /// old coordinates substituted.
    pub fn pushforward(&self, x: &PolyVectorField) -> Result<PolyVectorField> {
        if x.chart() != &self.from {
            return Err(Error::ChartMismatch("field does not live on the source chart".into()));
        }
        let coeffs = self
            .new_in_old
            .iter()
            .map(|w| x.apply(w).substitute(&self.old_in_new))
            .collect::<Result<Vec<_>>>()?;
        PolyVectorField::new(self.to.clone(), coeffs)
    }
}

/// One named polynomial identity and whether it holds.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContactReport {
    pub n: usize,
    pub m: usize,
    pub frame: Vec<String>,
    /// frame size against `dim P` for lines at `k = 2`
    pub frame_size: Checked,
    pub brackets: Vec<IdentityCheck>,
    pub pushforwards: Vec<IdentityCheck>,
}

impl ContactReport {
    pub fn passed(&self) -> bool {
        self.frame_size.agree && self.brackets.iter().chain(&self.pushforwards).all(|c| c.holds)
    }
}

fn delta(a: usize, b: usize) -> Rational {
    if a == b {
        one()
    } else {
        zero()
    }
}

/// The frame, all pairwise brackets and the three pushforward identities,
/// each checked coefficient-wise.
pub fn contact_report(n: usize, m: usize) -> Result<ContactReport> {
    let chart = pc_chart(n, m)?;
    let jet = jet_chart(n, m)?;
    let change = CoordinateChange::jet_coordinates(n, m)?;
    let frame = polar_frame(n, m)?;
    let ctx = Context::new(n, m, 2)?;
    let mut brackets = Vec::new();
    let mut pushforwards = Vec::new();

    for a in 2..=n {
        for b in 2..=n {
            if a < b {
                let br = x_lower(n, m, a)?.lie_bracket(&x_lower(n, m, b)?)?;
                brackets.push(IdentityCheck {
                    identity: format!("[X_{a}, X_{b}] = 0"),
                    holds: br.is_zero(),
                });
            }
            for j in 1..=m {
                let br = x_lower(n, m, a)?.lie_bracket(&x_upper(n, m, b, j)?)?;
                let expected = PolyVectorField::coordinate(&chart, f_index(n, j, 1)).scale(&(int(-2) * delta(a, b)));
                brackets.push(IdentityCheck {
                    identity: format!("[X_{a}, X^{b}_{j}] = {}", expected),
                    holds: br == expected,
                });
                let pushed = change.pushforward(&br)?;
                let target = PolyVectorField::coordinate(&jet, v_index(n, j)).scale(&-delta(a, b));
                pushforwards.push(IdentityCheck {
                    identity: format!("push [X_{a}, X^{b}_{j}] = {}", target),
                    holds: pushed == target,
                });
            }
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            for a in 2..=n {
                for b in 2..=n {
                    if (i, a) < (j, b) {
                        let br = x_upper(n, m, a, i)?.lie_bracket(&x_upper(n, m, b, j)?)?;
                        brackets.push(IdentityCheck {
                            identity: format!("[X^{a}_{i}, X^{b}_{j}] = 0"),
                            holds: br.is_zero(),
                        });
                    }
                }
            }
        }
    }
    for a in 2..=n {
        let mut target = PolyVectorField::coordinate(&jet, y_index(a));
        for j in 1..=m {
            let d = PolyVectorField::coordinate(&jet, v_index(n, j)).mul_poly(&jet.var(v_alpha_index(n, m, j, a)));
            target = target.add(&d)?;
        }
        let pushed = change.pushforward(&x_lower(n, m, a)?)?;
        pushforwards.push(IdentityCheck {
            identity: format!("push X_{a} = {target}"),
            holds: pushed == target,
        });
        for j in 1..=m {
            let target = PolyVectorField::coordinate(&jet, v_alpha_index(n, m, j, a));
            let pushed = change.pushforward(&x_upper(n, m, a, j)?)?;
            pushforwards.push(IdentityCheck {
                identity: format!("push X^{a}_{j} = {target}"),
                holds: pushed == target,
            });
        }
    }

    Ok(ContactReport {
        n,
        m,
        frame: frame.iter().map(ToString::to_string).collect(),
        frame_size: Checked::new(dim_polar_formula(&ctx, 1), frame.len()),
        brackets,
        pushforwards,
    })
}

/// The line `ℓ = D_1 + b^α D_α + f^j_i ∂_{u^j_i}` for a chart point.
pub fn line_at(plane: &Arc<CartanPlane>, point: &[Rational]) -> Result<CartanSubspace> {
    let Context { n, m, .. } = *plane.context();
    let chart_len = (n - 1) + n * m;
    if point.len() != chart_len {
        return Err(Error::DimensionMismatch {
            expected: chart_len,
            found: point.len(),
        });
    }
    let mut v = zeros(plane.dim());
    v[0] = one();
    let tangent = chart_vector_to_cartan(plane, point);
    for (x, t) in v.iter_mut().zip(tangent).skip(1) {
        *x += t;
    }
    CartanSubspace::span(plane.clone(), &[v])
}

/// Chart tangent vector `(B^α, F^j_i)` as the vector `B^α D_α + F^j_i ∂_{u^j_i}`.
fn chart_vector_to_cartan(plane: &CartanPlane, w: &[Rational]) -> Vec<Rational> {
    let Context { n, m, .. } = *plane.context();
    let mut v = zeros(plane.dim());
    for a in 2..=n {
        v[a - 1] = w[b_index(a)].clone();
    }
    for j in 1..=m {
        for i in 1..=n {
            // degree-one monomial ξ^i has rank i-1
            v[n + (i - 1) * m + (j - 1)] = w[f_index(n, j, i)].clone();
        }
    }
    v
}

/// `F^j_1 = f^j_α B^α − b^α F^j_α` for every `j`.
pub fn kernel_condition(n: usize, m: usize, point: &[Rational], w: &[Rational]) -> bool {
    (1..=m).all(|j| {
        let mut rhs = zero();
        for a in 2..=n {
            rhs += &point[f_index(n, j, a)] * &w[b_index(a)];
            rhs -= &point[b_index(a)] * &w[f_index(n, j, a)];
        }
        w[f_index(n, j, 1)] == rhs
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PointCheck {
    pub span_equal: bool,
    pub membership_agrees: bool,
    pub polar_dim: usize,
}

/// Compares the frame at one chart point with the polar plane of its line,
/// and the membership test with [`kernel_condition`] on sampled vectors.
pub fn check_point(n: usize, m: usize, point: &[Rational], rng: &mut SeededRng, probes: usize) -> Result<PointCheck> {
    let ctx = Context::new(n, m, 2)?;
    let plane = Arc::new(CartanPlane::new(ctx));
    let line = line_at(&plane, point)?;
    let polar = polar_plane(&line)?;
    let images: Vec<Vec<Rational>> = polar.iter().map(|p| p.images()[0].clone()).collect();
    let polar_span = Subspace::span(plane.dim(), &images)?;

    let frame = polar_frame(n, m)?;
    let frame_vectors: Vec<Vec<Rational>> = frame
        .iter()
        .map(|x| line.space().reduce(&chart_vector_to_cartan(&plane, &x.evaluate(point))))
        .collect();
    let frame_span = Subspace::span(plane.dim(), &frame_vectors)?;
    let span_equal = frame_span.same_as(&polar_span)? && frame_span.dim() == frame.len();

    let chart_len = point.len();
    let mut membership_agrees = true;
    for probe in 0..probes {
        let mut w = rng.vector(chart_len);
        if probe % 2 == 0 {
            // force the kernel condition on half of the probes
            for j in 1..=m {
                let mut rhs = zero();
                for a in 2..=n {
                    rhs += &point[f_index(n, j, a)] * &w[b_index(a)];
                    rhs -= &point[b_index(a)] * &w[f_index(n, j, a)];
                }
                w[f_index(n, j, 1)] = rhs;
            }
        }
        let v = line.space().reduce(&chart_vector_to_cartan(&plane, &w));
        if polar_span.contains_vector(&v)? != kernel_condition(n, m, point, &w) {
            membership_agrees = false;
        }
    }
    Ok(PointCheck {
        span_equal,
        membership_agrees,
        polar_dim: polar.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelCheckReport {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub samples: usize,
    pub span_equal: usize,
    pub membership_agrees: usize,
    pub polar_dim: Checked,
}

impl KernelCheckReport {
    pub fn passed(&self) -> bool {
        self.span_equal == self.samples && self.membership_agrees == self.samples && self.polar_dim.agree
    }
}

/// [`check_point`] at the origin and at `samples − 1` seeded rational points.
pub fn kernel_condition_check(n: usize, m: usize, seed: u64, samples: usize) -> Result<KernelCheckReport> {
    check_nm(n, m)?;
    let chart_len = (n - 1) + n * m;
    let results = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = SeededRng::derived(seed, i as u64);
            let point = if i == 0 { zeros(chart_len) } else { rng.vector(chart_len) };
            check_point(n, m, &point, &mut rng, 8)
        })
        .collect::<Result<Vec<_>>>()?;
    let ctx = Context::new(n, m, 2)?;
    let observed = results.first().map_or(0, |r| r.polar_dim);
    let consistent = results.iter().all(|r| r.polar_dim == observed);
    let formula = dim_polar_formula(&ctx, 1);
    Ok(KernelCheckReport {
        n,
        m,
        seed,
        samples,
        span_equal: results.iter().filter(|r| r.span_equal).count(),
        membership_agrees: results.iter().filter(|r| r.membership_agrees).count(),
        polar_dim: if consistent { Checked::new(formula, observed) } else { Checked { formula, rank: observed, agree: false } },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_sizes() {
        assert_eq!(polar_frame(2, 1).unwrap().len(), 2);
        let f = polar_frame(3, 1).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f[0].to_string(), "d/db^2 + (f^1_2)*d/df^1_1");
        assert_eq!(f[2].to_string(), "(-b^2)*d/df^1_1 + d/df^1_2");
        assert!(polar_frame(1, 1).is_err());
    }

    #[test]
    fn frame_identities() {
        for n in 2..=4 {
            for m in 1..=2 {
                let r = contact_report(n, m).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn non_invertible_change_is_rejected() {
        let from = Chart::new(vec!["a".into()]).unwrap();
        let to = Chart::new(vec!["c".into()]).unwrap();
        let sq = from.var(0).mul(&from.var(0));
        let r = CoordinateChange::new(from, to.clone(), vec![sq], vec![to.var(0)]);
        assert!(matches!(r, Err(Error::NonInvertible)));
    }

    #[test]
    fn origin_point() {
        let mut rng = SeededRng::new(1);
        let c = check_point(3, 1, &zeros(5), &mut rng, 6).unwrap();
        assert!(c.span_equal && c.membership_agrees);
        assert_eq!(c.polar_dim, 4);
    }

    #[test]
    fn random_points() {
        let r = kernel_condition_check(3, 1, 11, 6).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = kernel_condition_check(2, 2, 12, 4).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
