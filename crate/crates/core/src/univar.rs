//! Dense univariate polynomials over `Q` with exact real-root isolation.
//!
//! Rational roots are found with the rational root theorem; the remaining
//! real roots are isolated by bisection on Sturm sequence counts. No
//! floating point is involved.

use crate::error::{Error, Result};
use crate::rational::{int, one, zero, Rational};
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::rational::RatRepr;

/// Coefficients from the constant term up; never has a zero leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `t − r`.
    pub fn linear_root(r: &Rational) -> Self {
        UniPoly::new(vec![-r.clone(), one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-one()))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => self.scale(&(one() / l)),
            None => UniPoly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn square_free(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Sturm sequence `p, p', −rem(p, p'), …`.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone()];
        if self.is_zero() {
            return chain;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let (_, r) = chain.last().expect("nonempty").div_rem(&next);
            chain.push(next);
            next = r.scale(&-one());
        }
        chain
    }

    /// Distinct real roots in `(lo, hi]` for a square-free polynomial.
    pub fn count_roots_in(chain: &[UniPoly], lo: &Rational, hi: &Rational) -> usize {
        sign_changes(chain, lo).saturating_sub(sign_changes(chain, hi))
    }

    /// `1 + max |a_i / a_d|`: every real root lies strictly inside.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(zero);
        max + one()
    }

    /// Integer coefficients with the same roots, content removed.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// All distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Err(Error::Input("the zero polynomial has every number as a root".into()));
        }
        let mut roots = Vec::new();
        let mut p = self.square_free();
        if p.coeffs.first().is_some_and(Zero::is_zero) {
            roots.push(zero());
            p = p.div_rem(&UniPoly::linear_root(&zero())).0;
        }
        if p.degree().unwrap_or(0) == 0 {
            return Ok(roots);
        }
        let ints = p.primitive_integer();
        let a0 = ints.first().expect("nonconstant").abs();
        let an = ints.last().expect("nonconstant").abs();
        let num_divs = divisors(&a0)?;
        let den_divs = divisors(&an)?;
        for q in &den_divs {
            for d in &num_divs {
                if d.gcd(q) != BigInt::one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let r = Rational::new(d * BigInt::from(sign), q.clone());
                    if p.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    /// Every distinct real root, exactly when rational and by an isolating
    /// interval otherwise, in ascending order.
    pub fn real_roots(&self) -> Result<Vec<RealRoot>> {
        let sf = self.square_free();
        let rational = sf.rational_roots()?;
        let mut rest = sf.clone();
        for r in &rational {
            rest = rest.div_rem(&UniPoly::linear_root(r)).0;
        }
        let mut out: Vec<RealRoot> = rational.into_iter().map(RealRoot::Exact).collect();
        if rest.degree().unwrap_or(0) > 0 {
            let chain = rest.sturm_chain();
            let b = rest.cauchy_bound();
            isolate(&chain, -b.clone(), b, &mut out);
        }
        out.sort_by(|a, b| a.lower().cmp(b.lower()));
        Ok(out)
    }
}

fn sign_changes(chain: &[UniPoly], t: &Rational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(t))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Bisection on `(lo, hi]`; the polynomial has no rational roots, so
/// midpoints are never roots.
fn isolate(chain: &[UniPoly], lo: Rational, hi: Rational, out: &mut Vec<RealRoot>) {
    match UniPoly::count_roots_in(chain, &lo, &hi) {
        0 => {}
        1 => out.push(RealRoot::Isolated { lo, hi }),
        _ => {
            let mid = (&lo + &hi) / int(2);
            isolate(chain, lo, mid.clone(), out);
            isolate(chain, mid, hi, out);
        }
    }
}

/// Largest integer whose divisors are enumerated by trial division.
const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let Some(v) = n.to_u64().filter(|&v| v <= DIVISOR_LIMIT) else {
        return Err(Error::Undecided(format!("coefficient {n} too large for rational root search")));
    };
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d * d != v {
                large.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// A real root: exact, or inside the half-open interval `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    Isolated { lo: Rational, hi: Rational },
}

impl RealRoot {
    pub fn lower(&self) -> &Rational {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Isolated { lo, .. } => lo,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RealRoot::Exact(r) => Some(r),
            RealRoot::Isolated { .. } => None,
        }
    }

    pub fn record(&self) -> RealRootRecord {
        match self {
            RealRoot::Exact(r) => RealRootRecord {
                exact: Some(r.into()),
                lo: None,
                hi: None,
            },
            RealRoot::Isolated { lo, hi } => RealRootRecord {
                exact: None,
                lo: Some(lo.into()),
                hi: Some(hi.into()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RealRootRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<RatRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<RatRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<RatRepr>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // t² − 1
        let b = p(&[1, 1]); // t + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), b);
        assert_eq!(p(&[1, 2, 1]).square_free(), b);
    }

    #[test]
    fn rational_roots() {
        // (2t − 1)(t + 3) t
        let f = p(&[0, -1, 2]).mul(&p(&[3, 1]));
        assert_eq!(f.rational_roots().unwrap(), vec![int(-3), int(0), rat(1, 2)]);
        assert!(p(&[1, 0, 1]).rational_roots().unwrap().is_empty());
    }

    #[test]
    fn irrational_roots_are_isolated() {
        // t² − 2
        let roots = p(&[-2, 0, 1]).real_roots().unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let RealRoot::Isolated { lo, hi } = r else { panic!("expected isolation") };
            assert!(lo < hi);
            let f = p(&[-2, 0, 1]);
            assert!(f.eval(lo) * f.eval(hi) <= zero());
        }
        // (t − 1)(t³ − 2): one exact and one isolated root
        let f = p(&[-1, 1]).mul(&p(&[-2, 0, 0, 1]));
        let roots = f.real_roots().unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots.iter().filter(|r| r.exact().is_some()).count(), 1);
    }

    #[test]
    fn sturm_counts() {
        let f = p(&[0, -1, 0, 1]); // t³ − t
        let chain = f.sturm_chain();
        assert_eq!(UniPoly::count_roots_in(&chain, &int(-2), &int(2)), 3);
        assert_eq!(UniPoly::count_roots_in(&chain, &rat(1, 2), &int(2)), 1);
    }
}
