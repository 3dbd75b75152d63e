//! Sparse multivariate polynomials over `Q`, named charts and
//! polynomial-coefficient vector fields.

use crate::error::{Error, Result};
use crate::rational::{one, zero, Rational};
use num::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in `nvars` variables, keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-one())
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Rational::from_integer(e[i].into()));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// `p(q_1, …, q_nvars)`; all `q_i` share a ring, which becomes the
    /// ring of the result.
    pub fn substitute(&self, values: &[Poly]) -> Result<Poly> {
        if values.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: values.len(),
            });
        }
        let target = values.first().map_or(0, Poly::nvars);
        if values.iter().any(|q| q.nvars != target) {
            return Err(Error::Input("substituted polynomials live in different rings".into()));
        }
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (q, &k) in values.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&q.pow(k));
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Renders with the given variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // higher total degree first, then the map order reversed for a stable look
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], k) })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Ordered, distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::ChartMismatch(format!("duplicate variable name {n}")));
            }
        }
        Ok(Chart { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.len(), i)
    }
}

/// `Σ c_i(x) ∂_{x_i}` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    chart: Chart,
    coeffs: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(chart: Chart, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != chart.len() || coeffs.iter().any(|c| c.nvars() != chart.len()) {
            return Err(Error::ChartMismatch("coefficient count or ring does not match the chart".into()));
        }
        Ok(PolyVectorField { chart, coeffs })
    }

    pub fn zero(chart: &Chart) -> Self {
        PolyVectorField {
            coeffs: vec![Poly::zero(chart.len()); chart.len()],
            chart: chart.clone(),
        }
    }

    /// `∂_{x_i}`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut v = PolyVectorField::zero(chart);
        v.coeffs[i] = Poly::constant(chart.len(), one());
        v
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn same_chart(&self, other: &PolyVectorField) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch("vector fields live on different charts".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.same_chart(other)?;
        Ok(PolyVectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.add(&other.scale(&-one()))
    }

    pub fn scale(&self, s: &Rational) -> PolyVectorField {
        PolyVectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// `f·X`.
    pub fn mul_poly(&self, f: &Poly) -> PolyVectorField {
        PolyVectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mul(f)).collect(),
        }
    }

    /// `X(f) = Σ c_i ∂_i f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.chart.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&c.mul(&f.derivative(i)));
            }
        }
        out
    }

    /// `[X, Y]_i = X(Y_i) − Y(X_i)`.
    pub fn lie_bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.same_chart(other)?;
        let coeffs = (0..self.chart.len())
            .map(|i| self.apply(&other.coeffs[i]).sub(&other.apply(&self.coeffs[i])))
            .collect();
        Ok(PolyVectorField {
            chart: self.chart.clone(),
            coeffs,
        })
    }

    pub fn evaluate(&self, point: &[Rational]) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.evaluate(point)).collect()
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.chart.names();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = c.display(names).to_string();
            if body == "1" {
                write!(f, "d/d{}", names[i])?;
            } else {
                write!(f, "({body})*d/d{}", names[i])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn chart(n: usize) -> Chart {
        Chart::new((0..n).map(|i| format!("x{i}")).collect()).unwrap()
    }

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.evaluate(&[int(1), int(2)]), int(9));
        assert_eq!(p.derivative(0), x.scale(&int(2)).add(&y.scale(&int(2))));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.total_degree(), Some(2));
        let q = p.substitute(&[y.clone(), x.clone()]).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn bracket_base_cases() {
        let c = chart(3);
        let d0 = PolyVectorField::coordinate(&c, 0);
        let d2 = PolyVectorField::coordinate(&c, 2);
        assert!(d0.lie_bracket(&d0).unwrap().is_zero());
        let x1_d2 = d2.mul_poly(&c.var(1));
        assert!(d0.lie_bracket(&x1_d2).unwrap().is_zero());
        let x0_d2 = d2.mul_poly(&c.var(0));
        assert_eq!(d0.lie_bracket(&x0_d2).unwrap(), d2);
    }

    #[test]
    fn chart_rejects_duplicates() {
        assert!(Chart::new(vec!["a".into(), "a".into()]).is_err());
        let other = Chart::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let c = chart(3);
        let r = PolyVectorField::zero(&c).lie_bracket(&PolyVectorField::zero(&other));
        assert!(matches!(r, Err(Error::ChartMismatch(_))));
    }

    #[test]
    fn display() {
        let c = chart(2);
        let v = PolyVectorField::coordinate(&c, 0).add(&PolyVectorField::coordinate(&c, 1).mul_poly(&c.var(0).scale(&int(-2)))).unwrap();
        assert_eq!(v.to_string(), "d/dx0 + (-2*x0)*d/dx1");
    }
}
