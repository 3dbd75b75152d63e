//! Seeded sampling of rationals, subspaces and polynomials.
//!
//! The generator is xoshiro256** seeded through SplitMix64 (the reference
//! `seed_from_u64` construction), so a seed names the same stream in any
//! implementation of those two algorithms. Integers in `[lo, hi]` are drawn
//! as `lo + next_u64() % (hi - lo + 1)`; the slight modulo bias is
//! irrelevant here and keeps the rule trivially portable.

use crate::rational::Rational;
use crate::ratlin::{RatMatrix, Subspace};
use crate::symalg::{Context, SymPoly};
use num::{BigInt, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

/// Largest absolute numerator drawn by default.
pub const NUM_BOUND: i64 = 5;
/// Largest denominator drawn by default.
pub const DEN_BOUND: i64 = 3;

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: Xoshiro256StarStar,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    /// Independent stream for sub-task `index` of a run seeded with `seed`.
    pub fn derived(seed: u64, index: u64) -> Self {
        let mut base = SeededRng::new(seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index.wrapping_add(1)));
        base.next_u64();
        base
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn rational(&mut self) -> Rational {
        self.rational_bounded(NUM_BOUND, DEN_BOUND)
    }

    pub fn rational_bounded(&mut self, num_bound: i64, den_bound: i64) -> Rational {
        let num = self.int_in(-num_bound, num_bound);
        let den = self.int_in(1, den_bound);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn vector(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    /// `rows` independent vectors of length `cols`, rejecting rank-deficient
    /// draws. Panics if `rows > cols`.
    pub fn independent_vectors(&mut self, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
        assert!(rows <= cols, "cannot draw {rows} independent vectors in dimension {cols}");
        loop {
            let vs: Vec<Vec<Rational>> = (0..rows).map(|_| self.vector(cols)).collect();
            let m = RatMatrix::from_rows(cols, vs.clone()).expect("uniform lengths");
            if m.rank() == rows {
                return vs;
            }
        }
    }

    /// Random `s`-dimensional subspace of `L = Q^n`.
    pub fn subspace(&mut self, n: usize, s: usize) -> Subspace {
        let vs = self.independent_vectors(s, n);
        Subspace::span(n, &vs).expect("uniform lengths")
    }

    pub fn sym_poly(&mut self, ctx: &Context, degree: usize) -> SymPoly {
        let len = ctx.poly_dim(degree);
        SymPoly::from_vector(ctx.n, ctx.m, degree, self.vector(len)).expect("length matches")
    }

    /// Random invertible `size × size` matrix, used to re-base subspaces.
    pub fn invertible(&mut self, size: usize) -> RatMatrix {
        let rows = self.independent_vectors(size, size);
        RatMatrix::from_rows(size, rows).expect("uniform lengths")
    }

    /// Random combination of the given vectors.
    pub fn combination(&mut self, vectors: &[Vec<Rational>], len: usize) -> Vec<Rational> {
        let mut out = crate::rational::zeros(len);
        for v in vectors {
            let c = self.rational();
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o += &c * x;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SeededRng::new(42);
        let mut b = SeededRng::new(42);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        assert_ne!(SeededRng::new(1).next_u64(), SeededRng::new(2).next_u64());
    }

    #[test]
    fn subspaces_have_requested_dimension() {
        let mut r = SeededRng::new(7);
        for s in 0..=4 {
            assert_eq!(r.subspace(4, s).dim(), s);
        }
    }

    #[test]
    fn ints_stay_in_range() {
        let mut r = SeededRng::new(3);
        for _ in 0..1000 {
            let x = r.int_in(-2, 3);
            assert!((-2..=3).contains(&x));
        }
    }
}
