//! JSON form of a subspace of a Cartan plane.
//!
//! ```json
//! {"n": 3, "m": 1, "k": 2, "basis": [[1, 0, 0, "1/2", 0, 0], [0, 1, 0, 0, {"num": "3", "den": "4"}, 0]]}
//! ```
//!
//! Entries may be integers, `"p/q"` strings or `{num, den}` objects.
//! Coordinates are `[l_1..l_n | vertical]`, the vertical block indexed by
//! `monomial_rank * m + j` over monomials of degree `k - 1` in graded order.

use crate::cartan::CartanPlane;
use crate::error::{Error, Result};
use crate::grassmann::CartanSubspace;
use crate::rational::{repr_vec, RatInput, RatRepr, Rational};
use crate::symalg::Context;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceInput {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub basis: Vec<Vec<RatInput>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubspaceOutput {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub basis: Vec<Vec<RatRepr>>,
}

impl SubspaceOutput {
    pub fn new(sigma: &CartanSubspace) -> Self {
        let ctx = sigma.context();
        SubspaceOutput {
            n: ctx.n,
            m: ctx.m,
            k: ctx.k,
            basis: sigma.basis().iter().map(|v| repr_vec(v)).collect(),
        }
    }
}

/// Parses and validates; errors name the offending line/column or field.
pub fn parse_subspace(text: &str) -> Result<CartanSubspace> {
    let input: SubspaceInput = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    subspace_from_input(&input)
}

pub fn subspace_from_input(input: &SubspaceInput) -> Result<CartanSubspace> {
    let ctx = Context::new(input.n, input.m, input.k)?;
    let plane = Arc::new(CartanPlane::new(ctx));
    let dim = plane.dim();
    let mut rows = Vec::with_capacity(input.basis.len());
    for (i, row) in input.basis.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::Input(format!(
                "basis[{i}]: expected {dim} coordinates for (n={}, m={}, k={}), found {}",
                ctx.n,
                ctx.m,
                ctx.k,
                row.len()
            )));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, x)| {
                x.to_rational()
                    .ok_or_else(|| Error::Input(format!("basis[{i}][{j}]: not a rational number")))
            })
            .collect::<Result<Vec<Rational>>>()?;
        rows.push(parsed);
    }
    CartanSubspace::span(plane, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_rationals() {
        let s = parse_subspace(r#"{"n":2,"m":1,"k":2,"basis":[[1,0,"1/2",{"num":"3","den":"4"}]]}"#).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.is_integral_element());
    }

    #[test]
    fn reports_locations() {
        let e = parse_subspace(r#"{"n":2,"m":1,"k":2,"basis":[[1,0,"x",0]]}"#).unwrap_err();
        assert!(e.to_string().contains("basis[0][2]"), "{e}");
        let e = parse_subspace("{\"n\":2,\n\"m\":1,").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let e = parse_subspace(r#"{"n":2,"m":1,"k":2,"basis":[[1,0,0]]}"#).unwrap_err();
        assert!(e.to_string().contains("expected 4"), "{e}");
    }
}
