//! Degree-bounded ideal membership by linear algebra.

use std::collections::HashMap;

use crate::algebra::matrix::{FMatrix, Matrix, Ring};
use crate::algebra::poly::{monomials_of_degree, Exponent, MultiPoly};

/// Solve `target = Σ_k gens[k]·h_k` with each `h_k` homogeneous of degree
/// `mult_degrees[k]`. Returns the multipliers, or `None` if no solution
/// exists in those degrees.
///
/// The unknowns are ordered generator-major, monomial-minor (monomials in
/// descending lex order), so the returned solution is reproducible.
pub fn homogeneous_membership(target: &MultiPoly, gens: &[MultiPoly], mult_degrees: &[u16]) -> Option<Vec<MultiPoly>> {
    assert_eq!(gens.len(), mult_degrees.len());
    let field = target.field();
    let vars = target.vars().clone();
    let n = vars.len();
    let d = target.total_degree().unwrap_or(0) as u16;

    let mut row_of: HashMap<Exponent, usize> = HashMap::new();
    for e in target.terms().keys() {
        let k = row_of.len();
        row_of.entry(e.clone()).or_insert(k);
    }
    let mut columns: Vec<Vec<(usize, crate::algebra::FieldElement)>> = Vec::new();
    let mut unknowns: Vec<(usize, Exponent)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        for m in monomials_of_degree(n, mult_degrees[k]) {
            let prod = g.mul(&MultiPoly::monomial(field.one(), vars.clone(), m.clone()));
            let mut col = Vec::new();
            for (e, c) in prod.terms() {
                let next = row_of.len();
                let r = *row_of.entry(e.clone()).or_insert(next);
                col.push((r, c.clone()));
            }
            columns.push(col);
            unknowns.push((k, m));
        }
    }
    let rows = row_of.len();
    let mut a: FMatrix = Matrix::zeros(field, rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (r, c) in col {
            a[(*r, j)] = c.clone();
        }
    }
    let mut b: FMatrix = Matrix::zeros(field, rows, 1);
    for (e, c) in target.terms() {
        b[(row_of[e], 0)] = c.clone();
    }
    // degree mismatch between target and products cannot be solved
    if target.terms().keys().any(|e| e.iter().map(|&x| x as u32).sum::<u32>() != d as u32) {
        return None;
    }
    let x = a.solve(&b)?;
    let mut out: Vec<MultiPoly> = gens.iter().map(|_| MultiPoly::zero(field, vars.clone())).collect();
    for (j, (k, m)) in unknowns.into_iter().enumerate() {
        out[k].add_term(m, x[(j, 0)].clone());
    }
    Some(out)
}

/// `Σ gens[k]·mults[k]`, expanded directly.
pub fn combine(gens: &[MultiPoly], mults: &[MultiPoly]) -> MultiPoly {
    let mut acc = gens[0].zero_like();
    for (g, h) in gens.iter().zip(mults) {
        acc = acc.add(&g.mul(h));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;
    use crate::algebra::poly::var_names;

    #[test]
    fn trivial_certificate() {
        let f = Field::Rational;
        let v = var_names("X", 3);
        let x = |i| MultiPoly::var(f, v.clone(), i);
        let q1 = x(0).mul(&x(1));
        let q2 = x(2).mul(&x(2));
        let cubic = q1.mul(&x(0));
        let cert = homogeneous_membership(&cubic, &[q1.clone(), q2.clone()], &[1, 1]).unwrap();
        assert_eq!(combine(&[q1.clone(), q2.clone()], &cert), cubic);
        assert_eq!(cert[0], x(0));
        assert!(cert[1].is_zero());
        let bad = x(1).pow(3);
        assert!(homogeneous_membership(&bad, &[q1, q2], &[1, 1]).is_none());
    }
}
