//! Sparse multivariate polynomials with dense exponent vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::matrix::Ring;
use crate::error::{Error, Result};

pub type Exponent = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: Field,
    vars: Arc<[String]>,
    terms: BTreeMap<Exponent, FieldElement>,
}

/// Variable names `prefix0 .. prefix{n-1}`.
pub fn var_names(prefix: &str, n: usize) -> Arc<[String]> {
    (0..n).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().into()
}

/// Variable names `prefix{start} .. prefix{start+n-1}`.
pub fn var_names_from(prefix: &str, start: usize, n: usize) -> Arc<[String]> {
    (start..start + n).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().into()
}

/// All exponent vectors of total degree `d` in `n` variables, in descending lex order.
pub fn monomials_of_degree(n: usize, d: u16) -> Vec<Exponent> {
    fn rec(n: usize, d: u16, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

impl MultiPoly {
    pub fn zero(field: Field, vars: Arc<[String]>) -> Self {
        MultiPoly { field, vars, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, vars: Arc<[String]>) -> Self {
        let mut p = MultiPoly::zero(c.field(), vars);
        let n = p.nvars();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(field: Field, vars: Arc<[String]>) -> Self {
        MultiPoly::constant(field.one(), vars)
    }

    pub fn var(field: Field, vars: Arc<[String]>, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = MultiPoly::zero(field, vars);
        p.add_term(e, field.one());
        p
    }

    pub fn monomial(c: FieldElement, vars: Arc<[String]>, exp: Exponent) -> Self {
        assert_eq!(exp.len(), vars.len());
        let mut p = MultiPoly::zero(c.field(), vars);
        p.add_term(exp, c);
        p
    }

    /// The linear form `Σ coeffs[i]·x_i`.
    pub fn linear(field: Field, vars: Arc<[String]>, coeffs: &[FieldElement]) -> Self {
        assert_eq!(coeffs.len(), vars.len(), "linear form arity");
        let n = vars.len();
        let mut p = MultiPoly::zero(field, vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(field: Field, vars: Arc<[String]>, terms: impl IntoIterator<Item = (Exponent, FieldElement)>) -> Self {
        let mut p = MultiPoly::zero(field, vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.nvars(), "exponent arity");
            p.add_term(e, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElement> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same polynomial over a different list of variable names of equal length.
    pub fn with_vars(&self, vars: Arc<[String]>) -> Self {
        assert_eq!(vars.len(), self.nvars());
        MultiPoly { field: self.field, vars, terms: self.terms.clone() }
    }

    pub fn add_term(&mut self, e: Exponent, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn coeff(&self, e: &[u16]) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().map(|&x| x as u32).sum::<u32>() == d)
    }

    /// Coefficients of a linear form, one per variable.
    pub fn linear_coeffs(&self) -> Result<Vec<FieldElement>> {
        if !self.is_homogeneous(1) {
            return Err(Error::InvalidInput("not a linear form".into()));
        }
        let n = self.nvars();
        Ok((0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                self.coeff(&e)
            })
            .collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.field, self.vars.clone());
        }
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one(self.field, self.vars.clone());
        for _ in 0..k {
            acc = Ring::mul(&acc, self);
        }
        acc
    }

    pub fn eval(&self, pt: &[FieldElement]) -> FieldElement {
        assert_eq!(pt.len(), self.nvars(), "evaluation point arity");
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k as u128);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = MultiPoly::zero(self.field, self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &self.field.from_i64(e[i] as i64));
        }
        out
    }

    /// Substitute `images[i]` for the i-th variable. The images share a target
    /// variable list.
    pub fn compose(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target_vars = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(self.field, target_vars.clone()), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(self.field, target_vars.clone());
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), target_vars.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = Ring::mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    t = Ring::mul(&t, &powers[i][k as usize]);
                }
            }
            out = Ring::add(&out, &t);
        }
        out
    }

    /// Pull back along a linear map given as a matrix: variable `i` becomes
    /// `Σ_j m[i][j]·y_j` in the target variables.
    pub fn linear_substitute(&self, m: &crate::algebra::matrix::FMatrix, target: Arc<[String]>) -> Self {
        assert_eq!(m.rows(), self.nvars());
        assert_eq!(m.cols(), target.len());
        let images: Vec<MultiPoly> =
            (0..m.rows()).map(|i| MultiPoly::linear(self.field, target.clone(), &m.row(i))).collect();
        if images.is_empty() {
            return MultiPoly::constant(self.coeff(&[]), target);
        }
        self.compose(&images)
    }

    /// Leading term in lex order (first variable largest).
    pub fn leading_term(&self) -> Option<(&Exponent, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (de, dc) = d.leading_term()?;
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(self.field, self.vars.clone());
        while let Some((re, rc)) = rem.leading_term() {
            if !re.iter().zip(de).all(|(a, b)| a >= b) {
                return None;
            }
            let e: Exponent = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let c = rc * &dc_inv;
            let t = MultiPoly::monomial(c, self.vars.clone(), e);
            rem = Ring::sub(&rem, &Ring::mul(&t, d));
            q = Ring::add(&q, &t);
        }
        Some(q)
    }

    /// Whether `self = c·o` for some nonzero scalar `c`; returns `c`.
    pub fn proportional(&self, o: &MultiPoly) -> Option<FieldElement> {
        if self.terms.len() != o.terms.len() || self.is_zero() {
            return None;
        }
        let (e, a) = o.terms.iter().next()?;
        let b = self.terms.get(e)?;
        let c = b / a;
        if *self == o.scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    /// Scale so that the first term in the fixed monomial order has coefficient 1.
    pub fn normalized(&self) -> Self {
        match self.terms.iter().next() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    // --- univariate helpers (single variable) ---

    /// Dense coefficient list, constant term first. Requires one variable.
    pub fn univariate_coeffs(&self) -> Vec<FieldElement> {
        assert_eq!(self.nvars(), 1, "univariate polynomial expected");
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut v = vec![self.field.zero(); deg + 1];
        for (e, c) in &self.terms {
            v[e[0] as usize] = c.clone();
        }
        v
    }

    pub fn from_univariate(field: Field, var: &str, coeffs: &[FieldElement]) -> Self {
        let vars: Arc<[String]> = vec![var.to_string()].into();
        MultiPoly::from_terms(field, vars, coeffs.iter().enumerate().map(|(k, c)| (vec![k as u16], c.clone())))
    }

    /// Monic gcd of two univariate polynomials. gcd(0, 0) = 0.
    pub fn univariate_gcd(&self, o: &MultiPoly) -> MultiPoly {
        let field = self.field;
        let name = self.vars[0].clone();
        let mut a = trim(self.univariate_coeffs());
        let mut b = trim(o.univariate_coeffs());
        while !b.is_empty() {
            let r = poly_rem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(lc) = a.last().cloned() {
            let inv = lc.inv().unwrap();
            a = a.iter().map(|c| c * &inv).collect();
        }
        MultiPoly::from_univariate(field, &name, &a)
    }

    /// Roots in the coefficient field, for finite fields, by exhaustive scan.
    pub fn univariate_roots(&self) -> Option<Vec<FieldElement>> {
        let elems = self.field.elements()?;
        Some(elems.into_iter().filter(|x| self.eval(std::slice::from_ref(x)).is_zero()).collect())
    }
}

fn trim(mut v: Vec<FieldElement>) -> Vec<FieldElement> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_rem(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].inv().unwrap();
    while r.len() > db {
        let lead = r.last().unwrap() * &inv;
        let shift = r.len() - 1 - db;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &(&lead * c);
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.field, self.vars.clone())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.field, self.vars.clone())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.vars.len(), o.vars.len());
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.vars.len(), o.vars.len());
        let mut out = MultiPoly::zero(self.field, self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{k}", self.vars[i]) })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(field: Field, vars: &Arc<[String]>, rng: &mut ChaCha8Rng) -> MultiPoly {
        let n = vars.len();
        let mut p = MultiPoly::zero(field, vars.clone());
        for _ in 0..rng.gen_range(0..6) {
            let e: Exponent = (0..n).map(|_| rng.gen_range(0..3)).collect();
            p.add_term(e, field.random(rng));
        }
        p
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(20, 3).len(), 1540);
        assert_eq!(monomials_of_degree(6, 3).len(), 56);
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn ring_axioms_and_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let vars = var_names("x", 3);
        for field in [Field::Rational, Field::Prime(97)] {
            for _ in 0..50 {
                let (a, b, c) = (
                    random_poly(field, &vars, &mut rng),
                    random_poly(field, &vars, &mut rng),
                    random_poly(field, &vars, &mut rng),
                );
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert!(a.sub(&a).is_zero());
                assert!(a.terms().values().all(|v| !v.is_zero()));
                for i in 0..3 {
                    let lhs = a.mul(&b).derivative(i);
                    let rhs = a.derivative(i).mul(&b).add(&a.mul(&b.derivative(i)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn compose_and_eval_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = Field::Prime(101);
        let vars = var_names("x", 3);
        let tvars = var_names("y", 2);
        for _ in 0..20 {
            let p = random_poly(f, &vars, &mut rng);
            let images: Vec<MultiPoly> = (0..3).map(|_| random_poly(f, &tvars, &mut rng)).collect();
            let q = p.compose(&images);
            let pt: Vec<FieldElement> = (0..2).map(|_| f.random(&mut rng)).collect();
            let inner: Vec<FieldElement> = images.iter().map(|g| g.eval(&pt)).collect();
            assert_eq!(q.eval(&pt), p.eval(&inner));
        }
    }

    #[test]
    fn exact_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = Field::Rational;
        let vars = var_names("x", 3);
        for _ in 0..30 {
            let a = random_poly(f, &vars, &mut rng);
            let b = random_poly(f, &vars, &mut rng);
            if b.is_zero() {
                continue;
            }
            assert_eq!(a.mul(&b).exact_div(&b), Some(a.clone()));
        }
        let x = MultiPoly::var(f, vars.clone(), 0);
        let y = MultiPoly::var(f, vars.clone(), 1);
        assert_eq!(x.exact_div(&y), None);
    }

    #[test]
    fn univariate_gcd_and_roots() {
        let f = Field::Prime(101);
        let c = |v: &[i64]| MultiPoly::from_univariate(f, "t", &v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>());
        // (t-1)(t-2) and (t-2)(t-3)
        let a = c(&[2, -3, 1]);
        let b = c(&[6, -5, 1]);
        assert_eq!(a.univariate_gcd(&b), c(&[-2, 1]));
        assert_eq!(a.univariate_roots().unwrap(), vec![f.from_i64(1), f.from_i64(2)]);
    }
}
