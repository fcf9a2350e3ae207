//! Buchberger's algorithm over prime fields in degrevlex order, used for
//! zero-dimensionality of homogeneous ideals and smoothness of cubics.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::poly::MultiPoly;
use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};

/// Maximum number of variables.
pub const MAX_VARS: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    deg: u16,
    e: [u8; MAX_VARS],
}

impl Mono {
    fn one() -> Self {
        Mono { deg: 0, e: [0; MAX_VARS] }
    }

    fn from_exps(exps: &[u16]) -> Result<Self> {
        let mut m = Mono::one();
        for (k, &x) in exps.iter().enumerate() {
            m.e[k] = u8::try_from(x).map_err(|_| Error::InvalidInput("exponent too large".into()))?;
            m.deg += x;
        }
        Ok(m)
    }

    pub fn degree(&self) -> u16 {
        self.deg
    }

    pub fn exponents(&self, n: usize) -> Vec<u16> {
        self.e[..n].iter().map(|&x| x as u16).collect()
    }

    fn mul(&self, o: &Mono) -> Mono {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            *a += b;
        }
        Mono { deg: self.deg + o.deg, e }
    }

    fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    fn quotient_of(&self, o: &Mono) -> Mono {
        let mut e = o.e;
        for (a, b) in e.iter_mut().zip(self.e.iter()) {
            *a -= b;
        }
        Mono { deg: o.deg - self.deg, e }
    }

    fn lcm(&self, o: &Mono) -> Mono {
        let mut e = [0u8; MAX_VARS];
        let mut deg = 0u16;
        for k in 0..MAX_VARS {
            e[k] = self.e[k].max(o.e[k]);
            deg += e[k] as u16;
        }
        Mono { deg, e }
    }

    fn coprime(&self, o: &Mono) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable if this is a pure power `x_k^d`, `d ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..MAX_VARS).filter(|&k| self.e[k] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }
}

impl Ord for Mono {
    /// Degree reverse lexicographic.
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for k in (0..MAX_VARS).rev() {
                if self.e[k] != o.e[k] {
                    return o.e[k].cmp(&self.e[k]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial over F_p as terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    terms: Vec<(Mono, u32)>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut nt, mut r, mut nr) = (0i64, 1i64, p as i64, a as i64);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    t.rem_euclid(p as i64) as u32
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Mono {
        self.terms[0].0
    }

    pub fn terms(&self) -> &[(Mono, u32)] {
        &self.terms
    }

    fn make_monic(&mut self, p: u32) {
        if let Some(&(_, c)) = self.terms.first() {
            let inv = inv_mod(c, p) as u64;
            for t in &mut self.terms {
                t.1 = (t.1 as u64 * inv % p as u64) as u32;
            }
        }
    }

    /// `self − c·m·g`.
    fn sub_mul(&self, c: u32, m: &Mono, g: &Poly, p: u32) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let p64 = p as u64;
        let neg = (p64 - c as u64 % p64) % p64;
        while i < self.terms.len() || j < g.terms.len() {
            let gj = (j < g.terms.len()).then(|| (m.mul(&g.terms[j].0), (g.terms[j].1 as u64 * neg % p64) as u32));
            match (self.terms.get(i), gj) {
                (Some(&(a, x)), Some((b, y))) => match a.cmp(&b) {
                    Ordering::Greater => {
                        out.push((a, x));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((b, y));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = ((x as u64 + y as u64) % p64) as u32;
                        if s != 0 {
                            out.push((a, s));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&t), None) => {
                    out.push(t);
                    i += 1;
                }
                (None, Some(t)) => {
                    out.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Poly { terms: out }
    }
}

/// Full reduction of `f` modulo the list (all terms, not only the head).
fn reduce_full(f: &Poly, basis: &[Poly], p: u32) -> Poly {
    let mut rem: Vec<(Mono, u32)> = Vec::new();
    let mut f = f.clone();
    while let Some(&(m, c)) = f.terms.first() {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = g.lm().quotient_of(&m);
                let coef = (c as u64 * inv_mod(g.terms[0].1, p) as u64 % p as u64) as u32;
                f = f.sub_mul(coef, &q, g, p);
            }
            None => {
                rem.push((m, c));
                f.terms.remove(0);
            }
        }
    }
    Poly { terms: rem }
}

fn s_poly(f: &Poly, g: &Poly, p: u32) -> Poly {
    let l = f.lm().lcm(&g.lm());
    let mf = f.lm().quotient_of(&l);
    let mg = g.lm().quotient_of(&l);
    let cf = inv_mod(f.terms[0].1, p);
    let cg = inv_mod(g.terms[0].1, p);
    let zero = Poly { terms: Vec::new() };
    let a = zero.sub_mul((p - cf) % p, &mf, f, p);
    a.sub_mul(cg, &mg, g, p)
}

/// A reduced degrevlex Gröbner basis over F_p.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub prime: u32,
    pub vars: Arc<[String]>,
    pub polys: Vec<Poly>,
    /// S-pairs reduced / skipped by the criteria, for diagnostics.
    pub pairs_reduced: usize,
    pub pairs_skipped: usize,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u16,
}

fn to_internal(f: &MultiPoly, p: u32) -> Result<Poly> {
    let mut terms = Vec::with_capacity(f.num_terms());
    for (e, c) in f.terms() {
        let v = match c {
            FieldElement::Modular { value, modulus } if *modulus == p as u64 => *value as u32,
            _ => return Err(Error::InvalidInput("Gröbner bases are computed over prime fields only".into())),
        };
        terms.push((Mono::from_exps(e)?, v));
    }
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(Poly { terms })
}

impl GroebnerBasis {
    pub fn field(&self) -> Field {
        Field::Prime(self.prime as u64)
    }

    pub fn to_multipolys(&self) -> Vec<MultiPoly> {
        let field = self.field();
        let n = self.vars.len();
        self.polys
            .iter()
            .map(|f| {
                MultiPoly::from_terms(
                    field,
                    self.vars.clone(),
                    f.terms.iter().map(|(m, c)| (m.exponents(n), field.from_i64(*c as i64))),
                )
            })
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.polys.iter().map(|f| f.lm()).collect()
    }

    /// Whether the basis is `{1}`.
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|f| f.lm().degree() == 0)
    }

    /// Normal form of a polynomial.
    pub fn reduce(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let r = reduce_full(&to_internal(f, self.prime)?, &self.polys, self.prime);
        let field = self.field();
        let n = self.vars.len();
        Ok(MultiPoly::from_terms(field, self.vars.clone(), r.terms.iter().map(|(m, c)| (m.exponents(n), field.from_i64(*c as i64)))))
    }

    /// Check every S-polynomial reduces to zero, with no criteria.
    pub fn verify(&self) -> bool {
        let n = self.polys.len();
        (0..n).all(|i| (i + 1..n).all(|j| reduce_full(&s_poly(&self.polys[i], &self.polys[j], self.prime), &self.polys, self.prime).is_zero()))
    }

    /// Standard monomials, when finitely many (`None` otherwise or when over `limit`).
    pub fn standard_monomial_count(&self, limit: usize) -> Option<usize> {
        let n = self.vars.len();
        let lms = self.leading_monomials();
        if !(0..n).all(|k| lms.iter().any(|m| m.pure_power_var() == Some(k))) {
            return None;
        }
        let mut count = 0;
        let mut frontier = vec![Mono::one()];
        let mut seen = std::collections::HashSet::new();
        while let Some(m) = frontier.pop() {
            if !seen.insert(m) || lms.iter().any(|l| l.divides(&m)) {
                continue;
            }
            count += 1;
            if count > limit {
                return None;
            }
            for k in 0..n {
                let mut x = m;
                x.e[k] += 1;
                x.deg += 1;
                frontier.push(x);
            }
        }
        Some(count)
    }
}

/// Gebauer–Möller update: add pairs for the new element `h` (index `t`),
/// dropping pairs by Buchberger's coprime criterion and the chain criterion.
fn update(pairs: &mut Vec<Pair>, basis: &[Poly], sugars: &[u16], active: &mut Vec<bool>, t: usize, skipped: &mut usize) {
    let lh = basis[t].lm();
    let mut cand: Vec<(usize, Mono, bool)> = (0..t)
        .filter(|&i| active[i])
        .map(|i| {
            let l = basis[i].lm().lcm(&lh);
            (i, l, basis[i].lm().coprime(&lh))
        })
        .collect();
    // chain criterion among the new pairs
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        for b in 0..cand.len() {
            if a != b && keep[b] && cand[b].1.divides(&cand[a].1) && (cand[b].1 != cand[a].1 || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut pruned: Vec<(usize, Mono, bool)> = Vec::new();
    for (k, c) in cand.drain(..).enumerate() {
        if keep[k] {
            pruned.push(c);
        } else {
            *skipped += 1;
        }
    }
    // old pairs whose lcm is strictly divisible by LM(h)
    let before = pairs.len();
    pairs.retain(|pr| {
        let li = basis[pr.i].lm().lcm(&lh);
        let lj = basis[pr.j].lm().lcm(&lh);
        !(lh.divides(&pr.lcm) && li != pr.lcm && lj != pr.lcm)
    });
    *skipped += before - pairs.len();
    for (i, l, coprime) in pruned {
        if coprime {
            *skipped += 1;
            continue;
        }
        let si = sugars[i] + basis[i].lm().quotient_of(&l).degree();
        let st = sugars[t] + lh.quotient_of(&l).degree();
        pairs.push(Pair { i, j: t, lcm: l, sugar: si.max(st) });
    }
    for i in 0..t {
        if active[i] && lh.divides(&basis[i].lm()) {
            active[i] = false;
        }
    }
}

/// Reduced degrevlex Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[MultiPoly]) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let field = first.field();
    let Field::Prime(p64) = field else {
        return Err(Error::InvalidInput("Gröbner bases are computed over prime fields only".into()));
    };
    let p = p64 as u32;
    let vars = first.vars().clone();
    if vars.len() > MAX_VARS {
        return Err(Error::InvalidInput(format!("at most {MAX_VARS} variables are supported")));
    }
    let mut basis: Vec<Poly> = Vec::new();
    let mut sugars: Vec<u16> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let (mut reduced, mut skipped) = (0usize, 0usize);
    for g in gens {
        if g.vars() != &vars || g.field() != field {
            return Err(Error::InvalidInput("generators must share field and variables".into()));
        }
        let mut f = to_internal(g, p)?;
        if f.is_zero() {
            continue;
        }
        let deg = f.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        f.make_monic(p);
        basis.push(f);
        sugars.push(deg);
        active.push(true);
        let t = basis.len() - 1;
        update(&mut pairs, &basis, &sugars, &mut active, t, &mut skipped);
    }
    while !pairs.is_empty() {
        // normal strategy with sugar: smallest sugar, then smallest lcm
        let k = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| pairs[a].lcm.cmp(&pairs[b].lcm)))
            .unwrap();
        let pr = pairs.swap_remove(k);
        reduced += 1;
        let s = s_poly(&basis[pr.i], &basis[pr.j], p);
        let live: Vec<Poly> = basis.iter().zip(&active).filter(|(_, a)| **a).map(|(f, _)| f.clone()).collect();
        let mut h = reduce_full(&s, &live, p);
        if h.is_zero() {
            continue;
        }
        h.make_monic(p);
        if h.lm().degree() == 0 {
            let unit = Poly { terms: vec![(Mono::one(), 1)] };
            return Ok(GroebnerBasis { prime: p, vars, polys: vec![unit], pairs_reduced: reduced, pairs_skipped: skipped });
        }
        basis.push(h);
        sugars.push(pr.sugar);
        active.push(true);
        let t = basis.len() - 1;
        update(&mut pairs, &basis, &sugars, &mut active, t, &mut skipped);
    }
    Ok(GroebnerBasis { prime: p, vars, polys: interreduce(basis, active, p), pairs_reduced: reduced, pairs_skipped: skipped })
}

/// Minimalize and fully interreduce.
fn interreduce(basis: Vec<Poly>, active: Vec<bool>, p: u32) -> Vec<Poly> {
    let mut min: Vec<Poly> = Vec::new();
    let live: Vec<Poly> = basis.into_iter().zip(active).filter(|(_, a)| *a).map(|(f, _)| f).collect();
    for (k, f) in live.iter().enumerate() {
        let redundant = live.iter().enumerate().any(|(j, g)| {
            j != k && g.lm().divides(&f.lm()) && (g.lm() != f.lm() || j < k)
        });
        if !redundant {
            min.push(f.clone());
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for k in 0..min.len() {
        let others: Vec<Poly> = min.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
        let head = Poly { terms: vec![min[k].terms[0]] };
        let tail = Poly { terms: min[k].terms[1..].to_vec() };
        let mut r = reduce_full(&tail, &others, p);
        let mut terms = head.terms;
        terms.append(&mut r.terms);
        let mut f = Poly { terms };
        f.make_monic(p);
        out.push(f);
    }
    out.sort_by_key(|a| a.lm());
    out
}

/// Whether the homogeneous ideal vanishes only at the origin: every variable
/// has a pure power among the leading monomials.
pub fn is_zero_dim_cone(gb: &GroebnerBasis) -> bool {
    if gb.is_unit_ideal() {
        return true;
    }
    let lms = gb.leading_monomials();
    (0..gb.vars.len()).all(|k| lms.iter().any(|m| m.pure_power_var() == Some(k)))
}

/// Smoothness of a projective hypersurface `F = 0` over F_p (`p ≠ 3`): the
/// partial derivatives vanish simultaneously only at the origin.
pub fn smooth_check(cubic: &MultiPoly) -> Result<bool> {
    let field = cubic.field();
    match field {
        Field::Prime(3) => return Err(Error::InvalidInput("characteristic 3 is not supported".into())),
        Field::Prime(_) => {}
        _ => return Err(Error::InvalidInput("smoothness is checked over prime fields only".into())),
    }
    if !cubic.is_homogeneous(3) {
        return Err(Error::InvalidInput("expected a homogeneous cubic".into()));
    }
    let partials: Vec<MultiPoly> = (0..cubic.nvars()).map(|k| cubic.derivative(k)).collect();
    if partials.iter().all(|d| d.is_zero()) {
        return Ok(false);
    }
    Ok(is_zero_dim_cone(&buchberger(&partials)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::var_names;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vars(n: usize) -> Arc<[String]> {
        var_names("X", n)
    }

    fn poly(p: u64, n: usize, terms: &[(&[u16], i64)]) -> MultiPoly {
        let f = Field::Prime(p);
        MultiPoly::from_terms(f, vars(n), terms.iter().map(|(e, c)| (e.to_vec(), f.from_i64(*c))))
    }

    fn random_poly(rng: &mut ChaCha8Rng, p: u64, n: usize, degs: &[u16], homogeneous: bool) -> MultiPoly {
        let f = Field::Prime(p);
        let mut out = MultiPoly::zero(f, vars(n));
        for &d in degs {
            if homogeneous && d != *degs.last().unwrap() {
                continue;
            }
            for e in crate::algebra::poly::monomials_of_degree(n, d) {
                if rng.gen_bool(0.6) {
                    out.add_term(e, f.from_i64(rng.gen_range(0..p as i64)));
                }
            }
        }
        out
    }

    fn points(p: u64, n: usize) -> Vec<Vec<FieldElement>> {
        let f = Field::Prime(p);
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| (0..p as i64).map(move |c| {
                    let mut w = v.clone();
                    w.push(f.from_i64(c));
                    w
                }))
                .collect();
        }
        out
    }

    fn vanishes(gens: &[MultiPoly], pt: &[FieldElement]) -> bool {
        gens.iter().all(|g| g.eval(pt).is_zero())
    }

    fn field_equations(p: u64, n: usize) -> Vec<MultiPoly> {
        (0..n)
            .map(|k| {
                let mut a = vec![0u16; n];
                a[k] = p as u16;
                let mut b = vec![0u16; n];
                b[k] = 1;
                poly(p, n, &[(&a, 1), (&b, -1)])
            })
            .collect()
    }

    fn is_member(gb: &GroebnerBasis, f: &MultiPoly) -> bool {
        gb.reduce(f).unwrap().is_zero()
    }

    #[test]
    fn variables_are_their_own_basis() {
        let g = vec![poly(7, 2, &[(&[1, 0], 1)]), poly(7, 2, &[(&[0, 1], 1)])];
        let gb = buchberger(&g).unwrap();
        assert_eq!(gb.polys.len(), 2);
        let mut got: Vec<String> = gb.to_multipolys().iter().map(|f| f.to_string()).collect();
        got.sort();
        let mut want: Vec<String> = g.iter().map(|f| f.to_string()).collect();
        want.sort();
        assert_eq!(got, want);
        assert!(is_zero_dim_cone(&gb));
    }

    #[test]
    fn inconsistent_system_gives_unit_ideal() {
        let g = vec![poly(5, 2, &[(&[1, 1], 1), (&[0, 0], -1)]), poly(5, 2, &[(&[2, 0], 1)])];
        let gb = buchberger(&g).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.polys.len(), 1);
    }

    #[test]
    fn rational_input_is_rejected() {
        let f = MultiPoly::var(Field::Rational, vars(2), 0);
        assert!(buchberger(std::slice::from_ref(&f)).is_err());
        let c = MultiPoly::var(Field::Rational, vars(2), 0).pow(3);
        assert!(smooth_check(&c).is_err());
    }

    #[test]
    fn s_polynomials_reduce_and_generators_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(p, n) in &[(5u64, 3usize), (7, 3), (101, 4)] {
            for _ in 0..4 {
                let gens: Vec<MultiPoly> = (0..n).map(|_| random_poly(&mut rng, p, n, &[0, 1, 2], false)).collect();
                let gb = buchberger(&gens).unwrap();
                assert!(gb.verify());
                for g in &gens {
                    assert!(is_member(&gb, g));
                }
                // reduced: monic, no term of one element divisible by another's head
                for (k, f) in gb.polys.iter().enumerate() {
                    assert_eq!(f.terms()[0].1, 1);
                    for (j, g) in gb.polys.iter().enumerate() {
                        if j != k {
                            assert!(f.terms().iter().all(|(m, _)| !g.lm().divides(m)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn affine_point_count_matches_brute_force() {
        // with field equations the ideal is radical, so #standard monomials = #F_p-points
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &p in &[5u64, 7] {
            for _ in 0..6 {
                let n = 2;
                let gens: Vec<MultiPoly> = (0..2).map(|_| random_poly(&mut rng, p, n, &[0, 1, 2], false)).collect();
                let mut all = gens.clone();
                all.extend(field_equations(p, n));
                let gb = buchberger(&all).unwrap();
                let lms = gb.leading_monomials();
                if !gb.is_unit_ideal() {
                    assert!((0..n).all(|k| lms.iter().any(|m| m.pure_power_var() == Some(k))));
                }
                let brute = points(p, n).iter().filter(|pt| vanishes(&gens, pt)).count();
                let count = if gb.is_unit_ideal() { 0 } else { gb.standard_monomial_count(1000).unwrap() };
                assert_eq!(count, brute, "p={p}");
            }
        }
    }

    #[test]
    fn zero_dim_cone_agrees_with_rational_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut decisive = 0;
        for &p in &[5u64, 7] {
            for n in 1..=3usize {
                for _ in 0..8 {
                    let d = rng.gen_range(1..=2u16);
                    let gens: Vec<MultiPoly> = (0..n).map(|_| random_poly(&mut rng, p, n, &[d], true)).collect();
                    if gens.iter().all(|g| g.is_zero()) {
                        continue;
                    }
                    let gb = buchberger(&gens).unwrap();
                    let nonzero_point = points(p, n).iter().any(|pt| pt.iter().any(|c| !c.is_zero()) && vanishes(&gens, pt));
                    // a rational point off the origin rules out a zero-dim cone
                    if nonzero_point {
                        assert!(!is_zero_dim_cone(&gb));
                        decisive += 1;
                    }
                    if is_zero_dim_cone(&gb) {
                        assert!(!nonzero_point);
                        decisive += 1;
                    }
                    // positive dimension over the closure: check over F_p(field eqs) consistency
                    let mut all = gens.clone();
                    all.extend(field_equations(p, n));
                    let gbf = buchberger(&all).unwrap();
                    let brute = points(p, n).iter().filter(|pt| vanishes(&gens, pt)).count();
                    assert_eq!(gbf.standard_monomial_count(10_000).unwrap_or(0), brute);
                }
            }
        }
        assert!(decisive > 20);
    }

    #[test]
    fn smoothness_of_sample_cubics() {
        for &p in &[5u64, 7, 101] {
            let fermat = poly(p, 6, &[(&[3, 0, 0, 0, 0, 0], 1), (&[0, 3, 0, 0, 0, 0], 1), (&[0, 0, 3, 0, 0, 0], 1), (&[0, 0, 0, 3, 0, 0], 1), (&[0, 0, 0, 0, 3, 0], 1), (&[0, 0, 0, 0, 0, 3], 1)]);
            assert!(smooth_check(&fermat).unwrap(), "p={p}");
        }
        let sing = poly(7, 3, &[(&[2, 1, 0], 1)]);
        assert!(!smooth_check(&sing).unwrap());
        let cube = poly(7, 3, &[(&[3, 0, 0], 1)]);
        assert!(!is_zero_dim_cone(&buchberger(&[cube.derivative(0), cube.derivative(1), cube.derivative(2)].into_iter().filter(|f| !f.is_zero()).collect::<Vec<_>>()).unwrap()));
        assert!(!smooth_check(&cube).unwrap());
        assert!(smooth_check(&poly(3, 2, &[(&[3, 0], 1), (&[0, 3], 1)])).is_err());
    }

    #[test]
    fn cone_over_singular_cubic_curve() {
        // nodal cubic y²z − x³ − x²z is singular at (0:0:1)
        let f = poly(11, 3, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[2, 0, 1], -1)]);
        assert!(!smooth_check(&f).unwrap());
        // elliptic curve y²z − x³ − z³ is smooth away from 2, 3
        let e = poly(11, 3, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[0, 0, 3], -1)]);
        assert!(smooth_check(&e).unwrap());
    }
}
