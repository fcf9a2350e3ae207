//! Exact coefficient fields: the rationals, prime fields and the order-3
//! cyclotomic extension of either.
//!
//! Elements carry enough information to do arithmetic on their own, so
//! `a + b` works without a field handle. The [`Field`] descriptor is used to
//! build constants and random elements.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest admissible prime; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Ground field of a cyclotomic extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rational,
    Prime(u64),
}

/// Descriptor of an exact field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
    /// `K(ξ)` with `ξ² + ξ + 1 = 0`, only when the polynomial is irreducible over `K`.
    Cyclotomic3(BaseField),
}

/// An element of one of the fields described by [`Field`].
///
/// Cyclotomic elements `a + bξ` are stored as the pair `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
    CycRational { a: BigRational, b: BigRational },
    CycModular { a: u64, b: u64, modulus: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// All roots of `x² + x + 1` in `Z/p`, ascending.
pub fn cube_roots_of_unity_mod(p: u64) -> Vec<u64> {
    (0..p).filter(|&x| (x * x + x + 1) % p == 0).collect()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn invmod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if t < 0 {
        t += p as i128;
    }
    Some(t as u64)
}

fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidInput(format!("prime {p} exceeds 2^31 - 1")));
        }
        Ok(Field::Prime(p))
    }

    /// Adjoin a primitive cube root of unity to `base`.
    ///
    /// Over a prime field with `p ≡ 1 (mod 3)` the roots already exist and
    /// the prime field itself is returned.
    pub fn with_cube_root(base: BaseField) -> Result<Field> {
        match base {
            BaseField::Rational => Ok(Field::Cyclotomic3(BaseField::Rational)),
            BaseField::Prime(p) => {
                Field::prime(p)?;
                if p == 3 {
                    return Err(Error::InvalidInput(
                        "no primitive cube root of unity in characteristic 3".into(),
                    ));
                }
                if cube_roots_of_unity_mod(p).is_empty() {
                    Ok(Field::Cyclotomic3(BaseField::Prime(p)))
                } else {
                    Ok(Field::Prime(p))
                }
            }
        }
    }

    /// Parse descriptors such as `rational`, `prime:97`, `cyclotomic3:rational`
    /// or `cyclotomic3:prime:5`.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("unknown field descriptor `{s}`"));
        if s == "rational" || s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("prime:") {
            let p: u64 = rest.parse().map_err(|_| bad())?;
            return Field::prime(p);
        }
        if let Some(rest) = s.strip_prefix("cyclotomic3:") {
            let base = match Field::parse(rest)? {
                Field::Rational => BaseField::Rational,
                Field::Prime(p) => BaseField::Prime(p),
                _ => return Err(bad()),
            };
            return Field::with_cube_root(base);
        }
        Err(bad())
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rational | Field::Cyclotomic3(BaseField::Rational) => 0,
            Field::Prime(p) | Field::Cyclotomic3(BaseField::Prime(p)) => p,
        }
    }

    /// Number of elements, `None` for characteristic zero.
    pub fn order(&self) -> Option<u128> {
        match *self {
            Field::Rational | Field::Cyclotomic3(BaseField::Rational) => None,
            Field::Prime(p) => Some(p as u128),
            Field::Cyclotomic3(BaseField::Prime(p)) => Some(p as u128 * p as u128),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => FieldElement::Modular { value: n.rem_euclid(p as i64) as u64, modulus: p },
            Field::Cyclotomic3(BaseField::Rational) => FieldElement::CycRational {
                a: BigRational::from_integer(n.into()),
                b: BigRational::zero(),
            },
            Field::Cyclotomic3(BaseField::Prime(p)) => {
                FieldElement::CycModular { a: n.rem_euclid(p as i64) as u64, b: 0, modulus: p }
            }
        }
    }

    /// Embed a rational number; fails when the denominator vanishes in the field.
    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement> {
        match *self {
            Field::Rational => Ok(FieldElement::Rational(r.clone())),
            Field::Cyclotomic3(BaseField::Rational) => {
                Ok(FieldElement::CycRational { a: r.clone(), b: BigRational::zero() })
            }
            _ => {
                let p = self.characteristic();
                let reduce = |n: &BigInt| -> u64 {
                    let m = n.mod_floor(&BigInt::from(p));
                    m.to_u64().unwrap_or(0)
                };
                let num = self.from_i64(0).with_modular(reduce(r.numer()));
                let den = self.from_i64(0).with_modular(reduce(r.denom()));
                den.inv()
                    .map(|d| num * d)
                    .ok_or_else(|| Error::InvalidInput(format!("denominator of {r} vanishes mod {p}")))
            }
        }
    }

    /// The element `a + bξ`; for a prime field containing ξ the default root is used.
    pub fn cyclotomic(&self, a: i64, b: i64) -> Result<FieldElement> {
        let xi = self.xi().ok_or_else(|| {
            Error::InvalidInput(format!("field {self} has no primitive cube root of unity"))
        })?;
        Ok(self.from_i64(a) + self.from_i64(b) * xi)
    }

    /// The distinguished primitive cube root of unity, if the field has one.
    ///
    /// In a prime field the smaller of the two roots is used.
    pub fn xi(&self) -> Option<FieldElement> {
        match *self {
            Field::Rational => None,
            Field::Prime(p) => cube_roots_of_unity_mod(p)
                .first()
                .map(|&r| FieldElement::Modular { value: r, modulus: p }),
            Field::Cyclotomic3(BaseField::Rational) => {
                Some(FieldElement::CycRational { a: BigRational::zero(), b: BigRational::one() })
            }
            Field::Cyclotomic3(BaseField::Prime(p)) => {
                Some(FieldElement::CycModular { a: 0, b: 1, modulus: p })
            }
        }
    }

    /// A random element. Over characteristic zero the entries are small integers
    /// in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        const BOUND: i64 = 9;
        match *self {
            Field::Rational => self.from_i64(rng.gen_range(-BOUND..=BOUND)),
            Field::Prime(p) => FieldElement::Modular { value: rng.gen_range(0..p), modulus: p },
            Field::Cyclotomic3(BaseField::Rational) => FieldElement::CycRational {
                a: BigRational::from_integer(rng.gen_range(-BOUND..=BOUND).into()),
                b: BigRational::from_integer(rng.gen_range(-BOUND..=BOUND).into()),
            },
            Field::Cyclotomic3(BaseField::Prime(p)) => {
                FieldElement::CycModular { a: rng.gen_range(0..p), b: rng.gen_range(0..p), modulus: p }
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// All field elements, for finite fields of modest size.
    pub fn elements(&self) -> Option<Vec<FieldElement>> {
        match *self {
            Field::Prime(p) => Some((0..p).map(|v| FieldElement::Modular { value: v, modulus: p }).collect()),
            Field::Cyclotomic3(BaseField::Prime(p)) => Some(
                (0..p)
                    .flat_map(|a| (0..p).map(move |b| FieldElement::CycModular { a, b, modulus: p }))
                    .collect(),
            ),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime:{p}"),
            Field::Cyclotomic3(BaseField::Rational) => write!(f, "cyclotomic3:rational"),
            Field::Cyclotomic3(BaseField::Prime(p)) => write!(f, "cyclotomic3:prime:{p}"),
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Modular { modulus, .. } => Field::Prime(*modulus),
            FieldElement::CycRational { .. } => Field::Cyclotomic3(BaseField::Rational),
            FieldElement::CycModular { modulus, .. } => Field::Cyclotomic3(BaseField::Prime(*modulus)),
        }
    }

    // replaces the value of a modular element; used when embedding integers
    fn with_modular(&self, v: u64) -> FieldElement {
        match self {
            FieldElement::Modular { modulus, .. } => FieldElement::Modular { value: v, modulus: *modulus },
            FieldElement::CycModular { modulus, .. } => FieldElement::CycModular { a: v, b: 0, modulus: *modulus },
            _ => unreachable!("with_modular on characteristic zero"),
        }
    }

    pub fn zero_like(&self) -> FieldElement {
        self.field().zero()
    }

    pub fn one_like(&self) -> FieldElement {
        self.field().one()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
            FieldElement::CycRational { a, b } => a.is_zero() && b.is_zero(),
            FieldElement::CycModular { a, b, .. } => *a == 0 && *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// The residue of a prime-field element.
    pub fn as_modular(&self) -> Option<u64> {
        match self {
            FieldElement::Modular { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Components `(a, b)` of `a + bξ` for cyclotomic elements.
    pub fn cyclotomic_parts(&self) -> Option<(FieldElement, FieldElement)> {
        match self {
            FieldElement::CycRational { a, b } => {
                Some((FieldElement::Rational(a.clone()), FieldElement::Rational(b.clone())))
            }
            FieldElement::CycModular { a, b, modulus } => Some((
                FieldElement::Modular { value: *a, modulus: *modulus },
                FieldElement::Modular { value: *b, modulus: *modulus },
            )),
            _ => None,
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Modular { value, modulus } => {
                FieldElement::Modular { value: invmod(*value, *modulus)?, modulus: *modulus }
            }
            FieldElement::CycRational { a, b } => {
                let norm = a * a - a * b + b * b;
                FieldElement::CycRational { a: (a - b) / &norm, b: -b / &norm }
            }
            FieldElement::CycModular { a, b, modulus } => {
                let p = *modulus;
                let norm = (mulmod(*a, *a, p) + p - mulmod(*a, *b, p) + mulmod(*b, *b, p)) % p;
                let ninv = invmod(norm, p)?;
                FieldElement::CycModular {
                    a: mulmod((*a + p - *b) % p, ninv, p),
                    b: mulmod((p - *b) % p, ninv, p),
                    modulus: p,
                }
            }
        })
    }

    pub fn pow(&self, mut exp: u128) -> FieldElement {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// A square root in the same field, when one exists.
    pub fn sqrt(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match self {
            FieldElement::Rational(r) => rat_sqrt(r).map(FieldElement::Rational),
            FieldElement::CycRational { a, b } => {
                // z = c + dξ with z² = w: N(z) = m, Tr(z) = t, t² = Tr(w) + 2m.
                let norm_w = a * a - a * b + b * b;
                let m = rat_sqrt(&norm_w)?;
                let two = BigRational::from_integer(2.into());
                let trace_w = &two * a - b;
                let field = self.field();
                for t2 in [&trace_w + &two * &m, &trace_w - &two * &m] {
                    let Some(t) = rat_sqrt(&t2) else { continue };
                    let cand = if t.is_zero() {
                        // z = c(1 + 2ξ) and z² = -3c²
                        if !b.is_zero() {
                            continue;
                        }
                        let c2 = -a / BigRational::from_integer(3.into());
                        let Some(c) = rat_sqrt(&c2) else { continue };
                        FieldElement::CycRational { a: c.clone(), b: &two * &c }
                    } else {
                        let w_plus_m = FieldElement::CycRational { a: a + &m, b: b.clone() };
                        let tinv = field.from_rational(&t.recip()).ok()?;
                        w_plus_m * tinv
                    };
                    if &(&cand * &cand) == self {
                        return Some(cand);
                    }
                }
                None
            }
            _ => self.finite_sqrt(),
        }
    }

    // Tonelli-Shanks in a finite field of order q.
    fn finite_sqrt(&self) -> Option<FieldElement> {
        let field = self.field();
        let q = field.order()?;
        if q % 2 == 0 {
            // characteristic 2: squaring is a bijection, x = a^(q/2)
            return Some(self.pow(q / 2));
        }
        let half = (q - 1) / 2;
        if !self.pow(half).is_one() {
            return None;
        }
        let mut s = 0u32;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let minus_one = -field.one();
        let nonresidue = match field {
            Field::Prime(p) => (2..p)
                .map(|v| FieldElement::Modular { value: v, modulus: p })
                .find(|z| z.pow(half) == minus_one)?,
            Field::Cyclotomic3(BaseField::Prime(p)) => (0..p)
                .flat_map(|a| (1..p).map(move |b| FieldElement::CycModular { a, b, modulus: p }))
                .find(|z| z.pow(half) == minus_one)?,
            _ => return None,
        };
        let mut m = s;
        let mut c = nonresidue.pow(t);
        let mut x = self.pow(t.div_ceil(2));
        let mut b = self.pow(t);
        while !b.is_one() {
            let mut i = 0u32;
            let mut b2 = b.clone();
            while !b2.is_one() {
                b2 = &b2 * &b2;
                i += 1;
            }
            let mut g = c.clone();
            for _ in 0..(m - i - 1) {
                g = &g * &g;
            }
            x = &x * &g;
            c = &g * &g;
            b = &b * &c;
            m = i;
        }
        Some(x)
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Compact textual form: `num/den`, a residue, or `[a,b]`.
    pub fn to_text(&self) -> String {
        match self {
            FieldElement::Rational(r) => rat_text(r),
            FieldElement::Modular { value, .. } => value.to_string(),
            FieldElement::CycRational { a, b } => format!("[{},{}]", rat_text(a), rat_text(b)),
            FieldElement::CycModular { a, b, .. } => format!("[{a},{b}]"),
        }
    }
}

fn rat_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the textual rational form `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::CycRational { a, b } => write!(f, "({} + {}ξ)", rat_text(a), rat_text(b)),
            FieldElement::CycModular { a, b, .. } => write!(f, "({a} + {b}ξ)"),
            _ => write!(f, "{}", self.to_text()),
        }
    }
}

fn mismatch(a: &FieldElement, b: &FieldElement) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (self, o) {
            (Rational(x), Rational(y)) => Rational(x + y),
            (Modular { value: x, modulus: p }, Modular { value: y, modulus: q }) if p == q => {
                Modular { value: (x + y) % p, modulus: *p }
            }
            (CycRational { a, b }, CycRational { a: c, b: d }) => CycRational { a: a + c, b: b + d },
            (CycModular { a, b, modulus: p }, CycModular { a: c, b: d, modulus: q }) if p == q => {
                CycModular { a: (a + c) % p, b: (b + d) % p, modulus: *p }
            }
            _ => mismatch(self, o),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self + &(-o)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        use FieldElement::*;
        match (self, o) {
            (Rational(x), Rational(y)) => Rational(x * y),
            (Modular { value: x, modulus: p }, Modular { value: y, modulus: q }) if p == q => {
                Modular { value: mulmod(*x, *y, *p), modulus: *p }
            }
            (CycRational { a, b }, CycRational { a: c, b: d }) => {
                let bd = b * d;
                CycRational { a: a * c - &bd, b: a * d + b * c - bd }
            }
            (CycModular { a, b, modulus: p }, CycModular { a: c, b: d, modulus: q }) if p == q => {
                let p = *p;
                let bd = mulmod(*b, *d, p);
                CycModular {
                    a: (mulmod(*a, *c, p) + p - bd) % p,
                    b: (mulmod(*a, *d, p) + mulmod(*b, *c, p) + p - bd) % p,
                    modulus: p,
                }
            }
            _ => mismatch(self, o),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        use FieldElement::*;
        match self {
            Rational(x) => Rational(-x),
            Modular { value, modulus } => Modular { value: (modulus - value) % modulus, modulus: *modulus },
            CycRational { a, b } => CycRational { a: -a, b: -b },
            CycModular { a, b, modulus } => {
                CycModular { a: (modulus - a) % modulus, b: (modulus - b) % modulus, modulus: *modulus }
            }
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        self * &o.inv().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fields() -> Vec<Field> {
        vec![
            Field::Rational,
            Field::Prime(97),
            Field::Prime(2),
            Field::Cyclotomic3(BaseField::Rational),
            Field::Cyclotomic3(BaseField::Prime(5)),
        ]
    }

    #[test]
    fn cube_roots_mod_97() {
        assert_eq!(cube_roots_of_unity_mod(97), vec![35, 61]);
        assert_eq!(Field::Prime(97).xi().unwrap().as_modular(), Some(35));
    }

    #[test]
    fn xi_is_primitive_cube_root() {
        for f in [
            Field::Cyclotomic3(BaseField::Rational),
            Field::Cyclotomic3(BaseField::Prime(5)),
            Field::Prime(97),
            Field::Prime(7),
        ] {
            let xi = f.xi().unwrap();
            assert!(xi.pow(3).is_one(), "{f}");
            assert!(!xi.is_one(), "{f}");
            assert!((&xi * &xi + &xi + f.one()).is_zero());
        }
    }

    #[test]
    fn extension_only_when_irreducible() {
        assert_eq!(Field::with_cube_root(BaseField::Prime(97)).unwrap(), Field::Prime(97));
        assert_eq!(
            Field::with_cube_root(BaseField::Prime(5)).unwrap(),
            Field::Cyclotomic3(BaseField::Prime(5))
        );
        assert!(Field::with_cube_root(BaseField::Prime(3)).is_err());
        assert!(Field::prime(91).is_err());
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in fields() {
            for _ in 0..200 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!((&a + &b) + &c, &a + (&b + &c));
                assert_eq!((&a * &b) * &c, &a * (&b * &c));
                assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
                assert_eq!(&a * &b, &b * &a);
                assert!((&a - &a).is_zero());
                if !a.is_zero() {
                    assert!((&a * a.inv().unwrap()).is_one(), "{f} {a}");
                }
            }
        }
    }

    #[test]
    fn square_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in fields() {
            for _ in 0..50 {
                let a = f.random(&mut rng);
                let sq = &a * &a;
                let r = sq.sqrt().unwrap_or_else(|| panic!("no sqrt of {sq} in {f}"));
                assert_eq!(&r * &r, sq);
            }
        }
        // 2 is not a square in Q; -3 is a square in Q(ξ)
        assert!(Field::Rational.from_i64(2).sqrt().is_none());
        let c = Field::Cyclotomic3(BaseField::Rational);
        let r = c.from_i64(-3).sqrt().unwrap();
        assert_eq!(&r * &r, c.from_i64(-3));
    }

    #[test]
    fn rational_embedding() {
        let f = Field::Prime(97);
        let third = f.from_rational(&BigRational::new(1.into(), 3.into())).unwrap();
        assert!((third * f.from_i64(3)).is_one());
        assert!(Field::Prime(3).from_rational(&BigRational::new(1.into(), 3.into())).is_err());
    }

    #[test]
    fn parse_descriptors() {
        assert_eq!(Field::parse("prime:101").unwrap(), Field::Prime(101));
        assert_eq!(Field::parse("rational").unwrap(), Field::Rational);
        assert_eq!(
            Field::parse("cyclotomic3:rational").unwrap(),
            Field::Cyclotomic3(BaseField::Rational)
        );
        assert_eq!(Field::parse("cyclotomic3:prime:97").unwrap(), Field::Prime(97));
        assert!(Field::parse("prime:100").is_err());
        assert!(Field::parse("reals").is_err());
    }
}
