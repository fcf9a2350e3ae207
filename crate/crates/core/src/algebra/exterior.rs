//! Exterior algebra of the 6-dimensional space with ordered basis
//! `e1, e2, e3, f1, f2, f3` (indices 0..6).
//!
//! The grade-p basis is the list of strictly increasing index tuples in lex
//! order; internally tuples are bitmasks.

use std::fmt;
use std::sync::OnceLock;

use crate::algebra::field::{Field, FieldElement};
use crate::algebra::matrix::{FMatrix, Matrix};
use crate::error::{Error, Result};

pub const DIM: usize = 6;
pub const BASIS_NAMES: [&str; DIM] = ["e1", "e2", "e3", "f1", "f2", "f3"];

struct Tables {
    // masks[p] lists grade-p basis masks in lex order of index tuples
    masks: Vec<Vec<u8>>,
    // index_of[mask] = position within its grade
    index_of: [usize; 1 << DIM],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut masks = vec![Vec::new(); DIM + 1];
        let mut index_of = [0usize; 1 << DIM];
        for p in 0..=DIM {
            for tuple in combinations(DIM, p) {
                let m = tuple.iter().fold(0u8, |acc, &i| acc | (1 << i));
                index_of[m as usize] = masks[p].len();
                masks[p].push(m);
            }
        }
        Tables { masks, index_of }
    })
}

/// Strictly increasing `k`-tuples from `0..n` in lex order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn grade_dim(p: usize) -> usize {
    tables().masks[p].len()
}

/// Index tuple of the `idx`-th basis element of grade `p`.
pub fn basis_tuple(p: usize, idx: usize) -> Vec<usize> {
    let m = tables().masks[p][idx];
    (0..DIM).filter(|i| m & (1 << i) != 0).collect()
}

/// Position of an increasing index tuple in the grade basis.
pub fn tuple_index(tuple: &[usize]) -> usize {
    let m = tuple.iter().fold(0u8, |acc, &i| acc | (1 << i));
    tables().index_of[m as usize]
}

// sign of a∧b for disjoint masks: (-1)^{#{(i,j): i∈a, j∈b, i>j}}
fn merge_sign(a: u8, b: u8) -> bool {
    let mut inversions = 0u32;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            inversions += (a >> (j + 1)).count_ones();
        }
    }
    inversions % 2 == 1
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    field: Field,
    grade: usize,
    coeffs: Vec<FieldElement>,
}

impl ExteriorElement {
    pub fn zero(field: Field, grade: usize) -> Self {
        assert!(grade <= DIM);
        ExteriorElement { field, grade, coeffs: vec![field.zero(); grade_dim(grade)] }
    }

    pub fn basis(field: Field, grade: usize, idx: usize) -> Self {
        let mut x = ExteriorElement::zero(field, grade);
        x.coeffs[idx] = field.one();
        x
    }

    /// Basis monomial from an arbitrary (not necessarily sorted) index list;
    /// repeated indices give zero.
    pub fn monomial(field: Field, indices: &[usize]) -> Self {
        let mut acc = ExteriorElement::scalar(field.one());
        for &i in indices {
            acc = acc.wedge(&ExteriorElement::basis(field, 1, i)).expect("grade within range");
        }
        acc
    }

    pub fn scalar(c: FieldElement) -> Self {
        ExteriorElement { field: c.field(), grade: 0, coeffs: vec![c] }
    }

    pub fn from_coeffs(field: Field, grade: usize, coeffs: Vec<FieldElement>) -> Result<Self> {
        if grade > DIM || coeffs.len() != grade_dim(grade) {
            return Err(Error::InvalidInput(format!("grade {grade} needs {} coefficients", grade_dim(grade.min(DIM)))));
        }
        Ok(ExteriorElement { field, grade, coeffs })
    }

    pub fn vector(field: Field, v: &[FieldElement]) -> Self {
        assert_eq!(v.len(), DIM);
        ExteriorElement { field, grade: 1, coeffs: v.to_vec() }
    }

    /// `v1 ∧ … ∧ vk` for vectors given in coordinates.
    pub fn wedge_vectors(field: Field, vs: &[Vec<FieldElement>]) -> Self {
        let mut acc = ExteriorElement::scalar(field.one());
        for v in vs {
            acc = acc.wedge(&ExteriorElement::vector(field, v)).expect("at most six vectors");
        }
        acc
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.grade, o.grade, "grade mismatch");
        ExteriorElement {
            field: self.field,
            grade: self.grade,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        ExteriorElement { field: self.field, grade: self.grade, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        let g = self.grade + o.grade;
        if g > DIM {
            return Err(Error::InvalidInput(format!("wedge of grades {} and {} exceeds {DIM}", self.grade, o.grade)));
        }
        let t = tables();
        let mut out = ExteriorElement::zero(self.field, g);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ma = t.masks[self.grade][i];
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mb = t.masks[o.grade][j];
                if ma & mb != 0 {
                    continue;
                }
                let k = t.index_of[(ma | mb) as usize];
                let prod = a * b;
                out.coeffs[k] = if merge_sign(ma, mb) { &out.coeffs[k] - &prod } else { &out.coeffs[k] + &prod };
            }
        }
        Ok(out)
    }

    /// Interior product with a covector `λ` on the 6-dimensional space.
    pub fn contract(&self, lambda: &[FieldElement]) -> Result<Self> {
        if self.grade == 0 {
            return Err(Error::InvalidInput("contraction of a grade-0 element".into()));
        }
        assert_eq!(lambda.len(), DIM);
        let t = tables();
        let mut out = ExteriorElement::zero(self.field, self.grade - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let m = t.masks[self.grade][i];
            let mut pos = 0;
            for v in 0..DIM {
                if m & (1 << v) == 0 {
                    continue;
                }
                if !lambda[v].is_zero() {
                    let k = t.index_of[(m & !(1 << v)) as usize];
                    let term = a * &lambda[v];
                    out.coeffs[k] = if pos % 2 == 1 { &out.coeffs[k] - &term } else { &out.coeffs[k] + &term };
                }
                pos += 1;
            }
        }
        Ok(out)
    }

    /// Coefficient of `e1∧e2∧e3∧f1∧f2∧f3` in `x∧y` for grade-3 `x`, `y`.
    pub fn orientation_pair(x: &Self, y: &Self) -> Result<FieldElement> {
        if x.grade != 3 || y.grade != 3 {
            return Err(Error::InvalidInput("orientation pairing needs two grade-3 elements".into()));
        }
        Ok(x.wedge(y)?.coeffs[0].clone())
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let names: Vec<&str> = basis_tuple(self.grade, i).iter().map(|&k| BASIS_NAMES[k]).collect();
            let mono = if names.is_empty() { "1".to_string() } else { names.join("^") };
            parts.push(format!("{c}*{mono}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ^{}[{self}]", self.grade)
    }
}

/// Matrix of the skew pairing on grade 3: entry (i, j) = orientation_pair(b_i, b_j).
pub fn orientation_gram(field: Field) -> FMatrix {
    let n = grade_dim(3);
    Matrix::from_fn(n, n, field.zero(), |i, j| {
        ExteriorElement::orientation_pair(&ExteriorElement::basis(field, 3, i), &ExteriorElement::basis(field, 3, j))
            .unwrap()
    })
}

/// Matrix of `Λ^p g` on the grade-p basis, where `g` is a 6×6 matrix acting on
/// column vectors.
pub fn induced_matrix(g: &FMatrix, p: usize) -> FMatrix {
    assert!(g.rows() == DIM && g.cols() == DIM);
    let field = g.field();
    let n = grade_dim(p);
    let images = g.col_vecs();
    let cols: Vec<Vec<FieldElement>> = (0..n)
        .map(|idx| {
            let vs: Vec<Vec<FieldElement>> = basis_tuple(p, idx).iter().map(|&k| images[k].clone()).collect();
            let w = if vs.is_empty() { ExteriorElement::scalar(field.one()) } else { ExteriorElement::wedge_vectors(field, &vs) };
            w.coeffs
        })
        .collect();
    Matrix::from_cols(cols, field.zero(), n)
}

/// Matrix of contraction with `λ` from grade p to grade p-1.
pub fn contraction_matrix(field: Field, lambda: &[FieldElement], p: usize) -> FMatrix {
    let cols: Vec<Vec<FieldElement>> = (0..grade_dim(p))
        .map(|i| ExteriorElement::basis(field, p, i).contract(lambda).unwrap().coeffs)
        .collect();
    Matrix::from_cols(cols, field.zero(), grade_dim(p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_elem(field: Field, grade: usize, rng: &mut ChaCha8Rng) -> ExteriorElement {
        let coeffs = (0..grade_dim(grade)).map(|_| field.random(rng)).collect();
        ExteriorElement::from_coeffs(field, grade, coeffs).unwrap()
    }

    #[test]
    fn grade_dims() {
        let d: Vec<usize> = (0..=6).map(grade_dim).collect();
        assert_eq!(d, vec![1, 6, 15, 20, 15, 6, 1]);
        assert_eq!(basis_tuple(3, 0), vec![0, 1, 2]);
        assert_eq!(basis_tuple(3, 19), vec![3, 4, 5]);
        assert_eq!(tuple_index(&[0, 1, 3]), 1);
    }

    #[test]
    fn basic_wedges() {
        let q = Field::Rational;
        let e1 = ExteriorElement::basis(q, 1, 0);
        assert!(e1.wedge(&e1).unwrap().is_zero());
        // (e2∧e3)∧e1 = e1∧e2∧e3
        let e23 = ExteriorElement::monomial(q, &[1, 2]);
        assert_eq!(e23.wedge(&e1).unwrap(), ExteriorElement::monomial(q, &[0, 1, 2]));
        assert_eq!(ExteriorElement::monomial(q, &[1, 0]), ExteriorElement::monomial(q, &[0, 1]).scale(&q.from_i64(-1)));
        let big = ExteriorElement::basis(q, 4, 0);
        assert!(big.wedge(&ExteriorElement::basis(q, 3, 0)).is_err());
    }

    #[test]
    fn contraction_examples() {
        let q = Field::Rational;
        let mut lam = vec![q.zero(); 6];
        lam[0] = q.one();
        let x = ExteriorElement::monomial(q, &[0, 1]);
        assert_eq!(x.contract(&lam).unwrap(), ExteriorElement::basis(q, 1, 1));
        let y = ExteriorElement::monomial(q, &[2, 3]);
        assert!(y.contract(&lam).unwrap().is_zero());
        assert!(ExteriorElement::scalar(q.one()).contract(&lam).is_err());
    }

    #[test]
    fn contraction_kernel_is_lambda3_of_hyperplane() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = Field::Prime(101);
        for _ in 0..20 {
            let lam: Vec<FieldElement> = (0..6).map(|_| f.random(&mut rng)).collect();
            if lam.iter().all(|x| x.is_zero()) {
                continue;
            }
            assert_eq!(contraction_matrix(f, &lam, 3).nullity(), 10);
        }
    }

    #[test]
    fn graded_commutativity_and_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for field in [Field::Rational, Field::Prime(97)] {
            for _ in 0..50 {
                let p = rng.gen_range(0..=3);
                let q = rng.gen_range(0..=3);
                let x = random_elem(field, p, &mut rng);
                let y = random_elem(field, q, &mut rng);
                let xy = x.wedge(&y).unwrap();
                let yx = y.wedge(&x).unwrap();
                let s = if (p * q) % 2 == 1 { field.from_i64(-1) } else { field.one() };
                assert_eq!(xy, yx.scale(&s));
                let lam: Vec<FieldElement> = (0..6).map(|_| field.random(&mut rng)).collect();
                if p + q >= 1 {
                    let lhs = xy.contract(&lam).unwrap();
                    let mut rhs = ExteriorElement::zero(field, p + q - 1);
                    if p >= 1 {
                        rhs = rhs.add(&x.contract(&lam).unwrap().wedge(&y).unwrap());
                    }
                    if q >= 1 {
                        let t = x.wedge(&y.contract(&lam).unwrap()).unwrap();
                        rhs = if p % 2 == 1 { rhs.sub(&t) } else { rhs.add(&t) };
                    }
                    assert_eq!(lhs, rhs);
                }
                if p >= 2 {
                    assert!(x.contract(&lam).unwrap().contract(&lam).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn orientation_pairing_nondegenerate_and_skew() {
        let g = orientation_gram(Field::Rational);
        assert_eq!(g.rank(), 20);
        assert!(g.is_skew());
    }

    #[test]
    fn induced_matrix_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = Field::Prime(101);
        let a = Matrix::from_fn(6, 6, f.zero(), |_, _| f.random(&mut rng));
        let b = Matrix::from_fn(6, 6, f.zero(), |_, _| f.random(&mut rng));
        for p in 1..=4 {
            assert_eq!(induced_matrix(&a.mul(&b), p), induced_matrix(&a, p).mul(&induced_matrix(&b, p)));
        }
        assert_eq!(induced_matrix(&Matrix::eye(f, 6), 3), Matrix::eye(f, 20));
    }
}
