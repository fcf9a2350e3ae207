//! Dense matrices over a commutative ring, with exact elimination routines
//! when the entries lie in a field.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::algebra::field::{Field, FieldElement};
use crate::error::{Error, Result};

/// Minimal commutative-ring interface shared by field elements and polynomials.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero_like(self)
    }
    fn one_like(&self) -> Self {
        FieldElement::one_like(self)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    zero: T,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, zero: T) -> Self {
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn from_fn(rows: usize, cols: usize, zero: T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, zero, data }
    }

    /// Build from row vectors; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>, zero: T) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, zero, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<Vec<T>>, zero: T, nrows: usize) -> Self {
        let c = cols.len();
        assert!(cols.iter().all(|x| x.len() == nrows), "ragged columns");
        Matrix::from_fn(nrows, c, zero, |i, j| cols[j][i].clone())
    }

    pub fn identity(n: usize, zero: T) -> Self {
        let one = zero.one_like();
        Matrix::from_fn(n, n, zero, |i, j| if i == j { one.clone() } else { one.zero_like() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero(&self) -> &T {
        &self.zero
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn map<U: Ring>(&self, zero: U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, zero, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, self.zero.clone(), |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Matrix::new(self.rows, o.cols, self.zero.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, self.zero.clone(), |i, j| self[(i, j)].add(&o[(i, j)]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, self.zero.clone(), |i, j| self[(i, j)].sub(&o[(i, j)]))
    }

    pub fn neg(&self) -> Self {
        self.map(self.zero.clone(), |x| x.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(self.zero.clone(), |x| x.mul(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), self.zero.clone(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        Matrix::from_fn(self.rows, self.cols + o.cols, self.zero.clone(), |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        Matrix::from_fn(self.rows + o.rows, self.cols, self.zero.clone(), |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                o[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)].add(&self[(j, i)]).is_zero())
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::InvalidInput(format!("det of non-square {}x{} matrix", self.rows, self.cols)));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.laplace(&idx, &idx))
    }

    fn laplace(&self, rows: &[usize], cols: &[usize]) -> T {
        match rows.len() {
            0 => self.zero.one_like(),
            1 => self[(rows[0], cols[0])].clone(),
            2 => self[(rows[0], cols[0])]
                .mul(&self[(rows[1], cols[1])])
                .sub(&self[(rows[0], cols[1])].mul(&self[(rows[1], cols[0])])),
            _ => {
                let mut acc = self.zero.clone();
                for (k, &c) in cols.iter().enumerate() {
                    let a = &self[(rows[0], c)];
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a.mul(&self.laplace(&rows[1..], &sub_cols));
                    acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    /// Pfaffian of a 4×4 skew matrix: m12·m34 − m13·m24 + m14·m23.
    pub fn pfaffian4(&self) -> Result<T> {
        if self.rows != 4 || self.cols != 4 || !self.is_skew() {
            return Err(Error::InvalidInput("pfaffian4 needs a 4x4 skew-symmetric matrix".into()));
        }
        let m = |i: usize, j: usize| &self[(i, j)];
        Ok(m(0, 1)
            .mul(m(2, 3))
            .sub(&m(0, 2).mul(m(1, 3)))
            .add(&m(0, 3).mul(m(1, 2))))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub type FMatrix = Matrix<FieldElement>;

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FMatrix,
    pub pivots: Vec<usize>,
}

impl Matrix<FieldElement> {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, field.zero())
    }

    pub fn eye(field: Field, n: usize) -> Self {
        Matrix::identity(n, field.zero())
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
            field.zero(),
        )
    }

    pub fn field(&self) -> Field {
        self.zero.field()
    }

    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let pivot_row: Vec<(usize, FieldElement)> =
                (c..m.cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (j, v) in &pivot_row {
                    m[(i, *j)] = &m[(i, *j)] - &(&f * v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Canonical kernel basis read off the RREF: one column per free variable,
    /// in ascending order, with that variable set to 1.
    pub fn kernel_basis(&self) -> FMatrix {
        let Rref { matrix, pivots } = self.rref();
        let field = self.field();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(field, self.cols, free.len());
        for (col, &fv) in free.iter().enumerate() {
            k[(fv, col)] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                let v = &matrix[(r, fv)];
                if !v.is_zero() {
                    k[(pc, col)] = -v;
                }
            }
        }
        k
    }

    /// Left kernel as rows: vectors `y` with `y·self = 0`.
    pub fn left_kernel(&self) -> FMatrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::InvalidInput(format!("det of non-square {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let field = self.field();
        if n == 0 {
            return Ok(field.one());
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = field.one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Ok(field.zero());
                };
                for j in 0..n {
                    m.data.swap(p * n + j, k * n + j);
                }
                sign_flip = !sign_flip;
            }
            let pivot = m[(k, k)].clone();
            let prev_inv = prev.inv().expect("nonzero previous pivot");
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&m[(i, j)] * &pivot) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = &v * &prev_inv;
                }
                m[(i, k)] = field.zero();
            }
            prev = pivot;
        }
        let d = m[(n - 1, n - 1)].clone();
        Ok(if sign_flip { -d } else { d })
    }

    pub fn inverse(&self) -> Option<FMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::eye(self.field(), n));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(matrix.submatrix(&(0..n).collect::<Vec<_>>(), &cols))
    }

    /// Some solution `X` of `self · X = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &FMatrix) -> Option<FMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field(), self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = matrix[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// A basis (as columns) of the column space, taken from the original columns.
    pub fn column_basis(&self) -> FMatrix {
        let piv = self.rref().pivots;
        self.select_cols(&piv)
    }

    /// Canonical representative of the column space: the transpose of the
    /// nonzero rows of the RREF of the transpose.
    pub fn column_space_canonical(&self) -> FMatrix {
        let Rref { matrix, pivots } = self.transpose().rref();
        matrix.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).transpose()
    }

    pub fn same_column_space(&self, o: &FMatrix) -> bool {
        self.rows == o.rows && self.column_space_canonical() == o.column_space_canonical()
    }

    pub fn same_row_space(&self, o: &FMatrix) -> bool {
        self.transpose().same_column_space(&o.transpose())
    }

    /// Whether the column space of `o` is contained in that of `self`.
    pub fn contains_column_space(&self, o: &FMatrix) -> bool {
        self.rank() == self.hstack(o).rank()
    }

    /// Basis of the intersection of two column spaces.
    pub fn intersect_column_spaces(&self, o: &FMatrix) -> FMatrix {
        let a = self.column_basis();
        let b = o.column_basis();
        let k = a.hstack(&b.neg()).kernel_basis();
        let ka = k.select_rows(&(0..a.cols).collect::<Vec<_>>());
        a.mul(&ka).column_basis()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.is_zero()
    }
}

/// Column vector from a slice.
pub fn column(field: Field, v: &[FieldElement]) -> FMatrix {
    Matrix::from_cols(vec![v.to_vec()], field.zero(), v.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::BaseField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random(field: Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> FMatrix {
        Matrix::from_fn(r, c, field.zero(), |_, _| field.random(rng))
    }

    // Independent oracle: Gaussian elimination without the RREF back-substitution.
    fn oracle_rank(m: &FMatrix) -> usize {
        let mut rows = m.row_vecs();
        let mut rank = 0;
        for c in 0..m.cols() {
            if let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) {
                rows.swap(rank, p);
                for i in rank + 1..rows.len() {
                    let f = &rows[i][c] / &rows[rank][c];
                    for j in 0..m.cols() {
                        let d = &f * &rows[rank][j];
                        rows[i][j] = &rows[i][j] - &d;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn kernel_trivial_cases() {
        let f = Field::Prime(101);
        assert_eq!(Matrix::eye(f, 6).kernel_basis().cols(), 0);
        let k = Matrix::zeros(f, 6, 12).kernel_basis();
        assert_eq!(k, Matrix::eye(f, 12));
    }

    #[test]
    fn kernel_random_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [
            Field::Rational,
            Field::Prime(101),
            Field::Cyclotomic3(BaseField::Rational),
            Field::Cyclotomic3(BaseField::Prime(5)),
        ] {
            for t in 0..200 {
                let (r, c) = (1 + t % 7, 1 + (t * 5) % 13);
                let mut m = random(field, r, c, &mut rng);
                if t % 3 == 0 && r > 1 {
                    // force a dependent row
                    for j in 0..c {
                        m[(r - 1, j)] = m[(0, j)].clone();
                    }
                }
                let k = m.kernel_basis();
                assert!(m.mul(&k).is_zero());
                let rank = oracle_rank(&m);
                assert_eq!(k.cols(), c - rank);
                assert_eq!(oracle_rank(&k), k.cols());
            }
        }
    }

    #[test]
    fn det_matches_cofactor() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for field in [Field::Rational, Field::Prime(97)] {
            for n in 0..6 {
                for _ in 0..20 {
                    let m = random(field, n, n, &mut rng);
                    assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
                }
            }
        }
        assert!(Matrix::zeros(Field::Rational, 2, 3).det().is_err());
    }

    #[test]
    fn pfaffian_squares_to_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for field in [Field::Rational, Field::Prime(97)] {
            for _ in 0..100 {
                let mut m = Matrix::zeros(field, 4, 4);
                for i in 0..4 {
                    for j in i + 1..4 {
                        let x = field.random(&mut rng);
                        m[(j, i)] = -&x;
                        m[(i, j)] = x;
                    }
                }
                let pf = m.pfaffian4().unwrap();
                assert_eq!(&pf * &pf, m.det().unwrap());
            }
        }
        let q = Field::Rational;
        let (a, b) = (q.from_i64(3), q.from_i64(5));
        let mut m = Matrix::zeros(q, 4, 4);
        m[(0, 1)] = a.clone();
        m[(1, 0)] = -&a;
        m[(2, 3)] = b.clone();
        m[(3, 2)] = -&b;
        assert_eq!(m.pfaffian4().unwrap(), q.from_i64(15));
        assert!(Matrix::eye(q, 4).pfaffian4().is_err());
    }

    #[test]
    fn inverse_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = Field::Rational;
        let m = random(f, 5, 5, &mut rng);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::eye(f, 5));
        let b = random(f, 5, 2, &mut rng);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul(&x), b);
    }

    #[test]
    fn subspace_operations() {
        let f = Field::Prime(101);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random(f, 8, 5, &mut rng);
        let b = random(f, 8, 5, &mut rng);
        let i = a.intersect_column_spaces(&b);
        assert_eq!(i.cols(), 2);
        assert!(a.contains_column_space(&i) && b.contains_column_space(&i));
        let g = random(f, 5, 5, &mut rng);
        assert!(a.same_column_space(&a.mul(&g)));
    }
}
