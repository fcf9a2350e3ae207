//! Equations of the form `det M ± L1·L2·L3` and their Gale duals.
//!
//! A tuple is stored as its 6×12 coefficient matrix: column `j` holds the
//! coefficients of the j-th linear form in the order
//! `M11, M12, M13, M21, …, M33, L1, L2, L3`.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::ideal::homogeneous_membership;
use crate::algebra::matrix::{FMatrix, Matrix, Ring};
use crate::algebra::poly::{var_names, MultiPoly};
use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};

/// Column index of `M[i][j]` (0-based).
pub const fn m_col(i: usize, j: usize) -> usize {
    3 * i + j
}

/// Column index of `L_i` for `i` in 1..=3.
pub const fn l_col(i: usize) -> usize {
    8 + i
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonSyzygeticEquation {
    vars: Arc<[String]>,
    forms: FMatrix,
    sign: i8,
}

/// Multipliers certifying `F = Σ minor_k·ℓ_k + L_i·q`.
#[derive(Clone, Debug)]
pub struct ScrollCertificate {
    /// The three minors followed by `L_i`.
    pub generators: Vec<MultiPoly>,
    pub linear: Vec<MultiPoly>,
    pub quadric: MultiPoly,
}

impl NonSyzygeticEquation {
    /// Build from a 6×12 coefficient matrix.
    pub fn from_forms(vars: Arc<[String]>, forms: FMatrix, sign: i8) -> Result<Self> {
        if forms.rows() != 6 || forms.cols() != 12 {
            return Err(Error::InvalidInput(format!(
                "coefficient matrix must be 6x12, got {}x{}",
                forms.rows(),
                forms.cols()
            )));
        }
        if vars.len() != 6 {
            return Err(Error::InvalidInput("an equation needs exactly 6 variables".into()));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidInput("sign must be +1 or -1".into()));
        }
        Ok(NonSyzygeticEquation { vars, forms, sign })
    }

    /// Build from twelve linear forms (nine entries of `M` row by row, then `L1..L3`).
    pub fn from_polys(forms: &[MultiPoly], sign: i8) -> Result<Self> {
        if forms.len() != 12 {
            return Err(Error::InvalidInput("need twelve linear forms".into()));
        }
        let vars = forms[0].vars().clone();
        let field = forms[0].field();
        let mut cols = Vec::with_capacity(12);
        for p in forms {
            if p.vars().len() != vars.len() || p.field() != field {
                return Err(Error::InvalidInput("forms must share field and variables".into()));
            }
            cols.push(p.linear_coeffs()?);
        }
        let m = Matrix::from_cols(cols, field.zero(), vars.len());
        NonSyzygeticEquation::from_forms(vars, m, sign)
    }

    /// A random tuple with uniformly random coefficients.
    pub fn random<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Self {
        let forms = Matrix::from_fn(6, 12, field.zero(), |_, _| field.random(rng));
        NonSyzygeticEquation { vars: var_names("X", 6), forms, sign: 1 }
    }

    /// A random tuple whose coefficient map has rank 6 and whose L-forms are
    /// pairwise independent.
    pub fn random_valid<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Self {
        loop {
            let eq = NonSyzygeticEquation::random(field, rng);
            if eq.forms.rank() == 6 && eq.l_pairwise_independent() {
                return eq;
            }
        }
    }

    pub fn field(&self) -> Field {
        self.forms.field()
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn with_sign(&self, sign: i8) -> Self {
        NonSyzygeticEquation { sign, ..self.clone() }
    }

    pub fn with_vars(&self, vars: Arc<[String]>) -> Self {
        assert_eq!(vars.len(), 6);
        NonSyzygeticEquation { vars, ..self.clone() }
    }

    /// The 6×12 coefficient matrix.
    pub fn coefficient_map(&self) -> &FMatrix {
        &self.forms
    }

    pub fn form(&self, j: usize) -> MultiPoly {
        MultiPoly::linear(self.field(), self.vars.clone(), &self.forms.col(j))
    }

    pub fn m_entry(&self, i: usize, j: usize) -> MultiPoly {
        self.form(m_col(i, j))
    }

    /// `L_i` for `i` in 1..=3.
    pub fn l(&self, i: usize) -> MultiPoly {
        self.form(l_col(i))
    }

    pub fn m_matrix(&self) -> Matrix<MultiPoly> {
        let zero = MultiPoly::zero(self.field(), self.vars.clone());
        Matrix::from_fn(3, 3, zero, |i, j| self.m_entry(i, j))
    }

    /// Coefficient vector of `M[i][j]` or `L_i` as a row over the variables.
    pub fn form_coeffs(&self, j: usize) -> Vec<FieldElement> {
        self.forms.col(j)
    }

    /// `det M + sign·L1·L2·L3`.
    pub fn cubic_polynomial(&self) -> MultiPoly {
        let det = self.m_matrix().det_cofactor().expect("square");
        let l = self.l(1).mul(&self.l(2)).mul(&self.l(3));
        if self.sign > 0 {
            det.add(&l)
        } else {
            det.sub(&l)
        }
    }

    /// Whether at least two of the L-forms are linearly independent.
    pub fn is_valid(&self) -> bool {
        self.forms.select_cols(&[9, 10, 11]).rank() >= 2
    }

    fn l_pairwise_independent(&self) -> bool {
        [(9, 10), (9, 11), (10, 11)].iter().all(|&(a, b)| self.forms.select_cols(&[a, b]).rank() == 2)
    }

    /// The Gale dual tuple.
    ///
    /// Its coefficient matrix is the transpose of the canonical kernel basis of
    /// this tuple's coefficient map, in dual variables `Y0..Y5`. The sign flips.
    pub fn gale_dual(&self) -> Result<NonSyzygeticEquation> {
        let k = self.forms.kernel_basis();
        if k.cols() != 6 {
            return Err(Error::DegenerateTuple);
        }
        let vars = if self.vars.first().is_some_and(|v| v.starts_with('Y')) {
            var_names("X", 6)
        } else {
            var_names("Y", 6)
        };
        NonSyzygeticEquation::from_forms(vars, k.transpose(), -self.sign)
    }

    /// Permute the L-forms: the new `L_{k+1}` is the old `L_{perm[k]+1}`.
    pub fn permute_l(&self, perm: [usize; 3]) -> Self {
        let mut cols: Vec<usize> = (0..9).collect();
        cols.extend(perm.iter().map(|&p| 9 + p));
        NonSyzygeticEquation { forms: self.forms.select_cols(&cols), ..self.clone() }
    }

    /// Apply a change of coordinates: forms are pulled back along `x = g·y`.
    pub fn substitute(&self, g: &FMatrix) -> Self {
        NonSyzygeticEquation { forms: g.transpose().mul(&self.forms), ..self.clone() }
    }

    /// Generators of the scroll ideal: the three 2×2 minors of the generalized
    /// rows `rowpair·M`, followed by `L_i`.
    pub fn scroll_ideal(&self, i: usize, rowpair: &FMatrix) -> Result<Vec<MultiPoly>> {
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidInput("L index must be 1, 2 or 3".into()));
        }
        if rowpair.rows() != 2 || rowpair.cols() != 3 || rowpair.rank() != 2 {
            return Err(Error::InvalidInput("row pair must be a 2x3 matrix of rank 2".into()));
        }
        let zero = MultiPoly::zero(self.field(), self.vars.clone());
        let rp = rowpair.map(zero, |c| MultiPoly::constant(c.clone(), self.vars.clone()));
        let rows = rp.mul(&self.m_matrix());
        let minor = |a: usize, b: usize| rows[(0, a)].mul(&rows[(1, b)]).sub(&rows[(0, b)].mul(&rows[(1, a)]));
        Ok(vec![minor(1, 2), minor(0, 2), minor(0, 1), self.l(i)])
    }

    /// Points of the scroll: the solutions of `(s·r1 + t·r2)·M(x) = 0, L_i(x) = 0`
    /// for the generalized rows `r1, r2`, as a basis of a linear space.
    pub fn scroll_ruling(&self, i: usize, rowpair: &FMatrix, s: &FieldElement, t: &FieldElement) -> FMatrix {
        let field = self.field();
        let combo: Vec<FieldElement> = (0..3).map(|k| &(s * &rowpair[(0, k)]) + &(t * &rowpair[(1, k)])).collect();
        let mut eqs = Matrix::zeros(field, 4, 6);
        for col in 0..3 {
            for var in 0..6 {
                let mut acc = field.zero();
                for (row, c) in combo.iter().enumerate() {
                    acc = &acc + &(c * &self.forms[(var, m_col(row, col))]);
                }
                eqs[(col, var)] = acc;
            }
        }
        for var in 0..6 {
            eqs[(3, var)] = self.forms[(var, l_col(i))].clone();
        }
        eqs.kernel_basis()
    }

    /// Decide whether `cubic` lies in the scroll ideal by solving
    /// `cubic = Σ minor_k·ℓ_k + L_i·q` for linear `ℓ_k` and a quadric `q`.
    pub fn scroll_contains(&self, cubic: &MultiPoly, i: usize, rowpair: &FMatrix) -> Result<Option<ScrollCertificate>> {
        let gens = self.scroll_ideal(i, rowpair)?;
        if !cubic.is_homogeneous(3) {
            return Err(Error::InvalidInput("cubic must be homogeneous of degree 3".into()));
        }
        Ok(homogeneous_membership(cubic, &gens, &[1, 1, 1, 2]).map(|mut h| {
            let quadric = h.pop().unwrap();
            ScrollCertificate { generators: gens, linear: h, quadric }
        }))
    }

    /// Scroll membership for this tuple's own cubic.
    pub fn scroll_membership(&self, i: usize, rowpair: &FMatrix) -> Result<Option<ScrollCertificate>> {
        self.scroll_contains(&self.cubic_polynomial(), i, rowpair)
    }
}

/// Compare the cubics of two tuples up to a change of coordinates and a
/// nonzero scalar.
///
/// The coordinate change is pinned down by matching the M-entries and `L1`
/// of `other` to those of `base`; the remaining two L-forms may differ by a
/// reciprocal rescaling or a swap, which leaves the cubic unchanged. Returns
/// the scalar `c` with `cubic(base) = c·cubic(other ∘ T)`.
pub fn cubics_equivalent(base: &NonSyzygeticEquation, other: &NonSyzygeticEquation) -> Option<FieldElement> {
    let perms = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let first10: Vec<usize> = (0..10).collect();
    let target = base.cubic_polynomial();
    for perm in perms {
        let o = other.permute_l(perm);
        let b = o.coefficient_map().select_cols(&first10);
        let c = base.coefficient_map().select_cols(&first10);
        let Some(tt) = b.transpose().solve(&c.transpose()) else { continue };
        let t = tt.transpose();
        if t.rank() != 6 {
            continue;
        }
        let moved = NonSyzygeticEquation::from_forms(base.vars.clone(), t.mul(o.coefficient_map()), o.sign).ok()?;
        if let Some(s) = target.proportional(&moved.cubic_polynomial()) {
            return Some(s);
        }
    }
    None
}

impl ScrollCertificate {
    /// Re-expand the certificate independently of the solver.
    pub fn verify(&self, cubic: &MultiPoly) -> bool {
        let mut acc = self.generators[3].mul(&self.quadric);
        for (g, h) in self.generators.iter().zip(&self.linear) {
            acc = acc.add(&g.mul(h));
        }
        acc == *cubic
    }
}
