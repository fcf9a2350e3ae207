//! Coordinate frame on Λ³V₆ adapted to the splitting `V₆ = E ⊕ F`, the
//! σ-quadric, the two invariant cubics and their restriction to a
//! ρ-Lagrangian subspace.
//!
//! Frame functionals act on grade-3 vectors by the dot product in the
//! standard basis. Frame coordinates of a point are `(u_0..u_9, û_0..û_9)`
//! with `u_{3i+j} = ê_i∧f_j`, `u_9 = L_E`, `û_{3i+j} = e_i∧f̂_j`, `û_9 = L_F`.

use std::sync::{Arc, OnceLock};

use crate::algebra::exterior::{grade_dim, induced_matrix, ExteriorElement};
use crate::algebra::matrix::{FMatrix, Matrix, Ring};
use crate::algebra::poly::{var_names, MultiPoly};
use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::gale::NonSyzygeticEquation;
use crate::lagrangian::{QPPresentation, RhoLagrangianData};

/// `ê_i` (for `e`) or `f̂_i` (for `f`, offset 3) as a grade-2 element.
pub fn hat(field: Field, offset: usize, i: usize) -> ExteriorElement {
    let (a, b, s) = match i {
        0 => (1, 2, 1),
        1 => (0, 2, -1),
        2 => (0, 1, 1),
        _ => panic!("hat index out of range"),
    };
    ExteriorElement::monomial(field, &[offset + a, offset + b]).scale(&field.from_i64(s))
}

/// The 20 frame functionals `(u_0..u_9, û_0..û_9)` as grade-3 elements.
pub fn frame_vectors(field: Field) -> Vec<ExteriorElement> {
    let v = |k: usize| ExteriorElement::basis(field, 1, k);
    let mut out = Vec::with_capacity(20);
    for i in 0..3 {
        for j in 0..3 {
            out.push(hat(field, 0, i).wedge(&v(3 + j)).unwrap());
        }
    }
    out.push(ExteriorElement::monomial(field, &[0, 1, 2]));
    for i in 0..3 {
        for j in 0..3 {
            out.push(v(i).wedge(&hat(field, 3, j)).unwrap());
        }
    }
    out.push(ExteriorElement::monomial(field, &[3, 4, 5]).scale(&field.from_i64(-1)));
    out
}

/// Coordinate frame: the 20×20 matrix `R` whose columns are the frame
/// functionals in the standard grade-3 basis. Frame coordinates are `Rᵗx`.
#[derive(Clone, Debug)]
pub struct CoordinateFrame {
    pub field: Field,
    pub r: FMatrix,
}

impl CoordinateFrame {
    pub fn new(field: Field) -> Self {
        let cols: Vec<Vec<FieldElement>> = frame_vectors(field).into_iter().map(|x| x.coeffs().to_vec()).collect();
        CoordinateFrame { field, r: Matrix::from_cols(cols, field.zero(), 20) }
    }

    /// Frame coordinates of a grade-3 vector.
    pub fn coordinates(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        self.r.transpose().mul_vec(x)
    }

    /// Grade-3 vector with the given frame coordinates (R is a signed permutation).
    pub fn from_coordinates(&self, c: &[FieldElement]) -> Vec<FieldElement> {
        self.r.mul_vec(c)
    }

    /// Convert a 20×k matrix of columns in frame coordinates to the standard basis.
    pub fn to_standard(&self, m: &FMatrix) -> FMatrix {
        self.r.mul(m)
    }

    pub fn to_frame(&self, m: &FMatrix) -> FMatrix {
        self.r.transpose().mul(m)
    }

    /// Matrix of `Λ³g` in frame coordinates.
    pub fn induced_in_frame(&self, g6: &FMatrix) -> FMatrix {
        self.r.transpose().mul(&induced_matrix(g6, 3)).mul(&self.r)
    }
}

pub fn frame(field: Field) -> CoordinateFrame {
    CoordinateFrame::new(field)
}

/// Variable names of the frame coordinates.
pub fn frame_vars() -> Arc<[String]> {
    static V: OnceLock<Arc<[String]>> = OnceLock::new();
    V.get_or_init(|| {
        let mut v: Vec<String> = Vec::new();
        for side in ["E", "F"] {
            for i in 1..=3 {
                for j in 1..=3 {
                    v.push(format!("M{side}{i}{j}"));
                }
            }
            v.push(format!("L{side}"));
        }
        v.into()
    })
    .clone()
}

fn fvar(field: Field, k: usize) -> MultiPoly {
    MultiPoly::var(field, frame_vars(), k)
}

/// `M_E` (side 0) or `M_F` (side 1) as a 3×3 matrix of frame variables.
pub fn m_matrix(field: Field, side: usize) -> Matrix<MultiPoly> {
    let zero = MultiPoly::zero(field, frame_vars());
    Matrix::from_fn(3, 3, zero, |i, j| fvar(field, 10 * side + 3 * i + j))
}

pub fn l_e(field: Field) -> MultiPoly {
    fvar(field, 9)
}

pub fn l_f(field: Field) -> MultiPoly {
    fvar(field, 19)
}

/// Matrix of the wedge pairing between frame functionals, relative to the
/// orientation `L_E∧L_F`: entry (i, j) is `u_i∧û_j / (L_E∧L_F)`.
pub fn dual_basis_pairing(field: Field) -> FMatrix {
    let fv = frame_vectors(field);
    let orient = ExteriorElement::orientation_pair(&fv[9], &fv[19]).unwrap();
    Matrix::from_fn(10, 10, field.zero(), |i, j| {
        &ExteriorElement::orientation_pair(&fv[i], &fv[10 + j]).unwrap() / &orient
    })
}

/// `σ = Σ u_i·û_i`.
pub fn sigma_quadric(field: Field) -> MultiPoly {
    let mut acc = MultiPoly::zero(field, frame_vars());
    for i in 0..10 {
        acc = acc.add(&fvar(field, i).mul(&fvar(field, 10 + i)));
    }
    acc
}

/// `tr(M_E M_Fᵗ) + L_E·L_F`.
pub fn sigma_trace_form(field: Field) -> MultiPoly {
    let me = m_matrix(field, 0);
    let mf = m_matrix(field, 1);
    let prod = me.mul(&mf.transpose());
    let mut acc = l_e(field).mul(&l_f(field));
    for i in 0..3 {
        acc = acc.add(&prod[(i, i)]);
    }
    acc
}

pub fn det_m(field: Field, side: usize) -> MultiPoly {
    m_matrix(field, side).det_cofactor().unwrap()
}

/// `(2 det M_E − σ L_E, 2 det M_F + σ L_F)`.
pub fn big_cubics(field: Field) -> (MultiPoly, MultiPoly) {
    let two = field.from_i64(2);
    let s = sigma_quadric(field);
    let xe = det_m(field, 0).scale(&two).sub(&s.mul(&l_e(field)));
    let xf = det_m(field, 1).scale(&two).add(&s.mul(&l_f(field)));
    (xe, xf)
}

/// The five listed generators: `L_E, L_F, tr(M_E M_Fᵗ), det M_E, det M_F`.
pub fn generators(field: Field) -> Vec<(&'static str, MultiPoly)> {
    let tr = sigma_trace_form(field).sub(&l_e(field).mul(&l_f(field)));
    vec![
        ("L_E", l_e(field)),
        ("L_F", l_f(field)),
        ("tr(M_E M_F^t)", tr),
        ("det M_E", det_m(field, 0)),
        ("det M_F", det_m(field, 1)),
    ]
}

/// Block-diagonal 6×6 matrix `diag(g, h)` acting on `V₆ = E ⊕ F`.
pub fn block_diag(g: &FMatrix, h: &FMatrix) -> FMatrix {
    let field = g.field();
    Matrix::from_fn(6, 6, field.zero(), |i, j| match (i < 3, j < 3) {
        (true, true) => g[(i, j)].clone(),
        (false, false) => h[(i - 3, j - 3)].clone(),
        _ => field.zero(),
    })
}

/// Pull a polynomial in frame coordinates back along the action of `g6` on
/// points: `p ↦ p ∘ Λ³g6`.
pub fn act_on_polynomial(p: &MultiPoly, g6: &FMatrix) -> MultiPoly {
    let fr = frame(g6.field());
    p.linear_substitute(&fr.induced_in_frame(g6), frame_vars())
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    /// (generator name, fixed on the nose, observed scalar if proportional)
    pub entries: Vec<(String, bool, Option<FieldElement>)>,
}

impl InvarianceReport {
    pub fn all_fixed(&self) -> bool {
        self.entries.iter().all(|e| e.1)
    }
}

/// Check each listed generator against the action of `(g, h) ∈ SL₃×SL₃`.
pub fn generator_invariance(g: &FMatrix, h: &FMatrix) -> Result<InvarianceReport> {
    let field = g.field();
    for m in [g, h] {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(Error::InvalidInput("g and h must be 3x3".into()));
        }
        if !m.det()?.is_one() {
            return Err(Error::InvalidInput("g and h must have determinant 1".into()));
        }
    }
    Ok(scaled_invariance(&block_diag(g, h), field))
}

/// Like [`generator_invariance`] but without the unimodularity check; reports
/// the scalar by which each generator is multiplied.
pub fn scaled_invariance(g6: &FMatrix, field: Field) -> InvarianceReport {
    let entries = generators(field)
        .into_iter()
        .map(|(name, p)| {
            let q = act_on_polynomial(&p, g6);
            let c = q.proportional(&p);
            (name.to_string(), q == p, c)
        })
        .collect();
    InvarianceReport { entries }
}

/// Restriction of the big cubics to a ρ-Lagrangian, with the two projected tuples.
#[derive(Clone, Debug)]
pub struct Projection {
    /// Pullback of `2 det M_E − σ L_E` to `A` in the adapted coordinates `a0..a9`.
    pub restricted_e: MultiPoly,
    pub restricted_f: MultiPoly,
    /// `ι(X_E)`: variables `(a4, a5, a6, a7, a9, a8)`, sign +.
    pub x_e: NonSyzygeticEquation,
    /// `X_F`: variables `(a0, a1, a2, a3, a8, a9)`, sign −.
    pub x_f: NonSyzygeticEquation,
    pub presentation: QPPresentation,
}

/// Pull back the big cubics to `A`, check the cone property and project to
/// the Gale dual pair.
pub fn project_cubics(a: &RhoLagrangianData) -> Result<Projection> {
    let field = a.field();
    let pres = a.adapted_presentation()?;
    let avars = var_names("a", 10);
    let subst = pres.q.vstack(&pres.p);
    let (xe, xf) = big_cubics(field);
    let re = xe.linear_substitute(&subst, avars.clone());
    let rf = xf.linear_substitute(&subst, avars.clone());
    // cone with vertex P(A_F) for X̃_E: no dependence on a0..a3
    if (0..4).any(|k| !re.derivative(k).is_zero()) {
        return Err(Error::ConditionFailed("restricted X̃_E is not a cone over P(A_F)".into()));
    }
    if (4..8).any(|k| !rf.derivative(k).is_zero()) {
        return Err(Error::ConditionFailed("restricted X̃_F is not a cone over P(A_E)".into()));
    }
    let (x_e, x_f) = pres.gale_pair()?;
    // the projected equations are half the restrictions
    let two = field.from_i64(2);
    let e_vars: Vec<usize> = vec![4, 5, 6, 7, 9, 8];
    let f_vars: Vec<usize> = vec![0, 1, 2, 3, 8, 9];
    let embed = |eq: &NonSyzygeticEquation, idx: &[usize]| {
        let mut sel = Matrix::zeros(field, 6, 10);
        for (r, &c) in idx.iter().enumerate() {
            sel[(r, c)] = field.one();
        }
        eq.cubic_polynomial().linear_substitute(&sel, avars.clone())
    };
    if embed(&x_e, &e_vars).scale(&two) != re {
        return Err(Error::Inconsistent("restricted X̃_E differs from 2·ι(X_E)".into()));
    }
    if embed(&x_f, &f_vars).scale(&two) != rf {
        return Err(Error::Inconsistent("restricted X̃_F differs from 2·X_F".into()));
    }
    Ok(Projection { restricted_e: re, restricted_f: rf, x_e, x_f, presentation: pres })
}

/// Total dimension of the grade-3 space.
pub fn lambda3_dim() -> usize {
    grade_dim(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_sl3(field: Field, rng: &mut ChaCha8Rng) -> FMatrix {
        loop {
            let m = Matrix::from_fn(3, 3, field.zero(), |_, _| field.random(rng));
            let d = m.det().unwrap();
            if d.is_zero() {
                continue;
            }
            // scale the first row by 1/det
            let inv = d.inv().unwrap();
            let mut m = m;
            for j in 0..3 {
                m[(0, j)] = &m[(0, j)] * &inv;
            }
            return m;
        }
    }

    #[test]
    fn frame_is_signed_permutation() {
        let fr = frame(Field::Rational);
        assert_eq!(fr.r.mul(&fr.r.transpose()), Matrix::eye(Field::Rational, 20));
        assert_eq!(fr.r.rank(), 20);
    }

    #[test]
    fn frame_examples() {
        let f = Field::Rational;
        let fr = frame(f);
        // u_0 applied to ê_1∧f_1 is 1
        let x = hat(f, 0, 0).wedge(&ExteriorElement::basis(f, 1, 3)).unwrap();
        assert!(fr.coordinates(x.coeffs())[0].is_one());
        let le = ExteriorElement::monomial(f, &[0, 1, 2]);
        let c = fr.coordinates(le.coeffs());
        assert!(c[9].is_one() && c.iter().filter(|x| !x.is_zero()).count() == 1);
        let mixed = ExteriorElement::monomial(f, &[0, 3, 4]);
        assert!(fr.coordinates(mixed.coeffs())[9].is_zero());
    }

    #[test]
    fn hat_identities() {
        let f = Field::Rational;
        let le = ExteriorElement::monomial(f, &[0, 1, 2]);
        let lf = ExteriorElement::monomial(f, &[3, 4, 5]).scale(&f.from_i64(-1));
        for i in 0..3 {
            let ei = ExteriorElement::basis(f, 1, i);
            let fi = ExteriorElement::basis(f, 1, 3 + i);
            assert_eq!(hat(f, 0, i).wedge(&ei).unwrap(), le);
            assert_eq!(fi.wedge(&hat(f, 3, i)).unwrap(), lf.scale(&f.from_i64(-1)));
            for j in 0..3 {
                if i != j {
                    assert!(hat(f, 0, i).wedge(&ExteriorElement::basis(f, 1, j)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn dual_bases() {
        for f in [Field::Rational, Field::Prime(97)] {
            assert_eq!(dual_basis_pairing(f), Matrix::eye(f, 10));
        }
        // relative to e1∧…∧f3 the sign is negative
        let f = Field::Rational;
        let fv = frame_vectors(f);
        assert_eq!(ExteriorElement::orientation_pair(&fv[0], &fv[10]).unwrap(), f.from_i64(-1));
    }

    #[test]
    fn sigma_identity() {
        for f in [Field::Rational, Field::Prime(97)] {
            assert!(sigma_quadric(f).sub(&sigma_trace_form(f)).is_zero());
        }
    }

    #[test]
    fn sigma_vanishes_on_u_e() {
        let f = Field::Rational;
        let mut pt = vec![f.zero(); 20];
        for (k, x) in pt.iter_mut().enumerate().take(10) {
            *x = f.from_i64(k as i64 + 1);
        }
        assert!(sigma_quadric(f).eval(&pt).is_zero());
        // restriction of X̃_E to L_E = 0 is 2 det M_E modulo σ
        let (xe, _) = big_cubics(f);
        let mut sel = Matrix::eye(f, 20);
        sel[(9, 9)] = f.zero();
        let restricted = xe.linear_substitute(&sel, frame_vars());
        assert_eq!(restricted, det_m(f, 0).scale(&f.from_i64(2)));
    }

    #[test]
    fn invariance_under_sl3_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for f in [Field::Rational, Field::Prime(97)] {
            let (xe, xf) = big_cubics(f);
            let s = sigma_quadric(f);
            for _ in 0..3 {
                let g = random_sl3(f, &mut rng);
                let h = random_sl3(f, &mut rng);
                let rep = generator_invariance(&g, &h).unwrap();
                assert!(rep.all_fixed(), "{rep:?}");
                let g6 = block_diag(&g, &h);
                assert_eq!(act_on_polynomial(&s, &g6), s);
                assert_eq!(act_on_polynomial(&xe, &g6), xe);
                assert_eq!(act_on_polynomial(&xf, &g6), xf);
            }
        }
        let id = Matrix::eye(Field::Rational, 3);
        assert!(generator_invariance(&id, &id).unwrap().all_fixed());
    }

    #[test]
    fn non_unimodular_scaling() {
        let f = Field::Rational;
        let mut g = Matrix::eye(f, 3);
        g[(0, 0)] = f.from_i64(2);
        let id = Matrix::eye(f, 3);
        assert!(generator_invariance(&g, &id).is_err());
        let rep = scaled_invariance(&block_diag(&g, &id), f);
        let det_me = rep.entries.iter().find(|e| e.0 == "det M_E").unwrap();
        assert!(!det_me.1);
        assert_eq!(det_me.2, Some(f.from_i64(4)));
    }

    #[test]
    fn projection_roundtrip() {
        use crate::gale::cubics_equivalent;
        use crate::lagrangian::{lagrangian_from_gale, restore_l_order};
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for field in [Field::Rational, Field::Prime(101)] {
            for _ in 0..3 {
                let eq = NonSyzygeticEquation::random_valid(field, &mut rng);
                let dual = eq.gale_dual().unwrap();
                for i in 1..=3 {
                    let (a, _) = lagrangian_from_gale(&eq, i).unwrap();
                    let proj = project_cubics(&a).unwrap();
                    let xe = restore_l_order(&proj.x_e, i);
                    let xf = restore_l_order(&proj.x_f, i);
                    assert!(cubics_equivalent(&eq, &xe).is_some(), "E side, i = {i}");
                    assert!(cubics_equivalent(&dual, &xf).is_some(), "F side, i = {i}");
                }
            }
        }
    }
}
