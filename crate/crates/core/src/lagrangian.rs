//! ρ-Lagrangian subspaces of Λ³(E⊕F) and the passage to and from Gale dual pairs.
//!
//! Subspaces are stored as 20×10 matrices whose columns are in the standard
//! grade-3 basis. Presentations `(Q over P)` are in frame coordinates: `Q`
//! holds the `u`-coordinates (the `U_E` side), `P` the `û`-coordinates.

use crate::algebra::exterior::orientation_gram;
use crate::algebra::matrix::{FMatrix, Matrix};
use crate::algebra::poly::var_names;
use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::gale::{l_col, NonSyzygeticEquation};
use crate::invariants::frame;

#[derive(Clone, Debug)]
pub struct RhoLagrangianData {
    a: FMatrix,
    a_e: FMatrix,
    a_f: FMatrix,
}

/// Presentation of `A` as the image of `(Q over P)` with column blocks of
/// sizes (4, 4, 1, 1) and `Q₁ = P₂ = 0`.
#[derive(Clone, Debug)]
pub struct QPPresentation {
    pub q: FMatrix,
    pub p: FMatrix,
    /// `½(QᵗP + PᵗQ)`.
    pub sigma: FMatrix,
    /// `½(QᵗP − PᵗQ)`.
    pub alpha: FMatrix,
}

/// Indices `(i, j, k)` with `j < k` the two L-forms not chosen.
pub fn l_triple(i: usize) -> (usize, usize, usize) {
    match i {
        1 => (1, 2, 3),
        2 => (2, 1, 3),
        3 => (3, 1, 2),
        _ => panic!("L index must be 1, 2 or 3"),
    }
}

/// Undo the slot order `(L_i, L_j, L_k)` used by presentations.
pub fn restore_l_order(eq: &NonSyzygeticEquation, i: usize) -> NonSyzygeticEquation {
    let (i, j, k) = l_triple(i);
    let mut perm = [0usize; 3];
    perm[i - 1] = 0;
    perm[j - 1] = 1;
    perm[k - 1] = 2;
    eq.permute_l(perm)
}

/// Standard-basis columns spanning `U_E` (frame side 0) or `U_F` (side 1).
pub fn u_side(field: Field, side: usize) -> FMatrix {
    let fr = frame(field);
    fr.r.select_cols(&(10 * side..10 * side + 10).collect::<Vec<_>>())
}

/// `A ∩ U` for `A` of full column rank and `U` spanned by signed coordinate
/// vectors: `A` times the kernel of the rows of `A` outside the support of `U`.
fn intersect_coordinate_subspace(a: &FMatrix, u: &FMatrix) -> FMatrix {
    let outside: Vec<usize> = (0..u.rows()).filter(|&r| (0..u.cols()).all(|c| u[(r, c)].is_zero())).collect();
    a.mul(&a.select_rows(&outside).kernel_basis())
}

fn half(field: Field) -> Result<FieldElement> {
    field
        .from_i64(2)
        .inv()
        .ok_or_else(|| Error::InvalidInput("characteristic 2 is not supported".into()))
}

impl RhoLagrangianData {
    /// Check the three defining conditions and cache `A_E`, `A_F`.
    pub fn validate(cand: &FMatrix) -> Result<Self> {
        if cand.rows() != 20 {
            return Err(Error::InvalidInput(format!("expected 20 rows, got {}", cand.rows())));
        }
        let field = cand.field();
        let a = cand.column_basis();
        if a.cols() != 10 {
            return Err(Error::ConditionFailed(format!("dimension: dim A = {} instead of 10", a.cols())));
        }
        let g = orientation_gram(field);
        if !a.transpose().mul(&g).mul(&a).is_zero() {
            return Err(Error::ConditionFailed("lagrangian: the wedge pairing does not vanish on A".into()));
        }
        let a_e = intersect_coordinate_subspace(&a, &u_side(field, 0));
        let a_f = intersect_coordinate_subspace(&a, &u_side(field, 1));
        if a_e.cols() != 4 || a_f.cols() != 4 {
            return Err(Error::ConditionFailed(format!(
                "rho: dim A_E = {}, dim A_F = {} (both must be 4)",
                a_e.cols(),
                a_f.cols()
            )));
        }
        Ok(RhoLagrangianData { a, a_e, a_f })
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn basis(&self) -> &FMatrix {
        &self.a
    }

    pub fn a_e(&self) -> &FMatrix {
        &self.a_e
    }

    pub fn a_f(&self) -> &FMatrix {
        &self.a_f
    }

    pub fn same_subspace(&self, o: &RhoLagrangianData) -> bool {
        self.a.same_column_space(&o.a)
    }

    /// Apply a linear map of Λ³V₆ (20×20, standard basis) to the subspace.
    pub fn transform(&self, m: &FMatrix) -> Result<RhoLagrangianData> {
        RhoLagrangianData::validate(&m.mul(&self.a))
    }

    /// Basis `A_F, A_E, w₃, w₄` in frame coordinates with the 2×2 block of
    /// `QᵗP` on the complement brought to `[[0, −1], [−1, 0]]`.
    pub fn adapted_presentation(&self) -> Result<QPPresentation> {
        let field = self.field();
        let fr = frame(field);
        let af = fr.to_frame(&self.a_f);
        let ae = fr.to_frame(&self.a_e);
        let mut basis = af.hstack(&ae);
        let all = fr.to_frame(&self.a);
        let mut rank = basis.rank();
        for c in 0..all.cols() {
            if rank == 10 {
                break;
            }
            let cand = basis.hstack(&all.select_cols(&[c]));
            let r = cand.rank();
            if r > rank {
                basis = cand;
                rank = r;
            }
        }
        if rank != 10 {
            return Err(Error::Normalization("A_E + A_F has no two-dimensional complement".into()));
        }
        let top: Vec<usize> = (0..10).collect();
        let bottom: Vec<usize> = (10..20).collect();
        let w = basis.select_cols(&[8, 9]);
        let wq = w.select_rows(&top);
        let wp = w.select_rows(&bottom);
        let s = wq.transpose().mul(&wp);
        if s[(0, 1)] != s[(1, 0)] {
            return Err(Error::Normalization("complement block is not symmetric".into()));
        }
        let (a, b, c) = (s[(0, 0)].clone(), s[(0, 1)].clone(), s[(1, 1)].clone());
        let det = &(&a * &c) - &(&b * &b);
        if det.is_zero() {
            return Err(Error::Normalization("complement block is degenerate".into()));
        }
        let (mut v1, v2) = if a.is_zero() && c.is_zero() {
            (vec![field.one(), field.zero()], vec![field.zero(), field.one()])
        } else if a.is_zero() {
            (vec![field.one(), field.zero()], vec![c.clone(), &field.from_i64(-2) * &b])
        } else {
            let r = (-&det).sqrt().ok_or_else(|| {
                Error::Normalization(format!("no square root of {} in {field}; the complement does not split", -&det))
            })?;
            (vec![&r - &b, a.clone()], vec![&(-&r) - &b, a.clone()])
        };
        let tmp = Matrix::from_cols(vec![v1.clone(), v2.clone()], field.zero(), 2);
        let pairing = tmp.transpose().mul(&s).mul(&tmp)[(0, 1)].clone();
        let scale = -&pairing.inv().unwrap();
        v1 = v1.iter().map(|x| x * &scale).collect();
        let t = Matrix::from_cols(vec![v1, v2], field.zero(), 2);
        let w_norm = w.mul(&t);
        let full = basis.select_cols(&(0..8).collect::<Vec<_>>()).hstack(&w_norm);
        let q = full.select_rows(&top);
        let p = full.select_rows(&bottom);
        QPPresentation::new(q, p)
    }

    /// The Gale dual pair `(X_E with sign +, X_F with sign −)` read off the
    /// adapted presentation. The L-forms come in slot order `(L_i, L_j, L_k)`.
    pub fn gale_from_lagrangian(&self) -> Result<(NonSyzygeticEquation, NonSyzygeticEquation)> {
        self.adapted_presentation()?.gale_pair()
    }
}

impl QPPresentation {
    pub fn new(q: FMatrix, p: FMatrix) -> Result<Self> {
        let field = q.field();
        let two_inv = half(field)?;
        let qtp = q.transpose().mul(&p);
        let ptq = p.transpose().mul(&q);
        Ok(QPPresentation {
            sigma: qtp.add(&ptq).scale(&two_inv),
            alpha: qtp.sub(&ptq).scale(&two_inv),
            q,
            p,
        })
    }

    pub fn field(&self) -> Field {
        self.q.field()
    }

    /// The block form with sole entries −1 at (8, 9) and (9, 8) (0-based).
    pub fn expected_sigma(field: Field) -> FMatrix {
        let mut s = Matrix::zeros(field, 10, 10);
        s[(8, 9)] = field.from_i64(-1);
        s[(9, 8)] = field.from_i64(-1);
        s
    }

    pub fn sigma_has_block_form(&self) -> bool {
        self.sigma == QPPresentation::expected_sigma(self.field())
    }

    fn hat(&self, m: &FMatrix, cols: [usize; 6]) -> FMatrix {
        let field = self.field();
        let top = m.select_cols(&cols);
        let mut bottom = Matrix::zeros(field, 2, 6);
        bottom[(0, 4)] = field.one();
        bottom[(1, 5)] = field.one();
        top.vstack(&bottom)
    }

    /// `Q̂ = [[Q₂ Q₄ Q₃], [0 1 0], [0 0 1]]`.
    pub fn q_hat(&self) -> FMatrix {
        self.hat(&self.q, [4, 5, 6, 7, 9, 8])
    }

    /// `P̂ = [[P₁ P₃ P₄], [0 1 0], [0 0 1]]`.
    pub fn p_hat(&self) -> FMatrix {
        self.hat(&self.p, [0, 1, 2, 3, 8, 9])
    }

    /// `(ι(X_E), X_F)` from `Q̂` and `P̂`.
    pub fn gale_pair(&self) -> Result<(NonSyzygeticEquation, NonSyzygeticEquation)> {
        let ev: Vec<String> = ["a4", "a5", "a6", "a7", "a9", "a8"].iter().map(|s| s.to_string()).collect();
        let fv: Vec<String> = ["a0", "a1", "a2", "a3", "a8", "a9"].iter().map(|s| s.to_string()).collect();
        let xe = NonSyzygeticEquation::from_forms(ev.into(), self.q_hat().transpose(), 1)?;
        let xf = NonSyzygeticEquation::from_forms(fv.into(), self.p_hat().transpose(), -1)?;
        Ok((xe, xf))
    }
}

// Column-reduce a 12×6 matrix so rows 10 and 11 become [0 0 0 0 1 0], [0 0 0 0 0 1].
fn normalize_trailing(m: &FMatrix) -> Result<FMatrix> {
    let field = m.field();
    let b = m.select_rows(&[10, 11]);
    if b.rank() != 2 {
        return Err(Error::Normalization("the two non-chosen L-forms are linearly dependent".into()));
    }
    let kb = b.kernel_basis();
    let w = b.solve(&Matrix::eye(field, 2)).expect("full row rank");
    Ok(m.mul(&kb.hstack(&w)))
}

/// The ρ-Lagrangian `A_i` attached to a Gale dual pair and the choice of `L_i`.
///
/// The "+" member of the pair supplies `Q̂`, its dual supplies `P̂`, so `eq`
/// and `eq.gale_dual()` give the same subspace.
pub fn lagrangian_from_gale(eq: &NonSyzygeticEquation, i: usize) -> Result<(RhoLagrangianData, QPPresentation)> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidInput("L index must be 1, 2 or 3".into()));
    }
    let field = eq.field();
    let plus = if eq.sign() > 0 { eq.clone() } else { eq.gale_dual()? };
    let c = plus.coefficient_map();
    if c.rank() != 6 {
        return Err(Error::DegenerateTuple);
    }
    let (i, j, k) = l_triple(i);
    let mut order: Vec<usize> = (0..9).collect();
    order.extend([l_col(i), l_col(j), l_col(k)]);
    let q_hat = normalize_trailing(&c.transpose().select_rows(&order))?;
    let p_hat = normalize_trailing(&c.kernel_basis().select_rows(&order))?;
    let top: Vec<usize> = (0..10).collect();
    let z4 = Matrix::zeros(field, 10, 4);
    let qh = q_hat.select_rows(&top);
    let ph = p_hat.select_rows(&top);
    // Q = [0, Q₂, Q₃, Q₄], P = [P₁, 0, P₃, P₄]
    let q = z4.hstack(&qh.select_cols(&[0, 1, 2, 3, 5, 4]));
    let p = ph.select_cols(&[0, 1, 2, 3]).hstack(&z4).hstack(&ph.select_cols(&[4, 5]));
    let pres = QPPresentation::new(q, p)?;
    let fr = frame(field);
    let a = fr.to_standard(&pres.q.vstack(&pres.p));
    let data = RhoLagrangianData::validate(&a)?;
    Ok((data, pres))
}

/// Convenience: variable names used for adapted coordinates on `A`.
pub fn adapted_vars() -> std::sync::Arc<[String]> {
    var_names("a", 10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prop_block_form_and_rho_dims() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for field in [Field::Rational, Field::Prime(101)] {
            for _ in 0..5 {
                let eq = NonSyzygeticEquation::random_valid(field, &mut rng);
                for i in 1..=3 {
                    let (a, pres) = lagrangian_from_gale(&eq, i).unwrap();
                    assert!(pres.alpha.is_zero());
                    assert!(pres.sigma_has_block_form(), "{:?}", pres.sigma);
                    assert_eq!(a.a_e().cols(), 4);
                    assert_eq!(a.a_f().cols(), 4);
                    assert!(pres.q_hat().transpose().mul(&pres.p_hat()).is_zero());
                }
            }
        }
    }

    #[test]
    fn same_lagrangian_from_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let field = Field::Prime(101);
        for _ in 0..5 {
            let eq = NonSyzygeticEquation::random_valid(field, &mut rng);
            let d = eq.gale_dual().unwrap();
            for i in 1..=3 {
                let (a, _) = lagrangian_from_gale(&eq, i).unwrap();
                let (b, _) = lagrangian_from_gale(&d, i).unwrap();
                assert!(a.same_subspace(&b));
            }
        }
    }

    #[test]
    fn validate_rejects() {
        let field = Field::Rational;
        let ue = u_side(field, 0);
        match RhoLagrangianData::validate(&ue) {
            Err(Error::ConditionFailed(msg)) => assert!(msg.starts_with("rho"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let generic = Matrix::from_fn(20, 10, field.zero(), |_, _| field.random(&mut rng));
        match RhoLagrangianData::validate(&generic) {
            Err(Error::ConditionFailed(msg)) => assert!(msg.starts_with("lagrangian"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn converse_gives_gale_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        for field in [Field::Rational, Field::Prime(101)] {
            let eq = NonSyzygeticEquation::random_valid(field, &mut rng);
            let (a, _) = lagrangian_from_gale(&eq, 2).unwrap();
            let pres = a.adapted_presentation().unwrap();
            assert!(pres.alpha.is_zero());
            assert!(pres.sigma_has_block_form());
            let (xe, xf) = a.gale_from_lagrangian().unwrap();
            assert!(xe.coefficient_map().mul(&xf.coefficient_map().transpose()).is_zero());
        }
    }
}
