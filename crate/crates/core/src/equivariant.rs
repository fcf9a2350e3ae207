//! Group actions on Λ³(E⊕F): G-stable ρ-Lagrangians, the A4 family of
//! Gale dual cubics and equivariance of the line correspondence.

use std::sync::Arc;

use crate::algebra::exterior::induced_matrix;
use rand::Rng;

use crate::algebra::matrix::{column, FMatrix, Matrix};
use crate::algebra::poly::MultiPoly;
use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::epwfano::{epw_contains, epw_to_lines, harvest, line_to_epw, EPWPoint, ProjectiveSubspace};
use crate::gale::NonSyzygeticEquation;
use crate::invariants::frame;
use crate::lagrangian::{lagrangian_from_gale, QPPresentation, RhoLagrangianData};

/// Generators of a group acting on `V₆ = E ⊕ F` by block-diagonal matrices.
#[derive(Clone, Debug)]
pub struct GroupActionData {
    pub field: Field,
    /// 6×6 generators, block diagonal with 3×3 blocks.
    pub generators: Vec<FMatrix>,
    /// Matrices on the coordinates `X0..X9`, when known.
    pub coordinate_matrices: Option<Vec<FMatrix>>,
}

fn is_block_diagonal(g: &FMatrix) -> bool {
    g.rows() == 6 && g.cols() == 6 && (0..6).all(|i| (0..6).all(|j| (i < 3) == (j < 3) || g[(i, j)].is_zero()))
}

impl GroupActionData {
    pub fn new(generators: Vec<FMatrix>) -> Result<Self> {
        let field = generators.first().map(|g| g.field()).ok_or_else(|| Error::InvalidInput("no generators".into()))?;
        if let Some(g) = generators.iter().find(|g| !is_block_diagonal(g) || g.field() != field) {
            return Err(Error::InvalidInput(format!("generator is not block diagonal 3+3 over {field}: {}x{}", g.rows(), g.cols())));
        }
        Ok(GroupActionData { field, generators, coordinate_matrices: None })
    }

    /// The trivial group.
    pub fn trivial(field: Field) -> Self {
        GroupActionData { field, generators: vec![Matrix::eye(field, 6)], coordinate_matrices: None }
    }

    /// Induced 20×20 matrices on Λ³V₆.
    pub fn induced(&self) -> Vec<FMatrix> {
        self.generators.iter().map(|g| induced_matrix(g, 3)).collect()
    }
}

/// Action of a block-diagonal 6×6 matrix on Λ³V₆ in the standard basis.
pub fn induced_lambda3(g6: &FMatrix) -> Result<FMatrix> {
    if !is_block_diagonal(g6) {
        return Err(Error::InvalidInput("expected a block-diagonal 6x6 matrix".into()));
    }
    Ok(induced_matrix(g6, 3))
}

/// Whether every generator maps `A` into itself.
pub fn is_g_lagrangian(a: &RhoLagrangianData, act: &GroupActionData) -> bool {
    act.induced().iter().all(|g| a.basis().contains_column_space(&g.mul(a.basis())))
}

/// Parameters `(α, β, γ, δ, λ)` of the A4 family with a chosen primitive
/// cube root of unity `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct A4FamilyParams {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
    pub lambda: FieldElement,
    pub xi: FieldElement,
}

impl A4FamilyParams {
    /// Integer parameters with the field's distinguished `ξ`.
    pub fn new(field: Field, [alpha, beta, gamma, delta, lambda]: [i64; 5]) -> Result<Self> {
        let xi = field.xi().ok_or_else(|| Error::InvalidInput(format!("{field} has no primitive cube root of unity")))?;
        Ok(A4FamilyParams {
            alpha: field.from_i64(alpha),
            beta: field.from_i64(beta),
            gamma: field.from_i64(gamma),
            delta: field.from_i64(delta),
            lambda: field.from_i64(lambda),
            xi,
        })
    }

    pub fn field(&self) -> Field {
        self.xi.field()
    }
}

/// The three generators of the irreducible three-dimensional representation of A4.
pub fn a4_v_generators(field: Field) -> [FMatrix; 3] {
    [
        Matrix::from_i64_rows(field, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        Matrix::from_i64_rows(field, &[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
        Matrix::from_i64_rows(field, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]),
    ]
}

/// The displayed 10×10 matrices on `X0..X9`.
pub fn a4_coordinate_matrices(field: Field, xi: &FieldElement) -> [FMatrix; 3] {
    let diag = |d: [i64; 10]| Matrix::from_fn(10, 10, field.zero(), |i, j| if i == j { field.from_i64(d[i]) } else { field.zero() });
    let a = diag([-1, 1, -1, 1, -1, 1, -1, 1, 1, 1]);
    let b = diag([-1, -1, 1, 1, -1, -1, 1, 1, 1, 1]);
    let mut c = Matrix::zeros(field, 10, 10);
    for base in [0, 4] {
        c[(base, base + 1)] = field.one();
        c[(base + 1, base + 2)] = field.one();
        c[(base + 2, base)] = field.one();
    }
    c[(3, 3)] = field.one();
    c[(7, 7)] = field.one();
    c[(8, 8)] = xi * xi;
    c[(9, 9)] = xi.clone();
    [a, b, c]
}

fn block_diag(g: &FMatrix, h: &FMatrix) -> FMatrix {
    crate::invariants::block_diag(g, h)
}

/// Variables `X0..X9` of the A4 example.
pub fn a4_vars() -> Arc<[String]> {
    crate::algebra::poly::var_names("X", 10)
}

/// `X_E` (variables `X4..X9`, sign +), `X_F` (variables `X0..X3, X8, X9`,
/// sign −) and the A4 action.
pub fn a4_family(params: &A4FamilyParams) -> Result<(NonSyzygeticEquation, NonSyzygeticEquation, GroupActionData)> {
    let field = params.field();
    if params.lambda.is_zero() {
        return Err(Error::InvalidInput("lambda must be nonzero".into()));
    }
    let (al, be, ga, de, la, xi) = (&params.alpha, &params.beta, &params.gamma, &params.delta, &params.lambda, &params.xi);
    let xi2 = xi * xi;
    let ev: Arc<[String]> = ["X4", "X5", "X6", "X7", "X8", "X9"].iter().map(|s| s.to_string()).collect();
    let fv: Arc<[String]> = ["X0", "X1", "X2", "X3", "X8", "X9"].iter().map(|s| s.to_string()).collect();
    let lin = |vars: &Arc<[String]>, c: [FieldElement; 6]| MultiPoly::linear(field, vars.clone(), &c);
    let zero = || field.zero();
    // X_E: slots 0..2 = X4..X6 (V), 3 = X7 (χ0), 4 = X8, 5 = X9
    let diag_e = |u: &FieldElement, w: &FieldElement| lin(&ev, [zero(), zero(), zero(), de.clone(), la * u, la * w]);
    let one = field.one();
    let e_forms = vec![
        diag_e(&one, &one),
        lin(&ev, [be.clone(), zero(), zero(), zero(), zero(), zero()]),
        lin(&ev, [zero(), zero(), al.clone(), zero(), zero(), zero()]),
        lin(&ev, [al.clone(), zero(), zero(), zero(), zero(), zero()]),
        diag_e(xi, &xi2),
        lin(&ev, [zero(), be.clone(), zero(), zero(), zero(), zero()]),
        lin(&ev, [zero(), zero(), be.clone(), zero(), zero(), zero()]),
        lin(&ev, [zero(), al.clone(), zero(), zero(), zero(), zero()]),
        diag_e(&xi2, xi),
        lin(&ev, [zero(), zero(), zero(), ga.clone(), zero(), zero()]),
        lin(&ev, [zero(), zero(), zero(), zero(), one.clone(), zero()]),
        lin(&ev, [zero(), zero(), zero(), zero(), zero(), one.clone()]),
    ];
    let k = -&(&field.from_i64(3) * la).inv().expect("3λ invertible");
    let diag_f = |u: &FieldElement, w: &FieldElement| lin(&fv, [zero(), zero(), zero(), -ga, &k * u, &k * w]);
    let f_forms = vec![
        diag_f(&one, &one),
        lin(&fv, [-al, zero(), zero(), zero(), zero(), zero()]),
        lin(&fv, [zero(), zero(), be.clone(), zero(), zero(), zero()]),
        lin(&fv, [be.clone(), zero(), zero(), zero(), zero(), zero()]),
        diag_f(xi, &xi2),
        lin(&fv, [zero(), -al, zero(), zero(), zero(), zero()]),
        lin(&fv, [zero(), zero(), -al, zero(), zero(), zero()]),
        lin(&fv, [zero(), be.clone(), zero(), zero(), zero(), zero()]),
        diag_f(&xi2, xi),
        lin(&fv, [zero(), zero(), zero(), &field.from_i64(3) * de, zero(), zero()]),
        lin(&fv, [zero(), zero(), zero(), zero(), zero(), one.clone()]),
        lin(&fv, [zero(), zero(), zero(), zero(), one.clone(), zero()]),
    ];
    let xe = NonSyzygeticEquation::from_polys(&e_forms, 1)?;
    let xf = NonSyzygeticEquation::from_polys(&f_forms, -1)?;
    let gens: Vec<FMatrix> = a4_v_generators(field).iter().map(|g| block_diag(g, g)).collect();
    let mut act = GroupActionData::new(gens)?;
    act.coordinate_matrices = Some(a4_coordinate_matrices(field, xi).to_vec());
    Ok((xe, xf, act))
}

/// The ρ-Lagrangian spanned by the two displayed tuples, with basis columns
/// ordered as the coordinates `X0..X9`.
pub fn a4_lagrangian(xe: &NonSyzygeticEquation, xf: &NonSyzygeticEquation) -> Result<(RhoLagrangianData, QPPresentation, FMatrix)> {
    let field = xe.field();
    let qh = xe.coefficient_map().transpose();
    let ph = xf.coefficient_map().transpose();
    let top: Vec<usize> = (0..10).collect();
    let z4 = Matrix::zeros(field, 10, 4);
    // a-coordinates: a0..a3 = X0..X3, a4..a7 = X4..X7, a8 = X9, a9 = X8
    let q = z4.hstack(&qh.select_rows(&top).select_cols(&[0, 1, 2, 3, 5, 4]));
    let p = ph.select_rows(&top).select_cols(&[0, 1, 2, 3]).hstack(&z4).hstack(&ph.select_rows(&top).select_cols(&[5, 4]));
    let pres = QPPresentation::new(q, p)?;
    let basis = frame(field).to_standard(&pres.q.vstack(&pres.p));
    let data = RhoLagrangianData::validate(&basis)?;
    let in_x_order = basis.select_cols(&[0, 1, 2, 3, 4, 5, 6, 7, 9, 8]);
    Ok((data, pres, in_x_order))
}

/// Matrix `T` with `g·B = B·T` for a basis `B` of a `g`-stable subspace.
pub fn restricted_action(basis: &FMatrix, g20: &FMatrix) -> Result<FMatrix> {
    basis
        .solve(&g20.mul(basis))
        .ok_or_else(|| Error::ConditionFailed("the subspace is not stable under the generator".into()))
}

/// Whether `c·D` reproduces the cubic under `X ↦ Dᵀ X`, where the cubic of
/// `eq` is embedded into `X0..X9` along `slots`. Returns the scalar `c`.
pub fn coordinate_invariance(eq: &NonSyzygeticEquation, slots: &[usize; 6], d: &FMatrix) -> Option<FieldElement> {
    let field = eq.field();
    let mut sel = Matrix::zeros(field, 6, 10);
    for (r, &c) in slots.iter().enumerate() {
        sel[(r, c)] = field.one();
    }
    let f = eq.cubic_polynomial().linear_substitute(&sel, a4_vars());
    let g = f.linear_substitute(&d.transpose(), a4_vars());
    g.proportional(&f)
}

/// Slots of `X_E` and `X_F` among `X0..X9`.
pub const A4_E_SLOTS: [usize; 6] = [4, 5, 6, 7, 8, 9];
pub const A4_F_SLOTS: [usize; 6] = [0, 1, 2, 3, 8, 9];

/// Which way `c` conjugates the Klein four subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum A4Orientation {
    /// `cac⁻¹ = b`, `cbc⁻¹ = ab`.
    Forward,
    /// `c⁻¹ac = b`, `c⁻¹bc = ab`.
    Backward,
}

/// Check `a² = b² = (ab)² = c³ = 1` and that conjugation by `c` permutes
/// `a → b → ab` cyclically in one of the two directions.
pub fn a4_relations(a: &FMatrix, b: &FMatrix, c: &FMatrix) -> Option<A4Orientation> {
    let field = a.field();
    let id = Matrix::eye(field, a.rows());
    let ci = c.inverse()?;
    let ab = a.mul(b);
    let klein = a.mul(a) == id && b.mul(b) == id && ab.mul(&ab) == id && c.mul(c).mul(c) == id;
    if !klein || *a == id || *b == id {
        return None;
    }
    if c.mul(a).mul(&ci) == *b && c.mul(b).mul(&ci) == ab {
        Some(A4Orientation::Forward)
    } else if ci.mul(a).mul(c) == *b && ci.mul(b).mul(c) == ab {
        Some(A4Orientation::Backward)
    } else {
        None
    }
}

/// Action of `g6` on the six coordinates of `eq`, via the frame coordinates
/// of the slots `(M₁₁, …, M₃₃, L_i)` on the matching side of Λ³V₆.
pub fn equation_action(eq: &NonSyzygeticEquation, i: usize, g6: &FMatrix) -> Result<FMatrix> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidInput("L index must be 1, 2 or 3".into()));
    }
    let side = if eq.sign() > 0 { 0 } else { 1 };
    let mut slots: Vec<usize> = (0..9).collect();
    slots.push(crate::gale::l_col(i));
    let u = eq.coefficient_map().select_cols(&slots).transpose();
    let rows: Vec<usize> = (10 * side..10 * side + 10).collect();
    let g = frame(eq.field()).induced_in_frame(g6).submatrix(&rows, &rows);
    u.solve(&g.mul(&u))
        .ok_or_else(|| Error::ConditionFailed("the equation is not invariant under the generator".into()))
}

/// Contragredient action on EPW points: `λ ↦ g⁻ᵀλ`.
pub fn act_on_epw(g6: &FMatrix, p: &EPWPoint) -> Result<EPWPoint> {
    let gi = g6.inverse().ok_or_else(|| Error::InvalidInput("generator is not invertible".into()))?;
    EPWPoint::new(gi.transpose().mul_vec(p.lambda()))
}

/// One (point, generator) comparison.
#[derive(Clone, Debug)]
pub struct ProbeEntry {
    pub point: usize,
    pub generator: usize,
    /// `g·p` lies on the EPW sextic.
    pub epw_stable: bool,
    /// The singular residual conic over `g·p` is the image of the one over `p`.
    pub conic_commutes: bool,
    /// `line_to_epw(g·ℓ) = g·p` for the lines over `p` (vacuous if they do not split).
    pub lines_commute: bool,
}

#[derive(Clone, Debug)]
pub struct EquivarianceReport {
    pub entries: Vec<ProbeEntry>,
    /// Generators under which the equation itself is not invariant.
    pub non_invariant: Vec<usize>,
}

impl EquivarianceReport {
    pub fn all_commute(&self) -> bool {
        self.non_invariant.is_empty() && self.entries.iter().all(|e| e.epw_stable && e.conic_commutes && e.lines_commute)
    }
}

/// Compare the line correspondence at harvested EPW points with its image
/// under each generator, projectively.
pub fn equivariance_probe<R: Rng + ?Sized>(
    eq: &NonSyzygeticEquation,
    i: usize,
    act: &GroupActionData,
    samples: usize,
    rng: &mut R,
) -> Result<EquivarianceReport> {
    let (a, _) = lagrangian_from_gale(eq, i)?;
    let points = harvest(&a, samples, 40 * samples.max(1), rng)?;
    let mut entries = Vec::new();
    let mut non_invariant = Vec::new();
    let mut actions = Vec::new();
    for (k, g) in act.generators.iter().enumerate() {
        match equation_action(eq, i, g) {
            Ok(h) if eq.substitute(&h).cubic_polynomial().proportional(&eq.cubic_polynomial()).is_some() => actions.push(Some(h)),
            _ => {
                non_invariant.push(k);
                actions.push(None);
            }
        }
    }
    for (pi, p) in points.iter().enumerate() {
        let here = epw_to_lines(eq, i, p)?;
        for (k, g) in act.generators.iter().enumerate() {
            let Some(h) = &actions[k] else { continue };
            let gp = act_on_epw(g, p)?;
            let epw_stable = epw_contains(&a, &gp).0;
            let (conic_commutes, lines_commute) = match epw_to_lines(eq, i, &gp) {
                Ok(there) => {
                    let vertex = column(eq.field(), &h.mul_vec(&here.singular_point));
                    let vertex_ok = ProjectiveSubspace::span(&vertex).contains(&ProjectiveSubspace::span(&column(eq.field(), &there.singular_point)));
                    let plane_ok = ProjectiveSubspace::span(&h.mul(&here.conic.basis)).contains(&ProjectiveSubspace::span(&there.conic.basis))
                        && ProjectiveSubspace::span(&there.conic.basis).contains(&ProjectiveSubspace::span(&h.mul(&here.conic.basis)));
                    let lines_ok = match (&here.lines, &there.lines) {
                        (Some((l1, l2)), Some((m1, m2))) => {
                            let img = |l: &ProjectiveSubspace| ProjectiveSubspace::span(&h.mul(&l.points()));
                            let (i1, i2) = (img(l1), img(l2));
                            let same = |x: &ProjectiveSubspace, y: &ProjectiveSubspace| x.contains(y) && y.contains(x);
                            let set_ok = (same(&i1, m1) && same(&i2, m2)) || (same(&i1, m2) && same(&i2, m1));
                            let back_ok = [&i1, &i2].iter().all(|l| line_to_epw(eq, i, l).map(|q| q == gp).unwrap_or(false));
                            set_ok && back_ok
                        }
                        (None, None) => true,
                        _ => false,
                    };
                    (vertex_ok && plane_ok, lines_ok)
                }
                Err(_) => (false, false),
            };
            entries.push(ProbeEntry { point: pi, generator: k, epw_stable, conic_commutes, lines_commute });
        }
    }
    Ok(EquivarianceReport { entries, non_invariant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::BaseField;
    use crate::algebra::matrix::Ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f97() -> Field {
        Field::Prime(97)
    }

    fn family(field: Field) -> (NonSyzygeticEquation, NonSyzygeticEquation, GroupActionData) {
        a4_family(&A4FamilyParams::new(field, [1, 2, 1, 1, 1]).unwrap()).unwrap()
    }

    fn random_block<R: Rng>(field: Field, rng: &mut R) -> FMatrix {
        let g = Matrix::from_fn(3, 3, field.zero(), |_, _| field.random(rng));
        let h = Matrix::from_fn(3, 3, field.zero(), |_, _| field.random(rng));
        block_diag(&g, &h)
    }

    #[test]
    fn induced_action_basics() {
        let f = f97();
        assert_eq!(induced_lambda3(&Matrix::eye(f, 6)).unwrap(), Matrix::eye(f, 20));
        let c = f.from_i64(5);
        let g = block_diag(&Matrix::eye(f, 3).scale(&c), &Matrix::eye(f, 3));
        let m = induced_lambda3(&g).unwrap();
        // e1∧e2∧e3 is the first grade-3 basis vector
        assert_eq!(m[(0, 0)], c.pow(3));
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..3 {
            let (a, b) = (random_block(f, &mut rng), random_block(f, &mut rng));
            assert_eq!(induced_lambda3(&a.mul(&b)).unwrap(), induced_lambda3(&a).unwrap().mul(&induced_lambda3(&b).unwrap()));
        }
        let mut bad = Matrix::eye(f, 6);
        bad[(0, 4)] = f.one();
        assert!(induced_lambda3(&bad).is_err());
        assert!(GroupActionData::new(vec![bad]).is_err());
    }

    #[test]
    fn displayed_tuples_and_entries() {
        let f = f97();
        let p = A4FamilyParams::new(f, [1, 2, 1, 1, 1]).unwrap();
        assert_eq!(p.xi, f.from_i64(35));
        let (xe, xf, _) = a4_family(&p).unwrap();
        // Gale duality: the coefficient maps compose to zero
        assert!(xe.coefficient_map().mul(&xf.coefficient_map().transpose()).is_zero());
        assert_eq!(xe.coefficient_map().rank(), 6);
        let ev = xe.vars().clone();
        let v = |k: usize| MultiPoly::var(f, ev.clone(), k);
        // δX7 + λ(X8 + X9) with δ = λ = 1
        assert_eq!(xe.m_entry(0, 0), v(3).add(&v(4)).add(&v(5)));
        assert_eq!(xe.l(1).mul(&xe.l(2)).mul(&xe.l(3)), v(3).mul(&v(4)).mul(&v(5)));
        let fv = xf.vars().clone();
        let w = |k: usize| MultiPoly::var(f, fv.clone(), k);
        let third = f.from_i64(3).inv().unwrap();
        // −γX3 − (X8 + X9)/(3λ)
        assert_eq!(xf.m_entry(0, 0), w(3).add(&w(4).add(&w(5)).scale(&third)).neg());
        // −3δ X3X8X9 after the sign
        let trailing = w(3).mul(&w(4)).mul(&w(5)).scale(&f.from_i64(3));
        assert_eq!(xf.l(1).mul(&xf.l(2)).mul(&xf.l(3)), trailing);
        assert_eq!(xf.sign(), -1);
        let mut zero_l = p.clone();
        zero_l.lambda = f.zero();
        assert!(a4_family(&zero_l).is_err());
    }

    #[test]
    fn coordinate_matrices_are_recomputed() {
        let f = f97();
        let (xe, xf, act) = family(f);
        let d = act.coordinate_matrices.clone().unwrap();
        assert_eq!(d[0], Matrix::from_fn(10, 10, f.zero(), |i, j| {
            let s = [-1, 1, -1, 1, -1, 1, -1, 1, 1, 1];
            if i == j { f.from_i64(s[i]) } else { f.zero() }
        }));
        let (a, pres, b) = a4_lagrangian(&xe, &xf).unwrap();
        assert!(pres.sigma_has_block_form());
        assert!(a.same_subspace(&lagrangian_from_gale(&xe, 1).unwrap().0));
        for (g, disp) in act.induced().iter().zip(&d) {
            let t = restricted_action(&b, g).unwrap();
            // displayed matrices act on the coordinate ring: contragredient of the point action
            assert_eq!(t.inverse().unwrap().transpose(), *disp);
        }
    }

    #[test]
    fn relations_and_group_order() {
        let f = f97();
        let (_, _, act) = family(f);
        let d = act.coordinate_matrices.clone().unwrap();
        let v = a4_v_generators(f);
        assert_eq!(a4_relations(&d[0], &d[1], &d[2]), Some(A4Orientation::Backward));
        assert_eq!(a4_relations(&v[0], &v[1], &v[2]), Some(A4Orientation::Backward));
        assert_eq!(a4_relations(&d[0], &d[1], &d[2].mul(&d[2])), Some(A4Orientation::Forward));
        // closure of the generators has 12 elements
        let mut group = vec![Matrix::eye(f, 10)];
        let mut k = 0;
        while k < group.len() {
            for g in &d {
                let x = group[k].mul(g);
                if !group.contains(&x) {
                    group.push(x);
                }
            }
            k += 1;
        }
        assert_eq!(group.len(), 12);
        assert_eq!(a4_relations(&d[0], &d[0], &d[2]), None);
    }

    #[test]
    fn family_is_invariant() {
        let cyc = Field::with_cube_root(BaseField::Rational).unwrap();
        for field in [f97(), cyc] {
            let (xe, xf, act) = family(field);
            for d in act.coordinate_matrices.as_ref().unwrap() {
                assert_eq!(coordinate_invariance(&xe, &A4_E_SLOTS, d), Some(field.one()));
                assert_eq!(coordinate_invariance(&xf, &A4_F_SLOTS, d), Some(field.one()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = f97();
        let p = A4FamilyParams {
            alpha: f.random(&mut rng),
            beta: f.random(&mut rng),
            gamma: f.random(&mut rng),
            delta: f.random(&mut rng),
            lambda: f.random_nonzero(&mut rng),
            xi: f.xi().unwrap(),
        };
        let (xe, xf, act) = a4_family(&p).unwrap();
        assert!(xe.coefficient_map().mul(&xf.coefficient_map().transpose()).is_zero());
        for d in act.coordinate_matrices.as_ref().unwrap() {
            assert_eq!(coordinate_invariance(&xe, &A4_E_SLOTS, d), Some(f.one()));
        }
    }

    #[test]
    fn g_stable_lagrangians() {
        let f = f97();
        let (xe, _, act) = family(f);
        let klein = GroupActionData::new(act.generators[..2].to_vec()).unwrap();
        let c_only = GroupActionData::new(act.generators[2..].to_vec()).unwrap();
        for i in 1..=3 {
            let (a, _) = lagrangian_from_gale(&xe, i).unwrap();
            assert!(is_g_lagrangian(&a, &GroupActionData::trivial(f)));
            assert!(is_g_lagrangian(&a, &klein));
            // only the χ0 choice of L_i is stable under the 3-cycle
            assert_eq!(is_g_lagrangian(&a, &c_only), i == 1, "i = {i}");
            assert_eq!(is_g_lagrangian(&a, &act), i == 1);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let eq = NonSyzygeticEquation::random_valid(f, &mut rng);
        let (a, _) = lagrangian_from_gale(&eq, 1).unwrap();
        assert!(!is_g_lagrangian(&a, &act));
        assert!(is_g_lagrangian(&a, &GroupActionData::trivial(f)));
    }

    #[test]
    fn line_correspondence_is_equivariant() {
        let f = f97();
        let (xe, xf, act) = family(f);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let r = equivariance_probe(&xe, 1, &act, 10, &mut rng).unwrap();
        assert_eq!(r.entries.len(), 30);
        assert!(r.all_commute(), "{:?}", r.entries);
        let r = equivariance_probe(&xf, 1, &act, 4, &mut rng).unwrap();
        assert!(r.all_commute());
        let r = equivariance_probe(&xe, 1, &GroupActionData::trivial(f), 3, &mut rng).unwrap();
        assert!(r.all_commute());
        // for L_2 the 3-cycle does not preserve the equation's structure
        let r = equivariance_probe(&xe, 2, &act, 3, &mut rng).unwrap();
        assert_eq!(r.non_invariant, vec![2]);
        assert!(!r.all_commute());
    }

    #[test]
    fn non_invariant_cubic_fails_probe() {
        let f = f97();
        let (xe, _, act) = family(f);
        let mut forms = xe.coefficient_map().clone();
        forms[(1, 1)] = &forms[(1, 1)] + &f.one();
        let bent = NonSyzygeticEquation::from_forms(xe.vars().clone(), forms, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let r = equivariance_probe(&bent, 1, &act, 3, &mut rng).unwrap();
        assert!(!r.all_commute());
        assert!(!r.non_invariant.is_empty());
        for d in act.coordinate_matrices.as_ref().unwrap().iter().skip(2) {
            assert_ne!(coordinate_invariance(&bent, &A4_E_SLOTS, d), Some(f.one()));
        }
    }
}
