//! The quadrics cutting out `Z̃₁,₅` (4×4 Pfaffians of `N₁,₅` and `σ₁,₅`) in
//! frame coordinates, and degree-3 membership certificates for the two
//! invariant cubics.

use crate::algebra::exterior::ExteriorElement;
use crate::algebra::ideal::{combine, homogeneous_membership};
use crate::algebra::matrix::{Matrix, Ring};
use crate::algebra::poly::MultiPoly;
use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::invariants::{frame, frame_vars};

/// A splitting `V₆* = V₁* ⊕ V₅*`: the distinguished basis vector and the
/// ordered basis `v₁..v₅` of the complement (indices into `e1..f3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub pivot: usize,
    pub v: [usize; 5],
}

impl Splitting {
    /// `e₁` against `(e₂, e₃, f₁, f₂, f₃)`.
    pub const E_SIDE: Splitting = Splitting { pivot: 0, v: [1, 2, 3, 4, 5] };
    /// `f₃` against `(e₁, e₂, e₃, f₁, f₂)`.
    pub const F_SIDE: Splitting = Splitting { pivot: 5, v: [0, 1, 2, 3, 4] };
}

/// The linear form on `Λ³V₆` given by a grade-3 element `w` (dot product in
/// the standard basis), written in frame coordinates.
pub fn functional(w: &ExteriorElement) -> MultiPoly {
    let field = w.field();
    let coeffs = frame(field).coordinates(w.coeffs());
    MultiPoly::linear(field, frame_vars(), &coeffs)
}

fn unit(field: Field, k: usize) -> ExteriorElement {
    ExteriorElement::basis(field, 1, k)
}

/// `N₁,₅ = (v_i ∧ v_j ∧ pivot)` as a skew 5×5 matrix of frame linear forms.
pub fn build_n15(field: Field, s: Splitting) -> Matrix<MultiPoly> {
    let zero = MultiPoly::zero(field, frame_vars());
    Matrix::from_fn(5, 5, zero.clone(), |i, j| {
        if i == j {
            return zero.clone();
        }
        let w = unit(field, s.v[i]).wedge(&unit(field, s.v[j])).unwrap().wedge(&unit(field, s.pivot)).unwrap();
        functional(&w)
    })
}

/// The ten pairs `(u_i, û_i)` with `u_i = ±pivot∧v_a∧v_b` and `û_i` the
/// complementary `v_k∧v_l∧v_m`, signed so that `u_i∧û_i = pivot∧v₁∧…∧v₅`.
#[derive(Clone, Debug)]
pub struct DualTuples {
    pub u: Vec<ExteriorElement>,
    pub u_hat: Vec<ExteriorElement>,
    /// Number of `u_i` whose initial sign `(−1)^{a−b+1}` had to be flipped.
    pub flips: usize,
}

pub fn dual_tuples(field: Field, s: Splitting) -> DualTuples {
    let vol = s.v.iter().fold(unit(field, s.pivot), |acc, &k| acc.wedge(&unit(field, k)).unwrap());
    let target = vol.coeffs()[0].clone();
    let mut u = Vec::new();
    let mut u_hat = Vec::new();
    let mut flips = 0;
    for a in 0..5 {
        for b in a + 1..5 {
            // 1-based exponent a−b+1 is ≤ 0; only its parity matters
            let parity = (a as i64 - b as i64 + 1).rem_euclid(2);
            let sign = field.from_i64(if parity == 0 { 1 } else { -1 });
            let mut ui = unit(field, s.pivot).wedge(&unit(field, s.v[a])).unwrap().wedge(&unit(field, s.v[b])).unwrap().scale(&sign);
            let rest: Vec<usize> = (0..5).filter(|&k| k != a && k != b).collect();
            let hat = rest.iter().skip(1).fold(unit(field, s.v[rest[0]]), |acc, &k| acc.wedge(&unit(field, s.v[k])).unwrap());
            let pair = ExteriorElement::orientation_pair(&ui, &hat).unwrap();
            if pair != target {
                ui = ui.scale(&field.from_i64(-1));
                flips += 1;
            }
            u.push(ui);
            u_hat.push(hat);
        }
    }
    DualTuples { u, u_hat, flips }
}

/// `σ₁,₅ = Σ u_i·û_i` in frame coordinates.
pub fn build_sigma15(field: Field, s: Splitting) -> MultiPoly {
    let t = dual_tuples(field, s);
    t.u.iter()
        .zip(&t.u_hat)
        .fold(MultiPoly::zero(field, frame_vars()), |acc, (a, b)| acc.add(&functional(a).mul(&functional(b))))
}

/// The six quadrics: the five 4×4 Pfaffians of `N₁,₅` followed by `σ₁,₅`.
#[derive(Clone, Debug)]
pub struct Z15Ideal {
    pub splitting: Splitting,
    pub quadrics: Vec<MultiPoly>,
}

impl Z15Ideal {
    pub fn new(field: Field, s: Splitting) -> Self {
        let n = build_n15(field, s);
        let mut quadrics: Vec<MultiPoly> = (0..5)
            .map(|k| {
                let keep: Vec<usize> = (0..5).filter(|&x| x != k).collect();
                n.submatrix(&keep, &keep).pfaffian4().expect("4x4 skew")
            })
            .collect();
        quadrics.push(build_sigma15(field, s));
        Z15Ideal { splitting: s, quadrics }
    }
}

/// `cubic = Σ quadric_k·ℓ_k` with linear multipliers `ℓ_k`.
#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub multipliers: Vec<MultiPoly>,
}

impl MembershipCertificate {
    /// Re-expand and compare exactly.
    pub fn verify(&self, cubic: &MultiPoly, quadrics: &[MultiPoly]) -> bool {
        combine(quadrics, &self.multipliers) == *cubic
    }
}

/// Solve for linear multipliers; `Ok(None)` when the cubic is not in the
/// degree-3 part of the ideal.
pub fn ideal_membership_deg3(cubic: &MultiPoly, quadrics: &[MultiPoly]) -> Result<Option<MembershipCertificate>> {
    if !cubic.is_zero() && !cubic.is_homogeneous(3) {
        return Err(Error::InvalidInput("cubic must be homogeneous of degree 3".into()));
    }
    for q in quadrics {
        if q.vars() != cubic.vars() {
            return Err(Error::InvalidInput("quadrics and cubic must share variables".into()));
        }
        if !q.is_homogeneous(2) {
            return Err(Error::InvalidInput("generators must be homogeneous quadrics".into()));
        }
    }
    let degrees = vec![1u16; quadrics.len()];
    Ok(homogeneous_membership(cubic, quadrics, &degrees).map(|multipliers| MembershipCertificate { multipliers }))
}

/// Certificate that the invariant cubic `X̃_E` (side 0) or `X̃_F` (side 1)
/// lies in the ideal of `Z̃₁,₅` for the matching splitting.
pub fn big_cubic_certificate(field: Field, side: usize) -> Result<(Z15Ideal, Option<MembershipCertificate>)> {
    let (xe, xf) = crate::invariants::big_cubics(field);
    let (cubic, s) = if side == 0 { (xe, Splitting::E_SIDE) } else { (xf, Splitting::F_SIDE) };
    let ideal = Z15Ideal::new(field, s);
    let cert = ideal_membership_deg3(&cubic, &ideal.quadrics)?;
    Ok((ideal, cert))
}

/// Evaluate the six quadrics at a point given in frame coordinates.
pub fn evaluate_ideal(ideal: &Z15Ideal, x: &[FieldElement]) -> Vec<FieldElement> {
    ideal.quadrics.iter().map(|q| q.eval(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::FMatrix;
    use crate::invariants::{act_on_polynomial, big_cubics, l_e};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    #[test]
    fn n15_is_skew() {
        for s in [Splitting::E_SIDE, Splitting::F_SIDE] {
            let n = build_n15(Q, s);
            for i in 0..5 {
                assert!(n[(i, i)].is_zero());
                for j in 0..5 {
                    assert!(n[(i, j)].add(&n[(j, i)]).is_zero());
                }
            }
        }
        // e2∧e3∧e1 = e1∧e2∧e3 is the functional L_E
        assert_eq!(build_n15(Q, Splitting::E_SIDE)[(0, 1)], l_e(Q));
    }

    #[test]
    fn dual_tuples_pair_to_delta() {
        for s in [Splitting::E_SIDE, Splitting::F_SIDE] {
            let t = dual_tuples(Q, s);
            let vol = s.v.iter().fold(unit(Q, s.pivot), |acc, &k| acc.wedge(&unit(Q, k)).unwrap());
            for i in 0..10 {
                for j in 0..10 {
                    let p = ExteriorElement::orientation_pair(&t.u[i], &t.u_hat[j]).unwrap();
                    let want = if i == j { vol.coeffs()[0].clone() } else { Q.zero() };
                    assert_eq!(p, want);
                }
            }
        }
    }

    #[test]
    fn sigma15_vanishes_on_the_u_side() {
        let s = Splitting::E_SIDE;
        let t = dual_tuples(Q, s);
        let sigma = build_sigma15(Q, s);
        let fr = frame(Q);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut x = ExteriorElement::zero(Q, 3);
        for u in &t.u {
            x = x.add(&u.scale(&Q.random(&mut rng)));
        }
        assert!(sigma.eval(&fr.coordinates(x.coeffs())).is_zero());
    }

    #[test]
    fn sigma15_is_sl5_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for s in [Splitting::E_SIDE, Splitting::F_SIDE] {
            let sigma = build_sigma15(Q, s);
            let h = loop {
                let h = FMatrix::from_fn(5, 5, Q.zero(), |_, _| Q.random(&mut rng));
                if !h.det().unwrap().is_zero() {
                    break h;
                }
            };
            // rescale one column to force det = 1
            let d = h.det().unwrap().inv().unwrap();
            let h = FMatrix::from_fn(5, 5, Q.zero(), |i, j| if j == 0 { &h[(i, j)] * &d } else { h[(i, j)].clone() });
            let mut g6 = FMatrix::zeros(Q, 6, 6);
            g6[(s.pivot, s.pivot)] = Q.one();
            for a in 0..5 {
                for b in 0..5 {
                    g6[(s.v[a], s.v[b])] = h[(a, b)].clone();
                }
            }
            assert_eq!(act_on_polynomial(&sigma, &g6), sigma);
        }
    }

    #[test]
    fn trivial_and_failing_membership() {
        let ideal = Z15Ideal::new(Q, Splitting::E_SIDE);
        let x0 = MultiPoly::var(Q, frame_vars(), 0);
        let cubic = ideal.quadrics[0].mul(&x0);
        let cert = ideal_membership_deg3(&cubic, &ideal.quadrics).unwrap().unwrap();
        assert!(cert.verify(&cubic, &ideal.quadrics));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut random = MultiPoly::zero(Q, frame_vars());
        for _ in 0..30 {
            let e: Vec<u16> = {
                let mut e = vec![0u16; 20];
                for _ in 0..3 {
                    e[rand::Rng::gen_range(&mut rng, 0..20)] += 1;
                }
                e
            };
            random.add_term(e, Q.random_nonzero(&mut rng));
        }
        assert!(ideal_membership_deg3(&random, &ideal.quadrics).unwrap().is_none());
        assert!(ideal_membership_deg3(&x0, &ideal.quadrics).is_err());
    }

    #[test]
    fn invariant_cubics_lie_in_the_ideals() {
        for side in 0..2 {
            let (ideal, cert) = big_cubic_certificate(Q, side).unwrap();
            let cert = cert.expect("certificate");
            let (xe, xf) = big_cubics(Q);
            let cubic = if side == 0 { xe } else { xf };
            assert!(cert.verify(&cubic, &ideal.quadrics));
            assert!(cert.multipliers.iter().all(|m| m.is_zero() || m.is_homogeneous(1)));
        }
        // the sign of the σ term matters
        let (xe, _) = big_cubics(Q);
        let two = Q.from_i64(2);
        let wrong = crate::invariants::det_m(Q, 0).scale(&two).add(&crate::invariants::sigma_quadric(Q).mul(&l_e(Q)));
        assert_ne!(wrong, xe);
        let ideal = Z15Ideal::new(Q, Splitting::E_SIDE);
        assert!(ideal_membership_deg3(&wrong, &ideal.quadrics).unwrap().is_none());
    }
}
