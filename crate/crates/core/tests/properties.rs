//! Randomized invariants, each driven by a proptest-chosen seed.

use galecubic::algebra::exterior::ExteriorElement;
use galecubic::algebra::matrix::{FMatrix, Matrix};
use galecubic::algebra::poly::{monomials_of_degree, var_names, MultiPoly};
use galecubic::algebra::{BaseField, Field};
use galecubic::epwfano::{epw_contains, EPWPoint};
use galecubic::gale::{cubics_equivalent, NonSyzygeticEquation};
use galecubic::groebner::buchberger;
use galecubic::invariants::{act_on_polynomial, big_cubics, block_diag, generator_invariance, sigma_quadric};
use galecubic::lagrangian::{lagrangian_from_gale, restore_l_order};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<Field> {
    vec![
        Field::Rational,
        Field::Prime(101),
        Field::with_cube_root(BaseField::Rational).unwrap(),
        Field::with_cube_root(BaseField::Prime(97)).unwrap(),
    ]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(field: Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> FMatrix {
    Matrix::from_fn(r, c, field.zero(), |_, _| field.random(rng))
}

/// Product of random elementary matrices: determinant one.
fn random_sl3(field: Field, rng: &mut ChaCha8Rng) -> FMatrix {
    let mut g = Matrix::eye(field, 3);
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if i == j {
            continue;
        }
        let mut e = Matrix::eye(field, 3);
        e[(i, j)] = field.random(rng);
        g = g.mul(&e);
    }
    g
}

fn sample_field(k: usize) -> Field {
    [Field::Rational, Field::Prime(101)][k % 2]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        for f in fields() {
            let (a, b, c) = (f.random(&mut r), f.random(&mut r), f.random(&mut r));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn kernel_basis_is_exact(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..9, inner in 1usize..7) {
        let mut r = rng(seed);
        for f in fields() {
            // a product of random factors gives rank at most `inner`
            let m = random_matrix(f, rows, inner, &mut r).mul(&random_matrix(f, inner, cols, &mut r));
            let k = m.kernel_basis();
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), cols - m.rank());
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant(seed in any::<u64>()) {
        let mut r = rng(seed);
        for f in [Field::Rational, Field::Prime(97)] {
            let mut m = Matrix::zeros(f, 4, 4);
            for i in 0..4 {
                for j in i + 1..4 {
                    let x = f.random(&mut r);
                    m[(j, i)] = -&x;
                    m[(i, j)] = x;
                }
            }
            let pf = m.pfaffian4().unwrap();
            prop_assert_eq!(&pf * &pf, m.det().unwrap());
        }
    }

    #[test]
    fn contraction_is_a_graded_derivation(seed in any::<u64>(), p in 1usize..4, q in 1usize..3) {
        let mut r = rng(seed);
        let f = Field::Prime(101);
        let random_elem = |g: usize, r: &mut ChaCha8Rng| {
            let n = galecubic::algebra::exterior::grade_dim(g);
            ExteriorElement::from_coeffs(f, g, (0..n).map(|_| f.random(r)).collect()).unwrap()
        };
        let x = random_elem(p, &mut r);
        let y = random_elem(q, &mut r);
        let lambda: Vec<_> = (0..6).map(|_| f.random(&mut r)).collect();
        let lhs = x.wedge(&y).unwrap().contract(&lambda).unwrap();
        let a = x.contract(&lambda).unwrap().wedge(&y).unwrap();
        let b = x.wedge(&y.contract(&lambda).unwrap()).unwrap();
        let rhs = if p % 2 == 0 { a.add(&b) } else { a.sub(&b) };
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gale_duality_is_an_involution_on_row_spaces(seed in any::<u64>(), k in 0usize..2) {
        let eq = NonSyzygeticEquation::random_valid(sample_field(k), &mut rng(seed));
        let dual = eq.gale_dual().unwrap();
        prop_assert!(eq.coefficient_map().mul(&dual.coefficient_map().transpose()).is_zero());
        prop_assert!(dual.gale_dual().unwrap().coefficient_map().same_row_space(eq.coefficient_map()));
        prop_assert_eq!(dual.sign(), -eq.sign());
    }

    #[test]
    fn reordering_l_reorders_the_dual(seed in any::<u64>(), k in 0usize..2, which in 0usize..6) {
        let perms = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let perm = perms[which];
        let eq = NonSyzygeticEquation::random_valid(sample_field(k), &mut rng(seed));
        let moved = eq.permute_l(perm);
        prop_assert_eq!(moved.cubic_polynomial(), eq.cubic_polynomial());
        let d = eq.gale_dual().unwrap();
        let dm = moved.gale_dual().unwrap();
        prop_assert!(dm.coefficient_map().same_row_space(d.permute_l(perm).coefficient_map()));
    }

    #[test]
    fn lagrangians_are_rho_lagrangian_and_dual_symmetric(seed in any::<u64>(), k in 0usize..2, i in 1usize..4) {
        let eq = NonSyzygeticEquation::random_valid(sample_field(k), &mut rng(seed));
        let (a, pres) = lagrangian_from_gale(&eq, i).unwrap();
        prop_assert!(pres.alpha.is_zero());
        prop_assert!(pres.sigma_has_block_form());
        let (b, _) = lagrangian_from_gale(&eq.gale_dual().unwrap(), i).unwrap();
        prop_assert!(a.same_subspace(&b));
        let (xe, xf) = a.gale_from_lagrangian().unwrap();
        prop_assert!(cubics_equivalent(&eq, &restore_l_order(&xe, i)).is_some());
        prop_assert!(cubics_equivalent(&eq.gale_dual().unwrap(), &restore_l_order(&xf, i)).is_some());
    }

    #[test]
    fn sigma_planes_lie_on_the_sextic(seed in any::<u64>(), side in 0usize..2) {
        let f = Field::Prime(101);
        let mut r = rng(seed);
        let eq = NonSyzygeticEquation::random_valid(f, &mut r);
        let (a, _) = lagrangian_from_gale(&eq, 1).unwrap();
        for _ in 0..5 {
            prop_assert!(epw_contains(&a, &EPWPoint::random_on_sigma(f, side, &mut r)).0);
        }
    }

    #[test]
    fn groebner_bases_are_closed_under_s_pairs(seed in any::<u64>(), n in 1usize..4, p_idx in 0usize..2) {
        let p = [5u64, 7][p_idx];
        let f = Field::Prime(p);
        let mut r = rng(seed);
        let vars = var_names("X", n);
        let gens: Vec<MultiPoly> = (0..r.gen_range(1..=n + 1))
            .map(|_| {
                let mut g = MultiPoly::zero(f, vars.clone());
                for d in 0..=2u16 {
                    for e in monomials_of_degree(n, d) {
                        if r.gen_bool(0.5) {
                            g.add_term(e, f.random(&mut r));
                        }
                    }
                }
                g
            })
            .filter(|g| !g.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let gb = buchberger(&gens).unwrap();
        prop_assert!(gb.verify());
        for g in &gens {
            prop_assert!(gb.reduce(g).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn sl3_pairs_fix_the_invariants(seed in any::<u64>(), k in 0usize..2) {
        let f = [Field::Rational, Field::Prime(97)][k];
        let mut r = rng(seed);
        let (g, h) = (random_sl3(f, &mut r), random_sl3(f, &mut r));
        prop_assert!(generator_invariance(&g, &h).unwrap().all_fixed());
        let s = sigma_quadric(f);
        prop_assert_eq!(act_on_polynomial(&s, &block_diag(&g, &h)), s);
    }
}

#[test]
fn big_cubics_fixed_by_sl3_pairs() {
    let mut r = rng(3);
    for f in [Field::Rational, Field::Prime(97)] {
        let (xe, xf) = big_cubics(f);
        for _ in 0..5 {
            let g6 = block_diag(&random_sl3(f, &mut r), &random_sl3(f, &mut r));
            assert_eq!(act_on_polynomial(&xe, &g6), xe);
            assert_eq!(act_on_polynomial(&xf, &g6), xf);
        }
    }
}
