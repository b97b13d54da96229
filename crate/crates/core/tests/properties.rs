//! Randomized law checking over the public API: algebraic identities
//! that must hold for *every* input, exercised across generated cases
//! rather than frozen samples.

use num_complex::Complex64;
use proptest::prelude::*;

use zakframe::constructions::{build_affine, build_heisenberg};
use zakframe::repn::MonomialMatrix;
use zakframe::zak::{zak_inverse, zak_right};
use zakframe::{FieldSpec, GroupFunction};

/// Complex numbers with both parts in [−10, 10].
fn complex() -> impl Strategy<Value = Complex64> {
    (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec(complex(), len)
}

/// A random monomial matrix: a permutation of `{0, …, dim−1}` carrying
/// unit-modulus phases.
fn monomial(dim: usize) -> impl Strategy<Value = MonomialMatrix> {
    (
        Just((0..dim).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(0.0f64..std::f64::consts::TAU, dim),
    )
        .prop_map(|(perm, angles)| {
            let phases = angles
                .into_iter()
                .map(|t| Complex64::from_polar(1.0, t))
                .collect();
            MonomialMatrix::new(perm, phases).unwrap()
        })
}

proptest! {
    /// `(A∘B)v`, `A(Bv)`, and the dense product all agree, and the
    /// composite stays unitary.
    #[test]
    fn monomial_composition_matches_application_order(
        a in monomial(5),
        b in monomial(5),
        v in complex_vec(5),
    ) {
        let ab = a.compose(&b).unwrap();
        let via_compose = ab.apply(&v).unwrap();
        let via_chain = a.apply(&b.apply(&v).unwrap()).unwrap();
        let via_dense = a.to_dense().matmul(&b.to_dense()).matvec(&v);
        for i in 0..5 {
            prop_assert!((via_compose[i] - via_chain[i]).norm() <= 1e-12);
            prop_assert!((via_compose[i] - via_dense[i]).norm() <= 1e-12);
        }
        prop_assert!(ab.unitarity_defect() <= 1e-14);
    }

    /// Associativity, commutativity, distributivity, and inverses in the
    /// prime fields the affine construction runs on.
    #[test]
    fn prime_field_laws_hold(
        p in prop::sample::select(vec![7u64, 11, 19, 23]),
        ai in 0usize..23,
        bi in 0usize..23,
        ci in 0usize..23,
    ) {
        let f = FieldSpec::new(p, 1, None).unwrap();
        let a = f.from_index(ai % p as usize);
        let b = f.from_index(bi % p as usize);
        let c = f.from_index(ci % p as usize);
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(
            f.mul(&a, &f.add(&b, &c)),
            f.add(&f.mul(&a, &b), &f.mul(&a, &c))
        );
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if a != f.zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    /// The weighted fiber inner product reproduces `⟨f, g⟩` on `L²(G)`.
    #[test]
    fn transform_preserves_inner_products(
        fv in complex_vec(8),
        gv in complex_vec(8),
    ) {
        let hctx = build_heisenberg(2).unwrap();
        let ctx = hctx.base();
        let f = GroupFunction::new(fv);
        let g = GroupFunction::new(gv);
        let zf = zak_right(ctx, &f).unwrap();
        let zg = zak_right(ctx, &g).unwrap();
        let lhs = zf.inner(&zg).unwrap();
        let rhs = f.inner(&g);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + f.norm() * g.norm()));
    }

    /// Inversion recovers the function on a non-normal-subgroup example.
    #[test]
    fn inversion_round_trips_on_the_affine_group(fv in complex_vec(21)) {
        let actx = build_affine(7).unwrap();
        let ctx = actx.base();
        let f = GroupFunction::new(fv);
        let back = zak_inverse(ctx, &zak_right(ctx, &f).unwrap()).unwrap();
        for (x, y) in f.values().iter().zip(back.values()) {
            prop_assert!((x - y).norm() <= 1e-13 * (1.0 + f.norm()));
        }
    }
}
