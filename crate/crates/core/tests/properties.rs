use kummer::field::{make_field, Field, FieldElement};
use kummer::poly::Polynomial;
use proptest::prelude::*;

fn field_of(p: u64, k: usize) -> Field {
    make_field(p, k).unwrap()
}

fn poly_from_indices(field: Field, indices: &[u64]) -> Polynomial {
    Polynomial::new(
        field,
        indices.iter().map(|&i| field.from_index(i)).collect(),
    )
}

/// Monic irreducible of the given degree: the first one at or after `seed` in
/// index order.
fn irreducible(field: Field, degree: usize, seed: u64) -> Polynomial {
    let q = field.order();
    let count = q.pow(degree as u32);
    (0..count)
        .map(|t| (seed + t) % count)
        .map(|t| {
            let mut idx: Vec<u64> = (0..degree).map(|i| t / q.pow(i as u32) % q).collect();
            idx.push(1);
            poly_from_indices(field, &idx)
        })
        .find(Polynomial::is_irreducible)
        .expect("irreducibles exist in every degree")
}

fn root_multiplicity(f: &Polynomial, r: FieldElement) -> u64 {
    let field = f.field();
    let linear = Polynomial::new(field, vec![-r, field.one()]);
    let mut g = f.clone();
    let mut mult = 0;
    loop {
        let (quot, rem) = g.divrem(&linear).unwrap();
        if !rem.is_zero() {
            return mult;
        }
        g = quot;
        mult += 1;
    }
}

fn arb_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just((2, 1)),
        Just((3, 1)),
        Just((5, 1)),
        Just((13, 1)),
        Just((2, 2)),
        Just((3, 2)),
    ]
    .prop_map(|(p, k)| field_of(p, k))
}

fn arb_poly(max_degree: usize) -> impl Strategy<Value = (Field, Vec<u64>)> {
    arb_field().prop_flat_map(move |field| {
        let q = field.order();
        (Just(field), prop::collection::vec(0..q, 0..=max_degree + 1))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn squarefree_decomposition_reconstructs_products_of_irreducibles(
        p in prop::sample::select(vec![2u64, 3, 5, 13]),
        factors in prop::collection::vec((1usize..=3, any::<u64>(), 1u64..=7), 1..=3),
        unit in 1u64..13,
    ) {
        let field = field_of(p, 1);
        let mut f = Polynomial::constant(field.element((unit % (p - 1) + 1) as i64));
        for (degree, seed, power) in &factors {
            f = &f * &irreducible(field, *degree, *seed).pow(*power);
        }
        let dec = f.squarefree_decompose().unwrap();
        prop_assert_eq!(dec.reconstruct(), f.clone());
        for (i, (j, a)) in dec.parts.iter().enumerate() {
            prop_assert!(a.is_monic());
            prop_assert_eq!(a.gcd(&a.derivative()).degree(), Some(0), "part {} not square-free", j);
            for (l, b) in dec.parts.iter().skip(i + 1) {
                prop_assert_eq!(a.gcd(b).degree(), Some(0), "parts {} and {} share a factor", j, l);
            }
        }
    }

    #[test]
    fn divrem_round_trip((field, a) in arb_poly(9), b in prop::collection::vec(0u64..9, 1..6)) {
        let a = poly_from_indices(field, &a);
        let b = poly_from_indices(field, &b.iter().map(|&i| i % field.order()).collect::<Vec<_>>());
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn multiplicities_of_rational_roots((field, a) in arb_poly(6), (_, b) in arb_poly(3)) {
        prop_assume!(field.order() <= 27);
        let a = poly_from_indices(field, &a);
        let b = poly_from_indices(field, &b.iter().map(|&i| i % field.order()).collect::<Vec<_>>());
        // a * b^2 forces repeated factors
        let f = &a * &(&b * &b);
        prop_assume!(!f.is_zero() && !f.is_constant());
        let dec = f.squarefree_decompose().unwrap();
        for r in field.elements() {
            let expected = dec
                .parts
                .iter()
                .find(|(_, part)| part.eval(r).is_zero())
                .map_or(0, |(j, _)| *j);
            prop_assert_eq!(root_multiplicity(&f, r), expected, "root {}", r);
        }
    }

    #[test]
    fn gcd_divides_both((field, a) in arb_poly(6), (_, b) in arb_poly(6)) {
        let q = field.order();
        let a = poly_from_indices(field, &a);
        let b = poly_from_indices(field, &b.iter().map(|&i| i % q).collect::<Vec<_>>());
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
    }
}
