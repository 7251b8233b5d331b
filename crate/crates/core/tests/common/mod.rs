#![allow(dead_code)]

use kummer::field::{make_field, Field};
use kummer::kummer::{validate_kummer, KummerCurve};
use kummer::poly::Polynomial;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_poly(rng: &mut impl Rng, field: Field, degree: usize) -> Polynomial {
    let q = field.order();
    let mut coeffs: Vec<_> = (0..degree)
        .map(|_| field.from_index(rng.gen_range(0..q)))
        .collect();
    coeffs.push(field.from_index(rng.gen_range(1..q)));
    Polynomial::new(field, coeffs)
}

/// `f` as a product of up to three random factors with multiplicities, total
/// degree at most `max_degree`.
pub fn random_f(rng: &mut impl Rng, field: Field, max_degree: usize) -> Polynomial {
    let mut f = Polynomial::one(field);
    let mut room = max_degree;
    for _ in 0..rng.gen_range(1..=3) {
        if room == 0 {
            break;
        }
        let degree = rng.gen_range(1..=room.min(4));
        let power = rng.gen_range(1..=(room / degree).min(3));
        f = &f * &random_poly(rng, field, degree).pow(power as u64);
        room -= degree * power;
    }
    f
}

/// A valid curve with `n <= max_n` over one of `fields`, retrying until
/// validation succeeds and the genus is positive.
pub fn random_curve(
    rng: &mut impl Rng,
    fields: &[(u64, usize)],
    max_n: u64,
    max_degree: usize,
) -> KummerCurve {
    loop {
        let &(p, k) = fields.choose(rng).unwrap();
        let field = make_field(p, k).unwrap();
        let n = rng.gen_range(2..=max_n);
        if n % p == 0 {
            continue;
        }
        let f = random_f(rng, field, max_degree);
        if let Ok(curve) = validate_kummer(field, n, &f) {
            if curve.ramification_profile().genus > 0 {
                return curve;
            }
        }
    }
}
