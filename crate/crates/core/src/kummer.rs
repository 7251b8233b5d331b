//! Kummer covers `y^n = f(x)` of the projective line.
//!
//! With `f = u * prod_j f_j^j` (square-free, pairwise coprime, monic `f_j`,
//! `1 <= j <= n-1`), H^1(C, O_C) has the basis
//!
//! ```text
//!     y^i / prod_j f_j^floor(j*i/n) * x^-t,    1 <= i <= n-1,  1 <= t <= m_i - 1,
//! ```
//!
//! ordered by `i` and then `t`. Frobenius sends the block `B_i` into `B_{p*i mod n}`
//! and its entries are coefficients of the polynomials `Q_i`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::field::{prime_divisors, Field, FieldElement};
use crate::poly::{Polynomial, SquareFreeDecomposition};
use crate::semilinear::TwistedMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("cover degree n = {0} must be at least 2")]
    DegreeTooSmall(u64),
    #[error("f is the zero polynomial")]
    ZeroPolynomial,
    #[error("f is constant: y^n = f does not define a cover of the projective line")]
    ConstantPolynomial,
    #[error("characteristic {p} divides the cover degree n = {n}")]
    CharacteristicDividesDegree { p: u64, n: u64 },
    #[error("f is a {d}-th power in k(x), so Z^n - f is reducible; replace n by n/{d}")]
    ReduciblePolynomial { d: u64 },
    #[error(
        "f is a constant times a {d}-th power in k(x), so the cover is not geometrically \
         irreducible; replace n by n/{d}"
    )]
    NotGeometricallyIrreducible { d: u64 },
}

/// A validated Kummer cover. `f` is the reduced model whose multiplicities lie in
/// `1..n`; the original input equals `f * absorbed^n`.
#[derive(Debug, Clone)]
pub struct KummerCurve {
    field: Field,
    n: u64,
    input: Polynomial,
    f: Polynomial,
    absorbed: Polynomial,
    decomposition: SquareFreeDecomposition,
}

/// `m_i` for `i = 1..n-1` and the genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    pub n: u64,
    pub m: Vec<u64>,
    pub genus: u64,
}

impl RamificationProfile {
    /// `m_i` for `1 <= i <= n-1`.
    pub fn m(&self, i: u64) -> u64 {
        self.m[(i - 1) as usize]
    }
}

/// Position of the block `B_i` in the concatenated basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockIndex {
    pub residue: u64,
    pub dim: usize,
    pub offset: usize,
    /// `p * residue mod n`, the block Frobenius maps into.
    pub image: u64,
}

/// `Q_i` together with the data used to build it.
#[derive(Debug, Clone)]
pub struct FrobeniusPolynomial {
    pub residue: u64,
    pub image: u64,
    pub q: Polynomial,
    /// Exponent of `u`.
    pub unit_exponent: u64,
    /// Exponent `e_j` of each part `f_j`, keyed by `j`.
    pub exponents: BTreeMap<u64, u64>,
}

#[derive(Debug, Clone)]
pub struct HasseWitt {
    pub matrix: TwistedMatrix,
    pub blocks: Vec<BlockIndex>,
}

pub fn validate_kummer(field: Field, n: u64, f: &Polynomial) -> Result<KummerCurve, CurveError> {
    assert_eq!(f.field(), field, "f must be defined over the session field");
    if n < 2 {
        return Err(CurveError::DegreeTooSmall(n));
    }
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    let p = field.p();
    if n.is_multiple_of(p) {
        return Err(CurveError::CharacteristicDividesDegree { p, n });
    }
    if f.is_constant() {
        return Err(CurveError::ConstantPolynomial);
    }
    let full = f.squarefree_decompose().expect("nonzero");

    let mut parts: BTreeMap<u64, Polynomial> = BTreeMap::new();
    let mut absorbed = Polynomial::one(field);
    for (&j, fj) in &full.parts {
        if j >= n {
            absorbed = &absorbed * &fj.pow(j / n);
        }
        let r = j % n;
        if r == 0 {
            continue;
        }
        let merged = match parts.remove(&r) {
            Some(prev) => &prev * fj,
            None => fj.clone(),
        };
        parts.insert(r, merged);
    }

    // Z^n - f is irreducible over k(x) iff f is not a d-th power for any prime d | n
    // (and f is not in -4 k(x)^4 when 4 | n, which already forces d = 2 below).
    // Geometric irreducibility needs more: no d may divide every multiplicity.
    for d in prime_divisors(n) {
        if parts.keys().all(|j| j % d == 0) {
            return Err(if full.unit.is_power(d) {
                CurveError::ReduciblePolynomial { d }
            } else {
                CurveError::NotGeometricallyIrreducible { d }
            });
        }
    }

    let decomposition = SquareFreeDecomposition {
        unit: full.unit,
        parts,
    };
    let reduced = decomposition.reconstruct();
    Ok(KummerCurve {
        field,
        n,
        input: f.clone(),
        f: reduced,
        absorbed,
        decomposition,
    })
}

impl KummerCurve {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// The reduced model.
    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn input(&self) -> &Polynomial {
        &self.input
    }

    /// `g` with `input = f * g^n`.
    pub fn absorbed(&self) -> &Polynomial {
        &self.absorbed
    }

    pub fn decomposition(&self) -> &SquareFreeDecomposition {
        &self.decomposition
    }

    pub fn unit(&self) -> FieldElement {
        self.decomposition.unit
    }

    pub fn degree(&self) -> u64 {
        self.f.degree().expect("nonconstant") as u64
    }

    /// `(j, deg f_j)` pairs.
    pub fn part_degrees(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.decomposition
            .parts
            .iter()
            .map(|(&j, fj)| (j, fj.degree().expect("nonconstant part") as u64))
    }

    pub fn image(&self, i: u64) -> u64 {
        self.p() * i % self.n
    }

    pub fn ramification_profile(&self) -> RamificationProfile {
        let n = self.n;
        let d = self.degree();
        let m: Vec<u64> = (1..n)
            .map(|i| {
                let ceil = (i * d).div_ceil(n);
                let taken: u64 = self.part_degrees().map(|(j, dj)| dj * (j * i / n)).sum();
                ceil.checked_sub(taken)
                    .expect("m_i is nonnegative for a reduced model")
            })
            .collect();
        let total: u64 = m.iter().sum();
        let genus = (total + 1).checked_sub(n).expect("genus is nonnegative");
        RamificationProfile { n, m, genus }
    }

    pub fn blocks(&self) -> Vec<BlockIndex> {
        let profile = self.ramification_profile();
        let mut offset = 0;
        (1..self.n)
            .map(|i| {
                let dim = profile.m(i).saturating_sub(1) as usize;
                let block = BlockIndex {
                    residue: i,
                    dim,
                    offset,
                    image: self.image(i),
                };
                offset += dim;
                block
            })
            .collect()
    }

    /// Exponents `(u, {j: e_j})` of `Q_i = u^a * prod_j f_j^(e_j)`.
    fn frobenius_exponents(&self, i: u64) -> (u64, BTreeMap<u64, u64>) {
        assert!((1..self.n).contains(&i), "residue {i} out of range");
        let (n, p) = (self.n, self.p());
        let carry = p * i / n;
        let image = p * i % n;
        let exponents = self
            .decomposition
            .parts
            .keys()
            .map(|&j| {
                let e = (j * carry + j * image / n) as i64 - (p * (j * i / n)) as i64;
                assert!(e >= 0, "negative exponent {e} for f_{j} in Q_{i}");
                (j, e as u64)
            })
            .collect();
        (carry, exponents)
    }

    /// `deg Q_i`, from the exponent formula alone.
    pub fn frobenius_polynomial_degree(&self, i: u64) -> u64 {
        let (_, exps) = self.frobenius_exponents(i);
        self.part_degrees().map(|(j, dj)| dj * exps[&j]).sum()
    }

    /// `Q_i`, assembled multiplicatively from the square-free parts.
    pub fn frobenius_polynomial(&self, i: u64) -> FrobeniusPolynomial {
        let (unit_exponent, exponents) = self.frobenius_exponents(i);
        let q = self.decomposition.parts.iter().fold(
            Polynomial::constant(self.unit().pow(unit_exponent)),
            |acc, (j, fj)| &acc * &fj.pow(exponents[j]),
        );
        FrobeniusPolynomial {
            residue: i,
            image: self.image(i),
            q,
            unit_exponent,
            exponents,
        }
    }

    /// Matrix of Frobenius on H^1(C, O_C): column `(i, t)` holds the image of that
    /// basis vector, with the coefficient of `x^(p*t - w)` in `Q_i` at row `(i', w)`.
    pub fn hasse_witt_matrix(&self) -> HasseWitt {
        let blocks = self.blocks();
        let genus: usize = blocks.iter().map(|b| b.dim).sum();
        let mut matrix = TwistedMatrix::zero(self.field, genus, 1);
        let p = self.p() as i64;
        for source in &blocks {
            let target = &blocks[(source.image - 1) as usize];
            if source.dim == 0 || target.dim == 0 {
                continue;
            }
            let q = self.frobenius_polynomial(source.residue).q;
            for t in 1..=source.dim {
                for w in 1..=target.dim {
                    let c = q.coeff_at(p * t as i64 - w as i64);
                    matrix.set(target.offset + w - 1, source.offset + t - 1, c);
                }
            }
        }
        HasseWitt { matrix, blocks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn curve(p: u64, n: u64, f: &[i64]) -> Result<KummerCurve, CurveError> {
        let field = make_field(p, 1).unwrap();
        validate_kummer(field, n, &Polynomial::from_ints(field, f))
    }

    #[test]
    fn validation_examples() {
        assert!(curve(13, 11, &[0, 0, 1, 1]).is_ok());
        assert!(curve(5, 6, &[1, 0, 1, 1]).is_ok());
        assert_eq!(
            curve(5, 2, &[0, 0, 1]).unwrap_err(),
            CurveError::ReduciblePolynomial { d: 2 }
        );
        assert_eq!(
            curve(5, 10, &[0, 1]).unwrap_err(),
            CurveError::CharacteristicDividesDegree { p: 5, n: 10 }
        );
        assert_eq!(curve(5, 2, &[]).unwrap_err(), CurveError::ZeroPolynomial);
        assert_eq!(
            curve(5, 1, &[0, 1]).unwrap_err(),
            CurveError::DegreeTooSmall(1)
        );
        assert_eq!(
            curve(5, 3, &[2]).unwrap_err(),
            CurveError::ConstantPolynomial
        );
    }

    #[test]
    fn twisted_square_is_not_geometrically_irreducible() {
        // 2 is not a square mod 5
        assert_eq!(
            curve(5, 2, &[0, 0, 2]).unwrap_err(),
            CurveError::NotGeometricallyIrreducible { d: 2 }
        );
        // y^6 = x^3 (x+1)^3: every multiplicity divisible by 3
        let f = make_field(7, 1).unwrap();
        let g = Polynomial::from_ints(f, &[0, 1, 1]).pow(3);
        assert_eq!(
            validate_kummer(f, 6, &g).unwrap_err(),
            CurveError::ReduciblePolynomial { d: 3 }
        );
    }

    #[test]
    fn multiplicities_reduced_mod_n() {
        // y^3 = x^4 (x+1) is y^3 = x (x+1) after absorbing x^3
        let field = make_field(7, 1).unwrap();
        let x = Polynomial::x(field);
        let f = &x.pow(4) * &Polynomial::from_ints(field, &[1, 1]);
        let c = validate_kummer(field, 3, &f).unwrap();
        assert_eq!(c.f(), &Polynomial::from_ints(field, &[0, 1, 1]));
        assert_eq!(c.absorbed(), &x);
        assert_eq!(
            c.decomposition().parts.keys().copied().collect::<Vec<_>>(),
            vec![1]
        );
        assert_eq!(
            c.decomposition().parts[&1],
            Polynomial::from_ints(field, &[0, 1, 1])
        );
    }

    #[test]
    fn profile_of_first_example() {
        let c = curve(13, 11, &[0, 0, 1, 1]).unwrap();
        let prof = c.ramification_profile();
        assert_eq!(prof.m, vec![1, 1, 1, 2, 2, 1, 1, 2, 2, 2]);
        assert_eq!(prof.genus, 5);
    }

    #[test]
    fn profile_of_second_example() {
        let c = curve(5, 6, &[1, 0, 1, 1]).unwrap();
        let prof = c.ramification_profile();
        assert_eq!((prof.m(3), prof.m(4), prof.m(5)), (2, 2, 3));
        assert_eq!(prof.m(1), 1);
        assert_eq!(prof.m(2), 1);
        assert_eq!(prof.genus, 4);
    }

    #[test]
    fn lower_genus_bound_is_attained_by_monomials() {
        let c = curve(7, 3, &[0, 1]).unwrap();
        let prof = c.ramification_profile();
        assert_eq!(prof.m, vec![1, 1]);
        assert_eq!(prof.genus, 0);
        assert_eq!(c.hasse_witt_matrix().matrix.size(), 0);
    }

    #[test]
    fn frobenius_polynomials_of_first_example() {
        let c = curve(13, 11, &[0, 0, 1, 1]).unwrap();
        let field = c.field();
        let x = Polynomial::x(field);
        let x1 = Polynomial::from_ints(field, &[1, 1]);

        let q4 = c.frobenius_polynomial(4);
        assert_eq!(q4.image, 8);
        assert_eq!(q4.q, &x.pow(9) * &x1.pow(4));
        assert_eq!(q4.q.coeff_at(12), field.element(4));

        let q8 = c.frobenius_polynomial(8);
        assert_eq!(q8.image, 5);
        assert_eq!(q8.q, &x.pow(5) * &x1.pow(9));
        assert_eq!(q8.q.coeff_at(12), field.element(10));

        assert_eq!(c.frobenius_polynomial(5).q.coeff_at(12), field.element(5));
        assert_eq!(c.frobenius_polynomial(10).q.coeff_at(12), field.element(3));
        for i in 1..11 {
            assert_eq!(
                c.frobenius_polynomial_degree(i),
                c.frobenius_polynomial(i).q.degree().unwrap() as u64
            );
        }
    }

    #[test]
    fn frobenius_polynomial_of_second_example() {
        let c = curve(5, 6, &[1, 0, 1, 1]).unwrap();
        let q3 = c.frobenius_polynomial(3);
        assert_eq!(q3.image, 3);
        assert_eq!(q3.q, c.f().pow(2));
        assert!(q3.q.coeff_at(4).is_one());
    }

    #[test]
    fn hasse_witt_of_first_example() {
        let hw = curve(13, 11, &[0, 0, 1, 1]).unwrap().hasse_witt_matrix();
        let m = &hw.matrix;
        assert_eq!(m.size(), 5);
        assert_eq!(m.support(), 4);
        // basis order: i = 4, 5, 8, 9, 10
        let f = m.field();
        assert_eq!(m.get(2, 0), f.element(4)); // 4 -> 8
        assert_eq!(m.get(4, 1), f.element(5)); // 5 -> 10
        assert_eq!(m.get(1, 2), f.element(10)); // 8 -> 5
        assert_eq!(m.get(3, 4), f.element(3)); // 10 -> 9
                                               // 9 -> 7, and B_7 is empty
        assert!((0..5).all(|r| m.get(r, 3).is_zero()));
    }

    #[test]
    fn hasse_witt_of_second_example() {
        let hw = curve(5, 6, &[1, 0, 1, 1]).unwrap().hasse_witt_matrix();
        let m = &hw.matrix;
        assert_eq!(m.size(), 4);
        assert_eq!(m.support(), 1);
        let b3 = hw.blocks[2];
        assert_eq!((b3.residue, b3.dim, b3.offset), (3, 1, 0));
        assert!(m.get(0, 0).is_one());
    }

    #[test]
    fn hyperelliptic_specialization() {
        // n = 2: Q_1 = f^((p-1)/2) and the block is the classical Cartier-Manin matrix
        let field = make_field(7, 1).unwrap();
        let f = Polynomial::from_ints(field, &[3, 1, 0, 5, 2, 0, 1]);
        let c = validate_kummer(field, 2, &f).unwrap();
        let hw = c.hasse_witt_matrix();
        let h = f.pow(3);
        let g = hw.matrix.size();
        assert_eq!(g, 2);
        for t in 1..=g {
            for w in 1..=g {
                assert_eq!(
                    hw.matrix.get(w - 1, t - 1),
                    h.coeff_at(7 * t as i64 - w as i64)
                );
            }
        }
    }

    #[test]
    fn blocks_are_consecutive() {
        let c = curve(5, 6, &[1, 0, 1, 1]).unwrap();
        let blocks = c.blocks();
        let mut expected = 0;
        for b in &blocks {
            assert_eq!(b.offset, expected);
            expected += b.dim;
        }
        assert_eq!(expected as u64, c.ramification_profile().genus);
    }
}
