//! Dense univariate polynomials over F_{p^k} and square-free decomposition in
//! positive characteristic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Field, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no square-free decomposition")]
    ZeroPolynomial,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Polynomial with coefficients indexed by exponent; trailing zeros are trimmed, so
/// the zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    /// Panics if a coefficient belongs to another field.
    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.field() == field),
            "polynomial coefficients must lie in {field}"
        );
        let mut p = Polynomial { field, coeffs };
        p.trim();
        p
    }

    /// Coefficients given as integers, constant first, reduced into the prime subfield.
    pub fn from_ints(field: Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.element(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.field(), vec![c])
    }

    pub fn x(field: Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElement, e: usize) -> Self {
        let mut coeffs = vec![c.field().zero(); e + 1];
        coeffs[e] = c;
        Self::new(c.field(), coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Coefficient of `x^e`; zero outside `0..=degree`.
    pub fn coeff_at(&self, e: i64) -> FieldElement {
        if e < 0 {
            return self.field.zero();
        }
        self.coeffs
            .get(e as usize)
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Splits off the leading coefficient: returns `(lead, self / lead)`.
    pub fn monic(&self) -> Option<(FieldElement, Polynomial)> {
        let lead = self.leading()?;
        let inv = lead.inv().ok()?;
        Some((lead, self.scale(inv)))
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(e, &c)| c * self.field.element((e as u64 % self.field.p()) as i64))
            .collect();
        Self::new(self.field, coeffs)
    }

    pub fn divrem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        self.same_field(divisor)?;
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let t = rem[top] * lead_inv;
            if t.is_zero() {
                continue;
            }
            quot[top - dd] = t;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                rem[top - dd + j] -= t * dj;
            }
        }
        rem.truncate(dd);
        Ok((
            Polynomial::new(self.field, quot),
            Polynomial::new(self.field, rem),
        ))
    }

    /// Quotient of a division known to be exact. Panics on a nonzero remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Polynomial {
        let (q, r) = self
            .divrem(divisor)
            .expect("exact division by nonzero polynomial");
        assert!(r.is_zero(), "inexact division {self} / {divisor}");
        q
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        match a.monic() {
            Some((_, m)) => m,
            None => a,
        }
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        let mut acc = Polynomial::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Polynomial) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::one(self.field).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Exact p-th root when every exponent with a nonzero coefficient is divisible by p.
    pub fn pth_root(&self) -> Option<Polynomial> {
        let p = self.field.p() as usize;
        let k = self.field.k() as u32;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (e, c) in self.coeffs.iter().enumerate() {
            if e % p == 0 {
                coeffs.push(c.frobenius(k - 1));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Polynomial::new(self.field, coeffs))
    }

    /// Rabin's irreducibility test over F_q.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let q = self.field.order();
        let x = Polynomial::x(self.field);
        // frob[i] = x^(q^i) mod self
        let mut frob = vec![x.rem(self).unwrap()];
        for _ in 0..d {
            let next = frob.last().unwrap().pow_mod(q, self).unwrap();
            frob.push(next);
        }
        if &frob[d] - &x.rem(self).unwrap() != Polynomial::zero(self.field) {
            return false;
        }
        crate::field::prime_divisors(d as u64).into_iter().all(|r| {
            let h = &frob[d / r as usize] - &x;
            h.gcd(self).degree() == Some(0)
        })
    }

    fn same_field(&self, other: &Polynomial) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields {
                left: self.field,
                right: other.field,
            })
        }
    }

    fn assert_same_field(&self, other: &Polynomial) {
        if let Err(e) = self.same_field(other) {
            panic!("{e}");
        }
    }

    pub fn squarefree_decompose(&self) -> Result<SquareFreeDecomposition, PolyError> {
        let (unit, monic) = self.monic().ok_or(PolyError::ZeroPolynomial)?;
        let mut parts = BTreeMap::new();
        squarefree_monic(&monic, 1, &mut parts);
        Ok(SquareFreeDecomposition { unit, parts })
    }
}

fn insert_part(parts: &mut BTreeMap<u64, Polynomial>, j: u64, factor: Polynomial) {
    match parts.remove(&j) {
        Some(existing) => {
            parts.insert(j, &existing * &factor);
        }
        None => {
            parts.insert(j, factor);
        }
    }
}

// Square-free factorization over F_q. Multiplicities found in a p-th root are
// scaled by p on the way back up.
fn squarefree_monic(f: &Polynomial, scale: u64, parts: &mut BTreeMap<u64, Polynomial>) {
    if f.is_constant() {
        return;
    }
    let p = f.field().p();
    let df = f.derivative();
    if df.is_zero() {
        let root = f
            .pth_root()
            .expect("vanishing derivative implies a p-th power");
        squarefree_monic(&root, scale * p, parts);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c);
    let mut i = 1u64;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if !z.is_constant() {
            insert_part(parts, i * scale, z);
        }
        i += 1;
        c = c.exact_div(&y);
        w = y;
    }
    if !c.is_constant() {
        let root = c.pth_root().expect("residual cofactor is a p-th power");
        squarefree_monic(&root, scale * p, parts);
    }
}

/// `f = unit * prod_j parts[j]^j` with monic, square-free, pairwise coprime parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    pub unit: FieldElement,
    pub parts: BTreeMap<u64, Polynomial>,
}

impl SquareFreeDecomposition {
    pub fn reconstruct(&self) -> Polynomial {
        self.parts
            .iter()
            .fold(Polynomial::constant(self.unit), |acc, (&j, fj)| {
                &acc * &fj.pow(j)
            })
    }

    pub fn field(&self) -> Field {
        self.unit.field()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff_at(i as i64) + rhs.coeff_at(i as i64))
            .collect();
        Polynomial::new(self.field, coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(self.field, out)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for Polynomial {
    /// Renders in the input grammar, highest degree first, e.g. `x^3+2*x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            };
            match (e, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn poly(p: u64, c: &[i64]) -> Polynomial {
        Polynomial::from_ints(make_field(p, 1).unwrap(), c)
    }

    #[test]
    fn coefficient_extraction() {
        let f13 = make_field(13, 1).unwrap();
        let x = Polynomial::x(f13);
        let q4 = &x.pow(9) * &poly(13, &[1, 1]).pow(4);
        assert_eq!(q4.coeff_at(12), f13.element(4));
        assert_eq!(q4.coeff_at(-1), f13.zero());
        assert_eq!(q4.coeff_at(100), f13.zero());

        let f = poly(5, &[1, 0, 1, 1]);
        assert_eq!(f.pow(2).coeff_at(4), make_field(5, 1).unwrap().one());
    }

    #[test]
    fn derivative_of_pth_power_vanishes() {
        assert!(poly(5, &[1, 0, 0, 0, 0, 1]).derivative().is_zero());
        assert_eq!(poly(7, &[1, 2, 3]).derivative(), poly(7, &[2, 6]));
    }

    #[test]
    fn degree_sentinel() {
        let z = Polynomial::zero(make_field(3, 1).unwrap());
        assert_eq!(z.degree(), None);
        assert_eq!(poly(3, &[0, 0, 0]).degree(), None);
        assert_eq!(poly(3, &[1, 0, 2, 0]).degree(), Some(2));
    }

    #[test]
    fn divrem_by_zero() {
        let z = Polynomial::zero(make_field(3, 1).unwrap());
        assert_eq!(poly(3, &[1, 1]).divrem(&z), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_is_monic() {
        let a = poly(7, &[2, 2]) * poly(7, &[1, 0, 1]);
        let b = poly(7, &[3, 3]) * poly(7, &[5, 1]);
        assert_eq!(a.gcd(&b), poly(7, &[1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        let d = poly(13, &[0, 0, 1, 1]).squarefree_decompose().unwrap();
        assert!(d.unit.is_one());
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.parts[&1], poly(13, &[1, 1]));
        assert_eq!(d.parts[&2], poly(13, &[0, 1]));

        let d = poly(5, &[1, 0, 1, 1]).squarefree_decompose().unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[&1], poly(5, &[1, 0, 1, 1]));

        let d = poly(5, &[1, 1]).pow(5).squarefree_decompose().unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[&5], poly(5, &[1, 1]));

        let d = poly(5, &[0, 0, 3]).squarefree_decompose().unwrap();
        assert_eq!(d.unit, make_field(5, 1).unwrap().element(3));
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[&2], poly(5, &[0, 1]));

        assert_eq!(
            Polynomial::zero(make_field(5, 1).unwrap()).squarefree_decompose(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree_mixed_pth_powers_over_extension() {
        // (x+w+1)^2 (x^2+1)^6 (x+1)^3 over F_9, multiplicities straddling p = 3
        let f9 = make_field(3, 2).unwrap();
        let w = f9.generator();
        let a = Polynomial::new(f9, vec![w + f9.one(), f9.one()]);
        let b = Polynomial::from_ints(f9, &[1, 0, 1]);
        let c = Polynomial::from_ints(f9, &[1, 1]);
        let f = &(&a.pow(2) * &b.pow(6)) * &c.pow(3);
        let d = f.scale(w).squarefree_decompose().unwrap();
        assert_eq!(d.unit, w);
        assert_eq!(d.reconstruct(), f.scale(w));
        assert_eq!(d.parts[&2], a);
        assert_eq!(d.parts[&3], c);
        // x^2+1 = (x+w)(x-w) splits over F_9; both roots keep multiplicity 6
        assert_eq!(d.parts[&6], b);
    }

    #[test]
    fn irreducibility() {
        assert!(poly(5, &[2, 0, 1]).is_irreducible());
        assert!(!poly(5, &[1, 0, 1]).is_irreducible());
        assert!(poly(2, &[1, 1, 0, 1]).is_irreducible());
        assert!(!poly(2, &[1, 0, 1, 0, 1]).is_irreducible());
        let f4 = make_field(2, 2).unwrap();
        // x^2+x+1 splits over F_4
        assert!(!Polynomial::from_ints(f4, &[1, 1, 1]).is_irreducible());
    }

    #[test]
    fn display() {
        assert_eq!(poly(13, &[0, 0, 1, 1]).to_string(), "x^3+x^2");
        assert_eq!(poly(5, &[1, 0, 0, 0, 0, 1]).to_string(), "x^5+1");
        assert_eq!(poly(7, &[3, 2]).to_string(), "2*x+3");
        let f4 = make_field(2, 2).unwrap();
        let p = Polynomial::new(f4, vec![f4.one(), f4.generator()]);
        assert_eq!(p.to_string(), "(w)*x+1");
    }
}
