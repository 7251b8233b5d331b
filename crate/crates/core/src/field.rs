//! Exact arithmetic in the finite field F_{p^k}.
//!
//! A field is described by its characteristic `p`, its extension degree `k` and a
//! monic irreducible modulus of degree `k` over F_p. The modulus is chosen
//! deterministically: it is the lexicographically smallest monic irreducible of
//! degree `k`, comparing the tail coefficients `(c_{k-1}, ..., c_0)` as residues.
//!
//! Descriptors are interned for the lifetime of the process, so a [`Field`] is a
//! plain `Copy` handle and a [`FieldElement`] is a small `Copy` value carrying its
//! owner. Mixing elements of different fields is a hard error.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Deref, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use serde::{Serialize, Serializer};

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 8;

/// Characteristics must stay below this bound so that products of two residues fit in a `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (must be below 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("extension degree {0} exceeds the supported maximum of {MAX_EXTENSION_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("field order {p}^{k} does not fit in 62 bits")]
    OrderTooLarge { p: u64, k: usize },
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({left} and {right})")]
    MixedFields { left: Field, right: Field },
    #[error("expected at most {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
}

/// The data defining F_{p^k}.
#[derive(Debug)]
pub struct FieldDescriptor {
    p: u64,
    k: usize,
    order: u64,
    /// Monic modulus, constant coefficient first, length `k + 1`.
    modulus: Vec<u64>,
}

impl FieldDescriptor {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of elements, `p^k`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Defining polynomial, constant coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }
}

/// Handle to an interned [`FieldDescriptor`].
#[derive(Clone, Copy)]
pub struct Field(&'static FieldDescriptor);

impl Deref for Field {
    type Target = FieldDescriptor;

    fn deref(&self) -> &FieldDescriptor {
        self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

/// Returns the field F_{p^k} with its deterministic modulus.
pub fn make_field(p: u64, k: usize) -> Result<Field, FieldError> {
    if k < 1 {
        return Err(FieldError::ZeroDegree);
    }
    if k > MAX_EXTENSION_DEGREE {
        return Err(FieldError::DegreeTooLarge(k));
    }
    if p >= MAX_CHARACTERISTIC {
        return Err(FieldError::CharacteristicTooLarge(p));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let order = (0..k)
        .try_fold(1u64, |acc, _| acc.checked_mul(p))
        .filter(|&q| q < (1 << 62))
        .ok_or(FieldError::OrderTooLarge { p, k })?;

    static REGISTRY: OnceLock<Mutex<HashMap<(u64, usize), &'static FieldDescriptor>>> =
        OnceLock::new();
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = registry.lock().unwrap_or_else(|e| e.into_inner());
    let descriptor = *guard.entry((p, k)).or_insert_with(|| {
        let modulus = smallest_irreducible(p, k);
        Box::leak(Box::new(FieldDescriptor {
            p,
            k,
            order,
            modulus,
        }))
    });
    Ok(Field(descriptor))
}

impl Field {
    pub fn new(p: u64, k: usize) -> Result<Field, FieldError> {
        make_field(p, k)
    }

    pub fn zero(self) -> FieldElement {
        FieldElement {
            field: self,
            c: [0; MAX_EXTENSION_DEGREE],
        }
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn element(self, value: i64) -> FieldElement {
        let mut e = self.zero();
        e.c[0] = value.rem_euclid(self.p as i64) as u32;
        e
    }

    /// Builds an element from power-basis coordinates (constant first). Missing
    /// coordinates are zero; each coordinate is reduced mod p.
    pub fn from_coords(self, coords: &[u64]) -> Result<FieldElement, FieldError> {
        if coords.len() > self.k {
            return Err(FieldError::CoordinateCount {
                expected: self.k,
                got: coords.len(),
            });
        }
        let mut e = self.zero();
        for (slot, &v) in e.c.iter_mut().zip(coords) {
            *slot = (v % self.p) as u32;
        }
        Ok(e)
    }

    /// The class of the indeterminate in F_p[w]/(modulus). Equals 0 in a prime field
    /// whose modulus is `x`.
    pub fn generator(self) -> FieldElement {
        let mut e = self.zero();
        if self.k == 1 {
            e.c[0] = ((self.p - self.modulus[0]) % self.p) as u32;
        } else {
            e.c[1] = 1;
        }
        e
    }

    /// Element whose coordinates are the base-p digits of `index` (least significant first).
    pub fn from_index(self, mut index: u64) -> FieldElement {
        debug_assert!(index < self.order);
        let mut e = self.zero();
        for slot in e.c.iter_mut().take(self.k) {
            *slot = (index % self.p) as u32;
            index /= self.p;
        }
        e
    }

    /// All elements in index order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(move |i| self.from_index(i))
    }
}

/// An element of F_{p^k} in power-basis coordinates.
#[derive(Clone, Copy)]
pub struct FieldElement {
    field: Field,
    c: [u32; MAX_EXTENSION_DEGREE],
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    /// Power-basis coordinates, constant coordinate first; exactly `k` of them.
    pub fn coords(&self) -> &[u32] {
        &self.c[..self.field.k]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&v| v == 0)
    }

    /// Inverse of [`Field::from_index`].
    pub fn index(&self) -> u64 {
        self.coords()
            .iter()
            .rev()
            .fold(0u64, |acc, &v| acc * self.field.p + v as u64)
    }

    /// Value of a prime-subfield element as a least residue.
    pub fn prime_value(&self) -> Option<u64> {
        self.c[1..]
            .iter()
            .all(|&v| v == 0)
            .then_some(self.c[0] as u64)
    }

    fn check_owner(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields {
                left: self.field,
                right: other.field,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_owner(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_owner(other)?;
        Ok(self.add_unchecked(&other.neg_inner()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_owner(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_owner(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let p = self.field.p as u32;
        let mut out = *self;
        for (a, &b) in out.c.iter_mut().zip(&other.c).take(self.field.k) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
        out
    }

    fn neg_inner(&self) -> Self {
        let p = self.field.p as u32;
        let mut out = *self;
        for a in out.c.iter_mut().take(self.field.k) {
            if *a != 0 {
                *a = p - *a;
            }
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let f = self.field;
        let p = f.p;
        let k = f.k;
        let mut out = f.zero();
        if k == 1 {
            out.c[0] = ((self.c[0] as u64 * other.c[0] as u64) % p) as u32;
            return out;
        }
        let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE - 1];
        for i in 0..k {
            let a = self.c[i] as u64;
            if a == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a * other.c[j] as u64) % p;
            }
        }
        let m = &f.modulus;
        for d in (k..2 * k - 1).rev() {
            let t = prod[d];
            if t == 0 {
                continue;
            }
            prod[d] = 0;
            let neg = p - t;
            for j in 0..k {
                prod[d - k + j] = (prod[d - k + j] + neg * m[j]) % p;
            }
        }
        for i in 0..k {
            out.c[i] = prod[i] as u32;
        }
        out
    }

    /// Square-and-multiply exponentiation; `a.pow(0)` is one.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.field.order - 2))
    }

    /// The `e`-fold iterate of the p-power Frobenius, `a^(p^e)`.
    pub fn frobenius(&self, e: u32) -> Self {
        let k = self.field.k as u32;
        let e = e % k;
        if e == 0 {
            return *self;
        }
        self.pow(self.field.p.pow(e))
    }

    /// Whether the element is a `d`-th power in the field.
    pub fn is_power(&self, d: u64) -> bool {
        if self.is_zero() {
            return true;
        }
        let q1 = self.field.order - 1;
        let g = gcd_u64(d, q1);
        self.pow(q1 / g).is_one()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.c.hash(state);
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;

            /// Panics when the operands belong to different fields.
            fn $method(self, rhs: FieldElement) -> FieldElement {
                match self.$checked(&rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $assign_tr for FieldElement {
            fn $assign(&mut self, rhs: FieldElement) {
                *self = $tr::$method(*self, rhs);
            }
        }
    };
}

binop!(Add, add, checked_add, AddAssign, add_assign);
binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.neg_inner()
    }
}

impl fmt::Display for FieldElement {
    /// Prime-field elements print as least residues; extension elements print in
    /// the polynomial grammar with `w` standing for the field generator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.prime_value() {
            return write!(f, "{v}");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coords().iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, c) => format!("{c}*w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}*w^{i}"),
            });
        }
        write!(f, "({})", terms.join("+"))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.field.k == 1 {
            serializer.serialize_u32(self.c[0])
        } else {
            self.coords().serialize(serializer)
        }
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in ascending order.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Minimal dense polynomials over F_p (constant first), used only to pick the modulus.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn rem_prime(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while a.len() > dm {
        let d = a.len() - 1;
        let t = a[d] * lead_inv % p;
        for (j, &mj) in m.iter().enumerate() {
            let idx = d - dm + j;
            a[idx] = (a[idx] + (p - t) * mj % p) % p;
        }
        trim(&mut a);
    }
    a
}

fn mulmod_prime(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem_prime(prod, m, p)
}

fn powmod_prime(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem_prime(base.to_vec(), m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_prime(&acc, &b, m, p);
        }
        b = mulmod_prime(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn gcd_prime(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem_prime(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rabin's test for a monic `m` over F_p.
pub(crate) fn is_irreducible_prime_field(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // frob[i] = x^(p^i) mod m
    let mut frob = vec![rem_prime(x.clone(), m, p)];
    for _ in 0..k {
        let next = powmod_prime(frob.last().unwrap(), p, m, p);
        frob.push(next);
    }
    let minus_x = |mut h: Vec<u64>| {
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        h
    };
    if !minus_x(frob[k].clone()).is_empty() {
        return false;
    }
    prime_divisors(k as u64).into_iter().all(|r| {
        let h = minus_x(frob[k / r as usize].clone());
        gcd_prime(&h, m, p).len() == 1
    })
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let count = p.pow(k as u32);
    for idx in 0..count {
        // idx's most significant base-p digit is c_{k-1}, least significant is c_0
        let mut m = vec![0u64; k + 1];
        let mut rest = idx;
        for slot in m.iter_mut().take(k) {
            *slot = rest % p;
            rest /= p;
        }
        m[k] = 1;
        if is_irreducible_prime_field(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}
