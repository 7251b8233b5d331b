//! Hyperelliptic curves in characteristic 2, `y^2 + Q(x) y = P(x)`, ramified at
//! infinity.
//!
//! H^1(C, O_C) has basis `y/x^i` for `i = 1..g`, and Frobenius sends `y/x^i` to
//! `sum_j c_{i,j} y/x^j` with `c_{i,j}` the coefficient of `x^(2i-j)` in `Q`.

use crate::field::Field;
use crate::poly::Polynomial;
use crate::semilinear::TwistedMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Char2Error {
    #[error("characteristic {0} is not 2")]
    WrongCharacteristic(u64),
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("deg Q = {deg_q} exceeds the genus {genus}")]
    QDegreeViolation { deg_q: usize, genus: usize },
    #[error("deg P must be 2g+1 = {expected}, got {got:?}")]
    PDegreeViolation { expected: usize, got: Option<usize> },
    #[error("not smooth: gcd(Q, (Q')^2 P + (P')^2) = {gcd}")]
    NotSmooth { gcd: Polynomial },
}

#[derive(Debug, Clone)]
pub struct ArtinSchreierHyperelliptic {
    field: Field,
    genus: usize,
    q: Polynomial,
    p: Polynomial,
}

pub fn validate_char2(
    field: Field,
    genus: usize,
    q: &Polynomial,
    p: &Polynomial,
) -> Result<ArtinSchreierHyperelliptic, Char2Error> {
    if field.p() != 2 {
        return Err(Char2Error::WrongCharacteristic(field.p()));
    }
    if genus == 0 {
        return Err(Char2Error::ZeroGenus);
    }
    if let Some(deg_q) = q.degree().filter(|&d| d > genus) {
        return Err(Char2Error::QDegreeViolation { deg_q, genus });
    }
    if p.degree() != Some(2 * genus + 1) {
        return Err(Char2Error::PDegreeViolation {
            expected: 2 * genus + 1,
            got: p.degree(),
        });
    }
    let dq = q.derivative();
    let dp = p.derivative();
    let h = &(&(&dq * &dq) * p) + &(&dp * &dp);
    let gcd = q.gcd(&h);
    if gcd.degree() != Some(0) {
        return Err(Char2Error::NotSmooth { gcd });
    }
    Ok(ArtinSchreierHyperelliptic {
        field,
        genus,
        q: q.clone(),
        p: p.clone(),
    })
}

impl ArtinSchreierHyperelliptic {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    /// Frobenius matrix with columns indexed by the source `y/x^i` and rows by the
    /// target `y/x^j`: entry `(j, i)` is the coefficient of `x^(2i-j)` in `Q`.
    pub fn matrix(&self) -> TwistedMatrix {
        char2_matrix_of(self.field, self.genus, &self.q)
    }
}

pub fn char2_matrix(curve: &ArtinSchreierHyperelliptic) -> TwistedMatrix {
    curve.matrix()
}

/// The matrix depends only on `Q` and `g`.
pub(crate) fn char2_matrix_of(field: Field, genus: usize, q: &Polynomial) -> TwistedMatrix {
    let mut m = TwistedMatrix::zero(field, genus, 1);
    for i in 1..=genus {
        for j in 1..=genus {
            m.set(j - 1, i - 1, q.coeff_at(2 * i as i64 - j as i64));
        }
    }
    m
}
