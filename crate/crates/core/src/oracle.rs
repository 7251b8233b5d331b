//! Independent cross-checks: Riemann-Hurwitz genus, supersingularity of elliptic
//! curves by point counting, and the p-rank from iterating the semilinear map on
//! vectors. None of these go through the ramification profile or the matrix
//! products of [`crate::semilinear`].

use crate::field::gcd_u64;
use crate::field::FieldElement;
use crate::kummer::KummerCurve;
use crate::semilinear::TwistedMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("Riemann-Hurwitz count 2g - 2 = {0} is odd or below -2")]
    Parity(i64),
    #[error("x^3 + {a}x + {b} is singular over F_{p}")]
    SingularCubic { p: u64, a: u64, b: u64 },
    #[error("point counting needs p >= 5, got {0}")]
    SmallCharacteristic(u64),
}

/// Genus from tame ramification: over each root of `f_j` the cover has `gcd(n, j)`
/// points, and over infinity `gcd(n, deg f)` points.
pub fn rh_genus(curve: &KummerCurve) -> Result<u64, OracleError> {
    let n = curve.n() as i64;
    let mut two_g_minus_two = -2 * n;
    let mut deg = 0i64;
    for (j, fj) in &curve.decomposition().parts {
        let d = fj.degree().expect("nonconstant part") as i64;
        deg += *j as i64 * d;
        two_g_minus_two += d * (n - gcd_u64(curve.n(), *j) as i64);
    }
    if deg % n != 0 {
        two_g_minus_two += n - gcd_u64(curve.n(), deg as u64) as i64;
    }
    if two_g_minus_two < -2 || two_g_minus_two % 2 != 0 {
        return Err(OracleError::Parity(two_g_minus_two));
    }
    Ok((two_g_minus_two / 2 + 1) as u64)
}

/// Counts points of `y^2 = x^3 + ax + b` over F_p and returns 0 when the count is
/// `p + 1` (supersingular), 1 otherwise.
pub fn elliptic_point_count_prank(p: u64, a: u64, b: u64) -> Result<u8, OracleError> {
    if p < 5 {
        return Err(OracleError::SmallCharacteristic(p));
    }
    let (a, b) = (a % p, b % p);
    let disc = (4 * a % p * a % p * a + 27 * b % p * b) % p;
    if disc == 0 {
        return Err(OracleError::SingularCubic { p, a, b });
    }
    let mut square_roots = vec![0u64; p as usize];
    for y in 0..p {
        square_roots[(y * y % p) as usize] += 1;
    }
    let affine: u64 = (0..p)
        .map(|x| {
            let rhs = (x * x % p * x + a * x + b) % p;
            square_roots[rhs as usize]
        })
        .sum();
    Ok(if affine + 1 == p + 1 { 0 } else { 1 })
}

fn apply(m: &TwistedMatrix, v: &[FieldElement]) -> Vec<FieldElement> {
    let g = m.size();
    let field = m.field();
    (0..g)
        .map(|r| {
            let mut acc = field.zero();
            for (c, x) in v.iter().enumerate() {
                acc += m.get(r, c) * x.frobenius(m.twist());
            }
            acc
        })
        .collect()
}

// Dimension of a span of vectors, reducing each against a growing echelon basis.
fn span_dimension(vectors: &[Vec<FieldElement>]) -> usize {
    let mut basis: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for (lead, b) in &basis {
            let c = v[*lead];
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= c * *y;
                }
            }
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[lead].inv().expect("nonzero");
            for x in v.iter_mut() {
                *x *= inv;
            }
            // keep earlier basis vectors reduced at the new pivot
            for (_, b) in basis.iter_mut() {
                let c = b[lead];
                if !c.is_zero() {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x -= c * *y;
                    }
                }
            }
            basis.push((lead, v));
        }
    }
    basis.len()
}

/// Iterates the map on the images of the standard basis until two consecutive
/// image dimensions agree; returns `(stable rank, first stabilizing exponent)`.
pub fn stabilized_prank(m: &TwistedMatrix) -> (usize, usize) {
    let g = m.size();
    let field = m.field();
    let mut images: Vec<Vec<FieldElement>> = (0..g)
        .map(|s| {
            (0..g)
                .map(|r| if r == s { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    let mut dim = span_dimension(&images);
    let mut exponent = 0;
    loop {
        images = images.iter().map(|v| apply(m, v)).collect();
        let next = span_dimension(&images);
        if next == dim {
            return (dim, exponent);
        }
        dim = next;
        exponent += 1;
    }
}
