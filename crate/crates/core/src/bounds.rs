//! Orbits of multiplication by p on `Z/nZ \ {0}` and the resulting bounds on the
//! a-number and p-rank.

use serde::Serialize;

use crate::field::gcd_u64;
use crate::kummer::{KummerCurve, RamificationProfile};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("gcd(n, p) = gcd({n}, {p}) is not 1")]
    NotCoprime { n: u64, p: u64 },
    #[error("n = {0} must be at least 2")]
    DegreeTooSmall(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub n: u64,
    pub p: u64,
    /// Each orbit sorted ascending; orbits sorted by smallest element.
    pub orbits: Vec<Vec<u64>>,
}

impl OrbitDecomposition {
    pub fn orbit_of(&self, i: u64) -> Option<&[u64]> {
        self.orbits
            .iter()
            .find(|o| o.binary_search(&i).is_ok())
            .map(Vec::as_slice)
    }
}

pub fn orbits(n: u64, p: u64) -> Result<OrbitDecomposition, BoundsError> {
    if n < 2 {
        return Err(BoundsError::DegreeTooSmall(n));
    }
    if gcd_u64(n, p) != 1 {
        return Err(BoundsError::NotCoprime { n, p });
    }
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for start in 1..n {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut s = start;
        while !seen[s as usize] {
            seen[s as usize] = true;
            orbit.push(s);
            s = s * (p % n) % n;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(OrbitDecomposition { n, p, orbits: out })
}

/// `1 - n + sum_i max{1, m_i - m_{p*i mod n} + 1}`.
pub fn a_number_lower_bound(profile: &RamificationProfile, n: u64, p: u64) -> u64 {
    let total: i64 = (1..n)
        .map(|i| {
            let (mi, mj) = (profile.m(i) as i64, profile.m(p * i % n) as i64);
            (mi - mj + 1).max(1)
        })
        .sum();
    (1 - n as i64 + total) as u64
}

/// `sum over orbits of min_{i in orbit} (m_i - 1)`.
///
/// This counts one block per orbit. Frobenius permutes the blocks of an orbit
/// cyclically and is bijective on the stable part, so the stable part has the same
/// dimension in every block of the orbit; the p-rank itself is bounded only by
/// [`p_rank_upper_bound_weighted`].
pub fn p_rank_upper_bound(profile: &RamificationProfile, orbits: &OrbitDecomposition) -> u64 {
    orbits
        .orbits
        .iter()
        .map(|o| orbit_min_dim(profile, o))
        .sum()
}

/// `sum over orbits of |orbit| * min_{i in orbit} (m_i - 1)`.
pub fn p_rank_upper_bound_weighted(
    profile: &RamificationProfile,
    orbits: &OrbitDecomposition,
) -> u64 {
    orbits
        .orbits
        .iter()
        .map(|o| o.len() as u64 * orbit_min_dim(profile, o))
        .sum()
}

fn orbit_min_dim(profile: &RamificationProfile, orbit: &[u64]) -> u64 {
    orbit
        .iter()
        .map(|&i| profile.m(i).saturating_sub(1))
        .min()
        .unwrap_or(0)
}

/// Per-block data behind the a-number upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockBound {
    pub residue: u64,
    pub m: u64,
    pub image_m: u64,
    pub deg_q: u64,
    pub q: i64,
    pub v: i64,
    /// Lower bound on the rank of Frobenius restricted to the block.
    pub rank_lower_bound: i64,
}

/// Leading-coefficient row count for a block: with `D = deg Q_i`,
/// `q = floor((D + m_image - 1)/p)`, `v = floor(D/p)` and the block rank is at
/// least `max{0, min{q - v, m - 1 - v}}`.
pub fn block_bound(residue: u64, m: u64, image_m: u64, deg_q: u64, p: u64) -> BlockBound {
    let q = ((deg_q + image_m) as i64 - 1).div_euclid(p as i64);
    let v = (deg_q / p) as i64;
    let rank_lower_bound = (q - v).min(m as i64 - 1 - v).max(0);
    BlockBound {
        residue,
        m,
        image_m,
        deg_q,
        q,
        v,
        rank_lower_bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub a_lower: u64,
    pub a_upper: u64,
    pub f_upper: u64,
    pub f_upper_weighted: u64,
    pub per_block: Vec<BlockBound>,
}

/// All bounds for a curve. `deg Q_i` comes from the exponent formula, so no
/// polynomial is expanded.
pub fn a_number_upper_bound(curve: &KummerCurve) -> BoundsReport {
    let (n, p) = (curve.n(), curve.p());
    let profile = curve.ramification_profile();
    let orbit_list = orbits(n, p).expect("validated curve has gcd(n, p) = 1");
    let per_block: Vec<BlockBound> = (1..n)
        .map(|i| {
            block_bound(
                i,
                profile.m(i),
                profile.m(p * i % n),
                curve.frobenius_polynomial_degree(i),
                p,
            )
        })
        .collect();
    let total: i64 = per_block
        .iter()
        .map(|b| {
            let m = b.m as i64;
            m.min((m - b.q + b.v).max(1 + b.v))
        })
        .sum();
    BoundsReport {
        a_lower: a_number_lower_bound(&profile, n, p),
        a_upper: (1 - n as i64 + total) as u64,
        f_upper: p_rank_upper_bound(&profile, &orbit_list),
        f_upper_weighted: p_rank_upper_bound_weighted(&profile, &orbit_list),
        per_block,
    }
}

/// Block rank lower bound for `y^2 = f` with `f` square-free of degree `deg` in
/// odd characteristic `p`: one block, `m_1 = ceil(deg/2)`, `deg Q_1 = deg*(p-1)/2`.
pub fn hyperelliptic_block_bound(p: u64, deg: u64) -> BlockBound {
    let m = deg.div_ceil(2);
    block_bound(1, m, m, deg * (p - 1) / 2, p)
}
