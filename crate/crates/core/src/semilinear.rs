//! Linear algebra for p-semilinear maps.
//!
//! A [`TwistedMatrix`] with twist `e` represents the map `v -> M * v^(p^e)`, where the
//! power is taken entrywise. Its `m`-th iterate is represented by the plain product
//! `M * M^(σ^e) * ... * M^(σ^((m-1)e))` with twist `m*e`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::field::{Field, FieldElement};
use crate::kummer::BlockIndex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemilinearError {
    #[error("orbit is empty")]
    EmptyOrbit,
    #[error("residue {0} has no block")]
    UnknownResidue(u64),
    #[error("orbit is not closed under multiplication by p: {from} maps to {to}")]
    OrbitNotClosed { from: u64, to: u64 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct TwistedMatrix {
    field: Field,
    size: usize,
    entries: Vec<FieldElement>,
    twist: u32,
}

impl TwistedMatrix {
    /// Row-major `size x size` grid. Panics on a length mismatch or a foreign entry.
    pub fn new(field: Field, size: usize, entries: Vec<FieldElement>, twist: u32) -> Self {
        assert_eq!(entries.len(), size * size, "entry grid must be square");
        assert!(entries.iter().all(|e| e.field() == field));
        TwistedMatrix {
            field,
            size,
            entries,
            twist,
        }
    }

    pub fn zero(field: Field, size: usize, twist: u32) -> Self {
        Self::new(field, size, vec![field.zero(); size * size], twist)
    }

    pub fn identity(field: Field, size: usize) -> Self {
        let mut m = Self::zero(field, size, 0);
        for i in 0..size {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<FieldElement>], twist: u32) -> Self {
        let size = rows.len();
        let entries = rows
            .iter()
            .inspect(|r| assert_eq!(r.len(), size))
            .flatten()
            .copied()
            .collect();
        Self::new(field, size, entries, twist)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: FieldElement) {
        assert_eq!(value.field(), self.field);
        self.entries[row * self.size + col] = value;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<FieldElement>> {
        self.entries
            .chunks(self.size.max(1))
            .map(<[_]>::to_vec)
            .take(self.size)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    /// Number of nonzero entries.
    pub fn support(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Entrywise `p^e`-power.
    pub fn conjugate(&self, e: u32) -> Self {
        TwistedMatrix {
            entries: self.entries.iter().map(|x| x.frobenius(e)).collect(),
            ..self.clone()
        }
    }

    /// Ordinary matrix product of the grids; twists add.
    fn grid_mul(&self, rhs: &TwistedMatrix) -> TwistedMatrix {
        let n = self.size;
        let mut out = TwistedMatrix::zero(self.field, n, self.twist + rhs.twist);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Applies the represented semilinear map to a coordinate vector.
    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.size);
        let twisted: Vec<_> = v.iter().map(|x| x.frobenius(self.twist)).collect();
        (0..self.size)
            .map(|r| {
                (0..self.size).fold(self.field.zero(), |acc, c| {
                    acc + self.get(r, c) * twisted[c]
                })
            })
            .collect()
    }

    /// Rectangular sub-grid with the given rows and columns.
    fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> Vec<FieldElement> {
        rows.flat_map(|r| cols.clone().map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect()
    }
}

impl std::fmt::Debug for TwistedMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "TwistedMatrix over {} (twist {}):",
            self.field, self.twist
        )?;
        for row in self.rows() {
            let cells: Vec<_> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Rank of a row-major grid over a field by Gaussian elimination, pivoting on the
/// first nonzero entry from the top of each column.
pub(crate) fn grid_rank(rows: usize, cols: usize, mut a: Vec<FieldElement>) -> usize {
    debug_assert_eq!(a.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                a.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = a[rank * cols + col].inv().expect("pivot is nonzero");
        for r in rank + 1..rows {
            let factor = a[r * cols + col];
            if factor.is_zero() {
                continue;
            }
            let factor = factor * inv;
            for c in col..cols {
                let sub = factor * a[rank * cols + c];
                a[r * cols + c] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(m: &TwistedMatrix) -> usize {
    grid_rank(m.size, m.size, m.entries.clone())
}

/// Matrix of the `count`-fold iterate. `count = 0` yields the identity.
pub fn twisted_product(m: &TwistedMatrix, count: u32) -> TwistedMatrix {
    let mut acc = TwistedMatrix::identity(m.field, m.size);
    for step in 0..count {
        acc = acc.grid_mul(&m.conjugate(step * m.twist));
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SemilinearInvariants {
    pub genus: usize,
    pub rank: usize,
    pub a_number: usize,
    pub p_rank: usize,
    pub index: usize,
    pub nilpotent: bool,
    pub superspecial: bool,
    /// Set for 0x0 matrices, where `superspecial` holds only vacuously.
    pub genus_zero: bool,
}

pub fn invariants(m: &TwistedMatrix) -> SemilinearInvariants {
    let g = m.size;
    let r = rank(m);

    let mut index = 0;
    let mut power = TwistedMatrix::identity(m.field, g);
    let mut prev = g;
    for step in 0..=g as u32 {
        power = power.grid_mul(&m.conjugate(step * m.twist));
        let next = rank(&power);
        if next == prev {
            index = step as usize;
            break;
        }
        prev = next;
    }

    let p_rank = if g == 0 {
        0
    } else {
        rank(&twisted_product(m, g as u32))
    };
    SemilinearInvariants {
        genus: g,
        rank: r,
        a_number: g - r,
        p_rank,
        index,
        nilpotent: p_rank == 0,
        superspecial: m.is_zero(),
        genus_zero: g == 0,
    }
}

fn block_map(blocks: &[BlockIndex]) -> BTreeMap<u64, &BlockIndex> {
    blocks.iter().map(|b| (b.residue, b)).collect()
}

/// Rank of the `power`-fold iterate restricted to the block of `residue`, with rows
/// taken from the block it lands in.
pub fn block_restricted_rank(
    m: &TwistedMatrix,
    blocks: &[BlockIndex],
    residue: u64,
    power: u32,
) -> Result<usize, SemilinearError> {
    let by_residue = block_map(blocks);
    let source = by_residue
        .get(&residue)
        .ok_or(SemilinearError::UnknownResidue(residue))?;
    let mut target = *source;
    for _ in 0..power {
        target = by_residue
            .get(&target.image)
            .ok_or(SemilinearError::UnknownResidue(target.image))?;
    }
    let iterate = twisted_product(m, power);
    let grid = iterate.submatrix(
        target.offset..target.offset + target.dim,
        source.offset..source.offset + source.dim,
    );
    Ok(grid_rank(target.dim, source.dim, grid))
}

/// Rank of the iterate on the block of the smallest representative of `orbit`.
pub fn orbit_restricted_rank(
    m: &TwistedMatrix,
    blocks: &[BlockIndex],
    orbit: &[u64],
    power: u32,
) -> Result<usize, SemilinearError> {
    let members: BTreeSet<u64> = orbit.iter().copied().collect();
    let by_residue = block_map(blocks);
    for &i in &members {
        let block = by_residue
            .get(&i)
            .ok_or(SemilinearError::UnknownResidue(i))?;
        if !members.contains(&block.image) {
            return Err(SemilinearError::OrbitNotClosed {
                from: i,
                to: block.image,
            });
        }
    }
    let representative = *members.first().ok_or(SemilinearError::EmptyOrbit)?;
    block_restricted_rank(m, blocks, representative, power)
}

/// Sum of [`orbit_restricted_rank`] over orbits, one representative each.
pub fn orbit_sum_rank(
    m: &TwistedMatrix,
    blocks: &[BlockIndex],
    orbits: &[Vec<u64>],
    power: u32,
) -> Result<usize, SemilinearError> {
    orbits
        .iter()
        .map(|o| orbit_restricted_rank(m, blocks, o, power))
        .sum()
}

/// Like [`orbit_sum_rank`] but counting each orbit once per member. For `power` at
/// least the index this equals the p-rank: the stable image has the same dimension
/// in every block of an orbit.
pub fn orbit_weighted_rank(
    m: &TwistedMatrix,
    blocks: &[BlockIndex],
    orbits: &[Vec<u64>],
    power: u32,
) -> Result<usize, SemilinearError> {
    orbits
        .iter()
        .map(|o| Ok(o.len() * orbit_restricted_rank(m, blocks, o, power)?))
        .sum()
}
