//! Exhaustive enumeration of curve families over small fields.
//!
//! Coefficient tuples are visited in lexicographic order, highest degree first,
//! each coordinate running through the field in [`FieldElement::index`] order.
//! Work is split into fixed-size ranges evaluated in parallel and merged in range
//! order, so the output does not depend on the thread count.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::char2::{char2_matrix_of, validate_char2};
use crate::field::{Field, FieldElement};
use crate::kummer::validate_kummer;
use crate::poly::Polynomial;
use crate::semilinear::{invariants, SemilinearInvariants};

pub const DEFAULT_SPACE_LIMIT: u64 = 50_000_000;
const CHUNK: u64 = 2048;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search space has {cardinality} tuples, above the limit {limit}")]
    SpaceTooLarge { cardinality: u128, limit: u64 },
    #[error("fixed coefficient at x^{0} is outside the degree range")]
    FixedOutOfRange(usize),
    #[error("fixed leading coefficient must be nonzero")]
    FixedLeadingZero,
    #[error("fixed coefficient belongs to {got}, search runs over {expected}")]
    ForeignCoefficient { expected: Field, got: Field },
    #[error("the characteristic-2 family needs p = 2, got {0}")]
    NotCharacteristicTwo(u64),
    #[error("genus must be at least 1")]
    ZeroGenus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `y^n = f(x)` with `deg f = degree`.
    Kummer {
        n: u64,
        degree: usize,
        monic: bool,
        squarefree_only: bool,
        /// Coefficients held fixed, keyed by exponent.
        fixed: BTreeMap<usize, FieldElement>,
    },
    /// `y^2 + Q y = P` with `deg Q <= g`, `deg P = 2g + 1`.
    Char2 { g: usize, sweep: Char2Sweep },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Char2Sweep {
    /// Every pair `(Q, P)`.
    Pairs,
    /// One entry per `Q` admitting a smooth model; the matrix depends on `Q` only,
    /// so each `Q` is paired with its first valid `P`.
    QMajor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    All,
    /// Zero Frobenius and positive genus.
    Superspecial,
    ANumber(usize),
    PRank(usize),
}

impl Filter {
    pub fn accepts(self, inv: &SemilinearInvariants) -> bool {
        match self {
            Filter::All => true,
            Filter::Superspecial => inv.superspecial && !inv.genus_zero,
            Filter::ANumber(a) => inv.a_number == a,
            Filter::PRank(f) => inv.p_rank == f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub field: Field,
    pub family: Family,
    pub filter: Filter,
    /// Largest admissible number of tuples; `None` means [`DEFAULT_SPACE_LIMIT`].
    pub limit: Option<u64>,
    pub witness_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Kummer(Polynomial),
    Char2 { q: Polynomial, p: Polynomial },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Kummer(poly) => write!(f, "{poly}"),
            Witness::Char2 { q, p } => write!(f, "{q}; {p}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusTable {
    /// Valid curves per `(genus, a_number, p_rank)`.
    pub rows: BTreeMap<(usize, usize, usize), u64>,
    pub enumerated: u64,
    pub valid: u64,
    pub matched: u64,
    pub witnesses: Vec<Witness>,
}

impl CensusTable {
    fn record(
        &mut self,
        inv: &SemilinearInvariants,
        filter: Filter,
        witness: impl FnOnce() -> Witness,
        cap: usize,
    ) {
        self.valid += 1;
        *self
            .rows
            .entry((inv.genus, inv.a_number, inv.p_rank))
            .or_default() += 1;
        if filter.accepts(inv) {
            self.matched += 1;
            if self.witnesses.len() < cap {
                self.witnesses.push(witness());
            }
        }
    }

    fn merge(&mut self, other: CensusTable, cap: usize) {
        for (key, count) in other.rows {
            *self.rows.entry(key).or_default() += count;
        }
        self.enumerated += other.enumerated;
        self.valid += other.valid;
        self.matched += other.matched;
        let room = cap.saturating_sub(self.witnesses.len());
        self.witnesses
            .extend(other.witnesses.into_iter().take(room));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("genus,a_number,p_rank,count\n");
        for ((g, a, f), count) in &self.rows {
            out.push_str(&format!("{g},{a},{f},{count}\n"));
        }
        out
    }

    pub fn witness_lines(&self) -> String {
        self.witnesses.iter().map(|w| format!("{w}\n")).collect()
    }
}

/// Mixed-radix digits over the free coefficient positions, most significant first.
struct TupleSpace {
    field: Field,
    degree: usize,
    /// `(exponent, radix, nonzero)` for each free position, highest exponent first.
    free: Vec<(usize, u64, bool)>,
    fixed: BTreeMap<usize, FieldElement>,
    cardinality: u128,
}

impl TupleSpace {
    fn new(
        field: Field,
        degree: usize,
        leading_nonzero: bool,
        fixed: BTreeMap<usize, FieldElement>,
    ) -> Self {
        let q = field.order();
        let free: Vec<(usize, u64, bool)> = (0..=degree)
            .rev()
            .filter(|e| !fixed.contains_key(e))
            .map(|e| {
                if e == degree && leading_nonzero {
                    (e, q - 1, true)
                } else {
                    (e, q, false)
                }
            })
            .collect();
        let cardinality = free.iter().map(|&(_, r, _)| r as u128).product();
        TupleSpace {
            field,
            degree,
            free,
            fixed,
            cardinality,
        }
    }

    fn decode(&self, mut index: u64) -> Polynomial {
        let mut coeffs = vec![self.field.zero(); self.degree + 1];
        for (&e, &c) in &self.fixed {
            coeffs[e] = c;
        }
        for &(e, radix, nonzero) in self.free.iter().rev() {
            let digit = index % radix;
            index /= radix;
            coeffs[e] = self.field.from_index(digit + nonzero as u64);
        }
        Polynomial::new(self.field, coeffs)
    }
}

fn check_limit(cardinality: u128, limit: Option<u64>) -> Result<u64, SearchError> {
    let limit = limit.unwrap_or(DEFAULT_SPACE_LIMIT);
    if cardinality > limit as u128 {
        return Err(SearchError::SpaceTooLarge { cardinality, limit });
    }
    Ok(cardinality as u64)
}

fn par_ranges<F>(total: u64, cap: usize, work: F) -> CensusTable
where
    F: Fn(u64, u64) -> CensusTable + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<CensusTable> = (0..chunks)
        .into_par_iter()
        .map(|c| work(c * CHUNK, ((c + 1) * CHUNK).min(total)))
        .collect();
    let mut table = CensusTable::default();
    for part in parts {
        table.merge(part, cap);
    }
    table
}

fn is_squarefree(f: &Polynomial) -> bool {
    f.gcd(&f.derivative()).degree() == Some(0)
}

pub fn enumerate(spec: &SearchSpec) -> Result<CensusTable, SearchError> {
    match &spec.family {
        Family::Kummer {
            n,
            degree,
            monic,
            squarefree_only,
            fixed,
        } => enumerate_kummer(spec, *n, *degree, *monic, *squarefree_only, fixed),
        Family::Char2 { g, sweep } => {
            if spec.field.p() != 2 {
                return Err(SearchError::NotCharacteristicTwo(spec.field.p()));
            }
            if *g == 0 {
                return Err(SearchError::ZeroGenus);
            }
            match sweep {
                Char2Sweep::Pairs => enumerate_char2_pairs(spec, *g),
                Char2Sweep::QMajor => enumerate_char2_q_major(spec, *g),
            }
        }
    }
}

fn enumerate_kummer(
    spec: &SearchSpec,
    n: u64,
    degree: usize,
    monic: bool,
    squarefree_only: bool,
    fixed: &BTreeMap<usize, FieldElement>,
) -> Result<CensusTable, SearchError> {
    let field = spec.field;
    let mut fixed = fixed.clone();
    for (&e, c) in &fixed {
        if e > degree {
            return Err(SearchError::FixedOutOfRange(e));
        }
        if c.field() != field {
            return Err(SearchError::ForeignCoefficient {
                expected: field,
                got: c.field(),
            });
        }
    }
    if monic {
        if fixed.get(&degree).is_some_and(|c| !c.is_one()) {
            return Err(SearchError::FixedOutOfRange(degree));
        }
        fixed.insert(degree, field.one());
    } else if fixed.get(&degree).is_some_and(FieldElement::is_zero) {
        return Err(SearchError::FixedLeadingZero);
    }
    let space = TupleSpace::new(field, degree, true, fixed);
    let total = check_limit(space.cardinality, spec.limit)?;
    let cap = spec.witness_cap;
    Ok(par_ranges(total, cap, |start, end| {
        let mut table = CensusTable::default();
        for index in start..end {
            table.enumerated += 1;
            let f = space.decode(index);
            if squarefree_only && !is_squarefree(&f) {
                continue;
            }
            let Ok(curve) = validate_kummer(field, n, &f) else {
                continue;
            };
            let inv = invariants(&curve.hasse_witt_matrix().matrix);
            table.record(&inv, spec.filter, || Witness::Kummer(f), cap);
        }
        table
    }))
}

fn q_space(field: Field, g: usize) -> TupleSpace {
    TupleSpace::new(field, g, false, BTreeMap::new())
}

fn p_space(field: Field, g: usize) -> TupleSpace {
    TupleSpace::new(field, 2 * g + 1, true, BTreeMap::new())
}

fn enumerate_char2_pairs(spec: &SearchSpec, g: usize) -> Result<CensusTable, SearchError> {
    let field = spec.field;
    let (qs, ps) = (q_space(field, g), p_space(field, g));
    let total = check_limit(qs.cardinality * ps.cardinality, spec.limit)?;
    let per_q = ps.cardinality as u64;
    let q_invariants: Vec<SemilinearInvariants> = (0..qs.cardinality as u64)
        .map(|i| invariants(&char2_matrix_of(field, g, &qs.decode(i))))
        .collect();
    let cap = spec.witness_cap;
    Ok(par_ranges(total, cap, |start, end| {
        let mut table = CensusTable::default();
        for index in start..end {
            table.enumerated += 1;
            let (qi, pi) = (index / per_q, index % per_q);
            let (q, p) = (qs.decode(qi), ps.decode(pi));
            if validate_char2(field, g, &q, &p).is_err() {
                continue;
            }
            let inv = &q_invariants[qi as usize];
            table.record(inv, spec.filter, || Witness::Char2 { q, p }, cap);
        }
        table
    }))
}

fn enumerate_char2_q_major(spec: &SearchSpec, g: usize) -> Result<CensusTable, SearchError> {
    let field = spec.field;
    let (qs, ps) = (q_space(field, g), p_space(field, g));
    check_limit(qs.cardinality, spec.limit)?;
    let per_q = ps.cardinality as u64;
    let parts: Vec<CensusTable> = (0..qs.cardinality as u64)
        .into_par_iter()
        .map(|qi| {
            let mut table = CensusTable::default();
            let q = qs.decode(qi);
            let mut scanned = 0;
            let first = (0..per_q).find_map(|pi| {
                scanned += 1;
                let p = ps.decode(pi);
                validate_char2(field, g, &q, &p).ok().map(|_| p)
            });
            table.enumerated = scanned;
            if let Some(p) = first {
                let inv = invariants(&char2_matrix_of(field, g, &q));
                table.record(
                    &inv,
                    spec.filter,
                    || Witness::Char2 { q, p },
                    spec.witness_cap,
                );
            }
            table
        })
        .collect();
    let mut table = CensusTable::default();
    for part in parts {
        table.merge(part, spec.witness_cap);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn kummer_spec(p: u64, n: u64, degree: usize, filter: Filter) -> SearchSpec {
        SearchSpec {
            field: make_field(p, 1).unwrap(),
            family: Family::Kummer {
                n,
                degree,
                monic: true,
                squarefree_only: true,
                fixed: BTreeMap::new(),
            },
            filter,
            limit: None,
            witness_cap: 100,
        }
    }

    #[test]
    fn tuple_order_is_lexicographic() {
        let f3 = make_field(3, 1).unwrap();
        let space = TupleSpace::new(f3, 2, true, BTreeMap::new());
        assert_eq!(space.cardinality, 18);
        let listed: Vec<String> = (0..4).map(|i| space.decode(i).to_string()).collect();
        assert_eq!(listed, ["x^2", "x^2+1", "x^2+2", "x^2+x"]);
        assert_eq!(space.decode(17).to_string(), "2*x^2+2*x+2");
    }

    #[test]
    fn elliptic_census_over_f5() {
        let mut spec = kummer_spec(5, 2, 3, Filter::PRank(0));
        if let Family::Kummer { fixed, .. } = &mut spec.family {
            fixed.insert(2, spec.field.zero());
        }
        let table = enumerate(&spec).unwrap();
        assert_eq!(table.enumerated, 25);
        let ranks: Vec<usize> = table.rows.keys().map(|k| k.2).collect();
        assert!(ranks.contains(&0) && ranks.contains(&1));
        assert_eq!(table.rows.values().sum::<u64>(), table.valid);
        assert!(table.witnesses.iter().any(|w| w.to_string() == "x^3+1"));
    }

    #[test]
    fn superspecial_genus_two_at_p5() {
        let table = enumerate(&kummer_spec(5, 2, 5, Filter::Superspecial)).unwrap();
        assert!(table.witnesses.iter().any(|w| w.to_string() == "x^5+4*x"));
    }

    #[test]
    fn no_superspecial_genus_three_at_p3() {
        let table = enumerate(&kummer_spec(3, 2, 7, Filter::Superspecial)).unwrap();
        assert_eq!(table.matched, 0);
        assert!(table.valid > 0);
    }

    #[test]
    fn census_is_deterministic() {
        let spec = kummer_spec(7, 3, 4, Filter::All);
        let a = enumerate(&spec).unwrap();
        let b = enumerate(&spec).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.witness_lines(), b.witness_lines());
    }

    #[test]
    fn space_limit() {
        let mut spec = kummer_spec(13, 2, 9, Filter::All);
        spec.limit = Some(1000);
        assert_eq!(
            enumerate(&spec).unwrap_err(),
            SearchError::SpaceTooLarge {
                cardinality: 13u128.pow(9),
                limit: 1000
            }
        );
    }

    #[test]
    fn char2_modes_agree_on_realizable_q() {
        let f2 = make_field(2, 1).unwrap();
        let spec = |sweep| SearchSpec {
            field: f2,
            family: Family::Char2 { g: 2, sweep },
            filter: Filter::All,
            limit: None,
            witness_cap: 0,
        };
        let pairs = enumerate(&spec(Char2Sweep::Pairs)).unwrap();
        let q_major = enumerate(&spec(Char2Sweep::QMajor)).unwrap();
        assert_eq!(pairs.enumerated, 8 * 32);
        let keys = |t: &CensusTable| t.rows.keys().copied().collect::<Vec<_>>();
        assert_eq!(keys(&pairs), keys(&q_major));
    }
}
