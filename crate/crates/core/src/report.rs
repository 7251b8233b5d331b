//! Machine- and human-readable reports. JSON keys come out in declaration order.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{a_number_upper_bound, orbits, BlockBound, BoundsReport};
use crate::char2::ArtinSchreierHyperelliptic;
use crate::field::FieldElement;
use crate::kummer::{BlockIndex, KummerCurve};
use crate::oracle::{rh_genus, stabilized_prank};
use crate::semilinear::{invariants, SemilinearInvariants, TwistedMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KummerInput {
    pub p: u64,
    pub k: usize,
    pub n: u64,
    pub f: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixReport {
    pub blocks: Vec<BlockIndex>,
    /// Row-major; row = target basis vector, column = source.
    pub entries: Vec<Vec<FieldElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsSection {
    pub a_lower: u64,
    pub a_upper: u64,
    pub f_upper: u64,
    pub f_upper_weighted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleSection {
    pub rh_genus: Option<u64>,
    pub stabilized_p_rank: usize,
    pub stabilized_index: usize,
    pub agreement: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub input: KummerInput,
    pub m: Vec<u64>,
    pub genus: u64,
    pub orbits: Vec<Vec<u64>>,
    pub matrix: MatrixReport,
    pub rank: usize,
    pub a_number: usize,
    pub p_rank: usize,
    pub index: usize,
    pub superspecial: bool,
    pub genus_zero: bool,
    pub bounds: BoundsSection,
    pub oracles: OracleSection,
}

fn oracle_section(
    m: &TwistedMatrix,
    inv: &SemilinearInvariants,
    genus: u64,
    rh: Option<u64>,
) -> OracleSection {
    let (stabilized_p_rank, stabilized_index) = stabilized_prank(m);
    OracleSection {
        rh_genus: rh,
        stabilized_p_rank,
        stabilized_index,
        agreement: rh.is_none_or(|g| g == genus)
            && stabilized_p_rank == inv.p_rank
            && stabilized_index == inv.index,
    }
}

impl InvariantReport {
    pub fn from_curve(curve: &KummerCurve) -> Self {
        let profile = curve.ramification_profile();
        let hw = curve.hasse_witt_matrix();
        let inv = invariants(&hw.matrix);
        let bounds = a_number_upper_bound(curve);
        let field = curve.field();
        let rh = rh_genus(curve).ok();
        InvariantReport {
            input: KummerInput {
                p: field.p(),
                k: field.k(),
                n: curve.n(),
                f: curve.input().to_string(),
            },
            m: profile.m.clone(),
            genus: profile.genus,
            orbits: orbits(curve.n(), curve.p())
                .expect("validated curve has gcd(n, p) = 1")
                .orbits,
            matrix: MatrixReport {
                blocks: hw.blocks.clone(),
                entries: hw.matrix.rows(),
            },
            rank: inv.rank,
            a_number: inv.a_number,
            p_rank: inv.p_rank,
            index: inv.index,
            superspecial: inv.superspecial,
            genus_zero: inv.genus_zero,
            bounds: BoundsSection {
                a_lower: bounds.a_lower,
                a_upper: bounds.a_upper,
                f_upper: bounds.f_upper,
                f_upper_weighted: bounds.f_upper_weighted,
            },
            oracles: oracle_section(&hw.matrix, &inv, profile.genus, rh),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        let field = if i.k == 1 {
            format!("F_{}", i.p)
        } else {
            format!("F_{}^{}", i.p, i.k)
        };
        let _ = writeln!(out, "curve: y^{} = {} over {}", i.n, i.f, field);
        let _ = writeln!(out, "m: {}", join(&self.m));
        let _ = writeln!(out, "genus: {}", self.genus);
        let orbit_text: Vec<String> = self
            .orbits
            .iter()
            .map(|o| format!("{{{}}}", join(o)))
            .collect();
        let _ = writeln!(out, "orbits: {}", orbit_text.join(" "));
        let _ = writeln!(out, "blocks:");
        for b in &self.matrix.blocks {
            let _ = writeln!(
                out,
                "  B_{} dim {} offset {} -> B_{}",
                b.residue, b.dim, b.offset, b.image
            );
        }
        write_matrix(&mut out, &self.matrix.entries);
        write_invariants(
            &mut out,
            self.rank,
            self.a_number,
            self.p_rank,
            self.index,
            self.superspecial,
            self.genus_zero,
        );
        let b = &self.bounds;
        let _ = writeln!(out, "a_lower: {}", b.a_lower);
        let _ = writeln!(out, "a_upper: {}", b.a_upper);
        let _ = writeln!(out, "f_upper: {}", b.f_upper);
        let _ = writeln!(out, "f_upper_weighted: {}", b.f_upper_weighted);
        write_oracles(&mut out, &self.oracles);
        out
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_matrix(out: &mut String, rows: &[Vec<FieldElement>]) {
    let _ = writeln!(out, "matrix:");
    for row in rows {
        let _ = writeln!(out, "  [{}]", join(row));
    }
}

fn write_invariants(
    out: &mut String,
    rank: usize,
    a: usize,
    f: usize,
    index: usize,
    superspecial: bool,
    genus_zero: bool,
) {
    let _ = writeln!(out, "rank: {rank}");
    let _ = writeln!(out, "a_number: {a}");
    let _ = writeln!(out, "p_rank: {f}");
    let _ = writeln!(out, "index: {index}");
    let _ = writeln!(out, "superspecial: {superspecial}");
    let _ = writeln!(out, "genus_zero: {genus_zero}");
}

fn write_oracles(out: &mut String, o: &OracleSection) {
    let rh = o
        .rh_genus
        .map_or_else(|| "n/a".to_string(), |g| g.to_string());
    let _ = writeln!(out, "oracle rh_genus: {rh}");
    let _ = writeln!(
        out,
        "oracle stabilized: p_rank {} index {}",
        o.stabilized_p_rank, o.stabilized_index
    );
    let _ = writeln!(out, "oracle agreement: {}", o.agreement);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Char2Input {
    pub k: usize,
    pub g: usize,
    #[serde(rename = "Q")]
    pub q: String,
    #[serde(rename = "P")]
    pub p: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Char2Report {
    pub input: Char2Input,
    pub genus: usize,
    pub matrix: Vec<Vec<FieldElement>>,
    pub rank: usize,
    pub a_number: usize,
    pub p_rank: usize,
    pub index: usize,
    pub nilpotent: bool,
    pub superspecial: bool,
    pub oracles: OracleSection,
}

impl Char2Report {
    pub fn from_curve(curve: &ArtinSchreierHyperelliptic) -> Self {
        let m = curve.matrix();
        let inv = invariants(&m);
        Char2Report {
            input: Char2Input {
                k: curve.field().k(),
                g: curve.genus(),
                q: curve.q().to_string(),
                p: curve.p().to_string(),
            },
            genus: curve.genus(),
            matrix: m.rows(),
            rank: inv.rank,
            a_number: inv.a_number,
            p_rank: inv.p_rank,
            index: inv.index,
            nilpotent: inv.nilpotent,
            superspecial: inv.superspecial,
            oracles: oracle_section(&m, &inv, curve.genus() as u64, None),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        let field = if i.k == 1 {
            "F_2".to_string()
        } else {
            format!("F_2^{}", i.k)
        };
        let _ = writeln!(out, "curve: y^2 + ({})*y = {} over {}", i.q, i.p, field);
        let _ = writeln!(out, "genus: {}", self.genus);
        write_matrix(&mut out, &self.matrix);
        write_invariants(
            &mut out,
            self.rank,
            self.a_number,
            self.p_rank,
            self.index,
            self.superspecial,
            false,
        );
        let _ = writeln!(out, "nilpotent: {}", self.nilpotent);
        write_oracles(&mut out, &self.oracles);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsOutput {
    pub input: KummerInput,
    pub genus: u64,
    pub orbits: Vec<Vec<u64>>,
    pub a_lower: u64,
    pub a_upper: u64,
    pub f_upper: u64,
    pub f_upper_weighted: u64,
    pub per_block: Vec<BlockBound>,
}

impl BoundsOutput {
    pub fn from_curve(curve: &KummerCurve) -> Self {
        let field = curve.field();
        let BoundsReport {
            a_lower,
            a_upper,
            f_upper,
            f_upper_weighted,
            per_block,
        } = a_number_upper_bound(curve);
        BoundsOutput {
            input: KummerInput {
                p: field.p(),
                k: field.k(),
                n: curve.n(),
                f: curve.input().to_string(),
            },
            genus: curve.ramification_profile().genus,
            orbits: orbits(curve.n(), curve.p())
                .expect("validated curve has gcd(n, p) = 1")
                .orbits,
            a_lower,
            a_upper,
            f_upper,
            f_upper_weighted,
            per_block,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "genus: {}", self.genus);
        let _ = writeln!(out, "a_lower: {}", self.a_lower);
        let _ = writeln!(out, "a_upper: {}", self.a_upper);
        let _ = writeln!(out, "f_upper: {}", self.f_upper);
        let _ = writeln!(out, "f_upper_weighted: {}", self.f_upper_weighted);
        for b in &self.per_block {
            let _ = writeln!(
                out,
                "  B_{}: m {} image_m {} deg_Q {} q {} v {} rank >= {}",
                b.residue, b.m, b.image_m, b.deg_q, b.q, b.v, b.rank_lower_bound
            );
        }
        out
    }
}
