//! Frobenius action on H^1(C, O_C) for Kummer covers `y^n = f(x)` of the projective
//! line over finite fields: genus, Hasse-Witt matrix, a-number, p-rank and the
//! associated bounds, plus the characteristic-2 hyperelliptic model and exhaustive
//! searches for superspecial curves.

pub mod bounds;
pub mod campaign;
pub mod char2;
pub mod field;
pub mod kummer;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod report;
pub mod search;
pub mod semilinear;
