//! Prime decomposition in pure quintic fields `Q(⁵√n)`, their normal closures
//! `Q(⁵√n, ζ5)` and the cyclotomic field `Q(ζ5)`; quintic power residue
//! symbols; classification of radicands whose 5-class group generators can be
//! predicted; and a verification harness for published tables, with class-group
//! facts delegated to an external computer-algebra oracle.

pub mod classifier;
pub mod cli;
pub mod cyclo5;
pub mod error;
pub mod harness;
pub mod lambda_adic;
pub mod nt;
pub(crate) mod serde_str;
pub mod splitting;
pub mod symbols;

pub use cyclo5::{gcd, CycInt};
pub use error::{Error, Result};
pub use splitting::{FieldKind, Kind, KummerSplit, PrimeK0, SplittingPattern};
pub use symbols::{ResidueField, SymbolValue};
