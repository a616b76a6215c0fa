//! Graded traces of Springer representations at the identity for the
//! classical groups SO(2n+1), Sp(2n) and SO(2n).
//!
//! [`recursion::Evaluator`] unrolls the restriction formula down to rank one
//! with exact rational arithmetic, producing Poincaré polynomials of Springer
//! fibers and graded traces of component-group elements. [`oracle`] checks
//! those values independently by counting rational flags over small finite
//! fields.

pub mod compgroup;
pub mod error;
pub mod field;
pub mod oracle;
pub mod partition;
pub mod polynomial;
pub mod recursion;

pub use compgroup::{enumerate_a, ComponentElement};
pub use error::{Error, Result};
pub use oracle::{build_standard_model, count_fixed_flags, verify, FlagCountReport, StandardModel};
pub use partition::{valid_partitions, Partition, Series, Shape, ValidityReport};
pub use polynomial::Poly;
pub use recursion::{
    betti_numbers, expand_restriction, full_table, graded_trace, Evaluator, RestrictionExpansion,
    RestrictionTerm, TableRow,
};
