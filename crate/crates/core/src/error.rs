use thiserror::Error;

use crate::{partition::Series, ComponentElement, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition text: {0}")]
    Parse(String),

    #[error("part must be positive, got `{0}`")]
    NonPositivePart(String),

    #[error("partition {partition} is not valid for series {series}: {reason}")]
    InvalidPartition {
        partition: Partition,
        series: Series,
        reason: String,
    },

    #[error("{z} is not an element of A{partition} for series {series}")]
    NotInComponentGroup {
        z: ComponentElement,
        partition: Partition,
        series: Series,
    },

    #[error("cannot remove {removed:?} from {partition}: not a sub-multiset")]
    NotSubMultiset {
        partition: Partition,
        removed: Vec<u32>,
    },

    #[error("invalid component element `{0}`")]
    ComponentSyntax(String),

    #[error("invalid polynomial `{0}`")]
    PolySyntax(String),

    #[error("graded trace of {partition} at {z} is not integral: {poly}")]
    NonIntegral {
        partition: Partition,
        z: ComponentElement,
        poly: String,
    },

    #[error("field error: {0}")]
    Field(String),

    #[error("oracle error: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
