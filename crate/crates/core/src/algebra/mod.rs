//! Exact arithmetic for coefficient rings and value groups.
//!
//! Three ring families are supported: `Z_n`, `Z_m[t]/(f)` for monic `f`, and
//! multivariate Laurent polynomials over the integers. Elements carry their
//! ring and are kept canonical, so `==` is mathematical equality.

mod group;
mod ring;

pub use group::{AbelianGroup, GroupElement, GroupKind};
pub use ring::{Exponents, Ring, RingElement, RingKind, Value};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("operands live in different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("operands live in different groups")]
    GroupMismatch,
    #[error("ring is infinite; its unit set cannot be enumerated")]
    InfiniteRing,
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("{0}")]
    WrongKind(String),
}
