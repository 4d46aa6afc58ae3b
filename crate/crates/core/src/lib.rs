//! Biquandle brackets, 2-cocycles and the link invariants they define.
//!
//! Finite rings and groups live in [`algebra`]; [`biquandle`], [`bracket`]
//! and [`cocycle`] verify the algebraic data; [`diagram`] and [`invariant`]
//! evaluate it on PD-coded link diagrams; [`structure`] and [`search`]
//! analyse and enumerate brackets.

pub mod algebra;
pub mod biquandle;
pub mod bracket;
pub mod cocycle;
pub mod diagram;
pub mod fixtures;
pub mod invariant;
pub mod json;
pub mod matrix;
pub mod search;
pub mod structure;

pub use algebra::{AbelianGroup, AlgebraError, GroupElement, Ring, RingElement};
pub use biquandle::{Biquandle, BiquandleError, BiquandleKind, BiquandleReport, BiquandleTables};
pub use bracket::{BiquandleBracket, BracketData, BracketError, BracketReport};
pub use cocycle::{CocycleData, CocycleError, CocycleReport, TwoCocycle, UpToConstant};
pub use diagram::{Coloring, DiagramError, LinkDiagram, Sign};
pub use invariant::{InvariantError, InvariantValue};
pub use json::JsonError;
pub use matrix::Matrix;
pub use search::{SearchError, SearchOutcome, SearchSpec};
